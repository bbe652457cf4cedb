//! Batch verification CLI.
//!
//! ```text
//! sigma-verify run [--config FILE] [--suite NAME ...] [--dim N] [--grid N]
//!                  [--seed S] [--tol T] [--trials K] [--n-max M] [--json OUT]
//! sigma-verify demo ks --dim N [--seed S]
//! sigma-verify demo ww --a FILE --b FILE [--sigma conjugation:FILE|identity]
//! sigma-verify expand --n N [--k K]
//! ```
//!
//! Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage or
//! configuration error.

use sigma_calculus::workbench::{expand_lines, ks_demo, run_suite, ww_nogo_check};
use sigma_calculus::{
    make_map, Element, ElementDoc, LinearMap, MapKind, SuiteConfig, SuiteName, SuiteReport,
};
use std::process::ExitCode;

const USAGE: &str = "\
usage:
  sigma-verify run [--config FILE] [--suite NAME ...] [--dim N] [--grid N]
                   [--seed S] [--tol T] [--trials K] [--n-max M] [--json OUT]
  sigma-verify demo ks --dim N [--seed S]
  sigma-verify demo ww --a FILE --b FILE [--sigma conjugation:FILE|identity]
  sigma-verify expand --n N [--k K]

suites: algebra maps leibniz dynamics quasinil (default: all)
exit codes: 0 = all pass, 1 = check failed, 2 = usage/config error";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match dispatch(&args) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            eprintln!("{USAGE}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(args: &[String]) -> Result<ExitCode, String> {
    match args.first().map(String::as_str) {
        Some("run") => cmd_run(&args[1..]),
        Some("demo") => match args.get(1).map(String::as_str) {
            Some("ks") => cmd_demo_ks(&args[2..]),
            Some("ww") => cmd_demo_ww(&args[2..]),
            _ => Err("demo needs a subcommand: ks | ww".into()),
        },
        Some("expand") => cmd_expand(&args[1..]),
        Some("--help") | Some("-h") | Some("help") => {
            write_stdout(&format!("{USAGE}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        _ => Err("missing subcommand".into()),
    }
}

struct Flags {
    values: Vec<(String, String)>,
}

impl Flags {
    /// Parse `--key value` pairs; `repeatable` keys may occur several times.
    fn parse(args: &[String], allowed: &[&str]) -> Result<Flags, String> {
        let mut values = Vec::new();
        let mut it = args.iter();
        while let Some(flag) = it.next() {
            let key = flag
                .strip_prefix("--")
                .ok_or_else(|| format!("unexpected argument `{flag}`"))?;
            if !allowed.contains(&key) {
                return Err(format!("unknown flag `--{key}`"));
            }
            let value = it
                .next()
                .ok_or_else(|| format!("flag `--{key}` needs a value"))?;
            values.push((key.to_string(), value.clone()));
        }
        Ok(Flags { values })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn get_all(&self, key: &str) -> Vec<&str> {
        self.values
            .iter()
            .filter(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .collect()
    }

    fn parse_num<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, String> {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|_| format!("invalid value for --{key}: `{raw}`")),
        }
    }
}

/// Write to stdout, treating a closed pipe (e.g. `| head`) as a normal end
/// of output rather than a panic.
fn write_stdout(text: &str) -> Result<bool, String> {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(true),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(false),
        Err(e) => Err(e.to_string()),
    }
}

fn finish(report: &SuiteReport, json_out: Option<&str>) -> Result<ExitCode, String> {
    write_stdout(&report.render_table())?;
    if let Some(path) = json_out {
        std::fs::write(path, report.to_json_string() + "\n")
            .map_err(|e| format!("cannot write {path}: {e}"))?;
    }
    Ok(if report.overall_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_run(args: &[String]) -> Result<ExitCode, String> {
    let flags = Flags::parse(
        args,
        &[
            "config", "suite", "dim", "grid", "seed", "tol", "trials", "n-max", "json",
        ],
    )?;
    let mut cfg = match flags.get("config") {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
            serde_json::from_str::<SuiteConfig>(&text)
                .map_err(|e| format!("invalid config {path}: {e}"))?
        }
        None => SuiteConfig::default(),
    };
    if let Some(v) = flags.parse_num::<usize>("dim")? {
        cfg.matrix_dim = v;
    }
    if let Some(v) = flags.parse_num::<usize>("grid")? {
        cfg.grid_size = v;
    }
    if let Some(v) = flags.parse_num::<u64>("seed")? {
        cfg.seed = v;
    }
    if let Some(v) = flags.parse_num::<f64>("tol")? {
        cfg.tol = v;
    }
    if let Some(v) = flags.parse_num::<u64>("trials")? {
        cfg.trials = v;
    }
    if let Some(v) = flags.parse_num::<usize>("n-max")? {
        cfg.n_max = v;
    }
    let suite_flags = flags.get_all("suite");
    if !suite_flags.is_empty() {
        cfg.suites = suite_flags
            .iter()
            .map(|s| s.parse::<SuiteName>().map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
    }
    cfg.validate().map_err(|e| e.to_string())?;
    let report = run_suite(&cfg).map_err(|e| e.to_string())?;
    finish(&report, flags.get("json"))
}

fn cmd_demo_ks(args: &[String]) -> Result<ExitCode, String> {
    let flags = Flags::parse(args, &["dim", "seed", "json"])?;
    let dim = flags.parse_num::<usize>("dim")?.unwrap_or(3);
    let seed = flags.parse_num::<u64>("seed")?.unwrap_or(1);
    let report = ks_demo(dim, seed).map_err(|e| e.to_string())?;
    finish(&report, flags.get("json"))
}

fn load_element(path: &str) -> Result<Element, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let doc: ElementDoc =
        serde_json::from_str(&text).map_err(|e| format!("invalid element {path}: {e}"))?;
    doc.to_element().map_err(|e| format!("{path}: {e}"))
}

fn cmd_demo_ww(args: &[String]) -> Result<ExitCode, String> {
    let flags = Flags::parse(args, &["a", "b", "sigma", "json"])?;
    let a = load_element(flags.get("a").ok_or("demo ww needs --a FILE")?)?;
    let b = load_element(flags.get("b").ok_or("demo ww needs --b FILE")?)?;
    let sigma = match flags.get("sigma").unwrap_or("identity") {
        "identity" => LinearMap::identity(a.algebra()),
        spec => match spec.split_once(':') {
            Some(("conjugation", path)) => {
                let v = load_element(path)?;
                make_map(a.algebra(), MapKind::Conjugation(v)).map_err(|e| e.to_string())?
            }
            _ => return Err(format!("invalid --sigma `{spec}` (identity | conjugation:FILE)")),
        },
    };
    let report = ww_nogo_check(&a, &b, &sigma).map_err(|e| e.to_string())?;
    finish(&report, flags.get("json"))
}

fn cmd_expand(args: &[String]) -> Result<ExitCode, String> {
    let flags = Flags::parse(args, &["n", "k"])?;
    let n = flags
        .parse_num::<usize>("n")?
        .ok_or("expand needs --n N")?;
    let k = flags.parse_num::<u64>("k")?;
    let lines = expand_lines(n, k).map_err(|e| e.to_string())?;
    for line in lines {
        if !write_stdout(&format!("{line}\n"))? {
            break;
        }
    }
    Ok(ExitCode::SUCCESS)
}
