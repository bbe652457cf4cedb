//! One-parameter σ-dynamics: the power-series evolution against the closed
//! conjugation orbit, the inner family and its group law, the alternating
//! sum, and generator recovery by finite differences.
//!
//! ```bash
//! cargo run --example dynamics_orbit
//! ```

use sigma_calculus::workbench::fixtures::{f4_compression_dynamics, iota_dynamics};
use sigma_calculus::{
    alpha_closed, alpha_series, alpha_series_map, alternating_sum, generator_estimate,
    inner_family, random_element, C64, SeriesParams,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = SeriesParams::default();

    println!("=== σ = ι: conjugation orbits α_t(a) = e^{{tu}}·a·e^{{−tu}} ===");
    let iota = iota_dynamics(3, 1)?;
    let a = random_element(iota.sigma().algebra(), 2);
    for t in [-1.0, 0.5, 1.0] {
        let series = alpha_series(&iota, t, &a, &params)?;
        let closed = alpha_closed(&iota, t, &a, &params)?;
        println!("t = {t:5}: ‖series − closed‖ = {:.3e}", series.sub(&closed).norm());
    }

    println!("\n=== Group law at the superoperator level ===");
    for (t, s) in [(0.3, 0.4), (-1.0, 1.0)] {
        let lhs = alpha_series_map(&iota, t, &params)?
            .compose(&alpha_series_map(&iota, s, &params)?)?;
        let rhs = alpha_series_map(&iota, t + s, &params)?;
        println!(
            "α_{t}∘α_{s} vs α_{}: residual {:.3e}",
            t + s,
            lhs.sub(&rhs).frobenius() / rhs.frobenius()
        );
    }

    println!("\n=== Compression fixture: series = closed form − σ + ι ===");
    let f4 = f4_compression_dynamics(1)?;
    let a4 = random_element(f4.sigma().algebra(), 3);
    for t in [-1.0, 0.5, 1.0] {
        let series = alpha_series(&f4, t, &a4, &params)?;
        let shifted = alpha_closed(&f4, t, &a4, &params)?
            .sub(&f4.sigma().apply(&a4)?)
            .add(&a4);
        println!("t = {t:5}: residual {:.3e}", series.sub(&shifted).norm());
    }
    println!("hypothesis flags (σ² = σ, σ(au) = σ(a)u, σ(ua) = uσ(a)): {:?}", f4.flags());

    println!("\n=== Alternating sum Σ (−1)^k C(r,k) u^k σ(a) u^{{r−k}} = (−1)^r d^r(a) ===");
    for r in [1usize, 4, 8] {
        let lhs = alternating_sum(&iota, r, &a)?;
        let mut dr = a.clone();
        for _ in 0..r {
            dr = iota.dee().apply(&dr)?;
        }
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        println!(
            "r = {r}: residual {:.3e} (‖d^r(a)‖ = {:.3})",
            lhs.sub(&dr.scale(C64::new(sign, 0.0))).norm(),
            dr.norm()
        );
    }

    println!("\n=== Generator recovery: (α_h(a) − a)/h → d(a), first order ===");
    let d_a = iota.dee().apply(&a)?;
    let family = |t: f64| inner_family(&iota, t, &params);
    let mut h = 1e-2;
    let mut prev: Option<f64> = None;
    while h >= 1e-5 {
        let err = generator_estimate(family, &a, h)?.sub(&d_a).norm();
        match prev {
            Some(p) => println!("h = {h:.1e}: error {err:.3e} (ratio {:.3})", err / p),
            None => println!("h = {h:.1e}: error {err:.3e}"),
        }
        prev = Some(err);
        h /= 2.0;
    }
    Ok(())
}
