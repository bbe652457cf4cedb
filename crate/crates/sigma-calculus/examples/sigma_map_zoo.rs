//! The map constructors and the classifying predicates: multiplicativity
//! defects, σ-derivations, σ-endomorphisms, semi-endomorphisms, defect
//! commutants, and the inner σ-derivation construction with its rejection
//! path.
//!
//! ```bash
//! cargo run --example sigma_map_zoo
//! ```

use sigma_calculus::{
    defect_commutant, inner_sigma_derivation, is_endomorphism, is_multiplizing,
    is_semi_endomorphism, is_sigma_derivation, make_map, mult_defect, random_element, Algebra,
    C64, CheckParams, LinearMap, MapKind,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m2 = Algebra::full_matrix(2)?;
    let params = CheckParams::default();

    println!("=== Constructors ===");
    let v = m2
        .matrix_unit(0, 0)?
        .add(&m2.matrix_unit(1, 1)?.scale(C64::new(2.0, 0.0)));
    let conj = make_map(m2, MapKind::Conjugation(v.clone()))?;
    let half = make_map(m2, MapKind::Scale(C64::new(0.5, 0.0)))?;
    println!("conjugation(diag(1,2)) and scale(½) built on M_2");

    let p = m2.matrix_unit(0, 0)?;
    let compression = make_map(m2, MapKind::Compression(p.clone()))?;
    println!("compression(e11): e11 ↦ {:?}", compression.apply(&p)?.coords()[0]);

    println!("\n=== Multiplicativity defects σ(ab) − σ(a)σ(b) ===");
    let a = random_element(m2, 1);
    let b = random_element(m2, 2);
    println!("conjugation (endomorphism): ‖defect‖ = {:.3e}", mult_defect(&conj, &a, &b)?.norm());
    println!("scale(½):   defect = ab/4:  ‖defect‖ = {:.6}", mult_defect(&half, &a, &b)?.norm());

    println!("\n=== σ-derivation predicate ===");
    // An endomorphism d is a (d/2)-derivation.
    let d_half = conj.scale(C64::new(0.5, 0.0));
    let report = is_sigma_derivation(&conj, &d_half, &params)?;
    println!("conjugation as a (d/2)-derivation: pass = {}, residual {:.3e}",
        report.pass, report.max_residual);
    // ... but not an ι-derivation.
    let report = is_sigma_derivation(&conj, &LinearMap::identity(m2), &params)?;
    println!("conjugation as an ι-derivation:   pass = {}, residual {:.3e}",
        report.pass, report.max_residual);

    println!("\n=== Grid example: σ(f) = f/2, d(f) = f·h0 ===");
    let g8 = Algebra::grid_function(8)?;
    let sigma = make_map(g8, MapKind::Scale(C64::new(0.5, 0.0)))?;
    let dee = make_map(g8, MapKind::MultBy(g8.unit()))?;
    let report = is_sigma_derivation(&dee, &sigma, &params)?;
    println!("is a σ-derivation: pass = {}, residual {:.3e}", report.pass, report.max_residual);
    println!("σ(1) ≠ 1: gap {:.3}", sigma.apply(&g8.unit())?.sub(&g8.unit()).norm());
    println!("d(1) ≠ 0: ‖d(1)‖ = {:.3}", dee.apply(&g8.unit())?.norm());
    println!("σ is not an endomorphism: pass = {}", is_endomorphism(&sigma, &params)?.pass);
    println!("σ is not a semi-endomorphism: pass = {}", is_semi_endomorphism(&sigma, &dee, &params)?.pass);

    println!("\n=== Defect commutants ===");
    println!("conjugation on M_2: dimension {} (everything)", defect_commutant(&conj, 1e-10)?.len());
    println!("scale(½) on M_2:    dimension {} (the center)", defect_commutant(&half, 1e-10)?.len());
    println!("scale(½) on grid-8: dimension {} (commutative)", defect_commutant(&sigma, 1e-10)?.len());

    println!("\n=== Inner σ-derivations d(a) = uσ(a) − σ(a)u ===");
    let u = random_element(m2, 5);
    let inner = inner_sigma_derivation(&u, &conj, 1e-9)?;
    let report = is_sigma_derivation(&inner, &conj, &params)?;
    println!("u free under an endomorphism: derivation pass = {}", report.pass);
    let report = is_multiplizing(&inner, &conj, &params)?;
    println!("inner derivations are multiplizing: pass = {}", report.pass);

    match inner_sigma_derivation(&m2.matrix_unit(0, 1)?, &half, 1e-9) {
        Err(e) => println!("u = e12 under scale(½) is rejected: {e}"),
        Ok(_) => println!("unexpected acceptance"),
    }
    Ok(())
}
