//! The two shipped algebras and their element arithmetic: products, norms,
//! in-algebra exponentials, spectral-radius estimation, and nullspaces.
//!
//! ```bash
//! cargo run --example algebra_basics
//! ```

use sigma_calculus::{nullspace, random_element, Algebra, C64, CMatrix, SeriesParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("=== Full matrix algebra M_3 ===");
    let m3 = Algebra::full_matrix(3)?;
    println!("coordinate dimension: {}", m3.dim());

    let x = random_element(m3, 1);
    let y = random_element(m3, 2);
    let xy = x.mul(&y)?;
    println!("‖x‖ = {:.6}, ‖y‖ = {:.6}, ‖xy‖ = {:.6}", x.norm(), y.norm(), xy.norm());
    println!("submultiplicative: ‖xy‖ ≤ ‖x‖·‖y‖ = {:.6}", x.norm() * y.norm());

    println!("\n=== Exponential (scaling and squaring) ===");
    let params = SeriesParams::default();
    let e_x = x.exp(&params)?;
    let round_trip = e_x.mul(&x.neg().exp(&params)?)?.sub(&m3.unit()).norm();
    println!("‖exp(x)·exp(−x) − 1‖ = {round_trip:.3e}");

    let e12 = m3.matrix_unit(0, 1)?;
    let nilp_exp = e12.exp(&params)?;
    println!(
        "exp(e12) = 1 + e12 (nilpotent): residual {:.3e}",
        nilp_exp.sub(&m3.unit().add(&e12)).norm()
    );

    println!("\n=== Spectral radius (Gelfand, renormalized squaring) ===");
    let m2 = Algebra::full_matrix(2)?;
    let swap = m2.matrix_unit(0, 1)?.add(&m2.matrix_unit(1, 0)?);
    println!("swap matrix [[0,1],[1,0]]: ρ ≈ {:.9} (exact 1)", swap.spectral_radius(20));
    println!("nilpotent e12:            ρ = {:.1} (exact 0)", m2.matrix_unit(0, 1)?.spectral_radius(20));
    println!(
        "is_nilpotent(e12 + e23 in M_3) = {}",
        m3.matrix_unit(0, 1)?.add(&m3.matrix_unit(1, 2)?).is_nilpotent(1e-10)
    );

    println!("\n=== Grid-function algebra C(Z_8) ===");
    let g8 = Algebra::grid_function(8)?;
    let f = random_element(g8, 3);
    let g = random_element(g8, 4);
    println!("pointwise product, sup norm: ‖fg‖ = {:.6}", f.mul(&g)?.norm());
    println!("grid spectral radius = sup modulus: {:.6}", f.spectral_radius(20));

    println!("\n=== Nullspace (Gaussian elimination, partial pivoting) ===");
    let u: Vec<C64> = (0..3).map(|i| C64::new(1.0 + i as f64, 0.5)).collect();
    let w: Vec<C64> = (0..3).map(|i| C64::new(0.5, 1.0 - i as f64)).collect();
    let rank_one = CMatrix::from_fn(3, 3, |i, j| u[i] * w[j]);
    let basis = nullspace(&rank_one, 1e-10)?;
    println!("rank-one 3×3 outer product: nullspace dimension {}", basis.len());
    for (i, v) in basis.iter().enumerate() {
        let residual: f64 = rank_one
            .matvec(v)
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        println!("  basis vector {i}: ‖Mv‖ = {residual:.3e}");
    }
    Ok(())
}
