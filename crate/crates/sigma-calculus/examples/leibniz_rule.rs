//! The generalized Leibniz rule numerically: the 2ⁿ-term expansion of dⁿ(ab)
//! against the iterated derivation, its T_k refinement, the binomial
//! collapse, and the power rule dⁿ(aⁿ) = n!·d(a)ⁿ.
//!
//! ```bash
//! cargo run --example leibniz_rule
//! ```

use sigma_calculus::workbench::fixtures::{f1_matrix_conjugation, f5_identity_commutator};
use sigma_calculus::{
    apply_word, binomial_expand, inner_sigma_derivation, leibniz_expand, phi_product,
    power_rule_check, random_element, word_from_index, Algebra, LinearMap,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("=== dⁿ(ab) = Σ_k φ_{{n,k}}(a)·φ_{{n,2ⁿ−1−k}}(b) ===");
    let f1 = f1_matrix_conjugation(3, 1)?;
    let a = random_element(f1.algebra, 10);
    let b = random_element(f1.algebra, 11);
    for n in [1usize, 3, 6] {
        let expansion = leibniz_expand(&f1.sigma, &f1.dee, n, &a, &b)?;
        let mut oracle = a.mul(&b)?;
        for _ in 0..n {
            oracle = f1.dee.apply(&oracle)?;
        }
        println!(
            "n = {n}: {} terms, residual vs iterated d: {:.3e}",
            1u64 << n,
            expansion.sub(&oracle).norm() / oracle.norm()
        );
    }

    println!("\n=== φ_{{n,k}}(ab) = Σ_{{ℓ∈T_k}} φ_{{n,ℓ}}(a)·φ_{{n,k−ℓ}}(b) (σ an endomorphism) ===");
    let (n, k) = (5usize, 19u64);
    let refined = phi_product(&f1.sigma, &f1.dee, n, k, &a, &b)?;
    let direct = apply_word(&word_from_index(n, k)?, &f1.sigma, &f1.dee, &a.mul(&b)?)?;
    println!(
        "(n, k) = ({n}, {k}): 8 terms, residual vs direct word: {:.3e}",
        refined.sub(&direct).norm() / direct.norm()
    );

    println!("\n=== Binomial collapse under dσ = σd = d (σ = ι, d = [u,·]) ===");
    let f5 = f5_identity_commutator(3, 1)?;
    let a5 = random_element(f5.algebra, 12);
    let b5 = random_element(f5.algebra, 13);
    for n in [2usize, 5, 10] {
        let collapsed = binomial_expand(&f5.sigma, &f5.dee, n, &a5, &b5)?;
        let full = leibniz_expand(&f5.sigma, &f5.dee, n, &a5, &b5)?;
        println!(
            "n = {n:2}: {} binomial terms vs {} word terms, residual {:.3e}",
            n + 1,
            1u64 << n,
            collapsed.sub(&full).norm() / full.norm()
        );
    }

    println!("\n=== Power rule dⁿ(aⁿ) = n!·d(a)ⁿ when d²(a) = 0 ===");
    let m3 = Algebra::full_matrix(3)?;
    let iota = LinearMap::identity(m3);
    // u the Jordan chain, a = diag(0,1,2): d(a) = u and d²(a) = [u,u] = 0.
    let u = m3.matrix_unit(0, 1)?.add(&m3.matrix_unit(1, 2)?);
    let mut diag = m3.zero().coords().to_vec();
    diag[4] = sigma_calculus::C64::new(1.0, 0.0);
    diag[8] = sigma_calculus::C64::new(2.0, 0.0);
    let a_diag = m3.element(diag)?;
    let dee = inner_sigma_derivation(&u, &iota, 1e-9)?;
    let report = power_rule_check(&iota, &dee, &a_diag, 6)?;
    println!(
        "Jordan instance, n ≤ 6: pass = {}, worst residual/n! = {:.3e}",
        report.pass, report.max_residual
    );
    println!("d(a)² ≠ 0 here, so rows n = 1, 2 are genuinely nonzero; d(a)³ = 0.");
    Ok(())
}
