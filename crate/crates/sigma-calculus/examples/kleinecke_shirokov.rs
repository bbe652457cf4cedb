//! Quasinilpotency at desk scale: the commutator demonstration (d²(a) = 0
//! forces d(a) nilpotent, via dⁿ(aⁿ) = n!·d(a)ⁿ) and the no-go checker for
//! the commutation-relation conditions.
//!
//! ```bash
//! cargo run --example kleinecke_shirokov
//! ```

use sigma_calculus::workbench::{ks_demo, ww_nogo_check};
use sigma_calculus::{random_element, Algebra, LinearMap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("=== Commutator demo (dim 3): searches for d²(a) = 0, then verifies ===");
    let report = ks_demo(3, 1)?;
    print!("{}", report.render_table());

    println!("\n=== No-go checker: classical instance a = e12, b = e11, σ = ι ===");
    let m2 = Algebra::full_matrix(2)?;
    let a = m2.matrix_unit(0, 1)?;
    let b = m2.matrix_unit(0, 0)?;
    let report = ww_nogo_check(&a, &b, &LinearMap::identity(m2))?;
    print!("{}", report.render_table());
    println!("c = [e12, e11] = −e12 is nilpotent: conditions (i)–(iii) can never");
    println!("coexist with a non-quasinilpotent c.");

    println!("\n=== Guard path: random inputs do not qualify ===");
    let a = random_element(m2, 7);
    let b = random_element(m2, 8);
    let report = ww_nogo_check(&a, &b, &LinearMap::identity(m2))?;
    print!("{}", report.render_table());
    println!("(conditions fail → the checker makes no nilpotency claim)");
    Ok(())
}
