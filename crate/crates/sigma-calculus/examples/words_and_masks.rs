//! The φ_{n,k} word calculus: binary indexing, the prepend shifts, submask
//! sets T_k, and the symbolic renderer.
//!
//! ```bash
//! cargo run --example words_and_masks
//! ```

use sigma_calculus::{
    index_shift, submasks, symbolic_expansion, symbolic_phi_product, word_from_index, Letter,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("=== Words from binary indices (1 ↦ d, 0 ↦ σ, MSB outermost) ===");
    for (n, k) in [(5, 11), (1, 0), (1, 1), (3, 4)] {
        let w = word_from_index(n, k)?;
        println!("φ_{{{n},{k}}} = {} (collapsed: {})", w.render(), w.render_collapsed());
    }

    println!("\n=== Index shifts: prepending a letter ===");
    let (n1, k1) = index_shift(Letter::Dee, 3, 5)?;
    println!("d·φ_{{3,5}} = φ_{{{n1},{k1}}}  (2³ + 5 = 13)");
    let (n2, k2) = index_shift(Letter::Sigma, 3, 5)?;
    println!("σ·φ_{{3,5}} = φ_{{{n2},{k2}}}");

    println!("\n=== Submask sets T_k ===");
    let t19 = submasks(19)?;
    println!("T_19 = {:?} ({} = 2^popcount(19) members)", t19.members(), t19.len());
    println!("T_5  = {:?}", submasks(5)?.members());
    println!("T_0  = {:?}, T_16 = {:?}", submasks(0)?.members(), submasks(16)?.members());

    println!("\n=== Symbolic expansion of d³(ab): 2³ = 8 terms ===");
    for line in symbolic_expansion(3)? {
        println!("  {line}");
    }

    println!("\n=== Refinement of φ_{{5,19}}(ab): |T_19| = 8 terms ===");
    for line in symbolic_phi_product(5, 19)? {
        println!("  {line}");
    }
    Ok(())
}
