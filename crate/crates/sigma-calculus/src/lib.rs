//! Numerical and combinatorial workbench for σ-derivation calculus on
//! finite-dimensional Banach algebras.
//!
//! A linear map d is a σ-derivation when d(ab) = d(a)σ(b) + σ(a)d(b) for a
//! linear — not necessarily multiplicative — σ. This crate realizes that
//! calculus concretely on two desk-scale algebras (full complex matrix
//! algebras and cyclic-grid function algebras) and verifies its identities
//! numerically and combinatorially:
//!
//! * [`algebra`] — elements, products, norms, in-algebra exponentials,
//!   Gelfand spectral-radius estimates, nullspaces, seeded random elements.
//! * [`maps`] — superoperators with constructors for the concrete map
//!   families, plus the classifying predicates (σ-derivation,
//!   σ-endomorphism, semi-endomorphism, multiplizing) and the inner
//!   σ-derivation construction with its commutation precondition.
//! * [`words`] — the φ_{n,k} word calculus: submask sets T_k, the 2ⁿ-term
//!   generalized Leibniz expansion of dⁿ(ab), its T_k refinement, the
//!   binomial collapse, the power rule dⁿ(aⁿ) = n!·d(a)ⁿ, and a symbolic
//!   renderer.
//! * [`dynamics`] — one-parameter evolutions: power series vs closed
//!   conjugation orbits, inner families, alternating sums, and generator
//!   recovery by finite differences.
//! * [`workbench`] — seeded fixtures, the batch verification suites behind
//!   the `sigma-verify` binary, and JSON reporting.
//!
//! Everything is a pure function over immutable values; all randomness comes
//! from an explicitly seeded, platform-stable generator ([`rng`]), so every
//! run is reproducible bit for bit.
//!
//! Run the demos in `examples/` to see each capability end to end, e.g.
//! `cargo run --example leibniz_rule`.

pub mod algebra;
pub mod dynamics;
mod error;
pub mod linalg;
pub mod maps;
pub mod rng;
pub mod words;
pub mod workbench;

pub use algebra::{
    nullspace, pairwise_sum, random_element, Algebra, Element, ElementDoc, SeriesParams,
};
pub use dynamics::{
    alpha_closed, alpha_series, alpha_series_map, alternating_sum, generator_estimate,
    generator_map_extrapolated, inner_family, series_closed_relation, DynamicsSpec,
    HypothesisFlags,
};
pub use error::{Error, Result};
pub use linalg::{C64, CMatrix};
pub use maps::{
    defect_commutant, inner_sigma_derivation, is_endomorphism, is_multiplizing,
    is_semi_endomorphism, is_sigma_derivation, is_sigma_endomorphism, make_map, mult_defect,
    prop218_residual, CheckParams, CheckReport, LinearMap, MapKind,
};
pub use words::{
    apply_word, binomial_expand, index_shift, leibniz_expand, leibniz_terms, phi_product,
    phi_product_terms, power_rule_check, submasks, symbolic_expansion, symbolic_phi_product,
    word_from_index, Letter, MaskSet, Word,
};
pub use workbench::{
    expand_lines, ks_demo, run_suite, ww_nogo_check, SuiteConfig, SuiteEntry, SuiteName,
    SuiteReport,
};
