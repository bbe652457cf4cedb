//! The binary word calculus behind the generalized Leibniz rule.
//!
//! A word φ_{n,k} is the composition of σ's and d's read off the n-digit
//! binary expansion of k: 1 ↦ d, 0 ↦ σ. The most significant digit is the
//! **outermost** map. Worked trace for φ_{5,11}: 11 = (01011)₂, so the letter
//! sequence is σ d σ d d and
//!
//! ```text
//! φ_{5,11}(a) = σ(d(σ(d(d(a)))))
//! ```
//!
//! i.e. the rightmost letter acts first. This orientation is forced by the
//! index shift dφ_{n,k} = φ_{n+1, 2ⁿ+k}: prepending a 1-digit applies d after
//! the existing word.
//!
//! T_k is the set of submasks of k — integers whose 1-bits all sit inside
//! k's — with |T_k| = 2^popcount(k). Both the iterated-derivation expansion
//! d^n(ab) = Σ_k φ_{n,k}(a)·φ_{n,2ⁿ−1−k}(b) and its refinement
//! φ_{n,k}(ab) = Σ_{ℓ∈T_k} φ_{n,ℓ}(a)·φ_{n,k−ℓ}(b) (σ an endomorphism) are
//! evaluated numerically here; 2ⁿ-term sums are accumulated pairwise so the
//! result does not depend on how the term list might be split across threads.

use crate::algebra::{pairwise_sum, Element, ElementDoc};
use crate::error::{Error, Result};
use crate::maps::{CheckReport, LinearMap};
use serde_json::json;
use std::fmt;

/// Letters of the word alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    Sigma,
    Dee,
}

/// Cost guard for combinatorial enumeration (indices, submasks).
const MAX_DIGITS: usize = 24;
/// Cost guard for numeric 2ⁿ-term expansions.
const MAX_EXPANSION_ORDER: usize = 16;
/// Cost guard for the symbolic renderer.
const MAX_SYMBOLIC_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    n: usize,
    k: u64,
    letters: Vec<Letter>, // most significant digit first
}

impl Word {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Raw rendering, one glyph per letter: φ_{5,11} → "σdσdd".
    pub fn render(&self) -> String {
        self.letters
            .iter()
            .map(|l| match l {
                Letter::Sigma => 'σ',
                Letter::Dee => 'd',
            })
            .collect()
    }

    /// Rendering with repeated letters collapsed into powers: "σdσd²".
    pub fn render_collapsed(&self) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let letter = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == letter {
                run += 1;
            }
            out.push(match letter {
                Letter::Sigma => 'σ',
                Letter::Dee => 'd',
            });
            if run > 1 {
                out.push_str(&superscript(run));
            }
            i += run;
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn superscript(mut n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if n == 0 {
        return DIGITS[0].to_string();
    }
    let mut rev = Vec::new();
    while n > 0 {
        rev.push(DIGITS[n % 10]);
        n /= 10;
    }
    rev.into_iter().rev().collect()
}

fn check_index(n: usize, k: u64) -> Result<()> {
    if n > MAX_DIGITS {
        return Err(Error::CostGuard {
            what: "word length n",
            limit: MAX_DIGITS as u64,
        });
    }
    if n < 64 && k >= 1u64 << n {
        return Err(Error::IndexOutOfRange { n, k });
    }
    Ok(())
}

/// The word φ_{n,k}: bit (n−1−i) of k decides letter i, 1 ↦ d, 0 ↦ σ.
pub fn word_from_index(n: usize, k: u64) -> Result<Word> {
    check_index(n, k)?;
    let letters = (0..n)
        .map(|i| {
            if (k >> (n - 1 - i)) & 1 == 1 {
                Letter::Dee
            } else {
                Letter::Sigma
            }
        })
        .collect();
    Ok(Word { n, k, letters })
}

/// Index arithmetic of prepending one letter:
/// d·φ_{n,k} = φ_{n+1, 2ⁿ+k} and σ·φ_{n,k} = φ_{n+1, k}.
pub fn index_shift(letter: Letter, n: usize, k: u64) -> Result<(usize, u64)> {
    check_index(n, k)?;
    Ok(match letter {
        Letter::Dee => (n + 1, (1u64 << n) + k),
        Letter::Sigma => (n + 1, k),
    })
}

/// Evaluate φ_{n,k}(a) by direct composition, rightmost letter first.
pub fn apply_word(
    word: &Word,
    sigma: &LinearMap,
    dee: &LinearMap,
    a: &Element,
) -> Result<Element> {
    let mut acc = a.clone();
    for letter in word.letters.iter().rev() {
        acc = match letter {
            Letter::Sigma => sigma.apply(&acc)?,
            Letter::Dee => dee.apply(&acc)?,
        };
    }
    Ok(acc)
}

/// All submasks of k in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskSet {
    k: u64,
    members: Vec<u64>,
}

impl MaskSet {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Enumerate T_k = {ℓ : ℓ AND k = ℓ}, ascending. The classic descending
/// submask walk ℓ ↦ (ℓ−1) AND k visits exactly the 2^popcount(k) members.
pub fn submasks(k: u64) -> Result<MaskSet> {
    if k > 1u64 << MAX_DIGITS {
        return Err(Error::CostGuard {
            what: "submask argument k",
            limit: 1u64 << MAX_DIGITS,
        });
    }
    let mut members = Vec::with_capacity(1usize << k.count_ones());
    let mut s = k;
    loop {
        members.push(s);
        if s == 0 {
            break;
        }
        s = (s - 1) & k;
    }
    members.reverse();
    Ok(MaskSet { k, members })
}

/// All values φ_{n,j}(a) for 0 ≤ j < 2ⁿ, computed level by level: the lower
/// half of level m+1 is σ applied to level m, the upper half is d applied to
/// level m. This is the index shift identity run forward.
pub(crate) fn phi_table(
    sigma: &LinearMap,
    dee: &LinearMap,
    n: usize,
    a: &Element,
) -> Result<Vec<Element>> {
    assert!(n <= MAX_EXPANSION_ORDER);
    let mut level = vec![a.clone()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(level.len() * 2);
        for value in &level {
            next.push(sigma.apply(value)?);
        }
        for value in &level {
            next.push(dee.apply(value)?);
        }
        level = next;
    }
    Ok(level)
}

fn check_expansion_order(n: usize) -> Result<()> {
    if n > MAX_EXPANSION_ORDER {
        return Err(Error::CostGuard {
            what: "expansion order n",
            limit: MAX_EXPANSION_ORDER as u64,
        });
    }
    Ok(())
}

/// Light hypothesis guard: a handful of seeded random pairs. The defect of a
/// non-qualifying map is a nonzero bilinear form, so random pairs expose it
/// almost surely; the exhaustive basis sweep stays in the public predicates,
/// not in this per-call guard.
fn guard_pairs(
    algebra: crate::algebra::Algebra,
    seed: u64,
    check: &str,
    mut residual: impl FnMut(&Element, &Element) -> Result<f64>,
) -> Result<()> {
    let mut rng = crate::rng::Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..12 {
        let a = crate::algebra::element_from_rng(algebra, &mut rng);
        let b = crate::algebra::element_from_rng(algebra, &mut rng);
        worst = worst.max(residual(&a, &b)?);
    }
    if worst > 1e-9 {
        return Err(Error::HypothesisViolation {
            check: check.into(),
            residual: worst,
            tol: 1e-9,
        });
    }
    Ok(())
}

fn require_sigma_derivation(dee: &LinearMap, sigma: &LinearMap) -> Result<()> {
    if dee.algebra() != sigma.algebra() {
        return Err(Error::AlgebraMismatch {
            expected: dee.algebra(),
            found: sigma.algebra(),
        });
    }
    guard_pairs(dee.algebra(), 0x1eb, "d is a σ-derivation", |a, b| {
        crate::maps::sigma_derivation_residual(dee, sigma, a, b)
    })
}

fn require_endomorphism(sigma: &LinearMap) -> Result<()> {
    guard_pairs(sigma.algebra(), 0x3e0, "σ is an endomorphism", |a, b| {
        Ok(crate::maps::mult_defect(sigma, a, b)?.norm() / (a.norm() * b.norm()))
    })
}

/// The 2ⁿ terms φ_{n,k}(a)·φ_{n,2ⁿ−1−k}(b), k ascending.
pub fn leibniz_terms(
    sigma: &LinearMap,
    dee: &LinearMap,
    n: usize,
    a: &Element,
    b: &Element,
) -> Result<Vec<Element>> {
    check_expansion_order(n)?;
    require_sigma_derivation(dee, sigma)?;
    let table_a = phi_table(sigma, dee, n, a)?;
    let table_b = phi_table(sigma, dee, n, b)?;
    let size = 1usize << n;
    (0..size)
        .map(|k| table_a[k].mul(&table_b[size - 1 - k]))
        .collect()
}

/// d^n(ab) as the 2ⁿ-term word expansion.
pub fn leibniz_expand(
    sigma: &LinearMap,
    dee: &LinearMap,
    n: usize,
    a: &Element,
    b: &Element,
) -> Result<Element> {
    let terms = leibniz_terms(sigma, dee, n, a, b)?;
    Ok(pairwise_sum(a.algebra(), &terms))
}

/// The |T_k| terms φ_{n,ℓ}(a)·φ_{n,k−ℓ}(b) for ℓ ∈ T_k, ascending in ℓ.
/// Requires σ to be an endomorphism and d a σ-derivation.
pub fn phi_product_terms(
    sigma: &LinearMap,
    dee: &LinearMap,
    n: usize,
    k: u64,
    a: &Element,
    b: &Element,
) -> Result<Vec<Element>> {
    check_expansion_order(n)?;
    check_index(n, k)?;
    require_endomorphism(sigma)?;
    require_sigma_derivation(dee, sigma)?;
    let table_a = phi_table(sigma, dee, n, a)?;
    let table_b = phi_table(sigma, dee, n, b)?;
    submasks(k)?
        .members()
        .iter()
        .map(|&l| table_a[l as usize].mul(&table_b[(k - l) as usize]))
        .collect()
}

/// φ_{n,k}(ab) as the submask expansion over T_k.
pub fn phi_product(
    sigma: &LinearMap,
    dee: &LinearMap,
    n: usize,
    k: u64,
    a: &Element,
    b: &Element,
) -> Result<Element> {
    let terms = phi_product_terms(sigma, dee, n, k, a, b)?;
    Ok(pairwise_sum(a.algebra(), &terms))
}

pub(crate) fn binomial(n: u32, r: u32) -> f64 {
    debug_assert!(r <= n && n <= 34);
    let mut acc: u128 = 1;
    let r = r.min(n - r);
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as f64
}

pub(crate) fn factorial(n: u32) -> f64 {
    debug_assert!(n <= 20);
    let mut acc: u64 = 1;
    for i in 2..=n as u64 {
        acc *= i;
    }
    acc as f64
}

/// The binomial collapse d^n(ab) = Σ_r C(n,r)·d^r(a)·d^{n−r}(b), valid when
/// dσ = σd = d; both map-level identities are checked to 1e-10 up front.
pub fn binomial_expand(
    sigma: &LinearMap,
    dee: &LinearMap,
    n: usize,
    a: &Element,
    b: &Element,
) -> Result<Element> {
    check_expansion_order(n)?;
    let d_sigma = dee.compose(sigma)?.sub(dee).frobenius();
    let sigma_d = sigma.compose(dee)?.sub(dee).frobenius();
    if d_sigma > 1e-10 || sigma_d > 1e-10 {
        return Err(Error::HypothesisViolation {
            check: "dσ = σd = d".into(),
            residual: d_sigma.max(sigma_d),
            tol: 1e-10,
        });
    }
    let mut d_powers_a = vec![a.clone()];
    let mut d_powers_b = vec![b.clone()];
    for r in 0..n {
        d_powers_a.push(dee.apply(&d_powers_a[r])?);
        d_powers_b.push(dee.apply(&d_powers_b[r])?);
    }
    let terms: Result<Vec<Element>> = (0..=n)
        .map(|r| {
            let coeff = binomial(n as u32, r as u32);
            Ok(d_powers_a[r]
                .mul(&d_powers_b[n - r])?
                .scale(crate::linalg::C64::new(coeff, 0.0)))
        })
        .collect();
    Ok(pairwise_sum(a.algebra(), &terms?))
}

/// Verifies d^n(aⁿ) = n!·d(a)ⁿ for n = 1..n_max. Preconditions: d²(a) ≈ 0,
/// dσ = σd = d at the map level, and σ an endomorphism. The reported residual
/// is max_n ‖d^n(aⁿ) − n!·d(a)ⁿ‖ / n!, held against 1e-8.
pub fn power_rule_check(
    sigma: &LinearMap,
    dee: &LinearMap,
    a: &Element,
    n_max: usize,
) -> Result<CheckReport> {
    if n_max == 0 || n_max > 20 {
        return Err(Error::InvalidParameter("n_max must be in 1..=20".into()));
    }
    let dd = dee.apply(&dee.apply(a)?)?.norm();
    if dd > 1e-10 {
        return Err(Error::HypothesisViolation {
            check: "d²(a) = 0".into(),
            residual: dd,
            tol: 1e-10,
        });
    }
    let d_sigma = dee.compose(sigma)?.sub(dee).frobenius();
    let sigma_d = sigma.compose(dee)?.sub(dee).frobenius();
    if d_sigma > 1e-10 || sigma_d > 1e-10 {
        return Err(Error::HypothesisViolation {
            check: "dσ = σd = d".into(),
            residual: d_sigma.max(sigma_d),
            tol: 1e-10,
        });
    }
    require_endomorphism(sigma)?;

    let da = dee.apply(a)?;
    let mut residuals = Vec::with_capacity(n_max);
    let mut max_scaled = 0.0f64;
    for n in 1..=n_max {
        let mut lhs = a.pow(n as u32);
        for _ in 0..n {
            lhs = dee.apply(&lhs)?;
        }
        let rhs = da
            .pow(n as u32)
            .scale(crate::linalg::C64::new(factorial(n as u32), 0.0));
        let r = lhs.sub(&rhs).norm();
        residuals.push(r);
        max_scaled = max_scaled.max(r / factorial(n as u32));
    }
    let witness = json!({
        "a": ElementDoc::from_element(a).to_value(),
        "residuals": residuals,
    });
    Ok(CheckReport::new(
        "power-rule",
        max_scaled,
        1e-8,
        Some(witness),
        n_max as u64,
    ))
}

fn check_symbolic_order(n: usize) -> Result<()> {
    if n > MAX_SYMBOLIC_ORDER {
        return Err(Error::CostGuard {
            what: "symbolic order n",
            limit: MAX_SYMBOLIC_ORDER as u64,
        });
    }
    Ok(())
}

/// One line per term of d^n(ab), k ascending, powers collapsed:
/// n = 3 starts with "σ³(a)d³(b)".
pub fn symbolic_expansion(n: usize) -> Result<Vec<String>> {
    check_symbolic_order(n)?;
    let size = 1u64 << n;
    (0..size)
        .map(|k| {
            let left = word_from_index(n, k)?;
            let right = word_from_index(n, size - 1 - k)?;
            Ok(format!(
                "{}(a){}(b)",
                left.render_collapsed(),
                right.render_collapsed()
            ))
        })
        .collect()
}

/// One line per term of φ_{n,k}(ab), ℓ ∈ T_k ascending.
pub fn symbolic_phi_product(n: usize, k: u64) -> Result<Vec<String>> {
    check_symbolic_order(n)?;
    check_index(n, k)?;
    submasks(k)?
        .members()
        .iter()
        .map(|&l| {
            let left = word_from_index(n, l)?;
            let right = word_from_index(n, k - l)?;
            Ok(format!(
                "{}(a){}(b)",
                left.render_collapsed(),
                right.render_collapsed()
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_element, Algebra};
    use crate::maps::{make_map, MapKind};
    use crate::linalg::C64;

    #[test]
    fn word_5_11_is_sigma_d_sigma_d_d() {
        let w = word_from_index(5, 11).unwrap();
        assert_eq!(w.render(), "σdσdd");
        assert_eq!(w.render_collapsed(), "σdσd²");
    }

    #[test]
    fn one_letter_words() {
        assert_eq!(word_from_index(1, 1).unwrap().render(), "d");
        assert_eq!(word_from_index(1, 0).unwrap().render(), "σ");
        assert_eq!(word_from_index(3, 4).unwrap().render(), "dσσ");
    }

    #[test]
    fn word_index_round_trip_exhaustive() {
        for n in 0..=12usize {
            for k in 0..(1u64 << n) {
                let w = word_from_index(n, k).unwrap();
                let rebuilt = w
                    .letters()
                    .iter()
                    .fold(0u64, |acc, l| (acc << 1) | u64::from(*l == Letter::Dee));
                assert_eq!(rebuilt, k, "n = {n}");
            }
        }
    }

    #[test]
    fn index_bounds_are_enforced() {
        assert!(matches!(
            word_from_index(3, 8),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            word_from_index(25, 0),
            Err(Error::CostGuard { .. })
        ));
    }

    #[test]
    fn index_shift_examples() {
        assert_eq!(index_shift(Letter::Dee, 3, 5).unwrap(), (4, 13));
        assert_eq!(index_shift(Letter::Sigma, 3, 5).unwrap(), (4, 5));
        // Complementary form: d·φ_{n, 2ⁿ−1−k} = φ_{n+1, 2^{n+1}−1−k}.
        let (n1, k1) = index_shift(Letter::Dee, 3, 7 - 2).unwrap();
        assert_eq!((n1, k1), (4, 13));
        assert_eq!(k1, 15 - 2);
    }

    #[test]
    fn submasks_of_19() {
        let t = submasks(19).unwrap();
        assert_eq!(t.members(), &[0, 1, 2, 3, 16, 17, 18, 19]);
        assert_eq!(t.len(), 8);
    }

    #[test]
    fn submask_edge_cases() {
        assert_eq!(submasks(0).unwrap().members(), &[0]);
        assert_eq!(submasks(16).unwrap().members(), &[0, 16]);
        assert_eq!(submasks(5).unwrap().members(), &[0, 1, 4, 5]);
        assert!(matches!(
            submasks(1 << 25),
            Err(Error::CostGuard { .. })
        ));
    }

    #[test]
    fn empty_word_is_identity() {
        let a = Algebra::full_matrix(2).unwrap();
        let sigma = LinearMap::identity(a);
        let dee = LinearMap::identity(a);
        let w = word_from_index(0, 0).unwrap();
        let x = random_element(a, 5);
        assert_eq!(apply_word(&w, &sigma, &dee, &x).unwrap(), x);
    }

    #[test]
    fn scale_word_applies_powers() {
        let g = Algebra::grid_function(4).unwrap();
        let sigma = make_map(g, MapKind::Scale(C64::new(0.5, 0.0))).unwrap();
        let dee = LinearMap::identity(g);
        let w = word_from_index(3, 0).unwrap(); // σσσ
        let x = random_element(g, 6);
        let y = apply_word(&w, &sigma, &dee, &x).unwrap();
        assert!(y.sub(&x.scale(C64::new(0.125, 0.0))).norm() < 1e-15);
    }

    #[test]
    fn word_application_matches_composition() {
        let a = Algebra::full_matrix(3).unwrap();
        let sigma = LinearMap::random(a, 1);
        let dee = LinearMap::random(a, 2);
        let w = word_from_index(3, 5).unwrap(); // dσd
        let x = random_element(a, 3);
        let direct = apply_word(&w, &sigma, &dee, &x).unwrap();
        let composed = dee
            .compose(&sigma.compose(&dee).unwrap())
            .unwrap()
            .apply(&x)
            .unwrap();
        assert!(direct.sub(&composed).norm() <= 1e-12);
    }

    #[test]
    fn phi_table_matches_apply_word() {
        let a = Algebra::full_matrix(2).unwrap();
        let sigma = LinearMap::random(a, 11);
        let dee = LinearMap::random(a, 12);
        let x = random_element(a, 13);
        let n = 5;
        let table = phi_table(&sigma, &dee, n, &x).unwrap();
        for k in 0..(1u64 << n) {
            let w = word_from_index(n, k).unwrap();
            let direct = apply_word(&w, &sigma, &dee, &x).unwrap();
            assert!(table[k as usize].sub(&direct).norm() <= 1e-12, "k = {k}");
        }
    }

    #[test]
    fn symbolic_n1_and_n2() {
        assert_eq!(symbolic_expansion(1).unwrap(), vec!["σ(a)d(b)", "d(a)σ(b)"]);
        assert_eq!(
            symbolic_expansion(2).unwrap(),
            vec!["σ²(a)d²(b)", "σd(a)dσ(b)", "dσ(a)σd(b)", "d²(a)σ²(b)"]
        );
    }

    #[test]
    fn symbolic_n3_matches_the_eight_products() {
        let lines = symbolic_expansion(3).unwrap();
        assert_eq!(
            lines,
            vec![
                "σ³(a)d³(b)",
                "σ²d(a)d²σ(b)",
                "σdσ(a)dσd(b)",
                "σd²(a)dσ²(b)",
                "dσ²(a)σd²(b)",
                "dσd(a)σdσ(b)",
                "d²σ(a)σ²d(b)",
                "d³(a)σ³(b)",
            ]
        );
    }

    #[test]
    fn symbolic_guard() {
        assert!(matches!(
            symbolic_expansion(11),
            Err(Error::CostGuard { .. })
        ));
    }

    #[test]
    fn leibniz_n1_is_the_defining_identity() {
        let a = Algebra::full_matrix(2).unwrap();
        let v = a
            .matrix_unit(0, 0)
            .unwrap()
            .add(&a.matrix_unit(1, 1).unwrap().scale(C64::new(2.0, 0.0)));
        let sigma = make_map(a, MapKind::Conjugation(v)).unwrap();
        let u = random_element(a, 30);
        let dee = crate::maps::inner_sigma_derivation(&u, &sigma, 1e-9).unwrap();
        let x = random_element(a, 31);
        let y = random_element(a, 32);
        let expansion = leibniz_expand(&sigma, &dee, 1, &x, &y).unwrap();
        let direct = dee
            .apply(&x)
            .unwrap()
            .mul(&sigma.apply(&y).unwrap())
            .unwrap()
            .add(&sigma.apply(&x).unwrap().mul(&dee.apply(&y).unwrap()).unwrap());
        assert!(expansion.sub(&direct).norm() <= 1e-12);
    }

    #[test]
    fn leibniz_rejects_non_derivation() {
        let a = Algebra::full_matrix(2).unwrap();
        let sigma = LinearMap::identity(a);
        let dee = LinearMap::random(a, 40);
        let x = random_element(a, 41);
        let y = random_element(a, 42);
        assert!(matches!(
            leibniz_expand(&sigma, &dee, 2, &x, &y),
            Err(Error::HypothesisViolation { .. })
        ));
    }

    #[test]
    fn phi_product_rejects_non_endomorphism() {
        let g = Algebra::grid_function(4).unwrap();
        let sigma = make_map(g, MapKind::Scale(C64::new(0.5, 0.0))).unwrap();
        let h0 = random_element(g, 50);
        let dee = make_map(g, MapKind::MultBy(h0)).unwrap();
        let x = random_element(g, 51);
        let y = random_element(g, 52);
        assert!(matches!(
            phi_product(&sigma, &dee, 2, 1, &x, &y),
            Err(Error::HypothesisViolation { .. })
        ));
    }

    #[test]
    fn binomial_coefficients_sum_to_powers_of_two() {
        for n in 0..=16u32 {
            let total: f64 = (0..=n).map(|r| binomial(n, r)).sum();
            assert_eq!(total, (1u64 << n) as f64);
        }
    }

    #[test]
    fn binomial_expand_requires_commuting_hypothesis() {
        let g = Algebra::grid_function(4).unwrap();
        let sigma = make_map(g, MapKind::Scale(C64::new(0.5, 0.0))).unwrap();
        let dee = make_map(g, MapKind::MultBy(random_element(g, 60))).unwrap();
        let x = random_element(g, 61);
        let y = random_element(g, 62);
        assert!(matches!(
            binomial_expand(&sigma, &dee, 3, &x, &y),
            Err(Error::HypothesisViolation { .. })
        ));
    }

    #[test]
    fn power_rule_guards_on_d_squared() {
        let a = Algebra::full_matrix(3).unwrap();
        let sigma = LinearMap::identity(a);
        let u = random_element(a, 70);
        let dee = crate::maps::inner_sigma_derivation(&u, &sigma, 1e-9).unwrap();
        let x = random_element(a, 71); // generic: d²(x) ≠ 0
        assert!(matches!(
            power_rule_check(&sigma, &dee, &x, 4),
            Err(Error::HypothesisViolation { .. })
        ));
    }
}
