//! Oracle tests for the word calculus: every expansion is checked against an
//! independent evaluation route — the iterated derivation for the 2ⁿ-term
//! sum, direct word application for the T_k refinement, and a recursive
//! split for submask enumeration.

use sigma_calculus::workbench::fixtures::{
    f1_matrix_conjugation, f2_grid_scale_mult, f3_grid_doubling, f5_identity_commutator, Fixture,
};
use sigma_calculus::{
    apply_word, binomial_expand, index_shift, inner_sigma_derivation, leibniz_expand,
    leibniz_terms, phi_product, phi_product_terms, power_rule_check, random_element, submasks,
    symbolic_expansion, symbolic_phi_product, word_from_index, Algebra, Element, Error, Letter,
    LinearMap,
};

/// Independent oracle: apply d to a·b literally n times.
fn iterated_derivation(fixture: &Fixture, n: usize, a: &Element, b: &Element) -> Element {
    let mut acc = a.mul(b).unwrap();
    for _ in 0..n {
        acc = fixture.dee.apply(&acc).unwrap();
    }
    acc
}

#[test]
fn leibniz_expansion_matches_the_iterated_oracle() {
    let fixtures = [
        f1_matrix_conjugation(3, 1).unwrap(),
        f2_grid_scale_mult(8, 1).unwrap(),
        f3_grid_doubling(8, 1).unwrap(),
    ];
    for fixture in &fixtures {
        for n in 1..=10usize {
            for pair in 0..5u64 {
                let a = random_element(fixture.algebra, 10_000 + 100 * n as u64 + 2 * pair);
                let b = random_element(fixture.algebra, 10_001 + 100 * n as u64 + 2 * pair);
                let expansion = leibniz_expand(&fixture.sigma, &fixture.dee, n, &a, &b).unwrap();
                let oracle = iterated_derivation(fixture, n, &a, &b);
                let scale = oracle.norm().max(1e-12);
                let residual = expansion.sub(&oracle).norm() / scale;
                assert!(
                    residual <= 1e-8,
                    "{} n = {n} pair {pair}: residual {residual}",
                    fixture.name
                );
            }
        }
    }
}

#[test]
fn leibniz_n6_on_the_conjugation_fixture() {
    let f1 = f1_matrix_conjugation(3, 2).unwrap();
    let a = random_element(f1.algebra, 61);
    let b = random_element(f1.algebra, 62);
    let expansion = leibniz_expand(&f1.sigma, &f1.dee, 6, &a, &b).unwrap();
    let oracle = iterated_derivation(&f1, 6, &a, &b);
    assert!(expansion.sub(&oracle).norm() / oracle.norm() <= 1e-9);
}

#[test]
fn phi_product_matches_direct_word_application() {
    let f1 = f1_matrix_conjugation(3, 3).unwrap();
    for n in 1..=8usize {
        let a = random_element(f1.algebra, 20_000 + n as u64);
        let b = random_element(f1.algebra, 20_100 + n as u64);
        let ab = a.mul(&b).unwrap();
        for k in 0..(1u64 << n) {
            let refined = phi_product(&f1.sigma, &f1.dee, n, k, &a, &b).unwrap();
            let word = word_from_index(n, k).unwrap();
            let direct = apply_word(&word, &f1.sigma, &f1.dee, &ab).unwrap();
            let scale = direct.norm().max(1e-12);
            assert!(
                refined.sub(&direct).norm() / scale <= 1e-8,
                "n = {n}, k = {k}"
            );
        }
    }
}

#[test]
fn phi_product_at_19_has_eight_terms() {
    let f1 = f1_matrix_conjugation(3, 4).unwrap();
    let a = random_element(f1.algebra, 71);
    let b = random_element(f1.algebra, 72);
    let terms = phi_product_terms(&f1.sigma, &f1.dee, 5, 19, &a, &b).unwrap();
    assert_eq!(terms.len(), 8);
    let sum = sigma_calculus::pairwise_sum(f1.algebra, &terms);
    let direct = apply_word(
        &word_from_index(5, 19).unwrap(),
        &f1.sigma,
        &f1.dee,
        &a.mul(&b).unwrap(),
    )
    .unwrap();
    assert!(sum.sub(&direct).norm() / direct.norm().max(1e-12) <= 1e-9);
}

#[test]
fn full_mask_reproduces_the_leibniz_terms_exactly() {
    let f1 = f1_matrix_conjugation(3, 5).unwrap();
    for n in 1..=6usize {
        let a = random_element(f1.algebra, 30_000 + n as u64);
        let b = random_element(f1.algebra, 30_100 + n as u64);
        let k = (1u64 << n) - 1;
        let refined = phi_product_terms(&f1.sigma, &f1.dee, n, k, &a, &b).unwrap();
        let full = leibniz_terms(&f1.sigma, &f1.dee, n, &a, &b).unwrap();
        assert_eq!(refined.len(), full.len());
        for (x, y) in refined.iter().zip(full.iter()) {
            assert_eq!(x, y, "term sequences must coincide at k = 2^n − 1");
        }
    }
}

#[test]
fn index_shifts_are_the_executable_prepend_identities() {
    let f1 = f1_matrix_conjugation(3, 6).unwrap();
    let a = random_element(f1.algebra, 81);
    for n in 0..=10usize {
        for k in (0..(1u64 << n)).step_by(if n > 6 { 7 } else { 1 }) {
            let word = word_from_index(n, k).unwrap();
            let value = apply_word(&word, &f1.sigma, &f1.dee, &a).unwrap();
            for letter in [Letter::Dee, Letter::Sigma] {
                let (n1, k1) = index_shift(letter, n, k).unwrap();
                let shifted =
                    apply_word(&word_from_index(n1, k1).unwrap(), &f1.sigma, &f1.dee, &a).unwrap();
                let outer = match letter {
                    Letter::Dee => f1.dee.apply(&value).unwrap(),
                    Letter::Sigma => f1.sigma.apply(&value).unwrap(),
                };
                assert!(shifted.sub(&outer).norm() <= 1e-12, "n = {n}, k = {k}");
            }
            // Complementary forms by substituting k ↦ 2ⁿ−1−k.
            let complement = (1u64 << n) - 1 - k;
            let (_, dk) = index_shift(Letter::Dee, n, complement).unwrap();
            assert_eq!(dk, (1u64 << (n + 1)) - 1 - k);
            let (_, sk) = index_shift(Letter::Sigma, n, complement).unwrap();
            assert_eq!(sk, (1u64 << (n + 1)) - 1 - ((1u64 << n) + k));
        }
    }
}

/// Recursive construction: T_k = T_{k−2ⁿ} ∪ (2ⁿ + T_{k−2ⁿ}) for the top bit n.
fn recursive_submasks(k: u64) -> Vec<u64> {
    if k == 0 {
        return vec![0];
    }
    let top = 1u64 << (63 - k.leading_zeros());
    let rest = recursive_submasks(k - top);
    let mut out = rest.clone();
    out.extend(rest.iter().map(|t| top + t));
    out.sort_unstable();
    out
}

#[test]
fn submask_enumeration_agrees_with_the_recursive_split() {
    for k in 0..(1u64 << 12) {
        let direct = submasks(k).unwrap();
        assert_eq!(direct.members(), recursive_submasks(k), "k = {k}");
        assert_eq!(direct.len(), 1usize << k.count_ones(), "k = {k}");
    }
}

#[test]
fn submask_base_cases() {
    assert_eq!(submasks(0).unwrap().members(), &[0]);
    assert_eq!(submasks(1 << 10).unwrap().members(), &[0, 1 << 10]);
    let full = submasks((1 << 6) - 1).unwrap();
    assert_eq!(full.members().len(), 64);
    assert_eq!(full.members()[63], 63);
}

#[test]
fn binomial_collapse_equals_the_full_expansion() {
    let f5 = f5_identity_commutator(3, 8).unwrap();
    for n in 1..=10usize {
        let a = random_element(f5.algebra, 40_000 + n as u64);
        let b = random_element(f5.algebra, 40_100 + n as u64);
        let collapsed = binomial_expand(&f5.sigma, &f5.dee, n, &a, &b).unwrap();
        let full = leibniz_expand(&f5.sigma, &f5.dee, n, &a, &b).unwrap();
        let scale = full.norm().max(1e-12);
        assert!(
            collapsed.sub(&full).norm() / scale <= 1e-8,
            "n = {n}: {}",
            collapsed.sub(&full).norm() / scale
        );
    }
}

#[test]
fn classical_leibniz_when_sigma_is_identity() {
    // σ = ι, n = 2: d²(ab) = d²(a)b + 2d(a)d(b) + a d²(b).
    let f5 = f5_identity_commutator(3, 9).unwrap();
    let a = random_element(f5.algebra, 91);
    let b = random_element(f5.algebra, 92);
    let lhs = binomial_expand(&f5.sigma, &f5.dee, 2, &a, &b).unwrap();
    let da = f5.dee.apply(&a).unwrap();
    let db = f5.dee.apply(&b).unwrap();
    let dda = f5.dee.apply(&da).unwrap();
    let ddb = f5.dee.apply(&db).unwrap();
    let rhs = dda
        .mul(&b)
        .unwrap()
        .add(&da.mul(&db).unwrap().scale(sigma_calculus::C64::new(2.0, 0.0)))
        .add(&a.mul(&ddb).unwrap());
    assert!(lhs.sub(&rhs).norm() <= 1e-12);
}

#[test]
fn power_rule_on_the_hand_checked_instance() {
    // u = e13, a = e21 in M_3: d(a) = −e23 and d²(a) = 0.
    let algebra = Algebra::full_matrix(3).unwrap();
    let iota = LinearMap::identity(algebra);
    let u = algebra.matrix_unit(0, 2).unwrap();
    let a = algebra.matrix_unit(1, 0).unwrap();
    let dee = inner_sigma_derivation(&u, &iota, 1e-9).unwrap();
    let report = power_rule_check(&iota, &dee, &a, 6).unwrap();
    assert!(report.pass, "residual {}", report.max_residual);

    // n = 1 is the exact identity d(a) = 1!·d(a).
    let da = dee.apply(&a).unwrap();
    assert_eq!(da, algebra.matrix_unit(1, 2).unwrap().neg());

    // A generic element violates d²(a) = 0 and must be refused.
    let generic = random_element(algebra, 93);
    assert!(matches!(
        power_rule_check(&iota, &dee, &generic, 4),
        Err(Error::HypothesisViolation { .. })
    ));
}

#[test]
fn symbolic_rendering_against_goldens() {
    let golden = include_str!("golden/example_3_3.txt");
    let lines = symbolic_expansion(3).unwrap();
    assert_eq!(lines.join("\n") + "\n", golden);

    assert_eq!(symbolic_expansion(1).unwrap(), vec!["σ(a)d(b)", "d(a)σ(b)"]);

    let t19_lines = symbolic_phi_product(5, 19).unwrap();
    assert_eq!(t19_lines.len(), 8);
    assert_eq!(t19_lines[0], "σ⁵(a)dσ²d²(b)");
    assert_eq!(t19_lines[7], "dσ²d²(a)σ⁵(b)");
}

#[test]
fn word_rendering_golden() {
    assert_eq!(word_from_index(5, 11).unwrap().render(), "σdσdd");
    assert_eq!(word_from_index(5, 11).unwrap().to_string(), "σdσdd");
}
