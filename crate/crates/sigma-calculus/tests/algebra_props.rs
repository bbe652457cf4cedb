//! Property tests for the algebra layer: ring axioms, norm axioms, the
//! exponential, and the seeded-generator contract.

use proptest::prelude::*;
use sigma_calculus::{random_element, Algebra, C64, Element, SeriesParams};

fn element_strategy(algebra: Algebra) -> impl Strategy<Value = Element> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), algebra.dim()).prop_map(move |parts| {
        let coords = parts.into_iter().map(|(re, im)| C64::new(re, im)).collect();
        Element::new(algebra, coords).unwrap()
    })
}

fn m3() -> Algebra {
    Algebra::full_matrix(3).unwrap()
}

fn g8() -> Algebra {
    Algebra::grid_function(8).unwrap()
}

proptest! {
    #[test]
    fn matrix_product_is_associative(
        x in element_strategy(m3()),
        y in element_strategy(m3()),
        z in element_strategy(m3()),
    ) {
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        let bound = 1e-12 * x.norm() * y.norm() * z.norm();
        prop_assert!(left.sub(&right).norm() <= bound.max(1e-14));
    }

    #[test]
    fn norm_is_submultiplicative(
        x in element_strategy(m3()),
        y in element_strategy(m3()),
    ) {
        prop_assert!(x.mul(&y).unwrap().norm() <= x.norm() * y.norm() + 1e-12);
    }

    #[test]
    fn grid_norm_is_submultiplicative(
        x in element_strategy(g8()),
        y in element_strategy(g8()),
    ) {
        prop_assert!(x.mul(&y).unwrap().norm() <= x.norm() * y.norm() + 1e-12);
    }

    #[test]
    fn unit_is_two_sided(x in element_strategy(m3())) {
        let unit = m3().unit();
        prop_assert!(unit.mul(&x).unwrap().sub(&x).norm() == 0.0);
        prop_assert!(x.mul(&unit).unwrap().sub(&x).norm() == 0.0);
    }

    #[test]
    fn exp_inverse_round_trip(x in element_strategy(m3())) {
        let params = SeriesParams::default();
        let residual = x
            .exp(&params)
            .unwrap()
            .mul(&x.neg().exp(&params).unwrap())
            .unwrap()
            .sub(&m3().unit())
            .norm();
        prop_assert!(residual <= 1e-10, "residual {residual}");
    }

    #[test]
    fn grid_spectral_radius_is_sup_modulus(x in element_strategy(g8())) {
        let sup = x.coords().iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        let estimate = x.spectral_radius(30);
        prop_assert!((estimate - sup).abs() <= 1e-6 * sup.max(1.0));
    }
}

#[test]
fn gelfand_tracks_known_eigenvalues_through_similarity() {
    let a = m3();
    let mut coords = a.zero().coords().to_vec();
    coords[0] = C64::new(2.0, 0.0);
    coords[4] = C64::new(-1.0, 0.0);
    coords[8] = C64::new(0.25, 0.25);
    let diagonal = a.element(coords).unwrap();
    let v = random_element(a, 99).add(&a.unit().scale(C64::new(2.0, 0.0)));
    let sim = v
        .mul(&diagonal)
        .unwrap()
        .mul(&v.inverse(1e-12).unwrap())
        .unwrap();
    assert!((sim.spectral_radius(20) - 2.0).abs() <= 1e-4);
}

/// Mean entry modulus over seeds 1..=100 in M_2. A unit-Frobenius matrix with
/// Gaussian entries has E|entry| = 16/35 (the entry modulus squared is
/// Beta(1,3)); the 3-standard-error band 0.0084 was frozen from a 200k-sample
/// simulation of the per-seed mean with an independent generator.
#[test]
fn random_element_moduli_match_the_frozen_moment() {
    let m2 = Algebra::full_matrix(2).unwrap();
    let mut total = 0.0;
    for seed in 1..=100u64 {
        let x = random_element(m2, seed);
        total += x.coords().iter().map(|z| z.norm()).sum::<f64>() / 4.0;
    }
    let mean = total / 100.0;
    let expected = 16.0 / 35.0;
    assert!(
        (mean - expected).abs() <= 0.0084,
        "mean {mean} vs {expected}"
    );
}

#[test]
fn random_element_is_reproducible_across_algebras() {
    for algebra in [m3(), g8()] {
        let x = random_element(algebra, 7);
        let y = random_element(algebra, 7);
        assert_eq!(x, y);
        assert!((x.norm() - 1.0).abs() <= 1e-12);
    }
}
