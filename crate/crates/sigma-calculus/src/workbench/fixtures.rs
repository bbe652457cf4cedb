//! Seeded fixtures shared by the verification suites, the demos, and the
//! acceptance tests. Everything is built through the public constructors so
//! dimension and seed sweeps exercise the same code paths users do.

use crate::algebra::{random_element, Algebra, Element};
use crate::dynamics::DynamicsSpec;
use crate::error::Result;
use crate::linalg::C64;
use crate::maps::{inner_sigma_derivation, make_map, LinearMap, MapKind};
use crate::rng::Xoshiro256PlusPlus;

/// A (σ, d) pair on one algebra, with d a σ-derivation by construction.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub algebra: Algebra,
    pub sigma: LinearMap,
    pub dee: LinearMap,
}

pub(crate) fn subseed(seed: u64, tag: u64) -> u64 {
    seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17)
}

/// F1: matrix algebra, σ = conjugation by an invertible v, d inner with a
/// random u. σ is an endomorphism, so any u is admissible.
pub fn f1_matrix_conjugation(dim: usize, seed: u64) -> Result<Fixture> {
    let algebra = Algebra::full_matrix(dim)?;
    let mut attempt = 0u64;
    let v = loop {
        let candidate = random_element(algebra, subseed(seed, 0xF1A + attempt))
            .add(&algebra.unit().scale(C64::new(1.5, 0.0)));
        if candidate.inverse(1e-12).is_ok() {
            break candidate;
        }
        attempt += 1;
        assert!(attempt < 64, "no invertible conjugator found");
    };
    let sigma = make_map(algebra, MapKind::Conjugation(v))?;
    let u = random_element(algebra, subseed(seed, 0xF1B));
    let dee = inner_sigma_derivation(&u, &sigma, 1e-9)?;
    Ok(Fixture {
        name: "f1",
        algebra,
        sigma,
        dee,
    })
}

/// F2: grid algebra, σ(f) = f/2 and d(f) = f·h0 — a σ-derivation whose σ is
/// not multiplicative and does not fix the unit.
pub fn f2_grid_scale_mult(points: usize, seed: u64) -> Result<Fixture> {
    let algebra = Algebra::grid_function(points)?;
    let h0 = random_element(algebra, subseed(seed, 0xF2A));
    let sigma = make_map(algebra, MapKind::Scale(C64::new(0.5, 0.0)))?;
    let dee = make_map(algebra, MapKind::MultBy(h0))?;
    Ok(Fixture {
        name: "f2",
        algebra,
        sigma,
        dee,
    })
}

/// F3: grid algebra with the doubling map V(f)(j) = f(2j mod N):
/// σ = ½·V and d = mult_by(h0)∘V.
pub fn f3_grid_doubling(points: usize, seed: u64) -> Result<Fixture> {
    let algebra = Algebra::grid_function(points)?;
    let doubling = make_map(algebra, MapKind::GridDoubling)?;
    let sigma = doubling.scale(C64::new(0.5, 0.0));
    let h0 = random_element(algebra, subseed(seed, 0xF3A));
    let mult = make_map(algebra, MapKind::MultBy(h0))?;
    let dee = mult.compose(&doubling)?;
    Ok(Fixture {
        name: "f3",
        algebra,
        sigma,
        dee,
    })
}

/// F5: matrix algebra with σ = ι and d = [u, ·], the classical commutator
/// derivation.
pub fn f5_identity_commutator(dim: usize, seed: u64) -> Result<Fixture> {
    let algebra = Algebra::full_matrix(dim)?;
    let sigma = LinearMap::identity(algebra);
    let u = random_element(algebra, subseed(seed, 0xF5A));
    let dee = inner_sigma_derivation(&u, &sigma, 1e-9)?;
    Ok(Fixture {
        name: "f5",
        algebra,
        sigma,
        dee,
    })
}

/// F4: M_4 with P = diag(1,1,0,0), σ(a) = PaP, and u block-diagonal with a
/// scalar P-block: u = λP ⊕ w.
///
/// The scalar P-block is forced: the inner-family construction requires u to
/// commute with every multiplicativity defect of σ, the defects of a
/// compression span the whole corner P·M·P, and only scalars are central
/// there. The hypothesis flags (σ² = σ, σ(au) = σ(a)u, σ(ua) = uσ(a)) then
/// hold exactly, which is what the alternating-sum and series/closed-form
/// relations need.
pub fn f4_compression_dynamics(seed: u64) -> Result<DynamicsSpec> {
    let algebra = Algebra::full_matrix(4)?;
    let mut p_coords = algebra.zero().coords().to_vec();
    p_coords[0] = C64::new(1.0, 0.0); // (0,0)
    p_coords[5] = C64::new(1.0, 0.0); // (1,1)
    let p = algebra.element(p_coords)?;
    let sigma = make_map(algebra, MapKind::Compression(p.clone()))?;

    let mut rng = Xoshiro256PlusPlus::seed_from_u64(subseed(seed, 0xF4A));
    let lambda = C64::new(0.6 + 0.2 * rng.uniform(), -0.3 + 0.2 * rng.uniform());
    let mut u_coords = p.scale(lambda).coords().to_vec();
    for i in 2..4 {
        for j in 2..4 {
            u_coords[i * 4 + j] = rng.complex_normal().scale(0.5);
        }
    }
    let u = algebra.element(u_coords)?;
    DynamicsSpec::new(u, sigma)
}

/// σ = ι dynamics with a random u: the fully non-degenerate one-parameter
/// family (conjugation orbits), used wherever the compression fixture is
/// structurally trivial.
pub fn iota_dynamics(dim: usize, seed: u64) -> Result<DynamicsSpec> {
    let algebra = Algebra::full_matrix(dim)?;
    let u = random_element(algebra, subseed(seed, 0x10A));
    DynamicsSpec::new(u, LinearMap::identity(algebra))
}

/// The embedded hand instance for the commutator demo on dim ≥ 3:
/// u = e13, a = e21, giving d(a) = [u, a] = −e23 and d²(a) = 0.
pub fn ks_hand_instance(dim: usize) -> Result<(Element, Element)> {
    let algebra = Algebra::full_matrix(dim)?;
    let u = algebra.matrix_unit(0, 2)?;
    let a = algebra.matrix_unit(1, 0)?;
    Ok((u, a))
}

/// Jordan-pair instance: u the nilpotent Jordan chain Σ e_{i,i+1} and
/// a = diag(0, 1, …, dim−1), so d(a) = u, d²(a) = 0, and the power-rule table
/// dⁿ(aⁿ) = n!·d(a)ⁿ has nonzero rows up to n = dim−1.
pub fn jordan_power_instance(dim: usize) -> Result<(Element, Element)> {
    let algebra = Algebra::full_matrix(dim)?;
    let mut u = algebra.zero();
    for i in 0..dim - 1 {
        u = u.add(&algebra.matrix_unit(i, i + 1)?);
    }
    let mut diag = algebra.zero().coords().to_vec();
    for (i, entry) in diag.iter_mut().enumerate().take(dim * dim) {
        if i % (dim + 1) == 0 {
            *entry = C64::new((i / (dim + 1)) as f64, 0.0);
        }
    }
    let a = algebra.element(diag)?;
    Ok((u, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{is_sigma_derivation, CheckParams};

    #[test]
    fn fixture_derivations_hold() {
        for fixture in [
            f1_matrix_conjugation(3, 1).unwrap(),
            f2_grid_scale_mult(8, 1).unwrap(),
            f3_grid_doubling(8, 1).unwrap(),
            f5_identity_commutator(3, 1).unwrap(),
        ] {
            let report =
                is_sigma_derivation(&fixture.dee, &fixture.sigma, &CheckParams::default())
                    .unwrap();
            assert!(
                report.pass,
                "{}: residual {}",
                fixture.name, report.max_residual
            );
        }
    }

    #[test]
    fn f4_flags_hold_exactly() {
        let spec = f4_compression_dynamics(1).unwrap();
        assert!(spec.flags().all());
        // The derived generator vanishes: the commutant forces a scalar P-block.
        assert_eq!(spec.dee().frobenius(), 0.0);
    }

    #[test]
    fn jordan_instance_has_flat_second_difference() {
        let (u, a) = jordan_power_instance(4).unwrap();
        let algebra = u.algebra();
        let sigma = LinearMap::identity(algebra);
        let dee = inner_sigma_derivation(&u, &sigma, 1e-9).unwrap();
        let da = dee.apply(&a).unwrap();
        assert!(da.sub(&u).norm() <= 1e-14);
        assert!(dee.apply(&da).unwrap().norm() <= 1e-14);
    }

    #[test]
    fn hand_instance_matches_the_computation() {
        let (u, a) = ks_hand_instance(3).unwrap();
        let algebra = u.algebra();
        let sigma = LinearMap::identity(algebra);
        let dee = inner_sigma_derivation(&u, &sigma, 1e-9).unwrap();
        let da = dee.apply(&a).unwrap();
        let minus_e23 = algebra.matrix_unit(1, 2).unwrap().neg();
        assert!(da.sub(&minus_e23).norm() <= 1e-14);
        assert!(dee.apply(&da).unwrap().norm() <= 1e-14);
    }
}
