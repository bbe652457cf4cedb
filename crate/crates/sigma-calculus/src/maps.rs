//! Linear maps on an algebra (superoperators) and the predicates that
//! classify them: σ-derivations, σ-endomorphisms, semi-endomorphisms,
//! multiplizing derivations, and the inner constructions.
//!
//! A map is stored as its D×D coordinate matrix acting on the fixed row-major
//! flattening of elements. Predicates evaluate every basis pair exhaustively
//! whenever D² ≤ 4096 (bilinearity makes that a complete proof at machine
//! precision) and add seeded random pairs on top; reported residuals are
//! normalized by the product of the input norms so they are scale-free.

use crate::algebra::{element_from_rng, Algebra, Element, ElementDoc};
use crate::error::{Error, Result};
use crate::linalg::{C64, CMatrix};
use crate::rng::Xoshiro256PlusPlus;
use serde::Serialize;
use serde_json::{json, Value};

/// Basis-pair exhaustion is affordable up to this coordinate-dimension square.
const EXHAUSTIVE_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    algebra: Algebra,
    matrix: CMatrix,
}

impl LinearMap {
    pub fn identity(algebra: Algebra) -> LinearMap {
        LinearMap {
            algebra,
            matrix: CMatrix::identity(algebra.dim()),
        }
    }

    pub fn from_matrix(algebra: Algebra, matrix: CMatrix) -> Result<LinearMap> {
        let d = algebra.dim();
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: matrix.rows().max(matrix.cols()),
            });
        }
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(LinearMap { algebra, matrix })
    }

    /// Map defined by its images of the coordinate basis.
    pub fn from_basis_images(algebra: Algebra, images: &[Element]) -> Result<LinearMap> {
        let d = algebra.dim();
        if images.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: images.len(),
            });
        }
        let mut matrix = CMatrix::zeros(d, d);
        for (j, img) in images.iter().enumerate() {
            if img.algebra() != algebra {
                return Err(Error::AlgebraMismatch {
                    expected: algebra,
                    found: img.algebra(),
                });
            }
            matrix.set_column(j, img.coords());
        }
        Ok(LinearMap { algebra, matrix })
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        if a.algebra() != self.algebra {
            return Err(Error::AlgebraMismatch {
                expected: self.algebra,
                found: a.algebra(),
            });
        }
        Element::new(self.algebra, self.matrix.matvec(a.coords()))
    }

    /// self ∘ inner: the map a ↦ self(inner(a)).
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if self.algebra != inner.algebra {
            return Err(Error::AlgebraMismatch {
                expected: self.algebra,
                found: inner.algebra,
            });
        }
        Ok(LinearMap {
            algebra: self.algebra,
            matrix: self.matrix.matmul(&inner.matrix),
        })
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.algebra, other.algebra, "algebra mismatch");
        LinearMap {
            algebra: self.algebra,
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.algebra, other.algebra, "algebra mismatch");
        LinearMap {
            algebra: self.algebra,
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn scale(&self, z: C64) -> LinearMap {
        LinearMap {
            algebra: self.algebra,
            matrix: self.matrix.scale(z),
        }
    }

    /// Frobenius norm of the coordinate matrix; the map-level norm used by
    /// hypothesis checks like ‖dσ − d‖.
    pub fn frobenius(&self) -> f64 {
        self.matrix.frobenius()
    }

    /// Random map with the coordinate matrix normalized to unit Frobenius.
    pub fn random(algebra: Algebra, seed: u64) -> LinearMap {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
        let d = algebra.dim();
        let m = CMatrix::from_fn(d, d, |_, _| rng.complex_normal());
        let norm = m.frobenius();
        LinearMap {
            algebra,
            matrix: m.scale(C64::new(1.0 / norm, 0.0)),
        }
    }
}

/// Constructors realizing the concrete map families used by the fixtures.
#[derive(Debug, Clone)]
pub enum MapKind {
    Identity,
    Scale(C64),
    LeftMult(Element),
    RightMult(Element),
    /// a ↦ v a v⁻¹, for invertible v.
    Conjugation(Element),
    /// a ↦ p a p, for an idempotent p.
    Compression(Element),
    /// Grid only: f ↦ f·h0.
    MultBy(Element),
    /// Grid only: (Vf)(j) = f(2j mod N).
    GridDoubling,
    FromBasisImages(Vec<Element>),
}

pub fn make_map(algebra: Algebra, kind: MapKind) -> Result<LinearMap> {
    let d = algebra.dim();
    let basis = |j: usize| algebra.basis_element(j);
    match kind {
        MapKind::Identity => Ok(LinearMap::identity(algebra)),
        MapKind::Scale(z) => Ok(LinearMap::identity(algebra).scale(z)),
        MapKind::LeftMult(u) => {
            let images: Result<Vec<Element>> = (0..d).map(|j| u.mul(&basis(j))).collect();
            LinearMap::from_basis_images(algebra, &images?)
        }
        MapKind::RightMult(u) => {
            let images: Result<Vec<Element>> = (0..d).map(|j| basis(j).mul(&u)).collect();
            LinearMap::from_basis_images(algebra, &images?)
        }
        MapKind::Conjugation(v) => {
            if v.algebra() != algebra {
                return Err(Error::AlgebraMismatch {
                    expected: algebra,
                    found: v.algebra(),
                });
            }
            let vinv = v.inverse(1e-12)?;
            let images: Result<Vec<Element>> =
                (0..d).map(|j| v.mul(&basis(j))?.mul(&vinv)).collect();
            LinearMap::from_basis_images(algebra, &images?)
        }
        MapKind::Compression(p) => {
            if p.algebra() != algebra {
                return Err(Error::AlgebraMismatch {
                    expected: algebra,
                    found: p.algebra(),
                });
            }
            let residual = p.mul(&p)?.sub(&p).norm();
            if residual > 1e-10 {
                return Err(Error::NotIdempotent { residual });
            }
            let images: Result<Vec<Element>> = (0..d).map(|j| p.mul(&basis(j))?.mul(&p)).collect();
            LinearMap::from_basis_images(algebra, &images?)
        }
        MapKind::MultBy(h0) => match algebra {
            Algebra::GridFunction { .. } => {
                if h0.algebra() != algebra {
                    return Err(Error::AlgebraMismatch {
                        expected: algebra,
                        found: h0.algebra(),
                    });
                }
                let images: Result<Vec<Element>> = (0..d).map(|j| basis(j).mul(&h0)).collect();
                LinearMap::from_basis_images(algebra, &images?)
            }
            Algebra::FullMatrix { .. } => Err(Error::GridOnlyKind { kind: "mult_by" }),
        },
        MapKind::GridDoubling => match algebra {
            Algebra::GridFunction { points } => {
                let mut matrix = CMatrix::zeros(points, points);
                // (Vf)(i) = f(2i mod N): row i reads coordinate 2i mod N.
                for i in 0..points {
                    matrix[(i, (2 * i) % points)] = C64::new(1.0, 0.0);
                }
                Ok(LinearMap { algebra, matrix })
            }
            Algebra::FullMatrix { .. } => Err(Error::GridOnlyKind {
                kind: "grid_doubling",
            }),
        },
        MapKind::FromBasisImages(images) => LinearMap::from_basis_images(algebra, &images),
    }
}

/// The multiplicativity defect σ(ab) − σ(a)σ(b); zero exactly when σ is an
/// endomorphism.
pub fn mult_defect(sigma: &LinearMap, a: &Element, b: &Element) -> Result<Element> {
    let ab = a.mul(b)?;
    let lhs = sigma.apply(&ab)?;
    let rhs = sigma.apply(a)?.mul(&sigma.apply(b)?)?;
    Ok(lhs.sub(&rhs))
}

/// Outcome of one verification: the largest scale-free residual seen over all
/// evaluated inputs, the threshold it was held against, and the inputs that
/// achieved it.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub max_residual: f64,
    pub threshold: f64,
    pub pass: bool,
    pub witness: Option<Value>,
    pub trials: u64,
}

impl CheckReport {
    pub fn new(
        name: impl Into<String>,
        max_residual: f64,
        threshold: f64,
        witness: Option<Value>,
        trials: u64,
    ) -> CheckReport {
        CheckReport {
            name: name.into(),
            max_residual,
            threshold,
            pass: max_residual <= threshold,
            witness,
            trials,
        }
    }
}

/// Sampling policy shared by the predicates.
#[derive(Debug, Clone, Copy)]
pub struct CheckParams {
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams {
            trials: 50,
            seed: 0x5eed,
            tol: 1e-9,
        }
    }
}

fn witness_pair(a: &Element, b: &Element) -> Value {
    json!({
        "a": ElementDoc::from_element(a).to_value(),
        "b": ElementDoc::from_element(b).to_value(),
    })
}

/// Max residual over all basis pairs (when affordable) plus seeded random
/// pairs. Ties keep the earliest witness; iteration order is basis pairs
/// first, then trials in order, so the stored witness is deterministic.
fn max_over_pairs(
    algebra: Algebra,
    params: &CheckParams,
    mut residual: impl FnMut(&Element, &Element) -> Result<f64>,
) -> Result<(f64, Option<Value>, u64)> {
    let d = algebra.dim();
    let mut max = f64::NEG_INFINITY;
    let mut witness = None;
    let mut evaluated = 0u64;
    if d * d <= EXHAUSTIVE_LIMIT {
        for i in 0..d {
            let ei = algebra.basis_element(i);
            for j in 0..d {
                let ej = algebra.basis_element(j);
                let r = residual(&ei, &ej)?;
                evaluated += 1;
                if r > max {
                    max = r;
                    witness = Some(witness_pair(&ei, &ej));
                }
            }
        }
    }
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(params.seed);
    for _ in 0..params.trials {
        let a = element_from_rng(algebra, &mut rng);
        let b = element_from_rng(algebra, &mut rng);
        let r = residual(&a, &b)?;
        evaluated += 1;
        if r > max {
            max = r;
            witness = Some(witness_pair(&a, &b));
        }
    }
    Ok((max.max(0.0), witness, evaluated))
}

fn norm_product(parts: &[&Element]) -> f64 {
    let p: f64 = parts.iter().map(|e| e.norm()).product();
    if p > 0.0 {
        p
    } else {
        1.0
    }
}

fn check_same(a: &LinearMap, b: &LinearMap) -> Result<Algebra> {
    if a.algebra() != b.algebra() {
        return Err(Error::AlgebraMismatch {
            expected: a.algebra(),
            found: b.algebra(),
        });
    }
    Ok(a.algebra())
}

/// Scale-free residual of d(ab) = d(a)σ(b) + σ(a)d(b) at one pair.
pub fn sigma_derivation_residual(
    dee: &LinearMap,
    sigma: &LinearMap,
    a: &Element,
    b: &Element,
) -> Result<f64> {
    let ab = a.mul(b)?;
    let lhs = dee.apply(&ab)?;
    let rhs = dee
        .apply(a)?
        .mul(&sigma.apply(b)?)?
        .add(&sigma.apply(a)?.mul(&dee.apply(b)?)?);
    Ok(lhs.sub(&rhs).norm() / norm_product(&[a, b]))
}

pub fn is_sigma_derivation(
    dee: &LinearMap,
    sigma: &LinearMap,
    params: &CheckParams,
) -> Result<CheckReport> {
    let algebra = check_same(dee, sigma)?;
    let (max, witness, trials) = max_over_pairs(algebra, params, |a, b| {
        sigma_derivation_residual(dee, sigma, a, b)
    })?;
    Ok(CheckReport::new(
        "sigma-derivation",
        max,
        params.tol,
        witness,
        trials,
    ))
}

/// Residuals of the two equivalent σ-endomorphism characterizations at one
/// pair: the defining identity
/// (α+σ−ι)(ab) − (α+σ−ι)(a)(α+σ−ι)(b) = σ(ab) − σ(a)σ(b), and the expanded
/// form α(ab) − α(a)α(b) = (α(a)−a)(σ(b)−b) + (σ(a)−a)(α(b)−b).
pub fn sigma_endomorphism_residuals(
    alpha: &LinearMap,
    sigma: &LinearMap,
    a: &Element,
    b: &Element,
) -> Result<(f64, f64)> {
    let scale = norm_product(&[a, b]);
    let ab = a.mul(b)?;

    // β = α + σ − ι, applied pointwise.
    let beta = |x: &Element| -> Result<Element> {
        Ok(alpha.apply(x)?.add(&sigma.apply(x)?).sub(x))
    };
    let defect = mult_defect(sigma, a, b)?;
    let r1 = beta(&ab)?
        .sub(&beta(a)?.mul(&beta(b)?)?)
        .sub(&defect)
        .norm()
        / scale;

    let alpha_shift = |x: &Element| -> Result<Element> { Ok(alpha.apply(x)?.sub(x)) };
    let sigma_shift = |x: &Element| -> Result<Element> { Ok(sigma.apply(x)?.sub(x)) };
    let rhs = alpha_shift(a)?
        .mul(&sigma_shift(b)?)?
        .add(&sigma_shift(a)?.mul(&alpha_shift(b)?)?);
    let r2 = alpha
        .apply(&ab)?
        .sub(&alpha.apply(a)?.mul(&alpha.apply(b)?)?)
        .sub(&rhs)
        .norm()
        / scale;

    Ok((r1, r2))
}

/// Evaluates both σ-endomorphism forms; passes iff both stay under the
/// tolerance, and the report records the larger residual.
pub fn is_sigma_endomorphism(
    alpha: &LinearMap,
    sigma: &LinearMap,
    params: &CheckParams,
) -> Result<CheckReport> {
    let algebra = check_same(alpha, sigma)?;
    let (max, witness, trials) = max_over_pairs(algebra, params, |a, b| {
        let (r1, r2) = sigma_endomorphism_residuals(alpha, sigma, a, b)?;
        Ok(r1.max(r2))
    })?;
    Ok(CheckReport::new(
        "sigma-endomorphism",
        max,
        params.tol,
        witness,
        trials,
    ))
}

pub fn is_endomorphism(sigma: &LinearMap, params: &CheckParams) -> Result<CheckReport> {
    let algebra = sigma.algebra();
    let (max, witness, trials) = max_over_pairs(algebra, params, |a, b| {
        Ok(mult_defect(sigma, a, b)?.norm() / norm_product(&[a, b]))
    })?;
    Ok(CheckReport::new(
        "endomorphism",
        max,
        params.tol,
        witness,
        trials,
    ))
}

/// Residuals of the two semi-endomorphism identities at one pair:
/// σ(aσ(b)) = σ(a)σ²(b) and σ(ad(b)) = σ(a)σ(d(b)).
pub fn semi_endomorphism_residuals(
    sigma: &LinearMap,
    dee: &LinearMap,
    a: &Element,
    b: &Element,
) -> Result<(f64, f64)> {
    let scale = norm_product(&[a, b]);
    let sb = sigma.apply(b)?;
    let r1 = sigma
        .apply(&a.mul(&sb)?)?
        .sub(&sigma.apply(a)?.mul(&sigma.apply(&sb)?)?)
        .norm()
        / scale;
    let db = dee.apply(b)?;
    let r2 = sigma
        .apply(&a.mul(&db)?)?
        .sub(&sigma.apply(a)?.mul(&sigma.apply(&db)?)?)
        .norm()
        / scale;
    Ok((r1, r2))
}

pub fn is_semi_endomorphism(
    sigma: &LinearMap,
    dee: &LinearMap,
    params: &CheckParams,
) -> Result<CheckReport> {
    let algebra = check_same(sigma, dee)?;
    let (max, witness, trials) = max_over_pairs(algebra, params, |a, b| {
        let (r1, r2) = semi_endomorphism_residuals(sigma, dee, a, b)?;
        Ok(r1.max(r2))
    })?;
    Ok(CheckReport::new(
        "semi-endomorphism",
        max,
        params.tol,
        witness,
        trials,
    ))
}

/// Basis of {u : u commutes with every multiplicativity defect of σ}.
///
/// Stage one row-reduces the D² basis defects down to a spanning set (at most
/// D of them); stage two stacks the commutation constraints u·δ − δ·u = 0 for
/// that spanning set and reads the nullspace.
pub fn defect_commutant(sigma: &LinearMap, tol: f64) -> Result<Vec<Element>> {
    let algebra = sigma.algebra();
    let d = algebra.dim();
    let floor = defect_floor(sigma, tol);

    let mut defect_rows: Vec<Vec<C64>> = Vec::new();
    for i in 0..d {
        let ei = algebra.basis_element(i);
        for j in 0..d {
            let ej = algebra.basis_element(j);
            let defect = mult_defect(sigma, &ei, &ej)?;
            if defect.norm() > floor {
                defect_rows.push(defect.coords().to_vec());
            }
        }
    }
    if defect_rows.is_empty() {
        return Ok((0..d).map(|j| algebra.basis_element(j)).collect());
    }

    let rows = defect_rows.len();
    let stacked = CMatrix::from_fn(rows, d, |i, j| defect_rows[i][j]);
    let span = span_rows(&stacked, tol);

    // One commutation block per spanning defect: rows of (L_δ − R_δ).
    let mut constraints = CMatrix::zeros(span.len() * d, d);
    for (block, delta_coords) in span.iter().enumerate() {
        let delta = Element::new(algebra, delta_coords.clone())?;
        let left = make_map(algebra, MapKind::LeftMult(delta.clone()))?;
        let right = make_map(algebra, MapKind::RightMult(delta))?;
        let commutator = left.matrix().sub(right.matrix());
        for r in 0..d {
            for c in 0..d {
                constraints[(block * d + r, c)] = commutator[(r, c)];
            }
        }
    }
    let basis = constraints.nullspace_basis(tol);
    basis
        .into_iter()
        .map(|v| Element::new(algebra, v))
        .collect()
}

/// Row-space basis by echelon reduction (rows returned as coordinate vectors).
fn span_rows(m: &CMatrix, rel_tol: f64) -> Vec<Vec<C64>> {
    let (rows, cols) = (m.rows(), m.cols());
    let scale = m.max_abs();
    if scale == 0.0 {
        return Vec::new();
    }
    let mut a = m.clone();
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot_row = (rank..rows)
            .max_by(|&p, &q| a[(p, col)].norm().total_cmp(&a[(q, col)].norm()))
            .unwrap();
        if a[(pivot_row, col)].norm() <= rel_tol * scale {
            continue;
        }
        if pivot_row != rank {
            for j in 0..cols {
                let (x, y) = (a[(rank, j)], a[(pivot_row, j)]);
                a[(rank, j)] = y;
                a[(pivot_row, j)] = x;
            }
        }
        let p = a[(rank, col)];
        for j in 0..cols {
            a[(rank, j)] /= p;
        }
        for i in 0..rows {
            if i == rank {
                continue;
            }
            let f = a[(i, col)];
            if f.re == 0.0 && f.im == 0.0 {
                continue;
            }
            for j in 0..cols {
                let s = a[(rank, j)];
                a[(i, j)] -= f * s;
            }
        }
        rank += 1;
    }
    (0..rank).map(|i| (0..cols).map(|j| a[(i, j)]).collect()).collect()
}

/// Basis defects below this floor are indistinguishable from roundoff in the
/// superoperator products and impose no commutation constraint.
fn defect_floor(sigma: &LinearMap, tol: f64) -> f64 {
    tol * (1.0 + sigma.frobenius()).powi(2)
}

/// Inner σ-derivation a ↦ uσ(a) − σ(a)u. The construction is rejected with
/// the worst basis pair as a witness unless u commutes with every
/// significant multiplicativity defect of σ within `tol` (scale-free).
pub fn inner_sigma_derivation(u: &Element, sigma: &LinearMap, tol: f64) -> Result<LinearMap> {
    let algebra = sigma.algebra();
    if u.algebra() != algebra {
        return Err(Error::AlgebraMismatch {
            expected: algebra,
            found: u.algebra(),
        });
    }
    let d = algebra.dim();
    let u_norm = u.norm();
    let floor = defect_floor(sigma, tol);
    let mut worst = (0usize, 0usize, 0.0f64);
    for i in 0..d {
        let ei = algebra.basis_element(i);
        for j in 0..d {
            let ej = algebra.basis_element(j);
            let defect = mult_defect(sigma, &ei, &ej)?;
            let scale = u_norm * defect.norm();
            if defect.norm() <= floor || scale == 0.0 {
                continue;
            }
            let comm = u.mul(&defect)?.sub(&defect.mul(u)?).norm() / scale;
            if comm > worst.2 {
                worst = (i, j, comm);
            }
        }
    }
    if worst.2 > tol {
        return Err(Error::CommutantViolation {
            i: worst.0,
            j: worst.1,
            residual: worst.2,
        });
    }
    let left = make_map(algebra, MapKind::LeftMult(u.clone()))?;
    let right = make_map(algebra, MapKind::RightMult(u.clone()))?;
    left.sub(&right).compose(sigma)
}

/// Max ‖d(σ(ab) − σ(a)σ(b))‖ over sampled pairs: zero (within tolerance)
/// exactly when every multiplicativity defect of σ lies in ker(d).
pub fn is_multiplizing(
    dee: &LinearMap,
    sigma: &LinearMap,
    params: &CheckParams,
) -> Result<CheckReport> {
    let algebra = check_same(dee, sigma)?;
    let (max, witness, trials) = max_over_pairs(algebra, params, |a, b| {
        let defect = mult_defect(sigma, a, b)?;
        Ok(dee.apply(&defect)?.norm() / norm_product(&[a, b]))
    })?;
    Ok(CheckReport::new(
        "multiplizing",
        max,
        params.tol,
        witness,
        trials,
    ))
}

/// Scale-free residual of the three-factor identity
/// d(a)·(σ(bc) − σ(b)σ(c)) = (σ(ab) − σ(a)σ(b))·d(c), which holds for every
/// σ-derivation d.
pub fn prop218_residual(
    dee: &LinearMap,
    sigma: &LinearMap,
    a: &Element,
    b: &Element,
    c: &Element,
) -> Result<f64> {
    let lhs = dee.apply(a)?.mul(&mult_defect(sigma, b, c)?)?;
    let rhs = mult_defect(sigma, a, b)?.mul(&dee.apply(c)?)?;
    Ok(lhs.sub(&rhs).norm() / norm_product(&[a, b, c]))
}
