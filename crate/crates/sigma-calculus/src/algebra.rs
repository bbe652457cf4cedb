//! Concrete finite-dimensional associative unital normed algebras and their
//! element arithmetic.
//!
//! Two kinds are shipped:
//!
//! * **full-matrix(n)** — the n×n complex matrices. Coordinates are the
//!   row-major flattening: `coords[i*n + j]` is the (i, j) entry. The norm is
//!   Frobenius, which is submultiplicative.
//! * **grid-function(N)** — complex functions on an N-point cyclic grid with
//!   the pointwise product and the sup norm: a commutative stand-in for a
//!   continuous function algebra, at desk scale.
//!
//! Every operation is a pure function over immutable values, so the whole
//! module is safe to use from multiple threads without synchronization.

use crate::error::{Error, Result};
use crate::linalg::{C64, CMatrix};
use crate::rng::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algebra {
    FullMatrix { n: usize },
    GridFunction { points: usize },
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::FullMatrix { n } => write!(f, "full-matrix({n})"),
            Algebra::GridFunction { points } => write!(f, "grid-function({points})"),
        }
    }
}

impl Algebra {
    pub fn full_matrix(n: usize) -> Result<Algebra> {
        if n == 0 {
            return Err(Error::InvalidParameter("matrix size must be ≥ 1".into()));
        }
        Ok(Algebra::FullMatrix { n })
    }

    pub fn grid_function(points: usize) -> Result<Algebra> {
        if points == 0 {
            return Err(Error::InvalidParameter("grid size must be ≥ 1".into()));
        }
        Ok(Algebra::GridFunction { points })
    }

    /// Coordinate dimension: n² for full-matrix(n), N for grid-function(N).
    pub fn dim(&self) -> usize {
        match self {
            Algebra::FullMatrix { n } => n * n,
            Algebra::GridFunction { points } => *points,
        }
    }

    pub fn zero(&self) -> Element {
        Element {
            algebra: *self,
            coords: vec![C64::new(0.0, 0.0); self.dim()],
        }
    }

    pub fn unit(&self) -> Element {
        let mut e = self.zero();
        match self {
            Algebra::FullMatrix { n } => {
                for i in 0..*n {
                    e.coords[i * n + i] = C64::new(1.0, 0.0);
                }
            }
            Algebra::GridFunction { .. } => {
                for z in e.coords.iter_mut() {
                    *z = C64::new(1.0, 0.0);
                }
            }
        }
        e
    }

    /// Coordinate basis element with a single 1 at `idx`.
    pub fn basis_element(&self, idx: usize) -> Element {
        assert!(idx < self.dim(), "basis index out of range");
        let mut e = self.zero();
        e.coords[idx] = C64::new(1.0, 0.0);
        e
    }

    /// Matrix unit e_ij (1-based would invite off-by-one errors; this is 0-based).
    pub fn matrix_unit(&self, i: usize, j: usize) -> Result<Element> {
        match self {
            Algebra::FullMatrix { n } => {
                if i >= *n || j >= *n {
                    return Err(Error::InvalidParameter(format!(
                        "matrix unit ({i},{j}) out of range for n = {n}"
                    )));
                }
                Ok(self.basis_element(i * n + j))
            }
            Algebra::GridFunction { .. } => Err(Error::InvalidParameter(
                "matrix units are only defined on full-matrix algebras".into(),
            )),
        }
    }

    pub fn element(&self, coords: Vec<C64>) -> Result<Element> {
        Element::new(*self, coords)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    algebra: Algebra,
    coords: Vec<C64>,
}

impl Element {
    pub fn new(algebra: Algebra, coords: Vec<C64>) -> Result<Element> {
        if coords.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                found: coords.len(),
            });
        }
        if !coords.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Element { algebra, coords })
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    /// Entry accessor for full-matrix elements (row-major convention).
    pub fn entry(&self, i: usize, j: usize) -> C64 {
        match self.algebra {
            Algebra::FullMatrix { n } => self.coords[i * n + j],
            Algebra::GridFunction { .. } => panic!("entry(i,j) is a matrix accessor"),
        }
    }

    fn check_same_algebra(&self, other: &Element) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch {
                expected: self.algebra,
                found: other.algebra,
            });
        }
        Ok(())
    }

    /// Algebra product: matrix product on full-matrix, pointwise on the grid.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_same_algebra(other)?;
        let coords = match self.algebra {
            Algebra::FullMatrix { n } => {
                let mut out = vec![C64::new(0.0, 0.0); n * n];
                for i in 0..n {
                    for k in 0..n {
                        let a = self.coords[i * n + k];
                        if a.re == 0.0 && a.im == 0.0 {
                            continue;
                        }
                        for j in 0..n {
                            out[i * n + j] += a * other.coords[k * n + j];
                        }
                    }
                }
                out
            }
            Algebra::GridFunction { .. } => self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a * b)
                .collect(),
        };
        Ok(Element {
            algebra: self.algebra,
            coords,
        })
    }

    /// Frobenius norm (full-matrix) or max modulus (grid-function).
    pub fn norm(&self) -> f64 {
        match self.algebra {
            Algebra::FullMatrix { .. } => self
                .coords
                .iter()
                .map(|z| z.norm_sqr())
                .sum::<f64>()
                .sqrt(),
            Algebra::GridFunction { .. } => {
                self.coords.iter().map(|z| z.norm()).fold(0.0, f64::max)
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.algebra, other.algebra, "algebra mismatch in add");
        Element {
            algebra: self.algebra,
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        assert_eq!(self.algebra, other.algebra, "algebra mismatch in sub");
        Element {
            algebra: self.algebra,
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, z: C64) -> Element {
        Element {
            algebra: self.algebra,
            coords: self.coords.iter().map(|a| a * z).collect(),
        }
    }

    pub fn neg(&self) -> Element {
        self.scale(C64::new(-1.0, 0.0))
    }

    /// k-th algebra power; the unit for k = 0.
    pub fn pow(&self, k: u32) -> Element {
        let mut acc = self.algebra.unit();
        for _ in 0..k {
            acc = acc.mul(self).expect("same algebra");
        }
        acc
    }

    /// Exponential within the algebra: scale so the norm is ≤ 0.5, run the
    /// Taylor sum until the relative term drops below the tolerance, then
    /// square back.
    pub fn exp(&self, params: &SeriesParams) -> Result<Element> {
        let norm = self.norm();
        let mut squarings = 0u32;
        let mut shrink = 1.0f64;
        while norm * shrink > 0.5 {
            shrink *= 0.5;
            squarings += 1;
        }
        let scaled = self.scale(C64::new(shrink, 0.0));
        let mut sum = self.algebra.unit();
        let mut term = scaled.clone();
        let mut k = 1usize;
        loop {
            sum = sum.add(&term);
            if term.norm() <= params.term_tolerance * sum.norm() {
                break;
            }
            k += 1;
            if k > params.max_terms {
                return Err(Error::SeriesDivergence {
                    max_terms: params.max_terms,
                });
            }
            term = term.mul(&scaled)?.scale(C64::new(1.0 / k as f64, 0.0));
        }
        for _ in 0..squarings {
            sum = sum.mul(&sum)?;
        }
        Ok(sum)
    }

    /// Gelfand spectral-radius estimate by `k_max` repeated squarings with
    /// log-norm accounting. Each step renormalizes the running power so no
    /// overflow or underflow can occur; returns 0 exactly once a power
    /// vanishes below 1e-300 in norm.
    pub fn spectral_radius(&self, k_max: u32) -> f64 {
        // Past ~200 squarings the renormalized power is stationary and the
        // log accumulator would eventually overflow; nothing is gained.
        let k_max = k_max.clamp(1, 200);
        let mut y = self.clone();
        let mut log_acc = 0.0_f64; // log of the accumulated normalization
        for _ in 0..k_max {
            let m = y.norm();
            if m <= 1e-300 {
                return 0.0;
            }
            let normalized = y.scale(C64::new(1.0 / m, 0.0));
            y = normalized.mul(&normalized).expect("same algebra");
            log_acc = 2.0 * (log_acc + m.ln());
        }
        let tail = y.norm();
        if tail <= 1e-300 {
            return 0.0;
        }
        ((log_acc + tail.ln()) / 2f64.powi(k_max as i32)).exp()
    }

    /// Exact-nilpotency test. On full-matrix(n) this checks ‖x^n‖ against
    /// tol·max(1, ‖x‖)^n — in finite dimension the spectral radius vanishes
    /// iff the n-th power does. The commutative grid algebra has no nonzero
    /// nilpotents, so there the test is ‖x‖ ≤ tol coordinatewise.
    pub fn is_nilpotent(&self, tol: f64) -> bool {
        match self.algebra {
            Algebra::FullMatrix { n } => {
                let power = self.pow(n as u32);
                power.norm() <= tol * self.norm().max(1.0).powi(n as i32)
            }
            Algebra::GridFunction { .. } => self.coords.iter().all(|z| z.norm() <= tol),
        }
    }

    /// Multiplicative inverse. Full-matrix: Gaussian elimination; grid:
    /// pointwise reciprocal. Entries (or pivots) below `rel_tol` times the
    /// largest modulus reject the element as non-invertible.
    pub fn inverse(&self, rel_tol: f64) -> Result<Element> {
        match self.algebra {
            Algebra::FullMatrix { n } => {
                let m = CMatrix::from_fn(n, n, |i, j| self.coords[i * n + j]);
                let inv = m.inverse(rel_tol).ok_or(Error::NotInvertible)?;
                let coords = (0..n * n).map(|idx| inv[(idx / n, idx % n)]).collect();
                Element::new(self.algebra, coords)
            }
            Algebra::GridFunction { .. } => {
                let scale = self.coords.iter().map(|z| z.norm()).fold(0.0, f64::max);
                if scale == 0.0 {
                    return Err(Error::NotInvertible);
                }
                let mut coords = Vec::with_capacity(self.coords.len());
                for z in &self.coords {
                    if z.norm() <= rel_tol * scale {
                        return Err(Error::NotInvertible);
                    }
                    coords.push(z.inv());
                }
                Element::new(self.algebra, coords)
            }
        }
    }
}

/// Truncation policy for the in-algebra power series.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SeriesParams {
    pub term_tolerance: f64,
    pub max_terms: usize,
}

impl SeriesParams {
    pub fn new(term_tolerance: f64, max_terms: usize) -> Result<SeriesParams> {
        if !term_tolerance.is_finite() || term_tolerance <= 0.0 {
            return Err(Error::InvalidParameter(
                "term tolerance must be positive".into(),
            ));
        }
        if max_terms < 2 {
            return Err(Error::InvalidParameter("max terms must be ≥ 2".into()));
        }
        Ok(SeriesParams {
            term_tolerance,
            max_terms,
        })
    }
}

impl Default for SeriesParams {
    fn default() -> Self {
        SeriesParams {
            term_tolerance: 1e-15,
            max_terms: 200,
        }
    }
}

/// Deterministic pseudo-random element: complex standard Gaussian entries from
/// the documented xoshiro256++ stream, scaled to unit norm.
pub fn random_element(algebra: Algebra, seed: u64) -> Element {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    element_from_rng(algebra, &mut rng)
}

pub(crate) fn element_from_rng(algebra: Algebra, rng: &mut Xoshiro256PlusPlus) -> Element {
    let coords: Vec<C64> = (0..algebra.dim()).map(|_| rng.complex_normal()).collect();
    let e = Element { algebra, coords };
    let norm = e.norm();
    debug_assert!(norm > 0.0);
    e.scale(C64::new(1.0 / norm, 0.0))
}

/// Tree (pairwise) summation: the result is independent of any partitioning
/// of the term list across threads.
pub fn pairwise_sum(algebra: Algebra, terms: &[Element]) -> Element {
    if terms.is_empty() {
        return algebra.zero();
    }
    let mut level: Vec<Element> = terms.to_vec();
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.chunks(2);
        for chunk in &mut it {
            match chunk {
                [a, b] => next.push(a.add(b)),
                [a] => next.push(a.clone()),
                _ => unreachable!(),
            }
        }
        level = next;
    }
    level.pop().unwrap()
}

/// Nullspace of a square coordinate matrix: orthonormal-ish basis of
/// {v : ‖Mv‖ ≤ tol·‖M‖·‖v‖}, by Gaussian elimination with partial pivoting.
pub fn nullspace(m: &CMatrix, tol: f64) -> Result<Vec<Vec<C64>>> {
    if m.rows() != m.cols() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(m.nullspace_basis(tol))
}

/// On-disk JSON form of one element, carrying its algebra alongside the
/// coordinates. Shape mismatches are rejected on parse.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ElementDoc {
    #[serde(rename = "full-matrix")]
    FullMatrix {
        n: usize,
        re: Vec<Vec<f64>>,
        im: Vec<Vec<f64>>,
    },
    #[serde(rename = "grid-function")]
    GridFunction {
        #[serde(rename = "N")]
        points: usize,
        re: Vec<f64>,
        im: Vec<f64>,
    },
}

impl ElementDoc {
    pub fn from_element(e: &Element) -> ElementDoc {
        match e.algebra {
            Algebra::FullMatrix { n } => ElementDoc::FullMatrix {
                n,
                re: (0..n)
                    .map(|i| (0..n).map(|j| e.coords[i * n + j].re).collect())
                    .collect(),
                im: (0..n)
                    .map(|i| (0..n).map(|j| e.coords[i * n + j].im).collect())
                    .collect(),
            },
            Algebra::GridFunction { points } => ElementDoc::GridFunction {
                points,
                re: e.coords.iter().map(|z| z.re).collect(),
                im: e.coords.iter().map(|z| z.im).collect(),
            },
        }
    }

    pub fn to_element(&self) -> Result<Element> {
        match self {
            ElementDoc::FullMatrix { n, re, im } => {
                if *n == 0 {
                    return Err(Error::BadElementDoc("n must be ≥ 1".into()));
                }
                if re.len() != *n || im.len() != *n {
                    return Err(Error::BadElementDoc(format!(
                        "expected {n} rows, got re: {}, im: {}",
                        re.len(),
                        im.len()
                    )));
                }
                let mut coords = Vec::with_capacity(n * n);
                for (r, i) in re.iter().zip(im.iter()) {
                    if r.len() != *n || i.len() != *n {
                        return Err(Error::BadElementDoc(format!(
                            "expected row length {n}, got re: {}, im: {}",
                            r.len(),
                            i.len()
                        )));
                    }
                    for (a, b) in r.iter().zip(i.iter()) {
                        coords.push(C64::new(*a, *b));
                    }
                }
                Element::new(Algebra::full_matrix(*n)?, coords)
            }
            ElementDoc::GridFunction { points, re, im } => {
                if *points == 0 {
                    return Err(Error::BadElementDoc("N must be ≥ 1".into()));
                }
                if re.len() != *points || im.len() != *points {
                    return Err(Error::BadElementDoc(format!(
                        "expected {points} samples, got re: {}, im: {}",
                        re.len(),
                        im.len()
                    )));
                }
                let coords = re.iter().zip(im.iter()).map(|(a, b)| C64::new(*a, *b)).collect();
                Element::new(Algebra::grid_function(*points)?, coords)
            }
        }
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("element doc serializes")
    }
}
