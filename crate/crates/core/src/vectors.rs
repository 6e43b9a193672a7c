//! Finite-dimensional real normed spaces and numeric ε-N utilities.
//!
//! The carriers are ℝ, ℝᵈ and ℂ (stored as ℝ² with the Euclidean norm); all
//! are complete, so every Cauchy sequence of integrals has a limit. The
//! limit and Cauchy predicates below are finite-window surrogates of the
//! usual ∀ε ∃N statements: they check exactly the indices they are given.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Default number of terms inspected by the windowed checks.
pub const DEFAULT_WINDOW: usize = 100;

/// The carrier of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VSpace {
    Real,
    #[serde(rename = "rvec")]
    RVec(usize),
    Complex,
}

impl VSpace {
    pub fn dim(self) -> usize {
        match self {
            VSpace::Real => 1,
            VSpace::RVec(d) => d,
            VSpace::Complex => 2,
        }
    }

    pub fn zero(self) -> Vector {
        Vector {
            space: self,
            coords: SmallVec::from_elem(0.0, self.dim()),
        }
    }

    /// The unit vector along coordinate `i`.
    pub fn basis(self, i: usize) -> Vector {
        let mut v = self.zero();
        v.coords[i] = 1.0;
        v
    }

    fn validate(self) -> Result<()> {
        match self {
            VSpace::RVec(0) => Err(Error::InvalidParameter(
                "rvec dimension must be positive".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// An element of one of the carriers.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "VectorRepr", into = "VectorRepr")]
pub struct Vector {
    space: VSpace,
    coords: SmallVec<[f64; 4]>,
}

#[derive(Serialize, Deserialize)]
struct VectorRepr {
    carrier: VSpace,
    coords: Vec<f64>,
}

impl TryFrom<VectorRepr> for Vector {
    type Error = Error;

    fn try_from(r: VectorRepr) -> Result<Self> {
        Vector::new(r.carrier, &r.coords)
    }
}

impl From<Vector> for VectorRepr {
    fn from(v: Vector) -> Self {
        VectorRepr {
            carrier: v.space,
            coords: v.coords.to_vec(),
        }
    }
}

impl Vector {
    pub fn new(space: VSpace, coords: &[f64]) -> Result<Self> {
        space.validate()?;
        if coords.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                space,
                expected: space.dim(),
                got: coords.len(),
            });
        }
        if let Some(&bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoordinate(bad));
        }
        Ok(Vector {
            space,
            coords: SmallVec::from_slice(coords),
        })
    }

    pub fn real(x: f64) -> Result<Self> {
        Vector::new(VSpace::Real, &[x])
    }

    /// A vector of `ℝᵈ` with `d = coords.len()`.
    pub fn rvec(coords: &[f64]) -> Result<Self> {
        Vector::new(VSpace::RVec(coords.len()), coords)
    }

    pub fn complex(re: f64, im: f64) -> Result<Self> {
        Vector::new(VSpace::Complex, &[re, im])
    }

    pub fn space(&self) -> VSpace {
        self.space
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Exact test against the zero vector (`-0.0` counts as zero).
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0.0)
    }

    pub fn norm(&self) -> f64 {
        euclid(self.coords.iter().copied())
    }

    pub fn neg(&self) -> Vector {
        self.map(|c| -c)
    }

    pub fn scal(&self, a: f64) -> Vector {
        self.map(|c| a * c)
    }

    pub fn try_add(&self, other: &Vector) -> Result<Vector> {
        self.same_carrier(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Vector) -> Result<Vector> {
        self.same_carrier(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    /// `norm(self - other)` without allocating.
    pub fn dist(&self, other: &Vector) -> Result<f64> {
        self.same_carrier(other)?;
        Ok(self.dist_unchecked(other))
    }

    pub fn same_carrier(&self, other: &Vector) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::CarrierMismatch {
                left: self.space,
                right: other.space,
            })
        }
    }

    pub(crate) fn add_unchecked(&self, other: &Vector) -> Vector {
        self.zip(other, |a, b| a + b)
    }

    pub(crate) fn dist_unchecked(&self, other: &Vector) -> f64 {
        euclid(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b))
    }

    /// `self += a * other`, carriers assumed equal.
    pub(crate) fn axpy(&mut self, a: f64, other: &Vector) {
        for (c, o) in self.coords.iter_mut().zip(&other.coords) {
            *c += a * o;
        }
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> Vector {
        Vector {
            space: self.space,
            coords: self.coords.iter().map(|&c| f(c)).collect(),
        }
    }

    fn zip(&self, other: &Vector, f: impl Fn(f64, f64) -> f64) -> Vector {
        Vector {
            space: self.space,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.space, self.coords.as_slice())
    }
}

/// Euclidean norm, scaled to avoid overflow for large coordinates.
fn euclid(it: impl Iterator<Item = f64> + Clone) -> f64 {
    let scale = it.clone().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let s: f64 = it.map(|c| (c / scale) * (c / scale)).sum();
    scale * s.sqrt()
}

/// Largest pairwise distance among `terms`.
pub fn diameter(terms: &[Vector]) -> f64 {
    let mut d = 0.0f64;
    for (i, p) in terms.iter().enumerate() {
        for q in &terms[i + 1..] {
            d = d.max(p.dist_unchecked(q));
        }
    }
    d
}

/// True iff `norm(u(n) - limit) < eps` for every `n` in `[start, start + window]`.
pub fn seq_limit_check<F>(u: F, limit: &Vector, eps: f64, start: usize, window: usize) -> bool
where
    F: Fn(usize) -> Vector,
{
    (start..=start + window).all(|n| {
        let t = u(n);
        t.space() == limit.space() && t.dist_unchecked(limit) < eps
    })
}

/// True iff every pair `p, q` in `[n0, n0 + window]` satisfies
/// `norm(u(p) - u(q)) < eps`.
pub fn cauchy_check<F>(u: F, eps: f64, n0: usize, window: usize) -> bool
where
    F: Fn(usize) -> Vector,
{
    let terms: Vec<Vector> = (n0..=n0 + window).map(u).collect();
    cauchy_on(&terms, eps)
}

fn cauchy_on(terms: &[Vector], eps: f64) -> bool {
    if terms.windows(2).any(|w| w[0].space() != w[1].space()) {
        return false;
    }
    diameter(terms) < eps
}

/// Outcome of [`seq_limit_estimate`].
#[derive(Debug, Clone, PartialEq)]
pub struct LimitEstimate {
    pub value: Vector,
    /// First index whose window passed the Cauchy test.
    pub index: usize,
    pub window: usize,
    /// Oscillation diameter over the accepted window.
    pub diameter: f64,
}

/// Returns `u(n*)` for the first `n* <= max_n` whose window
/// `[n*, n* + window]` is `eps`-Cauchy.
pub fn seq_limit_estimate<F>(u: F, eps: f64, window: usize, max_n: usize) -> Result<LimitEstimate>
where
    F: Fn(usize) -> Vector,
{
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "eps must be > 0, got {eps}"
        )));
    }
    let mut cache: Vec<Vector> = Vec::with_capacity(window + 1);
    let mut last_diameter = f64::INFINITY;
    for n0 in 0..=max_n {
        while cache.len() < n0 + window + 1 {
            cache.push(u(cache.len()));
        }
        let terms = &cache[n0..=n0 + window];
        if terms.windows(2).any(|w| w[0].space() != w[1].space()) {
            return Err(Error::CarrierMismatch {
                left: terms[0].space(),
                right: terms
                    .iter()
                    .map(Vector::space)
                    .find(|&s| s != terms[0].space())
                    .unwrap(),
            });
        }
        // the diameter is at least r, the largest distance to the first term
        let r = terms[1..]
            .iter()
            .map(|t| t.dist_unchecked(&terms[0]))
            .fold(0.0, f64::max);
        if r >= eps {
            last_diameter = r;
            continue;
        }
        last_diameter = diameter(terms);
        if last_diameter < eps {
            return Ok(LimitEstimate {
                value: cache[n0].clone(),
                index: n0,
                window,
                diameter: last_diameter,
            });
        }
    }
    Err(Error::NoConvergence {
        max_n,
        diameter: last_diameter,
    })
}
