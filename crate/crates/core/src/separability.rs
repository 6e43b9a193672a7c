//! Countable dense sequences in the carriers and weak-separability scans.
//!
//! The rationals are listed as `0`, then by diagonals `s = |num| + den`
//! (`s = 2, 3, ...`), denominators ascending within a diagonal, skipping
//! non-reduced pairs, each fraction followed by its negative:
//!
//! ```text
//! 0, 1, -1, 2, -2, 1/2, -1/2, 3, -3, 1/3, -1/3, 4, -4, 3/2, -3/2, ...
//! ```
//!
//! Diagonal `s` holds `2φ(s)` entries, which gives random access. Vectors
//! take their coordinates from rational indices produced by iterated Cantor
//! unpairing, so index `0` is the zero vector in every carrier.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::vectors::{VSpace, Vector};

/// A fraction in lowest terms with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Rational {
    pub num: i64,
    pub den: u64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn totient(mut s: u64) -> u64 {
    let mut phi = s;
    let mut p = 2;
    while p * p <= s {
        if s.is_multiple_of(p) {
            while s.is_multiple_of(p) {
                s /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if s > 1 {
        phi -= phi / s;
    }
    phi
}

/// The `n`-th rational of the fixed enumeration.
pub fn enum_rationals(n: usize) -> Rational {
    if n == 0 {
        return Rational::ZERO;
    }
    let mut k = (n - 1) as u64;
    let mut s = 2u64;
    loop {
        let block = 2 * totient(s);
        if k < block {
            break;
        }
        k -= block;
        s += 1;
    }
    let (pos, negative) = (k / 2, k % 2 == 1);
    let den = (1..s)
        .filter(|d| d.gcd(&s) == 1)
        .nth(pos as usize)
        .expect("position within the diagonal");
    let num = (s - den) as i64;
    Rational {
        num: if negative { -num } else { num },
        den,
    }
}

/// Inverse of [`enum_rationals`]: the index of `num/den` (any form, `den != 0`).
pub fn rational_index(num: i64, den: i64) -> Option<usize> {
    if den == 0 {
        return None;
    }
    if num == 0 {
        return Some(0);
    }
    let g = num.gcd(&den);
    let negative = (num < 0) != (den < 0);
    let (p, q) = ((num / g).unsigned_abs(), (den / g).unsigned_abs());
    let s = p + q;
    let before: u64 = (2..s).map(|t| 2 * totient(t)).sum();
    let pos = (1..q).filter(|d| d.gcd(&s) == 1).count() as u64;
    Some((1 + before + 2 * pos + negative as u64) as usize)
}

/// Sequential enumeration, cheaper than repeated random access.
#[derive(Debug, Clone)]
pub struct Rationals {
    s: u64,
    den: u64,
    pending: Option<Rational>,
    started: bool,
}

impl Rationals {
    pub fn new() -> Self {
        Rationals {
            s: 2,
            den: 1,
            pending: None,
            started: false,
        }
    }
}

impl Default for Rationals {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for Rationals {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        if !self.started {
            self.started = true;
            return Some(Rational::ZERO);
        }
        if let Some(q) = self.pending.take() {
            return Some(q);
        }
        loop {
            if self.den >= self.s {
                self.s += 1;
                self.den = 1;
            }
            let den = self.den;
            self.den += 1;
            if den.gcd(&self.s) == 1 {
                let num = (self.s - den) as i64;
                self.pending = Some(Rational { num: -num, den });
                return Some(Rational { num, den });
            }
        }
    }
}

/// Inverse Cantor pairing `n ↦ (a, b)` with `n = (a+b)(a+b+1)/2 + b`.
pub fn cantor_unpair(n: u64) -> (u64, u64) {
    let w = ((8 * n as u128 + 1).isqrt() as u64 - 1) / 2;
    let t = w * (w + 1) / 2;
    let b = n - t;
    (w - b, b)
}

pub fn cantor_pair(a: u64, b: u64) -> u64 {
    let w = a + b;
    w * (w + 1) / 2 + b
}

/// Rational indices of the coordinates of the `n`-th vector in dimension `d`.
fn coordinate_indices(n: u64, d: usize, out: &mut [u64]) {
    let mut rest = n;
    for slot in out.iter_mut().take(d - 1) {
        let (a, r) = cantor_unpair(rest);
        *slot = a;
        rest = r;
    }
    out[d - 1] = rest;
}

/// Ordering variant of the rational dense sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DenseKind {
    /// Coordinates by iterated Cantor unpairing, in order.
    #[default]
    Rational,
    /// Coordinates in reverse order; on `Real`, every rational is replaced
    /// by its negative. Same image, different order.
    RationalTransposed,
}

type Generator = Arc<dyn Fn(usize) -> Vector + Send + Sync>;

#[derive(Clone)]
enum Source {
    Builtin(DenseKind),
    Custom(Generator),
}

/// An enumerated subset of a carrier, possibly dense.
#[derive(Clone)]
pub struct DenseSeq {
    carrier: VSpace,
    zero_first: bool,
    source: Source,
}

impl fmt::Debug for DenseSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let source = match &self.source {
            Source::Builtin(k) => format!("{k:?}"),
            Source::Custom(_) => "Custom".to_string(),
        };
        f.debug_struct("DenseSeq")
            .field("carrier", &self.carrier)
            .field("zero_first", &self.zero_first)
            .field("source", &source)
            .finish()
    }
}

/// The rational dense sequence of `carrier`. Without `zero_first` the
/// leading zero vector is dropped.
pub fn dense_seq(carrier: VSpace, zero_first: bool) -> DenseSeq {
    DenseSeq::builtin(carrier, DenseKind::Rational, zero_first)
}

impl DenseSeq {
    pub fn builtin(carrier: VSpace, kind: DenseKind, zero_first: bool) -> Self {
        DenseSeq {
            carrier,
            zero_first,
            source: Source::Builtin(kind),
        }
    }

    /// A user-supplied sequence. With `zero_first`, `f(0)` must be the zero
    /// vector; every `f(n)` must lie in `carrier`.
    pub fn from_fn(
        carrier: VSpace,
        zero_first: bool,
        f: impl Fn(usize) -> Vector + Send + Sync + 'static,
    ) -> Result<Self> {
        let first = f(0);
        if first.space() != carrier {
            return Err(Error::CarrierMismatch {
                left: carrier,
                right: first.space(),
            });
        }
        if zero_first && !first.is_zero() {
            return Err(Error::InvalidParameter(
                "zero-first sequence must start with the zero vector".into(),
            ));
        }
        Ok(DenseSeq {
            carrier,
            zero_first,
            source: Source::Custom(Arc::new(f)),
        })
    }

    pub fn carrier(&self) -> VSpace {
        self.carrier
    }

    pub fn zero_first(&self) -> bool {
        self.zero_first
    }

    fn offset(&self) -> usize {
        match self.source {
            Source::Builtin(_) if !self.zero_first => 1,
            _ => 0,
        }
    }

    fn builtin_at(&self, kind: DenseKind, n: usize, q: impl Fn(u64) -> Rational) -> Vector {
        let d = self.carrier.dim();
        let mut idx: SmallVec<[u64; 4]> = smallvec![0; d];
        coordinate_indices(n as u64, d, &mut idx);
        let coords: SmallVec<[f64; 4]> = (0..d)
            .map(|k| match kind {
                DenseKind::Rational => q(idx[k]).to_f64(),
                DenseKind::RationalTransposed if d == 1 => -q(idx[0]).to_f64() + 0.0,
                DenseKind::RationalTransposed => q(idx[d - 1 - k]).to_f64(),
            })
            .collect();
        Vector::new(self.carrier, &coords).expect("rational coordinates are finite")
    }

    /// The `n`-th element.
    pub fn get(&self, n: usize) -> Vector {
        let m = n + self.offset();
        match &self.source {
            Source::Builtin(kind) => self.builtin_at(*kind, m, |i| enum_rationals(i as usize)),
            Source::Custom(f) => f(m),
        }
    }

    /// Elements `start..end`.
    pub fn range(&self, start: usize, end: usize) -> Result<Vec<Vector>> {
        let (s, e) = (start + self.offset(), end + self.offset());
        match &self.source {
            Source::Builtin(kind) => {
                let d = self.carrier.dim();
                // largest rational index any coordinate can need
                let top = if d == 1 {
                    e as u64
                } else {
                    let w = ((8 * e as u128 + 1).isqrt() as u64 - 1) / 2;
                    w + 1
                };
                let table: Vec<Rational> = Rationals::new().take(top as usize + 1).collect();
                Ok((s..e)
                    .into_par_iter()
                    .map(|m| self.builtin_at(*kind, m, |i| table[i as usize]))
                    .collect())
            }
            Source::Custom(f) => (s..e)
                .into_par_iter()
                .map(|m| {
                    let v = f(m);
                    if v.space() == self.carrier {
                        Ok(v)
                    } else {
                        Err(Error::CarrierMismatch {
                            left: self.carrier,
                            right: v.space(),
                        })
                    }
                })
                .collect(),
        }
    }

    /// Elements `0..len`.
    pub fn prefix(&self, len: usize) -> Result<Vec<Vector>> {
        self.range(0, len)
    }
}

/// Outcome of a weak-separability scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SepReport {
    pub ok: bool,
    /// Largest first-hit index over the samples that were hit.
    pub worst_index: Option<usize>,
    /// First `n <= max_n` with `‖y − u(n)‖ < eps`, per sample.
    pub hits: Vec<Option<usize>>,
}

const SCAN_CHUNK: usize = 1 << 16;

/// For each sample `y`, the first `n <= max_n` with `‖y − u(n)‖ < eps`.
pub fn weak_sep_check(
    u: &DenseSeq,
    samples: &[Vector],
    eps: f64,
    max_n: usize,
) -> Result<SepReport> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "eps must be > 0, got {eps}"
        )));
    }
    for y in samples {
        if y.space() != u.carrier() {
            return Err(Error::CarrierMismatch {
                left: u.carrier(),
                right: y.space(),
            });
        }
    }
    let mut hits: Vec<Option<usize>> = vec![None; samples.len()];
    let mut start = 0;
    while start <= max_n && hits.iter().any(Option::is_none) {
        let end = (start + SCAN_CHUNK).min(max_n + 1);
        let chunk = u.range(start, end)?;
        hits.par_iter_mut()
            .zip(samples.par_iter())
            .filter(|(h, _)| h.is_none())
            .for_each(|(h, y)| {
                *h = chunk
                    .iter()
                    .position(|v| v.dist_unchecked(y) < eps)
                    .map(|p| start + p);
            });
        start = end;
    }
    Ok(SepReport {
        ok: hits.iter().all(Option::is_some),
        worst_index: hits.iter().flatten().copied().max(),
        hits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn q(num: i64, den: u64) -> Rational {
        Rational { num, den }
    }

    #[test]
    fn leading_terms() {
        let head: Vec<Rational> = (0..11).map(enum_rationals).collect();
        assert_eq!(
            head,
            vec![
                q(0, 1),
                q(1, 1),
                q(-1, 1),
                q(2, 1),
                q(-2, 1),
                q(1, 2),
                q(-1, 2),
                q(3, 1),
                q(-3, 1),
                q(1, 3),
                q(-1, 3)
            ]
        );
    }

    #[test]
    fn iterator_matches_random_access() {
        for (n, r) in Rationals::new().take(5000).enumerate() {
            assert_eq!(r, enum_rationals(n), "index {n}");
            assert_eq!(rational_index(r.num, r.den as i64), Some(n));
        }
    }

    #[test]
    fn injective_and_reduced() {
        let mut seen = HashSet::new();
        for r in Rationals::new().take(10_000) {
            assert_eq!(r.num.unsigned_abs().gcd(&r.den), 1);
            assert!(seen.insert(r));
        }
    }

    #[test]
    fn bounded_height_rationals_appear() {
        let prefix: HashSet<Rational> = Rationals::new().take(400).collect();
        for den in 1..=12u64 {
            for num in -12i64..=12 {
                if num.unsigned_abs().gcd(&den) == 1 {
                    assert!(prefix.contains(&q(num, den)), "{num}/{den}");
                }
            }
        }
    }

    #[test]
    fn cantor_roundtrip() {
        for n in 0..100_000u64 {
            let (a, b) = cantor_unpair(n);
            assert_eq!(cantor_pair(a, b), n);
        }
        let big = u32::MAX as u64 * 7;
        let (a, b) = cantor_unpair(big);
        assert_eq!(cantor_pair(a, b), big);
    }

    #[test]
    fn zero_first_and_carriers() {
        for c in [VSpace::Real, VSpace::RVec(3), VSpace::Complex] {
            let u = dense_seq(c, true);
            assert!(u.get(0).is_zero());
            let skip = dense_seq(c, false);
            assert_eq!(skip.get(0), u.get(1));
            for v in u.prefix(500).unwrap() {
                assert_eq!(v.space(), c);
            }
            let t = DenseSeq::builtin(c, DenseKind::RationalTransposed, true);
            assert!(t.get(0).is_zero());
        }
    }

    #[test]
    fn prefix_matches_get() {
        for c in [VSpace::Real, VSpace::RVec(2), VSpace::RVec(5)] {
            for kind in [DenseKind::Rational, DenseKind::RationalTransposed] {
                let u = DenseSeq::builtin(c, kind, true);
                let p = u.range(100, 3000).unwrap();
                for (i, v) in p.iter().enumerate() {
                    assert_eq!(*v, u.get(100 + i));
                }
            }
        }
    }

    #[test]
    fn rvec2_prefix_reaches_target() {
        let target = Vector::rvec(&[std::f64::consts::PI - 3.0, 1.0 / 3.0]).unwrap();
        let u = dense_seq(VSpace::RVec(2), true);
        let hit = u
            .prefix(100_000)
            .unwrap()
            .iter()
            .any(|v| v.dist(&target).unwrap() < 1e-2);
        assert!(hit);
    }

    #[test]
    fn scan_examples() {
        let u = dense_seq(VSpace::Real, true);
        let samples: Vec<Vector> = [3, 17, 250].iter().map(|&n| u.get(n)).collect();
        let r = weak_sep_check(&u, &samples, 1e-9, 1000).unwrap();
        assert!(r.ok);
        assert_eq!(r.hits, vec![Some(3), Some(17), Some(250)]);
        assert_eq!(r.worst_index, Some(250));

        let generic = [Vector::real(std::f64::consts::E).unwrap()];
        let r = weak_sep_check(&u, &generic, 1e-12, 10).unwrap();
        assert!(!r.ok);
        assert!(weak_sep_check(&u, &generic, 0.0, 10).is_err());
    }

    #[test]
    fn scan_monotone() {
        let u = dense_seq(VSpace::Complex, true);
        let ys = [
            Vector::complex(0.3, -1.7).unwrap(),
            Vector::complex(2.2, 0.01).unwrap(),
        ];
        let mut prev = None;
        for eps in [0.5, 0.1, 0.05, 0.02] {
            let r = weak_sep_check(&u, &ys, eps, 1_000_000).unwrap();
            assert!(r.ok, "eps {eps}");
            if let Some(p) = prev {
                assert!(r.worst_index.unwrap() >= p);
            }
            prev = r.worst_index;
        }
    }

    #[test]
    fn custom_sequences() {
        let u = DenseSeq::from_fn(VSpace::Real, true, |n| Vector::real(n as f64).unwrap()).unwrap();
        assert_eq!(u.get(4), Vector::real(4.0).unwrap());
        assert!(DenseSeq::from_fn(VSpace::Real, true, |_| Vector::real(1.0).unwrap()).is_err());
        assert!(DenseSeq::from_fn(VSpace::Complex, false, |_| Vector::real(1.0).unwrap()).is_err());
    }
}
