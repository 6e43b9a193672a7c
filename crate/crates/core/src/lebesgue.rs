//! Integral of nonnegative functions, with certified error bounds.
//!
//! On finite spaces every function is simple and the integral is the exact
//! weighted sum. On `[0, 1)` the supremum over simple minorants is replaced
//! by the dyadic truncation `ψ_d(x) = min(⌊2^d f(x)⌋ / 2^d, d)`, taken over
//! cells of the dyadic grid of depth `d` refined with the function's
//! breakpoints. On each cell a declared Lipschitz bound turns one midpoint
//! evaluation into a guaranteed lower bound, so the returned value never
//! exceeds the true integral and is nondecreasing in `d`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extreal::XReal;
use crate::simple_fn::SimpleFn;
use crate::spaces::{dyadic_grid, MeasureSpace, Point};
use crate::vectors::VSpace;

/// Largest accepted grid depth.
pub const MAX_DEPTH: u32 = 28;

type Eval = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A function on `[0, 1)` that is `lipschitz`-Lipschitz on every piece
/// `[breaks[i], breaks[i + 1])` (with `0` and `1` implied).
#[derive(Clone)]
pub struct LipschitzFn {
    eval: Eval,
    lipschitz: f64,
    breaks: Vec<f64>,
}

impl LipschitzFn {
    pub fn new(
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        lipschitz: f64,
        breaks: Vec<f64>,
    ) -> Result<Self> {
        Self::from_arc(Arc::new(eval), lipschitz, breaks)
    }

    pub(crate) fn from_arc(eval: Eval, lipschitz: f64, mut breaks: Vec<f64>) -> Result<Self> {
        if !(lipschitz >= 0.0) || !lipschitz.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Lipschitz bound must be finite and >= 0, got {lipschitz}"
            )));
        }
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        if breaks.iter().any(|&b| !(b > 0.0 && b < 1.0)) {
            return Err(Error::InvalidParameter(
                "breakpoints must lie strictly inside (0, 1)".into(),
            ));
        }
        Ok(LipschitzFn {
            eval,
            lipschitz,
            breaks,
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }
}

impl fmt::Debug for LipschitzFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LipschitzFn")
            .field("lipschitz", &self.lipschitz)
            .field("breaks", &self.breaks)
            .finish_non_exhaustive()
    }
}

/// A nonnegative measurable function, tagged by how it can be integrated.
#[derive(Debug, Clone)]
pub enum NonNegFn {
    /// Real-valued simple function with nonnegative values.
    Simple(SimpleFn),
    /// One value per atom of a finite space.
    Tabulated(Vec<f64>),
    /// Piecewise Lipschitz function on `[0, 1)`.
    PiecewiseLipschitz(LipschitzFn),
}

impl NonNegFn {
    pub fn lipschitz(
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        lipschitz: f64,
        breaks: Vec<f64>,
    ) -> Result<Self> {
        LipschitzFn::new(eval, lipschitz, breaks).map(NonNegFn::PiecewiseLipschitz)
    }

    pub fn eval(&self, x: Point) -> Result<f64> {
        let y = match (self, x) {
            (NonNegFn::Simple(sf), _) => sf.eval(x)?.coords()[0],
            (NonNegFn::Tabulated(t), Point::Atom(i)) => *t
                .get(i)
                .ok_or_else(|| Error::PointOutsideSpace(x.to_string()))?,
            (NonNegFn::PiecewiseLipschitz(f), Point::At(y)) if (0.0..1.0).contains(&y) => f.eval(y),
            _ => return Err(Error::PointOutsideSpace(x.to_string())),
        };
        check_value(y, x)
    }
}

fn check_value(y: f64, x: Point) -> Result<f64> {
    if y >= 0.0 && y.is_finite() {
        Ok(y)
    } else {
        Err(Error::Domain(format!(
            "nonnegative function takes value {y} at {x}"
        )))
    }
}

/// A computed integral together with how far it may sit below the truth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LIntValue {
    pub value: XReal,
    /// Certified bound on `true integral - value`; `0` when exact.
    pub error_bound: f64,
    /// The value is `+∞` only because a finite sum overflowed `f64`.
    pub overflow: bool,
}

impl LIntValue {
    fn exact(value: XReal, overflow: bool) -> Self {
        LIntValue {
            value,
            error_bound: 0.0,
            overflow,
        }
    }

    /// `value + error_bound` as a real number (infinite values map to `+∞`).
    pub fn upper(&self) -> f64 {
        self.value.to_f64() + self.error_bound
    }
}

/// Exact integral of a nonnegative real-valued simple function:
/// `Σ_n μ(part n) · val[n]` with `0 · ∞ = 0`.
pub fn lint_p_simple(f: &SimpleFn) -> Result<XReal> {
    simple_sum(f).map(|(v, _)| v)
}

fn simple_sum(f: &SimpleFn) -> Result<(XReal, bool)> {
    if f.carrier() != VSpace::Real {
        return Err(Error::Domain(format!(
            "the nonnegative integral needs a real-valued simple function, got {:?}",
            f.carrier()
        )));
    }
    if let Some(v) = f.val().iter().find(|v| !(v.coords()[0] >= 0.0)) {
        return Err(Error::Domain(format!(
            "simple function takes the negative value {}",
            v.coords()[0]
        )));
    }
    let parts = f.space().part_measures(f.which())?;
    Ok(weighted_sum(
        parts.into_iter().map(|(n, m)| (m, f.val()[n].coords()[0])),
    ))
}

/// `Σ mass · value` over `(mass, value)` pairs, and whether a `+∞` result
/// came from float overflow rather than an infinite mass.
fn weighted_sum(terms: impl Iterator<Item = (XReal, f64)>) -> (XReal, bool) {
    let mut total = XReal::ZERO;
    let mut truly_infinite = false;
    for (m, y) in terms {
        let y = XReal::finite(y).expect("checked nonnegative and finite");
        if !m.is_finite() && !y.is_zero() {
            truly_infinite = true;
        }
        total = total + m * y;
    }
    let overflow = !total.is_finite() && !truly_infinite;
    (total, overflow)
}

/// Integral of `f` over `space`; `depth` only matters on `[0, 1)`.
pub fn lint_p(space: &MeasureSpace, f: &NonNegFn, depth: u32) -> Result<LIntValue> {
    match (space, f) {
        (_, NonNegFn::Simple(sf)) => {
            if sf.space().as_ref() != space {
                return Err(Error::SpaceMismatch(
                    "simple function on another space".into(),
                ));
            }
            let (v, overflow) = simple_sum(sf)?;
            Ok(LIntValue::exact(v, overflow))
        }
        (MeasureSpace::Finite(fs), NonNegFn::Tabulated(t)) => {
            if t.len() != fs.len() {
                return Err(Error::SpaceMismatch(format!(
                    "table of {} values on {} atoms",
                    t.len(),
                    fs.len()
                )));
            }
            for (i, &y) in t.iter().enumerate() {
                check_value(y, Point::Atom(i))?;
            }
            let (v, overflow) = weighted_sum(fs.masses().iter().copied().zip(t.iter().copied()));
            Ok(LIntValue::exact(v, overflow))
        }
        (MeasureSpace::Interval, NonNegFn::PiecewiseLipschitz(g)) => lint_lipschitz(g, depth),
        _ => Err(Error::SpaceMismatch(
            "tables integrate over finite spaces, Lipschitz functions over [0,1)".into(),
        )),
    }
}

/// Cells of the depth-`d` dyadic grid refined with `breaks`.
pub(crate) fn refined_cells(depth: u32, breaks: &[f64]) -> Result<Vec<(f64, f64)>> {
    if depth > MAX_DEPTH {
        return Err(Error::InvalidParameter(format!(
            "depth {depth} exceeds the maximum {MAX_DEPTH}"
        )));
    }
    let mut cuts = dyadic_grid(depth);
    if !breaks.is_empty() {
        cuts.extend_from_slice(breaks);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
    }
    Ok(cuts.windows(2).map(|w| (w[0], w[1])).collect())
}

fn lint_lipschitz(g: &LipschitzFn, depth: u32) -> Result<LIntValue> {
    let cells = refined_cells(depth, &g.breaks)?;
    let scale = (depth as f64).exp2();
    let cap = depth as f64;
    let mut lower = Vec::with_capacity(cells.len());
    let mut gap = Vec::with_capacity(cells.len());
    for &(a, b) in &cells {
        let h = b - a;
        let mid = 0.5 * (a + b);
        let y = check_value(g.eval(mid), Point::At(mid))?;
        let slack = 0.5 * g.lipschitz * h;
        let inf_bound = (y - slack).max(0.0);
        let psi = ((scale * inf_bound).floor() / scale).min(cap);
        lower.push(h * psi);
        gap.push(h * (y + slack - psi));
    }
    let total = pairwise_sum(&lower);
    let value = XReal::new(total)?;
    Ok(LIntValue {
        value,
        error_bound: pairwise_sum(&gap),
        overflow: !value.is_finite(),
    })
}

/// μ{x : f(x) >= t}. On `[0, 1)` this is the measure of the grid cells on
/// which the certified lower bound of `f` reaches `t`, so it never exceeds
/// the true value.
pub fn markov_fraction(space: &MeasureSpace, f: &NonNegFn, t: f64, depth: u32) -> Result<XReal> {
    if !(t > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "threshold must be > 0, got {t}"
        )));
    }
    match (space, f) {
        (_, NonNegFn::Simple(sf)) => {
            lint_p_simple(sf)?;
            let parts = space.part_measures(sf.which())?;
            Ok(parts
                .into_iter()
                .filter(|&(n, _)| sf.val()[n].coords()[0] >= t)
                .map(|(_, m)| m)
                .sum())
        }
        (MeasureSpace::Finite(fs), NonNegFn::Tabulated(tab)) if tab.len() == fs.len() => {
            let mut total = XReal::ZERO;
            for (i, &y) in tab.iter().enumerate() {
                if check_value(y, Point::Atom(i))? >= t {
                    total = total + fs.mass(i);
                }
            }
            Ok(total)
        }
        (MeasureSpace::Interval, NonNegFn::PiecewiseLipschitz(g)) => {
            let cells = refined_cells(depth, &g.breaks)?;
            let mut lengths = vec![];
            for (a, b) in cells {
                let mid = 0.5 * (a + b);
                let y = check_value(g.eval(mid), Point::At(mid))?;
                if y - 0.5 * g.lipschitz * (b - a) >= t {
                    lengths.push(b - a);
                }
            }
            XReal::finite(pairwise_sum(&lengths))
        }
        _ => Err(Error::SpaceMismatch(
            "function does not live on this space".into(),
        )),
    }
}

/// Pairwise (cascade) summation: fixed order, `O(log n)` error growth.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if xs.len() <= BLOCK {
        xs.iter().sum()
    } else {
        let (l, r) = xs.split_at(xs.len() / 2);
        pairwise_sum(l) + pairwise_sum(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::MSet;
    use crate::vectors::Vector;
    use proptest::prelude::*;

    fn fin(x: f64) -> XReal {
        XReal::finite(x).unwrap()
    }

    #[test]
    fn simple_integrals() {
        let sp = Arc::new(MeasureSpace::finite(&[0.1, 0.2, 0.7]).unwrap());
        let f = SimpleFn::indicator(
            sp.clone(),
            &MSet::points([0, 1]),
            Vector::real(2.0).unwrap(),
        )
        .unwrap();
        // oracle: Σ_x μ({x}) f(x)
        let oracle = 0.1 * 2.0 + 0.2 * 2.0 + 0.7 * 0.0;
        assert!((lint_p_simple(&f).unwrap().to_f64() - oracle).abs() < 1e-15);

        let inf = Arc::new(MeasureSpace::finite(&[1.0, f64::INFINITY]).unwrap());
        let g = SimpleFn::indicator(inf.clone(), &MSet::points([1]), Vector::real(1.0).unwrap())
            .unwrap();
        assert_eq!(lint_p_simple(&g).unwrap(), XReal::INFINITY);
        let z = SimpleFn::zero(inf, VSpace::Real);
        assert_eq!(lint_p_simple(&z).unwrap(), XReal::ZERO);

        let neg = f.neg();
        assert!(matches!(lint_p_simple(&neg), Err(Error::Domain(_))));
    }

    #[test]
    fn finite_tables() {
        let sp = MeasureSpace::finite(&[1.0, 2.0]).unwrap();
        let v = lint_p(&sp, &NonNegFn::Tabulated(vec![3.0, 0.5]), 0).unwrap();
        assert_eq!(v, LIntValue::exact(fin(4.0), false));
        let inf = MeasureSpace::finite(&[f64::INFINITY, 1.0]).unwrap();
        let v = lint_p(&inf, &NonNegFn::Tabulated(vec![0.0, 2.0]), 0).unwrap();
        assert_eq!(v.value, fin(2.0));
        let big = MeasureSpace::finite(&[1e308, 1e308]).unwrap();
        let v = lint_p(&big, &NonNegFn::Tabulated(vec![10.0, 10.0]), 0).unwrap();
        assert!(!v.value.is_finite() && v.overflow);
        assert!(lint_p(&sp, &NonNegFn::Tabulated(vec![-1.0, 0.0]), 0).is_err());
    }

    #[test]
    fn identity_on_interval() {
        let f = NonNegFn::lipschitz(|x| x, 1.0, vec![]).unwrap();
        let mut prev = 0.0;
        for depth in 0..=14 {
            let v = lint_p(&MeasureSpace::Interval, &f, depth).unwrap();
            let x = v.value.to_f64();
            assert!(x >= prev);
            assert!(x <= 0.5 && 0.5 <= x + v.error_bound + 1e-15);
            assert!(v.error_bound <= 2.0 * (-(depth as f64)).exp2() + 1e-15);
            prev = x;
        }
        assert!((prev - 0.5).abs() < 1e-4);
        let zero = NonNegFn::lipschitz(|_| 0.0, 0.0, vec![]).unwrap();
        for depth in [0, 3, 9] {
            assert_eq!(
                lint_p(&MeasureSpace::Interval, &zero, depth).unwrap().value,
                XReal::ZERO
            );
        }
    }

    #[test]
    fn step_with_breakpoint() {
        let f = NonNegFn::lipschitz(
            |x| if x < 1.0 / 3.0 { 3.0 } else { 0.0 },
            0.0,
            vec![1.0 / 3.0],
        )
        .unwrap();
        let v = lint_p(&MeasureSpace::Interval, &f, 10).unwrap();
        assert!((v.value.to_f64() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn markov_examples() {
        let sp = Arc::new(MeasureSpace::finite(&[0.3, 0.7]).unwrap());
        let f = SimpleFn::indicator(sp.clone(), &MSet::points([0]), Vector::real(2.0).unwrap())
            .unwrap();
        assert_eq!(
            markov_fraction(&sp, &NonNegFn::Simple(f), 1.0, 0).unwrap(),
            fin(0.3)
        );
        let z = NonNegFn::Tabulated(vec![0.0, 0.0]);
        assert_eq!(markov_fraction(&sp, &z, 0.1, 0).unwrap(), XReal::ZERO);
        let id = NonNegFn::lipschitz(|x| x, 1.0, vec![]).unwrap();
        assert_eq!(
            markov_fraction(&MeasureSpace::Interval, &id, 0.5, 10).unwrap(),
            fin(0.5)
        );
        assert!(markov_fraction(&sp, &z, 0.0, 0).is_err());
    }

    #[test]
    fn pairwise_matches_plain_sum_on_exact_inputs() {
        let xs: Vec<f64> = (0..1000).map(|i| i as f64 * 0.25).collect();
        assert_eq!(pairwise_sum(&xs), xs.iter().sum::<f64>());
    }

    proptest! {
        #[test]
        fn finite_matches_brute_force(
            cells in prop::collection::vec((0u32..16, 0u32..40), 1..30)
        ) {
            let masses: Vec<f64> = cells.iter().map(|c| c.0 as f64 / 8.0).collect();
            let vals: Vec<f64> = cells.iter().map(|c| c.1 as f64 / 4.0).collect();
            let sp = MeasureSpace::finite(&masses).unwrap();
            let v = lint_p(&sp, &NonNegFn::Tabulated(vals.clone()), 0).unwrap();
            let oracle: f64 = masses.iter().zip(&vals).map(|(m, y)| m * y).sum();
            prop_assert_eq!(v.value.to_f64(), oracle);
        }

        #[test]
        fn monotone_and_markov(a in 0.0..3.0f64, b in 0.0..3.0f64, t in 0.05..4.0f64, depth in 2u32..10) {
            // f = a·x ≤ g = a·x + b pointwise
            let f = NonNegFn::lipschitz(move |x| a * x, a, vec![]).unwrap();
            let g = NonNegFn::lipschitz(move |x| a * x + b, a, vec![]).unwrap();
            let sp = MeasureSpace::Interval;
            let lf = lint_p(&sp, &f, depth).unwrap();
            let lg = lint_p(&sp, &g, depth).unwrap();
            prop_assert!(lf.value <= lg.value);
            let m = markov_fraction(&sp, &g, t, depth).unwrap();
            prop_assert!(t * m.to_f64() <= lg.upper() + 1e-12);
        }
    }
}
