//! The two concrete measure spaces, their measurable sets, and index
//! functions (the `which` part of a simple function).
//!
//! * [`MeasureSpace::Finite`]: `n` atoms, each with a mass in `[0, +∞]`.
//! * [`MeasureSpace::Interval`]: `[0, 1)` with Lebesgue measure.
//!
//! Sets are point lists or finite unions of half-open intervals, and index
//! functions are tables or step functions, so every preimage is measurable
//! by construction.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extreal::XReal;

/// Shortest cell or interval accepted from user input.
pub const MIN_CELL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FiniteRepr")]
pub struct FiniteSpace {
    masses: Vec<XReal>,
}

#[derive(Deserialize)]
struct FiniteRepr {
    masses: Vec<XReal>,
}

impl TryFrom<FiniteRepr> for FiniteSpace {
    type Error = Error;

    fn try_from(r: FiniteRepr) -> Result<Self> {
        FiniteSpace::new(r.masses)
    }
}

impl FiniteSpace {
    pub fn new(masses: Vec<XReal>) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::EmptySpace);
        }
        Ok(FiniteSpace { masses })
    }

    /// Convenience constructor from raw values (`f64::INFINITY` allowed).
    pub fn from_f64(masses: &[f64]) -> Result<Self> {
        FiniteSpace::new(
            masses
                .iter()
                .map(|&m| XReal::new(m))
                .collect::<Result<_>>()?,
        )
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn masses(&self) -> &[XReal] {
        &self.masses
    }

    pub fn mass(&self, i: usize) -> XReal {
        self.masses[i]
    }
}

/// A measure space from one of the two supported families.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureSpace {
    Finite(FiniteSpace),
    Interval,
}

#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    space: SpaceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    masses: Option<Vec<XReal>>,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum SpaceKind {
    Finite,
    Interval,
}

impl Serialize for MeasureSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            MeasureSpace::Finite(f) => SpaceRepr {
                space: SpaceKind::Finite,
                masses: Some(f.masses.clone()),
            },
            MeasureSpace::Interval => SpaceRepr {
                space: SpaceKind::Interval,
                masses: None,
            },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MeasureSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SpaceRepr::deserialize(d)?;
        match (repr.space, repr.masses) {
            (SpaceKind::Finite, Some(m)) => FiniteSpace::new(m)
                .map(MeasureSpace::Finite)
                .map_err(D::Error::custom),
            (SpaceKind::Finite, None) => Err(D::Error::missing_field("masses")),
            (SpaceKind::Interval, None) => Ok(MeasureSpace::Interval),
            (SpaceKind::Interval, Some(_)) => {
                Err(D::Error::custom("the interval space takes no masses"))
            }
        }
    }
}

/// A point of a measure space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Point {
    Atom(usize),
    At(f64),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Atom(i) => write!(f, "atom {i}"),
            Point::At(x) => write!(f, "x = {x}"),
        }
    }
}

/// Strictly increasing atom indices.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct PointSet(Vec<usize>);

impl From<Vec<usize>> for PointSet {
    fn from(v: Vec<usize>) -> Self {
        PointSet::new(v)
    }
}

impl From<PointSet> for Vec<usize> {
    fn from(p: PointSet) -> Self {
        p.0
    }
}

impl PointSet {
    pub fn new(points: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = points.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        PointSet(v)
    }

    pub fn points(&self) -> &[usize] {
        &self.0
    }
}

/// Sorted, disjoint, non-touching half-open intervals inside `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct IntervalSet(Vec<(f64, f64)>);

impl TryFrom<Vec<(f64, f64)>> for IntervalSet {
    type Error = Error;

    fn try_from(v: Vec<(f64, f64)>) -> Result<Self> {
        IntervalSet::new(v)
    }
}

impl From<IntervalSet> for Vec<(f64, f64)> {
    fn from(s: IntervalSet) -> Self {
        s.0
    }
}

impl IntervalSet {
    /// Validates `0 <= a_i < b_i <= a_{i+1} <= 1` and a minimum length of
    /// [`MIN_CELL`]; touching intervals are merged.
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        let mut prev_end = 0.0;
        for (i, &(a, b)) in intervals.iter().enumerate() {
            if !(a.is_finite() && b.is_finite()) || a < prev_end || b > 1.0 || !(a < b) {
                return Err(Error::InvalidSet(format!(
                    "interval {i} = [{a}, {b}) breaks 0 <= a < b <= next a <= 1"
                )));
            }
            if b - a < MIN_CELL {
                return Err(Error::InvalidSet(format!(
                    "interval {i} = [{a}, {b}) is shorter than {MIN_CELL:e}"
                )));
            }
            prev_end = b;
        }
        Ok(Self::normalized(intervals))
    }

    fn normalized(intervals: Vec<(f64, f64)>) -> Self {
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
        for (a, b) in intervals {
            if a >= b {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.1 == a => last.1 = b,
                _ => out.push((a, b)),
            }
        }
        IntervalSet(out)
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.0
    }

    pub fn contains(&self, x: f64) -> bool {
        let i = self.0.partition_point(|&(_, b)| b <= x);
        self.0.get(i).is_some_and(|&(a, _)| a <= x)
    }

    pub fn length(&self) -> f64 {
        self.0.iter().map(|&(a, b)| b - a).sum()
    }

    /// Pointwise boolean combination of two sets.
    fn combine(&self, other: &IntervalSet, keep: impl Fn(bool, bool) -> bool) -> IntervalSet {
        let mut cuts: Vec<f64> = vec![0.0, 1.0];
        for &(a, b) in self.0.iter().chain(&other.0) {
            cuts.push(a);
            cuts.push(b);
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let cells = cuts
            .windows(2)
            // cells never straddle an endpoint, so the left end decides
            .filter(|w| keep(self.contains(w[0]), other.contains(w[0])))
            .map(|w| (w[0], w[1]))
            .collect();
        Self::normalized(cells)
    }
}

/// A measurable subset of one of the two space families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MSet {
    Points(PointSet),
    Intervals(IntervalSet),
}

impl MSet {
    pub fn points(points: impl IntoIterator<Item = usize>) -> MSet {
        MSet::Points(PointSet::new(points))
    }

    pub fn intervals(intervals: Vec<(f64, f64)>) -> Result<MSet> {
        IntervalSet::new(intervals).map(MSet::Intervals)
    }

    pub fn is_empty(&self) -> bool {
        match self {
            MSet::Points(p) => p.0.is_empty(),
            MSet::Intervals(s) => s.0.is_empty(),
        }
    }

    pub fn contains(&self, x: Point) -> bool {
        match (self, x) {
            (MSet::Points(p), Point::Atom(i)) => p.0.binary_search(&i).is_ok(),
            (MSet::Intervals(s), Point::At(x)) => s.contains(x),
            _ => false,
        }
    }
}

/// Index function on the unit interval: constant on each cell
/// `[breaks[i], breaks[i + 1])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StepRepr", into = "StepRepr")]
pub struct StepFn {
    breaks: Vec<f64>,
    index: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct StepRepr {
    breaks: Vec<f64>,
    index: Vec<usize>,
}

impl TryFrom<StepRepr> for StepFn {
    type Error = Error;

    fn try_from(r: StepRepr) -> Result<Self> {
        StepFn::new(r.breaks, r.index)
    }
}

impl From<StepFn> for StepRepr {
    fn from(s: StepFn) -> Self {
        StepRepr {
            breaks: s.breaks,
            index: s.index,
        }
    }
}

impl StepFn {
    /// Breakpoints must run `0 = t_0 < t_1 < ... < t_k = 1` with cells no
    /// shorter than [`MIN_CELL`]; `index` has one entry per cell.
    pub fn new(breaks: Vec<f64>, index: Vec<usize>) -> Result<Self> {
        if breaks.len() < 2 || breaks[0] != 0.0 || *breaks.last().unwrap() != 1.0 {
            return Err(Error::InvalidIndexFn(
                "breakpoints must start at 0 and end at 1".into(),
            ));
        }
        if index.len() + 1 != breaks.len() {
            return Err(Error::InvalidIndexFn(format!(
                "{} breakpoints need {} cell indices, got {}",
                breaks.len(),
                breaks.len() - 1,
                index.len()
            )));
        }
        for w in breaks.windows(2) {
            if !(w[1] - w[0] >= MIN_CELL) {
                return Err(Error::InvalidIndexFn(format!(
                    "cell [{}, {}) is empty, reversed or shorter than {MIN_CELL:e}",
                    w[0], w[1]
                )));
            }
        }
        Ok(StepFn { breaks, index })
    }

    /// `2^resolution` equal cells.
    pub fn uniform(resolution: u32, index: Vec<usize>) -> Result<Self> {
        let cells = 1usize << resolution;
        if index.len() != cells {
            return Err(Error::InvalidIndexFn(format!(
                "a grid of {cells} cells needs {cells} indices, got {}",
                index.len()
            )));
        }
        Ok(StepFn {
            breaks: dyadic_grid(resolution),
            index,
        })
    }

    pub(crate) fn from_parts_unchecked(breaks: Vec<f64>, index: Vec<usize>) -> Self {
        debug_assert_eq!(breaks.len(), index.len() + 1);
        StepFn { breaks, index }
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn indices(&self) -> &[usize] {
        &self.index
    }

    /// `(a, b, index)` for every cell, left to right.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, usize)> + '_ {
        self.breaks
            .windows(2)
            .zip(&self.index)
            .map(|(w, &i)| (w[0], w[1], i))
    }

    pub fn eval(&self, x: f64) -> Option<usize> {
        if !(0.0..1.0).contains(&x) {
            return None;
        }
        let cell = self.breaks.partition_point(|&t| t <= x) - 1;
        Some(self.index[cell])
    }
}

/// `0, 2^-r, 2·2^-r, ..., 1` (exact in binary floating point).
pub fn dyadic_grid(resolution: u32) -> Vec<f64> {
    let cells = 1usize << resolution;
    let h = (-(resolution as f64)).exp2();
    (0..=cells).map(|i| i as f64 * h).collect()
}

/// The `which : X -> nat` part of a simple function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexFn {
    /// One index per atom of a finite space.
    Table(Vec<usize>),
    /// Step function on the unit interval.
    Step(StepFn),
}

impl IndexFn {
    pub fn max_index(&self) -> usize {
        let it = match self {
            IndexFn::Table(t) => t.iter(),
            IndexFn::Step(s) => s.index.iter(),
        };
        it.copied().max().unwrap_or(0)
    }

    pub fn eval(&self, x: Point) -> Result<usize> {
        match (self, x) {
            (IndexFn::Table(t), Point::Atom(i)) => t
                .get(i)
                .copied()
                .ok_or_else(|| Error::PointOutsideSpace(x.to_string())),
            (IndexFn::Step(s), Point::At(y)) => s
                .eval(y)
                .ok_or_else(|| Error::PointOutsideSpace(x.to_string())),
            _ => Err(Error::PointOutsideSpace(x.to_string())),
        }
    }

    /// Applies `f` to every stored index.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> IndexFn {
        match self {
            IndexFn::Table(t) => IndexFn::Table(t.iter().map(|&i| f(i)).collect()),
            IndexFn::Step(s) => IndexFn::Step(StepFn {
                breaks: s.breaks.clone(),
                index: s.index.iter().map(|&i| f(i)).collect(),
            }),
        }
    }
}

/// `i·(nb + 1) + j`: flattens `[0..na] × [0..nb]` onto
/// `[0..(na + 1)(nb + 1) - 1]`, sending `(na, nb)` to the last index.
pub fn pair_index(i: usize, j: usize, nb: usize) -> usize {
    i * (nb + 1) + j
}

/// Inverse of [`pair_index`].
pub fn unpair_index(k: usize, nb: usize) -> (usize, usize) {
    (k / (nb + 1), k % (nb + 1))
}

/// Common refinement of two index functions on the same space:
/// `w(x) = pair_index(wa(x), wb(x), nb)`.
pub fn refine(wa: &IndexFn, wb: &IndexFn, nb: usize) -> Result<IndexFn> {
    match (wa, wb) {
        (IndexFn::Table(a), IndexFn::Table(b)) => {
            if a.len() != b.len() {
                return Err(Error::SpaceMismatch(format!(
                    "index tables of length {} and {}",
                    a.len(),
                    b.len()
                )));
            }
            Ok(IndexFn::Table(
                a.iter()
                    .zip(b)
                    .map(|(&i, &j)| pair_index(i, j, nb))
                    .collect(),
            ))
        }
        (IndexFn::Step(a), IndexFn::Step(b)) => {
            let mut breaks: Vec<f64> = a.breaks.iter().chain(&b.breaks).copied().collect();
            breaks.sort_by(f64::total_cmp);
            breaks.dedup();
            let index = breaks
                .windows(2)
                .map(|w| {
                    // every merged cell lies inside one cell of each operand
                    let i = a.eval(w[0]).expect("left end inside [0,1)");
                    let j = b.eval(w[0]).expect("left end inside [0,1)");
                    pair_index(i, j, nb)
                })
                .collect();
            Ok(IndexFn::Step(StepFn::from_parts_unchecked(breaks, index)))
        }
        _ => Err(Error::SpaceMismatch(
            "cannot refine a table with a step function".into(),
        )),
    }
}

impl MeasureSpace {
    pub fn finite(masses: &[f64]) -> Result<Self> {
        FiniteSpace::from_f64(masses).map(MeasureSpace::Finite)
    }

    pub fn as_finite(&self) -> Option<&FiniteSpace> {
        match self {
            MeasureSpace::Finite(f) => Some(f),
            MeasureSpace::Interval => None,
        }
    }

    pub fn is_interval(&self) -> bool {
        matches!(self, MeasureSpace::Interval)
    }

    pub fn whole(&self) -> MSet {
        match self {
            MeasureSpace::Finite(f) => MSet::points(0..f.len()),
            MeasureSpace::Interval => MSet::Intervals(IntervalSet(vec![(0.0, 1.0)])),
        }
    }

    pub fn empty(&self) -> MSet {
        match self {
            MeasureSpace::Finite(_) => MSet::Points(PointSet::default()),
            MeasureSpace::Interval => MSet::Intervals(IntervalSet::default()),
        }
    }

    pub fn total_measure(&self) -> XReal {
        match self {
            MeasureSpace::Finite(f) => f.masses.iter().copied().sum(),
            MeasureSpace::Interval => XReal::ONE,
        }
    }

    pub fn contains(&self, x: Point) -> bool {
        match (self, x) {
            (MeasureSpace::Finite(f), Point::Atom(i)) => i < f.len(),
            (MeasureSpace::Interval, Point::At(y)) => (0.0..1.0).contains(&y),
            _ => false,
        }
    }

    /// Brings `s` into this space's representation; an empty set of the
    /// other family (as JSON `[]` parses) is accepted.
    pub fn conform(&self, s: &MSet) -> Result<MSet> {
        match (self, s) {
            (MeasureSpace::Finite(f), MSet::Points(p)) => {
                if let Some(&bad) = p.0.iter().find(|&&i| i >= f.len()) {
                    return Err(Error::SpaceMismatch(format!(
                        "point {bad} in a space of {} atoms",
                        f.len()
                    )));
                }
                Ok(s.clone())
            }
            (MeasureSpace::Interval, MSet::Intervals(_)) => Ok(s.clone()),
            _ if s.is_empty() => Ok(self.empty()),
            _ => Err(Error::SpaceMismatch(
                "point sets live on finite spaces, interval sets on [0,1)".into(),
            )),
        }
    }

    pub fn check_index_fn(&self, w: &IndexFn) -> Result<()> {
        match (self, w) {
            (MeasureSpace::Finite(f), IndexFn::Table(t)) if t.len() == f.len() => Ok(()),
            (MeasureSpace::Finite(f), IndexFn::Table(t)) => Err(Error::SpaceMismatch(format!(
                "index table of length {} on a space of {} atoms",
                t.len(),
                f.len()
            ))),
            (MeasureSpace::Interval, IndexFn::Step(_)) => Ok(()),
            _ => Err(Error::SpaceMismatch(
                "tables index finite spaces, step functions index [0,1)".into(),
            )),
        }
    }

    /// μ(s). Finite spaces: xr-sum of atom masses. Interval: total length.
    pub fn measure_of(&self, s: &MSet) -> Result<XReal> {
        match (self, self.conform(s)?) {
            (MeasureSpace::Finite(f), MSet::Points(p)) => {
                Ok(p.0.iter().map(|&i| f.masses[i]).sum())
            }
            (MeasureSpace::Interval, MSet::Intervals(iv)) => XReal::finite(iv.length()),
            _ => unreachable!("conform returns the space's own family"),
        }
    }

    /// `{x : w(x) = n}`; adjacent cells of a step function are merged.
    pub fn preimage(&self, w: &IndexFn, n: usize) -> Result<MSet> {
        self.check_index_fn(w)?;
        Ok(match w {
            IndexFn::Table(t) => MSet::points(
                t.iter()
                    .enumerate()
                    .filter(|&(_, &i)| i == n)
                    .map(|(x, _)| x),
            ),
            IndexFn::Step(s) => MSet::Intervals(IntervalSet::normalized(
                s.cells()
                    .filter(|&(_, _, i)| i == n)
                    .map(|(a, b, _)| (a, b))
                    .collect(),
            )),
        })
    }

    /// μ of every nonempty preimage in one pass. Agrees exactly with
    /// `measure_of(preimage(w, n))`: the same runs are summed in the same
    /// order.
    pub fn part_measures(&self, w: &IndexFn) -> Result<BTreeMap<usize, XReal>> {
        self.check_index_fn(w)?;
        let mut out: BTreeMap<usize, XReal> = BTreeMap::new();
        match (self, w) {
            (MeasureSpace::Finite(f), IndexFn::Table(t)) => {
                for (x, &i) in t.iter().enumerate() {
                    let e = out.entry(i).or_insert(XReal::ZERO);
                    *e = *e + f.masses[x];
                }
            }
            (MeasureSpace::Interval, IndexFn::Step(s)) => {
                let mut lengths: BTreeMap<usize, f64> = BTreeMap::new();
                let mut run: Option<(f64, f64, usize)> = None;
                for (a, b, i) in s.cells() {
                    match run {
                        Some((ra, _, ri)) if ri == i => run = Some((ra, b, ri)),
                        _ => {
                            if let Some((ra, rb, ri)) = run {
                                *lengths.entry(ri).or_insert(0.0) += rb - ra;
                            }
                            run = Some((a, b, i));
                        }
                    }
                }
                if let Some((ra, rb, ri)) = run {
                    *lengths.entry(ri).or_insert(0.0) += rb - ra;
                }
                for (i, l) in lengths {
                    out.insert(i, XReal::finite(l)?);
                }
            }
            _ => unreachable!("checked by check_index_fn"),
        }
        Ok(out)
    }

    pub fn union(&self, a: &MSet, b: &MSet) -> Result<MSet> {
        self.set_op(a, b, |x, y| x || y)
    }

    pub fn intersection(&self, a: &MSet, b: &MSet) -> Result<MSet> {
        self.set_op(a, b, |x, y| x && y)
    }

    pub fn difference(&self, a: &MSet, b: &MSet) -> Result<MSet> {
        self.set_op(a, b, |x, y| x && !y)
    }

    pub fn complement(&self, a: &MSet) -> Result<MSet> {
        self.difference(&self.whole(), a)
    }

    fn set_op(&self, a: &MSet, b: &MSet, keep: impl Fn(bool, bool) -> bool) -> Result<MSet> {
        match (self.conform(a)?, self.conform(b)?) {
            (MSet::Points(p), MSet::Points(q)) => {
                let n = self.as_finite().map_or(0, FiniteSpace::len);
                Ok(MSet::points((0..n).filter(|i| {
                    keep(p.0.binary_search(i).is_ok(), q.0.binary_search(i).is_ok())
                })))
            }
            (MSet::Intervals(p), MSet::Intervals(q)) => Ok(MSet::Intervals(p.combine(&q, keep))),
            _ => unreachable!("conform returns the space's own family"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fin(x: f64) -> XReal {
        XReal::finite(x).unwrap()
    }

    #[test]
    fn measures() {
        let sp = MeasureSpace::finite(&[1.0, 2.0, f64::INFINITY]).unwrap();
        assert_eq!(sp.measure_of(&MSet::points([0, 1])).unwrap(), fin(3.0));
        assert_eq!(
            sp.measure_of(&MSet::points([1, 2])).unwrap(),
            XReal::INFINITY
        );
        let iv = MSet::intervals(vec![(0.0, 0.25), (0.5, 0.75)]).unwrap();
        assert_eq!(MeasureSpace::Interval.measure_of(&iv).unwrap(), fin(0.5));
        assert!(sp.measure_of(&iv).is_err());
        assert!(sp.measure_of(&MSet::points([3])).is_err());
    }

    #[test]
    fn preimages() {
        let sp = MeasureSpace::finite(&[1.0; 4]).unwrap();
        let w = IndexFn::Table(vec![0, 1, 0, 2]);
        assert_eq!(sp.preimage(&w, 0).unwrap(), MSet::points([0, 2]));
        assert_eq!(sp.preimage(&w, 7).unwrap(), MSet::points([]));

        let step = IndexFn::Step(StepFn::new(vec![0.0, 0.5, 1.0], vec![1, 0]).unwrap());
        assert_eq!(
            MeasureSpace::Interval.preimage(&step, 0).unwrap(),
            MSet::intervals(vec![(0.5, 1.0)]).unwrap()
        );
        let merged =
            IndexFn::Step(StepFn::new(vec![0.0, 0.25, 0.5, 0.75, 1.0], vec![3, 3, 1, 3]).unwrap());
        assert_eq!(
            MeasureSpace::Interval.preimage(&merged, 3).unwrap(),
            MSet::intervals(vec![(0.0, 0.5), (0.75, 1.0)]).unwrap()
        );
    }

    #[test]
    fn refine_tables() {
        assert_eq!(pair_index(0, 0, 9), 0);
        for na in 0..=20 {
            for nb in 0..=20 {
                assert_eq!(pair_index(na, nb, nb), (na + 1) * (nb + 1) - 1);
            }
        }
        assert_eq!(unpair_index(0, 5), (0, 0));
        assert_eq!(unpair_index(11, 2), (3, 2));
        let r = refine(&IndexFn::Table(vec![0, 1]), &IndexFn::Table(vec![1, 0]), 1).unwrap();
        assert_eq!(r, IndexFn::Table(vec![1, 2]));
        assert!(refine(&IndexFn::Table(vec![0]), &IndexFn::Table(vec![1, 0]), 1).is_err());
    }

    #[test]
    fn refine_steps() {
        let a = IndexFn::Step(StepFn::new(vec![0.0, 0.5, 1.0], vec![0, 1]).unwrap());
        let b = IndexFn::Step(StepFn::new(vec![0.0, 0.25, 1.0], vec![1, 0]).unwrap());
        let r = refine(&a, &b, 1).unwrap();
        for &x in &[0.1, 0.3, 0.6, 0.99] {
            let i = a.eval(Point::At(x)).unwrap();
            let j = b.eval(Point::At(x)).unwrap();
            assert_eq!(r.eval(Point::At(x)).unwrap(), pair_index(i, j, 1));
        }
    }

    #[test]
    fn invalid_inputs() {
        assert_eq!(FiniteSpace::new(vec![]), Err(Error::EmptySpace));
        assert!(MSet::intervals(vec![(0.5, 0.25)]).is_err());
        assert!(MSet::intervals(vec![(0.0, 0.5), (0.4, 0.6)]).is_err());
        assert!(MSet::intervals(vec![(0.0, 1e-13)]).is_err());
        assert!(MSet::intervals(vec![(0.5, 1.5)]).is_err());
        assert!(StepFn::new(vec![0.0, 0.5, 0.5, 1.0], vec![0, 1, 2]).is_err());
        assert!(StepFn::new(vec![0.0, 0.5], vec![0]).is_err());
        // touching intervals are merged
        assert_eq!(
            MSet::intervals(vec![(0.0, 0.5), (0.5, 0.75)]).unwrap(),
            MSet::intervals(vec![(0.0, 0.75)]).unwrap()
        );
    }

    #[test]
    fn set_algebra_on_intervals() {
        let sp = MeasureSpace::Interval;
        let a = MSet::intervals(vec![(0.0, 0.5)]).unwrap();
        let b = MSet::intervals(vec![(0.25, 0.75)]).unwrap();
        assert_eq!(
            sp.intersection(&a, &b).unwrap(),
            MSet::intervals(vec![(0.25, 0.5)]).unwrap()
        );
        assert_eq!(
            sp.union(&a, &b).unwrap(),
            MSet::intervals(vec![(0.0, 0.75)]).unwrap()
        );
        assert_eq!(
            sp.complement(&a).unwrap(),
            MSet::intervals(vec![(0.5, 1.0)]).unwrap()
        );
        assert!(sp
            .intersection(&a, &sp.complement(&a).unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn json_shapes() {
        let sp: MeasureSpace =
            serde_json::from_str(r#"{"space": "finite", "masses": [1, 2, "inf"]}"#).unwrap();
        assert_eq!(
            sp,
            MeasureSpace::finite(&[1.0, 2.0, f64::INFINITY]).unwrap()
        );
        let iv: MeasureSpace = serde_json::from_str(r#"{"space": "interval"}"#).unwrap();
        assert_eq!(iv, MeasureSpace::Interval);
        assert_eq!(
            serde_json::to_string(&sp).unwrap(),
            r#"{"space":"finite","masses":[1.0,2.0,"inf"]}"#
        );
        assert!(
            serde_json::from_str::<MeasureSpace>(r#"{"space": "finite", "masses": []}"#).is_err()
        );

        let s: MSet = serde_json::from_str("[[0, 0.25], [0.5, 0.75]]").unwrap();
        assert!(matches!(s, MSet::Intervals(_)));
        let p: MSet = serde_json::from_str("[2, 0]").unwrap();
        assert_eq!(p, MSet::points([0, 2]));

        let w: IndexFn =
            serde_json::from_str(r#"{"breaks": [0, 0.5, 1], "index": [1, 0]}"#).unwrap();
        assert!(matches!(w, IndexFn::Step(_)));
        let t: IndexFn = serde_json::from_str("[0, 1, 1]").unwrap();
        assert_eq!(t, IndexFn::Table(vec![0, 1, 1]));
    }

    fn masses() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(
            prop_oneof![4 => (0u32..8).prop_map(|k| k as f64 * 0.25), 1 => Just(f64::INFINITY)],
            1..12,
        )
    }

    proptest! {
        #[test]
        fn pair_roundtrip(i in 0usize..200, j in 0usize..200, nb_extra in 0usize..50) {
            let nb = j + nb_extra;
            prop_assert_eq!(unpair_index(pair_index(i, j, nb), nb), (i, j));
        }

        #[test]
        fn finite_additivity(m in masses(), bits in prop::collection::vec(0u8..3, 12)) {
            let sp = MeasureSpace::finite(&m).unwrap();
            let n = m.len();
            let s1 = MSet::points((0..n).filter(|&i| bits[i] == 1));
            let s2 = MSet::points((0..n).filter(|&i| bits[i] == 2));
            let u = sp.union(&s1, &s2).unwrap();
            prop_assert_eq!(
                sp.measure_of(&u).unwrap(),
                sp.measure_of(&s1).unwrap() + sp.measure_of(&s2).unwrap()
            );
        }

        #[test]
        fn interval_additivity(cuts in prop::collection::btree_set(1u32..64, 1..10)) {
            let t: Vec<f64> = cuts.iter().map(|&c| c as f64 / 64.0).collect();
            let mut a = vec![];
            let mut b = vec![];
            let mut prev = 0.0;
            for (k, &x) in t.iter().chain(std::iter::once(&1.0)).enumerate() {
                if k % 2 == 0 { a.push((prev, x)) } else { b.push((prev, x)) }
                prev = x;
            }
            let sp = MeasureSpace::Interval;
            let a = MSet::intervals(a).unwrap();
            let b = MSet::intervals(b).unwrap();
            prop_assert!(sp.intersection(&a, &b).unwrap().is_empty());
            let u = sp.union(&a, &b).unwrap();
            prop_assert_eq!(&u, &sp.whole());
            prop_assert_eq!(
                sp.measure_of(&u).unwrap(),
                sp.measure_of(&a).unwrap() + sp.measure_of(&b).unwrap()
            );
        }

        #[test]
        fn preimages_partition(m in masses(), idx in prop::collection::vec(0usize..5, 12)) {
            let sp = MeasureSpace::finite(&m).unwrap();
            let w = IndexFn::Table(idx[..m.len()].to_vec());
            let bound = w.max_index();
            let parts: Vec<MSet> = (0..=bound).map(|n| sp.preimage(&w, n).unwrap()).collect();
            let mut cover = sp.empty();
            let mut total = XReal::ZERO;
            for (i, p) in parts.iter().enumerate() {
                for q in &parts[i + 1..] {
                    prop_assert!(sp.intersection(p, q).unwrap().is_empty());
                }
                cover = sp.union(&cover, p).unwrap();
                total = total + sp.measure_of(p).unwrap();
            }
            prop_assert_eq!(cover, sp.whole());
            prop_assert_eq!(total, sp.total_measure());
            let pm = sp.part_measures(&w).unwrap();
            for (n, p) in parts.iter().enumerate() {
                let expect = sp.measure_of(p).unwrap();
                prop_assert_eq!(pm.get(&n).copied().unwrap_or(XReal::ZERO), expect);
            }
        }

        #[test]
        fn step_part_measures_match_preimages(idx in prop::collection::vec(0usize..4, 16)) {
            let sp = MeasureSpace::Interval;
            let w = IndexFn::Step(StepFn::uniform(4, idx).unwrap());
            let pm = sp.part_measures(&w).unwrap();
            for n in 0..4 {
                let expect = sp.measure_of(&sp.preimage(&w, n).unwrap()).unwrap();
                prop_assert_eq!(pm.get(&n).copied().unwrap_or(XReal::ZERO), expect);
            }
        }
    }
}
