//! Simple functions as an indexed partition.
//!
//! A [`SimpleFn`] stores an index function `which : X -> {0..max_which}`
//! and a value table `val` of length `max_which + 1`, so that
//! `f(x) = val[which(x)]`. Three record axioms are checked on every
//! construction:
//!
//! 1. `val[max_which]` is the zero vector;
//! 2. `which(x) <= max_which` for every `x`;
//! 3. every preimage is measurable (automatic for tables and step
//!    functions).
//!
//! The representation is deliberately not canonical: several indices may
//! carry the same value and some parts may be empty. The last part holds
//! (at least some of) the zeros and is the only one allowed to have
//! infinite measure in an integrable simple function.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaces::{pair_index, refine, unpair_index, IndexFn, MSet, MeasureSpace, Point, StepFn};
use crate::vectors::{VSpace, Vector};

#[derive(Debug, Clone, PartialEq)]
pub struct SimpleFn {
    space: Arc<MeasureSpace>,
    which: IndexFn,
    val: Vec<Vector>,
}

/// JSON shape of a simple function; the space is supplied separately.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimpleFnRepr {
    pub which: IndexFn,
    pub val: Vec<Vector>,
    pub max_which: usize,
}

impl SimpleFn {
    /// Builds the record after checking all axioms.
    pub fn new(
        space: Arc<MeasureSpace>,
        which: IndexFn,
        val: Vec<Vector>,
        max_which: usize,
    ) -> Result<Self> {
        if val.len() != max_which + 1 {
            return Err(Error::LengthMismatch {
                expected: max_which + 1,
                got: val.len(),
            });
        }
        if !val[max_which].is_zero() {
            return Err(Error::LastValueNotZero { max_which });
        }
        let carrier = val[0].space();
        for v in &val[1..] {
            if v.space() != carrier {
                return Err(Error::CarrierMismatch {
                    left: carrier,
                    right: v.space(),
                });
            }
        }
        space.check_index_fn(&which)?;
        let top = which.max_index();
        if top > max_which {
            return Err(Error::IndexOutOfRange {
                index: top,
                max_which,
            });
        }
        Ok(SimpleFn { space, which, val })
    }

    pub fn from_repr(space: Arc<MeasureSpace>, repr: SimpleFnRepr) -> Result<Self> {
        SimpleFn::new(space, repr.which, repr.val, repr.max_which)
    }

    pub fn to_repr(&self) -> SimpleFnRepr {
        SimpleFnRepr {
            which: self.which.clone(),
            val: self.val.clone(),
            max_which: self.max_which(),
        }
    }

    /// The zero function with a single part (`max_which = 0`).
    pub fn zero(space: Arc<MeasureSpace>, carrier: VSpace) -> Self {
        let which = match space.as_ref() {
            MeasureSpace::Finite(f) => IndexFn::Table(vec![0; f.len()]),
            MeasureSpace::Interval => {
                IndexFn::Step(StepFn::new(vec![0.0, 1.0], vec![0]).expect("single cell"))
            }
        };
        SimpleFn {
            space,
            which,
            val: vec![carrier.zero()],
        }
    }

    /// `v` on `s`, zero elsewhere: `which` is 0 on `s` and 1 on its
    /// complement, `val = [v, 0]`.
    pub fn indicator(space: Arc<MeasureSpace>, s: &MSet, v: Vector) -> Result<Self> {
        let s = space.conform(s)?;
        let which = match (space.as_ref(), &s) {
            (MeasureSpace::Finite(f), _) => IndexFn::Table(
                (0..f.len())
                    .map(|i| if s.contains(Point::Atom(i)) { 0 } else { 1 })
                    .collect(),
            ),
            (MeasureSpace::Interval, MSet::Intervals(iv)) => {
                let mut breaks = vec![0.0];
                let mut index = vec![];
                for &(a, b) in iv.intervals() {
                    if a > *breaks.last().unwrap() {
                        breaks.push(a);
                        index.push(1);
                    }
                    breaks.push(b);
                    index.push(0);
                }
                if *breaks.last().unwrap() < 1.0 {
                    breaks.push(1.0);
                    index.push(1);
                }
                IndexFn::Step(StepFn::from_parts_unchecked(breaks, index))
            }
            _ => unreachable!("conform returns the space's own family"),
        };
        let zero = v.space().zero();
        SimpleFn::new(space, which, vec![v, zero], 1)
    }

    /// `values[i]` on `parts[i]`. A zero-valued slot with an empty part is
    /// appended when the last value is not already zero.
    pub fn from_partition(
        space: Arc<MeasureSpace>,
        parts: &[MSet],
        values: Vec<Vector>,
    ) -> Result<Self> {
        if parts.len() != values.len() || parts.is_empty() {
            return Err(Error::NotAPartition(format!(
                "{} parts for {} values",
                parts.len(),
                values.len()
            )));
        }
        let parts: Vec<MSet> = parts
            .iter()
            .map(|p| space.conform(p))
            .collect::<Result<_>>()?;
        let mut cover = space.empty();
        for (i, p) in parts.iter().enumerate() {
            if !space.intersection(&cover, p)?.is_empty() {
                return Err(Error::NotAPartition(format!(
                    "part {i} overlaps an earlier part"
                )));
            }
            cover = space.union(&cover, p)?;
        }
        if cover != space.whole() {
            return Err(Error::NotAPartition("parts do not cover the space".into()));
        }
        let which = match space.as_ref() {
            MeasureSpace::Finite(f) => IndexFn::Table(
                (0..f.len())
                    .map(|x| {
                        parts
                            .iter()
                            .position(|p| p.contains(Point::Atom(x)))
                            .expect("cover checked")
                    })
                    .collect(),
            ),
            MeasureSpace::Interval => {
                let mut cells: Vec<(f64, f64, usize)> = parts
                    .iter()
                    .enumerate()
                    .flat_map(|(i, p)| match p {
                        MSet::Intervals(iv) => iv
                            .intervals()
                            .iter()
                            .map(|&(a, b)| (a, b, i))
                            .collect::<Vec<_>>(),
                        MSet::Points(_) => vec![],
                    })
                    .collect();
                cells.sort_by(|x, y| x.0.total_cmp(&y.0));
                let mut breaks = vec![0.0];
                breaks.extend(cells.iter().map(|c| c.1));
                IndexFn::Step(StepFn::from_parts_unchecked(
                    breaks,
                    cells.iter().map(|c| c.2).collect(),
                ))
            }
        };
        let mut val = values;
        if !val.last().unwrap().is_zero() {
            let zero = val[0].space().zero();
            val.push(zero);
        }
        let max_which = val.len() - 1;
        SimpleFn::new(space, which, val, max_which)
    }

    pub fn space(&self) -> &Arc<MeasureSpace> {
        &self.space
    }

    pub fn which(&self) -> &IndexFn {
        &self.which
    }

    pub fn val(&self) -> &[Vector] {
        &self.val
    }

    pub fn max_which(&self) -> usize {
        self.val.len() - 1
    }

    pub fn carrier(&self) -> VSpace {
        self.val[0].space()
    }

    /// `val[which(x)]`.
    pub fn eval(&self, x: Point) -> Result<&Vector> {
        Ok(&self.val[self.which.eval(x)?])
    }

    /// The `n`-th part `{x : which(x) = n}`.
    pub fn nth_carrier(&self, n: usize) -> MSet {
        self.space
            .preimage(&self.which, n)
            .expect("which checked at construction")
    }

    /// Re-checks the three record axioms.
    pub fn check_axioms(&self) -> Result<()> {
        SimpleFn::new(
            self.space.clone(),
            self.which.clone(),
            self.val.clone(),
            self.max_which(),
        )
        .map(|_| ())
    }

    /// Every part below `max_which` has finite measure.
    pub fn is_integrable(&self) -> bool {
        self.first_infinite_part().is_none()
    }

    /// Smallest `n < max_which` whose part has infinite measure.
    pub fn first_infinite_part(&self) -> Option<usize> {
        let pm = self
            .space
            .part_measures(&self.which)
            .expect("which checked");
        let last = self.max_which();
        pm.into_iter()
            .find(|&(n, m)| n < last && !m.is_finite())
            .map(|(n, _)| n)
    }

    fn same_domain(&self, other: &SimpleFn) -> Result<()> {
        if !Arc::ptr_eq(&self.space, &other.space) && self.space != other.space {
            return Err(Error::SpaceMismatch(
                "simple functions on different spaces".into(),
            ));
        }
        if self.carrier() != other.carrier() {
            return Err(Error::CarrierMismatch {
                left: self.carrier(),
                right: other.carrier(),
            });
        }
        Ok(())
    }

    /// Sum over the product partition `(A_i ∩ B_j)`, flattened with
    /// [`pair_index`]. Empty intersections keep their index.
    pub fn plus(&self, other: &SimpleFn) -> Result<SimpleFn> {
        self.same_domain(other)?;
        let (n, m) = (self.max_which(), other.max_which());
        let which = refine(&self.which, &other.which, m)?;
        let len = (n + 1) * (m + 1);
        let val = (0..len)
            .map(|k| {
                let (i, j) = unpair_index(k, m);
                self.val[i].add_unchecked(&other.val[j])
            })
            .collect();
        debug_assert_eq!(pair_index(n, m, m), len - 1);
        SimpleFn::new(self.space.clone(), which, val, len - 1)
    }

    pub fn scal(&self, a: f64) -> SimpleFn {
        self.map_values(self.carrier(), |v| v.scal(a))
    }

    pub fn neg(&self) -> SimpleFn {
        self.scal(-1.0)
    }

    pub fn minus(&self, other: &SimpleFn) -> Result<SimpleFn> {
        self.plus(&other.neg())
    }

    /// `x ↦ |f(x)|` as a real-valued simple function on the same partition.
    pub fn norm(&self) -> SimpleFn {
        self.map_values(VSpace::Real, |v| {
            Vector::real(v.norm()).expect("norm of finite vector is finite")
        })
    }

    /// `x ↦ f(x)^p` for a nonnegative real-valued `f` and `p > 0`.
    pub fn power(&self, p: f64) -> Result<SimpleFn> {
        if self.carrier() != VSpace::Real {
            return Err(Error::Domain(format!(
                "power needs a real-valued simple function, got {:?}",
                self.carrier()
            )));
        }
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::Domain(format!("exponent must be > 0, got {p}")));
        }
        if let Some(v) = self.val.iter().find(|v| v.coords()[0] < 0.0) {
            return Err(Error::Domain(format!(
                "power of a negative value {}",
                v.coords()[0]
            )));
        }
        let val = self
            .val
            .iter()
            .map(|v| Vector::real(v.coords()[0].powf(p)))
            .collect::<Result<Vec<_>>>()?;
        SimpleFn::new(
            self.space.clone(),
            self.which.clone(),
            val,
            self.max_which(),
        )
    }

    /// Same function, with every zero value below `max_which` removed: the
    /// cells of removed indices move to the last (zero) index and the
    /// remaining indices are compacted in order.
    pub fn remove_zeros(&self) -> SimpleFn {
        let last = self.max_which();
        let mut remap = vec![0usize; last + 1];
        let mut val = Vec::with_capacity(last + 1);
        let mut dropped = vec![];
        for (n, v) in self.val[..last].iter().enumerate() {
            if v.is_zero() {
                dropped.push(n);
            } else {
                remap[n] = val.len();
                val.push(v.clone());
            }
        }
        let new_last = val.len();
        remap[last] = new_last;
        for n in dropped {
            remap[n] = new_last;
        }
        val.push(self.val[last].clone());
        let which = self.which.map_indices(|i| remap[i]);
        SimpleFn::new(self.space.clone(), which, val, new_last)
            .expect("remapping preserves the axioms")
    }

    fn map_values(&self, carrier: VSpace, f: impl Fn(&Vector) -> Vector) -> SimpleFn {
        let val: Vec<Vector> = self.val.iter().map(f).collect();
        debug_assert!(val.iter().all(|v| v.space() == carrier));
        debug_assert!(val.last().unwrap().is_zero());
        SimpleFn {
            space: self.space.clone(),
            which: self.which.clone(),
            val,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::MSet;
    use proptest::prelude::*;

    fn v2(a: f64, b: f64) -> Vector {
        Vector::rvec(&[a, b]).unwrap()
    }

    fn finite(masses: &[f64]) -> Arc<MeasureSpace> {
        Arc::new(MeasureSpace::finite(masses).unwrap())
    }

    #[test]
    fn constructor_axioms() {
        let sp = finite(&[1.0, 1.0]);
        let ok = SimpleFn::new(
            sp.clone(),
            IndexFn::Table(vec![0, 1]),
            vec![v2(1.0, 2.0), v2(0.0, 0.0)],
            1,
        );
        assert!(ok.is_ok());
        let last = SimpleFn::new(
            sp.clone(),
            IndexFn::Table(vec![0, 1]),
            vec![v2(1.0, 2.0), v2(1.0, 0.0)],
            1,
        );
        assert_eq!(last.unwrap_err(), Error::LastValueNotZero { max_which: 1 });
        let range = SimpleFn::new(
            sp.clone(),
            IndexFn::Table(vec![0, 2]),
            vec![v2(1.0, 2.0), v2(0.0, 0.0)],
            1,
        );
        assert_eq!(
            range.unwrap_err(),
            Error::IndexOutOfRange {
                index: 2,
                max_which: 1
            }
        );
        let len = SimpleFn::new(sp, IndexFn::Table(vec![0, 1]), vec![v2(0.0, 0.0)], 1);
        assert!(matches!(len, Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn indicator_eval() {
        let sp = finite(&[1.0, 2.0, 3.0]);
        let one = Vector::real(1.0).unwrap();
        let f = SimpleFn::indicator(sp.clone(), &MSet::points([1]), one.clone()).unwrap();
        assert_eq!(f.max_which(), 1);
        assert_eq!(f.eval(Point::Atom(1)).unwrap(), &one);
        assert!(f.eval(Point::Atom(0)).unwrap().is_zero());
        assert!(f.eval(Point::Atom(3)).is_err());

        let whole = SimpleFn::indicator(sp.clone(), &sp.whole(), one.clone()).unwrap();
        assert!(whole.nth_carrier(1).is_empty());
        let none = SimpleFn::indicator(sp.clone(), &sp.empty(), one).unwrap();
        assert!((0..3).all(|i| none.eval(Point::Atom(i)).unwrap().is_zero()));

        let z = SimpleFn::zero(sp, VSpace::Complex);
        assert_eq!(z.max_which(), 0);
        assert!(z.eval(Point::Atom(2)).unwrap().is_zero());
    }

    #[test]
    fn indicator_on_interval() {
        let sp = Arc::new(MeasureSpace::Interval);
        let s = MSet::intervals(vec![(0.25, 0.5), (0.75, 1.0)]).unwrap();
        let f = SimpleFn::indicator(sp, &s, Vector::real(2.0).unwrap()).unwrap();
        for (x, want) in [(0.1, 0.0), (0.25, 2.0), (0.4, 2.0), (0.5, 0.0), (0.9, 2.0)] {
            assert_eq!(f.eval(Point::At(x)).unwrap().coords()[0], want, "x = {x}");
        }
    }

    #[test]
    fn partition_constructor() {
        let sp = finite(&[1.0; 5]);
        let parts = [
            MSet::points([0, 3]),
            MSet::points([1]),
            MSet::points([2, 4]),
        ];
        let values = vec![v2(1.0, 0.0), v2(0.0, 2.0), v2(-1.0, 1.0)];
        let f = SimpleFn::from_partition(sp.clone(), &parts, values.clone()).unwrap();
        assert_eq!(f.max_which(), 3);
        let lookup = [0, 1, 2, 0, 2];
        for x in 0..5 {
            assert_eq!(f.eval(Point::Atom(x)).unwrap(), &values[lookup[x]]);
        }
        assert!(f.nth_carrier(3).is_empty());

        let z = SimpleFn::from_partition(sp.clone(), &[sp.whole()], vec![v2(0.0, 0.0)]).unwrap();
        assert_eq!(z.max_which(), 0);

        let overlap = [MSet::points([0, 1]), MSet::points([1, 2, 3, 4])];
        assert!(matches!(
            SimpleFn::from_partition(sp.clone(), &overlap, vec![v2(1.0, 0.0), v2(0.0, 0.0)]),
            Err(Error::NotAPartition(_))
        ));
        let gap = [MSet::points([0, 1])];
        assert!(SimpleFn::from_partition(sp, &gap, vec![v2(1.0, 0.0)]).is_err());
    }

    #[test]
    fn partition_on_interval() {
        let sp = Arc::new(MeasureSpace::Interval);
        let parts = [
            MSet::intervals(vec![(0.0, 0.25), (0.5, 1.0)]).unwrap(),
            MSet::intervals(vec![(0.25, 0.5)]).unwrap(),
        ];
        let vals = vec![Vector::real(3.0).unwrap(), Vector::real(-1.0).unwrap()];
        let f = SimpleFn::from_partition(sp, &parts, vals).unwrap();
        assert_eq!(f.eval(Point::At(0.1)).unwrap().coords()[0], 3.0);
        assert_eq!(f.eval(Point::At(0.3)).unwrap().coords()[0], -1.0);
        assert_eq!(f.eval(Point::At(0.7)).unwrap().coords()[0], 3.0);
        assert_eq!(f.max_which(), 2);
    }

    #[test]
    fn norm_and_power() {
        let sp = finite(&[1.0, 1.0]);
        let f = SimpleFn::indicator(sp, &MSet::points([0]), v2(3.0, 4.0)).unwrap();
        let n = f.norm();
        assert_eq!(n.carrier(), VSpace::Real);
        assert_eq!(n.eval(Point::Atom(0)).unwrap().coords(), &[5.0]);
        assert_eq!(n.power(1.0).unwrap(), n);
        assert_eq!(
            n.power(2.0).unwrap().eval(Point::Atom(0)).unwrap().coords(),
            &[25.0]
        );
        assert!(f.power(2.0).is_err());
        assert!(n.neg().power(2.0).is_err());
    }

    #[test]
    fn remove_zeros_example() {
        let sp = finite(&[1.0; 4]);
        let f = SimpleFn::new(
            sp,
            IndexFn::Table(vec![0, 1, 2, 3]),
            vec![v2(1.0, 0.0), v2(0.0, 0.0), v2(2.0, 2.0), v2(0.0, 0.0)],
            3,
        )
        .unwrap();
        let g = f.remove_zeros();
        assert_eq!(g.val(), &[v2(1.0, 0.0), v2(2.0, 2.0), v2(0.0, 0.0)]);
        assert_eq!(g.max_which(), 2);
        for x in 0..4 {
            assert_eq!(
                f.eval(Point::Atom(x)).unwrap(),
                g.eval(Point::Atom(x)).unwrap()
            );
        }
        let z = SimpleFn::zero(f.space().clone(), VSpace::RVec(2));
        assert_eq!(z.remove_zeros().max_which(), 0);
    }

    #[test]
    fn integrability() {
        let sp = finite(&[1.0, 1.0, f64::INFINITY]);
        let one = Vector::real(1.0).unwrap();
        let f = SimpleFn::indicator(sp.clone(), &MSet::points([0, 1]), one.clone()).unwrap();
        assert!(f.is_integrable());
        let g = SimpleFn::indicator(sp, &MSet::points([2]), one.clone()).unwrap();
        assert!(!g.is_integrable());
        assert_eq!(g.first_infinite_part(), Some(0));
        let h = SimpleFn::indicator(
            Arc::new(MeasureSpace::Interval),
            &MSet::intervals(vec![(0.0, 0.5)]).unwrap(),
            one,
        )
        .unwrap();
        assert!(h.is_integrable());
    }

    #[test]
    fn json_roundtrip() {
        let sp = finite(&[1.0, 2.0]);
        let f = SimpleFn::indicator(sp.clone(), &MSet::points([1]), v2(1.0, -1.0)).unwrap();
        let s = serde_json::to_string(&f.to_repr()).unwrap();
        let back: SimpleFnRepr = serde_json::from_str(&s).unwrap();
        assert_eq!(SimpleFn::from_repr(sp, back).unwrap(), f);
    }

    fn real_sf(max_masses: usize) -> impl Strategy<Value = SimpleFn> {
        (1..=max_masses, 0usize..4).prop_flat_map(|(n, k)| {
            (
                prop::collection::vec(0usize..=k, n),
                prop::collection::vec(-8i32..8, k),
            )
                .prop_map(move |(idx, vals)| {
                    let mut val: Vec<Vector> = vals
                        .iter()
                        .map(|&v| Vector::real(v as f64 * 0.5).unwrap())
                        .collect();
                    val.push(Vector::real(0.0).unwrap());
                    SimpleFn::new(finite(&vec![1.0; n]), IndexFn::Table(idx), val, k).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn algebra_is_pointwise(f in real_sf(6), g in real_sf(6), a in -4.0..4.0f64) {
            // align both operands on one space
            let n = match f.space().as_ref() { MeasureSpace::Finite(s) => s.len(), _ => 0 };
            let g = match g.which() {
                IndexFn::Table(t) => {
                    let t: Vec<usize> = (0..n).map(|i| t[i % t.len()]).collect();
                    SimpleFn::new(f.space().clone(), IndexFn::Table(t), g.val().to_vec(), g.max_which()).unwrap()
                }
                _ => unreachable!(),
            };
            let sum = f.plus(&g).unwrap();
            let diff = f.minus(&g).unwrap();
            let sc = f.scal(a);
            for h in [&sum, &diff, &sc] {
                prop_assert!(h.check_axioms().is_ok());
            }
            for x in 0..n {
                let p = Point::Atom(x);
                let (fx, gx) = (f.eval(p).unwrap(), g.eval(p).unwrap());
                prop_assert_eq!(sum.eval(p).unwrap(), &fx.try_add(gx).unwrap());
                prop_assert_eq!(diff.eval(p).unwrap(), &fx.try_add(&gx.neg()).unwrap());
                prop_assert_eq!(sc.eval(p).unwrap(), &fx.scal(a));
                prop_assert_eq!(
                    f.scal(-2.0).norm().eval(p).unwrap().coords()[0],
                    2.0 * f.norm().eval(p).unwrap().coords()[0]
                );
            }
            let z = SimpleFn::zero(f.space().clone(), VSpace::Real);
            let fz = f.plus(&z).unwrap();
            for x in 0..n {
                prop_assert_eq!(fz.eval(Point::Atom(x)).unwrap(), f.eval(Point::Atom(x)).unwrap());
                prop_assert!(f.scal(0.0).eval(Point::Atom(x)).unwrap().is_zero());
            }
        }

        #[test]
        fn remove_zeros_postconditions(f in real_sf(8)) {
            let g = f.remove_zeros();
            prop_assert!(g.check_axioms().is_ok());
            let n = match f.space().as_ref() { MeasureSpace::Finite(s) => s.len(), _ => 0 };
            for x in 0..n {
                prop_assert_eq!(f.eval(Point::Atom(x)).unwrap(), g.eval(Point::Atom(x)).unwrap());
            }
            for v in &g.val()[..g.max_which()] {
                prop_assert!(!v.is_zero());
            }
        }
    }
}
