use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lebesgue::{LipschitzFn, NonNegFn};
use crate::simple_fn::SimpleFn;
use crate::spaces::{IndexFn, MeasureSpace, Point};
use crate::vectors::{VSpace, Vector};

type VecEval = Arc<dyn Fn(f64) -> Vector + Send + Sync>;

/// A vector-valued function on `[0, 1)` with `‖f(x) − f(y)‖ <= L·|x − y|`
/// on every piece between consecutive breakpoints.
#[derive(Clone)]
pub struct LipschitzVecFn {
    carrier: VSpace,
    eval: VecEval,
    lipschitz: f64,
    breaks: Vec<f64>,
}

impl LipschitzVecFn {
    pub fn eval(&self, x: f64) -> Vector {
        (self.eval)(x)
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }
}

impl fmt::Debug for LipschitzVecFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LipschitzVecFn")
            .field("carrier", &self.carrier)
            .field("lipschitz", &self.lipschitz)
            .field("breaks", &self.breaks)
            .finish_non_exhaustive()
    }
}

/// A vector-valued measurable function, tagged by regularity class.
#[derive(Debug, Clone)]
pub enum VecFn {
    Simple(SimpleFn),
    /// One value per atom of a finite space.
    Tabulated(Vec<Vector>),
    PiecewiseLipschitz(LipschitzVecFn),
}

fn merge_breaks(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = a.iter().chain(b).copied().collect();
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

impl VecFn {
    /// A piecewise Lipschitz function on `[0, 1)`. `eval` must return
    /// vectors of `carrier`; it is probed once at `0.5`.
    pub fn lipschitz(
        carrier: VSpace,
        eval: impl Fn(f64) -> Vector + Send + Sync + 'static,
        lipschitz: f64,
        breaks: Vec<f64>,
    ) -> Result<Self> {
        Self::lipschitz_arc(carrier, Arc::new(eval), lipschitz, breaks)
    }

    fn lipschitz_arc(
        carrier: VSpace,
        eval: VecEval,
        lipschitz: f64,
        breaks: Vec<f64>,
    ) -> Result<Self> {
        // reuse the scalar validation of L and breakpoints
        let checked = LipschitzFn::new(|_| 0.0, lipschitz, breaks)?;
        let probe = eval(0.5);
        if probe.space() != carrier {
            return Err(Error::CarrierMismatch {
                left: carrier,
                right: probe.space(),
            });
        }
        Ok(VecFn::PiecewiseLipschitz(LipschitzVecFn {
            carrier,
            eval,
            lipschitz,
            breaks: checked.breaks().to_vec(),
        }))
    }

    pub fn table(values: Vec<Vector>) -> Result<Self> {
        let first = values.first().ok_or(Error::EmptySpace)?;
        for v in &values {
            first.same_carrier(v)?;
        }
        Ok(VecFn::Tabulated(values))
    }

    /// The real-valued function with the same values as `f`.
    pub fn from_nonneg(f: &NonNegFn) -> Result<Self> {
        match f {
            NonNegFn::Simple(sf) => Ok(VecFn::Simple(sf.clone())),
            NonNegFn::Tabulated(t) => {
                VecFn::table(t.iter().map(|&y| Vector::real(y)).collect::<Result<_>>()?)
            }
            NonNegFn::PiecewiseLipschitz(g) => {
                let g2 = g.clone();
                VecFn::lipschitz(
                    VSpace::Real,
                    move |x| Vector::real(g2.eval(x)).expect("finite evaluation"),
                    g.lipschitz(),
                    g.breaks().to_vec(),
                )
            }
        }
    }

    pub fn carrier(&self) -> VSpace {
        match self {
            VecFn::Simple(sf) => sf.carrier(),
            VecFn::Tabulated(t) => t[0].space(),
            VecFn::PiecewiseLipschitz(g) => g.carrier,
        }
    }

    /// Errors unless `self` is a function on `space`.
    pub fn check_space(&self, space: &MeasureSpace) -> Result<()> {
        let ok = match (self, space) {
            (VecFn::Simple(sf), _) => sf.space().as_ref() == space,
            (VecFn::Tabulated(t), MeasureSpace::Finite(fs)) => t.len() == fs.len(),
            (VecFn::PiecewiseLipschitz(_), MeasureSpace::Interval) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(
                "function does not live on this space".into(),
            ))
        }
    }

    pub fn eval(&self, x: Point) -> Result<Vector> {
        let out = |s: String| Error::PointOutsideSpace(s);
        match (self, x) {
            (VecFn::Simple(sf), _) => sf.eval(x).cloned(),
            (VecFn::Tabulated(t), Point::Atom(i)) => {
                t.get(i).cloned().ok_or_else(|| out(x.to_string()))
            }
            (VecFn::PiecewiseLipschitz(g), Point::At(y)) if (0.0..1.0).contains(&y) => {
                Ok(g.eval(y))
            }
            _ => Err(out(x.to_string())),
        }
    }

    /// Lipschitz bound on each piece; `0` for simple and tabulated functions.
    pub fn lipschitz_bound(&self) -> f64 {
        match self {
            VecFn::PiecewiseLipschitz(g) => g.lipschitz,
            _ => 0.0,
        }
    }

    /// Interior breakpoints on `[0, 1)`; empty on finite spaces.
    pub fn breaks(&self) -> Vec<f64> {
        match self {
            VecFn::Simple(sf) => match sf.which() {
                IndexFn::Step(s) => {
                    let b = s.breaks();
                    b[1..b.len() - 1].to_vec()
                }
                IndexFn::Table(_) => vec![],
            },
            VecFn::Tabulated(_) => vec![],
            VecFn::PiecewiseLipschitz(g) => g.breaks.clone(),
        }
    }

    /// The same function, as a table on finite spaces and as a piecewise
    /// Lipschitz function on `[0, 1)`.
    pub fn general(&self, space: &MeasureSpace) -> Result<VecFn> {
        self.check_space(space)?;
        match (self, space) {
            (VecFn::Simple(sf), MeasureSpace::Finite(fs)) => VecFn::table(
                (0..fs.len())
                    .map(|i| sf.eval(Point::Atom(i)).cloned())
                    .collect::<Result<_>>()?,
            ),
            (VecFn::Simple(sf), MeasureSpace::Interval) => {
                let sf2 = sf.clone();
                VecFn::lipschitz(
                    sf.carrier(),
                    move |x| sf2.eval(Point::At(x)).expect("inside [0,1)").clone(),
                    0.0,
                    self.breaks(),
                )
            }
            _ => Ok(self.clone()),
        }
    }

    /// `x ↦ ‖f(x)‖` as a real-valued function of the same class.
    pub fn norm_fn(&self) -> VecFn {
        match self {
            VecFn::Simple(sf) => VecFn::Simple(sf.norm()),
            VecFn::Tabulated(t) => VecFn::Tabulated(
                t.iter()
                    .map(|v| Vector::real(v.norm()).expect("finite norm"))
                    .collect(),
            ),
            VecFn::PiecewiseLipschitz(g) => {
                let g2 = g.clone();
                VecFn::PiecewiseLipschitz(LipschitzVecFn {
                    carrier: VSpace::Real,
                    eval: Arc::new(move |x| Vector::real(g2.eval(x).norm()).expect("finite norm")),
                    lipschitz: g.lipschitz,
                    breaks: g.breaks.clone(),
                })
            }
        }
    }

    /// `x ↦ ‖f(x)‖` as a nonnegative function for the Lebesgue integral.
    pub fn norm(&self) -> NonNegFn {
        match self.norm_fn() {
            VecFn::Simple(sf) => NonNegFn::Simple(sf),
            VecFn::Tabulated(t) => NonNegFn::Tabulated(t.iter().map(|v| v.coords()[0]).collect()),
            VecFn::PiecewiseLipschitz(g) => {
                let breaks = g.breaks.clone();
                let l = g.lipschitz;
                let eval = Arc::new(move |x: f64| g.eval(x).coords()[0]);
                NonNegFn::PiecewiseLipschitz(
                    LipschitzFn::from_arc(eval, l, breaks).expect("validated on construction"),
                )
            }
        }
    }

    pub fn scal(&self, a: f64) -> VecFn {
        match self {
            VecFn::Simple(sf) => VecFn::Simple(sf.scal(a)),
            VecFn::Tabulated(t) => VecFn::Tabulated(t.iter().map(|v| v.scal(a)).collect()),
            VecFn::PiecewiseLipschitz(g) => {
                let g2 = g.clone();
                VecFn::PiecewiseLipschitz(LipschitzVecFn {
                    carrier: g.carrier,
                    eval: Arc::new(move |x| g2.eval(x).scal(a)),
                    lipschitz: a.abs() * g.lipschitz,
                    breaks: g.breaks.clone(),
                })
            }
        }
    }

    pub fn neg(&self) -> VecFn {
        self.scal(-1.0)
    }

    /// Pointwise sum of two functions on `space`.
    pub fn plus(&self, other: &VecFn, space: &MeasureSpace) -> Result<VecFn> {
        if self.carrier() != other.carrier() {
            return Err(Error::CarrierMismatch {
                left: self.carrier(),
                right: other.carrier(),
            });
        }
        if let (VecFn::Simple(a), VecFn::Simple(b)) = (self, other) {
            if a.space().as_ref() == space {
                return a.plus(b).map(VecFn::Simple);
            }
        }
        match (self.general(space)?, other.general(space)?) {
            (VecFn::Tabulated(a), VecFn::Tabulated(b)) => Ok(VecFn::Tabulated(
                a.iter().zip(&b).map(|(p, q)| p.add_unchecked(q)).collect(),
            )),
            (VecFn::PiecewiseLipschitz(a), VecFn::PiecewiseLipschitz(b)) => {
                let breaks = merge_breaks(&a.breaks, &b.breaks);
                let lipschitz = a.lipschitz + b.lipschitz;
                let carrier = a.carrier;
                VecFn::lipschitz_arc(
                    carrier,
                    Arc::new(move |x| a.eval(x).add_unchecked(&b.eval(x))),
                    lipschitz,
                    breaks,
                )
            }
            _ => unreachable!("general forms agree on one space"),
        }
    }

    pub fn minus(&self, other: &VecFn, space: &MeasureSpace) -> Result<VecFn> {
        self.plus(&other.neg(), space)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::MSet;

    fn pair() -> VecFn {
        VecFn::lipschitz(
            VSpace::RVec(2),
            |x| Vector::rvec(&[x, 1.0 - x]).unwrap(),
            std::f64::consts::SQRT_2,
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn construction_checks() {
        assert!(VecFn::lipschitz(
            VSpace::Real,
            |x| Vector::rvec(&[x, x]).unwrap(),
            1.0,
            vec![]
        )
        .is_err());
        assert!(
            VecFn::lipschitz(VSpace::Real, |x| Vector::real(x).unwrap(), -1.0, vec![]).is_err()
        );
        assert!(VecFn::table(vec![]).is_err());
        let f = pair();
        assert!(f.check_space(&MeasureSpace::Interval).is_ok());
        assert!(f
            .check_space(&MeasureSpace::finite(&[1.0]).unwrap())
            .is_err());
    }

    #[test]
    fn pointwise_algebra() {
        let sp = MeasureSpace::Interval;
        let f = pair();
        let g = f.scal(2.0).minus(&f, &sp).unwrap();
        for x in [0.0, 0.3, 0.99] {
            let a = f.eval(Point::At(x)).unwrap();
            let b = g.eval(Point::At(x)).unwrap();
            assert!(a.dist(&b).unwrap() < 1e-15);
        }
        assert!((g.lipschitz_bound() - 3.0 * std::f64::consts::SQRT_2).abs() < 1e-12);
        let n = f.norm_fn();
        assert_eq!(n.carrier(), VSpace::Real);
        assert_eq!(n.eval(Point::At(0.0)).unwrap().coords(), &[1.0]);
    }

    #[test]
    fn simple_functions_generalize() {
        let sp = Arc::new(MeasureSpace::Interval);
        let s = SimpleFn::indicator(
            sp.clone(),
            &MSet::intervals(vec![(0.25, 0.5)]).unwrap(),
            Vector::real(2.0).unwrap(),
        )
        .unwrap();
        let f = VecFn::Simple(s);
        let g = f.general(&sp).unwrap();
        assert_eq!(g.breaks(), vec![0.25, 0.5]);
        assert_eq!(g.eval(Point::At(0.3)).unwrap(), Vector::real(2.0).unwrap());
        assert_eq!(g.eval(Point::At(0.6)).unwrap(), Vector::real(0.0).unwrap());
        let h = f.plus(&g, &sp).unwrap();
        assert_eq!(h.eval(Point::At(0.3)).unwrap(), Vector::real(4.0).unwrap());
    }
}
