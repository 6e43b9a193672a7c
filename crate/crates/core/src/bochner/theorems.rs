use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::func::VecFn;
use super::nearest::Layout;
use super::witness::{
    bif_from_separable, bif_real, bint, probe_points, ApproxParams, BIntEstimate, BifWitness,
};
use crate::error::{Error, Result};
use crate::extreal::XReal;
use crate::lebesgue::{lint_p, refined_cells, LIntValue, NonNegFn};
use crate::separability::DenseSeq;
use crate::spaces::{MeasureSpace, Point};
use crate::vectors::{seq_limit_estimate, Vector};

/// Two integrals of what should be the same function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtReport {
    pub left: BIntEstimate,
    pub right: BIntEstimate,
    pub difference: f64,
    /// Sum of the two certified error bounds (plus `1e-12` for rounding).
    pub tolerance: f64,
    pub ok: bool,
}

/// Compares the integrals of two witnesses whose functions agree at `probes`.
pub fn bint_ext_check(
    a: &BifWitness,
    b: &BifWitness,
    probes: &[Point],
    eps: f64,
    window: usize,
) -> Result<ExtReport> {
    if a.space() != b.space() {
        return Err(Error::SpaceMismatch("witnesses on different spaces".into()));
    }
    for &x in probes {
        let (p, q) = (a.f().eval(x)?, b.f().eval(x)?);
        if p.dist(&q)? > 1e-12 * (1.0 + p.norm()) {
            return Err(Error::FunctionsDiffer(x.to_string()));
        }
    }
    let left = bint(a, eps, window)?;
    let right = bint(b, eps, window)?;
    let difference = left.value.dist(&right.value)?;
    let tolerance = left.error_bound + right.error_bound + 1e-12;
    Ok(ExtReport {
        ok: difference <= tolerance,
        left,
        right,
        difference,
        tolerance,
    })
}

/// The Bochner and Lebesgue integrals of one nonnegative function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LintComparison {
    pub bint: BIntEstimate,
    pub lint: LIntValue,
    pub difference: f64,
    /// `0` on finite spaces, where both sides must agree exactly.
    pub tolerance: f64,
    pub exact: bool,
    pub ok: bool,
}

pub fn bint_vs_lintp(
    space: Arc<MeasureSpace>,
    f: &NonNegFn,
    params: &ApproxParams,
    eps: f64,
    window: usize,
) -> Result<LintComparison> {
    let lint = lint_p(&space, f, params.depth.max(params.resolution))?;
    let bf = bif_real(space.clone(), VecFn::from_nonneg(f)?, params)?;
    let est = bint(&bf, eps, window)?;
    let difference = (est.value.coords()[0] - lint.value.real()).abs();
    let exact = !space.is_interval();
    let tolerance = if exact {
        0.0
    } else {
        est.error_bound + lint.error_bound
    };
    Ok(LintComparison {
        ok: difference <= tolerance,
        bint: est,
        lint,
        difference,
        tolerance,
        exact,
    })
}

/// Whether `f` vanishes almost everywhere, judged through `∫‖f‖`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroAeReport {
    pub lint_norm: LIntValue,
    /// `Some(∫‖f‖ = 0)` when the certified bounds decide it.
    pub zero_ae: Option<bool>,
    /// Finite spaces: whether `f` vanishes on every atom of positive mass.
    pub pointwise_zero: Option<bool>,
    /// Measure of the atoms, or grid cells by their midpoint, where `f ≠ 0`.
    pub nonzero_measure: XReal,
}

impl ZeroAeReport {
    /// On finite spaces, `∫‖f‖ = 0` must coincide with vanishing on every
    /// positive-mass atom.
    pub fn consistent(&self) -> bool {
        match self.pointwise_zero {
            Some(p) => self.zero_ae == Some(p),
            None => true,
        }
    }
}

pub fn zero_ae_check(space: &MeasureSpace, f: &VecFn, depth: u32) -> Result<ZeroAeReport> {
    f.check_space(space)?;
    let lint_norm = lint_p(space, &f.norm(), depth)?;
    match space {
        MeasureSpace::Finite(fs) => {
            let mut nonzero_measure = XReal::ZERO;
            let mut pointwise_zero = true;
            for i in 0..fs.len() {
                if !f.eval(Point::Atom(i))?.is_zero() {
                    nonzero_measure = nonzero_measure + fs.mass(i);
                    pointwise_zero &= fs.mass(i).is_zero();
                }
            }
            Ok(ZeroAeReport {
                zero_ae: Some(lint_norm.value.is_zero()),
                pointwise_zero: Some(pointwise_zero),
                nonzero_measure,
                lint_norm,
            })
        }
        MeasureSpace::Interval => {
            let zero_ae = if !lint_norm.value.is_zero() {
                Some(false)
            } else if lint_norm.error_bound == 0.0 {
                Some(true)
            } else {
                None
            };
            let mut lengths = vec![];
            for (a, b) in refined_cells(depth, &f.breaks())? {
                if !f.eval(Point::At(0.5 * (a + b)))?.is_zero() {
                    lengths.push(b - a);
                }
            }
            Ok(ZeroAeReport {
                zero_ae,
                pointwise_zero: None,
                nonzero_measure: XReal::finite(crate::lebesgue::pairwise_sum(&lengths))?,
                lint_norm,
            })
        }
    }
}

/// Knobs of a dominated-convergence run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DominatedParams {
    pub approx: ApproxParams,
    /// Indices `n` of the family that are integrated.
    pub ns: Vec<usize>,
    /// Required `‖∫f_n − ∫f‖` at the last tested `n`.
    pub eps: f64,
    /// Stabilization tolerance and window of each integral.
    pub bint_eps: f64,
    pub window: usize,
    /// Used only when no limit function is supplied: pointwise limits are
    /// estimated from `f_0, f_1, ...` with this window and index budget.
    pub limit_eps: f64,
    pub limit_window: usize,
    pub limit_max_n: usize,
}

impl Default for DominatedParams {
    fn default() -> Self {
        DominatedParams {
            approx: ApproxParams::default(),
            ns: vec![0, 1, 2, 4, 9, 19, 49, 99, 199],
            eps: 5e-3,
            bint_eps: 1e-3,
            window: 4,
            limit_eps: 1e-4,
            limit_window: 100,
            limit_max_n: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominatedRow {
    pub n: usize,
    pub bint: Vector,
    /// `‖∫f_n − ∫f‖`.
    pub diff_to_limit: f64,
    /// `‖∫f_n − reference‖` when a closed-form reference is supplied.
    pub diff_to_reference: Option<f64>,
    pub error_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominatedReport {
    pub g_integral: LIntValue,
    pub limit: BIntEstimate,
    /// Whether the limit function was estimated pointwise.
    pub limit_estimated: bool,
    pub rows: Vec<DominatedRow>,
    /// `diff_to_limit < eps` at the last tested `n`.
    pub converged: bool,
}

/// Integrates `f_n` for the requested `n`, checks `‖f_n‖ <= g` at the probe
/// points, and compares against the integral of the pointwise limit.
#[allow(clippy::too_many_arguments)]
pub fn dominated_convergence_run<F>(
    space: Arc<MeasureSpace>,
    family: F,
    limit: Option<VecFn>,
    g: &NonNegFn,
    u: &DenseSeq,
    reference: Option<&Vector>,
    params: &DominatedParams,
) -> Result<DominatedReport>
where
    F: Fn(usize) -> Result<VecFn> + Sync,
{
    if params.ns.is_empty() {
        return Err(Error::InvalidParameter("no indices to test".into()));
    }
    let tp = &params.approx;
    let g_integral = lint_p(&space, g, tp.depth.max(tp.resolution))?;
    if !g_integral.value.is_finite() {
        return Err(Error::NormNotIntegrable);
    }
    let layout = Layout::new(&space, tp.resolution)?;
    let mut points = probe_points(&layout, tp);
    points.extend((0..layout.len()).map(|c| layout.point(c)));

    let members: Vec<(usize, VecFn)> = params
        .ns
        .par_iter()
        .map(|&n| family(n).map(|f| (n, f)))
        .collect::<Result<_>>()?;
    for (n, f) in &members {
        for &x in &points {
            let norm = f.eval(x)?.norm();
            let bound = g.eval(x)?;
            if norm > bound * (1.0 + 1e-12) + 1e-15 {
                return Err(Error::DominationViolated {
                    n: *n,
                    x: x.to_string(),
                    norm,
                    bound,
                });
            }
        }
    }

    let limit_estimated = limit.is_none();
    let limit = match limit {
        Some(f) => f,
        None => estimate_limit(&space, &layout, &family, params)?,
    };

    let witnesses: Vec<BifWitness> = members
        .into_par_iter()
        .map(|(_, f)| bif_from_separable(space.clone(), f, u, tp))
        .chain(rayon::iter::once(bif_from_separable(
            space.clone(),
            limit,
            u,
            tp,
        )))
        .collect::<Result<_>>()?;
    let estimates: Vec<BIntEstimate> = witnesses
        .iter()
        .map(|w| bint(w, params.bint_eps, params.window))
        .collect::<Result<_>>()?;
    let (limit_est, member_est) = estimates.split_last().expect("limit appended");

    let rows: Vec<DominatedRow> = params
        .ns
        .iter()
        .zip(member_est)
        .map(|(&n, e)| {
            Ok(DominatedRow {
                n,
                diff_to_limit: e.value.dist(&limit_est.value)?,
                diff_to_reference: reference.map(|r| e.value.dist(r)).transpose()?,
                bint: e.value.clone(),
                error_bound: e.error_bound,
            })
        })
        .collect::<Result<_>>()?;
    let converged = rows.last().expect("nonempty").diff_to_limit < params.eps;
    Ok(DominatedReport {
        g_integral,
        limit: limit_est.clone(),
        limit_estimated,
        rows,
        converged,
    })
}

/// Pointwise limit of the family, estimated at every atom or at every grid
/// cell midpoint (and held constant on the cell).
fn estimate_limit<F>(
    space: &MeasureSpace,
    layout: &Layout,
    family: &F,
    params: &DominatedParams,
) -> Result<VecFn>
where
    F: Fn(usize) -> Result<VecFn> + Sync,
{
    let terms: Vec<VecFn> = (0..=params.limit_max_n + params.limit_window)
        .map(family)
        .collect::<Result<_>>()?;
    let carrier = terms[0].carrier();
    let values: Vec<Vector> = (0..layout.len())
        .into_par_iter()
        .map(|c| {
            let x = layout.point(c);
            for t in &terms[..=params.limit_window] {
                t.eval(x)?;
            }
            seq_limit_estimate(
                |k| terms[k].eval(x).expect("evaluated above on this space"),
                params.limit_eps,
                params.limit_window,
                params.limit_max_n,
            )
            .map(|e| e.value)
        })
        .collect::<Result<_>>()?;
    match space {
        MeasureSpace::Finite(_) => VecFn::table(values),
        MeasureSpace::Interval => {
            let inner: Vec<f64> = (1..layout.len())
                .map(|c| c as f64 * layout.width())
                .collect();
            let layout2 = layout.clone();
            VecFn::lipschitz(
                carrier,
                move |x| values[layout2.cell_of(Point::At(x)).expect("inside [0,1)")].clone(),
                0.0,
                inner,
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::separability::dense_seq;
    use crate::vectors::VSpace;

    fn p(n_max: usize, resolution: u32) -> ApproxParams {
        ApproxParams {
            n_max,
            resolution,
            depth: resolution + 2,
            probes: 100,
            ..ApproxParams::default()
        }
    }

    fn reals(v: &[f64]) -> VecFn {
        VecFn::table(v.iter().map(|&y| Vector::real(y).unwrap()).collect()).unwrap()
    }

    #[test]
    fn lint_comparison_exact_on_finite_spaces() {
        let sp = Arc::new(MeasureSpace::finite(&[0.5, 0.125, f64::INFINITY, 3.0]).unwrap());
        let f = NonNegFn::Tabulated(vec![1.25, 6.0, 0.0, 0.375]);
        let r = bint_vs_lintp(sp.clone(), &f, &p(2000, 0), 1e-9, 3).unwrap();
        assert!(r.exact && r.ok);
        assert_eq!(r.bint.value.coords()[0], r.lint.value.to_f64());
        let z = NonNegFn::Tabulated(vec![0.0; 4]);
        let r = bint_vs_lintp(sp, &z, &p(10, 0), 1e-9, 3).unwrap();
        assert_eq!(r.difference, 0.0);
        assert_eq!(r.lint.value, XReal::ZERO);
    }

    #[test]
    fn zero_ae_examples() {
        let sp = MeasureSpace::finite(&[0.0, 1.0]).unwrap();
        let r = zero_ae_check(&sp, &reals(&[3.0, 0.0]), 0).unwrap();
        assert_eq!(r.zero_ae, Some(true));
        assert!(r.consistent());
        let r = zero_ae_check(&sp, &reals(&[0.0, 1.0]), 0).unwrap();
        assert_eq!(r.zero_ae, Some(false));
        assert!(r.consistent());
        let z =
            VecFn::lipschitz(VSpace::Real, |_| Vector::real(0.0).unwrap(), 0.0, vec![]).unwrap();
        let r = zero_ae_check(&MeasureSpace::Interval, &z, 8).unwrap();
        assert_eq!(r.zero_ae, Some(true));
        assert_eq!(r.nonzero_measure, XReal::ZERO);
    }

    #[test]
    fn ext_check_preconditions() {
        let sp = Arc::new(MeasureSpace::finite(&[1.0, 2.0]).unwrap());
        let a = bif_real(sp.clone(), reals(&[0.5, 2.0]), &p(100, 0)).unwrap();
        let b = bif_real(sp.clone(), reals(&[0.5, 3.0]), &p(100, 0)).unwrap();
        let probes = [Point::Atom(0), Point::Atom(1)];
        assert!(matches!(
            bint_ext_check(&a, &b, &probes, 1e-9, 3),
            Err(Error::FunctionsDiffer(_))
        ));
        let r = bint_ext_check(&a, &a, &probes, 1e-9, 3).unwrap();
        assert!(r.ok && r.difference == 0.0);
    }

    #[test]
    fn dominated_with_estimated_limit() {
        let sp = Arc::new(MeasureSpace::finite(&[0.5, 0.25]).unwrap());
        let family = |n: usize| {
            let s = 1.0 + 1.0 / (n as f64 + 1.0);
            Ok(reals(&[0.5 * s, 1.0 * s]))
        };
        let g = NonNegFn::Tabulated(vec![1.0, 2.0]);
        let params = DominatedParams {
            approx: p(20_000, 0),
            ns: vec![0, 3, 1000],
            eps: 1e-2,
            bint_eps: 1e-2,
            window: 3,
            limit_eps: 1e-5,
            limit_window: 100,
            limit_max_n: 5000,
        };
        let u = dense_seq(VSpace::Real, true);
        let r = dominated_convergence_run(sp.clone(), family, None, &g, &u, None, &params).unwrap();
        assert!(r.limit_estimated);
        // closed form of the limit integral: 0.5·0.5 + 0.25·1
        assert!((r.limit.value.coords()[0] - 0.5).abs() < 1e-3);
        assert!(r.converged);
        assert!(r.rows[0].diff_to_limit > r.rows[2].diff_to_limit);

        let g_small = NonNegFn::Tabulated(vec![0.5, 2.0]);
        let err =
            dominated_convergence_run(sp, family, None, &g_small, &u, None, &params).unwrap_err();
        assert!(matches!(err, Error::DominationViolated { n: 0, .. }));
    }
}
