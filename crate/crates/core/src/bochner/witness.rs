use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::func::VecFn;
use super::nearest::{Layout, NearestRun, Node};
use crate::error::{Error, Result};
use crate::extreal::XReal;
use crate::lebesgue::{lint_p, pairwise_sum, LIntValue, LipschitzFn, NonNegFn};
use crate::separability::{dense_seq, DenseSeq};
use crate::simple_fn::SimpleFn;
use crate::spaces::{MeasureSpace, Point};
use crate::vectors::{diameter, VSpace, Vector};

/// Knobs of the approximating sequence and of the evidence recorded for it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ApproxParams {
    /// Last index of the dense sequence in play.
    pub n_max: usize,
    /// `[0, 1)` is cut into `2^resolution` cells.
    pub resolution: u32,
    /// Grid depth of the l1 integrals; raised to `resolution` if lower.
    pub depth: u32,
    /// Random probe points on `[0, 1)`; finite spaces probe every atom.
    pub probes: usize,
    pub seed: u64,
    /// Pointwise convergence tolerance at the probes.
    pub pw_eps: f64,
}

impl Default for ApproxParams {
    fn default() -> Self {
        ApproxParams {
            n_max: 4096,
            resolution: 10,
            depth: 12,
            probes: 1000,
            seed: 0,
            pw_eps: 1e-2,
        }
    }
}

impl ApproxParams {
    fn l1_depth(&self) -> u32 {
        self.depth.max(self.resolution)
    }

    fn validate(&self) -> Result<()> {
        if !(self.pw_eps > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "pw_eps must be > 0, got {}",
                self.pw_eps
            )));
        }
        Ok(())
    }
}

/// `0, 1, 2, 4, 5, 8, 11, 16, ...` (`⌊2^(k/2)⌋`), capped by and ending at `n_max`.
pub fn checkpoint_schedule(n_max: usize) -> Vec<usize> {
    let mut out = vec![0];
    for k in 0..128 {
        let n = (k as f64 / 2.0).exp2().floor() as usize;
        if n >= n_max {
            break;
        }
        if *out.last().unwrap() != n {
            out.push(n);
        }
    }
    if *out.last().unwrap() != n_max {
        out.push(n_max);
    }
    out
}

/// Evidence recorded at one index of the approximating sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Checkpoint {
    pub n: usize,
    /// `∫ s_n`, computed cell by cell.
    pub integral: Vector,
    /// `∫ ‖f − s_n‖` with its certified error bound.
    pub l1: LIntValue,
    pub integrable: bool,
}

/// Pointwise behaviour of the sequence at one probe point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub point: Point,
    /// First checkpoint from which `‖s_n(x) − f(x)‖ <= pw_eps + slack`
    /// at every later checkpoint.
    pub converged_at: Option<usize>,
    pub final_distance: f64,
    /// Largest `‖f(x) − s_n(x)‖ − ‖f(x)‖` over the checkpoints.
    pub domination_excess: f64,
}

/// An integrable function together with an approximating sequence of
/// integrable simple functions and the evidence that it converges.
#[derive(Debug, Clone)]
pub struct BifWitness {
    space: Arc<MeasureSpace>,
    f: VecFn,
    layout: Layout,
    node: Node,
    params: ApproxParams,
    norm_integral: LIntValue,
    checkpoints: Vec<Checkpoint>,
    probes: Vec<ProbeReport>,
    misclassified: XReal,
}

pub(crate) fn probe_points(layout: &Layout, params: &ApproxParams) -> Vec<Point> {
    match layout {
        Layout::Atoms(m) => (0..m.len()).map(Point::Atom).collect(),
        Layout::Grid(_) => {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            (0..params.probes)
                .map(|_| Point::At(rng.gen_range(0.0..1.0)))
                .collect()
        }
    }
}

/// `Σ_c real(μ(c)) · v_c`, summed pairwise per coordinate.
fn cellwise_integral(layout: &Layout, vals: &[Vector], carrier: VSpace) -> Vector {
    let d = carrier.dim();
    let coords: Vec<f64> = (0..d)
        .map(|k| {
            let terms: Vec<f64> = vals
                .iter()
                .enumerate()
                .map(|(c, v)| {
                    let m = layout.mass(c).real();
                    if m == 0.0 {
                        0.0
                    } else {
                        m * v.coords()[k]
                    }
                })
                .collect();
            pairwise_sum(&terms) + 0.0
        })
        .collect();
    Vector::new(carrier, &coords).expect("finite integral")
}

/// `∫ ‖f − s‖` where `s` takes the value `vals[c]` on cell `c`.
fn l1_distance(
    space: &MeasureSpace,
    fg: &VecFn,
    layout: &Layout,
    vals: Vec<Vector>,
    depth: u32,
) -> Result<LIntValue> {
    match fg {
        VecFn::Tabulated(t) => {
            let d: Vec<f64> = t
                .iter()
                .zip(&vals)
                .map(|(a, b)| a.dist_unchecked(b))
                .collect();
            lint_p(space, &NonNegFn::Tabulated(d), depth)
        }
        VecFn::PiecewiseLipschitz(g) => {
            let g2 = g.clone();
            let layout2 = layout.clone();
            let eval = Arc::new(move |x: f64| {
                let c = layout2.cell_of(Point::At(x)).expect("inside [0,1)");
                g2.eval(x).dist_unchecked(&vals[c])
            });
            let h = LipschitzFn::from_arc(eval, g.lipschitz(), g.breaks().to_vec())?;
            lint_p(space, &NonNegFn::PiecewiseLipschitz(h), depth)
        }
        VecFn::Simple(_) => unreachable!("general form is never simple"),
    }
}

impl BifWitness {
    fn assemble(
        space: Arc<MeasureSpace>,
        f: VecFn,
        layout: Layout,
        node: Node,
        params: ApproxParams,
    ) -> Result<Self> {
        params.validate()?;
        let depth = params.l1_depth();
        let norm_integral = lint_p(&space, &f.norm(), depth)?;
        if !norm_integral.value.is_finite() {
            return Err(Error::NormNotIntegrable);
        }
        if let Some(n) = node.first_non_integrable(&layout) {
            return Err(Error::IntegrabilityViolated { n });
        }
        let fg = f.general(&space)?;
        let carrier = f.carrier();
        let cells = layout.len();
        let schedule = checkpoint_schedule(node.n_max());

        let points = probe_points(&layout, &params);
        let probe_cells: Vec<usize> = points
            .iter()
            .map(|&p| layout.cell_of(p).expect("probe in space"))
            .collect();
        let probe_vals: Vec<Vector> = points.iter().map(|&p| fg.eval(p)).collect::<Result<_>>()?;

        let rows: Vec<(Checkpoint, Vec<f64>)> = schedule
            .par_iter()
            .map(|&n| {
                let vals = node.cell_values(n, cells);
                let integral = cellwise_integral(&layout, &vals, carrier);
                let dists = probe_cells
                    .iter()
                    .zip(&probe_vals)
                    .map(|(&c, y)| y.dist_unchecked(&vals[c]))
                    .collect();
                let l1 = l1_distance(&space, &fg, &layout, vals, depth)?;
                let cp = Checkpoint {
                    n,
                    integral,
                    l1,
                    integrable: node.first_non_integrable(&layout).is_none_or(|m| n < m),
                };
                Ok((cp, dists))
            })
            .collect::<Result<_>>()?;

        if let Some((cp, _)) = rows.iter().find(|(cp, _)| !cp.l1.value.is_finite()) {
            return Err(Error::InfiniteL1 { n: cp.n });
        }

        let slack = 0.5 * fg.lipschitz_bound() * layout.width();
        let tol = params.pw_eps + slack;
        let probes = points
            .iter()
            .enumerate()
            .map(|(i, &point)| {
                let norm = probe_vals[i].norm();
                let dist_at = |k: usize| rows[k].1[i];
                let last_bad = (0..rows.len()).rev().find(|&k| dist_at(k) > tol);
                let converged_at = match last_bad {
                    None => Some(rows[0].0.n),
                    Some(k) => rows.get(k + 1).map(|r| r.0.n),
                };
                ProbeReport {
                    point,
                    converged_at,
                    final_distance: dist_at(rows.len() - 1),
                    domination_excess: (0..rows.len())
                        .map(|k| dist_at(k) - norm)
                        .fold(f64::NEG_INFINITY, f64::max),
                }
            })
            .collect();

        let mut uncertain: Vec<bool> = (0..cells).map(|c| node.uncertain(c)).collect();
        for c in layout.cells_with_breaks(&fg.breaks()) {
            uncertain[c] = true;
        }
        let misclassified = (0..cells)
            .filter(|&c| uncertain[c])
            .map(|c| layout.mass(c))
            .sum();

        Ok(BifWitness {
            space,
            f,
            layout,
            node,
            params,
            norm_integral,
            checkpoints: rows.into_iter().map(|(cp, _)| cp).collect(),
            probes,
            misclassified,
        })
    }

    pub fn space(&self) -> &Arc<MeasureSpace> {
        &self.space
    }

    pub fn f(&self) -> &VecFn {
        &self.f
    }

    pub fn carrier(&self) -> VSpace {
        self.f.carrier()
    }

    pub fn params(&self) -> &ApproxParams {
        &self.params
    }

    pub fn n_max(&self) -> usize {
        self.node.n_max()
    }

    /// `∫ ‖f‖`, checked finite on construction.
    pub fn norm_integral(&self) -> LIntValue {
        self.norm_integral
    }

    pub fn checkpoints(&self) -> &[Checkpoint] {
        &self.checkpoints
    }

    pub fn probes(&self) -> &[ProbeReport] {
        &self.probes
    }

    /// Measure of the grid cells whose midpoint classification may differ
    /// from the classification of some other point of the cell (always `0`
    /// on finite spaces).
    pub fn misclassified_measure(&self) -> XReal {
        self.misclassified
    }

    /// `L·h/2`: how far `f` can move from its cell midpoint.
    pub fn resolution_slack(&self) -> f64 {
        0.5 * self.f.lipschitz_bound() * self.layout.width()
    }

    /// The `n`-th simple function of the sequence.
    pub fn seq(&self, n: usize) -> Result<SimpleFn> {
        self.check_n(n)?;
        self.node.materialize(n, &self.space, &self.layout)
    }

    /// `s_n(x)` without materializing `s_n`.
    pub fn seq_eval(&self, n: usize, x: Point) -> Result<Vector> {
        self.check_n(n)?;
        let c = self
            .layout
            .cell_of(x)
            .ok_or_else(|| Error::PointOutsideSpace(x.to_string()))?;
        Ok(self.node.cell_values(n, self.layout.len()).swap_remove(c))
    }

    /// `∫ s_n` for any `n <= n_max`.
    pub fn integral_at(&self, n: usize) -> Result<Vector> {
        self.check_n(n)?;
        let vals = self.node.cell_values(n, self.layout.len());
        Ok(cellwise_integral(&self.layout, &vals, self.carrier()))
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n > self.n_max() {
            return Err(Error::InvalidParameter(format!(
                "n = {n} exceeds n_max = {}",
                self.n_max()
            )));
        }
        Ok(())
    }

    /// First checkpoint from which every recorded `l1 + bound` stays below `eps`.
    pub fn l1_below(&self, eps: f64) -> Option<usize> {
        let cps = &self.checkpoints;
        let last_bad = (0..cps.len()).rev().find(|&k| !(cps[k].l1.upper() < eps));
        match last_bad {
            None => Some(cps[0].n),
            Some(k) => cps.get(k + 1).map(|c| c.n),
        }
    }

    pub fn pw_converged(&self) -> bool {
        self.probes.iter().all(|p| p.converged_at.is_some())
    }

    pub fn max_domination_excess(&self) -> f64 {
        self.probes
            .iter()
            .map(|p| p.domination_excess)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// The last checkpoint.
    pub fn last(&self) -> &Checkpoint {
        self.checkpoints.last().expect("schedule is nonempty")
    }

    fn combine(&self, other: &BifWitness) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch("witnesses on different spaces".into()));
        }
        if self.layout != other.layout {
            return Err(Error::SpaceMismatch("witnesses on different grids".into()));
        }
        if self.carrier() != other.carrier() {
            return Err(Error::CarrierMismatch {
                left: self.carrier(),
                right: other.carrier(),
            });
        }
        Ok(())
    }
}

/// Approximates `f` by nearest points of the zero-first sequence `u`.
pub fn bif_from_separable(
    space: Arc<MeasureSpace>,
    f: VecFn,
    u: &DenseSeq,
    params: &ApproxParams,
) -> Result<BifWitness> {
    f.check_space(&space)?;
    if f.carrier() != u.carrier() {
        return Err(Error::CarrierMismatch {
            left: f.carrier(),
            right: u.carrier(),
        });
    }
    if !u.zero_first() {
        return Err(Error::InvalidParameter(
            "the approximation needs a zero-first dense sequence".into(),
        ));
    }
    let depth = params.l1_depth();
    if !lint_p(&space, &f.norm(), depth)?.value.is_finite() {
        return Err(Error::NormNotIntegrable);
    }
    let layout = Layout::new(&space, params.resolution)?;
    let fg = f.general(&space)?;
    let targets: Vec<Vector> = (0..layout.len())
        .map(|c| fg.eval(layout.point(c)))
        .collect::<Result<_>>()?;
    let margin = fg.lipschitz_bound() * layout.width();
    let run = NearestRun::build(&targets, u, params.n_max, margin)?;
    BifWitness::assemble(space, f, layout, Node::Nearest(Arc::new(run)), *params)
}

/// [`bif_from_separable`] with the rational sequence of the real line.
pub fn bif_real(space: Arc<MeasureSpace>, f: VecFn, params: &ApproxParams) -> Result<BifWitness> {
    if f.carrier() != VSpace::Real {
        return Err(Error::CarrierMismatch {
            left: VSpace::Real,
            right: f.carrier(),
        });
    }
    bif_from_separable(space, f, &dense_seq(VSpace::Real, true), params)
}

pub fn bif_plus(a: &BifWitness, b: &BifWitness) -> Result<BifWitness> {
    a.combine(b)?;
    let f = a.f.plus(&b.f, &a.space)?;
    let node = Node::Plus(Box::new(a.node.clone()), Box::new(b.node.clone()));
    let params = ApproxParams {
        n_max: node.n_max(),
        ..a.params
    };
    BifWitness::assemble(a.space.clone(), f, a.layout.clone(), node, params)
}

pub fn bif_scal(s: f64, a: &BifWitness) -> Result<BifWitness> {
    if !s.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "scalar must be finite, got {s}"
        )));
    }
    let node = Node::Scal(s, Box::new(a.node.clone()));
    BifWitness::assemble(
        a.space.clone(),
        a.f.scal(s),
        a.layout.clone(),
        node,
        a.params,
    )
}

pub fn bif_neg(a: &BifWitness) -> Result<BifWitness> {
    bif_scal(-1.0, a)
}

pub fn bif_minus(a: &BifWitness, b: &BifWitness) -> Result<BifWitness> {
    bif_plus(a, &bif_neg(b)?)
}

pub fn bif_norm(a: &BifWitness) -> Result<BifWitness> {
    let node = Node::Norm(Box::new(a.node.clone()));
    BifWitness::assemble(
        a.space.clone(),
        a.f.norm_fn(),
        a.layout.clone(),
        node,
        a.params,
    )
}

/// The integral read off a witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BIntEstimate {
    pub value: Vector,
    /// Index of the returned term.
    pub n: usize,
    /// First checkpoint from which all recorded integrals lie within `eps`
    /// of each other.
    pub stable_from: usize,
    /// Oscillation diameter over the last `window` checkpoints.
    pub diameter: f64,
    /// Certified bound on `‖value − ∫f‖`: `∫‖f − s_n‖` plus its error bound.
    pub error_bound: f64,
}

/// `lim ∫ s_n`, accepted once the last `window` checkpoints are pairwise
/// within `eps`; the value is the integral at `n_max`.
pub fn bint(bf: &BifWitness, eps: f64, window: usize) -> Result<BIntEstimate> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "eps must be > 0, got {eps}"
        )));
    }
    let cps = bf.checkpoints();
    if window == 0 || window > cps.len() {
        return Err(Error::InvalidParameter(format!(
            "window {window} needs between 1 and {} recorded checkpoints",
            cps.len()
        )));
    }
    let integrals: Vec<Vector> = cps.iter().map(|c| c.integral.clone()).collect();
    let tail = diameter(&integrals[cps.len() - window..]);
    if !(tail < eps) {
        return Err(Error::NoConvergence {
            max_n: bf.n_max(),
            diameter: tail,
        });
    }
    let stable = (0..cps.len())
        .find(|&k| diameter(&integrals[k..]) < eps)
        .expect("the tail window qualifies");
    let last = bf.last();
    Ok(BIntEstimate {
        value: last.integral.clone(),
        n: last.n,
        stable_from: cps[stable].n,
        diameter: tail,
        error_bound: last.l1.upper(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bochner::simple::bint_sf;
    use crate::separability::DenseKind;

    fn pair() -> VecFn {
        VecFn::lipschitz(
            VSpace::RVec(2),
            |x| Vector::rvec(&[x, 1.0 - x]).unwrap(),
            std::f64::consts::SQRT_2,
            vec![],
        )
        .unwrap()
    }

    fn interval() -> Arc<MeasureSpace> {
        Arc::new(MeasureSpace::Interval)
    }

    fn small(n_max: usize, resolution: u32) -> ApproxParams {
        ApproxParams {
            n_max,
            resolution,
            depth: resolution + 2,
            probes: 200,
            ..ApproxParams::default()
        }
    }

    #[test]
    fn schedule_shape() {
        assert_eq!(checkpoint_schedule(0), vec![0]);
        assert_eq!(checkpoint_schedule(20), vec![0, 1, 2, 4, 5, 8, 11, 16, 20]);
        let s = checkpoint_schedule(1 << 20);
        assert_eq!(*s.last().unwrap(), 1 << 20);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn cellwise_integral_matches_materialized() {
        let bf = bif_from_separable(
            interval(),
            pair(),
            &dense_seq(VSpace::RVec(2), true),
            &small(300, 6),
        )
        .unwrap();
        for n in [0, 1, 5, 37, 300] {
            let s = bf.seq(n).unwrap();
            s.check_axioms().unwrap();
            assert!(s.is_integrable());
            let a = bint_sf(&s).unwrap();
            let b = bf.integral_at(n).unwrap();
            assert!(a.dist(&b).unwrap() < 1e-12, "n {n}: {a:?} vs {b:?}");
            for x in [0.0, 0.4, 0.999] {
                assert_eq!(
                    s.eval(Point::At(x)).unwrap(),
                    &bf.seq_eval(n, Point::At(x)).unwrap()
                );
            }
        }
        assert!(bf.seq(0).unwrap().val().iter().all(Vector::is_zero));
        assert!(bf.seq(301).is_err());
    }

    #[test]
    fn evidence_on_the_interval() {
        let bf = bif_from_separable(
            interval(),
            pair(),
            &dense_seq(VSpace::RVec(2), true),
            &small(20_000, 10),
        )
        .unwrap();
        let norm = bf.norm_integral();
        let l1: Vec<f64> = bf
            .checkpoints()
            .iter()
            .map(|c| c.l1.value.to_f64())
            .collect();
        assert!((l1[0] - norm.value.to_f64()).abs() < 1e-12);
        for c in bf.checkpoints() {
            assert!(c.integrable);
            assert!(c.l1.value.to_f64() <= norm.upper() + 1e-12);
        }
        assert!(bf.l1_below(0.05).is_some());
        assert!(bf.max_domination_excess() <= 2.0 * bf.resolution_slack());
        let est = bint(&bf, 0.05, 4).unwrap();
        for k in 0..2 {
            assert!((est.value.coords()[k] - 0.5).abs() <= est.error_bound);
        }
    }

    #[test]
    fn constant_and_zero_functions() {
        let sp = interval();
        let c = Vector::rvec(&[0.5, -2.0]).unwrap();
        let c2 = c.clone();
        let f = VecFn::lipschitz(VSpace::RVec(2), move |_| c2.clone(), 0.0, vec![]).unwrap();
        let bf = bif_from_separable(
            sp.clone(),
            f,
            &dense_seq(VSpace::RVec(2), true),
            &small(5000, 4),
        )
        .unwrap();
        let est = bint(&bf, 1e-9, 3).unwrap();
        assert_eq!(est.value, c);
        assert_eq!(bf.misclassified_measure(), XReal::ZERO);
        assert!(bf.pw_converged());

        let zero =
            VecFn::lipschitz(VSpace::Real, |_| Vector::real(0.0).unwrap(), 0.0, vec![]).unwrap();
        let bz = bif_real(sp, zero, &small(100, 4)).unwrap();
        let s = bz.seq(100).unwrap();
        for x in [0.0, 0.3, 0.9] {
            assert!(s.eval(Point::At(x)).unwrap().is_zero());
        }
        assert!(bint(&bz, 1e-12, 4).unwrap().value.is_zero());
    }

    #[test]
    fn finite_spaces_are_exact() {
        let sp = Arc::new(MeasureSpace::finite(&[0.5, 0.25, f64::INFINITY, 2.0]).unwrap());
        let vals = [0.75, -2.0, 0.0, 1.5];
        let f = VecFn::table(vals.iter().map(|&y| Vector::real(y).unwrap()).collect()).unwrap();
        let bf = bif_real(sp.clone(), f.clone(), &small(200, 0)).unwrap();
        let est = bint(&bf, 1e-12, 3).unwrap();
        // oracle: Σ real(μ{x})·f(x) over atoms with f(x) ≠ 0
        assert_eq!(est.value.coords(), &[0.5 * 0.75 + 0.25 * -2.0 + 2.0 * 1.5]);
        for p in bf.probes() {
            assert_eq!(p.final_distance, 0.0);
        }
        let s = bf.seq(200).unwrap();
        for (i, &y) in vals.iter().enumerate() {
            assert_eq!(s.eval(Point::Atom(i)).unwrap().coords(), &[y]);
        }

        let bad = VecFn::table(vec![
            Vector::real(0.0).unwrap(),
            Vector::real(0.0).unwrap(),
            Vector::real(1.0).unwrap(),
            Vector::real(0.0).unwrap(),
        ])
        .unwrap();
        assert_eq!(
            bif_real(sp, bad, &small(10, 0)).unwrap_err(),
            Error::NormNotIntegrable
        );
    }

    #[test]
    fn algebra() {
        let sp = interval();
        let p = small(2000, 6);
        let a =
            bif_from_separable(sp.clone(), pair(), &dense_seq(VSpace::RVec(2), true), &p).unwrap();
        let b = bif_from_separable(
            sp.clone(),
            pair(),
            &DenseSeq::builtin(VSpace::RVec(2), DenseKind::RationalTransposed, true),
            &p,
        )
        .unwrap();
        let d = bif_minus(&a, &b).unwrap();
        let zero_gap = d.last().integral.norm();
        assert!(zero_gap <= a.last().l1.upper() + b.last().l1.upper());
        let dd = bif_plus(&a, &bif_neg(&a).unwrap()).unwrap();
        assert!(dd.last().integral.norm() < 1e-15);
        let two = bif_scal(2.0, &a).unwrap();
        let lhs = two.last().integral.clone();
        let rhs = a.last().integral.scal(2.0);
        assert!(lhs.dist(&rhs).unwrap() < 1e-14);
        let n = bif_norm(&a).unwrap();
        assert_eq!(n.carrier(), VSpace::Real);
        let s = dd.seq(3).unwrap();
        s.check_axioms().unwrap();
        assert!(bint_sf(&s).unwrap().norm() < 1e-15);
        let other = bif_from_separable(
            sp,
            pair(),
            &dense_seq(VSpace::RVec(2), true),
            &small(100, 5),
        )
        .unwrap();
        assert!(bif_plus(&a, &other).is_err());
    }
}
