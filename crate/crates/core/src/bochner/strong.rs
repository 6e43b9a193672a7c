use serde::Serialize;

use super::func::VecFn;
use crate::error::{Error, Result};
use crate::simple_fn::SimpleFn;
use crate::spaces::Point;

/// Pointwise convergence of `s_n(x)` to `f(x)` at one probe.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrongProbe {
    pub point: Point,
    /// First `n` from which every later term is within `eps` of `f(x)`.
    pub converged_at: usize,
    pub final_distance: f64,
}

/// A function together with simple functions converging to it at probes.
/// No integrability is required.
#[derive(Debug, Clone)]
pub struct StrongMeasWitness {
    f: VecFn,
    seq: Vec<SimpleFn>,
    probes: Vec<StrongProbe>,
    eps: f64,
}

impl StrongMeasWitness {
    pub fn f(&self) -> &VecFn {
        &self.f
    }

    pub fn seq(&self) -> &[SimpleFn] {
        &self.seq
    }

    pub fn probes(&self) -> &[StrongProbe] {
        &self.probes
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

/// Checks that at every probe the last `window` terms (at least) lie within
/// `eps` of `f`.
pub fn strong_meas_witness(
    f: VecFn,
    seq: Vec<SimpleFn>,
    probes: &[Point],
    eps: f64,
    window: usize,
) -> Result<StrongMeasWitness> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "eps must be > 0, got {eps}"
        )));
    }
    if seq.len() < window.max(1) {
        return Err(Error::InvalidParameter(format!(
            "{} terms cannot fill a window of {window}",
            seq.len()
        )));
    }
    for s in &seq {
        if s.carrier() != f.carrier() {
            return Err(Error::CarrierMismatch {
                left: f.carrier(),
                right: s.carrier(),
            });
        }
    }
    let mut reports = Vec::with_capacity(probes.len());
    for &x in probes {
        let y = f.eval(x)?;
        let dists: Vec<f64> = seq
            .iter()
            .map(|s| Ok(s.eval(x)?.dist_unchecked(&y)))
            .collect::<Result<_>>()?;
        let from = dists.iter().rposition(|&d| !(d < eps)).map_or(0, |k| k + 1);
        if from + window.max(1) > dists.len() {
            let distance = dists[dists.len() - window.max(1)..]
                .iter()
                .copied()
                .fold(0.0, f64::max);
            return Err(Error::NotConvergentAtProbe {
                probe: x.to_string(),
                distance,
                eps,
            });
        }
        reports.push(StrongProbe {
            point: x,
            converged_at: from,
            final_distance: *dists.last().unwrap(),
        });
    }
    Ok(StrongMeasWitness {
        f,
        seq,
        probes: reports,
        eps,
    })
}

/// Witness for `f = lim f_k` built from witnesses of the `f_k` by diagonal
/// extraction: level `k` contributes its first term within `2^-k` of `f_k`
/// at every probe. Levels with no such term end the extraction.
pub fn compose_limits(
    levels: &[StrongMeasWitness],
    f: VecFn,
    probes: &[Point],
    eps: f64,
    window: usize,
) -> Result<StrongMeasWitness> {
    let mut diagonal = vec![];
    'levels: for (k, w) in levels.iter().enumerate() {
        let tol = (-(k as f64)).exp2();
        let targets: Vec<_> = probes.iter().map(|&x| w.f.eval(x)).collect::<Result<_>>()?;
        for s in &w.seq {
            let mut close = true;
            for (&x, y) in probes.iter().zip(&targets) {
                if s.eval(x)?.dist_unchecked(y) > tol {
                    close = false;
                    break;
                }
            }
            if close {
                diagonal.push(s.clone());
                continue 'levels;
            }
        }
        break;
    }
    strong_meas_witness(f, diagonal, probes, eps, window)
}
