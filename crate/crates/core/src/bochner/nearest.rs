//! The nearest-point approximation `s_n(x) = u(j*)`, `j*` the first index in
//! `0..=n` minimizing `‖f(x) − u(j)‖`.
//!
//! Everything is computed per cell: the atoms of a finite space, or the
//! `2^resolution` cells of a uniform grid on `[0, 1)` classified by their
//! midpoint. For each cell the run stores the indices at which the nearest
//! point strictly improves, so `s_n` is available for every `n <= n_max`
//! after a single pass over the dense prefix.
//!
//! Slot layout of the materialized simple function: `val[k] = u(k + 1)` for
//! `k < n` and `val[n] = u(0) = 0`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extreal::XReal;
use crate::separability::DenseSeq;
use crate::simple_fn::SimpleFn;
use crate::spaces::{IndexFn, MeasureSpace, Point, StepFn};
use crate::vectors::{VSpace, Vector};

/// Finest grid accepted on `[0, 1)`.
pub const MAX_RESOLUTION: u32 = 20;

/// Largest `max_which + 1` a materialized combination may have.
const MAX_MATERIALIZED: usize = 1 << 22;

const BLOCK: usize = 64;
const PREFIX_CHUNK: usize = 1 << 16;

/// The cells on which approximations are constant.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Layout {
    Atoms(Vec<XReal>),
    Grid(u32),
}

impl Layout {
    pub(crate) fn new(space: &MeasureSpace, resolution: u32) -> Result<Self> {
        match space {
            MeasureSpace::Finite(fs) => Ok(Layout::Atoms(fs.masses().to_vec())),
            MeasureSpace::Interval if resolution <= MAX_RESOLUTION => Ok(Layout::Grid(resolution)),
            MeasureSpace::Interval => Err(Error::InvalidParameter(format!(
                "resolution {resolution} exceeds the maximum {MAX_RESOLUTION}"
            ))),
        }
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            Layout::Atoms(m) => m.len(),
            Layout::Grid(r) => 1 << r,
        }
    }

    pub(crate) fn width(&self) -> f64 {
        match self {
            Layout::Atoms(_) => 0.0,
            Layout::Grid(r) => (-(*r as f64)).exp2(),
        }
    }

    pub(crate) fn mass(&self, c: usize) -> XReal {
        match self {
            Layout::Atoms(m) => m[c],
            Layout::Grid(_) => XReal::finite(self.width()).expect("positive width"),
        }
    }

    /// Representative point: the atom, or the cell midpoint.
    pub(crate) fn point(&self, c: usize) -> Point {
        match self {
            Layout::Atoms(_) => Point::Atom(c),
            Layout::Grid(_) => Point::At((c as f64 + 0.5) * self.width()),
        }
    }

    pub(crate) fn cell_of(&self, x: Point) -> Option<usize> {
        match (self, x) {
            (Layout::Atoms(m), Point::Atom(i)) if i < m.len() => Some(i),
            (Layout::Grid(r), Point::At(y)) if (0.0..1.0).contains(&y) => {
                Some(((y * (1u64 << r) as f64) as usize).min(self.len() - 1))
            }
            _ => None,
        }
    }

    /// Cells whose interior contains one of `breaks`.
    pub(crate) fn cells_with_breaks(&self, breaks: &[f64]) -> Vec<usize> {
        let h = self.width();
        let mut out: Vec<usize> = breaks
            .iter()
            .filter_map(|&b| {
                let c = self.cell_of(Point::At(b))?;
                (b > c as f64 * h).then_some(c)
            })
            .collect();
        out.dedup();
        out
    }

    fn index_fn(&self, slots: Vec<usize>) -> Result<IndexFn> {
        match self {
            Layout::Atoms(_) => Ok(IndexFn::Table(slots)),
            Layout::Grid(r) => Ok(IndexFn::Step(StepFn::uniform(*r, slots)?)),
        }
    }
}

/// Per-cell improvement records of one nearest-point run.
#[derive(Debug)]
pub(crate) struct NearestRun {
    carrier: VSpace,
    coords: Vec<f64>,
    events: Vec<Vec<u32>>,
    uncertain: Vec<bool>,
    n_max: usize,
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Squared distance from `p` to the box `[lo, hi]`.
fn box_dist2(p: &[f64], lo: &[f64], hi: &[f64]) -> f64 {
    p.iter()
        .zip(lo.iter().zip(hi))
        .map(|(&x, (&l, &h))| {
            let e = (l - x).max(x - h).max(0.0);
            e * e
        })
        .sum()
}

impl NearestRun {
    /// Runs the selection for every cell value in `targets` over `u(0..=n_max)`.
    /// Cells whose runner-up lies within `margin` of the winner at `n_max`
    /// are flagged as uncertain.
    pub(crate) fn build(
        targets: &[Vector],
        u: &DenseSeq,
        n_max: usize,
        margin: f64,
    ) -> Result<Self> {
        if !u.zero_first() {
            return Err(Error::InvalidParameter(
                "the approximation needs a zero-first dense sequence".into(),
            ));
        }
        if n_max >= u32::MAX as usize {
            return Err(Error::InvalidParameter(format!(
                "n_max {n_max} is too large"
            )));
        }
        let carrier = u.carrier();
        if let Some(t) = targets.iter().find(|t| t.space() != carrier) {
            return Err(Error::CarrierMismatch {
                left: carrier,
                right: t.space(),
            });
        }
        let d = carrier.dim();
        let mut coords = Vec::with_capacity((n_max + 1) * d);
        let mut start = 0;
        while start <= n_max {
            let end = (start + PREFIX_CHUNK).min(n_max + 1);
            for v in u.range(start, end)? {
                coords.extend_from_slice(v.coords());
            }
            start = end;
        }

        let per_block: Vec<(Vec<Vec<u32>>, Vec<bool>)> = targets
            .par_chunks(BLOCK)
            .map(|block| scan_block(block, &coords, d, n_max, margin))
            .collect();
        let mut events = Vec::with_capacity(targets.len());
        let mut uncertain = Vec::with_capacity(targets.len());
        for (e, q) in per_block {
            events.extend(e);
            uncertain.extend(q);
        }
        Ok(NearestRun {
            carrier,
            coords,
            events,
            uncertain,
            n_max,
        })
    }

    pub(crate) fn n_max(&self) -> usize {
        self.n_max
    }

    /// The selected index `j*` of `cell` at step `n`.
    pub(crate) fn best(&self, cell: usize, n: usize) -> usize {
        let ev = &self.events[cell];
        let k = ev.partition_point(|&j| j as usize <= n);
        ev[k - 1] as usize
    }

    pub(crate) fn value(&self, j: usize) -> Vector {
        let d = self.carrier.dim();
        Vector::new(self.carrier, &self.coords[j * d..(j + 1) * d]).expect("finite prefix")
    }

    /// First step at which `cell` leaves the zero vector.
    pub(crate) fn first_move(&self, cell: usize) -> Option<usize> {
        self.events[cell].get(1).map(|&j| j as usize)
    }

    pub(crate) fn uncertain(&self, cell: usize) -> bool {
        self.uncertain[cell]
    }
}

fn scan_block(
    block: &[Vector],
    coords: &[f64],
    d: usize,
    n_max: usize,
    margin: f64,
) -> (Vec<Vec<u32>>, Vec<bool>) {
    let m = block.len();
    let t: Vec<f64> = block
        .iter()
        .flat_map(|v| v.coords().iter().copied())
        .collect();
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for c in 0..m {
        for k in 0..d {
            lo[k] = lo[k].min(t[c * d + k]);
            hi[k] = hi[k].max(t[c * d + k]);
        }
    }
    let mut best: Vec<f64> = (0..m)
        .map(|c| dist2(&t[c * d..(c + 1) * d], &coords[..d]))
        .collect();
    let mut events: Vec<Vec<u32>> = vec![vec![0]; m];
    let mut thresh = best.iter().copied().fold(0.0, f64::max);
    for j in 1..=n_max {
        let p = &coords[j * d..(j + 1) * d];
        if box_dist2(p, &lo, &hi) >= thresh {
            continue;
        }
        let mut changed = false;
        for c in 0..m {
            let e = dist2(&t[c * d..(c + 1) * d], p);
            if e < best[c] {
                best[c] = e;
                events[c].push(j as u32);
                changed = true;
            }
        }
        if changed {
            thresh = best.iter().copied().fold(0.0, f64::max);
        }
    }

    let mut uncertain = vec![false; m];
    if margin > 0.0 {
        let reach: Vec<f64> = best.iter().map(|b| (b.sqrt() + margin).powi(2)).collect();
        let winner: Vec<usize> = events.iter().map(|e| *e.last().unwrap() as usize).collect();
        let thresh = reach.iter().copied().fold(0.0, f64::max);
        for j in 0..=n_max {
            let p = &coords[j * d..(j + 1) * d];
            if box_dist2(p, &lo, &hi) > thresh {
                continue;
            }
            for c in 0..m {
                if j != winner[c] && !uncertain[c] && dist2(&t[c * d..(c + 1) * d], p) <= reach[c] {
                    uncertain[c] = true;
                }
            }
        }
    }
    (events, uncertain)
}

/// An approximating sequence built from nearest-point runs by pointwise
/// algebra.
#[derive(Debug, Clone)]
pub(crate) enum Node {
    Nearest(Arc<NearestRun>),
    Plus(Box<Node>, Box<Node>),
    Scal(f64, Box<Node>),
    Norm(Box<Node>),
}

impl Node {
    pub(crate) fn n_max(&self) -> usize {
        match self {
            Node::Nearest(r) => r.n_max(),
            Node::Plus(a, b) => a.n_max().min(b.n_max()),
            Node::Scal(_, a) | Node::Norm(a) => a.n_max(),
        }
    }

    /// `s_n` on every cell.
    pub(crate) fn cell_values(&self, n: usize, cells: usize) -> Vec<Vector> {
        match self {
            Node::Nearest(r) => (0..cells).map(|c| r.value(r.best(c, n))).collect(),
            Node::Plus(a, b) => {
                let (x, y) = (a.cell_values(n, cells), b.cell_values(n, cells));
                x.iter().zip(&y).map(|(p, q)| p.add_unchecked(q)).collect()
            }
            Node::Scal(s, a) => a.cell_values(n, cells).iter().map(|v| v.scal(*s)).collect(),
            Node::Norm(a) => a
                .cell_values(n, cells)
                .iter()
                .map(|v| Vector::real(v.norm()).expect("finite norm"))
                .collect(),
        }
    }

    /// First `n` at which a value other than `u(0)` lands on an
    /// infinite-measure cell; from then on `s_n` is not integrable.
    pub(crate) fn first_non_integrable(&self, layout: &Layout) -> Option<usize> {
        match self {
            Node::Nearest(r) => (0..layout.len())
                .filter(|&c| !layout.mass(c).is_finite())
                .filter_map(|c| r.first_move(c))
                .min(),
            Node::Plus(a, b) => match (
                a.first_non_integrable(layout),
                b.first_non_integrable(layout),
            ) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            },
            Node::Scal(_, a) | Node::Norm(a) => a.first_non_integrable(layout),
        }
    }

    pub(crate) fn uncertain(&self, cell: usize) -> bool {
        match self {
            Node::Nearest(r) => r.uncertain(cell),
            Node::Plus(a, b) => a.uncertain(cell) || b.uncertain(cell),
            Node::Scal(_, a) | Node::Norm(a) => a.uncertain(cell),
        }
    }

    /// `s_n` as a simple function on `space`.
    pub(crate) fn materialize(
        &self,
        n: usize,
        space: &Arc<MeasureSpace>,
        layout: &Layout,
    ) -> Result<SimpleFn> {
        match self {
            Node::Nearest(r) => {
                let slots = (0..layout.len())
                    .map(|c| match r.best(c, n) {
                        0 => n,
                        j => j - 1,
                    })
                    .collect();
                let mut val: Vec<Vector> = (1..=n).map(|j| r.value(j)).collect();
                val.push(r.value(0));
                SimpleFn::new(space.clone(), layout.index_fn(slots)?, val, n)
            }
            Node::Plus(a, b) => {
                let (x, y) = (
                    a.materialize(n, space, layout)?,
                    b.materialize(n, space, layout)?,
                );
                let size = (x.max_which() + 1).saturating_mul(y.max_which() + 1);
                if size > MAX_MATERIALIZED {
                    return Err(Error::InvalidParameter(format!(
                        "materializing a sum with {size} value slots; use a smaller n"
                    )));
                }
                x.plus(&y)
            }
            Node::Scal(s, a) => Ok(a.materialize(n, space, layout)?.scal(*s)),
            Node::Norm(a) => Ok(a.materialize(n, space, layout)?.norm()),
        }
    }
}
