use serde::Serialize;

use crate::error::{Error, Result};
use crate::simple_fn::SimpleFn;
use crate::spaces::{refine, IndexFn, Point, StepFn};
use crate::vectors::Vector;

/// `Σ_n real(μ(part n)) · val[n]`, evaluated whether or not `sf` is
/// integrable. An infinite part contributes nothing because `real(∞) = 0`.
pub fn bint_sf_formula(sf: &SimpleFn) -> Vector {
    let parts = sf.space().part_measures(sf.which()).expect("which checked");
    let mut acc = sf.carrier().zero();
    for (n, m) in parts {
        acc.axpy(m.real(), &sf.val()[n]);
    }
    acc
}

/// The integral of an integrable simple function.
pub fn bint_sf(sf: &SimpleFn) -> Result<Vector> {
    if let Some(index) = sf.first_infinite_part() {
        return Err(Error::InfiniteMeasureOnNonzeroPart { index });
    }
    Ok(bint_sf_formula(sf))
}

/// Both sides of `∫(a·f + b·g) = a·∫f + b·∫g`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearityReport {
    pub combined: Vector,
    pub separate: Vector,
    /// Largest componentwise difference.
    pub max_error: f64,
}

pub fn bint_sf_lin(f: &SimpleFn, g: &SimpleFn, a: f64, b: f64) -> Result<LinearityReport> {
    let combined = bint_sf(&f.scal(a).plus(&g.scal(b))?)?;
    let separate = bint_sf(f)?.scal(a).try_add(&bint_sf(g)?.scal(b))?;
    let max_error = combined
        .coords()
        .iter()
        .zip(separate.coords())
        .map(|(p, q)| (p - q).abs())
        .fold(0.0, f64::max);
    Ok(LinearityReport {
        combined,
        separate,
        max_error,
    })
}

/// `(‖∫f‖, ∫‖f‖)`; the first never exceeds the second.
pub fn norm_bint_sf_le(f: &SimpleFn) -> Result<(f64, f64)> {
    let lhs = bint_sf(f)?.norm();
    let rhs = bint_sf(&f.norm())?.coords()[0];
    Ok((lhs, rhs))
}

/// `‖∫f − ∫g‖` for two representations of the same function. Fails with
/// [`Error::FunctionsDiffer`] unless they agree everywhere.
pub fn bint_sf_ext(f: &SimpleFn, g: &SimpleFn) -> Result<f64> {
    if f.space() != g.space() {
        return Err(Error::SpaceMismatch(
            "simple functions on different spaces".into(),
        ));
    }
    f.val()[0].same_carrier(&g.val()[0])?;
    for x in common_cell_points(f.which(), g.which())? {
        if f.eval(x)? != g.eval(x)? {
            return Err(Error::FunctionsDiffer(x.to_string()));
        }
    }
    bint_sf(f)?.dist(&bint_sf(g)?)
}

/// One point per cell of the common refinement; both functions are constant
/// on each cell, so these points decide pointwise equality.
fn common_cell_points(a: &IndexFn, b: &IndexFn) -> Result<Vec<Point>> {
    Ok(match refine(a, b, b.max_index())? {
        IndexFn::Table(t) => (0..t.len()).map(Point::Atom).collect(),
        IndexFn::Step(s) => cell_midpoints(&s),
    })
}

fn cell_midpoints(s: &StepFn) -> Vec<Point> {
    s.cells()
        .map(|(a, b, _)| Point::At(0.5 * (a + b)))
        .collect()
}
