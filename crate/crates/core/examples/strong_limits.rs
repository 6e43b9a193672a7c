//! Strong measurability: a function is a pointwise limit of simple
//! functions, and limits of such limits are again limits (diagonal sequence).

use std::sync::Arc;

use bochner_core::bochner::{compose_limits, strong_meas_witness, VecFn};
use bochner_core::simple_fn::SimpleFn;
use bochner_core::spaces::{IndexFn, MeasureSpace, Point, StepFn};
use bochner_core::vectors::{VSpace, Vector};

/// `s·floor(2^n x)/2^n`; the zero cell is the last part.
fn truncation(n: u32, s: f64) -> bochner_core::Result<SimpleFn> {
    let cells = 1usize << n;
    let h = 1.0 / cells as f64;
    let index = (0..cells)
        .map(|k| if k == 0 { cells - 1 } else { k - 1 })
        .collect();
    let mut val: Vec<Vector> = (1..cells)
        .map(|k| Vector::real(s * k as f64 * h))
        .collect::<Result<_, _>>()?;
    val.push(Vector::real(0.0)?);
    SimpleFn::new(
        Arc::new(MeasureSpace::Interval),
        IndexFn::Step(StepFn::uniform(n, index)?),
        val,
        cells - 1,
    )
}

fn scaled_identity(s: f64) -> bochner_core::Result<VecFn> {
    VecFn::lipschitz(
        VSpace::Real,
        move |x| Vector::real(s * x).expect("finite"),
        s,
        vec![],
    )
}

fn main() -> bochner_core::Result<()> {
    let probes: Vec<Point> = (0..40).map(|i| Point::At(i as f64 / 40.0 + 0.01)).collect();
    let seq = (0..14)
        .map(|n| truncation(n, 1.0))
        .collect::<Result<Vec<_>, _>>()?;
    let w = strong_meas_witness(scaled_identity(1.0)?, seq, &probes, 1e-3, 3)?;
    let worst = w.probes().iter().map(|p| p.converged_at).max().unwrap_or(0);
    println!("x is the limit of dyadic truncations; all probes within 1e-3 from term {worst}");

    // f_k(x) = (1 + 2^-k)x, each a limit of truncations, tends to x
    let levels = (0..12)
        .map(|k| {
            let s = 1.0 + (-(k as f64)).exp2();
            let seq = (0..16)
                .map(|n| truncation(n, s))
                .collect::<Result<Vec<_>, _>>()?;
            strong_meas_witness(scaled_identity(s)?, seq, &probes, 1e-3, 2)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let diag = compose_limits(&levels, scaled_identity(1.0)?, &probes, 2e-3, 2)?;
    let last = diag
        .probes()
        .iter()
        .map(|p| p.final_distance)
        .fold(0.0, f64::max);
    println!(
        "diagonal sequence of {} terms, final distance {last:.2e}",
        diag.seq().len()
    );
    Ok(())
}
