//! Nearest-point approximation of f(x) = (x, 1 - x) on [0, 1) and the
//! convergence of its integrals to (1/2, 1/2).
//!
//!     cargo run --release --example nearest_point_approximation -- [n_max] [resolution]

use std::sync::Arc;
use std::time::Instant;

use bochner_core::bochner::{bif_from_separable, bint, ApproxParams, VecFn};
use bochner_core::separability::dense_seq;
use bochner_core::spaces::MeasureSpace;
use bochner_core::vectors::{VSpace, Vector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n_max = args.next().map_or(Ok(1 << 16), |s| s.parse())?;
    let resolution = args.next().map_or(Ok(12), |s| s.parse())?;

    let f = VecFn::lipschitz(
        VSpace::RVec(2),
        |x| Vector::rvec(&[x, 1.0 - x]).expect("finite"),
        std::f64::consts::SQRT_2,
        vec![],
    )?;
    let params = ApproxParams {
        n_max,
        resolution,
        depth: resolution + 2,
        ..ApproxParams::default()
    };
    let t0 = Instant::now();
    let bf = bif_from_separable(
        Arc::new(MeasureSpace::Interval),
        f,
        &dense_seq(VSpace::RVec(2), true),
        &params,
    )?;
    println!("built in {:.2?}", t0.elapsed());

    println!(
        "{:>9} {:>12} {:>12} {:>11} {:>11}",
        "n", "int x", "int 1-x", "l1", "l1 bound"
    );
    for c in bf.checkpoints() {
        let v = c.integral.coords();
        println!(
            "{:>9} {:>12.8} {:>12.8} {:>11.3e} {:>11.3e}",
            c.n,
            v[0],
            v[1],
            c.l1.value.to_f64(),
            c.l1.error_bound
        );
    }
    let est = bint(&bf, 1e-3, 4)?;
    println!(
        "bint = {:?}  (stable from n = {}, certified error <= {:.3e})",
        est.value.coords(),
        est.stable_from,
        est.error_bound
    );
    println!(
        "misclassified measure {}, max domination excess {:.3e}, probes converged: {}",
        bf.misclassified_measure(),
        bf.max_domination_excess(),
        bf.pw_converged()
    );
    Ok(())
}
