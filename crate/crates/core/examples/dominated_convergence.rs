//! f_n = (1 + 1/(n+1))·(x, 1 − x) is dominated by 2‖(x, 1 − x)‖; the
//! integrals approach (1/2, 1/2) at rate 0.7071/(n+1).
//!
//!     cargo run --release --example dominated_convergence

use std::sync::Arc;

use bochner_core::bochner::{dominated_convergence_run, ApproxParams, DominatedParams, VecFn};
use bochner_core::separability::dense_seq;
use bochner_core::spaces::MeasureSpace;
use bochner_core::vectors::{VSpace, Vector};

fn main() -> bochner_core::Result<()> {
    let base = VecFn::lipschitz(
        VSpace::RVec(2),
        |x| Vector::rvec(&[x, 1.0 - x]).expect("finite"),
        std::f64::consts::SQRT_2,
        vec![],
    )?;
    let g = base.scal(2.0).norm();
    let params = DominatedParams {
        approx: ApproxParams {
            n_max: 1 << 18,
            resolution: 12,
            depth: 14,
            ..ApproxParams::default()
        },
        bint_eps: 3e-3,
        ..DominatedParams::default()
    };
    let reference = Vector::rvec(&[0.5, 0.5])?;
    let rep = dominated_convergence_run(
        Arc::new(MeasureSpace::Interval),
        |n| Ok(base.scal(1.0 + 1.0 / (n as f64 + 1.0))),
        Some(base.clone()),
        &g,
        &dense_seq(VSpace::RVec(2), true),
        Some(&reference),
        &params,
    )?;
    println!(
        "integral of g = {} (+ {:.1e})",
        rep.g_integral.value, rep.g_integral.error_bound
    );
    println!(
        "{:>5} {:>22} {:>12} {:>12}",
        "n", "integral", "distance", "0.7071/(n+1)"
    );
    for r in &rep.rows {
        let c = r.bint.coords();
        println!(
            "{:>5} ({:.6}, {:.6}) {:>12.4e} {:>12.4e}",
            r.n,
            c[0],
            c[1],
            r.diff_to_reference.unwrap(),
            0.5f64.sqrt() / (r.n as f64 + 1.0)
        );
    }
    println!("converged within {}: {}", params.eps, rep.converged);
    Ok(())
}
