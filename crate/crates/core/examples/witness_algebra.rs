//! Bochner-integrable functions carry their approximating sequences; sums,
//! multiples and norms combine those sequences, and the integral only
//! depends on the function.

use std::sync::Arc;

use bochner_core::bochner::{
    bif_from_separable, bif_minus, bif_norm, bif_plus, bif_scal, bint, bint_ext_check,
    bint_vs_lintp, zero_ae_check, ApproxParams, BifWitness, VecFn,
};
use bochner_core::lebesgue::NonNegFn;
use bochner_core::separability::dense_seq;
use bochner_core::spaces::{MeasureSpace, Point};
use bochner_core::vectors::{VSpace, Vector};

fn show(name: &str, w: &BifWitness) -> bochner_core::Result<()> {
    let e = bint(w, 2e-2, 4)?;
    println!(
        "{name:<12} {:?}  (+- {:.1e})",
        e.value.coords(),
        e.error_bound
    );
    Ok(())
}

fn main() -> bochner_core::Result<()> {
    let space = Arc::new(MeasureSpace::Interval);
    let params = ApproxParams {
        n_max: 1 << 15,
        resolution: 11,
        depth: 13,
        ..ApproxParams::default()
    };
    let u = dense_seq(VSpace::Complex, true);
    // e^{i·pi·x} and a step in the imaginary direction
    let f = VecFn::lipschitz(
        VSpace::Complex,
        |x| {
            let t = std::f64::consts::PI * x;
            Vector::complex(t.cos(), t.sin()).expect("finite")
        },
        std::f64::consts::PI,
        vec![],
    )?;
    let g = VecFn::lipschitz(
        VSpace::Complex,
        |x| Vector::complex(0.0, if x < 0.5 { 1.0 } else { 0.0 }).expect("finite"),
        0.0,
        vec![0.5],
    )?;
    let wf = bif_from_separable(space.clone(), f.clone(), &u, &params)?;
    let wg = bif_from_separable(space.clone(), g.clone(), &u, &params)?;

    show("f", &wf)?;
    show("g", &wg)?;
    let sum = bif_plus(&wf, &wg)?;
    show("f + g", &sum)?;
    show("3 f", &bif_scal(3.0, &wf)?)?;
    show("|f|", &bif_norm(&wf)?)?;

    // the same function approximated directly
    let direct = bif_from_separable(space.clone(), f.plus(&g, &space)?, &u, &params)?;
    let probes: Vec<Point> = (0..64)
        .map(|i| Point::At((i as f64 + 0.37) / 64.0))
        .collect();
    let ext = bint_ext_check(&sum, &direct, &probes, 2e-2, 4)?;
    println!(
        "two witnesses of f + g: difference {:.2e}, tolerance {:.2e}, ok {}",
        ext.difference, ext.tolerance, ext.ok
    );

    let diff = bif_minus(&sum, &direct)?;
    show("difference", &diff)?;
    let z = zero_ae_check(&space, &f.minus(&f, &space)?, 12)?;
    // a Lipschitz bound alone cannot certify an exact zero: the answer is open
    println!(
        "integral of |f - f| in [{}, {:.1e}], zero a.e. decided: {:?}",
        z.lint_norm.value,
        z.lint_norm.upper(),
        z.zero_ae
    );

    let cmp = bint_vs_lintp(
        space,
        &NonNegFn::lipschitz(|x| x * x, 2.0, vec![])?,
        &params,
        1e-3,
        4,
    )?;
    println!(
        "x^2: Bochner {:.6}, Lebesgue {:.6}, difference {:.1e} within {:.1e}",
        cmp.bint.value.coords()[0],
        cmp.lint.value.to_f64(),
        cmp.difference,
        cmp.tolerance
    );
    Ok(())
}
