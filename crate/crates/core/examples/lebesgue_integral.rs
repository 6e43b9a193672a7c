//! Certified nonnegative integrals on [0, 1) and a Markov bound.

use bochner_core::lebesgue::{lint_p, markov_fraction, NonNegFn};
use bochner_core::spaces::MeasureSpace;

fn main() -> bochner_core::Result<()> {
    let space = MeasureSpace::Interval;
    // |sin(6x)| has Lipschitz constant 6 and a kink at pi/6
    let f = NonNegFn::lipschitz(
        |x| (6.0 * x).sin().abs(),
        6.0,
        vec![std::f64::consts::PI / 6.0],
    )?;
    let exact = (3.0 + 6.0f64.cos()) / 6.0;
    println!("{:>6} {:>14} {:>12}", "depth", "minorant", "gap bound");
    for depth in [4, 8, 12, 16, 20] {
        let v = lint_p(&space, &f, depth)?;
        println!(
            "{depth:>6} {:>14.10} {:>12.3e}",
            v.value.to_f64(),
            v.error_bound
        );
    }
    let v = lint_p(&space, &f, 20)?;
    println!(
        "value lies in [{:.8}, {:.8}]; closed form {exact:.8}",
        v.value.to_f64(),
        v.upper()
    );

    let t = 0.5;
    let m = markov_fraction(&space, &f, t, 16)?;
    println!(
        "measure of {{f >= {t}}} >= {m}, and t * that = {} <= {:.6}",
        t * m.to_f64(),
        v.upper()
    );
    Ok(())
}
