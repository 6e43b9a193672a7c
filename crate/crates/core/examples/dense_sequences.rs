//! Enumerated rationals, dense sequences in R^d and weak separability.

use bochner_core::separability::{
    cantor_pair, cantor_unpair, dense_seq, enum_rationals, rational_index, weak_sep_check,
    DenseKind, DenseSeq,
};
use bochner_core::vectors::{VSpace, Vector};

fn main() -> bochner_core::Result<()> {
    let first: Vec<String> = (0..15).map(|n| enum_rationals(n).to_string()).collect();
    println!("rationals: {}", first.join(", "));
    println!("-7/3 sits at index {:?}", rational_index(-7, 3));

    let (a, b) = cantor_unpair(1234);
    println!(
        "cantor_unpair(1234) = ({a}, {b}), pairs back to {}",
        cantor_pair(a, b)
    );

    let plane = dense_seq(VSpace::RVec(2), true);
    for (n, v) in plane.range(0, 8)?.iter().enumerate() {
        println!("  u({n}) = {:?}", v.coords());
    }
    let flipped = DenseSeq::builtin(VSpace::RVec(2), DenseKind::RationalTransposed, true);
    println!("transposed u(5) = {:?}", flipped.get(5).coords());

    // every sample of a range should be approached by the sequence
    let samples: Vec<Vector> = [(-3.3, 0.25), (1.0 / 3.0, 2.0), (7.5, -7.5)]
        .iter()
        .map(|&(x, y)| Vector::rvec(&[x, y]))
        .collect::<Result<_, _>>()?;
    for eps in [0.5, 0.1, 0.02] {
        let rep = weak_sep_check(&plane, &samples, eps, 2_000_000)?;
        println!("eps {eps}: ok = {}, first hits {:?}", rep.ok, rep.hits);
    }
    Ok(())
}
