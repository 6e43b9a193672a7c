//! Simple functions on a finite space: construction, algebra, integrals and
//! the role of infinite-measure atoms.

use std::sync::Arc;

use bochner_core::bochner::{bint_sf, bint_sf_ext, norm_bint_sf_le};
use bochner_core::simple_fn::SimpleFn;
use bochner_core::spaces::{IndexFn, MSet, MeasureSpace, Point};
use bochner_core::vectors::Vector;

fn main() -> bochner_core::Result<()> {
    // four atoms, the last one of infinite mass
    let space = Arc::new(MeasureSpace::finite(&[0.5, 0.25, 2.0, f64::INFINITY])?);

    let f = SimpleFn::indicator(
        space.clone(),
        &MSet::points([0, 1]),
        Vector::complex(1.0, -2.0)?,
    )?;
    let g = SimpleFn::indicator(
        space.clone(),
        &MSet::points([1, 2]),
        Vector::complex(0.5, 0.5)?,
    )?;
    println!("integral of f     = {:?}", bint_sf(&f)?.coords());
    println!("integral of g     = {:?}", bint_sf(&g)?.coords());

    let h = f.plus(&g)?.scal(2.0);
    println!(
        "integral of 2(f+g) = {:?}  ({} parts)",
        bint_sf(&h)?.coords(),
        h.max_which() + 1
    );
    for i in 0..4 {
        println!("  h({i}) = {:?}", h.eval(Point::Atom(i))?.coords());
    }

    let (lhs, rhs) = norm_bint_sf_le(&h)?;
    println!("|integral of h| = {lhs:.4} <= integral of |h| = {rhs:.4}");

    // f minus its restriction to atom 0: the product partition keeps a zero
    // part below the last index; removing it changes the representation
    // but not the function or its integral
    let f0 = SimpleFn::indicator(
        space.clone(),
        &MSet::points([0]),
        Vector::complex(1.0, -2.0)?,
    )?;
    let d = f.minus(&f0)?;
    let compact = d.remove_zeros();
    println!(
        "remove_zeros: {} -> {} parts, integrals differ by {}",
        d.max_which() + 1,
        compact.max_which() + 1,
        bint_sf_ext(&d, &compact)?
    );

    // a nonzero value on the infinite atom is not integrable
    let which = IndexFn::Table(vec![0, 0, 1, 0]);
    let val = vec![Vector::real(1.0)?, Vector::real(3.0)?, Vector::real(0.0)?];
    let bad = SimpleFn::new(space.clone(), which, val, 2)?;
    println!(
        "integrable: {}, integral: {:?}",
        bad.is_integrable(),
        bint_sf(&bad).map(|v| v.coords().to_vec())
    );
    Ok(())
}
