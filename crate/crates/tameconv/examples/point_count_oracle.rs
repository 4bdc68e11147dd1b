//! The brute-force oracle: count points on y1^n1 + y2^n2 = t by raw
//! enumeration, then reconcile the count with its character-sum expansion
//! and the Jacobi sums behind it.

use tameconv::{character_expansion, count_points, verify_point_count, CurveSpec, Error, FqField};

fn main() -> Result<(), Error> {
    let f7 = FqField::from_order(7)?;
    let spec = CurveSpec {
        n1: 2,
        n2: 3,
        t: 1,
        m: 1,
    };

    let n = count_points(&f7, &spec)?;
    println!("solutions of y1^2 + y2^3 = 1 over F_7 with y1 y2 != 0: {n}");

    // the count splits into one exact character sum per exponent pair; the
    // trivial-trivial term is always q - 2
    for term in character_expansion(&f7, &spec)? {
        println!("  S({}, {}) = {}", term.e1, term.e2, term.value);
    }
    assert!(verify_point_count(&f7, &spec)?);
    println!("expansion total and Jacobi bridge both check out");

    // the same machinery over an extension: t lives in F_5, the count
    // happens in F_25
    let f5 = FqField::from_order(5)?;
    for m in [1, 2] {
        let s = CurveSpec {
            n1: 2,
            n2: 2,
            t: 1,
            m,
        };
        println!(
            "y1^2 + y2^2 = 1 over F_{}: {} points, verified {}",
            5u64.pow(m),
            count_points(&f5, &s)?,
            verify_point_count(&f5, &s)?
        );
    }
    Ok(())
}
