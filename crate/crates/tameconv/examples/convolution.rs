//! Additive convolution with full Frobenius structure: characters multiply,
//! scalars pick up Jacobi-sum twists, and the unit law routes around them.

use tameconv::{
    convolve_arithmetic, convolve_arithmetic_with, convolve_geometric, ts_monodromy, Component,
    CycScalar, Error, FqField, TameRep, TwistCache,
};

fn main() -> Result<(), Error> {
    let f13 = FqField::from_order(13)?;

    let a = TameRep::new(
        4,
        vec![
            Component::new(1, CycScalar::from_int(1), 1),
            Component::new(0, CycScalar::from_int(3), 1),
        ],
    )?;
    let b = TameRep::new(6, vec![Component::new(1, CycScalar::from_int(1), 2)])?;

    let ab = convolve_arithmetic(&f13, &a, &b)?;
    println!("a * b = {}", serde_json::to_string(&ab).unwrap());
    println!("rank {} = {} x {}", ab.rank(), a.rank(), b.rank());
    assert_eq!(ab.rank(), a.rank() * b.rank());

    // commutative, and the unit representation is neutral
    assert_eq!(ab, convolve_arithmetic(&f13, &b, &a)?);
    assert_eq!(convolve_arithmetic(&f13, &a, &TameRep::unit())?, a);

    // the geometric convolution is the scalar-erased character tensor
    let geo = convolve_geometric(&a, &b);
    assert_eq!(geo, ab.scalar_erased());
    println!("geometric = {}", serde_json::to_string(&geo).unwrap());
    println!("monodromy of a*b: {:?}", ts_monodromy(&a, &b));

    // a shared cache avoids recomputing Jacobi sums across many convolutions
    let mut cache = TwistCache::new();
    for _ in 0..100 {
        convolve_arithmetic_with(&f13, &a, &b, &mut cache)?;
    }
    println!("distinct twists computed for 100 convolutions: {}", cache.len());
    Ok(())
}
