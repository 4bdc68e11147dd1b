//! Exact arithmetic in Z[zeta_m]: roots of unity, conjugation, norms, and
//! moving elements between conductors.

use num_bigint::BigUint;
use tameconv::{CycInt, CycScalar, Error};

fn main() -> Result<(), Error> {
    // zeta_12 and its powers, reduced to the power basis of Z[x]/Phi_12
    let z = CycInt::root_of_unity(12, 1);
    println!("zeta_12        = {z}");
    println!("zeta_12^6      = {}", CycInt::root_of_unity(12, 6));
    println!("zeta_12^7      = {}", z.mul(&CycInt::root_of_unity(12, 6)));

    // |1 + zeta_5|^2 is the golden-ratio norm (3 + zeta + zeta^4 here)
    let x = CycInt::one(5).add(&CycInt::root_of_unity(5, 1));
    println!("1 + zeta_5     = {x}");
    println!("|1 + zeta_5|^2 = {}", x.abs_squared());

    // a conductor-3 value seen inside conductor 6, and projected back
    let small = CycInt::root_of_unity(3, 1).mul_int(&4.into());
    let big = small.embed(6)?;
    println!("4 zeta_3 in Z[zeta_6] = {big}");
    assert_eq!(big.project(3)?, small);

    // zeta_6 = -zeta_3^2, so it projects into Z[zeta_3]; zeta_12 does not
    // live in Z[zeta_4]
    println!("zeta_6 in Z[zeta_3]   = {}", CycInt::root_of_unity(6, 1).project(3)?);
    assert!(matches!(
        CycInt::root_of_unity(12, 1).project(4),
        Err(Error::NotInSubring { .. })
    ));

    // scalars carry an integer denominator, always normalized
    let half = CycScalar::new(CycInt::root_of_unity(8, 1), BigUint::from(2u32))?;
    let double = half.mul(&CycScalar::from_int(2));
    println!("(zeta_8 / 2) * 2      = {double}");
    assert_eq!(double, CycScalar::from_cyc(CycInt::root_of_unity(8, 1)));

    // everything serializes as exact JSON, no floats anywhere
    println!("as JSON: {}", serde_json::to_string(&half).unwrap());
    Ok(())
}
