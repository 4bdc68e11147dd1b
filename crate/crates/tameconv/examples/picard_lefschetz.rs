//! Iterated self-convolution of the quadratic character representation: the
//! rank stays 1, the character alternates, and the Frobenius scalar grows by
//! one factor of q per convolution pair.

use tameconv::{picard_lefschetz_demo, CycScalar, Error, FqField};

fn main() -> Result<(), Error> {
    for q in [5u64, 9, 13] {
        let fld = FqField::from_order(q)?;
        println!("over F_{q}:");
        for (i, rep) in picard_lefschetz_demo(&fld, 5)?.iter().enumerate() {
            let r = i as u64 + 1;
            let c = &rep.components()[0];
            println!(
                "  power {r}: rank {}, character exponent {}, scalar {}",
                rep.rank(),
                c.e,
                c.alpha
            );
            // the closed form: exponent r mod 2, scalar q^floor(r/2)
            assert_eq!(c.e, r % 2);
            assert_eq!(c.alpha, CycScalar::from_int(q.pow(r as u32 / 2) as i64));
        }
    }
    println!("closed form holds: the twist accumulates exactly one q per pair");
    Ok(())
}
