//! Finite field construction: deterministic moduli and generators, discrete
//! logs, traces, and multiplicative characters with exact values.

use tameconv::{Error, FqField, GeneratorRule};

fn main() -> Result<(), Error> {
    let f9 = FqField::from_order(9)?;
    println!(
        "F_9 = F_3[x]/({:?}), generator {}",
        f9.modulus(),
        f9.generator()
    );

    // elements are base-p digit strings; 4 encodes 1 + x
    let a = 4;
    println!("log_g(4) = {}", f9.log(a)?);
    println!("4^2      = {}", f9.mul(a, a));
    println!("Tr(4)    = {}", f9.trace_of(a));

    // the same field under the alternate generator rule: same tables,
    // different labeling of the unit group
    let alt = FqField::from_order_with_rule(9, GeneratorRule::Largest)?;
    println!("largest-rule generator: {}", alt.generator());
    assert_eq!(f9.modulus(), alt.modulus());

    // a character of order 4 evaluated around the unit group
    let chi = f9.char(4, 1)?;
    for x in f9.units() {
        println!("chi_{{4,1}}({x}) = {}", f9.char_eval(chi, x)?);
    }

    // orthogonality: a nontrivial character sums to zero over the units
    let mut total = tameconv::CycInt::zero(4);
    for x in f9.units() {
        total = total.add(&f9.char_eval(chi, x)?);
    }
    assert!(total.is_zero());
    println!("sum over units of chi = 0, exactly");
    Ok(())
}
