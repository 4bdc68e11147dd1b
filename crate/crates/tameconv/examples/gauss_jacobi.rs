//! Gauss and Jacobi sums, their Weil weights, and the identities that tie
//! them together.

use tameconv::{
    check_associativity, check_gauss_jacobi, frobenius_twist, gauss_sum, jacobi_sum, CheckOutcome,
    CycInt, Error, FqField,
};

fn main() -> Result<(), Error> {
    let f13 = FqField::from_order(13)?;
    let quad = f13.char(2, 1)?;
    let cubic = f13.char(3, 1)?;

    let j = jacobi_sum(&f13, quad, cubic)?;
    println!("J(quad, cubic) over F_13 = {j}");
    println!("|J|^2 = {} (the field order)", j.abs_squared());
    assert_eq!(j.abs_squared(), CycInt::from_int(13));

    // the classical square of the quadratic Gauss sum: S^2 = 13
    let s = gauss_sum(&f13, quad, 1)?;
    println!("S(quad)^2 = {}", s.mul(&s));

    // q * S(chi1 chi2) + J * S(chi1) * S(chi2) = 0, checked exactly in the
    // group ring so no division is ever needed
    match check_gauss_jacobi(&f13, quad, cubic, 1)? {
        CheckOutcome::Holds => println!("Gauss-Jacobi relation holds"),
        other => println!("unexpected: {other:?}"),
    }

    // J(chi1 chi2, chi3) J(chi1, chi2) = J(chi1, chi2 chi3) J(chi2, chi3)
    let sextic = f13.char(6, 1)?;
    match check_associativity(&f13, quad, cubic, sextic)? {
        CheckOutcome::Holds => println!("associativity identity holds"),
        other => println!("unexpected: {other:?}"),
    }

    // the Frobenius twist q conj(J) / |J|^2 that convolution attaches
    let tw = frobenius_twist(&f13, quad, cubic)?;
    println!("twist(quad, cubic) = {tw}");
    println!("|twist|^2 = {}", tw.abs_squared());
    Ok(())
}
