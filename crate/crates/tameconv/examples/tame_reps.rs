//! Split tame representations: building them, canonical merging, monodromy
//! descriptors, and Frobenius traces.

use num_bigint::BigUint;
use tameconv::{Component, CycInt, CycScalar, Error, TameRep};

fn main() -> Result<(), Error> {
    // two components with the same character merge; presentation order and
    // scalar conductor do not matter
    let rep = TameRep::new(
        6,
        vec![
            Component::new(7, CycScalar::from_int(2), 1), // exponent reduces to 1
            Component::new(1, CycScalar::from_int(2), 2),
            Component::new(4, CycScalar::new(CycInt::root_of_unity(6, 2), BigUint::from(3u32))?, 1),
        ],
    )?;
    println!("rep  = {}", serde_json::to_string(&rep).unwrap());
    println!("rank = {}", rep.rank());

    // the same scalar written at conductor 3 compares equal algebraically
    let other = TameRep::new(
        6,
        vec![
            Component::new(1, CycScalar::from_int(2), 3),
            Component::new(4, CycScalar::new(CycInt::root_of_unity(3, 1), BigUint::from(3u32))?, 1),
        ],
    )?;
    assert_eq!(rep, other);
    println!("equality is algebraic, not positional");

    // monodromy forgets scalars and multiplicity bookkeeping keeps descriptors
    // reduced: exponent 4 at level 6 is the primitive cube character
    println!("monodromy eigenvalues = {:?}", rep.monodromy_eigenvalues());

    // trace of Frobenius is the scalar sum with multiplicity
    println!("tr(Frob) = {}", rep.frobenius_trace());

    // raising the level is invisible to every invariant
    let raised = rep.raise_level(12)?;
    assert_eq!(raised.monodromy_eigenvalues(), rep.monodromy_eigenvalues());
    assert_eq!(raised.frobenius_trace(), rep.frobenius_trace());
    println!("raised to level 12: same invariants");
    Ok(())
}
