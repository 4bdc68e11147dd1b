//! Rank and Swan-conductor bookkeeping for convolutions, including the wild
//! correction term that vanishes in the tame case.

use tameconv::{
    convolution_rank, convolution_swan, derive_invariants, dimtot_check, generic_rank,
    milnor_product, rank_at_zero, Component, CycScalar, Error, LocalInvariants, TameRep, TwistSwan,
};

fn main() -> Result<(), Error> {
    // a wild example: both inputs rank 1 with Swan conductor 1
    let one = LocalInvariants { rank: 1, swan: 1 };
    let two = LocalInvariants { rank: 1, swan: 1 };
    let t = TwistSwan { sw_twist: 1 };

    println!("generic rank      = {}", generic_rank(one, two));
    println!("rank at the origin = {}", rank_at_zero(t));
    println!("convolution rank  = {}", convolution_rank(one, two, t)?);
    println!("convolution swan  = {}", convolution_swan(one, two, t));
    assert!(dimtot_check(one, two, t));
    println!("dimension totals balance: (r1+s1)(r2+s2) = rank + swan");

    // Milnor numbers multiply under joins
    println!("mu(x^3) mu(y^4)   = {}", milnor_product(2, 3));

    // tame representations have swan 0, so the ledger collapses to plain
    // rank multiplication
    let rep = TameRep::new(4, vec![Component::new(1, CycScalar::from_int(1), 3)])?;
    let inv = derive_invariants(&rep);
    println!("tame invariants   = rank {}, swan {}", inv.rank, inv.swan);
    assert_eq!(
        convolution_rank(inv, inv, TwistSwan { sw_twist: 0 })?,
        rep.rank() * rep.rank()
    );
    Ok(())
}
