//! Numerical bookkeeping for local invariants under convolution: generic
//! rank, rank of the vanishing part, Swan conductor, and the dimension-total
//! consistency identity that ties them together.
//!
//! Everything here is plain integer arithmetic. The tame case of this crate
//! always has Swan conductor zero, but the formulas are kept general so the
//! consistency identity is tested with nonzero wild inputs too.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tamerep::TameRep;

/// Rank and Swan conductor of one local representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalInvariants {
    pub rank: u64,
    pub swan: u64,
}

/// Swan conductor of the twisted tensor product sitting at the origin; the
/// input that couples the two factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSwan {
    pub sw_twist: u64,
}

/// Rank of the convolution at a generic point:
/// r1*r2 + r1*s2 + r2*s1.
pub fn generic_rank(a: LocalInvariants, b: LocalInvariants) -> u64 {
    a.rank * b.rank + a.rank * b.swan + b.rank * a.swan
}

/// Rank of the stalk at the origin.
pub fn rank_at_zero(t: TwistSwan) -> u64 {
    t.sw_twist
}

/// Rank of the vanishing-cycle part of the convolution: generic rank minus
/// the stalk rank at the origin. Negative would mean inconsistent inputs.
pub fn convolution_rank(a: LocalInvariants, b: LocalInvariants, t: TwistSwan) -> Result<u64> {
    let g = generic_rank(a, b);
    g.checked_sub(t.sw_twist).ok_or_else(|| Error::Inconsistent {
        what: format!(
            "rank at zero {} exceeds generic rank {g}",
            t.sw_twist
        ),
    })
}

/// Swan conductor of the convolution: s1*s2 + sw_twist.
pub fn convolution_swan(a: LocalInvariants, b: LocalInvariants, t: TwistSwan) -> u64 {
    a.swan * b.swan + t.sw_twist
}

/// Checks rank + swan of the convolution against the product of dimension
/// totals (r1 + s1)(r2 + s2).
pub fn dimtot_check(a: LocalInvariants, b: LocalInvariants, t: TwistSwan) -> bool {
    match convolution_rank(a, b, t) {
        Ok(rank) => rank + convolution_swan(a, b, t) == (a.rank + a.swan) * (b.rank + b.swan),
        Err(_) => false,
    }
}

/// Milnor numbers multiply under convolution of isolated singularities.
pub fn milnor_product(mu1: u64, mu2: u64) -> u64 {
    mu1 * mu2
}

/// Invariants of a tame representation: its rank, and Swan conductor zero
/// by tameness.
pub fn derive_invariants(rep: &TameRep) -> LocalInvariants {
    LocalInvariants {
        rank: rep.rank(),
        swan: 0,
    }
}
