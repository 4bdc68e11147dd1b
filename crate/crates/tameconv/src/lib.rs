//! Exact arithmetic for the local additive convolution of tame Galois
//! representations over a finite field: cyclotomic integers, Gauss and Jacobi
//! sums, Frobenius twists, the universal convolution table, rank/Swan
//! bookkeeping, and brute-force point-counting oracles that cross-check every
//! numeric identity.
//!
//! Everything is exact: all values live in rings Z[ζ_m] or their
//! integer-denominator fractions, and every comparison is algebraic equality.
//! Nothing here floats.

pub mod charsums;
pub mod cli;
pub mod convolve;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod ledger;
pub mod oracle;
pub mod tamerep;
pub mod verify;

pub(crate) mod rng;

pub use charsums::{
    check_associativity, check_gauss_jacobi, frobenius_twist, gauss_sum, jacobi_sum, CheckOutcome,
    JacobiKey,
};
pub use convolve::{
    convolve_arithmetic, convolve_arithmetic_with, convolve_geometric, picard_lefschetz_demo,
    ts_monodromy, universal_table, ConvolutionTable, TableEntry, TwistCache,
};
pub use cyclotomic::{CycInt, CycScalar};
pub use error::Error;
pub use field::{FqField, GeneratorRule, MulChar};
pub use ledger::{
    convolution_rank, convolution_swan, derive_invariants, dimtot_check, generic_rank,
    milnor_product, rank_at_zero, LocalInvariants, TwistSwan,
};
pub use oracle::{character_expansion, count_points, verify_point_count, CurveSpec, ExpansionTerm};
pub use tamerep::{Component, TameRep};
pub use verify::{
    associativity_sweep, gauss_jacobi_sweep, picard_lefschetz_check, point_count_sweep,
    rep_suite_sweep, table_sweep, weil_modulus_sweep, RepSuiteReports, SweepConfig, SweepReport,
};
