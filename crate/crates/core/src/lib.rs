//! Exact sl2 branching computations: weight modules, Casimir projections,
//! translation identities, Rankin–Cohen operators, multiplicity oracles and
//! chamber sweeps.

pub mod exact;
pub mod fences;
pub mod fusion;
pub mod o4o3;
pub mod rankin_cohen;
pub mod report;
pub mod sign;
pub mod sl2;
pub mod suites;
pub mod translation;
pub mod verma;

pub use sign::Sign;
