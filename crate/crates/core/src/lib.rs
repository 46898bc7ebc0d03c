//! Exact character tables of finite permutation groups, computed with the
//! Burnside–Dixon–Schneider method, and audits of their values: Miller's
//! λ(χ) statistic, Siegel's trace bound and Cassels's two-roots dichotomy.

pub mod arith;
pub mod bsgs;
pub mod chartable;
pub mod classes;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod miller;
pub mod perm;

pub use chartable::CharacterTable;
pub use classes::ClassData;
pub use cyclotomic::{CycNum, Rational};
pub use error::Error;
pub use group::{GroupData, PermGroup};
pub use miller::{audit_table, AuditOptions, MillerReport};
pub use perm::Permutation;
