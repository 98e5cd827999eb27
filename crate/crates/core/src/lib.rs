//! Hilbert series of quotients of polynomial rings by ideals of generic forms
//! (and of powers of generic forms), with case-by-case verification of the
//! expected minimal series using exact prime-field linear algebra.
//!
//! Every computed series comes from one random specialization of the forms
//! over `GF(p)`. Specializing, and reducing integer coefficients mod `p`, can
//! only lower the rank of a Macaulay matrix, so a computed series is
//! coefficientwise at least the generic series in characteristic zero. The
//! generic series in turn is known to be lexicographically at least
//! `ceil(prod (1 - t^{d_i}) / (1 - t)^n)`. A computed series equal to that
//! bound therefore certifies the generic case; a mismatch proves nothing.

pub mod constructions;
pub mod macaulay;
pub mod modp;
pub mod monomials;
pub mod series;
pub mod verifier;

pub use series::{ceiling, conjectured_series, expand_rational, lex_compare, DegreeList, SignedSeries, TruncatedSeries};

/// Version string stamped into verification records.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
