//! Exact computer algebra for the cyclic orbifolds `W(p)^{A_m}` of the triplet
//! vertex algebra: constant-term identities, Jack/Kadell partition sums,
//! theta-function characters, modular-closure ranks and Zhu-algebra data.
//!
//! Everything is computed over [`BigRat`]; there is no floating point in any
//! verification path.

pub mod arith;
pub mod characters;
pub mod ct;
pub mod error;
pub mod jack;
pub mod laurent;
pub mod qseries;
pub mod span;
pub mod zhu;

pub use arith::{
    binom_general, frac_string, int, parse_frac, pochhammer, rat, ratpoly_gcd, BigRat, RatPoly,
    TPoly,
};
pub use error::{Error, Result};
pub use laurent::{Budget, MultiSeries};
pub use qseries::{QExpansion, TauVector};
