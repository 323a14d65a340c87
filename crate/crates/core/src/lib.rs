//! Exact derivation algebras of parabolic subalgebras of `gl_n` and `sl_n`.
//!
//! Everything is computed over the rationals with arbitrary-precision
//! integers, so every structural statement (direct sums, ideal properties,
//! dimension counts) is checked as an exact equality.

pub mod cli;
pub mod derivations;
pub mod error;
pub mod exec;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod parabolic;

pub use error::{Error, Result};
pub use exec::Exec;
