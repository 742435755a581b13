//! Binary constant-weight codes for identification via channels.
//!
//! The crate builds inner codes from optical orthogonal codes (prime
//! sequences and a norm-equation construction over GF(p^{2m})), concatenates
//! them with standard, extended or doubly-extended Reed-Solomon codes, and
//! verifies the resulting parameters exhaustively where that is feasible.
//! It also evaluates two upper bounds on the code size in exact arithmetic
//! and the rate / type-II exponent of the resulting ID codes on the noiseless
//! binary channel.
//!
//! All logarithms are base 2.

pub mod bounds;
pub mod concat;
pub mod construct;
pub mod cwc;
pub mod error;
pub mod field;
pub mod idsys;
pub mod real;
pub mod rs;
pub mod sweep;

pub use concat::ConcatSpec;
pub use cwc::{CodeParams, CodeSize, CwCodeword, CwcFamily, VerificationReport};
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElem};
pub use rs::{RsSpec, RsVariant};
