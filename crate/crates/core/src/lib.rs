//! Induced representations of group-graded *-algebras.
//!
//! The crate builds explicit (finite or truncated) matrix representations
//! induced from characters of the commutative degree-zero subalgebra,
//! classifies orbits of the partial group action on characters, and checks
//! the results with exact or floating-point oracles.

pub mod algebra;
pub mod character;
pub mod expectation;
pub mod group;
pub mod imprimitivity;
pub mod induction;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod verify;
pub mod virasoro;
pub mod word;

pub use scalar::Scalar;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("schema: {0}")]
    Schema(String),
    #[error("group: {0}")]
    Group(String),
    #[error("not in the positive character set: {0}")]
    NotPositive(String),
    #[error("window: {0}")]
    Window(String),
    #[error("numeric: {0}")]
    Numeric(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
