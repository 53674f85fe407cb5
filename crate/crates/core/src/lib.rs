//! Exact symbolic computation in reflection equation algebras, their braided
//! tensor copies, quantum matrix algebras, and the associated quantum trace
//! rings, over the field Q(q) with q a formal parameter.
//!
//! The crate is organized around a graded quadratic rewriting engine
//! ([`rewrite`]) that produces unique normal forms for every algebra built in
//! [`algebras`]. On top of that sit matrices over the algebras and the trace
//! identity catalog ([`matrixops`]), multigraded Hilbert series by torus
//! restriction ([`hilbert`]), and the complete analysis of the two-matrix
//! 2x2 trace ring ([`trace22`]). The [`expr`] and [`cli`] modules provide a
//! parser and command-line front end.

pub mod algebras;
pub mod expr;
pub mod hilbert;
pub mod matrixops;
pub mod rewrite;
pub mod rmatrix;
pub mod scalar;
pub mod trace22;

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Mathematically invalid input (e.g. a non-positive q-integer index).
    Domain(String),
    /// Caller error: bad dimensions, unknown name, exceeded cap.
    Usage(String),
    /// An algebra definition failed validation while being built.
    Build(String),
    /// Expression syntax error with a byte offset into the input.
    Syntax { pos: usize, msg: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Usage(m) => write!(f, "usage error: {m}"),
            Error::Build(m) => write!(f, "build error: {m}"),
            Error::Syntax { pos, msg } => write!(f, "syntax error at {pos}: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
