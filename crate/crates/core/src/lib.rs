//! Exact differential calculus on commutative rings.
//!
//! The crate is organised around five areas:
//!
//! * [`rings`]: exact arithmetic over `Z`, `Z/n` and `F_p[t]`, plus the
//!   semi-integral / proper classification predicates.
//! * [`calgebra`]: finite-rank algebras over a prime field given by structure
//!   constants, with type-C ideals, characters, type-D submodules, graded
//!   decompositions, compatibility and C-pair checks.
//! * [`smoothfn`]: smooth functions on absorbing subsets, the fundamental
//!   decomposition `y = y(l)e + (x - l e) y'`, exact derivatives and jets.
//! * [`witness`]: big-integer verification of the non-extendable function on
//!   `Z \ {0}` and the analyticity divisibility argument over `Z`.
//! * [`syntax`]: the expression grammar used by the command-line tool.
//!
//! Everything is exact: integers are arbitrary precision and no floating point
//! value ever enters a computation that produces a reported result.

pub mod calgebra;
pub mod error;
pub mod exec;
pub mod rings;
pub mod smoothfn;
pub mod syntax;
pub mod witness;

pub use error::{Error, Result};
pub use exec::Execution;
pub use rings::{Ring, RingElement, RingKind};
