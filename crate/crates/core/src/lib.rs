//! Exact arithmetic for integer lattices, Weyl group reflections and
//! point counting on quartic surfaces over `𝔽_{2ⁿ}` and `𝔽_{3ⁿ}`.
//!
//! The crate is organised in layers:
//!
//! * [`lattice`]: Gram matrices, isometries, reflections, invariant
//!   sublattices and overlattice discriminant bookkeeping.
//! * [`weyl`]: Weyl words, restriction to invariant sublattices and the
//!   isometry-extension obstruction that certifies non-normality.
//! * [`gf`]: small binary and ternary extension fields.
//! * [`surface`]: homogeneous forms, lines in `ℙ³`, and intersection Gram
//!   matrices of divisors on a quartic.
//! * [`zeta`]: point counts, Frobenius traces, characteristic polynomial
//!   reconstruction and the Picard number bound.
//! * [`cli`]: the `k3weyl` command-line front end.

pub mod cli;
pub mod error;
pub mod format;
pub mod gf;
pub mod lattice;
pub mod matrix;
pub mod surface;
pub mod weyl;
pub mod zeta;

pub use error::{Error, ErrorClass, Result};
