//! Laplace transforms of signals on `[0, 2π]`.
//!
//! * [`forward_lt`]: spline fits and their exact windowed transforms.
//! * [`analytic_ilt`]: inversion of closed-form transforms with a cosh kernel and Euler summation.
//! * [`discrete_ilt`]: randomized quantized inversion of a sampled surface.
//! * [`partitions`]: random partition schemes and their distribution theory.
//! * [`rmt_lab`]: singular-value and isotropy experiments on the transform matrix.
//! * [`io`], [`plot`], [`surface`], [`validation`]: files, figures, test signals and end-to-end checks.

pub mod analytic_ilt;
pub mod discrete_ilt;
pub mod error;
pub mod forward_lt;
pub mod io;
pub mod numerics;
pub mod partitions;
pub mod plot;
pub mod rmt_lab;
pub mod surface;
pub mod validation;

pub use error::{Error, ErrorKind, Result};
pub use numerics::{Complex64, ComplexMatrix};
