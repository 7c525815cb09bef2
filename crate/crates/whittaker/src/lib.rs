//! Numerics for the Whittaker determinantal process: the Whittaker function
//! `W_{κ,μ}`, the four-quadrant kernel of the lifted spectral process on the
//! punctured real line, its correlation determinants, and the mixed colored
//! correlation functions obtained by Dirichlet-simplex averaging.
//!
//! Everything here is double-precision; the exact backend of the companion
//! core crate never enters this layer.

pub mod error;
pub mod gamma;
pub mod kernel;
pub mod mixed;
pub mod quadrature;
pub mod wfun;

pub use error::{Result, WhittakerError};
pub use kernel::WhittakerKernel;
pub use mixed::{dirichlet_moment, mixed_correlation, mixed_correlation_unit_hook, MixedValue};
pub use wfun::{whittaker_w, whittaker_w_prime};
