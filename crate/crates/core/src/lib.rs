//! Exact machinery for the quartic equation `A^4 + a*B^4 = C^4 + a*D^4`.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactnum`]: big-integer and rational helpers (exact roots, fourth-power-free
//!   decomposition, primitive scaling).
//! - [`polyalg`]: univariate polynomials and rational functions over the rationals,
//!   used to check parametric identities symbolically.
//! - [`quartic`]: the equation's data model, the `(p, q, r, s)` substitution, the
//!   `(rho, t, omega)` resolvent, residuals, scaling, and canonical forms.
//! - [`families`]: the registry of parametric families, their derivation chains and
//!   parameter recovery.
//! - [`search`]: an independent brute-force enumerator used as an oracle.
//! - [`tables`]: golden rows with provenance and the routine that regenerates them.

pub mod error;
pub mod exactnum;
pub mod families;
pub mod polyalg;
pub mod quartic;
pub mod search;
pub mod tables;

pub use error::{Error, Result};
pub use exactnum::{ExactInt, ExactRat};
