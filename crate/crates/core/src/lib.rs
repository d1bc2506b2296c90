//! TT̄-deformed modular forms: deformed q-series, kernel representations,
//! Mellin-side multipliers and the Laplacian flow on Maass forms.

pub mod deform_holo;
pub mod deform_real;
pub mod error;
pub mod maass;
pub mod mellin;
pub mod numkit;
pub mod spectra;

pub use error::{Error, Result};
