//! Continuous-time quantum walks on corona products of graphs.
//!
//! The crate builds graph families and products ([`graph`]), decomposes their
//! adjacency matrices into eigenprojectors ([`spectral`]), evaluates corona
//! spectra and transition amplitudes in closed form ([`corona`]), and uses
//! exact quadratic-irrational arithmetic ([`number_theory`]) to certify
//! periodicity and perfect state transfer or to construct pretty good state
//! transfer times ([`state_transfer`]).

pub mod corona;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod number_theory;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod spectral;
pub mod state_transfer;

pub use error::{Error, Result};
pub use graph::{CoronaVertex, Graph};
pub use matrix::Matrix;
pub use spectral::{eigendecompose, SpectralDecomposition};
