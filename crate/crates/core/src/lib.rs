//! Random quantum state sampling.
//!
//! Samplers for pure states, spectral ("standard") mixed states, the
//! Bloch-vector rejection method, the overparametrized `A†A` construction
//! and its Ginibre and Bures relatives, plus the Hilbert-Schmidt distance
//! statistics used to compare them.
//!
//! ```
//! use rqs_core::{rng::RngStream, samplers::standard_density, metrics::hsd};
//!
//! let mut a = RngStream::new(7, 0);
//! let mut b = RngStream::new(7, 1);
//! let rho = standard_density(&mut a, 4).unwrap();
//! let zeta = standard_density(&mut b, 4).unwrap();
//! assert!(hsd(&rho, &zeta).unwrap() <= 2f64.sqrt());
//! ```

pub mod error;
pub mod experiment;
pub mod linalg;
pub mod metrics;
pub mod report;
pub mod rng;
pub mod samplers;
pub mod state;
pub mod stats;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenSpectrum};
pub use state::{DensityMatrix, StateVector};
