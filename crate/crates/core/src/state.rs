//! Validated quantum state carriers.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Maximum |ρ_jk - conj(ρ_kj)| for a density matrix.
pub const DENSITY_HERMITIAN_TOL: f64 = 1e-12;
/// Maximum |Tr ρ - 1|.
pub const DENSITY_TRACE_TOL: f64 = 1e-12;
/// Smallest eigenvalue allowed, as a negative margin.
pub const DENSITY_PSD_TOL: f64 = 1e-10;
/// Maximum |‖ψ‖ - 1| for a state vector.
pub const STATE_NORM_TOL: f64 = 1e-12;

/// A unit-norm vector in C^d.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::contract("state vector must have dimension >= 1"));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::contract(format!(
                "state vector norm is {norm}, not 1"
            )));
        }
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// The rank-one density matrix |ψ⟩⟨ψ|.
    pub fn projector(&self) -> DensityMatrix {
        let d = self.dim();
        let m = ComplexMatrix::from_fn(d, d, |j, k| {
            if j == k {
                Complex64::new(self.amplitudes[j].norm_sqr(), 0.0)
            } else {
                self.amplitudes[j] * self.amplitudes[k].conj()
            }
        });
        DensityMatrix::new(m).expect("projector of a unit vector is a density matrix")
    }
}

/// Hermitian, unit-trace, positive semidefinite square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates all three density-matrix invariants.
    ///
    /// Positivity is decided by a Cholesky factorization of `ρ + 1e-10·I`;
    /// use [`DensityMatrix::min_eigenvalue`] for the explicit spectrum.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::contract(format!(
                "density matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.is_finite() {
            return Err(Error::contract("density matrix has non-finite entries"));
        }
        let defect = matrix.hermiticity_defect();
        if defect > DENSITY_HERMITIAN_TOL {
            return Err(Error::contract(format!(
                "not Hermitian (defect {defect:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > DENSITY_TRACE_TOL || tr.im.abs() > DENSITY_TRACE_TOL {
            return Err(Error::contract(format!("trace is {tr}, not 1")));
        }
        if !matrix.is_positive_semidefinite(DENSITY_PSD_TOL)? {
            return Err(Error::contract("not positive semidefinite"));
        }
        Ok(Self { matrix })
    }

    /// Maximally mixed state I/d.
    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(d).scale(1.0 / d as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Tr(ρ²).
    pub fn purity(&self) -> f64 {
        self.matrix.hs_norm_sqr()
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        self.matrix.min_eigenvalue()
    }
}
