//! Hilbert-Schmidt distance and qubit Bloch coordinates.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::state::DensityMatrix;

/// Largest HSD between two density matrices.
pub const HSD_MAX: f64 = std::f64::consts::SQRT_2;

fn check_dims(rho: &DensityMatrix, zeta: &DensityMatrix) -> Result<()> {
    if rho.dim() != zeta.dim() {
        return Err(Error::contract(format!(
            "cannot compare states of dimension {} and {}",
            rho.dim(),
            zeta.dim()
        )));
    }
    Ok(())
}

/// `‖ρ - ζ‖₂`, from the entries.
pub fn hsd(rho: &DensityMatrix, zeta: &DensityMatrix) -> Result<f64> {
    check_dims(rho, zeta)?;
    let sq: f64 = rho
        .matrix()
        .as_slice()
        .iter()
        .zip(zeta.matrix().as_slice())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum();
    Ok(sq.sqrt())
}

/// `√(Σ λ_j²)` over the eigenvalues of `ρ - ζ`.
pub fn hsd_via_eigen(rho: &DensityMatrix, zeta: &DensityMatrix) -> Result<f64> {
    check_dims(rho, zeta)?;
    let diff = rho.matrix() - zeta.matrix();
    Ok(diff.hermitian_eigenvalues()?.sum_squares().sqrt())
}

/// Polarizations `(Tr ρσ_x, Tr ρσ_y, Tr ρσ_z)` of a qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector3 {
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// `ρ = (I + xσ_x + yσ_y + zσ_z) / 2`.
    pub fn to_density(&self) -> Result<DensityMatrix> {
        let m = ComplexMatrix::from_row_major(
            2,
            2,
            vec![
                Complex64::new(0.5 * (1.0 + self.z), 0.0),
                Complex64::new(0.5 * self.x, -0.5 * self.y),
                Complex64::new(0.5 * self.x, 0.5 * self.y),
                Complex64::new(0.5 * (1.0 - self.z), 0.0),
            ],
        )?;
        DensityMatrix::new(m)
    }
}

/// Residual imaginary part tolerated in `Tr(ρσ_j)`.
const BLOCH_IMAG_TOL: f64 = 1e-10;

pub fn bloch_vector_qubit(rho: &DensityMatrix) -> Result<BlochVector3> {
    if rho.dim() != 2 {
        return Err(Error::contract(format!(
            "Bloch coordinates need a qubit, got dimension {}",
            rho.dim()
        )));
    }
    let m = rho.matrix();
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    // Tr(ρσ_x) = b + c, Tr(ρσ_y) = i(b - c), Tr(ρσ_z) = a - d
    let tx = b + c;
    let ty = Complex64::new(0.0, 1.0) * (b - c);
    let tz = a - d;
    let worst = tx.im.abs().max(ty.im.abs()).max(tz.im.abs());
    if worst > BLOCH_IMAG_TOL {
        return Err(Error::numerical(format!(
            "Bloch component has imaginary residue {worst:e}"
        )));
    }
    Ok(BlochVector3 {
        x: tx.re,
        y: ty.re,
        z: tz.re,
    })
}
