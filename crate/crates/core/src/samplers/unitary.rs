//! Haar-random unitaries in the Hurwitz (Euler-angle) parametrization.
//!
//! The unitary is `e^{iα} U_1 U_2 ⋯ U_{d-1}` where
//! `U_k = E_{k,k+1} E_{k-1,k} ⋯ E_{1,2}` is a chain of two-level rotations
//! on neighbouring basis vectors. The rotation on plane `(r, r+1)` inside
//! `U_k` has `φ = arcsin(ξ^{1/(2r)})` with `ξ ~ U[0,1)`, phase `ψ ~ U[0,2π)`,
//! and carries the extra phase `χ ~ U[0,2π)` only when `r = 1`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::rng::RngStream;

/// The angles of one elementary two-level rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationAngles {
    pub phi: f64,
    pub psi: f64,
    pub chi: f64,
}

impl RotationAngles {
    /// 2x2 block `[[cos φ e^{iψ}, sin φ e^{iχ}], [-sin φ e^{-iχ}, cos φ e^{-iψ}]]`.
    pub fn block(&self) -> [[Complex64; 2]; 2] {
        let (s, c) = self.phi.sin_cos();
        let a = Complex64::from_polar(c, self.psi);
        let b = Complex64::from_polar(s, self.chi);
        [[a, b], [-b.conj(), a.conj()]]
    }
}

/// Draws a `d x d` unitary from the Haar measure.
pub fn hurwitz_unitary(rng: &mut RngStream, d: usize) -> Result<ComplexMatrix> {
    if d == 0 {
        return Err(Error::contract("unitary dimension must be at least 1"));
    }
    let alpha = rng.phase();
    let mut u = ComplexMatrix::identity(d);
    u.scale_in_place(Complex64::from_polar(1.0, alpha));
    for k in 1..d {
        for r in (1..=k).rev() {
            let xi = rng.unit();
            let angles = RotationAngles {
                phi: xi.powf(1.0 / (2.0 * r as f64)).asin(),
                psi: rng.phase(),
                chi: if r == 1 { rng.phase() } else { 0.0 },
            };
            u.rotate_columns(r - 1, r, angles.block());
        }
    }
    Ok(u)
}

/// ‖U U† - I‖₂.
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    let d = u.rows();
    (&u.outer_gram() - &ComplexMatrix::identity(d)).hs_norm()
}
