use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::rng::RngStream;
use crate::state::StateVector;

/// `ψ_j = √p_j e^{iθ_j}` with an unbiased random distribution `p` and uniform phases.
pub fn random_pure_state(rng: &mut RngStream, d: usize) -> Result<StateVector> {
    let p = rng.unbiased_rdpd(d)?;
    let theta = rng.random_phases(d);
    let amps = p
        .as_slice()
        .iter()
        .zip(theta)
        .map(|(&pj, t)| Complex64::from_polar(pj.sqrt(), t))
        .collect();
    StateVector::new(amps)
}

/// Column `k` of a unitary, as a state vector.
pub fn column_state(u: &ComplexMatrix, k: usize) -> Result<StateVector> {
    if k >= u.cols() {
        return Err(Error::contract(format!(
            "column {k} out of range for {} columns",
            u.cols()
        )));
    }
    StateVector::new(u.column(k))
}
