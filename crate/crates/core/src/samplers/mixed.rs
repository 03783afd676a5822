//! Mixed-state samplers: spectral (standard), overparametrized, Ginibre and Bures.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::rng::{ProbVector, RngStream};
use crate::samplers::hurwitz_unitary;
use crate::state::DensityMatrix;

/// Distribution of the real and imaginary parts of the overparametrized factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpmDomain {
    /// Uniform on `[0, 1]`. Confines qubit states to the x >= 0 half of the Bloch ball.
    UnitInterval,
    /// Uniform on `[-1, 1]`.
    SymmetricInterval,
    /// Standard normal (Ginibre entries).
    StandardNormal,
}

impl OpmDomain {
    fn draw(self, rng: &mut RngStream) -> f64 {
        match self {
            OpmDomain::UnitInterval => rng.unit(),
            OpmDomain::SymmetricInterval => rng.uniform_in(-1.0, 1.0),
            OpmDomain::StandardNormal => rng.normal(),
        }
    }
}

fn random_factor(
    rng: &mut RngStream,
    rows: usize,
    cols: usize,
    domain: OpmDomain,
) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re = domain.draw(rng);
        let im = domain.draw(rng);
        Complex64::new(re, im)
    })
}

/// `U diag(r) U†`, assembled as `V V†` with `V = U diag(√r)`.
pub fn density_from_spectrum(u: &ComplexMatrix, spectrum: &ProbVector) -> Result<DensityMatrix> {
    if !u.is_square() || u.rows() != spectrum.len() {
        return Err(Error::contract(format!(
            "spectrum of length {} does not fit a {}x{} unitary",
            spectrum.len(),
            u.rows(),
            u.cols()
        )));
    }
    let roots: Vec<f64> = spectrum.as_slice().iter().map(|r| r.sqrt()).collect();
    let v = ComplexMatrix::from_fn(u.rows(), u.cols(), |j, k| u[(j, k)] * roots[k]);
    let mut rho = v.outer_gram();
    renormalize(&mut rho)?;
    DensityMatrix::new(rho)
}

/// Spectral sampler: random spectrum, Haar eigenbasis.
pub fn standard_density(rng: &mut RngStream, d: usize) -> Result<DensityMatrix> {
    let spectrum = rng.unbiased_rdpd(d)?;
    let u = hurwitz_unitary(rng, d)?;
    density_from_spectrum(&u, &spectrum)
}

/// `A†A / Tr(A†A)` for any nonzero factor `A` (rows × cols gives a cols × cols state).
pub fn density_from_factor(a: &ComplexMatrix) -> Result<DensityMatrix> {
    let mut rho = a.gram();
    renormalize(&mut rho)?;
    DensityMatrix::new(rho)
}

/// Divides by the trace. Fails on a vanishing or non-finite trace.
fn renormalize(rho: &mut ComplexMatrix) -> Result<()> {
    let tr = rho.trace().re;
    if !tr.is_finite() || tr <= 1e-300 {
        return Err(Error::numerical(format!(
            "cannot normalize matrix with trace {tr}"
        )));
    }
    *rho = ComplexMatrix::from_fn(rho.rows(), rho.cols(), |j, k| rho[(j, k)] / tr);
    Ok(())
}

/// Redraws the factor until its trace is usable; the degenerate draw has probability zero.
fn sample_factor_density(
    rng: &mut RngStream,
    mut build: impl FnMut(&mut RngStream) -> Result<ComplexMatrix>,
) -> Result<DensityMatrix> {
    const MAX_REDRAWS: usize = 64;
    for _ in 0..MAX_REDRAWS {
        let mut rho = build(rng)?;
        if renormalize(&mut rho).is_ok() {
            return DensityMatrix::new(rho);
        }
    }
    Err(Error::numerical("factor matrix vanished on every redraw"))
}

/// Overparametrized sampler: `ρ = A†A / ‖A‖₂²` with a square factor.
pub fn opm_density(rng: &mut RngStream, d: usize, domain: OpmDomain) -> Result<DensityMatrix> {
    if d == 0 {
        return Err(Error::contract("dimension must be at least 1"));
    }
    sample_factor_density(rng, |rng| Ok(random_factor(rng, d, d, domain).gram()))
}

/// Ginibre sampler with a `d' × d` factor; `d' = d` gives the Hilbert-Schmidt
/// measure, other shapes an induced measure of rank at most `min(d', d)`.
pub fn ginibre_density(rng: &mut RngStream, d_prime: usize, d: usize) -> Result<DensityMatrix> {
    if d == 0 || d_prime == 0 {
        return Err(Error::contract("Ginibre dimensions must be at least 1"));
    }
    sample_factor_density(rng, |rng| {
        Ok(random_factor(rng, d_prime, d, OpmDomain::StandardNormal).gram())
    })
}

/// `(I + U) A A† (I + U†)` normalized, with Ginibre `A` and Haar `U`.
pub fn bures_density_from(u: &ComplexMatrix, a: &ComplexMatrix) -> Result<DensityMatrix> {
    let mut shifted = u.clone();
    for k in 0..u.rows() {
        shifted[(k, k)] += Complex64::new(1.0, 0.0);
    }
    let m = shifted.multiply(a)?;
    let mut rho = m.outer_gram();
    renormalize(&mut rho)?;
    DensityMatrix::new(rho)
}

pub fn bures_density(rng: &mut RngStream, d: usize) -> Result<DensityMatrix> {
    if d == 0 {
        return Err(Error::contract("dimension must be at least 1"));
    }
    sample_factor_density(rng, |rng| {
        let a = random_factor(rng, d, d, OpmDomain::StandardNormal);
        let mut shifted = hurwitz_unitary(rng, d)?;
        for k in 0..d {
            shifted[(k, k)] += Complex64::new(1.0, 0.0);
        }
        Ok(shifted.multiply(&a)?.outer_gram())
    })
}
