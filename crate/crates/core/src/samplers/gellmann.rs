//! Generalized Gell-Mann generators and the Bloch-vector rejection sampler.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::rng::RngStream;
use crate::state::{DensityMatrix, DENSITY_PSD_TOL};

/// Attempt cap used when callers do not choose one.
pub const DEFAULT_MAX_ATTEMPTS: u64 = 1_000_000;

/// Which of the three generator families a generator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// `|j⟩⟨k| + |k⟩⟨j|`, `j < k`.
    Symmetric { j: usize, k: usize },
    /// `-i|j⟩⟨k| + i|k⟩⟨j|`, `j < k`.
    Antisymmetric { j: usize, k: usize },
    /// `(Σ_{m<l} |m⟩⟨m| - l|l⟩⟨l|) / √(l(l+1)/2)`, `1 <= l <= d-1`.
    Diagonal { l: usize },
}

impl GeneratorKind {
    /// Range of the Bloch coefficient `γ = Tr(ρΓ)/2` over all density matrices.
    pub fn coefficient_range(&self) -> (f64, f64) {
        match *self {
            GeneratorKind::Symmetric { .. } | GeneratorKind::Antisymmetric { .. } => (-0.5, 0.5),
            GeneratorKind::Diagonal { l } => {
                let l = l as f64;
                (
                    -(l / (2.0 * (l + 1.0))).sqrt(),
                    1.0 / (2.0 * l * (l + 1.0)).sqrt(),
                )
            }
        }
    }
}

/// The `d² - 1` generalized Gell-Mann matrices of SU(d).
///
/// Ordered symmetric family first, then antisymmetric, then diagonal; the
/// off-diagonal families run over `(j, k)` with `j < k` in row-major order.
#[derive(Debug, Clone)]
pub struct GellMannBasis {
    dim: usize,
    kinds: Vec<GeneratorKind>,
    generators: Vec<ComplexMatrix>,
}

impl GellMannBasis {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::contract(format!(
                "Gell-Mann basis needs d >= 2, got {d}"
            )));
        }
        let pairs: Vec<(usize, usize)> = (0..d)
            .flat_map(|j| (j + 1..d).map(move |k| (j, k)))
            .collect();
        let mut kinds = Vec::with_capacity(d * d - 1);
        kinds.extend(
            pairs
                .iter()
                .map(|&(j, k)| GeneratorKind::Symmetric { j, k }),
        );
        kinds.extend(
            pairs
                .iter()
                .map(|&(j, k)| GeneratorKind::Antisymmetric { j, k }),
        );
        kinds.extend((1..d).map(|l| GeneratorKind::Diagonal { l }));
        let generators = kinds
            .iter()
            .map(|kind| generator_matrix(d, *kind))
            .collect();
        Ok(Self {
            dim: d,
            kinds,
            generators,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    pub fn kinds(&self) -> &[GeneratorKind] {
        &self.kinds
    }

    /// `I/d + Σ γ_j Γ_j`, summed generator by generator.
    pub fn assemble(&self, gamma: &[f64]) -> Result<ComplexMatrix> {
        if gamma.len() != self.len() {
            return Err(Error::contract(format!(
                "expected {} Bloch coefficients, got {}",
                self.len(),
                gamma.len()
            )));
        }
        let mut rho = ComplexMatrix::identity(self.dim).scale(1.0 / self.dim as f64);
        for (g, gen) in gamma.iter().zip(&self.generators) {
            rho = &rho + &gen.scale(*g);
        }
        Ok(rho)
    }
}

fn generator_matrix(d: usize, kind: GeneratorKind) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d, d);
    match kind {
        GeneratorKind::Symmetric { j, k } => {
            m[(j, k)] = Complex64::new(1.0, 0.0);
            m[(k, j)] = Complex64::new(1.0, 0.0);
        }
        GeneratorKind::Antisymmetric { j, k } => {
            m[(j, k)] = Complex64::new(0.0, -1.0);
            m[(k, j)] = Complex64::new(0.0, 1.0);
        }
        GeneratorKind::Diagonal { l } => {
            let norm = ((l * (l + 1)) as f64 / 2.0).sqrt();
            for m_ in 0..l {
                m[(m_, m_)] = Complex64::new(1.0 / norm, 0.0);
            }
            m[(l, l)] = Complex64::new(-(l as f64) / norm, 0.0);
        }
    }
    m
}

pub fn gellmann_basis(d: usize) -> Result<GellMannBasis> {
    GellMannBasis::new(d)
}

/// Rejection sampler over the Bloch-vector parametrization.
///
/// Every coefficient is drawn uniformly from the range its generator's
/// spectrum allows; candidates that are not positive semidefinite are
/// redrawn. The acceptance rate collapses quickly with `d`.
#[derive(Debug, Clone)]
pub struct BlochSampler {
    basis: GellMannBasis,
    ranges: Vec<(f64, f64)>,
    max_attempts: u64,
}

impl BlochSampler {
    pub fn new(d: usize, max_attempts: u64) -> Result<Self> {
        if max_attempts == 0 {
            return Err(Error::contract("max_attempts must be at least 1"));
        }
        let basis = GellMannBasis::new(d)?;
        let ranges = basis
            .kinds()
            .iter()
            .map(GeneratorKind::coefficient_range)
            .collect();
        Ok(Self {
            basis,
            ranges,
            max_attempts,
        })
    }

    pub fn basis(&self) -> &GellMannBasis {
        &self.basis
    }

    pub fn max_attempts(&self) -> u64 {
        self.max_attempts
    }

    /// Draws one Bloch vector from the coefficient box.
    pub fn draw_coefficients(&self, rng: &mut RngStream) -> Vec<f64> {
        self.ranges
            .iter()
            .map(|&(lo, hi)| rng.uniform_in(lo, hi))
            .collect()
    }

    /// Builds `I/d + Σ γ_j Γ_j` entry-wise, without touching the generator matrices.
    pub fn candidate(&self, gamma: &[f64]) -> ComplexMatrix {
        let d = self.basis.dim();
        let mut rho = ComplexMatrix::identity(d).scale(1.0 / d as f64);
        for (kind, &g) in self.basis.kinds().iter().zip(gamma) {
            match *kind {
                GeneratorKind::Symmetric { j, k } => {
                    rho[(j, k)].re += g;
                    rho[(k, j)].re += g;
                }
                GeneratorKind::Antisymmetric { j, k } => {
                    rho[(j, k)].im -= g;
                    rho[(k, j)].im += g;
                }
                GeneratorKind::Diagonal { l } => {
                    let w = g / ((l * (l + 1)) as f64 / 2.0).sqrt();
                    for m in 0..l {
                        rho[(m, m)].re += w;
                    }
                    rho[(l, l)].re -= l as f64 * w;
                }
            }
        }
        rho
    }

    /// Returns the accepted state and how many candidates were drawn.
    pub fn sample(&self, rng: &mut RngStream) -> Result<(DensityMatrix, u64)> {
        let d = self.basis.dim();
        for attempt in 1..=self.max_attempts {
            let gamma = self.draw_coefficients(rng);
            let rho = self.candidate(&gamma);
            if quick_reject(&rho) {
                continue;
            }
            if rho.is_positive_semidefinite(DENSITY_PSD_TOL)? {
                return Ok((DensityMatrix::new(rho)?, attempt));
            }
        }
        Err(Error::RejectionExhausted {
            dim: d,
            attempts: self.max_attempts,
        })
    }
}

/// Necessary conditions for positivity: nonnegative diagonal and 2x2 principal minors.
fn quick_reject(rho: &ComplexMatrix) -> bool {
    let d = rho.rows();
    for j in 0..d {
        if rho[(j, j)].re < -DENSITY_PSD_TOL {
            return true;
        }
    }
    for j in 0..d {
        for k in j + 1..d {
            let (a, b) = (
                rho[(j, j)].re + DENSITY_PSD_TOL,
                rho[(k, k)].re + DENSITY_PSD_TOL,
            );
            if rho[(j, k)].norm_sqr() > a * b {
                return true;
            }
        }
    }
    false
}

pub fn bloch_density(
    rng: &mut RngStream,
    d: usize,
    max_attempts: u64,
) -> Result<(DensityMatrix, u64)> {
    BlochSampler::new(d, max_attempts)?.sample(rng)
}
