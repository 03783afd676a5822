//! State-generation methods. Every sampler draws only from the stream it is given.

mod gellmann;
mod mixed;
mod pure;
mod unitary;

pub use gellmann::{
    bloch_density, gellmann_basis, BlochSampler, GellMannBasis, GeneratorKind, DEFAULT_MAX_ATTEMPTS,
};
pub use mixed::{
    bures_density, bures_density_from, density_from_factor, density_from_spectrum, ginibre_density,
    opm_density, standard_density, OpmDomain,
};
pub use pure::{column_state, random_pure_state};
pub use unitary::{hurwitz_unitary, unitarity_defect, RotationAngles};
