//! Exact partial-transpose certification of genuine multipartite
//! entanglement in reduced states of qudit Dicke states.
//!
//! - [`multiindex`]: occupation numbers, multinomials, full and restricted index sets.
//! - [`dicke`]: Schmidt coefficients, reduced states and their pair-basis operator form.
//! - [`witness`]: the two-term witness, its exact discriminant, and certification.
//! - [`oracle`]: dense computational-basis reference computations.
//! - [`sweep`]: desk-scale oracle and certification sweeps.
//!
//! Construction is exact (big rationals); double precision enters only at
//! eigenvalue computation.

pub mod dicke;
pub mod error;
mod linalg;
pub mod multiindex;
pub mod oracle;
pub mod par;
pub mod radical;
pub mod sweep;
pub mod witness;

pub use dicke::{
    bipartite_operator, partial_transpose, reduced_state, schmidt_coefficient, schmidt_decomposition,
    BipartiteSymmetricOperator, EmbedDense, ReducedDickeState, SchmidtCoefficient,
};
pub use error::{DickeError, Result};
pub use linalg::symmetric_spectrum;
pub use multiindex::{enumerate_full, enumerate_restricted, multinomial, qubit_bounds, IndexSet, OccupationIndex};
pub use oracle::DenseLimits;
pub use par::Execution;
pub use radical::Radical;
pub use witness::{
    certify, certify_with, choose_witness, hermitian_form, optimal_amplitudes, spectral_min, two_factor_check,
    witness_sandwich, CertificationRecord, CertificationReport, HermitianForm2, OptimalAmplitudes, Verdict,
    WitnessChoice,
};
