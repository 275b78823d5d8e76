//! Entropies, concurrences, conjugate-state combinations and the three-qubit
//! claim checks.

mod claims;
mod measures;
mod mes;
mod structure;

pub use claims::{verify_claims_three_qubit, ClaimReport, ClaimStatus, ConventionResult, CLAIM_TOLERANCE};
pub use measures::{
    bipartite_entropy, concurrence_report, entropy_report, single_particle_entropies, spin_flip_concurrence,
    von_neumann_entropy, wootters_concurrence, Bipartitions, ConcurrenceReport, EntropyReport, PairConcurrence,
    SubsetEntropy, EIGEN_CLAMP,
};
pub use mes::{
    conjugate_state, conjugate_state_with, dicke_entropy_profile, generate_mes_basis, mes_pair, Combination,
    DickePoint, MesBasis, MesPair, MesState, MAX_MES_PARTICLES, SELF_CONJUGATE_TOLERANCE,
};
pub use structure::{product_structure, ProductBlock, SEPARABILITY_THRESHOLD};
