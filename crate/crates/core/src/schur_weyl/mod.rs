//! Symmetry-adapted bases of the N-particle space.
//!
//! Two routes are provided. [`build_decomposition`] works for any level count
//! by applying Young symmetrizers to the computational basis. [`couple_spins`]
//! builds the qubit `|j, m; d>` basis by adding one spin-1/2 at a time.

mod coupling;
mod halfint;
mod symmetrizer;
mod tableau;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::partitions::Partition;
use crate::statespace::StateVector;

pub use coupling::{couple_spins, dicke_state, MAX_COUPLED_PARTICLES};
pub use halfint::HalfInt;
pub use symmetrizer::{
    build_decomposition, young_symmetrizer_apply, MAX_SYMMETRIZER_DIM, MAX_SYMMETRIZER_PARTICLES,
};
pub use tableau::{standard_tableaux, StandardTableau};

/// Collective-spin label of a qubit basis state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoupledLabel {
    pub j: HalfInt,
    pub m: HalfInt,
    /// 1-based multiplicity index.
    pub d: usize,
}

impl std::fmt::Display for CoupledLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "|{},{};{}>", self.j, self.m, self.d)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectorMember {
    pub state: StateVector,
    /// How many particles sit in each level.
    pub weight: Vec<usize>,
    /// Present for qubits.
    pub coupled: Option<CoupledLabel>,
}

/// One copy of a unitary-group irrep inside the λ-isotypic block.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetrySector {
    pub lambda: Partition,
    /// 1-based, at most `f^λ`.
    pub multiplicity: usize,
    pub members: Vec<SectorMember>,
}

impl SymmetrySector {
    pub fn states(&self) -> impl Iterator<Item = &StateVector> {
        self.members.iter().map(|m| &m.state)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorWeight {
    pub lambda: Partition,
    pub multiplicity: usize,
    pub weight: f64,
}

/// Squared norm of the projection of `v` onto every sector, in sector order.
pub fn sector_projections(v: &StateVector, sectors: &[SymmetrySector]) -> Result<Vec<SectorWeight>> {
    sectors
        .iter()
        .map(|sector| {
            let mut weight = 0.0;
            for state in sector.states() {
                if state.shape() != v.shape() {
                    return Err(invalid(format!(
                        "sector states have shape {}, input has {}",
                        state.shape(),
                        v.shape()
                    )));
                }
                weight += state.inner(v)?.norm_sqr();
            }
            Ok(SectorWeight { lambda: sector.lambda.clone(), multiplicity: sector.multiplicity, weight })
        })
        .collect()
}

/// Content vector of a 0-based digit string.
pub(crate) fn weight_of(digits: &[usize], levels: usize) -> Vec<usize> {
    let mut w = vec![0; levels];
    for &d in digits {
        w[d] += 1;
    }
    w
}

/// `(j, m)` for a qubit weight inside the block of `lambda`.
pub(crate) fn qubit_label(lambda: &Partition, weight: &[usize], d: usize) -> CoupledLabel {
    let parts = lambda.parts();
    let second = parts.get(1).copied().unwrap_or(0);
    CoupledLabel {
        j: HalfInt::from_twice((parts[0] - second) as i32),
        m: HalfInt::from_twice(weight[0] as i32 - weight[1] as i32),
        d,
    }
}
