//! Conjugate states and the basis obtained by adding and subtracting them.

use serde::{Deserialize, Serialize};

use super::measures::bipartite_entropy;
use crate::error::{invalid, Error, Result};
use crate::schur_weyl::{couple_spins, dicke_state, CoupledLabel, HalfInt, MAX_COUPLED_PARTICLES};
use crate::statespace::{level_reversal, Permutation, PhaseRule, StateVector, SystemShape};

pub const MAX_MES_PARTICLES: usize = 10;

/// States whose overlap with their conjugate exceeds `1 - SELF_CONJUGATE_TOLERANCE`
/// are kept as they are.
pub const SELF_CONJUGATE_TOLERANCE: f64 = 1e-9;

/// Level reversal on every particle (1 ↔ 2 for qubits), then the global phase
/// fixed so the largest amplitude is real positive.
pub fn conjugate_state(v: &StateVector) -> StateVector {
    conjugate_state_with(v, &level_reversal(v.shape().levels())).expect("reversal matches level count")
}

/// Like [`conjugate_state`] with an arbitrary level permutation.
pub fn conjugate_state_with(v: &StateVector, levels: &Permutation) -> Result<StateVector> {
    Ok(v.apply_level_permutation(levels)?.phase_aligned(PhaseRule::LargestMagnitude))
}

#[derive(Clone, Debug, PartialEq)]
pub enum MesPair {
    SelfConjugate(StateVector),
    Pair { plus: StateVector, minus: StateVector },
}

impl MesPair {
    pub fn states(&self) -> Vec<&StateVector> {
        match self {
            MesPair::SelfConjugate(v) => vec![v],
            MesPair::Pair { plus, minus } => vec![plus, minus],
        }
    }
}

/// `v ± conjugate(v)`, normalized; `v` alone when it is its own conjugate.
///
/// The two sums are orthogonal only when `<c|v>` is real. When it is not
/// (complex inputs), `c` is rotated by the phase of `<c|v>` first.
pub fn mes_pair(v: &StateVector) -> Result<MesPair> {
    let v = v.normalize()?;
    let mut c = conjugate_state(&v);
    let overlap = c.inner(&v)?;
    if overlap.norm() > 1.0 - SELF_CONJUGATE_TOLERANCE {
        return Ok(MesPair::SelfConjugate(v));
    }
    if overlap.im.abs() > 1e-12 {
        c = c.scale(overlap / overlap.norm());
    }
    Ok(MesPair::Pair { plus: (&v + &c).normalize()?, minus: (&v - &c).normalize()? })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Combination {
    Plus,
    Minus,
    SelfConjugate,
}

impl Combination {
    pub fn symbol(self) -> &'static str {
        match self {
            Combination::Plus => "+",
            Combination::Minus => "-",
            Combination::SelfConjugate => "self",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MesState {
    pub state: StateVector,
    pub source: CoupledLabel,
    /// `|j, -m; d>`, absent for self-conjugate states.
    pub partner: Option<CoupledLabel>,
    pub combination: Combination,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MesBasis {
    pub shape: SystemShape,
    pub states: Vec<MesState>,
}

/// Combine every `|j, m; d>` (m > 0) with its conjugate; `m = 0` states
/// are self-conjugate and kept. Yields `2^N` orthonormal states.
pub fn generate_mes_basis(particles: usize) -> Result<MesBasis> {
    if particles > MAX_MES_PARTICLES {
        return Err(Error::ResourceLimit(format!(
            "entangled-basis generation is limited to N <= {MAX_MES_PARTICLES}, got {particles}"
        )));
    }
    let sectors = couple_spins(particles)?;
    let shape = SystemShape::qubits(particles)?;
    let mut states = Vec::with_capacity(shape.dim());
    for sector in &sectors {
        for member in &sector.members {
            let label = member.coupled.expect("coupled basis carries labels");
            if label.m.twice() < 0 {
                continue;
            }
            match mes_pair(&member.state)? {
                MesPair::SelfConjugate(state) => states.push(MesState {
                    state,
                    source: label,
                    partner: None,
                    combination: Combination::SelfConjugate,
                }),
                MesPair::Pair { plus, minus } => {
                    let partner = Some(CoupledLabel { m: -label.m, ..label });
                    states.push(MesState { state: plus, source: label, partner, combination: Combination::Plus });
                    states.push(MesState { state: minus, source: label, partner, combination: Combination::Minus });
                }
            }
        }
    }
    Ok(MesBasis { shape, states })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DickePoint {
    pub m: HalfInt,
    pub entropy: f64,
}

/// Single-particle entropy along the symmetric ladder `|N/2, m>`, from
/// `m = N/2` down to `-N/2`.
pub fn dicke_entropy_profile(particles: usize) -> Result<Vec<DickePoint>> {
    if particles == 0 {
        return Err(invalid("N must be at least 1"));
    }
    if particles > MAX_COUPLED_PARTICLES {
        return Err(Error::ResourceLimit(format!(
            "Dicke profile is limited to N <= {MAX_COUPLED_PARTICLES}, got {particles}"
        )));
    }
    (0..=particles)
        .map(|excitations| {
            let m = HalfInt::from_twice(particles as i32 - 2 * excitations as i32);
            let entropy = if particles == 1 {
                0.0
            } else {
                bipartite_entropy(&dicke_state(particles, excitations)?, &[0])?
            };
            Ok(DickePoint { m, entropy })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn qubits(n: usize, terms: &[(f64, &[usize])]) -> StateVector {
        StateVector::from_real_terms(SystemShape::qubits(n).unwrap(), terms)
            .unwrap()
            .normalize()
            .unwrap()
    }

    #[test]
    fn conjugates() {
        let up = qubits(3, &[(1.0, &[1, 1, 1])]);
        assert_eq!(conjugate_state(&up), qubits(3, &[(1.0, &[2, 2, 2])]));
        let z = qubits(3, &[(1.0, &[1, 1, 2]), (1.0, &[1, 2, 1]), (1.0, &[2, 1, 1])]);
        let zbar = qubits(3, &[(1.0, &[2, 2, 1]), (1.0, &[2, 1, 2]), (1.0, &[1, 2, 2])]);
        assert!(conjugate_state(&z).distance(&zbar).unwrap() < 1e-15);
        let singlet = qubits(2, &[(1.0, &[1, 2]), (-1.0, &[2, 1])]);
        assert!(conjugate_state(&singlet).distance(&singlet).unwrap() < 1e-15);
    }

    #[test]
    fn pairs() {
        let s = 1.0 / 2f64.sqrt();
        match mes_pair(&qubits(2, &[(1.0, &[1, 1])])).unwrap() {
            MesPair::Pair { plus, minus } => {
                assert!(plus.distance(&qubits(2, &[(s, &[1, 1]), (s, &[2, 2])])).unwrap() < 1e-15);
                assert!(minus.distance(&qubits(2, &[(s, &[1, 1]), (-s, &[2, 2])])).unwrap() < 1e-15);
            }
            other => panic!("expected a pair, got {other:?}"),
        }
        let ghz = mes_pair(&qubits(3, &[(1.0, &[1, 1, 1])])).unwrap();
        assert_eq!(ghz.states().len(), 2);
        let singlet = qubits(2, &[(1.0, &[1, 2]), (-1.0, &[2, 1])]);
        match mes_pair(&singlet).unwrap() {
            MesPair::SelfConjugate(v) => assert!(v.distance(&singlet).unwrap() < 1e-15),
            other => panic!("expected the singlet back, got {other:?}"),
        }
    }

    #[test]
    fn basis_counts() {
        for n in 1..=5 {
            assert_eq!(generate_mes_basis(n).unwrap().states.len(), 1 << n);
        }
        assert!(matches!(generate_mes_basis(11), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn dicke_profile_small() {
        let p = dicke_entropy_profile(2).unwrap();
        let values: Vec<f64> = p.iter().map(|d| d.entropy).collect();
        assert_abs_diff_eq!(values[0], 0.0);
        assert_abs_diff_eq!(values[1], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(values[2], 0.0);
        assert_eq!(p[1].m, HalfInt::ZERO);
        assert!(dicke_entropy_profile(13).is_err());
        assert!(dicke_entropy_profile(0).is_err());
    }
}
