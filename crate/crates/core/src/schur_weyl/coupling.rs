//! Sequential spin-1/2 coupling for qubits.
//!
//! Level 1 is spin up (`m = +1/2`). Coupling starts at the last particle and
//! prepends one particle at a time, with the already-coupled spin as the
//! first angular momentum in the Clebsch–Gordan coefficient. Each finished
//! multiplet is then given one overall sign so that the largest amplitude of
//! its `m = j` state is positive (ties go to the lowest basis index).

use num_complex::Complex64;

use super::{CoupledLabel, HalfInt, SectorMember, SymmetrySector};
use crate::error::{invalid, Error, Result};
use crate::partitions::Partition;
use crate::statespace::{StateVector, SystemShape};

pub const MAX_COUPLED_PARTICLES: usize = 12;

struct Multiplet {
    /// Twice the total spin.
    j2: i32,
    /// Amplitudes over the coupled particles, `m = j` first.
    states: Vec<Vec<f64>>,
}

impl Multiplet {
    fn component(&self, m2: i32) -> Option<&[f64]> {
        if m2.abs() > self.j2 || (self.j2 - m2) % 2 != 0 {
            return None;
        }
        Some(&self.states[((self.j2 - m2) / 2) as usize])
    }
}

/// Prepend one spin-1/2 (as the new most significant digit).
fn prepend(parent: &Multiplet, dim: usize, raise: bool) -> Multiplet {
    let j1 = parent.j2;
    let j2 = if raise { j1 + 1 } else { j1 - 1 };
    let denom = 2.0 * (j1 + 1) as f64;
    let states = (0..=j2)
        .map(|k| {
            let m2 = j2 - 2 * k;
            let mut out = vec![0.0; 2 * dim];
            let up = ((j1 + m2 + 1) as f64 / denom).sqrt();
            let down = ((j1 - m2 + 1) as f64 / denom).sqrt();
            // new particle up: parent at m - 1/2
            if let Some(src) = parent.component(m2 - 1) {
                let c = if raise { up } else { -down };
                for (i, &a) in src.iter().enumerate() {
                    out[i] += c * a;
                }
            }
            // new particle down: parent at m + 1/2
            if let Some(src) = parent.component(m2 + 1) {
                let c = if raise { down } else { up };
                for (i, &a) in src.iter().enumerate() {
                    out[dim + i] += c * a;
                }
            }
            out
        })
        .collect();
    Multiplet { j2, states }
}

/// The complete coupled `|j, m; d>` basis of `particles` qubits.
///
/// Sectors are ordered by λ = `[N/2 + j, N/2 - j]` (so `j` descending), then
/// by `d`; members run from `m = j` down to `-j`. The multiplicity index
/// follows the intermediate-spin path, larger intermediate spins first.
pub fn couple_spins(particles: usize) -> Result<Vec<SymmetrySector>> {
    if particles == 0 {
        return Err(invalid("N must be at least 1"));
    }
    if particles > MAX_COUPLED_PARTICLES {
        return Err(Error::ResourceLimit(format!(
            "spin coupling is limited to N <= {MAX_COUPLED_PARTICLES}, got {particles}"
        )));
    }
    let shape = SystemShape::qubits(particles)?;

    let mut multiplets = vec![Multiplet { j2: 1, states: vec![vec![1.0, 0.0], vec![0.0, 1.0]] }];
    let mut dim = 2;
    for _ in 1..particles {
        let mut next = Vec::with_capacity(2 * multiplets.len());
        for parent in &multiplets {
            next.push(prepend(parent, dim, true));
            if parent.j2 > 0 {
                next.push(prepend(parent, dim, false));
            }
        }
        multiplets = next;
        dim *= 2;
    }
    // stable: keeps the path order inside each j
    multiplets.sort_by_key(|m| std::cmp::Reverse(m.j2));

    let mut sectors: Vec<SymmetrySector> = Vec::new();
    for multiplet in multiplets {
        let j2 = multiplet.j2;
        let d = 1 + sectors
            .iter()
            .filter(|s| s.members[0].coupled.is_some_and(|c| c.j.twice() == j2))
            .count();
        let sign = top_sign(&multiplet.states[0]);
        let upper = (particles as i32 + j2) / 2;
        let lower = particles - upper as usize;
        let parts = if lower == 0 { vec![upper as usize] } else { vec![upper as usize, lower] };
        let lambda = Partition::new(parts)?;
        let members = multiplet
            .states
            .iter()
            .enumerate()
            .map(|(k, amps)| {
                let m2 = j2 - 2 * k as i32;
                let amps = amps.iter().map(|&a| Complex64::new(sign * a, 0.0)).collect();
                let ups = ((particles as i32 + m2) / 2) as usize;
                Ok(SectorMember {
                    state: StateVector::from_amplitudes(shape, amps)?,
                    weight: vec![ups, particles - ups],
                    coupled: Some(CoupledLabel {
                        j: HalfInt::from_twice(j2),
                        m: HalfInt::from_twice(m2),
                        d,
                    }),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        sectors.push(SymmetrySector { lambda, multiplicity: d, members });
    }
    Ok(sectors)
}

fn top_sign(amps: &[f64]) -> f64 {
    let max = amps.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    amps.iter()
        .find(|a| a.abs() >= max - 1e-12)
        .map_or(1.0, |a| a.signum())
}

/// `|N/2, N/2 - excitations>`: equal superposition of all basis states with
/// `excitations` particles in level 2.
pub fn dicke_state(particles: usize, excitations: usize) -> Result<StateVector> {
    if excitations > particles {
        return Err(invalid(format!("{excitations} excitations for {particles} particles")));
    }
    let shape = SystemShape::qubits(particles)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); shape.dim()];
    for (i, a) in amps.iter_mut().enumerate() {
        if i.count_ones() as usize == excitations {
            *a = Complex64::new(1.0, 0.0);
        }
    }
    StateVector::from_amplitudes(shape, amps)?.normalize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn two_qubits() {
        let sectors = couple_spins(2).unwrap();
        assert_eq!(sectors.len(), 2);
        assert_eq!(sectors[0].len(), 3);
        assert_eq!(sectors[1].len(), 1);
        let s = 1.0 / 2f64.sqrt();
        let shape = SystemShape::qubits(2).unwrap();
        let triplet0 = StateVector::from_real_terms(shape, &[(s, &[1, 2]), (s, &[2, 1])]).unwrap();
        let singlet = StateVector::from_real_terms(shape, &[(s, &[1, 2]), (-s, &[2, 1])]).unwrap();
        assert!(sectors[0].members[1].state.distance(&triplet0).unwrap() < 1e-15);
        assert!(sectors[1].members[0].state.distance(&singlet).unwrap() < 1e-15);
    }

    #[test]
    fn three_qubit_mixed_symmetry() {
        let sectors = couple_spins(3).unwrap();
        let shape = SystemShape::qubits(3).unwrap();
        let a = 1.0 / 6f64.sqrt();
        let y = StateVector::from_real_terms(shape, &[(2.0 * a, &[2, 1, 1]), (-a, &[1, 1, 2]), (-a, &[1, 2, 1])])
            .unwrap();
        let s = 1.0 / 2f64.sqrt();
        let x = StateVector::from_real_terms(shape, &[(s, &[1, 1, 2]), (-s, &[1, 2, 1])]).unwrap();
        assert_eq!(sectors[1].members[0].coupled.unwrap().to_string(), "|1/2,1/2;1>");
        assert!(sectors[1].members[0].state.distance(&y).unwrap() < 1e-15);
        assert!(sectors[2].members[0].state.distance(&x).unwrap() < 1e-15);
    }

    #[test]
    fn caps() {
        assert!(couple_spins(0).is_err());
        assert!(matches!(couple_spins(13), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn dicke_states() {
        let w = dicke_state(3, 1).unwrap();
        let third = 1.0 / 3f64.sqrt();
        for idx in [1, 2, 4] {
            assert_abs_diff_eq!(w.amplitudes()[idx].re, third, epsilon = 1e-15);
        }
        assert!(dicke_state(3, 4).is_err());
    }
}
