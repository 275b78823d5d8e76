use num_complex::Complex64;

use super::measures::bipartite_entropy;
use crate::error::{invalid, Result};
use crate::statespace::{hermitian_eigen, partial_trace, PhaseRule, StateVector, SystemShape};

/// A subset is split off when its entropy is below this (bits).
pub const SEPARABILITY_THRESHOLD: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct ProductBlock {
    /// 0-based particle indices, ascending.
    pub particles: Vec<usize>,
    /// The block's own pure state, particles in ascending order.
    pub state: StateVector,
}

/// Finest split of the particles into mutually unentangled blocks.
///
/// Subsets are tried smallest first; any subset whose reduced state is pure
/// is split off and both halves are examined again.
pub fn product_structure(v: &StateVector) -> Result<Vec<ProductBlock>> {
    if !v.is_normalized() {
        return Err(invalid("product structure needs a normalized state"));
    }
    let particles: Vec<usize> = (0..v.shape().particles()).collect();
    let mut blocks = split(v.phase_aligned(PhaseRule::LargestMagnitude), particles)?;
    blocks.sort_by(|a, b| a.particles.cmp(&b.particles));
    Ok(blocks)
}

fn split(state: StateVector, particles: Vec<usize>) -> Result<Vec<ProductBlock>> {
    let n = particles.len();
    for size in 1..=n / 2 {
        for subset in combinations(n, size) {
            if bipartite_entropy(&state, &subset)? < SEPARABILITY_THRESHOLD {
                let rest: Vec<usize> = (0..n).filter(|k| !subset.contains(k)).collect();
                let left = restrict(&state, &subset)?;
                let right = restrict(&state, &rest)?;
                let mut out = split(left, subset.iter().map(|&k| particles[k]).collect())?;
                out.extend(split(right, rest.iter().map(|&k| particles[k]).collect())?);
                return Ok(out);
            }
        }
    }
    Ok(vec![ProductBlock { particles, state }])
}

/// Dominant eigenvector of the reduced state on `local` (local indices).
fn restrict(state: &StateVector, local: &[usize]) -> Result<StateVector> {
    let rho = partial_trace(state, local)?;
    let top = hermitian_eigen(rho.matrix())?.vectors.swap_remove(0);
    let shape = SystemShape::new(local.len(), state.shape().levels())?;
    let amps: Vec<Complex64> = top;
    Ok(StateVector::from_amplitudes(shape, amps)?
        .normalize()?
        .phase_aligned(PhaseRule::LargestMagnitude))
}

/// k-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            go(i + 1, n, k, current, out);
            current.pop();
        }
    }
    go(0, n, k, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::measures::wootters_concurrence;
    use crate::statespace::DensityMatrix;
    use approx::assert_abs_diff_eq;

    fn qubits(n: usize, terms: &[(f64, &[usize])]) -> StateVector {
        StateVector::from_real_terms(SystemShape::qubits(n).unwrap(), terms)
            .unwrap()
            .normalize()
            .unwrap()
    }

    #[test]
    fn singleton_times_singlet() {
        // (|X> + conj) = (|1> + |2>)_A (|12> - |21>)_BC up to normalization
        let v = qubits(
            3,
            &[(1.0, &[1, 1, 2]), (-1.0, &[1, 2, 1]), (1.0, &[2, 1, 2]), (-1.0, &[2, 2, 1])],
        );
        let blocks = product_structure(&v).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].particles, vec![0]);
        assert_eq!(blocks[1].particles, vec![1, 2]);
        let c = wootters_concurrence(&DensityMatrix::from_pure(&blocks[1].state).unwrap()).unwrap();
        assert_abs_diff_eq!(c, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn ghz_is_one_block() {
        let ghz = qubits(3, &[(1.0, &[1, 1, 1]), (1.0, &[2, 2, 2])]);
        let blocks = product_structure(&ghz).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].particles, vec![0, 1, 2]);
    }

    #[test]
    fn full_product() {
        let terms: Vec<(f64, Vec<usize>)> = (0..8)
            .map(|i| (1.0, vec![1 + (i >> 2 & 1), 1 + (i >> 1 & 1), 1 + (i & 1)]))
            .collect();
        let refs: Vec<(f64, &[usize])> = terms.iter().map(|(c, d)| (*c, d.as_slice())).collect();
        let v = qubits(3, &refs);
        let blocks = product_structure(&v).unwrap();
        assert_eq!(blocks.len(), 3);
        let s = 1.0 / 2f64.sqrt();
        for b in blocks {
            assert!(b.state.distance(&qubits(1, &[(s, &[1]), (s, &[2])])).unwrap() < 1e-12);
        }
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(4, 1).len(), 4);
    }
}
