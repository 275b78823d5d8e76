use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::statespace::{hermitian_eigen, partial_trace, ComplexMatrix, DensityMatrix, StateVector};

/// Eigenvalues in `[-EIGEN_CLAMP, 0)` count as zero.
pub const EIGEN_CLAMP: f64 = 1e-10;

/// `-Σ λ log2 λ` over the spectrum of `rho`, in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let mut s = 0.0;
    for lambda in rho.eigenvalues()? {
        if lambda < -EIGEN_CLAMP {
            return Err(invalid(format!("density matrix has eigenvalue {lambda:.3e}")));
        }
        if lambda > 0.0 {
            s -= lambda * lambda.log2();
        }
    }
    Ok(s.max(0.0))
}

/// Entropy of the reduced state on `subset` (0-based particles).
pub fn bipartite_entropy(v: &StateVector, subset: &[usize]) -> Result<f64> {
    von_neumann_entropy(&partial_trace(v, subset)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bipartitions {
    /// Only the single-particle cuts.
    Singles,
    /// Every cut once: subsets no larger than their complement, and for even
    /// splits only the side containing particle 1.
    All,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsetEntropy {
    /// 0-based particle indices, ascending.
    pub subset: Vec<usize>,
    pub entropy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub per_particle: Vec<f64>,
    pub bipartitions: Vec<SubsetEntropy>,
}

pub fn single_particle_entropies(v: &StateVector) -> Result<EntropyReport> {
    entropy_report(v, Bipartitions::Singles)
}

pub fn entropy_report(v: &StateVector, cuts: Bipartitions) -> Result<EntropyReport> {
    if !v.is_normalized() {
        return Err(invalid("entropies need a normalized state"));
    }
    let n = v.shape().particles();
    if n == 1 {
        return Ok(EntropyReport { per_particle: vec![0.0], bipartitions: Vec::new() });
    }
    let per_particle = (0..n).map(|k| bipartite_entropy(v, &[k])).collect::<Result<Vec<_>>>()?;
    let bipartitions = match cuts {
        Bipartitions::Singles => per_particle
            .iter()
            .enumerate()
            .map(|(k, &entropy)| SubsetEntropy { subset: vec![k], entropy })
            .collect(),
        Bipartitions::All => {
            let mut subsets = cut_representatives(n);
            subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            subsets
                .into_iter()
                .map(|subset| {
                    let entropy = bipartite_entropy(v, &subset)?;
                    Ok(SubsetEntropy { subset, entropy })
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(EntropyReport { per_particle, bipartitions })
}

fn cut_representatives(n: usize) -> Vec<Vec<usize>> {
    (1u64..(1 << n) - 1)
        .map(|mask| (0..n).filter(|k| mask & (1 << k) != 0).collect::<Vec<_>>())
        .filter(|s| 2 * s.len() < n || (2 * s.len() == n && s[0] == 0))
        .collect()
}

/// `σ_y ⊗ σ_y` in the computational basis.
fn sigma_yy() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[0.0, 0.0, 0.0, -1.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[-1.0, 0.0, 0.0, 0.0],
    ])
    .expect("4x4")
}

/// Spectral weights below this are rounding noise; their square roots would
/// otherwise leak ~1e-8 into the concurrence.
const WEIGHT_CUTOFF: f64 = 1e-13;

/// Wootters concurrence of a two-qubit density matrix.
///
/// With `ρ = W W†` (columns `√p_k |v_k>`), the square roots of the
/// eigenvalues of `ρ (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)` are the singular values of
/// `τ = Wᵀ (σ_y⊗σ_y) W`. Those are read off the Hermitian dilation
/// `[[0, τ], [τ†, 0]]` so no square root of a computed eigenvalue is taken.
pub fn wootters_concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(invalid(format!("Wootters concurrence needs a 4x4 matrix, got {0}x{0}", rho.dim())));
    }
    let yy = sigma_yy();
    let eig = hermitian_eigen(rho.matrix())?;
    let columns: Vec<Vec<Complex64>> = eig
        .values
        .iter()
        .zip(&eig.vectors)
        .filter(|(p, _)| **p > WEIGHT_CUTOFF)
        .map(|(p, v)| v.iter().map(|x| x * p.sqrt()).collect())
        .collect();
    let r = columns.len();
    if r == 0 {
        return Ok(0.0);
    }

    let mut dilation = ComplexMatrix::zeros(2 * r);
    for a in 0..r {
        for b in 0..r {
            let mut t = Complex64::new(0.0, 0.0);
            for i in 0..4 {
                for j in 0..4 {
                    t += columns[a][i] * yy[(i, j)] * columns[b][j];
                }
            }
            dilation[(a, r + b)] = t;
            dilation[(r + b, a)] = t.conj();
        }
    }
    let mut sv: Vec<f64> = hermitian_eigen(&dilation)?.values.into_iter().take(r).map(|s| s.max(0.0)).collect();
    sv.resize(4, 0.0);
    let c = sv[0] - sv[1] - sv[2] - sv[3];
    Ok(c.clamp(0.0, 1.0))
}

/// `|<ψ̃|ψ>|` with `|ψ̃> = σ_y^{⊗N} |ψ*>`. Vanishes identically for odd N.
pub fn spin_flip_concurrence(v: &StateVector) -> Result<f64> {
    let shape = v.shape();
    if shape.levels() != 2 {
        return Err(invalid("spin-flip concurrence is defined for qubits only"));
    }
    if !v.is_normalized() {
        return Err(invalid("spin-flip concurrence needs a normalized state"));
    }
    let n = shape.particles();
    let mask = shape.dim() - 1;
    let amps = v.amplitudes();
    let mut overlap = Complex64::new(0.0, 0.0);
    for (i, &a) in amps.iter().enumerate() {
        // σ_y|1> = i|2>, σ_y|2> = -i|1>
        let ones = i.count_ones() as usize;
        let phase = Complex64::i().powu((n - ones) as u32) * (-Complex64::i()).powu(ones as u32);
        let flipped = phase * a.conj();
        overlap += flipped.conj() * amps[i ^ mask];
    }
    Ok(overlap.norm().min(1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairConcurrence {
    /// 0-based particle indices.
    pub pair: (usize, usize),
    pub concurrence: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcurrenceReport {
    /// Wootters concurrence of every two-particle reduction.
    pub pairwise: Vec<PairConcurrence>,
    /// Spin-flip overlap of the full pure state.
    pub global: f64,
}

/// Both concurrences for a normalized qubit state.
pub fn concurrence_report(v: &StateVector) -> Result<ConcurrenceReport> {
    let shape = v.shape();
    if shape.levels() != 2 {
        return Err(invalid("concurrence is defined for qubits only"));
    }
    let n = shape.particles();
    let mut pairwise = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let concurrence = if n == 2 {
                wootters_concurrence(&DensityMatrix::from_pure(v)?)?
            } else {
                wootters_concurrence(&partial_trace(v, &[a, b])?)?
            };
            pairwise.push(PairConcurrence { pair: (a, b), concurrence });
        }
    }
    Ok(ConcurrenceReport { pairwise, global: spin_flip_concurrence(v)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statespace::SystemShape;
    use approx::assert_abs_diff_eq;

    fn qubits(n: usize, terms: &[(f64, &[usize])]) -> StateVector {
        StateVector::from_real_terms(SystemShape::qubits(n).unwrap(), terms)
            .unwrap()
            .normalize()
            .unwrap()
    }

    #[test]
    fn entropy_values() {
        let pure = DensityMatrix::new(ComplexMatrix::from_diagonal(&[1.0, 0.0])).unwrap();
        assert_eq!(von_neumann_entropy(&pure).unwrap(), 0.0);
        let mixed = DensityMatrix::new(ComplexMatrix::from_diagonal(&[0.5, 0.5])).unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&mixed).unwrap(), 1.0, epsilon = 1e-15);
        let w = DensityMatrix::new(ComplexMatrix::from_diagonal(&[2.0 / 3.0, 1.0 / 3.0])).unwrap();
        // -(2/3)log2(2/3) - (1/3)log2(1/3)
        assert_abs_diff_eq!(von_neumann_entropy(&w).unwrap(), 0.918_295_834_054_489_6, epsilon = 1e-14);
    }

    #[test]
    fn ghz_and_product_entropies() {
        let ghz = qubits(3, &[(1.0, &[1, 1, 1]), (1.0, &[2, 2, 2])]);
        let r = single_particle_entropies(&ghz).unwrap();
        for s in r.per_particle {
            assert_abs_diff_eq!(s, 1.0, epsilon = 1e-12);
        }
        let prod = qubits(3, &[(1.0, &[1, 1, 1])]);
        assert!(single_particle_entropies(&prod).unwrap().per_particle.iter().all(|&s| s == 0.0));
        let unnormalized = &prod * 2.0;
        assert!(single_particle_entropies(&unnormalized).is_err());
    }

    #[test]
    fn all_cuts_listed_once() {
        assert_eq!(cut_representatives(3).len(), 3);
        // 4 singles + 3 even splits
        assert_eq!(cut_representatives(4).len(), 7);
        assert_eq!(cut_representatives(5).len(), 15);
    }

    #[test]
    fn wootters_bell_and_product() {
        let bell = qubits(2, &[(1.0, &[1, 1]), (1.0, &[2, 2])]);
        let c = wootters_concurrence(&DensityMatrix::from_pure(&bell).unwrap()).unwrap();
        assert_abs_diff_eq!(c, 1.0, epsilon = 1e-12);
        let prod = qubits(2, &[(1.0, &[1, 1]), (1.0, &[1, 2])]);
        let c = wootters_concurrence(&DensityMatrix::from_pure(&prod).unwrap()).unwrap();
        assert_abs_diff_eq!(c, 0.0, epsilon = 1e-12);
        let wrong = DensityMatrix::new(ComplexMatrix::from_diagonal(&[0.5, 0.5])).unwrap();
        assert!(wootters_concurrence(&wrong).is_err());
    }

    #[test]
    fn spin_flip_values() {
        let bell = qubits(2, &[(1.0, &[1, 1]), (1.0, &[2, 2])]);
        assert_abs_diff_eq!(spin_flip_concurrence(&bell).unwrap(), 1.0, epsilon = 1e-12);
        let prod = qubits(2, &[(1.0, &[1, 1])]);
        assert_eq!(spin_flip_concurrence(&prod).unwrap(), 0.0);
        let ghz = qubits(3, &[(1.0, &[1, 1, 1]), (1.0, &[2, 2, 2])]);
        assert_abs_diff_eq!(spin_flip_concurrence(&ghz).unwrap(), 0.0, epsilon = 1e-15);
        let qutrit = StateVector::from_real_terms(SystemShape::new(2, 3).unwrap(), &[(1.0, &[1, 1])]).unwrap();
        assert!(spin_flip_concurrence(&qutrit).is_err());
    }
}
