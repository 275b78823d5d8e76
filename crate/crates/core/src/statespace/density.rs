use num_complex::Complex64;

use super::eigen::{hermitian_eigenvalues, ComplexMatrix};
use super::StateVector;
use crate::error::{invalid, Result};

const STRUCTURE_TOLERANCE: f64 = 1e-10;

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and `λ_min ≥ -1e-10`.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let defect = matrix.hermitian_defect();
        if defect > STRUCTURE_TOLERANCE {
            return Err(invalid(format!("density matrix not Hermitian (defect {defect:.3e})")));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > STRUCTURE_TOLERANCE {
            return Err(invalid(format!("density matrix trace {tr} differs from 1")));
        }
        let lowest = hermitian_eigenvalues(&matrix)?.last().copied().unwrap_or(0.0);
        if lowest < -STRUCTURE_TOLERANCE {
            return Err(invalid(format!("density matrix has eigenvalue {lowest:.3e}")));
        }
        Ok(DensityMatrix { matrix })
    }

    /// `|ψ><ψ|` for a normalized state.
    pub fn from_pure(state: &StateVector) -> Result<Self> {
        if !state.is_normalized() {
            return Err(invalid("pure-state projector needs a normalized state"));
        }
        let amps = state.amplitudes();
        let dim = amps.len();
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = amps[i] * amps[j].conj();
            }
        }
        Ok(DensityMatrix { matrix: m })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Descending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix)
    }
}

/// Reduced state on the particles in `keep` (0-based, any order; the
/// result is indexed with the kept particles in ascending order).
pub fn partial_trace(state: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    let n = state.shape().particles();
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() || keep.len() >= n {
        return Err(invalid(format!(
            "kept subset must be a non-empty proper subset of {n} particles"
        )));
    }
    if let Some(&k) = keep.iter().find(|&&k| k >= n) {
        return Err(invalid(format!("particle {} out of range 1..={n}", k + 1)));
    }
    if !state.is_normalized() {
        return Err(invalid("partial trace needs a normalized state"));
    }
    let (rows, cols, m) = state.reshape(&keep);
    let mut rho = ComplexMatrix::zeros(rows);
    for a in 0..rows {
        for b in a..rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..cols {
                acc += m[a * cols + c] * m[b * cols + c].conj();
            }
            rho[(a, b)] = acc;
            rho[(b, a)] = acc.conj();
        }
    }
    Ok(DensityMatrix { matrix: rho })
}
