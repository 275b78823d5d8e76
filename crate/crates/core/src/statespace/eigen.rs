//! Dense complex matrices and a cyclic Jacobi eigensolver for Hermitian input.

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(invalid(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let dim = rows.len();
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::from_row_major(dim, data)
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Elementwise complex conjugate.
    pub fn conj(&self) -> Self {
        ComplexMatrix { dim: self.dim, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|a_ij - conj(a_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    fn max_off_diagonal(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                worst = worst.max(self[(i, j)].norm());
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub struct JacobiOptions {
    /// Converged once every off-diagonal magnitude is below this, scaled by
    /// `max(1, ‖A‖_F)`.
    pub tolerance: f64,
    pub max_sweeps: usize,
    /// Input is rejected when `|a_ij - conj(a_ji)|` exceeds this.
    pub hermitian_tolerance: f64,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        JacobiOptions { tolerance: 1e-12, max_sweeps: 100, hermitian_tolerance: 1e-8 }
    }
}

/// Eigenvalues in descending order; `vectors[k]` belongs to `values[k]`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
    pub sweeps: usize,
}

pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.values)
}

pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    hermitian_eigen_with(m, JacobiOptions::default())
}

/// Cyclic Jacobi with complex rotations.
///
/// Each rotation first removes the phase of `a_pq` with a diagonal unitary
/// and then applies the real Jacobi rotation that annihilates it.
pub fn hermitian_eigen_with(m: &ComplexMatrix, opts: JacobiOptions) -> Result<HermitianEigen> {
    let defect = m.hermitian_defect();
    if defect > opts.hermitian_tolerance {
        return Err(invalid(format!("matrix is not Hermitian (defect {defect:.3e})")));
    }
    let n = m.dim();
    let mut a = m.clone();
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n);
    let threshold = opts.tolerance * m.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    while a.max_off_diagonal() >= threshold {
        if sweeps == opts.max_sweeps {
            return Err(Error::NumericalFailure(format!(
                "Jacobi did not converge after {} sweeps (off-diagonal {:.3e})",
                opts.max_sweeps,
                a.max_off_diagonal()
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = order.iter().map(|&k| (0..n).map(|i| v[(i, k)]).collect()).collect();
    Ok(HermitianEigen { values, vectors, sweeps })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let g = a[(p, q)];
    let r = g.norm();
    if r == 0.0 {
        return;
    }
    let phase = g / r;
    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // U = diag(1, conj(phase)) · [[c, s], [-s, c]] on the (p, q) plane.
    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn diagonal_input() {
        let m = ComplexMatrix::from_diagonal(&[0.0, 1.0]);
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), vec![1.0, 0.0]);
    }

    #[test]
    fn two_by_two_real() {
        let m = ComplexMatrix::from_real_rows(&[&[0.5, 1.0 / 6.0], &[1.0 / 6.0, 0.5]]).unwrap();
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert_abs_diff_eq!(ev[0], 2.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[1], 1.0 / 3.0, epsilon = 1e-14);

        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let ev = hermitian_eigenvalues(&x).unwrap();
        assert_abs_diff_eq!(ev[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[1], -1.0, epsilon = 1e-14);
    }

    #[test]
    fn pauli_y_has_unit_spectrum() {
        let i = Complex64::i();
        let y = ComplexMatrix::from_row_major(2, vec![ZERO, -i, i, ZERO]).unwrap();
        let eig = hermitian_eigen(&y).unwrap();
        assert_abs_diff_eq!(eig.values[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eig.values[1], -1.0, epsilon = 1e-14);
        // Y v = λ v
        for (val, vec) in eig.values.iter().zip(&eig.vectors) {
            for row in 0..2 {
                let yv: Complex64 = (0..2).map(|c| y[(row, c)] * vec[c]).sum();
                assert_abs_diff_eq!((yv - vec[row] * *val).norm(), 0.0, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn sweep_cap_reports_failure() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 0.3, 0.1], &[0.3, 2.0, 0.4], &[0.1, 0.4, 3.0]])
            .unwrap();
        let opts = JacobiOptions { max_sweeps: 0, ..Default::default() };
        assert!(matches!(hermitian_eigen_with(&m, opts), Err(Error::NumericalFailure(_))));
    }
}
