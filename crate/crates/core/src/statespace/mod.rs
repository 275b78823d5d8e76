//! Dense pure states of N particles with n levels each.
//!
//! The computational basis is indexed row-major with particle 1 most
//! significant, so `|i_1 … i_N>` sits at `Σ_k (i_k - 1) n^{N-k}`.

mod density;
mod eigen;
mod permutation;

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

pub use density::{partial_trace, DensityMatrix};
pub use eigen::{
    hermitian_eigen, hermitian_eigen_with, hermitian_eigenvalues, ComplexMatrix, HermitianEigen,
    JacobiOptions,
};
pub use permutation::Permutation;
pub(crate) use permutation::permutations_of;

/// Largest Hilbert space dimension a [`SystemShape`] may describe.
pub const MAX_DIM: usize = 1 << 24;

/// Norm tolerance for treating a state as normalized.
pub const NORM_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SystemShape {
    particles: usize,
    levels: usize,
    dim: usize,
}

impl SystemShape {
    pub fn new(particles: usize, levels: usize) -> Result<Self> {
        if particles == 0 || levels == 0 {
            return Err(invalid("N and n must both be positive"));
        }
        let mut dim: usize = 1;
        for _ in 0..particles {
            dim = dim
                .checked_mul(levels)
                .filter(|&d| d <= MAX_DIM)
                .ok_or_else(|| {
                    Error::ResourceLimit(format!(
                        "{levels}^{particles} exceeds the dimension cap {MAX_DIM}"
                    ))
                })?;
        }
        Ok(SystemShape { particles, levels, dim })
    }

    pub fn qubits(particles: usize) -> Result<Self> {
        Self::new(particles, 2)
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// `n^N`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index_of(&self, label: &BasisLabel) -> Result<usize> {
        if label.0.len() != self.particles {
            return Err(invalid(format!(
                "label has {} digits, shape has {} particles",
                label.0.len(),
                self.particles
            )));
        }
        let mut index = 0;
        for &d in &label.0 {
            if d >= self.levels {
                return Err(invalid(format!("level {} out of range 1..={}", d + 1, self.levels)));
            }
            index = index * self.levels + d;
        }
        Ok(index)
    }

    pub fn label_of(&self, index: usize) -> Result<BasisLabel> {
        if index >= self.dim {
            return Err(invalid(format!("index {index} out of range for dimension {}", self.dim)));
        }
        let mut digits = vec![0; self.particles];
        self.write_digits(index, &mut digits);
        Ok(BasisLabel(digits))
    }

    #[inline]
    pub(crate) fn write_digits(&self, mut index: usize, digits: &mut [usize]) {
        for slot in digits.iter_mut().rev() {
            *slot = index % self.levels;
            index /= self.levels;
        }
    }

    #[inline]
    pub(crate) fn index_of_digits(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.levels + d)
    }
}

impl fmt::Display for SystemShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} n={}", self.particles, self.levels)
    }
}

/// Level assignment for every particle, 0-based internally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel(Vec<usize>);

impl BasisLabel {
    /// From the 1-based digits used at I/O boundaries (`[1, 1, 2]` is `|112>`).
    pub fn from_one_based(digits: &[usize]) -> Result<Self> {
        if digits.contains(&0) {
            return Err(invalid(format!("digits {digits:?} must be 1-based")));
        }
        Ok(BasisLabel(digits.iter().map(|d| d - 1).collect()))
    }

    pub fn from_zero_based(digits: Vec<usize>) -> Self {
        BasisLabel(digits)
    }

    pub fn digits(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|d| d + 1).collect()
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.0.iter().any(|&d| d >= 9);
        for (k, d) in self.0.iter().enumerate() {
            if wide && k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", d + 1)?;
        }
        Ok(())
    }
}

/// How to fix the free global phase of a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseRule {
    /// First nonzero amplitude in index order is real positive.
    FirstNonzero,
    /// Largest-magnitude amplitude is real positive; ties go to the lowest index.
    LargestMagnitude,
}

const PHASE_EPS: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    shape: SystemShape,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn zeros(shape: SystemShape) -> Self {
        StateVector { shape, amplitudes: vec![Complex64::new(0.0, 0.0); shape.dim()] }
    }

    pub fn from_amplitudes(shape: SystemShape, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != shape.dim() {
            return Err(invalid(format!(
                "{} amplitudes for dimension {}",
                amplitudes.len(),
                shape.dim()
            )));
        }
        Ok(StateVector { shape, amplitudes })
    }

    pub fn from_real(shape: SystemShape, amplitudes: &[f64]) -> Result<Self> {
        Self::from_amplitudes(shape, amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn basis_state(shape: SystemShape, label: &BasisLabel) -> Result<Self> {
        let mut v = Self::zeros(shape);
        v.amplitudes[shape.index_of(label)?] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    /// Sum of `coefficient · |digits>` with 1-based digits. Repeated labels add up.
    pub fn from_terms<'a, I>(shape: SystemShape, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Complex64, &'a [usize])>,
    {
        let mut v = Self::zeros(shape);
        for (c, digits) in terms {
            let idx = shape.index_of(&BasisLabel::from_one_based(digits)?)?;
            v.amplitudes[idx] += c;
        }
        Ok(v)
    }

    /// Real-coefficient shorthand for [`StateVector::from_terms`].
    pub fn from_real_terms(shape: SystemShape, terms: &[(f64, &[usize])]) -> Result<Self> {
        Self::from_terms(shape, terms.iter().map(|&(c, d)| (Complex64::new(c, 0.0), d)))
    }

    pub fn shape(&self) -> SystemShape {
        self.shape
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, label: &BasisLabel) -> Result<Complex64> {
        Ok(self.amplitudes[self.shape.index_of(label)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORM_TOLERANCE
    }

    fn check_same_shape(&self, other: &StateVector) -> Result<()> {
        if self.shape != other.shape {
            return Err(invalid(format!("shape mismatch: {} vs {}", self.shape, other.shape)));
        }
        Ok(())
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same_shape(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn normalize(&self) -> Result<StateVector> {
        let norm = self.norm();
        if norm <= 1e-12 {
            return Err(Error::DegenerateState(format!("cannot normalize a state of norm {norm:.3e}")));
        }
        Ok(self.scale(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> StateVector {
        StateVector { shape: self.shape, amplitudes: self.amplitudes.iter().map(|a| a * c).collect() }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: Complex64, other: &StateVector, b: Complex64) -> Result<StateVector> {
        self.check_same_shape(other)?;
        let amplitudes = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(StateVector { shape: self.shape, amplitudes })
    }

    /// `‖self - other‖`.
    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    pub fn conj(&self) -> StateVector {
        StateVector { shape: self.shape, amplitudes: self.amplitudes.iter().map(|a| a.conj()).collect() }
    }

    /// Rescale by a unit phase so that the amplitude picked by `rule` is real positive.
    pub fn phase_aligned(&self, rule: PhaseRule) -> StateVector {
        let pivot = match rule {
            PhaseRule::FirstNonzero => self.amplitudes.iter().position(|a| a.norm() > PHASE_EPS),
            PhaseRule::LargestMagnitude => {
                let max = self.amplitudes.iter().map(|a| a.norm()).fold(0.0, f64::max);
                if max <= PHASE_EPS {
                    None
                } else {
                    self.amplitudes.iter().position(|a| a.norm() >= max - PHASE_EPS)
                }
            }
        };
        match pivot {
            Some(i) => {
                let a = self.amplitudes[i];
                self.scale(a.conj() / a.norm())
            }
            None => self.clone(),
        }
    }

    /// Nonzero amplitudes with their labels, in index order.
    pub fn terms(&self, cutoff: f64) -> Vec<(BasisLabel, Complex64)> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > cutoff)
            .map(|(i, &a)| (self.shape.label_of(i).expect("index in range"), a))
            .collect()
    }

    /// Relabel particles: the digit of particle `k` moves to slot `sigma(k)`,
    /// i.e. `|i_1 … i_N> → |i_{σ⁻¹(1)} … i_{σ⁻¹(N)}>`.
    pub fn apply_particle_permutation(&self, sigma: &Permutation) -> Result<StateVector> {
        let n = self.shape.particles();
        if sigma.len() != n {
            return Err(invalid(format!("permutation of {} points for {n} particles", sigma.len())));
        }
        let mut out = StateVector::zeros(self.shape);
        let mut digits = vec![0; n];
        let mut moved = vec![0; n];
        for (i, &a) in self.amplitudes.iter().enumerate() {
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            self.shape.write_digits(i, &mut digits);
            for k in 0..n {
                moved[sigma.apply(k)] = digits[k];
            }
            out.amplitudes[self.shape.index_of_digits(&moved)] += a;
        }
        Ok(out)
    }

    /// Replace level `d` by `pi(d)` on every particle.
    pub fn apply_level_permutation(&self, pi: &Permutation) -> Result<StateVector> {
        if pi.len() != self.shape.levels() {
            return Err(invalid(format!(
                "permutation of {} points for {} levels",
                pi.len(),
                self.shape.levels()
            )));
        }
        let n = self.shape.particles();
        let mut out = StateVector::zeros(self.shape);
        let mut digits = vec![0; n];
        for (i, &a) in self.amplitudes.iter().enumerate() {
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            self.shape.write_digits(i, &mut digits);
            for d in digits.iter_mut() {
                *d = pi.apply(*d);
            }
            out.amplitudes[self.shape.index_of_digits(&digits)] += a;
        }
        Ok(out)
    }

    /// Schmidt-style matrix: rows indexed by the digits of `rows` (in the
    /// given order), columns by the remaining particles in ascending order.
    pub(crate) fn reshape(&self, rows: &[usize]) -> (usize, usize, Vec<Complex64>) {
        let n = self.shape.particles();
        let levels = self.shape.levels();
        let cols: Vec<usize> = (0..n).filter(|k| !rows.contains(k)).collect();
        let row_dim = levels.pow(rows.len() as u32);
        let col_dim = levels.pow(cols.len() as u32);
        let mut m = vec![Complex64::new(0.0, 0.0); row_dim * col_dim];
        let mut digits = vec![0; n];
        for (i, &a) in self.amplitudes.iter().enumerate() {
            self.shape.write_digits(i, &mut digits);
            let r = rows.iter().fold(0, |acc, &k| acc * levels + digits[k]);
            let c = cols.iter().fold(0, |acc, &k| acc * levels + digits[k]);
            m[r * col_dim + c] = a;
        }
        (row_dim, col_dim, m)
    }
}

impl Add for &StateVector {
    type Output = StateVector;

    fn add(self, rhs: &StateVector) -> StateVector {
        let one = Complex64::new(1.0, 0.0);
        self.combine(one, rhs, one).expect("matching shapes")
    }
}

impl Sub for &StateVector {
    type Output = StateVector;

    fn sub(self, rhs: &StateVector) -> StateVector {
        let one = Complex64::new(1.0, 0.0);
        self.combine(one, rhs, -one).expect("matching shapes")
    }
}

impl Mul<f64> for &StateVector {
    type Output = StateVector;

    fn mul(self, rhs: f64) -> StateVector {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

/// Swap of levels 1 and 2 extended to `levels` by reversal (`d → n + 1 - d`).
pub fn level_reversal(levels: usize) -> Permutation {
    Permutation::new((0..levels).rev().collect()).expect("reversal is a bijection")
}
