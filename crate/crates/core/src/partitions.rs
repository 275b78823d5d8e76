//! Integer partitions and the dimension bookkeeping of S_N.
//!
//! Everything here is exact integer arithmetic. Factorials are capped at
//! [`MAX_PARTICLES`] so that `N!` always fits in a `u128`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest particle count accepted by the combinatorics.
pub const MAX_PARTICLES: usize = 20;

/// A non-increasing tuple of positive integers.
///
/// The same value labels a conjugacy class of S_N (read as a cycle type) and
/// a pair of dual irreducible representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(invalid("partition must have at least one part"));
        }
        if parts.contains(&0) {
            return Err(invalid(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(format!("partition {parts:?} is not non-increasing")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// The integer being partitioned.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.0[0];
        let cols = (0..width)
            .map(|j| self.0.iter().take_while(|&&len| len > j).count())
            .collect();
        Partition(cols)
    }

    /// Hook length of every cell, row by row: `arm + leg + 1`.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let cols = self.conjugate();
        self.0
            .iter()
            .enumerate()
            .map(|(i, &len)| (0..len).map(|j| (len - j) + (cols.0[j] - i) - 1).collect())
            .collect()
    }

    /// Dimension `f^λ` of the Specht module, the S_N irrep labelled by `self`.
    pub fn dim_symmetric(&self) -> Result<u128> {
        let total = factorial(self.size())?;
        let hooks: u128 = self
            .hook_lengths()
            .iter()
            .flatten()
            .map(|&h| h as u128)
            .product();
        Ok(total / hooks)
    }

    /// Dimension `d_λ(n)` of the U(n) irrep, i.e. the number of
    /// semistandard fillings with entries `1..=n`. Zero when the diagram has
    /// more than `n` rows.
    pub fn dim_unitary(&self, levels: usize) -> Result<u128> {
        if levels == 0 {
            return Err(invalid("level count must be positive"));
        }
        if self.rows() > levels {
            return Ok(0);
        }
        let hooks = self.hook_lengths();
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for (i, row) in hooks.iter().enumerate() {
            for (j, &h) in row.iter().enumerate() {
                // rows <= levels guarantees this content factor is positive
                let content = (levels + j - i) as u128;
                num = num
                    .checked_mul(content)
                    .ok_or_else(|| overflow("unitary dimension"))?;
                den *= h as u128;
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
        }
        debug_assert_eq!(den, 1);
        Ok(num / den)
    }

    /// Number of permutations whose cycle type is `self`:
    /// `N! / Π_k (k^{m_k} m_k!)`.
    pub fn class_size(&self) -> Result<u128> {
        let mut denom: u128 = 1;
        for (k, mult) in self.multiplicities() {
            denom *= (k as u128).pow(mult as u32) * factorial(mult)?;
        }
        Ok(factorial(self.size())? / denom)
    }

    /// `(part, multiplicity)` pairs in decreasing part order.
    fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((k, m)) if *k == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

fn overflow(what: &str) -> Error {
    Error::ResourceLimit(format!("{what} overflows 128-bit arithmetic"))
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn factorial(n: usize) -> Result<u128> {
    if n > MAX_PARTICLES {
        return Err(Error::ResourceLimit(format!(
            "N = {n} exceeds the particle cap {MAX_PARTICLES}"
        )));
    }
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k).ok_or_else(|| overflow("factorial")))
}

fn check_particles(particles: usize) -> Result<()> {
    if particles < 1 {
        return Err(invalid("N must be at least 1"));
    }
    if particles > MAX_PARTICLES {
        return Err(Error::ResourceLimit(format!(
            "N = {particles} exceeds the particle cap {MAX_PARTICLES}"
        )));
    }
    Ok(())
}

/// All partitions of `particles` in reverse-lexicographic order, `[N]` first.
pub fn enumerate_partitions(particles: usize) -> Result<Vec<Partition>> {
    check_particles(particles)?;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(particles);
    extend_partitions(particles, particles, &mut current, &mut out);
    Ok(out)
}

fn extend_partitions(
    remaining: usize,
    max_part: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        extend_partitions(remaining - part, part, current, out);
        current.pop();
    }
}

/// A conjugacy class of S_N, named by its cycle type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub cycle_type: Partition,
    pub size: u128,
}

/// Conjugacy classes of S_N in the same order as [`enumerate_partitions`].
pub fn conjugacy_classes(particles: usize) -> Result<Vec<ClassInfo>> {
    enumerate_partitions(particles)?
        .into_iter()
        .map(|cycle_type| {
            let size = cycle_type.class_size()?;
            Ok(ClassInfo { cycle_type, size })
        })
        .collect()
}

/// One row of the Schur–Weyl bookkeeping: `f` copies of a `d`-dimensional
/// U(n) irrep (equivalently `d` copies of an `f`-dimensional S_N irrep).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub lambda: Partition,
    pub f: u128,
    pub d: u128,
}

impl DecompositionRecord {
    pub fn block_dim(&self) -> u128 {
        self.f * self.d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTable {
    pub particles: usize,
    pub levels: usize,
    pub records: Vec<DecompositionRecord>,
    /// Σ f·d over all records.
    pub total: u128,
    /// `n^N`.
    pub hilbert_dim: u128,
}

impl DecompositionTable {
    pub fn is_consistent(&self) -> bool {
        self.total == self.hilbert_dim
    }
}

pub fn decomposition_table(particles: usize, levels: usize) -> Result<DecompositionTable> {
    if levels < 1 {
        return Err(invalid("n must be at least 1"));
    }
    let records = enumerate_partitions(particles)?
        .into_iter()
        .map(|lambda| {
            let f = lambda.dim_symmetric()?;
            let d = lambda.dim_unitary(levels)?;
            Ok(DecompositionRecord { lambda, f, d })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total: u128 = 0;
    for r in &records {
        total = r
            .f
            .checked_mul(r.d)
            .and_then(|x| x.checked_add(total))
            .ok_or_else(|| overflow("decomposition total"))?;
    }
    let hilbert_dim = (levels as u128)
        .checked_pow(particles as u32)
        .ok_or_else(|| overflow("n^N"))?;
    Ok(DecompositionTable { particles, levels, records, total, hilbert_dim })
}
