use std::fmt;

use crate::error::{invalid, Result};

/// A bijection on `0..len`, stored as its image list: `self.apply(k) == images[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(invalid(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Build from 1-based images, the way permutations are written by hand.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(invalid(format!("{images:?} is not a 1-based permutation")));
        }
        Self::new(images.iter().map(|&i| i - 1).collect())
    }

    pub fn identity(len: usize) -> Self {
        Permutation((0..len).collect())
    }

    /// Swap `a` and `b` (0-based).
    pub fn transposition(len: usize, a: usize, b: usize) -> Result<Self> {
        if a >= len || b >= len {
            return Err(invalid(format!("transposition ({a} {b}) out of range for {len}")));
        }
        let mut images: Vec<usize> = (0..len).collect();
        images.swap(a, b);
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (k, &img) in self.0.iter().enumerate() {
            inv[img] = k;
        }
        Permutation(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&k| self.0[k]).collect())
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i32 {
        let mut visited = vec![false; self.0.len()];
        let mut transpositions = 0;
        for start in 0..self.0.len() {
            if visited[start] {
                continue;
            }
            let mut k = start;
            let mut cycle_len = 0;
            while !visited[k] {
                visited[k] = true;
                k = self.0[k];
                cycle_len += 1;
            }
            transpositions += cycle_len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &i)| k == i)
    }
}

impl fmt::Display for Permutation {
    /// One-line notation, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, ")")
    }
}

/// All permutations of `items`, in lexicographic order of positions.
pub(crate) fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = items.to_vec();
    heap_permute(current.len(), &mut current, &mut out);
    out.sort();
    out
}

fn heap_permute(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k - 1 {
        heap_permute(k - 1, a, out);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permute(k - 1, a, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(Permutation::identity(4).sign(), 1);
        assert_eq!(Permutation::transposition(4, 1, 3).unwrap().sign(), -1);
        assert_eq!(Permutation::new(vec![1, 2, 0]).unwrap().sign(), 1);
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn enumerates_all_arrangements() {
        let all = permutations_of(&[3, 5, 7]);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![3, 5, 7]);
        assert_eq!(all[5], vec![7, 5, 3]);
    }
}
