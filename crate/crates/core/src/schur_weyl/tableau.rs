use std::fmt;

use crate::partitions::Partition;
use crate::statespace::{permutations_of, Permutation};

/// A filling of a Young diagram with `1..=N`, increasing along rows and
/// down columns. Entries are stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// Rows of 0-based entries.
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.rows[0].len();
        (0..width)
            .map(|j| self.rows.iter().filter_map(|r| r.get(j).copied()).collect())
            .collect()
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    /// Rows read top to bottom, 1-based.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().map(|e| e + 1).collect()
    }

    /// The tableau with rows `0..λ_1`, `λ_1..λ_1+λ_2`, ….
    pub fn row_filling(shape: &Partition) -> Self {
        let mut next = 0;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                let row = (next..next + len).collect();
                next += len;
                row
            })
            .collect();
        StandardTableau { shape: shape.clone(), rows }
    }

    /// Permutations preserving every row's entry set.
    pub fn row_group(&self) -> Vec<Permutation> {
        setwise_stabilizer(self.size(), &self.rows)
    }

    /// Permutations preserving every column's entry set.
    pub fn column_group(&self) -> Vec<Permutation> {
        setwise_stabilizer(self.size(), &self.columns())
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "/")?;
            }
            for (k, e) in row.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", e + 1)?;
            }
        }
        Ok(())
    }
}

fn setwise_stabilizer(size: usize, blocks: &[Vec<usize>]) -> Vec<Permutation> {
    let mut group: Vec<Vec<usize>> = vec![(0..size).collect()];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let arrangements = permutations_of(block);
        let mut next = Vec::with_capacity(group.len() * arrangements.len());
        for g in &group {
            for arr in &arrangements {
                let mut images = g.clone();
                for (src, &dst) in block.iter().zip(arr) {
                    images[*src] = dst;
                }
                next.push(images);
            }
        }
        group = next;
    }
    group
        .into_iter()
        .map(|images| Permutation::new(images).expect("block arrangements are bijections"))
        .collect()
}

/// All standard tableaux of `shape`, sorted by reading word.
pub fn standard_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); shape.rows()];
    let mut out = Vec::new();
    place(shape.parts(), 0, shape.size(), &mut rows, &mut out);
    let mut tableaux: Vec<StandardTableau> =
        out.into_iter().map(|rows| StandardTableau { shape: shape.clone(), rows }).collect();
    tableaux.sort_by_key(|t| t.reading_word());
    tableaux
}

fn place(
    parts: &[usize],
    entry: usize,
    total: usize,
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if entry == total {
        out.push(rows.clone());
        return;
    }
    for i in 0..parts.len() {
        let len = rows[i].len();
        let fits = len < parts[i] && (i == 0 || rows[i - 1].len() > len);
        if fits {
            rows[i].push(entry);
            place(parts, entry + 1, total, rows, out);
            rows[i].pop();
        }
    }
}
