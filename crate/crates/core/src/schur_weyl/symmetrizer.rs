//! Young-symmetrizer construction of the Schur–Weyl decomposition.
//!
//! For every λ with `d_λ(n) > 0`, each standard tableau `T` yields a copy
//! `e_T H^N` of the U(n) irrep. Copies of the same λ are made mutually
//! orthogonal by projecting later copies off the earlier ones; since the
//! projector commutes with U(n), what survives is again a full copy (or
//! nothing). The work is done one weight block at a time because particle
//! permutations never change how many particles sit in each level.

use std::collections::HashMap;

use num_complex::Complex64;

use super::tableau::{standard_tableaux, StandardTableau};
use super::{qubit_label, weight_of, SectorMember, SymmetrySector};
use crate::error::{invalid, Error, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::statespace::{permutations_of, Permutation, StateVector, SystemShape};

pub const MAX_SYMMETRIZER_PARTICLES: usize = 7;
pub const MAX_SYMMETRIZER_DIM: usize = 4096;

/// Rank cutoff, relative to the largest candidate norm in a weight block.
const RANK_TOLERANCE: f64 = 1e-9;
const ZERO_CUTOFF: f64 = 1e-12;

fn check_caps(shape: &SystemShape) -> Result<()> {
    if shape.particles() > MAX_SYMMETRIZER_PARTICLES {
        return Err(Error::ResourceLimit(format!(
            "symmetrizer path is limited to N <= {MAX_SYMMETRIZER_PARTICLES}, got {}",
            shape.particles()
        )));
    }
    if shape.dim() > MAX_SYMMETRIZER_DIM {
        return Err(Error::ResourceLimit(format!(
            "symmetrizer path is limited to n^N <= {MAX_SYMMETRIZER_DIM}, got {}",
            shape.dim()
        )));
    }
    Ok(())
}

/// `Σ_{p ∈ rows} p · Σ_{q ∈ cols} sgn(q) q · v`, unnormalized.
pub fn young_symmetrizer_apply(tableau: &StandardTableau, v: &StateVector) -> Result<StateVector> {
    let shape = v.shape();
    if tableau.size() != shape.particles() {
        return Err(invalid(format!(
            "tableau has {} boxes, state has {} particles",
            tableau.size(),
            shape.particles()
        )));
    }
    check_caps(&shape)?;
    let mut antisym = StateVector::zeros(shape);
    for q in tableau.column_group() {
        let term = v.apply_particle_permutation(&q)?;
        antisym = antisym.combine(Complex64::new(1.0, 0.0), &term, Complex64::new(q.sign() as f64, 0.0))?;
    }
    let mut out = StateVector::zeros(shape);
    for p in tableau.row_group() {
        out = &out + &antisym.apply_particle_permutation(&p)?;
    }
    Ok(out)
}

/// Basis states sharing one content vector.
struct WeightBlock {
    weight: Vec<usize>,
    /// Global indices, ascending.
    indices: Vec<usize>,
    position: HashMap<usize, usize>,
}

fn weight_blocks(shape: &SystemShape) -> Vec<WeightBlock> {
    let mut by_weight: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut digits = vec![0; shape.particles()];
    for i in 0..shape.dim() {
        shape.write_digits(i, &mut digits);
        by_weight.entry(weight_of(&digits, shape.levels())).or_default().push(i);
    }
    let mut blocks: Vec<WeightBlock> = by_weight
        .into_iter()
        .map(|(weight, indices)| {
            let position = indices.iter().enumerate().map(|(p, &i)| (i, p)).collect();
            WeightBlock { weight, indices, position }
        })
        .collect();
    // most particles in level 1 first; for qubits that is m = j down to -j
    blocks.sort_by(|a, b| b.weight.cmp(&a.weight));
    blocks
}

/// `σ · e_T` as an explicit signed list of particle permutations.
struct Generator {
    terms: Vec<(Permutation, f64)>,
}

impl Generator {
    fn young(tableau: &StandardTableau, prefix: Option<&Permutation>) -> Self {
        let rows = tableau.row_group();
        let cols = tableau.column_group();
        let mut terms = Vec::with_capacity(rows.len() * cols.len());
        for p in &rows {
            for q in &cols {
                let mut g = p.compose(q);
                if let Some(s) = prefix {
                    g = s.compose(&g);
                }
                terms.push((g, q.sign() as f64));
            }
        }
        Generator { terms }
    }

    /// Image of the basis state `index`, in block coordinates.
    fn image(&self, shape: &SystemShape, block: &WeightBlock, index: usize) -> Vec<f64> {
        let n = shape.particles();
        let mut digits = vec![0; n];
        let mut moved = vec![0; n];
        shape.write_digits(index, &mut digits);
        let mut out = vec![0.0; block.indices.len()];
        for (g, sign) in &self.terms {
            for k in 0..n {
                moved[g.apply(k)] = digits[k];
            }
            out[block.position[&shape.index_of_digits(&moved)]] += sign;
        }
        out
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn project_out(v: &mut [f64], basis: &[Vec<f64>]) {
    for u in basis {
        let c = dot(u, v);
        for (x, y) in v.iter_mut().zip(u) {
            *x -= c * y;
        }
    }
}

/// Pivoted modified Gram–Schmidt: orthonormal vectors spanning the
/// candidates modulo `previous`.
fn orthonormalize(mut candidates: Vec<Vec<f64>>, previous: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let scale = candidates.iter().map(|c| norm(c)).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    for c in candidates.iter_mut() {
        project_out(c, previous);
    }
    let mut accepted: Vec<Vec<f64>> = Vec::new();
    loop {
        let mut best: Option<(usize, f64)> = None;
        for (i, c) in candidates.iter().enumerate() {
            let r = norm(c);
            if best.is_none_or(|(_, b)| r > b * (1.0 + 1e-12)) {
                best = Some((i, r));
            }
        }
        let Some((pivot, r)) = best else { break };
        if r <= RANK_TOLERANCE * scale {
            break;
        }
        let mut u = candidates.swap_remove(pivot);
        // second pass keeps orthogonality at machine precision
        project_out(&mut u, previous);
        project_out(&mut u, &accepted);
        let len = norm(&u);
        u.iter_mut().for_each(|x| *x /= len);
        for c in candidates.iter_mut() {
            project_out(c, std::slice::from_ref(&u));
        }
        accepted.push(u);
    }
    accepted
}

/// A candidate copy: orthonormal vectors per weight block.
type Copy = Vec<Vec<Vec<f64>>>;

fn try_copy(
    generator: &Generator,
    shape: &SystemShape,
    blocks: &[WeightBlock],
    earlier: &[Copy],
) -> Copy {
    blocks
        .iter()
        .enumerate()
        .map(|(b, block)| {
            let candidates: Vec<Vec<f64>> =
                block.indices.iter().map(|&i| generator.image(shape, block, i)).collect();
            let previous: Vec<Vec<f64>> =
                earlier.iter().flat_map(|copy| copy[b].iter().cloned()).collect();
            orthonormalize(candidates, &previous)
        })
        .collect()
}

fn sectors_for(
    shape: &SystemShape,
    lambda: &Partition,
    blocks: &[WeightBlock],
) -> Result<Vec<SymmetrySector>> {
    let f = lambda.dim_symmetric()? as usize;
    let d = lambda.dim_unitary(shape.levels())? as usize;
    if d == 0 {
        return Ok(Vec::new());
    }
    let tableaux = standard_tableaux(lambda);
    let mut copies: Vec<Copy> = Vec::new();

    let consider = |generator: Generator, copies: &mut Vec<Copy>| {
        let copy = try_copy(&generator, shape, blocks, copies);
        if copy.iter().map(Vec::len).sum::<usize>() == d {
            copies.push(copy);
        }
    };
    for t in &tableaux {
        if copies.len() == f {
            break;
        }
        consider(Generator::young(t, None), &mut copies);
    }
    // Standard-tableau images need not be independent for larger N; fall back
    // to translates σ·e_T, which together span the isotypic block.
    if copies.len() < f {
        let identity: Vec<usize> = (0..shape.particles()).collect();
        'outer: for images in permutations_of(&identity).into_iter().skip(1) {
            let sigma = Permutation::new(images)?;
            for t in &tableaux {
                if copies.len() == f {
                    break 'outer;
                }
                consider(Generator::young(t, Some(&sigma)), &mut copies);
            }
        }
    }
    if copies.len() < f {
        return Err(Error::NumericalFailure(format!(
            "found {} of {f} copies for {lambda}",
            copies.len()
        )));
    }

    copies
        .into_iter()
        .enumerate()
        .map(|(c, copy)| {
            let multiplicity = c + 1;
            let mut members = Vec::with_capacity(d);
            for (block, vectors) in blocks.iter().zip(copy) {
                for v in vectors {
                    let mut amps = vec![Complex64::new(0.0, 0.0); shape.dim()];
                    for (&i, &x) in block.indices.iter().zip(&v) {
                        amps[i] = Complex64::new(x, 0.0);
                    }
                    let sign = v.iter().find(|x| x.abs() > ZERO_CUTOFF).map_or(1.0, |x| x.signum());
                    let state = &StateVector::from_amplitudes(*shape, amps)? * sign;
                    let coupled = (shape.levels() == 2)
                        .then(|| qubit_label(lambda, &block.weight, multiplicity));
                    members.push(SectorMember { state, weight: block.weight.clone(), coupled });
                }
            }
            Ok(SymmetrySector { lambda: lambda.clone(), multiplicity, members })
        })
        .collect()
}

/// Orthonormal symmetry-adapted basis of the whole space, grouped into
/// sectors sorted by λ (reverse-lexicographic) and then multiplicity.
pub fn build_decomposition(shape: SystemShape) -> Result<Vec<SymmetrySector>> {
    if shape.levels() < 2 {
        return Err(invalid("decomposition needs n >= 2"));
    }
    check_caps(&shape)?;
    let blocks = weight_blocks(&shape);
    let mut sectors = Vec::new();
    for lambda in enumerate_partitions(shape.particles())? {
        sectors.extend(sectors_for(&shape, &lambda, &blocks)?);
    }
    Ok(sectors)
}
