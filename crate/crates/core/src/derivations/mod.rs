//! Derivation algebras of parabolic subalgebras: the brute-force oracle, the
//! ideal 𝔏 of maps `q -> g_Z` that kill `[q, q]`, the constructive splitting
//! `D = L + ad p`, and the main-theorem verification.

mod complexify;
mod decompose;
mod verify;

pub use complexify::{complexify, extend_derivation, Complexification};
pub use decompose::{constructive_decompose, diagonalizes_roots, DecompositionResult};
pub use verify::{
    random_derivation, sweep, verify_main_theorem, verify_round_trips, CaseReport, RoundTripSummary, VerificationReport,
};

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lie::LieAlgebra;
use crate::linalg::{nullspace, solve, sparse_nullspace, Matrix, Rational, SparseRow, Subspace};
use crate::parabolic::ParabolicAlgebra;

/// An endomorphism known to satisfy the Leibniz rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation(Matrix);

impl Derivation {
    pub fn new(algebra: &LieAlgebra, m: Matrix) -> Result<Self> {
        match algebra.leibniz_violation(&m)? {
            None => Ok(Self(m)),
            Some((i, j)) => Err(Error::NotDerivation(i, j)),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

/// Position of the `(row, col)` entry in the column-major flattening of a
/// `dim x dim` endomorphism.
pub fn flat_index(dim: usize, row: usize, col: usize) -> usize {
    col * dim + row
}

/// Leibniz equations `d[x_i,x_j] - [d x_i, x_j] - [x_i, d x_j] = 0`, `i < j`,
/// one row per output coordinate, in the `dim^2` matrix unknowns.
pub fn leibniz_system(algebra: &LieAlgebra, exec: Exec) -> Vec<SparseRow> {
    let d = algebra.dim();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    let blocks = exec.map(&pairs, |&(i, j)| {
        let mut eqs: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (m, c) in algebra.structure(i, j) {
            for k in 0..d {
                eqs.entry(k).or_default().push((flat_index(d, k, *m), c.clone()));
            }
        }
        for m in 0..d {
            for (k, c) in algebra.structure(m, j) {
                eqs.entry(*k).or_default().push((flat_index(d, m, i), -c.clone()));
            }
            for (k, c) in algebra.structure(i, m) {
                eqs.entry(*k).or_default().push((flat_index(d, m, j), -c.clone()));
            }
        }
        eqs.into_values().collect::<Vec<_>>()
    });
    blocks.into_iter().flatten().collect()
}

/// Der L as a subspace of the `dim^2` flattened endomorphisms.
pub fn derivation_algebra(algebra: &LieAlgebra, exec: Exec) -> Subspace {
    let d = algebra.dim();
    sparse_nullspace(d * d, &leibniz_system(algebra, exec), exec)
}

/// The same kernel through dense Bareiss elimination. Only practical for
/// small algebras; kept as a second route for cross-checking.
pub fn derivation_algebra_dense(algebra: &LieAlgebra) -> Subspace {
    let d = algebra.dim();
    let rows = leibniz_system(algebra, Exec::Sequential);
    let mut m = Matrix::zeros(rows.len(), d * d);
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row {
            let cur = m.get(r, *c).clone();
            m.set(r, *c, cur + v);
        }
    }
    nullspace(&m)
}

/// ad L: span of the flattened `ad x_i`.
pub fn inner_derivations(algebra: &LieAlgebra) -> Subspace {
    let d = algebra.dim();
    let vectors = (0..d).map(|i| algebra.ad_basis(i).flatten_columns()).collect();
    Subspace::from_vectors(d * d, vectors).expect("flattened ad matrices have length dim^2")
}

/// 𝔏: elementary maps sending one of `g_Z ∔ c` to a basis vector of `g_Z`,
/// everything else to zero.
pub fn l_ideal(q: &ParabolicAlgebra) -> Subspace {
    let d = q.dim();
    let idx = q.adapted_basis_indices();
    let mut sources = idx.center.clone();
    sources.extend(&idx.c);
    let mut positions = Vec::new();
    for &z in &idx.center {
        for &u in &sources {
            positions.push(flat_index(d, z, u));
        }
    }
    Subspace::coordinate(d * d, &positions)
}

/// All maps with image in `center` that vanish on `derived`, built from
/// functionals annihilating `derived`. Basis-free description of 𝔏.
pub fn maps_killing_into(center: &Subspace, derived: &Subspace) -> Result<Subspace> {
    let d = center.ambient_dim();
    if derived.ambient_dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: derived.ambient_dim() });
    }
    let annihilator = nullspace(derived.basis());
    let mut vectors = Vec::new();
    for z in center.basis().row_iter() {
        for phi in annihilator.basis().row_iter() {
            let mut v = vec![Rational::zero(); d * d];
            for (r, zr) in z.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (c, pc) in phi.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    v[flat_index(d, r, c)] = zr * pc;
                }
            }
            vectors.push(v);
        }
    }
    Subspace::from_vectors(d * d, vectors)
}

/// `(n + |Δ| - |Δ′|) n + dim q_S` with `n = dim g_Z`.
pub fn dimension_formula(center_dim: usize, simple: usize, selected: usize, dim_qs: usize) -> Result<usize> {
    if selected > simple {
        return Err(Error::Usage(format!("|Δ′| = {selected} exceeds |Δ| = {simple}")));
    }
    Ok((center_dim + simple - selected) * center_dim + dim_qs)
}

/// The dimension formula evaluated on a parabolic's own data.
pub fn formula_for(q: &ParabolicAlgebra) -> usize {
    let rd = q.root_datum();
    dimension_formula(q.center_dim(), rd.simple_roots().len(), rd.delta_prime().len(), q.semisimple_part().dim())
        .expect("Δ′ is a subset of Δ")
}

/// dim H¹(q; q) = dim Der q - dim ad q.
pub fn h1_dimension(q: &ParabolicAlgebra, exec: Exec) -> usize {
    derivation_algebra(q.algebra(), exec).dim() - inner_derivations(q.algebra()).dim()
}

/// Splits `v` along `first ∔ second`, returning the two components, or
/// `None` if `v` is not in the sum. Assumes the sum is direct.
pub fn split_along(first: &Subspace, second: &Subspace, v: &[Rational]) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let n = first.ambient_dim();
    let (a, b) = (first.dim(), second.dim());
    let mut m = Matrix::zeros(n, a + b);
    for (c, row) in first.basis().row_iter().chain(second.basis().row_iter()).enumerate() {
        for (r, x) in row.iter().enumerate() {
            if !x.is_zero() {
                m.set(r, c, x.clone());
            }
        }
    }
    let coords = solve(&m, v)?;
    Some((first.combine(&coords[..a]), second.combine(&coords[a..])))
}

/// Elementary endomorphism with a single one at `(row, col)`.
pub fn elementary(dim: usize, row: usize, col: usize) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    m.set(row, col, Rational::one());
    m
}
