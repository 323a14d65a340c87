//! Lie algebras given by structure constants on a labeled basis.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{add_scaled, format_rational, sparse_nullspace, zero_vec, Matrix, Rational, SparseRow, Subspace};

/// `(i, j, k, c)` meaning `[x_i, x_j]` has coefficient `c` on `x_k`.
pub type Triple = (usize, usize, usize, Rational);

/// A finite-dimensional Lie algebra over Q.
///
/// The table is stored as given. Only `i < j` entries are needed for a valid
/// algebra; a missing `(j, i)` entry is implied by antisymmetry and the
/// diagonal is zero unless explicitly (and wrongly) stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    stored: BTreeMap<(usize, usize), BTreeMap<usize, Rational>>,
    table: Vec<Vec<Vec<(usize, Rational)>>>,
}

/// Every failure of the Lie axioms found in a structure table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// `(i, j, k)` where `c_ij^k != -c_ji^k` (or `c_ii^k != 0`).
    pub antisymmetry: Vec<(usize, usize, usize)>,
    /// `(i, j, k)`, `i < j < k`, where the Jacobi sum is nonzero.
    pub jacobi: Vec<(usize, usize, usize)>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.antisymmetry.is_empty() && self.jacobi.is_empty()
    }
}

impl LieAlgebra {
    pub fn new(labels: Vec<String>, triples: Vec<Triple>) -> Result<Self> {
        let dim = labels.len();
        let mut stored: BTreeMap<(usize, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
        for (i, j, k, c) in triples {
            let worst = i.max(j).max(k);
            if worst >= dim {
                return Err(Error::DimensionMismatch { expected: dim, found: worst + 1 });
            }
            *stored.entry((i, j)).or_default().entry(k).or_insert_with(Rational::zero) += c;
        }
        for row in stored.values_mut() {
            row.retain(|_, c| !c.is_zero());
        }
        stored.retain(|_, row| !row.is_empty());

        let mut table = vec![vec![Vec::new(); dim]; dim];
        for (&(i, j), row) in &stored {
            table[i][j] = row.iter().map(|(&k, c)| (k, c.clone())).collect();
            if i != j && !stored.contains_key(&(j, i)) {
                table[j][i] = row.iter().map(|(&k, c)| (k, -c.clone())).collect();
            }
        }
        Ok(Self { labels, stored, table })
    }

    pub fn abelian(dim: usize) -> Self {
        let labels = (1..=dim).map(|i| format!("A[{i}]")).collect();
        Self::new(labels, Vec::new()).expect("empty table is well formed")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `[x_i, x_j]` as sparse coordinates.
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i][j]
    }

    /// Canonical `i < j` triples sorted by `(i, j, k)`.
    pub fn triples(&self) -> Vec<Triple> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for (k, c) in &self.table[i][j] {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().flatten().all(Vec::is_empty)
    }

    pub fn validate_structure(&self) -> ValidationReport {
        let n = self.dim();
        let mut report = ValidationReport::default();
        for (&(i, j), row) in &self.stored {
            if i == j {
                report.antisymmetry.extend(row.keys().map(|&k| (i, i, k)));
            } else if i < j {
                if let Some(rev) = self.stored.get(&(j, i)) {
                    let ks: std::collections::BTreeSet<usize> = row.keys().chain(rev.keys()).copied().collect();
                    for k in ks {
                        let a = row.get(&k).cloned().unwrap_or_else(Rational::zero);
                        let b = rev.get(&k).cloned().unwrap_or_else(Rational::zero);
                        if !(a + b).is_zero() {
                            report.antisymmetry.push((i, j, k));
                        }
                    }
                }
            }
        }
        report.antisymmetry.sort_unstable();

        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut sum = zero_vec(n);
                    self.accumulate_nested(&mut sum, i, j, k);
                    self.accumulate_nested(&mut sum, j, k, i);
                    self.accumulate_nested(&mut sum, k, i, j);
                    if sum.iter().any(|c| !c.is_zero()) {
                        report.jacobi.push((i, j, k));
                    }
                }
            }
        }
        report
    }

    /// Adds `[[x_a, x_b], x_c]` into `acc`.
    fn accumulate_nested(&self, acc: &mut [Rational], a: usize, b: usize, c: usize) {
        for (m, coef) in &self.table[a][b] {
            for (k, d) in &self.table[*m][c] {
                acc[*k] += coef * d;
            }
        }
    }

    fn check(&self, v: &[Rational]) -> Result<()> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() })
        }
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        crate::linalg::unit_vec(self.dim(), i)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.dim());
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let s = xi * yj;
                for (k, c) in &self.table[i][j] {
                    out[*k] += &s * c;
                }
            }
        }
        out
    }

    /// `[x, x_j]` for a single basis vector.
    fn bracket_with_basis(&self, x: &[Rational], j: usize) -> Vec<Rational> {
        let mut out = zero_vec(self.dim());
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, c) in &self.table[i][j] {
                out[*k] += xi * c;
            }
        }
        out
    }

    /// Span of all brackets of basis vectors of `a` with basis vectors of `b`.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        for s in [a, b] {
            if s.ambient_dim() != self.dim() {
                return Err(Error::DimensionMismatch { expected: self.dim(), found: s.ambient_dim() });
            }
        }
        let mut vectors = Vec::with_capacity(a.dim() * b.dim());
        for u in a.basis().row_iter() {
            for v in b.basis().row_iter() {
                let w = self.bracket_unchecked(u, v);
                if w.iter().any(|c| !c.is_zero()) {
                    vectors.push(w);
                }
            }
        }
        Subspace::from_vectors(self.dim(), vectors)
    }

    pub fn derived_algebra(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.bracket_span(&full, &full).expect("full subspaces share the ambient")
    }

    /// Joint kernel of all `ad x_i`: `z` with `[z, x_i] = 0` for every `i`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let mut rows: Vec<SparseRow> = Vec::new();
        for i in 0..n {
            let mut eqs: BTreeMap<usize, SparseRow> = BTreeMap::new();
            for m in 0..n {
                for (k, c) in &self.table[m][i] {
                    eqs.entry(*k).or_default().push((m, c.clone()));
                }
            }
            rows.extend(eqs.into_values());
        }
        sparse_nullspace(n, &rows, crate::Exec::Sequential)
    }

    /// Matrix of `y -> [x, y]`; column `j` holds `[x, x_j]`.
    pub fn ad_matrix(&self, x: &[Rational]) -> Result<Matrix> {
        self.check(x)?;
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            m.set_column(j, &self.bracket_with_basis(x, j));
        }
        Ok(m)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad_matrix(&self.basis_vector(i)).expect("basis vector has algebra length")
    }

    /// Whether `[self, s] ⊆ s`.
    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        self.bracket_span(&Subspace::full(self.dim()), s)?.is_subspace_of(s)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        self.bracket_span(s, s)?.is_subspace_of(s)
    }

    /// The subalgebra `s` as a standalone algebra on its canonical basis.
    pub fn restrict(&self, s: &Subspace) -> Result<LieAlgebra> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: s.ambient_dim() });
        }
        let basis = s.basis_vectors();
        let mut triples = Vec::new();
        for (a, u) in basis.iter().enumerate() {
            for (b, v) in basis.iter().enumerate().skip(a + 1) {
                let w = self.bracket_unchecked(u, v);
                let coords = s.coordinates(&w)?.ok_or(Error::NotBracketClosed(a, b))?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        triples.push((a, b, k, c));
                    }
                }
            }
        }
        let labels = basis.iter().map(|v| self.describe(v)).collect();
        LieAlgebra::new(labels, triples)
    }

    /// Human-readable linear combination of basis labels.
    pub fn describe(&self, v: &[Rational]) -> String {
        let mut out = String::new();
        for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            if !mag.is_one() {
                out.push_str(&format_rational(&mag));
                out.push('*');
            }
            out.push_str(&self.labels[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn check_endo(&self, d: &Matrix) -> Result<()> {
        let n = self.dim();
        if d.rows() != n || d.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if d.rows() != n { d.rows() } else { d.cols() },
            });
        }
        Ok(())
    }

    /// First basis pair `(i, j)`, `i < j`, where the Leibniz rule fails.
    pub fn leibniz_violation(&self, d: &Matrix) -> Result<Option<(usize, usize)>> {
        self.check_endo(d)?;
        let n = self.dim();
        let images: Vec<Vec<Rational>> = (0..n).map(|j| d.column(j)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let mut lhs = zero_vec(n);
                for (m, c) in &self.table[i][j] {
                    add_scaled(&mut lhs, c, &images[*m]);
                }
                // [d x_i, x_j] + [x_i, d x_j] = [d x_i, x_j] - [d x_j, x_i]
                let a = self.bracket_with_basis(&images[i], j);
                let b = self.bracket_with_basis(&images[j], i);
                let ok = lhs.iter().zip(a.iter().zip(&b)).all(|(l, (p, q))| *l == p - q);
                if !ok {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_derivation(&self, d: &Matrix) -> Result<bool> {
        Ok(self.leibniz_violation(d)?.is_none())
    }

    /// Whether the endomorphism `d` maps subspace `from` into subspace `into`.
    pub fn maps_into(&self, d: &Matrix, from: &Subspace, into: &Subspace) -> Result<bool> {
        self.check_endo(d)?;
        for u in from.basis().row_iter() {
            if !into.contains(&d.mul_vec(u))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
