//! Sparse fraction-free elimination for large, very sparse homogeneous
//! systems such as the Leibniz equations of a derivation algebra.
//!
//! Rows are kept as primitive integer vectors in semi-echelon form (distinct
//! leading columns). Equations that share no unknown are independent, so the
//! system is first split into connected components which are eliminated
//! separately.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, Subspace};
use crate::exec::Exec;

/// `(column, value)` pairs; columns need not be sorted or distinct on input.
pub type SparseRow = Vec<(usize, Rational)>;

type IntRow = Vec<(usize, BigInt)>;

/// Sorted, merged, primitive integer row with positive leading entry.
fn normalize(row: &SparseRow) -> IntRow {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (c, v) in row {
        if !v.is_zero() {
            *acc.entry(*c).or_insert_with(Rational::zero) += v;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    let lcm = acc.values().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let ints: IntRow = acc.into_iter().map(|(c, v)| (c, v.numer() * (&lcm / v.denom()))).collect();
    make_primitive(ints)
}

fn make_primitive(mut row: IntRow) -> IntRow {
    let Some(first) = row.first() else {
        return row;
    };
    let mut g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if first.1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    row
}

/// `a * x - b * y` on sorted sparse rows.
fn combine(a: &BigInt, x: &IntRow, b: &BigInt, y: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row-space builder over `Q^cols`.
#[derive(Debug, Clone)]
pub struct SparseEliminator {
    cols: usize,
    rows: Vec<IntRow>,
    pivot_of: BTreeMap<usize, usize>,
}

impl SparseEliminator {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new(), pivot_of: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn insert(&mut self, row: &SparseRow) -> bool {
        debug_assert!(row.iter().all(|(c, _)| *c < self.cols));
        self.insert_int(normalize(row))
    }

    fn insert_int(&mut self, mut row: IntRow) -> bool {
        loop {
            let Some((lead, lead_val)) = row.first() else {
                return false;
            };
            match self.pivot_of.get(lead) {
                None => {
                    self.pivot_of.insert(*lead, self.rows.len());
                    self.rows.push(row);
                    return true;
                }
                Some(&k) => {
                    let pivot = &self.rows[k];
                    let p = &pivot[0].1;
                    let g = p.gcd(lead_val);
                    let (a, b) = (p / &g, lead_val / &g);
                    let next = combine(&a, &row, &b, pivot);
                    debug_assert!(next.first().is_none_or(|(c, _)| c > lead));
                    row = make_primitive(next);
                }
            }
        }
    }

    /// Fully reduced rows as `(pivot, entries)` with the pivot entry equal to
    /// one, sorted by pivot. Entries other than the pivot lie in free columns.
    pub fn reduced_rows(&self) -> Vec<(usize, Vec<(usize, Rational)>)> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| self.rows[k][0].0);

        let mut reduced: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for &k in order.iter().rev() {
            let row = &self.rows[k];
            let (pc, pv) = (row[0].0, Rational::from_integer(row[0].1.clone()));
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (c, v) in &row[1..] {
                let v = Rational::from_integer(v.clone()) / &pv;
                match reduced.get(c) {
                    Some(r) => {
                        // r has a unit pivot at c and otherwise only free columns.
                        for (fc, fv) in &r[1..] {
                            *acc.entry(*fc).or_insert_with(Rational::zero) -= &v * fv;
                        }
                    }
                    None => *acc.entry(*c).or_insert_with(Rational::zero) += v,
                }
            }
            let mut entries = vec![(pc, Rational::one())];
            entries.extend(acc.into_iter().filter(|(_, v)| !v.is_zero()));
            reduced.insert(pc, entries);
        }
        reduced.into_iter().collect()
    }

    /// Kernel of the accumulated rows as a canonical subspace.
    pub fn nullspace(&self) -> Subspace {
        kernel_from_reduced(self.cols, &self.reduced_rows())
    }
}

fn kernel_from_reduced(cols: usize, reduced: &[(usize, Vec<(usize, Rational)>)]) -> Subspace {
    let mut is_pivot = vec![false; cols];
    for (p, _) in reduced {
        is_pivot[*p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut slot = vec![usize::MAX; cols];
    for (i, &f) in free.iter().enumerate() {
        slot[f] = i;
    }
    let mut basis = vec![vec![Rational::zero(); cols]; free.len()];
    for (i, &f) in free.iter().enumerate() {
        basis[i][f] = Rational::one();
    }
    for (p, entries) in reduced {
        for (c, v) in &entries[1..] {
            basis[slot[*c]][*p] = -v.clone();
        }
    }
    Subspace::from_vectors(cols, basis).expect("kernel vectors have the ambient length")
}

/// Kernel of a sparse homogeneous system. Rows that touch disjoint sets of
/// unknowns are grouped into independent blocks which `exec` may eliminate
/// concurrently; the result does not depend on the execution mode.
pub fn sparse_nullspace(cols: usize, rows: &[SparseRow], exec: Exec) -> Subspace {
    let mut parent: Vec<usize> = (0..cols).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for row in rows {
        let mut it = row.iter().filter(|(_, v)| !v.is_zero()).map(|(c, _)| *c);
        if let Some(first) = it.next() {
            let r0 = find(&mut parent, first);
            for c in it {
                let rc = find(&mut parent, c);
                if rc != r0 {
                    parent[rc] = r0;
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<&SparseRow>> = BTreeMap::new();
    for row in rows {
        if let Some((c, _)) = row.iter().find(|(_, v)| !v.is_zero()) {
            let root = find(&mut parent, *c);
            groups.entry(root).or_default().push(row);
        }
    }
    let groups: Vec<Vec<&SparseRow>> = groups.into_values().collect();
    let reduced_blocks = exec.map(&groups, |group| {
        let mut e = SparseEliminator::new(cols);
        for row in group {
            e.insert(row);
        }
        e.reduced_rows()
    });
    let mut reduced: Vec<(usize, Vec<(usize, Rational)>)> = reduced_blocks.into_iter().flatten().collect();
    reduced.sort_by_key(|(p, _)| *p);
    kernel_from_reduced(cols, &reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{nullspace, rat, ratio, Matrix};

    fn dense_to_sparse(m: &Matrix) -> Vec<SparseRow> {
        m.row_iter()
            .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect())
            .collect()
    }

    #[test]
    fn matches_dense_kernel() {
        let m = Matrix::from_i64(&[&[1, 2, 0, -1, 0], &[2, 4, 1, 0, 0], &[0, 0, 0, 0, 3], &[3, 6, 1, -1, 3]]);
        let rows = dense_to_sparse(&m);
        assert_eq!(sparse_nullspace(5, &rows, Exec::Sequential), nullspace(&m));
        assert_eq!(sparse_nullspace(5, &rows, Exec::Parallel), nullspace(&m));
    }

    #[test]
    fn duplicate_columns_are_summed() {
        let row: SparseRow = vec![(1, rat(1)), (0, ratio(1, 2)), (1, rat(1))];
        let mut e = SparseEliminator::new(3);
        assert!(e.insert(&row));
        assert!(!e.insert(&vec![(0, rat(1)), (1, rat(4))]));
        assert_eq!(e.rank(), 1);
    }

    #[test]
    fn empty_system_has_full_kernel() {
        assert_eq!(sparse_nullspace(4, &[], Exec::Sequential), Subspace::full(4));
    }
}
