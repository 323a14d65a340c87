use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Matrix, Rational, Subspace};

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Clears denominators row by row, giving an integer matrix with the same row space.
fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    m.row_iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free forward elimination. Returns the pivot columns; the first
/// `pivots.len()` rows of `a` are left in (unnormalized) echelon form and the
/// remaining rows are zero. Every division is exact.
fn bareiss_forward(a: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// The unique reduced row echelon form of `m`. Pivots are chosen as the first
/// nonzero entry in row order, so the computation is deterministic.
pub fn rref(m: &Matrix) -> Echelon {
    let cols = m.cols();
    let mut a = integer_rows(m);
    let pivots = bareiss_forward(&mut a, cols);
    let rank = pivots.len();

    let mut rows: Vec<Vec<Rational>> =
        a.into_iter().take(rank).map(|row| row.into_iter().map(Rational::from_integer).collect()).collect();

    for k in (0..rank).rev() {
        let pc = pivots[k];
        let inv = rows[k][pc].recip();
        for x in rows[k].iter_mut().skip(pc) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let (above, below) = rows.split_at_mut(k);
        let pivot_row = &below[0];
        for row in above.iter_mut() {
            let f = row[pc].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(pivot_row).skip(pc) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }

    let mut out = Matrix::zeros(m.rows(), cols);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, x) in row.into_iter().enumerate() {
            out.set(r, c, x);
        }
    }
    Echelon { matrix: out, rank, pivots }
}

/// Kernel `{v : m v = 0}` with canonical basis.
pub fn nullspace(m: &Matrix) -> Subspace {
    let cols = m.cols();
    let e = rref(m);
    let mut is_pivot = vec![false; cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<Vec<Rational>> = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in e.pivots.iter().enumerate() {
                v[p] = -e.matrix.get(r, f).clone();
            }
            v
        })
        .collect();
    Subspace::from_vectors(cols, basis).expect("kernel vectors have the ambient length")
}

/// A particular solution of `m x = b` (free variables set to zero), or `None`
/// when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows(), "right-hand side length must equal row count");
    let cols = m.cols();
    let augmented: Vec<Vec<Rational>> = m
        .row_iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.to_vec();
            r.push(bi.clone());
            r
        })
        .collect();
    let aug = Matrix::from_rows(cols + 1, augmented).expect("augmented rows are uniform");
    let e = rref(&aug);
    if e.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &p) in e.pivots.iter().enumerate() {
        x[p] = e.matrix.get(r, cols).clone();
    }
    Some(x)
}

/// Rank without the back-substitution pass.
pub fn rank(m: &Matrix) -> usize {
    let mut a = integer_rows(m);
    bareiss_forward(&mut a, m.cols()).len()
}
