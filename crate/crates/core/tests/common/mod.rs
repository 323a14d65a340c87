//! Checks shared by the property suites and the acceptance target. Each
//! returns `Err` with a short description of the first failure.

#![allow(dead_code)]

use num_traits::{One, Zero};
use parabolic_der::derivations::{constructive_decompose, derivation_algebra, random_derivation, DecompositionResult};
use parabolic_der::lie::LieAlgebra;
use parabolic_der::linalg::{
    nullspace, rank, rat, rref, solve, sparse_nullspace, Matrix, Rational, SparseRow, Subspace,
};
use parabolic_der::parabolic::{build_gl, BlockComposition, ParabolicAlgebra};
use parabolic_der::Exec;
use rand::Rng;

pub type Check = Result<(), String>;

pub fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn matrix(rows: &[Vec<i64>], cols: usize) -> Matrix {
    let rows = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    Matrix::from_rows(cols, rows).unwrap()
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, range: i64) -> Matrix {
    let rows: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-range..=range)).collect()).collect();
    matrix(&rows, cols)
}

pub fn parabolic(blocks: &str) -> ParabolicAlgebra {
    let n = blocks.split(',').map(|t| t.parse::<usize>().unwrap()).sum();
    ParabolicAlgebra::gl(&BlockComposition::parse(n, blocks).unwrap()).unwrap()
}

/// Textbook Gauss-Jordan over the rationals with leftmost pivots.
pub fn naive_rref(m: &Matrix) -> Matrix {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= p * &f;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    Matrix::from_rows(cols, a).unwrap()
}

pub fn grassmann(a: &Matrix, b: &Matrix) -> Check {
    let (sa, sb) = (Subspace::row_space(a), Subspace::row_space(b));
    let sum = sa.sum(&sb).map_err(|e| e.to_string())?;
    let meet = sa.intersect(&sb).map_err(|e| e.to_string())?;
    ensure(sum.dim() + meet.dim() == sa.dim() + sb.dim(), || {
        format!("dims {} + {} vs {} + {}", sum.dim(), meet.dim(), sa.dim(), sb.dim())
    })?;
    ensure(meet.is_subspace_of(&sa).unwrap() && meet.is_subspace_of(&sb).unwrap(), || "meet escapes".into())?;
    ensure(sa.is_subspace_of(&sum).unwrap() && sb.is_subspace_of(&sum).unwrap(), || "sum too small".into())
}

/// `rref(U m) == rref(m)` for an invertible `U` built from row operations.
pub fn rref_canonical(m: &Matrix, rng: &mut impl Rng) -> Check {
    let mut rows = m.to_rows();
    for _ in 0..(3 * rows.len()) {
        let (i, j) = (rng.gen_range(0..rows.len()), rng.gen_range(0..rows.len()));
        match rng.gen_range(0..3) {
            0 => rows.swap(i, j),
            1 => {
                let k = rat(rng.gen_range(1..=5)) * if rng.gen_bool(0.5) { rat(1) } else { rat(-1) };
                rows[i].iter_mut().for_each(|x| *x = &*x * &k);
            }
            _ if i != j => {
                let k = rat(rng.gen_range(-4..=4));
                let src = rows[j].clone();
                rows[i].iter_mut().zip(&src).for_each(|(x, s)| *x += s * &k);
            }
            _ => {}
        }
    }
    let shuffled = Matrix::from_rows(m.cols(), rows).unwrap();
    let (e1, e2) = (rref(m), rref(&shuffled));
    ensure(e1 == e2, || "row-equivalent matrices have different rref".into())?;
    ensure(rref(&e1.matrix) == e1, || "rref is not idempotent".into())?;
    ensure(Subspace::row_space(m) == Subspace::row_space(&shuffled), || "subspaces differ".into())
}

pub fn rref_matches_naive(m: &Matrix) -> Check {
    let e = rref(m);
    ensure(e.matrix == naive_rref(m), || format!("fraction-free rref differs from Gauss-Jordan on {m:?}"))
}

pub fn nullspace_sound(m: &Matrix) -> Check {
    let ns = nullspace(m);
    for v in ns.basis_vectors() {
        ensure(m.mul_vec(&v).iter().all(Zero::is_zero), || "kernel vector not annihilated".into())?;
    }
    ensure(ns.dim() == m.cols() - rank(m), || "rank-nullity".into())
}

pub fn solve_sound(m: &Matrix, b: &[Rational]) -> Check {
    let aug = {
        let rows = m.to_rows().into_iter().zip(b).map(|(mut r, x)| {
            r.push(x.clone());
            r
        });
        Matrix::from_rows(m.cols() + 1, rows.collect()).unwrap()
    };
    match solve(m, b) {
        Some(x) => ensure(m.mul_vec(&x) == b, || "solution does not solve".into()),
        None => ensure(rank(&aug) > rank(m), || "consistent system reported unsolvable".into()),
    }
}

pub fn sparse_matches_dense(m: &Matrix) -> Check {
    let rows: Vec<SparseRow> = m
        .row_iter()
        .map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect())
        .collect();
    for exec in [Exec::Sequential, Exec::Parallel] {
        let s = sparse_nullspace(m.cols(), &rows, exec);
        ensure(s == nullspace(m), || format!("sparse kernel differs under {exec:?}"))?;
    }
    Ok(())
}

/// Fixtures whose tables must satisfy antisymmetry and Jacobi.
pub fn fixtures() -> Vec<(String, LieAlgebra)> {
    let mut out = vec![("abelian(3)".to_string(), LieAlgebra::abelian(3))];
    for n in 1..=3 {
        out.push((format!("gl_{n}"), build_gl(n).unwrap()));
    }
    for n in 1..=4 {
        for c in BlockComposition::all(n) {
            out.push((format!("gl parabolic {c}"), ParabolicAlgebra::gl(&c).unwrap().algebra().clone()));
            out.push((format!("sl parabolic {c}"), ParabolicAlgebra::sl(&c).unwrap().algebra().clone()));
        }
    }
    let c = BlockComposition::parse(6, "3,2,1").unwrap();
    out.push(("gl_6 (3,2,1)".into(), ParabolicAlgebra::gl(&c).unwrap().algebra().clone()));
    out.push((
        "wide center (2,1)".into(),
        ParabolicAlgebra::new(&BlockComposition::parse(3, "2,1").unwrap(), 3).unwrap().algebra().clone(),
    ));
    out
}

pub fn structure_valid(name: &str, alg: &LieAlgebra) -> Check {
    let r = alg.validate_structure();
    ensure(r.is_empty(), || format!("{name}: {r:?}"))
}

fn cartan_sample(q: &ParabolicAlgebra, rng: &mut impl Rng) -> Vec<Rational> {
    let coords: Vec<Rational> = (0..q.cartan().dim()).map(|_| rat(rng.gen_range(-9..=9))).collect();
    q.cartan().combine(&coords)
}

/// `a_γ(k) γ(h) - a_γ(h) γ(k) = 0` for a random derivation and random
/// Cartan pair, every γ in Φ′.
pub fn scalar_proj(q: &ParabolicAlgebra, rng: &mut impl Rng) -> Check {
    let der = derivation_algebra(q.algebra(), Exec::Parallel);
    let d = random_derivation(&der, q.dim(), rng);
    let (h, k) = (cartan_sample(q, rng), cartan_sample(q, rng));
    let (dh, dk) = (d.mul_vec(&h), d.mul_vec(&k));
    for (gamma, idx) in q.root_vectors() {
        let gh = q.root_value(gamma, &h).unwrap();
        let gk = q.root_value(gamma, &k).unwrap();
        let lhs = &dk[idx] * &gh - &dh[idx] * &gk;
        ensure(lhs.is_zero(), || format!("root {gamma:?}: {lhs}"))?;
    }
    Ok(())
}

/// Change of basis `from -> to` for two realizations of the same matrix
/// algebra; column `i` is the image of basis vector `i`.
pub fn basis_change(from: &ParabolicAlgebra, to: &ParabolicAlgebra) -> Matrix {
    let d = from.dim();
    let mut p = Matrix::zeros(d, d);
    for i in 0..d {
        let m = from.matrix_of(&from.algebra().basis_vector(i)).unwrap();
        p.set_column(i, &to.coords_of_matrix(&m).unwrap());
    }
    p
}

/// Rescaling every positive root vector by 2 leaves `L` and `ad p`
/// unchanged once both are expressed in the same coordinates.
pub fn normalization_independent(blocks: &str, rng: &mut impl Rng) -> Check {
    let c = BlockComposition::parse(blocks.split(',').map(|t| t.parse::<usize>().unwrap()).sum(), blocks).unwrap();
    let q1 = ParabolicAlgebra::gl(&c).unwrap();
    let q2 = ParabolicAlgebra::with_normalization(&c, 1, |i, j| if i < j { rat(2) } else { rat(1) }).unwrap();
    let (p12, p21) = (basis_change(&q1, &q2), basis_change(&q2, &q1));
    ensure(&p12 * &p21 == Matrix::identity(q1.dim()), || "basis change is not invertible".into())?;
    let der = derivation_algebra(q1.algebra(), Exec::Parallel);
    let d1 = random_derivation(&der, q1.dim(), rng);
    let d2 = &(&p12 * &d1) * &p21;
    let r1 = constructive_decompose(&q1, &d1).map_err(|e| e.to_string())?;
    let r2 = constructive_decompose(&q2, &d2).map_err(|e| e.to_string())?;
    let conj = |m: &Matrix| &(&p21 * m) * &p12;
    ensure(conj(&r2.l_part) == r1.l_part, || format!("{blocks}: L depends on normalization"))?;
    let ad1 = q1.algebra().ad_matrix(&r1.p).unwrap();
    let ad2 = q2.algebra().ad_matrix(&r2.p).unwrap();
    ensure(conj(&ad2) == ad1, || format!("{blocks}: ad p depends on normalization"))
}

pub fn decompose(q: &ParabolicAlgebra, d: &Matrix) -> DecompositionResult {
    constructive_decompose(q, d).expect("oracle derivation decomposes")
}

/// `decompose(a D1 + b D2) = a decompose(D1) + b decompose(D2)`.
pub fn linear(q: &ParabolicAlgebra, rng: &mut impl Rng) -> Check {
    let der = derivation_algebra(q.algebra(), Exec::Parallel);
    let (d1, d2) = (random_derivation(&der, q.dim(), rng), random_derivation(&der, q.dim(), rng));
    let a = Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=9).into());
    let b = Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=9).into());
    let mix = &d1.scale(&a) + &d2.scale(&b);
    let (r1, r2, r) = (decompose(q, &d1), decompose(q, &d2), decompose(q, &mix));
    ensure(r.l_part == &r1.l_part.scale(&a) + &r2.l_part.scale(&b), || "L is not linear".into())?;
    let p: Vec<Rational> = r1.p.iter().zip(&r2.p).map(|(x, y)| x * &a + y * &b).collect();
    ensure(r.p == p, || "p is not linear".into())
}

/// `c_{-γ} = -c_γ` whenever both γ and -γ lie in Φ′.
pub fn c_gamma_antisymmetric(r: &DecompositionResult) -> Check {
    for &((i, j), ref c) in &r.c_gamma {
        if let Some((_, c_neg)) = r.c_gamma.iter().find(|(g, _)| *g == (j, i)) {
            ensure(c_neg == &-c.clone(), || format!("c at ({i},{j}) is {c}, at ({j},{i}) is {c_neg}"))?;
        }
    }
    Ok(())
}

/// `p` has no component along the central directions.
pub fn p_in_semisimple_part(q: &ParabolicAlgebra, r: &DecompositionResult) -> Check {
    ensure(q.semisimple_part().contains(&r.p).unwrap(), || "p lies outside q_S".into())
}
