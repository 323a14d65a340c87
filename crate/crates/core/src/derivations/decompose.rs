use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{solve, zero_vec, Matrix, Rational};
use crate::parabolic::ParabolicAlgebra;

type Root = (usize, usize);

/// `D = l_part + ad p` together with the intermediate scalars of the
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult {
    pub l_part: Matrix,
    pub p: Vec<Rational>,
    /// `d_γ = a_γ(h) / γ(h)` for every γ in Φ′.
    pub d_gamma: Vec<(Root, Rational)>,
    /// Eigenvalue of `D′` on each root vector `x_γ`.
    pub c_gamma: Vec<(Root, Rational)>,
    /// Cartan element whose simple-root values are the `c_α`.
    pub h_star: Vec<Rational>,
    /// `D′ = D - ad x` with `x = -Σ d_γ x_γ`.
    pub d_prime: Matrix,
}

/// Whether `D′` stabilizes every root line `Q x_γ` and annihilates `t`.
pub fn diagonalizes_roots(q: &ParabolicAlgebra, d_prime: &Matrix) -> bool {
    let d = q.dim();
    let on_roots = q.root_vectors().into_iter().all(|(_, idx)| {
        let col = d_prime.column(idx);
        col.iter().enumerate().all(|(k, v)| k == idx || v.is_zero())
    });
    let on_t =
        q.root_datum().delta_prime().iter().all(|&k| d_prime.column(q.coroot_index(k)).iter().all(Zero::is_zero));
    debug_assert_eq!(d_prime.rows(), d);
    on_roots && on_t
}

/// Splits a derivation `D` of `q` as `L + ad p` with `L ∈ 𝔏` and `p ∈ q_S`.
///
/// 1. For each γ = (i, j) in Φ′ read `a_γ(h)`, the `x_γ` coefficient of
///    `D(h)` at `h = e_ii - e_jj`, and set `d_γ = a_γ(h) / γ(h)`. With
///    `x = -Σ d_γ x_γ`, `D′ = D - ad x` maps the Cartan into `g_Z ⊕ h`
///    and scales each root vector.
/// 2. Solve `α_k(h*) = c_{α_k}` over the simple roots.
/// 3. `L = D′ - ad h*`, `p = x + h*`.
pub fn constructive_decompose(q: &ParabolicAlgebra, d: &Matrix) -> Result<DecompositionResult> {
    let alg = q.algebra();
    if let Some((i, j)) = alg.leibniz_violation(d)? {
        return Err(Error::NotDerivation(i, j));
    }
    let dim = q.dim();
    let roots = q.root_vectors();

    let mut d_gamma = Vec::with_capacity(roots.len());
    let mut x = zero_vec(dim);
    for &(gamma, idx) in &roots {
        let h = q.cartan_difference(gamma.0, gamma.1);
        let a = d.mul_vec(&h)[idx].clone();
        let value = q.root_value(gamma, &h)?;
        let dg = a / value;
        x[idx] = -dg.clone();
        d_gamma.push((gamma, dg));
    }
    let d_prime = d - &alg.ad_matrix(&x)?;

    let c_gamma: Vec<(Root, Rational)> =
        roots.iter().map(|&(gamma, idx)| (gamma, d_prime.get(idx, idx).clone())).collect();

    let n = q.n();
    let h_star = if n > 1 {
        // Cartan matrix: row k holds α_k(h_l).
        let mut cartan = Matrix::zeros(n - 1, n - 1);
        let mut rhs = Vec::with_capacity(n - 1);
        for k in 1..n {
            for l in 1..n {
                let hl = alg.basis_vector(q.coroot_index(l));
                cartan.set(k - 1, l - 1, q.root_value((k, k + 1), &hl)?);
            }
            let idx = q.root_index((k, k + 1)).expect("simple roots lie in every standard parabolic");
            rhs.push(d_prime.get(idx, idx).clone());
        }
        let coeffs =
            solve(&cartan, &rhs).ok_or_else(|| Error::InvariantViolation("Cartan matrix is singular".into()))?;
        let mut h = zero_vec(dim);
        for (l, c) in coeffs.iter().enumerate() {
            h[q.coroot_index(l + 1)] = c.clone();
        }
        h
    } else {
        zero_vec(dim)
    };

    let l_part = &d_prime - &alg.ad_matrix(&h_star)?;
    let mut p = x;
    for (a, b) in p.iter_mut().zip(&h_star) {
        *a += b;
    }

    let result = DecompositionResult { l_part, p, d_gamma, c_gamma, h_star, d_prime };
    check_result(q, d, &result)?;
    Ok(result)
}

fn check_result(q: &ParabolicAlgebra, d: &Matrix, r: &DecompositionResult) -> Result<()> {
    let alg = q.algebra();
    let fail = |what: &str| Err(Error::InvariantViolation(format!("decomposition: {what}")));
    if !alg.maps_into(&r.l_part, &crate::linalg::Subspace::full(q.dim()), q.g_z())? {
        return fail("L does not map into g_Z");
    }
    for v in q.derived().basis().row_iter() {
        if r.l_part.mul_vec(v).iter().any(|c| !c.is_zero()) {
            return fail("L does not vanish on [q,q]");
        }
    }
    if !q.semisimple_part().contains(&r.p)? {
        return fail("p is not in q_S");
    }
    if &(&r.l_part + &alg.ad_matrix(&r.p)?) != d {
        return fail("L + ad p differs from D");
    }
    Ok(())
}
