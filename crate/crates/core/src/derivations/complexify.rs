use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Rational, Subspace};

/// The complexification `g ∔ i g` as a real algebra of twice the dimension,
/// basis `x_1..x_d, J x_1..J x_d`.
#[derive(Clone, Debug)]
pub struct Complexification {
    pub algebra: LieAlgebra,
    /// `2d x d`; column `i` is the image of `x_i`.
    pub embedding: Matrix,
    /// Multiplication by `i`.
    pub j: Matrix,
}

impl Complexification {
    /// `span(E(s) ∪ J E(s))` for a subspace `s` of the real form.
    pub fn complexify_subspace(&self, s: &Subspace) -> Subspace {
        let d = self.embedding.cols();
        let mut vectors = Vec::with_capacity(2 * s.dim());
        for v in s.basis().row_iter() {
            let real = self.embedding.mul_vec(v);
            vectors.push(self.j.mul_vec(&real));
            vectors.push(real);
        }
        Subspace::from_vectors(2 * d, vectors).expect("embedded vectors have length 2d")
    }

    pub fn real_form(&self) -> Subspace {
        let d = self.embedding.cols();
        Subspace::coordinate(2 * d, &(0..d).collect::<Vec<_>>())
    }
}

/// `[x + iy, u + iv] = [x,u] - [y,v] + i([x,v] + [y,u])` on structure constants.
pub fn complexify(algebra: &LieAlgebra) -> Complexification {
    let d = algebra.dim();
    let mut labels: Vec<String> = algebra.labels().to_vec();
    labels.extend(algebra.labels().iter().map(|l| format!("i*{l}")));
    let mut triples = Vec::new();
    for a in 0..d {
        for b in 0..d {
            for (k, c) in algebra.structure(a, b) {
                if a < b {
                    triples.push((a, b, *k, c.clone()));
                    triples.push((d + a, d + b, *k, -c.clone()));
                }
                // [x_a, J x_b] = J [x_a, x_b]
                triples.push((a, d + b, d + k, c.clone()));
            }
        }
    }
    let algebra_c = LieAlgebra::new(labels, triples).expect("indices stay below 2d");

    let mut embedding = Matrix::zeros(2 * d, d);
    let mut j = Matrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        embedding.set(i, i, Rational::one());
        j.set(d + i, i, Rational::one());
        j.set(i, d + i, -Rational::one());
    }
    Complexification { algebra: algebra_c, embedding, j }
}

/// `D̂(x + iy) = D x + i D y`, block diagonal on the doubled basis.
pub fn extend_derivation(algebra: &LieAlgebra, d: &Matrix) -> Result<Matrix> {
    if let Some((i, j)) = algebra.leibniz_violation(d)? {
        return Err(Error::NotDerivation(i, j));
    }
    let n = algebra.dim();
    let mut out = Matrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            let v = d.get(r, c);
            if !v.is_zero() {
                out.set(r, c, v.clone());
                out.set(n + r, n + c, v.clone());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::tests::sl2;
    use crate::parabolic::build_gl;

    #[test]
    fn sl2_complexification() {
        let c = complexify(&sl2());
        assert_eq!(c.algebra.dim(), 6);
        assert!(c.algebra.validate_structure().is_empty());
        assert!(c.algebra.center().is_zero());
        assert_eq!(&c.j * &c.j, Matrix::identity(6).scale(&-Rational::one()));
    }

    #[test]
    fn abelian_line_doubles() {
        let c = complexify(&LieAlgebra::abelian(1));
        assert_eq!(c.algebra.dim(), 2);
        assert!(c.algebra.is_abelian());
    }

    #[test]
    fn gl2_center_is_complexified() {
        let g = build_gl(2).unwrap();
        let c = complexify(&g);
        let center = c.algebra.center();
        assert_eq!(center.dim(), 2);
        assert_eq!(center, c.complexify_subspace(&g.center()));
    }

    #[test]
    fn extension_of_inner_is_inner() {
        let g = sl2();
        let c = complexify(&g);
        let ext = extend_derivation(&g, &g.ad_basis(1)).unwrap();
        let e = c.embedding.column(1);
        assert_eq!(ext, c.algebra.ad_matrix(&e).unwrap());
        assert!(extend_derivation(&g, &Matrix::zeros(3, 3)).unwrap().is_zero());
        assert!(extend_derivation(&g, &Matrix::identity(3)).is_err());
    }
}
