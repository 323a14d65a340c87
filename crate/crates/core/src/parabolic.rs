//! `gl_n`, type-A root data and standard parabolic subalgebras given by block
//! compositions, together with their adapted decompositions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{is_direct_sum, zero_vec, Matrix, Rational, Subspace};

/// `gl_n` on the matrix units `E[i,j]` in row-major order.
pub fn build_gl(n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::Usage("gl_n needs n >= 1".into()));
    }
    let idx = |i: usize, j: usize| i * n + j;
    let mut labels = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            labels.push(format!("E[{i},{j}]"));
        }
    }
    // [e_ij, e_kl] = δ_jk e_il - δ_li e_kj
    let mut acc: BTreeMap<(usize, usize, usize), i64> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let (a, b) = (idx(i, j), idx(k, l));
                    if a >= b {
                        continue;
                    }
                    if j == k {
                        *acc.entry((a, b, idx(i, l))).or_default() += 1;
                    }
                    if l == i {
                        *acc.entry((a, b, idx(k, j))).or_default() -= 1;
                    }
                }
            }
        }
    }
    let triples = acc
        .into_iter()
        .filter(|(_, v)| *v != 0)
        .map(|((a, b, c), v)| (a, b, c, Rational::from_integer(BigInt::from(v))))
        .collect();
    LieAlgebra::new(labels, triples)
}

/// An ordered partition of `n` into positive block sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockComposition {
    n: usize,
    blocks: Vec<usize>,
}

impl BlockComposition {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidComposition("no blocks".into()));
        }
        if blocks.contains(&0) {
            return Err(Error::InvalidComposition("blocks must be positive".into()));
        }
        Ok(Self { n: blocks.iter().sum(), blocks })
    }

    /// Parses `"3,2,1"` and checks it sums to `n`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let blocks = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::InvalidComposition(format!("bad block size {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let c = Self::new(blocks)?;
        if c.n != n {
            return Err(Error::InvalidComposition(format!("blocks {s} sum to {}, not {n}", c.n)));
        }
        Ok(c)
    }

    /// The composition whose blocks are glued along the selected simple roots
    /// (1-based `k` means `α_k = ε_k - ε_{k+1}` is in Δ′).
    pub fn from_delta_prime(n: usize, delta_prime: &[usize]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidComposition("n must be positive".into()));
        }
        if let Some(&k) = delta_prime.iter().find(|&&k| k == 0 || k >= n) {
            return Err(Error::InvalidComposition(format!("α_{k} is not a simple root of gl_{n}")));
        }
        let mut blocks = vec![1];
        for k in 1..n {
            if delta_prime.contains(&k) {
                *blocks.last_mut().unwrap() += 1;
            } else {
                blocks.push(1);
            }
        }
        Self::new(blocks)
    }

    /// All `2^(n-1)` compositions of `n`, ordered by the cut mask.
    pub fn all(n: usize) -> Vec<Self> {
        if n == 0 {
            return Vec::new();
        }
        (0..1usize << (n - 1))
            .map(|mask| {
                let glued: Vec<usize> = (1..n).filter(|k| mask & (1 << (k - 1)) == 0).collect();
                Self::from_delta_prime(n, &glued).expect("glue positions are in range")
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// Block index of the 1-based position `i`.
    pub fn block_of(&self, i: usize) -> usize {
        let mut end = 0;
        for (b, size) in self.blocks.iter().enumerate() {
            end += size;
            if i <= end {
                return b;
            }
        }
        panic!("position {i} exceeds n = {}", self.n)
    }
}

impl fmt::Display for BlockComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Type-A root data adapted to a standard parabolic. A root `(i, j)`,
/// `i != j`, 1-based, stands for `ε_i - ε_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatumA {
    n: usize,
    delta_prime: Vec<usize>,
    phi_prime: Vec<(usize, usize)>,
}

impl RootDatumA {
    pub fn for_composition(c: &BlockComposition) -> Self {
        let n = c.n();
        let delta_prime = (1..n).filter(|&k| c.block_of(k) == c.block_of(k + 1)).collect();
        let mut phi_prime = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if i != j && (i < j || c.block_of(i) == c.block_of(j)) {
                    phi_prime.push((i, j));
                }
            }
        }
        Self { n, delta_prime, phi_prime }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Simple roots Δ as 1-based indices `1..n`.
    pub fn simple_roots(&self) -> Vec<usize> {
        (1..self.n).collect()
    }

    pub fn delta_prime(&self) -> &[usize] {
        &self.delta_prime
    }

    /// Simple roots outside Δ′.
    pub fn complement(&self) -> Vec<usize> {
        (1..self.n).filter(|k| !self.delta_prime.contains(k)).collect()
    }

    /// Φ′ in row-major matrix-position order.
    pub fn phi_prime(&self) -> &[(usize, usize)] {
        &self.phi_prime
    }

    pub fn contains(&self, root: (usize, usize)) -> bool {
        self.phi_prime.binary_search(&root).is_ok()
    }

    /// Roots of Φ′ whose negatives also lie in Φ′ (the Levi roots).
    pub fn is_levi_root(&self, (i, j): (usize, usize)) -> bool {
        self.contains((i, j)) && self.contains((j, i))
    }
}

/// Summands of `q_S = l ⋉ n`, with `l = z(l) ⊕ l_S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Langlands {
    pub levi: Subspace,
    pub nilradical: Subspace,
    pub levi_center: Subspace,
    pub levi_semisimple: Subspace,
}

/// Index partition realizing `q = g_Z ∔ c ∔ [q, q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedIndices {
    pub center: Vec<usize>,
    pub c: Vec<usize>,
    pub derived: Vec<usize>,
}

/// A standard parabolic subalgebra `q = g_Z ⊕ q_S` of `gl_n` (center of
/// dimension one), of `sl_n` (no center) or of `gl_n` with extra central
/// directions adjoined.
///
/// Basis order: central vectors (`I`, then `Z[1]`, ...), coroots
/// `H[k] = e_kk - e_{k+1,k+1}`, then root vectors `E[i,j]` for Φ′ in
/// row-major order. A root vector is `scale(i, j) * e_ij`; the default
/// scale is one.
#[derive(Clone, Debug)]
pub struct ParabolicAlgebra {
    composition: BlockComposition,
    roots: RootDatumA,
    center_dim: usize,
    dim: usize,
    algebra: LieAlgebra,
    root_index: BTreeMap<(usize, usize), usize>,
    root_scale: BTreeMap<(usize, usize), Rational>,
    g_z: Subspace,
    cartan: Subspace,
    c: Subspace,
    t: Subspace,
    derived: Subspace,
    semisimple_part: Subspace,
    langlands: Langlands,
}

impl ParabolicAlgebra {
    /// The standard parabolic of `gl_n` for a block composition.
    pub fn gl(composition: &BlockComposition) -> Result<Self> {
        Self::new(composition, 1)
    }

    /// The standard parabolic of `sl_n` (trace-zero part, no center).
    pub fn sl(composition: &BlockComposition) -> Result<Self> {
        Self::new(composition, 0)
    }

    pub fn new(composition: &BlockComposition, center_dim: usize) -> Result<Self> {
        Self::with_normalization(composition, center_dim, |_, _| Rational::one())
    }

    /// Same algebra with root vectors `x_(i,j) = scale(i, j) * e_ij`.
    pub fn with_normalization<F>(composition: &BlockComposition, center_dim: usize, scale: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> Rational,
    {
        let n = composition.n();
        let roots = RootDatumA::for_composition(composition);
        let mut labels = Vec::new();
        if center_dim > 0 {
            labels.push("I".to_string());
        }
        labels.extend((1..center_dim).map(|k| format!("Z[{k}]")));
        labels.extend((1..n).map(|k| format!("H[{k}]")));
        let first_root = labels.len();
        let mut root_index = BTreeMap::new();
        let mut root_scale = BTreeMap::new();
        for (off, &(i, j)) in roots.phi_prime().iter().enumerate() {
            labels.push(format!("E[{i},{j}]"));
            root_index.insert((i, j), first_root + off);
            let s = scale(i, j);
            if s.is_zero() {
                return Err(Error::Usage(format!("root vector scale for ({i},{j}) must be nonzero")));
            }
            root_scale.insert((i, j), s);
        }
        let dim = labels.len();

        let mut this = Self {
            composition: composition.clone(),
            roots,
            center_dim,
            dim,
            algebra: LieAlgebra::abelian(0),
            root_index,
            root_scale,
            g_z: Subspace::zero(dim),
            cartan: Subspace::zero(dim),
            c: Subspace::zero(dim),
            t: Subspace::zero(dim),
            derived: Subspace::zero(dim),
            semisimple_part: Subspace::zero(dim),
            langlands: Langlands {
                levi: Subspace::zero(dim),
                nilradical: Subspace::zero(dim),
                levi_center: Subspace::zero(dim),
                levi_semisimple: Subspace::zero(dim),
            },
        };

        // Matrix realization of every non-extra basis vector, then brackets.
        let mats: Vec<Option<Matrix>> = (0..dim).map(|b| this.basis_matrix(b)).collect();
        let mut triples = Vec::new();
        for a in 0..dim {
            for b in a + 1..dim {
                let (Some(x), Some(y)) = (&mats[a], &mats[b]) else {
                    continue;
                };
                let coords = this.coords_of_matrix(&x.commutator(y))?;
                triples.extend(coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (a, b, k, c)));
            }
        }
        this.algebra = LieAlgebra::new(labels, triples)?;
        this.build_subspaces()?;
        this.check_invariants()?;
        Ok(this)
    }

    fn build_subspaces(&mut self) -> Result<()> {
        let dim = self.dim();
        let central = self.central_indices();
        self.g_z = Subspace::coordinate(dim, &central);
        self.cartan = Subspace::coordinate(dim, &self.coroot_indices());
        let c_idx: Vec<usize> = self.roots.complement().iter().map(|&k| self.coroot_index(k)).collect();
        let t_idx: Vec<usize> = self.roots.delta_prime().iter().map(|&k| self.coroot_index(k)).collect();
        self.c = Subspace::coordinate(dim, &c_idx);
        self.t = Subspace::coordinate(dim, &t_idx);

        let root_idx: Vec<usize> = self.root_index.values().copied().collect();
        let mut derived_idx = t_idx.clone();
        derived_idx.extend(&root_idx);
        self.derived = Subspace::coordinate(dim, &derived_idx);
        let mut qs_idx = self.coroot_indices();
        qs_idx.extend(&root_idx);
        self.semisimple_part = Subspace::coordinate(dim, &qs_idx);

        let (levi_roots, nil_roots): (Vec<_>, Vec<_>) =
            self.root_index.iter().partition(|(r, _)| self.roots.is_levi_root(**r));
        let mut levi_idx = self.coroot_indices();
        levi_idx.extend(levi_roots.iter().map(|(_, &i)| i));
        let levi = Subspace::coordinate(dim, &levi_idx);
        let nilradical = Subspace::coordinate(dim, &nil_roots.iter().map(|(_, &i)| i).collect::<Vec<_>>());

        let levi_alg = self.algebra.restrict(&levi)?;
        let levi_center =
            Subspace::from_vectors(dim, levi_alg.center().basis().row_iter().map(|v| levi.combine(v)).collect())?;
        let levi_semisimple = self.algebra.bracket_span(&levi, &levi)?;
        self.langlands = Langlands { levi, nilradical, levi_center, levi_semisimple };
        Ok(())
    }

    /// Structural invariants, all checked exactly.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::InvariantViolation(format!("{what} fails for blocks {}", self.composition)));
        let q = &self.algebra;
        let full = Subspace::full(self.dim());
        if !q.validate_structure().is_empty() {
            return fail("Lie axioms");
        }
        if !is_direct_sum(&[self.c.clone(), self.t.clone()], &self.cartan)? {
            return fail("h = c ∔ t");
        }
        if !is_direct_sum(&[self.g_z.clone(), self.c.clone(), self.derived.clone()], &full)? {
            return fail("q = g_Z ∔ c ∔ [q,q]");
        }
        if q.derived_algebra() != self.derived {
            return fail("constructed [q,q] matches bracket span");
        }
        if q.center() != self.g_z {
            return fail("center of q is g_Z");
        }
        let l = &self.langlands;
        if !q.is_ideal(&l.nilradical)? {
            return fail("n is an ideal");
        }
        if !q.is_subalgebra(&l.levi)? {
            return fail("l is a subalgebra");
        }
        if !is_direct_sum(&[l.levi.clone(), l.nilradical.clone()], &self.semisimple_part)? {
            return fail("q_S = l ∔ n");
        }
        if !is_direct_sum(&[l.levi_center.clone(), l.levi_semisimple.clone()], &l.levi)? {
            return fail("l = z(l) ∔ l_S");
        }
        if !is_direct_sum(&[l.levi_semisimple.clone(), l.nilradical.clone()], &self.derived)? {
            return fail("[q,q] = l_S ∔ n");
        }
        // c and z(l) are both complements of [q,q] in q_S; they agree only
        // when every block is a singleton.
        if l.levi_center.dim() != self.c.dim() {
            return fail("dim z(l) = dim c");
        }
        if !is_direct_sum(&[self.g_z.clone(), l.levi_center.clone(), self.derived.clone()], &full)? {
            return fail("q = g_Z ∔ z(l) ∔ [q,q]");
        }
        Ok(())
    }

    /// `n x n` matrix of a basis vector, `None` for adjoined central vectors.
    fn basis_matrix(&self, b: usize) -> Option<Matrix> {
        let n = self.n();
        let mut m = Matrix::zeros(n, n);
        if b < self.center_dim {
            if b > 0 {
                return None;
            }
            for i in 0..n {
                m.set(i, i, Rational::one());
            }
        } else if b < self.center_dim + n - 1 {
            let k = b - self.center_dim;
            m.set(k, k, Rational::one());
            m.set(k + 1, k + 1, -Rational::one());
        } else {
            let (&(i, j), _) = self.root_index.iter().find(|(_, &idx)| idx == b)?;
            m.set(i - 1, j - 1, self.root_scale[&(i, j)].clone());
        }
        Some(m)
    }

    /// Coordinates of an `n x n` matrix lying in the matrix part of `q`.
    pub fn coords_of_matrix(&self, m: &Matrix) -> Result<Vec<Rational>> {
        let n = self.n();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.rows() });
        }
        let mut v = zero_vec(self.dim());
        for i in 1..=n {
            for j in 1..=n {
                let x = m.get(i - 1, j - 1);
                if i == j || x.is_zero() {
                    continue;
                }
                let idx = *self
                    .root_index
                    .get(&(i, j))
                    .ok_or_else(|| Error::InvariantViolation(format!("matrix has an entry at ({i},{j}) outside q")))?;
                v[idx] = x / &self.root_scale[&(i, j)];
            }
        }
        let diag: Vec<Rational> = (0..n).map(|i| m.get(i, i).clone()).collect();
        let trace: Rational = diag.iter().sum();
        let mean = &trace / Rational::from_integer(BigInt::from(n));
        if !trace.is_zero() {
            if self.center_dim == 0 {
                return Err(Error::InvariantViolation("matrix has nonzero trace in sl_n".into()));
            }
            v[0] = mean.clone();
        }
        let mut running = Rational::zero();
        for k in 1..n {
            running += &diag[k - 1] - &mean;
            v[self.coroot_index(k)] = running.clone();
        }
        Ok(v)
    }

    /// The `n x n` matrix of an element, ignoring adjoined central directions.
    pub fn matrix_of(&self, v: &[Rational]) -> Result<Matrix> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        let n = self.n();
        let mut m = Matrix::zeros(n, n);
        for (b, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if let Some(bm) = self.basis_matrix(b) {
                m = &m + &bm.scale(c);
            }
        }
        Ok(m)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn composition(&self) -> &BlockComposition {
        &self.composition
    }

    pub fn root_datum(&self) -> &RootDatumA {
        &self.roots
    }

    pub fn n(&self) -> usize {
        self.composition.n()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn center_dim(&self) -> usize {
        self.center_dim
    }

    pub fn central_indices(&self) -> Vec<usize> {
        (0..self.center_dim).collect()
    }

    pub fn coroot_index(&self, k: usize) -> usize {
        assert!((1..self.n()).contains(&k), "coroot index out of range");
        self.center_dim + k - 1
    }

    pub fn coroot_indices(&self) -> Vec<usize> {
        (1..self.n()).map(|k| self.coroot_index(k)).collect()
    }

    pub fn root_index(&self, root: (usize, usize)) -> Option<usize> {
        self.root_index.get(&root).copied()
    }

    /// Φ′ paired with basis indices, in basis order.
    pub fn root_vectors(&self) -> Vec<((usize, usize), usize)> {
        self.roots.phi_prime().iter().map(|&r| (r, self.root_index[&r])).collect()
    }

    pub fn root_scale(&self, root: (usize, usize)) -> Option<&Rational> {
        self.root_scale.get(&root)
    }

    pub fn g_z(&self) -> &Subspace {
        &self.g_z
    }

    pub fn cartan(&self) -> &Subspace {
        &self.cartan
    }

    pub fn c(&self) -> &Subspace {
        &self.c
    }

    pub fn t(&self) -> &Subspace {
        &self.t
    }

    pub fn derived(&self) -> &Subspace {
        &self.derived
    }

    pub fn semisimple_part(&self) -> &Subspace {
        &self.semisimple_part
    }

    pub fn langlands(&self) -> &Langlands {
        &self.langlands
    }

    pub fn adapted_basis_indices(&self) -> AdaptedIndices {
        let c = self.roots.complement().iter().map(|&k| self.coroot_index(k)).collect();
        let mut derived: Vec<usize> = self.roots.delta_prime().iter().map(|&k| self.coroot_index(k)).collect();
        derived.extend(self.root_index.values());
        derived.sort_unstable();
        AdaptedIndices { center: self.central_indices(), c, derived }
    }

    /// Diagonal `(t_1, .., t_n)` of a Cartan element.
    pub fn cartan_diagonal(&self, h: &[Rational]) -> Result<Vec<Rational>> {
        if h.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: h.len() });
        }
        if !self.cartan.contains(h)? {
            return Err(Error::NotInCartan);
        }
        let n = self.n();
        let a = |k: usize| if k == 0 || k == n { Rational::zero() } else { h[self.coroot_index(k)].clone() };
        Ok((1..=n).map(|i| a(i) - a(i - 1)).collect())
    }

    /// Cartan element with a given traceless diagonal.
    pub fn cartan_element(&self, diag: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.n();
        if diag.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: diag.len() });
        }
        if !diag.iter().sum::<Rational>().is_zero() {
            return Err(Error::NotInCartan);
        }
        let mut v = zero_vec(self.dim());
        let mut running = Rational::zero();
        for k in 1..n {
            running += &diag[k - 1];
            v[self.coroot_index(k)] = running.clone();
        }
        Ok(v)
    }

    /// `e_ii - e_jj` as an element of the Cartan subalgebra.
    pub fn cartan_difference(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut diag = zero_vec(self.n());
        diag[i - 1] += Rational::one();
        diag[j - 1] -= Rational::one();
        self.cartan_element(&diag).expect("difference of diagonal units is traceless")
    }

    /// `γ(h) = t_i - t_j` for `γ = (i, j)`.
    pub fn root_value(&self, root: (usize, usize), h: &[Rational]) -> Result<Rational> {
        let (i, j) = root;
        let n = self.n();
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidRoot(i, j, n));
        }
        let t = self.cartan_diagonal(h)?;
        Ok(&t[i - 1] - &t[j - 1])
    }
}
