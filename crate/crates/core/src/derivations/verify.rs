use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    constructive_decompose, derivation_algebra, diagonalizes_roots, formula_for, inner_derivations, l_ideal,
    split_along,
};
use crate::error::Result;
use crate::exec::Exec;
use crate::linalg::{is_direct_sum, Matrix, Rational, Subspace};
use crate::parabolic::{BlockComposition, ParabolicAlgebra};

/// Outcome of checking `Der q = 𝔏 ⊕ ad q` on one parabolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub blocks: String,
    pub center_dim: usize,
    pub dim: usize,
    pub der_dim: usize,
    pub l_dim: usize,
    pub inner_dim: usize,
    pub h1_dim: usize,
    pub formula_dim: usize,
    pub direct_sum_ok: bool,
    pub l_is_ideal_ok: bool,
    pub inner_is_ideal_ok: bool,
    pub formula_ok: bool,
    pub counterexample: Option<String>,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.direct_sum_ok && self.l_is_ideal_ok && self.inner_is_ideal_ok && self.formula_ok
    }
}

/// Seeded random decompositions of one parabolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTripSummary {
    pub seed: u64,
    pub rounds: usize,
    pub passed: usize,
    pub failure: Option<String>,
}

impl RoundTripSummary {
    pub fn all_ok(&self) -> bool {
        self.passed == self.rounds && self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub n: usize,
    pub report: VerificationReport,
    pub round_trips: RoundTripSummary,
}

impl CaseReport {
    pub fn all_ok(&self) -> bool {
        self.report.all_ok() && self.round_trips.all_ok()
    }
}

fn endo(dim: usize, v: &[Rational]) -> Matrix {
    Matrix::unflatten_columns(dim, v).expect("flattened endomorphism has length dim^2")
}

/// Integer combination, coefficients in `[-9, 9]`, of the basis of `der`.
pub fn random_derivation(der: &Subspace, dim: usize, rng: &mut impl Rng) -> Matrix {
    let coords: Vec<Rational> =
        (0..der.dim()).map(|_| Rational::from_integer(rng.gen_range(-9i64..=9).into())).collect();
    endo(dim, &der.combine(&coords))
}

pub fn verify_main_theorem(q: &ParabolicAlgebra, exec: Exec) -> Result<VerificationReport> {
    let alg = q.algebra();
    let dim = q.dim();
    let der = derivation_algebra(alg, exec);
    let l = l_ideal(q);
    let inner = inner_derivations(alg);
    let mut counterexample = None;

    let direct_sum_ok = is_direct_sum(&[l.clone(), inner.clone()], &der)?;
    if !direct_sum_ok {
        counterexample = Some(format!(
            "Der has dim {} but 𝔏 + ad q has dim {} (𝔏 ∩ ad q dim {})",
            der.dim(),
            l.sum(&inner)?.dim(),
            l.intersect(&inner)?.dim()
        ));
    }

    let der_maps: Vec<Matrix> = der.basis().row_iter().map(|v| endo(dim, v)).collect();
    let l_maps: Vec<Matrix> = l.basis().row_iter().map(|v| endo(dim, v)).collect();
    let ad_maps: Vec<Matrix> = (0..dim).map(|i| alg.ad_basis(i)).collect();

    let l_witness = exec.find_first(der_maps.len(), |a| {
        l_maps.iter().enumerate().find_map(|(b, lm)| {
            let comm = der_maps[a].commutator(lm).flatten_columns();
            (!l.contains(&comm).expect("same ambient")).then(|| format!("[D_{a}, L_{b}] ∉ 𝔏"))
        })
    });
    let inner_witness = exec.find_first(der_maps.len(), |a| {
        let dm = &der_maps[a];
        ad_maps.iter().enumerate().find_map(|(i, ad)| {
            let comm = dm.commutator(ad);
            let expected = alg.ad_matrix(&dm.column(i)).expect("column has algebra length");
            let inside = inner.contains(&comm.flatten_columns()).expect("same ambient");
            (!inside || comm != expected).then(|| format!("[D_{a}, ad x_{i}] != ad(D_{a} x_{i})"))
        })
    });
    let l_is_ideal_ok = l_witness.is_none();
    let inner_is_ideal_ok = inner_witness.is_none();
    counterexample = counterexample.or(l_witness).or(inner_witness);

    let formula_dim = formula_for(q);
    let formula_ok = formula_dim == der.dim();
    if !formula_ok && counterexample.is_none() {
        counterexample = Some(format!("formula gives {formula_dim}, oracle gives {}", der.dim()));
    }

    Ok(VerificationReport {
        blocks: q.composition().to_string(),
        center_dim: q.center_dim(),
        dim,
        der_dim: der.dim(),
        l_dim: l.dim(),
        inner_dim: inner.dim(),
        h1_dim: der.dim() - inner.dim(),
        formula_dim,
        direct_sum_ok,
        l_is_ideal_ok,
        inner_is_ideal_ok,
        formula_ok,
        counterexample,
    })
}

/// Decomposes `rounds` seeded random derivations and checks each result
/// against the projection onto 𝔏 along ad q.
pub fn verify_round_trips(q: &ParabolicAlgebra, rounds: usize, seed: u64, exec: Exec) -> RoundTripSummary {
    let alg = q.algebra();
    let dim = q.dim();
    let der = derivation_algebra(alg, exec);
    let l = l_ideal(q);
    let inner = inner_derivations(alg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<Matrix> = (0..rounds).map(|_| random_derivation(&der, dim, &mut rng)).collect();

    let outcomes = exec.map(&inputs, |d| -> std::result::Result<(), String> {
        let r = constructive_decompose(q, d).map_err(|e| e.to_string())?;
        if !diagonalizes_roots(q, &r.d_prime) {
            return Err("D′ fails to stabilize root lines or annihilate t".into());
        }
        let (l_proj, inner_proj) = split_along(&l, &inner, &d.flatten_columns()).ok_or("D is outside 𝔏 + ad q")?;
        if l_proj != r.l_part.flatten_columns() {
            return Err("L differs from the projection onto 𝔏".into());
        }
        let ad_p = alg.ad_matrix(&r.p).map_err(|e| e.to_string())?;
        if inner_proj != ad_p.flatten_columns() {
            return Err("ad p differs from the projection onto ad q".into());
        }
        Ok(())
    });
    let passed = outcomes.iter().filter(|o| o.is_ok()).count();
    let failure = outcomes.into_iter().enumerate().find_map(|(i, o)| o.err().map(|e| format!("round {i}: {e}")));
    RoundTripSummary { seed, rounds, passed, failure }
}

/// Seed used for the case at position `index` of a sweep.
pub fn case_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add((index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Every composition of every `n <= max_n`, in order of `n` then
/// composition. Cases run under `exec`; the report order is fixed.
pub fn sweep(max_n: usize, center_dim: usize, rounds: usize, seed: u64, exec: Exec) -> Result<Vec<CaseReport>> {
    let cases: Vec<BlockComposition> = (1..=max_n).flat_map(BlockComposition::all).collect();
    let indexed: Vec<(usize, BlockComposition)> = cases.into_iter().enumerate().collect();
    exec.map(&indexed, |(i, c)| -> Result<CaseReport> {
        let q = ParabolicAlgebra::new(c, center_dim)?;
        let report = verify_main_theorem(&q, exec)?;
        let round_trips = verify_round_trips(&q, rounds, case_seed(seed, *i), exec);
        Ok(CaseReport { n: c.n(), report, round_trips })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str, center: usize) -> ParabolicAlgebra {
        let n = s.split(',').map(|t| t.parse::<usize>().unwrap()).sum();
        ParabolicAlgebra::new(&BlockComposition::parse(n, s).unwrap(), center).unwrap()
    }

    #[test]
    fn sl3_borel_report() {
        let r = verify_main_theorem(&q("1,1,1", 0), Exec::Sequential).unwrap();
        assert_eq!((r.der_dim, r.l_dim, r.inner_dim), (5, 0, 5));
        assert!(r.all_ok(), "{r:?}");
    }

    #[test]
    fn extra_center_exercises_the_quadratic_term() {
        // m = 2, blocks 2,1: (2 + 2 - 1) * 2 + dim q_S (6) = 12.
        let r = verify_main_theorem(&q("2,1", 2), Exec::Parallel).unwrap();
        assert_eq!(r.formula_dim, 12);
        assert!(r.all_ok(), "{r:?}");
    }

    #[test]
    fn round_trips_pass_and_replay() {
        let p = q("2,1", 1);
        let a = verify_round_trips(&p, 5, 7, Exec::Sequential);
        let b = verify_round_trips(&p, 5, 7, Exec::Parallel);
        assert!(a.all_ok(), "{a:?}");
        assert_eq!(a, b);
    }

    #[test]
    fn small_sweep_is_mode_independent() {
        let a = sweep(3, 1, 2, 42, Exec::Sequential).unwrap();
        let b = sweep(3, 1, 2, 42, Exec::Parallel).unwrap();
        assert_eq!(a.len(), 7);
        assert!(a.iter().all(CaseReport::all_ok));
        assert_eq!(a, b);
    }
}
