//! JSON payloads. Rationals are strings `"p/q"` (or `"p"`), matrices are
//! row-major nested arrays of such strings, indices are 0-based except roots,
//! which use the 1-based `(i, j)` of `ε_i - ε_j`.

use serde_json::{json, Map, Value};

use crate::derivations::{CaseReport, DecompositionResult, RoundTripSummary, VerificationReport};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{format_rational, parse_rational, Matrix, Rational, Subspace};
use crate::parabolic::ParabolicAlgebra;

pub fn rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array(m.row_iter().map(vector).collect())
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        other => Err(parse_err(format!("expected a rational string, found {other}"))),
    }
}

pub fn parse_matrix(v: &Value) -> Result<Matrix> {
    let rows = v.as_array().ok_or_else(|| parse_err("matrix must be an array of rows"))?;
    let cols = match rows.first() {
        None => 0,
        Some(r) => r.as_array().ok_or_else(|| parse_err("matrix row must be an array"))?.len(),
    };
    let parsed = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| parse_err("matrix row must be an array"))?
                .iter()
                .map(parse_rational_value)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(cols, parsed).map_err(|_| parse_err("matrix rows have different lengths"))
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("missing or invalid {key:?}")))
}

fn algebra_fields(alg: &LieAlgebra) -> Map<String, Value> {
    let sc: Vec<Value> = alg.triples().iter().map(|(i, j, k, c)| json!([i, j, k, format_rational(c)])).collect();
    let mut m = Map::new();
    m.insert("dim".into(), json!(alg.dim()));
    m.insert("basis".into(), json!(alg.labels()));
    m.insert("sc".into(), Value::Array(sc));
    m
}

/// `{"dim", "basis", "sc": [[i, j, k, "p/q"], ...]}` with `i < j`.
pub fn algebra(alg: &LieAlgebra) -> Value {
    Value::Object(algebra_fields(alg))
}

pub fn parse_algebra(v: &Value) -> Result<LieAlgebra> {
    let obj = v.as_object().ok_or_else(|| parse_err("algebra must be an object"))?;
    let dim = usize_field(obj, "dim")?;
    let labels: Vec<String> = match obj.get("basis") {
        Some(Value::Array(ls)) => ls
            .iter()
            .map(|l| l.as_str().map(str::to_owned).ok_or_else(|| parse_err("basis labels must be strings")))
            .collect::<Result<_>>()?,
        None => (0..dim).map(|i| format!("x{i}")).collect(),
        Some(_) => return Err(parse_err("basis must be an array")),
    };
    if labels.len() != dim {
        return Err(parse_err(format!("{} labels for dim {dim}", labels.len())));
    }
    let sc = obj.get("sc").and_then(Value::as_array).ok_or_else(|| parse_err("missing \"sc\" array"))?;
    let triples = sc
        .iter()
        .map(|t| {
            let t = t.as_array().filter(|t| t.len() == 4).ok_or_else(|| parse_err("sc entries are [i, j, k, c]"))?;
            let idx = |x: &Value| x.as_u64().map(|x| x as usize).ok_or_else(|| parse_err("sc index must be a count"));
            Ok((idx(&t[0])?, idx(&t[1])?, idx(&t[2])?, parse_rational_value(&t[3])?))
        })
        .collect::<Result<Vec<_>>>()?;
    LieAlgebra::new(labels, triples)
}

fn subspace_entry(s: &Subspace) -> Value {
    matrix(s.basis())
}

/// Algebra dump extended with root data, subspace bases and their dimensions.
pub fn parabolic(q: &ParabolicAlgebra) -> Value {
    let rd = q.root_datum();
    let l = q.langlands();
    let mut m = algebra_fields(q.algebra());
    let mut subspaces = Map::new();
    for (name, s) in [
        ("g_z", q.g_z()),
        ("cartan", q.cartan()),
        ("c", q.c()),
        ("t", q.t()),
        ("derived", q.derived()),
        ("levi", &l.levi),
        ("nilradical", &l.nilradical),
        ("levi_center", &l.levi_center),
        ("levi_semisimple", &l.levi_semisimple),
        ("semisimple_part", q.semisimple_part()),
    ] {
        subspaces.insert(name.into(), subspace_entry(s));
        m.insert(format!("{name}_dim"), json!(s.dim()));
    }
    let idx = q.adapted_basis_indices();
    m.insert("n".into(), json!(q.n()));
    m.insert("blocks".into(), json!(q.composition().blocks()));
    m.insert("center_dim".into(), json!(q.center_dim()));
    m.insert("simple_roots".into(), json!(rd.simple_roots()));
    m.insert("delta_prime".into(), json!(rd.delta_prime()));
    m.insert("phi_prime".into(), json!(rd.phi_prime()));
    m.insert("adapted_indices".into(), json!({"center": idx.center, "c": idx.c, "derived": idx.derived}));
    m.insert("subspaces".into(), Value::Object(subspaces));
    Value::Object(m)
}

/// `{"dim": d, "matrix": [[...]]}`.
pub fn derivation(m: &Matrix) -> Value {
    json!({"dim": m.rows(), "matrix": matrix(m)})
}

pub fn parse_derivation(v: &Value) -> Result<Matrix> {
    let obj = v.as_object().ok_or_else(|| parse_err("derivation must be an object"))?;
    let dim = usize_field(obj, "dim")?;
    let m = parse_matrix(obj.get("matrix").ok_or_else(|| parse_err("missing \"matrix\""))?)?;
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: if m.rows() != dim { m.rows() } else { m.cols() },
        });
    }
    Ok(m)
}

fn root_table(t: &[((usize, usize), Rational)]) -> Value {
    Value::Array(t.iter().map(|((i, j), c)| json!([i, j, format_rational(c)])).collect())
}

pub fn decomposition(r: &DecompositionResult) -> Value {
    json!({
        "l_part": matrix(&r.l_part),
        "p": vector(&r.p),
        "d_gamma": root_table(&r.d_gamma),
        "c_gamma": root_table(&r.c_gamma),
        "h_star": vector(&r.h_star),
    })
}

pub fn verification(r: &VerificationReport) -> Value {
    json!({
        "blocks": r.blocks,
        "center_dim": r.center_dim,
        "dim": r.dim,
        "der_dim": r.der_dim,
        "l_dim": r.l_dim,
        "inner_dim": r.inner_dim,
        "h1_dim": r.h1_dim,
        "formula_dim": r.formula_dim,
        "direct_sum_ok": r.direct_sum_ok,
        "l_is_ideal_ok": r.l_is_ideal_ok,
        "inner_is_ideal_ok": r.inner_is_ideal_ok,
        "formula_ok": r.formula_ok,
        "counterexample": r.counterexample,
    })
}

pub fn round_trips(r: &RoundTripSummary) -> Value {
    json!({"seed": r.seed, "rounds": r.rounds, "passed": r.passed, "failure": r.failure})
}

pub fn case(c: &CaseReport) -> Value {
    let mut v = verification(&c.report);
    v["n"] = json!(c.n);
    v["round_trips"] = round_trips(&c.round_trips);
    v["ok"] = json!(c.all_ok());
    v
}
