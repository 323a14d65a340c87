//! `derq` command-line front end.
//!
//! Exit codes: 0 success, 2 usage, 3 theorem or invariant violation,
//! 4 invalid mathematical input.

use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::derivations::{
    constructive_decompose, derivation_algebra, formula_for, inner_derivations, l_ideal, sweep, verify_main_theorem,
    verify_round_trips, CaseReport,
};
use crate::error::Error;
use crate::exec::Exec;
use crate::json;
use crate::linalg::{format_rational, is_direct_sum};
use crate::parabolic::{BlockComposition, ParabolicAlgebra};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;
pub const EXIT_INVALID_INPUT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "derq", version, about = "Derivation algebras of parabolic subalgebras of gl_n, computed exactly")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump the parabolic: basis, structure constants, root data, subspaces.
    Describe(CaseArgs),
    /// Compute Der q by the Leibniz-system oracle and compare with the formula.
    Der(CaseArgs),
    /// Split a derivation read from --input as L + ad p.
    Decompose {
        #[command(flatten)]
        case: CaseArgs,
        /// Derivation JSON file, or `-` for stdin.
        #[arg(long)]
        input: String,
    },
    /// Check Der q = 𝔏 ⊕ ad q over all compositions up to --max-n, or one case.
    Verify(VerifyArgs),
    /// dim H¹(q; q) = dim Der q - dim ad q.
    H1(CaseArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Run every inner loop on the calling thread.
    #[arg(long)]
    sequential: bool,
}

impl Output {
    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }
}

#[derive(Args, Debug)]
struct CaseArgs {
    #[arg(long)]
    n: usize,
    /// Block sizes, e.g. `3,2,1`.
    #[arg(long)]
    blocks: String,
    /// Central directions adjoined beyond the identity.
    #[arg(long, default_value_t = 0, conflicts_with = "sl")]
    extra_center: usize,
    /// Use the trace-zero parabolic of sl_n (no center).
    #[arg(long)]
    sl: bool,
    #[command(flatten)]
    out: Output,
}

impl CaseArgs {
    fn center_dim(&self) -> usize {
        if self.sl {
            0
        } else {
            1 + self.extra_center
        }
    }

    fn build(&self) -> Result<ParabolicAlgebra, Error> {
        let c = BlockComposition::parse(self.n, &self.blocks)?;
        ParabolicAlgebra::new(&c, self.center_dim())
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    /// Verify a single case instead of a sweep (requires --blocks).
    #[arg(long, requires = "blocks")]
    n: Option<usize>,
    #[arg(long, requires = "n")]
    blocks: Option<String>,
    #[arg(long, default_value_t = 0)]
    extra_center: usize,
    /// Random decompositions per case.
    #[arg(long, default_value_t = 20)]
    rounds: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: Output,
}

/// Result of one invocation: exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stdout: String, stderr: String) -> Self {
        Self { code, stdout, stderr }
    }

    fn from_error(e: &Error) -> Self {
        let code = match e {
            Error::InvalidComposition(_) | Error::Usage(_) | Error::Parse(_) => EXIT_USAGE,
            Error::InvariantViolation(_) => EXIT_VIOLATION,
            Error::NotDerivation(..)
            | Error::DimensionMismatch { .. }
            | Error::NotInCartan
            | Error::InvalidRoot(..)
            | Error::NotBracketClosed(..) => EXIT_INVALID_INPUT,
        };
        Self::fail(code, String::new(), format!("error: {e}\n"))
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.iter().map(|s| s.to_string()).collect());
    for r in rows {
        out.push_str(&line(r.clone()));
    }
    out
}

fn key_values(pairs: &[(&str, String)]) -> String {
    let rows: Vec<Vec<String>> = pairs.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect();
    table(&["field", "value"], &rows)
}

/// Block pattern of the 𝔏 basis maps on `g_Z ∔ c ∔ [q,q]`.
fn l_block_grid(q: &ParabolicAlgebra) -> String {
    let idx = q.adapted_basis_indices();
    let (z, c, d) = (idx.center.len(), idx.c.len(), idx.derived.len());
    let names = [format!("g_Z({z})"), format!("c({c})"), format!("[q,q]({d})")];
    let cell = |row: usize, col: usize| if row == 0 && col < 2 && z > 0 { "*" } else { "0" };
    let rows: Vec<Vec<String>> = (0..3)
        .map(|r| {
            let mut v = vec![names[r].clone()];
            v.extend((0..3).map(|c| cell(r, c).to_string()));
            v
        })
        .collect();
    table(&["L: col -> row", &names[0], &names[1], &names[2]], &rows)
}

fn cmd_describe(a: &CaseArgs) -> Result<Outcome, Error> {
    let q = a.build()?;
    if a.out.format == Format::Json {
        return Ok(Outcome::ok(render(&json::parabolic(&q))));
    }
    let rd = q.root_datum();
    let l = q.langlands();
    let mut s = key_values(&[
        ("blocks", q.composition().to_string()),
        ("dim", q.dim().to_string()),
        ("center_dim", q.center_dim().to_string()),
        ("delta_prime", format!("{:?}", rd.delta_prime())),
        ("c", describe_span(&q, q.c())),
        ("t", describe_span(&q, q.t())),
        ("derived_dim", q.derived().dim().to_string()),
        ("levi_dim", l.levi.dim().to_string()),
        ("nilradical_dim", l.nilradical.dim().to_string()),
        ("levi_center_dim", l.levi_center.dim().to_string()),
        ("levi_semisimple_dim", l.levi_semisimple.dim().to_string()),
    ]);
    s.push('\n');
    let n = q.n();
    let grid: Vec<Vec<String>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| if i == j || q.root_index((i, j)).is_some() { "*".to_string() } else { "0".to_string() })
                .collect()
        })
        .collect();
    let headers: Vec<String> = (1..=n).map(|j| j.to_string()).collect();
    let headers: Vec<&str> = headers.iter().map(String::as_str).collect();
    s.push_str(&table(&headers, &grid));
    Ok(Outcome::ok(s))
}

fn describe_span(q: &ParabolicAlgebra, s: &crate::linalg::Subspace) -> String {
    let parts: Vec<String> = s.basis().row_iter().map(|v| q.algebra().describe(v)).collect();
    format!("span{{{}}}", parts.join(", "))
}

fn cmd_der(a: &CaseArgs) -> Result<Outcome, Error> {
    let q = a.build()?;
    let exec = a.out.exec();
    let der = derivation_algebra(q.algebra(), exec);
    let l = l_ideal(&q);
    let inner = inner_derivations(q.algebra());
    let formula_dim = formula_for(&q);
    let formula_ok = formula_dim == der.dim();
    let direct_sum_ok = is_direct_sum(&[l.clone(), inner.clone()], &der)?;
    let payload = json!({
        "blocks": q.composition().to_string(),
        "der_dim": der.dim(),
        "l_dim": l.dim(),
        "inner_dim": inner.dim(),
        "h1_dim": der.dim() - inner.dim(),
        "formula_dim": formula_dim,
        "formula_ok": formula_ok,
        "direct_sum_ok": direct_sum_ok,
    });
    let body = match a.out.format {
        Format::Json => render(&payload),
        Format::Text => {
            let mut s = key_values(&[
                ("der_dim", der.dim().to_string()),
                ("l_dim", l.dim().to_string()),
                ("inner_dim", inner.dim().to_string()),
                ("h1_dim", (der.dim() - inner.dim()).to_string()),
                ("formula_dim", formula_dim.to_string()),
                ("formula_ok", formula_ok.to_string()),
                ("direct_sum_ok", direct_sum_ok.to_string()),
            ]);
            s.push('\n');
            s.push_str(&l_block_grid(&q));
            s
        }
    };
    if formula_ok && direct_sum_ok {
        Ok(Outcome::ok(body))
    } else {
        Ok(Outcome::fail(EXIT_VIOLATION, body, "error: oracle disagrees with Der q = 𝔏 ⊕ ad q\n".into()))
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Usage(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("reading {path}: {e}")))
    }
}

fn cmd_decompose(a: &CaseArgs, input: &str) -> Result<Outcome, Error> {
    let q = a.build()?;
    let text = read_input(input)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let d = json::parse_derivation(&value)?;
    if d.rows() != q.dim() {
        return Err(Error::DimensionMismatch { expected: q.dim(), found: d.rows() });
    }
    let r = constructive_decompose(&q, &d)?;
    let body = match a.out.format {
        Format::Json => render(&json::decomposition(&r)),
        Format::Text => {
            let alg = q.algebra();
            let mut s = key_values(&[("p", alg.describe(&r.p)), ("h_star", alg.describe(&r.h_star))]);
            s.push('\n');
            let rows: Vec<Vec<String>> = (0..q.dim())
                .flat_map(|c| (0..q.dim()).map(move |r| (r, c)))
                .filter(|&(row, col)| !num_traits::Zero::is_zero(r.l_part.get(row, col)))
                .map(|(row, col)| {
                    vec![
                        alg.label(col).to_string(),
                        alg.label(row).to_string(),
                        format_rational(r.l_part.get(row, col)),
                    ]
                })
                .collect();
            s.push_str(&table(&["L: from", "to", "coefficient"], &rows));
            s.push('\n');
            let rows: Vec<Vec<String>> = r
                .d_gamma
                .iter()
                .zip(&r.c_gamma)
                .map(|(((i, j), d), (_, c))| vec![format!("({i},{j})"), format_rational(d), format_rational(c)])
                .collect();
            s.push_str(&table(&["root", "d_gamma", "c_gamma"], &rows));
            s
        }
    };
    Ok(Outcome::ok(body))
}

fn case_row(c: &CaseReport) -> Vec<String> {
    let r = &c.report;
    vec![
        c.n.to_string(),
        r.blocks.clone(),
        r.dim.to_string(),
        r.der_dim.to_string(),
        r.l_dim.to_string(),
        r.inner_dim.to_string(),
        r.h1_dim.to_string(),
        r.formula_dim.to_string(),
        r.direct_sum_ok.to_string(),
        (r.l_is_ideal_ok && r.inner_is_ideal_ok).to_string(),
        format!("{}/{}", c.round_trips.passed, c.round_trips.rounds),
        if c.all_ok() { "pass".into() } else { "FAIL".into() },
    ]
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, Error> {
    let exec = a.out.exec();
    let center_dim = 1 + a.extra_center;
    let cases = match (&a.n, &a.blocks) {
        (Some(n), Some(blocks)) => {
            let c = BlockComposition::parse(*n, blocks)?;
            let q = ParabolicAlgebra::new(&c, center_dim)?;
            let report = verify_main_theorem(&q, exec)?;
            let round_trips = verify_round_trips(&q, a.rounds, a.seed, exec);
            vec![CaseReport { n: *n, report, round_trips }]
        }
        _ => {
            if a.max_n == 0 {
                return Err(Error::Usage("--max-n must be at least 1".into()));
            }
            sweep(a.max_n, center_dim, a.rounds, a.seed, exec)?
        }
    };
    let passed = cases.iter().filter(|c| c.all_ok()).count();
    let failed = cases.len() - passed;
    let witness = cases.iter().find(|c| !c.all_ok());
    let body = match a.out.format {
        Format::Json => {
            let mut v = json!({
                "max_n": a.max_n,
                "center_dim": center_dim,
                "rounds": a.rounds,
                "seed": a.seed,
                "cases": cases.iter().map(json::case).collect::<Vec<_>>(),
                "summary": {"cases": cases.len(), "passed": passed, "failed": failed},
            });
            if let Some(w) = witness {
                v["witness"] = json::case(w);
            }
            render(&v)
        }
        Format::Text => {
            let rows: Vec<Vec<String>> = cases.iter().map(case_row).collect();
            let mut s = table(
                &["n", "blocks", "dim", "der", "L", "ad", "h1", "formula", "direct", "ideals", "rounds", "result"],
                &rows,
            );
            let _ = writeln!(s, "\n{} cases, {passed} passed, {failed} failed", cases.len());
            s
        }
    };
    match witness {
        None => Ok(Outcome::ok(body)),
        Some(w) => {
            let why = w.report.counterexample.clone().or_else(|| w.round_trips.failure.clone()).unwrap_or_default();
            Ok(Outcome::fail(EXIT_VIOLATION, body, format!("error: blocks {} failed: {why}\n", w.report.blocks)))
        }
    }
}

fn cmd_h1(a: &CaseArgs) -> Result<Outcome, Error> {
    let q = a.build()?;
    let der = derivation_algebra(q.algebra(), a.out.exec());
    let inner = inner_derivations(q.algebra());
    let h1 = der.dim() - inner.dim();
    let idx = q.adapted_basis_indices();
    let expected = (idx.center.len() + idx.c.len()) * idx.center.len();
    let body = match a.out.format {
        Format::Json => render(&json!({"blocks": q.composition().to_string(), "h1_dim": h1, "expected": expected})),
        Format::Text => key_values(&[("h1_dim", h1.to_string()), ("expected", expected.to_string())]),
    };
    if h1 == expected {
        Ok(Outcome::ok(body))
    } else {
        Ok(Outcome::fail(EXIT_VIOLATION, body, "error: dim H¹ disagrees with (dim g_Z + dim c) dim g_Z\n".into()))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.to_string();
            return if e.use_stderr() { Outcome::fail(EXIT_USAGE, String::new(), text) } else { Outcome::ok(text) };
        }
    };
    let result = match &cli.command {
        Command::Describe(a) => cmd_describe(a),
        Command::Der(a) => cmd_der(a),
        Command::Decompose { case, input } => cmd_decompose(case, input),
        Command::Verify(a) => cmd_verify(a),
        Command::H1(a) => cmd_h1(a),
    };
    result.unwrap_or_else(|e| Outcome::from_error(&e))
}
