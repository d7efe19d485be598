//! The `commutant` command-line driver.
//!
//! Everything is routed through [`run`], which returns the exit code and the
//! text for stdout/stderr, so the binary is a thin wrapper.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::centralizer::{
    centralizer_from_rcf, frobenius_dimension, frobenius_dimension_closed_form,
};
use crate::error::{Error, Result};
use crate::io::{
    field_to_json, matrix_to_json, parse_input, poly_matrix_to_json, poly_to_json, InputDocument,
};
use crate::matrix::MatrixK;
use crate::oracle::{
    commutant_kernel_basis, minor_gcd_invariants, simultaneous_kernel_basis, span_equal,
};
use crate::poly::Polynomial;
use crate::poly_matrix::char_matrix;
use crate::rcf::rcf_transform;
use crate::smith::snf;
use crate::wild::{invertible_witness_search, simultaneous_intertwiners, DEFAULT_SEED};

/// Largest size for the determinantal-divisor check in `verify`.
const MINOR_CHECK_LIMIT: usize = 5;
/// Largest size for the brute-force commutant and unimodularity checks.
const BRUTE_CHECK_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "commutant",
    version,
    about = "Exact centralizers and intertwiners over Z/p and Q"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, clap::Args)]
pub struct Common {
    /// Input file, `-` for stdin.
    #[arg(default_value = "-")]
    pub input: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Matrix to operate on (default: `A`, or the only matrix in the file).
    #[arg(long)]
    pub matrix: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smith normal form of xI - A with its transforms.
    Snf(Common),
    /// Invariant factors, transform P and canonical form R.
    Rcf(Common),
    /// A basis of the centralizer of A.
    Centralizer(Common),
    /// Dimension of the centralizer of A.
    Dim(Common),
    /// Basis of {U : UA = A'U, UB = B'U} for matrices A, B, Aprime, Bprime.
    Intertwine {
        #[command(flatten)]
        common: Common,
        /// Also search for an invertible element (finite fields only).
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Cross-check every square matrix in the file against brute force.
    Verify(Common),
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Snf(c)
            | Command::Rcf(c)
            | Command::Centralizer(c)
            | Command::Dim(c)
            | Command::Verify(c) => c,
            Command::Intertwine { common, .. } => common,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Runs a parsed command against the text of its input file.
pub fn run(command: &Command, input: &str) -> Outcome {
    let doc = match parse_input(input) {
        Ok(doc) => doc,
        Err(e) => return Outcome::error(&e),
    };
    let format = command.common().format;
    let result = match command {
        Command::Snf(c) => select(&doc, c).and_then(|a| cmd_snf(a, format)),
        Command::Rcf(c) => select(&doc, c).and_then(|a| cmd_rcf(a, format)),
        Command::Centralizer(c) => select(&doc, c).and_then(|a| cmd_centralizer(a, format)),
        Command::Dim(c) => select(&doc, c).and_then(|a| cmd_dim(a, format)),
        Command::Intertwine {
            witness,
            trials,
            seed,
            ..
        } => cmd_intertwine(&doc, format, witness.then_some((*trials, *seed))),
        Command::Verify(_) => return cmd_verify(&doc, format),
    };
    match result {
        Ok(stdout) => Outcome::ok(stdout),
        Err(e) => Outcome::error(&e),
    }
}

fn select<'a>(doc: &'a InputDocument, common: &Common) -> Result<&'a MatrixK> {
    let missing = |name: &str| Error::Parse {
        line: 0,
        message: format!("no matrix named `{name}`"),
    };
    if let Some(name) = &common.matrix {
        return doc.get(name).ok_or_else(|| missing(name));
    }
    if let Some(a) = doc.get("A") {
        return Ok(a);
    }
    match doc.matrices.as_slice() {
        [(_, only)] => Ok(only),
        _ => Err(Error::Parse {
            line: 0,
            message: "several matrices and none named `A`; choose one with --matrix".into(),
        }),
    }
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

fn poly_list_text(ps: &[Polynomial]) -> String {
    ps.iter().map(|p| format!("  {}\n", p.pretty())).collect()
}

fn poly_matrix_text(rows: &[Vec<Polynomial>]) -> String {
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(Polynomial::pretty).collect();
            format!("  [{}]\n", cells.join(", "))
        })
        .collect()
}

fn indent(m: &MatrixK) -> String {
    m.to_string().lines().map(|l| format!("  {l}\n")).collect()
}

fn cmd_snf(a: &MatrixK, format: Format) -> Result<String> {
    let res = snf(&char_matrix(a)?);
    Ok(match format {
        Format::Json => render_json(&json!({
            "field": field_to_json(a.spec()),
            "gamma1": poly_matrix_to_json(&res.gamma1),
            "diag": res.diag.iter().map(poly_to_json).collect::<Vec<_>>(),
            "gamma2": poly_matrix_to_json(&res.gamma2),
        })),
        Format::Text => format!(
            "gamma1\n{}diag\n{}gamma2\n{}",
            poly_matrix_text(&res.gamma1.to_rows()),
            poly_list_text(&res.diag),
            poly_matrix_text(&res.gamma2.to_rows()),
        ),
    })
}

fn cmd_rcf(a: &MatrixK, format: Format) -> Result<String> {
    let res = rcf_transform(a)?;
    Ok(match format {
        Format::Json => render_json(&json!({
            "field": field_to_json(a.spec()),
            "factors": res.factors.iter().map(poly_to_json).collect::<Vec<_>>(),
            "P": matrix_to_json(&res.transform),
            "R": matrix_to_json(&res.canonical),
        })),
        Format::Text => format!(
            "factors\n{}P\n{}R\n{}",
            poly_list_text(&res.factors),
            indent(&res.transform),
            indent(&res.canonical),
        ),
    })
}

fn cmd_centralizer(a: &MatrixK, format: Format) -> Result<String> {
    let basis = centralizer_from_rcf(&rcf_transform(a)?)?;
    Ok(match format {
        Format::Json => render_json(&Value::Array(
            basis
                .elements
                .iter()
                .zip(&basis.provenance)
                .map(|(m, p)| {
                    json!({
                        "block": [p.block.0, p.block.1],
                        "power": p.power,
                        "matrix": matrix_to_json(m),
                    })
                })
                .collect(),
        )),
        Format::Text => {
            let mut out = format!("dimension {}\n", basis.dimension());
            for (k, (m, p)) in basis.elements.iter().zip(&basis.provenance).enumerate() {
                out.push_str(&format!(
                    "basis {} block ({},{}) power {}\n{}",
                    k + 1,
                    p.block.0,
                    p.block.1,
                    p.power,
                    indent(m)
                ));
            }
            out
        }
    })
}

fn cmd_dim(a: &MatrixK, format: Format) -> Result<String> {
    let rcf = rcf_transform(a)?;
    let d = frobenius_dimension(&rcf.factors)?;
    Ok(match format {
        Format::Json => render_json(&json!({ "dimension": d })),
        Format::Text => format!("{d}\n"),
    })
}

fn required<'a>(doc: &'a InputDocument, name: &str) -> Result<&'a MatrixK> {
    doc.get(name).ok_or_else(|| Error::Parse {
        line: 0,
        message: format!("intertwine needs matrices A, B, Aprime and Bprime; `{name}` is missing"),
    })
}

fn cmd_intertwine(
    doc: &InputDocument,
    format: Format,
    witness: Option<(usize, u64)>,
) -> Result<String> {
    let [a, b, ap, bp] = ["A", "B", "Aprime", "Bprime"].map(|n| required(doc, n));
    let space = simultaneous_intertwiners(a?, b?, ap?, bp?)?;
    let found = match witness {
        Some((trials, seed)) => Some(invertible_witness_search(&space, trials, seed)?),
        None => None,
    };
    Ok(match format {
        Format::Json => {
            let mut v = json!({
                "method": space.method.name(),
                "dimension": space.dimension(),
                "basis": space.basis.iter().map(matrix_to_json).collect::<Vec<_>>(),
            });
            if let Some(w) = found {
                v["witness"] = match w {
                    Some(m) => matrix_to_json(&m),
                    None => json!("UNKNOWN"),
                };
            }
            render_json(&v)
        }
        Format::Text => {
            let mut out = format!(
                "method {}\ndimension {}\n",
                space.method.name(),
                space.dimension()
            );
            for (k, m) in space.basis.iter().enumerate() {
                out.push_str(&format!("basis {}\n{}", k + 1, indent(m)));
            }
            match found {
                Some(Some(m)) => out.push_str(&format!("witness\n{}", indent(&m))),
                Some(None) => out.push_str("witness UNKNOWN\n"),
                None => {}
            }
            out
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

struct Check {
    subject: String,
    name: &'static str,
    status: Status,
    detail: String,
}

fn check(subject: &str, name: &'static str, outcome: Result<(bool, String)>) -> Check {
    let (status, detail) = match outcome {
        Ok((ok, detail)) => (Status::from_bool(ok), detail),
        Err(e) => (Status::Fail, e.to_string()),
    };
    Check {
        subject: subject.into(),
        name,
        status,
        detail,
    }
}

fn skip(subject: &str, name: &'static str, detail: impl Into<String>) -> Check {
    Check {
        subject: subject.into(),
        name,
        status: Status::Skip,
        detail: detail.into(),
    }
}

fn verify_matrix(name: &str, a: &MatrixK, out: &mut Vec<Check>) {
    if !a.is_square() {
        out.push(skip(name, "square", "not square"));
        return;
    }
    let n = a.rows();
    let cm = match char_matrix(a) {
        Ok(cm) => cm,
        Err(e) => {
            out.push(check(name, "snf", Err(e)));
            return;
        }
    };
    let res = snf(&cm);
    out.push(check(
        name,
        "snf_reconstruct",
        res.reconstruct().map(|m| (m == cm, String::new())),
    ));
    out.push(check(
        name,
        "snf_divisibility",
        Ok((
            res.diag.windows(2).all(|w| w[0].divides(&w[1])),
            String::new(),
        )),
    ));
    if n <= BRUTE_CHECK_LIMIT {
        out.push(check(
            name,
            "snf_unimodular",
            Ok((
                res.gamma1.is_unimodular() && res.gamma2.is_unimodular(),
                String::new(),
            )),
        ));
    } else {
        out.push(skip(
            name,
            "snf_unimodular",
            format!("n > {BRUTE_CHECK_LIMIT}"),
        ));
    }
    if n <= MINOR_CHECK_LIMIT {
        out.push(check(
            name,
            "snf_minor_gcd",
            minor_gcd_invariants(&cm).map(|d| (d == res.diag, String::new())),
        ));
    } else {
        out.push(skip(
            name,
            "snf_minor_gcd",
            format!("n > {MINOR_CHECK_LIMIT}"),
        ));
    }

    let rcf = match rcf_transform(a) {
        Ok(r) => r,
        Err(e) => {
            out.push(check(name, "rcf", Err(e)));
            return;
        }
    };
    out.push(check(
        name,
        "rcf_similarity",
        (|| {
            let pinv = rcf.transform.inverse()?;
            Ok((
                pinv.matmul(a)?.matmul(&rcf.transform)? == rcf.canonical,
                String::new(),
            ))
        })(),
    ));

    let basis = match centralizer_from_rcf(&rcf) {
        Ok(b) => b,
        Err(e) => {
            out.push(check(name, "centralizer", Err(e)));
            return;
        }
    };
    out.push(check(
        name,
        "centralizer_commutes",
        Ok((
            basis.elements.iter().all(|e| e.commutes_with(a)),
            String::new(),
        )),
    ));
    out.push(check(
        name,
        "centralizer_dimension",
        (|| {
            let d = basis.dimension();
            let f = frobenius_dimension(&rcf.factors)?;
            let c = frobenius_dimension_closed_form(&rcf.factors)?;
            let indep = crate::oracle::span_dimension(&basis.elements)?;
            Ok((d == f && f == c && indep == d, format!("{d}")))
        })(),
    ));
    if n <= BRUTE_CHECK_LIMIT {
        out.push(check(
            name,
            "centralizer_oracle",
            commutant_kernel_basis(a)
                .and_then(|k| Ok((span_equal(&k, &basis.elements)?, String::new()))),
        ));
    } else {
        out.push(skip(
            name,
            "centralizer_oracle",
            format!("n > {BRUTE_CHECK_LIMIT}"),
        ));
    }
}

fn verify_intertwine(doc: &InputDocument, out: &mut Vec<Check>) {
    let names = ["A", "B", "Aprime", "Bprime"];
    if names.iter().any(|n| doc.get(n).is_none()) {
        return;
    }
    let [a, b, ap, bp] = names.map(|n| doc.get(n).expect("checked above"));
    if a.rows() > BRUTE_CHECK_LIMIT {
        out.push(skip(
            "intertwine",
            "intertwine_oracle",
            format!("n > {BRUTE_CHECK_LIMIT}"),
        ));
        return;
    }
    out.push(check(
        "intertwine",
        "intertwine_oracle",
        (|| {
            let space = simultaneous_intertwiners(a, b, ap, bp)?;
            let mut ok = true;
            for u in &space.basis {
                ok &= u.matmul(a)? == ap.matmul(u)? && u.matmul(b)? == bp.matmul(u)?;
            }
            let brute = simultaneous_kernel_basis(a, b, ap, bp)?;
            ok &= crate::oracle::span_dimension(&space.basis)? == space.dimension();
            ok &= span_equal(&brute, &space.basis)?;
            Ok((ok, format!("{} {}", space.method.name(), space.dimension())))
        })(),
    ));
}

fn cmd_verify(doc: &InputDocument, format: Format) -> Outcome {
    let mut checks = Vec::new();
    for (name, m) in &doc.matrices {
        verify_matrix(name, m, &mut checks);
    }
    verify_intertwine(doc, &mut checks);
    let passed = checks.iter().all(|c| c.status != Status::Fail);
    let stdout = match format {
        Format::Json => render_json(&json!({
            "passed": passed,
            "checks": checks
                .iter()
                .map(|c| json!({
                    "subject": c.subject,
                    "check": c.name,
                    "status": c.status.label().to_lowercase(),
                    "detail": c.detail,
                }))
                .collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s: String = checks
                .iter()
                .map(|c| {
                    let detail = if c.detail.is_empty() {
                        String::new()
                    } else {
                        format!(" ({})", c.detail)
                    };
                    format!("{} {} {}{}\n", c.status.label(), c.subject, c.name, detail)
                })
                .collect();
            s.push_str(if passed {
                "all checks passed\n"
            } else {
                "verification failed\n"
            });
            s
        }
    };
    Outcome {
        code: if passed { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    }
}
