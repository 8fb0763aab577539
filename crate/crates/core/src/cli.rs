//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain or verification failure (including
//! unreadable or malformed input files), 2 usage error.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::combinatorics::lex_subsets;
use crate::compound::{compound, higher_adjugate};
use crate::error::{Error, Result};
use crate::io::{parse_exact, parse_float, parse_matrix, to_json};
use crate::matrix::{AnyMatrix, Matrix};
use crate::recovery::{hermitian_ev_magnitudes, verify_theorem, TheoremReport};
use crate::scalar::{ExactComplex, Scalar, TolerancePolicy};
use crate::spectral::{charpoly_via_adjugates, float_spectrum, rational_spectrum, SpectralOptions};
use crate::suite::{check_matrix, run_suite, CheckOutcome, SuiteConfig};

#[derive(Parser, Debug)]
#[command(
    name = "eigenwedge",
    version,
    about = "Compound matrices, higher adjugates and eigenvector wedges"
)]
pub struct Cli {
    /// Output layout.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Relative tolerance for zero and rank decisions in float mode.
    #[arg(long, default_value_t = 1e-10, global = true)]
    pub rel_tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// k-th compound matrix C_k(A).
    Compound {
        #[arg(short)]
        k: usize,
        /// Matrix file ("-" reads standard input).
        file: PathBuf,
    },
    /// k-th adjugate adj_k(A).
    Adjugate {
        #[arg(short)]
        k: usize,
        /// Matrix file ("-" reads standard input).
        file: PathBuf,
    },
    /// Coefficients of det(A - tI), lowest degree first.
    Charpoly {
        /// Matrix file ("-" reads standard input).
        file: PathBuf,
    },
    /// Eigenvalues with algebraic and geometric multiplicities.
    Eigvals {
        /// Matrix file ("-" reads standard input).
        file: PathBuf,
    },
    /// Eigenvector wedges at one eigenvalue or at all of them.
    Eigrecover {
        /// Matrix file ("-" reads standard input).
        file: PathBuf,
        /// Eigenvalue as "re,im" or a single scalar ("2", "1/2-i", "0.5+2i").
        #[arg(long, allow_hyphen_values = true, conflicts_with = "auto")]
        lambda: Option<String>,
        /// Use every eigenvalue found by the spectral solver (the default).
        #[arg(long)]
        auto: bool,
    },
    /// Squared eigenvector component magnitudes of a Hermitian matrix.
    HermitianEv {
        /// Matrix file ("-" reads standard input).
        file: PathBuf,
    },
    /// Run the identity checks on a file, or the seeded random suite.
    Verify {
        /// Matrix file to check ("-" reads standard input). Without it the
        /// seeded random suite runs.
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 40)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        dim_max: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Perturb one entry of each planted-structure matrix after it is
        /// built, so the suite must report failures.
        #[arg(long)]
        corrupt: bool,
    },
}

/// Parse `args`, run, write the report to `out` and diagnostics to `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok((report, ok)) => {
            let _ = write!(out, "{report}");
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn read_matrix(path: &PathBuf) -> Result<AnyMatrix> {
    let mut text = String::new();
    let read = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text)
}

fn residual_text(r: f64) -> String {
    format!("{r:e}")
}

/// Returns the rendered report and whether the command succeeded.
fn execute(cli: &Cli) -> Result<(String, bool)> {
    let json = cli.format == Format::Json;
    let tol = TolerancePolicy::new(cli.rel_tol, TolerancePolicy::default().absolute_floor);
    let opts = SpectralOptions {
        tolerance: tol,
        ..SpectralOptions::default()
    };
    match &cli.command {
        Command::Compound { k, file } => {
            let a = read_matrix(file)?;
            let (name, value) = (format!("C_{k}(A)"), map_any(&a, *k, false)?);
            let (rows, cols) = a.dims();
            let labels = (subset_labels(rows, *k)?, subset_labels(cols, *k)?);
            Ok((
                render_matrix(json, "compound", &name, &value, Some(labels)),
                true,
            ))
        }
        Command::Adjugate { k, file } => {
            let a = read_matrix(file)?;
            let value = map_any(&a, *k, true)?;
            let (n, _) = a.dims();
            let labels = if *k == 0 || *k == n {
                None
            } else {
                Some((subset_labels(n, *k)?, subset_labels(n, *k)?))
            };
            Ok((
                render_matrix(json, "adjugate", &format!("adj_{k}(A)"), &value, labels),
                true,
            ))
        }
        Command::Charpoly { file } => {
            let coeffs: Vec<String> = match read_matrix(file)? {
                AnyMatrix::Exact(m) => charpoly_via_adjugates(&m)?
                    .coeffs()
                    .iter()
                    .map(Scalar::to_text)
                    .collect(),
                AnyMatrix::Float(m) => charpoly_via_adjugates(&m)?
                    .coeffs()
                    .iter()
                    .map(Scalar::to_text)
                    .collect(),
            };
            if json {
                return Ok((
                    pretty(
                        json!({"command": "charpoly", "convention": "det(A - tI)", "coefficients": coeffs}),
                    ),
                    true,
                ));
            }
            let mut s = String::from("det(A - tI) coefficients, t^0 first:\n");
            for (k, c) in coeffs.iter().enumerate() {
                let _ = writeln!(s, "  t^{k}: {c}");
            }
            Ok((s, true))
        }
        Command::Eigvals { file } => eigvals(json, &read_matrix(file)?, &opts),
        Command::Eigrecover { file, lambda, .. } => {
            eigrecover(json, &read_matrix(file)?, lambda.as_deref(), &opts)
        }
        Command::HermitianEv { file } => {
            let m = match read_matrix(file)? {
                AnyMatrix::Exact(m) => m.to_float(),
                AnyMatrix::Float(m) => m,
            };
            let t = hermitian_ev_magnitudes(&m, &opts)?;
            if json {
                let rows: Vec<Vec<String>> = t
                    .magnitudes
                    .iter()
                    .map(|r| r.iter().map(|x| format!("{x:e}")).collect())
                    .collect();
                let ev: Vec<String> = t.eigenvalues.iter().map(|x| format!("{x:e}")).collect();
                return Ok((
                    pretty(
                        json!({"command": "hermitian-ev", "eigenvalues": ev, "magnitudes": rows}),
                    ),
                    true,
                ));
            }
            let mut s = String::from("|v_ij|^2, row i = eigenvalue, column j = component\n");
            for (l, row) in t.eigenvalues.iter().zip(&t.magnitudes) {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:.12}")).collect();
                let _ = writeln!(s, "  {l:>22.15e}  {}", cells.join("  "));
            }
            Ok((s, true))
        }
        Command::Verify {
            file,
            trials,
            dim_max,
            seed,
            corrupt,
        } => {
            let (checks, header) = match file {
                Some(path) => {
                    let a = read_matrix(path)?;
                    (
                        check_matrix(&a),
                        json!({"input": path.display().to_string(), "mode": a.mode()}),
                    )
                }
                None => {
                    let cfg = SuiteConfig {
                        trials: *trials,
                        dim_max: *dim_max,
                        seed: *seed,
                        corrupt: *corrupt,
                    };
                    (
                        run_suite(&cfg),
                        json!({"seed": seed, "trials": trials, "dim_max": dim_max, "corrupt": corrupt}),
                    )
                }
            };
            let ok = checks.iter().all(CheckOutcome::passed);
            Ok((render_checks(json, header, &checks, ok), ok))
        }
    }
}

fn pretty(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).unwrap_or_default();
    s.push('\n');
    s
}

fn subset_labels(n: usize, k: usize) -> Result<Vec<String>> {
    Ok(lex_subsets(n, k)?.iter().map(ToString::to_string).collect())
}

fn map_any(a: &AnyMatrix, k: usize, adjugate: bool) -> Result<AnyMatrix> {
    fn op<T: Scalar>(m: &Matrix<T>, k: usize, adjugate: bool) -> Result<Matrix<T>> {
        if adjugate {
            Ok(higher_adjugate(m, k)?.into_matrix())
        } else {
            Ok(compound(m, k)?.into_matrix())
        }
    }
    Ok(match a {
        AnyMatrix::Exact(m) => AnyMatrix::Exact(op(m, k, adjugate)?),
        AnyMatrix::Float(m) => AnyMatrix::Float(op(m, k, adjugate)?),
    })
}

fn render_matrix(
    json: bool,
    command: &str,
    name: &str,
    m: &AnyMatrix,
    labels: Option<(Vec<String>, Vec<String>)>,
) -> String {
    if json {
        return pretty(json!({"command": command, "name": name, "result": to_json(m)}));
    }
    let (rows, cols) = m.dims();
    let cell = |i: usize, j: usize| match m {
        AnyMatrix::Exact(a) => a[(i, j)].to_text(),
        AnyMatrix::Float(a) => a[(i, j)].to_text(),
    };
    let (row_labels, col_labels) =
        labels.unwrap_or_else(|| (vec![String::new(); rows], vec![String::new(); cols]));
    let lw = row_labels.iter().map(String::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|j| {
            (0..rows)
                .map(|i| cell(i, j).chars().count())
                .chain([col_labels[j].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut s = format!("{name}: {rows}x{cols} ({})\n", m.mode());
    if col_labels.iter().any(|l| !l.is_empty()) {
        let _ = write!(s, "  {:lw$}", "");
        for (j, l) in col_labels.iter().enumerate() {
            let _ = write!(s, "  {:>w$}", l, w = widths[j]);
        }
        s.push('\n');
    }
    for (i, label) in row_labels.iter().enumerate() {
        let _ = write!(s, "  {label:lw$}");
        for (j, w) in widths.iter().enumerate() {
            let _ = write!(s, "  {:>w$}", cell(i, j), w = *w);
        }
        s.push('\n');
    }
    s
}

fn render_checks(json: bool, header: Value, checks: &[CheckOutcome], ok: bool) -> String {
    if json {
        let items: Vec<Value> = checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "passed": c.passed(),
                    "cases": c.cases,
                    "failures": c.failures,
                    "worst_residual": residual_text(c.worst),
                    "tolerance": residual_text(c.tolerance),
                    "first_failure": c.first_failure,
                })
            })
            .collect();
        return pretty(
            json!({"command": "verify", "config": header, "passed": ok, "checks": items}),
        );
    }
    let mut s = String::new();
    let _ = writeln!(s, "verify {header}");
    let w = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in checks {
        let _ = writeln!(
            s,
            "{}  {:w$}  cases={:<5} worst={:<10} tol={}",
            if c.passed() { "PASS" } else { "FAIL" },
            c.name,
            c.cases,
            residual_text(c.worst),
            residual_text(c.tolerance),
        );
        if let Some(f) = &c.first_failure {
            let _ = writeln!(s, "      first failure: {f}");
        }
    }
    let _ = writeln!(
        s,
        "{}",
        if ok {
            "all checks passed"
        } else {
            "verification FAILED"
        }
    );
    s
}

fn eigvals(json: bool, a: &AnyMatrix, opts: &SpectralOptions) -> Result<(String, bool)> {
    let (entries, unresolved): (Vec<[String; 4]>, usize) = match a {
        AnyMatrix::Exact(m) => {
            let (s, rest) = rational_spectrum(m)?;
            let rows = s
                .iter()
                .map(|e| {
                    [
                        e.eigenvalue.to_text(),
                        e.algebraic_multiplicity.to_string(),
                        e.geometric_multiplicity.to_string(),
                        "0e0".into(),
                    ]
                })
                .collect();
            (rows, rest)
        }
        AnyMatrix::Float(m) => {
            let s = float_spectrum(m, opts)?;
            let rows = s
                .iter()
                .map(|e| {
                    [
                        e.eigenvalue.to_text(),
                        e.algebraic_multiplicity.to_string(),
                        e.geometric_multiplicity.to_string(),
                        residual_text(e.cluster_radius),
                    ]
                })
                .collect();
            (rows, 0)
        }
    };
    if json {
        let items: Vec<Value> = entries
            .iter()
            .map(|[l, am, gm, r]| json!({"eigenvalue": l, "algebraic": am.parse::<usize>().unwrap_or(0), "geometric": gm.parse::<usize>().unwrap_or(0), "cluster_radius": r}))
            .collect();
        return Ok((
            pretty(
                json!({"command": "eigvals", "mode": a.mode(), "eigenvalues": items, "unresolved_degree": unresolved}),
            ),
            true,
        ));
    }
    let mut s = format!(
        "{:>28}  {:>9}  {:>9}  {}\n",
        "eigenvalue", "algebraic", "geometric", "cluster radius"
    );
    for [l, am, gm, r] in &entries {
        let _ = writeln!(s, "{l:>28}  {am:>9}  {gm:>9}  {r}");
    }
    if unresolved > 0 {
        let _ = writeln!(
            s,
            "{unresolved} eigenvalue(s) are not rational; rerun on the float form for approximations"
        );
    }
    Ok((s, true))
}

fn split_lambda(text: &str) -> (&str, Option<&str>) {
    match text.split_once(',') {
        Some((r, i)) => (r.trim(), Some(i.trim())),
        None => (text.trim(), None),
    }
}

fn bad_lambda(text: &str) -> Error {
    Error::domain(format!("cannot read eigenvalue \"{text}\""))
}

fn parse_lambda_exact(text: &str) -> Result<ExactComplex> {
    let part = |t: &str| {
        parse_exact(t)
            .filter(|z| z.im.is_zero())
            .map(|z| z.re)
            .ok_or_else(|| bad_lambda(text))
    };
    match split_lambda(text) {
        (r, None) => parse_exact(r).ok_or_else(|| bad_lambda(text)),
        (r, Some(i)) => Ok(num_complex::Complex::new(part(r)?, part(i)?)),
    }
}

fn parse_lambda_float(text: &str) -> Result<Complex64> {
    let part = |t: &str| {
        parse_float(t)
            .filter(|z| z.im == 0.0)
            .map(|z| z.re)
            .ok_or_else(|| bad_lambda(text))
    };
    match split_lambda(text) {
        (r, None) => parse_float(r).ok_or_else(|| bad_lambda(text)),
        (r, Some(i)) => Ok(Complex64::new(part(r)?, part(i)?)),
    }
}

fn eigrecover(
    json: bool,
    a: &AnyMatrix,
    lambda: Option<&str>,
    opts: &SpectralOptions,
) -> Result<(String, bool)> {
    let tol = &opts.tolerance;
    let mut reports: Vec<Value> = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    let mut record = |label: String, outcome: Result<Value>, table: String| match outcome {
        Ok(v) => {
            reports.push(v);
            text.push_str(&table);
        }
        Err(e) => {
            ok = false;
            reports.push(json!({"eigenvalue": label, "error": e.to_string()}));
            let _ = writeln!(text, "lambda = {label}\n  error: {e}\n");
        }
    };
    let mut note = None;
    match a {
        AnyMatrix::Exact(m) => {
            let lambdas: Vec<ExactComplex> = match lambda {
                Some(l) => vec![parse_lambda_exact(l)?],
                None => {
                    let (s, rest) = rational_spectrum(m)?;
                    if rest > 0 {
                        note = Some(format!(
                            "{rest} eigenvalue(s) are not rational and were skipped"
                        ));
                    }
                    s.into_iter().map(|e| e.eigenvalue).collect()
                }
            };
            for l in lambdas {
                let r = verify_theorem(m, &l, tol);
                let table = r.as_ref().map(report_table).unwrap_or_default();
                record(l.to_text(), r.map(|r| report_json(&r)), table);
            }
        }
        AnyMatrix::Float(m) => {
            let lambdas: Vec<Complex64> = match lambda {
                Some(l) => vec![parse_lambda_float(l)?],
                None => float_spectrum(m, opts)?
                    .into_iter()
                    .map(|e| e.eigenvalue)
                    .collect(),
            };
            for l in lambdas {
                let r = verify_theorem(m, &l, tol);
                let table = r.as_ref().map(report_table).unwrap_or_default();
                record(l.to_text(), r.map(|r| report_json(&r)), table);
            }
        }
    }
    if json {
        return Ok((
            pretty(
                json!({"command": "eigrecover", "mode": a.mode(), "results": reports, "note": note}),
            ),
            ok,
        ));
    }
    if let Some(n) = note {
        let _ = writeln!(text, "{n}");
    }
    Ok((text, ok))
}

fn vec_text<T: Scalar>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(Scalar::to_text).collect();
    format!("[{}]", parts.join(", "))
}

fn matrix_rows<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(Scalar::to_text).collect())
        .collect()
}

fn report_json<T: Scalar>(r: &TheoremReport<T>) -> Value {
    let res = &r.result;
    json!({
        "eigenvalue": res.eigenvalue.to_text(),
        "multiplicity": res.multiplicity,
        "scale": res.scale.to_text(),
        "v": res.v.coords().iter().map(Scalar::to_text).collect::<Vec<_>>(),
        "w": res.w.coords().iter().map(Scalar::to_text).collect::<Vec<_>>(),
        "right_basis": matrix_rows(&res.right_basis),
        "left_basis": matrix_rows(&res.left_basis),
        "residuals": {
            "identity": residual_text(r.identity),
            "pairing": residual_text(r.pairing),
            "right_kernel": residual_text(r.right_kernel),
            "left_kernel": residual_text(r.left_kernel),
            "biorthogonality": residual_text(r.biorthogonality),
            "derivative": residual_text(r.derivative),
            "alternate": residual_text(r.alternate),
        }
    })
}

fn report_table<T: Scalar>(r: &TheoremReport<T>) -> String {
    let res = &r.result;
    let mut s = String::new();
    let _ = writeln!(s, "lambda = {}", res.eigenvalue.to_text());
    let _ = writeln!(s, "  multiplicity k = {}", res.multiplicity);
    let _ = writeln!(
        s,
        "  scale (-1)^k P^(k)(lambda)/k! = {}",
        res.scale.to_text()
    );
    let _ = writeln!(s, "  v = {}", vec_text(res.v.coords()));
    let _ = writeln!(s, "  w = {}", vec_text(res.w.coords()));
    let _ = writeln!(s, "  right basis (columns):");
    for row in matrix_rows(&res.right_basis) {
        let _ = writeln!(s, "    {}", row.join("  "));
    }
    let _ = writeln!(s, "  left basis (columns):");
    for row in matrix_rows(&res.left_basis) {
        let _ = writeln!(s, "    {}", row.join("  "));
    }
    let _ = writeln!(
        s,
        "  residuals: identity {}  pairing {}  kernels {} / {}  biorthogonality {}  derivative {}  alternate {}\n",
        residual_text(r.identity),
        residual_text(r.pairing),
        residual_text(r.right_kernel),
        residual_text(r.left_kernel),
        residual_text(r.biorthogonality),
        residual_text(r.derivative),
        residual_text(r.alternate),
    );
    s
}
