//! Command-line front end for the `gorenstein` crate.
//!
//! [`run`] does all the work and returns the text to print plus an exit code,
//! so the binary is a thin wrapper and the commands are testable in-process.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gorenstein::apolarity::build_algebra;
use gorenstein::complexes::{turan_complex, turan_hilbert_shifted_formula};
use gorenstein::families::{
    boolean_form, even_base_complex, even_counterexample, odd_counterexample, example_catalog,
};
use gorenstein::hessians::dual_mixed_hessian;
use gorenstein::lefschetz::{linear_form, mult_map_matrix, random_linear_form};
use gorenstein::polyring::{factorial, parse_polynomial_file, write_polynomial_file};
use gorenstein::report::{analyze, analyze_complex, Checks, SCHEMA_VERSION};
use gorenstein::{slp_check, wlp_check, AnalysisReport, BigRational, CheckConfig, Matrix, Polynomial, SimplicialComplex};
use num_traits::Zero;
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "gorenstein", version, about = "Artinian Gorenstein algebras, mixed Hessians and Lefschetz properties")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// RNG seed; drawn from entropy when omitted and always echoed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Random evaluation points per probabilistic rank test.
    #[arg(long, global = true, default_value_t = 12)]
    pub trials: usize,
    /// Coordinates are drawn from [-B, B].
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub sample_bound: u64,
    /// Largest matrix size for symbolic determinants and elimination.
    #[arg(long, global = true, default_value_t = 12)]
    pub symbolic_cap: usize,
    /// Comma-separated subset of hilbert,quadrics,wlp,slp,hessians,profile.
    #[arg(long, global = true, default_value = "all")]
    pub checks: String,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze a polynomial file.
    Analyze { path: PathBuf },
    /// Analyze the dual generator of a simplicial complex given as JSON.
    FromComplex { path: PathBuf },
    /// Generate and verify a member of a family.
    Family {
        #[arg(value_enum)]
        kind: FamilyKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        codim: Option<usize>,
        /// Group sizes of a Turan complex, e.g. `2,2,2`.
        #[arg(long, value_delimiter = ',')]
        orders: Vec<usize>,
        /// Where to write the generated polynomial file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every catalog example against its expected properties.
    Examples {
        #[arg(long)]
        only: Option<String>,
    },
    /// Compare the multiplication map with the scaled dual Hessian.
    MultMap {
        path: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        /// Integer coefficients of L; random when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<i64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Boolean,
    Odd,
    Even,
    Turan,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] gorenstein::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for input errors, 3 for internal invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(gorenstein::Error::Invariant(_)) => 3,
            _ => 2,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;

/// What a command produced.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn config(g: &GlobalOpts) -> CheckConfig {
    CheckConfig {
        seed: g.seed.unwrap_or_else(rand::random),
        trials: g.trials,
        sample_bound: g.sample_bound,
        symbolic_cap: g.symbolic_cap,
        ..CheckConfig::default()
    }
}

fn render(report: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    }
}

/// Runs one parsed invocation.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let cfg = config(&cli.global);
    let checks: Checks = cli.global.checks.parse()?;
    let mut out = Output {
        stderr: format!("seed: {}\n", cfg.seed),
        ..Output::default()
    };
    let fmt = cli.global.format;
    match &cli.command {
        Command::Analyze { path } => {
            let pf = parse_polynomial_file(&read(path)?)?;
            let report = analyze(&pf.polynomial, &path.display().to_string(), checks, &cfg)?;
            out.stdout = render(&report, fmt.unwrap_or(Format::Json));
        }
        Command::FromComplex { path } => {
            let c = SimplicialComplex::from_json(&read(path)?)?;
            if c.pure_dim().is_none_or(|p| p < 1) {
                return Err(CliError::Core(gorenstein::Error::InvalidComplex(
                    "complex must be pure of dimension at least 1".into(),
                )));
            }
            let report = analyze_complex(&c, &path.display().to_string(), checks, &cfg)?;
            out.stdout = render(&report, fmt.unwrap_or(Format::Json));
        }
        Command::Family { kind, n, d, codim, orders, out: target } => {
            fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
                v.ok_or_else(|| CliError::Usage(format!("--{flag} is required")))
            }
            let (f, complex, label) = match kind {
                FamilyKind::Boolean => {
                    let n = need(*n, "n")?;
                    (boolean_form(n)?, None, format!("boolean n={n}"))
                }
                FamilyKind::Odd => {
                    let d = need(*d, "d")?;
                    let c = need(*codim, "codim")?;
                    (odd_counterexample(d, c)?, None, format!("odd d={d} codim={c}"))
                }
                FamilyKind::Even => {
                    let d = need(*d, "d")?;
                    let c = need(*codim, "codim")?;
                    let f = even_counterexample(d, c)?;
                    let complex = (d == 4).then(|| even_base_complex(c)).transpose()?;
                    (f, complex, format!("even d={d} codim={c}"))
                }
                FamilyKind::Turan => {
                    if orders.is_empty() {
                        return Err(CliError::Usage("--orders is required".into()));
                    }
                    let c = turan_complex(orders)?;
                    let label = format!("turan {orders:?}");
                    (c.dual_generator()?, Some(c), label)
                }
            };
            let mut report = match &complex {
                Some(c) => analyze_complex(c, &label, checks, &cfg)?,
                None => analyze(&f, &label, checks, &cfg)?,
            };
            report.input.kind = "family".into();
            match kind {
                FamilyKind::Even if codim.unwrap_or(0) < d.unwrap_or(0) as usize + 12 => report.warnings.push(format!(
                    "codimension {} lies below the stated bound d + 12; the construction starts from TK(2,2,2) at codimension 14",
                    codim.unwrap_or(0)
                )),
                FamilyKind::Turan => {
                    let shifted = turan_hilbert_shifted_formula(orders);
                    let computed = build_algebra(&f)?.hilbert().iter().map(|&h| h as i128).collect::<Vec<_>>();
                    if shifted != computed {
                        report.warnings.push(format!(
                            "face-count formula h_k = s_(k-1) + s_(d-k-1) gives {shifted:?}, computed {computed:?}; the computed vector is used"
                        ));
                    }
                }
                _ => {}
            }
            if let Some(p) = target {
                std::fs::write(p, write_polynomial_file(&f, Some(&label))).map_err(|source| CliError::Io {
                    path: p.display().to_string(),
                    source,
                })?;
            }
            out.stdout = render(&report, fmt.unwrap_or(Format::Json));
        }
        Command::Examples { only } => {
            let (text, mismatch) = run_examples(only.as_deref(), &cfg, fmt.unwrap_or(Format::Text))?;
            out.stdout = text;
            if mismatch {
                out.code = EXIT_MISMATCH;
            }
        }
        Command::MultMap { path, k, l, coeffs } => {
            let pf = parse_polynomial_file(&read(path)?)?;
            let (text, matches) = mult_map(&pf.polynomial, *k, *l, coeffs, &cfg, fmt.unwrap_or(Format::Json))?;
            out.stdout = text;
            if !matches {
                out.code = EXIT_MISMATCH;
            }
        }
    }
    Ok(out)
}

struct Row {
    id: String,
    property: String,
    expected: String,
    computed: String,
}

impl Row {
    fn pass(&self) -> bool {
        self.expected == self.computed
    }
}

fn run_examples(only: Option<&str>, cfg: &CheckConfig, format: Format) -> Result<(String, bool), CliError> {
    let entries: Vec<_> = example_catalog()
        .into_iter()
        .filter(|e| only.is_none_or(|id| e.id == id))
        .collect();
    if entries.is_empty() {
        return Err(CliError::Usage(format!("no catalog entry named `{}`", only.unwrap_or(""))));
    }
    let mut rows = Vec::new();
    for e in &entries {
        let alg = build_algebra(&e.polynomial)?;
        let mut push = |property: &str, expected: String, computed: String| {
            rows.push(Row {
                id: e.id.clone(),
                property: property.into(),
                expected,
                computed,
            })
        };
        if let Some(h) = &e.expected.hilbert {
            push("hilbert", format!("{h:?}"), format!("{:?}", alg.hilbert()));
        }
        if let Some(c) = e.expected.codimension {
            push("codimension", c.to_string(), alg.codimension().to_string());
        }
        if let Some(q) = e.expected.quadrics {
            push("quadrics", q.to_string(), alg.ann_generated_by_quadrics().presented.to_string());
        }
        if let Some(w) = e.expected.wlp {
            push("wlp", w.to_string(), wlp_check(&alg, cfg)?.holds.to_string());
        }
        if let Some(s) = e.expected.slp {
            push("slp", s.to_string(), slp_check(&alg, cfg)?.holds.to_string());
        }
    }
    let mismatch = rows.iter().any(|r| !r.pass());
    let text = match format {
        Format::Text => {
            let mut s = format!("{:<20} {:<12} {:<28} {:<28} result\n", "example", "property", "expected", "computed");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:<20} {:<12} {:<28} {:<28} {}",
                    r.id,
                    r.property,
                    r.expected,
                    r.computed,
                    if r.pass() { "PASS" } else { "FAIL" }
                );
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "id": r.id,
                        "property": r.property,
                        "expected": r.expected,
                        "computed": r.computed,
                        "pass": r.pass(),
                    })
                })
                .collect();
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "config": cfg,
                "rows": rows,
                "all_pass": !mismatch,
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    };
    Ok((text, mismatch))
}

fn matrix_strings(m: &Matrix<BigRational>) -> Vec<Vec<String>> {
    m.iter_rows().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn mult_map(f: &Polynomial, k: u32, l: u32, coeffs: &[i64], cfg: &CheckConfig, format: Format) -> Result<(String, bool), CliError> {
    let alg = build_algebra(f)?;
    let ell = if coeffs.is_empty() {
        random_linear_form(&alg, &mut cfg.rng(0x3a), cfg.sample_bound)
    } else {
        linear_form(&alg, coeffs)?
    };
    let mut warnings = Vec::new();
    if alg.f().eval(ell.point())?.is_zero() {
        warnings.push("f(L^perp) = 0".to_string());
    }
    let oracle = mult_map_matrix(&alg, k, l, &ell)?;
    let dual = dual_mixed_hessian(&alg, l, k)?
        .evaluate(ell.point())?
        .scale(&BigRational::from_integer(factorial(l - k)));
    let matches = oracle == dual;
    let rank = oracle.rank();
    let point: Vec<String> = ell.point().iter().map(ToString::to_string).collect();
    let text = match format {
        Format::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "config": cfg,
                "k": k,
                "l": l,
                "L": point,
                "multiplication_map": matrix_strings(&oracle),
                "scaled_dual_hessian": matrix_strings(&dual),
                "match": matches,
                "rank": rank,
                "warnings": warnings,
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut s = format!("L = ({})\n", point.join(", "));
            for (title, m) in [("multiplication map", &oracle), ("(l-k)! * dual Hessian at L^perp", &dual)] {
                let _ = writeln!(s, "{title}:");
                for row in matrix_strings(m) {
                    let _ = writeln!(s, "  [{}]", row.join(", "));
                }
            }
            let _ = writeln!(s, "match: {matches}\nrank: {rank}");
            for w in &warnings {
                let _ = writeln!(s, "warning: {w}");
            }
            s
        }
    };
    Ok((text, matches))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::parse_from(std::iter::once("gorenstein").chain(args.iter().copied()))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Core(gorenstein::Error::Invariant("x".into())).exit_code(), 3);
        assert_eq!(CliError::Core(gorenstein::Error::NotHomogeneous).exit_code(), 2);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
    }

    #[test]
    fn run_in_process() {
        let out = run(&cli(&["--seed", "4", "--checks", "hilbert", "family", "boolean", "--n", "3"])).unwrap();
        assert_eq!(out.code, EXIT_OK);
        assert_eq!(out.stderr, "seed: 4\n");
        assert!(out.stdout.contains("\"kind\": \"family\""));
        let err = run(&cli(&["--checks", "bogus", "family", "boolean", "--n", "3"])).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let err = run(&cli(&["family", "odd", "--d", "5"])).unwrap_err();
        assert_eq!(err.to_string(), "--codim is required");
    }

    #[test]
    fn examples_text_table() {
        let (text, mismatch) = run_examples(Some("boolean-2"), &CheckConfig::with_seed(1), Format::Text).unwrap();
        assert!(!mismatch);
        assert_eq!(text.lines().count(), 6);
    }
}
