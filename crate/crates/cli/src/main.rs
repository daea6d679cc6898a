//! `taft`: command-line front end for taftlab.
//!
//! Exit codes: 0 on success, 2 when an input fails validation (malformed
//! JSON, schema or spec violations, failed module-algebra checks, budget
//! refusals), 1 on internal errors. Diagnostics go to stderr as a single
//! JSON object; data goes to stdout or `--out`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use taftlab::constructions::{
    build_nilpotent_extension, build_semisimple, iso_semisimple, recover_structure, verify_iso_witness,
};
use taftlab::fixtures;
use taftlab::hmodule::{hma_isomorphic_generic, HModuleAlgebra, Simplicity};
use taftlab::identities::{codim_growth_report, codimension_with, CodimOptions, RankMethod};
use taftlab::json::{self as docs, DocKind, FORMAT};
use taftlab::qcomb::q_binom;
use taftlab::taft::{TaftAlgebra, AXIOMS};
use taftlab::{CMatrix, CyclotomicField, Error};

#[derive(Parser)]
#[command(name = "taft", version, about = "Module algebras over Taft Hopf algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the Hopf algebra axioms of H_{m²}(ζ) on its basis.
    HopfCheck {
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Gaussian binomial binom(n, k) at q = ζ_m^e.
    Qbinom { n: u32, k: u32, m: u32, e: i64 },
    /// Build a module algebra from a spec.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Check the module-algebra laws.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Decide H-simplicity.
    Simple {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Decide isomorphism of two semisimple specs.
    IsoSs {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Search for an isomorphism between two module algebras.
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Jacobson radical of an algebra (or of the algebra underlying a module algebra).
    Radical {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Eigenspace grading of an algebra under an operator of order dividing m.
    Grading {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        c: PathBuf,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Recover the graded base algebra and φ from a non-semisimple H-simple algebra.
    Recover {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Codimension c_n, or a growth report for 1..=n.
    Codim {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        /// Largest accepted n!·(m²)^n.
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long)]
        report: Option<ReportFormat>,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        #[command(flatten)]
        out: Output,
    },
    /// Write the shipped corpus to a directory, or check an existing copy.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
        /// Compare instead of writing; fails on any difference.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Semisimple algebra M_k^{⊕t} from {m, k, t, P, Q}.
    Ss {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Extension ⊕ φ^i(B) from a graded algebra B.
    Nilext {
        #[arg(long = "in")]
        input: PathBuf,
        /// Must match the document's m when given.
        #[arg(long)]
        m: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Exact,
    Modular,
}

enum Failure {
    Validation { kind: &'static str, message: String, detail: Value },
    Internal(String),
}

impl Failure {
    fn invalid(kind: &'static str, message: impl Into<String>) -> Self {
        Failure::Validation { kind, message: message.into(), detail: Value::Null }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::Parse(_) => "parse",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::InvalidConductor(_) | Error::ConductorMismatch(..) => "conductor",
            Error::DimensionMismatch(_) => "dimension",
            Error::NonAssociative(..) => "non_associative",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Precondition(_) => "precondition",
            Error::NotDiagonalizable { .. } => "not_diagonalizable",
            Error::Structure(_) | Error::Singular | Error::DivisionByZero => return Failure::Internal(e.to_string()),
        };
        let detail = match &e {
            Error::InvalidSpec(v) => json!({ "violations": v }),
            Error::BudgetExceeded { unit, required, budget } => {
                json!({ "unit": unit, "required": required.to_string(), "budget": budget.to_string() })
            }
            _ => Value::Null,
        };
        Failure::Validation { kind, message: e.to_string(), detail }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::invalid("io", format!("{}: {e}", path.display())))
}

fn emit(out: &Output, text: &str) -> CliResult<()> {
    match &out.out {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| Failure::Internal(format!("{}: {e}", p.display()))),
        None => print_stdout(text),
    }
}

/// A closed stdout (e.g. piped into `head`) is not an error.
fn print_stdout(text: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Internal(e.to_string())),
        _ => Ok(()),
    }
}

fn emit_value(out: &Output, v: &Value) -> CliResult<()> {
    emit(out, &serde_json::to_string_pretty(v).expect("values serialize"))
}

fn rows(a: &CMatrix) -> Value {
    serde_json::to_value(a.to_rows()).expect("entries serialize")
}

/// Reads a module algebra, building it first when the file holds a spec.
fn load_hma(path: &Path) -> CliResult<HModuleAlgebra> {
    let text = read(path)?;
    Ok(match docs::detect_kind(&text)? {
        DocKind::Hma => docs::parse_hma(&text)?,
        DocKind::SemisimpleSpec => build_semisimple(&docs::parse_semisimple_spec(&text)?)?,
        DocKind::GradedAlgebra => build_nilpotent_extension(&docs::parse_graded_algebra(&text)?)?,
        DocKind::Algebra => return Err(Failure::invalid("schema", "expected a module algebra, found a bare algebra")),
    })
}

/// Like [`load_hma`], but also insists that the laws hold.
fn load_verified_hma(path: &Path) -> CliResult<HModuleAlgebra> {
    let h = load_hma(path)?;
    let report = h.verify();
    if !report.all_passed() {
        return Err(Failure::Validation {
            kind: "not_a_module_algebra",
            message: format!("{} fails the module-algebra checks", path.display()),
            detail: serde_json::to_value(report.failures()).expect("checks serialize"),
        });
    }
    Ok(h)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.cmd {
        Cmd::HopfCheck { m, out } => {
            let h = TaftAlgebra::new(m)?;
            let report = h.verify_axioms();
            let axioms: serde_json::Map<String, Value> = AXIOMS
                .iter()
                .map(|&a| (serde_json::to_value(a).unwrap().as_str().unwrap().to_string(), Value::Bool(report.passed(a))))
                .collect();
            emit_value(&out, &json!({
                "format": FORMAT, "m": m, "dim": h.dim(), "passed": report.all_passed(),
                "axioms": axioms, "failures": report.failures,
            }))?;
            if !report.all_passed() {
                return Err(Failure::Internal(format!("H_{{{m}²}} fails its axioms")));
            }
            Ok(())
        }
        Cmd::Qbinom { n, k, m, e } => {
            let f = CyclotomicField::new(m)?;
            let value = q_binom(n, k, &f.zeta_power(e))?;
            let out = Output { out: None };
            emit(&out, &json!({ "n": n, "k": k, "m": m, "e": e, "value": value }).to_string())
        }
        Cmd::Construct { kind: ConstructKind::Ss { input, out } } => {
            let spec = docs::parse_semisimple_spec(&read(&input)?)?;
            emit(&out, &docs::emit_hma(&build_semisimple(&spec)?))
        }
        Cmd::Construct { kind: ConstructKind::Nilext { input, m, out } } => {
            let spec = docs::parse_graded_algebra(&read(&input)?)?;
            if let Some(m) = m.filter(|&m| m != spec.conductor()) {
                return Err(Error::ConductorMismatch(m, spec.conductor()).into());
            }
            emit(&out, &docs::emit_hma(&build_nilpotent_extension(&spec)?))
        }
        Cmd::Verify { input, out } => {
            let h = load_hma(&input)?;
            let report = h.verify();
            emit_value(&out, &json!({ "format": FORMAT, "passed": report.all_passed(), "report": report }))?;
            if !report.all_passed() {
                let names: Vec<&str> = report.failures().iter().map(|c| c.name).collect();
                return Err(Failure::invalid("not_a_module_algebra", format!("failed checks: {}", names.join(", "))));
            }
            Ok(())
        }
        Cmd::Simple { input, out } => {
            let h = load_verified_hma(&input)?;
            let verdict = h.is_h_simple();
            let mut doc = json!({ "format": FORMAT, "verdict": verdict.label(), "dim": h.dim() });
            match &verdict {
                Simplicity::CertifiedSimple => {}
                Simplicity::NotSimple(w) => {
                    doc["reason"] = json!(w.reason);
                    doc["ideal"] = json!(w.ideal.basis());
                }
                Simplicity::Inconclusive { operator_algebra_dim_lower_bound } => {
                    doc["operator_algebra_dim_lower_bound"] = json!(operator_algebra_dim_lower_bound);
                }
            }
            emit_value(&out, &doc)
        }
        Cmd::IsoSs { a, b, out } => {
            let s1 = docs::parse_semisimple_spec(&read(&a)?)?;
            let s2 = docs::parse_semisimple_spec(&read(&b)?)?;
            let doc = match iso_semisimple(&s1, &s2)? {
                Some(w) => {
                    if !verify_iso_witness(&s1, &s2, &w) {
                        return Err(Failure::Internal("isomorphism witness failed re-verification".into()));
                    }
                    json!({ "format": FORMAT, "isomorphic": true,
                            "witness": { "T": rows(&w.t_mat), "r": w.r, "beta": w.beta } })
                }
                None => json!({ "format": FORMAT, "isomorphic": false }),
            };
            emit_value(&out, &doc)
        }
        Cmd::Iso { a, b, out } => {
            let h1 = load_verified_hma(&a)?;
            let h2 = load_verified_hma(&b)?;
            let doc = match hma_isomorphic_generic(&h1, &h2) {
                Some(t) => json!({ "format": FORMAT, "result": "isomorphic", "map": rows(&t) }),
                None if h1.dim() != h2.dim() || h1.conductor() != h2.conductor() => {
                    json!({ "format": FORMAT, "result": "not-isomorphic" })
                }
                None => json!({ "format": FORMAT, "result": "none-found-within-budget" }),
            };
            emit_value(&out, &doc)
        }
        Cmd::Radical { input, out } => {
            let text = read(&input)?;
            let alg = match docs::detect_kind(&text)? {
                DocKind::Algebra => docs::parse_algebra(&text)?,
                _ => load_hma(&input)?.algebra().clone(),
            };
            let j = alg.jacobson_radical();
            emit_value(&out, &json!({
                "format": FORMAT, "dim": alg.dim(), "radical_dim": j.dim(),
                "nilpotency_index": alg.nilpotency_index(&j), "basis": j.basis(),
            }))
        }
        Cmd::Grading { input, c, m, out } => {
            let alg = docs::parse_algebra(&read(&input)?)?;
            let c_op = docs::parse_matrix(&read(&c)?, alg.field())?;
            let g = alg.grading_from_c(&c_op, m)?;
            let comps: Vec<Value> = g
                .components()
                .iter()
                .enumerate()
                .map(|(deg, s)| json!({ "degree": deg, "dim": s.dim(), "basis": s.basis() }))
                .collect();
            emit_value(&out, &json!({ "format": FORMAT, "m": m, "components": comps }))
        }
        Cmd::Recover { input, out } => {
            let h = load_verified_hma(&input)?;
            let rec = recover_structure(&h)?;
            let base: Value = serde_json::from_str(&docs::emit_graded_algebra(&rec.spec)).expect("emitted JSON parses");
            emit_value(&out, &json!({
                "format": FORMAT, "base": base, "radical_dim": rec.radical.dim(),
                "radical_nilpotency": rec.radical_nilpotency, "iso": rows(&rec.iso), "phi": rows(&rec.phi),
            }))
        }
        Cmd::Codim { input, n, budget, report, method, out } => {
            let h = load_verified_hma(&input)?;
            let mut opts = CodimOptions::default();
            if let Some(b) = budget {
                opts.budget = b;
            }
            opts.method = match method {
                Method::Auto => RankMethod::Auto,
                Method::Exact => RankMethod::Exact,
                Method::Modular => RankMethod::Modular,
            };
            match report {
                None => {
                    let r = codimension_with(&h, n, &opts)?;
                    let mut doc = json!({ "n": r.n, "c": r.value });
                    if !r.exact {
                        doc["lower_bound_only"] = json!(true);
                    }
                    emit(&out, &doc.to_string())
                }
                Some(ReportFormat::Json) => {
                    let rows = codim_growth_report(&h, n, &opts)?;
                    emit_value(&out, &json!({ "format": FORMAT, "dim": h.dim(), "rows": rows }))
                }
                Some(ReportFormat::Csv) => {
                    let rows = codim_growth_report(&h, n, &opts)?;
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["n", "rows", "cols", "c_n", "bound_ok", "wall_ms"]).map_err(csv_err)?;
                    for r in rows {
                        w.write_record([
                            r.n.to_string(),
                            r.rows.to_string(),
                            r.cols.to_string(),
                            r.c_n.to_string(),
                            r.bound_ok.to_string(),
                            r.wall_ms.to_string(),
                        ])
                        .map_err(csv_err)?;
                    }
                    let bytes = w.into_inner().map_err(|e| Failure::Internal(e.to_string()))?;
                    emit(&out, String::from_utf8(bytes).expect("CSV is UTF-8").trim_end())
                }
            }
        }
        Cmd::Fixtures { dir, check } => fixtures_cmd(&dir, check),
    }
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::Internal(e.to_string())
}

fn fixtures_cmd(dir: &Path, check: bool) -> CliResult<()> {
    let corpus = fixtures::corpus();
    if !check {
        fs::create_dir_all(dir).map_err(|e| Failure::Internal(format!("{}: {e}", dir.display())))?;
    }
    let mut listing = Vec::new();
    let mut mismatched = Vec::new();
    for f in &corpus {
        let path = dir.join(format!("{}.json", f.name));
        let text = f.fixture.to_json();
        if check {
            let found = read(&path)?;
            if docs::canonicalize(&found)? != text {
                mismatched.push(f.name);
            }
        } else {
            fs::write(&path, format!("{text}\n")).map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))?;
        }
        listing.push(json!({ "name": f.name, "file": path.display().to_string(),
                             "description": f.description, "simple": f.simple }));
    }
    print_stdout(&serde_json::to_string_pretty(&json!({ "format": FORMAT, "fixtures": listing })).unwrap())?;
    if !mismatched.is_empty() {
        return Err(Failure::Validation {
            kind: "fixture_mismatch",
            message: format!("{} fixture(s) differ from the corpus", mismatched.len()),
            detail: json!(mismatched),
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation { kind, message, detail }) => {
            let mut diag = json!({ "error": kind, "message": message });
            if !detail.is_null() {
                diag["detail"] = detail;
            }
            eprintln!("{diag}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(message)) => {
            eprintln!("{}", json!({ "error": "internal", "message": message }));
            ExitCode::from(1)
        }
    }
}
