//! Command-line front end. Every command builds a JSON value; `--format text`
//! renders the same value as indented `key: value` lines.
//!
//! Exit codes: 0 success, 2 input error, 3 structural violation, 4 failed
//! check or precondition.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{JkError, Result};
use crate::exactalg::{MultiPoly, Rational};
use crate::io;
use crate::pencil::generate::{expected_invariants, generate, parse_block_spec};
use crate::pencil::{char_poly, eigenvalue_set, jk_invariants, ProjParam, SkewPencil};
use crate::poisson::{self, Guardrails, PolyBivector, PolyPencil};
use crate::reduction::{bi_poisson_reduce, bilagrangian_completion, default_obstruction_samples, obstruction_check_at};
use crate::subspaces::{annihilator_checks, core_subspace, is_admissible, is_bi_isotropic, mantle_subspace};

#[derive(Parser, Debug)]
#[command(name = "jkpencil", version, about = "Exact Jordan-Kronecker analysis of skew-symmetric and Poisson pencils")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank, Kronecker indices, Jordan blocks, characteristic polynomial.
    Invariants { pencil: PathBuf },
    /// Sum of the kernels of all regular forms.
    Core { pencil: PathBuf },
    /// Skew-orthogonal complement of the core.
    Mantle { pencil: PathBuf },
    /// Whether the complements of a subspace agree for almost all forms.
    Admissible { pencil: PathBuf, subspace: PathBuf },
    /// Induced pencil on the quotient by an admissible bi-isotropic subspace.
    Reduce { pencil: PathBuf, subspace: PathBuf },
    /// Complete a subspace containing the core to a bi-Lagrangian one.
    Complete {
        pencil: PathBuf,
        /// Starting subspace; the core when omitted.
        #[arg(long)]
        from: Option<PathBuf>,
    },
    /// Whether a vector lies in the image of the generic form.
    Obstruct {
        pencil: PathBuf,
        vector: PathBuf,
        /// Diagnostic sample parameters, e.g. "0,1,2,inf".
        #[arg(long)]
        samples: Option<String>,
    },
    /// Annihilator relations between core, images and preimages.
    Annihilators { pencil: PathBuf },
    /// Checks on polynomial Poisson brackets.
    #[command(subcommand)]
    Poisson(PoissonCommand),
    /// Generate a pencil from canonical blocks, e.g. "J:2:2,K:3,J:inf:1".
    Gen {
        #[arg(long)]
        blocks: String,
        #[arg(long, default_value_t = 0)]
        congruence_seed: u64,
        /// Skip the random congruence and emit the canonical direct sum.
        #[arg(long)]
        identity: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GuardOpts {
    #[arg(long, default_value_t = Guardrails::default().max_degree)]
    pub max_degree: u32,
    #[arg(long, default_value_t = Guardrails::default().max_dim)]
    pub max_dim: usize,
}

impl GuardOpts {
    fn guardrails(&self) -> Guardrails {
        Guardrails { max_degree: self.max_degree, max_dim: self.max_dim }
    }
}

#[derive(Args, Debug, Clone)]
pub struct PencilArgs {
    /// Bivector file for A.
    pub a: PathBuf,
    /// Bivector file for B.
    pub b: PathBuf,
    #[command(flatten)]
    pub guard: GuardOpts,
}

#[derive(Args, Debug, Clone)]
pub struct PointOpts {
    /// Explicit points "1,2,3;4,5,6" or "random:N" (regular points).
    #[arg(long, default_value = "random:5")]
    pub points: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum PoissonCommand {
    /// Jacobi identity for one bivector.
    Check {
        bivector: PathBuf,
        #[command(flatten)]
        guard: GuardOpts,
    },
    /// Schouten compatibility of two bivectors.
    Compat {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        guard: GuardOpts,
    },
    /// Whether f is a Casimir of A_l (of A and B when no parameter is given).
    Casimir {
        #[command(flatten)]
        pencil: PencilArgs,
        #[arg(long)]
        f: String,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// The bracket A + f B for a common Casimir f.
    Shift {
        #[command(flatten)]
        pencil: PencilArgs,
        #[arg(long)]
        f: String,
    },
    /// Pairwise brackets of a family under A and B.
    BiInvolution {
        #[command(flatten)]
        pencil: PencilArgs,
        family: PathBuf,
    },
    /// Dimension and bi-Lagrangian test for the span of differentials.
    Completeness {
        #[command(flatten)]
        pencil: PencilArgs,
        family: PathBuf,
        #[command(flatten)]
        points: PointOpts,
    },
    /// The identity (A - l B) dl = 0 for an eigenvalue field l.
    Eigendiff {
        #[command(flatten)]
        pencil: PencilArgs,
        #[arg(long)]
        field: String,
        #[command(flatten)]
        points: PointOpts,
    },
    /// Stored Hamiltonians, solvability probes and first integrals.
    Bihamiltonian {
        #[command(flatten)]
        pencil: PencilArgs,
        system: PathBuf,
        /// Extra parameters to probe, e.g. "1,2".
        #[arg(long, default_value = "")]
        lambda: String,
        #[arg(long)]
        family: Option<PathBuf>,
        #[command(flatten)]
        points: PointOpts,
    },
    /// Role validations and pointwise checks for a family of standard integrals.
    StandardReport {
        #[command(flatten)]
        pencil: PencilArgs,
        family: PathBuf,
        #[arg(long)]
        system: Option<PathBuf>,
        /// Also run the bi-Lagrangian completion at each point.
        #[arg(long)]
        complete: bool,
        #[command(flatten)]
        points: PointOpts,
    },
}

/// Command output plus whether its verdict passed.
struct Outcome {
    value: Value,
    pass: bool,
}

fn ok(value: Value) -> Outcome {
    Outcome { value, pass: true }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| JkError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_pencil(path: &Path) -> Result<SkewPencil> {
    io::parse_pencil(&read(path)?)
}

fn load_bivector(path: &Path) -> Result<PolyBivector> {
    io::parse_bivector(&read(path)?)
}

fn load_poly_pencil(a: &PencilArgs) -> Result<PolyPencil> {
    PolyPencil::with_guardrails(load_bivector(&a.a)?, load_bivector(&a.b)?, &a.guard.guardrails())
}

fn poly(s: &str) -> Result<MultiPoly> {
    s.parse()
}

fn points(p: &PolyPencil, o: &PointOpts) -> Result<Vec<Vec<Rational>>> {
    let pts = match o.points.strip_prefix("random:") {
        Some(k) => {
            let k: usize = k.parse().map_err(|_| JkError::Parse(format!("bad point count in '{}'", o.points)))?;
            poisson::generate_points(p, k, o.seed)?
        }
        None => io::parse_points(&o.points)?,
    };
    for x in &pts {
        if x.len() != p.n() {
            return Err(JkError::Structural(format!("point with {} coordinates, expected {}", x.len(), p.n())));
        }
    }
    Ok(pts)
}

fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Invariants { pencil } => {
            let p = load_pencil(pencil)?;
            Ok(ok(io::invariants_json(&jk_invariants(&p)?, &char_poly(&p), &eigenvalue_set(&p)?)))
        }
        Command::Core { pencil } => Ok(ok(io::subspace_json(&core_subspace(&load_pencil(pencil)?)?))),
        Command::Mantle { pencil } => Ok(ok(io::subspace_json(&mantle_subspace(&load_pencil(pencil)?)?))),
        Command::Admissible { pencil, subspace } => {
            let p = load_pencil(pencil)?;
            let u = io::parse_subspace(&read(subspace)?)?;
            let r = is_admissible(&p, &u)?;
            let mut v = io::admissibility_json(&r);
            v["bi_isotropic"] = json!(is_bi_isotropic(&p, &u));
            Ok(Outcome { value: v, pass: r.admissible })
        }
        Command::Reduce { pencil, subspace } => {
            let p = load_pencil(pencil)?;
            let u = io::parse_subspace(&read(subspace)?)?;
            Ok(ok(io::reduced_json(&bi_poisson_reduce(&p, &u)?)))
        }
        Command::Complete { pencil, from } => {
            let p = load_pencil(pencil)?;
            let l0 = match from {
                Some(f) => io::parse_subspace(&read(f)?)?,
                None => core_subspace(&p)?,
            };
            Ok(ok(io::trace_json(&bilagrangian_completion(&p, &l0)?)))
        }
        Command::Obstruct { pencil, vector, samples } => {
            let p = load_pencil(pencil)?;
            let v = io::parse_vector(&read(vector)?)?;
            let s = match samples {
                Some(s) => io::parse_params(s)?,
                None => default_obstruction_samples(),
            };
            let r = obstruction_check_at(&p, &v, &s)?;
            Ok(Outcome { value: io::obstruction_json(&r), pass: r.pass })
        }
        Command::Annihilators { pencil } => {
            let r = annihilator_checks(&load_pencil(pencil)?)?;
            Ok(Outcome { value: io::annihilator_json(&r), pass: r.all_pass() })
        }
        Command::Poisson(pc) => execute_poisson(pc),
        Command::Gen { blocks, congruence_seed, identity, .. } => {
            let spec = parse_block_spec(blocks)?;
            let p = generate(&spec, (!identity).then_some(*congruence_seed))?;
            let mut v = io::pencil_json(&p);
            v["blocks"] = json!(spec.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(","));
            v["invariants"] = io::ground_truth_json(&expected_invariants(&spec));
            Ok(ok(v))
        }
    }
}

fn execute_poisson(pc: &PoissonCommand) -> Result<Outcome> {
    match pc {
        PoissonCommand::Check { bivector, guard } => {
            let p = load_bivector(bivector)?;
            let t = poisson::schouten_bracket_with(&p, &p, &guard.guardrails())?;
            Ok(Outcome { value: json!({"poisson": t.is_zero(), "jacobi": io::trivector_json(&t)}), pass: t.is_zero() })
        }
        PoissonCommand::Compat { a, b, guard } => {
            let (a, b) = (load_bivector(a)?, load_bivector(b)?);
            let g = guard.guardrails();
            let ta = poisson::schouten_bracket_with(&a, &a, &g)?;
            let tb = poisson::schouten_bracket_with(&b, &b, &g)?;
            let tab = poisson::schouten_bracket_with(&a, &b, &g)?;
            let pass = ta.is_zero() && tb.is_zero() && tab.is_zero();
            Ok(Outcome {
                value: json!({
                    "a_poisson": ta.is_zero(),
                    "b_poisson": tb.is_zero(),
                    "compatible": tab.is_zero(),
                    "schouten": io::trivector_json(&tab),
                }),
                pass,
            })
        }
        PoissonCommand::Casimir { pencil, f, lambda } => {
            let p = load_poly_pencil(pencil)?;
            let f = poly(f)?;
            let params = match lambda {
                Some(l) => io::parse_params(l)?,
                None => vec![ProjParam::int(0), ProjParam::Infinity],
            };
            let results: Vec<(ProjParam, Vec<MultiPoly>)> =
                params.into_iter().map(|l| (l.clone(), p.at(&l).apply(&f.gradient(p.n())))).collect();
            let pass = results.iter().all(|(_, w)| w.iter().all(MultiPoly::is_zero));
            let per: Vec<Value> = results
                .iter()
                .map(|(l, w)| {
                    let casimir = w.iter().all(MultiPoly::is_zero);
                    json!({
                        "lambda": l.to_string(),
                        "casimir": casimir,
                        "witness": (!casimir).then(|| w.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                    })
                })
                .collect();
            Ok(Outcome { value: json!({"f": f.to_string(), "results": per, "pass": pass}), pass })
        }
        PoissonCommand::Shift { pencil, f } => {
            let p = load_poly_pencil(pencil)?;
            Ok(ok(io::bivector_json(&poisson::casimir_shift(&p, &poly(f)?)?)))
        }
        PoissonCommand::BiInvolution { pencil, family } => {
            let p = load_poly_pencil(pencil)?;
            let r = poisson::bi_involution_check(&p, &io::parse_family(&read(family)?)?);
            Ok(Outcome { value: io::involution_json(&r), pass: r.pass() })
        }
        PoissonCommand::Completeness { pencil, family, points: po } => {
            let p = load_poly_pencil(pencil)?;
            let f = io::parse_family(&read(family)?)?;
            let pts = points(&p, po)?;
            let r = poisson::completeness_check(&p, &f, &pts)?;
            Ok(Outcome { value: io::completeness_json(&r, &pts), pass: r.complete() })
        }
        PoissonCommand::Eigendiff { pencil, field, points: po } => {
            let p = load_poly_pencil(pencil)?;
            let pts = points(&p, po)?;
            let r = poisson::check_eigendiff(&p, &poly(field)?, &pts)?;
            Ok(Outcome { value: io::eigendiff_json(&r, &pts), pass: r.pass() })
        }
        PoissonCommand::Bihamiltonian { pencil, system, lambda, family, points: po } => {
            let p = load_poly_pencil(pencil)?;
            let s = io::parse_system(&read(system)?, &p)?;
            let extra = if lambda.trim().is_empty() { vec![] } else { io::parse_params(lambda)? };
            let f = match family {
                Some(f) => io::parse_family(&read(f)?)?,
                None => Default::default(),
            };
            let pts = points(&p, po)?;
            let r = poisson::bihamiltonian_check(&p, &s, &extra, &pts, &f)?;
            Ok(Outcome { value: io::bihamiltonian_json(&r, &pts), pass: r.pass() })
        }
        PoissonCommand::StandardReport { pencil, family, system, complete, points: po } => {
            let p = load_poly_pencil(pencil)?;
            let f = io::parse_family(&read(family)?)?;
            let s = match system {
                Some(s) => Some(io::parse_system(&read(s)?, &p)?),
                None => None,
            };
            let pts = points(&p, po)?;
            let r = poisson::standard_integrals_report(&p, s.as_ref(), &f, &pts, *complete)?;
            Ok(Outcome { value: io::standard_json(&r, &pts), pass: r.pass() })
        }
    }
}

/// Indented `key: value` rendering of a JSON value.
pub fn render_text(v: &Value) -> String {
    fn scalar(v: &Value) -> Option<String> {
        match v {
            Value::Null => Some("-".into()),
            Value::String(s) => Some(s.clone()),
            Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
            Value::Array(a) => {
                let items = a.iter().map(scalar).collect::<Option<Vec<_>>>()?;
                Some(format!("[{}]", items.join(", ")))
            }
            _ => None,
        }
    }
    fn walk(v: &Value, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            walk(x, depth + 1, out);
                        }
                    }
                }
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}[{i}]\n"));
                            walk(x, depth + 1, out);
                        }
                    }
                }
            }
            _ => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
        }
    }
    let mut out = String::new();
    walk(v, 0, &mut out);
    out
}

/// Runs the CLI on `args` (including the program name), writing the report
/// to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let _ = write!(err, "{}", e.render());
            return 2;
        }
    };
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.value).expect("JSON values serialize") + "\n",
        Format::Text => render_text(&outcome.value),
    };
    let target = match &cli.command {
        Command::Gen { output: Some(path), .. } => Some(path.clone()),
        _ => None,
    };
    match target {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &text) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    if outcome.pass {
        0
    } else {
        let _ = writeln!(err, "check failed");
        4
    }
}
