//! `liebi` command-line front end.
//!
//! Exit status: 0 on success, 1 on a false verdict under `--strict` or a failing
//! fixture, 2 on input errors.

pub mod report;

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use liebi::bialgebra::{dual_bracket, dual_cocommutator, make_bialgebra, Cocommutator, LieBialgebra};
use liebi::catalog::{self, resolve_binding, run_fixtures};
use liebi::duality::{classify, dual_splitting, full_support, generic_r_analysis, Condition};
use liebi::geometry::{geometry_report, invariant_metric_space, GeometryError, MetricVerdict};
use liebi::io::{parse_problem, DeltaSource, Problem};
use liebi::lie::{Basis, LieAlgebra, SparseVec, SubalgebraSplitting};
use liebi::scalar::{parse_rational, Bindings};
use liebi::tensor::Bivector;

use report::{Line, Report, ScalarLine, Term};

#[derive(Debug, Parser)]
#[command(name = "liebi", version, about = "Exact Lie bialgebra duality and dual homogeneous space geometry")]
struct Cli {
    /// Fix a parameter, `NAME=RATIONAL`. Overrides the document's `substitute`.
    #[arg(long = "at", global = true, value_name = "NAME=RATIONAL")]
    at: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Exit with status 1 when a checked verdict is false.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coisotropy, coreductivity and cosymmetry of the splitting.
    Check { target: String },
    /// Dual bracket, dual cocommutator and dual splitting.
    Dualize { target: String },
    /// Torsion, curvature and Ricci tensor of the dual homogeneous space.
    Geometry { target: String },
    /// Invariant metrics on the dual homogeneous space.
    Metric { target: String },
    /// Constraints on a generic r-matrix imposed by each condition.
    ScanR {
        target: String,
        /// Extra parameter values for re-evaluation, `NAME=RATIONAL[,NAME=RATIONAL...]`.
        #[arg(long, value_name = "BINDINGS")]
        special: Vec<String>,
    },
    /// Run the catalog fixture suite (all entries when no id is given).
    Fixtures { id: Option<String> },
}

/// Why a run stopped before producing a report.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<(Report, bool), InputError>;

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Fixtures { id } => fixtures(id.as_deref()),
        Command::Check { target } => load("check", target, &cli.at).and_then(|l| check(&l, cli.strict)),
        Command::Dualize { target } => load("dualize", target, &cli.at).and_then(|l| dualize(&l)),
        Command::Geometry { target } => load("geometry", target, &cli.at).and_then(|l| geometry(&l, cli.strict)),
        Command::Metric { target } => load("metric", target, &cli.at).and_then(|l| metric(&l, cli.strict)),
        Command::ScanR { target, special } => load("scan-r", target, &cli.at).and_then(|l| scan(&l, special)),
    };
    match result {
        Ok((report, failed)) => {
            let text = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            let _ = out.write_all(text.as_bytes());
            i32::from(failed)
        }
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

/// A problem with all substitutions applied.
struct Loaded {
    command: String,
    problem: Problem,
    substitutions: Bindings,
}

impl Loaded {
    fn report(&self, status: &str) -> Report {
        Report {
            command: self.command.clone(),
            status: status.into(),
            parameters: self.problem.context().names().to_vec(),
            substitutions: self
                .substitutions
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect(),
            ..Report::default()
        }
    }

    fn algebra(&self) -> &LieAlgebra {
        &self.problem.algebra
    }

    fn splitting(&self) -> Result<&SubalgebraSplitting, InputError> {
        self.problem
            .splitting
            .as_ref()
            .ok_or_else(|| InputError("this command needs a splitting".into()))
    }

    fn bialgebra(&self) -> Result<LieBialgebra, InputError> {
        let delta = self
            .problem
            .cocommutator()
            .ok_or_else(|| InputError("this command needs `r` or `delta`".into()))?;
        Ok(make_bialgebra(self.algebra().clone(), delta)?)
    }
}

fn parse_binding(text: &str) -> Result<(String, liebi::Rational), InputError> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| InputError(format!("expected NAME=RATIONAL, found `{text}`")))?;
    let q = parse_rational(value.trim()).map_err(|e| InputError(format!("`{text}`: {e}")))?;
    Ok((name.trim().to_string(), q))
}

fn resolve(ctx: &liebi::Context, name: &str, q: &liebi::Rational) -> Result<(String, liebi::Rational), InputError> {
    resolve_binding(ctx, name, q).map_err(InputError)
}

fn load(command: &str, target: &str, at: &[String]) -> Result<Loaded, InputError> {
    let problem = match catalog::lookup(target) {
        Some(entry) => Problem::from_entry(&entry),
        None => {
            let text = std::fs::read_to_string(target)
                .map_err(|e| InputError(format!("`{target}` is neither a catalog id nor a readable file: {e}")))?;
            parse_problem(&text).map_err(|d| InputError(format!("{target}:{d}")))?
        }
    };
    let ctx = problem.context().clone();
    let mut subs = problem.substitute.clone();
    for a in at {
        let (name, q) = parse_binding(a)?;
        let (name, q) = resolve(&ctx, &name, &q)?;
        subs.insert(name, q);
    }
    let problem = if subs.is_empty() {
        problem
    } else {
        let algebra = problem.algebra.substitute(&subs)?;
        let delta = match &problem.delta {
            DeltaSource::None => DeltaSource::None,
            DeltaSource::R(r) => DeltaSource::R(r.substitute(&subs)?),
            DeltaSource::Explicit(d) => DeltaSource::Explicit(d.substitute(&subs)?),
        };
        Problem {
            algebra,
            delta,
            substitute: Bindings::new(),
            ..problem
        }
    };
    Ok(Loaded {
        command: command.into(),
        problem,
        substitutions: subs,
    })
}

fn wedge(basis: &Basis, i: usize, j: usize) -> String {
    format!("{}∧{}", basis.name(i), basis.name(j))
}

fn vector_terms(basis: &Basis, v: &SparseVec) -> Vec<Term> {
    v.iter()
        .map(|(k, c)| Term {
            basis: basis.name(*k).to_string(),
            coeff: c.to_string(),
        })
        .collect()
}

fn bivector_terms(basis: &Basis, b: &Bivector) -> Vec<Term> {
    b.components()
        .iter()
        .map(|(&(i, j), c)| Term {
            basis: wedge(basis, i, j),
            coeff: c.to_string(),
        })
        .collect()
}

fn cocommutator_lines(delta: &Cocommutator) -> Vec<Line> {
    let basis = delta.basis();
    (0..delta.dim())
        .map(|i| Line {
            lhs: format!("δ({})", basis.name(i)),
            terms: bivector_terms(basis, delta.get(i)),
        })
        .collect()
}

fn bracket_lines(alg: &LieAlgebra) -> Vec<Line> {
    let basis = alg.basis();
    alg.structure()
        .iter()
        .map(|(&(i, j), v)| Line {
            lhs: format!("[{}, {}]", basis.name(i), basis.name(j)),
            terms: vector_terms(basis, v),
        })
        .collect()
}

fn names(basis: &Basis, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| basis.name(i).to_string()).collect()
}

fn check(l: &Loaded, strict: bool) -> Outcome {
    let b = l.bialgebra()?;
    let s = l.splitting()?;
    let c = classify(&b, s)?;
    let basis = l.algebra().basis();
    let v = &c.verdict;
    let mut report = l.report("ok");
    report.verdict = Some(report::Verdict {
        coisotropic: v.coisotropic,
        coreductive: v.coreductive,
        cosymmetric: v.cosymmetric,
        dual_inclusions: report::Inclusions {
            h_perp_closed: c.inclusions.h_perp_closed,
            mixed_in_t_perp: c.inclusions.mixed_in_t_perp,
            t_perp_in_h_perp: c.inclusions.t_perp_in_h_perp,
        },
        offending: v
            .offending
            .iter()
            .map(|o| report::OffendingTerm {
                condition: o.condition.label().into(),
                generator: basis.name(o.generator).into(),
                block: o.block.label().into(),
                component: wedge(basis, o.component.0, o.component.1),
                coeff: o.value.to_string(),
            })
            .collect(),
    });
    report.cocommutator = Some(cocommutator_lines(b.cocommutator()));
    let all_true = v.coisotropic && v.coreductive && v.cosymmetric;
    Ok((report, strict && !all_true))
}

fn dualize(l: &Loaded) -> Outcome {
    let b = l.bialgebra()?;
    let dual = dual_bracket(b.cocommutator())?;
    let dual_delta = dual_cocommutator(l.algebra());
    let mut report = l.report("ok");
    report.cocommutator = Some(cocommutator_lines(b.cocommutator()));
    report.dual = Some(report::DualAlgebra {
        brackets: bracket_lines(&dual),
        cocommutator: cocommutator_lines(&dual_delta),
        splitting: l.problem.splitting.as_ref().map(|s| {
            let ds = dual_splitting(s);
            report::DualSplitting {
                h_perp: names(dual.basis(), ds.h_perp()),
                t_perp: names(dual.basis(), ds.t_perp()),
            }
        }),
    });
    Ok((report, false))
}

fn geometry(l: &Loaded, strict: bool) -> Outcome {
    let b = l.bialgebra()?;
    let s = l.splitting()?;
    let dual = dual_bracket(b.cocommutator())?;
    let ds = dual_splitting(s);
    let g = match geometry_report(&dual, &ds) {
        Ok(g) => g,
        Err(GeometryError::NotReductive) => return Ok((not_reductive(l), strict)),
        Err(e) => return Err(e.into()),
    };
    let basis = dual.basis();
    let n = |i: usize| basis.name(i);
    let mut report = l.report("ok");
    report.geometry = Some(report::Geometry {
        torsion: g
            .torsion
            .iter()
            .map(|(&(a, b), v)| Line {
                lhs: format!("T({}, {})", n(a), n(b)),
                terms: vector_terms(basis, v),
            })
            .collect(),
        curvature: g
            .curvature
            .iter()
            .map(|(&(a, b, c), v)| Line {
                lhs: format!("R({}, {}){}", n(a), n(b), n(c)),
                terms: vector_terms(basis, v),
            })
            .collect(),
        ricci: g
            .ricci
            .iter()
            .map(|(&(a, b), v)| ScalarLine {
                lhs: format!("S({}, {})", n(a), n(b)),
                coeff: v.to_string(),
            })
            .collect(),
    });
    Ok((report, false))
}

fn not_reductive(l: &Loaded) -> Report {
    let mut report = l.report("not_reductive");
    report.message = Some("the dual splitting is not reductive: [h⊥, t⊥] leaves t⊥".into());
    report
}

fn matrix_strings(m: &[Vec<liebi::Scalar>]) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect()
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn metric(l: &Loaded, strict: bool) -> Outcome {
    let b = l.bialgebra()?;
    let s = l.splitting()?;
    let dual = dual_bracket(b.cocommutator())?;
    let ds = dual_splitting(s);
    let m = match invariant_metric_space(&dual, &ds) {
        Ok(m) => m,
        Err(GeometryError::NotReductive) => return Ok((not_reductive(l), strict)),
        Err(e) => return Err(e.into()),
    };
    let (witness, conditions) = match &m.verdict {
        MetricVerdict::No => (None, Vec::new()),
        MetricVerdict::Yes {
            coefficients,
            witness,
            determinant,
        } => (Some((coefficients, witness, determinant)), Vec::new()),
        MetricVerdict::Conditional {
            coefficients,
            witness,
            determinant,
            conditions,
        } => (Some((coefficients, witness, determinant)), strings(conditions)),
    };
    let mut report = l.report("ok");
    report.metric = Some(report::Metric {
        t_perp: names(dual.basis(), &m.t_perp),
        basis: m.basis.iter().map(|b| matrix_strings(b)).collect(),
        genericity: strings(&m.genericity),
        coefficients: m.coefficients.clone(),
        generic_determinant: m.generic_determinant.to_string(),
        nondegenerate_exists: m.nondegenerate_exists().into(),
        witness: witness.map(|(c, w, d)| report::Witness {
            coefficients: strings(c),
            matrix: matrix_strings(w),
            determinant: d.to_string(),
        }),
        conditions,
    });
    Ok((report, strict && m.nondegenerate_exists() == "no"))
}

fn parse_special(ctx: &liebi::Context, text: &str) -> Result<Bindings, InputError> {
    let mut out = Bindings::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (name, q) = parse_binding(part)?;
        let (name, q) = resolve(ctx, &name, &q)?;
        out.insert(name, q);
    }
    Ok(out)
}

fn scan(l: &Loaded, extra: &[String]) -> Outcome {
    let s = l.splitting()?;
    let alg = l.algebra();
    let ctx = alg.context();
    let mut special = l.problem.special.clone();
    for text in extra {
        let b = parse_special(ctx, text)?;
        if !special.contains(&b) {
            special.push(b);
        }
    }
    let support = l.problem.support.clone().unwrap_or_else(|| full_support(alg.dim()));
    let g = generic_r_analysis(alg, s, &support, &special)?;
    let basis = alg.basis();
    let pair = |(i, j): (usize, usize)| wedge(basis, i, j);
    let pairs = |ps: &[(usize, usize)]| ps.iter().map(|&p| pair(p)).collect::<Vec<_>>();
    let linear = |row: &[liebi::Scalar], labels: &dyn Fn(usize) -> String| -> Vec<Term> {
        row.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| Term {
                basis: labels(k),
                coeff: c.to_string(),
            })
            .collect()
    };
    let systems = Condition::ALL
        .iter()
        .map(|&c| {
            let sys = g.system(c);
            let param = |k: usize| g.parameters[k].clone();
            let support_pair = |k: usize| pair(g.support[k]);
            report::System {
                condition: c.label().into(),
                equations: sys.equations.len(),
                rank: sys.reduced.rank(),
                constraints: sys.reduced.rows.iter().map(|r| linear(r, &param)).collect(),
                solution_basis: sys.solution_basis.iter().map(|v| linear(v, &support_pair)).collect(),
                genericity: strings(&sys.genericity),
                forced_zero: sys.forced_zero.as_ref().map(|f| pairs(f)),
                special: sys
                    .special
                    .iter()
                    .map(|sp| {
                        let at: BTreeMap<String, String> =
                            sp.bindings.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
                        match &sp.outcome {
                            Ok(o) => report::Special {
                                at,
                                rank: Some(o.rank),
                                solution_dim: Some(o.solution_dim),
                                forced_zero: o.forced_zero.as_ref().map(|f| pairs(f)),
                                error: None,
                            },
                            Err(e) => report::Special {
                                at,
                                rank: None,
                                solution_dim: None,
                                forced_zero: None,
                                error: Some(e.clone()),
                            },
                        }
                    })
                    .collect(),
            }
        })
        .collect();
    let mut report = l.report("ok");
    report.scan = Some(report::Scan {
        support: pairs(&g.support),
        parameters: g.parameters.clone(),
        systems,
    });
    Ok((report, false))
}

fn fixtures(id: Option<&str>) -> Outcome {
    let entries = match id {
        Some(id) => vec![catalog::lookup(id).ok_or_else(|| {
            InputError(format!(
                "unknown catalog id `{id}` (known: {})",
                catalog::ids().join(", ")
            ))
        })?],
        None => catalog::ids().iter().filter_map(|id| catalog::lookup(id)).collect(),
    };
    let results: Vec<Vec<report::FixtureLine>> = std::thread::scope(|scope| {
        let handles: Vec<_> = entries
            .iter()
            .map(|e| {
                scope.spawn(move || {
                    run_fixtures(e)
                        .into_iter()
                        .map(|r| report::FixtureLine {
                            entry: e.id.into(),
                            label: r.label,
                            citation: r.citation.into(),
                            passed: r.passed,
                            detail: r.detail,
                        })
                        .collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("fixture thread")).collect()
    });
    let lines: Vec<report::FixtureLine> = results.into_iter().flatten().collect();
    let failed = lines.iter().any(|f| !f.passed);
    let mut report = Report {
        command: "fixtures".into(),
        status: if failed { "failed" } else { "ok" }.into(),
        ..Report::default()
    };
    report.message = Some(format!(
        "{} of {} fixtures passed",
        lines.iter().filter(|f| f.passed).count(),
        lines.len()
    ));
    report.fixtures = Some(lines);
    Ok((report, failed))
}
