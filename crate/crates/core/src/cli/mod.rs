//! Command-line front end. Exit codes: 0 all checks pass, 1 some check
//! failed, 2 usage or parse error, 3 a window was refused or a limit hit.

mod report;

pub use report::{Check, Report, Status};

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::arith::parse_rational;
use crate::conformal::{
    check_jacobi, check_sesquilinearity, check_skew, classify, AxiomReport, ConformalAlgebra, CoreError,
    SeriesStatus, Verdict,
};
use crate::dsl::{self, builtin, parse_element, parse_file};
use crate::fock::{
    borcherds_sweep, compare_with_algebra, extract_conformal, skew_sweep, theorem_ideal_check, vacuum_dichotomy,
    verify_axioms, wick_sweep, Cutoff, FockError, FockState, FockVertex, IdentityCheck, SweepReport,
};
use crate::lattice::Submodule;
use crate::wick::{factorial_det_check, forward_expand, separate, LaurentFamily, SeparationInput, WickError};

/// Caveat attached to every inconclusive structural result.
pub const SEARCH_CAVEAT: &str = "bounded search: the degree or depth bound was reached before the result settled";

#[derive(Debug, Parser)]
#[command(name = "lcalc", version, about = "Exact lambda-bracket and free-boson vertex algebra checks")]
pub struct Cli {
    /// Also write the report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check skew-symmetry and the Jacobi identity of an algebra.
    Check {
        /// A `.lca` file or `builtin:NAME`.
        target: String,
    },
    /// Derived series, centre and ideal-based classification.
    Analyze {
        target: String,
        /// Specialize a parameter, e.g. `--set c=1`.
        #[arg(long = "set", value_name = "PARAM=RATIONAL")]
        set: Vec<String>,
        #[arg(long, default_value_t = 3)]
        centre_bound: usize,
        #[arg(long, default_value_t = 8)]
        max_depth: usize,
    },
    /// Evaluate `[x_lam y]`.
    Bracket { target: String, left: String, right: String },
    /// Free-boson Fock space checks.
    #[command(subcommand)]
    Fock(FockCommand),
    /// Factorial matrix and separation.
    #[command(subcommand)]
    Lemma(LemmaCommand),
}

#[derive(Debug, Subcommand)]
pub enum FockCommand {
    /// Vacuum, creation, translation and locality identities.
    Axioms {
        #[arg(long)]
        cutoff: usize,
        /// Weight of the acting states (default: cutoff / 2).
        #[arg(long)]
        max_weight: Option<usize>,
    },
    /// The commutator formula for modes.
    Borcherds {
        #[arg(long)]
        cutoff: usize,
        #[arg(long, default_value_t = 4)]
        max_weight: usize,
        #[arg(long, default_value_t = 4)]
        mode_range: i64,
    },
    /// The generalized Wick formula.
    Wick {
        #[arg(long)]
        cutoff: usize,
        #[arg(long, default_value_t = 3)]
        max_weight: usize,
    },
    /// Skew-commutativity `Y(a,z)b = e^{zT} Y(b,-z)a`.
    Skew {
        #[arg(long)]
        cutoff: usize,
        /// Default: cutoff / 2.
        #[arg(long)]
        max_weight: Option<usize>,
    },
    /// Tests that `[I, V]` is closed under products, for `I` generated by `--gens`.
    Theorem {
        /// Homogeneous generators such as `x1,x1^2`.
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<String>,
        #[arg(long)]
        cutoff: usize,
        #[arg(long, default_value_t = crate::fock::Cutoff::DEFAULT_SLACK)]
        slack: usize,
    },
    /// The induced lambda-bracket on low-weight states.
    Extract {
        #[arg(long)]
        cutoff: usize,
        #[arg(long)]
        max_weight: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum LemmaCommand {
    /// Determinant of the factorial matrix against its closed form.
    Det {
        #[arg(long)]
        m: usize,
        #[arg(long = "N", id = "N")]
        n: usize,
    },
    /// Recover `p` from the high lambda-coefficients in a JSON file.
    Separate {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Limit(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::LimitExceeded(_) => CliError::Limit(e.to_string()),
            CoreError::Parametric(_) => CliError::Usage(format!("{e}; pass --set PARAM=VALUE")),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<WickError> for CliError {
    fn from(e: WickError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Runs the CLI on `args` (including the program name) against the process
/// streams and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let start = Instant::now();
    let (target, checks) = match execute(&cli.command) {
        Ok(r) => r,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "{msg}");
            return 2;
        }
        Err(CliError::Limit(msg)) => {
            let _ = writeln!(err, "limit exceeded: {msg}");
            return 3;
        }
    };
    let report = Report {
        command: format!("lcalc {echo}"),
        target,
        checks,
        timing_ms: start.elapsed().as_millis() as u64,
    };
    let _ = report.print(out);
    if let Some(path) = &cli.out {
        if let Err(e) = report.write_json(path) {
            let _ = writeln!(err, "cannot write {}: {e}", path.display());
            return 2;
        }
    }
    report.exit_code()
}

fn execute(cmd: &Command) -> Result<(String, Vec<Check>), CliError> {
    match cmd {
        Command::Check { target } => {
            let algebras = load(target)?;
            let mut checks = Vec::new();
            for alg in &algebras {
                checks.extend(axiom_checks(alg, algebras.len() > 1));
            }
            Ok((target.clone(), checks))
        }
        Command::Analyze {
            target,
            set,
            centre_bound,
            max_depth,
        } => {
            let values = parse_assignments(set)?;
            let mut checks = Vec::new();
            let algebras = load(target)?;
            for alg in &algebras {
                let alg = alg.specialize(&values)?;
                checks.extend(analysis_checks(&alg, *centre_bound, *max_depth, algebras.len() > 1)?);
            }
            Ok((target.clone(), checks))
        }
        Command::Bracket { target, left, right } => {
            let mut algebras = load(target)?;
            if algebras.len() != 1 {
                return Err(CliError::Usage(format!(
                    "{target} defines {} algebras; bracket needs exactly one",
                    algebras.len()
                )));
            }
            let alg = algebras.remove(0);
            let x = element(left, &alg)?;
            let y = element(right, &alg)?;
            let p = alg.bracket(&x, &y)?;
            let rendered = alg.generators().render_lambda(&p);
            Ok((
                alg.name().to_string(),
                vec![Check::pass(format!("[{left}_lam {right}]"), Some(rendered))],
            ))
        }
        Command::Fock(f) => fock(f),
        Command::Lemma(l) => lemma(l),
    }
}

fn load(target: &str) -> Result<Vec<ConformalAlgebra>, CliError> {
    if let Some(name) = target.strip_prefix("builtin:") {
        return builtin(name).map(|a| vec![a]).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown builtin `{name}`; available: {}",
                dsl::BUILTIN_NAMES.join(", ")
            ))
        });
    }
    let src = std::fs::read_to_string(target).map_err(|e| CliError::Usage(format!("cannot read {target}: {e}")))?;
    parse_file(&src).map_err(|errs| {
        CliError::Usage(
            errs.iter()
                .map(|e| e.render(&src, target))
                .collect::<Vec<_>>()
                .join("\n"),
        )
    })
}

fn element(src: &str, alg: &ConformalAlgebra) -> Result<crate::conformal::ConformalElement, CliError> {
    parse_element(src, alg).map_err(|errs| {
        CliError::Usage(
            errs.iter()
                .map(|e| e.render(src, "<expr>"))
                .collect::<Vec<_>>()
                .join("\n"),
        )
    })
}

fn parse_assignments(set: &[String]) -> Result<BTreeMap<String, crate::arith::Rational>, CliError> {
    set.iter()
        .map(|s| {
            let (k, v) = s
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--set expects PARAM=RATIONAL, got `{s}`")))?;
            let v = parse_rational(v).ok_or_else(|| CliError::Usage(format!("`{v}` is not a rational")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn prefixed(alg: &ConformalAlgebra, multi: bool, name: &str) -> String {
    if multi {
        format!("{}: {name}", alg.name())
    } else {
        name.to_string()
    }
}

fn axiom_check(name: String, r: &AxiomReport) -> Check {
    match r.failures().next() {
        Some(f) => Check::fail(
            name,
            format!(
                "{} of {} entries fail; first {}: residual {}",
                r.failures().count(),
                r.entries.len(),
                f.label,
                f.residual.as_deref().unwrap_or("?")
            ),
        ),
        None => Check::pass(
            name,
            (!r.notes.is_empty()).then(|| format!("{} entries; note: {}", r.entries.len(), r.notes.join("; "))),
        ),
    }
}

fn axiom_checks(alg: &ConformalAlgebra, multi: bool) -> Vec<Check> {
    vec![
        Check::pass(
            prefixed(alg, multi, "C1 polynomial brackets"),
            Some("structural: brackets are stored as polynomials in lam".into()),
        ),
        axiom_check(prefixed(alg, multi, "C2 sesquilinearity"), &check_sesquilinearity(alg)),
        axiom_check(prefixed(alg, multi, "C3 skew-symmetry"), &check_skew(alg)),
        axiom_check(prefixed(alg, multi, "C4 Jacobi identity"), &check_jacobi(alg)),
    ]
}

/// `R`, `0` or the canonical generators of `m`.
pub fn render_module(m: &Submodule) -> String {
    if m.is_zero() {
        return "0".into();
    }
    match m.equals(&Submodule::full(m.ambient())) {
        Ok(true) => "R".into(),
        _ => m.render(),
    }
}

fn analysis_checks(
    alg: &ConformalAlgebra,
    centre_bound: usize,
    max_depth: usize,
    multi: bool,
) -> Result<Vec<Check>, CliError> {
    let c = classify(alg, centre_bound, max_depth)?;
    let series: Vec<String> = c.series.terms.iter().map(render_module).collect();
    let series_text = format!(
        "[{}] ({})",
        series.join(", "),
        format!("{:?}", c.series.status).to_lowercase()
    );
    let series_check = if c.series.status == SeriesStatus::Inconclusive {
        Check::inconclusive(prefixed(alg, multi, "derived series"), SEARCH_CAVEAT, Some(series_text))
    } else {
        Check::pass(prefixed(alg, multi, "derived series"), Some(series_text))
    };
    let derived = c.series.terms.get(1).map_or_else(|| "?".into(), render_module);
    let centre_text = format!(
        "{} (degree bound {}, {} at {})",
        render_module(&c.centre.module),
        c.centre.degree_bound,
        if c.centre.stable { "stable" } else { "changes" },
        c.centre.degree_bound + 1
    );
    let centre_check = if c.centre.stable {
        Check::pass(prefixed(alg, multi, "centre"), Some(centre_text))
    } else {
        Check::inconclusive(prefixed(alg, multi, "centre"), SEARCH_CAVEAT, Some(centre_text))
    };
    let tested: Vec<String> = c
        .tested
        .iter()
        .map(|t| {
            format!(
                "{} -> {} ({}{})",
                t.seed,
                render_module(&t.module),
                if t.proper { "proper" } else { "improper" },
                if t.central { ", central" } else { "" }
            )
        })
        .collect();
    let verdict = format!("{}", c.verdict);
    let verdict_check = if c.verdict == Verdict::Inconclusive {
        Check::inconclusive(prefixed(alg, multi, "classification"), SEARCH_CAVEAT, Some(verdict))
    } else {
        Check::pass(prefixed(alg, multi, "classification"), Some(verdict))
    };
    Ok(vec![
        series_check,
        Check::pass(prefixed(alg, multi, "derived algebra"), Some(format!("R' = {derived}"))),
        centre_check,
        Check::pass(prefixed(alg, multi, "tested ideals"), Some(tested.join("; "))),
        verdict_check,
    ])
}

fn sweep_check(s: &SweepReport, w: usize) -> Check {
    if let Some(first) = s.failures.first() {
        return Check::fail(&s.name, format!("{} failing cases; first {first}", s.failures.len()));
    }
    if let Some(first) = s.refused.first() {
        return Check::refused(&s.name, format!("{} cases refused; first {first}", s.refused.len()));
    }
    Check::pass(
        &s.name,
        Some(format!(
            "{} cases, {} coefficients compared, {} outside the window (cutoff {w})",
            s.cases, s.asserted, s.vacuous
        )),
    )
}

fn identity_check(c: &IdentityCheck) -> Check {
    Check::from_outcome(
        &c.name,
        c.passed(),
        c.witness.clone().or_else(|| Some(format!("{} instances", c.instances))),
    )
}

fn fock_error(name: &str, e: FockError) -> Result<Check, CliError> {
    match e {
        FockError::Refused { .. } | FockError::WeightExceeded { .. } => Ok(Check::refused(name, e.to_string())),
        other => Err(CliError::Usage(other.to_string())),
    }
}

fn fock(cmd: &FockCommand) -> Result<(String, Vec<Check>), CliError> {
    let (target, checks) = match cmd {
        FockCommand::Axioms { cutoff, max_weight } => {
            let v = FockVertex::new(Cutoff::new(*cutoff));
            let r = verify_axioms(&v, max_weight.unwrap_or(cutoff / 2));
            let mut checks: Vec<Check> = r.identities.iter().map(identity_check).collect();
            let top = r.locality.iter().map(|l| l.order).max().unwrap_or(0);
            checks.push(Check::pass(
                "locality orders",
                Some(format!("{} pairs, largest order {top}", r.locality.len())),
            ));
            let (central, not_ideal) = vacuum_dichotomy(&v, *cutoff);
            checks.push(identity_check(&central));
            checks.push(identity_check(&not_ideal));
            (format!("fock W={cutoff}"), checks)
        }
        FockCommand::Borcherds {
            cutoff,
            max_weight,
            mode_range,
        } => {
            let v = FockVertex::new(Cutoff::new(*cutoff));
            let s = borcherds_sweep(&v, *max_weight, *mode_range, *max_weight);
            (format!("fock W={cutoff}"), vec![sweep_check(&s, *cutoff)])
        }
        FockCommand::Wick { cutoff, max_weight } => {
            let v = FockVertex::new(Cutoff::new(*cutoff));
            (format!("fock W={cutoff}"), vec![sweep_check(&wick_sweep(&v, *max_weight), *cutoff)])
        }
        FockCommand::Skew { cutoff, max_weight } => {
            let v = FockVertex::new(Cutoff::new(*cutoff));
            let s = skew_sweep(&v, max_weight.unwrap_or(cutoff / 2));
            (format!("fock W={cutoff}"), vec![sweep_check(&s, *cutoff)])
        }
        FockCommand::Theorem { gens, cutoff, slack } => {
            let states: Vec<FockState> = gens
                .iter()
                .map(|g| FockState::parse(g).map_err(|e| CliError::Usage(format!("bad state `{g}`: {e}"))))
                .collect::<Result<_, _>>()?;
            let v = FockVertex::new(Cutoff::with_slack(*cutoff, *slack));
            let name = "[I, V] closed under products (truncation-level)";
            let checks = match theorem_ideal_check(&v, &states) {
                Ok(r) if r.passed() => {
                    let mut checks = vec![Check::pass(
                        name,
                        Some(format!(
                            "{} products checked, 0 violations; J dims {:?}; {}",
                            r.checked, r.j_dims, r.caveat
                        )),
                    )];
                    if let Some(w) = r.i_not_ideal_witness {
                        checks.push(Check::pass("I itself is not a vertex ideal", Some(w)));
                    }
                    checks
                }
                Ok(r) => {
                    let first = &r.violations[0];
                    vec![Check::fail(
                        name,
                        format!(
                            "{} violations; first ({})_({}) {} = {}; {}",
                            r.violation_count, first.j, first.n, first.v, first.product, r.caveat
                        ),
                    )]
                }
                Err(e) => vec![fock_error(name, e)?],
            };
            (format!("fock W={cutoff} slack={slack} I=<{}>", gens.join(", ")), checks)
        }
        FockCommand::Extract { cutoff, max_weight } => {
            let v = FockVertex::new(Cutoff::new(*cutoff));
            let checks = match extract_conformal(&v, *max_weight) {
                Ok(r) => {
                    let mut checks: Vec<Check> = r.checks.iter().map(identity_check).collect();
                    let table: Vec<String> = r
                        .table
                        .iter()
                        .filter(|e| !e.coefficients.is_empty())
                        .map(|e| format!("[{}_lam {}] = {:?}", e.left, e.right, e.coefficients))
                        .collect();
                    checks.push(Check::pass(
                        "nonzero brackets on the basis",
                        Some(format!("basis {:?}; {}", r.basis, table.join("; "))),
                    ));
                    let heis = builtin("heisenberg_conf").expect("builtin exists");
                    let images = [FockState::var(1), FockState::vacuum()];
                    let mism = compare_with_algebra(&v, &heis, &images).map_err(|e| CliError::Usage(e.to_string()))?;
                    let name = "agrees with heisenberg_conf under a -> x1, C -> 1";
                    checks.push(match mism.first() {
                        None => Check::pass(name, None),
                        Some(m) => Check::fail(name, m.clone()),
                    });
                    checks
                }
                Err(e) => vec![fock_error("extraction", e)?],
            };
            (format!("fock W={cutoff}"), checks)
        }
    };
    Ok((target, checks))
}

fn lemma(cmd: &LemmaCommand) -> Result<(String, Vec<Check>), CliError> {
    match cmd {
        LemmaCommand::Det { m, n } => {
            let r = factorial_det_check(*m, *n)?;
            let relation = if r.equal { "=" } else { "!=" };
            let witness = format!("computed {} {relation} closed form {}", r.computed, r.closed_form);
            Ok((
                format!("factorial matrix m={m} N={n}"),
                vec![Check::from_outcome("determinant closed form", r.equal, Some(witness))],
            ))
        }
        LemmaCommand::Separate { input } => {
            let src = read(input)?;
            let parsed = SeparationInput::from_json(&src)?;
            let coeffs = parsed.laurent_coefficients()?;
            let p = separate(&coeffs, parsed.m, parsed.n)?;
            let rendered: Vec<String> = (0..=parsed.m).map(|i| format!("p_{i} = {}", p.get(i))).collect();
            // every supplied degree above n must be reproduced by p alone
            let high: Vec<usize> = coeffs.keys().copied().filter(|&d| d > parsed.n).collect();
            let expanded = forward_expand(&p, &LaurentFamily::new(), high.iter().copied());
            let mismatch = high.iter().find(|d| expanded[*d] != coeffs[*d]);
            let consistency = match mismatch {
                None => Check::pass(
                    "high coefficients reproduced",
                    Some(format!("{} degrees above n = {}", high.len(), parsed.n)),
                ),
                Some(d) => Check::fail(
                    "high coefficients reproduced",
                    format!(
                        "lam^{d}: input {} but e^(lam z) p gives {}",
                        coeffs[d], expanded[d]
                    ),
                ),
            };
            Ok((
                input.display().to_string(),
                vec![Check::pass("recovered p", Some(rendered.join("; "))), consistency],
            ))
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}
