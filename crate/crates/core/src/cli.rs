//! Command-line front end. `run` is the whole program; the binary only
//! forwards `std::env::args` and the exit code.
//!
//! Exit codes: 0 success (nice, Keller, all checks pass), 1 input or usage
//! error, 2 negative answer (not nice within the step limit, not Keller,
//! a failed check), 3 term budget exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::constructions::{conjugate, druzkowski, gz_check, hubbers_eighth, DruzkowskiSpec, GzPair, HubbersParams};
use crate::corpus::{get_fixture, list_fixtures, run_fixture, RunOptions};
use crate::engine::{
    check_nice, conjugation_transport_check, lowest_term_trace, NiceOptions, Verdict, DEFAULT_MAX_STEPS,
    DEFAULT_SCREEN_SAMPLES, DEFAULT_SEED,
};
use crate::error::Error;
use crate::jacobian::{jacobian, keller_check, nilpotence_index, Nilpotence, NilpotenceMode, DEFAULT_SAMPLES};
use crate::map_io::{default_names, parse_map_with, parse_matrix, render_map, render_polynomial, NamedMap};
use crate::poly_map::compose;
use crate::polynomial::{Limits, DEFAULT_TERM_BUDGET};
use crate::rat_matrix::RatMatrix;
use crate::rational::Rational;
use crate::report::{fill_nicety, render_components, verdict_label, InputDigest, RunReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nicety", version, about = "Exact analysis of polynomial maps: nicety, inverses, Jacobians")]
pub struct Cli {
    /// Abort any computation producing a polynomial with more terms than this.
    #[arg(long, global = true, default_value_t = DEFAULT_TERM_BUDGET)]
    pub term_budget: usize,
    /// Worker threads for per-component parallelism; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Also write a JSON report to this path.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct NiceArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    pub max_steps: usize,
    /// Write the inverse map here instead of standard output.
    #[arg(long)]
    pub inverse_out: Option<PathBuf>,
    /// Seed for the modular nonvanishing screen.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Random points per prime in the modular screen (0 disables it).
    #[arg(long, default_value_t = DEFAULT_SCREEN_SAMPLES)]
    pub screen_samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Symbolic,
    Randomized,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute P_k until it vanishes; report Nice(m) and the inverse.
    CheckNice(NiceArgs),
    /// Like check-nice, but fails unless a verified inverse was produced.
    Invert(NiceArgs),
    /// Jacobian determinant and whether it is a nonzero constant.
    Keller {
        #[arg(long)]
        input: PathBuf,
    },
    /// Nilpotence index of J(F), or of J(F - X) with --of-h.
    Nilpotence {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        of_h: bool,
        #[arg(long, value_enum, default_value_t = ModeArg::Symbolic)]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 32)]
        kmax: usize,
    },
    /// T^-1 o F o T.
    Conjugate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// f o g.
    Compose {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// X + (A X)^3 from a square matrix A.
    Druzkowski {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check B C = I, f(x) = B F(C x) and p_t(x) = B P_t(C x).
    GzCheck {
        #[arg(long)]
        small: PathBuf,
        #[arg(long)]
        big: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        c: PathBuf,
        #[arg(long, default_value_t = 3)]
        tmax: usize,
    },
    /// Lowest homogeneous component of P_k^i for k = 1..kmax.
    Trace {
        #[arg(long)]
        input: PathBuf,
        /// 1-based component index.
        #[arg(long, default_value_t = 1)]
        component: usize,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
    },
    /// Compare the sequence of T^-1 o F o T with T^-1 o P_k o T.
    Transport {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
    },
    /// Eighth Hubbers class in dimension 4 and its factors.
    Hubbers {
        #[arg(long, default_value = "1")]
        e3: Rational,
        #[arg(long, default_value = "1")]
        e4: Rational,
        #[arg(long, default_value = "1")]
        g4: Rational,
        #[arg(long, default_value = "1")]
        k3: Rational,
        #[arg(long, default_value = "1")]
        k4: Rational,
        #[arg(long, default_value = "1")]
        m4: Rational,
        /// Which map to print.
        #[arg(long, value_enum, default_value_t = HubbersPart::F)]
        part: HubbersPart,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Built-in fixtures.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HubbersPart {
    F,
    H,
    G,
}

#[derive(Debug, Subcommand)]
pub enum CorpusAction {
    /// Recompute and check the expected facts of one or all fixtures.
    Run { name: Option<String> },
    /// Print fixture names.
    List,
    /// Write the fixture files under DIR/<name>/.
    Export { dir: PathBuf },
}

struct Ctx {
    out: Vec<u8>,
    limits: Limits,
    report: RunReport,
}

type CmdResult = Result<i32, Error>;

fn read(ctx: &mut Ctx, path: &Path) -> Result<String, Error> {
    let bytes = std::fs::read(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    ctx.report.inputs.push(InputDigest::new(path.display().to_string(), &bytes));
    String::from_utf8(bytes).map_err(|_| Error::Invalid(format!("{}: not valid UTF-8", path.display())))
}

fn load_map(ctx: &mut Ctx, path: &Path) -> Result<NamedMap, Error> {
    let text = read(ctx, path)?;
    parse_map_with(&text, &ctx.limits).map_err(|e| match e {
        Error::Parse { line, col, message } => Error::Invalid(format!("{}:{line}:{col}: {message}", path.display())),
        other => Error::Invalid(format!("{}: {other}", path.display())),
    })
}

fn load_matrix(ctx: &mut Ctx, path: &Path) -> Result<RatMatrix, Error> {
    let text = read(ctx, path)?;
    parse_matrix(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn emit(ctx: &mut Ctx, text: &str, output: Option<&Path>) -> Result<(), Error> {
    match output {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?;
            say(ctx, &format!("wrote {}", p.display()));
        }
        None => {
            let _ = ctx.out.write_all(text.as_bytes());
        }
    }
    Ok(())
}

fn say(ctx: &mut Ctx, line: &str) {
    let _ = writeln!(ctx.out, "{line}");
}

fn check_nice_cmd(ctx: &mut Ctx, a: &NiceArgs, require_inverse: bool) -> CmdResult {
    let f = load_map(ctx, &a.input)?;
    let opts = NiceOptions { max_steps: a.max_steps, limits: ctx.limits, screen_samples: a.screen_samples, seed: a.seed };
    let r = check_nice(&f.map, &opts)?;
    fill_nicety(&mut ctx.report, &r, &f.names);
    if !require_inverse {
        say(ctx, &verdict_label(&r.verdict));
        for s in &r.steps {
            let degrees: Vec<String> =
                s.degrees.iter().map(|d| d.map_or_else(|| "-".to_string(), |d| d.to_string())).collect();
            let terms: Vec<String> = s.terms.iter().map(|t| t.to_string()).collect();
            let flag = if s.exceeds_inverse_bound { "  (degree exceeds inverse bound)" } else { "" };
            say(ctx, &format!("k={:<3} degrees=[{}] terms=[{}]{flag}", s.k, degrees.join(" "), terms.join(" ")));
        }
        if !r.certified_nonzero.is_empty() && r.m().is_none() {
            let last = r.certified_nonzero.len();
            say(ctx, &format!("{last} steps certified nonzero by modular evaluation"));
        }
    }
    match r.verdict {
        Verdict::Nice(_) => {
            let g = r.inverse.as_ref().expect("nice implies inverse");
            if !r.inverse_verified {
                return Err(Error::Invalid("synthesized inverse failed verification".into()));
            }
            if !require_inverse {
                say(ctx, "inverse verified: true");
            }
            let text = render_map(g, &f.names)?;
            emit(ctx, &text, a.inverse_out.as_deref())?;
            Ok(EXIT_OK)
        }
        Verdict::NotNiceWithin(m) => {
            if require_inverse {
                say(ctx, &format!("not nice within {m} steps; no inverse"));
            }
            Ok(EXIT_NEGATIVE)
        }
        Verdict::BudgetExceeded(k) => {
            if require_inverse {
                say(ctx, &format!("term budget exceeded at step {k}; no inverse"));
            }
            Ok(EXIT_BUDGET)
        }
    }
}

fn execute(ctx: &mut Ctx, cmd: &Command) -> CmdResult {
    match cmd {
        Command::CheckNice(a) => check_nice_cmd(ctx, a, false),
        Command::Invert(a) => check_nice_cmd(ctx, a, true),
        Command::Keller { input } => {
            let f = load_map(ctx, input)?;
            let k = keller_check(&f.map, &ctx.limits)?;
            let det = render_polynomial(&k.det, &f.names);
            say(ctx, &det);
            say(ctx, &k.is_keller.to_string());
            ctx.report.verdict = Some(if k.is_keller { "Keller" } else { "NotKeller" }.into());
            ctx.report.detail("det", &det);
            ctx.report.detail("is_keller", k.is_keller);
            Ok(if k.is_keller { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Nilpotence { input, of_h, mode, seed, samples, kmax } => {
            let f = load_map(ctx, input)?;
            let m = if *of_h {
                match DruzkowskiSpec::recognize(&f.map) {
                    Some(spec) => spec.jacobian_h(),
                    None => jacobian(&f.map.minus_identity()?),
                }
            } else {
                jacobian(&f.map)
            };
            let mode = match mode {
                ModeArg::Symbolic => NilpotenceMode::Symbolic,
                ModeArg::Randomized => NilpotenceMode::Randomized { samples: *samples, seed: *seed },
            };
            let r = nilpotence_index(&m, *kmax, mode, &ctx.limits)?;
            if let NilpotenceMode::Randomized { samples, seed } = mode {
                ctx.report.randomized = Some(json!({ "mode": "randomized", "seed": seed, "samples": samples }));
            }
            ctx.report.detail("matrix", if *of_h { "J(F - X)" } else { "J(F)" });
            ctx.report.detail("mode", if r.monte_carlo { "randomized" } else { "symbolic" });
            match r.outcome {
                Nilpotence::Nilpotent(k) => {
                    say(ctx, &k.to_string());
                    ctx.report.verdict = Some(format!("Nilpotent({k})"));
                    ctx.report.detail("index", k);
                    Ok(EXIT_OK)
                }
                Nilpotence::NotNilpotentWithin(k) => {
                    say(ctx, &format!("not nilpotent within {k}"));
                    ctx.report.verdict = Some(format!("NotNilpotentWithin({k})"));
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Conjugate { input, matrix, output } => {
            let f = load_map(ctx, input)?;
            let t = load_matrix(ctx, matrix)?;
            let g = conjugate(&f.map, &t, &ctx.limits)?;
            ctx.report.detail("result", render_components(&g, &f.names));
            emit(ctx, &render_map(&g, &f.names)?, output.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Compose { f, g, output } => {
            let f = load_map(ctx, f)?;
            let g = load_map(ctx, g)?;
            let h = compose(&f.map, &g.map, &ctx.limits)?;
            ctx.report.detail("result", render_components(&h, &g.names));
            emit(ctx, &render_map(&h, &g.names)?, output.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Druzkowski { matrix, output } => {
            let a = load_matrix(ctx, matrix)?;
            let f = druzkowski(&a)?;
            let names = default_names(f.domain_dim());
            ctx.report.detail("result", render_components(&f, &names));
            emit(ctx, &render_map(&f, &names)?, output.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::GzCheck { small, big, b, c, tmax } => {
            let f = load_map(ctx, small)?;
            let big = load_map(ctx, big)?;
            let b = load_matrix(ctx, b)?;
            let c = load_matrix(ctx, c)?;
            let pair = GzPair::new(f.map, big.map, b, c)?;
            let r = gz_check(&pair, *tmax, &ctx.limits)?;
            say(ctx, &format!("(a) B*C = I: {}", pass(r.bc_identity)));
            say(ctx, &format!("(b) f(x) = B*F(C*x): {}", pass(r.map_identity)));
            for (t, ok) in &r.pairing {
                say(ctx, &format!("(c) t={t}: p_t(x) = B*P_t(C*x): {}", pass(*ok)));
            }
            ctx.report.verdict = Some(pass(r.passes()).into());
            ctx.report.detail("bc_identity", r.bc_identity);
            ctx.report.detail("map_identity", r.map_identity);
            ctx.report.detail("pairing", r.pairing.iter().map(|(t, ok)| json!({ "t": t, "holds": ok })).collect::<Vec<_>>());
            Ok(if r.passes() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Trace { input, component, kmax } => {
            let f = load_map(ctx, input)?;
            if *component == 0 {
                return Err(Error::Invalid("--component is 1-based".into()));
            }
            let trace = lowest_term_trace(&f.map, component - 1, *kmax, &ctx.limits)?;
            let mut rows = Vec::new();
            for (k, q) in &trace {
                let text = render_polynomial(q, &f.names);
                say(ctx, &format!("k={k}: {text}"));
                rows.push(json!({ "k": k, "lowest": text }));
            }
            if trace.len() < *kmax {
                say(ctx, &format!("P_{}^{component} = 0", trace.len() + 1));
            }
            ctx.report.detail("trace", rows);
            Ok(EXIT_OK)
        }
        Command::Transport { input, matrix, kmax } => {
            let f = load_map(ctx, input)?;
            let t = load_matrix(ctx, matrix)?;
            let r = conjugation_transport_check(&f.map, &t, *kmax, &ctx.limits)?;
            for (k, ok) in &r.per_step {
                say(ctx, &format!("k={k}: {}", pass(*ok)));
            }
            ctx.report.verdict = Some(pass(r.holds()).into());
            ctx.report.detail("conjugate", render_components(&r.conjugate, &f.names));
            ctx.report.detail("per_step", r.per_step.iter().map(|(k, ok)| json!({ "k": k, "holds": ok })).collect::<Vec<_>>());
            Ok(if r.holds() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Hubbers { e3, e4, g4, k3, k4, m4, part, output } => {
            let params = HubbersParams {
                e3: e3.clone(),
                e4: e4.clone(),
                g4: g4.clone(),
                k3: k3.clone(),
                k4: k4.clone(),
                m4: m4.clone(),
            };
            let maps = hubbers_eighth(&params)?;
            let map = match part {
                HubbersPart::F => &maps.f,
                HubbersPart::H => &maps.h,
                HubbersPart::G => &maps.g,
            };
            let names = default_names(4);
            ctx.report.detail("result", render_components(map, &names));
            emit(ctx, &render_map(map, &names)?, output.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Corpus { action } => corpus(ctx, action),
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn corpus(ctx: &mut Ctx, action: &CorpusAction) -> CmdResult {
    match action {
        CorpusAction::List => {
            for name in list_fixtures() {
                let fx = get_fixture(name)?;
                say(ctx, &format!("{name}\t{}", fx.description));
            }
            Ok(EXIT_OK)
        }
        CorpusAction::Export { dir } => {
            for name in list_fixtures() {
                for file in get_fixture(name)?.files {
                    let path = dir.join(file.path);
                    if let Some(parent) = path.parent() {
                        std::fs::create_dir_all(parent).map_err(|e| Error::Invalid(format!("{}: {e}", parent.display())))?;
                    }
                    std::fs::write(&path, file.contents).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
                    say(ctx, &path.display().to_string());
                }
            }
            Ok(EXIT_OK)
        }
        CorpusAction::Run { name } => {
            let names: Vec<&str> = match name {
                Some(n) => vec![n.as_str()],
                None => list_fixtures(),
            };
            let opts = RunOptions { limits: ctx.limits, ..RunOptions::default() };
            let mut all_pass = true;
            let mut fixtures = Vec::new();
            let mut times = serde_json::Map::new();
            for n in names {
                let fx = get_fixture(n)?;
                let start = Instant::now();
                let r = run_fixture(&fx, &opts);
                times.insert(n.to_string(), Value::from(start.elapsed().as_secs_f64() * 1e3));
                all_pass &= r.passed();
                say(ctx, &format!("{} {}", pass(r.passed()), r.name));
                for path in &r.round_trip_failures {
                    say(ctx, &format!("  FAIL round trip {path}"));
                }
                let mut facts = Vec::new();
                for o in &r.outcomes {
                    let detail = if o.detail.is_empty() { String::new() } else { format!(" ({})", o.detail) };
                    say(ctx, &format!("  {} [{:?}] {}{detail}", pass(o.passed), o.provenance, o.description));
                    facts.push(json!({
                        "description": o.description,
                        "provenance": o.provenance,
                        "passed": o.passed,
                        "detail": o.detail,
                    }));
                }
                fixtures.push(json!({
                    "name": r.name,
                    "passed": r.passed(),
                    "round_trip_failures": r.round_trip_failures,
                    "facts": facts,
                }));
            }
            ctx.report.timing.insert("fixtures_ms".into(), Value::Object(times));
            ctx.report.verdict = Some(pass(all_pass).into());
            ctx.report.detail("fixtures", fixtures);
            Ok(if all_pass { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code. Regular output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut ctx = Ctx { out: Vec::new(), limits: Limits::with_budget(cli.term_budget), report: RunReport::new(echo) };
    let start = Instant::now();
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&mut ctx, &cli.command)),
            Err(e) => Err(Error::Invalid(format!("thread pool: {e}"))),
        },
        None => execute(&mut ctx, &cli.command),
    };
    let code = match result {
        Ok(code) => code,
        Err(Error::BudgetExceeded { terms, budget }) => {
            let _ = writeln!(err, "error: term budget exceeded ({terms} terms > {budget})");
            ctx.report.verdict.get_or_insert_with(|| "BudgetExceeded".into());
            EXIT_BUDGET
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ctx.report.detail("error", e.to_string());
            EXIT_INPUT
        }
    };
    let _ = out.write_all(&ctx.out);
    ctx.report.exit = code;
    ctx.report.timing.insert("total_ms".into(), Value::from(start.elapsed().as_secs_f64() * 1e3));
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, ctx.report.to_json()) {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    code
}
