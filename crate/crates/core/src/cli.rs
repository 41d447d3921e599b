//! The `tufair` command line.
//!
//! | Command | Does |
//! |---------|------|
//! | `analyze <file>` | Shapley value, ReverseGreedy cover and trace, biased-orientation cover, entropies and divergences |
//! | `exact <file>` | cover count, extremal count, `Fair_λ` with its maximizers, optional `--eta` decision |
//! | `verify <file>` / `verify --random` | every applicable inequality audit over a `λ` grid |
//! | `gen` | a seeded random IS instance on standard output |
//!
//! Exit codes: 0 success, 1 audit failure, 2 input error, 3 oracle caps exceeded.
//! With `--json` the report is printed as JSON lines instead of text.

use crate::algorithms::{biased_orientation, cover_of_orientation, reverse_greedy, GreedyTrace};
use crate::bounds::{audit_information_lemmas, audit_is_game, audit_reverse_greedy, AuditReport};
use crate::exact::{enumerate_covers, enumerate_covers_parallel, extremal_covers, fairness_among, Caps};
use crate::games::{check_supermodular, normalize_rationals, shapley_general, shapley_is, Cover, Game};
use crate::generate::{random_is_game, GeneratorConfig};
use crate::instance::{load_instance, serialize_instance, AnyGame, Instance};
use crate::measures::{renyi_divergence, renyi_entropy, Distribution, Order};
use crate::{Error, Rational, Result, TOLERANCE};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_AUDIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPS: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tufair", version, about = "Worst-case Rényi fairness of cooperative games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Allocations produced by the approximation algorithms.
    Analyze {
        path: PathBuf,
        #[command(flatten)]
        measure: MeasureArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Brute-force worst-case fairness.
    Exact {
        path: PathBuf,
        #[command(flatten)]
        measure: MeasureArgs,
        /// Also decide whether the worst-case fairness reaches this value.
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<f64>,
        #[command(flatten)]
        caps: CapArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Audit every guarantee on a file or on random instances.
    Verify {
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        path: Option<PathBuf>,
        /// Audit generated IS instances instead of a file.
        #[arg(long)]
        random: bool,
        #[command(flatten)]
        generator: GeneratorArgs,
        /// Number of random instances (seeds `seed`, `seed+1`, ...).
        #[arg(long, default_value_t = 50)]
        count: u64,
        /// Orders to audit, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.5, 1.0, 2.0, 3.0])]
        lambda: Vec<f64>,
        /// Also run the randomized information-measure suites with this many trials.
        #[arg(long, default_value_t = 0)]
        lemmas: usize,
        #[command(flatten)]
        caps: CapArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print a seeded random IS instance.
    Gen {
        #[command(flatten)]
        generator: GeneratorArgs,
    },
}

#[derive(Debug, Args)]
struct MeasureArgs {
    /// Rényi order (positive; 1 is Shannon).
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    lambda: f64,
    /// `uniform`, `shapley`, or a file holding a JSON array of weights.
    #[arg(long, default_value = "uniform")]
    baseline: String,
}

#[derive(Debug, Args)]
struct CapArgs {
    #[arg(long, default_value_t = Caps::default().max_players)]
    max_players: usize,
    #[arg(long, default_value_t = Caps::default().max_total)]
    max_total: i64,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Print JSON lines instead of text.
    #[arg(long)]
    json: bool,
    /// Worker threads for enumeration (1 = sequential).
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Debug, Args)]
struct GeneratorArgs {
    #[arg(long, default_value_t = 5)]
    n: usize,
    /// Edge probability.
    #[arg(long, default_value_t = 0.6)]
    p: f64,
    /// Largest edge weight.
    #[arg(long, default_value_t = 4)]
    wmax: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GeneratorArgs {
    fn config(&self, seed: u64) -> GeneratorConfig {
        GeneratorConfig {
            n: self.n,
            edge_prob: self.p,
            w_max: self.wmax,
            seed,
        }
    }
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps {
            max_players: self.max_players,
            max_total: self.max_total,
        }
    }
}

/// Text and JSON forms of one command's output.
#[derive(Default)]
struct Report {
    text: Vec<String>,
    json: Vec<Value>,
    /// Lines always sent to the error stream.
    diagnostics: Vec<String>,
    code: i32,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TooManyPlayers { .. } | Error::TotalTooLarge { .. } | Error::TooManyEdges { .. } => EXIT_CAPS,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let json = match &cli.command {
        Command::Analyze { out, .. } | Command::Exact { out, .. } | Command::Verify { out, .. } => out.json,
        Command::Gen { .. } => false,
    };
    let result = match cli.command {
        Command::Gen { generator } => {
            return match gen(&generator) {
                Ok(text) => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_INPUT
                }
            };
        }
        Command::Analyze { path, measure, out } => with_threads(out.threads, || analyze(&path, &measure)),
        Command::Exact {
            path,
            measure,
            eta,
            caps,
            out,
        } => with_threads(out.threads, || exact(&path, &measure, eta, caps.caps(), out.threads > 1)),
        Command::Verify {
            path,
            random,
            generator,
            count,
            lambda,
            lemmas,
            caps,
            out,
        } => with_threads(out.threads, || {
            verify(path.as_deref(), random, &generator, count, &lambda, lemmas, caps.caps())
        }),
    };
    match result {
        Ok(report) => {
            if json {
                for v in &report.json {
                    let _ = writeln!(out, "{v}");
                }
            } else {
                for line in &report.text {
                    let _ = writeln!(out, "{line}");
                }
            }
            for line in &report.diagnostics {
                let _ = writeln!(err, "{line}");
            }
            report.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn with_threads(threads: usize, job: impl FnOnce() -> Result<Report> + Send) -> Result<Report> {
    if threads == 0 {
        return Err(Error::Instance("--threads must be at least 1".into()));
    }
    if threads == 1 {
        return job();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Instance(e.to_string()))?
        .install(job)
}

fn fmt6(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.6}")
    }
}

fn names_of<'a>(names: &'a [String], ids: &[usize]) -> Vec<&'a str> {
    ids.iter().map(|&i| names[i].as_str()).collect()
}

fn rational_str(r: &Rational) -> String {
    r.to_string()
}

fn load(path: &Path) -> Result<Instance> {
    load_instance(path)
}

fn parse_order(lambda: f64) -> Result<Order> {
    Order::new(lambda)
}

/// The Shapley value, by closed form on IS games.
fn shapley(game: &AnyGame) -> Result<Vec<Rational>> {
    match game {
        AnyGame::Is(g) => Ok(shapley_is(g)),
        AnyGame::Explicit(g) => shapley_general(g),
    }
}

fn resolve_baseline(choice: &str, game: &AnyGame) -> Result<Distribution> {
    let n = game.players();
    let d = match choice {
        "uniform" => Distribution::uniform(n),
        "shapley" => normalize_rationals(&shapley(game)?)?,
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Instance(format!("baseline {path}: {e}")))?;
            let weights: Vec<f64> = serde_json::from_str(&text)
                .map_err(|e| Error::Instance(format!("baseline {path}: {e}")))?;
            Distribution::normalize(&weights)?
        }
    };
    if d.len() != n {
        return Err(Error::DimensionMismatch(d.len(), n));
    }
    Ok(d)
}

fn cover_json(c: &Cover) -> Value {
    json!(c.as_slice())
}

fn analyze(path: &Path, m: &MeasureArgs) -> Result<Report> {
    let inst = load(path)?;
    let order = parse_order(m.lambda)?;
    let game = &inst.game;
    let names = game.player_names();
    let q = resolve_baseline(&m.baseline, game)?;
    let sh = shapley(game).ok();

    let (rg, trace): (Cover, GreedyTrace) = match game {
        AnyGame::Is(g) => reverse_greedy(g),
        AnyGame::Explicit(g) => reverse_greedy(g),
    };
    let bi = match game {
        AnyGame::Is(g) => Some(cover_of_orientation(g, &biased_orientation(g))?),
        AnyGame::Explicit(_) => None,
    };
    let grand = match game {
        AnyGame::Is(g) => g.grand_value(),
        AnyGame::Explicit(g) => g.grand_value(),
    };

    let mut r = Report::default();
    r.diagnostics.extend(inst.warnings.iter().map(|w| format!("warning: {w}")));
    r.text.push(format!("players: {}", names.join(" ")));
    r.text.push(format!("v(N) = {grand}"));
    match &sh {
        Some(s) => r.text.push(format!(
            "shapley: ({})",
            s.iter().map(rational_str).collect::<Vec<_>>().join(",")
        )),
        None => r.text.push("shapley: (too many players)".into()),
    }
    r.text.push(format!(
        "baseline: {} ({})",
        m.baseline,
        q.probs().iter().map(|&p| fmt6(p)).collect::<Vec<_>>().join(", ")
    ));

    let describe = |label: &str, c: &Cover, r: &mut Report| -> Result<Value> {
        let d = c.distribution()?;
        let h = renyi_entropy(&d, order);
        let div = renyi_divergence(&d, &q, order)?;
        r.text.push(format!(
            "{label}: {c}  H_{order} = {}  D_{order}(x || q) = {}",
            fmt6(h),
            fmt6(div)
        ));
        Ok(json!({"cover": cover_json(c), "entropy": h, "divergence": div}))
    };
    let mut rg_json = describe("reverse_greedy", &rg, &mut r)?;
    r.text.push(format!(
        "  order: {}  increments: {}",
        names_of(names, &trace.order).join(" "),
        trace.deltas.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
    ));
    rg_json["order"] = json!(names_of(names, &trace.order));
    rg_json["increments"] = json!(trace.deltas);
    let bi_json = match &bi {
        Some(c) => describe("biased", c, &mut r)?,
        None => Value::Null,
    };

    r.json.push(json!({
        "command": "analyze",
        "instance": path.display().to_string(),
        "lambda": order.get(),
        "baseline": m.baseline,
        "players": names,
        "grand_value": grand,
        "shapley": sh.as_ref().map(|s| s.iter().map(rational_str).collect::<Vec<_>>()),
        "reverse_greedy": rg_json,
        "biased": bi_json,
    }));
    Ok(r)
}

fn exact(path: &Path, m: &MeasureArgs, eta: Option<f64>, caps: Caps, parallel: bool) -> Result<Report> {
    let inst = load(path)?;
    let order = parse_order(m.lambda)?;
    if let Some(eta) = eta {
        if !eta.is_finite() {
            return Err(Error::Instance(format!("--eta must be finite, got {eta}")));
        }
    }
    let q = resolve_baseline(&m.baseline, &inst.game)?;
    let table = inst.game.to_explicit()?;
    let covers = if parallel {
        enumerate_covers_parallel(&table, caps)?
    } else {
        enumerate_covers(&table, caps)?
    };
    let extremal = extremal_covers(&table, &covers);
    let fair = fairness_among(&covers, &q, order)?;

    let mut r = Report::default();
    r.diagnostics.extend(inst.warnings.iter().map(|w| format!("warning: {w}")));
    r.text.push(format!(
        "{} covers, {} extremal, Fair={}",
        covers.len(),
        extremal.len(),
        fmt6(fair.value)
    ));
    r.text.push(format!(
        "argmax: {}",
        fair.argmax.iter().map(Cover::to_string).collect::<Vec<_>>().join(" ")
    ));
    let mut record = json!({
        "command": "exact",
        "instance": path.display().to_string(),
        "lambda": order.get(),
        "baseline": m.baseline,
        "covers": covers.len(),
        "extremal": extremal.len(),
        "fair": fair.value,
        "argmax": fair.argmax.iter().map(cover_json).collect::<Vec<_>>(),
    });
    if let Some(eta) = eta {
        let yes = fair.value >= eta - TOLERANCE;
        let answer = if yes { "YES" } else { "NO" };
        r.text.push(format!("Fair >= {eta}: {answer}"));
        record["eta"] = json!(eta);
        record["decision"] = json!(answer);
    }
    r.json.push(record);
    Ok(r)
}

/// Audits one instance on every order of the grid.
fn audit_instance(game: &AnyGame, id: &str, orders: &[Order], caps: Caps) -> Result<AuditReport> {
    let mut report = AuditReport::default();
    let table = game.to_explicit()?;
    let convex = check_supermodular(&table).holds;
    if !convex {
        report
            .skipped
            .push(format!("{id}: not supermodular; ReverseGreedy guarantees do not apply"));
    }
    for &order in orders {
        if let AnyGame::Is(g) = game {
            report.extend(audit_is_game(g, order, caps, id)?);
        }
        if convex {
            report.extend(audit_reverse_greedy(&table, order, caps, id)?);
        }
    }
    Ok(report)
}

fn verify(
    path: Option<&Path>,
    random: bool,
    gen_args: &GeneratorArgs,
    count: u64,
    lambdas: &[f64],
    lemmas: usize,
    caps: Caps,
) -> Result<Report> {
    let orders = lambdas.iter().map(|&l| parse_order(l)).collect::<Result<Vec<_>>>()?;
    if orders.is_empty() {
        return Err(Error::Instance("empty --lambda grid".into()));
    }
    let mut report = AuditReport::default();
    let mut instances = 0usize;
    let mut r = Report::default();
    if random {
        let jobs = (0..count)
            .map(|k| {
                let seed = gen_args.seed.wrapping_add(k);
                let g = random_is_game(&gen_args.config(seed))?.game;
                let id = format!("random(n={},p={},wmax={},seed={seed})", gen_args.n, gen_args.p, gen_args.wmax);
                Ok((AnyGame::Is(g), id))
            })
            .collect::<Result<Vec<_>>>()?;
        let results: Vec<Result<AuditReport>> = jobs
            .par_iter()
            .map(|(g, id)| audit_instance(g, id, &orders, caps))
            .collect();
        for ((_, id), res) in jobs.iter().zip(results) {
            match res {
                Ok(rep) => {
                    instances += 1;
                    report.extend(rep);
                }
                Err(e) if exit_code(&e) == EXIT_CAPS => report.skipped.push(format!("{id}: {e}")),
                Err(e) => return Err(e),
            }
        }
    } else if let Some(path) = path {
        let inst = load(path)?;
        r.diagnostics.extend(inst.warnings.iter().map(|w| format!("warning: {w}")));
        let id = path.display().to_string();
        report.extend(audit_instance(&inst.game, &id, &orders, caps)?);
        instances = 1;
    }
    if lemmas > 0 {
        report.extend(audit_information_lemmas(gen_args.seed, lemmas)?);
    }

    let failures: Vec<_> = report.failures().collect();
    for l in &report.lines {
        r.json.push(serde_json::to_value(l).expect("plain data"));
    }
    for s in &report.skipped {
        r.json.push(json!({ "skipped": s }));
    }
    r.json.push(json!({
        "command": "verify",
        "instances": instances,
        "checks": report.lines.len(),
        "failures": failures.len(),
        "skipped": report.skipped.len(),
    }));
    r.text.push(format!(
        "{} inequalities on {} instance(s): {} failed, {} skipped",
        report.lines.len(),
        instances,
        failures.len(),
        report.skipped.len()
    ));
    for s in &report.skipped {
        r.text.push(format!("skipped: {s}"));
    }
    for f in &failures {
        let line = format!(
            "FAIL {} on {} at λ={}: {} {} {} (slack {})",
            f.check,
            f.instance,
            f.lambda,
            fmt6(f.lhs),
            serde_json::to_value(f.relation).expect("plain data").as_str().unwrap_or("?"),
            fmt6(f.rhs),
            f.slack
        );
        r.diagnostics.push(line);
    }
    r.code = if failures.is_empty() { EXIT_OK } else { EXIT_AUDIT_FAILURE };
    Ok(r)
}

fn gen(args: &GeneratorArgs) -> Result<String> {
    let config = args.config(args.seed);
    let generated = random_is_game(&config)?;
    let names = generated.game.player_names().to_vec();
    let meta = json!({
        "generator": {
            "n": config.n,
            "edge_prob": config.edge_prob,
            "w_max": config.w_max,
            "seed": config.seed,
        },
        "repaired": names_of(&names, &generated.repaired),
    });
    Ok(serialize_instance(&AnyGame::Is(generated.game), Some(&meta)))
}
