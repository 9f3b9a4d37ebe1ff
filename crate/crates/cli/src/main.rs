//! `sumprod`: evaluate set expressions, run the bound verifiers, dump
//! witness constructions and render figures.
//!
//! Exit status: 0 when every check passes, 1 when a verified inequality
//! fails (which would mean a bug), 2 for usage or input errors, 3 when the
//! size cap stopped a computation.

mod input;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sumprod::exact::{Rational, WedgeSpec};
use sumprod::expr::{eval_expr, parse_expr, Env};
use sumprod::geometry::complex::{euclidean_mst, region_disjointness_probe, thm6_witnesses};
use sumprod::geometry::slopes::{thm1_witnesses, thm2_witnesses};
use sumprod::harness::{
    conjecture_scan, points_of, scan_sets, verify_coprime, verify_corollary5, verify_energy, verify_lemma3,
    verify_lemma7, verify_thm1, verify_thm2, verify_thm4, verify_thm6, verify_thm9, verify_ungar, HarnessConfig,
    ScanKind, TrialSpec, VerificationReport,
};
use sumprod::render::{render_figure, FigureKind};
use sumprod::sets::{ratio_set, Limits, ScalarSet};
use sumprod::Error;

use input::{parse_inline_arg, parse_set_arg, Bindings};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),

    #[error("{0}")]
    Input(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::SizeCap { .. }) => 3,
            CliError::Core(Error::Internal(_)) => 1,
            _ => 2,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "sumprod",
    version,
    about = "Exact sum-product set algebra and bound verification"
)]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Bind a set name to a set file (one scalar per line, `#` comments).
    #[arg(long = "set", value_name = "NAME=FILE", value_parser = parse_set_arg, global = true)]
    sets: Vec<(String, PathBuf)>,

    /// Bind a set name to a literal, e.g. `A={1,2,3}` or `Z={(1,0),(0,1)}`.
    #[arg(long = "inline", value_name = "NAME={...}", value_parser = parse_inline_arg, global = true)]
    inline: Vec<(String, sumprod::sets::ScalarSet)>,

    /// Fill unbound set names with reproducible random sets.
    #[arg(long, value_name = "size=N,trials=T,seed=S,domain=D", value_parser = parse_trial_spec, global = true)]
    random: Option<TrialSpec>,

    /// Also write a JSON report to this file.
    #[arg(long, value_name = "FILE.json", global = true)]
    report: Option<PathBuf>,

    /// Print the elements of computed sets, not only their sizes.
    #[arg(long, global = true)]
    elements: bool,

    /// Slope bound s of the wedge {re > 0, |im| < s·re}.
    #[arg(long, value_name = "P/Q", value_parser = parse_wedge, global = true)]
    wedge_slope: Option<WedgeSpec>,

    /// Number of angular sectors for the complex constructions.
    #[arg(long, value_name = "N", global = true)]
    sectors: Option<usize>,

    /// Largest product grid a single pairwise set operation may enumerate.
    #[arg(long, value_name = "N", global = true)]
    size_cap: Option<usize>,

    /// Report elapsed_ms as 0 so reports are byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,
}

fn parse_trial_spec(s: &str) -> Result<TrialSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_wedge(s: &str) -> Result<WedgeSpec, String> {
    Rational::parse(s).and_then(WedgeSpec::new).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a set expression; `/` is the ratio set {a/b : b ≠ 0}.
    Eval {
        /// e.g. "(A+A)/(A+A)" or "sum(4, prod(2, A))".
        expr: String,
    },
    /// Check one of the lower bounds on the bound sets.
    Verify {
        #[arg(value_enum)]
        task: Task,
        /// Fold depth for thm4 and thm9.
        #[arg(short = 'k', default_value_t = 2)]
        k: u32,
        /// Interval length for coprime.
        #[arg(short = 'N')]
        n: Option<usize>,
    },
    /// Print a witness construction as `ratio<TAB>provenance` lines.
    Witness {
        #[arg(value_enum)]
        kind: WitnessKind,
        /// Write the dump here instead of standard output.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Minimum spanning tree of the ratio set A/A, with a region-overlap probe.
    Mst {
        /// Use the points of A directly instead of A/A.
        #[arg(long)]
        points: bool,
        /// Samples per wedge boundary ray in the overlap probe.
        #[arg(long, default_value_t = 64)]
        resolution: usize,
    },
    /// Tabulate growth ratios over random trials (exploratory, never fails).
    Scan {
        #[arg(value_enum)]
        kind: ScanArg,
        #[arg(short = 'k', default_value_t = 2)]
        k: u32,
    },
    /// Draw the slope-cover or complex-mst figure as SVG.
    Render {
        #[arg(value_enum)]
        kind: FigureArg,
        /// Output file; standard output if omitted.
        #[arg(long, value_name = "FILE.svg")]
        out: Option<PathBuf>,
        /// Witness dump to draw (slope-cover) instead of constructing one.
        #[arg(long, value_name = "FILE")]
        witnesses: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Task {
    #[value(name = "thm1")]
    Thm1,
    #[value(name = "thm2")]
    Thm2,
    #[value(name = "lemma3")]
    Lemma3,
    #[value(name = "thm4")]
    Thm4,
    #[value(name = "corollary5")]
    Corollary5,
    #[value(name = "thm6")]
    Thm6,
    #[value(name = "lemma7")]
    Lemma7,
    #[value(name = "thm9")]
    Thm9,
    #[value(name = "ungar")]
    Ungar,
    #[value(name = "energy")]
    Energy,
    #[value(name = "coprime")]
    Coprime,
}

impl Task {
    fn set_names(self) -> &'static [&'static str] {
        match self {
            Task::Lemma3 => &["A", "B", "C", "D"],
            Task::Lemma7 => &["A", "B", "C"],
            Task::Coprime => &[],
            _ => &["A"],
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    #[value(name = "thm1")]
    Thm1,
    #[value(name = "thm2")]
    Thm2,
    #[value(name = "thm6")]
    Thm6,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScanArg {
    Kfold,
    TripleProduct,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureArg {
    SlopeCover,
    ComplexMst,
}

struct Context {
    common: Common,
    bindings: Bindings,
    config: HarnessConfig,
}

impl Context {
    fn instances(&self, names: &[&str]) -> Result<Vec<Env>, CliError> {
        self.bindings.instances(names, self.common.random.as_ref())
    }

    /// The config block shared by every JSON document.
    fn config_json(&self) -> Value {
        json!({
            "wedgeSlope": self.config.wedge.slope_bound().to_string(),
            "sectors": self.config.sector_count,
            "sizeCap": self.config.limits.size_cap,
            "timing": self.config.timing,
            "random": self.common.random,
        })
    }

    fn write_report(&self, body: Value) -> Result<(), CliError> {
        let Some(path) = &self.common.report else {
            return Ok(());
        };
        let mut doc = json!({
            "tool": "sumprod",
            "version": env!("CARGO_PKG_VERSION"),
            "config": self.config_json(),
        });
        if let (Value::Object(doc), Value::Object(body)) = (&mut doc, body) {
            doc.extend(body);
        }
        let text = serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n";
        write_file(path, &text)
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn set_of<'a>(env: &'a Env, name: &str) -> &'a ScalarSet {
    env.get(name).expect("instances binds every requested name")
}

fn trial_prefix(count: usize, t: usize) -> String {
    if count > 1 {
        format!("trial {t}: ")
    } else {
        String::new()
    }
}

fn run_eval(ctx: &Context, src: &str) -> Result<bool, CliError> {
    let expr = parse_expr(src)?;
    let envs = ctx.instances(&expr.names())?;
    let mut results = Vec::new();
    let mut out = std::io::stdout().lock();
    for (t, env) in envs.iter().enumerate() {
        let value = eval_expr(&expr, env, &ctx.config.limits)?;
        let _ = writeln!(out, "{}|{expr}| = {}", trial_prefix(envs.len(), t), value.len());
        if ctx.common.elements {
            for e in value.element_strings() {
                let _ = writeln!(out, "{e}");
            }
        }
        let mut entry = json!({
            "bindings": env.iter().filter(|(n, _)| expr.names().contains(&n.as_str())).collect::<std::collections::BTreeMap<_, _>>(),
            "cardinality": value.len(),
        });
        if ctx.common.elements {
            entry["elements"] = json!(value.element_strings());
        }
        results.push(entry);
    }
    ctx.write_report(json!({ "expression": expr.to_string(), "evaluations": results }))?;
    Ok(true)
}

fn verify_one(
    task: Task,
    env: &Env,
    k: u32,
    n: Option<usize>,
    cfg: &HarnessConfig,
) -> Result<VerificationReport, CliError> {
    let a = || set_of(env, "A");
    Ok(match task {
        Task::Thm1 => verify_thm1(a(), cfg)?,
        Task::Thm2 => verify_thm2(&points_of(a()), cfg)?,
        Task::Lemma3 => verify_lemma3(["A", "B", "C", "D"].map(|x| set_of(env, x)), cfg)?,
        Task::Thm4 => verify_thm4(a(), k, cfg)?,
        Task::Corollary5 => verify_corollary5(a(), cfg)?,
        Task::Thm6 => verify_thm6(a(), cfg)?,
        Task::Lemma7 => verify_lemma7(["A", "B", "C"].map(|x| set_of(env, x)), cfg)?,
        Task::Thm9 => verify_thm9(a(), k, cfg)?,
        Task::Ungar => verify_ungar(a(), cfg)?,
        Task::Energy => verify_energy(a(), cfg)?,
        Task::Coprime => {
            let n = n.ok_or_else(|| CliError::Input("verify coprime needs -N".into()))?;
            verify_coprime(n, cfg)?
        }
    })
}

fn run_verify(ctx: &Context, task: Task, k: u32, n: Option<usize>) -> Result<bool, CliError> {
    let envs = ctx.instances(task.set_names())?;
    let mut reports = Vec::new();
    let mut all_pass = true;
    for (t, env) in envs.iter().enumerate() {
        let mut r = verify_one(task, env, k, n, &ctx.config)?;
        r.notes.extend(ctx.bindings.warnings.iter().cloned());
        println!(
            "{}{}: {}  bound {}  measured {}",
            trial_prefix(envs.len(), t),
            r.task,
            if r.pass { "PASS" } else { "FAIL" },
            r.bound,
            r.measured
        );
        for note in &r.notes {
            println!("  note: {note}");
        }
        if !r.pass {
            all_pass = false;
            eprintln!(
                "!!! {}: VERIFIED INEQUALITY FAILED (bound {}, measured {}) — this indicates a bug; inputs: {}",
                r.task, r.bound, r.measured, r.input
            );
        }
        reports.push(r);
    }
    ctx.write_report(json!({ "reports": reports }))?;
    Ok(all_pass)
}

fn run_witness(ctx: &Context, kind: WitnessKind, out: Option<&Path>) -> Result<bool, CliError> {
    let envs = ctx.instances(&["A"])?;
    let mut dump = String::new();
    let mut summaries = Vec::new();
    let mut reports = Vec::new();
    let mut all_pass = true;
    for (t, env) in envs.iter().enumerate() {
        let a = set_of(env, "A");
        let (text, count, target, pass, json) = match kind {
            WitnessKind::Thm1 => {
                let r = thm1_witnesses(a.as_real()?)?;
                (r.to_dump(), r.distinct_count, r.target_bound, r.pass, json!(r))
            }
            WitnessKind::Thm2 => {
                let r = thm2_witnesses(&points_of(a))?;
                (r.to_dump(), r.distinct_count, r.target_bound, r.pass, json!(r))
            }
            WitnessKind::Thm6 => {
                let r = thm6_witnesses(&a.to_complex(), &ctx.config.wedge, ctx.config.sector_count)?;
                let w = &r.witnesses;
                (w.to_dump(), w.distinct_count, w.target_bound, w.pass, json!(r))
            }
        };
        if envs.len() > 1 {
            dump.push_str(&format!("# trial {t}\n"));
        }
        dump.push_str(&text);
        summaries.push(format!(
            "{}{} distinct witnesses, target {target}{}",
            trial_prefix(envs.len(), t),
            count,
            if pass { "" } else { "  FAIL" }
        ));
        all_pass &= pass;
        reports.push(json);
    }
    match out {
        Some(path) => {
            write_file(path, &dump)?;
            summaries.iter().for_each(|s| println!("{s}"));
        }
        None => {
            print!("{dump}");
            summaries.iter().for_each(|s| eprintln!("{s}"));
        }
    }
    if !all_pass {
        eprintln!("!!! witness construction fell short of its target — this indicates a bug");
    }
    ctx.write_report(json!({ "witnesses": reports }))?;
    Ok(all_pass)
}

fn run_mst(ctx: &Context, raw_points: bool, resolution: usize) -> Result<bool, CliError> {
    let envs = ctx.instances(&["A"])?;
    let mut docs = Vec::new();
    for (t, env) in envs.iter().enumerate() {
        let a = set_of(env, "A").to_complex();
        let points = if raw_points {
            a
        } else {
            ratio_set(&a, &a, &ctx.config.limits)?.set
        };
        let verts: Vec<_> = points.iter().cloned().collect();
        let mst = euclidean_mst(&verts)?;
        let probe = region_disjointness_probe(&mst, &ctx.config.wedge, resolution);
        if envs.len() > 1 {
            println!("# trial {t}");
        }
        println!("# {} points, {} edges", mst.vertices.len(), mst.edges.len());
        if ctx.common.elements {
            for (i, v) in mst.vertices.iter().enumerate() {
                println!("# {i}\t{v}");
            }
        }
        print!("{}", mst.to_dump());
        println!("# total length {:.6}", mst.total_weight());
        println!(
            "# region probe at wedge slope {}: {} overlapping samples",
            probe.wedge_slope,
            probe.overlaps.len()
        );
        docs.push(json!({ "mst": mst, "totalLength": mst.total_weight(), "probe": probe }));
    }
    ctx.write_report(json!({ "trees": docs }))?;
    Ok(true)
}

fn run_scan(ctx: &Context, kind: ScanArg, k: u32) -> Result<bool, CliError> {
    let kind = match kind {
        ScanArg::Kfold => ScanKind::KFold,
        ScanArg::TripleProduct => ScanKind::TripleProduct,
    };
    let report = match (ctx.bindings.env.get("A"), ctx.common.random.as_ref()) {
        (None, Some(spec)) => conjecture_scan(kind, spec, k, &ctx.config.limits)?,
        (Some(a), _) => scan_sets(kind, vec![a.clone()], k, &ctx.config.limits)?,
        (None, None) => return Err(Error::UnboundName("A".into()).into()),
    };
    println!("trial\tmeasured\tratio");
    for row in &report.rows {
        print!("{}\t{}\t{:.6}", row.trial, row.measured, row.ratio);
        if ctx.common.elements {
            print!("\t{{{}}}", row.set.element_strings().join(","));
        }
        println!();
    }
    if let (Some(m), Some(t)) = (report.min_ratio, report.argmin) {
        println!("min ratio {m:.6} at trial {t}");
    }
    ctx.write_report(json!({ "scan": report }))?;
    Ok(true)
}

fn run_render(ctx: &Context, kind: FigureArg, out: Option<&Path>, witnesses: Option<&Path>) -> Result<bool, CliError> {
    let envs = ctx.instances(&["A"])?;
    let Some(env) = envs.first() else {
        return Err(CliError::Input("no input set to render".into()));
    };
    let dump = witnesses.map(read_file).transpose()?;
    let kind = match kind {
        FigureArg::SlopeCover => FigureKind::SlopeCover,
        FigureArg::ComplexMst => FigureKind::ComplexMst,
    };
    let svg = render_figure(
        kind,
        set_of(env, "A"),
        dump.as_deref(),
        &ctx.config.wedge,
        &ctx.config.limits,
    )?;
    match out {
        Some(path) => write_file(path, &svg)?,
        None => print!("{svg}"),
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let common = cli.common;
    let mut config = HarnessConfig {
        timing: !common.no_timing,
        ..HarnessConfig::default()
    };
    if let Some(w) = &common.wedge_slope {
        config.wedge = w.clone();
    }
    if let Some(n) = common.sectors {
        config.sector_count = n;
    }
    if let Some(cap) = common.size_cap {
        config.limits = Limits { size_cap: cap };
    }
    let bindings = Bindings::load(&common.sets, &common.inline)?;
    let ctx = Context {
        common,
        bindings,
        config,
    };
    match &cli.command {
        Command::Eval { expr } => run_eval(&ctx, expr),
        Command::Verify { task, k, n } => run_verify(&ctx, *task, *k, *n),
        Command::Witness { kind, out } => run_witness(&ctx, *kind, out.as_deref()),
        Command::Mst { points, resolution } => run_mst(&ctx, *points, *resolution),
        Command::Scan { kind, k } => run_scan(&ctx, *kind, *k),
        Command::Render { kind, out, witnesses } => run_render(&ctx, *kind, out.as_deref(), witnesses.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            if e.exit_code() == 1 {
                eprintln!("!!! sumprod: {e} — this indicates a bug");
            } else {
                eprintln!("sumprod: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
