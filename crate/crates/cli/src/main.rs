use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use pary_bent::classify::{
    self, classify, conjecture_report, cross_check_sample, lemma34_check, CandidateSpace, Classification,
    ClassifyOptions, Family, ScanOptions,
};
use pary_bent::exec::with_threads;
use pary_bent::golden::{self, GoldenCheck};
use pary_bent::graph::build_cayley_graph;
use pary_bent::report::analyze;
use pary_bent::search::search_bent;
use pary_bent::transforms::is_bent;
use pary_bent::{Anf, Execution, PAryFunction};
use serde_json::json;

/// Exit status when a run disagrees with the stored reference data.
const MISMATCH: u8 = 2;

#[derive(Parser)]
#[command(name = "pbent", version, about = "Exact analysis and classification of p-ary bent functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate even functions with f(0) = 0, find the bent ones and split them into GL(n, p) orbits.
    Classify(ClassifyArgs),
    /// Report every verdict the library gives about one function.
    Analyze(AnalyzeArgs),
    /// Randomized pruned depth-first search for a Boolean bent function.
    SearchBent(SearchArgs),
    /// Check the SRG and completeness verdicts against regularity for the 18 bent functions of GF(3)^2.
    Lemma34(RunArgs),
    /// Report on the homogeneity and mu-diagonal statements over the classified bent sets.
    Conjectures(ConjectureArgs),
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Worker threads (defaults to one per core).
    #[arg(long)]
    jobs: Option<usize>,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

impl RunArgs {
    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    run: RunArgs,
    /// Restrict to even polynomials of degree at most this bound.
    #[arg(long, value_name = "DEGREE")]
    degree_bound: Option<u32>,
    /// Record finished chunks in this file.
    #[arg(long, value_name = "FILE")]
    checkpoint: Option<PathBuf>,
    /// Continue the run recorded in this checkpoint file, and keep updating it.
    #[arg(long, value_name = "FILE", conflicts_with = "checkpoint")]
    resume: Option<PathBuf>,
    /// Allow (p, n) outside GF(3)^2, GF(3)^3 and GF(5)^2.
    #[arg(long)]
    unsafe_scale: bool,
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
    /// One line per orbit.
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
    /// Compare the full-spectrum and early-abort bent tests on this many random candidates.
    #[arg(long, value_name = "N")]
    sample: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Suppress progress output on stderr.
    #[arg(long, short)]
    quiet: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Function literal such as "p=3,n=2:0,1,1,1,2,2,1,2,2".
    literal: Option<String>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated values in vector-index order.
    #[arg(long, conflicts_with_all = ["literal", "anf"])]
    values: Option<String>,
    /// Polynomial such as "x0^2 + x0*x1".
    #[arg(long, conflicts_with = "literal")]
    anf: Option<String>,
    /// Write the weighted Cayley graph in Graphviz format.
    #[arg(long, value_name = "FILE")]
    emit_dot: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the root-first assignment trace as JSON.
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct ConjectureArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Scan the full even space of GF(5)^2 instead of its degree-4 part.
    #[arg(long)]
    full: bool,
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => e.exit(),
    };
    let outcome = match cli.command {
        Command::Classify(args) => run_classify(args),
        Command::Analyze(args) => run_analyze(args),
        Command::SearchBent(args) => run_search(args),
        Command::Lemma34(args) => run_lemma34(args),
        Command::Conjectures(args) => run_conjectures(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(MISMATCH),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn write_json(path: &Path, value: serde_json::Value) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    write_file(path, &text)
}

fn print_checks(checks: &[GoldenCheck]) -> bool {
    for c in checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        println!("  {mark} {}: {}", c.name, c.detail);
    }
    checks.iter().all(|c| c.passed)
}

fn run_classify(args: ClassifyArgs) -> anyhow::Result<bool> {
    let execution = args.run.execution();
    let family = match args.degree_bound {
        Some(d) => Family::DegreeBound(d),
        None => Family::Even,
    };
    let quiet = args.quiet;
    let progress = move |done: u64, total: u64| {
        if !quiet {
            eprint!("\rscanned {done}/{total} chunks");
            if done == total {
                eprintln!();
            }
            let _ = std::io::stderr().flush();
        }
    };
    let options = ClassifyOptions {
        family: Some(family),
        scan: ScanOptions {
            execution,
            checkpoint: args.resume.clone().or(args.checkpoint.clone()),
            resume: args.resume.is_some(),
            progress: Some(&progress),
        },
        unsafe_scale: args.unsafe_scale,
    };
    let started = Instant::now();
    let c = with_threads(args.run.jobs, || classify(args.p, args.n, &options))??;
    if !quiet {
        eprintln!("classified in {:.2?} ({})", started.elapsed(), execution.label());
    }
    print_classification(&c);

    let mut passed = true;
    let sample = match args.sample {
        Some(samples) => {
            let cs = CandidateSpace::new(args.p, args.n, family)?;
            let check = with_threads(args.run.jobs, || {
                cross_check_sample(&cs, samples, args.seed, Some(&c.scan.bent_indices), execution)
            })??;
            println!(
                "sample check: {} candidates (seed {}), {} bent, {} test disagreements, {} scan mismatches",
                check.samples,
                check.seed,
                check.bent_in_sample,
                check.disagreements.len(),
                check.scan_mismatches.len()
            );
            println!(
                "scanned bent set re-tested with the full spectrum: {} of {} fail",
                check.scanned_not_bent.len(),
                c.scan.bent_indices.len()
            );
            passed &= check.passed();
            Some(check)
        }
        None => None,
    };

    let checks = if golden::golden().suite(args.p, args.n).is_some() {
        println!("reference checks");
        let checks = golden::check_classification(&c)?;
        passed &= print_checks(&checks);
        checks
    } else {
        println!("no reference data for GF({})^{}", args.p, args.n);
        Vec::new()
    };

    if let Some(path) = &args.csv {
        write_file(path, &c.csv_summary())?;
    }
    if let Some(path) = &args.json {
        write_json(
            path,
            json!({ "classification": c, "sample_check": sample, "reference_checks": checks }),
        )?;
    }
    Ok(passed)
}

fn print_classification(c: &Classification) {
    println!("GF({})^{} family: {}", c.p, c.n, c.family);
    println!("candidates: {}", c.candidates);
    println!("bent: {}", c.bent_count);
    println!("orbits: {} with sizes {:?}", c.orbits.len(), c.orbit_sizes());
    println!(
        "id  size  regular  weakly-regular  homogeneous  degree  weighted-PDS  edge-weighted-SRG  dual  representative"
    );
    for o in &c.orbits {
        let a = &o.attributes;
        println!(
            "{:<3} {:<5} {:<8} {:<15} {:<12} {:<7} {:<13} {:<18} {:<5} {}",
            o.id,
            o.size,
            a.is_regular,
            a.is_weakly_regular,
            format!("{}/{}", o.homogeneous_members, o.members_checked),
            a.degree,
            a.weighted_pds,
            a.edge_weighted_srg,
            o.dual_orbit.map_or("-".to_string(), |d| d.to_string()),
            o.anf
        );
    }
    let d = &c.degree_bounds;
    println!(
        "degree bounds: max degree {} (bound {}), holds: {}",
        d.max_degree, d.bound, d.holds
    );
}

fn parse_function(args: &AnalyzeArgs) -> anyhow::Result<PAryFunction> {
    let need_pn = || -> anyhow::Result<(u32, usize)> {
        match (args.p, args.n) {
            (Some(p), Some(n)) => Ok((p, n)),
            _ => bail!("--p and --n are required with --values and --anf"),
        }
    };
    if let Some(text) = &args.values {
        let (p, n) = need_pn()?;
        return Ok(PAryFunction::parse_values(p, n, text)?);
    }
    if let Some(text) = &args.anf {
        let (p, n) = need_pn()?;
        return Ok(Anf::parse(text, p, n)?.evaluate());
    }
    match &args.literal {
        Some(text) => Ok(PAryFunction::parse_literal(text)?),
        None => bail!("give a function literal, --values or --anf"),
    }
}

fn run_analyze(args: AnalyzeArgs) -> anyhow::Result<bool> {
    let f = parse_function(&args)?;
    let dossier = analyze(&f);
    print!("{}", dossier.render_text());
    if let Some(path) = &args.emit_dot {
        write_file(path, &build_cayley_graph(&f).to_dot())?;
    }
    if let Some(path) = &args.json {
        write_json(path, serde_json::to_value(&dossier)?)?;
    }
    Ok(true)
}

fn run_search(args: SearchArgs) -> anyhow::Result<bool> {
    let started = Instant::now();
    let outcome = search_bent(args.n, args.seed)?;
    let elapsed = started.elapsed();
    let verified = is_bent(&outcome.function);
    println!("function {}", outcome.function);
    if let Some(last) = outcome.trace.last() {
        println!("walsh {:?}", last.walsh);
    }
    println!("nodes {}", outcome.nodes);
    println!("verified bent: {verified}");
    eprintln!("searched in {elapsed:.2?}");
    if let Some(path) = &args.trace {
        write_json(path, serde_json::to_value(&outcome)?)?;
    }
    Ok(verified)
}

fn run_lemma34(args: RunArgs) -> anyhow::Result<bool> {
    let options = ClassifyOptions {
        scan: ScanOptions {
            execution: args.execution(),
            ..ScanOptions::default()
        },
        ..ClassifyOptions::default()
    };
    let c = with_threads(args.jobs, || classify(3, 2, &options))??;
    let verdict = lemma34_check(&c.bent)?;
    println!("function             regular  weakly-regular  edge-weighted-SRG  complete");
    for r in &verdict.rows {
        println!(
            "{:<20} {:<8} {:<15} {:<18} {}",
            r.function, r.regular, r.weakly_regular, r.edge_weighted_srg, r.complete
        );
    }
    println!("SRG and not complete <=> regular: {}", verdict.non_complete_iff_regular);
    println!(
        "SRG and complete <=> weakly regular, not regular: {}",
        verdict.complete_iff_weakly_regular_only
    );
    Ok(verdict.holds())
}

fn run_conjectures(args: ConjectureArgs) -> anyhow::Result<bool> {
    let execution = args.run.execution();
    let mut sections = Vec::new();
    for &(p, n) in classify::SUPPORTED_SCALES.iter() {
        let family = if (p, n) == (5, 2) && !args.full {
            Family::DegreeBound(4)
        } else {
            Family::Even
        };
        let options = ClassifyOptions {
            family: Some(family),
            scan: ScanOptions {
                execution,
                ..ScanOptions::default()
            },
            ..ClassifyOptions::default()
        };
        let c = with_threads(args.run.jobs, || classify(p, n, &options))??;
        sections.push((format!("bent functions of GF({p})^{n} ({})", c.family), conjecture_report(&c.bent)));
    }
    let cs = CandidateSpace::new(3, 2, Family::Even)?;
    sections.push((
        "all even functions of GF(3)^2 with f(0) = 0".to_string(),
        conjecture_report(&classify::all_candidates(&cs)?),
    ));

    for (title, r) in &sections {
        println!("{title}");
        println!("  checked {}, weighted PDS {}", r.checked, r.weighted_pds);
        println!(
            "  weighted PDS but not homogeneous and weakly regular: {}",
            r.homogeneity_counterexamples.len()
        );
        println!("  weakly regular with a nonzero mu_ii: {}", r.mu_counterexamples.len());
        println!("  not weakly regular bent with a nonzero mu_ii: {}", r.relaxed_mu_witnesses.len());
        let witnesses = r
            .homogeneity_counterexamples
            .iter()
            .chain(&r.mu_counterexamples)
            .chain(&r.relaxed_mu_witnesses);
        for w in witnesses.take(5) {
            println!(
                "    {} bent={} homogeneous={} weakly_regular={} mu_ii={:?}",
                w.function, w.bent, w.homogeneous, w.weakly_regular, w.mu_diagonal
            );
        }
    }
    if let Some(path) = &args.json {
        let value: Vec<_> = sections
            .iter()
            .map(|(title, r)| json!({ "scope": title, "report": r }))
            .collect();
        write_json(path, serde_json::Value::Array(value))?;
    }
    Ok(true)
}
