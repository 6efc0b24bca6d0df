//! Command-line surface of the tree curvature-sign toolkit.
//!
//! Five subcommands cover the batch workflows: `classify` decides the sign of
//! the top eigenvalue of one tree's edge-index matrix, `enumerate` runs the
//! caterpillar census and compares it with the stored tables, `verify-zero`
//! checks explicit null-vector certificates, `schur-check` replays the
//! closed-form Schur complement identities, and `phase` prints the
//! double-star sign grid. Every sign is decided in exact rational
//! arithmetic; each run states so in a `provenance:` line.
//!
//! Exit codes: 0 on success, 1 when a verification step found a mismatch,
//! 2 on usage errors, 3 when an internal invariant broke (a panic), and the
//! conventional 141 when the output pipe closed early.

use std::fmt::Write as _;
use std::fs;
use std::panic;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use ricci_trees::algebra::fraction_free_det;
use ricci_trees::census::{
    category_csv, diff_against_golden, run_census, CensusResult, GoldenDiff, DEFAULT_GUARD,
};
use ricci_trees::certs::{
    builtin_certificates, stable_family_certificate, verify_certificate, CertError,
    ZeroCertificate,
};
use ricci_trees::classify::{
    classify_caterpillar, classify_exact, double_star_phase, einstein_metric, phase_mismatches,
    Source, DEFAULT_TOLERANCE,
};
use ricci_trees::golden::{GOLDEN_SPINE_MAX, GOLDEN_SPINE_MIN};
use ricci_trees::schur::{endpoint_minors_oracle, DefectSchur, EndpointSchur};
use ricci_trees::tree::{build_caterpillar, build_named, CaterpillarParam, Tree};

#[derive(Parser)]
#[command(
    name = "ricci-trees",
    version,
    about = "Exact sign classification for the edge-index curvature matrix of finite trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the sign of the top eigenvalue for one tree.
    Classify(ClassifyArgs),
    /// Census the negative caterpillar region per spine length, write CSVs,
    /// and optionally diff against the stored tables.
    Enumerate(EnumerateArgs),
    /// Verify null-vector certificates: exact zero residual and exact ZERO
    /// classification.
    VerifyZero(VerifyZeroArgs),
    /// Replay the closed-form Schur complement identities exactly.
    SchurCheck(SchurCheckArgs),
    /// Emit the double-star sign grid together with the closed-form rule.
    Phase(PhaseArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).multiple(false)))]
struct ClassifyArgs {
    /// Caterpillar leaf counts along the spine, e.g. `1,0,9`.
    #[arg(long, value_name = "A1,...,AM", group = "input")]
    caterpillar: Option<String>,
    /// Edge-list file: one `u v` pair per line, `#` comments allowed.
    #[arg(long, value_name = "FILE", group = "input")]
    tree: Option<PathBuf>,
    /// Named tree: `star:K`, `path:N`, `double-star:A,B`, `spider:LEGS,LEN`,
    /// `defect:M,I`, `endpoint:M,A,B`, or the shorthand `s32`.
    #[arg(long, value_name = "NAME", group = "input")]
    named: Option<String>,
    /// Also approximate the balanced (constant-curvature) edge weighting.
    #[arg(long)]
    einstein: bool,
    /// Convergence tolerance for --einstein.
    #[arg(long, value_name = "EPS", default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Smallest spine length (inclusive).
    #[arg(long, value_name = "M")]
    m_min: usize,
    /// Largest spine length (inclusive).
    #[arg(long, value_name = "M")]
    m_max: usize,
    /// Directory for negatives/maximal/boundary CSV files (created if missing).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Fail loudly if any negative parameter reaches this many leaves.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_GUARD)]
    guard: u64,
    /// Compare each census with the stored tables; exit nonzero on mismatch.
    #[arg(long)]
    diff_golden: bool,
}

#[derive(Args)]
struct VerifyZeroArgs {
    /// Certificate file overriding the embedded set (`spec|spine|groups` per
    /// line, `#` comments allowed).
    #[arg(long, value_name = "FILE")]
    certs: Option<PathBuf>,
    /// Verify the stable family certificate (three leaves at each spine end)
    /// for every spine length from 2 up to this bound.
    #[arg(long, value_name = "M", default_value_t = 20)]
    stable_family_max_m: usize,
}

#[derive(Args)]
struct SchurCheckArgs {
    /// Largest spine length covered by the identity sweeps.
    #[arg(long, value_name = "M", default_value_t = 20)]
    m_max: usize,
}

#[derive(Args)]
struct PhaseArgs {
    /// Grid bound: classify every double star with 1 <= a,b <= MAX.
    #[arg(long, value_name = "MAX", default_value_t = 12)]
    max: u32,
    /// Write the grid CSV to this file instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

/// A command failure carrying its exit code: 1 for verification mismatches,
/// 2 for usage problems. Internal invariant breaches surface as panics and
/// exit with 3.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn mismatch(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    silence_broken_pipe_panics();
    if let Err(f) = configure_threads() {
        eprintln!("error: {}", f.message);
        return ExitCode::from(f.code);
    }
    let cli = Cli::parse();
    match panic::catch_unwind(move || run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(f)) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
        Err(payload) if is_broken_pipe(panic_message(payload.as_ref())) => {
            // The reader went away (e.g. `ricci-trees phase | head`); exit
            // the way line tools killed by SIGPIPE do, without claiming an
            // internal fault.
            ExitCode::from(141)
        }
        Err(_) => {
            eprintln!("internal invariant breach; see the panic message above");
            ExitCode::from(3)
        }
    }
}

/// Message text of a panic payload, if it carries one.
fn panic_message(payload: &(dyn std::any::Any + Send)) -> &str {
    payload
        .downcast_ref::<String>()
        .map(String::as_str)
        .or_else(|| payload.downcast_ref::<&str>().copied())
        .unwrap_or("")
}

/// Whether a panic message is the standard library's report of a write to a
/// closed stdout/stderr.
fn is_broken_pipe(message: &str) -> bool {
    message.contains("failed printing to") && message.contains("Broken pipe")
}

/// Keeps the default panic report for real bugs but drops the noise when a
/// print fails because the other end of the pipe closed first.
fn silence_broken_pipe_panics() {
    let default_hook = panic::take_hook();
    panic::set_hook(Box::new(move |info| {
        if !is_broken_pipe(panic_message(info.payload())) {
            default_hook(info);
        }
    }));
}

/// Applies the `EINSTEIN_TREE_THREADS` cap to the global worker pool before
/// any parallel region starts.
fn configure_threads() -> CmdResult {
    let Some(raw) = std::env::var_os("EINSTEIN_TREE_THREADS") else {
        return Ok(());
    };
    let text = raw.to_string_lossy();
    let threads: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| usage(format!("EINSTEIN_TREE_THREADS must be a positive integer, got {text:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| usage(format!("worker pool setup failed: {e}")))
}

fn run(cli: Cli) -> CmdResult {
    // Test hook for the exit-code contract: force an internal invariant
    // breach so the panic-to-exit-3 path stays exercised end to end.
    if std::env::var_os("RICCI_TREES_FORCE_PANIC").is_some() {
        panic!("forced panic requested through RICCI_TREES_FORCE_PANIC");
    }
    match cli.command {
        Command::Classify(args) => cmd_classify(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::VerifyZero(args) => cmd_verify_zero(args),
        Command::SchurCheck(args) => cmd_schur_check(args),
        Command::Phase(args) => cmd_phase(args),
    }
}

fn provenance(source: Source) -> &'static str {
    match source {
        Source::FullMatrix => {
            "exact rational arithmetic on the full edge-index matrix \
             (characteristic polynomial, Sturm root counts)"
        }
        Source::Quotient => {
            "exact rational arithmetic on the caterpillar orbit quotient \
             (characteristic polynomial, Descartes root counts)"
        }
        Source::TheoremRule => {
            "stored classification rules, each backed by exact-arithmetic verification"
        }
    }
}

fn cmd_classify(args: ClassifyArgs) -> CmdResult {
    if args.einstein && args.tol <= 0.0 {
        return Err(usage("--tol must be positive"));
    }
    let (label, tree, result) = if let Some(spec) = &args.caterpillar {
        let param: CaterpillarParam =
            spec.parse().map_err(|e| usage(format!("--caterpillar {spec}: {e}")))?;
        let result = classify_caterpillar(&param)
            .map_err(|e| usage(format!("--caterpillar {spec}: {e}")))?;
        (format!("caterpillar {} (canonical {})", param, param.canonical()), build_caterpillar(&param), result)
    } else if let Some(path) = &args.tree {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("--tree {}: {e}", path.display())))?;
        let tree = Tree::from_edge_list(&text)
            .map_err(|e| usage(format!("--tree {}: {e}", path.display())))?;
        let result =
            classify_exact(&tree).map_err(|e| usage(format!("--tree {}: {e}", path.display())))?;
        (format!("tree file {}", path.display()), tree, result)
    } else {
        let name = args.named.as_ref().expect("the argument group guarantees one input");
        let tree = build_named(name).map_err(|e| usage(format!("--named {name}: {e}")))?;
        let result = classify_exact(&tree).map_err(|e| usage(format!("--named {name}: {e}")))?;
        (format!("named tree {name}"), tree, result)
    };
    println!("input: {label}");
    println!("sign: {}", result.sign);
    println!("zero eigenvalue multiplicity: {}", result.zero_multiplicity);
    println!("distinct positive eigenvalues: {}", result.positive_root_count);
    println!("matrix dimension: {}", result.matrix_dim);
    println!("provenance: {}", provenance(result.source));
    if args.einstein {
        let metric = einstein_metric(&tree, args.tol)
            .map_err(|e| mismatch(format!("weight iteration: {e}")))?;
        println!("balanced weighting (edge order, max entry 1):");
        for ((x, y), w) in tree.edges().iter().zip(&metric.weights) {
            println!("  ({x},{y}): {w}");
        }
        println!("top eigenvalue estimate: {}", metric.lambda_estimate);
        println!("certified residual bound: {:e}", metric.residual_bound);
        println!("iterations: {}", metric.iterations);
    }
    Ok(())
}

fn cmd_enumerate(args: EnumerateArgs) -> CmdResult {
    if args.m_min < GOLDEN_SPINE_MIN || args.m_max > GOLDEN_SPINE_MAX || args.m_min > args.m_max {
        return Err(usage(format!(
            "spine range must satisfy {GOLDEN_SPINE_MIN} <= m-min <= m-max <= {GOLDEN_SPINE_MAX}, got {}..={}",
            args.m_min, args.m_max
        )));
    }
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| usage(format!("--out {}: {e}", dir.display())))?;
    }
    let mut clean = true;
    for m in args.m_min..=args.m_max {
        let census = run_census(m, args.guard).map_err(|e| mismatch(e.to_string()))?;
        let stats = census.stats();
        println!(
            "m={m}: {} classified over {} generations in {:.2?}; {} negative, {} maximal, {} boundary, {} zero",
            stats.classified,
            stats.generations,
            stats.wall,
            census.negatives().len(),
            census.maximal_negative().len(),
            census.boundary().len(),
            census.zero_candidates().len(),
        );
        if let Some(dir) = &args.out {
            write_census_csvs(dir, &census)?;
        }
        if args.diff_golden {
            let diff = diff_against_golden(&census).expect("the validated range is tabulated");
            if !diff.is_empty() {
                clean = false;
                report_diff(&diff);
            }
        }
    }
    println!(
        "provenance: every sign decided in exact rational arithmetic on caterpillar orbit quotients"
    );
    if clean {
        Ok(())
    } else {
        Err(mismatch("census disagrees with the stored tables"))
    }
}

fn write_census_csvs(dir: &Path, census: &CensusResult) -> CmdResult {
    let m = census.m();
    let files = [
        (format!("negatives_m{m}.csv"), category_csv(m, census.negatives())),
        (format!("maximal_m{m}.csv"), category_csv(m, census.maximal_negative())),
        (format!("boundary_m{m}.csv"), category_csv(m, census.boundary())),
    ];
    for (name, contents) in files {
        let path = dir.join(&name);
        fs::write(&path, contents).map_err(|e| usage(format!("write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn report_diff(diff: &GoldenDiff) {
    let categories =
        [("maximal", &diff.maximal), ("boundary", &diff.boundary), ("zeros", &diff.zeros)];
    for (name, d) in categories {
        for p in &d.missing {
            println!("m={}: {name}: missing {p}", diff.m);
        }
        for p in &d.extra {
            println!("m={}: {name}: extra {p}", diff.m);
        }
    }
}

fn cmd_verify_zero(args: VerifyZeroArgs) -> CmdResult {
    let mut all_pass = true;
    let mut check = |label: String, cert: Result<ZeroCertificate, CertError>| {
        match cert.and_then(|c| verify_certificate(&c).map(|ok| (c, ok))) {
            Ok((c, true)) => println!("PASS {}", c.format()),
            Ok((c, false)) => {
                all_pass = false;
                println!("FAIL {}: weights do not certify a zero top eigenvalue", c.format());
            }
            Err(e) => {
                all_pass = false;
                println!("FAIL {label}: {e}");
            }
        }
    };
    if let Some(path) = &args.certs {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("--certs {}: {e}", path.display())))?;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            check(line.to_string(), ZeroCertificate::parse(line));
        }
    } else {
        for cert in builtin_certificates() {
            check(cert.format(), Ok(cert));
        }
    }
    for m in 2..=args.stable_family_max_m {
        check(format!("stable family m={m}"), stable_family_certificate(m));
    }
    println!("provenance: residuals and classifications checked in exact rational arithmetic");
    if all_pass {
        Ok(())
    } else {
        Err(mismatch("at least one certificate failed"))
    }
}

fn cmd_schur_check(args: SchurCheckArgs) -> CmdResult {
    if args.m_max < 2 {
        return Err(usage("--m-max must be at least 2"));
    }
    let mut failures = 0usize;
    let mut report = |name: &str, cases: usize, bad: Vec<String>| {
        println!("{name}: {cases} cases: {}", if bad.is_empty() { "PASS" } else { "FAIL" });
        for b in &bad {
            println!("  {b}");
        }
        failures += bad.len();
    };

    let mut defect_bad = Vec::new();
    let mut defect_cases = 0usize;
    for m in 4..=args.m_max {
        for i in 2..=(m - 1) {
            let form = DefectSchur::new(m, i).expect("the loop range is valid");
            defect_cases += 1;
            if fraction_free_det(&form.matrix()) != form.det_closed() {
                defect_bad.push(format!("determinant mismatch at m={m}, i={i}"));
            }
        }
    }
    report("defect determinant identity", defect_cases, defect_bad);

    let mut endpoint_bad = Vec::new();
    let mut endpoint_cases = 0usize;
    for m in 2..=args.m_max {
        for a in 1..=8 {
            for b in 1..=8 {
                let form = EndpointSchur::new(m, a, b).expect("the loop range is valid");
                endpoint_cases += 1;
                if endpoint_minors_oracle(&form) != form.minors_closed() {
                    endpoint_bad.push(format!("principal minor mismatch at m={m}, a={a}, b={b}"));
                }
            }
        }
    }
    report("endpoint principal minors", endpoint_cases, endpoint_bad);

    let mut convex_bad = Vec::new();
    let mut convex_cases = 0usize;
    for m in 4..=args.m_max {
        let at_start = DefectSchur::new(m, 2).expect("the loop range is valid").b_value();
        let at_end = DefectSchur::new(m, m - 1).expect("the loop range is valid").b_value();
        convex_cases += 1;
        if at_end != at_start {
            convex_bad.push(format!("endpoint values differ at m={m}"));
        }
        for i in 2..=(m - 1) {
            let inner = DefectSchur::new(m, i).expect("the loop range is valid").b_value();
            if inner > at_start {
                convex_bad.push(format!("interior value exceeds the endpoints at m={m}, i={i}"));
            }
        }
    }
    report("defect numerator maximal at the spine ends", convex_cases, convex_bad);

    println!("provenance: all identities evaluated in exact rational arithmetic");
    if failures == 0 {
        Ok(())
    } else {
        Err(mismatch(format!("{failures} identity checks failed")))
    }
}

fn cmd_phase(args: PhaseArgs) -> CmdResult {
    if args.max == 0 {
        return Err(usage("--max must be at least 1"));
    }
    let points = double_star_phase(args.max, args.max);
    let mut csv = String::from("a,b,computed,predicted\n");
    for p in &points {
        writeln!(csv, "{},{},{},{}", p.a, p.b, p.computed, p.predicted)
            .expect("string writes cannot fail");
    }
    match &args.out {
        Some(path) => {
            fs::write(path, &csv).map_err(|e| usage(format!("write {}: {e}", path.display())))?;
            eprintln!("wrote {} grid rows to {}", points.len(), path.display());
        }
        None => print!("{csv}"),
    }
    let bad = phase_mismatches(&points);
    eprintln!("mismatches between the computed sign and the (a-1)(b-1) rule: {}", bad.len());
    for p in &bad {
        eprintln!("  a={}, b={}: computed {}, predicted {}", p.a, p.b, p.computed, p.predicted);
    }
    eprintln!("provenance: computed signs from exact rational arithmetic on orbit quotients");
    if bad.is_empty() {
        Ok(())
    } else {
        Err(mismatch(format!("{} phase mismatches", bad.len())))
    }
}
