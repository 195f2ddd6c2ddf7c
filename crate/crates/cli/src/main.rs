//! `gapcorner`: counts, correlations, sweeps and identity checks from the
//! command line.
//!
//! Exit status: 0 on success, 1 when two routes disagree or a suite fails,
//! 2 for bad input (usage, validation, domain, resource guard, I/O).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gapcorner::correlation::{
    asymptotic_prediction, correlation_double_sum, correlation_via_moments, finite_n_correlation,
    finite_n_numerator, finite_n_numerator_literal, CorrelationParams,
};
use gapcorner::exact::{format_float, format_rat, parse_rat, rat_to_f64};
use gapcorner::exactcount::{lgv_pfaffian_count, product_formula_count};
use gapcorner::oracle::count_tilings;
use gapcorner::regions::{build_region, RegionSpec};
use gapcorner::suites::{run_suite, SUITES};
use gapcorner::sweep::{run_sweep, write_records, SweepFormat, SweepGrid};
use gapcorner::{Error, ExactInt};

/// Testing hook: names a count route whose result is bumped by one, so that
/// `count --check` has a disagreement to report.
const FAULT_ENV: &str = "GAPCORNER_INJECT_FAULT";

#[derive(Parser)]
#[command(name = "gapcorner", version, about = "Lozenge tilings with a free boundary and the gap-corner correlation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count tilings of D_{n,x,y} with the given kept bumps, optionally with a gap
    Count(CountArgs),
    /// Exact correlation of a gap at (alpha, beta) with the corner
    Correlate(CorrelateArgs),
    /// Exact correlation against the asymptotic prediction over a (q, R) grid
    Sweep(SweepArgs),
    /// Run a named invariant suite
    Verify {
        /// one of routes, schur, lemma33, ssc, factorization, moments, conjecture
        suite: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountRoute {
    Product,
    Pfaffian,
    Oracle,
}

#[derive(clap::Args)]
struct CountArgs {
    /// JSON region spec; replaces the shape flags
    #[arg(long, conflicts_with_all = ["n", "x", "y", "kept", "gap"])]
    spec: Option<PathBuf>,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    x: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<i64>,
    /// comma-separated kept bump labels, "" for none; default all of 1..=n
    #[arg(long)]
    kept: Option<String>,
    /// gap position as alpha,beta
    #[arg(long)]
    gap: Option<String>,
    #[arg(long, value_enum, default_value = "product")]
    route: CountRoute,
    /// run every applicable route and require agreement
    #[arg(long)]
    check: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CorrelateRoute {
    Double,
    Moments,
    FiniteN,
    Both,
}

#[derive(clap::Args)]
struct CorrelateArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: i64,
    #[arg(long, allow_hyphen_values = true)]
    beta: i64,
    #[arg(long, value_enum, default_value = "double")]
    route: CorrelateRoute,
    /// region size for --route finite-n
    #[arg(long)]
    n: Option<i64>,
    /// also print the asymptotic prediction and the ratio
    #[arg(long)]
    compare_prediction: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct SweepArgs {
    /// comma-separated ray slopes, each an integer or num/den
    #[arg(long, default_value = "1")]
    q: String,
    /// comma-separated R values or ranges start:end[:step]
    #[arg(long)]
    r: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// worker threads; defaults to the number of cores
    #[arg(long)]
    jobs: Option<usize>,
}

enum Failure {
    Disagreement(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(format!("I/O error: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Input(Error::Usage(msg.into()).to_string())
}

fn parse_list(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| usage(format!("not an integer: {t:?}"))))
        .collect()
}

fn parse_pair(s: &str) -> Result<(i64, i64), Failure> {
    match parse_list(s)?[..] {
        [a, b] => Ok((a, b)),
        _ => Err(usage(format!("expected two integers a,b, got {s:?}"))),
    }
}

fn parse_r_values(s: &str) -> Result<Vec<i64>, Failure> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if part.contains(':') {
            let nums: Vec<i64> = part
                .split(':')
                .map(|t| t.trim().parse().map_err(|_| usage(format!("bad range {part:?}"))))
                .collect::<Result<_, _>>()?;
            let (start, end, step) = match nums[..] {
                [a, b] => (a, b, 1),
                [a, b, c] => (a, b, c),
                _ => return Err(usage(format!("bad range {part:?}"))),
            };
            if step < 1 {
                return Err(usage(format!("range step must be positive in {part:?}")));
            }
            out.extend((start..=end).step_by(step as usize));
        } else {
            out.push(part.parse().map_err(|_| usage(format!("not an integer: {part:?}")))?);
        }
    }
    Ok(out)
}

fn region_from_args(a: &CountArgs) -> Result<RegionSpec, Failure> {
    if let Some(path) = &a.spec {
        let text = std::fs::read_to_string(path)?;
        return serde_json::from_str(&text).map_err(|e| usage(format!("bad region spec {}: {e}", path.display())));
    }
    let (Some(n), Some(x), Some(y)) = (a.n, a.x, a.y) else {
        return Err(usage("give --spec or all of --n, --x, --y"));
    };
    let mut spec = match &a.kept {
        Some(k) => RegionSpec::dented(n, x, y, &parse_list(k)?),
        None => RegionSpec::full(n, x, y),
    };
    if let Some(g) = &a.gap {
        let (alpha, beta) = parse_pair(g)?;
        spec = spec.with_gap(alpha, beta);
    }
    Ok(spec)
}

/// Gapped regions have closed forms only as `D_{n,n,0}` with every bump kept.
fn gapped_closed_form(spec: &RegionSpec, literal: bool) -> Result<ExactInt, Failure> {
    let g = spec.gap.expect("caller checked");
    let full = (1..=spec.n).collect::<Vec<_>>();
    if spec.x != spec.n || spec.y != 0 || spec.kept_bumps != full || !spec.free_east {
        return Err(usage("with a gap only the oracle route handles regions other than D_{n,n,0} with all bumps kept"));
    }
    let f = if literal { finite_n_numerator_literal } else { finite_n_numerator };
    Ok(f(spec.n, g.alpha, g.beta)?)
}

fn count_route(spec: &RegionSpec, route: CountRoute) -> Result<ExactInt, Failure> {
    spec.validate()?;
    let mut value = match route {
        CountRoute::Oracle => count_tilings(&build_region(spec)?)?,
        _ if spec.gap.is_some() => gapped_closed_form(spec, route == CountRoute::Pfaffian)?,
        _ if !spec.free_east => return Err(usage("only the oracle route handles a constrained east side")),
        CountRoute::Product => product_formula_count(spec.n, spec.x, spec.y, &spec.kept_bumps)?,
        CountRoute::Pfaffian => lgv_pfaffian_count(spec.n, spec.x, spec.y, &spec.kept_bumps)?,
    };
    let name = route.to_possible_value().expect("no skipped variants").get_name().to_string();
    if std::env::var(FAULT_ENV).is_ok_and(|v| v == name) {
        value += 1;
    }
    Ok(value)
}

fn cmd_count(a: CountArgs) -> CmdResult {
    let spec = region_from_args(&a)?;
    if !a.check {
        println!("{}", count_route(&spec, a.route)?);
        return Ok(());
    }
    let mut values = Vec::new();
    for route in [CountRoute::Product, CountRoute::Pfaffian, CountRoute::Oracle] {
        let name = route.to_possible_value().expect("no skipped variants").get_name().to_string();
        let v = count_route(&spec, route)?;
        println!("{name}: {v}");
        values.push((name, v));
    }
    if values.windows(2).all(|w| w[0].1 == w[1].1) {
        Ok(())
    } else {
        let shown: Vec<String> = values.iter().map(|(n, v)| format!("{n}={v}")).collect();
        Err(Failure::Disagreement(format!("routes disagree: {}", shown.join(", "))))
    }
}

fn print_value(label: &str, v: &gapcorner::ExactRat) {
    println!("{label} = {}", format_rat(v));
    println!("{label} ~ {}", format_float(rat_to_f64(v)));
}

fn cmd_correlate(a: CorrelateArgs) -> CmdResult {
    let p = CorrelationParams::from_gap(a.alpha, a.beta)?;
    let omega = match a.route {
        CorrelateRoute::Double => {
            let v = correlation_double_sum(&p);
            print_value("omega", &v);
            v
        }
        CorrelateRoute::Moments => {
            let v = correlation_via_moments(&p);
            print_value("omega", &v);
            v
        }
        CorrelateRoute::Both => {
            let d = correlation_double_sum(&p);
            let m = correlation_via_moments(&p);
            print_value("double", &d);
            print_value("moments", &m);
            if d != m {
                return Err(Failure::Disagreement("double sum and moment integral differ".into()));
            }
            d
        }
        CorrelateRoute::FiniteN => {
            let n = a.n.ok_or_else(|| usage("--route finite-n needs --n"))?;
            let v = finite_n_correlation(n, a.alpha, a.beta)?;
            print_value(&format!("finite n={n}"), &v);
            v
        }
    };
    if a.compare_prediction {
        let pred = asymptotic_prediction(rat_to_f64(&p.q), p.r as f64)?;
        println!("prediction ~ {}", format_float(pred));
        println!("ratio ~ {}", format_float(rat_to_f64(&omega) / pred));
    }
    Ok(())
}

fn cmd_sweep(a: SweepArgs) -> CmdResult {
    let qs = a
        .q
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(parse_rat)
        .collect::<Result<Vec<_>, _>>()?;
    let grid = SweepGrid { qs, rs: parse_r_values(&a.r)?, jobs: a.jobs };
    let rows = run_sweep(&grid)?;
    let format = match a.format {
        Format::Csv => SweepFormat::Csv,
        Format::Json => SweepFormat::Json,
    };
    match &a.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            write_records(&rows, format, &mut w)?;
            w.flush()?;
        }
        None => write_records(&rows, format, io::stdout().lock())?,
    }
    Ok(())
}

fn cmd_verify(suite: &str) -> CmdResult {
    if !SUITES.contains(&suite) {
        return Err(usage(format!("unknown suite {suite:?}; expected one of {}", SUITES.join(", "))));
    }
    let report = run_suite(suite)?;
    for c in &report.cases {
        println!("{} {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
    }
    println!("{suite}: {} cases, {} failed", report.cases.len(), report.failures());
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Disagreement(format!("suite {suite} failed")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count(a) => cmd_count(a),
        Command::Correlate(a) => cmd_correlate(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Verify { suite } => cmd_verify(&suite),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Disagreement(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("{m}");
            ExitCode::from(2)
        }
    }
}
