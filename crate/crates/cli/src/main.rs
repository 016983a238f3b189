//! `legweb`: exact and numeric verification of Abelian relations of
//! Legendrian d-webs.
//!
//! Exit codes: 0 = all checks pass, 1 = a mathematical check failed,
//! 2 = usage or I/O error.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use legweb::model::WebSpec;
use legweb::numeric::coframe::Point3;
use legweb::numeric::darboux::darboux_check;
use legweb::numeric::frobenius::{
    det3, frobenius_solve, holonomy_deviation, rectangle_loop,
};
use legweb::numeric::normal_form::{
    normal_form_coframe, normal_form_web, sample_domain, NormalFormCase,
};
use legweb::numeric::sampling::{sample_box, seeded_rng};
use legweb::numeric::structure_residual;
use legweb::numeric::torsion::maximal_rank_report;
use legweb::relations::{
    build_relations, from_relations_file, rank_of_relations, rho, rho_decomposition,
    to_relations_file, verify_relation,
};
use legweb::symbol::{counting_table, depth_block, total_sum_check};
use legweb::exact::rational::parse_rational;

#[derive(Parser)]
#[command(
    name = "legweb",
    about = "Exact and numeric verification of Abelian relations of Legendrian d-webs",
    version
)]
struct Cli {
    /// Seed for randomized sampling (deterministic per seed).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the maximum rank rho_d and its decomposition.
    Rho {
        /// Number of web members, d >= 3.
        d: usize,
    },
    /// Construct the rho_d Abelian relations of a model web and write them
    /// to a JSON file.
    Construct {
        #[arg(long)]
        d: usize,
        /// Comma-separated distinct rational leaf values (default 0..d-1).
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<String>>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-verify a relations file: relation axioms, exact rank, and the
    /// compatibility equations up to depth 2d-3.
    Verify { path: PathBuf },
    /// Per-depth symbol counts and ranks with the total-sum identity.
    Symbol {
        #[arg(long)]
        d: usize,
        /// Comma-separated leaf values (default 0..d-1).
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<String>>,
        /// Restrict to a single depth.
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Print the variable/equation counting table for a given d.
    Table {
        #[arg(long)]
        d: usize,
    },
    /// Check one normal-form family: structure residuals, torsion
    /// extraction, and Frobenius loop holonomy.
    #[command(name = "normal-form")]
    NormalForm(NormalFormArgs),
    /// Check the Darboux super-integrable example.
    Darboux {
        #[arg(long = "Dplus")]
        d_plus: f64,
        #[arg(long = "D", allow_hyphen_values = true)]
        d: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Args)]
struct NormalFormArgs {
    /// zero_disc | positive_disc | negative_disc
    #[arg(long)]
    case: String,
    /// Parameter R (positive_disc).
    #[arg(long = "R", allow_hyphen_values = true)]
    r: Option<f64>,
    /// Parameter T (zero_disc, negative_disc).
    #[arg(long = "T", allow_hyphen_values = true)]
    t: Option<f64>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// RK4 spatial step for the holonomy check.
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
}

/// Failure that should surface as exit code 2 (usage / I-O / precondition).
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<legweb::LegwebError> for UsageError {
    fn from(e: legweb::LegwebError) -> Self {
        UsageError(e.to_string())
    }
}

impl From<std::io::Error> for UsageError {
    fn from(e: std::io::Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<serde_json::Error> for UsageError {
    fn from(e: serde_json::Error) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<bool, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = check_thread_cap() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let result = run(&cli);
    match result {
        Ok(true) => {
            eprintln!("ok ({} ms)", start.elapsed().as_millis());
            ExitCode::SUCCESS
        }
        Ok(false) => {
            eprintln!("FAILED ({} ms)", start.elapsed().as_millis());
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Validates the optional LEGWEB_THREADS cap. All subcommands currently run
/// their per-sample and per-depth work sequentially, which respects any
/// positive cap.
fn check_thread_cap() -> Result<usize, UsageError> {
    match std::env::var("LEGWEB_THREADS") {
        Err(_) => Ok(1),
        Ok(v) => v
            .parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| UsageError(format!("LEGWEB_THREADS must be a positive integer, got {v:?}"))),
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Rho { d } => cmd_rho(*d),
        Command::Construct { d, q, out } => cmd_construct(*d, q.as_deref(), out),
        Command::Verify { path } => cmd_verify(path),
        Command::Symbol { d, q, depth } => cmd_symbol(*d, q.as_deref(), *depth),
        Command::Table { d } => cmd_table(*d),
        Command::NormalForm(args) => cmd_normal_form(args, cli.seed),
        Command::Darboux { d_plus, d, samples } => cmd_darboux(*d_plus, *d, *samples, cli.seed),
    }
}

fn parse_web(d: usize, q: Option<&[String]>) -> Result<WebSpec, UsageError> {
    match q {
        None => Ok(WebSpec::default_for(d)?),
        Some(list) => {
            let values = list
                .iter()
                .map(|s| parse_rational(s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            if values.len() != d {
                return Err(UsageError(format!(
                    "--d {} does not match the {} leaf values given",
                    d,
                    values.len()
                )));
            }
            Ok(WebSpec::new(values)?)
        }
    }
}

fn cmd_rho(d: usize) -> CmdResult {
    let value = rho(d)?;
    let decomposition = rho_decomposition(d)?;
    let terms: Vec<String> = decomposition
        .iter()
        .map(|(count, odd)| format!("{count}*{odd}"))
        .collect();
    println!("rho_{d} = {value} = {}", terms.join(" + "));
    Ok(true)
}

fn cmd_construct(d: usize, q: Option<&[String]>, out: &PathBuf) -> CmdResult {
    let web = parse_web(d, q)?;
    let (complement, relations) = build_relations(&web);
    let file = to_relations_file(&web, &complement, &relations);
    std::fs::write(out, serde_json::to_string_pretty(&file)?)?;
    println!(
        "wrote {} relations for d = {} to {}",
        relations.len(),
        d,
        out.display()
    );
    Ok(true)
}

fn cmd_verify(path: &PathBuf) -> CmdResult {
    let text = std::fs::read_to_string(path)?;
    let file: legweb::relations::RelationsFile = serde_json::from_str(&text)?;
    let (web, _complement, relations) = from_relations_file(&file)?;
    let d = web.d();

    let mut pass = true;
    let mut axiom_failures = 0usize;
    for rel in &relations {
        if !verify_relation(rel, &web)?.pass() {
            axiom_failures += 1;
        }
    }
    if axiom_failures > 0 {
        pass = false;
    }
    println!(
        "relation axioms: {}/{} pass",
        relations.len() - axiom_failures,
        relations.len()
    );

    let expected = rho(d)?;
    let rank = rank_of_relations(&relations);
    println!("rank = {rank} (expected rho_{d} = {expected})");
    if rank as u64 != expected || relations.len() as u64 != expected {
        pass = false;
    }

    let depth_max = 2 * d as u32 - 3;
    let symbol_ok = legweb::symbol::relations_satisfy_symbol(&web, &relations, depth_max);
    println!("compatibility equations up to depth {depth_max}: {symbol_ok}");
    if !symbol_ok {
        pass = false;
    }
    Ok(pass)
}

fn cmd_symbol(d: usize, q: Option<&[String]>, only_depth: Option<u32>) -> CmdResult {
    let web = parse_web(d, q)?;
    if d < 3 {
        return Err(UsageError(format!("need d >= 3, got {d}")));
    }
    let depths: Vec<u32> = match only_depth {
        Some(delta) => {
            if delta < 1 || delta > 2 * d as u32 - 3 {
                return Err(UsageError(format!(
                    "depth must be in 1..={}, got {delta}",
                    2 * d - 3
                )));
            }
            vec![delta]
        }
        None => (1..=2 * d as u32 - 3).collect(),
    };

    let mut pass = true;
    println!("depth  vars  eqs  rank  full");
    for &delta in &depths {
        let block = depth_block(&web, delta)?;
        let rank = block.rank();
        let full = block.is_full_rank();
        println!(
            "{:>5}  {:>4}  {:>3}  {:>4}  {}",
            delta,
            block.variables.len(),
            block.equations.len(),
            rank,
            full
        );
        if !full {
            pass = false;
        }
    }
    if only_depth.is_none() {
        let total = total_sum_check(d)?;
        println!("total-sum identity (sum vars - sum eqs = rho_{d}): {total}");
        if !total {
            pass = false;
        }
    }
    Ok(pass)
}

fn cmd_table(d: usize) -> CmdResult {
    let table = counting_table(d)?;
    println!("depth  vars  eqs");
    for row in &table.rows {
        println!("{:>5}  {:>4}  {:>3}", row.depth, row.vars, row.eqs);
    }
    let vars: usize = table.rows.iter().map(|r| r.vars).sum();
    let eqs: usize = table.rows.iter().map(|r| r.eqs).sum();
    println!("total  {vars}  {eqs}   difference = {} = rho_{d}", table.rho);
    Ok(total_sum_check(d)?)
}

fn cmd_normal_form(args: &NormalFormArgs, seed: u64) -> CmdResult {
    let case: NormalFormCase = args
        .case
        .parse()
        .map_err(|e: legweb::LegwebError| UsageError(e.to_string()))?;
    let param = match case {
        NormalFormCase::PositiveDisc => args
            .r
            .ok_or_else(|| UsageError("positive_disc requires --R".into()))?,
        _ => args
            .t
            .ok_or_else(|| UsageError(format!("{case} requires --T")))?,
    };
    let cf = normal_form_coframe(case, param)?;
    let web = normal_form_web(case, param)?;

    let (ranges, accept) = sample_domain(case, param);
    let mut rng = seeded_rng(seed);
    let points = sample_box(&mut rng, args.samples, ranges, accept)?;

    let mut max_residual = 0.0f64;
    for &pt in &points {
        max_residual = max_residual.max(structure_residual(&cf, pt)?);
    }
    let residual_pass = max_residual < 1e-7;

    // Torsion extraction is stencil-heavy; a subset of samples suffices.
    let torsion_points: Vec<Point3> = points.iter().copied().take(20).collect();
    let torsion = maximal_rank_report(&web, &torsion_points)?;

    let path = holonomy_loop(case, param);
    let end = frobenius_solve(&cf, &path, args.step)?;
    let holonomy = holonomy_deviation(&end);
    let det = det3(&end);
    let frobenius_pass = holonomy < 1e-6 && det.abs() > 0.5;

    let pass = residual_pass && torsion.pass && frobenius_pass;
    let report = json!({
        "case": case.as_str(),
        "params": { case.param_name(): param },
        "samples": args.samples,
        "max_residual": max_residual,
        "torsion": {
            "samples": torsion.samples,
            "max_NL": torsion.max_nl,
            "max_constancy": torsion.max_constancy,
            "pass": torsion.pass,
        },
        "frobenius": {
            "step": args.step,
            "holonomy": holonomy,
            "det": det,
            "pass": frobenius_pass,
        },
        "pass": pass,
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(pass)
}

/// A closed rectangle that stays admissible for the given case.
fn holonomy_loop(case: NormalFormCase, param: f64) -> Vec<Point3> {
    match case {
        NormalFormCase::ZeroDisc => rectangle_loop(Point3::new(0.0, 0.0, 0.0), 1.0, 1.0),
        NormalFormCase::PositiveDisc => rectangle_loop(Point3::new(0.0, 0.0, 1.0), 1.0, 1.0),
        NormalFormCase::NegativeDisc => {
            // Keep Ty within (0.2, 0.6) so all trigonometric factors stay
            // bounded away from zero.
            let y0 = 0.2 / param.abs();
            rectangle_loop(Point3::new(0.0, y0, 0.0), 1.0, 2.0 * y0)
        }
    }
}

fn cmd_darboux(d_plus: f64, d: f64, samples: usize, seed: u64) -> CmdResult {
    let mut rng = seeded_rng(seed);
    let points = sample_box(
        &mut rng,
        samples,
        [[-1.0, 1.0], [-1.0, 1.0], [0.5, 2.0]],
        |_| true,
    )?;
    let report = darboux_check(d_plus, d, &points)?;
    let out = json!({
        "case": "darboux",
        "params": { "Dplus": report.d_plus, "D": report.d },
        "samples": report.samples,
        "max_residual": report
            .max_sum_residual
            .max(report.max_annihilator_residual),
        "sum_residual": report.max_sum_residual,
        "annihilator_residual": report.max_annihilator_residual,
        "pass": report.pass,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(report.pass)
}
