use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use eistwist::arith::{check_level_pair, LogMap};
use eistwist::eisenstein::{alpha_check, DEFAULT_N_MAX};
use eistwist::harness::{
    check_fixtures, even_row, odd_row, sweep_even, sweep_odd, LevelData, SweepOptions, SweepReport,
};
use eistwist::modsym::{build_space, Sign};
use eistwist::quadfield::Discriminant;
use eistwist::Error;

#[derive(Parser)]
#[command(
    name = "eistwist",
    version,
    about = "Eisenstein quotients and quadratic twists at prime level"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Depth of the Eisenstein filtration.
    #[arg(long, global = true, default_value_t = DEFAULT_N_MAX)]
    nmax: usize,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory for cached contexts.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of the modular symbol space at level N.
    Space {
        #[arg(long = "N")]
        n: u64,
        /// Also report the Eisenstein quotient at this prime.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Check g_p against the fixture table.
    Fixtures {
        /// Include N = 1871, 4621, 9931.
        #[arg(long)]
        large: bool,
    },
    /// Real quadratic twists with N split.
    SweepEven(Range),
    /// Imaginary quadratic twists with N inert.
    SweepOdd(Range),
    /// A single theta element.
    Theta {
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long = "D", allow_hyphen_values = true)]
        d: i64,
    },
}

#[derive(Args)]
struct Range {
    #[arg(long = "N")]
    n: u64,
    #[arg(long)]
    p: u64,
    #[arg(long, allow_hyphen_values = true)]
    dmin: i64,
    #[arg(long, allow_hyphen_values = true)]
    dmax: i64,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CacheIntegrity(_) => 3,
        Error::CacheVersion { .. } => 4,
        Error::HypothesisViolated { .. } | Error::InvalidArgument(_) => 2,
        _ => 1,
    }
}

fn print_report(rep: &SweepReport, format: Format) {
    match format {
        Format::Csv => {
            print!("{}", rep.to_csv());
            eprintln!(
                "{} rows, {} passed, {} failed",
                rep.summary.total, rep.summary.passed, rep.summary.failed
            );
            for r in rep.failures() {
                eprintln!("FAIL {}", r.csv_line());
            }
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&rep.to_json()).unwrap()),
    }
}

fn run(cli: Cli) -> eistwist::Result<bool> {
    let c = &cli.common;
    let opts = SweepOptions {
        n_max: c.nmax,
        jobs: c.jobs,
        cache_dir: c.cache_dir.as_deref(),
    };
    match cli.command {
        Command::Space { n, p } => {
            let space = build_space(n)?;
            let mut out = json!({
                "N": n,
                "genus": space.genus(),
                "manin_symbols": space.num_generators(),
                "relative_dim": space.dim_rel(),
                "cuspidal_rank": space.cuspidal().rank(),
                "plus_rank": space.signed(Sign::Plus).rank(),
                "minus_rank": space.signed(Sign::Minus).rank(),
            });
            if let Some(p) = p {
                let level = LevelData::cached(n, p, Sign::Plus, c.nmax, opts.cache_dir)?;
                let ctx = &level.ctx;
                out["p"] = json!(p);
                out["sturm_bound"] = json!(ctx.sturm_bound);
                out["g_p"] = json!(level.g_p);
                out["p_exponents"] = json!((0..=ctx.n_max + 1)
                    .map(|k| ctx.p_exponent(k))
                    .collect::<Vec<_>>());
                out["quotient_p_part"] = json!(ctx.p_part_invariants(1));
            }
            match c.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out).unwrap()),
                Format::Csv => {
                    for (k, v) in out.as_object().unwrap() {
                        println!("{k},{v}");
                    }
                }
            }
            Ok(true)
        }
        Command::Fixtures { large } => {
            let large = large || std::env::var("EISTWIST_LARGE").is_ok_and(|v| v == "1");
            let res = check_fixtures(large)?;
            match c.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&res).unwrap()),
                Format::Csv => {
                    println!("N,p,expected,found,method,seconds,passed");
                    for r in &res {
                        println!(
                            "{},{},{},{},{},{:.3},{}",
                            r.n,
                            r.p,
                            r.expected,
                            r.found,
                            r.method,
                            r.elapsed.as_secs_f64(),
                            r.passed()
                        );
                    }
                }
            }
            Ok(res.iter().all(|r| r.passed()))
        }
        Command::SweepEven(r) => {
            let rep = sweep_even(r.n, r.p, r.dmin, r.dmax, &opts)?;
            print_report(&rep, c.format);
            Ok(rep.summary.failed == 0)
        }
        Command::SweepOdd(r) => {
            let rep = sweep_odd(r.n, r.p, r.dmin, r.dmax, &opts)?;
            print_report(&rep, c.format);
            Ok(rep.summary.failed == 0)
        }
        Command::Theta { n, p, d } => {
            check_level_pair(n, p)?;
            let disc = Discriminant::new(d)?;
            let sign = Sign::from_i8(disc.sign());
            let level = LevelData::cached(n, p, sign, c.nmax, opts.cache_dir)?;
            let theta = level.space.theta_element(disc)?;
            let row = match sign {
                Sign::Plus => even_row(&level, d)?,
                Sign::Minus => odd_row(&level, d)?,
            };
            let mut out = row.to_json();
            out["theta_coords"] = json!(theta
                .coords
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>());
            if sign == Sign::Plus {
                let log = LogMap::new(n, p)?;
                let samples: Vec<(i64, i64)> = (2..)
                    .filter(|d| d % n as i64 != 0)
                    .take(8)
                    .map(|d| (1, d))
                    .collect();
                out["alpha_map_ok"] = json!(alpha_check(&level.space, &level.ctx, &log, &samples)?);
            }
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(row.consistent)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(5),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
