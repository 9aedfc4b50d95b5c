//! `fflab` — finite free probability from the command line.
//!
//! Exit codes: `0` success, `1` computation failure or failed check suite,
//! `2` malformed input or usage, `3` input left the real-rooted domain.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use fflab_cli::{io, runner};
use fflab_core::verify::{CheckConfig, Ensemble, Suite, ALL_SUITES};
use fflab_core::{
    c_constant, convolve, entropy, entropy_from_integral, entropy_power, fisher,
    heat_flow_operator, real_roots, score, DEFAULT_INTEGRAL_BUDGET, DEFAULT_INTEGRAL_T_MAX,
};

#[derive(Parser)]
#[command(
    name = "fflab",
    version,
    about = "Finite free probability toolkit: additive convolution, heat flow, \
             entropy and Fisher functionals, and seeded verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract the real roots of a polynomial, printed in descending order
    Roots {
        /// Input file with {"roots": [...]} or {"coeffs": [...]}; `-` reads stdin
        #[arg(default_value = "-")]
        input: String,
    },
    /// Additive convolution of two polynomials of equal degree
    Convolve {
        /// Left input file (at most one of the two may be `-`)
        left: String,
        /// Right input file
        right: String,
    },
    /// Evolve a polynomial along the heat flow (negative time runs it backward)
    Heatflow {
        /// Flow time
        #[arg(long, allow_hyphen_values = true)]
        time: f64,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Per-root score values (sums of inverse root gaps), descending root order
    Score {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Fisher information of the root configuration
    Fisher {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Gap entropy of the root configuration
    Entropy {
        /// Recompute through the heat-flow integral representation instead
        /// of the direct gap sum (slower; useful as a cross-check)
        #[arg(long)]
        integral: bool,
        /// Upper integration limit for --integral
        #[arg(long, default_value_t = DEFAULT_INTEGRAL_T_MAX)]
        t_max: f64,
        /// Integrand evaluation budget for --integral
        #[arg(long, default_value_t = DEFAULT_INTEGRAL_BUDGET)]
        budget: usize,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Entropy power of the root configuration
    Epower {
        #[arg(default_value = "-")]
        input: String,
    },
    /// The degree constant from the entropy monotonicity bound
    Cn {
        /// Degree (at least 3)
        #[arg(long)]
        degree: usize,
    },
    /// Run seeded verification suites and report margins
    Check {
        /// Suite name, repeatable; omit to run all suites
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
        /// Base seed for the deterministic sampler
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trials per suite
        #[arg(long, default_value_t = 100)]
        trials: u32,
        /// Polynomial degree (at least 2)
        #[arg(long, default_value_t = 8)]
        degree: usize,
        /// Root ensemble: gaussian, uniform, clustered, or hermite
        #[arg(long, default_value = "gaussian")]
        ensemble: String,
        /// Margin tolerance: a margin below -tol is a failure
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace root trajectories along the heat flow as CSV
    /// (t, root_index, value, score_residual)
    Trajectory {
        /// Final flow time
        #[arg(long, default_value_t = 1.0)]
        t_max: f64,
        /// Number of equal time steps between 0 and t-max
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(default_value = "-")]
        input: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(classify(&err))
        }
    }
}

/// Maps an error chain to the documented exit codes.
fn classify(err: &anyhow::Error) -> u8 {
    if let Some(core) = err.downcast_ref::<fflab_core::Error>() {
        return match core {
            fflab_core::Error::NonRealRooted { .. } => 3,
            _ => 1,
        };
    }
    if err.downcast_ref::<io::InputError>().is_some() {
        return 2;
    }
    1
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Roots { input } => {
            let p = io::read_polynomial(&input)?;
            println!("{}", io::roots_json(&real_roots(&p)?));
        }
        Command::Convolve { left, right } => {
            let p = io::read_polynomial(&left)?;
            let q = io::read_polynomial(&right)?;
            println!("{}", io::coeffs_json(&convolve(&p, &q)?));
        }
        Command::Heatflow { time, input } => {
            let p = io::read_polynomial(&input)?;
            println!("{}", io::coeffs_json(&heat_flow_operator(&p, time)));
        }
        Command::Score { input } => {
            let p = io::read_polynomial(&input)?;
            println!("{}", io::score_json(&score(&real_roots(&p)?)?));
        }
        Command::Fisher { input } => {
            let p = io::read_polynomial(&input)?;
            println!("{}", fisher(&real_roots(&p)?)?);
        }
        Command::Entropy {
            integral,
            t_max,
            budget,
            input,
        } => {
            let p = io::read_polynomial(&input)?;
            let value = if integral {
                entropy_from_integral(&p, t_max, budget)?
            } else {
                entropy(&real_roots(&p)?)?
            };
            println!("{value}");
        }
        Command::Epower { input } => {
            let p = io::read_polynomial(&input)?;
            println!("{}", entropy_power(&real_roots(&p)?)?);
        }
        Command::Cn { degree } => {
            if degree < 3 {
                return Err(io::input_error("--degree must be at least 3"));
            }
            println!("{}", c_constant(degree));
        }
        Command::Check {
            suites,
            seed,
            trials,
            degree,
            ensemble,
            tol,
            format,
            out,
        } => {
            return run_check(suites, seed, trials, degree, &ensemble, tol, format, out);
        }
        Command::Trajectory {
            t_max,
            steps,
            input,
        } => {
            let p = io::read_polynomial(&input)?;
            print!("{}", trajectory_csv(&p, t_max, steps)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn run_check(
    suite_names: Vec<String>,
    seed: u64,
    trials: u32,
    degree: usize,
    ensemble: &str,
    tol: f64,
    format: Format,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    if degree < 2 {
        return Err(io::input_error("--degree must be at least 2"));
    }
    let ensemble = Ensemble::from_name(ensemble)
        .ok_or_else(|| io::input_error(format!("unknown ensemble \"{ensemble}\"")))?;
    let suites: Vec<Suite> = if suite_names.is_empty() {
        ALL_SUITES.to_vec()
    } else {
        suite_names
            .iter()
            .map(|name| {
                Suite::from_name(name)
                    .ok_or_else(|| io::input_error(format!("unknown suite \"{name}\"")))
            })
            .collect::<Result<_>>()?
    };
    let config = CheckConfig {
        seed,
        trials,
        degree,
        ensemble,
        tol,
    };
    let reports = runner::run_reports(&suites, &config);

    let rendered = match format {
        Format::Json => io::reports_json(&reports),
        Format::Csv => io::reports_csv(&reports),
    };
    match out {
        Some(path) => std::fs::write(&path, rendered)
            .map_err(|e| anyhow::anyhow!("writing {}: {e}", path.display()))?,
        None => println!("{rendered}"),
    }

    for report in &reports {
        if !report.passed() {
            eprintln!(
                "suite {} failed: {} margin(s) below -{}, minimum {}",
                report.suite, report.failures, config.tol, report.min_margin
            );
        }
    }
    if reports.iter().all(|r| r.passed()) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

/// CSV of root trajectories under the heat flow, one row per (time, root).
///
/// The `score_residual` column reports |central-difference velocity − score|
/// per root: along the heat flow every root moves with velocity equal to its
/// score, so this column is a built-in consistency check of the flow, the
/// root extraction, and the score functional together (values near roundoff,
/// growing at most to the difference scheme's `O(h²)` bias).
fn trajectory_csv(p: &fflab_core::Polynomial, t_max: f64, steps: usize) -> Result<String> {
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(io::input_error("--t-max must be positive and finite"));
    }
    if steps == 0 {
        return Err(io::input_error("--steps must be at least 1"));
    }
    const VELOCITY_STEP: f64 = 1e-5;
    let mut out = String::from("t,root_index,value,score_residual\n");
    for k in 0..=steps {
        let t = t_max * k as f64 / steps as f64;
        let roots = real_roots(&heat_flow_operator(p, t))?;
        let scores = score(&roots)?;
        // The operator form of the flow is defined for negative times, so
        // the centered stencil is valid even at t = 0.
        let ahead = real_roots(&heat_flow_operator(p, t + VELOCITY_STEP))?;
        let behind = real_roots(&heat_flow_operator(p, t - VELOCITY_STEP))?;
        for i in 0..roots.len() {
            let velocity = (ahead[i] - behind[i]) / (2.0 * VELOCITY_STEP);
            let residual = (velocity - scores[i]).abs();
            out.push_str(&format!("{t},{i},{},{residual}\n", roots[i]));
        }
    }
    Ok(out)
}
