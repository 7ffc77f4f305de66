//! `h2beta` command-line tool.
//!
//! Exit codes: 0 success, 2 a verification check failed, 1 usage, config or runtime error.

use clap::{Parser, Subcommand};
use h2beta::asymptotics::write_grid_csv;
use h2beta::config::Config;
use h2beta::constants::Constants;
use h2beta::counterexample::{build_counterexample, CounterexampleOptions};
use h2beta::operator::{self, DivergenceOptions, NORM_ITER_CAP};
use h2beta::verify::{emit_report, run_suite, Suite, SuiteOptions};
use h2beta::weights::{classify, Property};
use h2beta::{coeffs, Error};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "h2beta", version, about = "Composition operators on weighted Hardy spaces")]
struct Cli {
    /// TOML config with [weights.*], [symbols.*] and [run] tables.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (overrides the config).
    #[arg(long, global = true, env = "H2BETA_OUT_DIR")]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Stored constants file replacing the built-in one.
    #[arg(long, global = true)]
    constants: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
enum Command {
    /// Classify a weight sequence on [0, window].
    Classify {
        #[arg(long)]
        weight: String,
        #[arg(long)]
        property: String,
        #[arg(long)]
        window: Option<u64>,
    },
    /// Norm of the N×N section of C_phi; with --n-list, a divergence probe.
    SectionNorm {
        #[arg(long)]
        weight: String,
        #[arg(long)]
        symbol: String,
        #[arg(short = 'N', long = "dim")]
        dim: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = NORM_ITER_CAP)]
        iters: usize,
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<usize>>,
        /// Also write the section as CSV.
        #[arg(long)]
        export: bool,
    },
    /// Taylor coefficients of phi^n.
    Coeffs {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        power: u32,
        #[arg(long, default_value_t = 64)]
        len: usize,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Reproducing kernel norms ||K_w||.
    Kernel {
        #[arg(long)]
        weight: String,
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Staged Blaschke product with unbounded composition operator.
    Counterexample {
        #[arg(long)]
        weight: String,
        #[arg(long, default_value_t = 2)]
        k_max: usize,
        #[arg(long, default_value_t = 1 << 16)]
        max_index: u64,
    },
    /// Run a named suite, or `all`.
    Verify { suite: String },
}

struct Ctx {
    config: Config,
    out: PathBuf,
    seed: u64,
    constants: Constants,
}

#[derive(Serialize)]
struct Echo<'a> {
    command: &'a Command,
    seed: u64,
    config: &'a Config,
}

fn write_json<T: Serialize>(ctx: &Ctx, name: &str, value: &T) -> Result<PathBuf, Error> {
    let path = ctx.out.join(name);
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(&path, &text)?;
    // a closed pipe (e.g. `| head`) is not an error; the file is already written
    let _ = std::io::stdout().write_all(text.as_bytes());
    Ok(path)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let constants = match &cli.constants {
        Some(p) => Constants::load(p)?,
        None => Constants::builtin(),
    };
    let out = cli.out.clone().or_else(|| config.run.output.clone()).unwrap_or_else(|| PathBuf::from("h2beta-out"));
    std::fs::create_dir_all(&out)?;
    let seed = cli.seed.or(config.run.seed).unwrap_or(SuiteOptions::default().seed);
    let ctx = Ctx { config, out, seed, constants };
    let run = &ctx.config.run;
    let tol = run.tol.unwrap_or(1e-12);

    match &cli.command {
        Command::Classify { weight, property, window } => {
            let w = ctx.config.weight(weight)?;
            let p: Property = property.parse()?;
            let rep = classify(&w, p, window.or(run.window).unwrap_or(4096))?;
            write_json(&ctx, "classify.json", &rep)?;
        }
        Command::SectionNorm { weight, symbol, dim, tol: t, iters, n_list, export } => {
            let w = ctx.config.weight(weight)?;
            let phi = ctx.config.symbol(symbol)?;
            let tol = t.unwrap_or(tol);
            match n_list.clone().or_else(|| run.n_list.clone()) {
                Some(list) => {
                    let opts = DivergenceOptions { tol, iters: *iters, ..DivergenceOptions::default() };
                    let rep = operator::divergence_probe(&w, &phi, &list, &opts)?;
                    write_json(&ctx, "divergence.json", &rep)?;
                }
                None => {
                    let n = dim.or(run.dim).unwrap_or(256);
                    let s = operator::build_section(&w, &phi, n, tol)?;
                    if *export {
                        s.export(&ctx.out.join("section.csv"), &ctx.out.join("section_meta.json"))?;
                    }
                    let rep = operator::norm_report(&s, *iters, 1e-10);
                    write_json(&ctx, "section_norm.json", &rep)?;
                }
            }
        }
        Command::Coeffs { symbol, power, len, tol: t } => {
            let phi = ctx.config.symbol(symbol)?;
            let c = coeffs::coeffs_of_power(&phi, *power, *len, t.unwrap_or(tol))?;
            write_json(&ctx, "coeffs.json", &c)?;
        }
        Command::Kernel { weight, radii, tol: t } => {
            let w = ctx.config.weight(weight)?;
            let radii = radii.clone().or_else(|| run.radii.clone()).unwrap_or_else(|| vec![0.5, 0.9, 0.99]);
            let p = operator::kernel_growth_report(&w, &radii, t.unwrap_or(tol))?;
            write_json(&ctx, "kernel.json", &p)?;
        }
        Command::Counterexample { weight, k_max, max_index } => {
            let w = ctx.config.weight(weight)?;
            let opts = CounterexampleOptions { k_max: *k_max, max_index: *max_index, ..Default::default() };
            let (_, plan) = build_counterexample(&w, &opts)?;
            write_json(&ctx, "counterexample.json", &plan)?;
        }
        Command::Verify { suite } => return verify(&ctx, &cli.command, suite),
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(ctx: &Ctx, command: &Command, suite: &str) -> Result<ExitCode, Error> {
    let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
    let opts = SuiteOptions { seed: ctx.seed, constants: ctx.constants.clone() };
    let mut results = Vec::new();
    for s in suites {
        let out = run_suite(s, &opts)?;
        for (name, rows) in &out.grids {
            write_grid_csv(&ctx.out.join(format!("{name}.csv")), rows)?;
        }
        let failed = out.result.failures().count();
        eprintln!("{}: {} ({} checks, {failed} failed)", out.result.suite, if out.result.pass { "PASS" } else { "FAIL" }, out.result.checks.len());
        for c in out.result.failures() {
            eprintln!("  FAIL {} measured {:e}, expected {}", c.id, c.measured, c.expected);
        }
        results.push(out.result);
    }
    let echo = serde_json::to_value(Echo { command, seed: ctx.seed, config: &ctx.config })?;
    let path = ctx.out.join("report.json");
    let report = emit_report(&results, echo, &path)?;
    eprintln!("report: {}", path.display());
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
