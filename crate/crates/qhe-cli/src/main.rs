//! Command dispatch for `qhe`: merge flags with config files, run the
//! requested command, and map failures to exit codes.
//!
//! Exit 0 on success, 1 when a computation trips a numerical accounting
//! check or a comparison violates the expected engine ordering, 2 on usage
//! errors (missing or malformed flags, bad config files, bad thread counts).

mod cli;
mod config;
mod emit;
mod verify;

use std::path::Path;

use clap::Parser;
use qhe_core::engines::{run_engine, EngineKind, EngineParams};
use qhe_core::error::QheError;
use qhe_core::optimize::{compare_engine_subset, sweep_tu, SearchBudget, SweepRow};

use cli::{Cli, Command, CompareArgs, OutputFormat, RunArgs, RunConfig, SweepArgs};
use config::KeyValues;
use verify::VerifyOptions;

/// A failed command: the stderr message and the process exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure::usage(message)
    }
}

impl From<QheError> for Failure {
    fn from(e: QheError) -> Self {
        Failure {
            code: if e.is_numerical() { 1 } else { 2 },
            message: e.to_string(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(dispatch(cli));
}

fn dispatch(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args, cli.threads),
        Command::Sweep(args) => init_threads(cli.threads).and_then(|()| cmd_sweep(args)),
        Command::Compare(args) => init_threads(cli.threads).and_then(|()| cmd_compare(args)),
        Command::Verify(args) => match init_threads(cli.threads) {
            Ok(()) => {
                return verify::run_battery(&VerifyOptions {
                    only: args.only,
                    negate_kappa: args.negate_kappa,
                });
            }
            Err(failure) => Err(failure),
        },
    };
    match outcome {
        Ok(()) => 0,
        Err(failure) => {
            eprintln!("qhe: {}", failure.message);
            failure.code
        }
    }
}

/// Sizes the global worker pool: `--threads` wins, then `QHE_THREADS`, then
/// rayon's default (all cores).
fn init_threads(flag: Option<usize>) -> Result<(), Failure> {
    let requested = match flag {
        Some(n) => Some(n),
        None => match std::env::var("QHE_THREADS") {
            Ok(text) => Some(
                text.parse::<usize>()
                    .map_err(|e| Failure::usage(format!("QHE_THREADS={text}: {e}")))?,
            ),
            Err(_) => None,
        },
    };
    match requested {
        None => Ok(()),
        Some(0) => Err(Failure::usage("thread count must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::usage(format!("thread pool: {e}"))),
    }
}

fn load_config(path: Option<&Path>) -> Result<KeyValues, Failure> {
    match path {
        Some(path) => Ok(KeyValues::load(path)?),
        None => Ok(KeyValues::default()),
    }
}

/// One flag's final value: the command line wins, else the config file.
fn merged<T: std::str::FromStr>(
    flag: Option<T>,
    file: &mut KeyValues,
    key: &str,
) -> Result<Option<T>, Failure>
where
    T::Err: std::fmt::Display,
{
    match flag {
        Some(value) => {
            // shadowed by the explicit flag; consume it so `finish` stays quiet
            file.take_raw(key);
            Ok(Some(value))
        }
        None => Ok(file.take(key)?),
    }
}

fn require<T>(value: Option<T>, name: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::usage(format!("missing {name} (flag or config key)")))
}

fn cmd_run(args: RunArgs, threads: Option<usize>) -> Result<(), Failure> {
    let mut file = load_config(args.config.as_deref())?;
    let engine = args.engine.or_else(|| file.take_raw("engine"));
    let a = merged(args.a, &mut file, "A")?;
    let th = merged(args.th, &mut file, "Th")?;
    let tc = merged(args.tc, &mut file, "Tc")?;
    let lambda = merged(args.lambda, &mut file, "lambda")?;
    let omega_sb = merged(args.omega_sb, &mut file, "omega-sb")?;
    let t2 = merged(args.t2, &mut file, "t2")?;
    let kappa = merged(args.kappa, &mut file, "kappa")?;
    let cycles = merged(args.cycles, &mut file, "cycles")?;
    let steady_tol = merged(args.steady_tol, &mut file, "steady-tol")?;
    file.finish()?;

    let kind: EngineKind = require(engine, "--engine")?.parse()?;
    let a = require(a, "--A")?;
    let th = require(th, "--Th")?;
    let tc = require(tc, "--Tc")?;
    let mut params = match kind {
        EngineKind::SeqOut => EngineParams::seq_out(a, th, tc, require(lambda, "--lambda")?),
        EngineKind::SeqFrag => EngineParams::seq_frag(a, th, tc, require(lambda, "--lambda")?),
        EngineKind::SimOut => EngineParams::sim_out(
            a,
            th,
            tc,
            require(omega_sb, "--omega-sb")?,
            require(t2, "--t2")?,
        ),
        EngineKind::SimFrag => EngineParams::sim_frag(
            a,
            th,
            tc,
            require(omega_sb, "--omega-sb")?,
            require(t2, "--t2")?,
        ),
    };
    // values the chosen kind ignores still land in the struct, so one shared
    // config file can drive any engine
    if let Some(v) = lambda {
        params.lambda = v;
    }
    if let Some(v) = omega_sb {
        params.omega_sb = v;
    }
    if let Some(v) = t2 {
        params.t2 = v;
    }
    if let Some(v) = kappa {
        params = params.with_kappa(v);
    }
    if let Some(v) = cycles {
        params = params.with_cycles(v);
    }
    if let Some(v) = steady_tol {
        params = params.with_steady_tol(v);
    }

    let run = RunConfig {
        params,
        format: args.format,
        out: args.out,
        threads,
    };
    init_threads(run.threads)?;
    let output = run_engine(&run.params)?;
    let metrics = output.headline();
    let content = match run.format {
        OutputFormat::Json => emit::run_json(&run.params, metrics),
        OutputFormat::Csv => emit::run_csv(metrics),
    };
    emit::write_output(run.out.as_deref(), &content)?;
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), Failure> {
    let mut file = load_config(args.config.as_deref())?;
    let engine = args.engine.or_else(|| file.take_raw("engine"));
    let tu_min = merged(args.tu_min, &mut file, "tu-min")?;
    let tu_max = merged(args.tu_max, &mut file, "tu-max")?;
    let tu_steps = merged(args.tu_steps, &mut file, "tu-steps")?;
    let fast = args.fast || file.take::<bool>("fast")?.unwrap_or(false);
    let full = args.full || file.take::<bool>("full")?.unwrap_or(false);
    let eta_tcs = if args.eta_vs_tc.is_empty() {
        parse_list(file.take_raw("eta-vs-tc"))?
    } else {
        args.eta_vs_tc
    };
    file.finish()?;

    let kind: EngineKind = require(engine, "--engine")?.parse()?;
    let grid = cap_grid(
        require(tu_min, "--tu-min")?,
        require(tu_max, "--tu-max")?,
        require(tu_steps, "--tu-steps")?,
    )?;
    let budget = pick_budget(fast, full, false)?;
    let rows = sweep_tu(kind, &grid, &budget)?;
    let extra = eta_columns(kind, &rows, &eta_tcs)?;
    emit::write_output(args.out.as_deref(), &emit::sweep_csv(&rows, &extra))?;
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<(), Failure> {
    let mut file = load_config(args.config.as_deref())?;
    let tu_min = merged(args.tu_min, &mut file, "tu-min")?.unwrap_or(20.0);
    let tu_max = merged(args.tu_max, &mut file, "tu-max")?.unwrap_or(50.0);
    let tu_steps = merged(args.tu_steps, &mut file, "tu-steps")?.unwrap_or(2);
    let fast = args.fast || file.take::<bool>("fast")?.unwrap_or(false);
    let full = args.full || file.take::<bool>("full")?.unwrap_or(false);
    let names: Vec<String> = if args.engines.is_empty() {
        match file.take_raw("engines") {
            Some(text) => text.split(',').map(|s| s.trim().to_string()).collect(),
            None => Vec::new(),
        }
    } else {
        args.engines
    };
    file.finish()?;

    let kinds: Vec<EngineKind> = if names.is_empty() {
        EngineKind::ALL.to_vec()
    } else {
        names
            .iter()
            .map(|name| name.parse())
            .collect::<Result<_, QheError>>()?
    };
    let grid = cap_grid(tu_min, tu_max, tu_steps)?;
    let budget = pick_budget(fast, full, true)?;
    let report = compare_engine_subset(&kinds, &grid, &budget)?;
    let content = match args.format {
        OutputFormat::Csv => emit::compare_csv(&report),
        OutputFormat::Json => emit::compare_json(&report),
    };
    emit::write_output(args.out.as_deref(), &content)?;
    if report.failures.is_empty() {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: format!("{} ordering expectation(s) violated", report.failures.len()),
        })
    }
}

/// Evenly spaced cap grid, endpoints included; one point when steps is 1.
fn cap_grid(min: f64, max: f64, steps: usize) -> Result<Vec<f64>, Failure> {
    if steps == 0 {
        return Err(Failure::usage("--tu-steps must be at least 1"));
    }
    if !min.is_finite() || !max.is_finite() || min <= 0.0 {
        return Err(Failure::usage(
            "temperature caps must be positive and finite",
        ));
    }
    if steps == 1 {
        if max != min {
            return Err(Failure::usage("--tu-steps 1 requires --tu-min == --tu-max"));
        }
        return Ok(vec![min]);
    }
    if max <= min {
        return Err(Failure::usage("--tu-max must exceed --tu-min"));
    }
    let span = max - min;
    Ok((0..steps)
        .map(|i| min + span * i as f64 / (steps - 1) as f64)
        .collect())
}

/// `--fast`/`--full` selection on top of the command's default budget.
fn pick_budget(fast: bool, full: bool, default_fast: bool) -> Result<SearchBudget, Failure> {
    if fast && full {
        // reachable when one comes from a config file, which clap cannot see
        return Err(Failure::usage("--fast conflicts with --full"));
    }
    let use_fast = if fast {
        true
    } else if full {
        false
    } else {
        default_fast
    };
    Ok(if use_fast {
        SearchBudget::fast()
    } else {
        SearchBudget::default()
    })
}

/// Comma-separated numbers from a config value.
fn parse_list(raw: Option<String>) -> Result<Vec<f64>, Failure> {
    let Some(text) = raw else {
        return Ok(Vec::new());
    };
    text.split(',')
        .map(|entry| {
            let entry = entry.trim();
            entry
                .parse::<f64>()
                .map_err(|e| Failure::usage(format!("bad eta-vs-tc entry '{entry}': {e}")))
        })
        .collect()
}

/// Re-evaluates each row's optimal engine at the requested cold temperatures.
/// Temperatures outside (0, T_H*] support no cycle there: the entry is NaN.
fn eta_columns(
    kind: EngineKind,
    rows: &[SweepRow],
    t_cs: &[f64],
) -> Result<Vec<(String, Vec<f64>)>, Failure> {
    let mut columns = Vec::with_capacity(t_cs.len());
    for &t_c in t_cs {
        let mut column = Vec::with_capacity(rows.len());
        for row in rows {
            column.push(eta_at(kind, row, t_c)?);
        }
        columns.push((emit::eta_column_name(t_c), column));
    }
    Ok(columns)
}

fn eta_at(kind: EngineKind, row: &SweepRow, t_c: f64) -> Result<f64, Failure> {
    if t_c <= 0.0 || t_c.is_nan() || t_c > row.th_star {
        return Ok(f64::NAN);
    }
    let params = match kind {
        EngineKind::SeqOut => EngineParams::seq_out(row.a_star, row.th_star, t_c, row.lambda_star),
        EngineKind::SeqFrag => {
            EngineParams::seq_frag(row.a_star, row.th_star, t_c, row.lambda_star)
        }
        EngineKind::SimOut => {
            EngineParams::sim_out(row.a_star, row.th_star, t_c, row.omega_sb_star, row.t2_star)
        }
        EngineKind::SimFrag => {
            EngineParams::sim_frag(row.a_star, row.th_star, t_c, row.omega_sb_star, row.t2_star)
        }
    };
    Ok(run_engine(&params)?.headline().eta)
}
