//! `partcount <count|solve|circuit|spectrum|bench> [flags]`
//!
//! JSON results go to stdout, human-readable notes to stderr. Exit codes: 0
//! success, 1 usage or input error, 2 precision failure, 3 no partition
//! (`solve` only).

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use partcount_core::emulator::{Emulator, DEFAULT_QUBIT_BUDGET};
use partcount_core::spectral::{observation_bound, spectrum_scan, zero_freq_estimate};
use partcount_core::{extract_partition, CountResult, Instance, Method};
use serde_json::json;

use crate::backend::{count, CountMethod};
use crate::bench::{self, BenchConfig};
use crate::io::{read_instance, Format};
use crate::{circuit_text, csv_out};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECISION: i32 = 2;
pub const EXIT_NO_SOLUTION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "partcount", version, about = "Count and extract solutions of the number partitioning problem")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count solutions with one backend.
    Count {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long, value_enum, default_value = "formula")]
        method: CountMethod,
    },
    /// Extract one partition by fixing spins one at a time.
    Solve {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long, value_enum, default_value = "dp")]
        method: SolveMethod,
    },
    /// Print the emulated circuit.
    Circuit {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long, value_enum, default_value = "physical")]
        mode: Mode,
        /// Emit the evolution as one DIAG_EVOLUTION gate instead of phase gates.
        #[arg(long)]
        direct: bool,
    },
    /// Sample the correlation function and write its spectrum.
    Spectrum {
        #[command(flatten)]
        input: InstanceArgs,
        /// Observation time; defaults to 2^n π.
        #[arg(long = "t-max")]
        t_max: Option<f64>,
        #[arg(long = "n-t", default_value_t = 4096)]
        n_t: usize,
        /// Defaults to max a_j + 1.
        #[arg(long = "omega-max")]
        omega_max: Option<f64>,
        #[arg(long = "n-omega", default_value_t = 201)]
        n_omega: usize,
        /// Samples for the zero-frequency count; defaults to M.
        #[arg(long = "m-prime")]
        m_prime: Option<u64>,
        /// Output prefix: writes <out>_samples.csv and <out>_scan.csv.
        #[arg(long, default_value = "spectrum")]
        out: PathBuf,
    },
    /// Random-instance sweep; writes a CSV and prints a JSON summary.
    Bench {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the seed in the config.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        method: Option<CountMethod>,
        /// Write elapsed_ns as 0 so the CSV depends only on the seed.
        #[arg(long)]
        omit_timing: bool,
        #[arg(long = "budget-qubits", default_value_t = DEFAULT_QUBIT_BUDGET)]
        budget_qubits: usize,
    },
}

#[derive(Debug, Args)]
struct InstanceArgs {
    instance: PathBuf,
    /// Defaults to json for `.json` files, plain otherwise.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Cardinality difference |A_1| − |A_2|; overrides the file.
    #[arg(long, allow_negative_numbers = true)]
    constraint: Option<i64>,
    #[arg(long = "budget-qubits", default_value_t = DEFAULT_QUBIT_BUDGET)]
    budget_qubits: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SolveMethod {
    Bruteforce,
    Formula,
    Dp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Amplitude,
    Physical,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<partcount_core::Error> for Failure {
    fn from(e: partcount_core::Error) -> Self {
        let code = match e {
            partcount_core::Error::Precision { .. } => EXIT_PRECISION,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command) -> CmdResult {
    match command {
        Command::Count { input, method } => cmd_count(&input, method),
        Command::Solve { input, method } => cmd_solve(&input, method),
        Command::Circuit { input, mode, direct } => cmd_circuit(&input, mode, direct),
        Command::Spectrum {
            input,
            t_max,
            n_t,
            omega_max,
            n_omega,
            m_prime,
            out,
        } => cmd_spectrum(&input, t_max, n_t, omega_max, n_omega, m_prime, &out),
        Command::Bench {
            config,
            out,
            seed,
            method,
            omit_timing,
            budget_qubits,
        } => cmd_bench(&config, &out, seed, method, !omit_timing, budget_qubits),
    }
}

fn load(input: &InstanceArgs) -> Result<Instance, Failure> {
    let inst = read_instance(&input.instance, input.format).map_err(Failure::usage)?;
    match input.constraint {
        Some(c) => Ok(inst.reconstrained(Some(c))?),
        None => Ok(inst),
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{value}");
}

fn cmd_count(input: &InstanceArgs, method: CountMethod) -> CmdResult {
    let inst = load(input)?;
    let emulator = Emulator::with_budget(input.budget_qubits);
    let start = Instant::now();
    let outcome = count(&inst, method, &emulator)?;
    let elapsed = start.elapsed().as_nanos() as u64;
    let mut out = json!({
        "n_s": outcome.result.count,
        "method": outcome.result.method.as_str(),
        "residual": outcome.result.residual,
        "elapsed_ns": elapsed,
    });
    if let Some(e) = outcome.expectation {
        out["expectation"] = e.into();
    }
    eprintln!("{} solution(s) by {}", outcome.result.count, outcome.result.method);
    print_json(&out);
    Ok(EXIT_OK)
}

fn cmd_solve(input: &InstanceArgs, method: SolveMethod) -> CmdResult {
    let inst = load(input)?;
    let backend = match method {
        SolveMethod::Bruteforce => CountMethod::Bruteforce,
        SolveMethod::Formula => CountMethod::Formula,
        SolveMethod::Dp => CountMethod::Dp,
    }
    .restricted()
    .expect("restricted backend");
    let trace = extract_partition(&inst, backend)?;
    let steps: Vec<_> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "position": s.position,
                "guess": s.guess.sign(),
                "observed": s.observed,
                "flipped": s.flipped,
            })
        })
        .collect();
    let mut out = json!({
        "n_s": trace.total,
        "trace": { "steps": steps, "result": trace.result.as_ref().map(|c| c.signs()) },
    });
    match &trace.result {
        Some(cfg) => {
            let (first, second) = cfg.split(inst.values());
            out["spins"] = cfg.signs().into();
            out["A_1"] = first.clone().into();
            out["A_2"] = second.clone().into();
            eprintln!("A_1 = {first:?}, A_2 = {second:?}");
            print_json(&out);
            Ok(EXIT_OK)
        }
        None => {
            out["spins"] = serde_json::Value::Null;
            eprintln!("no partition exists");
            print_json(&out);
            Ok(EXIT_NO_SOLUTION)
        }
    }
}

fn cmd_circuit(input: &InstanceArgs, mode: Mode, direct: bool) -> CmdResult {
    let inst = load(input)?;
    let (layout, circuit) = Emulator::circuit(&inst, mode == Mode::Physical, !direct)?;
    if layout.total_qubits() > input.budget_qubits {
        return Err(partcount_core::Error::QubitBudget {
            needed: layout.total_qubits(),
            budget: input.budget_qubits,
        }
        .into());
    }
    print!("{}", circuit_text::emit(&layout, &circuit));
    Ok(EXIT_OK)
}

fn cmd_spectrum(
    input: &InstanceArgs,
    t_max: Option<f64>,
    n_t: usize,
    omega_max: Option<f64>,
    n_omega: usize,
    m_prime: Option<u64>,
    out: &Path,
) -> CmdResult {
    let inst = load(input)?;
    if inst.constraint().is_some() {
        return Err(Failure::usage("spectrum does not take a constraint"));
    }
    let t_max = t_max.unwrap_or_else(|| observation_bound(inst.len()));
    let omega_max = omega_max.unwrap_or_else(|| *inst.values().iter().max().expect("non-empty") as f64 + 1.0);
    let spectrum = spectrum_scan(&inst, omega_max, n_omega, t_max, n_t)?;
    let m_prime = m_prime.unwrap_or(inst.params().modulus);
    let zero = zero_freq_estimate(&inst, m_prime)?;
    let inferred = CountResult::from_estimate(zero * 2f64.powi(inst.len() as i32), 0.0, Method::Spectral)?;

    let samples_path = suffixed(out, "_samples.csv");
    let scan_path = suffixed(out, "_scan.csv");
    let write = |path: &Path, f: &dyn Fn(BufWriter<File>) -> csv::Result<()>| -> Result<(), Failure> {
        let file = File::create(path).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
        f(BufWriter::new(file)).map_err(Failure::usage)
    };
    write(&samples_path, &|w| csv_out::write_samples(w, &spectrum))?;
    write(&scan_path, &|w| csv_out::write_scan(w, &spectrum))?;

    eprintln!("wrote {} and {}", samples_path.display(), scan_path.display());
    print_json(&json!({
        "inferred_n_s": inferred.count,
        "residual": inferred.residual,
        "zero_freq": zero,
        "m_prime": m_prime,
        "observation_bound": observation_bound(inst.len()),
        "t_max": t_max,
        "samples": samples_path.display().to_string(),
        "scan": scan_path.display().to_string(),
    }));
    Ok(EXIT_OK)
}

fn suffixed(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn cmd_bench(
    config_path: &Path,
    out: &Path,
    seed: Option<u64>,
    method: Option<CountMethod>,
    timing: bool,
    budget_qubits: usize,
) -> CmdResult {
    let text = std::fs::read_to_string(config_path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", config_path.display())))?;
    let mut config: BenchConfig =
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("invalid bench config: {e}")))?;
    if let Some(seed) = seed {
        config.seed = seed;
    }
    if let Some(method) = method {
        config.backend = method;
    }
    let records = bench::run(&config, &Emulator::with_budget(budget_qubits), timing).map_err(|e| match e {
        bench::BenchError::Count { source, .. } => Failure::from(source),
        other => Failure::usage(other),
    })?;
    let file = File::create(out).map_err(|e| Failure::usage(format!("cannot write {}: {e}", out.display())))?;
    let mut w = BufWriter::new(file);
    csv_out::write_bench(&mut w, &records).map_err(Failure::usage)?;
    w.flush().map_err(Failure::usage)?;
    let summary = bench::summarize(&records);
    for cell in &summary {
        eprintln!(
            "n={:>2} b={:>2}: solvable {:.2}, median {} ns",
            cell.n, cell.b, cell.solvable_fraction, cell.median_elapsed_ns
        );
    }
    print_json(&json!({ "seed": config.seed, "cells": summary }));
    Ok(EXIT_OK)
}
