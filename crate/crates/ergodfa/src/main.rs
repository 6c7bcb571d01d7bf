//! Thin command-line front end over the library. Every subcommand is a
//! direct call into a public function; JSON is the canonical output format,
//! with the plain text automaton format used when an output path ends in
//! `.txt`. Exit code 0 means every enabled check passed.

use std::error::Error;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use ergodfa::automata::Dfa;
use ergodfa::bounds::{brute_force_census, emk_bound, emk_bound_ln, grusho_constant, truncate3};
use ergodfa::experiments::{
    emit_report, evaluate_campaign, render_report, run_bound_suite, run_campaign,
    ExperimentConfig,
};
use ergodfa::io::{dfa_to_json, read_dfa_file, write_dfa_text};
use ergodfa::markov::{
    simulate_walk, stationary, transition_matrix, MarkovError, DEFAULT_MAX_ITERS,
    DEFAULT_TOLERANCE,
};
use ergodfa::minimization::minimize;
use ergodfa::randgen::{sample_dfa, SampleSpec};

#[derive(Parser)]
#[command(name = "ergodfa", version, about = "Finite-automata structure laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a uniform random DFA and write it to a file.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        trial: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Minimize a DFA; optionally dump the elementary-merge trace.
    Minimize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Walk the automaton's chain and compare against the stationary
    /// distribution.
    Walk {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        steps: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Exact census of all transition structures on n states (tiny n only).
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a Monte Carlo campaign from a JSON config.
    Campaign {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run every analytic check (Grusho table, lemma grid, census
    /// domination, ratio scan).
    BoundsSuite,
    /// Individual analytic bounds.
    Bounds {
        #[command(subcommand)]
        command: BoundsCommand,
    },
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// The positive solution of c = 1 − e^{−cr}.
    Grusho {
        #[arg(long)]
        r: usize,
    },
    /// Upper bound on the probability of a size-m closed class with period
    /// divisible by k.
    Emk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
    },
    /// Same enumeration as the top-level census command.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_dfa(path: &Path, dfa: &Dfa) -> Result<(), Box<dyn Error>> {
    let rendered = if path.extension().is_some_and(|e| e == "txt") {
        write_dfa_text(dfa)
    } else {
        dfa_to_json(dfa)
    };
    std::fs::write(path, rendered)?;
    Ok(())
}

fn emit_json(value: &impl serde::Serialize, out: Option<&Path>) -> Result<(), Box<dyn Error>> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run_census(n: usize, r: usize, out: Option<&Path>) -> Result<(), Box<dyn Error>> {
    emit_json(&brute_force_census(n, r)?, out)
}

fn real_main(cli: Cli) -> Result<(), Box<dyn Error>> {
    match cli.command {
        Command::Sample { n, r, seed, trial, out } => {
            let dfa =
                sample_dfa(&SampleSpec { n, r, master_seed: seed, trial_index: trial })?;
            write_dfa(&out, &dfa)
        }
        Command::Minimize { input, out, trace } => {
            let dfa = read_dfa_file(&input)?;
            let minimized = minimize(&dfa);
            write_dfa(&out, &minimized.dfa)?;
            if let Some(trace_path) = trace {
                emit_json(&minimized.trace, Some(&trace_path))?;
            }
            Ok(())
        }
        Command::Walk { input, steps, seed } => {
            let dfa = read_dfa_file(&input)?;
            let walk = simulate_walk(&dfa, seed, steps);
            let matrix = transition_matrix(&dfa)?;
            let (tv, stationary_error) =
                match stationary(&matrix, DEFAULT_TOLERANCE, DEFAULT_MAX_ITERS) {
                    Ok(pi) => (Some(walk.frequencies().total_variation(&pi)), None),
                    Err(e @ MarkovError::NotConverged { .. }) => (None, Some(e.to_string())),
                    Err(e) => return Err(e.into()),
                };
            emit_json(
                &json!({
                    "steps": steps,
                    "final_state": walk.final_state,
                    "frequencies": walk.frequencies(),
                    "tv_to_stationary": tv,
                    "stationary_error": stationary_error,
                }),
                None,
            )
        }
        Command::Census { n, r, out } => run_census(n, r, out.as_deref()),
        Command::Campaign { config } => {
            let cfg: ExperimentConfig =
                serde_json::from_str(&std::fs::read_to_string(&config)?)?;
            let report = run_campaign(&cfg)?;
            match &cfg.output_path {
                Some(path) => emit_report(&report, cfg.format, path)?,
                None => print!("{}", render_report(&report, cfg.format)?),
            }
            evaluate_campaign(&report)?;
            Ok(())
        }
        Command::BoundsSuite => emit_json(&run_bound_suite()?, None),
        Command::Bounds { command } => match command {
            BoundsCommand::Grusho { r } => {
                let value = grusho_constant(r)?;
                emit_json(&json!({ "r": r, "value": value, "truncated": truncate3(value) }), None)
            }
            BoundsCommand::Emk { n, m, k, r } => emit_json(
                &json!({
                    "n": n, "m": m, "k": k, "r": r,
                    "bound": emk_bound(n, m, k, r)?,
                    "ln_bound": emk_bound_ln(n, m, k, r)?,
                }),
                None,
            ),
            BoundsCommand::Census { n, r, out } => run_census(n, r, out.as_deref()),
        },
    }
}

fn main() -> ExitCode {
    match real_main(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
