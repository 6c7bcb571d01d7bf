//! The random walk induced by an automaton: transition matrix, stationary
//! distribution by power iteration, and a simulated walk tracking it.
//!
//! Run with `cargo run --example stationary_walk`.

use ergodfa::markov::{
    simulate_walk, stationary, transition_matrix, Distribution, MarkovError, DEFAULT_MAX_ITERS,
    DEFAULT_TOLERANCE,
};
use ergodfa::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dfa = sample_dfa(&SampleSpec { n: 30, r: 2, master_seed: 11, trial_index: 0 })?;
    let matrix = transition_matrix(&dfa)?;

    let pi = stationary(&matrix, DEFAULT_TOLERANCE, DEFAULT_MAX_ITERS)?;
    let (_, d) = is_ergodic_structure(&dfa)?;
    println!("stationary mass on transient states: {:.2e}", pi.mass_on(d.transient().iter()));

    let walk = simulate_walk(&dfa, 2024, 1_000_000);
    println!(
        "10^6-step walk: TV(empirical, stationary) = {:.5}",
        walk.frequencies().total_variation(&pi)
    );

    // Ergodicity in action: one-hot starts all converge to the same limit.
    let from_zero =
        ergodfa::markov::stationary_from(&matrix, &Distribution::point(30, 0), 1e-10, 100_000)?;
    println!("TV(limit from uniform, limit from state 0) = {:.2e}", pi.total_variation(&from_zero));

    // A pure 2-cycle has no limit; power iteration reports that rather than
    // returning something wrong.
    let cycle = Dfa::from_rows(0, vec![vec![1, 1], vec![0, 0]], vec![false, false])?;
    match stationary(&transition_matrix(&cycle)?, 1e-10, 10_000) {
        Err(MarkovError::NotConverged { .. }) => println!("2-cycle: NotConverged (expected)"),
        other => println!("2-cycle: unexpected result {other:?}"),
    }
    Ok(())
}
