//! Minimization as a chain of elementary merges: trim, partition into
//! Nerode classes, then collapse each block two states at a time, keeping
//! every intermediate automaton.
//!
//! Run with `cargo run --example minimize_trace`.

use ergodfa::automata::Automaton;
use ergodfa::minimization::{are_equivalent, minimize};
use ergodfa::prelude::Dfa;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Recognizes words whose 0-count is even. States {0,2,4} play the same
    // role, as do {1,3,5}; state 6 is unreachable garbage.
    let dfa = Dfa::from_rows(
        0,
        vec![
            vec![1, 2],
            vec![0, 3],
            vec![3, 4],
            vec![2, 5],
            vec![5, 0],
            vec![4, 1],
            vec![6, 6],
        ],
        vec![true, false, true, false, true, false, false],
    )?;

    let minimized = minimize(&dfa);
    println!(
        "{} states -> {} states in {} elementary merges",
        dfa.state_count(),
        minimized.dfa.state_count(),
        minimized.trace.merge_count()
    );
    for (i, snapshot) in minimized.trace.snapshots().enumerate() {
        println!("  snapshot {i}: {} states", snapshot.state_count());
    }
    println!(
        "trim dropped {} unreachable state(s)",
        minimized.trim_map.iter().filter(|m| m.is_none()).count()
    );

    let psi = minimized.trace.composed_map();
    println!(
        "composed merge map sends trimmed state 4 to {}",
        psi.image(minimized.trim_map[4].unwrap())
    );

    assert!(are_equivalent(&dfa, &minimized.dfa)?);
    println!("language preserved: ok");

    // A second pass has nothing left to merge.
    let again = minimize(&minimized.dfa);
    assert!(again.trace.is_empty());
    println!("minimize is idempotent: ok");
    Ok(())
}
