//! The two interchange formats — plain text and JSON — round-tripping a DFA
//! and an NFA with an empty transition cell.
//!
//! Run with `cargo run --example file_formats`.

use ergodfa::io::{
    dfa_to_json, parse_dfa, parse_nfa_text, write_dfa_text, write_nfa_text,
};
use ergodfa::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dfa = Dfa::from_rows(0, vec![vec![1, 0], vec![0, 1]], vec![true, false])?;

    let text = write_dfa_text(&dfa);
    println!("text format:\n{text}");
    let json = dfa_to_json(&dfa);
    println!("JSON format:\n{json}");

    // parse_dfa sniffs the format from the payload.
    assert_eq!(parse_dfa(&text)?, dfa);
    assert_eq!(parse_dfa(&json)?, dfa);
    println!("both parse back to the same automaton: ok");

    // NFA cells are comma-lists split by semicolons; empty cells are legal.
    let nfa = Nfa::from_rows(
        1,
        vec![vec![vec![0, 1], vec![]], vec![vec![1], vec![0]]],
        vec![false, true],
    )?;
    let nfa_text = write_nfa_text(&nfa);
    println!("\nNFA text format:\n{nfa_text}");
    assert_eq!(parse_nfa_text(&nfa_text)?, nfa);
    println!("NFA round-trip: ok");
    Ok(())
}
