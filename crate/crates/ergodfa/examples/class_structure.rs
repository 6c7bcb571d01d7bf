//! Communicating-class decomposition of a DFA: classes, closedness,
//! periods, and the recurrent set, plus the JSON form.
//!
//! Run with `cargo run --example class_structure`.

use ergodfa::automata::{Automaton, Dfa};
use ergodfa::set::StateSet;
use ergodfa::structure::{communicating_classes, period_of_class};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // States 0-1 are a transient feeder; 2-4 form a closed 3-cycle whose
    // period collapses to 1 via the chord at state 4.
    let dfa = Dfa::from_rows(
        0,
        vec![
            vec![1, 2],
            vec![0, 3],
            vec![3, 3],
            vec![4, 4],
            vec![2, 3],
        ],
        vec![false, false, true, false, false],
    )?;

    let d = communicating_classes(&dfa)?;
    println!("classes:");
    for (idx, class) in d.classes().iter().enumerate() {
        println!(
            "  {idx}: {class:?} closed={} period={:?}",
            d.is_closed(idx),
            d.period(idx)
        );
    }
    println!("recurrent states: {:?}", d.recurrent().to_vec());
    println!("ergodic: {}", d.is_ergodic());
    println!("largest closed class: {:?}", d.largest_closed_class());

    // period_of_class recomputes the period of an explicit closed set.
    let members = d.class(d.largest_closed_class().unwrap().0);
    let core = StateSet::from_states(dfa.state_count(), members.iter().copied());
    println!("period of {members:?}: {}", period_of_class(&dfa, &core)?);

    println!("\nas JSON: {}", serde_json::to_string_pretty(&d)?);
    Ok(())
}
