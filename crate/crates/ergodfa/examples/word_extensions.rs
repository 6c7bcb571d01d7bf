//! Transition extensions on a small NFA: running words from state sets,
//! one-step images, forward closures, and the acceptance function.
//!
//! Run with `cargo run --example word_extensions`.

use ergodfa::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Three states over {a=0, b=1}; state 2 terminates. The a-transitions
    // branch from state 0, b-transitions funnel everything into state 2,
    // except that state 1 has no b-successor at all.
    let nfa = Nfa::from_rows(
        0,
        vec![
            vec![vec![0, 1], vec![2]],
            vec![vec![2], vec![]],
            vec![vec![2], vec![2]],
        ],
        vec![false, false, true],
    )?;

    let start = StateSet::singleton(nfa.state_count(), nfa.initial_state());
    for word in [&[][..], &[0], &[0, 0], &[0, 1], &[1, 1, 0]] {
        let landed = nfa.read_word(&start, word)?;
        println!(
            "read {word:?} from {{0}} -> {landed:?} (accepts: {})",
            nfa.accepts(word)?
        );
    }

    println!("one_step({{0}})        = {:?}", nfa.one_step(&start)?);
    println!("forward_closure({{0}}) = {:?}", nfa.forward_closure(&start)?);
    println!("forward_closure({{1}}) = {:?}", {
        let s1 = StateSet::singleton(3, 1);
        nfa.forward_closure(&s1)?
    });

    // The closure is a fixed point of one_step once the start is included.
    let closure = nfa.forward_closure(&start)?;
    let mut step = nfa.one_step(&closure)?;
    step.union_with(&closure);
    assert_eq!(step, closure);
    println!("closure is one_step-stable: ok");
    Ok(())
}
