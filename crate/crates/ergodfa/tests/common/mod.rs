//! Independent oracles for cross-checking the library: everything here is
//! implemented definitionally (pairwise reachability, partition search, word
//! enumeration) with none of the library's algorithmic shortcuts, so
//! agreement is meaningful evidence.

#![allow(dead_code)]

use ergodfa::automata::{Automaton, Dfa, State};

/// Forward-reachability matrix by plain BFS from every state (arcs over all
/// symbols; a state always reaches itself).
fn reach_matrix<A: Automaton>(a: &A) -> Vec<Vec<bool>> {
    let n = a.state_count();
    let mut reach = vec![vec![false; n]; n];
    for start in 0..n {
        let row = &mut reach[start];
        row[start] = true;
        let mut queue = vec![start];
        while let Some(q) = queue.pop() {
            for symbol in 0..a.alphabet_size() {
                for &succ in a.successors(q, symbol) {
                    if !row[succ] {
                        row[succ] = true;
                        queue.push(succ);
                    }
                }
            }
        }
    }
    reach
}

/// Communicating classes as mutual-reachability equivalence classes, sorted
/// by smallest member; no SCC algorithm involved.
pub fn naive_classes<A: Automaton>(a: &A) -> Vec<Vec<State>> {
    let n = a.state_count();
    let reach = reach_matrix(a);
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for q in 0..n {
        if assigned[q] {
            continue;
        }
        let class: Vec<State> =
            (0..n).filter(|&p| reach[q][p] && reach[p][q]).collect();
        for &p in &class {
            assigned[p] = true;
        }
        classes.push(class);
    }
    classes
}

/// No arc leaves the class.
pub fn naive_is_closed<A: Automaton>(a: &A, class: &[State]) -> bool {
    class.iter().all(|&q| {
        (0..a.alphabet_size())
            .all(|symbol| a.successors(q, symbol).iter().all(|s| class.contains(s)))
    })
}

/// Period of a closed class by definitional partition search: the largest k
/// such that the class splits into k non-empty groups cyclically advanced by
/// every one-symbol transition. Checked by residue-coloring consistency for
/// every k from |class| down to 1 — deliberately no gcd shortcut.
pub fn naive_period<A: Automaton>(a: &A, class: &[State]) -> usize {
    assert!(naive_is_closed(a, class), "period oracle needs a closed class");
    'outer: for k in (1..=class.len()).rev() {
        let mut color: Vec<Option<usize>> = vec![None; a.state_count()];
        color[class[0]] = Some(0);
        let mut queue = vec![class[0]];
        while let Some(q) = queue.pop() {
            let c = color[q].unwrap();
            for symbol in 0..a.alphabet_size() {
                for &succ in a.successors(q, symbol) {
                    let expected = (c + 1) % k;
                    match color[succ] {
                        None => {
                            color[succ] = Some(expected);
                            queue.push(succ);
                        }
                        Some(found) if found != expected => continue 'outer,
                        Some(_) => {}
                    }
                }
            }
        }
        // Consistent k-coloring of a strongly connected closed class: k is
        // the period (all k residues are hit along any long closed walk).
        return k;
    }
    unreachable!("k = 1 is always consistent");
}

/// All closed classes with their definitional periods, sorted by smallest
/// member.
pub fn naive_closed_classes_with_periods<A: Automaton>(a: &A) -> Vec<(Vec<State>, usize)> {
    naive_classes(a)
        .into_iter()
        .filter(|c| naive_is_closed(a, c))
        .map(|c| {
            let p = naive_period(a, &c);
            (c, p)
        })
        .collect()
}

/// Exactly one closed class and its period is 1, straight from the
/// definitions.
pub fn naive_is_ergodic<A: Automaton>(a: &A) -> bool {
    let closed = naive_closed_classes_with_periods(a);
    closed.len() == 1 && closed[0].1 == 1
}

/// Language equality over every word of length at most `max_len`, by word
/// enumeration in mixed-radix order.
pub fn languages_agree_up_to(a: &Dfa, b: &Dfa, max_len: usize) -> bool {
    assert_eq!(a.alphabet_size(), b.alphabet_size());
    let r = a.alphabet_size();
    let mut word = Vec::new();
    loop {
        if a.accepts(&word).unwrap() != b.accepts(&word).unwrap() {
            return false;
        }
        // Next word in length-then-lex order.
        let mut i = word.len();
        loop {
            if i == 0 {
                word = vec![0; word.len() + 1];
                break;
            }
            i -= 1;
            word[i] += 1;
            if word[i] < r {
                break;
            }
            word[i] = 0;
        }
        if word.len() > max_len {
            return true;
        }
    }
}

/// Every pair of states recognizes different residual languages (checked by
/// word enumeration up to `max_len`).
pub fn all_states_distinguishable(a: &Dfa, max_len: usize) -> bool {
    let n = a.state_count();
    let r = a.alphabet_size();
    for p in 0..n {
        'pair: for q in p + 1..n {
            let mut word: Vec<usize> = Vec::new();
            loop {
                let from_p = residual_accepts(a, p, &word);
                let from_q = residual_accepts(a, q, &word);
                if from_p != from_q {
                    continue 'pair;
                }
                let mut i = word.len();
                loop {
                    if i == 0 {
                        word = vec![0; word.len() + 1];
                        break;
                    }
                    i -= 1;
                    word[i] += 1;
                    if word[i] < r {
                        break;
                    }
                    word[i] = 0;
                }
                if word.len() > max_len {
                    return false; // p and q look identical on all short words
                }
            }
        }
    }
    true
}

fn residual_accepts(a: &Dfa, from: State, word: &[usize]) -> bool {
    let mut q = from;
    for &symbol in word {
        q = a.transition(q, symbol);
    }
    a.terminates(q)
}
