//! DFA minimization as an explicit sequence of elementary state merges.
//!
//! The pipeline: drop unreachable states ([`reachable_trim`]), compute the
//! coarsest termination-respecting congruence ([`myhill_nerode_classes`]) by
//! partition refinement, then collapse each block one elementary merge at a
//! time, recording every intermediate automaton and merge map in a
//! [`MergeTrace`]. Intermediate quotients are NFAs in general; the final one
//! is again deterministic and accepts the same language, with the minimum
//! number of states.
//!
//! [`are_equivalent`] decides language equality directly on the product
//! automaton and is deliberately independent of the minimization path, so the
//! two can check each other.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::collections::VecDeque;
use thiserror::Error;

use crate::automata::{apply_merge, Automaton, Dfa, MergeMap, Nfa, State};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MinimizeError {
    #[error("automaton has {unreachable} unreachable states; trim it first")]
    NotTrimmed { unreachable: usize },
    #[error("alphabet sizes differ: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("state {state} out of range for {n} states")]
    StateOutOfRange { state: usize, n: usize },
}

/// Restriction of `a` to the states reachable from its initial state.
///
/// Returns the trimmed DFA (states renumbered densely, preserving ascending
/// id order) and the old-to-new renumbering (`None` for dropped states).
pub fn reachable_trim(a: &Dfa) -> (Dfa, Vec<Option<State>>) {
    let n = a.state_count();
    let reachable = a.reachable_states();
    let mut old_to_new = vec![None; n];
    let mut kept = 0;
    for q in &reachable {
        old_to_new[q] = Some(kept);
        kept += 1;
    }
    let r = a.alphabet_size();
    let mut table = Vec::with_capacity(kept * r);
    let mut termination = Vec::with_capacity(kept);
    for q in &reachable {
        for symbol in 0..r {
            let succ = a.transition(q, symbol);
            table.push(old_to_new[succ].expect("successor of a reachable state is reachable"));
        }
        termination.push(a.terminates(q));
    }
    let initial = old_to_new[a.initial_state()].expect("initial state is reachable");
    let trimmed = Dfa::new(kept, r, initial, table, termination)
        .expect("trimmed table is well-formed by construction");
    (trimmed, old_to_new)
}

/// Partition of a trimmed DFA's states into language-equivalence classes.
///
/// Blocks are numbered in ascending order of their smallest member; members
/// within a block are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NerodePartition {
    blocks: Vec<Vec<State>>,
    block_of: Vec<usize>,
}

impl NerodePartition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<State>] {
        &self.blocks
    }

    pub fn block_of(&self, q: State) -> usize {
        self.block_of[q]
    }
}

/// Coarsest partition refinement: start from the termination split and split
/// blocks by successor-block signatures until stable.
///
/// Requires a trimmed automaton — states unreachable from the initial state
/// have no Myhill–Nerode meaning for the accepted language.
pub fn myhill_nerode_classes(a: &Dfa) -> Result<NerodePartition, MinimizeError> {
    let n = a.state_count();
    let reachable = a.reachable_states();
    if reachable.len() != n {
        return Err(MinimizeError::NotTrimmed { unreachable: n - reachable.len() });
    }
    let r = a.alphabet_size();
    let mut block_of: Vec<usize> = (0..n).map(|q| a.terminates(q) as usize).collect();
    let mut block_count = block_of.iter().max().copied().unwrap_or(0) + 1;
    loop {
        // Signature of q: its own block plus the blocks of its successors.
        let mut groups: BTreeMap<Vec<usize>, Vec<State>> = BTreeMap::new();
        for q in 0..n {
            let mut sig = Vec::with_capacity(r + 1);
            sig.push(block_of[q]);
            for symbol in 0..r {
                sig.push(block_of[a.transition(q, symbol)]);
            }
            groups.entry(sig).or_default().push(q);
        }
        if groups.len() == block_count {
            break;
        }
        block_count = groups.len();
        for (next_id, members) in groups.values().enumerate() {
            for &q in members {
                block_of[q] = next_id;
            }
        }
    }

    // Canonical numbering: blocks ordered by smallest member.
    let mut blocks: Vec<Vec<State>> = vec![Vec::new(); block_count];
    for q in 0..n {
        blocks[block_of[q]].push(q);
    }
    blocks.sort_by_key(|b| b[0]);
    let mut block_of = vec![0; n];
    for (idx, block) in blocks.iter().enumerate() {
        for &q in block {
            block_of[q] = idx;
        }
    }
    Ok(NerodePartition { blocks, block_of })
}

/// One elementary merge: the applied map and the automaton it produced.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeStep {
    pub map: MergeMap,
    pub result: Nfa,
}

/// Audit trail of a minimization run: the trimmed input followed by one
/// snapshot per elementary merge. Consecutive snapshots differ by exactly one
/// merge (state count drops by one); the last snapshot is deterministic again.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeTrace {
    initial: Nfa,
    steps: Vec<MergeStep>,
}

impl MergeTrace {
    /// The trimmed automaton the merges started from.
    pub fn initial(&self) -> &Nfa {
        &self.initial
    }

    pub fn steps(&self) -> &[MergeStep] {
        &self.steps
    }

    pub fn merge_count(&self) -> usize {
        self.steps.len()
    }

    /// No merges were needed.
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// All snapshots in order, starting with the trimmed input.
    pub fn snapshots(&self) -> impl Iterator<Item = &Nfa> {
        std::iter::once(&self.initial).chain(self.steps.iter().map(|s| &s.result))
    }

    pub fn final_nfa(&self) -> &Nfa {
        self.steps.last().map_or(&self.initial, |s| &s.result)
    }

    /// Composition of all merge maps: trimmed-state id to final-state id.
    pub fn composed_map(&self) -> MergeMap {
        let mut acc = MergeMap::identity(self.initial.state_count());
        for step in &self.steps {
            acc = acc.then(&step.map);
        }
        acc
    }
}

impl Serialize for MergeTrace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let snapshots: Vec<crate::io::NfaJson> =
            self.snapshots().map(crate::io::NfaJson::from).collect();
        let maps: Vec<&MergeMap> = self.steps.iter().map(|s| &s.map).collect();
        let mut st = serializer.serialize_struct("MergeTrace", 2)?;
        st.serialize_field("snapshots", &snapshots)?;
        st.serialize_field("merge_maps", &maps)?;
        st.end()
    }
}

/// Result of [`minimize`]: the minimal DFA plus the full merge trace and the
/// renumbering applied by the initial trim.
#[derive(Debug, Clone)]
pub struct Minimized {
    pub dfa: Dfa,
    pub trace: MergeTrace,
    pub trim_map: Vec<Option<State>>,
}

/// Minimizes a DFA by trimming, computing the Nerode partition, and then
/// collapsing every block with elementary merges (always the two smallest
/// surviving ids first). Output states end up numbered in ascending order of
/// each block's smallest trimmed-state id.
pub fn minimize(a: &Dfa) -> Minimized {
    let (trimmed, trim_map) = reachable_trim(a);
    let partition =
        myhill_nerode_classes(&trimmed).expect("trimmed automaton has no unreachable states");

    let mut current = trimmed.to_nfa();
    let mut blocks: Vec<Vec<State>> = partition.blocks().to_vec();
    let mut steps = Vec::new();
    for i in 0..blocks.len() {
        while blocks[i].len() > 1 {
            // Blocks stay sorted: merge the two smallest ids, keep the smaller.
            let (kept, absorbed) = (blocks[i][0], blocks[i][1]);
            let psi = MergeMap::elementary(current.state_count(), kept, absorbed);
            let next = apply_merge(&current, &psi)
                .expect("states in one Nerode block share a termination bit");
            for block in blocks.iter_mut() {
                for q in block.iter_mut() {
                    *q = psi.image(*q);
                }
                block.dedup();
            }
            steps.push(MergeStep { map: psi, result: next.clone() });
            current = next;
        }
    }

    let dfa = Dfa::try_from(&current)
        .expect("collapsing every Nerode block yields a deterministic automaton");
    Minimized { dfa, trace: MergeTrace { initial: trimmed.to_nfa(), steps }, trim_map }
}

/// Language equality of two DFAs over the same alphabet, decided by searching
/// the product automaton for a pair of states disagreeing on termination.
pub fn are_equivalent(a: &Dfa, b: &Dfa) -> Result<bool, MinimizeError> {
    are_equivalent_from(a, a.initial_state(), b, b.initial_state())
}

/// Language equality of the languages recognized from `qa` in `a` and from
/// `qb` in `b`.
pub fn are_equivalent_from(
    a: &Dfa,
    qa: State,
    b: &Dfa,
    qb: State,
) -> Result<bool, MinimizeError> {
    if a.alphabet_size() != b.alphabet_size() {
        return Err(MinimizeError::AlphabetMismatch {
            left: a.alphabet_size(),
            right: b.alphabet_size(),
        });
    }
    if qa >= a.state_count() {
        return Err(MinimizeError::StateOutOfRange { state: qa, n: a.state_count() });
    }
    if qb >= b.state_count() {
        return Err(MinimizeError::StateOutOfRange { state: qb, n: b.state_count() });
    }
    let (na, nb, r) = (a.state_count(), b.state_count(), a.alphabet_size());
    let mut visited = vec![false; na * nb];
    let mut queue = VecDeque::from([(qa, qb)]);
    visited[qa * nb + qb] = true;
    while let Some((x, y)) = queue.pop_front() {
        if a.terminates(x) != b.terminates(y) {
            return Ok(false);
        }
        for symbol in 0..r {
            let pair = (a.transition(x, symbol), b.transition(y, symbol));
            if !visited[pair.0 * nb + pair.1] {
                visited[pair.0 * nb + pair.1] = true;
                queue.push_back(pair);
            }
        }
    }
    Ok(true)
}

/// Canonical renumbering of the reachable part: breadth-first discovery order
/// from the initial state, successors visited in symbol order. Two DFAs are
/// isomorphic on their reachable parts iff their canonical forms are equal.
pub fn canonical_form(a: &Dfa) -> Dfa {
    let (n, r) = (a.state_count(), a.alphabet_size());
    let mut order = vec![None; n];
    let mut discovered = Vec::new();
    order[a.initial_state()] = Some(0);
    discovered.push(a.initial_state());
    let mut head = 0;
    while head < discovered.len() {
        let q = discovered[head];
        head += 1;
        for symbol in 0..r {
            let succ = a.transition(q, symbol);
            if order[succ].is_none() {
                order[succ] = Some(discovered.len());
                discovered.push(succ);
            }
        }
    }
    let m = discovered.len();
    let mut table = Vec::with_capacity(m * r);
    let mut termination = Vec::with_capacity(m);
    for &q in &discovered {
        for symbol in 0..r {
            table.push(order[a.transition(q, symbol)].expect("successor was discovered"));
        }
        termination.push(a.terminates(q));
    }
    Dfa::new(m, r, 0, table, termination).expect("canonical table is well-formed")
}

pub fn are_isomorphic(a: &Dfa, b: &Dfa) -> bool {
    a.alphabet_size() == b.alphabet_size() && canonical_form(a) == canonical_form(b)
}
