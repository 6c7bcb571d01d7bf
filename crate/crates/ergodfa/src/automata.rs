//! Core automaton types and the transition-extension operations.
//!
//! An automaton is a tuple ⟨alphabet, states, initial state, transition
//! relation, termination predicate⟩ with states `0..n` and symbols `0..r`.
//! [`Nfa`] stores a set-valued relation (possibly empty per cell), [`Dfa`] the
//! total single-valued special case. The [`Automaton`] trait exposes the shared
//! read-only view plus the derived operations: running a word from a state set,
//! one-step successor sets, forward closure, and the characteristic (word
//! acceptance) function.
//!
//! State merging lives here too: a [`MergeMap`] is a validated surjection of
//! state ids, and [`apply_merge`] builds the induced quotient automaton — the
//! minimal transition relation such that the map commutes with transitions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::set::StateSet;

/// State identifier (`0..n`).
pub type State = usize;
/// Symbol identifier (`0..r`).
pub type Symbol = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutomataError {
    #[error("automaton needs at least one state")]
    EmptyStateSpace,
    #[error("automaton needs at least one symbol")]
    EmptyAlphabet,
    #[error("state {state} out of range for {n} states")]
    StateOutOfRange { state: usize, n: usize },
    #[error("symbol {symbol} out of range for {r} symbols")]
    SymbolOutOfRange { symbol: usize, r: usize },
    #[error("expected a table of {expected} entries, got {found}")]
    TableShape { expected: usize, found: usize },
    #[error("state set over universe {found} used with an automaton of {expected} states")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("merge map is not surjective onto 0..{target_n}: state {missing} has no preimage")]
    NonSurjectiveMap { target_n: usize, missing: usize },
    #[error("merge map sends {source_n} source states but automaton has {n}")]
    SourceSizeMismatch { source_n: usize, n: usize },
    #[error("states merged into {target} disagree on termination")]
    TerminationMismatch { target: usize },
    #[error("transition relation is not deterministic at state {state}, symbol {symbol}")]
    NotDeterministic { state: usize, symbol: usize },
}

/// Read-only view shared by [`Nfa`] and [`Dfa`], with the derived
/// transition-extension operations as provided methods.
pub trait Automaton {
    fn state_count(&self) -> usize;
    fn alphabet_size(&self) -> usize;
    fn initial_state(&self) -> State;
    /// Termination bit φ(q).
    fn terminates(&self, q: State) -> bool;
    /// Successor set τ(q, σ) as a sorted slice (singleton for a DFA).
    fn successors(&self, q: State, symbol: Symbol) -> &[State];

    /// States reachable from `from` by reading exactly the word `word`
    /// (the inductive extension of τ to strings; the empty word is identity).
    fn read_word(&self, from: &StateSet, word: &[Symbol]) -> Result<StateSet, AutomataError> {
        check_universe(self, from)?;
        let mut current = from.clone();
        for &symbol in word {
            check_symbol(self, symbol)?;
            let mut next = StateSet::empty(self.state_count());
            for q in &current {
                for &succ in self.successors(q, symbol) {
                    next.insert(succ);
                }
            }
            current = next;
        }
        Ok(current)
    }

    /// Union of one-symbol successors of `from` over the whole alphabet.
    fn one_step(&self, from: &StateSet) -> Result<StateSet, AutomataError> {
        check_universe(self, from)?;
        let mut out = StateSet::empty(self.state_count());
        for q in from {
            for symbol in 0..self.alphabet_size() {
                for &succ in self.successors(q, symbol) {
                    out.insert(succ);
                }
            }
        }
        Ok(out)
    }

    /// Forward closure: all states reachable from `from` by words of any
    /// length, including the empty word. Fixed points of [`Self::one_step`]
    /// containing `from` are exactly the supersets of this closure.
    fn forward_closure(&self, from: &StateSet) -> Result<StateSet, AutomataError> {
        check_universe(self, from)?;
        let mut closure = from.clone();
        let mut frontier: Vec<State> = from.iter().collect();
        while let Some(q) = frontier.pop() {
            for symbol in 0..self.alphabet_size() {
                for &succ in self.successors(q, symbol) {
                    if closure.insert(succ) {
                        frontier.push(succ);
                    }
                }
            }
        }
        Ok(closure)
    }

    /// States reachable from the initial state (forward closure of {q₀}).
    fn reachable_states(&self) -> StateSet {
        let start = StateSet::singleton(self.state_count(), self.initial_state());
        self.forward_closure(&start).expect("initial state is always in range")
    }

    /// Characteristic function: does some state reached from the initial state
    /// by `word` terminate?
    fn accepts(&self, word: &[Symbol]) -> Result<bool, AutomataError> {
        let start = StateSet::singleton(self.state_count(), self.initial_state());
        let landed = self.read_word(&start, word)?;
        Ok(landed.iter().any(|q| self.terminates(q)))
    }
}

fn check_universe<A: Automaton + ?Sized>(a: &A, set: &StateSet) -> Result<(), AutomataError> {
    if set.universe() != a.state_count() {
        return Err(AutomataError::UniverseMismatch {
            expected: a.state_count(),
            found: set.universe(),
        });
    }
    Ok(())
}

fn check_symbol<A: Automaton + ?Sized>(a: &A, symbol: Symbol) -> Result<(), AutomataError> {
    if symbol >= a.alphabet_size() {
        return Err(AutomataError::SymbolOutOfRange { symbol, r: a.alphabet_size() });
    }
    Ok(())
}

/// Nondeterministic finite automaton with set-valued transitions.
///
/// Transition cells are stored row-major (`q * r + symbol`) as sorted,
/// duplicate-free successor lists; cells may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    n: usize,
    r: usize,
    initial: State,
    cells: Vec<Vec<State>>,
    termination: Vec<bool>,
}

impl Nfa {
    /// Builds an NFA from per-state rows: `rows[q][symbol]` lists τ(q, symbol).
    /// State and alphabet sizes are inferred from the row shape.
    pub fn from_rows(
        initial: State,
        rows: Vec<Vec<Vec<State>>>,
        termination: Vec<bool>,
    ) -> Result<Nfa, AutomataError> {
        let n = rows.len();
        if n == 0 {
            return Err(AutomataError::EmptyStateSpace);
        }
        let r = rows[0].len();
        if r == 0 {
            return Err(AutomataError::EmptyAlphabet);
        }
        if rows.iter().any(|row| row.len() != r) {
            return Err(AutomataError::TableShape {
                expected: n * r,
                found: rows.iter().map(Vec::len).sum(),
            });
        }
        let cells: Vec<Vec<State>> = rows.into_iter().flatten().collect();
        Self::from_cells(n, r, initial, cells, termination)
    }

    /// Builds an NFA from a flat row-major cell table of length `n * r`.
    pub fn from_cells(
        n: usize,
        r: usize,
        initial: State,
        mut cells: Vec<Vec<State>>,
        termination: Vec<bool>,
    ) -> Result<Nfa, AutomataError> {
        if n == 0 {
            return Err(AutomataError::EmptyStateSpace);
        }
        if r == 0 {
            return Err(AutomataError::EmptyAlphabet);
        }
        if cells.len() != n * r {
            return Err(AutomataError::TableShape { expected: n * r, found: cells.len() });
        }
        if termination.len() != n {
            return Err(AutomataError::TableShape { expected: n, found: termination.len() });
        }
        if initial >= n {
            return Err(AutomataError::StateOutOfRange { state: initial, n });
        }
        for cell in &mut cells {
            cell.sort_unstable();
            cell.dedup();
            if let Some(&q) = cell.iter().find(|&&q| q >= n) {
                return Err(AutomataError::StateOutOfRange { state: q, n });
            }
        }
        Ok(Nfa { n, r, initial, cells, termination })
    }

    pub fn termination_bits(&self) -> &[bool] {
        &self.termination
    }

    /// True when every cell holds exactly one successor.
    pub fn is_deterministic(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }
}

impl Automaton for Nfa {
    fn state_count(&self) -> usize {
        self.n
    }
    fn alphabet_size(&self) -> usize {
        self.r
    }
    fn initial_state(&self) -> State {
        self.initial
    }
    fn terminates(&self, q: State) -> bool {
        self.termination[q]
    }
    fn successors(&self, q: State, symbol: Symbol) -> &[State] {
        &self.cells[q * self.r + symbol]
    }
}

/// Deterministic finite automaton: exactly one successor per state and symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    n: usize,
    r: usize,
    initial: State,
    table: Vec<State>,
    termination: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA from a flat row-major transition table of length `n * r`.
    pub fn new(
        n: usize,
        r: usize,
        initial: State,
        table: Vec<State>,
        termination: Vec<bool>,
    ) -> Result<Dfa, AutomataError> {
        if n == 0 {
            return Err(AutomataError::EmptyStateSpace);
        }
        if r == 0 {
            return Err(AutomataError::EmptyAlphabet);
        }
        if table.len() != n * r {
            return Err(AutomataError::TableShape { expected: n * r, found: table.len() });
        }
        if termination.len() != n {
            return Err(AutomataError::TableShape { expected: n, found: termination.len() });
        }
        if initial >= n {
            return Err(AutomataError::StateOutOfRange { state: initial, n });
        }
        if let Some(&q) = table.iter().find(|&&q| q >= n) {
            return Err(AutomataError::StateOutOfRange { state: q, n });
        }
        Ok(Dfa { n, r, initial, table, termination })
    }

    /// Builds a DFA from per-state rows: `rows[q][symbol]` is τ(q, symbol).
    pub fn from_rows(
        initial: State,
        rows: Vec<Vec<State>>,
        termination: Vec<bool>,
    ) -> Result<Dfa, AutomataError> {
        let n = rows.len();
        if n == 0 {
            return Err(AutomataError::EmptyStateSpace);
        }
        let r = rows[0].len();
        if rows.iter().any(|row| row.len() != r) {
            return Err(AutomataError::TableShape {
                expected: n * r,
                found: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(n, r, initial, rows.into_iter().flatten().collect(), termination)
    }

    pub fn transition(&self, q: State, symbol: Symbol) -> State {
        self.table[q * self.r + symbol]
    }

    pub fn transition_table(&self) -> &[State] {
        &self.table
    }

    pub fn termination_bits(&self) -> &[bool] {
        &self.termination
    }

    pub fn to_nfa(&self) -> Nfa {
        Nfa {
            n: self.n,
            r: self.r,
            initial: self.initial,
            cells: self.table.iter().map(|&q| vec![q]).collect(),
            termination: self.termination.clone(),
        }
    }
}

impl Automaton for Dfa {
    fn state_count(&self) -> usize {
        self.n
    }
    fn alphabet_size(&self) -> usize {
        self.r
    }
    fn initial_state(&self) -> State {
        self.initial
    }
    fn terminates(&self, q: State) -> bool {
        self.termination[q]
    }
    fn successors(&self, q: State, symbol: Symbol) -> &[State] {
        std::slice::from_ref(&self.table[q * self.r + symbol])
    }
}

impl TryFrom<&Nfa> for Dfa {
    type Error = AutomataError;

    /// Succeeds when every transition cell is a singleton.
    fn try_from(nfa: &Nfa) -> Result<Dfa, AutomataError> {
        let mut table = Vec::with_capacity(nfa.n * nfa.r);
        for (idx, cell) in nfa.cells.iter().enumerate() {
            if cell.len() != 1 {
                return Err(AutomataError::NotDeterministic {
                    state: idx / nfa.r,
                    symbol: idx % nfa.r,
                });
            }
            table.push(cell[0]);
        }
        Ok(Dfa {
            n: nfa.n,
            r: nfa.r,
            initial: nfa.initial,
            table,
            termination: nfa.termination.clone(),
        })
    }
}

/// Validated surjection `0..source_n → 0..target_n` describing a state merge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMergeMap", into = "RawMergeMap")]
pub struct MergeMap {
    target_n: usize,
    map: Vec<State>,
}

#[derive(Serialize, Deserialize)]
struct RawMergeMap {
    target_n: usize,
    map: Vec<State>,
}

impl TryFrom<RawMergeMap> for MergeMap {
    type Error = AutomataError;
    fn try_from(raw: RawMergeMap) -> Result<MergeMap, AutomataError> {
        MergeMap::new(raw.target_n, raw.map)
    }
}

impl From<MergeMap> for RawMergeMap {
    fn from(m: MergeMap) -> RawMergeMap {
        RawMergeMap { target_n: m.target_n, map: m.map }
    }
}

impl MergeMap {
    /// Checks that `map` lands in `0..target_n` and hits every target state.
    pub fn new(target_n: usize, map: Vec<State>) -> Result<MergeMap, AutomataError> {
        if let Some(&q) = map.iter().find(|&&q| q >= target_n) {
            return Err(AutomataError::StateOutOfRange { state: q, n: target_n });
        }
        let mut hit = vec![false; target_n];
        for &q in &map {
            hit[q] = true;
        }
        if let Some(missing) = hit.iter().position(|&h| !h) {
            return Err(AutomataError::NonSurjectiveMap { target_n, missing });
        }
        Ok(MergeMap { target_n, map })
    }

    pub fn identity(n: usize) -> MergeMap {
        MergeMap { target_n: n, map: (0..n).collect() }
    }

    /// The elementary merge identifying two distinct states of an `n`-state
    /// automaton. The pair lands on the smaller of the two ids (the argument
    /// order does not matter) and the numbering stays dense: ids above the
    /// larger one shift down by one. Target has `n - 1` states.
    pub fn elementary(n: usize, a: State, b: State) -> MergeMap {
        assert!(a < n && b < n && a != b, "invalid elementary merge");
        let (lo, hi) = (a.min(b), a.max(b));
        let map = (0..n)
            .map(|q| {
                if q == hi {
                    lo
                } else if q > hi {
                    q - 1
                } else {
                    q
                }
            })
            .collect();
        MergeMap { target_n: n - 1, map }
    }

    pub fn source_n(&self) -> usize {
        self.map.len()
    }

    pub fn target_n(&self) -> usize {
        self.target_n
    }

    pub fn image(&self, q: State) -> State {
        self.map[q]
    }

    /// Applies the map to every member of a source-universe set.
    pub fn image_set(&self, set: &StateSet) -> StateSet {
        let mut out = StateSet::empty(self.target_n);
        for q in set {
            out.insert(self.map[q]);
        }
        out
    }

    /// Composition: first `self`, then `later`.
    pub fn then(&self, later: &MergeMap) -> MergeMap {
        assert_eq!(self.target_n, later.source_n(), "merge maps do not compose");
        MergeMap {
            target_n: later.target_n,
            map: self.map.iter().map(|&q| later.map[q]).collect(),
        }
    }

    /// True when the state count drops by exactly one.
    pub fn is_elementary(&self) -> bool {
        self.target_n + 1 == self.map.len()
    }
}

/// Quotients `a` by the surjection `psi`: the resulting automaton has one
/// state per target id, the image of the initial state as initial state, the
/// shared termination bit of each preimage, and the minimal transition
/// relation making `psi` commute with transitions (the cell for (q̃, σ) is the
/// union of ψ(τ(q, σ)) over all preimages q of q̃).
///
/// Fails with [`AutomataError::TerminationMismatch`] when two merged states
/// disagree on termination.
pub fn apply_merge<A: Automaton>(a: &A, psi: &MergeMap) -> Result<Nfa, AutomataError> {
    let (n, r) = (a.state_count(), a.alphabet_size());
    if psi.source_n() != n {
        return Err(AutomataError::SourceSizeMismatch { source_n: psi.source_n(), n });
    }
    let target_n = psi.target_n();
    let mut termination = vec![None; target_n];
    for q in 0..n {
        let t = psi.image(q);
        match termination[t] {
            None => termination[t] = Some(a.terminates(q)),
            Some(bit) if bit != a.terminates(q) => {
                return Err(AutomataError::TerminationMismatch { target: t });
            }
            Some(_) => {}
        }
    }
    let mut cells = vec![Vec::new(); target_n * r];
    for q in 0..n {
        let t = psi.image(q);
        for symbol in 0..r {
            let cell = &mut cells[t * r + symbol];
            for &succ in a.successors(q, symbol) {
                cell.push(psi.image(succ));
            }
        }
    }
    for cell in &mut cells {
        cell.sort_unstable();
        cell.dedup();
    }
    Ok(Nfa {
        n: target_n,
        r,
        initial: psi.image(a.initial_state()),
        cells,
        termination: termination.into_iter().map(|b| b.expect("surjective map")).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Two states over {a, b}: 0 --a--> 1, everything else self-loops on 0 / stays.
    fn two_state() -> Dfa {
        Dfa::from_rows(0, vec![vec![1, 0], vec![1, 1]], vec![false, true]).unwrap()
    }

    #[test]
    fn empty_word_is_identity() {
        let a = two_state();
        let s = StateSet::from_states(2, [0, 1]);
        assert_eq!(a.read_word(&s, &[]).unwrap(), s);
    }

    #[test]
    fn word_composition_on_two_states() {
        let a = two_state();
        let start = StateSet::singleton(2, 0);
        // "ab" : 0 -a-> 1 -b-> 1
        let got = a.read_word(&start, &[0, 1]).unwrap();
        assert_eq!(got, StateSet::singleton(2, 1));
    }

    #[test]
    fn nfa_union_rule() {
        // 0 -a-> {0, 1}; from {0} reading "aa" must union through both.
        let a = Nfa::from_rows(
            0,
            vec![vec![vec![0, 1]], vec![vec![1]]],
            vec![false, true],
        )
        .unwrap();
        let start = StateSet::singleton(2, 0);
        let got = a.read_word(&start, &[0, 0]).unwrap();
        assert_eq!(got, StateSet::from_states(2, [0, 1]));
    }

    #[test]
    fn empty_cells_can_kill_a_run() {
        let a = Nfa::from_rows(0, vec![vec![vec![1]], vec![vec![]]], vec![false, true]).unwrap();
        let start = StateSet::singleton(2, 0);
        assert!(a.read_word(&start, &[0, 0]).unwrap().is_empty());
        assert!(!a.accepts(&[0, 0]).unwrap());
        assert!(a.accepts(&[0]).unwrap());
    }

    #[test]
    fn one_step_unions_all_symbols() {
        // 3-cycle on symbol a; symbol b self-loops.
        let a = Dfa::from_rows(
            0,
            vec![vec![1, 0], vec![2, 1], vec![0, 2]],
            vec![false, false, false],
        )
        .unwrap();
        let s = StateSet::singleton(3, 0);
        assert_eq!(a.one_step(&s).unwrap(), StateSet::from_states(3, [0, 1]));
        assert!(a.one_step(&StateSet::empty(3)).unwrap().is_empty());
        let full = StateSet::full(3);
        assert_eq!(a.one_step(&full).unwrap(), full);
    }

    #[test]
    fn forward_closure_reaches_components() {
        // 0 -> 1 -> 2 -> 3 -> 2 (two symbols folded into one for brevity).
        let a = Dfa::from_rows(
            1,
            vec![vec![1], vec![2], vec![3], vec![2]],
            vec![false; 4],
        )
        .unwrap();
        let from2 = StateSet::singleton(4, 2);
        assert_eq!(a.forward_closure(&from2).unwrap(), StateSet::from_states(4, [2, 3]));
        let from0 = StateSet::singleton(4, 0);
        assert_eq!(a.forward_closure(&from0).unwrap(), StateSet::full(4));
        assert_eq!(a.reachable_states(), StateSet::from_states(4, [1, 2, 3]));
    }

    #[test]
    fn forward_closure_is_one_step_fixed_point() {
        let a = two_state();
        let closure = a.forward_closure(&StateSet::singleton(2, 0)).unwrap();
        let mut with_step = closure.clone();
        with_step.union_with(&a.one_step(&closure).unwrap());
        assert_eq!(with_step, closure);
    }

    #[test]
    fn characteristic_on_parity() {
        // Parity of a's: accept iff even number of symbol-0 reads.
        let a = Dfa::from_rows(0, vec![vec![1, 0], vec![0, 1]], vec![true, false]).unwrap();
        assert!(a.accepts(&[]).unwrap());
        assert!(!a.accepts(&[0]).unwrap());
        assert!(a.accepts(&[0, 1, 0]).unwrap());
        assert!(!a.accepts(&[0, 1, 0, 0]).unwrap());
    }

    #[test]
    fn out_of_range_inputs_are_rejected() {
        let a = two_state();
        let bad_universe = StateSet::singleton(3, 0);
        assert_eq!(
            a.read_word(&bad_universe, &[]).unwrap_err(),
            AutomataError::UniverseMismatch { expected: 2, found: 3 }
        );
        let ok = StateSet::singleton(2, 0);
        assert_eq!(
            a.read_word(&ok, &[2]).unwrap_err(),
            AutomataError::SymbolOutOfRange { symbol: 2, r: 2 }
        );
        assert!(a.accepts(&[5]).is_err());
    }

    #[test]
    fn constructors_validate() {
        assert_eq!(
            Dfa::from_rows(0, vec![], vec![]).unwrap_err(),
            AutomataError::EmptyStateSpace
        );
        assert_eq!(
            Dfa::from_rows(1, vec![vec![0]], vec![false]).unwrap_err(),
            AutomataError::StateOutOfRange { state: 1, n: 1 }
        );
        assert_eq!(
            Dfa::from_rows(0, vec![vec![3]], vec![false]).unwrap_err(),
            AutomataError::StateOutOfRange { state: 3, n: 1 }
        );
        assert!(Nfa::from_rows(0, vec![vec![]], vec![false]).is_err());
    }

    #[test]
    fn merge_map_validation() {
        assert!(MergeMap::new(2, vec![0, 1, 0]).is_ok());
        assert_eq!(
            MergeMap::new(3, vec![0, 1, 0]).unwrap_err(),
            AutomataError::NonSurjectiveMap { target_n: 3, missing: 2 }
        );
        assert_eq!(
            MergeMap::new(1, vec![0, 1]).unwrap_err(),
            AutomataError::StateOutOfRange { state: 1, n: 1 }
        );
    }

    #[test]
    fn elementary_merge_shifts_ids() {
        let psi = MergeMap::elementary(4, 1, 3);
        assert_eq!((0..4).map(|q| psi.image(q)).collect::<Vec<_>>(), vec![0, 1, 2, 1]);
        assert!(psi.is_elementary());
        // Argument order is irrelevant; the pair lands on the smaller id.
        let psi2 = MergeMap::elementary(4, 2, 0);
        assert_eq!((0..4).map(|q| psi2.image(q)).collect::<Vec<_>>(), vec![0, 1, 0, 2]);
        assert_eq!(MergeMap::elementary(4, 0, 2), psi2);
    }

    #[test]
    fn identity_merge_is_isomorphic() {
        let a = two_state();
        let merged = apply_merge(&a, &MergeMap::identity(2)).unwrap();
        assert_eq!(merged, a.to_nfa());
    }

    #[test]
    fn merging_duplicate_rows_stays_deterministic() {
        // States 1 and 2 have identical rows and termination: merging them
        // keeps exactly one successor per cell.
        let a = Dfa::from_rows(
            0,
            vec![vec![1, 2], vec![0, 1], vec![0, 1]],
            vec![true, false, false],
        )
        .unwrap();
        let psi = MergeMap::elementary(3, 1, 2);
        let merged = apply_merge(&a, &psi).unwrap();
        assert_eq!(merged.state_count(), 2);
        assert!(merged.is_deterministic());
        let back = Dfa::try_from(&merged).unwrap();
        assert_eq!(back.transition(0, 0), 1);
        assert_eq!(back.transition(0, 1), 1);
        assert_eq!(back.transition(1, 0), 0);
        assert_eq!(back.transition(1, 1), 1);
    }

    #[test]
    fn merging_distinct_rows_creates_nondeterminism() {
        // 3-cycle 0 → 1 → 2 → 0; merging {0, 1} leaves the pair pointing at
        // both the merged state and old state 2.
        let a = Dfa::from_rows(0, vec![vec![1], vec![2], vec![0]], vec![false; 3]).unwrap();
        let merged = apply_merge(&a, &MergeMap::elementary(3, 0, 1)).unwrap();
        assert!(!merged.is_deterministic());
        assert_eq!(merged.successors(0, 0), &[0, 1]);
        assert!(Dfa::try_from(&merged).is_err());
    }

    #[test]
    fn merge_termination_mismatch() {
        let a = two_state();
        let err = apply_merge(&a, &MergeMap::elementary(2, 0, 1)).unwrap_err();
        assert_eq!(err, AutomataError::TerminationMismatch { target: 0 });
    }

    #[test]
    fn merge_preserves_initial_role() {
        let a = Dfa::from_rows(2, vec![vec![0], vec![1], vec![1]], vec![false; 3]).unwrap();
        let merged = apply_merge(&a, &MergeMap::elementary(3, 1, 2)).unwrap();
        assert_eq!(merged.initial_state(), 1);
    }

    #[test]
    fn merge_map_composition() {
        let a = MergeMap::elementary(4, 0, 3); // [0,1,2,0]
        let b = MergeMap::elementary(3, 1, 2); // [0,1,1]
        let ab = a.then(&b);
        assert_eq!(ab.source_n(), 4);
        assert_eq!(ab.target_n(), 2);
        assert_eq!((0..4).map(|q| ab.image(q)).collect::<Vec<_>>(), vec![0, 1, 1, 0]);
    }

    #[test]
    fn merge_map_serde_rejects_bad_maps() {
        let good: MergeMap = serde_json::from_str(r#"{"target_n":2,"map":[0,1,0]}"#).unwrap();
        assert_eq!(good, MergeMap::new(2, vec![0, 1, 0]).unwrap());
        assert!(serde_json::from_str::<MergeMap>(r#"{"target_n":3,"map":[0,1,0]}"#).is_err());
    }
}
