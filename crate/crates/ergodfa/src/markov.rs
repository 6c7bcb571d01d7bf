//! The random walk induced by an automaton, as a finite Markov chain.
//!
//! At each step the walker picks a symbol uniformly and follows one arc; for
//! set-valued transitions every listed endpoint of every symbol is equally
//! likely. Row q of the chain therefore assigns q' the probability
//! `#{(σ, arcs) leading to q'} / Σ_σ |τ(q, σ)|` — for a DFA simply
//! (number of symbols mapping q to q') / r.
//!
//! [`stationary`] runs power iteration. Non-convergence is an expected,
//! meaningful outcome — it is how a periodic or multi-class chain announces
//! itself — so it is reported as a dedicated error variant rather than a
//! panic. Because the uniform starting vector is itself invariant for some
//! periodic chains (any doubly stochastic one), a second iterate started from
//! a basis vector guards the convergence test: both must settle before the
//! uniform-start limit is returned.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automata::{Automaton, Dfa, State};
use crate::randgen::SplitMix64;

#[derive(Debug, Error, PartialEq)]
pub enum MarkovError {
    #[error("state {state} has no successor under symbol {symbol}")]
    EmptyTransition { state: usize, symbol: usize },
    #[error("dimension mismatch: distribution over {dist} states, chain over {chain}")]
    DimensionMismatch { dist: usize, chain: usize },
    #[error("power iteration did not converge within {max_iters} iterations")]
    NotConverged { max_iters: usize },
    #[error("not a probability vector: {reason}")]
    NotAProbabilityVector { reason: String },
    #[error("not row-stochastic at row {row}: sum deviates by {deviation:e}")]
    NotRowStochastic { row: usize, deviation: f64 },
}

/// Tolerance below which a probability vector's mass may deviate from one.
pub const MASS_TOLERANCE: f64 = 1e-12;
/// Default convergence tolerance for power iteration.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Default iteration budget for power iteration.
pub const DEFAULT_MAX_ITERS: usize = 1_000_000;
/// Chains with more states than this use the sparse row representation.
pub const DENSE_STATE_LIMIT: usize = 2048;

/// Probability vector over states; non-negative entries summing to one
/// within [`MASS_TOLERANCE`]. Serializes as a plain JSON array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Distribution {
    values: Vec<f64>,
}

impl Distribution {
    pub fn new(values: Vec<f64>) -> Result<Distribution, MarkovError> {
        if values.is_empty() {
            return Err(MarkovError::NotAProbabilityVector { reason: "empty vector".into() });
        }
        if let Some(&bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(MarkovError::NotAProbabilityVector {
                reason: format!("entry {bad} is negative or not finite"),
            });
        }
        let mass: f64 = values.iter().sum();
        if (mass - 1.0).abs() > MASS_TOLERANCE {
            return Err(MarkovError::NotAProbabilityVector {
                reason: format!("mass {mass} deviates from 1 by more than {MASS_TOLERANCE:e}"),
            });
        }
        Ok(Distribution { values })
    }

    pub fn uniform(n: usize) -> Distribution {
        assert!(n > 0);
        Distribution { values: vec![1.0 / n as f64; n] }
    }

    /// One-hot distribution at `q`.
    pub fn point(n: usize, q: State) -> Distribution {
        assert!(q < n);
        let mut values = vec![0.0; n];
        values[q] = 1.0;
        Distribution { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn l1_distance(&self, other: &Distribution) -> f64 {
        assert_eq!(self.len(), other.len(), "distribution length mismatch");
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).sum()
    }

    /// Total variation distance: half the L1 distance.
    pub fn total_variation(&self, other: &Distribution) -> f64 {
        self.l1_distance(other) / 2.0
    }

    /// Probability mass carried by the given states.
    pub fn mass_on<I: IntoIterator<Item = State>>(&self, states: I) -> f64 {
        states.into_iter().map(|q| self.values[q]).sum()
    }
}

impl TryFrom<Vec<f64>> for Distribution {
    type Error = MarkovError;
    fn try_from(values: Vec<f64>) -> Result<Distribution, MarkovError> {
        Distribution::new(values)
    }
}

impl From<Distribution> for Vec<f64> {
    fn from(d: Distribution) -> Vec<f64> {
        d.values
    }
}

#[derive(Debug)]
enum Rows {
    /// Row-major `n × n`.
    Dense(Vec<f64>),
    /// Per-row `(column, probability)` pairs, columns ascending.
    Sparse(Vec<Vec<(State, f64)>>),
}

/// Row-stochastic transition matrix of the induced walk.
#[derive(Debug)]
pub struct TransitionMatrix {
    n: usize,
    rows: Rows,
}

impl TransitionMatrix {
    /// Validates and wraps a dense row-major matrix.
    pub fn from_dense(n: usize, entries: Vec<f64>) -> Result<TransitionMatrix, MarkovError> {
        assert_eq!(entries.len(), n * n, "dense matrix must be n*n");
        for (row, chunk) in entries.chunks(n).enumerate() {
            if let Some(&bad) = chunk.iter().find(|v| !v.is_finite() || **v < 0.0) {
                return Err(MarkovError::NotAProbabilityVector {
                    reason: format!("row {row} entry {bad} is negative or not finite"),
                });
            }
            let sum: f64 = chunk.iter().sum();
            if (sum - 1.0).abs() > MASS_TOLERANCE {
                return Err(MarkovError::NotRowStochastic { row, deviation: (sum - 1.0).abs() });
            }
        }
        Ok(TransitionMatrix { n, rows: Rows::Dense(entries) })
    }

    pub fn state_count(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: State, j: State) -> f64 {
        match &self.rows {
            Rows::Dense(e) => e[i * self.n + j],
            Rows::Sparse(rows) => rows[i]
                .binary_search_by(|(col, _)| col.cmp(&j))
                .map(|idx| rows[i][idx].1)
                .unwrap_or(0.0),
        }
    }

    pub fn row_sum(&self, i: State) -> f64 {
        match &self.rows {
            Rows::Dense(e) => e[i * self.n..(i + 1) * self.n].iter().sum(),
            Rows::Sparse(rows) => rows[i].iter().map(|(_, p)| p).sum(),
        }
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.rows, Rows::Sparse(_))
    }
}

/// Builds the walk chain of an automaton. Every transition cell must be
/// non-empty, otherwise the walk is undefined at that state.
pub fn transition_matrix<A: Automaton>(a: &A) -> Result<TransitionMatrix, MarkovError> {
    let (n, r) = (a.state_count(), a.alphabet_size());
    // Per-row integer arc counts; divide once by the row total.
    let mut row_entries: Vec<Vec<(State, f64)>> = Vec::with_capacity(n);
    for q in 0..n {
        let mut counts: Vec<(State, usize)> = Vec::new();
        let mut total = 0usize;
        for symbol in 0..r {
            let succ = a.successors(q, symbol);
            if succ.is_empty() {
                return Err(MarkovError::EmptyTransition { state: q, symbol });
            }
            total += succ.len();
            for &v in succ {
                match counts.binary_search_by(|(col, _)| col.cmp(&v)) {
                    Ok(idx) => counts[idx].1 += 1,
                    Err(idx) => counts.insert(idx, (v, 1)),
                }
            }
        }
        row_entries
            .push(counts.into_iter().map(|(col, c)| (col, c as f64 / total as f64)).collect());
    }
    if n <= DENSE_STATE_LIMIT {
        let mut dense = vec![0.0; n * n];
        for (q, row) in row_entries.iter().enumerate() {
            for &(col, p) in row {
                dense[q * n + col] = p;
            }
        }
        Ok(TransitionMatrix { n, rows: Rows::Dense(dense) })
    } else {
        Ok(TransitionMatrix { n, rows: Rows::Sparse(row_entries) })
    }
}

/// One step of the chain: the vector-matrix product `p P`, renormalized so
/// rounding never lets the mass drift.
pub fn step(p: &Distribution, m: &TransitionMatrix) -> Result<Distribution, MarkovError> {
    if p.len() != m.n {
        return Err(MarkovError::DimensionMismatch { dist: p.len(), chain: m.n });
    }
    let mut out = vec![0.0; m.n];
    match &m.rows {
        Rows::Dense(entries) => {
            for (i, &pi) in p.values.iter().enumerate() {
                if pi == 0.0 {
                    continue;
                }
                let row = &entries[i * m.n..(i + 1) * m.n];
                for (o, &e) in out.iter_mut().zip(row) {
                    *o += pi * e;
                }
            }
        }
        Rows::Sparse(rows) => {
            for (i, &pi) in p.values.iter().enumerate() {
                if pi == 0.0 {
                    continue;
                }
                for &(col, e) in &rows[i] {
                    out[col] += pi * e;
                }
            }
        }
    }
    let mass: f64 = out.iter().sum();
    for o in &mut out {
        *o /= mass;
    }
    Ok(Distribution { values: out })
}

/// Power iteration from the uniform distribution.
///
/// Converges when three successive iterates are within `tol` of each other in
/// L1 — the returned vector p is certified to satisfy `‖pP − p‖₁ ≤ tol` — and
/// when a second iterate started from the first basis vector has settled too.
/// The guard exists because the uniform start is an exact fixed point of any
/// doubly stochastic chain, including periodic ones that have no limit; a
/// basis start exposes the oscillation. [`MarkovError::NotConverged`] is the
/// expected outcome for periodic chains, not a fault.
pub fn stationary(
    m: &TransitionMatrix,
    tol: f64,
    max_iters: usize,
) -> Result<Distribution, MarkovError> {
    let mut p = Distribution::uniform(m.n);
    let mut guard = Distribution::point(m.n, 0);
    for _ in 0..max_iters {
        let p_next = step(&p, m)?;
        let guard_next = step(&guard, m)?;
        if p_next.l1_distance(&p) <= tol && guard_next.l1_distance(&guard) <= tol {
            // Certify the candidate's own residual before returning it.
            let p_check = step(&p_next, m)?;
            if p_check.l1_distance(&p_next) <= tol {
                return Ok(p_next);
            }
        }
        p = p_next;
        guard = guard_next;
    }
    Err(MarkovError::NotConverged { max_iters })
}

/// Power iteration from a caller-chosen start (no basis-vector guard).
/// The returned p satisfies `‖pP − p‖₁ ≤ tol`.
pub fn stationary_from(
    m: &TransitionMatrix,
    start: &Distribution,
    tol: f64,
    max_iters: usize,
) -> Result<Distribution, MarkovError> {
    let mut p = start.clone();
    for _ in 0..max_iters {
        let p_next = step(&p, m)?;
        if p_next.l1_distance(&p) <= tol {
            let p_check = step(&p_next, m)?;
            if p_check.l1_distance(&p_next) <= tol {
                return Ok(p_next);
            }
        }
        p = p_next;
    }
    Err(MarkovError::NotConverged { max_iters })
}

/// Outcome of a simulated walk: per-state visit counts (including the start,
/// so they sum to `steps + 1`) and the final state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkRecord {
    pub counts: Vec<u64>,
    pub final_state: State,
}

impl WalkRecord {
    pub fn steps(&self) -> u64 {
        self.counts.iter().sum::<u64>() - 1
    }

    /// Empirical visit frequencies.
    pub fn frequencies(&self) -> Distribution {
        let total: u64 = self.counts.iter().sum();
        Distribution::new(self.counts.iter().map(|&c| c as f64 / total as f64).collect())
            .expect("visit frequencies form a probability vector")
    }
}

/// Walks `steps` arcs from the initial state, drawing one uniform symbol per
/// step from a [`SplitMix64`] stream seeded with `seed`.
pub fn simulate_walk(a: &Dfa, seed: u64, steps: u64) -> WalkRecord {
    let mut rng = SplitMix64::new(seed);
    let r = a.alphabet_size() as u64;
    let mut counts = vec![0u64; a.state_count()];
    let mut q = a.initial_state();
    counts[q] += 1;
    for _ in 0..steps {
        let symbol = rng.uniform_below(r) as usize;
        q = a.transition(q, symbol);
        counts[q] += 1;
    }
    WalkRecord { counts, final_state: q }
}
