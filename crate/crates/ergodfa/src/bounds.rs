//! Analytic bounds on the class structure of random DFA, plus an exact
//! brute-force census for tiny state counts.
//!
//! Three closed-form quantities are provided: the Grusho fixed-point
//! constant (the asymptotic fraction of states in the unique closed class),
//! a technical inequality value used in tail estimates, and an upper bound
//! on the probability of the event E_{m,k} — that a uniformly random DFA on
//! n states contains a closed communicating class of size m whose period is
//! a multiple of k. The census enumerates every transition table outright
//! and tallies the same events exactly, which is what the bounds are tested
//! against.
//!
//! Everything combinatorial is evaluated through log-gamma; raw factorials
//! of class-sized arguments overflow immediately.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use crate::automata::Dfa;
use crate::structure::communicating_classes;

#[derive(Debug, Error, PartialEq)]
pub enum BoundsError {
    #[error("alphabet size {r} is below 2; the fixed point degenerates")]
    InvalidAlphabet { r: usize },
    #[error("argument outside domain: {reason}")]
    DomainError { reason: String },
    #[error("invalid range: need 2 <= k <= m <= n and r >= 2, got n={n}, m={m}, k={k}, r={r}")]
    InvalidRange { n: usize, m: usize, k: usize, r: usize },
    #[error("census of {tables} tables exceeds the budget of {budget}")]
    BudgetExceeded { tables: u128, budget: u64 },
}

/// Largest number of transition tables [`brute_force_census`] will enumerate.
pub const CENSUS_BUDGET: u64 = 100_000_000;

/// The positive solution of `c = 1 − e^{−cr}`, the asymptotic fraction of
/// states lying in the unique closed class of a uniformly random DFA over an
/// r-symbol alphabet. Solved by bisection; the returned value satisfies
/// `|c − 1 + e^{−cr}| ≤ 1e−12`. At r = 1 the only solution is 0, so r ≥ 2.
pub fn grusho_constant(r: usize) -> Result<f64, BoundsError> {
    if r < 2 {
        return Err(BoundsError::InvalidAlphabet { r });
    }
    let rf = r as f64;
    let f = |c: f64| c - 1.0 + (-c * rf).exp();
    // f(ε) < 0 for every r ≥ 2 and f(1) = e^{−r} > 0; bisect between them.
    let (mut lo, mut hi) = (1e-9, 1.0);
    debug_assert!(f(lo) < 0.0 && f(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    let c = 0.5 * (lo + hi);
    debug_assert!(f(c).abs() <= 1e-12);
    Ok(c)
}

/// `x^s · (1−x)^{−(1−x)/x}` for `s ≥ 1`, `x ∈ [0, 1]`, computed in log
/// space. The endpoints take their continuity limits: 0 at x = 0 and 1 at
/// x = 1. The map stays below 1.2 on the whole strip, with the s = 1
/// supremum attained near x ≈ 0.795.
pub fn technical_lemma_value(x: f64, s: f64) -> Result<f64, BoundsError> {
    if !(0.0..=1.0).contains(&x) || x.is_nan() {
        return Err(BoundsError::DomainError { reason: format!("x = {x} is outside [0, 1]") });
    }
    if !(s >= 1.0) {
        return Err(BoundsError::DomainError { reason: format!("s = {s} is below 1") });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    Ok((s * x.ln() - ((1.0 - x) / x) * (1.0 - x).ln()).exp())
}

fn ln_choose(n: usize, k: usize) -> f64 {
    debug_assert!(k <= n);
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// Natural log of [`emk_bound`]; safe for n up to at least 10⁶.
pub fn emk_bound_ln(n: usize, m: usize, k: usize, r: usize) -> Result<f64, BoundsError> {
    if !(2 <= k && k <= m && m <= n) || r < 2 {
        return Err(BoundsError::InvalidRange { n, m, k, r });
    }
    let (nf, mf, kf, rf) = (n as f64, m as f64, k as f64, r as f64);
    // binom(n,m) · binom(m−1,k−1) · m! / Γ(m/k)^k · (m/(kn))^{mr}.
    // Γ(m/k) is the real gamma: m/k need not be an integer.
    Ok(ln_choose(n, m)
        + ln_choose(m - 1, k - 1)
        + ln_gamma(mf + 1.0)
        - kf * ln_gamma(mf / kf)
        + mf * rf * (mf.ln() - kf.ln() - nf.ln()))
}

/// Upper bound on P[E_{m,k}], the probability that a uniformly random DFA on
/// n states and r symbols contains a closed class of size m whose period is
/// a multiple of k:
///
/// `binom(n,m) · binom(m−1,k−1) · m!/Γ(m/k)^k · (m/(kn))^{mr}`
///
/// Requires `2 ≤ k ≤ m ≤ n` and `r ≥ 2`. The bound is not clamped to 1; for
/// small arguments it can exceed 1 and is then vacuous.
pub fn emk_bound(n: usize, m: usize, k: usize, r: usize) -> Result<f64, BoundsError> {
    emk_bound_ln(n, m, k, r).map(f64::exp)
}

/// Ratio of [`emk_bound`] to the simplified shape
/// `min{m^k, 2^m} · (1.2 / k^{r−1})^m`.
///
/// The simplified bound proper carries an unspecified absolute constant, so
/// it cannot be evaluated as a number; what can be checked is that this
/// ratio stays bounded over a grid, which is exactly what the bound-suite
/// check does.
pub fn simplified_bound_ratio(n: usize, m: usize, k: usize, r: usize) -> Result<f64, BoundsError> {
    let (mf, kf, rf) = (m as f64, k as f64, r as f64);
    let simplified_ln =
        (kf * mf.ln()).min(mf * 2f64.ln()) + mf * (1.2f64.ln() - (rf - 1.0) * kf.ln());
    Ok((emk_bound_ln(n, m, k, r)? - simplified_ln).exp())
}

/// Floor-truncation to three decimal digits (the convention used when
/// quoting [`grusho_constant`] values).
pub fn truncate3(v: f64) -> f64 {
    (v * 1000.0).floor() / 1000.0
}

/// One tallied event: `count` of the enumerated transition structures
/// contain a closed class of `class_size` states whose period is a multiple
/// of `divisor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicEvent {
    pub class_size: usize,
    pub divisor: usize,
    pub count: u64,
}

/// Exact tallies over every transition table on n states and r symbols.
/// The initial state and termination function play no role in class
/// structure, so they are not enumerated; `total` is n^(n·r).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub n: usize,
    pub r: usize,
    pub total: u64,
    /// Tables with exactly one closed class.
    pub unique_closed: u64,
    /// Tables with exactly one closed class, of period 1.
    pub ergodic: u64,
    /// Sorted by (class_size, divisor); a table counts at most once per pair.
    pub periodic_events: Vec<PeriodicEvent>,
}

impl CensusResult {
    pub fn unique_closed_fraction(&self) -> f64 {
        self.unique_closed as f64 / self.total as f64
    }

    pub fn ergodic_fraction(&self) -> f64 {
        self.ergodic as f64 / self.total as f64
    }

    pub fn event_count(&self, class_size: usize, divisor: usize) -> u64 {
        self.periodic_events
            .iter()
            .find(|e| e.class_size == class_size && e.divisor == divisor)
            .map_or(0, |e| e.count)
    }

    /// Exact P[E_{m,k}] under the uniform measure on transition tables.
    pub fn event_probability(&self, class_size: usize, divisor: usize) -> f64 {
        self.event_count(class_size, divisor) as f64 / self.total as f64
    }
}

#[derive(Default, Clone)]
struct Tally {
    unique_closed: u64,
    ergodic: u64,
    events: Vec<((usize, usize), u64)>,
}

impl Tally {
    fn absorb(mut self, other: Tally) -> Tally {
        self.unique_closed += other.unique_closed;
        self.ergodic += other.ergodic;
        for (key, count) in other.events {
            match self.events.binary_search_by(|(k, _)| k.cmp(&key)) {
                Ok(idx) => self.events[idx].1 += count,
                Err(idx) => self.events.insert(idx, (key, count)),
            }
        }
        self
    }

    fn record(&mut self, table: &[usize], n: usize, r: usize) {
        let dfa = Dfa::new(n, r, 0, table.to_vec(), vec![false; n])
            .expect("enumerated table is a valid transition function");
        let d = communicating_classes(&dfa).expect("DFA transitions are total");
        let closed: Vec<usize> = d.closed_class_indices().collect();
        if closed.len() == 1 {
            self.unique_closed += 1;
            if d.period(closed[0]) == Some(1) {
                self.ergodic += 1;
            }
        }
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &idx in &closed {
            let m = d.class(idx).len();
            let period = d.period(idx).expect("closed classes have a period");
            for k in 2..=period {
                if period % k == 0 {
                    seen.insert((m, k));
                }
            }
        }
        for key in seen {
            match self.events.binary_search_by(|(k, _)| k.cmp(&key)) {
                Ok(idx) => self.events[idx].1 += 1,
                Err(idx) => self.events.insert(idx, (key, 1)),
            }
        }
    }
}

/// Decodes table index `idx` into mixed-radix digits base n (least
/// significant digit first): digit `q·r + σ` is τ(q, σ).
fn decode_table(mut idx: u64, n: usize, digits: &mut [usize]) {
    let base = n as u64;
    for d in digits.iter_mut() {
        *d = (idx % base) as usize;
        idx /= base;
    }
}

/// Advances `digits` to the next table in mixed-radix order.
fn increment_table(n: usize, digits: &mut [usize]) {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < n {
            return;
        }
        *d = 0;
    }
}

/// Enumerates all n^(n·r) transition tables and tallies class structure
/// exactly. Counts are exact integers; the enumeration range is split across
/// workers and partial tallies merge by addition, so the result does not
/// depend on thread count. Fails with [`BoundsError::BudgetExceeded`] when
/// the table count passes [`CENSUS_BUDGET`].
pub fn brute_force_census(n: usize, r: usize) -> Result<CensusResult, BoundsError> {
    assert!(n >= 1 && r >= 1, "need at least one state and one symbol");
    let tables = (n as u128)
        .checked_pow((n * r) as u32)
        .filter(|&t| t <= CENSUS_BUDGET as u128)
        .ok_or(BoundsError::BudgetExceeded {
            tables: (n as u128).checked_pow((n * r) as u32).unwrap_or(u128::MAX),
            budget: CENSUS_BUDGET,
        })?;
    let total = tables as u64;
    let chunk = (total / 256).max(1 << 12).min(total.max(1));
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let tally = starts
        .into_par_iter()
        .map(|start| {
            let end = (start + chunk).min(total);
            let mut digits = vec![0usize; n * r];
            decode_table(start, n, &mut digits);
            let mut t = Tally::default();
            for _ in start..end {
                t.record(&digits, n, r);
                increment_table(n, &mut digits);
            }
            t
        })
        .reduce(Tally::default, Tally::absorb);
    Ok(CensusResult {
        n,
        r,
        total,
        unique_closed: tally.unique_closed,
        ergodic: tally.ergodic,
        periodic_events: tally
            .events
            .into_iter()
            .map(|((class_size, divisor), count)| PeriodicEvent { class_size, divisor, count })
            .collect(),
    })
}
