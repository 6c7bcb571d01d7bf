//! A structure laboratory for finite automata.
//!
//! The crate treats an automaton's transition relation as a directed graph /
//! Markov chain and provides:
//!
//! - core NFA/DFA types with word extensions, forward closures, state merges
//!   ([`automata`]);
//! - communicating-class decomposition, closedness, and periodicity
//!   certificates ([`structure`]);
//! - DFA minimization as a sequence of elementary state merges with a full
//!   audit trace ([`minimization`]);
//! - reproducible uniform random DFA sampling ([`randgen`]);
//! - the induced random-walk chain: stationary distributions and simulated
//!   walks ([`markov`]);
//! - analytic bounds on periodic-class probabilities and exact small-instance
//!   censuses ([`bounds`]);
//! - a deterministic Monte Carlo campaign harness tying it together
//!   ([`experiments`]).
//!
//! The primary interface is the library plus the runnable programs under
//! `examples/`; the `ergodfa` binary is a thin command-line front end over the
//! same functions.
//!
//! ```
//! use ergodfa::prelude::*;
//!
//! let dfa = sample_dfa(&SampleSpec { n: 64, r: 2, master_seed: 7, trial_index: 0 })?;
//! let (ergodic, decomposition) = is_ergodic_structure(&dfa)?;
//! assert_eq!(decomposition.recurrent().len(),
//!            closed_class_sizes(&dfa)?.iter().sum::<usize>());
//! # let _ = ergodic;
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod automata;
pub mod bounds;
pub mod experiments;
pub mod io;
pub mod markov;
pub mod minimization;
pub mod randgen;
pub mod set;
pub mod structure;

/// One-stop imports for the common types and operations.
pub mod prelude {
    pub use crate::automata::{apply_merge, Automaton, Dfa, MergeMap, Nfa, State, Symbol};
    pub use crate::bounds::{brute_force_census, emk_bound, grusho_constant, technical_lemma_value};
    pub use crate::experiments::{run_campaign, ExperimentConfig, ExperimentReport};
    pub use crate::markov::{simulate_walk, stationary, step, transition_matrix};
    pub use crate::minimization::{are_equivalent, minimize, myhill_nerode_classes, reachable_trim};
    pub use crate::randgen::{derive_trial_seed, sample_dfa, SampleSpec, SplitMix64};
    pub use crate::set::StateSet;
    pub use crate::structure::{
        closed_class_sizes, communicating_classes, is_ergodic_structure, period_of_class,
    };
}
