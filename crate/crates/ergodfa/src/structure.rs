//! Communicating-class structure of an automaton's transition digraph.
//!
//! Two states communicate when each is forward-reachable from the other; the
//! communicating classes are the strongly connected components of the digraph
//! whose arcs are `q → q'` for `q' ∈ τ(q, σ)`, any symbol. A class is *closed*
//! when no arc leaves it, and a closed class has a *period* k: the largest k
//! for which the class splits into k parts cycled exactly by the one-step
//! successor map. Recurrent states are those in closed classes; the rest are
//! transient. An automaton is structurally ergodic when it has exactly one
//! closed class and that class is aperiodic (period 1).
//!
//! Every transition cell must be non-empty here — a state with no successor
//! under some symbol has no well-defined walk semantics.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::automata::{Automaton, State};
use crate::set::StateSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("state {state} has no successor under symbol {symbol}")]
    EmptyTransition { state: usize, symbol: usize },
    #[error("the given set is not a closed communicating class: {reason}")]
    NotClosedClass { reason: &'static str },
    #[error("state set over universe {found} used with an automaton of {expected} states")]
    UniverseMismatch { expected: usize, found: usize },
}

/// Partition of the states into communicating classes, with closedness,
/// periods of closed classes, and the recurrent/transient split.
///
/// Classes are numbered in ascending order of their smallest member; members
/// within a class are sorted. Serializes as
/// `{"classes": [[...]], "closed": [...], "period": [...], "recurrent": [...]}`
/// with `null` periods for non-closed classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDecomposition {
    classes: Vec<Vec<State>>,
    class_of: Vec<usize>,
    closed: Vec<bool>,
    periods: Vec<Option<usize>>,
    recurrent: StateSet,
}

impl ClassDecomposition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Members of class `idx`, sorted ascending.
    pub fn class(&self, idx: usize) -> &[State] {
        &self.classes[idx]
    }

    pub fn classes(&self) -> &[Vec<State>] {
        &self.classes
    }

    /// Index of the class containing `q`.
    pub fn class_of(&self, q: State) -> usize {
        self.class_of[q]
    }

    pub fn is_closed(&self, idx: usize) -> bool {
        self.closed[idx]
    }

    /// Period of class `idx`; `None` for non-closed classes.
    pub fn period(&self, idx: usize) -> Option<usize> {
        self.periods[idx]
    }

    pub fn closed_class_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.classes.len()).filter(|&i| self.closed[i])
    }

    pub fn closed_class_count(&self) -> usize {
        self.closed.iter().filter(|&&c| c).count()
    }

    /// States belonging to some closed class.
    pub fn recurrent(&self) -> &StateSet {
        &self.recurrent
    }

    pub fn transient(&self) -> StateSet {
        self.recurrent.complement()
    }

    /// Exactly one closed class, and it is aperiodic.
    pub fn is_ergodic(&self) -> bool {
        let mut closed = self.closed_class_indices();
        match (closed.next(), closed.next()) {
            (Some(idx), None) => self.periods[idx] == Some(1),
            _ => false,
        }
    }

    /// Index and size of the largest closed class (smallest index wins ties).
    pub fn largest_closed_class(&self) -> Option<(usize, usize)> {
        self.closed_class_indices()
            .map(|i| (i, self.classes[i].len()))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
    }
}

impl Serialize for ClassDecomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ClassDecomposition", 4)?;
        st.serialize_field("classes", &self.classes)?;
        st.serialize_field("closed", &self.closed)?;
        st.serialize_field("period", &self.periods)?;
        st.serialize_field("recurrent", &self.recurrent.to_vec())?;
        st.end()
    }
}

fn require_total<A: Automaton>(a: &A) -> Result<(), StructureError> {
    for q in 0..a.state_count() {
        for symbol in 0..a.alphabet_size() {
            if a.successors(q, symbol).is_empty() {
                return Err(StructureError::EmptyTransition { state: q, symbol });
            }
        }
    }
    Ok(())
}

/// Deduplicated out-neighbour lists of the transition digraph.
fn adjacency<A: Automaton>(a: &A) -> Vec<Vec<State>> {
    (0..a.state_count())
        .map(|q| {
            let mut out: Vec<State> = (0..a.alphabet_size())
                .flat_map(|s| a.successors(q, s).iter().copied())
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect()
}

/// Iterative Tarjan SCC; components returned unordered, members unsorted.
fn tarjan(adj: &[Vec<State>]) -> Vec<Vec<State>> {
    const UNVISITED: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<State> = Vec::new();
    let mut next_index = 0;
    let mut components = Vec::new();
    let mut call: Vec<(State, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, 0));

        while let Some(&mut (v, ref mut cursor)) = call.last_mut() {
            if *cursor < adj[v].len() {
                let w = adj[v][*cursor];
                *cursor += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&mut (parent, _)) = call.last_mut() {
                    lowlink[parent] = lowlink[parent].min(lowlink[v]);
                }
                if lowlink[v] == index[v] {
                    // Root of an SCC: pop the component.
                    let mut component = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        component.push(w);
                        if w == v {
                            break;
                        }
                    }
                    components.push(component);
                }
            }
        }
    }
    components
}

/// Period of a closed, strongly connected state set: gcd over in-class arcs
/// `u → v` of `level(u) + 1 - level(v)` for BFS levels from the smallest
/// member. The result is then re-certified directly: states grouped by
/// `level mod k` must be cycled exactly by the one-step map.
fn class_period(adj: &[Vec<State>], members: &[State]) -> usize {
    let root = members[0];
    let n = adj.len();
    let mut level = vec![usize::MAX; n];
    level[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut g: usize = 0;
    for &u in members {
        for &v in &adj[u] {
            // Strong connectivity puts every arc endpoint on a BFS level,
            // and level(v) <= level(u) + 1.
            g = gcd(g, level[u] + 1 - level[v]);
        }
    }
    assert!(g >= 1, "closed strongly connected class must contain a cycle");

    // Direct certificate: the k residue groups are non-empty and the one-step
    // image of group i is exactly group i+1 (mod k).
    let k = g;
    let mut groups = vec![StateSet::empty(n); k];
    for &u in members {
        groups[level[u] % k].insert(u);
    }
    for i in 0..k {
        assert!(!groups[i].is_empty(), "period certificate: empty residue group");
        let mut image = StateSet::empty(n);
        for u in &groups[i] {
            for &v in &adj[u] {
                image.insert(v);
            }
        }
        assert_eq!(
            image,
            groups[(i + 1) % k],
            "period certificate: one-step image of group {i} is not the next group"
        );
    }
    k
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Decomposes the transition digraph into communicating classes and computes
/// closedness, periods of closed classes, and the recurrent set.
pub fn communicating_classes<A: Automaton>(a: &A) -> Result<ClassDecomposition, StructureError> {
    require_total(a)?;
    let n = a.state_count();
    let adj = adjacency(a);

    let mut classes = tarjan(&adj);
    for class in &mut classes {
        class.sort_unstable();
    }
    classes.sort_by_key(|class| class[0]);

    let mut class_of = vec![0usize; n];
    for (idx, class) in classes.iter().enumerate() {
        for &q in class {
            class_of[q] = idx;
        }
    }

    let mut closed = Vec::with_capacity(classes.len());
    let mut periods = Vec::with_capacity(classes.len());
    let mut recurrent = StateSet::empty(n);
    for (idx, class) in classes.iter().enumerate() {
        let is_closed = class
            .iter()
            .all(|&u| adj[u].iter().all(|&v| class_of[v] == idx));
        closed.push(is_closed);
        if is_closed {
            periods.push(Some(class_period(&adj, class)));
            for &q in class {
                recurrent.insert(q);
            }
        } else {
            periods.push(None);
        }
    }

    Ok(ClassDecomposition { classes, class_of, closed, periods, recurrent })
}

/// Period of `class`, which must be a closed communicating class of `a`.
pub fn period_of_class<A: Automaton>(a: &A, class: &StateSet) -> Result<usize, StructureError> {
    require_total(a)?;
    let n = a.state_count();
    if class.universe() != n {
        return Err(StructureError::UniverseMismatch { expected: n, found: class.universe() });
    }
    if class.is_empty() {
        return Err(StructureError::NotClosedClass { reason: "empty set" });
    }
    let adj = adjacency(a);
    for u in class {
        if adj[u].iter().any(|&v| !class.contains(v)) {
            return Err(StructureError::NotClosedClass { reason: "an arc leaves the set" });
        }
    }
    // Strong connectivity inside the set: forward and backward reachability
    // from its smallest member must cover it.
    let members = class.to_vec();
    let root = members[0];
    let forward = reach_within(&adj, class, root, false);
    if forward != *class {
        return Err(StructureError::NotClosedClass {
            reason: "not strongly connected (forward reachability fails)",
        });
    }
    let backward = reach_within(&adj, class, root, true);
    if backward != *class {
        return Err(StructureError::NotClosedClass {
            reason: "not strongly connected (backward reachability fails)",
        });
    }
    Ok(class_period(&adj, &members))
}

fn reach_within(adj: &[Vec<State>], class: &StateSet, root: State, reverse: bool) -> StateSet {
    let n = adj.len();
    let rev: Vec<Vec<State>>;
    let arcs = if reverse {
        rev = {
            let mut rev = vec![Vec::new(); n];
            for (u, outs) in adj.iter().enumerate() {
                for &v in outs {
                    rev[v].push(u);
                }
            }
            rev
        };
        &rev
    } else {
        adj
    };
    let mut seen = StateSet::singleton(n, root);
    let mut frontier = vec![root];
    while let Some(u) = frontier.pop() {
        for &v in &arcs[u] {
            if class.contains(v) && seen.insert(v) {
                frontier.push(v);
            }
        }
    }
    seen
}

/// Structural ergodicity test: exactly one closed class, of period 1.
/// Returns the decomposition as evidence either way.
pub fn is_ergodic_structure<A: Automaton>(
    a: &A,
) -> Result<(bool, ClassDecomposition), StructureError> {
    let decomposition = communicating_classes(a)?;
    let ergodic = decomposition.is_ergodic();
    Ok((ergodic, decomposition))
}

/// Sizes of the closed classes, in class order.
pub fn closed_class_sizes<A: Automaton>(a: &A) -> Result<Vec<usize>, StructureError> {
    let decomposition = communicating_classes(a)?;
    Ok(decomposition
        .closed_class_indices()
        .map(|i| decomposition.class(i).len())
        .collect())
}
