use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::canon::{canonical_key, canonicalize_linear, Deriver};
use crate::scalar::Scalar;
use crate::term::Term;

use super::{raw_successors, Calculus, RuleLabel, Trace};

/// How a normalization run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalizeOutcome {
    /// Reached a value.
    Value,
    /// No rule applies but the term is not a value, e.g. `x y`.
    Stuck,
    /// The step budget ran out.
    Timeout,
}

#[derive(Debug, Clone)]
pub struct Normalization<S> {
    pub outcome: NormalizeOutcome,
    pub trace: Trace<S>,
    /// Number of non-vector-space steps fired.
    pub steps: usize,
}

impl<S: Scalar> Normalization<S> {
    pub fn result(&self) -> &Term<S> {
        self.trace.last()
    }
}

/// Reduces `t` with a fixed strategy: bring the term to linear canonical form,
/// then fire the leftmost-outermost redex of a β or algebraic rule, and
/// repeat. Only those firings count toward `max_steps`.
pub fn normalize<S: Scalar>(t: &Term<S>, calculus: Calculus, max_steps: usize) -> Normalization<S> {
    let mut d = Deriver::new(t.clone());
    let mut fired = 0;
    let outcome = loop {
        d.normalize_at(&mut Vec::new());
        if d.current.is_value() {
            break NormalizeOutcome::Value;
        }
        let next = raw_successors(&d.current, calculus)
            .into_iter()
            .filter(|s| !s.rule.is_vector_space())
            .min_by(|a, b| a.path.cmp(&b.path));
        let Some(next) = next else {
            break NormalizeOutcome::Stuck;
        };
        if fired == max_steps {
            break NormalizeOutcome::Timeout;
        }
        d.push(next.rule, &next.path, next.target);
        fired += 1;
    };
    Normalization {
        outcome,
        trace: d.into_trace(),
        steps: fired,
    }
}

/// Result of a bounded reachability query.
#[derive(Debug, Clone)]
pub enum Reachability<S> {
    Reached(Trace<S>),
    /// The whole reachable space was explored without finding the target.
    Unreachable {
        states: usize,
    },
    /// The state budget ran out first.
    Exhausted {
        states: usize,
    },
}

impl<S> Reachability<S> {
    pub fn is_reached(&self) -> bool {
        matches!(self, Reachability::Reached(_))
    }

    pub fn trace(&self) -> Option<&Trace<S>> {
        match self {
            Reachability::Reached(t) => Some(t),
            _ => None,
        }
    }
}

/// Whether `from` reduces to a term equal to `to` modulo the vector-space
/// rules. A found trace ends at the canonical form shared with `to`.
///
/// A fast search over canonical states runs first. It can miss targets: a
/// non-canonical term such as `(0 + x) z` or `M + M` has successors its
/// canonical form lacks. A miss is therefore confirmed by an exact search
/// over raw terms before `Unreachable` is reported.
pub fn reachable<S: Scalar>(
    from: &Term<S>,
    to: &Term<S>,
    calculus: Calculus,
    max_states: usize,
) -> Reachability<S> {
    let goal = canonical_key(to);
    let fast = Search::run(from, calculus, max_states, |_, key| key == goal);
    if let Some(i) = fast.hit {
        return Reachability::Reached(fast.trace_to(i));
    }
    let exact = Search::run_exact(from, calculus, max_states, |_, key| key == goal);
    match exact.hit {
        Some(i) => Reachability::Reached(exact.trace_to(i)),
        None if exact.complete => Reachability::Unreachable {
            states: exact.len(),
        },
        None => Reachability::Exhausted {
            states: exact.len(),
        },
    }
}

struct Node<S> {
    term: Term<S>,
    parent: Option<(usize, RuleLabel, Vec<u8>)>,
}

/// A breadth-first exploration of the states reachable from a term.
///
/// States are linear canonical forms, identified up to alpha-equivalence.
/// Every term reduces to its canonical form by vector-space steps, so each
/// state is reachable; vector-space steps outside application arguments do
/// not change the state and are not expanded. The converse fails: some
/// reachable canonical forms are only found by [`Search::run_exact`].
pub struct Search<S> {
    initial: Term<S>,
    nodes: Vec<Node<S>>,
    exact: bool,
    pub complete: bool,
    pub hit: Option<usize>,
}

impl<S: Scalar> Search<S> {
    /// Explores until `is_goal` accepts a state (given as canonical term and
    /// its key), the space is exhausted, or `max_states` states are stored.
    pub fn run(
        from: &Term<S>,
        calculus: Calculus,
        max_states: usize,
        mut is_goal: impl FnMut(&Term<S>, &str) -> bool,
    ) -> Search<S> {
        let mut seen: HashSet<String> = HashSet::new();
        let mut search = Search {
            initial: from.clone(),
            nodes: Vec::new(),
            exact: false,
            complete: false,
            hit: None,
        };
        let mut queue = VecDeque::new();
        let start = canonicalize_linear(from);
        let key = start.key();
        let done = is_goal(&start, &key);
        seen.insert(key);
        search.nodes.push(Node {
            term: start,
            parent: None,
        });
        if done {
            search.hit = Some(0);
            return search;
        }
        queue.push_back(0);
        while let Some(i) = queue.pop_front() {
            let term = search.nodes[i].term.clone();
            for raw in raw_successors(&term, calculus) {
                if raw.rule.is_vector_space() && !raw.in_argument {
                    continue;
                }
                let next = canonicalize_linear(&raw.target);
                let key = next.key();
                if seen.contains(&key) {
                    continue;
                }
                if search.nodes.len() >= max_states {
                    return search;
                }
                let goal = is_goal(&next, &key);
                seen.insert(key);
                search.nodes.push(Node {
                    term: next,
                    parent: Some((i, raw.rule, raw.path)),
                });
                let j = search.nodes.len() - 1;
                if goal {
                    search.hit = Some(j);
                    return search;
                }
                queue.push_back(j);
            }
        }
        search.complete = true;
        search
    }

    /// Like [`Search::run`], but over raw terms up to alpha-equivalence with
    /// every step expanded. Complete, and much larger.
    pub fn run_exact(
        from: &Term<S>,
        calculus: Calculus,
        max_states: usize,
        mut is_goal: impl FnMut(&Term<S>, &str) -> bool,
    ) -> Search<S> {
        let mut seen: HashSet<String> = HashSet::new();
        let mut search = Search {
            initial: from.clone(),
            nodes: Vec::new(),
            exact: true,
            complete: false,
            hit: None,
        };
        let mut test = |t: &Term<S>| {
            let c = canonicalize_linear(t);
            let key = c.key();
            is_goal(&c, &key)
        };
        seen.insert(from.key());
        search.nodes.push(Node {
            term: from.clone(),
            parent: None,
        });
        if test(from) {
            search.hit = Some(0);
            return search;
        }
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            let term = search.nodes[i].term.clone();
            for raw in raw_successors(&term, calculus) {
                if !seen.insert(raw.target.key()) {
                    continue;
                }
                if search.nodes.len() >= max_states {
                    return search;
                }
                let goal = test(&raw.target);
                search.nodes.push(Node {
                    term: raw.target,
                    parent: Some((i, raw.rule, raw.path)),
                });
                let j = search.nodes.len() - 1;
                if goal {
                    search.hit = Some(j);
                    return search;
                }
                queue.push_back(j);
            }
        }
        search.complete = true;
        search
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn states(&self) -> impl Iterator<Item = &Term<S>> {
        self.nodes.iter().map(|n| &n.term)
    }

    /// A full trace from the start term to state `i`, with the vector-space
    /// steps that lead to each canonical state spelled out.
    pub fn trace_to(&self, i: usize) -> Trace<S> {
        let mut chain = Vec::new();
        let mut cur = i;
        while let Some((parent, rule, path)) = &self.nodes[cur].parent {
            chain.push((*rule, path.clone()));
            cur = *parent;
        }
        chain.reverse();
        let mut d = Deriver::new(self.initial.clone());
        if !self.exact {
            d.normalize_at(&mut Vec::new());
        }
        for (rule, path) in chain {
            d.apply(rule, &path);
            if !self.exact {
                d.normalize_at(&mut Vec::new());
            }
        }
        if self.exact {
            d.normalize_at(&mut Vec::new());
        }
        d.into_trace()
    }
}
