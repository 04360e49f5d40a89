use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::scalar::Scalar;
use crate::term::Term;

use super::{fire, Calculus, RuleLabel};

/// Position of a subterm as child indices from the root.
///
/// Applications number the function 0 and the argument 1, sums their left
/// and right summands 0 and 1, and scalings and abstractions their body 0.
/// The root is the empty path, printed `ε`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path(pub Vec<u8>);

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Path {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "ε" || s.is_empty() {
            return Ok(Path::default());
        }
        s.split('.')
            .map(|part| match part {
                "0" => Ok(0),
                "1" => Ok(1),
                _ => Err(format!("bad path component `{part}`")),
            })
            .collect::<Result<_, _>>()
            .map(Path)
    }
}

/// One labelled rewrite `source → target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step<S> {
    pub source: Term<S>,
    pub target: Term<S>,
    pub rule: RuleLabel,
    pub path: Path,
}

impl<S: Scalar> Step<S> {
    /// Re-fires the rule at the recorded position and checks the result.
    pub fn replay(&self) -> bool {
        self.source
            .replace_at(&self.path.0, &mut |sub| fire(self.rule, sub))
            .is_some_and(|t| t.alpha_eq(&self.target))
    }

    /// Whether the recorded position is a reduction context of `calculus`.
    pub fn in_context(&self, calculus: Calculus) -> bool {
        let mut cur = &self.source;
        for &i in &self.path.0 {
            cur = match (cur, i) {
                (Term::App(f, _), 0) => f,
                (Term::App(f, a), 1) if calculus == Calculus::Lin && f.is_value() => a,
                (Term::Sum(l, _), 0) => l,
                (Term::Sum(_, r), 1) => r,
                (Term::Scale(_, b), 0) => b,
                _ => return false,
            };
        }
        true
    }

    /// The context rules used to reach the redex, outermost first.
    pub fn context_rules(&self) -> Vec<RuleLabel> {
        let mut out = Vec::with_capacity(self.path.0.len());
        let mut cur = &self.source;
        for &i in &self.path.0 {
            let (rule, next) = match (cur, i) {
                (Term::App(f, _), 0) => (RuleLabel::XiAppL, f),
                (Term::App(_, a), 1) => (RuleLabel::XiLinAppR, a),
                (Term::Sum(l, _), 0) => (RuleLabel::XiSumL, l),
                (Term::Sum(_, r), 1) => (RuleLabel::XiSumR, r),
                (Term::Scale(_, b), 0) => (RuleLabel::XiScale, b),
                _ => break,
            };
            out.push(rule);
            cur = next;
        }
        out
    }
}

/// A reduction sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace<S> {
    pub initial: Term<S>,
    pub steps: Vec<Step<S>>,
}

#[derive(Serialize)]
struct StepJson<'a> {
    rule: RuleLabel,
    path: &'a [u8],
    context: Vec<RuleLabel>,
    term: String,
}

#[derive(Serialize)]
struct TraceJson<'a> {
    initial: String,
    steps: Vec<StepJson<'a>>,
    last: String,
}

impl<S: Scalar> Trace<S> {
    pub fn new(initial: Term<S>) -> Self {
        Trace {
            initial,
            steps: Vec::new(),
        }
    }

    pub fn last(&self) -> &Term<S> {
        self.steps.last().map_or(&self.initial, |s| &s.target)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: Step<S>) {
        self.steps.push(step);
    }

    /// Appends another trace starting where this one ends.
    pub fn extend(&mut self, other: Trace<S>) {
        self.steps.extend(other.steps);
    }

    /// Every term along the trace, the initial one included.
    pub fn terms(&self) -> impl Iterator<Item = &Term<S>> {
        std::iter::once(&self.initial).chain(self.steps.iter().map(|s| &s.target))
    }

    /// Each step replays, each starts where the previous ended, and each
    /// happens in a context of `calculus`.
    pub fn check(&self, calculus: Calculus) -> bool {
        let mut cur = &self.initial;
        for step in &self.steps {
            if !step.source.alpha_eq(cur) || !step.in_context(calculus) || !step.replay() {
                return false;
            }
            cur = &step.target;
        }
        true
    }

    /// Count of uses per rule label, context rules included.
    pub fn rule_counts(&self) -> [usize; 28] {
        let mut counts = [0; 28];
        for step in &self.steps {
            counts[step.rule.index()] += 1;
            for c in step.context_rules() {
                counts[c.index()] += 1;
            }
        }
        counts
    }

    /// The initial term, then one `<rule> @ <path>  <term>` line per step.
    pub fn render_text(&self) -> String {
        let mut out = format!("{}\n", self.initial);
        for step in &self.steps {
            out.push_str(&format!("{} @ {}  {}\n", step.rule, step.path, step.target));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = TraceJson {
            initial: self.initial.to_string(),
            steps: self
                .steps
                .iter()
                .map(|s| StepJson {
                    rule: s.rule,
                    path: &s.path.0,
                    context: s.context_rules(),
                    term: s.target.to_string(),
                })
                .collect(),
            last: self.last().to_string(),
        };
        serde_json::to_value(doc).expect("trace serializes")
    }
}

impl<S: Scalar> fmt::Display for Trace<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}
