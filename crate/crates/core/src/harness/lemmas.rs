//! Instance generation and the per-instance check of each property.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canon::{canonical_key, canonicalize_linear};
use crate::cps::{colon_k, cps, cps_applied, Direction};
use crate::inverse::{
    apply_continuation, inv_computation, inv_suspension, inv_value, is_base_computation,
    is_base_suspension, is_computation, is_continuation, is_cps_value, is_suspension,
};
use crate::rewrite::Calculus;
use crate::rewrite::{
    normalize, raw_successors, reachable, steps_to, successors, NormalizeOutcome, Reachability,
    RuleLabel, Search, Trace,
};
use crate::scalar::Scalar;
use crate::term::{Term, Var};

use super::generate::Fragments;
use super::Budgets;

/// A property checked on generated instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaId {
    InverseTerm,
    InverseValue,
    Substitution,
    ContinuationComposition,
    ContinuationSubstitution,
    ContinuationStep,
    ContinuationLinearity,
    SuspensionStep,
    InverseStep,
    GrammarClosure,
    Indifference,
    FreeVars,
    Administrative,
    Soundness,
    Completeness,
}

impl LemmaId {
    pub const ALL: [LemmaId; 15] = [
        LemmaId::InverseTerm,
        LemmaId::InverseValue,
        LemmaId::Substitution,
        LemmaId::ContinuationComposition,
        LemmaId::ContinuationSubstitution,
        LemmaId::ContinuationStep,
        LemmaId::ContinuationLinearity,
        LemmaId::SuspensionStep,
        LemmaId::InverseStep,
        LemmaId::GrammarClosure,
        LemmaId::Indifference,
        LemmaId::FreeVars,
        LemmaId::Administrative,
        LemmaId::Soundness,
        LemmaId::Completeness,
    ];

    /// The lemmas proper, without the two end-to-end theorems.
    pub const LEMMAS: [LemmaId; 13] = [
        LemmaId::InverseTerm,
        LemmaId::InverseValue,
        LemmaId::Substitution,
        LemmaId::ContinuationComposition,
        LemmaId::ContinuationSubstitution,
        LemmaId::ContinuationStep,
        LemmaId::ContinuationLinearity,
        LemmaId::SuspensionStep,
        LemmaId::InverseStep,
        LemmaId::GrammarClosure,
        LemmaId::Indifference,
        LemmaId::FreeVars,
        LemmaId::Administrative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::InverseTerm => "inverse-term",
            LemmaId::InverseValue => "inverse-value",
            LemmaId::Substitution => "substitution",
            LemmaId::ContinuationComposition => "continuation-composition",
            LemmaId::ContinuationSubstitution => "continuation-substitution",
            LemmaId::ContinuationStep => "continuation-step",
            LemmaId::ContinuationLinearity => "continuation-linearity",
            LemmaId::SuspensionStep => "suspension-step",
            LemmaId::InverseStep => "inverse-step",
            LemmaId::GrammarClosure => "grammar-closure",
            LemmaId::Indifference => "indifference",
            LemmaId::FreeVars => "free-vars",
            LemmaId::Administrative => "administrative",
            LemmaId::Soundness => "soundness",
            LemmaId::Completeness => "completeness",
        }
    }

    pub fn index(self) -> usize {
        LemmaId::ALL
            .iter()
            .position(|&l| l == self)
            .expect("listed")
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown check `{0}`")]
pub struct UnknownLemma(pub String);

impl FromStr for LemmaId {
    type Err = UnknownLemma;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| UnknownLemma(s.to_string()))
    }
}

/// The inputs of one check: terms whose roles depend on the property, and
/// a scalar for the properties that need one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance<S> {
    pub terms: Vec<Term<S>>,
    pub scalar: Option<S>,
}

impl<S: Scalar> Instance<S> {
    fn of(terms: Vec<Term<S>>) -> Self {
        Instance {
            terms,
            scalar: None,
        }
    }

    pub fn render(&self) -> Vec<String> {
        let mut out: Vec<String> = self.terms.iter().map(Term::to_string).collect();
        if let Some(a) = &self.scalar {
            out.push(format!("scalar {a}"));
        }
        out
    }
}

#[derive(Debug, Clone)]
pub enum Verdict<S> {
    Pass,
    Fail {
        detail: String,
        witness: Option<Trace<S>>,
    },
    Inconclusive(String),
    /// The instance does not meet the property's hypotheses.
    Skip,
}

impl<S> Verdict<S> {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    fn fail(detail: impl Into<String>) -> Self {
        Verdict::Fail {
            detail: detail.into(),
            witness: None,
        }
    }

    /// Keeps the first failure, else the first inconclusive result.
    fn and(self, other: Verdict<S>) -> Verdict<S> {
        match (&self, &other) {
            (Verdict::Fail { .. }, _) | (Verdict::Skip, _) => self,
            (_, Verdict::Fail { .. }) | (_, Verdict::Skip) => other,
            (Verdict::Inconclusive(_), _) => self,
            _ => other,
        }
    }
}

/// Uses of each rule label seen while checking.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Coverage(pub [u64; 28]);

impl Coverage {
    pub fn add_rule(&mut self, rule: RuleLabel) {
        self.0[rule.index()] += 1;
    }

    pub fn add_trace<S: Scalar>(&mut self, trace: &Trace<S>) {
        for (c, n) in self.0.iter_mut().zip(trace.rule_counts()) {
            *c += n as u64;
        }
    }

    /// Counts the rule and the context rules of every one-step successor.
    pub fn add_successors<S: Scalar>(&mut self, t: &Term<S>, calculus: Calculus) {
        for s in successors(t, calculus) {
            self.add_rule(s.rule);
            for c in s.context_rules() {
                self.add_rule(c);
            }
        }
    }

    pub fn merge(&mut self, other: &Coverage) {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
    }

    pub fn missing(&self) -> Vec<RuleLabel> {
        RuleLabel::ALL
            .into_iter()
            .filter(|r| self.0[r.index()] == 0)
            .collect()
    }

    pub fn get(&self, rule: RuleLabel) -> u64 {
        self.0[rule.index()]
    }
}

impl Serialize for Coverage {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(28))?;
        for r in RuleLabel::ALL {
            map.serialize_entry(r.name(), &self.0[r.index()])?;
        }
        map.end()
    }
}

/// Draws one instance, or `None` when the draw misses the hypotheses.
pub(crate) fn generate<S: Scalar>(
    id: LemmaId,
    f: &Fragments<'_, S>,
    budgets: &Budgets,
    rng: &mut ChaCha8Rng,
) -> Option<Instance<S>> {
    let dir = f.dir;
    let inst = match id {
        LemmaId::InverseTerm | LemmaId::FreeVars | LemmaId::Administrative => {
            Instance::of(vec![f.source(rng)])
        }
        LemmaId::InverseValue => {
            let d = rng.random_range(0..=f.depth);
            Instance::of(vec![f.terms.value(rng, d)])
        }
        LemmaId::Substitution => {
            let b1 = f.cps_value(rng);
            let t = f.suspension(rng, 2);
            let c = f.base_computation(rng);
            let k = f.continuation(rng, 3);
            let m = f.small_source(rng);
            let q = match dir {
                Direction::V2n => f.cps_value(rng),
                Direction::N2v => f.base_suspension(rng),
            };
            let mut vars: Vec<Var> = [&b1, &t, &c, &k]
                .iter()
                .flat_map(|t| t.free_vars())
                .filter(Var::is_source)
                .collect();
            vars.sort();
            vars.dedup();
            let x = if !vars.is_empty() && rng.random_bool(0.8) {
                vars[rng.random_range(0..vars.len())].clone()
            } else {
                f.terms.var(rng)
            };
            Instance::of(vec![b1, t, c, k, m, q, Term::Var(x)])
        }
        LemmaId::ContinuationComposition => {
            let k1 = f.continuation(rng, 3);
            let k2 = f.continuation(rng, 3);
            Instance::of(vec![k1, k2, f.source(rng)])
        }
        LemmaId::ContinuationSubstitution => {
            Instance::of(vec![f.continuation(rng, 3), f.base_computation(rng)])
        }
        LemmaId::ContinuationStep => {
            let m = f.source(rng);
            if raw_successors(&m, dir.source()).is_empty() {
                return None;
            }
            Instance::of(vec![f.continuation(rng, 3), m])
        }
        LemmaId::ContinuationLinearity => Instance {
            terms: vec![
                f.continuation(rng, 3),
                f.small_source(rng),
                f.small_source(rng),
            ],
            scalar: Some(f.terms.scalar(rng)),
        },
        LemmaId::SuspensionStep => Instance::of(vec![f.suspension(rng, 3)]),
        LemmaId::InverseStep | LemmaId::Indifference => Instance::of(vec![f.computation(rng)]),
        LemmaId::GrammarClosure => Instance::of(vec![
            f.computation(rng),
            f.suspension(rng, 3),
            f.continuation(rng, 3),
            f.cps_value(rng),
        ]),
        LemmaId::Soundness | LemmaId::Completeness => {
            let m = f.source(rng);
            let n = normalize(&m, dir.source(), budgets.max_steps);
            if n.outcome != NormalizeOutcome::Value {
                return None;
            }
            Instance::of(vec![m])
        }
    };
    Some(inst)
}

/// Checks one instance, adding the rules it exercises to `cov`.
pub fn check_instance<S: Scalar>(
    id: LemmaId,
    dir: Direction,
    inst: &Instance<S>,
    budgets: &Budgets,
    cov: &mut Coverage,
) -> Verdict<S> {
    let mut c = Checker { dir, budgets, cov };
    let t = &inst.terms;
    let arity = match id {
        LemmaId::Substitution => 7,
        LemmaId::ContinuationComposition | LemmaId::ContinuationLinearity => 3,
        LemmaId::ContinuationSubstitution | LemmaId::ContinuationStep => 2,
        LemmaId::GrammarClosure => 4,
        _ => 1,
    };
    if t.len() != arity {
        return Verdict::Skip;
    }
    match id {
        LemmaId::InverseTerm => c.inverse_term(&t[0]),
        LemmaId::InverseValue => c.inverse_value(&t[0]),
        LemmaId::Substitution => c.substitution(t),
        LemmaId::ContinuationComposition => c.continuation_composition(&t[0], &t[1], &t[2]),
        LemmaId::ContinuationSubstitution => c.continuation_substitution(&t[0], &t[1]),
        LemmaId::ContinuationStep => c.continuation_step(&t[0], &t[1]),
        LemmaId::ContinuationLinearity => match &inst.scalar {
            Some(a) => c.continuation_linearity(&t[0], &t[1], &t[2], a),
            None => Verdict::Skip,
        },
        LemmaId::SuspensionStep => c.suspension_step(&t[0]),
        LemmaId::InverseStep => c.inverse_step(&t[0]),
        LemmaId::GrammarClosure => c.grammar_closure(t),
        LemmaId::Indifference => c.indifference(&t[0]),
        LemmaId::FreeVars => c.free_vars(&t[0]),
        LemmaId::Administrative => c.administrative(&t[0]),
        LemmaId::Soundness => c.soundness(&t[0]),
        LemmaId::Completeness => c.completeness(&t[0]),
    }
}

macro_rules! require {
    ($cond:expr) => {
        if !$cond {
            return Verdict::Skip;
        }
    };
}

macro_rules! attempt {
    ($e:expr, $what:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Verdict::fail(format!("{}: {}", $what, e)),
        }
    };
}

struct Checker<'a> {
    dir: Direction,
    budgets: &'a Budgets,
    cov: &'a mut Coverage,
}

fn same<S: Scalar>(what: &str, lhs: &Term<S>, rhs: &Term<S>) -> Verdict<S> {
    if lhs.alpha_eq(rhs) {
        Verdict::Pass
    } else {
        Verdict::fail(format!("{what}: {lhs}  ≠  {rhs}"))
    }
}

impl Checker<'_> {
    fn reach<S: Scalar>(&mut self, from: &Term<S>, to: &Term<S>, calculus: Calculus) -> Verdict<S> {
        match reachable(from, to, calculus, self.budgets.max_states) {
            Reachability::Reached(trace) => {
                self.cov.add_trace(&trace);
                Verdict::Pass
            }
            Reachability::Unreachable { states } => Verdict::fail(format!(
                "{to} is not reachable from {from} in {calculus} ({states} states explored)"
            )),
            Reachability::Exhausted { states } => Verdict::Inconclusive(format!(
                "budget of {states} states exhausted looking for {to} from {from}"
            )),
        }
    }

    fn inverse_term<S: Scalar>(&mut self, m: &Term<S>) -> Verdict<S> {
        require!(m.is_source_term());
        let d = attempt!(cps_applied(m, self.dir), "translation");
        let back = attempt!(inv_computation(&d, self.dir), "inverse of the translation");
        same("inverse of the translation", &back, m)
    }

    fn inverse_value<S: Scalar>(&mut self, v: &Term<S>) -> Verdict<S> {
        require!(v.is_source_term() && v.is_value());
        let d = attempt!(colon_k(v, self.dir), "colon translation");
        let back = attempt!(inv_computation(&d, self.dir), "inverse of V:k");
        same("inverse of V:k", &back, v)
    }

    fn substitution<S: Scalar>(&mut self, t: &[Term<S>]) -> Verdict<S> {
        let dir = self.dir;
        let [b1, sus, c, k, m, q, xt] = t else {
            return Verdict::Skip;
        };
        let Term::Var(x) = xt else {
            return Verdict::Skip;
        };
        require!(x.is_source() && m.is_source_term());
        require!(is_cps_value(b1, dir) && is_suspension(sus, dir));
        require!(is_base_computation(c, dir) && is_continuation(k, dir));
        let p = match dir {
            Direction::V2n => {
                require!(is_cps_value(q, dir));
                attempt!(inv_value(q, dir), "inverse of the substituted value")
            }
            Direction::N2v => {
                require!(is_base_suspension(q, dir));
                attempt!(
                    inv_suspension(q, dir),
                    "inverse of the substituted suspension"
                )
            }
        };
        let sub = |t: &Term<S>| t.substitute(x, q);
        let lhs = attempt!(inv_value(b1, dir), "value").substitute(x, &p);
        let rhs = attempt!(inv_value(&sub(b1), dir), "substituted value");
        let v = same("values", &lhs, &rhs);
        let lhs = attempt!(inv_suspension(sus, dir), "suspension").substitute(x, &p);
        let rhs = attempt!(inv_suspension(&sub(sus), dir), "substituted suspension");
        let v = v.and(same("suspensions", &lhs, &rhs));
        let lhs = attempt!(inv_computation(c, dir), "computation").substitute(x, &p);
        let rhs = attempt!(inv_computation(&sub(c), dir), "substituted computation");
        let v = v.and(same("computations", &lhs, &rhs));
        let lhs = attempt!(apply_continuation(k, m, dir), "continuation").substitute(x, &p);
        let rhs = attempt!(
            apply_continuation(&sub(k), &m.substitute(x, &p), dir),
            "substituted continuation"
        );
        v.and(same("continuations", &lhs, &rhs))
    }

    fn continuation_composition<S: Scalar>(
        &mut self,
        k1: &Term<S>,
        k2: &Term<S>,
        m: &Term<S>,
    ) -> Verdict<S> {
        let dir = self.dir;
        require!(is_continuation(k1, dir) && is_continuation(k2, dir) && m.is_source_term());
        let inner = attempt!(apply_continuation(k2, m, dir), "inner continuation");
        let lhs = attempt!(apply_continuation(k1, &inner, dir), "outer continuation");
        let composed = k2.substitute(&Var::k(), k1);
        let rhs = attempt!(
            apply_continuation(&composed, m, dir),
            "composed continuation"
        );
        same("composition", &lhs, &rhs)
    }

    fn continuation_substitution<S: Scalar>(&mut self, k: &Term<S>, c: &Term<S>) -> Verdict<S> {
        let dir = self.dir;
        require!(is_continuation(k, dir) && is_base_computation(c, dir));
        let inv = attempt!(inv_computation(c, dir), "computation");
        let lhs = attempt!(apply_continuation(k, &inv, dir), "continuation");
        let plugged = c.substitute(&Var::k(), k);
        let rhs = attempt!(
            inv_computation(&plugged, dir),
            "computation with k replaced"
        );
        same("continuation substitution", &lhs, &rhs)
    }

    fn continuation_step<S: Scalar>(&mut self, k: &Term<S>, m: &Term<S>) -> Verdict<S> {
        let dir = self.dir;
        let calc = dir.source();
        require!(is_continuation(k, dir) && m.is_source_term());
        let steps = successors(m, calc);
        require!(!steps.is_empty());
        let lhs = attempt!(apply_continuation(k, m, dir), "continuation");
        self.cov.add_successors(&lhs, calc);
        for s in steps {
            let rhs = attempt!(apply_continuation(k, &s.target, dir), "continuation");
            if !steps_to(&lhs, &rhs, calc) {
                return Verdict::fail(format!(
                    "{m} → {} by {}, but {lhs} does not step to {rhs}",
                    s.target, s.rule
                ));
            }
        }
        Verdict::Pass
    }

    fn continuation_linearity<S: Scalar>(
        &mut self,
        k: &Term<S>,
        m1: &Term<S>,
        m2: &Term<S>,
        alpha: &S,
    ) -> Verdict<S> {
        let dir = self.dir;
        let calc = dir.source();
        require!(is_continuation(k, dir) && m1.is_source_term() && m2.is_source_term());
        let fill = |m: &Term<S>| apply_continuation(k, m, dir);
        let sum = attempt!(fill(&Term::sum(m1.clone(), m2.clone())), "continuation");
        let split = Term::sum(
            attempt!(fill(m1), "continuation"),
            attempt!(fill(m2), "continuation"),
        );
        let v = self.reach(&sum, &split, calc);
        let scaled = attempt!(
            fill(&Term::scale(alpha.clone(), m1.clone())),
            "continuation"
        );
        let pulled = Term::scale(alpha.clone(), attempt!(fill(m1), "continuation"));
        let v = v.and(self.reach(&scaled, &pulled, calc));
        let zero = attempt!(fill(&Term::Zero), "continuation");
        v.and(self.reach(&zero, &Term::Zero, calc))
    }

    fn suspension_step<S: Scalar>(&mut self, t: &Term<S>) -> Verdict<S> {
        let dir = self.dir;
        require!(is_suspension(t, dir));
        let before = attempt!(inv_suspension(t, dir), "suspension");
        for s in successors(t, dir.target()) {
            self.cov.add_rule(s.rule);
            if !is_suspension(&s.target, dir) {
                return Verdict::fail(format!("{t} → {} leaves the suspensions", s.target));
            }
            let after = attempt!(inv_suspension(&s.target, dir), "suspension");
            if !steps_to(&before, &after, dir.source()) {
                return Verdict::fail(format!(
                    "{t} → {} by {}, but {before} does not step to {after}",
                    s.target, s.rule
                ));
            }
        }
        Verdict::Pass
    }

    fn inverse_step<S: Scalar>(&mut self, d: &Term<S>) -> Verdict<S> {
        let dir = self.dir;
        require!(is_computation(d, dir));
        let before = attempt!(inv_computation(d, dir), "computation");
        let mut verdict = Verdict::Pass;
        for s in successors(d, dir.target()) {
            self.cov.add_rule(s.rule);
            for c in s.context_rules() {
                self.cov.add_rule(c);
            }
            let after = attempt!(
                inv_computation(&s.target, dir),
                format!("successor by {} @ {}", s.rule, s.path)
            );
            let v = match self.reach(&before, &after, dir.source()) {
                Verdict::Fail { detail, .. } => Verdict::fail(format!(
                    "{d} → {} by {} @ {}; {detail}",
                    s.target, s.rule, s.path
                )),
                v => v,
            };
            verdict = verdict.and(v);
            if verdict.is_fail() {
                break;
            }
        }
        verdict
    }

    fn grammar_closure<S: Scalar>(&mut self, t: &[Term<S>]) -> Verdict<S> {
        let dir = self.dir;
        let [d, sus, k, b] = t else {
            return Verdict::Skip;
        };
        require!(is_computation(d, dir) && is_suspension(sus, dir));
        require!(is_continuation(k, dir) && is_cps_value(b, dir));
        let classes: [(&Term<S>, fn(&Term<S>, Direction) -> bool, &str); 4] = [
            (d, is_computation, "computation"),
            (sus, is_suspension, "suspension"),
            (k, is_continuation, "continuation"),
            (b, is_cps_value, "value"),
        ];
        for (t, member, class) in classes {
            for s in successors(t, dir.target()) {
                self.cov.add_rule(s.rule);
                if !member(&s.target, dir) {
                    return Verdict::fail(format!(
                        "{t} → {} by {} @ {} is not a {class}",
                        s.target, s.rule, s.path
                    ));
                }
            }
        }
        Verdict::Pass
    }

    fn indifference<S: Scalar>(&mut self, d: &Term<S>) -> Verdict<S> {
        require!(is_computation(d, self.dir));
        let keys = |calc| {
            successors(d, calc)
                .into_iter()
                .map(|s| (s.target.key(), s))
                .collect::<std::collections::BTreeMap<_, _>>()
        };
        let lin = keys(Calculus::Lin);
        let alg = keys(Calculus::Alg);
        for s in lin.values().chain(alg.values()) {
            self.cov.add_rule(s.rule);
        }
        let only =
            |a: &std::collections::BTreeMap<String, crate::rewrite::Step<S>>,
             b: &std::collections::BTreeMap<String, crate::rewrite::Step<S>>| {
                a.iter()
                    .filter(|(k, _)| !b.contains_key(*k))
                    .map(|(_, s)| format!("{} by {}", s.target, s.rule))
                    .collect::<Vec<_>>()
            };
        let lin_only = only(&lin, &alg);
        let alg_only = only(&alg, &lin);
        if lin_only.is_empty() && alg_only.is_empty() {
            Verdict::Pass
        } else {
            Verdict::fail(format!(
                "{d}: only in lin [{}]; only in alg [{}]",
                lin_only.join(", "),
                alg_only.join(", ")
            ))
        }
    }

    fn free_vars<S: Scalar>(&mut self, m: &Term<S>) -> Verdict<S> {
        require!(m.is_source_term());
        let fv = m.free_vars();
        let t = attempt!(cps(m, self.dir), "translation");
        if t.free_vars() != fv {
            return Verdict::fail(format!("free variables of {t} differ from those of {m}"));
        }
        let applied = attempt!(cps_applied(m, self.dir), "translation");
        let mut with_k: BTreeSet<Var> = fv;
        with_k.insert(Var::k());
        if applied.free_vars() != with_k {
            return Verdict::fail(format!(
                "free variables of {applied} are not those of {m} and k"
            ));
        }
        Verdict::Pass
    }

    fn administrative<S: Scalar>(&mut self, m: &Term<S>) -> Verdict<S> {
        require!(m.is_source_term());
        let from = attempt!(cps_applied(m, self.dir), "translation");
        let to = attempt!(colon_k(m, self.dir), "colon translation");
        self.reach(&from, &to, self.dir.target())
    }

    fn soundness<S: Scalar>(&mut self, m: &Term<S>) -> Verdict<S> {
        let dir = self.dir;
        require!(m.is_source_term());
        let n = normalize(m, dir.source(), self.budgets.max_steps);
        self.cov.add_trace(&n.trace);
        match n.outcome {
            NormalizeOutcome::Value => {}
            NormalizeOutcome::Stuck => return Verdict::Skip,
            NormalizeOutcome::Timeout => {
                return Verdict::Inconclusive(format!("{m} did not normalize"));
            }
        }
        let v = n.result().clone();
        let from = attempt!(cps_applied(m, dir), "translation");
        let to = attempt!(colon_k(&v, dir), "colon translation");
        match self.reach(&from, &to, dir.target()) {
            Verdict::Fail { detail, .. } => Verdict::fail(format!("{m} →* {v}, but {detail}")),
            other => other,
        }
    }

    fn completeness<S: Scalar>(&mut self, m: &Term<S>) -> Verdict<S> {
        let dir = self.dir;
        require!(m.is_source_term());
        let from = attempt!(cps_applied(m, dir), "translation");
        let search = Search::run(&from, dir.target(), self.budgets.max_states, |_, _| false);
        let mut candidates = Vec::new();
        for (i, state) in search.states().enumerate() {
            let Ok(inv) = inv_computation(state, dir) else {
                continue;
            };
            let v = canonicalize_linear(&inv);
            if !v.is_value() {
                continue;
            }
            let Ok(image) = colon_k(&v, dir) else {
                continue;
            };
            if canonical_key(&image) == state.key() {
                candidates.push((i, v));
            }
        }
        let mut verdict = Verdict::Pass;
        for (i, v) in candidates {
            let r = match self.reach(m, &v, dir.source()) {
                Verdict::Fail { detail, .. } => Verdict::Fail {
                    detail: format!("{from} reaches {}, the image of {v}, but {detail}", v),
                    witness: Some(search.trace_to(i)),
                },
                other => other,
            };
            verdict = verdict.and(r);
            if verdict.is_fail() {
                return verdict;
            }
        }
        if !search.complete {
            verdict = verdict.and(Verdict::Inconclusive(format!(
                "explored {} states of the translation without exhausting them",
                search.len()
            )));
        }
        verdict
    }
}
