//! Term syntax shared by both calculi.
//!
//! Variables live in three disjoint namespaces: ordinary source variables,
//! the continuation variable `k`, and the intermediate-value variables `b`,
//! `b1`, `b2` introduced by the CPS translations.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Namespace {
    Source,
    Continuation,
    Intermediate,
}

/// A variable name tagged with its namespace.
///
/// Names in different namespaces never compare equal, even if spelled alike.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    ns: Namespace,
    name: Arc<str>,
}

pub const RESERVED_NAMES: [&str; 4] = ["k", "b", "b1", "b2"];

impl Var {
    pub fn new(ns: Namespace, name: &str) -> Var {
        Var {
            ns,
            name: Arc::from(name),
        }
    }

    /// A source variable.
    ///
    /// # Panics
    ///
    /// Panics if `name` is one of the reserved names `k`, `b`, `b1`, `b2`.
    pub fn source(name: &str) -> Var {
        assert!(
            !RESERVED_NAMES.contains(&name),
            "`{name}` is reserved for the CPS translations"
        );
        Var::new(Namespace::Source, name)
    }

    /// Maps a spelled name to its namespace, the way the parser does.
    pub fn named(name: &str) -> Var {
        match name {
            "k" => Var::k(),
            "b" | "b1" | "b2" => Var::new(Namespace::Intermediate, name),
            _ => Var::new(Namespace::Source, name),
        }
    }

    pub fn k() -> Var {
        Var::new(Namespace::Continuation, "k")
    }

    pub fn b() -> Var {
        Var::new(Namespace::Intermediate, "b")
    }

    pub fn b1() -> Var {
        Var::new(Namespace::Intermediate, "b1")
    }

    pub fn b2() -> Var {
        Var::new(Namespace::Intermediate, "b2")
    }

    pub fn ns(&self) -> Namespace {
        self.ns
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_source(&self) -> bool {
        self.ns == Namespace::Source
    }

    pub fn is_k(&self) -> bool {
        self.ns == Namespace::Continuation && &*self.name == "k"
    }

    /// One of the literal intermediate names `b`, `b1`, `b2`.
    pub fn is_intermediate(&self) -> bool {
        self.ns == Namespace::Intermediate && matches!(&*self.name, "b" | "b1" | "b2")
    }

    /// Same namespace, name decorated with a prime.
    fn primed(&self) -> Var {
        Var {
            ns: self.ns,
            name: Arc::from(format!("{}'", self.name)),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A term of the algebraic lambda calculi.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term<S = Rational> {
    Var(Var),
    Lam(Var, Arc<Term<S>>),
    App(Arc<Term<S>>, Arc<Term<S>>),
    Zero,
    Scale(S, Arc<Term<S>>),
    Sum(Arc<Term<S>>, Arc<Term<S>>),
}

impl<S: Scalar> Term<S> {
    pub fn var(v: Var) -> Self {
        Term::Var(v)
    }

    /// Shorthand for a source variable.
    pub fn src(name: &str) -> Self {
        Term::Var(Var::source(name))
    }

    pub fn lam(v: Var, body: Term<S>) -> Self {
        Term::Lam(v, Arc::new(body))
    }

    pub fn app(f: Term<S>, a: Term<S>) -> Self {
        Term::App(Arc::new(f), Arc::new(a))
    }

    /// Left-nested application `f a1 a2 ...`.
    pub fn apps(f: Term<S>, args: impl IntoIterator<Item = Term<S>>) -> Self {
        args.into_iter().fold(f, Term::app)
    }

    pub fn scale(alpha: S, body: Term<S>) -> Self {
        Term::Scale(alpha, Arc::new(body))
    }

    pub fn sum(l: Term<S>, r: Term<S>) -> Self {
        Term::Sum(Arc::new(l), Arc::new(r))
    }

    pub fn is_base_value(&self) -> bool {
        matches!(self, Term::Var(_) | Term::Lam(..))
    }

    /// Membership in `V ::= B | 0 | α.V | V+W`.
    pub fn is_value(&self) -> bool {
        match self {
            Term::Var(_) | Term::Lam(..) | Term::Zero => true,
            Term::Scale(_, t) => t.is_value(),
            Term::Sum(l, r) => l.is_value() && r.is_value(),
            Term::App(..) => false,
        }
    }

    pub fn classification(&self) -> TermClassification {
        TermClassification {
            is_base_value: self.is_base_value(),
            is_value: self.is_value(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero => 1,
            Term::Lam(_, b) | Term::Scale(_, b) => 1 + b.size(),
            Term::App(l, r) | Term::Sum(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a Var>, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                if !bound.contains(&v) {
                    out.insert(v.clone());
                }
            }
            Term::Lam(v, b) => {
                bound.push(v);
                b.collect_free(bound, out);
                bound.pop();
            }
            Term::App(l, r) | Term::Sum(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Term::Scale(_, b) => b.collect_free(bound, out),
            Term::Zero => {}
        }
    }

    pub fn occurs_free(&self, x: &Var) -> bool {
        match self {
            Term::Var(v) => v == x,
            Term::Lam(v, b) => v != x && b.occurs_free(x),
            Term::App(l, r) | Term::Sum(l, r) => l.occurs_free(x) || r.occurs_free(x),
            Term::Scale(_, b) => b.occurs_free(x),
            Term::Zero => false,
        }
    }

    /// Every variable occurring in the term, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit_vars(&mut |v| {
            out.insert(v.clone());
        });
        out
    }

    fn visit_vars(&self, f: &mut impl FnMut(&Var)) {
        match self {
            Term::Var(v) => f(v),
            Term::Lam(v, b) => {
                f(v);
                b.visit_vars(f)
            }
            Term::App(l, r) | Term::Sum(l, r) => {
                l.visit_vars(f);
                r.visit_vars(f)
            }
            Term::Scale(_, b) => b.visit_vars(f),
            Term::Zero => {}
        }
    }

    /// Capture-avoiding substitution `self[x := n]`.
    pub fn substitute(&self, x: &Var, n: &Term<S>) -> Term<S> {
        let fv = n.free_vars();
        self.subst_with(x, n, &fv).unwrap_or_else(|| self.clone())
    }

    /// Returns `None` when `x` does not occur free, so unchanged subtrees are
    /// shared rather than rebuilt.
    fn subst_with(&self, x: &Var, n: &Term<S>, fv: &BTreeSet<Var>) -> Option<Term<S>> {
        match self {
            Term::Var(v) => (v == x).then(|| n.clone()),
            Term::Lam(y, body) => {
                if y == x {
                    return None;
                }
                if fv.contains(y) && body.occurs_free(x) {
                    let mut avoid = body.all_vars();
                    avoid.extend(fv.iter().cloned());
                    avoid.insert(x.clone());
                    let mut fresh = y.primed();
                    while avoid.contains(&fresh) {
                        fresh = fresh.primed();
                    }
                    let renamed = body.substitute(y, &Term::Var(fresh.clone()));
                    let new_body = renamed.subst_with(x, n, fv).unwrap_or(renamed);
                    Some(Term::lam(fresh, new_body))
                } else {
                    body.subst_with(x, n, fv).map(|b| Term::lam(y.clone(), b))
                }
            }
            Term::App(l, r) => {
                let nl = l.subst_with(x, n, fv);
                let nr = r.subst_with(x, n, fv);
                if nl.is_none() && nr.is_none() {
                    return None;
                }
                Some(Term::App(
                    nl.map(Arc::new).unwrap_or_else(|| l.clone()),
                    nr.map(Arc::new).unwrap_or_else(|| r.clone()),
                ))
            }
            Term::Sum(l, r) => {
                let nl = l.subst_with(x, n, fv);
                let nr = r.subst_with(x, n, fv);
                if nl.is_none() && nr.is_none() {
                    return None;
                }
                Some(Term::Sum(
                    nl.map(Arc::new).unwrap_or_else(|| l.clone()),
                    nr.map(Arc::new).unwrap_or_else(|| r.clone()),
                ))
            }
            Term::Scale(a, b) => b.subst_with(x, n, fv).map(|b| Term::scale(a.clone(), b)),
            Term::Zero => None,
        }
    }

    /// Equality up to consistent renaming of bound variables.
    pub fn alpha_eq(&self, other: &Term<S>) -> bool {
        let mut left = Vec::new();
        let mut right = Vec::new();
        alpha_eq_in(self, other, &mut left, &mut right)
    }

    /// A nameless rendering: bound variables become binder distances, free
    /// variables keep their namespace and name. Two terms have the same key
    /// iff they are alpha-equivalent.
    pub fn key(&self) -> String {
        let mut out = String::with_capacity(self.size() * 4);
        let mut bound = Vec::new();
        self.write_key(&mut bound, &mut out);
        out
    }

    fn write_key<'a>(&'a self, bound: &mut Vec<&'a Var>, out: &mut String) {
        match self {
            Term::Var(v) => match bound.iter().rev().position(|b| *b == v) {
                Some(i) => {
                    let _ = write!(out, "#{i}");
                }
                None => {
                    out.push(ns_tag(v.ns));
                    out.push_str(&v.name);
                    out.push(' ');
                }
            },
            Term::Lam(v, b) => {
                out.push('\\');
                out.push(ns_tag(v.ns));
                bound.push(v);
                b.write_key(bound, out);
                bound.pop();
            }
            Term::App(l, r) => {
                out.push('(');
                l.write_key(bound, out);
                out.push(' ');
                r.write_key(bound, out);
                out.push(')');
            }
            Term::Sum(l, r) => {
                out.push('[');
                l.write_key(bound, out);
                out.push('+');
                r.write_key(bound, out);
                out.push(']');
            }
            Term::Scale(a, b) => {
                let _ = write!(out, "{{{a}}}");
                b.write_key(bound, out);
            }
            Term::Zero => out.push('0'),
        }
    }

    /// Subterm at a child-index path, see [`crate::rewrite::Path`].
    pub fn subterm(&self, path: &[u8]) -> Option<&Term<S>> {
        let mut cur = self;
        for &i in path {
            cur = match (cur, i) {
                (Term::App(l, _), 0) | (Term::Sum(l, _), 0) => l,
                (Term::App(_, r), 1) | (Term::Sum(_, r), 1) => r,
                (Term::Scale(_, b), 0) | (Term::Lam(_, b), 0) => b,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Rebuilds the term with the subterm at `path` replaced by `f(subterm)`.
    pub fn replace_at(
        &self,
        path: &[u8],
        f: &mut impl FnMut(&Term<S>) -> Option<Term<S>>,
    ) -> Option<Term<S>> {
        let Some((&i, rest)) = path.split_first() else {
            return f(self);
        };
        Some(match (self, i) {
            (Term::App(l, r), 0) => Term::App(Arc::new(l.replace_at(rest, f)?), r.clone()),
            (Term::App(l, r), 1) => Term::App(l.clone(), Arc::new(r.replace_at(rest, f)?)),
            (Term::Sum(l, r), 0) => Term::Sum(Arc::new(l.replace_at(rest, f)?), r.clone()),
            (Term::Sum(l, r), 1) => Term::Sum(l.clone(), Arc::new(r.replace_at(rest, f)?)),
            (Term::Scale(a, b), 0) => Term::Scale(a.clone(), Arc::new(b.replace_at(rest, f)?)),
            (Term::Lam(v, b), 0) => Term::Lam(v.clone(), Arc::new(b.replace_at(rest, f)?)),
            _ => return None,
        })
    }

    /// Whether every variable, bound or free, is a source variable.
    pub fn is_source_term(&self) -> bool {
        self.reserved_var().is_none()
    }

    /// First variable outside the source namespace, if any.
    pub fn reserved_var(&self) -> Option<Var> {
        let mut found = None;
        self.visit_vars(&mut |v| {
            if found.is_none() && !v.is_source() {
                found = Some(v.clone());
            }
        });
        found
    }
}

fn ns_tag(ns: Namespace) -> char {
    match ns {
        Namespace::Source => '$',
        Namespace::Continuation => '%',
        Namespace::Intermediate => '&',
    }
}

fn alpha_eq_in<'a, S: Scalar>(
    a: &'a Term<S>,
    b: &'a Term<S>,
    left: &mut Vec<&'a Var>,
    right: &mut Vec<&'a Var>,
) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => {
            let ix = left.iter().rev().position(|v| *v == x);
            let iy = right.iter().rev().position(|v| *v == y);
            match (ix, iy) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            }
        }
        (Term::Lam(x, m), Term::Lam(y, n)) => {
            if x.ns != y.ns {
                return false;
            }
            left.push(x);
            right.push(y);
            let eq = alpha_eq_in(m, n, left, right);
            left.pop();
            right.pop();
            eq
        }
        (Term::App(f, a1), Term::App(g, a2)) | (Term::Sum(f, a1), Term::Sum(g, a2)) => {
            alpha_eq_in(f, g, left, right) && alpha_eq_in(a1, a2, left, right)
        }
        (Term::Scale(x, m), Term::Scale(y, n)) => x == y && alpha_eq_in(m, n, left, right),
        (Term::Zero, Term::Zero) => true,
        _ => false,
    }
}

/// Syntactic value flags of a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermClassification {
    pub is_base_value: bool,
    pub is_value: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    fn vars(names: &[&str]) -> BTreeSet<Var> {
        names.iter().map(|n| Var::named(n)).collect()
    }

    #[test]
    fn free_variables() {
        assert_eq!(t(r"\x. x").free_vars(), vars(&[]));
        assert_eq!(t("2.y + 3.z").free_vars(), vars(&["y", "z"]));
        assert_eq!(
            t(r"(\x. f x x) (1/2.y + 1/2.z)").free_vars(),
            vars(&["f", "y", "z"])
        );
        assert_eq!(t(r"\k. k x").free_vars(), vars(&["x"]));
    }

    #[test]
    fn substitution_examples() {
        let x = Var::source("x");
        assert_eq!(t("f x x").substitute(&x, &t("y")), t("f y y"));

        let captured = t(r"\y. x").substitute(&x, &t("y"));
        assert!(captured.alpha_eq(&t(r"\z. y")));
        assert!(!captured.alpha_eq(&t(r"\y. y")));

        let cloned = t(r"\f. f x x").substitute(&x, &t("y + z"));
        assert_eq!(cloned, t(r"\f. f (y + z) (y + z)"));
    }

    #[test]
    fn shadowing_stops_substitution() {
        let x = Var::source("x");
        let m = t(r"\x. x");
        assert_eq!(m.substitute(&x, &t("y")), m);
        // k and a source variable spelled `k'` never interact
        let k = Var::k();
        assert_eq!(t(r"\x. k x").substitute(&k, &t("k")), t(r"\x. k x"));
    }

    #[test]
    fn alpha_equivalence() {
        assert!(t(r"\x. x").alpha_eq(&t(r"\y. y")));
        assert!(!t(r"\x. x y").alpha_eq(&t(r"\y. y y")));
        assert!(t(r"2.(\x. x) + m").alpha_eq(&t(r"2.(\z. z) + m")));
        assert!(!t("2.x").alpha_eq(&t("3.x")));
        // renaming stays within a namespace
        assert!(t(r"\b1. b1").alpha_eq(&t(r"\b2. b2")));
        assert!(!t(r"\b. b").alpha_eq(&t(r"\x. x")));
        assert!(!t("b").alpha_eq(&t("x")));
    }

    #[test]
    fn values() {
        assert!(t("1/2.y + 1/2.z").is_value());
        assert!(!t(r"(\x. x) y").is_value());
        assert!(!t("0").is_base_value());
        assert!(t("0").is_value());
        assert!(t(r"\x. (\y. y) x").is_base_value());
        let c = t("2.(x + 0)").classification();
        assert!(c.is_value && !c.is_base_value);
    }

    #[test]
    fn keys_match_alpha_eq() {
        let pairs = [
            (r"\x. \y. x y", r"\a. \c. a c", true),
            (r"\x. \y. x y", r"\a. \b. a b", false),
            (r"\x. \y. x y", r"\x. \y. y x", false),
            (r"\x. x z", r"\z. z z", false),
            ("x + y", "y + x", false),
        ];
        for (a, b, eq) in pairs {
            assert_eq!(t(a).key() == t(b).key(), eq, "{a} vs {b}");
            assert_eq!(t(a).alpha_eq(&t(b)), eq, "{a} vs {b}");
        }
    }

    #[test]
    #[should_panic]
    fn reserved_source_names_panic() {
        Var::source("k");
    }
}
