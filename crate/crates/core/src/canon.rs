//! Canonical forms modulo the vector-space rules.
//!
//! A term is flattened into a linear combination of atoms, where atoms are
//! variables, abstractions and applications. Flattening reaches into the
//! function position of applications but never into an argument or under a
//! binder. Coefficients of alpha-equivalent atoms are merged, zero
//! coefficients dropped, and the atoms sorted by their nameless key. The
//! result is the sum of the monomials, associated to the right, with
//! coefficient 1 elided, or `0` if nothing is left.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::rewrite::{fire, Path, RuleLabel, Step, Trace};
use crate::scalar::Scalar;
use crate::term::Term;

/// Canonical representative of the class of `t` under the vector-space
/// rules applied in reduction contexts.
pub fn canonicalize_linear<S: Scalar>(t: &Term<S>) -> Term<S> {
    let mut atoms: BTreeMap<String, (Term<S>, S)> = BTreeMap::new();
    collect(t, S::one(), &mut atoms);
    let mut out: Option<Term<S>> = None;
    for (_, (atom, coeff)) in atoms.into_iter().rev() {
        if coeff.is_zero() {
            continue;
        }
        let mono = if coeff.is_one() {
            atom
        } else {
            Term::scale(coeff, atom)
        };
        out = Some(match out {
            None => mono,
            Some(rest) => Term::sum(mono, rest),
        });
    }
    out.unwrap_or(Term::Zero)
}

/// Nameless key of the canonical form.
pub fn canonical_key<S: Scalar>(t: &Term<S>) -> String {
    canonicalize_linear(t).key()
}

/// Equality modulo the vector-space rules and alpha-equivalence.
pub fn linear_eq<S: Scalar>(a: &Term<S>, b: &Term<S>) -> bool {
    canonicalize_linear(a).alpha_eq(&canonicalize_linear(b))
}

fn collect<S: Scalar>(t: &Term<S>, coeff: S, out: &mut BTreeMap<String, (Term<S>, S)>) {
    if coeff.is_zero() {
        return;
    }
    match t {
        Term::Zero => {}
        Term::Scale(alpha, body) => collect(body, coeff * alpha.clone(), out),
        Term::Sum(l, r) => {
            collect(l, coeff.clone(), out);
            collect(r, coeff, out);
        }
        Term::App(f, a) => {
            let cf = canonicalize_linear(f);
            let atom = if cf == **f {
                t.clone()
            } else {
                Term::App(Arc::new(cf), a.clone())
            };
            add_atom(atom, coeff, out);
        }
        Term::Var(_) | Term::Lam(..) => add_atom(t.clone(), coeff, out),
    }
}

fn add_atom<S: Scalar>(atom: Term<S>, coeff: S, out: &mut BTreeMap<String, (Term<S>, S)>) {
    let entry = out.entry(atom.key()).or_insert_with(|| (atom, S::zero()));
    entry.1 = entry.1.clone() + coeff;
}

/// Rewrites `t` to its canonical form by explicit vector-space steps, each
/// in a reduction context. The last term is alpha-equivalent to
/// [`canonicalize_linear`] of `t`.
pub fn canonicalize_with_trace<S: Scalar>(t: &Term<S>) -> Trace<S> {
    let mut d = Deriver::new(t.clone());
    d.normalize_at(&mut Vec::new());
    d.into_trace()
}

/// Builds a trace by firing rules at given positions.
pub(crate) struct Deriver<S> {
    initial: Term<S>,
    pub(crate) current: Term<S>,
    steps: Vec<Step<S>>,
}

impl<S: Scalar> Deriver<S> {
    pub(crate) fn new(t: Term<S>) -> Self {
        Deriver {
            initial: t.clone(),
            current: t,
            steps: Vec::new(),
        }
    }

    pub(crate) fn into_trace(self) -> Trace<S> {
        Trace {
            initial: self.initial,
            steps: self.steps,
        }
    }

    pub(crate) fn apply(&mut self, rule: RuleLabel, path: &[u8]) {
        let target = self
            .current
            .replace_at(path, &mut |sub| fire(rule, sub))
            .unwrap_or_else(|| panic!("{rule} does not apply at {}", Path(path.to_vec())));
        self.push(rule, path, target);
    }

    pub(crate) fn push(&mut self, rule: RuleLabel, path: &[u8], target: Term<S>) {
        let source = std::mem::replace(&mut self.current, target.clone());
        self.steps.push(Step {
            source,
            target,
            rule,
            path: Path(path.to_vec()),
        });
    }

    fn at(&self, path: &[u8]) -> Term<S> {
        self.current.subterm(path).expect("valid path").clone()
    }

    /// Makes the subterm at `p` canonical.
    pub(crate) fn normalize_at(&mut self, p: &mut Vec<u8>) {
        match self.at(p) {
            Term::Var(_) | Term::Lam(..) | Term::Zero => {}
            Term::App(..) => {
                p.push(0);
                self.normalize_at(p);
                p.pop();
            }
            Term::Scale(..) => {
                p.push(0);
                self.normalize_at(p);
                p.pop();
                self.scale_canonical(p);
            }
            Term::Sum(..) => {
                p.push(0);
                self.normalize_at(p);
                p.pop();
                p.push(1);
                self.normalize_at(p);
                p.pop();
                self.merge(p);
            }
        }
    }

    /// `α.C` with `C` canonical.
    fn scale_canonical(&mut self, p: &mut Vec<u8>) {
        let Term::Scale(alpha, body) = self.at(p) else {
            unreachable!()
        };
        if alpha.is_zero() {
            self.apply(RuleLabel::S3, p);
            return;
        }
        match &*body {
            Term::Zero => self.apply(RuleLabel::S4, p),
            Term::Sum(..) => {
                self.apply(RuleLabel::S1, p);
                for i in [0, 1] {
                    p.push(i);
                    self.scale_canonical(p);
                    p.pop();
                }
                self.merge(p);
            }
            Term::Scale(..) => {
                self.apply(RuleLabel::F4, p);
                self.fix_coefficient(p);
            }
            _ => {
                if alpha.is_one() {
                    self.apply(RuleLabel::S2, p);
                }
            }
        }
    }

    /// Drops a zero or unit coefficient at `p`, if any.
    fn fix_coefficient(&mut self, p: &[u8]) {
        if let Term::Scale(gamma, _) = self.at(p) {
            if gamma.is_zero() {
                self.apply(RuleLabel::S3, p);
            } else if gamma.is_one() {
                self.apply(RuleLabel::S2, p);
            }
        }
    }

    /// `L + R` with both sides canonical.
    fn merge(&mut self, p: &mut Vec<u8>) {
        let Term::Sum(l, r) = self.at(p) else { return };
        if matches!(*l, Term::Zero) {
            self.apply(RuleLabel::S5, p);
        } else if matches!(*r, Term::Zero) {
            self.apply(RuleLabel::Com, p);
            self.apply(RuleLabel::S5, p);
        } else if matches!(*l, Term::Sum(..)) {
            self.apply(RuleLabel::AssoR, p);
            p.push(1);
            self.merge(p);
            p.pop();
            self.insert(p);
        } else {
            self.insert(p);
        }
    }

    /// `m + R` with `m` a monomial and `R` canonical.
    fn insert(&mut self, p: &mut Vec<u8>) {
        let Term::Sum(m, r) = self.at(p) else { return };
        let mk = atom_of(&m).key();
        match &*r {
            Term::Zero => {
                self.apply(RuleLabel::Com, p);
                self.apply(RuleLabel::S5, p);
            }
            Term::Sum(r1, _) => {
                let rk = atom_of(r1).key();
                match mk.cmp(&rk) {
                    std::cmp::Ordering::Less => {}
                    std::cmp::Ordering::Equal => {
                        self.apply(RuleLabel::AssoL, p);
                        p.push(0);
                        self.combine(p);
                        p.pop();
                        if let Term::Sum(l, _) = self.at(p) {
                            if matches!(*l, Term::Zero) {
                                self.apply(RuleLabel::S5, p);
                            }
                        }
                    }
                    std::cmp::Ordering::Greater => {
                        self.apply(RuleLabel::AssoL, p);
                        p.push(0);
                        self.apply(RuleLabel::Com, p);
                        p.pop();
                        self.apply(RuleLabel::AssoR, p);
                        p.push(1);
                        self.insert(p);
                        p.pop();
                        if let Term::Sum(_, r) = self.at(p) {
                            if matches!(*r, Term::Zero) {
                                self.apply(RuleLabel::Com, p);
                                self.apply(RuleLabel::S5, p);
                            }
                        }
                    }
                }
            }
            _ => match mk.cmp(&atom_of(&r).key()) {
                std::cmp::Ordering::Less => {}
                std::cmp::Ordering::Equal => self.combine(p),
                std::cmp::Ordering::Greater => self.apply(RuleLabel::Com, p),
            },
        }
    }

    /// `m1 + m2` over the same atom, collapsed into one monomial or `0`.
    fn combine(&mut self, p: &[u8]) {
        let Term::Sum(l, r) = self.at(p) else {
            unreachable!()
        };
        match (&*l, &*r) {
            (Term::Scale(..), Term::Scale(..)) => self.apply(RuleLabel::F1, p),
            (Term::Scale(..), _) => self.apply(RuleLabel::F2, p),
            (_, Term::Scale(..)) => {
                self.apply(RuleLabel::Com, p);
                self.apply(RuleLabel::F2, p);
            }
            _ => self.apply(RuleLabel::F3, p),
        }
        self.fix_coefficient(p);
    }
}

fn atom_of<S>(mono: &Term<S>) -> &Term<S> {
    match mono {
        Term::Scale(_, a) => a,
        other => other,
    }
}
