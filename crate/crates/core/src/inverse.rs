//! Grammars of the CPS images and the inverse translations.
//!
//! `v2n` image, inside λ_alg:
//!
//! ```text
//! C ::= K B | B1 B2 K | T K        D ::= C | 0 | α.D | D + D
//! S ::= λk.C                       T ::= S | 0 | α.T | T + T
//! K ::= k | λb.B b K | λb1.T (λb2.b1 b2 K)
//! B ::= x | λx.S | λx.0
//! ```
//!
//! `n2v` image, inside λ_lin:
//!
//! ```text
//! C ::= K B | B S0 K | T K         D ::= C | 0 | α.D | D + D
//! S ::= x | λk.C                   T ::= S | 0 | α.T | T + T
//! K ::= k | λb.b S0 K              S0 ::= S | 0
//! B ::= λx.S | λx.0
//! ```
//!
//! `λx.0` and `S0` extend the displayed grammars with the images of
//! abstractions and arguments whose body is `0`, since both translations
//! send `0` to `0`. Intermediate binders may use any of `b`, `b1`, `b2`,
//! because β-reduction renames `λb1.T (λb2.b1 b2 K)` applied to a CPS-value
//! into the shape `λb2.B b2 K`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cps::Direction;
use crate::scalar::Scalar;
use crate::term::{Namespace, Term, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GrammarClass {
    BaseComputation,
    Computation,
    BaseSuspension,
    Suspension,
    Continuation,
    CpsValue,
    None,
}

impl GrammarClass {
    pub fn letter(self) -> &'static str {
        match self {
            GrammarClass::BaseComputation => "C",
            GrammarClass::Computation => "D",
            GrammarClass::BaseSuspension => "S",
            GrammarClass::Suspension => "T",
            GrammarClass::Continuation => "K",
            GrammarClass::CpsValue => "B",
            GrammarClass::None => "-",
        }
    }
}

impl fmt::Display for GrammarClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GrammarClass::BaseComputation => "BaseComputation",
            GrammarClass::Computation => "Computation",
            GrammarClass::BaseSuspension => "BaseSuspension",
            GrammarClass::Suspension => "Suspension",
            GrammarClass::Continuation => "Continuation",
            GrammarClass::CpsValue => "CpsValue",
            GrammarClass::None => "None",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{dir}: expected {expected}, but `{subterm}` does not fit")]
pub struct InverseError {
    pub dir: Direction,
    pub expected: &'static str,
    /// The innermost subterm that matches no production.
    pub subterm: String,
}

type Inv<S> = Result<Term<S>, (&'static str, Term<S>)>;

fn fail<S: Scalar>(expected: &'static str, t: &Term<S>) -> Inv<S> {
    Err((expected, t.clone()))
}

fn is_k<S>(t: &Term<S>) -> bool {
    matches!(t, Term::Var(v) if v.is_k())
}

fn is_var<S>(t: &Term<S>, v: &Var) -> bool {
    matches!(t, Term::Var(w) if w == v)
}

/// `λb.B b K` (v2n) or `λb.b S K` (n2v): binder, then the three parts of
/// the body `X Y K`.
fn split_binary_cont<S>(t: &Term<S>) -> Option<(&Var, &Term<S>, &Term<S>, &Term<S>)> {
    let Term::Lam(b, body) = t else { return None };
    if b.ns() != Namespace::Intermediate {
        return None;
    }
    let Term::App(head, cont) = &**body else {
        return None;
    };
    let Term::App(x, y) = &**head else {
        return None;
    };
    Some((b, x, y, cont))
}

struct Grammar {
    dir: Direction,
}

impl Grammar {
    /// `overline(D)`.
    fn computation<S: Scalar>(&self, t: &Term<S>) -> Inv<S> {
        match t {
            Term::Zero => Ok(Term::Zero),
            Term::Scale(alpha, d) => Ok(Term::scale(alpha.clone(), self.computation(d)?)),
            Term::Sum(l, r) => Ok(Term::sum(self.computation(l)?, self.computation(r)?)),
            _ => self.base_computation(t),
        }
    }

    /// `overline(C)`.
    fn base_computation<S: Scalar>(&self, t: &Term<S>) -> Inv<S> {
        let Term::App(f, a) = t else {
            return fail("a base computation", t);
        };
        if self.continuation(a, Term::Zero).is_ok() {
            // B1 B2 K or B S K
            if let Term::App(b1, b2) = &**f {
                if let Ok(v1) = self.value(b1) {
                    let second = match self.dir {
                        Direction::V2n => self.value(b2),
                        Direction::N2v => self.suspension_argument(b2),
                    };
                    if let Ok(v2) = second {
                        return self.continuation(a, Term::app(v1, v2));
                    }
                }
            }
            // T K
            if let Ok(m) = self.suspension(f) {
                return self.continuation(a, m);
            }
        }
        // K B
        if let Ok(v) = self.value(a) {
            if self.continuation(f, Term::Zero).is_ok() {
                return self.continuation(f, v);
            }
        }
        fail("a base computation", t)
    }

    /// `σ(T)`.
    fn suspension<S: Scalar>(&self, t: &Term<S>) -> Inv<S> {
        match t {
            Term::Zero => Ok(Term::Zero),
            Term::Scale(alpha, s) => Ok(Term::scale(alpha.clone(), self.suspension(s)?)),
            Term::Sum(l, r) => Ok(Term::sum(self.suspension(l)?, self.suspension(r)?)),
            _ => self.base_suspension(t),
        }
    }

    /// `σ(S)`.
    fn base_suspension<S: Scalar>(&self, t: &Term<S>) -> Inv<S> {
        match t {
            Term::Lam(k, c) if k.is_k() => self.base_computation(c),
            Term::Var(x) if x.is_source() && self.dir == Direction::N2v => Ok(t.clone()),
            _ => fail("a base suspension", t),
        }
    }

    /// `σ` on an argument position of the n2v grammar, `S | 0`.
    fn suspension_argument<S: Scalar>(&self, t: &Term<S>) -> Inv<S> {
        match t {
            Term::Zero => Ok(Term::Zero),
            _ => self.base_suspension(t),
        }
    }

    /// `ψ(B)` or `φ(B)`.
    fn value<S: Scalar>(&self, t: &Term<S>) -> Inv<S> {
        match t {
            Term::Var(x) if x.is_source() && self.dir == Direction::V2n => Ok(t.clone()),
            Term::Lam(x, body) if x.is_source() => match &**body {
                Term::Zero => Ok(t.clone()),
                _ => Ok(Term::lam(x.clone(), self.base_suspension(body)?)),
            },
            _ => fail("a CPS-value", t),
        }
    }

    /// `underline(K)[M]`.
    fn continuation<S: Scalar>(&self, t: &Term<S>, m: Term<S>) -> Inv<S> {
        if is_k(t) {
            return Ok(m);
        }
        if let Some((b, x, y, rest)) = split_binary_cont(t) {
            match self.dir {
                Direction::V2n if is_var(y, b) => {
                    let v = self.value(x)?;
                    return self.continuation(rest, Term::app(v, m));
                }
                Direction::N2v if is_var(x, b) => {
                    let s = self.suspension_argument(y)?;
                    return self.continuation(rest, Term::app(m, s));
                }
                _ => {}
            }
        }
        if self.dir == Direction::V2n {
            if let Term::Lam(b1, body) = t {
                if let Term::App(susp, inner) = &**body {
                    if let Some((b2, x, y, rest)) = split_binary_cont(inner) {
                        if b1.ns() == Namespace::Intermediate
                            && b1 != b2
                            && is_var(x, b1)
                            && is_var(y, b2)
                        {
                            let s = self.suspension(susp)?;
                            return self.continuation(rest, Term::app(m, s));
                        }
                    }
                }
            }
        }
        fail("a continuation", t)
    }
}

fn lift<S: Scalar>(dir: Direction, r: Inv<S>) -> Result<Term<S>, InverseError> {
    r.map_err(|(expected, t)| InverseError {
        dir,
        expected,
        subterm: t.to_string(),
    })
}

/// The base class of `t` if it has one, else its combination class.
/// Combinations of `0` alone count as computations.
pub fn classify<S: Scalar>(t: &Term<S>, dir: Direction) -> GrammarClass {
    let g = Grammar { dir };
    match t {
        Term::Zero | Term::Scale(..) | Term::Sum(..) => {
            if g.computation(t).is_ok() {
                GrammarClass::Computation
            } else if g.suspension(t).is_ok() {
                GrammarClass::Suspension
            } else {
                GrammarClass::None
            }
        }
        _ => {
            if g.base_computation(t).is_ok() {
                GrammarClass::BaseComputation
            } else if g.base_suspension(t).is_ok() {
                GrammarClass::BaseSuspension
            } else if g.continuation(t, Term::Zero).is_ok() {
                GrammarClass::Continuation
            } else if g.value(t).is_ok() {
                GrammarClass::CpsValue
            } else {
                GrammarClass::None
            }
        }
    }
}

/// Membership in `D`.
pub fn is_computation<S: Scalar>(t: &Term<S>, dir: Direction) -> bool {
    Grammar { dir }.computation(t).is_ok()
}

pub fn is_base_computation<S: Scalar>(t: &Term<S>, dir: Direction) -> bool {
    Grammar { dir }.base_computation(t).is_ok()
}

/// Membership in `T`.
pub fn is_suspension<S: Scalar>(t: &Term<S>, dir: Direction) -> bool {
    Grammar { dir }.suspension(t).is_ok()
}

pub fn is_base_suspension<S: Scalar>(t: &Term<S>, dir: Direction) -> bool {
    Grammar { dir }.base_suspension(t).is_ok()
}

pub fn is_continuation<S: Scalar>(t: &Term<S>, dir: Direction) -> bool {
    Grammar { dir }.continuation(t, Term::Zero).is_ok()
}

pub fn is_cps_value<S: Scalar>(t: &Term<S>, dir: Direction) -> bool {
    Grammar { dir }.value(t).is_ok()
}

/// `overline(D)`.
pub fn inv_computation<S: Scalar>(d: &Term<S>, dir: Direction) -> Result<Term<S>, InverseError> {
    lift(dir, Grammar { dir }.computation(d))
}

/// `σ(T)`.
pub fn inv_suspension<S: Scalar>(t: &Term<S>, dir: Direction) -> Result<Term<S>, InverseError> {
    lift(dir, Grammar { dir }.suspension(t))
}

/// `ψ(B)` for v2n, `φ(B)` for n2v.
pub fn inv_value<S: Scalar>(b: &Term<S>, dir: Direction) -> Result<Term<S>, InverseError> {
    lift(dir, Grammar { dir }.value(b))
}

/// `underline(K)[M]`: fills the hole of a continuation, without reducing.
pub fn apply_continuation<S: Scalar>(
    cont: &Term<S>,
    m: &Term<S>,
    dir: Direction,
) -> Result<Term<S>, InverseError> {
    lift(dir, Grammar { dir }.continuation(cont, m.clone()))
}

/// Inverts a computation or a suspension, whichever `t` is.
pub fn invert<S: Scalar>(t: &Term<S>, dir: Direction) -> Result<Term<S>, InverseError> {
    let g = Grammar { dir };
    match g.computation(t) {
        Ok(m) => Ok(m),
        Err(e) => g.suspension(t).or_else(|_| lift(dir, Err(e))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cps::{colon_k, cps, cps_applied};
    use crate::syntax::parse;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn classify_examples() {
        use GrammarClass::*;
        let v = Direction::V2n;
        let n = Direction::N2v;
        assert_eq!(classify(&t(r"\k. k x"), v), BaseSuspension);
        assert_eq!(classify(&t("x"), n), BaseSuspension);
        assert_eq!(classify(&t("x"), v), CpsValue);
        assert_eq!(classify(&t("k x + k y"), v), Computation);
        assert_eq!(classify(&t("k x"), v), BaseComputation);
        assert_eq!(classify(&t("k"), v), Continuation);
        assert_eq!(classify(&t(r"\b. x b k"), v), Continuation);
        assert_eq!(classify(&t(r"\b. b x k"), n), Continuation);
        assert_eq!(
            classify(&t(r"\b1. (\k. k y) (\b2. b1 b2 k)"), v),
            Continuation
        );
        assert_eq!(classify(&t(r"\b2. (\k. k y) (\b2. b2 b2 k)"), v), None);
        assert_eq!(classify(&t(r"\x. \k. k x"), v), CpsValue);
        assert_eq!(classify(&t(r"\x. x"), n), CpsValue);
        assert_eq!(classify(&t(r"(\k. k x) + \k. k y"), v), Suspension);
        assert_eq!(classify(&t("0"), v), Computation);
        assert_eq!(classify(&t("k b"), v), None);
        assert_eq!(classify(&t("x y"), v), None);
        assert_eq!(classify(&t("k x + x"), v), None);
        assert_eq!(classify(&t("x y k"), v), BaseComputation);
        assert_eq!(classify(&t(r"(\x. x) y k"), n), BaseComputation);
    }

    #[test]
    fn inverse_examples() {
        let v = Direction::V2n;
        let n = Direction::N2v;
        assert_eq!(inv_computation(&t("k x"), v).unwrap(), t("x"));
        assert_eq!(inv_suspension(&t("0"), v).unwrap(), Term::Zero);
        assert_eq!(inv_suspension(&t("x"), n).unwrap(), t("x"));
        assert_eq!(inv_value(&t("x"), v).unwrap(), t("x"));
        assert!(inv_value(&t(r"\x. \k. k x"), v)
            .unwrap()
            .alpha_eq(&t(r"\x. x")));
        assert!(inv_value(&t(r"\x. x"), n).unwrap().alpha_eq(&t(r"\x. x")));
        let m = t("m");
        assert_eq!(apply_continuation(&t("k"), &m, v).unwrap(), m);
        assert_eq!(
            apply_continuation(&t(r"\b. x b k"), &m, v).unwrap(),
            t("x m")
        );
        assert_eq!(
            apply_continuation(&t(r"\b. b x k"), &m, n).unwrap(),
            t("m x")
        );
        let err = inv_computation(&t("k x + x y"), v).unwrap_err();
        assert_eq!(err.subterm, "x y");
    }

    #[test]
    fn round_trips() {
        for src in [
            "x",
            r"\x. x",
            "f x y",
            r"(\x. \f. f x x) (y + z)",
            "2.(f 0) + -1.x",
            r"(x + y) z",
            r"(\x. 0) y",
        ] {
            let m = t(src);
            for dir in Direction::BOTH {
                let d = cps_applied(&m, dir).unwrap();
                assert_eq!(
                    classify(&d, dir),
                    GrammarClass::BaseComputation,
                    "{src} {dir}"
                );
                assert!(
                    inv_computation(&d, dir).unwrap().alpha_eq(&m),
                    "{src} {dir}"
                );
                assert!(is_suspension(&cps(&m, dir).unwrap(), dir));
            }
        }
    }

    #[test]
    fn colon_is_not_injective() {
        let m = t("(x + y) z");
        let back = inv_computation(&colon_k(&m, Direction::V2n).unwrap(), Direction::V2n).unwrap();
        assert!(back.alpha_eq(&t("x z + y z")));
        assert!(!back.alpha_eq(&m));
    }
}
