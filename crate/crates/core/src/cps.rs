//! CPS translations in both directions and their colon translations.
//!
//! `v2n` maps λ_lin into λ_alg:
//!
//! ```text
//! ⟦x⟧ = λk.k x          ⟦λx.M⟧ = λk.k (λx.⟦M⟧)     ⟦M N⟧ = λk.⟦M⟧ (λb1.⟦N⟧ (λb2.b1 b2 k))
//! ⟦0⟧ = 0              ⟦α.M⟧ = λk.(α.⟦M⟧) k       ⟦M+N⟧ = λk.(⟦M⟧ + ⟦N⟧) k
//! ```
//!
//! `n2v` maps λ_alg into λ_lin:
//!
//! ```text
//! {|x|} = x            {|λx.M|} = λk.k (λx.{|M|})  {|M N|} = λk.{|M|} (λb.b {|N|} k)
//! {|0|} = 0            {|α.M|} = λk.(α.{|M|}) k    {|M+N|} = λk.({|M|} + {|N|}) k
//! ```
//!
//! The reserved names `k`, `b`, `b1`, `b2` are emitted literally and may
//! shadow each other.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::inverse;
use crate::rewrite::Calculus;
use crate::scalar::Scalar;
use crate::term::{Term, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// λ_lin source, λ_alg target.
    V2n,
    /// λ_alg source, λ_lin target.
    N2v,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::V2n, Direction::N2v];

    pub fn source(self) -> Calculus {
        match self {
            Direction::V2n => Calculus::Lin,
            Direction::N2v => Calculus::Alg,
        }
    }

    pub fn target(self) -> Calculus {
        match self {
            Direction::V2n => Calculus::Alg,
            Direction::N2v => Calculus::Lin,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::V2n => "v2n",
            Direction::N2v => "n2v",
        })
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "v2n" => Ok(Direction::V2n),
            "n2v" => Ok(Direction::N2v),
            _ => Err(format!("unknown direction `{s}` (expected v2n or n2v)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CpsError {
    #[error("reserved variable `{0}` in a source term")]
    ReservedVariable(String),
    #[error("not a base value: {0}")]
    NotBaseValue(String),
    #[error("not an abstraction: {0}")]
    NotAbstraction(String),
    #[error("not a continuation: {0}")]
    NotContinuation(String),
}

fn check_source<S: Scalar>(m: &Term<S>) -> Result<(), CpsError> {
    match m.reserved_var() {
        Some(v) => Err(CpsError::ReservedVariable(v.to_string())),
        None => Ok(()),
    }
}

fn k<S: Scalar>() -> Term<S> {
    Term::Var(Var::k())
}

/// `⟦M⟧` or `{|M|}`.
pub fn cps<S: Scalar>(m: &Term<S>, dir: Direction) -> Result<Term<S>, CpsError> {
    check_source(m)?;
    Ok(translate(m, dir))
}

/// `⟦M⟧ k` or `{|M|} k`.
pub fn cps_applied<S: Scalar>(m: &Term<S>, dir: Direction) -> Result<Term<S>, CpsError> {
    Ok(Term::app(cps(m, dir)?, k()))
}

pub(crate) fn translate<S: Scalar>(m: &Term<S>, dir: Direction) -> Term<S> {
    let kv = Var::k();
    match (m, dir) {
        (Term::Var(_), Direction::V2n) => Term::lam(kv, Term::app(k(), m.clone())),
        (Term::Var(_), Direction::N2v) => m.clone(),
        (Term::Lam(x, body), _) => Term::lam(
            kv,
            Term::app(k(), Term::lam(x.clone(), translate(body, dir))),
        ),
        (Term::App(f, a), Direction::V2n) => {
            let inner = Term::lam(
                Var::b2(),
                Term::apps(Term::Var(Var::b1()), [Term::Var(Var::b2()), k()]),
            );
            let cont = Term::lam(Var::b1(), Term::app(translate(a, dir), inner));
            Term::lam(kv, Term::app(translate(f, dir), cont))
        }
        (Term::App(f, a), Direction::N2v) => {
            let cont = Term::lam(
                Var::b(),
                Term::apps(Term::Var(Var::b()), [translate(a, dir), k()]),
            );
            Term::lam(kv, Term::app(translate(f, dir), cont))
        }
        (Term::Zero, _) => Term::Zero,
        (Term::Scale(alpha, body), _) => Term::lam(
            kv,
            Term::app(Term::scale(alpha.clone(), translate(body, dir)), k()),
        ),
        (Term::Sum(l, r), _) => Term::lam(
            kv,
            Term::app(Term::sum(translate(l, dir), translate(r, dir)), k()),
        ),
    }
}

/// `Ψ(x) = x`, `Ψ(λx.M) = λx.⟦M⟧`.
pub fn psi<S: Scalar>(b: &Term<S>) -> Result<Term<S>, CpsError> {
    check_source(b)?;
    match b {
        Term::Var(_) | Term::Lam(..) => Ok(psi_unchecked(b)),
        _ => Err(CpsError::NotBaseValue(b.to_string())),
    }
}

/// `Φ(λx.M) = λx.{|M|}`.
pub fn phi<S: Scalar>(b: &Term<S>) -> Result<Term<S>, CpsError> {
    check_source(b)?;
    match b {
        Term::Lam(..) => Ok(phi_unchecked(b)),
        _ => Err(CpsError::NotAbstraction(b.to_string())),
    }
}

fn psi_unchecked<S: Scalar>(b: &Term<S>) -> Term<S> {
    match b {
        Term::Lam(x, body) => Term::lam(x.clone(), translate(body, Direction::V2n)),
        _ => b.clone(),
    }
}

fn phi_unchecked<S: Scalar>(b: &Term<S>) -> Term<S> {
    match b {
        Term::Lam(x, body) => Term::lam(x.clone(), translate(body, Direction::N2v)),
        _ => unreachable!("Φ is only applied to abstractions"),
    }
}

/// The colon translation `M : K`.
pub fn colon<S: Scalar>(m: &Term<S>, cont: &Term<S>, dir: Direction) -> Result<Term<S>, CpsError> {
    check_source(m)?;
    if !inverse::is_continuation(cont, dir) {
        return Err(CpsError::NotContinuation(cont.to_string()));
    }
    Ok(colon_unchecked(m, cont, dir))
}

/// `M : k`.
pub fn colon_k<S: Scalar>(m: &Term<S>, dir: Direction) -> Result<Term<S>, CpsError> {
    check_source(m)?;
    Ok(colon_unchecked(m, &k(), dir))
}

pub(crate) fn colon_unchecked<S: Scalar>(m: &Term<S>, cont: &Term<S>, dir: Direction) -> Term<S> {
    match m {
        Term::Zero => Term::Zero,
        Term::Scale(alpha, body) => Term::scale(alpha.clone(), colon_unchecked(body, cont, dir)),
        Term::Sum(l, r) => Term::sum(colon_unchecked(l, cont, dir), colon_unchecked(r, cont, dir)),
        Term::Var(_) | Term::Lam(..) => match dir {
            Direction::V2n => Term::app(cont.clone(), psi_unchecked(m)),
            Direction::N2v => match m {
                Term::Var(_) => Term::app(m.clone(), cont.clone()),
                _ => Term::app(cont.clone(), phi_unchecked(m)),
            },
        },
        Term::App(f, a) => match &**f {
            Term::Zero => Term::Zero,
            Term::Scale(alpha, g) => colon_unchecked(
                &Term::scale(alpha.clone(), Term::App(g.clone(), a.clone())),
                cont,
                dir,
            ),
            Term::Sum(g, h) => colon_unchecked(
                &Term::sum(
                    Term::App(g.clone(), a.clone()),
                    Term::App(h.clone(), a.clone()),
                ),
                cont,
                dir,
            ),
            Term::App(..) => {
                let next = match dir {
                    Direction::V2n => then_apply_v(translate(a, dir), cont),
                    Direction::N2v => apply_to_n(translate(a, dir), cont),
                };
                colon_unchecked(f, &next, dir)
            }
            Term::Var(_) | Term::Lam(..) => match dir {
                Direction::V2n => {
                    let next = Term::lam(
                        Var::b(),
                        Term::apps(psi_unchecked(f), [Term::Var(Var::b()), cont.clone()]),
                    );
                    colon_unchecked(a, &next, dir)
                }
                Direction::N2v => match &**f {
                    Term::Var(_) => Term::app((**f).clone(), apply_to_n(translate(a, dir), cont)),
                    _ => Term::apps(phi_unchecked(f), [translate(a, dir), cont.clone()]),
                },
            },
        },
    }
}

/// `λb1.T (λb2.b1 b2 K)`.
fn then_apply_v<S: Scalar>(t: Term<S>, cont: &Term<S>) -> Term<S> {
    let inner = Term::lam(
        Var::b2(),
        Term::apps(Term::Var(Var::b1()), [Term::Var(Var::b2()), cont.clone()]),
    );
    Term::lam(Var::b1(), Term::app(t, inner))
}

/// `λb.b S K`.
fn apply_to_n<S: Scalar>(s: Term<S>, cont: &Term<S>) -> Term<S> {
    Term::lam(Var::b(), Term::apps(Term::Var(Var::b()), [s, cont.clone()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    fn cps_str(s: &str, dir: Direction) -> String {
        cps(&t(s), dir).unwrap().to_string()
    }

    #[test]
    fn translation_examples() {
        assert_eq!(cps_str("x", Direction::V2n), r"\k. k x");
        assert_eq!(cps_str("x", Direction::N2v), "x");
        assert!(cps(&t(r"\x. x"), Direction::V2n)
            .unwrap()
            .alpha_eq(&t(r"\k. k (\x. \k. k x)")));
        assert_eq!(
            cps_str("f x", Direction::V2n),
            r"\k. (\k. k f) \b1. (\k. k x) \b2. b1 b2 k"
        );
        assert_eq!(cps_str("f x", Direction::N2v), r"\k. f \b. b x k");
        assert_eq!(cps_str("0", Direction::V2n), "0");
        assert_eq!(cps_str("2.x", Direction::N2v), r"\k. (2.x) k");
        assert_eq!(cps_str("y + z", Direction::N2v), r"\k. (y + z) k");
        assert_eq!(
            cps_str("y + z", Direction::V2n),
            r"\k. ((\k. k y) + \k. k z) k"
        );
    }

    #[test]
    fn rejects_reserved_variables() {
        assert_eq!(
            cps(&t("k x"), Direction::V2n),
            Err(CpsError::ReservedVariable("k".into()))
        );
        assert!(colon_k(&t(r"\b. b"), Direction::N2v).is_err());
    }

    #[test]
    fn psi_and_phi() {
        assert_eq!(psi(&t("x")).unwrap(), t("x"));
        assert!(psi(&t(r"\x. x")).unwrap().alpha_eq(&t(r"\x. \k. k x")));
        assert!(phi(&t(r"\x. x")).unwrap().alpha_eq(&t(r"\x. x")));
        assert!(psi(&t("x y")).is_err());
        assert!(phi(&t("x")).is_err());
    }

    #[test]
    fn colon_examples() {
        let k = t("k");
        assert_eq!(colon(&t("x"), &k, Direction::V2n).unwrap(), t("k x"));
        assert_eq!(
            colon(&t("y + z"), &k, Direction::V2n).unwrap(),
            t("k y + k z")
        );
        assert_eq!(colon(&t("x"), &k, Direction::N2v).unwrap(), t("x k"));
        assert_eq!(
            colon(&t("f x"), &k, Direction::V2n).unwrap(),
            t(r"(\b. f b k) x")
        );
        assert_eq!(
            colon(&t("f x"), &k, Direction::N2v).unwrap(),
            t(r"f (\b. b x k)")
        );
        assert_eq!(
            colon(&t(r"(\x. x) y"), &k, Direction::N2v).unwrap(),
            t(r"(\x. x) y k")
        );
        assert!(colon(&t("x"), &t("x"), Direction::V2n).is_err());
    }

    #[test]
    fn colon_is_not_injective() {
        let a = colon_k(&t("(2.m) l"), Direction::V2n).unwrap();
        let b = colon_k(&t("2.(m l)"), Direction::V2n).unwrap();
        assert_eq!(a, b);
        let a = colon_k(&t("(x + y) z"), Direction::N2v).unwrap();
        let b = colon_k(&t("x z + y z"), Direction::N2v).unwrap();
        assert_eq!(a, b);
    }
}
