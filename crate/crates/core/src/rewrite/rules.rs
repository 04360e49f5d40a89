use std::sync::Arc;

use crate::scalar::Scalar;
use crate::term::Term;

use super::RuleLabel;

/// Applies `rule` at the root of `t`, if its left-hand side and side
/// condition match. Context rules never fire on their own.
pub fn fire<S: Scalar>(rule: RuleLabel, t: &Term<S>) -> Option<Term<S>> {
    use RuleLabel::*;
    match (rule, t) {
        (BetaN, Term::App(f, a)) => match &**f {
            Term::Lam(x, body) => Some(body.substitute(x, a)),
            _ => None,
        },
        (BetaV, Term::App(f, a)) if a.is_base_value() => match &**f {
            Term::Lam(x, body) => Some(body.substitute(x, a)),
            _ => None,
        },

        (AAppSum, Term::App(f, l)) => match &**f {
            Term::Sum(m, n) => Some(Term::Sum(app(m, l), app(n, l))),
            _ => None,
        },
        (AAppScale, Term::App(f, n)) => match &**f {
            Term::Scale(alpha, m) => Some(Term::Scale(alpha.clone(), app(m, n))),
            _ => None,
        },
        (AAppZero, Term::App(f, _)) => matches!(&**f, Term::Zero).then_some(Term::Zero),

        (AlSum, Term::App(f, v)) if v.is_value() => match &**f {
            Term::Sum(m, n) => Some(Term::Sum(app(m, v), app(n, v))),
            _ => None,
        },
        (AlScale, Term::App(f, v)) if v.is_value() => match &**f {
            Term::Scale(alpha, m) => Some(Term::Scale(alpha.clone(), app(m, v))),
            _ => None,
        },
        (AlZero, Term::App(f, v)) if v.is_value() => {
            matches!(&**f, Term::Zero).then_some(Term::Zero)
        }

        (ArSum, Term::App(b, a)) if b.is_base_value() => match &**a {
            Term::Sum(m, n) => Some(Term::Sum(app(b, m), app(b, n))),
            _ => None,
        },
        (ArScale, Term::App(b, a)) if b.is_base_value() => match &**a {
            Term::Scale(alpha, m) => Some(Term::Scale(alpha.clone(), app(b, m))),
            _ => None,
        },
        (ArZero, Term::App(b, a)) if b.is_base_value() => {
            matches!(&**a, Term::Zero).then_some(Term::Zero)
        }

        (AssoL, Term::Sum(m, r)) => match &**r {
            Term::Sum(n, l) => Some(Term::Sum(sum(m, n), l.clone())),
            _ => None,
        },
        (AssoR, Term::Sum(l, n)) => match &**l {
            Term::Sum(m, r) => Some(Term::Sum(m.clone(), sum(r, n))),
            _ => None,
        },
        (Com, Term::Sum(m, n)) => Some(Term::Sum(n.clone(), m.clone())),

        (F1, Term::Sum(l, r)) => match (&**l, &**r) {
            (Term::Scale(alpha, m), Term::Scale(beta, m2)) if m.alpha_eq(m2) => {
                Some(Term::Scale(alpha.clone() + beta.clone(), m.clone()))
            }
            _ => None,
        },
        (F2, Term::Sum(l, m2)) => match &**l {
            Term::Scale(alpha, m) if m.alpha_eq(m2) => {
                Some(Term::Scale(alpha.clone() + S::one(), m.clone()))
            }
            _ => None,
        },
        (F3, Term::Sum(m, m2)) if m.alpha_eq(m2) => {
            Some(Term::Scale(S::one() + S::one(), m.clone()))
        }
        (F4, Term::Scale(alpha, b)) => match &**b {
            Term::Scale(beta, m) => Some(Term::Scale(alpha.clone() * beta.clone(), m.clone())),
            _ => None,
        },

        (S1, Term::Scale(alpha, b)) => match &**b {
            Term::Sum(m, n) => Some(Term::Sum(scale(alpha, m), scale(alpha, n))),
            _ => None,
        },
        (S2, Term::Scale(alpha, m)) if alpha.is_one() => Some((**m).clone()),
        (S3, Term::Scale(alpha, _)) if alpha.is_zero() => Some(Term::Zero),
        (S4, Term::Scale(_, b)) => matches!(&**b, Term::Zero).then_some(Term::Zero),
        (S5, Term::Sum(z, m)) => matches!(&**z, Term::Zero).then(|| (**m).clone()),

        _ => None,
    }
}

fn app<S>(f: &Arc<Term<S>>, a: &Arc<Term<S>>) -> Arc<Term<S>> {
    Arc::new(Term::App(f.clone(), a.clone()))
}

fn sum<S>(l: &Arc<Term<S>>, r: &Arc<Term<S>>) -> Arc<Term<S>> {
    Arc::new(Term::Sum(l.clone(), r.clone()))
}

fn scale<S: Clone>(alpha: &S, t: &Arc<Term<S>>) -> Arc<Term<S>> {
    Arc::new(Term::Scale(alpha.clone(), t.clone()))
}
