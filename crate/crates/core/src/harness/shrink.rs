//! Greedy shrinking of failing instances.

use crate::scalar::Scalar;
use crate::term::Term;

use super::lemmas::Instance;

/// Smaller variants of `t`: each subterm replaced by one of its children or
/// by `0`, and each scaling by its body.
pub fn shrink_term<S: Scalar>(t: &Term<S>) -> Vec<Term<S>> {
    let mut paths = Vec::new();
    collect_paths(t, &mut Vec::new(), &mut paths);
    let mut out = Vec::new();
    for p in paths {
        let sub = t.subterm(&p).expect("collected path");
        let mut replacements = match sub {
            Term::Var(_) | Term::Zero => vec![],
            Term::Lam(_, b) | Term::Scale(_, b) => vec![(**b).clone()],
            Term::App(l, r) | Term::Sum(l, r) => vec![(**l).clone(), (**r).clone()],
        };
        if !matches!(sub, Term::Zero) {
            replacements.push(Term::Zero);
        }
        if let Term::Scale(a, b) = sub {
            if !a.is_one() {
                replacements.push(Term::scale(S::one(), (**b).clone()));
            }
        }
        for r in replacements {
            if let Some(next) = t.replace_at(&p, &mut |_| Some(r.clone())) {
                out.push(next);
            }
        }
    }
    out
}

fn collect_paths<S>(t: &Term<S>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    out.push(cur.clone());
    let children: &[&Term<S>] = match t {
        Term::Var(_) | Term::Zero => &[],
        Term::Lam(_, b) | Term::Scale(_, b) => &[b],
        Term::App(l, r) | Term::Sum(l, r) => &[l, r],
    };
    for (i, c) in children.iter().enumerate() {
        cur.push(i as u8);
        collect_paths(c, cur, out);
        cur.pop();
    }
}

fn candidates<S: Scalar>(inst: &Instance<S>) -> Vec<Instance<S>> {
    let mut out = Vec::new();
    for (i, t) in inst.terms.iter().enumerate() {
        for smaller in shrink_term(t) {
            let mut next = inst.clone();
            next.terms[i] = smaller;
            out.push(next);
        }
    }
    if inst.scalar.as_ref().is_some_and(|a| !a.is_one()) {
        out.push(Instance {
            scalar: Some(S::one()),
            ..inst.clone()
        });
    }
    out
}

fn weight<S: Scalar>(inst: &Instance<S>) -> usize {
    inst.terms.iter().map(Term::size).sum()
}

/// Repeatedly moves to the first smaller candidate that still fails, for
/// at most `max_checks` calls of `fails`.
pub fn shrink<S: Scalar>(
    inst: Instance<S>,
    max_checks: usize,
    mut fails: impl FnMut(&Instance<S>) -> bool,
) -> Instance<S> {
    let mut best = inst;
    let mut budget = max_checks;
    'outer: while budget > 0 {
        let size = weight(&best);
        for c in candidates(&best) {
            if weight(&c) >= size && c.scalar == best.scalar {
                continue;
            }
            if budget == 0 {
                break 'outer;
            }
            budget -= 1;
            if fails(&c) {
                best = c;
                continue 'outer;
            }
        }
        break;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn shrinks_to_a_minimal_failing_term() {
        let start = Instance {
            terms: vec![parse("(\\x. x (2.y)) (z + \\f. f f)").unwrap()],
            scalar: None,
        };
        let has_scale = |i: &Instance<_>| i.terms[0].to_string().contains("2.");
        let out = shrink(start, 1000, has_scale);
        assert_eq!(out.terms[0].to_string(), "2.y");
    }

    #[test]
    fn candidates_are_smaller() {
        let t = parse("(x + 3.y) \\z. z").unwrap();
        for c in shrink_term(&t) {
            assert!(c.size() <= t.size(), "{c}");
        }
    }
}
