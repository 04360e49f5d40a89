use super::*;
use crate::rewrite::RuleLabel;
use crate::scalar::Rational;
use crate::syntax::parse;

fn t(s: &str) -> Term {
    parse(s).unwrap()
}

fn small() -> Budgets {
    Budgets {
        instances: 40,
        max_states: 20_000,
        ..Budgets::default()
    }
}

fn run(id: LemmaId, dir: Direction, terms: &[&str]) -> Verdict<Rational> {
    let inst = Instance {
        terms: terms.iter().map(|s| t(s)).collect(),
        scalar: Some(Rational::from_integer(2)),
    };
    check_instance(id, dir, &inst, &small(), &mut Coverage::default())
}

#[test]
fn lemma_ids_round_trip() {
    for id in LemmaId::ALL {
        assert_eq!(id.name().parse::<LemmaId>().unwrap(), id);
    }
    assert!("no-such-lemma".parse::<LemmaId>().is_err());
}

#[test]
fn reports_are_deterministic() {
    let cfg = GenConfig::<Rational> {
        seed: 11,
        ..GenConfig::default()
    };
    let a = check_lemma(LemmaId::InverseStep, Direction::V2n, &cfg, &small());
    let b = check_lemma(LemmaId::InverseStep, Direction::V2n, &cfg, &small());
    assert_eq!(a.attempted, b.attempted);
    assert_eq!(a.passed, b.passed);
    assert_eq!(a.coverage, b.coverage);
    assert_eq!(a.failures.len(), b.failures.len());
}

#[test]
fn passing_properties_pass_on_small_runs() {
    let cfg = GenConfig::<Rational>::default();
    for id in [
        LemmaId::InverseTerm,
        LemmaId::InverseValue,
        LemmaId::Substitution,
        LemmaId::ContinuationComposition,
        LemmaId::ContinuationSubstitution,
        LemmaId::ContinuationStep,
        LemmaId::SuspensionStep,
        LemmaId::GrammarClosure,
        LemmaId::FreeVars,
        LemmaId::Administrative,
    ] {
        for dir in Direction::BOTH {
            let r = check_lemma(id, dir, &cfg, &small());
            assert!(r.attempted > 0, "{}", r.summary());
            assert!(r.ok(), "{}: {:?}", r.summary(), r.failures.first());
        }
    }
}

#[test]
fn examples_pass() {
    assert!(matches!(
        run(
            LemmaId::InverseTerm,
            Direction::V2n,
            &["(\\x. x) (y + 2.z)"]
        ),
        Verdict::Pass
    ));
    assert!(matches!(
        run(LemmaId::Soundness, Direction::V2n, &["(\\x. x) (y + 2.z)"]),
        Verdict::Pass
    ));
    assert!(matches!(
        run(
            LemmaId::Completeness,
            Direction::N2v,
            &["(\\x. x x) (y + z)"]
        ),
        Verdict::Pass
    ));
    assert!(matches!(
        run(LemmaId::Soundness, Direction::V2n, &["x y"]),
        Verdict::Skip
    ));
}

#[test]
fn sums_do_not_distribute_over_a_stuck_argument() {
    let k = "\\b1. (\\k. (\\k. k f) \\b1. (\\k. k w) \\b2. b1 b2 k) \\b2. b1 b2 k";
    let v = run(
        LemmaId::ContinuationLinearity,
        Direction::V2n,
        &[k, "y", "z"],
    );
    let Verdict::Fail { detail, .. } = v else {
        panic!("expected a failure, got {v:?}");
    };
    assert!(detail.contains("not reachable"), "{detail}");

    let d = "((\\k. k y) + \\k. k z) \\b1. (\\k. (\\k. k f) \\b1. (\\k. k w) \\b2. b1 b2 k) \\b2. b1 b2 k";
    assert!(run(LemmaId::InverseStep, Direction::V2n, &[d]).is_fail());
}

#[test]
fn zero_arguments_break_the_call_by_name_simulation() {
    let m = "(\\x. y) 0";
    assert!(run(LemmaId::Soundness, Direction::N2v, &[m]).is_fail());
    assert!(run(LemmaId::Completeness, Direction::N2v, &[m]).is_fail());
    assert!(run(LemmaId::Indifference, Direction::N2v, &["(\\x. y) 0 k"]).is_fail());
    assert!(matches!(
        run(LemmaId::Soundness, Direction::V2n, &[m]),
        Verdict::Pass
    ));
}

#[test]
fn failures_are_shrunk() {
    let cfg = GenConfig::<Rational> {
        seed: 5,
        ..GenConfig::default()
    };
    let r = check_lemma(
        LemmaId::ContinuationLinearity,
        Direction::V2n,
        &cfg,
        &small(),
    );
    let f = r.failures.first().expect("a counterexample");
    let size = |v: &[String]| v.iter().map(String::len).sum::<usize>();
    assert!(size(&f.shrunk) <= size(&f.input));
    let inst = replay_instance(
        LemmaId::ContinuationLinearity,
        Direction::V2n,
        &cfg,
        &small(),
        f.stream,
    )
    .unwrap();
    assert_eq!(inst.render(), f.input);
}

#[test]
fn coverage_counts_rules() {
    let cfg = GenConfig::<Rational>::default();
    let r = check_lemma(LemmaId::InverseStep, Direction::V2n, &cfg, &small());
    assert!(r.coverage.get(RuleLabel::BetaN) > 0);
    assert!(r.coverage.get(RuleLabel::XiAppL) > 0);
    assert!(r.coverage.missing().len() < 28);
}

#[test]
fn non_injectivity_is_witnessed() {
    let cfg = GenConfig::<Rational>::default();
    let w = non_injectivity_witnesses(Direction::V2n, &cfg, 200);
    assert!(!w.is_empty());
    for (m, back) in w {
        assert!(!m.alpha_eq(&back));
    }
}
