//! Randomized checking of the translations' properties.
//!
//! Each property draws instances from its own ChaCha stream, so a report is
//! reproducible from the seed and independent of the thread count.

mod generate;
mod lemmas;
mod shrink;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cps::{colon_k, Direction};
use crate::inverse::inv_computation;
use crate::scalar::Scalar;
use crate::term::Term;

pub use generate::{gen_term, GenConfig, ShapeWeights};
pub use lemmas::{check_instance, Coverage, Instance, LemmaId, UnknownLemma, Verdict};
pub use shrink::{shrink, shrink_term};

use generate::Fragments;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// States per reachability search.
    pub max_states: usize,
    /// Non-vector-space steps per normalization.
    pub max_steps: usize,
    /// Instances per property and direction.
    pub instances: usize,
    /// Checks spent shrinking each failure; 0 disables shrinking.
    pub shrink_checks: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_states: crate::rewrite::DEFAULT_MAX_STATES,
            max_steps: crate::rewrite::DEFAULT_MAX_STEPS,
            instances: 500,
            shrink_checks: 200,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    /// Generator seed; with `stream` it regenerates the instance.
    pub seed: u64,
    pub stream: u64,
    pub input: Vec<String>,
    /// The input after shrinking.
    pub shrunk: Vec<String>,
    pub detail: String,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: LemmaId,
    pub direction: Direction,
    pub attempted: usize,
    pub passed: usize,
    pub inconclusive: usize,
    pub failures: Vec<Failure>,
    pub coverage: Coverage,
    pub elapsed_ms: u128,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} {}: {} attempted, {} passed, {} failed, {} inconclusive ({} ms)",
            self.check,
            self.direction,
            self.attempted,
            self.passed,
            self.failures.len(),
            self.inconclusive,
            self.elapsed_ms
        )
    }
}

fn stream_id(id: LemmaId, dir: Direction, i: u64) -> u64 {
    let d = match dir {
        Direction::V2n => 0,
        Direction::N2v => 1,
    };
    ((id.index() as u64) << 48) | (d << 40) | i
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Regenerates the instance drawn from `stream`.
pub fn replay_instance<S: Scalar>(
    id: LemmaId,
    dir: Direction,
    cfg: &GenConfig<S>,
    budgets: &Budgets,
    stream: u64,
) -> Option<Instance<S>> {
    let f = Fragments::new(cfg, dir);
    lemmas::generate(id, &f, budgets, &mut rng_for(cfg.seed, stream))
}

/// Draws `budgets.instances` instances satisfying the hypotheses of `id`
/// (giving up after twenty times as many draws), checks them in parallel
/// and shrinks the failures.
pub fn check_lemma<S: Scalar>(
    id: LemmaId,
    dir: Direction,
    cfg: &GenConfig<S>,
    budgets: &Budgets,
) -> CheckReport {
    let start = Instant::now();
    let wanted = budgets.instances;
    let mut drawn: Vec<(u64, Instance<S>)> = Vec::with_capacity(wanted);
    let mut next = 0u64;
    let limit = (wanted as u64).saturating_mul(20).max(1);
    while drawn.len() < wanted && next < limit {
        let batch = ((wanted - drawn.len()) as u64).max(16).min(limit - next);
        let got: Vec<_> = (next..next + batch)
            .into_par_iter()
            .filter_map(|i| {
                let stream = stream_id(id, dir, i);
                replay_instance(id, dir, cfg, budgets, stream).map(|inst| (stream, inst))
            })
            .collect();
        drawn.extend(got);
        next += batch;
    }
    drawn.truncate(wanted);

    let results: Vec<(Outcome, Coverage)> = drawn
        .into_par_iter()
        .map(|(stream, inst)| {
            let mut cov = Coverage::default();
            let outcome = match check_instance(id, dir, &inst, budgets, &mut cov) {
                Verdict::Pass => Outcome::Pass,
                Verdict::Inconclusive(_) => Outcome::Inconclusive,
                Verdict::Skip => Outcome::Skip,
                Verdict::Fail { detail, witness } => {
                    let shrunk = shrink(inst.clone(), budgets.shrink_checks, |c| {
                        check_instance(id, dir, c, budgets, &mut Coverage::default()).is_fail()
                    });
                    Outcome::Fail(Failure {
                        seed: cfg.seed,
                        stream,
                        input: inst.render(),
                        shrunk: shrunk.render(),
                        detail,
                        witness: witness.map(|t| t.render_text()),
                    })
                }
            };
            (outcome, cov)
        })
        .collect();

    let mut report = CheckReport {
        check: id,
        direction: dir,
        attempted: 0,
        passed: 0,
        inconclusive: 0,
        failures: Vec::new(),
        coverage: Coverage::default(),
        elapsed_ms: 0,
    };
    for (outcome, cov) in results {
        report.coverage.merge(&cov);
        match outcome {
            Outcome::Skip => continue,
            Outcome::Pass => report.passed += 1,
            Outcome::Inconclusive => report.inconclusive += 1,
            Outcome::Fail(f) => report.failures.push(f),
        }
        report.attempted += 1;
    }
    report.elapsed_ms = start.elapsed().as_millis();
    report
}

enum Outcome {
    Pass,
    Inconclusive,
    Skip,
    Fail(Failure),
}

/// Runs each property in both directions.
pub fn run_checks<S: Scalar>(
    ids: &[LemmaId],
    cfg: &GenConfig<S>,
    budgets: &Budgets,
) -> Vec<CheckReport> {
    ids.iter()
        .flat_map(|&id| Direction::BOTH.map(|dir| check_lemma(id, dir, cfg, budgets)))
        .collect()
}

fn single<S: Scalar>(id: LemmaId, m: &Term<S>, dir: Direction, budgets: &Budgets) -> CheckReport {
    let start = Instant::now();
    let inst = Instance {
        terms: vec![m.clone()],
        scalar: None,
    };
    let mut report = CheckReport {
        check: id,
        direction: dir,
        attempted: 1,
        passed: 0,
        inconclusive: 0,
        failures: Vec::new(),
        coverage: Coverage::default(),
        elapsed_ms: 0,
    };
    match check_instance(id, dir, &inst, budgets, &mut report.coverage) {
        Verdict::Pass => report.passed = 1,
        Verdict::Inconclusive(_) => report.inconclusive = 1,
        Verdict::Skip => report.attempted = 0,
        Verdict::Fail { detail, witness } => report.failures.push(Failure {
            seed: 0,
            stream: 0,
            input: inst.render(),
            shrunk: inst.render(),
            detail,
            witness: witness.map(|t| t.render_text()),
        }),
    }
    report.elapsed_ms = start.elapsed().as_millis();
    report
}

/// If `m` normalizes to `V` in the source calculus, `⟦M⟧k` reaches `V:k` in
/// the target calculus. A stuck `m` is not attempted.
pub fn check_soundness<S: Scalar>(m: &Term<S>, dir: Direction, budgets: &Budgets) -> CheckReport {
    single(LemmaId::Soundness, m, dir, budgets)
}

/// Every `V:k` reachable from `⟦M⟧k` comes from a value `V` reachable from
/// `m`.
pub fn check_completeness<S: Scalar>(
    m: &Term<S>,
    dir: Direction,
    budgets: &Budgets,
) -> CheckReport {
    single(LemmaId::Completeness, m, dir, budgets)
}

/// Generated values `V` with `overline(V:k) ≠ V`, up to `tries` draws.
pub fn non_injectivity_witnesses<S: Scalar>(
    dir: Direction,
    cfg: &GenConfig<S>,
    tries: u64,
) -> Vec<(Term<S>, Term<S>)> {
    let f = Fragments::new(cfg, dir);
    (0..tries)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = rng_for(cfg.seed, i);
            let m = f.source(&mut rng);
            let back = inv_computation(&colon_k(&m, dir).ok()?, dir).ok()?;
            (!back.alpha_eq(&m)).then_some((m, back))
        })
        .collect()
}

#[cfg(test)]
mod tests;
