//! One-step reduction for λ_lin (`→_{l∪β}`) and λ_alg (`→_{a∪β}`).
//!
//! Every rule line is implemented literally, including the symmetric
//! associativity and commutativity rules. Reduction never happens under a
//! binder; in λ_alg it never happens inside an argument either.

mod rules;
mod search;
mod trace;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::term::Term;

pub use rules::fire;
pub use search::{normalize, reachable, Normalization, NormalizeOutcome, Reachability, Search};
pub use trace::{Path, Step, Trace};

pub const DEFAULT_MAX_STATES: usize = 100_000;
pub const DEFAULT_MAX_STEPS: usize = 1_000;

/// Which calculus' reduction relation to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Calculus {
    /// λ_lin: call-by-value, `→_{l∪β}`.
    Lin,
    /// λ_alg: call-by-name, `→_{a∪β}`.
    Alg,
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Calculus::Lin => "lin",
            Calculus::Alg => "alg",
        })
    }
}

impl FromStr for Calculus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lin" => Ok(Calculus::Lin),
            "alg" => Ok(Calculus::Alg),
            _ => Err(format!("unknown calculus `{s}` (expected lin or alg)")),
        }
    }
}

/// One line of the rewrite-rule table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleLabel {
    BetaN,
    BetaV,
    #[serde(rename = "A_app_sum")]
    AAppSum,
    #[serde(rename = "A_app_scale")]
    AAppScale,
    #[serde(rename = "A_app_zero")]
    AAppZero,
    #[serde(rename = "Al_sum")]
    AlSum,
    #[serde(rename = "Al_scale")]
    AlScale,
    #[serde(rename = "Al_zero")]
    AlZero,
    #[serde(rename = "Ar_sum")]
    ArSum,
    #[serde(rename = "Ar_scale")]
    ArScale,
    #[serde(rename = "Ar_zero")]
    ArZero,
    #[serde(rename = "Asso_L")]
    AssoL,
    #[serde(rename = "Asso_R")]
    AssoR,
    Com,
    F1,
    F2,
    F3,
    F4,
    S1,
    S2,
    S3,
    S4,
    S5,
    #[serde(rename = "Xi_appL")]
    XiAppL,
    #[serde(rename = "Xi_sumL")]
    XiSumL,
    #[serde(rename = "Xi_sumR")]
    XiSumR,
    #[serde(rename = "Xi_scale")]
    XiScale,
    #[serde(rename = "XiLin_appR")]
    XiLinAppR,
}

impl RuleLabel {
    pub const ALL: [RuleLabel; 28] = [
        RuleLabel::BetaN,
        RuleLabel::BetaV,
        RuleLabel::AAppSum,
        RuleLabel::AAppScale,
        RuleLabel::AAppZero,
        RuleLabel::AlSum,
        RuleLabel::AlScale,
        RuleLabel::AlZero,
        RuleLabel::ArSum,
        RuleLabel::ArScale,
        RuleLabel::ArZero,
        RuleLabel::AssoL,
        RuleLabel::AssoR,
        RuleLabel::Com,
        RuleLabel::F1,
        RuleLabel::F2,
        RuleLabel::F3,
        RuleLabel::F4,
        RuleLabel::S1,
        RuleLabel::S2,
        RuleLabel::S3,
        RuleLabel::S4,
        RuleLabel::S5,
        RuleLabel::XiAppL,
        RuleLabel::XiSumL,
        RuleLabel::XiSumR,
        RuleLabel::XiScale,
        RuleLabel::XiLinAppR,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleLabel::BetaN => "BetaN",
            RuleLabel::BetaV => "BetaV",
            RuleLabel::AAppSum => "A_app_sum",
            RuleLabel::AAppScale => "A_app_scale",
            RuleLabel::AAppZero => "A_app_zero",
            RuleLabel::AlSum => "Al_sum",
            RuleLabel::AlScale => "Al_scale",
            RuleLabel::AlZero => "Al_zero",
            RuleLabel::ArSum => "Ar_sum",
            RuleLabel::ArScale => "Ar_scale",
            RuleLabel::ArZero => "Ar_zero",
            RuleLabel::AssoL => "Asso_L",
            RuleLabel::AssoR => "Asso_R",
            RuleLabel::Com => "Com",
            RuleLabel::F1 => "F1",
            RuleLabel::F2 => "F2",
            RuleLabel::F3 => "F3",
            RuleLabel::F4 => "F4",
            RuleLabel::S1 => "S1",
            RuleLabel::S2 => "S2",
            RuleLabel::S3 => "S3",
            RuleLabel::S4 => "S4",
            RuleLabel::S5 => "S5",
            RuleLabel::XiAppL => "Xi_appL",
            RuleLabel::XiSumL => "Xi_sumL",
            RuleLabel::XiSumR => "Xi_sumR",
            RuleLabel::XiScale => "Xi_scale",
            RuleLabel::XiLinAppR => "XiLin_appR",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Associativity, commutativity, factorization and simplification.
    pub fn is_vector_space(self) -> bool {
        matches!(
            self,
            RuleLabel::AssoL
                | RuleLabel::AssoR
                | RuleLabel::Com
                | RuleLabel::F1
                | RuleLabel::F2
                | RuleLabel::F3
                | RuleLabel::F4
                | RuleLabel::S1
                | RuleLabel::S2
                | RuleLabel::S3
                | RuleLabel::S4
                | RuleLabel::S5
        )
    }

    /// Context rules: they never label a redex, only the path to one.
    pub fn is_context(self) -> bool {
        matches!(
            self,
            RuleLabel::XiAppL
                | RuleLabel::XiSumL
                | RuleLabel::XiSumR
                | RuleLabel::XiScale
                | RuleLabel::XiLinAppR
        )
    }

    /// Rules only λ_alg has.
    pub fn is_alg_only(self) -> bool {
        matches!(
            self,
            RuleLabel::BetaN | RuleLabel::AAppSum | RuleLabel::AAppScale | RuleLabel::AAppZero
        )
    }

    /// Rules only λ_lin has.
    pub fn is_lin_only(self) -> bool {
        matches!(
            self,
            RuleLabel::BetaV
                | RuleLabel::AlSum
                | RuleLabel::AlScale
                | RuleLabel::AlZero
                | RuleLabel::ArSum
                | RuleLabel::ArScale
                | RuleLabel::ArZero
                | RuleLabel::XiLinAppR
        )
    }
}

impl fmt::Display for RuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleLabel::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule label `{s}`"))
    }
}

/// A successor found by enumeration, before it is packaged as a [`Step`].
#[derive(Debug, Clone)]
pub(crate) struct RawStep<S> {
    pub rule: RuleLabel,
    pub path: Vec<u8>,
    pub target: Term<S>,
    /// The redex sits inside an application argument (λ_lin only).
    pub in_argument: bool,
}

fn root_candidates<S: Scalar>(t: &Term<S>, calculus: Calculus) -> &'static [RuleLabel] {
    use RuleLabel::*;
    match (t, calculus) {
        (Term::Sum(..), _) => &[AssoL, AssoR, Com, F1, F2, F3, S5],
        (Term::Scale(..), _) => &[F4, S1, S2, S3, S4],
        (Term::App(..), Calculus::Alg) => &[BetaN, AAppSum, AAppScale, AAppZero],
        (Term::App(..), Calculus::Lin) => &[BetaV, AlSum, AlScale, AlZero, ArSum, ArScale, ArZero],
        _ => &[],
    }
}

fn collect_redexes<S: Scalar>(
    t: &Term<S>,
    calculus: Calculus,
    path: &mut Vec<u8>,
    in_argument: bool,
    out: &mut Vec<(RuleLabel, Vec<u8>, Term<S>, bool)>,
) {
    for &rule in root_candidates(t, calculus) {
        if let Some(reduct) = fire(rule, t) {
            out.push((rule, path.clone(), reduct, in_argument));
        }
    }
    let mut descend = |child: &Term<S>, index: u8, in_arg: bool, out: &mut Vec<_>| {
        path.push(index);
        collect_redexes(child, calculus, path, in_arg, out);
        path.pop();
    };
    match t {
        Term::App(f, a) => {
            descend(f, 0, in_argument, out);
            if calculus == Calculus::Lin && f.is_value() {
                descend(a, 1, true, out);
            }
        }
        Term::Sum(l, r) => {
            descend(l, 0, in_argument, out);
            descend(r, 1, in_argument, out);
        }
        Term::Scale(_, b) => descend(b, 0, in_argument, out),
        Term::Var(_) | Term::Lam(..) | Term::Zero => {}
    }
}

pub(crate) fn raw_successors<S: Scalar>(t: &Term<S>, calculus: Calculus) -> Vec<RawStep<S>> {
    let mut redexes = Vec::new();
    collect_redexes(t, calculus, &mut Vec::new(), false, &mut redexes);
    redexes
        .into_iter()
        .map(|(rule, path, reduct, in_argument)| {
            let target = t
                .replace_at(&path, &mut |_| Some(reduct.clone()))
                .expect("redex path is valid");
            RawStep {
                rule,
                path,
                target,
                in_argument,
            }
        })
        .collect()
}

/// Every one-step successor of `t` under the chosen relation.
pub fn successors<S: Scalar>(t: &Term<S>, calculus: Calculus) -> Vec<Step<S>> {
    raw_successors(t, calculus)
        .into_iter()
        .map(|raw| Step {
            source: t.clone(),
            target: raw.target,
            rule: raw.rule,
            path: Path(raw.path),
        })
        .collect()
}

/// One-step successors under `→_{l∪β}`.
pub fn step_lin<S: Scalar>(t: &Term<S>) -> Vec<Step<S>> {
    successors(t, Calculus::Lin)
}

/// One-step successors under `→_{a∪β}`.
pub fn step_alg<S: Scalar>(t: &Term<S>) -> Vec<Step<S>> {
    successors(t, Calculus::Alg)
}

/// Whether some one-step successor of `from` is alpha-equivalent to `to`.
pub fn steps_to<S: Scalar>(from: &Term<S>, to: &Term<S>, calculus: Calculus) -> bool {
    raw_successors(from, calculus)
        .iter()
        .any(|s| s.target.alpha_eq(to))
}
