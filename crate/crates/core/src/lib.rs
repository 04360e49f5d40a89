//! Algebraic lambda calculi and their continuation-passing translations.

pub mod canon;
pub mod cps;
pub mod harness;
pub mod inverse;
pub mod rewrite;
pub mod scalar;
pub mod syntax;
pub mod term;

pub use canon::{canonical_key, canonicalize_linear, linear_eq};
pub use cps::{colon, cps, Direction};
pub use inverse::{classify, inv_computation, GrammarClass};
pub use rewrite::{normalize, reachable, Calculus, RuleLabel, Step, Trace};
pub use scalar::{Gaussian, Rational, Scalar};
pub use syntax::{parse, parse_in, ParseError};
pub use term::{Namespace, Term, Var};
