//! Random source terms and random members of the CPS-image grammars.

use rand::seq::IndexedRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cps::{colon_unchecked, translate, Direction};
use crate::inverse;
use crate::rewrite::{raw_successors, Calculus};
use crate::scalar::Scalar;
use crate::term::{Term, Var};

/// Relative weights of the term constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeWeights {
    pub var: u32,
    pub lam: u32,
    pub app: u32,
    pub zero: u32,
    pub scale: u32,
    pub sum: u32,
}

impl Default for ShapeWeights {
    fn default() -> Self {
        ShapeWeights {
            var: 6,
            lam: 3,
            app: 3,
            zero: 1,
            scale: 1,
            sum: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GenConfig<S> {
    pub seed: u64,
    pub max_depth: u32,
    pub scalar_pool: Vec<S>,
    pub source_var_pool: Vec<Var>,
    pub shape_weights: ShapeWeights,
    pub value_only: bool,
}

impl<S: Scalar> Default for GenConfig<S> {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_depth: 5,
            scalar_pool: [(0, 1), (1, 1), (2, 1), (1, 2), (-1, 1)]
                .into_iter()
                .map(|(n, d)| S::from_ratio(n, d))
                .collect(),
            source_var_pool: ["x", "y", "z", "f", "g"]
                .into_iter()
                .map(Var::source)
                .collect(),
            shape_weights: ShapeWeights::default(),
            value_only: false,
        }
    }
}

#[derive(Clone, Copy)]
enum Shape {
    Var,
    Lam,
    App,
    Zero,
    Scale,
    Sum,
}

/// A term drawn from `cfg`, deterministic in `cfg.seed`.
///
/// # Panics
/// If the variable or scalar pool is empty.
pub fn gen_term<S: Scalar>(cfg: &GenConfig<S>) -> Term<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let g = Generator { cfg };
    if cfg.value_only {
        g.value(&mut rng, cfg.max_depth)
    } else {
        g.term(&mut rng, cfg.max_depth)
    }
}

pub(crate) struct Generator<'a, S> {
    pub cfg: &'a GenConfig<S>,
}

impl<S: Scalar> Generator<'_, S> {
    fn pick_shape(&self, rng: &mut ChaCha8Rng, allowed: &[Shape]) -> Shape {
        let w = &self.cfg.shape_weights;
        let weight = |s: &Shape| match s {
            Shape::Var => w.var,
            Shape::Lam => w.lam,
            Shape::App => w.app,
            Shape::Zero => w.zero,
            Shape::Scale => w.scale,
            Shape::Sum => w.sum,
        };
        let total: u32 = allowed.iter().map(weight).sum();
        if total == 0 {
            return Shape::Var;
        }
        let mut roll = rng.random_range(0..total);
        for s in allowed {
            if roll < weight(s) {
                return *s;
            }
            roll -= weight(s);
        }
        Shape::Var
    }

    pub fn var(&self, rng: &mut ChaCha8Rng) -> Var {
        self.cfg
            .source_var_pool
            .choose(rng)
            .expect("variable pool is empty")
            .clone()
    }

    pub fn scalar(&self, rng: &mut ChaCha8Rng) -> S {
        self.cfg
            .scalar_pool
            .choose(rng)
            .expect("scalar pool is empty")
            .clone()
    }

    pub fn term(&self, rng: &mut ChaCha8Rng, depth: u32) -> Term<S> {
        if depth == 0 {
            return Term::Var(self.var(rng));
        }
        let all = [
            Shape::Var,
            Shape::Lam,
            Shape::App,
            Shape::Zero,
            Shape::Scale,
            Shape::Sum,
        ];
        match self.pick_shape(rng, &all) {
            Shape::Var => Term::Var(self.var(rng)),
            Shape::Lam => Term::lam(self.var(rng), self.term(rng, depth - 1)),
            Shape::App => Term::app(self.term(rng, depth - 1), self.term(rng, depth - 1)),
            Shape::Zero => Term::Zero,
            Shape::Scale => Term::scale(self.scalar(rng), self.term(rng, depth - 1)),
            Shape::Sum => Term::sum(self.term(rng, depth - 1), self.term(rng, depth - 1)),
        }
    }

    /// A term of the value grammar `V ::= B | 0 | α.V | V + W`.
    pub fn value(&self, rng: &mut ChaCha8Rng, depth: u32) -> Term<S> {
        if depth == 0 {
            return Term::Var(self.var(rng));
        }
        let shapes = [
            Shape::Var,
            Shape::Lam,
            Shape::Zero,
            Shape::Scale,
            Shape::Sum,
        ];
        match self.pick_shape(rng, &shapes) {
            Shape::Lam => Term::lam(self.var(rng), self.term(rng, depth - 1)),
            Shape::Zero => Term::Zero,
            Shape::Scale => Term::scale(self.scalar(rng), self.value(rng, depth - 1)),
            Shape::Sum => Term::sum(self.value(rng, depth - 1), self.value(rng, depth - 1)),
            _ => Term::Var(self.var(rng)),
        }
    }

    pub fn abstraction(&self, rng: &mut ChaCha8Rng, depth: u32) -> Term<S> {
        Term::lam(self.var(rng), self.term(rng, depth.saturating_sub(1)))
    }

    pub fn base_value(&self, rng: &mut ChaCha8Rng, depth: u32) -> Term<S> {
        if rng.random_bool(0.5) {
            Term::Var(self.var(rng))
        } else {
            self.abstraction(rng, depth)
        }
    }
}

/// Builds members of one direction's image grammar.
pub(crate) struct Fragments<'a, S> {
    pub terms: Generator<'a, S>,
    pub dir: Direction,
    /// Depth of the source terms the fragments are built from.
    pub depth: u32,
}

fn intermediate(rng: &mut ChaCha8Rng) -> Var {
    match rng.random_range(0..3) {
        0 => Var::b(),
        1 => Var::b1(),
        _ => Var::b2(),
    }
}

fn intermediate_pair(rng: &mut ChaCha8Rng) -> (Var, Var) {
    match rng.random_range(0..3) {
        0 => (Var::b1(), Var::b2()),
        1 => (Var::b(), Var::b2()),
        _ => (Var::b2(), Var::b1()),
    }
}

impl<'a, S: Scalar> Fragments<'a, S> {
    pub fn new(cfg: &'a GenConfig<S>, dir: Direction) -> Self {
        Fragments {
            terms: Generator { cfg },
            dir,
            depth: cfg.max_depth,
        }
    }

    fn small_depth(&self, rng: &mut ChaCha8Rng) -> u32 {
        rng.random_range(0..=self.depth.min(3))
    }

    pub fn source(&self, rng: &mut ChaCha8Rng) -> Term<S> {
        let d = rng.random_range(0..=self.depth);
        self.terms.term(rng, d)
    }

    pub fn small_source(&self, rng: &mut ChaCha8Rng) -> Term<S> {
        let d = self.small_depth(rng);
        self.terms.term(rng, d)
    }

    /// `B`: `Ψ` of a base value, or `Φ` of an abstraction.
    pub fn cps_value(&self, rng: &mut ChaCha8Rng) -> Term<S> {
        let d = self.small_depth(rng);
        match self.dir {
            Direction::V2n => {
                let b = self.terms.base_value(rng, d);
                match &b {
                    Term::Lam(x, body) => Term::lam(x.clone(), translate(body, self.dir)),
                    _ => b,
                }
            }
            Direction::N2v => {
                let Term::Lam(x, body) = self.terms.abstraction(rng, d) else {
                    unreachable!()
                };
                Term::lam(x, translate(&body, self.dir))
            }
        }
    }

    /// A translated source term: `S` or `0` (or `x` for n2v).
    pub fn translated(&self, rng: &mut ChaCha8Rng) -> Term<S> {
        let m = self.small_source(rng);
        translate(&m, self.dir)
    }

    /// `S`, never `0`.
    pub fn base_suspension(&self, rng: &mut ChaCha8Rng) -> Term<S> {
        loop {
            let t = self.translated(rng);
            if inverse::is_base_suspension(&t, self.dir) {
                return t;
            }
        }
    }

    /// `T`: a small linear combination of translated terms.
    pub fn suspension(&self, rng: &mut ChaCha8Rng, depth: u32) -> Term<S> {
        if depth == 0 {
            return self.translated(rng);
        }
        match rng.random_range(0..6) {
            0 => Term::sum(
                self.suspension(rng, depth - 1),
                self.suspension(rng, depth - 1),
            ),
            1 => Term::scale(self.terms.scalar(rng), self.suspension(rng, depth - 1)),
            2 => Term::Zero,
            _ => self.translated(rng),
        }
    }

    /// `K`, drawn from the continuation productions.
    pub fn continuation(&self, rng: &mut ChaCha8Rng, depth: u32) -> Term<S> {
        if depth == 0 || rng.random_bool(0.3) {
            return Term::Var(Var::k());
        }
        let rest = self.continuation(rng, depth - 1);
        match self.dir {
            Direction::V2n => {
                if rng.random_bool(0.5) {
                    let b = intermediate(rng);
                    let body = Term::apps(self.cps_value(rng), [Term::Var(b.clone()), rest]);
                    Term::lam(b, body)
                } else {
                    let (b1, b2) = intermediate_pair(rng);
                    let inner = Term::lam(
                        b2.clone(),
                        Term::apps(Term::Var(b1.clone()), [Term::Var(b2), rest]),
                    );
                    Term::lam(b1, Term::app(self.suspension(rng, 1), inner))
                }
            }
            Direction::N2v => {
                let b = intermediate(rng);
                let body = Term::apps(Term::Var(b.clone()), [self.translated(rng), rest]);
                Term::lam(b, body)
            }
        }
    }

    /// `D`: `⟦M⟧k` or `M:K`, followed by a random reduction prefix in the
    /// target calculus.
    pub fn computation(&self, rng: &mut ChaCha8Rng) -> Term<S> {
        let m = self.source(rng);
        let start = if rng.random_bool(0.5) {
            Term::app(translate(&m, self.dir), Term::Var(Var::k()))
        } else {
            let k = self.continuation(rng, 2);
            colon_unchecked(&m, &k, self.dir)
        };
        let steps = rng.random_range(0..=24);
        random_walk(start, self.dir.target(), steps, rng)
    }

    /// `C`: a base computation taken from the linear structure of a `D`.
    pub fn base_computation(&self, rng: &mut ChaCha8Rng) -> Term<S> {
        loop {
            let d = self.computation(rng);
            let mut found = Vec::new();
            linear_leaves(&d, &mut found);
            found.retain(|c| inverse::is_base_computation(c, self.dir));
            if let Some(c) = found.choose(rng) {
                return c.clone();
            }
        }
    }
}

/// Takes up to `steps` uniformly random one-step reductions.
pub(crate) fn random_walk<S: Scalar>(
    mut t: Term<S>,
    calculus: Calculus,
    steps: usize,
    rng: &mut ChaCha8Rng,
) -> Term<S> {
    for _ in 0..steps {
        let succ = raw_successors(&t, calculus);
        let Some(next) = succ.choose(rng) else { break };
        t = next.target.clone();
    }
    t
}

/// Summands and scaled bodies down to the first non-linear node.
pub(crate) fn linear_leaves<S: Scalar>(t: &Term<S>, out: &mut Vec<Term<S>>) {
    match t {
        Term::Sum(l, r) => {
            linear_leaves(l, out);
            linear_leaves(r, out);
        }
        Term::Scale(_, b) => linear_leaves(b, out),
        Term::Zero => {}
        _ => out.push(t.clone()),
    }
}
