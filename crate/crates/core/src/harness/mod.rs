//! Reproducible instance generation and fuzz campaigns.
//!
//! Every random draw comes from [`rng::SplitMix64`], so a `(generator, seed)`
//! pair identifies a graph on every platform.

pub mod campaign;
pub mod rng;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conditions::{check_ore, check_ore_general, check_ore_pair, check_posa, check_posa_general};
use crate::constructions::{build_gkm, build_ore_not_posa, ConstructionError, GkmSpec};
use crate::graph::{Colour, ColouredGraph, GraphBuilder};
use crate::rational::{self, int, Rational};
use rng::SplitMix64;

pub use campaign::{
    replay_anomaly, replay_trial, run_campaign, CampaignConfig, CampaignResult, CampaignRow, CheckSpec, Level, Outcome,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("probability {0} outside [0, 1]")]
    BadProbability(String),
    #[error("K_n colouring index {index} out of range for n = {n}")]
    BadColouringIndex { n: usize, index: u64 },
    #[error("K_n colourings are enumerated only up to n = 11 (got {0})")]
    ColouringOrder(usize),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("malformed campaign config: {0}")]
    Config(String),
    #[error("cannot write {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed anomaly file: {0}")]
    Anomaly(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    /// Each pair is an edge with probability `p`; each edge is red with
    /// probability `q`.
    Gnp {
        n: usize,
        #[serde(with = "rational::serde_str")]
        p: Rational,
        #[serde(with = "rational::serde_str")]
        q: Rational,
    },
    Gkm(GkmSpec),
    OreNotPosa {
        m: usize,
    },
    /// `G_{k,m}` followed by `flips` random pair edits: a chosen edge has its
    /// colour swapped, a chosen non-edge becomes an edge of random colour.
    PerturbedGkm {
        spec: GkmSpec,
        flips: usize,
    },
    /// The colouring of `K_n` whose `i`-th pair (lexicographic) is blue iff
    /// bit `i` of the seed is set.
    KnColouring {
        n: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub kind: GeneratorKind,
    pub seed: u64,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use rational::Display as R;
        match self {
            GeneratorKind::Gnp { n, p, q } => write!(f, "gnp(n={n},p={},q={})", R(p), R(q)),
            GeneratorKind::Gkm(s) => write!(f, "gkm(k={},m={},inner={})", s.k, s.m, s.inner),
            GeneratorKind::OreNotPosa { m } => write!(f, "ore-not-posa(m={m})"),
            GeneratorKind::PerturbedGkm { spec, flips } => {
                write!(
                    f,
                    "perturbed-gkm(k={},m={},inner={},flips={flips})",
                    spec.k, spec.m, spec.inner
                )
            }
            GeneratorKind::KnColouring { n } => write!(f, "kn-colouring(n={n})"),
        }
    }
}

fn check_probability(p: Rational) -> Result<(), HarnessError> {
    if p < int(0) || p > int(1) {
        Err(HarnessError::BadProbability(rational::to_string(&p)))
    } else {
        Ok(())
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<ColouredGraph, HarnessError> {
    let mut rng = SplitMix64::new(spec.seed);
    match &spec.kind {
        GeneratorKind::Gnp { n, p, q } => {
            check_probability(*p)?;
            check_probability(*q)?;
            let mut b = GraphBuilder::new(*n);
            for u in 0..*n {
                for v in u + 1..*n {
                    if rng.chance(*p) {
                        let c = if rng.chance(*q) { Colour::Red } else { Colour::Blue };
                        b.add_edge(u, v, c).expect("fresh pair");
                    }
                }
            }
            Ok(b.build())
        }
        GeneratorKind::Gkm(s) => Ok(build_gkm(*s)?.graph),
        GeneratorKind::OreNotPosa { m } => Ok(build_ore_not_posa(*m)?),
        GeneratorKind::PerturbedGkm { spec: s, flips } => {
            let g = build_gkm(*s)?.graph;
            let n = g.n() as u64;
            let mut b = g.to_builder();
            let half = Rational::new(1, 2);
            for _ in 0..*flips {
                let u = rng.below(n) as usize;
                let mut v = rng.below(n - 1) as usize;
                if v >= u {
                    v += 1;
                }
                let colour = match b.colour(u, v) {
                    Some(c) => c.other(),
                    None if rng.chance(half) => Colour::Red,
                    None => Colour::Blue,
                };
                b.set_edge(u, v, Some(colour)).expect("in range");
            }
            Ok(b.build())
        }
        GeneratorKind::KnColouring { n } => {
            if *n > 11 {
                return Err(HarnessError::ColouringOrder(*n));
            }
            let pairs = n * n.saturating_sub(1) / 2;
            if pairs < 64 && spec.seed >> pairs != 0 {
                return Err(HarnessError::BadColouringIndex {
                    n: *n,
                    index: spec.seed,
                });
            }
            let mut b = GraphBuilder::new(*n);
            let mut bit = 0;
            for u in 0..*n {
                for v in u + 1..*n {
                    let c = if spec.seed >> bit & 1 == 1 {
                        Colour::Blue
                    } else {
                        Colour::Red
                    };
                    b.add_edge(u, v, c).expect("fresh pair");
                    bit += 1;
                }
            }
            Ok(b.build())
        }
    }
}

/// Acceptance predicate for rejection sampling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Condition {
    Posa {
        #[serde(with = "rational::serde_str")]
        gamma: Rational,
    },
    PosaGeneral {
        #[serde(with = "rational::serde_str")]
        x: Rational,
        #[serde(with = "rational::serde_str")]
        y: Rational,
        offset: i64,
    },
    Ore {
        #[serde(with = "rational::serde_str")]
        gamma: Rational,
    },
    OreGeneral {
        #[serde(with = "rational::serde_str")]
        t: Rational,
    },
    /// Uses the greedy exception graph of [`exception_graph`].
    OrePair {
        #[serde(with = "rational::serde_str")]
        delta: Rational,
        #[serde(with = "rational::serde_str")]
        gamma: Rational,
    },
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use rational::Display as R;
        match self {
            Condition::Posa { gamma } => write!(f, "posa(gamma={})", R(gamma)),
            Condition::PosaGeneral { x, y, offset } => write!(f, "posa(x={},y={},offset={offset})", R(x), R(y)),
            Condition::Ore { gamma } => write!(f, "ore(gamma={})", R(gamma)),
            Condition::OreGeneral { t } => write!(f, "ore(t={})", R(t)),
            Condition::OrePair { delta, gamma } => write!(f, "ore-pair(delta={},gamma={})", R(delta), R(gamma)),
        }
    }
}

impl Condition {
    /// Whether `g` is accepted, together with the exception graph used
    /// (empty except for [`Condition::OrePair`]).
    pub fn accepts(&self, g: &ColouredGraph) -> (bool, ColouredGraph) {
        match self {
            Condition::Posa { gamma } => (check_posa(g, *gamma).passed(), ColouredGraph::empty(g.n())),
            Condition::PosaGeneral { x, y, offset } => (
                check_posa_general(g, *x, *y, *offset).passed(),
                ColouredGraph::empty(g.n()),
            ),
            Condition::Ore { gamma } => (check_ore(g, *gamma).passed(), ColouredGraph::empty(g.n())),
            Condition::OreGeneral { t } => (check_ore_general(g, *t).passed(), ColouredGraph::empty(g.n())),
            Condition::OrePair { delta, gamma } => {
                let x = exception_graph(g, *delta, *gamma);
                let ok = check_ore_pair(g, &x, *delta, *gamma).is_ok_and(|r| r.passed());
                (ok, x)
            }
        }
    }
}

/// Greedy exception graph: scanning pairs `u < v` in lexicographic order, a
/// pair missing from `G ∪ X` whose degree sum in `G ∪ X` is below
/// `(4/3 + gamma) n` is added to `X` when both endpoints stay below `delta n`
/// in `X`. Edges of `X` are stored red; their colour is irrelevant.
pub fn exception_graph(g: &ColouredGraph, delta: Rational, gamma: Rational) -> ColouredGraph {
    let n = g.n();
    let threshold = (Rational::new(4, 3) + gamma) * int(n as i64);
    let cap = delta * int(n as i64);
    let mut deg: Vec<i64> = g.degrees().into_iter().map(|d| d as i64).collect();
    let mut xdeg = vec![0i64; n];
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) || int(deg[u] + deg[v]) >= threshold {
                continue;
            }
            if int(xdeg[u] + 1) < cap && int(xdeg[v] + 1) < cap {
                b.add_edge(u, v, Colour::Red).expect("fresh pair");
                for w in [u, v] {
                    deg[w] += 1;
                    xdeg[w] += 1;
                }
            }
        }
    }
    b.build()
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub graph: ColouredGraph,
    pub exception: ColouredGraph,
    /// 0-based attempt index.
    pub attempt: usize,
    /// Seed of the accepted attempt.
    pub seed: u64,
}

/// Rejection sampling: attempt `a` uses seed `spec.seed + a`.
pub fn sample_conditioned(
    spec: &GeneratorSpec,
    condition: &Condition,
    max_tries: usize,
) -> Result<Option<Sample>, HarnessError> {
    for attempt in 0..max_tries {
        let seed = spec.seed.wrapping_add(attempt as u64);
        let g = generate(&GeneratorSpec {
            kind: spec.kind.clone(),
            seed,
        })?;
        let (ok, x) = condition.accepts(&g);
        if ok {
            return Ok(Some(Sample {
                graph: g,
                exception: x,
                attempt,
                seed,
            }));
        }
    }
    Ok(None)
}
