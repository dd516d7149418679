//! Extremal graphs.
//!
//! `G_{k,m}` has four clusters: `U` (k vertices), `A1` and `A2` (m each) and
//! `B` (2m − k), laid out in that order on `0..4m`. Edges inside `A1`, between
//! `A1` and `B` and between `U` and `A2` are red; edges inside `A2`, between
//! `A2` and `B` and between `U` and `A1` are blue. There are no `U`–`B` and no
//! `A1`–`A2` edges. Edges inside `U` and inside `B` follow an
//! [`InnerColouring`].
//!
//! The two-clique graph of [`build_ore_not_posa`] satisfies an Ore-type sum
//! condition near `5n/3` while failing the Pósa condition at `j = m − 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conditions::posa_violations;
use crate::graph::{Colour, ColouredGraph, GraphBuilder};
use crate::harness::rng::SplitMix64;
use crate::partition::{max_cycle_cover, SearchError};
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("G_(k,m) needs 1 <= k < m (got k = {k}, m = {m})")]
    InvalidGkm { k: usize, m: usize },
    #[error("two-clique graph needs m >= 3 (got {0})")]
    InvalidM(usize),
    #[error("bad inner colouring '{0}' (expected red, blue or seed:<u64>)")]
    BadInner(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum InnerColouring {
    AllRed,
    AllBlue,
    /// Each inner edge is red with probability 1/2, drawn in lexicographic
    /// pair order from a SplitMix64 stream.
    Seeded(u64),
}

impl fmt::Display for InnerColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InnerColouring::AllRed => f.write_str("red"),
            InnerColouring::AllBlue => f.write_str("blue"),
            InnerColouring::Seeded(s) => write!(f, "seed:{s}"),
        }
    }
}

impl From<InnerColouring> for String {
    fn from(c: InnerColouring) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for InnerColouring {
    type Error = ConstructionError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl FromStr for InnerColouring {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "red" | "r" => Ok(InnerColouring::AllRed),
            "blue" | "b" => Ok(InnerColouring::AllBlue),
            other => other
                .strip_prefix("seed:")
                .and_then(|x| x.parse().ok())
                .map(InnerColouring::Seeded)
                .ok_or_else(|| ConstructionError::BadInner(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GkmSpec {
    pub k: usize,
    pub m: usize,
    pub inner: InnerColouring,
}

impl GkmSpec {
    pub fn new(k: usize, m: usize, inner: InnerColouring) -> Result<Self, ConstructionError> {
        let spec = GkmSpec { k, m, inner };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        if self.k >= 1 && self.k < self.m {
            Ok(())
        } else {
            Err(ConstructionError::InvalidGkm { k: self.k, m: self.m })
        }
    }

    pub fn n(&self) -> usize {
        4 * self.m
    }

    /// Degree of each cluster's vertices, in cluster order U, A1, A2, B.
    pub fn cluster_degrees(&self) -> [usize; 4] {
        let (k, m) = (self.k, self.m);
        [k + 2 * m - 1, 3 * m - 1, 3 * m - 1, 4 * m - k - 1]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Cluster {
    U,
    A1,
    A2,
    B,
}

#[derive(Clone, Debug)]
pub struct GkmGraph {
    pub spec: GkmSpec,
    pub graph: ColouredGraph,
    /// Cluster of every vertex.
    pub clusters: Vec<Cluster>,
}

impl GkmGraph {
    pub fn members(&self, cluster: Cluster) -> Vec<usize> {
        (0..self.clusters.len())
            .filter(|&v| self.clusters[v] == cluster)
            .collect()
    }
}

pub fn gkm_clusters(k: usize, m: usize) -> Vec<Cluster> {
    let mut out = vec![Cluster::U; k];
    out.extend(std::iter::repeat_n(Cluster::A1, m));
    out.extend(std::iter::repeat_n(Cluster::A2, m));
    out.extend(std::iter::repeat_n(Cluster::B, 2 * m - k));
    out
}

pub fn build_gkm(spec: GkmSpec) -> Result<GkmGraph, ConstructionError> {
    spec.validate()?;
    let clusters = gkm_clusters(spec.k, spec.m);
    let n = spec.n();
    let mut rng = match spec.inner {
        InnerColouring::Seeded(seed) => Some(SplitMix64::new(seed)),
        _ => None,
    };
    let half = Rational::new(1, 2);
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            use Cluster::*;
            let colour = match (clusters[u], clusters[v]) {
                (A1, A1) | (A1, B) | (U, A2) => Some(Colour::Red),
                (A2, A2) | (A2, B) | (U, A1) => Some(Colour::Blue),
                (U, B) | (A1, A2) => None,
                (U, U) | (B, B) => Some(match (spec.inner, rng.as_mut()) {
                    (InnerColouring::AllRed, _) => Colour::Red,
                    (InnerColouring::AllBlue, _) => Colour::Blue,
                    (_, Some(r)) => {
                        if r.chance(half) {
                            Colour::Red
                        } else {
                            Colour::Blue
                        }
                    }
                    (_, None) => unreachable!(),
                }),
                _ => unreachable!("clusters are laid out in order"),
            };
            if let Some(c) = colour {
                b.add_edge(u, v, c).expect("fresh pair");
            }
        }
    }
    Ok(GkmGraph {
        spec,
        graph: b.build(),
        clusters,
    })
}

/// Two cliques on `m − 1` and `3m + 1` vertices; every vertex `u_i` of the
/// small clique also sees `2m + 1` vertices of the large one, taken
/// cyclically from offset `i(2m + 1) mod (3m + 1)`. All edges are red.
pub fn build_ore_not_posa(m: usize) -> Result<ColouredGraph, ConstructionError> {
    if m < 3 {
        return Err(ConstructionError::InvalidM(m));
    }
    let small = m - 1;
    let large = 3 * m + 1;
    let n = 4 * m;
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if (u < small) == (v < small) {
                b.add_edge(u, v, Colour::Red).expect("fresh pair");
            }
        }
    }
    for i in 0..small {
        for t in 0..2 * m + 1 {
            let w = small + (i * (2 * m + 1) + t) % large;
            b.add_edge(i, w, Colour::Red).expect("distinct targets");
        }
    }
    Ok(b.build())
}

/// Four blobs of `s` vertices each, cliques inside, red between blobs 0–1 and
/// 2–3, blue between 0–2 and 1–3, nothing between 0–3 and 1–2. Each colour
/// has two components of `2s` vertices.
pub fn build_four_blob(s: usize) -> ColouredGraph {
    let n = 4 * s;
    let blob = |v: usize| v / s.max(1);
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let colour = match (blob(u), blob(v)) {
                (p, q) if p == q => Some(Colour::Red),
                (0, 1) | (2, 3) => Some(Colour::Red),
                (0, 2) | (1, 3) => Some(Colour::Blue),
                _ => None,
            };
            if let Some(c) = colour {
                b.add_edge(u, v, c).expect("fresh pair");
            }
        }
    }
    b.build()
}

#[derive(Clone, Debug, Serialize)]
pub struct GkmReport {
    pub spec: GkmSpec,
    pub n: usize,
    /// 1-based indices `j` failing `d_j > j + n/2 − 1` for `j < n/4`.
    pub posa_violations: Vec<usize>,
    /// Violations are exactly `{k}`.
    pub posa_clause: bool,
    /// Largest number of vertices two disjoint monochromatic generalized
    /// cycles can cover; absent if the search was skipped.
    pub best_two_cover: Option<usize>,
    /// `best_two_cover < n`; absent if skipped.
    pub cover_clause: Option<bool>,
    pub skipped: Option<String>,
}

impl GkmReport {
    pub fn holds(&self) -> bool {
        self.posa_clause && self.cover_clause == Some(true)
    }
}

pub fn verify_gkm(spec: GkmSpec, cap: usize) -> Result<GkmReport, ConstructionError> {
    let built = build_gkm(spec)?;
    let g = &built.graph;
    let violations = posa_violations(g, Rational::new(1, 2), Rational::new(1, 4), -1);
    let (best, skipped) = match max_cycle_cover(g, 2, false, cap) {
        Ok((value, _)) => (Some(value), None),
        Err(e @ SearchError::CapExceeded { .. }) => (None, Some(e.to_string())),
        Err(e) => unreachable!("{e}"),
    };
    Ok(GkmReport {
        spec,
        n: g.n(),
        posa_clause: violations == [spec.k],
        posa_violations: violations,
        best_two_cover: best,
        cover_clause: best.map(|b| b < g.n()),
        skipped,
    })
}
