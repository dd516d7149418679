//! Degree conditions and the plain / mixed / split classification.
//!
//! Every threshold is an exact [`Rational`]. Pósa-type conditions compare
//! strictly (`d_j > threshold`), Ore-type conditions non-strictly
//! (`deg u + deg v >= threshold`).

use std::collections::HashMap;

use serde::Serialize;

use crate::graph::{Colour, ColouredGraph, ComponentMap, GraphError, MonochromaticComponent};
use crate::rational::{self, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

/// First violation found by a check. Vertex ids are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `d_j <= threshold` for a 1-based index `j`.
    Posa {
        j: usize,
        d_j: usize,
        #[serde(with = "rational::serde_str")]
        threshold: Rational,
    },
    /// Non-adjacent `u < v` with `deg u + deg v < threshold`.
    Ore {
        u: usize,
        v: usize,
        deg_u: usize,
        deg_v: usize,
        #[serde(with = "rational::serde_str")]
        threshold: Rational,
    },
    /// A vertex of the exception graph with degree `>= bound`.
    ExceptionDegree {
        vertex: usize,
        degree: usize,
        #[serde(with = "rational::serde_str")]
        bound: Rational,
    },
}

impl Witness {
    /// Same witness with vertex ids shifted to the 1-based file convention.
    pub fn one_based(&self) -> Witness {
        let mut w = self.clone();
        match &mut w {
            Witness::Posa { .. } => {}
            Witness::Ore { u, v, .. } => {
                *u += 1;
                *v += 1;
            }
            Witness::ExceptionDegree { vertex, .. } => *vertex += 1,
        }
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Params {
    Posa {
        #[serde(with = "rational::serde_str")]
        x: Rational,
        #[serde(with = "rational::serde_str")]
        y: Rational,
        offset: i64,
    },
    Ore {
        #[serde(with = "rational::serde_str")]
        t: Rational,
    },
    OrePair {
        #[serde(with = "rational::serde_str")]
        delta: Rational,
        #[serde(with = "rational::serde_str")]
        gamma: Rational,
    },
    OreImpliesPosa {
        #[serde(with = "rational::serde_str")]
        x: Rational,
        hypothesis_met: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub verdict: Verdict,
    /// Which clause failed, for checks with more than one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub params: Params,
}

impl ConditionReport {
    fn pass(params: Params) -> Self {
        ConditionReport {
            verdict: Verdict::Pass,
            clause: None,
            witness: None,
            params,
        }
    }

    fn fail(params: Params, clause: Option<&'static str>, witness: Witness) -> Self {
        ConditionReport {
            verdict: Verdict::Fail,
            clause,
            witness: Some(witness),
            params,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn posa_threshold(j: usize, n: usize, x: Rational, offset: i64) -> Rational {
    int(j as i64) + x * int(n as i64) + int(offset)
}

/// Every 1-based index `j` with `1 <= j < y n` and `d_j <= j + x n + offset`.
pub fn posa_violations(g: &ColouredGraph, x: Rational, y: Rational, offset: i64) -> Vec<usize> {
    let ds = g.degree_sequence();
    let n = g.n();
    let limit = y * int(n as i64);
    (1..=n)
        .take_while(|&j| int(j as i64) < limit)
        .filter(|&j| int(ds.d(j) as i64) <= posa_threshold(j, n, x, offset))
        .collect()
}

/// Requires `d_j > j + x n + offset` for all integers `1 <= j < y n`.
pub fn check_posa_general(g: &ColouredGraph, x: Rational, y: Rational, offset: i64) -> ConditionReport {
    let params = Params::Posa { x, y, offset };
    let ds = g.degree_sequence();
    let n = g.n();
    let limit = y * int(n as i64);
    for j in (1..=n).take_while(|&j| int(j as i64) < limit) {
        let threshold = posa_threshold(j, n, x, offset);
        if int(ds.d(j) as i64) <= threshold {
            return ConditionReport::fail(
                params,
                None,
                Witness::Posa {
                    j,
                    d_j: ds.d(j),
                    threshold,
                },
            );
        }
    }
    ConditionReport::pass(params)
}

/// `(n, gamma)`-Pósa: `d_j > j + (1/2 + gamma) n` for all `1 <= j < n/4`.
pub fn check_posa(g: &ColouredGraph, gamma: Rational) -> ConditionReport {
    check_posa_general(g, Rational::new(1, 2) + gamma, Rational::new(1, 4), 0)
}

/// Requires `deg u + deg v >= t n` for every non-adjacent pair.
pub fn check_ore_general(g: &ColouredGraph, t: Rational) -> ConditionReport {
    let params = Params::Ore { t };
    match first_ore_violation(g, t) {
        Some(w) => ConditionReport::fail(params, None, w),
        None => ConditionReport::pass(params),
    }
}

fn first_ore_violation(g: &ColouredGraph, t: Rational) -> Option<Witness> {
    let n = g.n();
    let threshold = t * int(n as i64);
    // integer cut-off: a sum s passes iff s >= ceil(threshold)
    let need = threshold.ceil().to_integer();
    for u in 0..n {
        let du = g.degree(u) as i64;
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            let dv = g.degree(v) as i64;
            if du + dv < need {
                return Some(Witness::Ore {
                    u,
                    v,
                    deg_u: du as usize,
                    deg_v: dv as usize,
                    threshold,
                });
            }
        }
    }
    None
}

/// `(n, gamma)`-Ore: `deg u + deg v >= (4/3 + gamma) n` for all non-adjacent pairs.
pub fn check_ore(g: &ColouredGraph, gamma: Rational) -> ConditionReport {
    check_ore_general(g, Rational::new(4, 3) + gamma)
}

/// `(n, delta, gamma)`-Ore pair: `Δ(X) < delta n` and `G ∪ X` is `(n, gamma)`-Ore.
///
/// Colours of `x` are ignored.
pub fn check_ore_pair(
    g: &ColouredGraph,
    x: &ColouredGraph,
    delta: Rational,
    gamma: Rational,
) -> Result<ConditionReport, GraphError> {
    if g.n() != x.n() {
        return Err(GraphError::VertexCountMismatch(g.n(), x.n()));
    }
    let params = Params::OrePair { delta, gamma };
    let bound = delta * int(g.n() as i64);
    if let Some(vertex) = (0..x.n()).max_by_key(|&v| (x.degree(v), std::cmp::Reverse(v))) {
        let degree = x.degree(vertex);
        if int(degree as i64) >= bound {
            return Ok(ConditionReport::fail(
                params,
                Some("exception-max-degree"),
                Witness::ExceptionDegree { vertex, degree, bound },
            ));
        }
    }
    let union = g.union_with(x)?;
    Ok(match first_ore_violation(&union, Rational::new(4, 3) + gamma) {
        Some(w) => ConditionReport::fail(params, Some("ore-on-union"), w),
        None => ConditionReport::pass(params),
    })
}

/// If `G` satisfies `deg u + deg v >= (1 + 2x) n` on non-edges, its degree
/// sequence must satisfy `d_j > j + x n` for `1 <= j < n/2`. A `Fail` here
/// would be a counterexample to that implication.
pub fn ore_implies_posa_check(g: &ColouredGraph, x: Rational) -> ConditionReport {
    let hypothesis = check_ore_general(g, int(1) + x * 2).passed();
    let params = Params::OreImpliesPosa {
        x,
        hypothesis_met: hypothesis,
    };
    if !hypothesis {
        return ConditionReport::pass(params);
    }
    let posa = check_posa_general(g, x, Rational::new(1, 2), 0);
    ConditionReport { params, ..posa }
}

/// Recomputes the numbers in a witness from the graph (`x` for exception
/// witnesses; `G ∪ X` is used for Ore witnesses of pair checks).
pub fn witness_is_sound(g: &ColouredGraph, report: &ConditionReport, x: Option<&ColouredGraph>) -> bool {
    let Some(w) = &report.witness else {
        return report.verdict == Verdict::Pass;
    };
    if report.verdict == Verdict::Pass {
        return false;
    }
    match w {
        Witness::Posa { j, d_j, threshold } => {
            let (x, offset) = match report.params {
                Params::Posa { x, offset, .. } => (x, offset),
                Params::OreImpliesPosa { x, .. } => (x, 0),
                _ => return false,
            };
            let ds = g.degree_sequence();
            *j >= 1
                && *j <= g.n()
                && ds.d(*j) == *d_j
                && *threshold == posa_threshold(*j, g.n(), x, offset)
                && int(*d_j as i64) <= *threshold
        }
        Witness::Ore {
            u,
            v,
            deg_u,
            deg_v,
            threshold,
        } => {
            let host = match (&report.params, x) {
                (Params::OrePair { .. }, Some(x)) => match g.union_with(x) {
                    Ok(h) => h,
                    Err(_) => return false,
                },
                _ => g.clone(),
            };
            u < v
                && *v < host.n()
                && !host.has_edge(*u, *v)
                && host.degree(*u) == *deg_u
                && host.degree(*v) == *deg_v
                && int((*deg_u + *deg_v) as i64) < *threshold
        }
        Witness::ExceptionDegree { vertex, degree, bound } => {
            let Some(x) = x else { return false };
            *vertex < x.n() && x.degree(*vertex) == *degree && int(*degree as i64) >= *bound
        }
    }
}

// ---------------------------------------------------------------------------
// Colouring classes
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum ColouringTag {
    Plain {
        r: MonochromaticComponent,
    },
    Mixed {
        r: MonochromaticComponent,
        b: MonochromaticComponent,
    },
    Split {
        r1: MonochromaticComponent,
        r2: MonochromaticComponent,
    },
    Unclassified {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColouringClass {
    #[serde(flatten)]
    pub tag: ColouringTag,
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
    #[serde(with = "rational::serde_str")]
    pub gamma: Rational,
}

fn at_least(size: usize, frac: Rational, n: usize) -> bool {
    int(size as i64) >= frac * int(n as i64)
}

/// Largest component overall if it has at least `(1 - 10 delta) n` vertices.
pub fn plain_witness(map: &ComponentMap, delta: Rational) -> Option<&MonochromaticComponent> {
    let best = map
        .all()
        .max_by(|a, b| a.len().cmp(&b.len()).then(b.key().cmp(&a.key())))?;
    at_least(best.len(), int(1) - delta * 10, map.n()).then_some(best)
}

/// Red/blue pair with the largest union, and that union's size.
pub fn best_mixed_pair(map: &ComponentMap) -> Option<(&MonochromaticComponent, &MonochromaticComponent, usize)> {
    let mut overlap: HashMap<(usize, usize), usize> = HashMap::new();
    for v in 0..map.n() {
        *overlap
            .entry((map.id_of(v, Colour::Red), map.id_of(v, Colour::Blue)))
            .or_default() += 1;
    }
    let mut best: Option<(&MonochromaticComponent, &MonochromaticComponent, usize)> = None;
    for r in map.components(Colour::Red) {
        for b in map.components(Colour::Blue) {
            if let Some((_, _, s)) = best {
                if r.len() + b.len() <= s {
                    continue;
                }
            }
            let union = r.len() + b.len() - overlap.get(&(r.id, b.id)).copied().unwrap_or(0);
            if best.is_none_or(|(_, _, s)| union > s) {
                best = Some((r, b, union));
            }
        }
    }
    best
}

/// Two components of one colour with the largest union (they are disjoint).
pub fn best_same_colour_pair(map: &ComponentMap) -> Option<(&MonochromaticComponent, &MonochromaticComponent, usize)> {
    let mut best = None;
    for c in Colour::ALL {
        let comps = map.components(c);
        if comps.len() >= 2 {
            let size = comps[0].len() + comps[1].len();
            if best.as_ref().is_none_or(|&(_, _, s)| size > s) {
                best = Some((&comps[0], &comps[1], size));
            }
        }
    }
    best
}

pub fn mixed_witness(
    map: &ComponentMap,
    delta: Rational,
) -> Option<(&MonochromaticComponent, &MonochromaticComponent)> {
    let (r, b, size) = best_mixed_pair(map)?;
    at_least(size, int(1) - delta * 8, map.n()).then_some((r, b))
}

pub fn split_witness(
    map: &ComponentMap,
    delta: Rational,
) -> Option<(&MonochromaticComponent, &MonochromaticComponent)> {
    let (r1, r2, size) = best_same_colour_pair(map)?;
    at_least(size, int(1) - delta * 6, map.n()).then_some((r1, r2))
}

/// Classifies `(G, X)` as plain, mixed or split, in that order of precedence,
/// choosing maximum-size witnesses. Returns `Unclassified` when `(G, X)` is
/// not an Ore pair or when none of the three shapes applies.
pub fn classify_colouring(g: &ColouredGraph, x: &ColouredGraph, delta: Rational, gamma: Rational) -> ColouringClass {
    let wrap = |tag| ColouringClass { tag, delta, gamma };
    match check_ore_pair(g, x, delta, gamma) {
        Err(e) => return wrap(ColouringTag::Unclassified { reason: e.to_string() }),
        Ok(r) if !r.passed() => {
            return wrap(ColouringTag::Unclassified {
                reason: format!("not an Ore pair ({})", r.clause.unwrap_or("?")),
            })
        }
        Ok(_) => {}
    }
    let map = ComponentMap::new(g);
    if let Some(r) = plain_witness(&map, delta) {
        return wrap(ColouringTag::Plain { r: r.clone() });
    }
    if let Some((r, b)) = mixed_witness(&map, delta) {
        return wrap(ColouringTag::Mixed {
            r: r.clone(),
            b: b.clone(),
        });
    }
    if let Some((r1, r2)) = split_witness(&map, delta) {
        return wrap(ColouringTag::Split {
            r1: r1.clone(),
            r2: r2.clone(),
        });
    }
    wrap(ColouringTag::Unclassified {
        reason: "no plain, mixed or split witness (small-order edge case)".into(),
    })
}

/// Whether `(G, X, r1, r2)` is split: an Ore pair, neither plain nor mixed,
/// and `r1, r2` distinct same-coloured components covering `(1 - 6 delta) n`.
pub fn is_split(
    g: &ColouredGraph,
    x: &ColouredGraph,
    delta: Rational,
    gamma: Rational,
    r1: &MonochromaticComponent,
    r2: &MonochromaticComponent,
) -> Result<bool, GraphError> {
    let map = ComponentMap::new(g);
    for c in [r1, r2] {
        if !map.owns(c) {
            return Err(GraphError::ForeignComponent(c.key()));
        }
    }
    if !check_ore_pair(g, x, delta, gamma)?.passed() {
        return Ok(false);
    }
    if plain_witness(&map, delta).is_some() || mixed_witness(&map, delta).is_some() {
        return Ok(false);
    }
    Ok(r1.colour == r2.colour && r1.id != r2.id && at_least(map.union_size([r1, r2]), int(1) - delta * 6, g.n()))
}

// ---------------------------------------------------------------------------
// Degree observations for Pósa graphs
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObservationViolation {
    /// 1, 2 or 3.
    pub item: u8,
    pub set: Vec<usize>,
    pub detail: String,
}

/// Degree consequences of `(n, gamma)`-Pósa:
/// 1. `δ(G) > n/2`;
/// 2. every `U` with `|U| >= n/4` has a vertex of degree `> 3n/4`;
/// 3. every non-empty `U` with `|U| < n/4` has a vertex with more than `n/2`
///    neighbours outside `U`.
///
/// Items 2 and 3 are tested on every prefix of the degree order plus
/// `extra_sets`. Returns `None` if the hypotheses (`G` is `(n, gamma)`-Pósa,
/// `n gamma >= 1`, `n >= 5`) do not hold.
pub fn posa_observations(
    g: &ColouredGraph,
    gamma: Rational,
    extra_sets: &[Vec<usize>],
) -> Option<Vec<ObservationViolation>> {
    let n = g.n();
    if n < 5 || gamma * int(n as i64) < int(1) || !check_posa(g, gamma).passed() {
        return None;
    }
    let mut out = Vec::new();
    if 2 * g.min_degree() <= n {
        out.push(ObservationViolation {
            item: 1,
            set: Vec::new(),
            detail: format!("min degree {} <= n/2", g.min_degree()),
        });
    }
    let ds = g.degree_sequence();
    let prefixes = (1..=n).map(|k| ds.perm[..k].to_vec());
    for set in prefixes.chain(extra_sets.iter().cloned()) {
        if set.is_empty() {
            continue;
        }
        if 4 * set.len() >= n {
            let best = set.iter().map(|&u| g.degree(u)).max().unwrap_or(0);
            if 4 * best <= 3 * n {
                out.push(ObservationViolation {
                    item: 2,
                    detail: format!("max degree {best} <= 3n/4"),
                    set,
                });
            }
        } else {
            let mut mask = vec![false; n];
            for &u in &set {
                mask[u] = true;
            }
            let best = set
                .iter()
                .map(|&u| g.degree(u) - g.degree_into(u, &mask))
                .max()
                .unwrap_or(0);
            if 2 * best <= n {
                out.push(ObservationViolation {
                    item: 3,
                    detail: format!("max outside-degree {best} <= n/2"),
                    set,
                });
            }
        }
    }
    Some(out)
}
