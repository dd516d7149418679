//! Families of monochromatic components: spanning pairs, best two-component
//! covers, double covers, cover triples without large contracting sets and
//! evenly split colourings.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::conditions::is_split;
use crate::graph::union_subgraph_with;
use crate::graph::{Colour, ColouredGraph, ComponentId, ComponentMap, GraphError, MonochromaticComponent, Subgraph};
use crate::matching::{
    find_contracting_set, max_contraction, max_contraction_bruteforce_capped, DEFAULT_BRUTE_FORCE_CAP,
};
use crate::par;
use crate::rational::{self, ceil_times, floor_times, Rational};

pub const MAX_FAMILY: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructuralError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("a family holds at most {MAX_FAMILY} components (got {0})")]
    TooManyMembers(usize),
    #[error("component {0} listed twice")]
    DuplicateMember(ComponentId),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentFamily {
    pub members: Vec<MonochromaticComponent>,
    pub union_size: usize,
    #[serde(with = "rational::serde_str")]
    pub coverage: Rational,
}

fn coverage(size: usize, n: usize) -> Rational {
    if n == 0 {
        Rational::from_integer(1)
    } else {
        Rational::new(size as i64, n as i64)
    }
}

impl ComponentFamily {
    /// Builds a family from components of `map`'s graph. Members keep the
    /// given order.
    pub fn new(map: &ComponentMap, members: Vec<MonochromaticComponent>) -> Result<Self, StructuralError> {
        if members.len() > MAX_FAMILY {
            return Err(StructuralError::TooManyMembers(members.len()));
        }
        for (i, c) in members.iter().enumerate() {
            if !map.owns(c) {
                return Err(GraphError::ForeignComponent(c.key()).into());
            }
            if members[..i].iter().any(|d| d.key() == c.key()) {
                return Err(StructuralError::DuplicateMember(c.key()));
            }
        }
        let union_size = map.union_size(&members);
        Ok(ComponentFamily {
            coverage: coverage(union_size, map.n()),
            members,
            union_size,
        })
    }

    pub fn from_keys(map: &ComponentMap, keys: &[ComponentId]) -> Result<Self, StructuralError> {
        let members = keys
            .iter()
            .map(|&k| map.resolve(k).cloned())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(map, members)
    }

    pub fn keys(&self) -> Vec<ComponentId> {
        self.members.iter().map(MonochromaticComponent::key).collect()
    }

    pub fn union(&self, g: &ColouredGraph) -> Result<Subgraph, GraphError> {
        union_subgraph_with(g, &ComponentMap::new(g), &self.members)
    }

    /// Re-checks membership, distinctness and the union size against `g`.
    pub fn validate(&self, g: &ColouredGraph) -> Result<(), String> {
        let map = ComponentMap::new(g);
        let fresh = ComponentFamily::new(&map, self.members.clone()).map_err(|e| e.to_string())?;
        if fresh.union_size != self.union_size || fresh.coverage != self.coverage {
            return Err(format!(
                "stored union {} but recount gives {}",
                self.union_size, fresh.union_size
            ));
        }
        let h = self.union(g).map_err(|e| e.to_string())?;
        if h.order() != self.union_size {
            return Err(format!("union subgraph has {} vertices", h.order()));
        }
        Ok(())
    }
}

/// Vertices shared by each red/blue component pair, keyed by component ids.
fn overlaps(map: &ComponentMap) -> HashMap<(usize, usize), usize> {
    let mut out = HashMap::new();
    for v in 0..map.n() {
        *out.entry((map.id_of(v, Colour::Red), map.id_of(v, Colour::Blue)))
            .or_default() += 1;
    }
    out
}

fn pair_union(
    overlap: &HashMap<(usize, usize), usize>,
    a: &MonochromaticComponent,
    b: &MonochromaticComponent,
) -> usize {
    if a.colour == b.colour {
        if a.id == b.id {
            a.len()
        } else {
            a.len() + b.len()
        }
    } else {
        let (r, bl) = if a.colour == Colour::Red { (a, b) } else { (b, a) };
        a.len() + b.len() - overlap.get(&(r.id, bl.id)).copied().unwrap_or(0)
    }
}

/// A red and a blue component whose union spans `G`, trying red components
/// and then blue components in size order. With `require_no_contracting`
/// the union must also have maximum contraction 0.
pub fn find_spanning_pair(g: &ColouredGraph, require_no_contracting: bool) -> Option<ComponentFamily> {
    let map = ComponentMap::new(g);
    let overlap = overlaps(&map);
    let n = g.n();
    let mut candidates = Vec::new();
    for r in map.components(Colour::Red) {
        for b in map.components(Colour::Blue) {
            if pair_union(&overlap, r, b) == n {
                candidates.push((r, b));
            }
        }
    }
    par::find_map_first(&candidates, |&(r, b)| {
        let fam = ComponentFamily::new(&map, vec![r.clone(), b.clone()]).ok()?;
        if require_no_contracting {
            let h = union_subgraph_with(g, &map, &fam.members).ok()?;
            if max_contraction(&h) != 0 {
                return None;
            }
        }
        Some(fam)
    })
}

/// The pair of distinct components with the largest union, plus its
/// coverage. On the empty graph the family is empty.
pub fn two_components_cover(g: &ColouredGraph) -> (ComponentFamily, Rational) {
    let map = ComponentMap::new(g);
    let overlap = overlaps(&map);
    let all: Vec<&MonochromaticComponent> = map.all().collect();
    let mut best: Option<(usize, usize, usize)> = None;
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if let Some((_, _, s)) = best {
                if all[i].len() + all[j].len() <= s {
                    continue;
                }
            }
            let size = pair_union(&overlap, all[i], all[j]);
            if best.is_none_or(|(_, _, s)| size > s) {
                best = Some((i, j, size));
            }
        }
    }
    let members = match best {
        Some((i, j, _)) => vec![all[i].clone(), all[j].clone()],
        None => all.iter().map(|c| (*c).clone()).collect(),
    };
    let fam = ComponentFamily::new(&map, members).expect("components of g");
    let cov = fam.coverage;
    (fam, cov)
}

/// Number of vertices whose red and blue components both lie in `members`.
pub fn double_cover_count(map: &ComponentMap, members: &[ComponentId]) -> usize {
    (0..map.n())
        .filter(|&v| Colour::ALL.iter().all(|&c| members.contains(&map.key_of(v, c))))
        .count()
}

/// `(count >= 2n/3, count)` with `count` from [`double_cover_count`].
pub fn is_double_cover(g: &ColouredGraph, fam: &ComponentFamily) -> (bool, usize) {
    let map = ComponentMap::new(g);
    let count = double_cover_count(&map, &fam.keys());
    (3 * count >= 2 * g.n(), count)
}

/// Up to three components covering at least `⌈(1 − eta) n⌉` vertices whose
/// union has no stable set with contraction above `⌊eta n⌋`.
///
/// Candidates are tried by coverage (descending), then member count, then
/// component ids.
pub fn find_cover_triple(g: &ColouredGraph, eta: Rational) -> Option<ComponentFamily> {
    let n = g.n();
    let map = ComponentMap::new(g);
    let need = ceil_times(Rational::from_integer(1) - eta, n).max(0) as usize;
    let limit = floor_times(eta, n);
    let all: Vec<&MonochromaticComponent> = map.all().collect();
    let words = n.div_ceil(64).max(1);
    let bits: Vec<Vec<u64>> = all
        .iter()
        .map(|c| {
            let mut b = vec![0u64; words];
            for &v in &c.vertices {
                b[v / 64] |= 1 << (v % 64);
            }
            b
        })
        .collect();
    let union_of = |idx: &[usize]| -> usize {
        (0..words)
            .map(|w| idx.iter().fold(0u64, |acc, &i| acc | bits[i][w]).count_ones() as usize)
            .sum()
    };

    let mut candidates: Vec<(usize, Vec<usize>)> = Vec::new();
    let m = all.len();
    for i in 0..m {
        let size = union_of(&[i]);
        if size >= need {
            candidates.push((size, vec![i]));
        }
        for j in i + 1..m {
            let size = union_of(&[i, j]);
            if size >= need {
                candidates.push((size, vec![i, j]));
            }
            for k in j + 1..m {
                if all[i].len() + all[j].len() + all[k].len() < need {
                    continue;
                }
                let size = union_of(&[i, j, k]);
                if size >= need {
                    candidates.push((size, vec![i, j, k]));
                }
            }
        }
    }
    let key = |idx: &Vec<usize>| idx.iter().map(|&i| all[i].key()).collect::<Vec<_>>();
    candidates.sort_by(|a, b| {
        b.0.cmp(&a.0)
            .then(a.1.len().cmp(&b.1.len()))
            .then_with(|| key(&a.1).cmp(&key(&b.1)))
    });
    par::find_map_first(&candidates, |(_, idx)| {
        let members: Vec<_> = idx.iter().map(|&i| all[i].clone()).collect();
        let h = union_subgraph_with(g, &map, &members).ok()?;
        if max_contraction(&h) > limit {
            return None;
        }
        ComponentFamily::new(&map, members).ok()
    })
}

/// Re-checks a family returned by [`find_cover_triple`] (or any family) with
/// the exhaustive contraction search: coverage at least `⌈(1 − eta) n⌉` and
/// no stable set contracting more than `⌊eta n⌋`. Requires the union to have
/// at most `cap` vertices.
pub fn verify_cover_family(g: &ColouredGraph, fam: &ComponentFamily, eta: Rational, cap: usize) -> Result<(), String> {
    fam.validate(g)?;
    let need = ceil_times(Rational::from_integer(1) - eta, g.n());
    if (fam.union_size as i64) < need {
        return Err(format!("union {} below {need}", fam.union_size));
    }
    let h = fam.union(g).map_err(|e| e.to_string())?;
    let w = max_contraction_bruteforce_capped(&h, cap).map_err(|e| e.to_string())?;
    if w.contraction > floor_times(eta, g.n()) {
        return Err(format!("stable set {:?} contracts {}", w.set, w.contraction));
    }
    if find_contracting_set(&h, floor_times(eta, g.n()), DEFAULT_BRUTE_FORCE_CAP).is_some() {
        return Err("polynomial search found a contracting set".into());
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenlySplitReport {
    pub first_split: bool,
    pub second_split: bool,
    pub colours_differ: bool,
    /// Double-cover counts of the 3-subsets omitting `r1`, `r2`, `b1`, `b2`
    /// respectively.
    pub triple_counts: [usize; 4],
    pub any_triple_double_covers: bool,
    pub evenly_split: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn evenly_split_report(
    g: &ColouredGraph,
    x: &ColouredGraph,
    delta: Rational,
    gamma: Rational,
    r1: &MonochromaticComponent,
    r2: &MonochromaticComponent,
    b1: &MonochromaticComponent,
    b2: &MonochromaticComponent,
) -> Result<EvenlySplitReport, GraphError> {
    let first_split = is_split(g, x, delta, gamma, r1, r2)?;
    let second_split = is_split(g, x, delta, gamma, b1, b2)?;
    let colours_differ = r1.colour != b1.colour;
    let map = ComponentMap::new(g);
    let four = [r1.key(), r2.key(), b1.key(), b2.key()];
    let mut triple_counts = [0; 4];
    for (skip, slot) in triple_counts.iter_mut().enumerate() {
        let keys: Vec<_> = (0..4).filter(|&i| i != skip).map(|i| four[i]).collect();
        *slot = double_cover_count(&map, &keys);
    }
    let any = triple_counts.iter().any(|&c| 3 * c >= 2 * g.n());
    Ok(EvenlySplitReport {
        first_split,
        second_split,
        colours_differ,
        triple_counts,
        any_triple_double_covers: any,
        evenly_split: first_split && second_split && colours_differ && !any,
    })
}

#[allow(clippy::too_many_arguments)]
pub fn check_evenly_split(
    g: &ColouredGraph,
    x: &ColouredGraph,
    delta: Rational,
    gamma: Rational,
    r1: &MonochromaticComponent,
    r2: &MonochromaticComponent,
    b1: &MonochromaticComponent,
    b2: &MonochromaticComponent,
) -> Result<bool, GraphError> {
    Ok(evenly_split_report(g, x, delta, gamma, r1, r2, b1, b2)?.evenly_split)
}
