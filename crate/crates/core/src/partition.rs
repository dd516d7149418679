//! Exact search for partitions into monochromatic generalized cycles.
//!
//! A generalized cycle is the empty set, a single vertex, a single edge or a
//! cycle on at least three vertices. Empty and single-vertex parts carry no
//! colour; edges and cycles carry the colour of their edges.
//!
//! For each colour a Held–Karp style table answers, for every vertex subset
//! `S`, whether the colour class induced on `S` has a spanning generalized
//! cycle. Partitions into `k` parts are then found with a layered subset DP:
//! layer `i` stores, for every vertex set `T`, the largest number of vertices
//! coverable inside `T` by the first `i` parts.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Colour, ColouredGraph};

pub const DEFAULT_CAP: usize = 14;
/// Bitmask representation limit regardless of the configured cap.
pub const MAX_SUPPORTED: usize = 30;
pub const CAP_ENV: &str = "CYCLECOVER_CAP";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("graph has {n} vertices, above the partition-search cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("number of parts must be 1, 2 or 3 (got {0})")]
    BadPartCount(usize),
}

/// The cap set through `CYCLECOVER_CAP`, if any.
pub fn cap_override() -> Option<usize> {
    std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok())
}

/// `CYCLECOVER_CAP` if set and valid, else [`DEFAULT_CAP`].
pub fn cap_from_env() -> usize {
    cap_override().unwrap_or(DEFAULT_CAP)
}

fn check_cap(n: usize, cap: usize) -> Result<(), SearchError> {
    let cap = cap.min(MAX_SUPPORTED);
    if n > cap {
        Err(SearchError::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneralizedCycle {
    Empty,
    Vertex { v: usize },
    Edge { u: usize, v: usize, colour: Colour },
    Cycle { vertices: Vec<usize>, colour: Colour },
}

impl GeneralizedCycle {
    pub fn vertices(&self) -> Vec<usize> {
        match self {
            GeneralizedCycle::Empty => vec![],
            GeneralizedCycle::Vertex { v } => vec![*v],
            GeneralizedCycle::Edge { u, v, .. } => vec![*u, *v],
            GeneralizedCycle::Cycle { vertices, .. } => vertices.clone(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            GeneralizedCycle::Empty => 0,
            GeneralizedCycle::Vertex { .. } => 1,
            GeneralizedCycle::Edge { .. } => 2,
            GeneralizedCycle::Cycle { vertices, .. } => vertices.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn colour(&self) -> Option<Colour> {
        match self {
            GeneralizedCycle::Edge { colour, .. } | GeneralizedCycle::Cycle { colour, .. } => Some(*colour),
            _ => None,
        }
    }

    /// Checks edges and colours against `g`.
    pub fn is_valid_in(&self, g: &ColouredGraph) -> bool {
        match self {
            GeneralizedCycle::Empty => true,
            GeneralizedCycle::Vertex { v } => *v < g.n(),
            GeneralizedCycle::Edge { u, v, colour } => u != v && g.colour(*u, *v) == Some(*colour),
            GeneralizedCycle::Cycle { vertices, colour } => {
                let k = vertices.len();
                let mut sorted = vertices.clone();
                sorted.sort_unstable();
                sorted.dedup();
                k >= 3
                    && sorted.len() == k
                    && (0..k).all(|i| g.colour(vertices[i], vertices[(i + 1) % k]) == Some(*colour))
            }
        }
    }

    /// `cycle <colour|-> v1 v2 ...` with 1-based vertices.
    pub fn to_line(&self) -> String {
        let colour = self.colour().map_or("-", Colour::name);
        let mut line = format!("cycle {colour}");
        for v in self.vertices() {
            line.push_str(&format!(" {}", v + 1));
        }
        line
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclePartition {
    pub parts: Vec<GeneralizedCycle>,
    pub covered: usize,
}

impl CyclePartition {
    /// Re-validates every part, pairwise disjointness, the cover count and
    /// (if `distinct_colours`) that no two coloured parts share a colour.
    pub fn validate(&self, g: &ColouredGraph, distinct_colours: bool) -> Result<(), String> {
        let mut used = vec![false; g.n()];
        let mut total = 0;
        for part in &self.parts {
            if !part.is_valid_in(g) {
                return Err(format!("invalid part {part:?}"));
            }
            for v in part.vertices() {
                if v >= g.n() || used[v] {
                    return Err(format!("vertex {v} used twice or out of range"));
                }
                used[v] = true;
                total += 1;
            }
        }
        if total != self.covered {
            return Err(format!("covered = {} but parts hold {total}", self.covered));
        }
        if distinct_colours {
            let colours: Vec<_> = self.parts.iter().filter_map(GeneralizedCycle::colour).collect();
            for (i, a) in colours.iter().enumerate() {
                if colours[i + 1..].contains(a) {
                    return Err(format!("two parts coloured {a}"));
                }
            }
        }
        Ok(())
    }
}

/// Per-subset spanning-cycle feasibility in one colour.
#[derive(Clone, Debug)]
pub struct HamTable {
    n: usize,
    colour: Colour,
    adj: Vec<u32>,
    // ends[S]: vertices v such that a path from the lowest vertex of S to v
    // visits exactly S
    ends: Vec<u32>,
}

impl HamTable {
    pub fn build(g: &ColouredGraph, colour: Colour, cap: usize) -> Result<Self, SearchError> {
        check_cap(g.n(), cap)?;
        let n = g.n();
        let adj: Vec<u32> = g.colour_masks(colour).into_iter().map(|m| m as u32).collect();
        let size = 1usize << n;
        let mut ends = vec![0u32; size];
        for mask in 1..size as u32 {
            let low = mask.trailing_zeros();
            if mask == 1 << low {
                ends[mask as usize] = mask;
                continue;
            }
            let mut found = 0u32;
            let mut rest = mask & !(1 << low);
            while rest != 0 {
                let v = rest.trailing_zeros();
                rest &= rest - 1;
                if ends[(mask ^ (1 << v)) as usize] & adj[v as usize] != 0 {
                    found |= 1 << v;
                }
            }
            ends[mask as usize] = found;
        }
        Ok(HamTable { n, colour, adj, ends })
    }

    pub fn colour(&self) -> Colour {
        self.colour
    }

    /// Whether the colour class on `mask` has a spanning generalized cycle.
    pub fn spans(&self, mask: u32) -> bool {
        match mask.count_ones() {
            0 | 1 => true,
            2 => {
                let u = mask.trailing_zeros();
                self.adj[u as usize] & mask != 0
            }
            _ => {
                let low = mask.trailing_zeros();
                self.ends[mask as usize] & self.adj[low as usize] != 0
            }
        }
    }

    /// A spanning generalized cycle on `mask`, if any. Degenerate sizes come
    /// back colourless.
    pub fn cycle(&self, mask: u32) -> Option<GeneralizedCycle> {
        if !self.spans(mask) {
            return None;
        }
        Some(match mask.count_ones() {
            0 => GeneralizedCycle::Empty,
            1 => GeneralizedCycle::Vertex {
                v: mask.trailing_zeros() as usize,
            },
            2 => {
                let u = mask.trailing_zeros() as usize;
                let v = (31 - mask.leading_zeros()) as usize;
                GeneralizedCycle::Edge {
                    u,
                    v,
                    colour: self.colour,
                }
            }
            _ => {
                let low = mask.trailing_zeros();
                let mut cur = (self.ends[mask as usize] & self.adj[low as usize]).trailing_zeros();
                let mut rem = mask;
                let mut path = vec![cur as usize];
                while rem != 1 << low {
                    let prev = rem ^ (1 << cur);
                    let next = (self.ends[prev as usize] & self.adj[cur as usize]).trailing_zeros();
                    path.push(next as usize);
                    rem = prev;
                    cur = next;
                }
                debug_assert_eq!(cur, low);
                path.reverse();
                GeneralizedCycle::Cycle {
                    vertices: path,
                    colour: self.colour,
                }
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

pub fn mono_hamiltonian_table(g: &ColouredGraph, colour: Colour, cap: usize) -> Result<HamTable, SearchError> {
    HamTable::build(g, colour, cap)
}

/// What a single part may be.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Any,
    Colour(Colour),
    Neutral,
}

/// Both colour tables for one graph, reusable across queries.
#[derive(Clone, Debug)]
pub struct PartitionSearch {
    n: usize,
    tables: [HamTable; 2],
}

impl PartitionSearch {
    pub fn new(g: &ColouredGraph, cap: usize) -> Result<Self, SearchError> {
        Ok(PartitionSearch {
            n: g.n(),
            tables: [
                HamTable::build(g, Colour::Red, cap)?,
                HamTable::build(g, Colour::Blue, cap)?,
            ],
        })
    }

    pub fn table(&self, colour: Colour) -> &HamTable {
        &self.tables[colour.index()]
    }

    fn feasible(&self, slot: Slot, mask: u32) -> bool {
        match slot {
            Slot::Neutral => mask.count_ones() <= 1,
            Slot::Colour(c) => self.tables[c.index()].spans(mask),
            Slot::Any => self.tables[0].spans(mask) || self.tables[1].spans(mask),
        }
    }

    fn part(&self, slot: Slot, mask: u32) -> GeneralizedCycle {
        let tables: &[&HamTable] = match slot {
            Slot::Colour(c) => &[&self.tables[c.index()]],
            _ => &[&self.tables[0], &self.tables[1]],
        };
        tables.iter().find_map(|t| t.cycle(mask)).expect("feasible part")
    }

    fn slots(k: usize, distinct: bool) -> Result<Vec<Slot>, SearchError> {
        if !(1..=3).contains(&k) {
            return Err(SearchError::BadPartCount(k));
        }
        Ok(match (k, distinct) {
            (k, false) => vec![Slot::Any; k],
            (1, true) => vec![Slot::Any],
            (2, true) => vec![Slot::Colour(Colour::Red), Slot::Colour(Colour::Blue)],
            (_, true) => vec![Slot::Colour(Colour::Red), Slot::Colour(Colour::Blue), Slot::Neutral],
        })
    }

    /// Largest number of vertices coverable by `k` disjoint parts, with a witness.
    pub fn max_cover(&self, k: usize, distinct: bool) -> Result<(usize, CyclePartition), SearchError> {
        let slots = Self::slots(k, distinct)?;
        let full: u32 = if self.n == 0 { 0 } else { (1u32 << self.n) - 1 };
        let size = 1usize << self.n;

        // first layer: best single part inside each T
        let first = slots[0];
        let mut best: Vec<u8> = vec![0; size];
        let mut arg: Vec<u32> = vec![0; size];
        for t in 1..size as u32 {
            if self.feasible(first, t) {
                best[t as usize] = t.count_ones() as u8;
                arg[t as usize] = t;
            } else {
                let mut rest = t;
                while rest != 0 {
                    let v = rest.trailing_zeros();
                    rest &= rest - 1;
                    let sub = (t ^ (1 << v)) as usize;
                    if best[sub] > best[t as usize] {
                        best[t as usize] = best[sub];
                        arg[t as usize] = arg[sub];
                    }
                }
            }
        }
        let mut args = vec![arg];
        for (layer, &slot) in slots.iter().enumerate().skip(1) {
            let last = layer + 1 == slots.len();
            let targets: Box<dyn Iterator<Item = u32>> = if last {
                Box::new(std::iter::once(full))
            } else {
                Box::new(0..size as u32)
            };
            let mut next_best = vec![0u8; size];
            let mut next_arg = vec![0u32; size];
            for t in targets {
                // submasks of t in decreasing numeric order, ending with 0
                let mut s = t;
                let mut top = best[t as usize];
                let mut top_arg = 0u32;
                loop {
                    if s != 0 && self.feasible(slot, s) {
                        let value = s.count_ones() as u8 + best[(t ^ s) as usize];
                        if value > top {
                            top = value;
                            top_arg = s;
                        }
                    }
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & t;
                }
                next_best[t as usize] = top;
                next_arg[t as usize] = top_arg;
            }
            best = next_best;
            args.push(next_arg);
        }

        // trace back from the last layer
        let value = best[full as usize] as usize;
        let mut parts = vec![GeneralizedCycle::Empty; slots.len()];
        let mut t = full;
        for layer in (0..slots.len()).rev() {
            let s = args[layer][t as usize];
            parts[layer] = self.part(slots[layer], s);
            t ^= s;
        }
        let covered = parts.iter().map(GeneralizedCycle::len).sum();
        debug_assert_eq!(covered, value);
        Ok((value, CyclePartition { parts, covered }))
    }

    /// A partition into `k` parts covering at least `min_cover` vertices.
    pub fn find(&self, k: usize, distinct: bool, min_cover: usize) -> Result<Option<CyclePartition>, SearchError> {
        let (value, witness) = self.max_cover(k, distinct)?;
        Ok((value >= min_cover).then_some(witness))
    }
}

/// See [`PartitionSearch::find`].
pub fn find_cycle_partition(
    g: &ColouredGraph,
    k: usize,
    distinct_colours: bool,
    min_cover: usize,
    cap: usize,
) -> Result<Option<CyclePartition>, SearchError> {
    PartitionSearch::new(g, cap)?.find(k, distinct_colours, min_cover)
}

/// See [`PartitionSearch::max_cover`].
pub fn max_cycle_cover(
    g: &ColouredGraph,
    k: usize,
    distinct_colours: bool,
    cap: usize,
) -> Result<(usize, CyclePartition), SearchError> {
    PartitionSearch::new(g, cap)?.max_cover(k, distinct_colours)
}
