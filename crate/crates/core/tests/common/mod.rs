//! Slow, obviously-correct reference implementations used by the
//! integration tests. Nothing here calls into the library's algorithms.
#![allow(dead_code)]

use std::collections::VecDeque;

use cyclecover::harness::{generate, GeneratorKind, GeneratorSpec};
use cyclecover::partition::{CyclePartition, GeneralizedCycle};
use cyclecover::{Colour, ColouredGraph, Rational};

pub fn q(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

pub fn gnp(n: usize, p: Rational, qr: Rational, seed: u64) -> ColouredGraph {
    generate(&GeneratorSpec {
        kind: GeneratorKind::Gnp { n, p, q: qr },
        seed,
    })
    .unwrap()
}

/// Adjacency bitmasks over all edges, ignoring colour.
pub fn adjacency(g: &ColouredGraph) -> Vec<u64> {
    let n = g.n();
    (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| v != u && g.has_edge(u, v))
                .fold(0u64, |m, v| m | 1 << v)
        })
        .collect()
}

pub fn colour_adjacency(g: &ColouredGraph, c: Colour) -> Vec<u64> {
    let n = g.n();
    (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| g.colour(u, v) == Some(c))
                .fold(0u64, |m, v| m | 1 << v)
        })
        .collect()
}

/// max over stable S within `members` of |S| - |N(S) ∩ members|, by full
/// subset enumeration.
pub fn naive_max_contraction(adj: &[u64], members: u64) -> i64 {
    let mut best = 0i64;
    let mut s = members;
    loop {
        let stable = bits(s).all(|v| adj[v] & s == 0);
        if stable {
            let nb = bits(s).fold(0u64, |m, v| m | adj[v]) & members & !s;
            best = best.max(s.count_ones() as i64 - nb.count_ones() as i64);
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & members;
    }
    best
}

pub fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Components of one colour by breadth-first search, as sorted vertex
/// lists, ordered by size descending then smallest vertex.
pub fn bfs_components(g: &ColouredGraph, c: Colour) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for (v, seen_v) in seen.iter_mut().enumerate() {
                if !*seen_v && g.colour(u, v) == Some(c) {
                    *seen_v = true;
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    out
}

pub fn recount_degrees(g: &ColouredGraph) -> Vec<usize> {
    let n = g.n();
    (0..n)
        .map(|u| (0..n).filter(|&v| v != u && g.has_edge(u, v)).count())
        .collect()
}

/// Smallest degree sum over non-adjacent pairs, `None` for complete graphs.
pub fn min_nonadjacent_sum(g: &ColouredGraph) -> Option<usize> {
    let d = recount_degrees(g);
    let n = g.n();
    let mut best = None;
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                let s = d[u] + d[v];
                best = Some(best.map_or(s, |b: usize| b.min(s)));
            }
        }
    }
    best
}

/// Indices j (1-based) with 1 <= j < y n where d_j <= j + x n + offset.
pub fn naive_posa_failures(g: &ColouredGraph, x: Rational, y: Rational, offset: i64) -> Vec<usize> {
    let mut d = recount_degrees(g);
    d.sort_unstable();
    let n = g.n() as i64;
    let nq = Rational::from_integer(n);
    (1..=g.n())
        .filter(|&j| Rational::from_integer(j as i64) < y * nq)
        .filter(|&j| Rational::from_integer(d[j - 1] as i64) <= Rational::from_integer(j as i64 + offset) + x * nq)
        .collect()
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Whether the vertex set `set` is a generalized cycle in colour `c`, by
/// trying every cyclic order.
pub fn naive_spans(cadj: &[u64], set: u64) -> bool {
    let vs: Vec<usize> = bits(set).collect();
    match vs.len() {
        0 | 1 => true,
        2 => cadj[vs[0]] >> vs[1] & 1 == 1,
        _ => {
            let first = vs[0];
            let mut rest = vs[1..].to_vec();
            loop {
                let mut ok = cadj[first] >> rest[0] & 1 == 1 && cadj[*rest.last().unwrap()] >> first & 1 == 1;
                for w in rest.windows(2) {
                    ok &= cadj[w[0]] >> w[1] & 1 == 1;
                }
                if ok {
                    return true;
                }
                if !next_permutation(&mut rest) {
                    return false;
                }
            }
        }
    }
}

/// Largest number of vertices covered by at most `k` disjoint generalized
/// cycles, by labelling every vertex with a part or "uncovered". With
/// `distinct`, no two parts of two or more vertices share a colour.
pub fn naive_max_cover(g: &ColouredGraph, k: usize, distinct: bool) -> usize {
    let n = g.n();
    let red = colour_adjacency(g, Colour::Red);
    let blue = colour_adjacency(g, Colour::Blue);
    let mut spans = vec![0u8; 1 << n];
    for (m, s) in spans.iter_mut().enumerate() {
        *s = naive_spans(&red, m as u64) as u8 | (naive_spans(&blue, m as u64) as u8) << 1;
    }
    let mut label = vec![0usize; n];
    let mut best = 0;
    loop {
        let mut parts = vec![0u64; k];
        for (v, &l) in label.iter().enumerate() {
            if l < k {
                parts[l] |= 1 << v;
            }
        }
        let covered: u32 = parts.iter().map(|p| p.count_ones()).sum();
        if covered as usize > best && parts_ok(&parts, &spans, distinct) {
            best = covered as usize;
        }
        // odometer over labels 0..=k
        let mut i = 0;
        while i < n {
            label[i] += 1;
            if label[i] <= k {
                break;
            }
            label[i] = 0;
            i += 1;
        }
        if i == n {
            return best;
        }
    }
}

fn parts_ok(parts: &[u64], spans: &[u8], distinct: bool) -> bool {
    let big: Vec<u8> = parts
        .iter()
        .filter(|p| p.count_ones() >= 2)
        .map(|&p| spans[p as usize])
        .collect();
    if big.contains(&0) {
        return false;
    }
    if !distinct {
        return true;
    }
    match big.len() {
        0 | 1 => true,
        2 => (big[0] & 1 != 0 && big[1] & 2 != 0) || (big[0] & 2 != 0 && big[1] & 1 != 0),
        _ => false,
    }
}

/// Independent validity check of a partition returned by the search.
pub fn partition_problems(g: &ColouredGraph, p: &CyclePartition, k: usize, distinct: bool) -> Option<String> {
    if p.parts.len() > k {
        return Some(format!("{} parts for k = {k}", p.parts.len()));
    }
    let mut used = vec![false; g.n()];
    let mut covered = 0;
    let mut colours = Vec::new();
    for part in &p.parts {
        let vs: Vec<usize> = match part {
            GeneralizedCycle::Empty => vec![],
            GeneralizedCycle::Vertex { v } => vec![*v],
            GeneralizedCycle::Edge { u, v, colour } => {
                if g.colour(*u, *v) != Some(*colour) {
                    return Some(format!("edge {u}-{v} not {colour:?}"));
                }
                colours.push(*colour);
                vec![*u, *v]
            }
            GeneralizedCycle::Cycle { vertices, colour } => {
                if vertices.len() < 3 {
                    return Some("short cycle".into());
                }
                for i in 0..vertices.len() {
                    let (a, b) = (vertices[i], vertices[(i + 1) % vertices.len()]);
                    if g.colour(a, b) != Some(*colour) {
                        return Some(format!("cycle step {a}-{b} not {colour:?}"));
                    }
                }
                colours.push(*colour);
                vertices.clone()
            }
        };
        for v in vs {
            if v >= g.n() || used[v] {
                return Some(format!("vertex {v} reused or out of range"));
            }
            used[v] = true;
            covered += 1;
        }
    }
    if covered != p.covered {
        return Some(format!("claims {} covered, counted {covered}", p.covered));
    }
    if distinct {
        let reds = colours.iter().filter(|&&c| c == Colour::Red).count();
        let blues = colours.len() - reds;
        if reds > 1 || blues > 1 {
            return Some("colours repeat".into());
        }
    }
    None
}
