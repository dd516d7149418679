//! 2-matchings and stable-set contraction.
//!
//! A 2-matching assigns weights in `{0, 1, 2}` to edges so that every vertex
//! carries total weight at most 2; its size is the weight sum. The maximum
//! size equals `|H| - max c_H(S)` where `c_H(S) = |S| - |N_H(S)|` ranges
//! over stable sets `S` (and `S = ∅` gives 0).
//!
//! The polynomial route goes through the bipartite double cover: left copy
//! `u_L`, right copy `u_R`, edges `u_L v_R` and `v_L u_R` for every edge
//! `uv`. A maximum bipartite matching folds back to a maximum 2-matching, and
//! the König cover of the double cover yields a maximum-contraction stable
//! set. [`max_contraction_bruteforce`] is the independent exhaustive route.

mod bipartite;
mod brute;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{ColouredGraph, Subgraph};
use crate::rational::{int, Rational};

pub use brute::{max_contraction_bruteforce, max_contraction_bruteforce_capped, DEFAULT_BRUTE_FORCE_CAP};

use bipartite::{alternating_reach, hopcroft_karp, FREE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("vertex {vertex} is not a vertex of the subgraph")]
    OutOfRange { vertex: usize },
    #[error("set is not stable: {u} and {v} are adjacent")]
    NotStable { u: usize, v: usize },
    #[error("subgraph has {order} vertices, above the exhaustive-search cap {cap}")]
    CapExceeded { order: usize, cap: usize },
}

/// Stable set together with its contraction `|S| - |N(S)|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionWitness {
    pub set: Vec<usize>,
    pub contraction: i64,
}

/// Edge weights of a 2-matching; only positive weights are stored, as
/// `(u, v, w)` with `u < v`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoMatching {
    weights: Vec<(usize, usize, u8)>,
}

/// Support pieces of a canonical 2-matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingPiece {
    /// A weight-2 edge.
    Double(usize, usize),
    /// A cycle of weight-1 edges, listed in cyclic order.
    Cycle(Vec<usize>),
}

impl TwoMatching {
    pub fn from_weights<I: IntoIterator<Item = (usize, usize, u8)>>(weights: I) -> Self {
        let mut w: Vec<_> = weights
            .into_iter()
            .filter(|&(_, _, x)| x > 0)
            .map(|(u, v, x)| (u.min(v), u.max(v), x))
            .collect();
        w.sort_unstable();
        TwoMatching { weights: w }
    }

    pub fn weights(&self) -> &[(usize, usize, u8)] {
        &self.weights
    }

    /// `|w|`, the number of vertices covered.
    pub fn size(&self) -> usize {
        self.weights.iter().map(|&(_, _, w)| w as usize).sum()
    }

    pub fn weight(&self, u: usize, v: usize) -> u8 {
        let key = (u.min(v), u.max(v));
        self.weights
            .binary_search_by(|&(a, b, _)| (a, b).cmp(&key))
            .map_or(0, |i| self.weights[i].2)
    }

    pub fn load(&self, v: usize) -> usize {
        self.weights
            .iter()
            .filter(|&&(a, b, _)| a == v || b == v)
            .map(|&(_, _, w)| w as usize)
            .sum()
    }

    /// Weights in `{1, 2}` on edges of `h`, and load at most 2 everywhere.
    pub fn is_valid_for(&self, h: &Subgraph) -> bool {
        let mut load = vec![0usize; h.n()];
        for &(u, v, w) in &self.weights {
            if !(1..=2).contains(&w) || !h.has_edge(u, v) {
                return false;
            }
            load[u] += w as usize;
            load[v] += w as usize;
        }
        load.iter().all(|&l| l <= 2)
    }

    /// Splits the support into weight-2 edges and weight-1 cycles. Returns
    /// `None` when weight-1 edges do not form disjoint cycles.
    pub fn pieces(&self) -> Option<Vec<MatchingPiece>> {
        let mut out = Vec::new();
        let mut ones: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for &(u, v, w) in &self.weights {
            if w == 2 {
                out.push(MatchingPiece::Double(u, v));
            } else {
                ones.entry(u).or_default().push(v);
                ones.entry(v).or_default().push(u);
            }
        }
        if ones.values().any(|ns| ns.len() != 2) {
            return None;
        }
        let mut seen = std::collections::BTreeSet::new();
        for &start in ones.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut prev = start;
            let mut cur = ones[&start][0];
            while cur != start {
                cycle.push(cur);
                seen.insert(cur);
                let ns = &ones[&cur];
                let next = if ns[0] == prev { ns[1] } else { ns[0] };
                prev = cur;
                cur = next;
            }
            out.push(MatchingPiece::Cycle(cycle));
        }
        Some(out)
    }
}

fn double_cover(h: &Subgraph) -> Vec<Vec<usize>> {
    (0..h.n()).map(|u| h.neighbours(u).to_vec()).collect()
}

/// Maximum 2-matching via the bipartite double cover, canonicalized so that
/// weight-1 edges form vertex-disjoint cycles.
pub fn max_two_matching(h: &Subgraph) -> TwoMatching {
    let adj = double_cover(h);
    let m = hopcroft_karp(&adj, h.n());
    fold_matching(&m.mate_left, &m.mate_right)
}

/// Folds a double-cover matching into a 2-matching. The matched pairs
/// `u_L v_R` define a partial injection `u -> v`; its orbits are cycles
/// (2-cycles become weight-2 edges, longer ones weight-1 cycles) and paths.
/// A path on an odd number of vertices is replaced by weight-2 edges on
/// consecutive pairs, which keeps the size. In a maximum matching every path
/// orbit is odd, since an even one would close an augmenting path.
fn fold_matching(mate_left: &[usize], mate_right: &[usize]) -> TwoMatching {
    let n = mate_left.len();
    let mut weights = Vec::new();
    let mut done = vec![false; n];
    // paths first: they start at vertices whose right copy is free
    for start in 0..n {
        if mate_right[start] != FREE || mate_left[start] == FREE {
            continue;
        }
        let mut path = vec![start];
        let mut cur = start;
        while mate_left[cur] != FREE {
            cur = mate_left[cur];
            path.push(cur);
        }
        for &v in &path {
            done[v] = true;
        }
        for pair in path.chunks(2) {
            if let [a, b] = *pair {
                weights.push((a, b, 2));
            }
        }
    }
    for start in 0..n {
        if done[start] || mate_left[start] == FREE {
            continue;
        }
        let mut cycle = vec![start];
        done[start] = true;
        let mut cur = mate_left[start];
        while cur != start {
            cycle.push(cur);
            done[cur] = true;
            cur = mate_left[cur];
        }
        if cycle.len() == 2 {
            weights.push((cycle[0], cycle[1], 2));
        } else {
            for i in 0..cycle.len() {
                weights.push((cycle[i], cycle[(i + 1) % cycle.len()], 1));
            }
        }
    }
    TwoMatching::from_weights(weights)
}

/// `|H| - |max_two_matching(H)|`.
pub fn max_contraction(h: &Subgraph) -> i64 {
    let adj = double_cover(h);
    h.order() as i64 - hopcroft_karp(&adj, h.n()).size as i64
}

/// Maximum-contraction stable set read off a König cover of the double
/// cover: `S = { u : u_L reachable, u_R not reachable }` from the free left
/// vertices. Polynomial; the contraction always equals [`max_contraction`].
pub fn max_contraction_witness(h: &Subgraph) -> ContractionWitness {
    let adj = double_cover(h);
    let m = hopcroft_karp(&adj, h.n());
    let (left, right) = alternating_reach(&adj, &m);
    let set: Vec<usize> = h.vertices().into_iter().filter(|&u| left[u] && !right[u]).collect();
    let contraction = contraction(h, &set).expect("König projection is stable");
    ContractionWitness { set, contraction }
}

fn check_members(h: &Subgraph, s: &[usize]) -> Result<(), MatchingError> {
    match s.iter().find(|&&v| !h.contains(v)) {
        Some(&vertex) => Err(MatchingError::OutOfRange { vertex }),
        None => Ok(()),
    }
}

fn first_inner_edge(h: &Subgraph, s: &[usize]) -> Option<(usize, usize)> {
    let mut inside = vec![false; h.n()];
    for &v in s {
        inside[v] = true;
    }
    s.iter().find_map(|&u| {
        h.neighbours(u)
            .iter()
            .find(|&&v| inside[v])
            .map(|&v| (u.min(v), u.max(v)))
    })
}

pub fn is_stable(h: &Subgraph, s: &[usize]) -> Result<bool, MatchingError> {
    check_members(h, s)?;
    Ok(first_inner_edge(h, s).is_none())
}

/// `N_H(S)`: neighbours of `S` outside `S`, sorted.
pub fn neighbourhood(h: &Subgraph, s: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; h.n()];
    for &v in s {
        inside[v] = true;
    }
    let mut mark = vec![false; h.n()];
    for &v in s {
        for &u in h.neighbours(v) {
            if !inside[u] {
                mark[u] = true;
            }
        }
    }
    (0..h.n()).filter(|&u| mark[u]).collect()
}

/// `c_H(S) = |S| - |N_H(S)|` for a stable set `S`.
pub fn contraction(h: &Subgraph, s: &[usize]) -> Result<i64, MatchingError> {
    check_members(h, s)?;
    if let Some((u, v)) = first_inner_edge(h, s) {
        return Err(MatchingError::NotStable { u, v });
    }
    let mut distinct = s.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    Ok(distinct.len() as i64 - neighbourhood(h, &distinct).len() as i64)
}

/// A stable set with contraction `> c`, if one exists.
///
/// Skips the search when `max_contraction(h) <= c`. Witnesses come from the
/// exhaustive search (lexicographically smallest maximizer) when `h` has at
/// most `brute_force_cap` vertices, and from the König projection otherwise.
pub fn find_contracting_set(h: &Subgraph, c: i64, brute_force_cap: usize) -> Option<ContractionWitness> {
    if max_contraction(h) <= c {
        return None;
    }
    if h.order() <= brute_force_cap.min(64) {
        max_contraction_bruteforce_capped(h, brute_force_cap).ok()
    } else {
        Some(max_contraction_witness(h))
    }
}

// ---------------------------------------------------------------------------
// Observations on contracting sets in Ore pairs
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ContractingObservations {
    /// Violations of the unconditional items 1–3.
    pub hard: Vec<String>,
    /// Violations of items 4–5, whose bounds hold only up to `Δ(X)`-sized slack.
    pub soft: Vec<String>,
}

/// Checks, for a contracting set `S` of a subgraph `H` of `G`:
/// 1. `|S| >= c_H(S)`;
/// 2. `|N_H(S)| < n/2`;
/// 3. each given `S' ⊆ S` is stable with `c_H(S') >= c_H(S) - |S \ S'|`.
///
/// For each `u ∈ S` keeping all its `G`-edges in `H` and each
/// `v ∈ S \ (N_X(u) ∪ {u})`:
/// 4. `deg_G(v) >= (4/3 + gamma) n - |N_H(S)|`;
/// 5. `deg_G(v) - deg_H(v) > n/3`.
pub fn contracting_observations(
    g: &ColouredGraph,
    x: &ColouredGraph,
    gamma: Rational,
    h: &Subgraph,
    s: &[usize],
    subsets: &[Vec<usize>],
) -> Result<ContractingObservations, MatchingError> {
    let mut out = ContractingObservations::default();
    let c = contraction(h, s)?;
    if c <= 0 {
        return Ok(out);
    }
    let n = g.n() as i64;
    let nh = neighbourhood(h, s).len() as i64;
    if (s.len() as i64) < c {
        out.hard.push(format!("|S| = {} < c = {c}", s.len()));
    }
    if 2 * nh >= n {
        out.hard.push(format!("|N_H(S)| = {nh} >= n/2"));
    }
    for sub in subsets {
        let outside = s.iter().filter(|v| !sub.contains(v)).count() as i64;
        match contraction(h, sub) {
            Ok(cs) if cs >= c - outside => {}
            Ok(cs) => out
                .hard
                .push(format!("subset {sub:?} has contraction {cs} < {c} - {outside}")),
            Err(e) => out.hard.push(format!("subset {sub:?}: {e}")),
        }
    }
    let bound4 = (Rational::new(4, 3) + gamma) * int(n) - int(nh);
    for &u in s {
        if g.degree(u) != h.degree(u) {
            continue;
        }
        for &v in s {
            if v == u || x.has_edge(u, v) {
                continue;
            }
            let dg = g.degree(v) as i64;
            if int(dg) < bound4 {
                out.soft.push(format!("item 4: u={u} v={v} deg_G(v)={dg} < {bound4}"));
            }
            let lost = dg - h.degree(v) as i64;
            if 3 * lost <= n {
                out.soft.push(format!("item 5: u={u} v={v} lost {lost} <= n/3"));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Subgraph {
        Subgraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn complete(n: usize) -> Subgraph {
        graph(
            n,
            &(0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect::<Vec<_>>(),
        )
    }

    fn star3() -> Subgraph {
        graph(4, &[(0, 1), (0, 2), (0, 3)])
    }

    fn c5() -> Subgraph {
        graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    }

    #[test]
    fn stability() {
        let h = graph(3, &[(0, 1), (1, 2)]);
        assert!(is_stable(&h, &[]).unwrap());
        assert!(is_stable(&h, &[1]).unwrap());
        assert!(!is_stable(&h, &[0, 1]).unwrap());
        assert!(is_stable(&h, &[0, 2]).unwrap());
        assert_eq!(is_stable(&h, &[3]), Err(MatchingError::OutOfRange { vertex: 3 }));
        let partial = Subgraph::from_parts(4, [0, 1], [(0, 1)]).unwrap();
        assert_eq!(is_stable(&partial, &[2]), Err(MatchingError::OutOfRange { vertex: 2 }));
    }

    #[test]
    fn contraction_values() {
        let h = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(contraction(&h, &[]), Ok(0));
        assert_eq!(contraction(&h, &[0, 2]), Ok(1));
        assert_eq!(contraction(&star3(), &[1, 2, 3]), Ok(2));
        assert_eq!(contraction(&h, &[0, 1]), Err(MatchingError::NotStable { u: 0, v: 1 }));
    }

    #[test]
    fn brute_force_small_cases() {
        assert_eq!(max_contraction_bruteforce(&complete(4)).unwrap().contraction, 0);
        let w = max_contraction_bruteforce(&star3()).unwrap();
        assert_eq!(
            w,
            ContractionWitness {
                set: vec![1, 2, 3],
                contraction: 2
            }
        );
        assert_eq!(max_contraction_bruteforce(&c5()).unwrap().contraction, 0);
        // ties resolve to the lexicographically smallest set, here ∅
        assert!(max_contraction_bruteforce(&c5()).unwrap().set.is_empty());
        assert!(matches!(
            max_contraction_bruteforce_capped(&complete(6), 5),
            Err(MatchingError::CapExceeded { order: 6, cap: 5 })
        ));
    }

    #[test]
    fn c5_all_subsets_oracle() {
        // every stable set of C_5 has at least as many neighbours as members
        let h = c5();
        for mask in 0u32..32 {
            let s: Vec<usize> = (0..5).filter(|&i| mask >> i & 1 == 1).collect();
            if is_stable(&h, &s).unwrap() {
                assert!(contraction(&h, &s).unwrap() <= 0);
            }
        }
    }

    #[test]
    fn two_matching_small_cases() {
        let k3 = complete(3);
        let w = max_two_matching(&k3);
        assert_eq!(w.size(), 3);
        assert_eq!(w.weights(), &[(0, 1, 1), (0, 2, 1), (1, 2, 1)]);
        assert_eq!(w.pieces().unwrap(), vec![MatchingPiece::Cycle(vec![0, 1, 2])]);

        let w = max_two_matching(&star3());
        assert_eq!(w.size(), 2);
        assert_eq!(w.weights().len(), 1);
        assert_eq!(w.weights()[0].2, 2);
        assert_eq!(4 - max_contraction_bruteforce(&star3()).unwrap().contraction, 2);
        assert_eq!(max_contraction(&star3()), 2);
    }

    #[test]
    fn odd_path_folds_to_double_edges() {
        // P_5 (0-1-2-3-4): maximum 2-matching has size 4
        let h = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let w = max_two_matching(&h);
        assert_eq!(w.size(), 4);
        assert!(w.is_valid_for(&h));
        assert!(w.pieces().is_some());
        assert_eq!(max_contraction(&h), 1);
    }

    #[test]
    fn polynomial_witness_matches() {
        for h in [star3(), c5(), complete(5), graph(6, &[(0, 1), (2, 3)])] {
            let w = max_contraction_witness(&h);
            assert!(is_stable(&h, &w.set).unwrap());
            assert_eq!(w.contraction, max_contraction(&h));
            assert_eq!(w.contraction, max_contraction_bruteforce(&h).unwrap().contraction);
        }
    }

    #[test]
    fn contracting_set_search() {
        assert_eq!(find_contracting_set(&complete(4), 0, 25), None);
        let w = find_contracting_set(&star3(), 1, 25).unwrap();
        assert_eq!(w.set, vec![1, 2, 3]);
        assert_eq!(w.contraction, 2);
        assert_eq!(find_contracting_set(&star3(), 2, 25), None);
        // above the cap the König witness is used
        let w = find_contracting_set(&star3(), 1, 2).unwrap();
        assert_eq!(w.contraction, 2);
    }

    #[test]
    fn empty_subgraph() {
        let h = Subgraph::from_parts(3, [], []).unwrap();
        assert_eq!(max_two_matching(&h).size(), 0);
        assert_eq!(max_contraction(&h), 0);
        assert_eq!(max_contraction_bruteforce(&h).unwrap().contraction, 0);
    }

    #[test]
    fn isolated_vertices_count_as_contraction() {
        let h = graph(3, &[]);
        assert_eq!(max_contraction(&h), 3);
        assert_eq!(max_contraction_witness(&h).set, vec![0, 1, 2]);
    }
}
