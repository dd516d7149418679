//! Exhaustive maximum contraction over stable sets, by branch and bound on
//! vertex inclusion. Exponential; used as the oracle for the polynomial
//! double-cover route.

use crate::graph::Subgraph;

use super::{ContractionWitness, MatchingError};

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 25;

/// Maximum `|S| - |N(S)|` over stable `S`, with the lexicographically
/// smallest maximizer (as a sorted vertex list). Uses the default cap.
pub fn max_contraction_bruteforce(h: &Subgraph) -> Result<ContractionWitness, MatchingError> {
    max_contraction_bruteforce_capped(h, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn max_contraction_bruteforce_capped(h: &Subgraph, cap: usize) -> Result<ContractionWitness, MatchingError> {
    let verts = h.vertices();
    let k = verts.len();
    if k > cap.min(64) {
        return Err(MatchingError::CapExceeded {
            order: k,
            cap: cap.min(64),
        });
    }
    let mut local = vec![usize::MAX; h.n()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let nbr: Vec<u64> = verts
        .iter()
        .map(|&v| h.neighbours(v).iter().fold(0u64, |m, &u| m | (1 << local[u])))
        .collect();
    let mut search = Search {
        nbr: &nbr,
        k,
        best: 0,
        best_set: 0,
    };
    search.go(0, 0, 0);
    let set = (0..k)
        .filter(|&i| search.best_set >> i & 1 == 1)
        .map(|i| verts[i])
        .collect();
    Ok(ContractionWitness {
        set,
        contraction: search.best,
    })
}

struct Search<'a> {
    nbr: &'a [u64],
    k: usize,
    best: i64,
    best_set: u64,
}

impl Search<'_> {
    fn go(&mut self, i: usize, set: u64, neigh: u64) {
        let value = set.count_ones() as i64 - neigh.count_ones() as i64;
        if value > self.best || (value == self.best && lex_less(set, self.best_set)) {
            self.best = value;
            self.best_set = set;
        }
        if i == self.k {
            return;
        }
        let rest = if i >= 64 { 0 } else { !0u64 << i } & low_mask(self.k);
        let available = rest & !neigh;
        if value + (available.count_ones() as i64) < self.best {
            return;
        }
        if neigh >> i & 1 == 0 {
            self.go(i + 1, set | 1 << i, neigh | self.nbr[i]);
        }
        self.go(i + 1, set, neigh);
    }
}

fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        !0
    } else {
        (1u64 << k) - 1
    }
}

/// Lexicographic order on sorted element lists, for sets given as masks.
fn lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    if d == 0 {
        return false;
    }
    let low = d.trailing_zeros();
    let above = if low >= 63 { 0 } else { !0u64 << (low + 1) };
    if a >> low & 1 == 1 {
        // a continues with `low`; b either ends (b is a prefix) or continues higher
        b & above != 0
    } else {
        a & above == 0
    }
}
