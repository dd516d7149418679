//! Hopcroft–Karp maximum matching on a bipartite graph given as left
//! adjacency lists, plus the alternating-reachability set used for König
//! covers.

use std::collections::VecDeque;

pub(crate) const FREE: usize = usize::MAX;

/// Maximum matching; `mate_left[l]` / `mate_right[r]` are partners or [`FREE`].
#[derive(Clone, Debug)]
pub(crate) struct BipartiteMatching {
    pub mate_left: Vec<usize>,
    pub mate_right: Vec<usize>,
    pub size: usize,
}

pub(crate) fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> BipartiteMatching {
    let left = adj.len();
    let mut mate_left = vec![FREE; left];
    let mut mate_right = vec![FREE; right];
    let mut dist = vec![0usize; left];
    let mut size = 0;
    loop {
        // layer the free left vertices and everything reachable by alternating paths
        let mut queue = VecDeque::new();
        for l in 0..left {
            if mate_left[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let m = mate_right[r];
                if m == FREE {
                    found = true;
                } else if dist[m] == usize::MAX {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            break;
        }
        let mut next = vec![0usize; left];
        for l in 0..left {
            if mate_left[l] == FREE && augment(l, adj, &mut mate_left, &mut mate_right, &mut dist, &mut next) {
                size += 1;
            }
        }
    }
    BipartiteMatching {
        mate_left,
        mate_right,
        size,
    }
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    mate_left: &mut [usize],
    mate_right: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    while next[l] < adj[l].len() {
        let r = adj[l][next[l]];
        next[l] += 1;
        let m = mate_right[r];
        let ok =
            m == FREE || (dist[m] == dist[l].wrapping_add(1) && augment(m, adj, mate_left, mate_right, dist, next));
        if ok {
            mate_left[l] = r;
            mate_right[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}

/// Vertices reachable from free left vertices by alternating paths
/// (non-matching edges left→right, matching edges right→left).
/// Returns `(left_reached, right_reached)`.
pub(crate) fn alternating_reach(adj: &[Vec<usize>], m: &BipartiteMatching) -> (Vec<bool>, Vec<bool>) {
    let mut left_seen = vec![false; adj.len()];
    let mut right_seen = vec![false; m.mate_right.len()];
    let mut queue: VecDeque<usize> = (0..adj.len()).filter(|&l| m.mate_left[l] == FREE).collect();
    for &l in &queue {
        left_seen[l] = true;
    }
    while let Some(l) = queue.pop_front() {
        for &r in &adj[l] {
            if right_seen[r] || m.mate_left[l] == r {
                continue;
            }
            right_seen[r] = true;
            let partner = m.mate_right[r];
            if partner != FREE && !left_seen[partner] {
                left_seen[partner] = true;
                queue.push_back(partner);
            }
        }
    }
    (left_seen, right_seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matchings() {
        assert_eq!(hopcroft_karp(&[], 0).size, 0);
        // K_{2,2}
        assert_eq!(hopcroft_karp(&[vec![0, 1], vec![0, 1]], 2).size, 2);
        // star: all left vertices only see right 0
        let m = hopcroft_karp(&[vec![0], vec![0], vec![0]], 1);
        assert_eq!(m.size, 1);
        // needs an augmenting path of length 3
        let m = hopcroft_karp(&[vec![0, 1], vec![0]], 2);
        assert_eq!(m.size, 2);
        assert_eq!(m.mate_left, vec![1, 0]);
    }

    #[test]
    fn konig_cover_has_matching_size() {
        let adj = vec![vec![0], vec![0], vec![0, 1], vec![2]];
        let m = hopcroft_karp(&adj, 3);
        let (lz, rz) = alternating_reach(&adj, &m);
        let cover = lz.iter().filter(|&&z| !z).count() + rz.iter().filter(|&&z| z).count();
        assert_eq!(cover, m.size);
        for (l, rs) in adj.iter().enumerate() {
            for &r in rs {
                assert!(!lz[l] || rz[r], "edge {l}-{r} uncovered");
            }
        }
    }
}
