use super::{ColouredGraph, ComponentId, ComponentMap, GraphError, MonochromaticComponent};

/// An uncoloured graph on a subset of a parent's vertices.
///
/// Vertex ids are the parent's ids; vertices outside the subgraph simply
/// have no neighbours and are not members. Built either from a whole graph,
/// from an explicit edge list, or as the union of monochromatic components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    n: usize,
    members: Vec<bool>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    kept: Vec<ComponentId>,
}

impl Subgraph {
    /// The whole graph with colours forgotten.
    pub fn from_graph(g: &ColouredGraph) -> Self {
        Subgraph {
            n: g.n(),
            members: vec![true; g.n()],
            adj: (0..g.n()).map(|v| g.neighbours(v).to_vec()).collect(),
            edge_count: g.edge_count(),
            kept: Vec::new(),
        }
    }

    /// Graph on all of `0..n` with the given edges. Duplicates are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_parts(n, (0..n).collect::<Vec<_>>(), edges)
    }

    /// Graph on the vertex subset `vertices` of `0..n`.
    pub fn from_parts<V, I>(n: usize, vertices: V, edges: I) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = usize>,
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut members = vec![false; n];
        for v in vertices {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            members[v] = true;
        }
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n || !members[w] {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Subgraph {
            n,
            members,
            adj,
            edge_count: edge_count / 2,
            kept: Vec::new(),
        })
    }

    /// Vertex-id space of the parent.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of member vertices, `|H|`.
    pub fn order(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.members[v]
    }

    pub fn membership(&self) -> &[bool] {
        &self.members
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.members[v]).collect()
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Components this subgraph was assembled from (empty for other constructions).
    pub fn kept_components(&self) -> &[ComponentId] {
        &self.kept
    }

    /// Copy with the extra edge `uv` (both endpoints must be members).
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Subgraph, GraphError> {
        let vertices = self.vertices();
        let mut s = Subgraph::from_parts(self.n, vertices, self.edges().chain([(u, v)]))?;
        s.kept = self.kept.clone();
        Ok(s)
    }
}

/// Union of monochromatic components: the vertex set is the union of their
/// vertex sets, and an edge is kept iff its colour matches some kept
/// component containing both endpoints.
pub fn union_subgraph(g: &ColouredGraph, comps: &[MonochromaticComponent]) -> Result<Subgraph, GraphError> {
    let map = ComponentMap::new(g);
    union_subgraph_with(g, &map, comps)
}

pub(crate) fn union_subgraph_with(
    g: &ColouredGraph,
    map: &ComponentMap,
    comps: &[MonochromaticComponent],
) -> Result<Subgraph, GraphError> {
    let n = g.n();
    let mut members = vec![false; n];
    // keep[colour][component id]
    let mut keep = [
        vec![false; map.components(crate::Colour::Red).len()],
        vec![false; map.components(crate::Colour::Blue).len()],
    ];
    let mut kept = Vec::new();
    for comp in comps {
        if !map.owns(comp) {
            return Err(GraphError::ForeignComponent(comp.key()));
        }
        if !keep[comp.colour.index()][comp.id] {
            keep[comp.colour.index()][comp.id] = true;
            kept.push(comp.key());
        }
        for &v in &comp.vertices {
            members[v] = true;
        }
    }
    let mut adj = vec![Vec::new(); n];
    let mut edge_count = 0;
    for (u, v, c) in g.edges() {
        // a coloured edge lies inside a single component of its colour
        if keep[c.index()][map.id_of(u, c)] {
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(Subgraph {
        n,
        members,
        adj,
        edge_count,
        kept,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::monochromatic_components;
    use crate::Colour;

    fn sample() -> ColouredGraph {
        // red path 0-1-2, blue edges 2-3 and 0-3, red 4-5
        ColouredGraph::from_edges(
            6,
            [
                (0, 1, Colour::Red),
                (1, 2, Colour::Red),
                (2, 3, Colour::Blue),
                (0, 3, Colour::Blue),
                (4, 5, Colour::Red),
            ],
        )
        .unwrap()
    }

    #[test]
    fn all_components_give_back_the_graph() {
        let g = sample();
        let map = ComponentMap::new(&g);
        let all: Vec<_> = map.all().cloned().collect();
        let h = union_subgraph(&g, &all).unwrap();
        assert_eq!(h.order(), 6);
        assert_eq!(h.edge_count(), g.edge_count());
        for (u, v, _) in g.edges() {
            assert!(h.has_edge(u, v));
        }
    }

    #[test]
    fn single_red_component() {
        let g = sample();
        let red = monochromatic_components(&g, Colour::Red);
        let h = union_subgraph(&g, &red[..1]).unwrap();
        assert_eq!(h.vertices(), vec![0, 1, 2]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        // blue edge 0-3 is not included even though 0 is a member
        assert!(!h.has_edge(0, 3));
    }

    #[test]
    fn foreign_component_rejected() {
        let g = sample();
        let fake = MonochromaticComponent {
            colour: Colour::Red,
            id: 0,
            vertices: vec![0, 5],
        };
        assert!(matches!(
            union_subgraph(&g, &[fake]),
            Err(GraphError::ForeignComponent(_))
        ));
    }

    #[test]
    fn from_edges_validates() {
        assert!(Subgraph::from_edges(3, [(0, 3)]).is_err());
        assert!(Subgraph::from_edges(3, [(1, 1)]).is_err());
        let h = Subgraph::from_edges(3, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.order(), 3);
    }
}
