use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{Colour, ColouredGraph, GraphError};

/// A connected component of one colour class.
///
/// Vertices without an edge of the colour form singleton components, so the
/// components of each colour partition the whole vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonochromaticComponent {
    pub colour: Colour,
    /// Position within the colour's component list (size desc, then min vertex).
    pub id: usize,
    /// Sorted vertex list.
    pub vertices: Vec<usize>,
}

impl MonochromaticComponent {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn key(&self) -> ComponentId {
        ComponentId {
            colour: self.colour,
            id: self.id,
        }
    }
}

/// Short handle for a component, written `r0`, `b3`, ...
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentId {
    pub colour: Colour,
    pub id: usize,
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.colour.letter(), self.id)
    }
}

impl Serialize for ComponentId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for ComponentId {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::BadComponentId(s.to_string());
        let s = s.trim();
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let colour = match head {
            "r" | "R" => Colour::Red,
            "b" | "B" => Colour::Blue,
            _ => return Err(bad()),
        };
        let id = tail.parse().map_err(|_| bad())?;
        Ok(ComponentId { colour, id })
    }
}

/// Components of one colour, sorted by decreasing size and then by smallest vertex.
pub fn monochromatic_components(g: &ColouredGraph, colour: Colour) -> Vec<MonochromaticComponent> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut vertices = Vec::new();
        while let Some(v) = queue.pop_front() {
            vertices.push(v);
            for &u in g.colour_neighbours(v, colour) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        vertices.sort_unstable();
        comps.push(vertices);
    }
    // discovery order is by smallest vertex already; a stable sort keeps it for ties
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    comps
        .into_iter()
        .enumerate()
        .map(|(id, vertices)| MonochromaticComponent { colour, id, vertices })
        .collect()
}

/// Both colours' components plus a vertex → component lookup.
#[derive(Clone, Debug)]
pub struct ComponentMap {
    n: usize,
    comps: [Vec<MonochromaticComponent>; 2],
    of_vertex: [Vec<usize>; 2],
}

impl ComponentMap {
    pub fn new(g: &ColouredGraph) -> Self {
        let comps = [
            monochromatic_components(g, Colour::Red),
            monochromatic_components(g, Colour::Blue),
        ];
        let mut of_vertex = [vec![0; g.n()], vec![0; g.n()]];
        for (ci, list) in comps.iter().enumerate() {
            for comp in list {
                for &v in &comp.vertices {
                    of_vertex[ci][v] = comp.id;
                }
            }
        }
        ComponentMap {
            n: g.n(),
            comps,
            of_vertex,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self, colour: Colour) -> &[MonochromaticComponent] {
        &self.comps[colour.index()]
    }

    /// All components, red first.
    pub fn all(&self) -> impl Iterator<Item = &MonochromaticComponent> {
        self.comps[0].iter().chain(self.comps[1].iter())
    }

    pub fn get(&self, key: ComponentId) -> Option<&MonochromaticComponent> {
        self.comps[key.colour.index()].get(key.id)
    }

    pub fn id_of(&self, v: usize, colour: Colour) -> usize {
        self.of_vertex[colour.index()][v]
    }

    pub fn component_of(&self, v: usize, colour: Colour) -> &MonochromaticComponent {
        &self.comps[colour.index()][self.id_of(v, colour)]
    }

    pub fn key_of(&self, v: usize, colour: Colour) -> ComponentId {
        ComponentId {
            colour,
            id: self.id_of(v, colour),
        }
    }

    /// True when `comp` is exactly one of this graph's components.
    pub fn owns(&self, comp: &MonochromaticComponent) -> bool {
        self.get(comp.key()).is_some_and(|c| c == comp)
    }

    pub fn resolve(&self, key: ComponentId) -> Result<&MonochromaticComponent, GraphError> {
        self.get(key).ok_or(GraphError::ForeignComponent(key))
    }

    /// Size of the union of the given components' vertex sets.
    pub fn union_size<'a, I>(&self, comps: I) -> usize
    where
        I: IntoIterator<Item = &'a MonochromaticComponent>,
    {
        let mut mark = vec![false; self.n];
        let mut count = 0;
        for c in comps {
            for &v in &c.vertices {
                if !mark[v] {
                    mark[v] = true;
                    count += 1;
                }
            }
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_red_edge() {
        let g = ColouredGraph::complete(2, Colour::Red);
        let red = monochromatic_components(&g, Colour::Red);
        assert_eq!(red.len(), 1);
        assert_eq!(red[0].vertices, vec![0, 1]);
        let blue = monochromatic_components(&g, Colour::Blue);
        assert_eq!(
            blue.iter().map(|c| c.vertices.clone()).collect::<Vec<_>>(),
            vec![vec![0], vec![1]]
        );
    }

    #[test]
    fn ordering_is_size_then_min_vertex() {
        // red: {0}, {1,4}, {2,3,5}
        let g = ColouredGraph::from_edges(
            6,
            [
                (1, 4, Colour::Red),
                (2, 3, Colour::Red),
                (3, 5, Colour::Red),
                (0, 1, Colour::Blue),
            ],
        )
        .unwrap();
        let red: Vec<_> = monochromatic_components(&g, Colour::Red)
            .into_iter()
            .map(|c| c.vertices)
            .collect();
        assert_eq!(red, vec![vec![2, 3, 5], vec![1, 4], vec![0]]);
        let map = ComponentMap::new(&g);
        assert_eq!(map.id_of(5, Colour::Red), 0);
        assert_eq!(map.component_of(4, Colour::Red).vertices, vec![1, 4]);
        assert_eq!(map.component_of(1, Colour::Blue).vertices, vec![0, 1]);
    }

    #[test]
    fn component_id_round_trip() {
        let id: ComponentId = "b12".parse().unwrap();
        assert_eq!(
            id,
            ComponentId {
                colour: Colour::Blue,
                id: 12
            }
        );
        assert_eq!(id.to_string(), "b12");
        assert!("x1".parse::<ComponentId>().is_err());
        assert!("r".parse::<ComponentId>().is_err());
        assert!("".parse::<ComponentId>().is_err());
    }
}
