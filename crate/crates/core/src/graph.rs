//! Simple undirected graphs on a dense vertex range `0..n`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    EmptyVertexSet,
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("repeated edge {{{0}, {1}}}")]
    RepeatedEdge(usize, usize),
    #[error("permutation of length {len} does not match order {order}")]
    BadPermutation { len: usize, order: usize },
}

/// A simple undirected graph.
///
/// Both the edge set (as ordered pairs `u < v`) and the sorted neighbor lists
/// are stored. Values are immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops and repeated edges.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if order == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(GraphError::RepeatedEdge(e.0, e.1));
            }
        }
        Ok(Self::from_edge_set(order, set))
    }

    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Self, GraphError> {
        Self::from_edges(order, std::iter::empty())
    }

    pub(crate) fn from_edge_set(order: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); order];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { edges, adj }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn is_regular(&self, r: usize) -> bool {
        self.adj.iter().all(|l| l.len() == r)
    }

    /// The common degree, if the graph is regular.
    pub fn valency(&self) -> Option<usize> {
        let r = self.degree(0);
        self.is_regular(r).then_some(r)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Returns the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GraphError> {
        let n = self.order();
        if perm.len() != n {
            return Err(GraphError::BadPermutation {
                len: perm.len(),
                order: n,
            });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::BadPermutation {
                    len: perm.len(),
                    order: n,
                });
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        Ok(Self::from_edge_set(n, edges))
    }

    /// Number of triangles.
    pub fn triangle_count(&self) -> usize {
        self.edges
            .iter()
            .map(|&(u, v)| self.adj[u].iter().filter(|&&w| w > v && self.has_edge(v, w)).count())
            .sum()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order())
            .field("edges", &self.edges)
            .finish()
    }
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are simple")
}

/// Complete graph on `n >= 1` vertices.
pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("complete graph edges are simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> Graph {
        // K_{2,2,2}: vertex i is non-adjacent only to i ^ 1.
        let edges = (0..6).flat_map(|u| (u + 1..6).filter(move |&v| v != (u ^ 1)).map(move |v| (u, v)));
        Graph::from_edges(6, edges).unwrap()
    }

    #[test]
    fn rejects_loops_and_repeats() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::RepeatedEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, order: 3 })
        ));
        assert_eq!(Graph::empty(0), Err(GraphError::EmptyVertexSet));
    }

    #[test]
    fn neighbor_lists_sorted() {
        let g = Graph::from_edges(5, [(4, 0), (0, 2), (3, 0), (0, 1)]).unwrap();
        assert_eq!(g.neighbors(0), &[1, 2, 3, 4]);
        assert_eq!(g.neighbors(4), &[0]);
    }

    #[test]
    fn regularity() {
        let oct = octahedron();
        assert!(oct.is_regular(4));
        assert_eq!(oct.valency(), Some(4));
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!path.is_regular(2));
        assert_eq!(path.valency(), None);
        assert!(Graph::empty(4).unwrap().is_regular(0));
    }

    #[test]
    fn connectivity() {
        assert!(octahedron().is_connected());
        let triangles = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!triangles.is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
    }

    #[test]
    fn degree_sum_is_twice_size() {
        for g in [octahedron(), cycle(7), complete(6)] {
            let total: usize = (0..g.order()).map(|v| g.degree(v)).sum();
            assert_eq!(total, 2 * g.size());
        }
    }

    #[test]
    fn relabel_validates_permutation() {
        let g = cycle(4);
        assert!(g.relabel(&[0, 1, 1, 2]).is_err());
        assert!(g.relabel(&[0, 1]).is_err());
        let h = g.relabel(&[1, 2, 3, 0]).unwrap();
        assert!(h.is_regular(2));
        assert!(h.has_edge(0, 3));
    }

    #[test]
    fn triangles() {
        assert_eq!(complete(4).triangle_count(), 4);
        assert_eq!(cycle(4).triangle_count(), 0);
        assert_eq!(octahedron().triangle_count(), 8);
    }
}
