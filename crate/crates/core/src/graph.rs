//! Immutable simple undirected graphs backed by per-vertex adjacency bitsets.

use crate::bits::VertexSet;
use thiserror::Error;

/// Largest representable order, matching the graph6 three-byte header limit.
pub const MAX_VERTICES: usize = 258_047;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {vertex}: graphs are simple")]
    Loop { vertex: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("{u}-{v} is not an edge")]
    NotAnEdge { u: usize, v: usize },
    #[error("order {n} exceeds the supported maximum {MAX_VERTICES}")]
    TooLarge { n: usize },
}

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Row `i` of the adjacency is the open neighborhood of vertex `i`; the edge
/// count is cached at construction. The empty graph (`n = 0`) is permitted
/// everywhere.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
}

/// Dense re-indexing produced by vertex deletion: old index -> new index for
/// survivors, plus the inverse for lifting results back.
#[derive(Clone, Debug)]
pub struct VertexMap {
    old_to_new: Vec<Option<usize>>,
    new_to_old: Vec<usize>,
}

impl VertexMap {
    pub fn old_to_new(&self, old: usize) -> Option<usize> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn new_to_old(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    /// Lifts a set over the new (dense) indices back to the old universe.
    pub fn lift(&self, s: &VertexSet, old_n: usize) -> VertexSet {
        VertexSet::from_indices(old_n, s.iter().map(|v| self.new_to_old[v]))
    }
}

impl Graph {
    /// Edgeless graph of order `n`.
    pub fn edgeless(n: usize) -> Graph {
        assert!(n <= MAX_VERTICES, "order {n} exceeds {MAX_VERTICES}");
        Graph {
            n,
            m: 0,
            adj: vec![VertexSet::empty(n); n],
        }
    }

    /// Complete graph of order `n`.
    pub fn complete(n: usize) -> Graph {
        assert!(n <= MAX_VERTICES, "order {n} exceeds {MAX_VERTICES}");
        let adj: Vec<VertexSet> = (0..n)
            .map(|v| {
                let mut row = VertexSet::full(n);
                row.remove(v);
                row
            })
            .collect();
        Graph {
            n,
            m: n * n.saturating_sub(1) / 2,
            adj,
        }
    }

    /// Builds a graph from an explicit edge list, rejecting loops, duplicates
    /// and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge { n });
        }
        let mut adj = vec![VertexSet::empty(n); n];
        let mut m = 0;
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::Loop { vertex: u });
            }
            if adj[u].contains(v) {
                return Err(GraphError::DuplicateEdge {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
            adj[u].insert(v);
            adj[v].insert(u);
            m += 1;
        }
        Ok(Graph { n, m, adj })
    }

    /// Builds from adjacency rows that are already known to be symmetric and
    /// loop-free (parser internals, enumeration).
    pub(crate) fn from_adjacency_unchecked(adj: Vec<VertexSet>) -> Graph {
        let n = adj.len();
        let deg_sum: usize = adj.iter().map(|row| row.len()).sum();
        debug_assert!(adj.iter().enumerate().all(|(v, row)| !row.contains(v)));
        debug_assert!((0..n).all(|u| adj[u].iter().all(|v| adj[v].contains(u))));
        Graph {
            n,
            m: deg_sum / 2,
            adj,
        }
    }

    /// Order (number of vertices).
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Size (number of edges).
    #[inline]
    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].contains(v)
    }

    /// Open neighborhood `N(v)`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// Closed neighborhood `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let mut s = self.adj[v].clone();
        s.insert(v);
        Ok(s)
    }

    /// The full vertex set `{0, .., n-1}`.
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges in lexicographic order `(min, max)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Sorted degree sequence (descending).
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degs: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        degs
    }

    /// Deletes the vertices in `s`, re-indexing the survivors densely.
    pub fn delete_vertices(&self, s: &VertexSet) -> (Graph, VertexMap) {
        let keep = s.complement();
        self.induced_subgraph(&keep)
    }

    /// Induced subgraph on `s`, re-indexed densely.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, VertexMap) {
        let new_to_old: Vec<usize> = s.iter().collect();
        let mut old_to_new = vec![None; self.n];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let nn = new_to_old.len();
        let adj: Vec<VertexSet> = new_to_old
            .iter()
            .map(|&old| {
                VertexSet::from_indices(nn, self.adj[old].iter().filter_map(|w| old_to_new[w]))
            })
            .collect();
        (
            Graph::from_adjacency_unchecked(adj),
            VertexMap {
                old_to_new,
                new_to_old,
            },
        )
    }

    /// Number of edges of the subgraph induced by `s`.
    pub fn induced_edge_count(&self, s: &VertexSet) -> usize {
        s.iter()
            .map(|v| self.adj[v].intersection_len(s))
            .sum::<usize>()
            / 2
    }

    /// Complement graph: edge `uv` (u ≠ v) iff `uv` is not an edge here.
    pub fn complement(&self) -> Graph {
        let adj: Vec<VertexSet> = (0..self.n)
            .map(|v| {
                let mut row = self.adj[v].complement();
                row.remove(v);
                row
            })
            .collect();
        Graph {
            n: self.n,
            m: self.n * self.n.saturating_sub(1) / 2 - self.m,
            adj,
        }
    }

    /// Join: disjoint union plus every edge between the two parts. `self`'s
    /// vertices keep indices `0..n1`; `other`'s are shifted up by `n1`.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self
            .n
            .checked_add(other.n)
            .filter(|&n| n <= MAX_VERTICES)
            .ok_or(GraphError::TooLarge {
                n: self.n.saturating_add(other.n),
            })?;
        let mut adj = Vec::with_capacity(n);
        for u in 0..self.n {
            let mut row = VertexSet::from_indices(n, self.adj[u].iter());
            for v in self.n..n {
                row.insert(v);
            }
            adj.push(row);
        }
        for u in 0..other.n {
            let mut row = VertexSet::from_indices(n, other.adj[u].iter().map(|w| w + self.n));
            for v in 0..self.n {
                row.insert(v);
            }
            adj.push(row);
        }
        Ok(Graph {
            n,
            m: self.m + other.m + self.n * other.n,
            adj,
        })
    }

    /// Disjoint union; `other`'s vertices are shifted up by `self.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self
            .n
            .checked_add(other.n)
            .filter(|&n| n <= MAX_VERTICES)
            .ok_or(GraphError::TooLarge {
                n: self.n.saturating_add(other.n),
            })?;
        let mut adj: Vec<VertexSet> = (0..self.n)
            .map(|u| VertexSet::from_indices(n, self.adj[u].iter()))
            .collect();
        adj.extend(
            (0..other.n)
                .map(|u| VertexSet::from_indices(n, other.adj[u].iter().map(|w| w + self.n))),
        );
        Ok(Graph {
            n,
            m: self.m + other.m,
            adj,
        })
    }

    /// Partition of the vertices into connected components. Empty for `n = 0`.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut unseen = VertexSet::full(self.n);
        let mut components = Vec::new();
        while let Some(start) = unseen.first() {
            let mut comp = VertexSet::empty(self.n);
            let mut frontier = VertexSet::singleton(self.n, start);
            while !frontier.is_empty() {
                comp.union_with(&frontier);
                unseen.remove_all(&frontier);
                let mut next = VertexSet::empty(self.n);
                for v in frontier.iter() {
                    next.union_with(&self.adj[v]);
                }
                next.intersect_with(&unseen);
                frontier = next;
            }
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.n >= 1 && self.connected_components().len() == 1
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges=", self.n, self.m)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}
