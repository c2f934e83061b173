//! Finite trees with a fixed orientation on every edge, plus the
//! incidence, leaf, and convex-hull queries the decomposition engine
//! needs.
//!
//! Orientation is part of the input data: each edge stores its endpoints
//! as an ordered pair (x_e, y_e) and the coboundary signs are derived
//! from that order, never recomputed.

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree has no vertices")]
    Empty,
    #[error("graph is disconnected: vertex {0} is unreachable from vertex 0")]
    Disconnected(VertexId),
    #[error("graph has a cycle: {edges} edges on {vertices} vertices")]
    HasCycle { vertices: usize, edges: usize },
    #[error("edge {edge} references missing vertex {vertex}")]
    DanglingEndpoint { edge: EdgeId, vertex: VertexId },
    #[error("edge {0} is a self-loop")]
    SelfLoop(EdgeId),
    #[error("edges {0} and {1} join the same pair of vertices")]
    DuplicateEdge(EdgeId, EdgeId),
    #[error("edge ids are not dense: expected exactly 0..{expected}, saw id {got}")]
    BadEdgeId { expected: usize, got: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("vertex {vertex} is not an endpoint of edge {edge}")]
    NotIncident { vertex: VertexId, edge: EdgeId },
    #[error("convex hull of an empty vertex set")]
    EmptySet,
}

/// A validated finite tree. Vertices are `0..n_vertices`; edge ids are
/// `0..edges.len()` and each edge stores its ordered endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    n_vertices: usize,
    endpoints: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<EdgeId>>,
}

impl Tree {
    /// Validates connectivity, acyclicity, dense ids, and endpoint sanity.
    /// Edge triples are (id, x_e, y_e) in any order; ids must cover
    /// exactly 0..len.
    pub fn new(
        n_vertices: usize,
        edge_triples: Vec<(EdgeId, VertexId, VertexId)>,
    ) -> Result<Tree, TreeError> {
        if n_vertices == 0 {
            return Err(TreeError::Empty);
        }
        let m = edge_triples.len();
        let mut endpoints = vec![None; m];
        for (id, x, y) in edge_triples {
            if id >= m || endpoints[id].is_some() {
                return Err(TreeError::BadEdgeId { expected: m, got: id });
            }
            for v in [x, y] {
                if v >= n_vertices {
                    return Err(TreeError::DanglingEndpoint { edge: id, vertex: v });
                }
            }
            if x == y {
                return Err(TreeError::SelfLoop(id));
            }
            endpoints[id] = Some((x, y));
        }
        let endpoints: Vec<(VertexId, VertexId)> =
            endpoints.into_iter().map(|e| e.unwrap()).collect();

        let mut seen = std::collections::BTreeMap::new();
        for (id, &(x, y)) in endpoints.iter().enumerate() {
            let key = (x.min(y), x.max(y));
            if let Some(&first) = seen.get(&key) {
                return Err(TreeError::DuplicateEdge(first, id));
            }
            seen.insert(key, id);
        }

        let mut adjacency = vec![Vec::new(); n_vertices];
        for (id, &(x, y)) in endpoints.iter().enumerate() {
            adjacency[x].push(id);
            adjacency[y].push(id);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        // BFS from vertex 0; a connected graph on n vertices with n-1
        // edges and no duplicates is a tree.
        let mut visited = vec![false; n_vertices];
        let mut queue = std::collections::VecDeque::from([0usize]);
        visited[0] = true;
        while let Some(v) = queue.pop_front() {
            for &e in &adjacency[v] {
                let (x, y) = endpoints[e];
                let w = if x == v { y } else { x };
                if !visited[w] {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if let Some(v) = visited.iter().position(|&b| !b) {
            return Err(TreeError::Disconnected(v));
        }
        if m != n_vertices - 1 {
            return Err(TreeError::HasCycle {
                vertices: n_vertices,
                edges: m,
            });
        }

        Ok(Tree {
            n_vertices,
            endpoints,
            adjacency,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.endpoints.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.n_vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        0..self.endpoints.len()
    }

    /// Ordered endpoints (x_e, y_e) of `e`.
    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId), TreeError> {
        self.endpoints
            .get(e)
            .copied()
            .ok_or(TreeError::UnknownEdge(e))
    }

    /// +1 if v = x_e, −1 if v = y_e.
    pub fn or_sign(&self, v: VertexId, e: EdgeId) -> Result<i8, TreeError> {
        let (x, y) = self.endpoints(e)?;
        if v == x {
            Ok(1)
        } else if v == y {
            Ok(-1)
        } else {
            Err(TreeError::NotIncident { vertex: v, edge: e })
        }
    }

    /// Sorted list of edges incident to `v`.
    pub fn incident_edges(&self, v: VertexId) -> Result<&[EdgeId], TreeError> {
        self.adjacency
            .get(v)
            .map(|l| l.as_slice())
            .ok_or(TreeError::UnknownVertex(v))
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, TreeError> {
        Ok(self.incident_edges(v)?.len())
    }

    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> Result<VertexId, TreeError> {
        let (x, y) = self.endpoints(e)?;
        if v == x {
            Ok(y)
        } else if v == y {
            Ok(x)
        } else {
            Err(TreeError::NotIncident { vertex: v, edge: e })
        }
    }

    /// Vertices with at most one incident edge.
    pub fn leaves(&self) -> Vec<VertexId> {
        self.vertices()
            .filter(|&v| self.adjacency[v].len() <= 1)
            .collect()
    }

    /// Smallest connected subgraph containing `w`: the union of the
    /// tree-paths from one element of `w` to all others. Every leaf of
    /// the hull lies in `w`.
    pub fn convex_hull(&self, w: &[VertexId]) -> Result<Subtree, TreeError> {
        if w.is_empty() {
            return Err(TreeError::EmptySet);
        }
        for &v in w {
            if v >= self.n_vertices {
                return Err(TreeError::UnknownVertex(v));
            }
        }
        let root = w[0];
        // parent pointers from a BFS rooted at the first element
        let mut parent_edge: Vec<Option<EdgeId>> = vec![None; self.n_vertices];
        let mut visited = vec![false; self.n_vertices];
        visited[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adjacency[v] {
                let u = self.other_endpoint(e, v).unwrap();
                if !visited[u] {
                    visited[u] = true;
                    parent_edge[u] = Some(e);
                    queue.push_back(u);
                }
            }
        }
        let mut in_hull = vec![false; self.n_vertices];
        let mut edge_in_hull = vec![false; self.endpoints.len()];
        in_hull[root] = true;
        for &target in w {
            let mut v = target;
            while !in_hull[v] {
                in_hull[v] = true;
                let e = parent_edge[v].expect("tree is connected");
                edge_in_hull[e] = true;
                v = self.other_endpoint(e, v).unwrap();
            }
        }
        Ok(Subtree {
            vertices: (0..self.n_vertices).filter(|&v| in_hull[v]).collect(),
            edges: (0..self.endpoints.len())
                .filter(|&e| edge_in_hull[e])
                .collect(),
        })
    }
}

/// A connected subgraph of a parent tree, stored as sorted vertex and
/// edge id lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subtree {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Subtree {
    /// Leaves of the subtree: members with at most one incident subtree
    /// edge.
    pub fn leaves(&self, tree: &Tree) -> Vec<VertexId> {
        self.vertices
            .iter()
            .copied()
            .filter(|&v| {
                let deg = tree.adjacency[v]
                    .iter()
                    .filter(|e| self.edges.binary_search(e).is_ok())
                    .count();
                deg <= 1
            })
            .collect()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Tree {
        Tree::new(3, vec![(0, 0, 1), (1, 1, 2)]).unwrap()
    }

    fn star3() -> Tree {
        // center 0, leaves 1..3
        Tree::new(4, vec![(0, 0, 1), (1, 0, 2), (2, 0, 3)]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Tree::new(2, vec![(0, 0, 1)]).is_ok());
        assert_eq!(Tree::new(2, vec![]), Err(TreeError::Disconnected(1)));
        assert_eq!(
            Tree::new(3, vec![(0, 0, 1), (1, 1, 2), (2, 2, 0)]),
            Err(TreeError::HasCycle {
                vertices: 3,
                edges: 3
            })
        );
        assert_eq!(
            Tree::new(2, vec![(0, 0, 3)]),
            Err(TreeError::DanglingEndpoint { edge: 0, vertex: 3 })
        );
        assert_eq!(
            Tree::new(3, vec![(0, 0, 1), (1, 1, 0)]),
            Err(TreeError::DuplicateEdge(0, 1))
        );
        assert_eq!(Tree::new(2, vec![(0, 1, 1)]), Err(TreeError::SelfLoop(0)));
        assert_eq!(Tree::new(0, vec![]), Err(TreeError::Empty));
        assert!(Tree::new(1, vec![]).is_ok());
    }

    #[test]
    fn orientation_signs() {
        let t = Tree::new(2, vec![(0, 0, 1)]).unwrap();
        assert_eq!(t.or_sign(0, 0), Ok(1));
        assert_eq!(t.or_sign(1, 0), Ok(-1));
        let t = path3();
        assert_eq!(t.or_sign(t.endpoints(0).unwrap().0, 0), Ok(1));
        assert_eq!(
            t.or_sign(2, 0),
            Err(TreeError::NotIncident { vertex: 2, edge: 0 })
        );
    }

    #[test]
    fn incidence_and_leaves() {
        let s = star3();
        assert_eq!(s.incident_edges(0).unwrap(), &[0, 1, 2]);
        assert_eq!(s.incident_edges(1).unwrap(), &[0]);
        assert_eq!(s.leaves(), vec![1, 2, 3]);
        assert_eq!(path3().leaves(), vec![0, 2]);

        let single = Tree::new(1, vec![]).unwrap();
        assert_eq!(single.incident_edges(0).unwrap(), &[] as &[EdgeId]);
        assert_eq!(single.leaves(), vec![0]);
    }

    #[test]
    fn convex_hull_cases() {
        let t = path3();
        let h = t.convex_hull(&[1]).unwrap();
        assert_eq!(h.vertices, vec![1]);
        assert!(h.edges.is_empty());

        let h = t.convex_hull(&[0, 2]).unwrap();
        assert_eq!(h.vertices, vec![0, 1, 2]);
        assert_eq!(h.edges, vec![0, 1]);

        let h = t.convex_hull(&[0, 1, 2]).unwrap();
        assert_eq!(h.vertices, vec![0, 1, 2]);

        assert_eq!(t.convex_hull(&[]), Err(TreeError::EmptySet));
        assert_eq!(t.convex_hull(&[9]), Err(TreeError::UnknownVertex(9)));
    }

    #[test]
    fn hull_leaves_lie_in_generating_set() {
        let s = star3();
        let h = s.convex_hull(&[1, 2]).unwrap();
        // hull is 1 - 0 - 2; its leaves are exactly {1, 2}
        assert_eq!(h.leaves(&s), vec![1, 2]);
        assert!(h.contains_vertex(0));
        assert!(!h.contains_edge(2));
    }
}
