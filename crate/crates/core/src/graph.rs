//! Undirected multigraphs with stable vertex and edge identifiers.

use std::collections::HashMap;
use std::fmt;

use crate::error::GraphError;

pub type VertexId = usize;
pub type EdgeId = usize;

/// One direction of an edge. Dart `2e` runs from the first endpoint of `e`
/// to the second, dart `2e + 1` runs back.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub usize);

impl Dart {
    pub fn new(edge: EdgeId, backward: bool) -> Self {
        Dart(2 * edge + backward as usize)
    }

    pub fn edge(self) -> EdgeId {
        self.0 / 2
    }

    pub fn is_backward(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn twin(self) -> Self {
        Dart(self.0 ^ 1)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.edge(), if self.is_backward() { "-" } else { "+" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    edges: Vec<[VertexId; 2]>,
    incidence: Vec<Vec<EdgeId>>,
    skeleton: bool,
}

impl Graph {
    /// A simple graph on `n` vertices named `0..n`.
    pub fn new(n: usize) -> Self {
        Self::with_names((0..n).map(|v| v.to_string()).collect())
    }

    pub fn with_names(names: Vec<String>) -> Self {
        let n = names.len();
        Graph {
            names,
            edges: Vec::new(),
            incidence: vec![Vec::new(); n],
            skeleton: false,
        }
    }

    /// A skeleton multigraph: parallel edges are accepted.
    pub fn skeleton(n: usize) -> Self {
        let mut g = Self::new(n);
        g.skeleton = true;
        g
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> VertexId {
        self.names.push(name.into());
        self.incidence.push(Vec::new());
        self.names.len() - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(GraphError::UnknownVertex(u.max(v)));
        }
        if u == v {
            return Err(GraphError::SelfLoop(self.names[u].clone()));
        }
        if !self.skeleton && self.find_edge(u, v).is_some() {
            return Err(GraphError::ParallelEdge(
                self.names[u].clone(),
                self.names[v].clone(),
            ));
        }
        let e = self.edges.len();
        self.edges.push([u, v]);
        self.incidence[u].push(e);
        self.incidence[v].push(e);
        Ok(e)
    }

    pub fn is_skeleton(&self) -> bool {
        self.skeleton
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count()
    }

    pub fn edges(&self) -> &[[VertexId; 2]] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e]
    }

    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn tail(&self, d: Dart) -> VertexId {
        self.edges[d.edge()][d.is_backward() as usize]
    }

    pub fn head(&self, d: Dart) -> VertexId {
        self.edges[d.edge()][!d.is_backward() as usize]
    }

    /// The dart of `e` leaving `v`.
    pub fn dart_from(&self, e: EdgeId, v: VertexId) -> Dart {
        Dart::new(e, self.edges[e][0] != v)
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incidence[v].iter().map(move |&e| self.opposite(e, v))
    }

    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.incidence[a]
            .iter()
            .copied()
            .find(|&e| self.opposite(e, a) == b)
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_index(&self) -> HashMap<&str, VertexId> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect()
    }

    /// Same vertex set, only the edges in `keep` (renumbered in order).
    /// Returns the new graph and the original id of each new edge.
    pub fn edge_subgraph(&self, keep: impl IntoIterator<Item = EdgeId>) -> (Graph, Vec<EdgeId>) {
        let mut g = Graph::with_names(self.names.clone());
        g.skeleton = self.skeleton;
        let mut origin = Vec::new();
        for e in keep {
            let [u, v] = self.edges[e];
            g.add_edge(u, v).expect("subgraph of a valid graph");
            origin.push(e);
        }
        (g, origin)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// At least three vertices, connected, and no cut vertex.
    pub fn is_biconnected(&self) -> bool {
        self.vertex_count() >= 3 && self.is_connected() && self.articulation_points().is_empty()
    }

    /// Cut vertices, in increasing order.
    pub fn articulation_points(&self) -> Vec<VertexId> {
        let blocks = self.blocks();
        let mut count = vec![0usize; self.vertex_count()];
        for block in &blocks {
            let mut vs: Vec<VertexId> = block.iter().flat_map(|&e| self.edges[e]).collect();
            vs.sort_unstable();
            vs.dedup();
            for v in vs {
                count[v] += 1;
            }
        }
        (0..self.vertex_count()).filter(|&v| count[v] > 1).collect()
    }

    /// Biconnected components as edge lists (iterative Hopcroft–Tarjan).
    pub fn blocks(&self) -> Vec<Vec<EdgeId>> {
        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut time = 0;
        let mut blocks = Vec::new();
        let mut edge_stack: Vec<EdgeId> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            // (vertex, edge used to enter, next incidence index)
            let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
            while let Some(&mut (v, via, ref mut idx)) = stack.last_mut() {
                if *idx < self.incidence[v].len() {
                    let e = self.incidence[v][*idx];
                    *idx += 1;
                    if Some(e) == via {
                        continue;
                    }
                    let w = self.opposite(e, v);
                    if disc[w] == usize::MAX {
                        edge_stack.push(e);
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, Some(e), 0));
                    } else if disc[w] < disc[v] {
                        edge_stack.push(e);
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(&(parent, _, _)), Some(e)) = (stack.last(), via) {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] >= disc[parent] {
                            let mut block = Vec::new();
                            while let Some(f) = edge_stack.pop() {
                                block.push(f);
                                if f == e {
                                    break;
                                }
                            }
                            block.sort_unstable();
                            blocks.push(block);
                        }
                    }
                }
            }
        }
        blocks
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn c4_is_biconnected() {
        assert!(cycle(4).is_biconnected());
    }

    #[test]
    fn path_is_connected_not_biconnected() {
        let p = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.is_connected());
        assert!(!p.is_biconnected());
        assert_eq!(p.articulation_points(), vec![1]);
    }

    #[test]
    fn disjoint_edges_not_connected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert!(!g.is_biconnected());
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        let mut g = Graph::new(2);
        assert!(matches!(g.add_edge(0, 0), Err(GraphError::SelfLoop(_))));
        g.add_edge(0, 1).unwrap();
        assert!(matches!(g.add_edge(1, 0), Err(GraphError::ParallelEdge(..))));
        let mut s = Graph::skeleton(2);
        s.add_edge(0, 1).unwrap();
        s.add_edge(1, 0).unwrap();
        assert_eq!(s.edge_count(), 2);
    }

    #[test]
    fn bowtie_has_two_blocks() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let mut blocks = g.blocks();
        blocks.sort();
        assert_eq!(blocks, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(g.articulation_points(), vec![2]);
    }

    #[test]
    fn darts() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let d = g.dart_from(1, 2);
        assert_eq!(g.tail(d), 2);
        assert_eq!(g.head(d), 1);
        assert_eq!(d.twin().twin(), d);
        assert_eq!(g.tail(d.twin()), 1);
    }
}
