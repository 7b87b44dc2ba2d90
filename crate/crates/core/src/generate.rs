//! Instance generators: random embedded biconnected planar graphs grown by
//! ears inside faces, and every small graph up to isomorphism.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::embedding::Embedding;
use crate::fccp::{CoreClass, FccpInstance};
use crate::graph::{Dart, EdgeId, Graph, VertexId};
use crate::planarity::is_planar;
use crate::reductions::{EdgeClass, HppInstance};

/// Shape of a random graph: `vertices` in total and roughly `density` of
/// the edges a triangulation could still take beyond the ear skeleton.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanarShape {
    pub vertices: usize,
    pub density: f64,
}

struct Grower {
    edges: Vec<[VertexId; 2]>,
    rotation: Vec<Vec<Dart>>,
    adjacent: BTreeSet<(VertexId, VertexId)>,
}

impl Grower {
    fn cycle(n: usize) -> Self {
        let mut g = Grower {
            edges: Vec::new(),
            rotation: vec![Vec::new(); n],
            adjacent: BTreeSet::new(),
        };
        for i in 0..n {
            g.push_edge(i, (i + 1) % n);
        }
        for v in 0..n {
            // outgoing to the successor, then to the predecessor
            let e_next = v;
            let e_prev = (v + n - 1) % n;
            g.rotation[v] = vec![Dart::new(e_next, false), Dart::new(e_prev, true)];
        }
        g
    }

    fn push_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        self.edges.push([u, v]);
        self.adjacent.insert((u.min(v), u.max(v)));
        self.edges.len() - 1
    }

    fn graph(&self) -> Graph {
        let edges: Vec<_> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::from_edges(self.rotation.len(), &edges).expect("simple by construction")
    }

    fn faces(&self) -> Vec<Vec<Dart>> {
        let emb = Embedding::new(self.graph(), self.rotation.clone()).expect("complete rotation");
        emb.faces().into_iter().map(|f| f.darts().to_vec()).collect()
    }

    fn tail(&self, d: Dart) -> VertexId {
        self.edges[d.edge()][d.is_backward() as usize]
    }

    /// Inserts `new` at the tail of `before` just ahead of it.
    fn insert_before(&mut self, before: Dart, new: Dart) {
        let v = self.tail(before);
        let pos = self.rotation[v].iter().position(|&d| d == before).expect("dart at its tail");
        self.rotation[v].insert(pos, new);
    }

    /// Path with `inner` new vertices from the tail of `a` to the tail of
    /// `b`, both darts of one face.
    fn add_ear(&mut self, a: Dart, b: Dart, inner: usize) {
        let (u, w) = (self.tail(a), self.tail(b));
        let mut prev = u;
        let mut first = None;
        let mut last_edge = 0;
        for k in 0..=inner {
            let next = if k == inner {
                w
            } else {
                self.rotation.push(Vec::new());
                self.rotation.len() - 1
            };
            let e = self.push_edge(prev, next);
            if k > 0 {
                self.rotation[prev].push(Dart::new(e, false));
            } else {
                first = Some(e);
            }
            if k < inner {
                self.rotation[next].push(Dart::new(e, true));
            }
            last_edge = e;
            prev = next;
        }
        self.insert_before(a, Dart::new(first.unwrap(), false));
        self.insert_before(b, Dart::new(last_edge, true));
    }

    fn try_ear<R: Rng>(&mut self, rng: &mut R, inner: usize) -> bool {
        let faces = self.faces();
        let face = faces.choose(rng).expect("a cycle has faces");
        let i = rng.gen_range(0..face.len());
        let mut j = rng.gen_range(0..face.len() - 1);
        if j >= i {
            j += 1;
        }
        let (a, b) = (face[i], face[j]);
        let (u, w) = (self.tail(a), self.tail(b));
        if u == w || (inner == 0 && self.adjacent.contains(&(u.min(w), u.max(w)))) {
            return false;
        }
        self.add_ear(a, b, inner);
        true
    }
}

/// A random biconnected planar graph and one of its planar embeddings,
/// with vertex and edge ids shuffled.
pub fn random_biconnected_planar<R: Rng>(rng: &mut R, shape: PlanarShape) -> (Graph, Embedding) {
    let n = shape.vertices.max(3);
    let mut g = Grower::cycle(rng.gen_range(3..=n.min(6)));
    while g.rotation.len() < n {
        let left = n - g.rotation.len();
        let inner = rng.gen_range(1..=left.min(3));
        g.try_ear(rng, inner);
    }
    let room = (3 * n - 6).saturating_sub(g.edges.len());
    let chords = (room as f64 * shape.density).round() as usize;
    let mut attempts = 0;
    let mut added = 0;
    while added < chords && attempts < 20 * chords + 20 {
        attempts += 1;
        if g.try_ear(rng, 0) {
            added += 1;
        }
    }
    shuffle(rng, &g)
}

fn shuffle<R: Rng>(rng: &mut R, g: &Grower) -> (Graph, Embedding) {
    let n = g.rotation.len();
    let mut vperm: Vec<VertexId> = (0..n).collect();
    vperm.shuffle(rng);
    let mut eperm: Vec<EdgeId> = (0..g.edges.len()).collect();
    eperm.shuffle(rng);
    let mut edges = vec![(0, 0); g.edges.len()];
    for (e, &[u, v]) in g.edges.iter().enumerate() {
        edges[eperm[e]] = (vperm[u], vperm[v]);
    }
    let graph = Graph::from_edges(n, &edges).expect("simple by construction");
    let mut orders = vec![Vec::new(); n];
    for (v, rot) in g.rotation.iter().enumerate() {
        orders[vperm[v]] = rot.iter().map(|d| eperm[d.edge()]).collect();
    }
    let emb = Embedding::from_edge_orders(graph.clone(), orders).expect("complete rotation");
    debug_assert!(emb.is_planar());
    (graph, emb)
}

/// Random core classes with `E2` chosen with probability `p_e2`.
pub fn random_classes<R: Rng>(rng: &mut R, edges: usize, p_e2: f64) -> Vec<CoreClass> {
    (0..edges)
        .map(|_| if rng.gen_bool(p_e2) { CoreClass::E2 } else { CoreClass::E1 })
        .collect()
}

/// Vertex pairs not joined by a core edge.
pub fn candidate_pairs(g: &Graph, classes: &[CoreClass]) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for x in g.vertices() {
        for y in x + 1..g.vertex_count() {
            if g.find_edge(x, y).is_none_or(|e| classes[e] != CoreClass::E1) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Up to `count` distinct pairs drawn from [`candidate_pairs`].
pub fn random_pairs<R: Rng>(rng: &mut R, g: &Graph, classes: &[CoreClass], count: usize) -> Vec<(VertexId, VertexId)> {
    let candidates = candidate_pairs(g, classes);
    candidates.choose_multiple(rng, count.min(candidates.len())).copied().collect()
}

/// A random biconnected planar FCCP instance.
pub fn random_fccp<R: Rng>(rng: &mut R, shape: PlanarShape, p_e2: f64, pairs: usize) -> FccpInstance {
    let (graph, _) = random_biconnected_planar(rng, shape);
    let classes = random_classes(rng, graph.edge_count(), p_e2);
    let pairs = random_pairs(rng, &graph, &classes, pairs);
    FccpInstance { graph, classes, pairs }
}

/// A random HPP instance whose primary and secondary edges form a
/// biconnected planar graph; `tertiary` extra edges join non-adjacent
/// vertices.
pub fn random_hpp<R: Rng>(rng: &mut R, shape: PlanarShape, p_secondary: f64, tertiary: usize) -> HppInstance {
    let (mut graph, _) = random_biconnected_planar(rng, shape);
    let mut classes: Vec<EdgeClass> = (0..graph.edge_count())
        .map(|_| if rng.gen_bool(p_secondary) { EdgeClass::Secondary } else { EdgeClass::Primary })
        .collect();
    let mut free: Vec<(VertexId, VertexId)> = Vec::new();
    for x in graph.vertices() {
        for y in x + 1..graph.vertex_count() {
            if graph.find_edge(x, y).is_none() {
                free.push((x, y));
            }
        }
    }
    for &(x, y) in free.choose_multiple(rng, tertiary.min(free.len())).collect::<Vec<_>>() {
        graph.add_edge(x, y).expect("non-adjacent");
        classes.push(EdgeClass::Tertiary);
    }
    HppInstance { graph, classes }
}

/// Every simple graph on `n` vertices, one per isomorphism class, as sorted
/// edge lists. Meant for `n <= 6`.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<Vec<(VertexId, VertexId)>> {
    let slots: Vec<(VertexId, VertexId)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut index = vec![vec![0usize; n]; n];
    for (i, &(a, b)) in slots.iter().enumerate() {
        index[a][b] = i;
        index[b][a] = i;
    }
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << slots.len() {
        let canon = perms
            .iter()
            .map(|p| {
                slots
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .fold(0u64, |m, (_, &(a, b))| m | 1 << index[p[a]][p[b]])
            })
            .min()
            .unwrap_or(0);
        if seen.insert(canon) {
            out.push(slots.iter().enumerate().filter(|&(i, _)| canon >> i & 1 == 1).map(|(_, &s)| s).collect());
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Biconnected planar graphs with `3..=max_n` vertices, up to isomorphism.
pub fn small_biconnected_planar(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        for edges in graphs_up_to_isomorphism(n) {
            let g = Graph::from_edges(n, &edges).expect("simple");
            if g.is_biconnected() && is_planar(&g).expect("connected") {
                out.push(g);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn isomorphism_class_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| graphs_up_to_isomorphism(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn small_biconnected_planar_counts() {
        // 1 on three vertices, 3 on four, 9 of the 10 on five (K5 drops out)
        assert_eq!(small_biconnected_planar(5).len(), 13);
    }

    #[test]
    fn random_graphs_are_biconnected_and_embedded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 3..30 {
            let (g, emb) = random_biconnected_planar(&mut rng, PlanarShape { vertices: n, density: 0.5 });
            assert_eq!(g.vertex_count(), n);
            assert!(g.is_biconnected());
            assert!(emb.is_planar());
        }
    }
}
