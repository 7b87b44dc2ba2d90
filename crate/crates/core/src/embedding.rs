//! Combinatorial embeddings (rotation systems), face tracing, restriction to
//! an edge subset and the faces of a restriction seen from the host embedding.

use crate::error::EmbeddingError;
use crate::graph::{Dart, EdgeId, Graph, VertexId};
use crate::util::UnionFind;

/// A closed face walk, stored starting at its smallest dart so that equal
/// faces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    darts: Vec<Dart>,
}

impl Face {
    fn from_walk(mut darts: Vec<Dart>) -> Self {
        if let Some(pos) = darts.iter().enumerate().min_by_key(|(_, d)| **d).map(|(i, _)| i) {
            darts.rotate_left(pos);
        }
        Face { darts }
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Sorted, deduplicated vertices on the boundary.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self.darts.iter().map(|&d| g.tail(d)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

/// Rotation system over the active edges of a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    graph: Graph,
    active: Vec<bool>,
    rotation: Vec<Vec<Dart>>,
    position: Vec<usize>,
}

impl Embedding {
    /// `rotation[v]` is the cyclic order of darts leaving `v`; every edge of
    /// the graph must appear.
    pub fn new(graph: Graph, rotation: Vec<Vec<Dart>>) -> Result<Self, EmbeddingError> {
        if rotation.len() != graph.vertex_count() {
            return Err(EmbeddingError::WrongVertexCount {
                expected: graph.vertex_count(),
                got: rotation.len(),
            });
        }
        for v in graph.vertices() {
            let mut expected: Vec<Dart> = graph.incident(v).iter().map(|&e| graph.dart_from(e, v)).collect();
            let mut got = rotation[v].clone();
            expected.sort_unstable();
            got.sort_unstable();
            if expected != got {
                return Err(EmbeddingError::BadRotation(graph.name(v).to_string()));
            }
        }
        let active = vec![true; graph.edge_count()];
        Ok(Self::assemble(graph, active, rotation))
    }

    /// Rotation given as cyclic edge orders.
    pub fn from_edge_orders(graph: Graph, orders: Vec<Vec<EdgeId>>) -> Result<Self, EmbeddingError> {
        let mut rotation = Vec::with_capacity(orders.len());
        for (v, order) in orders.into_iter().enumerate() {
            if v >= graph.vertex_count() || order.iter().any(|&e| e >= graph.edge_count() || !graph.endpoints(e).contains(&v)) {
                let name = graph.names().get(v).cloned().unwrap_or_else(|| v.to_string());
                return Err(EmbeddingError::BadRotation(name));
            }
            rotation.push(order.into_iter().map(|e| graph.dart_from(e, v)).collect());
        }
        Self::new(graph, rotation)
    }

    fn assemble(graph: Graph, active: Vec<bool>, rotation: Vec<Vec<Dart>>) -> Self {
        let mut position = vec![usize::MAX; 2 * graph.edge_count()];
        for rot in &rotation {
            for (i, d) in rot.iter().enumerate() {
                position[d.0] = i;
            }
        }
        Embedding {
            graph,
            active,
            rotation,
            position,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    pub fn is_active(&self, e: EdgeId) -> bool {
        self.active[e]
    }

    /// Vertices with at least one active edge.
    pub fn is_present(&self, v: VertexId) -> bool {
        !self.rotation[v].is_empty()
    }

    /// Next dart counter-clockwise around the tail of `d`.
    pub fn next_around(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.graph.tail(d)];
        rot[(self.position[d.0] + 1) % rot.len()]
    }

    /// Next dart along the face to the left of `d`.
    pub fn face_successor(&self, d: Dart) -> Dart {
        self.next_around(d.twin())
    }

    /// Face index of every dart (`usize::MAX` for inactive darts) and the
    /// number of faces.
    pub fn face_table(&self) -> (Vec<usize>, usize) {
        let mut table = vec![usize::MAX; 2 * self.graph.edge_count()];
        let mut count = 0;
        for start in 0..table.len() {
            if table[start] != usize::MAX || !self.active[start / 2] {
                continue;
            }
            let mut d = Dart(start);
            while table[d.0] == usize::MAX {
                table[d.0] = count;
                d = self.face_successor(d);
            }
            count += 1;
        }
        (table, count)
    }

    pub fn faces(&self) -> Vec<Face> {
        let (table, count) = self.face_table();
        let mut walks: Vec<Vec<Dart>> = vec![Vec::new(); count];
        let mut done = vec![false; count];
        for (start, &f) in table.iter().enumerate() {
            if f == usize::MAX || done[f] {
                continue;
            }
            done[f] = true;
            let first = Dart(start);
            let mut d = first;
            loop {
                walks[f].push(d);
                d = self.face_successor(d);
                if d == first {
                    break;
                }
            }
        }
        walks.into_iter().map(Face::from_walk).collect()
    }

    fn active_components(&self) -> (usize, usize, usize) {
        let n = self.graph.vertex_count();
        let mut uf = UnionFind::new(n);
        let mut edges = 0;
        for (e, &[u, v]) in self.graph.edges().iter().enumerate() {
            if self.active[e] {
                uf.union(u, v);
                edges += 1;
            }
        }
        let present: Vec<VertexId> = (0..n).filter(|&v| self.is_present(v)).collect();
        let mut roots: Vec<usize> = present.iter().map(|&v| uf.find(v)).collect();
        roots.sort_unstable();
        roots.dedup();
        (present.len(), edges, roots.len())
    }

    /// Genus-zero test: every component satisfies V - E + F = 2.
    pub fn is_planar(&self) -> bool {
        let (v, e, c) = self.active_components();
        let (_, f) = self.face_table();
        v + f == e + 2 * c
    }

    /// Induced rotation on the edges with `keep[e]`; vertices left without
    /// edges drop out.
    pub fn restrict(&self, keep: &[bool]) -> Embedding {
        let active: Vec<bool> = self.active.iter().zip(keep).map(|(&a, &k)| a && k).collect();
        let rotation = self
            .rotation
            .iter()
            .map(|rot| rot.iter().copied().filter(|d| active[d.edge()]).collect())
            .collect();
        Self::assemble(self.graph.clone(), active, rotation)
    }

    /// Mirror image: every rotation reversed.
    pub fn mirror(&self) -> Embedding {
        let rotation = self
            .rotation
            .iter()
            .map(|rot| rot.iter().rev().copied().collect())
            .collect();
        Self::assemble(self.graph.clone(), self.active.clone(), rotation)
    }

    /// Rotation with each cyclic order started at its smallest dart.
    pub fn canonical_key(&self) -> Vec<Vec<Dart>> {
        self.rotation
            .iter()
            .map(|rot| {
                let mut r = rot.clone();
                if let Some(pos) = r.iter().enumerate().min_by_key(|(_, d)| **d).map(|(i, _)| i) {
                    r.rotate_left(pos);
                }
                r
            })
            .collect()
    }

    /// Key identifying the embedding up to reflection of the sphere.
    pub fn reflection_key(&self) -> Vec<Vec<Dart>> {
        let a = self.canonical_key();
        let b = self.mirror().canonical_key();
        a.min(b)
    }

    /// Faces of the restriction to `keep`, located through the faces of this
    /// embedding merged across every removed edge.
    pub fn regions(&self, keep: &[bool]) -> Regions {
        let (table, count) = self.face_table();
        let mut uf = UnionFind::new(count);
        for e in 0..self.graph.edge_count() {
            if self.active[e] && !keep[e] {
                uf.union(table[2 * e], table[2 * e + 1]);
            }
        }
        let mut region_of_root = vec![usize::MAX; count];
        let mut face_region = vec![0; count];
        let mut regions = 0;
        for (f, slot) in face_region.iter_mut().enumerate() {
            let r = uf.find(f);
            if region_of_root[r] == usize::MAX {
                region_of_root[r] = regions;
                regions += 1;
            }
            *slot = region_of_root[r];
        }
        let restricted = self.restrict(keep);
        let restricted_faces = restricted.faces();
        let mut boundaries = vec![Vec::new(); regions];
        for face in restricted_faces {
            let r = face_region[table[face.darts()[0].0]];
            boundaries[r].push(face);
        }
        let mut vertex_regions = vec![Vec::new(); self.graph.vertex_count()];
        for (d, &f) in table.iter().enumerate() {
            if f != usize::MAX {
                vertex_regions[self.graph.tail(Dart(d))].push(face_region[f]);
            }
        }
        for rs in &mut vertex_regions {
            rs.sort_unstable();
            rs.dedup();
        }
        Regions {
            restricted,
            boundaries,
            vertex_regions,
            dart_region: table.iter().map(|&f| if f == usize::MAX { usize::MAX } else { face_region[f] }).collect(),
        }
    }
}

/// Faces of a restricted embedding, including vertices that lost all their
/// edges (they sit inside exactly one region).
#[derive(Clone, Debug)]
pub struct Regions {
    restricted: Embedding,
    boundaries: Vec<Vec<Face>>,
    vertex_regions: Vec<Vec<usize>>,
    dart_region: Vec<usize>,
}

impl Regions {
    pub fn count(&self) -> usize {
        self.boundaries.len()
    }

    pub fn restricted(&self) -> &Embedding {
        &self.restricted
    }

    /// Traced faces of the restriction that bound region `r`. Empty when the
    /// restriction has no edges.
    pub fn boundary(&self, r: usize) -> &[Face] {
        &self.boundaries[r]
    }

    /// Regions on whose closure `v` lies.
    pub fn of_vertex(&self, v: VertexId) -> &[usize] {
        &self.vertex_regions[v]
    }

    /// Region of the host face to the left of dart `d`.
    pub fn of_dart(&self, d: Dart) -> usize {
        self.dart_region[d.0]
    }

    pub fn cofacial(&self, x: VertexId, y: VertexId) -> bool {
        let (a, b) = (&self.vertex_regions[x], &self.vertex_regions[y]);
        a.iter().any(|r| b.binary_search(r).is_ok())
    }
}

pub fn compute_faces(emb: &Embedding) -> Vec<Face> {
    emb.faces()
}

pub fn restrict_embedding(emb: &Embedding, keep: &[bool]) -> Embedding {
    emb.restrict(keep)
}

/// Faces of the restriction to `keep` that contain `v`, each given by its
/// traced boundary walks.
pub fn hface_of_vertex(emb: &Embedding, keep: &[bool], v: VertexId) -> Vec<Vec<Face>> {
    let regions = emb.regions(keep);
    regions
        .of_vertex(v)
        .iter()
        .map(|&r| regions.boundary(r).to_vec())
        .collect()
}
