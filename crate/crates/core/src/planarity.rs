//! Planarity testing with embedding output.
//!
//! Each block is embedded by path addition (Demoucron, Malgrange and
//! Pertuiset): start from a cycle, and repeatedly route a path of some
//! bridge through a face that contains all of the bridge's attachment
//! vertices, preferring bridges with a single admissible face. Block
//! rotations are concatenated at cut vertices.

use crate::embedding::Embedding;
use crate::error::PlanarityError;
use crate::graph::{Dart, EdgeId, Graph, VertexId};

/// A planar embedding of `g`, or `None` when `g` is not planar.
pub fn planar_embedding(g: &Graph) -> Result<Option<Embedding>, PlanarityError> {
    if !g.is_connected() {
        return Err(PlanarityError::Disconnected);
    }
    let n = g.vertex_count();
    if !g.is_skeleton() && n >= 3 && g.edge_count() > 3 * n - 6 {
        return Ok(None);
    }
    let mut rotation: Vec<Vec<Dart>> = vec![Vec::new(); n];
    for block in g.blocks() {
        let Some(block_rot) = embed_block(g, &block) else {
            return Ok(None);
        };
        for (v, darts) in block_rot {
            rotation[v].extend(darts);
        }
    }
    let emb = Embedding::new(g.clone(), rotation).expect("rotation covers every edge");
    debug_assert!(emb.is_planar());
    Ok(Some(emb))
}

pub fn is_planar(g: &Graph) -> Result<bool, PlanarityError> {
    planar_embedding(g).map(|e| e.is_some())
}

struct PathEmbedder<'a> {
    g: &'a Graph,
    in_block: Vec<bool>,
    edge_done: Vec<bool>,
    vertex_done: Vec<bool>,
    rotation: Vec<Vec<Dart>>,
}

enum Bridge {
    Chord(EdgeId),
    Component { attachments: Vec<VertexId>, inner: Vec<VertexId> },
}

fn embed_block(g: &Graph, block: &[EdgeId]) -> Option<Vec<(VertexId, Vec<Dart>)>> {
    let mut vertices: Vec<VertexId> = block.iter().flat_map(|&e| g.endpoints(e)).collect();
    vertices.sort_unstable();
    vertices.dedup();
    if block.len() == 1 {
        let e = block[0];
        return Some(g.endpoints(e).iter().map(|&v| (v, vec![g.dart_from(e, v)])).collect());
    }
    let mut in_block = vec![false; g.edge_count()];
    for &e in block {
        in_block[e] = true;
    }
    let mut pe = PathEmbedder {
        g,
        in_block,
        edge_done: vec![false; g.edge_count()],
        vertex_done: vec![false; g.vertex_count()],
        rotation: vec![Vec::new(); g.vertex_count()],
    };
    pe.embed_initial_cycle(vertices[0]);
    let mut remaining = block.iter().filter(|&&e| !pe.edge_done[e]).count();
    while remaining > 0 {
        let faces = pe.faces();
        let bridges = pe.bridges(&vertices);
        let mut choice: Option<(usize, usize)> = None;
        for (i, bridge) in bridges.iter().enumerate() {
            let attachments = match bridge {
                Bridge::Chord(e) => g.endpoints(*e).to_vec(),
                Bridge::Component { attachments, .. } => attachments.clone(),
            };
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| attachments.iter().all(|a| faces[f].contains(a)))
                .take(2)
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((i, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, admissible[0]));
                    }
                }
            }
        }
        let (bi, fi) = choice.expect("at least one bridge remains");
        let path = pe.bridge_path(&bridges[bi]);
        remaining -= path.len();
        pe.embed_path(&path, &faces[fi]);
    }
    Some(vertices.into_iter().map(|v| (v, std::mem::take(&mut pe.rotation[v]))).collect())
}

struct TracedFace {
    darts: Vec<Dart>,
    vertices: Vec<VertexId>,
}

impl TracedFace {
    fn contains(&self, v: &VertexId) -> bool {
        self.vertices.binary_search(v).is_ok()
    }
}

impl PathEmbedder<'_> {
    fn embed_initial_cycle(&mut self, start: VertexId) {
        // DFS until the first back edge closes a cycle
        let g = self.g;
        let mut parent_edge: Vec<Option<EdgeId>> = vec![None; g.vertex_count()];
        let mut depth = vec![usize::MAX; g.vertex_count()];
        depth[start] = 0;
        let mut stack = vec![(start, 0usize)];
        let cycle = 'search: loop {
            let (v, idx) = *stack.last().expect("a block with two or more edges has a cycle");
            let inc = g.incident(v);
            if idx >= inc.len() {
                stack.pop();
                continue;
            }
            stack.last_mut().unwrap().1 += 1;
            let e = inc[idx];
            if !self.in_block[e] || Some(e) == parent_edge[v] {
                continue;
            }
            let w = g.opposite(e, v);
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent_edge[w] = Some(e);
                stack.push((w, 0));
            } else if depth[w] < depth[v] {
                let mut edges = vec![e];
                let mut x = v;
                while x != w {
                    let pe = parent_edge[x].unwrap();
                    edges.push(pe);
                    x = g.opposite(pe, x);
                }
                break 'search edges;
            }
        };
        for &e in &cycle {
            self.edge_done[e] = true;
            for v in g.endpoints(e) {
                self.vertex_done[v] = true;
                self.rotation[v].push(g.dart_from(e, v));
            }
        }
    }

    fn faces(&self) -> Vec<TracedFace> {
        let g = self.g;
        let mut position = vec![usize::MAX; 2 * g.edge_count()];
        for rot in &self.rotation {
            for (i, d) in rot.iter().enumerate() {
                position[d.0] = i;
            }
        }
        let succ = |d: Dart| {
            let t = d.twin();
            let rot = &self.rotation[g.tail(t)];
            rot[(position[t.0] + 1) % rot.len()]
        };
        let mut seen = vec![false; 2 * g.edge_count()];
        let mut faces = Vec::new();
        for e in 0..g.edge_count() {
            if !self.edge_done[e] {
                continue;
            }
            for start in [Dart::new(e, false), Dart::new(e, true)] {
                if seen[start.0] {
                    continue;
                }
                let mut darts = Vec::new();
                let mut d = start;
                while !seen[d.0] {
                    seen[d.0] = true;
                    darts.push(d);
                    d = succ(d);
                }
                let mut vertices: Vec<VertexId> = darts.iter().map(|&d| g.tail(d)).collect();
                vertices.sort_unstable();
                vertices.dedup();
                faces.push(TracedFace { darts, vertices });
            }
        }
        faces
    }

    fn bridges(&self, vertices: &[VertexId]) -> Vec<Bridge> {
        let g = self.g;
        let mut bridges = Vec::new();
        let mut comp = vec![usize::MAX; g.vertex_count()];
        for &s in vertices {
            if self.vertex_done[s] {
                for &e in g.incident(s) {
                    if self.in_block[e] && !self.edge_done[e] && self.vertex_done[g.opposite(e, s)] && g.endpoints(e)[0] == s {
                        bridges.push(Bridge::Chord(e));
                    }
                }
                continue;
            }
            if comp[s] != usize::MAX {
                continue;
            }
            let id = bridges.len();
            comp[s] = id;
            let mut inner = vec![s];
            let mut attachments = Vec::new();
            let mut i = 0;
            while i < inner.len() {
                let v = inner[i];
                i += 1;
                for &e in g.incident(v) {
                    if !self.in_block[e] {
                        continue;
                    }
                    let w = g.opposite(e, v);
                    if self.vertex_done[w] {
                        attachments.push(w);
                    } else if comp[w] == usize::MAX {
                        comp[w] = id;
                        inner.push(w);
                    }
                }
            }
            attachments.sort_unstable();
            attachments.dedup();
            bridges.push(Bridge::Component { attachments, inner });
        }
        bridges
    }

    /// Edges of a path through the bridge between two distinct attachments.
    fn bridge_path(&self, bridge: &Bridge) -> Vec<EdgeId> {
        let g = self.g;
        match bridge {
            Bridge::Chord(e) => vec![*e],
            Bridge::Component { attachments, inner } => {
                let (a, b) = (attachments[0], attachments[1]);
                let mut member = vec![false; g.vertex_count()];
                for &v in inner {
                    member[v] = true;
                }
                let mut via: Vec<Option<EdgeId>> = vec![None; g.vertex_count()];
                let mut queue = std::collections::VecDeque::new();
                for &e in g.incident(a) {
                    let w = g.opposite(e, a);
                    if self.in_block[e] && member[w] && via[w].is_none() {
                        via[w] = Some(e);
                        queue.push_back(w);
                    }
                }
                while let Some(v) = queue.pop_front() {
                    for &e in g.incident(v) {
                        if !self.in_block[e] {
                            continue;
                        }
                        let w = g.opposite(e, v);
                        if w == b {
                            let mut path = vec![e];
                            let mut x = v;
                            loop {
                                let pe = via[x].unwrap();
                                path.push(pe);
                                x = g.opposite(pe, x);
                                if x == a {
                                    break;
                                }
                            }
                            path.reverse();
                            return path;
                        }
                        if member[w] && via[w].is_none() {
                            via[w] = Some(e);
                            queue.push_back(w);
                        }
                    }
                }
                unreachable!("bridge of a biconnected block connects any two attachments")
            }
        }
    }

    fn embed_path(&mut self, path: &[EdgeId], face: &TracedFace) {
        let g = self.g;
        let first = path[0];
        let last = *path.last().unwrap();
        // walk the path to learn its end vertices
        let mut ends = Vec::new();
        let mut v = {
            let [x, y] = g.endpoints(first);
            if path.len() == 1 || g.endpoints(path[1]).contains(&y) {
                x
            } else {
                y
            }
        };
        ends.push(v);
        for (i, &e) in path.iter().enumerate() {
            let w = g.opposite(e, v);
            self.edge_done[e] = true;
            if i + 1 < path.len() {
                self.vertex_done[w] = true;
                self.rotation[w].push(g.dart_from(e, w));
                self.rotation[w].push(g.dart_from(path[i + 1], w));
            }
            v = w;
        }
        ends.push(v);
        for (end, e) in [(ends[0], first), (ends[1], last)] {
            let out = *face
                .darts
                .iter()
                .find(|&&d| g.tail(d) == end)
                .expect("attachment lies on the face");
            let pos = self.rotation[end].iter().position(|&d| d == out).unwrap();
            self.rotation[end].insert(pos, g.dart_from(e, end));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn k4_embeds_with_four_faces() {
        let emb = planar_embedding(&complete(4)).unwrap().unwrap();
        assert!(emb.is_planar());
        assert_eq!(emb.faces().len(), 4);
    }

    #[test]
    fn k5_is_not_planar() {
        assert!(planar_embedding(&complete(5)).unwrap().is_none());
    }

    #[test]
    fn k33_is_not_planar() {
        let mut edges = Vec::new();
        for i in 0..3 {
            for j in 3..6 {
                edges.push((i, j));
            }
        }
        let g = Graph::from_edges(6, &edges).unwrap();
        assert!(planar_embedding(&g).unwrap().is_none());
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(planar_embedding(&g), Err(PlanarityError::Disconnected));
    }

    #[test]
    fn trees_and_bowties_embed() {
        let tree = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let emb = planar_embedding(&tree).unwrap().unwrap();
        assert_eq!(emb.faces().len(), 1);
        let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert!(planar_embedding(&bowtie).unwrap().unwrap().is_planar());
    }

    #[test]
    fn octahedron_and_cube_embed() {
        let oct = Graph::from_edges(
            6,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (5, 1), (5, 2), (5, 3), (5, 4), (1, 2), (2, 3), (3, 4), (4, 1)],
        )
        .unwrap();
        let emb = planar_embedding(&oct).unwrap().unwrap();
        assert_eq!(emb.faces().len(), 8);
        let cube = Graph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)],
        )
        .unwrap();
        assert_eq!(planar_embedding(&cube).unwrap().unwrap().faces().len(), 6);
    }

    #[test]
    fn deterministic() {
        let g = complete(4);
        assert_eq!(planar_embedding(&g), planar_embedding(&g));
    }

    #[test]
    fn petersen_is_not_planar() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let g = Graph::from_edges(10, &edges).unwrap();
        assert!(planar_embedding(&g).unwrap().is_none());
    }
}
