//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use corefacial::fccp::{CoreClass, FccpInstance, Verdict};
use corefacial::generate::{random_biconnected_planar, PlanarShape};
use corefacial::oracle::{planar_rotation_systems, DEFAULT_BUDGET};
use corefacial::reductions::PepInstance;
use corefacial::spqr::SpqrTree;
use corefacial::{Dart, Embedding, Graph, VertexId};
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).unwrap()
}

/// Second decider: the SPQR-tree enumeration of embeddings up to
/// reflection, which leaves co-faciality unchanged.
pub fn spqr_oracle(inst: &FccpInstance) -> Verdict {
    let tree = SpqrTree::build(&inst.graph).unwrap();
    let keep = inst.core_mask();
    let yes = tree.enumerate_planar_embeddings().iter().any(|emb| {
        let regions = emb.regions(&keep);
        inst.pairs.iter().all(|&(x, y)| regions.cofacial(x, y))
    });
    Verdict::from_bool(yes)
}

/// Triconnectivity by deleting every vertex pair.
pub fn is_triconnected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 4 || !g.is_connected() {
        return false;
    }
    for a in 0..n {
        for b in a + 1..n {
            let mut seen = vec![false; n];
            seen[a] = true;
            seen[b] = true;
            let start = (0..n).find(|v| !seen[*v]).unwrap();
            seen[start] = true;
            let mut stack = vec![start];
            let mut count = 3;
            while let Some(v) = stack.pop() {
                for w in g.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            if count < n {
                return false;
            }
        }
    }
    true
}

/// `H` as a standalone graph: vertices and edges kept by `mask`, with the
/// original vertex of each local one.
fn h_graph(g: &Graph, mask: &[bool]) -> Option<(Graph, Vec<VertexId>)> {
    let mut verts = BTreeSet::new();
    for (e, &k) in mask.iter().enumerate() {
        if k {
            verts.extend(g.endpoints(e));
        }
    }
    let origin: Vec<VertexId> = verts.into_iter().collect();
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in origin.iter().enumerate() {
        local[v] = i;
    }
    let edges: Vec<_> = (0..g.edge_count())
        .filter(|&e| mask[e])
        .map(|e| {
            let [u, v] = g.endpoints(e);
            (local[u], local[v])
        })
        .collect();
    let h = Graph::from_edges(origin.len(), &edges).ok()?;
    h.is_biconnected().then_some((h, origin))
}

/// A random biconnected subgraph of `g`, obtained by deleting edges and
/// degree-two vertices while biconnectivity lasts.
pub fn random_biconnected_subgraph<R: Rng>(rng: &mut R, g: &Graph) -> Vec<bool> {
    let mut mask = vec![true; g.edge_count()];
    let attempts = rng.gen_range(0..=g.edge_count());
    for _ in 0..attempts {
        let mut trial = mask.clone();
        if rng.gen_bool(0.5) {
            let e = rng.gen_range(0..g.edge_count());
            trial[e] = false;
        } else {
            let v = rng.gen_range(0..g.vertex_count());
            for &e in g.incident(v) {
                trial[e] = false;
            }
        }
        if trial != mask && h_graph(g, &trial).is_some() {
            mask = trial;
        }
    }
    mask
}

fn pep_from_rotation(g: &Graph, mask: &[bool], rotation: Vec<Vec<usize>>) -> PepInstance {
    let h_edges = (0..g.edge_count()).filter(|&e| mask[e]).collect();
    PepInstance::new(g.clone(), h_edges, rotation).unwrap()
}

/// A PEP instance whose prescribed embedding is the restriction of a
/// planar embedding of the whole graph.
pub fn extendable_pep<R: Rng>(rng: &mut R, vertices: usize) -> PepInstance {
    let density = rng.gen_range(0.0..1.0);
    let (g, emb) = random_biconnected_planar(rng, PlanarShape { vertices, density });
    let mask = random_biconnected_subgraph(rng, &g);
    let restricted = emb.restrict(&mask);
    let rotation = g.vertices().map(|v| restricted.rotation(v).iter().map(|d| d.edge()).collect()).collect();
    pep_from_rotation(&g, &mask, rotation)
}

/// Rotation of `H` (in local ids) induced by an embedding of the host.
fn local_key(h: &Graph, origin: &[VertexId], g: &Graph, mask: &[bool], emb: &Embedding) -> Vec<Vec<Dart>> {
    let restricted = emb.restrict(mask);
    let rotation: Vec<Vec<Dart>> = origin
        .iter()
        .enumerate()
        .map(|(lv, &v)| {
            restricted
                .rotation(v)
                .iter()
                .map(|d| {
                    let [a, b] = g.endpoints(d.edge());
                    let w = if a == v { b } else { a };
                    let lw = origin.binary_search(&w).unwrap();
                    h.dart_from(h.find_edge(lv, lw).unwrap(), lv)
                })
                .collect()
        })
        .collect();
    Embedding::new(h.clone(), rotation).unwrap().reflection_key()
}

/// A PEP instance whose prescribed embedding extends to no planar
/// embedding of the host, confirmed by enumerating both; `None` when the
/// drawn subgraph has no such embedding.
pub fn non_extendable_pep<R: Rng>(rng: &mut R, vertices: usize) -> Option<PepInstance> {
    let density = rng.gen_range(0.3..1.0);
    let (g, _) = random_biconnected_planar(rng, PlanarShape { vertices, density });
    let mask = random_biconnected_subgraph(rng, &g);
    let (h, origin) = h_graph(&g, &mask)?;
    let extendable: BTreeSet<Vec<Vec<Dart>>> = planar_rotation_systems(&g, DEFAULT_BUDGET)
        .unwrap()
        .iter()
        .map(|emb| local_key(&h, &origin, &g, &mask, emb))
        .collect();
    let candidates: Vec<Embedding> = planar_rotation_systems(&h, DEFAULT_BUDGET)
        .unwrap()
        .into_iter()
        .filter(|emb| !extendable.contains(&emb.reflection_key()))
        .collect();
    if candidates.is_empty() {
        return None;
    }
    let pick = &candidates[rng.gen_range(0..candidates.len())];
    let mut rotation = vec![Vec::new(); g.vertex_count()];
    for (lv, &v) in origin.iter().enumerate() {
        rotation[v] = pick
            .rotation(lv)
            .iter()
            .map(|d| {
                let [a, b] = h.endpoints(d.edge());
                g.find_edge(origin[a], origin[b]).unwrap()
            })
            .collect();
    }
    Some(pep_from_rotation(&g, &mask, rotation))
}

/// Pairs of core vertices sharing a face of `emb` restricted to the core.
pub fn cofacial_pairs(emb: &Embedding, classes: &[CoreClass]) -> Vec<(VertexId, VertexId)> {
    let keep: Vec<bool> = classes.iter().map(|&c| c == CoreClass::E1).collect();
    let regions = emb.regions(&keep);
    let n = emb.graph().vertex_count();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if regions.cofacial(x, y) {
                out.push((x, y));
            }
        }
    }
    out
}
