//! Brute-force deciders for small instances.
//!
//! Planar rotation systems are grown edge by edge: a prefix of the edges
//! that stays connected has a planar restriction, and a new edge either hangs
//! a new vertex into some angle or joins two angles of one face. Every planar
//! rotation system of the graph appears exactly once. A second, cruder
//! enumerator tries every rotation system and keeps those passing the Euler
//! check; it backs the first one in tests.

use std::env;

use crate::embedding::Embedding;
use crate::error::OracleError;
use crate::fccp::{CoreClass, FccpInstance, Verdict};
use crate::graph::{Dart, EdgeId, Graph, VertexId};
use crate::reductions::{hpp_to_fccp, HppInstance};

pub const DEFAULT_CAP: usize = 9;
pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const CAP_VARIABLE: &str = "COREFACIAL_ORACLE_CAP";

/// Vertex cap from the environment, or the default.
pub fn cap_from_env() -> usize {
    env::var(CAP_VARIABLE)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub cap: usize,
    pub budget: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            cap: cap_from_env(),
            budget: DEFAULT_BUDGET,
        }
    }
}

fn check_limits(g: &Graph, limits: OracleLimits) -> Result<(), OracleError> {
    if g.vertex_count() > limits.cap {
        return Err(OracleError::CapExceeded {
            vertices: g.vertex_count(),
            cap: limits.cap,
        });
    }
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    Ok(())
}

/// Calls `visit` on every planar rotation system of the connected graph `g`
/// until it returns `true`. Returns whether it did.
pub fn for_each_planar_rotation(
    g: &Graph,
    budget: u64,
    mut visit: impl FnMut(&[Vec<Dart>]) -> bool,
) -> Result<bool, OracleError> {
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    if g.edge_count() == 0 {
        return Ok(visit(&vec![Vec::new(); g.vertex_count()]));
    }
    let order = connected_edge_order(g);
    let mut grower = Grower {
        g,
        order: &order,
        rotation: vec![Vec::new(); g.vertex_count()],
        visited: 0,
        budget,
    };
    let first = order[0];
    let [a, b] = g.endpoints(first);
    grower.rotation[a].push(g.dart_from(first, a));
    grower.rotation[b].push(g.dart_from(first, b));
    grower.grow(1, &mut visit)
}

fn connected_edge_order(g: &Graph) -> Vec<EdgeId> {
    let mut reached = vec![false; g.vertex_count()];
    let mut used = vec![false; g.edge_count()];
    let mut order = Vec::with_capacity(g.edge_count());
    // closing edges first keeps branching low
    while order.len() < g.edge_count() {
        let pick = (0..g.edge_count())
            .filter(|&e| !used[e])
            .filter(|&e| order.is_empty() || g.endpoints(e).iter().any(|&v| reached[v]))
            .min_by_key(|&e| (!g.endpoints(e).iter().all(|&v| reached[v]), e))
            .expect("connected graph");
        used[pick] = true;
        for v in g.endpoints(pick) {
            reached[v] = true;
        }
        order.push(pick);
    }
    order
}

struct Grower<'a> {
    g: &'a Graph,
    order: &'a [EdgeId],
    rotation: Vec<Vec<Dart>>,
    visited: u64,
    budget: u64,
}

impl Grower<'_> {
    fn grow(&mut self, k: usize, visit: &mut impl FnMut(&[Vec<Dart>]) -> bool) -> Result<bool, OracleError> {
        if k == self.order.len() {
            self.visited += 1;
            if self.visited > self.budget {
                return Err(OracleError::BudgetExceeded { budget: self.budget });
            }
            return Ok(visit(&self.rotation));
        }
        let e = self.order[k];
        let [u, v] = self.g.endpoints(e);
        let (du, dv) = (self.g.dart_from(e, u), self.g.dart_from(e, v));
        let (has_u, has_v) = (!self.rotation[u].is_empty(), !self.rotation[v].is_empty());
        if has_u && has_v {
            let face = self.angle_faces();
            for a in 0..self.rotation[u].len() {
                for b in 0..self.rotation[v].len() {
                    if face[u][a] != face[v][b] {
                        continue;
                    }
                    self.rotation[u].insert(a + 1, du);
                    self.rotation[v].insert(b + 1, dv);
                    let done = self.grow(k + 1, visit);
                    self.rotation[u].remove(a + 1);
                    self.rotation[v].remove(b + 1);
                    if done? {
                        return Ok(true);
                    }
                }
            }
            Ok(false)
        } else {
            let (old, fresh, d_old, d_fresh) = if has_u { (u, v, du, dv) } else { (v, u, dv, du) };
            self.rotation[fresh].push(d_fresh);
            for a in 0..self.rotation[old].len() {
                self.rotation[old].insert(a + 1, d_old);
                let done = self.grow(k + 1, visit);
                self.rotation[old].remove(a + 1);
                if done? {
                    self.rotation[fresh].pop();
                    return Ok(true);
                }
            }
            self.rotation[fresh].pop();
            Ok(false)
        }
    }

    /// Face id of every angle; angle `i` at `v` follows `rotation[v][i]`.
    fn angle_faces(&self) -> Vec<Vec<usize>> {
        let g = self.g;
        let mut pos = vec![(usize::MAX, 0); 2 * g.edge_count()];
        for (v, rot) in self.rotation.iter().enumerate() {
            for (i, d) in rot.iter().enumerate() {
                pos[d.0] = (v, i);
            }
        }
        let mut face_of_dart = vec![usize::MAX; 2 * g.edge_count()];
        let mut faces = 0;
        for start in 0..2 * g.edge_count() {
            if pos[start].0 == usize::MAX || face_of_dart[start] != usize::MAX {
                continue;
            }
            let mut d = Dart(start);
            while face_of_dart[d.0] == usize::MAX {
                face_of_dart[d.0] = faces;
                let (h, i) = pos[d.twin().0];
                let rot = &self.rotation[h];
                d = rot[(i + 1) % rot.len()];
            }
            faces += 1;
        }
        self.rotation
            .iter()
            .map(|rot| (0..rot.len()).map(|i| face_of_dart[rot[(i + 1) % rot.len()].0]).collect())
            .collect()
    }
}

/// Every planar rotation system of a connected graph.
pub fn planar_rotation_systems(g: &Graph, budget: u64) -> Result<Vec<Embedding>, OracleError> {
    let mut all = Vec::new();
    for_each_planar_rotation(g, budget, |rot| {
        all.push(Embedding::new(g.clone(), rot.to_vec()).expect("complete rotation"));
        false
    })?;
    Ok(all)
}

/// Every rotation system of `g` passing the Euler check, by trying all
/// products of cyclic orders. Only for tiny graphs.
pub fn brute_force_rotation_systems(g: &Graph) -> Vec<Embedding> {
    let choices: Vec<Vec<Vec<Dart>>> = g
        .vertices()
        .map(|v| {
            let darts: Vec<Dart> = g.incident(v).iter().map(|&e| g.dart_from(e, v)).collect();
            cyclic_orders(&darts)
        })
        .collect();
    let mut index = vec![0usize; choices.len()];
    let mut result = Vec::new();
    loop {
        let rotation = index.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        let emb = Embedding::new(g.clone(), rotation).expect("complete rotation");
        if emb.is_planar() {
            result.push(emb);
        }
        let mut k = 0;
        while k < index.len() {
            index[k] += 1;
            if index[k] < choices[k].len() {
                break;
            }
            index[k] = 0;
            k += 1;
        }
        if k == index.len() {
            return result;
        }
    }
}

fn cyclic_orders(darts: &[Dart]) -> Vec<Vec<Dart>> {
    if darts.len() <= 2 {
        return vec![darts.to_vec()];
    }
    let (first, rest) = darts.split_first().unwrap();
    let mut out = Vec::new();
    permute(rest.to_vec(), 0, &mut |p| {
        let mut order = vec![*first];
        order.extend_from_slice(p);
        out.push(order);
    });
    out
}

fn permute(mut items: Vec<Dart>, k: usize, emit: &mut impl FnMut(&[Dart])) {
    if k == items.len() {
        emit(&items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items.clone(), k + 1, emit);
        items.swap(k, i);
    }
}

/// Per-pair verdict for one embedding: `(satisfied, violated)`.
pub fn check_requirements(
    emb: &Embedding,
    classes: &[CoreClass],
    pairs: &[(VertexId, VertexId)],
) -> (Vec<(VertexId, VertexId)>, Vec<(VertexId, VertexId)>) {
    let keep: Vec<bool> = classes.iter().map(|&c| c == CoreClass::E1).collect();
    let regions = emb.regions(&keep);
    pairs.iter().copied().partition(|&(x, y)| regions.cofacial(x, y))
}

/// An embedding of `inst.graph` meeting every pair, if one exists.
pub fn fccp_witness(inst: &FccpInstance, limits: OracleLimits) -> Result<Option<Embedding>, OracleError> {
    check_limits(&inst.graph, limits)?;
    let g = &inst.graph;
    let keep = inst.core_mask();
    let mut found = None;
    for_each_planar_rotation(g, limits.budget, |rot| {
        let emb = Embedding::new(g.clone(), rot.to_vec()).expect("complete rotation");
        let regions = emb.regions(&keep);
        if inst.pairs.iter().all(|&(x, y)| regions.cofacial(x, y)) {
            found = Some(emb);
            true
        } else {
            false
        }
    })?;
    Ok(found)
}

pub fn fccp_oracle(inst: &FccpInstance) -> Result<Verdict, OracleError> {
    fccp_oracle_with(inst, OracleLimits::default())
}

pub fn fccp_oracle_with(inst: &FccpInstance, limits: OracleLimits) -> Result<Verdict, OracleError> {
    fccp_witness(inst, limits).map(|w| Verdict::from_bool(w.is_some()))
}

pub fn hpp_oracle(h: &HppInstance) -> Result<Verdict, OracleError> {
    fccp_oracle(&hpp_to_fccp(h))
}

pub fn hpp_oracle_with(h: &HppInstance, limits: OracleLimits) -> Result<Verdict, OracleError> {
    fccp_oracle_with(&hpp_to_fccp(h), limits)
}

/// All planar rotation systems of one graph, enumerated once and queried
/// under many edge classes and pair sets.
#[derive(Clone, Debug)]
pub struct OracleSession {
    graph: Graph,
    embeddings: Vec<Embedding>,
}

impl OracleSession {
    pub fn new(g: &Graph, limits: OracleLimits) -> Result<Self, OracleError> {
        check_limits(g, limits)?;
        Ok(OracleSession {
            graph: g.clone(),
            embeddings: planar_rotation_systems(g, limits.budget)?,
        })
    }

    pub fn embeddings(&self) -> &[Embedding] {
        &self.embeddings
    }

    /// For each embedding, the co-facial vertex pairs of the core
    /// restriction as a bit matrix row per vertex; duplicates removed.
    pub fn cofacial_profiles(&self, classes: &[CoreClass]) -> Vec<Vec<u64>> {
        let n = self.graph.vertex_count();
        assert!(n <= 64, "profiles hold at most 64 vertices");
        let keep: Vec<bool> = classes.iter().map(|&c| c == CoreClass::E1).collect();
        let mut profiles: Vec<Vec<u64>> = self
            .embeddings
            .iter()
            .map(|emb| {
                let regions = emb.regions(&keep);
                (0..n)
                    .map(|x| (0..n).filter(|&y| regions.cofacial(x, y)).fold(0u64, |m, y| m | 1 << y))
                    .collect()
            })
            .collect();
        profiles.sort_unstable();
        profiles.dedup();
        profiles
    }

    pub fn decide(&self, classes: &[CoreClass], pairs: &[(VertexId, VertexId)]) -> Verdict {
        Self::decide_profiles(&self.cofacial_profiles(classes), pairs)
    }

    pub fn decide_profiles(profiles: &[Vec<u64>], pairs: &[(VertexId, VertexId)]) -> Verdict {
        Verdict::from_bool(profiles.iter().any(|p| pairs.iter().all(|&(x, y)| p[x] >> y & 1 == 1)))
    }
}
