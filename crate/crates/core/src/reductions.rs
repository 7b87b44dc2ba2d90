//! The three-level crossing model and the translations between instance
//! kinds.

use std::collections::BTreeSet;

use crate::embedding::Embedding;
use crate::error::ReductionError;
use crate::fccp::{CoreClass, FccpInstance};
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeClass {
    Primary,
    Secondary,
    Tertiary,
}

impl EdgeClass {
    pub fn weight(self) -> u32 {
        match self {
            EdgeClass::Primary => 4,
            EdgeClass::Secondary => 2,
            EdgeClass::Tertiary => 1,
        }
    }

    pub fn from_weight(w: u32) -> Result<Self, ReductionError> {
        match w {
            4 => Ok(EdgeClass::Primary),
            2 => Ok(EdgeClass::Secondary),
            1 => Ok(EdgeClass::Tertiary),
            _ => Err(ReductionError::InvalidWeight(w)),
        }
    }
}

/// Whether edges of weights `a` and `b` may cross.
pub fn cross_allowed(a: u32, b: u32) -> Result<bool, ReductionError> {
    EdgeClass::from_weight(a)?;
    EdgeClass::from_weight(b)?;
    Ok(a + b <= 3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HppInstance {
    pub graph: Graph,
    pub classes: Vec<EdgeClass>,
}

impl HppInstance {
    pub fn new(graph: Graph, classes: Vec<EdgeClass>) -> Result<Self, ReductionError> {
        if classes.len() != graph.edge_count() {
            return Err(ReductionError::ClassCount {
                expected: graph.edge_count(),
                got: classes.len(),
            });
        }
        Ok(HppInstance { graph, classes })
    }
}

/// A graph with a biconnected subgraph `H` whose embedding is prescribed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PepInstance {
    pub graph: Graph,
    /// Sorted edges of `H`.
    pub h_edges: Vec<EdgeId>,
    /// Cyclic order of `H` edges around each vertex; empty off `H`.
    pub h_rotation: Vec<Vec<EdgeId>>,
}

impl PepInstance {
    pub fn new(graph: Graph, mut h_edges: Vec<EdgeId>, h_rotation: Vec<Vec<EdgeId>>) -> Result<Self, ReductionError> {
        h_edges.sort_unstable();
        h_edges.dedup();
        let inst = PepInstance {
            graph,
            h_edges,
            h_rotation,
        };
        let (emb, _) = inst.h_embedding()?;
        if !emb.graph().is_biconnected() {
            return Err(ReductionError::NotBiconnected);
        }
        if !emb.is_planar() {
            return Err(ReductionError::NotPlanar);
        }
        Ok(inst)
    }

    /// `H` on its own vertices, embedded, with the original id of each of
    /// its vertices.
    pub fn h_embedding(&self) -> Result<(Embedding, Vec<VertexId>), ReductionError> {
        let g = &self.graph;
        let mut local = vec![usize::MAX; g.vertex_count()];
        let mut origin = Vec::new();
        for &e in &self.h_edges {
            for v in g.endpoints(e) {
                if local[v] == usize::MAX {
                    local[v] = origin.len();
                    origin.push(v);
                }
            }
        }
        origin.sort_unstable();
        for (i, &v) in origin.iter().enumerate() {
            local[v] = i;
        }
        let mut h = Graph::with_names(origin.iter().map(|&v| g.name(v).to_string()).collect());
        let mut edge_local = vec![usize::MAX; g.edge_count()];
        for &e in &self.h_edges {
            let [u, v] = g.endpoints(e);
            edge_local[e] = h.add_edge(local[u], local[v]).map_err(|_| ReductionError::NotBiconnected)?;
        }
        let mut orders = Vec::with_capacity(origin.len());
        for &v in &origin {
            let order = self.h_rotation.get(v).cloned().unwrap_or_default();
            let mut mapped = Vec::with_capacity(order.len());
            for e in order {
                if e >= g.edge_count() || edge_local[e] == usize::MAX {
                    return Err(ReductionError::NotPlanar);
                }
                mapped.push(edge_local[e]);
            }
            orders.push(mapped);
        }
        Ok((Embedding::from_edge_orders(h, orders)?, origin))
    }
}

/// Core = primary edges, rest = secondary edges, one pair per tertiary edge.
pub fn hpp_to_fccp(h: &HppInstance) -> FccpInstance {
    let mut graph = Graph::with_names(h.graph.names().to_vec());
    let mut classes = Vec::new();
    let mut pairs = Vec::new();
    for (e, &c) in h.classes.iter().enumerate() {
        let [u, v] = h.graph.endpoints(e);
        match c {
            EdgeClass::Primary | EdgeClass::Secondary => {
                graph.add_edge(u, v).expect("edge of a valid graph");
                classes.push(if c == EdgeClass::Primary { CoreClass::E1 } else { CoreClass::E2 });
            }
            EdgeClass::Tertiary => pairs.push((u, v)),
        }
    }
    FccpInstance { graph, classes, pairs }
}

/// Inverse of [`hpp_to_fccp`]; a pair whose endpoints are already adjacent
/// would need a parallel edge and is rejected.
pub fn fccp_to_hpp(f: &FccpInstance) -> Result<HppInstance, ReductionError> {
    let mut graph = f.graph.clone();
    let mut classes: Vec<EdgeClass> = f
        .classes
        .iter()
        .map(|&c| if c == CoreClass::E1 { EdgeClass::Primary } else { EdgeClass::Secondary })
        .collect();
    let mut seen = BTreeSet::new();
    for &(x, y) in &f.pairs {
        if !seen.insert((x.min(y), x.max(y))) {
            continue;
        }
        if graph.find_edge(x, y).is_some() {
            return Err(ReductionError::Collision(graph.name(x).to_string(), graph.name(y).to_string()));
        }
        graph.add_edge(x, y).expect("checked above");
        classes.push(EdgeClass::Tertiary);
    }
    Ok(HppInstance { graph, classes })
}

/// `F` becomes primary, every other edge tertiary.
pub fn pp_to_hpp(g: &Graph, f: &[EdgeId]) -> HppInstance {
    let mut classes = vec![EdgeClass::Tertiary; g.edge_count()];
    for &e in f {
        classes[e] = EdgeClass::Primary;
    }
    HppInstance {
        graph: g.clone(),
        classes,
    }
}

/// Core = `H`; one pair for every two vertices of a common face of the
/// prescribed embedding that are not adjacent in `H`.
pub fn pep_to_fccp(p: &PepInstance) -> Result<FccpInstance, ReductionError> {
    let (emb, origin) = p.h_embedding()?;
    let h = emb.graph();
    if !h.is_biconnected() {
        return Err(ReductionError::NotBiconnected);
    }
    if !emb.is_planar() {
        return Err(ReductionError::NotPlanar);
    }
    let mut pairs = BTreeSet::new();
    for face in emb.faces() {
        let mut vs = face.vertices(h);
        vs.sort_unstable();
        vs.dedup();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                if h.find_edge(a, b).is_none() {
                    pairs.insert((origin[a], origin[b]));
                }
            }
        }
    }
    let mut classes = vec![CoreClass::E2; p.graph.edge_count()];
    for &e in &p.h_edges {
        classes[e] = CoreClass::E1;
    }
    Ok(FccpInstance {
        graph: p.graph.clone(),
        classes,
        pairs: pairs.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use EdgeClass::*;

    fn cycle_pep(n: usize, chords: &[(usize, usize)]) -> PepInstance {
        let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend_from_slice(chords);
        let g = Graph::from_edges(n, &edges).unwrap();
        let rotation = (0..n).map(|v| vec![(v + n - 1) % n, v]).collect();
        PepInstance::new(g, (0..n).collect(), rotation).unwrap()
    }

    #[test]
    fn truth_table() {
        for (a, b, yes) in [(1, 1, true), (1, 2, true), (1, 4, false), (2, 2, false), (2, 4, false), (4, 4, false)] {
            assert_eq!(cross_allowed(a, b), Ok(yes));
            assert_eq!(cross_allowed(b, a), Ok(yes));
        }
        assert_eq!(cross_allowed(3, 1), Err(ReductionError::InvalidWeight(3)));
    }

    #[test]
    fn tertiary_edges_become_pairs() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let h = HppInstance::new(g, vec![Primary, Primary, Primary, Secondary, Tertiary]).unwrap();
        let f = hpp_to_fccp(&h);
        assert_eq!(f.graph.edge_count(), 4);
        assert_eq!(f.classes, vec![CoreClass::E1, CoreClass::E1, CoreClass::E1, CoreClass::E2]);
        assert_eq!(f.pairs, vec![(0, 2)]);
        assert_eq!(fccp_to_hpp(&f).unwrap(), h);
    }

    #[test]
    fn collision_names_the_pair() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let f = FccpInstance::new(g, vec![CoreClass::E1; 3], vec![(2, 0)]).unwrap();
        assert_eq!(fccp_to_hpp(&f), Err(ReductionError::Collision("2".into(), "0".into())));
    }

    #[test]
    fn pp_classes() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(pp_to_hpp(&g, &[1]).classes, vec![Tertiary, Primary, Tertiary]);
    }

    #[test]
    fn pep_pairs() {
        assert_eq!(pep_to_fccp(&cycle_pep(4, &[])).unwrap().pairs, vec![(0, 2), (1, 3)]);
        let f = pep_to_fccp(&cycle_pep(6, &[(0, 3)])).unwrap();
        assert_eq!(f.pairs.len(), 9);
        assert_eq!(f.classes[6], CoreClass::E2);
    }

    #[test]
    fn pep_rejects_a_path() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let rotation = vec![vec![0], vec![0, 1], vec![1]];
        assert_eq!(PepInstance::new(g, vec![0, 1], rotation), Err(ReductionError::NotBiconnected));
    }
}
