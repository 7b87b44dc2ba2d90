//! Whether a node's poles are joined by core paths inside and outside its
//! pertinent graph.

use std::collections::VecDeque;

use crate::graph::{EdgeId, Graph, VertexId};
use crate::spqr::{NodeId, NodeKind, SkelLink, SpqrTree};

use super::CoreClass;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Traversability {
    pub inside: Vec<bool>,
    pub outside: Vec<bool>,
}

impl Traversability {
    /// An all-core cycle runs through both poles, inside and outside.
    pub fn is_non_traversable(&self, mu: NodeId) -> bool {
        self.inside[mu] && self.outside[mu]
    }
}

/// Bottom-up for `inside`, top-down for `outside`. The root counts its own
/// edge as inside and the rest of the graph as outside.
pub fn compute_traversability(t: &SpqrTree, classes: &[CoreClass]) -> Traversability {
    let n = t.len();
    let mut inside = vec![false; n];
    let mut outside = vec![false; n];
    let order = t.post_order();
    for &mu in &order {
        let node = t.node(mu);
        inside[mu] = if node.kind == NodeKind::Q {
            classes[node.real_edge().unwrap()] == CoreClass::E1
        } else {
            let r = node.reference.unwrap();
            let usable = |i: usize| i != r && node.child_at(i).is_some_and(|c| inside[c]);
            skeleton_connects(t, mu, node.poles, usable)
        };
    }
    let root = t.root();
    let top = t.node(root).children[0];
    outside[root] = inside[top];
    outside[top] = inside[root];
    for &mu in order.iter().rev() {
        let node = t.node(mu);
        if node.kind == NodeKind::Q {
            continue;
        }
        let r = node.reference.unwrap();
        for i in 0..node.skeleton.len() {
            let Some(child) = node.child_at(i) else { continue };
            let usable = |j: usize| {
                j != i
                    && if j == r {
                        outside[mu]
                    } else {
                        node.child_at(j).is_some_and(|c| inside[c])
                    }
            };
            outside[child] = skeleton_connects(t, mu, node.skeleton[i].ends, usable);
        }
    }
    Traversability { inside, outside }
}

fn skeleton_connects(t: &SpqrTree, mu: NodeId, ends: [VertexId; 2], usable: impl Fn(usize) -> bool) -> bool {
    let skel = &t.node(mu).skeleton;
    let mut seen = vec![ends[0]];
    let mut queue = VecDeque::from([ends[0]]);
    while let Some(v) = queue.pop_front() {
        if v == ends[1] {
            return true;
        }
        for (i, e) in skel.iter().enumerate() {
            if !usable(i) || !e.ends.contains(&v) {
                continue;
            }
            let w = if e.ends[0] == v { e.ends[1] } else { e.ends[0] };
            if !seen.contains(&w) {
                seen.push(w);
                queue.push_back(w);
            }
        }
    }
    false
}

/// Direct computation by one core-edge search per node and side.
pub fn naive_traversability(t: &SpqrTree, classes: &[CoreClass]) -> Traversability {
    let g = t.graph();
    let n = t.len();
    let mut inside = vec![false; n];
    let mut outside = vec![false; n];
    for mu in 0..n {
        let node = t.node(mu);
        let mut in_pert = vec![false; g.edge_count()];
        let pert = if mu == t.root() {
            vec![node.real_edge().unwrap()]
        } else {
            t.pertinent_edges(mu).unwrap()
        };
        for e in pert {
            in_pert[e] = true;
        }
        let core = |e: EdgeId| classes[e] == CoreClass::E1;
        inside[mu] = core_path(g, node.poles, |e| in_pert[e] && core(e));
        outside[mu] = core_path(g, node.poles, |e| !in_pert[e] && core(e));
    }
    Traversability { inside, outside }
}

fn core_path(g: &Graph, ends: [VertexId; 2], usable: impl Fn(EdgeId) -> bool) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    seen[ends[0]] = true;
    let mut stack = vec![ends[0]];
    while let Some(v) = stack.pop() {
        if v == ends[1] {
            return true;
        }
        for &e in g.incident(v) {
            let w = g.opposite(e, v);
            if usable(e) && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// Skeleton edges of `mu` that are virtual and lead to children.
pub(crate) fn child_edges(t: &SpqrTree, mu: NodeId) -> impl Iterator<Item = (usize, NodeId)> + '_ {
    let node = t.node(mu);
    (0..node.skeleton.len()).filter_map(move |i| match node.skeleton[i].link {
        SkelLink::Virtual { .. } => node.child_at(i).map(|c| (i, c)),
        SkelLink::Real(_) => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fccp::CoreClass::{E1, E2};

    #[test]
    fn c4_core_with_chord() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let t = SpqrTree::build(&g).unwrap();
        let classes = [E1, E1, E1, E1, E2];
        let tr = compute_traversability(&t, &classes);
        assert_eq!(tr, naive_traversability(&t, &classes));
        let chord = t.q_node(4);
        assert!(!tr.inside[chord]);
        assert!(!tr.is_non_traversable(chord));
        let path = t
            .nodes()
            .iter()
            .position(|n| n.kind == NodeKind::S && n.skeleton.iter().any(|e| e.ends.contains(&1)))
            .unwrap();
        assert!(tr.is_non_traversable(path));
    }
}
