//! Facial-constrained core planarity for biconnected graphs.
//!
//! Edges are split into the core (`E1`) and the rest (`E2`). An instance is
//! positive when some planar embedding of the whole graph, restricted to the
//! core, puts the endpoints of every pair of `W` on a common face. A vertex
//! that loses all its edges lies inside exactly one face.

mod assoc;
pub mod bags;
mod process;
pub mod traversability;

use std::collections::BTreeMap;
use std::fmt;

use crate::embedding::Embedding;
use crate::error::FccpError;
use crate::graph::{EdgeId, Graph, VertexId};
use crate::planarity::is_planar;
use crate::spqr::{NodeId, SpqrTree};

pub use bags::{merge_bags, Bag, BagSet, MergeOutcome};
pub use traversability::{compute_traversability, naive_traversability, Traversability};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoreClass {
    E1,
    E2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    pub fn from_bool(yes: bool) -> Self {
        if yes {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_yes() { "YES" } else { "NO" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FccpInstance {
    pub graph: Graph,
    pub classes: Vec<CoreClass>,
    /// Unordered pairs; order and duplicates carry no meaning.
    pub pairs: Vec<(VertexId, VertexId)>,
}

impl FccpInstance {
    pub fn new(graph: Graph, classes: Vec<CoreClass>, pairs: Vec<(VertexId, VertexId)>) -> Result<Self, FccpError> {
        validate(&graph, &classes, &pairs)?;
        Ok(FccpInstance { graph, classes, pairs })
    }

    /// Edge mask of the core.
    pub fn core_mask(&self) -> Vec<bool> {
        self.classes.iter().map(|&c| c == CoreClass::E1).collect()
    }
}

fn validate(graph: &Graph, classes: &[CoreClass], pairs: &[(VertexId, VertexId)]) -> Result<(), FccpError> {
    if classes.len() != graph.edge_count() {
        return Err(FccpError::ClassCount {
            expected: graph.edge_count(),
            got: classes.len(),
        });
    }
    for &(x, y) in pairs {
        if let Some(v) = [x, y].into_iter().find(|&v| v >= graph.vertex_count()) {
            return Err(FccpError::UnknownVertex(v));
        }
        if x == y {
            return Err(FccpError::DegeneratePair(graph.name(x).to_string()));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Edge whose Q-node roots the SPQR-tree; the smallest edge otherwise.
    pub root: Option<EdgeId>,
    pub trace: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub verdict: Verdict,
    /// One line per processed node, then the final verdict reason.
    pub trace: Vec<String>,
}

/// Graph-dependent preprocessing, reusable across edge classes and pair
/// sets.
#[derive(Clone, Debug)]
pub struct FccpSolver {
    graph: Graph,
    prepared: Option<Prepared>,
}

#[derive(Clone, Debug)]
struct Prepared {
    tree: SpqrTree,
    pert: Vec<Vec<bool>>,
    order: Vec<NodeId>,
    rigid: BTreeMap<NodeId, Embedding>,
}

impl FccpSolver {
    pub fn new(g: &Graph) -> Result<Self, FccpError> {
        Self::rooted(g, 0)
    }

    pub fn rooted(g: &Graph, root_edge: EdgeId) -> Result<Self, FccpError> {
        if g.is_skeleton() || !g.is_biconnected() {
            return Err(FccpError::NotBiconnected);
        }
        if root_edge >= g.edge_count() {
            return Err(FccpError::BadRoot(root_edge));
        }
        let planar = is_planar(g).expect("biconnected graphs are connected");
        let prepared = planar.then(|| {
            let tree = SpqrTree::build_rooted(g, root_edge).expect("biconnected");
            Prepared {
                pert: tree.pertinent_vertex_sets(),
                order: tree.post_order(),
                rigid: process::rigid_embeddings(&tree),
                tree,
            }
        });
        Ok(FccpSolver {
            graph: g.clone(),
            prepared,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn is_planar(&self) -> bool {
        self.prepared.is_some()
    }

    /// `None` for non-planar graphs.
    pub fn tree(&self) -> Option<&SpqrTree> {
        self.prepared.as_ref().map(|p| &p.tree)
    }

    /// Same graph, tree rooted at the Q-node of `root_edge`.
    pub fn reroot(&self, root_edge: EdgeId) -> Result<Self, FccpError> {
        if root_edge >= self.graph.edge_count() {
            return Err(FccpError::BadRoot(root_edge));
        }
        let prepared = self.prepared.as_ref().map(|p| {
            let tree = p.tree.reroot(p.tree.q_node(root_edge)).expect("Q-node");
            Prepared {
                pert: tree.pertinent_vertex_sets(),
                order: tree.post_order(),
                rigid: p.rigid.clone(),
                tree,
            }
        });
        Ok(FccpSolver {
            graph: self.graph.clone(),
            prepared,
        })
    }

    pub fn solve(&self, classes: &[CoreClass], pairs: &[(VertexId, VertexId)]) -> Result<Verdict, FccpError> {
        self.solve_traced(classes, pairs, false).map(|s| s.verdict)
    }

    pub fn solve_traced(&self, classes: &[CoreClass], pairs: &[(VertexId, VertexId)], trace: bool) -> Result<Solution, FccpError> {
        validate(&self.graph, classes, pairs)?;
        let Some(p) = &self.prepared else {
            return Ok(Solution {
                verdict: Verdict::No,
                trace: vec!["graph is not planar".to_string()],
            });
        };
        let g = &self.graph;
        let mut wanted: Vec<(VertexId, VertexId)> = pairs
            .iter()
            .map(|&(x, y)| (x.min(y), x.max(y)))
            .filter(|&(x, y)| g.find_edge(x, y).is_none_or(|e| classes[e] != CoreClass::E1))
            .collect();
        wanted.sort_unstable();
        wanted.dedup();
        let tr = compute_traversability(&p.tree, classes);
        let pass = process::Pass {
            t: &p.tree,
            pert: &p.pert,
            order: &p.order,
            tr: &tr,
            pairs: &wanted,
            rigid: &p.rigid,
        };
        let outcome = pass.run(trace);
        Ok(Solution {
            verdict: Verdict::from_bool(outcome.positive),
            trace: outcome.trace,
        })
    }
}

pub fn solve_fccp(inst: &FccpInstance) -> Result<Verdict, FccpError> {
    solve_fccp_with(inst, &SolveOptions::default()).map(|s| s.verdict)
}

pub fn solve_fccp_with(inst: &FccpInstance, options: &SolveOptions) -> Result<Solution, FccpError> {
    let solver = FccpSolver::rooted(&inst.graph, options.root.unwrap_or(0))?;
    solver.solve_traced(&inst.classes, &inst.pairs, options.trace)
}
