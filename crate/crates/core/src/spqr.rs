//! SPQR-trees of biconnected graphs.
//!
//! Construction splits the graph recursively at separation pairs (found as
//! cut vertices of `G - a` for every vertex `a`), collapses parallel bundles
//! into bonds, and finally merges adjacent bonds and adjacent polygons. Every
//! real edge then gets its own Q-node, so skeletons only contain virtual
//! edges. The tree is rooted at a Q-node.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::embedding::Embedding;
use crate::error::SpqrError;
use crate::graph::{Dart, EdgeId, Graph, VertexId};
use crate::planarity::planar_embedding;
use crate::util::UnionFind;

pub type NodeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    S,
    P,
    Q,
    R,
}

impl std::fmt::Display for NodeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = match self {
            NodeKind::S => "S",
            NodeKind::P => "P",
            NodeKind::Q => "Q",
            NodeKind::R => "R",
        };
        f.write_str(c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SkelLink {
    /// The real edge held by a Q-node.
    Real(EdgeId),
    /// Virtual edge whose twin is edge `edge` of node `node`.
    Virtual { node: NodeId, edge: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkelEdge {
    pub ends: [VertexId; 2],
    pub link: SkelLink,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpqrNode {
    pub kind: NodeKind,
    pub skeleton: Vec<SkelEdge>,
    pub parent: Option<NodeId>,
    /// Skeleton index of the virtual edge towards the parent.
    pub reference: Option<usize>,
    /// Children in skeleton-edge order.
    pub children: Vec<NodeId>,
    pub poles: [VertexId; 2],
}

impl SpqrNode {
    pub fn skeleton_vertices(&self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self.skeleton.iter().flat_map(|e| e.ends).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Real edge of a Q-node.
    pub fn real_edge(&self) -> Option<EdgeId> {
        self.skeleton.iter().find_map(|e| match e.link {
            SkelLink::Real(r) => Some(r),
            _ => None,
        })
    }

    /// Child node behind skeleton edge `i`, if that edge is not the
    /// reference edge.
    pub fn child_at(&self, i: usize) -> Option<NodeId> {
        match self.skeleton[i].link {
            SkelLink::Virtual { node, .. } if Some(i) != self.reference => Some(node),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpqrTree {
    graph: Graph,
    nodes: Vec<SpqrNode>,
    root: NodeId,
    q_of_edge: Vec<NodeId>,
}

/// Canonical, root-independent description of one node.
pub type CanonicalNode = (NodeKind, Vec<(VertexId, VertexId, Option<EdgeId>)>);

pub fn build_spqr(g: &Graph) -> Result<SpqrTree, SpqrError> {
    SpqrTree::build(g)
}

pub fn reroot(t: &SpqrTree, q: NodeId) -> Result<SpqrTree, SpqrError> {
    t.reroot(q)
}

impl SpqrTree {
    /// Rooted at the Q-node of edge 0.
    pub fn build(g: &Graph) -> Result<Self, SpqrError> {
        Self::build_rooted(g, 0)
    }

    pub fn build_rooted(g: &Graph, root_edge: EdgeId) -> Result<Self, SpqrError> {
        if g.is_skeleton() || !g.is_biconnected() {
            return Err(SpqrError::NotBiconnected);
        }
        let comps = triconnected_components(g);
        let mut nodes: Vec<SpqrNode> = Vec::new();
        let mut q_of_edge = vec![usize::MAX; g.edge_count()];
        let mut virtual_at: BTreeMap<usize, Vec<(NodeId, usize)>> = BTreeMap::new();
        for comp in &comps {
            let id = nodes.len();
            let kind = match comp.kind {
                CompKind::Bond => NodeKind::P,
                CompKind::Polygon => NodeKind::S,
                CompKind::Rigid => NodeKind::R,
            };
            let mut skeleton = Vec::new();
            for (i, ce) in comp.edges.iter().enumerate() {
                if let Tag::Virtual(v) = ce.tag {
                    virtual_at.entry(v).or_default().push((id, i));
                }
                skeleton.push(SkelEdge {
                    ends: [ce.a, ce.b],
                    link: SkelLink::Virtual { node: usize::MAX, edge: 0 },
                });
            }
            nodes.push(SpqrNode {
                kind,
                skeleton,
                parent: None,
                reference: None,
                children: Vec::new(),
                poles: [0, 0],
            });
        }
        for pair in virtual_at.values() {
            let [(n1, e1), (n2, e2)] = [pair[0], pair[1]];
            nodes[n1].skeleton[e1].link = SkelLink::Virtual { node: n2, edge: e2 };
            nodes[n2].skeleton[e2].link = SkelLink::Virtual { node: n1, edge: e1 };
        }
        for (ci, comp) in comps.iter().enumerate() {
            for (i, ce) in comp.edges.iter().enumerate() {
                if let Tag::Real(e) = ce.tag {
                    let q = nodes.len();
                    q_of_edge[e] = q;
                    nodes[ci].skeleton[i].link = SkelLink::Virtual { node: q, edge: 1 };
                    nodes.push(SpqrNode {
                        kind: NodeKind::Q,
                        skeleton: vec![
                            SkelEdge {
                                ends: [ce.a, ce.b],
                                link: SkelLink::Real(e),
                            },
                            SkelEdge {
                                ends: [ce.a, ce.b],
                                link: SkelLink::Virtual { node: ci, edge: i },
                            },
                        ],
                        parent: None,
                        reference: None,
                        children: Vec::new(),
                        poles: [0, 0],
                    });
                }
            }
        }
        let mut tree = SpqrTree {
            graph: g.clone(),
            nodes,
            root: 0,
            q_of_edge,
        };
        let root = *tree.q_of_edge.get(root_edge).ok_or(SpqrError::NotQNode(usize::MAX))?;
        tree.orient(root);
        Ok(tree)
    }

    fn orient(&mut self, root: NodeId) {
        for node in &mut self.nodes {
            node.parent = None;
            node.reference = None;
            node.children.clear();
        }
        self.root = root;
        let mut visited = vec![false; self.nodes.len()];
        visited[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(mu) = queue.pop_front() {
            let mut children = Vec::new();
            for i in 0..self.nodes[mu].skeleton.len() {
                if let SkelLink::Virtual { node, edge } = self.nodes[mu].skeleton[i].link {
                    if !visited[node] {
                        visited[node] = true;
                        let child = &mut self.nodes[node];
                        child.parent = Some(mu);
                        child.reference = Some(edge);
                        child.poles = child.skeleton[edge].ends;
                        children.push(node);
                        queue.push_back(node);
                    }
                }
            }
            self.nodes[mu].children = children;
        }
        let r = &mut self.nodes[root];
        r.poles = r.skeleton[0].ends;
    }

    /// Same decomposition, rooted at Q-node `q`.
    pub fn reroot(&self, q: NodeId) -> Result<SpqrTree, SpqrError> {
        if self.nodes.get(q).map(|n| n.kind) != Some(NodeKind::Q) {
            return Err(SpqrError::NotQNode(q));
        }
        let mut t = self.clone();
        t.orient(q);
        Ok(t)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &SpqrNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[SpqrNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn q_node(&self, e: EdgeId) -> NodeId {
        self.q_of_edge[e]
    }

    pub fn q_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].kind == NodeKind::Q)
    }

    /// Skeleton index, inside `parent`, of the virtual edge leading to `child`.
    pub fn edge_to_child(&self, child: NodeId) -> Option<usize> {
        let c = &self.nodes[child];
        match c.skeleton[c.reference?].link {
            SkelLink::Virtual { edge, .. } => Some(edge),
            SkelLink::Real(_) => None,
        }
    }

    /// Children before parents, root last.
    pub fn post_order(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((mu, expanded)) = stack.pop() {
            if expanded {
                order.push(mu);
            } else {
                stack.push((mu, true));
                for &c in self.nodes[mu].children.iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        order
    }

    /// Real edges in the subtree of `mu`, sorted.
    pub fn pertinent_edges(&self, mu: NodeId) -> Result<Vec<EdgeId>, SpqrError> {
        if mu == self.root {
            return Err(SpqrError::RootPertinent);
        }
        let mut edges = Vec::new();
        let mut stack = vec![mu];
        while let Some(x) = stack.pop() {
            let node = &self.nodes[x];
            if node.kind == NodeKind::Q {
                edges.extend(node.real_edge());
            }
            stack.extend(node.children.iter().copied());
        }
        edges.sort_unstable();
        Ok(edges)
    }

    /// The pertinent graph of `mu` on the full vertex set, edges renumbered
    /// in increasing original order.
    pub fn pertinent_graph(&self, mu: NodeId) -> Result<Graph, SpqrError> {
        Ok(self.graph.edge_subgraph(self.pertinent_edges(mu)?).0)
    }

    /// Membership table of pertinent vertices for every non-root node.
    pub fn pertinent_vertex_sets(&self) -> Vec<Vec<bool>> {
        let n = self.graph.vertex_count();
        let mut sets = vec![Vec::new(); self.nodes.len()];
        for mu in self.post_order() {
            let mut set = vec![false; n];
            let node = &self.nodes[mu];
            for e in &node.skeleton {
                for v in e.ends {
                    set[v] = true;
                }
            }
            for &c in &node.children {
                for (v, &inside) in sets[c].iter().enumerate() {
                    set[v] |= inside;
                }
            }
            sets[mu] = set;
        }
        sets
    }

    /// Root-independent description: one entry per node, sorted.
    pub fn canonical_form(&self) -> Vec<CanonicalNode> {
        let mut form: Vec<CanonicalNode> = self
            .nodes
            .iter()
            .map(|n| {
                let mut edges: Vec<_> = n
                    .skeleton
                    .iter()
                    .map(|e| {
                        let real = match e.link {
                            SkelLink::Real(r) => Some(r),
                            SkelLink::Virtual { .. } => None,
                        };
                        (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1]), real)
                    })
                    .collect();
                edges.sort_unstable();
                (n.kind, edges)
            })
            .collect();
        form.sort();
        form
    }

    /// Skeleton as a multigraph on local vertex indices, plus the global id
    /// of each local vertex. Edge `i` is skeleton edge `i`.
    pub fn skeleton_graph(&self, mu: NodeId) -> (Graph, Vec<VertexId>) {
        let node = &self.nodes[mu];
        let globals = node.skeleton_vertices();
        let mut g = Graph::skeleton(globals.len());
        for e in &node.skeleton {
            let a = globals.binary_search(&e.ends[0]).unwrap();
            let b = globals.binary_search(&e.ends[1]).unwrap();
            g.add_edge(a, b).expect("skeleton endpoints are distinct");
        }
        (g, globals)
    }

    /// Checks the structural invariants of the tree; returns the first
    /// violation found.
    pub fn validate(&self) -> Result<(), String> {
        let mut seen_real = vec![0usize; self.graph.edge_count()];
        if self.nodes[self.root].kind != NodeKind::Q {
            return Err("root is not a Q-node".into());
        }
        for (id, node) in self.nodes.iter().enumerate() {
            let (skel, _) = self.skeleton_graph(id);
            match node.kind {
                NodeKind::Q => {
                    if node.skeleton.len() != 2 || !same_pair(&node.skeleton[0].ends, &node.skeleton[1].ends) {
                        return Err(format!("Q-node {id} is not two parallel edges"));
                    }
                    let e = node.real_edge().ok_or(format!("Q-node {id} without real edge"))?;
                    seen_real[e] += 1;
                    if !same_pair(&node.skeleton[0].ends, &self.graph.endpoints(e)) {
                        return Err(format!("Q-node {id} endpoints differ from edge {e}"));
                    }
                    if id != self.root && !node.children.is_empty() {
                        return Err(format!("Q-node {id} is not a leaf"));
                    }
                }
                NodeKind::S => {
                    let ok = node.skeleton.len() >= 3
                        && skel.vertices().all(|v| skel.degree(v) == 2)
                        && skel.is_connected()
                        && is_simple(&skel);
                    if !ok {
                        return Err(format!("S-node {id} is not a simple cycle of length >= 3"));
                    }
                }
                NodeKind::P => {
                    if node.skeleton.len() < 3 || skel.vertex_count() != 2 {
                        return Err(format!("P-node {id} is not a bundle of >= 3 parallel edges"));
                    }
                }
                NodeKind::R => {
                    if skel.vertex_count() < 4 || !is_simple(&skel) || !skel.is_connected() {
                        return Err(format!("R-node {id} skeleton is not simple"));
                    }
                    let edges: Vec<CEdge> = skel
                        .edges()
                        .iter()
                        .map(|&[a, b]| CEdge { a, b, tag: Tag::Virtual(0) })
                        .collect();
                    if !skel.is_biconnected() || find_split_pair(&edges).is_some() {
                        return Err(format!("R-node {id} skeleton is not triconnected"));
                    }
                }
            }
            if node.kind != NodeKind::Q && node.skeleton.iter().any(|e| matches!(e.link, SkelLink::Real(_))) {
                return Err(format!("node {id} holds a real edge"));
            }
            for (i, e) in node.skeleton.iter().enumerate() {
                if let SkelLink::Virtual { node: other, edge } = e.link {
                    let twin = self.nodes.get(other).and_then(|n| n.skeleton.get(edge));
                    let ok = twin.is_some_and(|t| {
                        t.link == SkelLink::Virtual { node: id, edge: i } && same_pair(&t.ends, &e.ends)
                    });
                    if !ok {
                        return Err(format!("virtual edge {i} of node {id} has no matching twin"));
                    }
                    let kinds = (node.kind, self.nodes[other].kind);
                    if kinds == (NodeKind::S, NodeKind::S) || kinds == (NodeKind::P, NodeKind::P) {
                        return Err(format!("adjacent {} nodes {id} and {other}", node.kind));
                    }
                }
            }
            if id != self.root {
                let parent = node.parent.ok_or(format!("node {id} unreachable from the root"))?;
                if !self.nodes[parent].children.contains(&id) {
                    return Err(format!("node {id} missing from its parent's children"));
                }
                let r = node.reference.ok_or(format!("node {id} without reference edge"))?;
                if node.poles != node.skeleton[r].ends {
                    return Err(format!("node {id} poles differ from its reference edge"));
                }
            }
        }
        if let Some(e) = seen_real.iter().position(|&c| c != 1) {
            return Err(format!("edge {e} is held by {} Q-nodes", seen_real[e]));
        }
        Ok(())
    }

    /// Text dump: one header per node followed by its skeleton edges.
    pub fn dump(&self) -> String {
        let g = &self.graph;
        let mut out = String::new();
        writeln!(out, "root {}", self.root).unwrap();
        for mu in self.post_order().into_iter().rev() {
            let node = &self.nodes[mu];
            let parent = node.parent.map_or("-".to_string(), |p| p.to_string());
            writeln!(
                out,
                "node {mu} {} poles {} {} parent {parent}",
                node.kind,
                g.name(node.poles[0]),
                g.name(node.poles[1])
            )
            .unwrap();
            for (i, e) in node.skeleton.iter().enumerate() {
                let target = match e.link {
                    SkelLink::Real(r) => format!("real {r}"),
                    SkelLink::Virtual { node: other, .. } if Some(i) == node.reference => format!("parent {other}"),
                    SkelLink::Virtual { node: other, .. } => format!("child {other}"),
                };
                writeln!(out, "  edge {i} {} {} {target}", g.name(e.ends[0]), g.name(e.ends[1])).unwrap();
            }
        }
        out
    }

    /// Every planar embedding of the graph, once per reflection class.
    /// Exponential in the number of R- and P-nodes; intended for small graphs.
    pub fn enumerate_planar_embeddings(&self) -> Vec<Embedding> {
        let mut choices: Vec<(NodeId, Vec<SkeletonRotation>)> = Vec::new();
        for (id, node) in self.nodes.iter().enumerate() {
            match node.kind {
                NodeKind::R => {
                    let (skel, globals) = self.skeleton_graph(id);
                    let Ok(Some(emb)) = planar_embedding(&skel) else {
                        return Vec::new();
                    };
                    let rot: SkeletonRotation = globals
                        .iter()
                        .enumerate()
                        .map(|(l, &v)| (v, emb.rotation(l).iter().map(|d| d.edge()).collect()))
                        .collect();
                    let mirrored = rot
                        .iter()
                        .map(|(&v, order)| (v, order.iter().rev().copied().collect()))
                        .collect();
                    choices.push((id, vec![rot, mirrored]));
                }
                NodeKind::P => {
                    let r = node.reference.unwrap_or(0);
                    let others: Vec<usize> = (0..node.skeleton.len()).filter(|&i| i != r).collect();
                    let [u, v] = node.skeleton[r].ends;
                    let options = permutations(&others)
                        .into_iter()
                        .map(|perm| {
                            let mut at_u = vec![r];
                            at_u.extend(&perm);
                            let mut at_v = vec![r];
                            at_v.extend(perm.iter().rev());
                            BTreeMap::from([(u, at_u), (v, at_v)])
                        })
                        .collect();
                    choices.push((id, options));
                }
                _ => {}
            }
        }
        let mut fixed: Vec<SkeletonRotation> = self
            .nodes
            .iter()
            .map(|node| {
                let mut rot: SkeletonRotation = BTreeMap::new();
                for (i, e) in node.skeleton.iter().enumerate() {
                    for v in e.ends {
                        rot.entry(v).or_default().push(i);
                    }
                }
                rot
            })
            .collect();
        let mut seen = BTreeSet::new();
        let mut result = Vec::new();
        let mut index = vec![0usize; choices.len()];
        loop {
            for (k, (id, options)) in choices.iter().enumerate() {
                fixed[*id] = options[index[k]].clone();
            }
            let emb = self.compose(&fixed);
            if seen.insert(emb.reflection_key()) {
                result.push(emb);
            }
            let mut k = 0;
            while k < index.len() {
                index[k] += 1;
                if index[k] < choices[k].1.len() {
                    break;
                }
                index[k] = 0;
                k += 1;
            }
            if k == index.len() {
                break;
            }
        }
        result
    }

    fn compose(&self, rot: &[SkeletonRotation]) -> Embedding {
        let g = &self.graph;
        let root = &self.nodes[self.root];
        let top = root.children[0];
        let root_edge = root.real_edge().expect("root is a Q-node");
        let mut rotation: Vec<Vec<Dart>> = vec![Vec::new(); g.vertex_count()];
        for v in g.endpoints(root_edge) {
            let mut darts = vec![g.dart_from(root_edge, v)];
            darts.extend(self.expand(rot, top, v));
            rotation[v] = darts;
        }
        for (id, node) in self.nodes.iter().enumerate() {
            if node.kind == NodeKind::Q || id == self.root {
                continue;
            }
            for (&v, order) in &rot[id] {
                if node.poles.contains(&v) {
                    continue;
                }
                rotation[v] = order.iter().flat_map(|&i| self.expand_edge(rot, id, i, v)).collect();
            }
        }
        Embedding::new(g.clone(), rotation).expect("composed rotation covers every edge")
    }

    fn expand(&self, rot: &[SkeletonRotation], mu: NodeId, v: VertexId) -> Vec<Dart> {
        let order = &rot[mu][&v];
        let r = self.nodes[mu].reference.expect("non-root node");
        let start = order.iter().position(|&i| i == r).expect("pole carries the reference edge");
        (1..order.len())
            .flat_map(|k| self.expand_edge(rot, mu, order[(start + k) % order.len()], v))
            .collect()
    }

    fn expand_edge(&self, rot: &[SkeletonRotation], mu: NodeId, i: usize, v: VertexId) -> Vec<Dart> {
        let child = self.nodes[mu].child_at(i).expect("non-reference skeleton edge");
        let c = &self.nodes[child];
        match c.kind {
            NodeKind::Q => vec![self.graph.dart_from(c.real_edge().unwrap(), v)],
            _ => self.expand(rot, child, v),
        }
    }
}

type SkeletonRotation = BTreeMap<VertexId, Vec<usize>>;

pub fn pertinent_graph(t: &SpqrTree, mu: NodeId) -> Result<Graph, SpqrError> {
    t.pertinent_graph(mu)
}

pub fn enumerate_planar_embeddings(t: &SpqrTree) -> Vec<Embedding> {
    t.enumerate_planar_embeddings()
}

fn same_pair(a: &[VertexId; 2], b: &[VertexId; 2]) -> bool {
    (a[0] == b[0] && a[1] == b[1]) || (a[0] == b[1] && a[1] == b[0])
}

fn is_simple(g: &Graph) -> bool {
    let mut pairs: Vec<_> = g.edges().iter().map(|&[a, b]| (a.min(b), a.max(b))).collect();
    pairs.sort_unstable();
    pairs.windows(2).all(|w| w[0] != w[1])
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tag {
    Real(EdgeId),
    Virtual(usize),
}

#[derive(Clone, Copy, Debug)]
struct CEdge {
    a: VertexId,
    b: VertexId,
    tag: Tag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CompKind {
    Bond,
    Polygon,
    Rigid,
}

#[derive(Clone, Debug)]
struct Component {
    kind: CompKind,
    edges: Vec<CEdge>,
}

fn triconnected_components(g: &Graph) -> Vec<Component> {
    let mut out = Vec::new();
    let mut next_virtual = 0;
    let mut work: Vec<Vec<CEdge>> = vec![g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &[a, b])| CEdge { a, b, tag: Tag::Real(e) })
        .collect()];
    while let Some(edges) = work.pop() {
        split_component(edges, &mut work, &mut out, &mut next_virtual);
    }
    merge_components(out)
}

fn split_component(edges: Vec<CEdge>, work: &mut Vec<Vec<CEdge>>, out: &mut Vec<Component>, next_virtual: &mut usize) {
    let mut bundles: BTreeMap<(VertexId, VertexId), Vec<CEdge>> = BTreeMap::new();
    for ce in &edges {
        bundles.entry((ce.a.min(ce.b), ce.a.max(ce.b))).or_default().push(*ce);
    }
    if bundles.len() == 1 {
        out.push(Component {
            kind: CompKind::Bond,
            edges,
        });
        return;
    }
    let mut simple = Vec::new();
    for ((a, b), mut group) in bundles {
        if group.len() == 1 {
            simple.push(group[0]);
        } else {
            let v = *next_virtual;
            *next_virtual += 1;
            group.push(CEdge { a, b, tag: Tag::Virtual(v) });
            out.push(Component {
                kind: CompKind::Bond,
                edges: group,
            });
            simple.push(CEdge { a, b, tag: Tag::Virtual(v) });
        }
    }
    let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
    for ce in &simple {
        *degree.entry(ce.a).or_default() += 1;
        *degree.entry(ce.b).or_default() += 1;
    }
    if degree.values().all(|&d| d == 2) {
        out.push(Component {
            kind: CompKind::Polygon,
            edges: simple,
        });
        return;
    }
    match find_split_pair(&simple) {
        Some((a, b, side)) => {
            let v = *next_virtual;
            *next_virtual += 1;
            let mut first = Vec::new();
            let mut second = Vec::new();
            for ce in simple {
                if side.contains(&ce.a) || side.contains(&ce.b) {
                    first.push(ce);
                } else {
                    second.push(ce);
                }
            }
            first.push(CEdge { a, b, tag: Tag::Virtual(v) });
            second.push(CEdge { a, b, tag: Tag::Virtual(v) });
            work.push(second);
            work.push(first);
        }
        None => out.push(Component {
            kind: CompKind::Rigid,
            edges: simple,
        }),
    }
}

/// A separation pair `{a, b}` of a simple biconnected graph together with the
/// vertices of one component of `G - {a, b}`.
fn find_split_pair(edges: &[CEdge]) -> Option<(VertexId, VertexId, BTreeSet<VertexId>)> {
    let mut globals: Vec<VertexId> = edges.iter().flat_map(|e| [e.a, e.b]).collect();
    globals.sort_unstable();
    globals.dedup();
    let n = globals.len();
    if n < 4 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for ce in edges {
        let a = globals.binary_search(&ce.a).unwrap();
        let b = globals.binary_search(&ce.b).unwrap();
        adj[a].push(b);
        adj[b].push(a);
    }
    for removed in 0..n {
        if let Some(cut) = first_cut_vertex(&adj, removed) {
            // component of G - {removed, cut} holding the smallest other vertex
            let start = (0..n).find(|&v| v != removed && v != cut).unwrap();
            let mut seen = vec![false; n];
            seen[start] = true;
            seen[removed] = true;
            seen[cut] = true;
            let mut stack = vec![start];
            let mut side = BTreeSet::from([globals[start]]);
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        side.insert(globals[w]);
                        stack.push(w);
                    }
                }
            }
            return Some((globals[removed], globals[cut], side));
        }
    }
    None
}

/// Smallest-discovery cut vertex of the graph with `removed` deleted.
fn first_cut_vertex(adj: &[Vec<usize>], removed: usize) -> Option<usize> {
    let n = adj.len();
    let root = if removed == 0 { 1 } else { 0 };
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    disc[removed] = usize::MAX - 1;
    disc[root] = 0;
    let mut time = 1;
    let mut root_children = 0;
    let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
    while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
        if *idx < adj[v].len() {
            let w = adj[v][*idx];
            *idx += 1;
            if w == removed || w == parent {
                continue;
            }
            if disc[w] == usize::MAX {
                disc[w] = time;
                low[w] = time;
                time += 1;
                if v == root {
                    root_children += 1;
                }
                stack.push((w, v, 0));
            } else {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[v]);
                if parent != root && low[v] >= disc[parent] {
                    return Some(parent);
                }
            }
        }
    }
    if root_children > 1 {
        Some(root)
    } else {
        None
    }
}

fn merge_components(comps: Vec<Component>) -> Vec<Component> {
    let mut owners: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, c) in comps.iter().enumerate() {
        for ce in &c.edges {
            if let Tag::Virtual(v) = ce.tag {
                owners.entry(v).or_default().push(i);
            }
        }
    }
    let mut uf = UnionFind::new(comps.len());
    let mut dissolved = BTreeSet::new();
    for (&v, pair) in &owners {
        let (a, b) = (pair[0], pair[1]);
        let (ka, kb) = (comps[a].kind, comps[b].kind);
        if ka == kb && ka != CompKind::Rigid {
            uf.union(a, b);
            dissolved.insert(v);
        }
    }
    let mut merged: BTreeMap<usize, Component> = BTreeMap::new();
    for (i, c) in comps.into_iter().enumerate() {
        let r = uf.find(i);
        let entry = merged.entry(r).or_insert_with(|| Component {
            kind: c.kind,
            edges: Vec::new(),
        });
        entry.edges.extend(
            c.edges
                .into_iter()
                .filter(|ce| !matches!(ce.tag, Tag::Virtual(v) if dissolved.contains(&v))),
        );
    }
    merged.into_values().collect()
}
