//! Bottom-up pass over the SPQR-tree maintaining the bags of every node.

use std::collections::{BTreeMap, BTreeSet};

use crate::embedding::Embedding;
use crate::graph::{Dart, VertexId};
use crate::planarity::planar_embedding;
use crate::spqr::{NodeId, NodeKind, SpqrTree};
use crate::util::UnionFind;

use super::assoc::{Assoc, Loc, Orientation};
use super::bags::{merge_bags, Bag, BagSet};
use super::traversability::{child_edges, Traversability};

/// Stand-in vertex for everything outside the pertinent graph.
const OUT: VertexId = usize::MAX;

pub(crate) struct Pass<'a> {
    pub t: &'a SpqrTree,
    pub pert: &'a [Vec<bool>],
    pub order: &'a [NodeId],
    pub tr: &'a Traversability,
    /// Unordered pairs, deduplicated, endpoints not joined by a core edge.
    pub pairs: &'a [(VertexId, VertexId)],
    /// Cached skeleton embeddings of R-nodes.
    pub rigid: &'a BTreeMap<NodeId, Embedding>,
}

pub(crate) struct Outcome {
    pub positive: bool,
    pub trace: Vec<String>,
}

/// Bags of a processed child without the vertices whose pairs were all
/// settled elsewhere since.
fn take_child(bags: &mut [Option<BagSet>], c: NodeId, remaining: &[usize]) -> BagSet {
    let mut cb = bags[c].take().expect("children come first");
    cb.retain(|v| remaining[v] > 0);
    cb
}

/// Embedding of every R-node skeleton.
pub(crate) fn rigid_embeddings(t: &SpqrTree) -> BTreeMap<NodeId, Embedding> {
    (0..t.len())
        .filter(|&mu| t.node(mu).kind == NodeKind::R)
        .filter_map(|mu| {
            let (skel, _) = t.skeleton_graph(mu);
            planar_embedding(&skel).ok().flatten().map(|emb| (mu, emb))
        })
        .collect()
}

impl Pass<'_> {
    pub fn run(&self, tracing: bool) -> Outcome {
        let n = self.t.graph().vertex_count();
        let mut remaining = vec![0usize; n];
        let mut at_node: Vec<Vec<(VertexId, VertexId)>> = vec![Vec::new(); self.t.len()];
        let root = self.t.root();
        for &(x, y) in self.pairs {
            remaining[x] += 1;
            remaining[y] += 1;
            // the first node in post-order containing both is the lowest one
            let mu = self
                .order
                .iter()
                .copied()
                .find(|&mu| mu != root && self.pert[mu][x] && self.pert[mu][y])
                .expect("the child of the root contains every vertex");
            at_node[mu].push((x, y));
        }
        let mut bags: Vec<Option<BagSet>> = vec![None; self.t.len()];
        let mut trace = Vec::new();
        for &mu in self.order {
            if mu == root {
                continue;
            }
            let pairs = std::mem::take(&mut at_node[mu]);
            let result = match self.t.node(mu).kind {
                NodeKind::Q => Ok(self.process_q(mu, &pairs, &mut remaining)),
                NodeKind::S => self.process_s(mu, &pairs, &mut bags, &mut remaining),
                NodeKind::P => self.process_p(mu, &pairs, &mut bags, &mut remaining),
                NodeKind::R => self.process_r(mu, &pairs, &mut bags, &mut remaining),
            };
            let label = format!(
                "node {mu} {} {}",
                self.t.node(mu).kind,
                if self.tr.is_non_traversable(mu) { "non-traversable" } else { "traversable" }
            );
            match result {
                Ok(bs) => {
                    debug_assert!(self.partition_holds(mu, &bs, &remaining), "bags of node {mu} are not a partition");
                    if tracing {
                        trace.push(format!("{label} {}", bs.render(self.t.graph())));
                    }
                    bags[mu] = Some(bs);
                }
                Err(reason) => {
                    if tracing {
                        trace.push(format!("{label} negative: {reason}"));
                    }
                    return Outcome { positive: false, trace };
                }
            }
        }
        Outcome { positive: true, trace }
    }

    /// Bags hold exactly the vertices of the pertinent graph with a pair
    /// left, and a traversable node has no ordinary bag.
    fn partition_holds(&self, mu: NodeId, bs: &BagSet, remaining: &[usize]) -> bool {
        let expected: BTreeSet<VertexId> = (0..remaining.len())
            .filter(|&v| self.pert[mu][v] && remaining[v] > 0)
            .collect();
        let mut seen = 0;
        seen += bs.special.len();
        for b in &bs.bags {
            seen += b.s.len() + b.t.len();
        }
        let poles_special = self.t.node(mu).poles.iter().all(|&p| remaining[p] == 0 || bs.special.contains(&p));
        bs.vertices() == expected
            && seen == expected.len()
            && poles_special
            && (self.tr.is_non_traversable(mu) || bs.bags.is_empty())
    }

    fn process_q(&self, mu: NodeId, pairs: &[(VertexId, VertexId)], remaining: &mut [usize]) -> BagSet {
        let mut bs = BagSet::default();
        for p in self.t.node(mu).poles {
            if remaining[p] > 0 {
                bs.special.insert(p);
            }
        }
        for &(x, y) in pairs {
            merge_bags(&mut bs, x, y, remaining).expect("poles are special");
        }
        bs
    }

    fn process_s(
        &self,
        mu: NodeId,
        pairs: &[(VertexId, VertexId)],
        bags: &mut [Option<BagSet>],
        remaining: &mut [usize],
    ) -> Result<BagSet, String> {
        let mut bs = BagSet::default();
        for (_, c) in child_edges(self.t, mu) {
            let cb = take_child(bags, c, remaining);
            bs.special.extend(cb.special);
            bs.bags.extend(cb.bags);
        }
        if !self.tr.is_non_traversable(mu) {
            bs.flatten();
        }
        self.merge_all(&mut bs, pairs, remaining)?;
        Ok(bs)
    }

    fn merge_all(&self, bs: &mut BagSet, pairs: &[(VertexId, VertexId)], remaining: &mut [usize]) -> Result<(), String> {
        let g = self.t.graph();
        for &(x, y) in pairs {
            merge_bags(bs, x, y, remaining)
                .map_err(|c| format!("pair <{},{}> spans opposite pockets", g.name(c.x), g.name(c.y)))?;
        }
        Ok(())
    }

    fn process_p(
        &self,
        mu: NodeId,
        pairs: &[(VertexId, VertexId)],
        bags: &mut [Option<BagSet>],
        remaining: &mut [usize],
    ) -> Result<BagSet, String> {
        let blacks: Vec<NodeId> = child_edges(self.t, mu)
            .map(|(_, c)| c)
            .filter(|&c| self.tr.is_non_traversable(c))
            .collect();
        if blacks.len() >= 2 {
            return self.process_p_many(mu, pairs, bags, remaining);
        }
        let poles = self.t.node(mu).poles;
        let mut bs = BagSet::default();
        for (_, c) in child_edges(self.t, mu) {
            let cb = take_child(bags, c, remaining);
            if blacks.is_empty() || blacks[0] == c {
                bs.special.extend(cb.special);
                bs.bags.extend(cb.bags);
                continue;
            }
            let (at_poles, inner): (Vec<VertexId>, Vec<VertexId>) = cb.special.into_iter().partition(|v| poles.contains(v));
            bs.special.extend(at_poles);
            if !inner.is_empty() {
                bs.bags.push(Bag::new(inner, []));
            }
        }
        if blacks.is_empty() {
            bs.flatten();
        }
        self.merge_all(&mut bs, pairs, remaining)?;
        Ok(bs)
    }

    fn process_r(
        &self,
        mu: NodeId,
        pairs: &[(VertexId, VertexId)],
        bags: &mut [Option<BagSet>],
        remaining: &mut [usize],
    ) -> Result<BagSet, String> {
        let node = self.t.node(mu);
        let r = node.reference.unwrap();
        let non_traversable = self.tr.is_non_traversable(mu);
        let (_, globals) = self.t.skeleton_graph(mu);
        let emb = &self.rigid[&mu];
        let keep: Vec<bool> = (0..node.skeleton.len())
            .map(|i| {
                if i == r {
                    non_traversable
                } else {
                    node.child_at(i).is_some_and(|c| self.tr.is_non_traversable(c))
                }
            })
            .collect();
        let regions = emb.regions(&keep);
        let side = |i: usize, back: bool| regions.of_dart(Dart::new(i, back));
        let mut assoc = Assoc::new();
        let is_skel = |v: VertexId| globals.binary_search(&v).is_ok();
        for (l, &z) in globals.iter().enumerate() {
            assoc.place(z, Loc::Fixed(regions.of_vertex(l).to_vec()));
        }
        let mut candidates: BTreeSet<VertexId> = globals.iter().copied().collect();
        for (i, c) in child_edges(self.t, mu) {
            let cb = take_child(bags, c, remaining);
            candidates.extend(cb.vertices());
            if self.tr.is_non_traversable(c) {
                let faces = [side(i, false), side(i, true)];
                place_child(&mut assoc, cb, faces, &is_skel);
            } else {
                for v in cb.special.into_iter().filter(|&v| !is_skel(v)) {
                    assoc.place(v, Loc::Fixed(vec![side(i, false)]));
                }
            }
        }
        if !non_traversable {
            assoc.place(OUT, Loc::Fixed(vec![side(r, false)]));
        }
        let ends = non_traversable.then(|| [side(r, false), side(r, true)]);
        self.associate(assoc, pairs, candidates, ends, remaining)
    }

    /// Shared tail of the R-node and multi-black P-node cases: apply the
    /// pairs, the outward requirements, and assemble the bags.
    fn associate(
        &self,
        mut assoc: Assoc,
        pairs: &[(VertexId, VertexId)],
        candidates: BTreeSet<VertexId>,
        ends: Option<[usize; 2]>,
        remaining: &mut [usize],
    ) -> Result<BagSet, String> {
        let g = self.t.graph();
        for &(x, y) in pairs {
            assoc
                .require_shared(x, y)
                .map_err(|_| format!("pair <{},{}> cannot share a face", g.name(x), g.name(y)))?;
            remaining[x] -= 1;
            remaining[y] -= 1;
        }
        let outward: Vec<VertexId> = candidates.into_iter().filter(|&v| remaining[v] > 0).collect();
        for &x in &outward {
            let res = match ends {
                Some([a, b]) => assoc.require_on(x, &[a.min(b), a.max(b)]),
                None => assoc.require_shared(x, OUT),
            };
            res.map_err(|_| format!("vertex {} cannot reach the outer face", g.name(x)))?;
        }
        let solution = assoc.solve(ends).map_err(|e| format!("association failed: {e}"))?;
        let mut bs = BagSet::default();
        let Some([fl, fr]) = ends else {
            bs.special.extend(outward);
            return Ok(bs);
        };
        let mut main = Bag::default();
        let mut free: BTreeMap<usize, Bag> = BTreeMap::new();
        for x in outward {
            match assoc.loc(x).expect("outward vertices are located") {
                Loc::Fixed(fs) => match (fs.contains(&fl), fs.contains(&fr)) {
                    (true, true) => {
                        bs.special.insert(x);
                    }
                    (true, false) => {
                        main.s.insert(x);
                    }
                    (false, true) => {
                        main.t.insert(x);
                    }
                    (false, false) => unreachable!("checked by the outward requirement"),
                },
                &Loc::Pocket { item, t } => {
                    let (bag, face) = match solution[item] {
                        Orientation::Fixed(o) => (&mut main, assoc.pocket_face(item, t, o)),
                        Orientation::Free { component, relative } => {
                            (free.entry(component).or_default(), assoc.pocket_face(item, t, relative))
                        }
                    };
                    if face == fl {
                        bag.s.insert(x);
                    } else {
                        debug_assert_eq!(face, fr);
                        bag.t.insert(x);
                    }
                }
            }
        }
        if !main.is_empty() {
            bs.bags.push(main);
        }
        bs.bags.extend(free.into_values());
        Ok(bs)
    }

    fn process_p_many(
        &self,
        mu: NodeId,
        pairs: &[(VertexId, VertexId)],
        bags: &mut [Option<BagSet>],
        remaining: &mut [usize],
    ) -> Result<BagSet, String> {
        let node = self.t.node(mu);
        let k = node.skeleton.len();
        let r = node.reference.unwrap();
        let poles = node.poles;
        let non_traversable = self.tr.is_non_traversable(mu);
        let black: Vec<bool> = (0..k)
            .map(|i| {
                if i == r {
                    non_traversable
                } else {
                    node.child_at(i).is_some_and(|c| self.tr.is_non_traversable(c))
                }
            })
            .collect();
        let mut child_bags: BTreeMap<usize, BagSet> = BTreeMap::new();
        let mut owner: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut candidates: BTreeSet<VertexId> = poles.iter().copied().collect();
        for (i, c) in child_edges(self.t, mu) {
            let cb = take_child(bags, c, remaining);
            for v in cb.vertices() {
                candidates.insert(v);
                if !poles.contains(&v) {
                    owner.insert(v, i);
                }
            }
            child_bags.insert(i, cb);
        }
        let mut after = remaining.to_vec();
        for &(x, y) in pairs {
            after[x] -= 1;
            after[y] -= 1;
        }

        // auxiliary graph on skeleton edges; white groups contracted
        let mut groups = UnionFind::new(k);
        let mut links: Vec<(usize, usize)> = Vec::new();
        for &(x, y) in pairs {
            if let (Some(&a), Some(&b)) = (owner.get(&x), owner.get(&y)) {
                links.push((a, b));
            }
        }
        for &x in &candidates {
            if after[x] > 0 {
                if let Some(&a) = owner.get(&x) {
                    links.push((a, r));
                }
            }
        }
        for &(a, b) in &links {
            if !black[a] && !black[b] {
                groups.union(a, b);
            }
        }
        let mut reduced: BTreeMap<usize, BTreeSet<usize>> = (0..k).filter(|&i| black[i]).map(|i| (i, BTreeSet::new())).collect();
        let mut white_nbrs: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for i in (0..k).filter(|&i| !black[i]) {
            white_nbrs.entry(groups.find(i)).or_default();
        }
        for &(a, b) in &links {
            match (black[a], black[b]) {
                (true, true) => {
                    if a != b {
                        reduced.get_mut(&a).unwrap().insert(b);
                        reduced.get_mut(&b).unwrap().insert(a);
                    }
                }
                (true, false) => {
                    white_nbrs.get_mut(&groups.find(b)).unwrap().insert(a);
                }
                (false, true) => {
                    white_nbrs.get_mut(&groups.find(a)).unwrap().insert(b);
                }
                (false, false) => {}
            }
        }
        for nbrs in white_nbrs.values() {
            if nbrs.len() > 2 {
                return Err("a traversable group needs more than two non-traversable neighbours".into());
            }
            if let [a, b] = nbrs.iter().copied().collect::<Vec<_>>()[..] {
                reduced.get_mut(&a).unwrap().insert(b);
                reduced.get_mut(&b).unwrap().insert(a);
            }
        }
        let order = black_order(&reduced).ok_or("reduced auxiliary graph is neither a spanning cycle nor paths")?;

        // gaps between cyclically consecutive black edges are the faces
        let m = order.len();
        let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(p, &b)| (b, p)).collect();
        let faces_of = |b: usize| -> [usize; 2] {
            let p = pos[&b];
            [(p + m - 1) % m, p]
        };
        let all_gaps: Vec<usize> = (0..m).collect();
        let mut assoc = Assoc::new();
        for p in poles {
            assoc.place(p, Loc::Fixed(all_gaps.clone()));
        }
        let is_pole = |v: VertexId| poles.contains(&v);
        let mut members: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for (i, cb) in child_bags {
            if black[i] {
                place_child(&mut assoc, cb, faces_of(i), &is_pole);
            } else {
                members
                    .entry(groups.find(i))
                    .or_default()
                    .extend(cb.special.into_iter().filter(|&v| !is_pole(v)));
            }
        }
        if !non_traversable {
            members.entry(groups.find(r)).or_default().push(OUT);
        }
        for (group, vs) in members {
            let nbrs = &white_nbrs[&group];
            let mut cand = all_gaps.clone();
            for &b in nbrs {
                let f = faces_of(b);
                cand.retain(|g| f.contains(g));
            }
            let loc = match cand[..] {
                [] => return Err("neighbours of a traversable group share no gap".into()),
                [a, b] if !nbrs.is_empty() => Loc::Pocket {
                    item: assoc.add_item([a, b]),
                    t: false,
                },
                _ => Loc::Fixed(cand),
            };
            for v in vs {
                assoc.place(v, loc.clone());
            }
        }
        let ends = non_traversable.then(|| faces_of(r));
        self.associate(assoc, pairs, candidates, ends, remaining)
    }
}

/// Places the bags of a non-traversable child whose virtual edge separates
/// `faces`.
fn place_child(assoc: &mut Assoc, cb: BagSet, faces: [usize; 2], skip: &impl Fn(VertexId) -> bool) {
    let mut sorted = faces.to_vec();
    sorted.sort_unstable();
    for v in cb.special.into_iter().filter(|&v| !skip(v)) {
        assoc.place(v, Loc::Fixed(sorted.clone()));
    }
    for bag in cb.bags {
        let item = assoc.add_item(faces);
        for (pocket, t) in [(bag.s, false), (bag.t, true)] {
            for v in pocket.into_iter().filter(|&v| !skip(v)) {
                assoc.place(v, Loc::Pocket { item, t });
            }
        }
    }
}

/// Cyclic order of the black vertices: the spanning cycle from its smallest
/// vertex towards its smaller neighbour, or the paths by smallest vertex,
/// each from its smaller end.
fn black_order(adj: &BTreeMap<usize, BTreeSet<usize>>) -> Option<Vec<usize>> {
    if adj.values().any(|n| n.len() > 2) {
        return None;
    }
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    for &start in adj.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = vec![start];
        seen.insert(start);
        let mut k = 0;
        while k < comp.len() {
            for &w in &adj[&comp[k]] {
                if seen.insert(w) {
                    comp.push(w);
                }
            }
            k += 1;
        }
        components.push(comp);
    }
    let walk = |from: usize| {
        let mut path = vec![from];
        let mut prev = usize::MAX;
        let mut cur = from;
        while let Some(&next) = adj[&cur].iter().find(|&&w| w != prev && !path.contains(&w)) {
            path.push(next);
            prev = cur;
            cur = next;
        }
        path
    };
    let is_cycle = |comp: &[usize]| comp.len() >= 3 && comp.iter().all(|v| adj[v].len() == 2);
    if components.len() == 1 && is_cycle(&components[0]) {
        return Some(walk(*adj.keys().next().unwrap()));
    }
    let mut order = Vec::new();
    for comp in components {
        if is_cycle(&comp) {
            return None;
        }
        let start = comp.iter().copied().filter(|v| adj[v].len() <= 1).min().unwrap();
        order.extend(walk(start));
    }
    Some(order)
}
