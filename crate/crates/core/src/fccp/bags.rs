//! Bags of outward-constrained vertices.
//!
//! Every vertex of a bag set still has a pair leaving the pertinent graph of
//! the owning node. Special-bag vertices touch both faces next to the
//! reference edge; the two pockets of an ordinary bag touch opposite ones.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::graph::{Graph, VertexId};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bag {
    pub s: BTreeSet<VertexId>,
    pub t: BTreeSet<VertexId>,
}

impl Bag {
    pub fn new(s: impl IntoIterator<Item = VertexId>, t: impl IntoIterator<Item = VertexId>) -> Self {
        Bag {
            s: s.into_iter().collect(),
            t: t.into_iter().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty() && self.t.is_empty()
    }

    /// `Some(false)` for pocket S, `Some(true)` for pocket T.
    pub fn side_of(&self, v: VertexId) -> Option<bool> {
        if self.s.contains(&v) {
            Some(false)
        } else if self.t.contains(&v) {
            Some(true)
        } else {
            None
        }
    }

    fn pocket_mut(&mut self, t: bool) -> &mut BTreeSet<VertexId> {
        if t {
            &mut self.t
        } else {
            &mut self.s
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Place {
    Special,
    Pocket { bag: usize, t: bool },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BagSet {
    pub special: BTreeSet<VertexId>,
    pub bags: Vec<Bag>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MergeOutcome {
    Unchanged,
    Merged,
}

/// A pair whose endpoints sit in opposite pockets of one bag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub x: VertexId,
    pub y: VertexId,
}

impl BagSet {
    pub fn place(&self, v: VertexId) -> Option<Place> {
        if self.special.contains(&v) {
            return Some(Place::Special);
        }
        self.bags
            .iter()
            .enumerate()
            .find_map(|(bag, b)| b.side_of(v).map(|t| Place::Pocket { bag, t }))
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        let mut all = self.special.clone();
        for b in &self.bags {
            all.extend(&b.s);
            all.extend(&b.t);
        }
        all
    }

    pub fn is_empty(&self) -> bool {
        self.special.is_empty() && self.bags.iter().all(Bag::is_empty)
    }

    /// Drops `v` from wherever it sits, and the bag if it becomes empty.
    pub fn remove(&mut self, v: VertexId) {
        self.special.remove(&v);
        for b in &mut self.bags {
            b.s.remove(&v);
            b.t.remove(&v);
        }
        self.bags.retain(|b| !b.is_empty());
    }

    /// Keeps only vertices satisfying `keep`.
    pub fn retain(&mut self, keep: impl Fn(VertexId) -> bool) {
        self.special.retain(|&v| keep(v));
        for b in &mut self.bags {
            b.s.retain(|&v| keep(v));
            b.t.retain(|&v| keep(v));
        }
        self.bags.retain(|b| !b.is_empty());
    }

    /// Moves every vertex into the special bag.
    pub fn flatten(&mut self) {
        for b in std::mem::take(&mut self.bags) {
            self.special.extend(b.s);
            self.special.extend(b.t);
        }
    }

    pub fn render(&self, g: &Graph) -> String {
        let names = |set: &BTreeSet<VertexId>| set.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(",");
        let mut out = format!("special {{{}}}", names(&self.special));
        for b in &self.bags {
            write!(out, " bag {{{}}}|{{{}}}", names(&b.s), names(&b.t)).unwrap();
        }
        out
    }
}

/// Applies the effect of pair `x`,`y` on the bags, then retires the pair.
pub fn merge_bags(bs: &mut BagSet, x: VertexId, y: VertexId, remaining: &mut [usize]) -> Result<MergeOutcome, Conflict> {
    let outcome = merge_places(bs, x, y)?;
    retire_pair(bs, x, y, remaining);
    Ok(outcome)
}

fn merge_places(bs: &mut BagSet, x: VertexId, y: VertexId) -> Result<MergeOutcome, Conflict> {
    let (Some(Place::Pocket { bag: bx, t: tx }), Some(Place::Pocket { bag: by, t: ty })) = (bs.place(x), bs.place(y)) else {
        return Ok(MergeOutcome::Unchanged);
    };
    if bx == by {
        return if tx == ty { Ok(MergeOutcome::Unchanged) } else { Err(Conflict { x, y }) };
    }
    let (keep, gone, flip) = (bx.min(by), bx.max(by), tx != ty);
    let absorbed = bs.bags.remove(gone);
    let target = &mut bs.bags[keep];
    // pocket of x joins pocket of y; with `flip` S goes to T and back
    target.pocket_mut(flip).extend(absorbed.s);
    target.pocket_mut(!flip).extend(absorbed.t);
    Ok(MergeOutcome::Merged)
}

/// Removes one pair from the remaining counts and drops endpoints left
/// without pairs.
pub fn retire_pair(bs: &mut BagSet, x: VertexId, y: VertexId, remaining: &mut [usize]) {
    for v in [x, y] {
        remaining[v] -= 1;
        if remaining[v] == 0 {
            bs.remove(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> BagSet {
        BagSet {
            special: BTreeSet::from([4]),
            bags: vec![Bag::new([1], [5]), Bag::new([2], [3]), Bag::new([6], [])],
        }
    }

    #[test]
    fn special_member_leaves_bags_alone() {
        let mut bs = sample();
        let mut rem = vec![2; 8];
        assert_eq!(merge_bags(&mut bs, 4, 6, &mut rem), Ok(MergeOutcome::Unchanged));
        assert_eq!(bs.bags, sample().bags);
        assert_eq!(rem[4], 1);
    }

    #[test]
    fn distinct_bags_merge() {
        let mut bs = sample();
        let mut rem = vec![2; 8];
        assert_eq!(merge_bags(&mut bs, 2, 5, &mut rem), Ok(MergeOutcome::Merged));
        assert_eq!(bs.bags.len(), 2);
        assert_eq!(bs.bags[0], Bag::new([1, 3], [5, 2]));
    }

    #[test]
    fn opposite_pockets_conflict() {
        let mut bs = sample();
        let mut rem = vec![2; 8];
        assert_eq!(merge_bags(&mut bs, 1, 5, &mut rem), Err(Conflict { x: 1, y: 5 }));
    }

    #[test]
    fn last_pair_purges_vertices() {
        let mut bs = sample();
        let mut rem = vec![1; 8];
        merge_bags(&mut bs, 6, 4, &mut rem).unwrap();
        assert!(bs.special.is_empty());
        assert_eq!(bs.bags.len(), 2);
        assert_eq!(bs.place(6), None);
    }
}
