//! Association of pockets with the faces of a fixed skeleton embedding.
//!
//! Each item is a pair of pockets that must land on its two faces, in one of
//! two orientations. Orientation 0 puts pocket S on `faces[0]`. Pairs become
//! unary constraints (a vertex at a fixed set of faces), parity constraints
//! (two items sharing both faces), or forced orientations (sharing one).

use std::collections::HashMap;

use crate::graph::VertexId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Loc {
    /// Incident to every face in the (sorted) list.
    Fixed(Vec<usize>),
    Pocket { item: usize, t: bool },
}

#[derive(Clone, Debug)]
pub(crate) struct Assoc {
    faces: Vec<[usize; 2]>,
    locs: HashMap<VertexId, Loc>,
    /// Allowed orientations per item: bit 0 for orientation 0, bit 1 for 1.
    domain: Vec<u8>,
    parity: Vec<(usize, usize, bool)>,
}

/// Orientation of an item, or its free component together with the
/// orientation relative to the component representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Orientation {
    Fixed(bool),
    Free { component: usize, relative: bool },
}

impl Assoc {
    pub fn new() -> Self {
        Assoc {
            faces: Vec::new(),
            locs: HashMap::new(),
            domain: Vec::new(),
            parity: Vec::new(),
        }
    }

    pub fn add_item(&mut self, faces: [usize; 2]) -> usize {
        debug_assert_ne!(faces[0], faces[1]);
        self.faces.push(faces);
        self.domain.push(0b11);
        self.faces.len() - 1
    }

    pub fn place(&mut self, v: VertexId, loc: Loc) {
        self.locs.insert(v, loc);
    }

    pub fn loc(&self, v: VertexId) -> Option<&Loc> {
        self.locs.get(&v)
    }

    fn face_of(&self, item: usize, t: bool, orientation: bool) -> usize {
        self.faces[item][(t ^ orientation) as usize]
    }

    /// `v` must end up on one of `allowed` (sorted).
    pub fn require_on(&mut self, v: VertexId, allowed: &[usize]) -> Result<(), String> {
        match self.locs.get(&v).cloned() {
            Some(Loc::Fixed(fs)) => {
                if fs.iter().any(|f| allowed.binary_search(f).is_ok()) {
                    Ok(())
                } else {
                    Err(format!("vertex {v} touches none of the required faces"))
                }
            }
            Some(Loc::Pocket { item, t }) => {
                let mut mask = 0;
                for o in [false, true] {
                    if allowed.binary_search(&self.face_of(item, t, o)).is_ok() {
                        mask |= 1 << o as u8;
                    }
                }
                self.restrict(item, mask)
            }
            None => Ok(()),
        }
    }

    /// `x` and `y` must share a face.
    pub fn require_shared(&mut self, x: VertexId, y: VertexId) -> Result<(), String> {
        let (Some(lx), Some(ly)) = (self.locs.get(&x).cloned(), self.locs.get(&y).cloned()) else {
            return Ok(());
        };
        match (lx, ly) {
            (Loc::Fixed(a), Loc::Fixed(b)) => {
                if a.iter().any(|f| b.binary_search(f).is_ok()) {
                    Ok(())
                } else {
                    Err(format!("vertices {x} and {y} share no face"))
                }
            }
            (Loc::Fixed(a), Loc::Pocket { .. }) => self.require_on(y, &a),
            (Loc::Pocket { .. }, Loc::Fixed(b)) => self.require_on(x, &b),
            (Loc::Pocket { item: i, t: ti }, Loc::Pocket { item: j, t: tj }) => {
                if i == j {
                    return if ti == tj {
                        Ok(())
                    } else {
                        Err(format!("vertices {x} and {y} lie in opposite pockets"))
                    };
                }
                let mut allowed = Vec::new();
                for oi in [false, true] {
                    for oj in [false, true] {
                        if self.face_of(i, ti, oi) == self.face_of(j, tj, oj) {
                            allowed.push((oi, oj));
                        }
                    }
                }
                match allowed[..] {
                    [] => Err(format!("pockets of {x} and {y} share no face")),
                    [(oi, oj)] => {
                        self.restrict(i, 1 << oi as u8)?;
                        self.restrict(j, 1 << oj as u8)
                    }
                    [(oi, oj), _] => {
                        self.parity.push((i, j, oi ^ oj));
                        Ok(())
                    }
                    _ => unreachable!("faces of an item are distinct"),
                }
            }
        }
    }

    fn restrict(&mut self, item: usize, mask: u8) -> Result<(), String> {
        self.domain[item] &= mask;
        if self.domain[item] == 0 {
            Err(format!("no orientation left for item {item}"))
        } else {
            Ok(())
        }
    }

    /// Resolves all constraints. Components whose items all sit on
    /// `deferred` stay free; every other unforced component takes
    /// orientation 0 at its smallest item.
    pub fn solve(&self, deferred: Option<[usize; 2]>) -> Result<Vec<Orientation>, String> {
        let n = self.faces.len();
        let mut parent: Vec<usize> = (0..n).collect();
        let mut rel = vec![false; n];
        fn find(parent: &mut [usize], rel: &mut [bool], x: usize) -> (usize, bool) {
            let mut path = Vec::new();
            let mut r = x;
            while parent[r] != r {
                path.push(r);
                r = parent[r];
            }
            // path compression keeping parities relative to the root
            let mut acc = false;
            for &p in path.iter().rev() {
                acc ^= rel[p];
                rel[p] = acc;
                parent[p] = r;
            }
            (r, if x == r { false } else { rel[x] })
        }
        for &(i, j, p) in &self.parity {
            let (ri, pi) = find(&mut parent, &mut rel, i);
            let (rj, pj) = find(&mut parent, &mut rel, j);
            if ri == rj {
                if pi ^ pj != p {
                    return Err(format!("odd parity cycle through items {i} and {j}"));
                }
            } else {
                let (keep, drop) = (ri.min(rj), ri.max(rj));
                parent[drop] = keep;
                rel[drop] = pi ^ pj ^ p;
            }
        }
        let mut root_domain = vec![0b11u8; n];
        let mut root_of = vec![0; n];
        let mut rel_of = vec![false; n];
        for i in 0..n {
            let (r, p) = find(&mut parent, &mut rel, i);
            root_of[i] = r;
            rel_of[i] = p;
            // orientation of i is root orientation xor p
            let shifted = if p { ((self.domain[i] & 1) << 1) | (self.domain[i] >> 1) } else { self.domain[i] };
            root_domain[r] &= shifted;
        }
        let deferred_sorted = deferred.map(|[a, b]| [a.min(b), a.max(b)]);
        let mut all_deferred = vec![deferred_sorted.is_some(); n];
        for i in 0..n {
            let [a, b] = self.faces[i];
            if Some([a.min(b), a.max(b)]) != deferred_sorted {
                all_deferred[root_of[i]] = false;
            }
        }
        let mut result = Vec::with_capacity(n);
        for i in 0..n {
            let r = root_of[i];
            let o = match root_domain[r] {
                0 => return Err(format!("no orientation left for the component of item {i}")),
                0b01 => Orientation::Fixed(rel_of[i]),
                0b10 => Orientation::Fixed(!rel_of[i]),
                _ if all_deferred[r] => Orientation::Free {
                    component: r,
                    relative: rel_of[i],
                },
                _ => Orientation::Fixed(rel_of[i]),
            };
            result.push(o);
        }
        Ok(result)
    }

    /// Face of a pocket under a fixed orientation.
    pub fn pocket_face(&self, item: usize, t: bool, orientation: bool) -> usize {
        self.face_of(item, t, orientation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shared_single_face_forces_both() {
        let mut a = Assoc::new();
        let i = a.add_item([0, 1]);
        let j = a.add_item([1, 2]);
        a.place(10, Loc::Pocket { item: i, t: false });
        a.place(11, Loc::Pocket { item: j, t: false });
        a.require_shared(10, 11).unwrap();
        let sol = a.solve(None).unwrap();
        assert_eq!(sol, vec![Orientation::Fixed(true), Orientation::Fixed(false)]);
    }

    #[test]
    fn conflicting_forces_are_negative() {
        let mut a = Assoc::new();
        let i = a.add_item([0, 1]);
        a.place(10, Loc::Pocket { item: i, t: false });
        a.place(11, Loc::Fixed(vec![0, 2]));
        a.place(12, Loc::Fixed(vec![1, 2]));
        a.require_shared(10, 11).unwrap();
        assert!(a.require_shared(10, 12).is_err());
    }

    #[test]
    fn parity_component_stays_free_on_deferred_faces() {
        let mut a = Assoc::new();
        let i = a.add_item([3, 4]);
        let j = a.add_item([4, 3]);
        a.place(1, Loc::Pocket { item: i, t: false });
        a.place(2, Loc::Pocket { item: j, t: true });
        a.require_shared(1, 2).unwrap();
        let sol = a.solve(Some([3, 4])).unwrap();
        assert_eq!(sol[0], Orientation::Free { component: 0, relative: false });
        assert_eq!(sol[1], Orientation::Free { component: 0, relative: false });
        let sol = a.solve(None).unwrap();
        assert_eq!(sol, vec![Orientation::Fixed(false), Orientation::Fixed(false)]);
    }

    #[test]
    fn odd_parity_cycle_is_negative() {
        let mut a = Assoc::new();
        let items: Vec<usize> = (0..3).map(|_| a.add_item([0, 1])).collect();
        for (k, &it) in items.iter().enumerate() {
            a.place(10 + k, Loc::Pocket { item: it, t: false });
            a.place(20 + k, Loc::Pocket { item: it, t: true });
        }
        a.require_shared(10, 11).unwrap();
        a.require_shared(11, 12).unwrap();
        a.require_shared(12, 20).unwrap();
        assert!(a.solve(None).is_err());
    }
}
