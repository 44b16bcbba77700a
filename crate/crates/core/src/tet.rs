//! Combinatorics of the model tetrahedron.
//!
//! Vertices are `0..4`; face `f` is the face opposite vertex `f`. Edges are numbered
//! `01, 02, 03, 12, 13, 23`. Quadrilateral type `q` separates vertex `0` and vertex
//! `q + 1` from the other two; octagon type `k` meets both edges that quad type `k`
//! misses twice and every other edge once.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Endpoints of each edge, lower vertex first.
pub const EDGES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

/// Index of the edge joining two distinct vertices.
pub fn edge_index(a: usize, b: usize) -> usize {
    debug_assert!(a != b && a < 4 && b < 4);
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        _ => 5,
    }
}

/// The edge opposite `e` (the one sharing no vertex with it).
pub fn opposite_edge(e: usize) -> usize {
    5 - e
}

/// The three vertices of face `f`, ascending.
pub fn face_vertices(f: usize) -> [usize; 3] {
    match f {
        0 => [1, 2, 3],
        1 => [0, 2, 3],
        2 => [0, 1, 3],
        _ => [0, 1, 2],
    }
}

/// Position of vertex `v` within `face_vertices(f)`.
pub fn slot_in_face(f: usize, v: usize) -> usize {
    debug_assert!(v != f);
    face_vertices(f).iter().position(|&w| w == v).unwrap()
}

/// The two faces containing edge `e`: those opposite the vertices not on `e`.
pub fn faces_of_edge(e: usize) -> [usize; 2] {
    EDGES[opposite_edge(e)]
}

/// For quad (or octagon) type `q`, the vertex on the same side as `v`.
pub fn partner(q: usize, v: usize) -> usize {
    let other = q + 1;
    match v {
        0 => other,
        x if x == other => 0,
        _ => (1..4).find(|&w| w != other && w != v).unwrap(),
    }
}

/// The quad type that puts `a` and `b` on the same side.
pub fn quad_pairing(a: usize, b: usize) -> usize {
    debug_assert!(a != b);
    if a == 0 {
        b - 1
    } else if b == 0 {
        a - 1
    } else {
        // a and b are both nonzero; 0 pairs with the remaining vertex.
        (1..4).find(|&w| w != a && w != b).unwrap() - 1
    }
}

/// Does quad type `q` cross edge `e`? (It misses exactly the two edges inside its sides.)
pub fn quad_crosses(q: usize, e: usize) -> bool {
    let [a, b] = EDGES[e];
    partner(q, a) != b
}

/// A permutation of `{0, 1, 2, 3}` stored as its image table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm4(pub [u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn from_images(images: [usize; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &i in &images {
            if i >= 4 || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm4(images.map(|i| i as u8)))
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn inverse(&self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &img) in self.0.iter().enumerate() {
            inv[img as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        Perm4(other.0.map(|i| self.0[i as usize]))
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i32 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn map_edge(&self, e: usize) -> usize {
        let [a, b] = EDGES[e];
        edge_index(self.apply(a), self.apply(b))
    }

    /// All 24 permutations in lexicographic order of image tables.
    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        if let Some(p) = Perm4::from_images([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_tables_are_consistent() {
        for (e, &[a, b]) in EDGES.iter().enumerate() {
            assert_eq!(edge_index(a, b), e);
            assert_eq!(edge_index(b, a), e);
            let [c, d] = EDGES[opposite_edge(e)];
            assert!(![a, b].contains(&c) && ![a, b].contains(&d));
            for f in faces_of_edge(e) {
                assert!(face_vertices(f).contains(&a) && face_vertices(f).contains(&b));
            }
        }
    }

    #[test]
    fn quad_sides() {
        // q0 = {0,1}|{2,3}, q1 = {0,2}|{1,3}, q2 = {0,3}|{1,2}
        assert_eq!(partner(0, 0), 1);
        assert_eq!(partner(0, 2), 3);
        assert_eq!(partner(1, 1), 3);
        assert_eq!(partner(2, 2), 1);
        for q in 0..3 {
            for v in 0..4 {
                let w = partner(q, v);
                assert_ne!(v, w);
                assert_eq!(partner(q, w), v);
                assert_eq!(quad_pairing(v, w), q);
            }
            let crossed = (0..6).filter(|&e| quad_crosses(q, e)).count();
            assert_eq!(crossed, 4);
        }
    }

    #[test]
    fn perm_group_laws() {
        let all = Perm4::all();
        assert_eq!(all.len(), 24);
        assert_eq!(all.iter().filter(|p| p.sign() == 1).count(), 12);
        for p in &all {
            assert_eq!(p.compose(&p.inverse()), Perm4::IDENTITY);
            for q in &all {
                assert_eq!(p.compose(q).sign(), p.sign() * q.sign());
            }
        }
    }
}
