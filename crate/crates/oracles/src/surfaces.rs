//! Euler characteristic of a normal or almost normal surface by counting cells.

use crate::matching::paired;
use normalhst::normal::{SurfaceVector, TetCoords};
use normalhst::Triangulation;
use num_bigint::BigInt;
use num_traits::Zero;

/// Arcs cutting off `v` on face `f` of one tetrahedron.
pub fn arcs(c: &TetCoords, f: usize, v: usize) -> BigInt {
    let mut n = c.tri[v].clone();
    for k in 0..3 {
        if paired(k, f) == v {
            n += &c.quad[k];
        } else {
            n += &c.oct[k];
        }
    }
    n
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

/// Classes of tetrahedron edges `(t, a, b)` with `a < b`, indexed `16t + 4a + b`.
fn edge_classes(tri: &Triangulation) -> Vec<usize> {
    let n = tri.tetrahedron_count();
    let mut parent: Vec<usize> = (0..16 * n).collect();
    for t in 0..n {
        for f in 0..4 {
            let Some(g) = tri.gluing(t, f) else { continue };
            for a in 0..4 {
                for b in a + 1..4 {
                    if a == f || b == f {
                        continue;
                    }
                    let (x, y) = (g.perm.apply(a), g.perm.apply(b));
                    let there = 16 * g.tet + 4 * x.min(y) + x.max(y);
                    let (p, q) = (find(&mut parent, 16 * t + 4 * a + b), find(&mut parent, there));
                    parent[p] = q;
                }
            }
        }
    }
    (0..16 * n).map(|i| find(&mut parent, i)).collect()
}

/// `V - E + F` with vertices on edge classes, edges on faces and one face per piece.
pub fn euler_characteristic(tri: &Triangulation, s: &SurfaceVector) -> BigInt {
    let classes = edge_classes(tri);
    let mut vertices = BigInt::zero();
    let mut counted = std::collections::HashSet::new();
    for (t, c) in s.tets.iter().enumerate() {
        for a in 0..4 {
            for b in a + 1..4 {
                if counted.insert(classes[16 * t + 4 * a + b]) {
                    // Any face holding the edge sees every crossing.
                    let f = (0..4).find(|&f| f != a && f != b).unwrap();
                    vertices += arcs(c, f, a) + arcs(c, f, b);
                }
            }
        }
    }
    // Arcs on internal faces are seen from both sides.
    let mut doubled_edges = BigInt::zero();
    let mut pieces = BigInt::zero();
    for (t, c) in s.tets.iter().enumerate() {
        for f in 0..4 {
            let on_face: BigInt = (0..4).filter(|&v| v != f).map(|v| arcs(c, f, v)).sum();
            let sides = if tri.gluing(t, f).is_some() { 1 } else { 2 };
            doubled_edges += on_face * sides;
        }
        pieces += c.tri.iter().chain(&c.quad).chain(&c.oct).sum::<BigInt>();
    }
    vertices - doubled_edges / 2 + pieces
}

#[cfg(test)]
mod tests {
    use super::*;
    use normalhst::triangulation::examples::*;

    #[test]
    fn pieces_of_one_tetrahedron_are_disks() {
        let t = single_tetrahedron();
        for i in 0..10 {
            let mut s = SurfaceVector::zero(1);
            match i {
                0..4 => s.tets[0].tri[i] = 1.into(),
                4..7 => s.tets[0].quad[i - 4] = 1.into(),
                _ => s.tets[0].oct[i - 7] = 1.into(),
            }
            assert_eq!(euler_characteristic(&t, &s), 1.into());
        }
    }

    #[test]
    fn doubled_links_are_spheres() {
        let t = doubled_tetrahedron();
        let mut s = SurfaceVector::zero(2);
        s.tets[0].tri[2] = 1.into();
        s.tets[1].tri[2] = 1.into();
        assert_eq!(euler_characteristic(&t, &s), 2.into());
    }
}
