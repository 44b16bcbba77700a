//! Enumeration of normal surfaces.
//!
//! Two independent routes: extreme rays of the matching cone by double description,
//! and a bounded lattice search by backtracking. Both are exact and deterministic.

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::normal::{
    matching_system_with, reconstruct_surface, MatchingSystem, SurfaceVector,
};
use crate::tet::partner;
use crate::triangulation::{compute_skeleton, Triangulation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// The matching cone and its extreme rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionCone {
    pub system: MatchingSystem,
    /// Primitive extreme rays in lexicographic order.
    pub rays: Vec<Vec<BigInt>>,
    /// Whether each ray satisfies the quad constraint.
    pub admissible: Vec<bool>,
}

#[derive(Clone)]
struct Ray {
    coords: Vec<BigInt>,
    zeros: Vec<u64>,
}

impl Ray {
    fn new(coords: Vec<BigInt>) -> Ray {
        let mut zeros = vec![0u64; coords.len().div_ceil(64)];
        for (i, x) in coords.iter().enumerate() {
            if x.is_zero() {
                zeros[i / 64] |= 1 << (i % 64);
            }
        }
        Ray { coords, zeros }
    }
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

fn contains(sup: &[u64], sub: &[u64]) -> bool {
    sup.iter().zip(sub).all(|(a, b)| a & b == *b)
}

/// Extreme rays of `{x >= 0, Ax = 0}` by incremental double description.
pub fn solution_cone(tri: &Triangulation, limits: &Limits) -> Result<SolutionCone> {
    let sk = compute_skeleton(tri);
    let system = matching_system_with(tri, &sk);
    let n = system.unknowns;
    let mut rays: Vec<Ray> = (0..n)
        .map(|i| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::from(1);
            Ray::new(v)
        })
        .collect();

    let mut order: Vec<usize> = (0..system.rows.len()).collect();
    let support = |r: usize| system.rows[r].coefficients.iter().filter(|c| **c != 0).count();
    order.sort_by_key(|&r| (support(r), r));

    for r in order {
        let row = &system.rows[r].coefficients;
        if row.iter().all(|c| *c == 0) {
            continue;
        }
        let value = |ray: &Ray| -> BigInt {
            row.iter()
                .zip(&ray.coords)
                .filter(|(c, _)| **c != 0)
                .map(|(c, x)| x * BigInt::from(*c))
                .sum()
        };
        let values: Vec<BigInt> = rays.iter().map(value).collect();
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for (i, v) in values.iter().enumerate() {
            if v.is_positive() {
                pos.push(i);
            } else if v.is_negative() {
                neg.push(i);
            } else {
                next.push(rays[i].clone());
            }
        }
        for &p in &pos {
            for &q in &neg {
                let common: Vec<u64> = rays[p].zeros.iter().zip(&rays[q].zeros).map(|(a, b)| a & b).collect();
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, other)| k != p && k != q && contains(&other.zeros, &common));
                if blocked {
                    continue;
                }
                let (vp, vq) = (&values[p], -&values[q]);
                let combined: Vec<BigInt> = rays[p]
                    .coords
                    .iter()
                    .zip(&rays[q].coords)
                    .map(|(x, y)| y * vp + x * &vq)
                    .collect();
                next.push(Ray::new(primitive(combined)));
                if next.len() > limits.max_rays {
                    return Err(Error::ceiling("rays", limits.max_rays));
                }
            }
        }
        rays = next;
    }

    let mut rays: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.coords).collect();
    rays.sort();
    let admissible = rays.iter().map(|r| quad_admissible(r)).collect();
    Ok(SolutionCone { system, rays, admissible })
}

fn quad_admissible(coords: &[BigInt]) -> bool {
    coords
        .chunks(7)
        .all(|c| c[4..7].iter().filter(|x| !x.is_zero()).count() <= 1)
}

/// Quad-admissible vertex surfaces, in lexicographic order.
pub fn enumerate_vertex_surfaces(tri: &Triangulation, limits: &Limits) -> Result<Vec<SurfaceVector>> {
    let cone = solution_cone(tri, limits)?;
    Ok(cone
        .rays
        .iter()
        .zip(&cone.admissible)
        .filter(|(_, ok)| **ok)
        .map(|(r, _)| SurfaceVector::from_normal_coords(r))
        .collect())
}

/// A linear constraint `coefficients . x + constant = 0`.
struct Constraint {
    coefficients: Vec<i64>,
    constant: i64,
}

/// Backtracking over the `7n` triangle/quad coordinates in order, with sum at most
/// `bound`. Each equation is checked, and its last variable solved for, once every
/// other variable in it has a value.
struct LatticeSearch<'a> {
    n: usize,
    bound: u64,
    constraints: &'a [Constraint],
    closing: Vec<Vec<usize>>,
    forced_zero: Vec<bool>,
    max_results: usize,
    values: Vec<i64>,
    out: Vec<Vec<i64>>,
}

impl LatticeSearch<'_> {
    fn run(&mut self, j: usize, remaining: u64) -> Result<()> {
        if j == self.n {
            self.out.push(self.values.clone());
            if self.out.len() > self.max_results {
                return Err(Error::ceiling("results", self.max_results));
            }
            return Ok(());
        }
        let quad_blocked = j % 7 >= 4 && (7 * (j / 7) + 4..j).any(|k| self.values[k] != 0);
        let max = if self.forced_zero[j] || quad_blocked { 0 } else { remaining as i64 };

        let mut forced: Option<i64> = None;
        for &r in &self.closing[j] {
            let c = &self.constraints[r];
            let rest: i64 = c.constant
                + (0..j).map(|k| c.coefficients[k] * self.values[k]).sum::<i64>();
            let a = c.coefficients[j];
            if rest % a != 0 {
                return Ok(());
            }
            let x = -rest / a;
            match forced {
                Some(y) if y != x => return Ok(()),
                _ => forced = Some(x),
            }
        }
        let candidates = match forced {
            Some(x) if (0..=max).contains(&x) => x..=x,
            Some(_) => return Ok(()),
            None => 0..=max,
        };
        for x in candidates {
            self.values[j] = x;
            self.run(j + 1, remaining - x as u64)?;
        }
        self.values[j] = 0;
        Ok(())
    }
}

fn lattice_search(
    n: usize,
    constraints: &[Constraint],
    bound: u64,
    forced_zero: Vec<bool>,
    limits: &Limits,
) -> Result<Vec<Vec<i64>>> {
    let mut closing = vec![Vec::new(); n];
    for (r, c) in constraints.iter().enumerate() {
        match c.coefficients.iter().rposition(|x| *x != 0) {
            Some(last) => closing[last].push(r),
            None if c.constant != 0 => return Ok(Vec::new()),
            None => {}
        }
    }
    let mut search = LatticeSearch {
        n,
        bound,
        constraints,
        closing,
        forced_zero,
        max_results: limits.max_results,
        values: vec![0; n],
        out: Vec::new(),
    };
    search.run(0, search.bound)?;
    Ok(search.out)
}

fn check_bound(bound: u64, limits: &Limits) -> Result<()> {
    if bound > limits.max_bound {
        return Err(Error::ceiling("bound", limits.max_bound));
    }
    Ok(())
}

/// All quad-admissible normal vectors with coordinate sum at most `bound`.
pub fn brute_force_enumerate(tri: &Triangulation, bound: u64, limits: &Limits) -> Result<Vec<SurfaceVector>> {
    check_bound(bound, limits)?;
    let system = crate::normal::matching_system(tri);
    let constraints: Vec<Constraint> = system
        .rows
        .iter()
        .map(|r| Constraint { coefficients: r.coefficients.clone(), constant: 0 })
        .collect();
    let found = lattice_search(system.unknowns, &constraints, bound, vec![false; system.unknowns], limits)?;
    let mut out: Vec<SurfaceVector> = found
        .into_iter()
        .map(|v| SurfaceVector::from_normal_coords(&v.into_iter().map(BigInt::from).collect::<Vec<_>>()))
        .collect();
    out.sort();
    Ok(out)
}

/// Almost normal vectors with exactly one octagon and coordinate sum at most `bound`
/// (the octagon included).
///
/// For each choice of tetrahedron and octagon type, the octagon's arcs enter the
/// matching equations as constants and the normal part is solved for. Adding an
/// octagon to a vector that already matches can never match again across a glued face,
/// so the octagon has to be accounted for in the equations themselves.
pub fn enumerate_octagon_surfaces(tri: &Triangulation, bound: u64, limits: &Limits) -> Result<Vec<SurfaceVector>> {
    check_bound(bound, limits)?;
    if bound == 0 {
        return Ok(Vec::new());
    }
    let system = crate::normal::matching_system(tri);
    let n = system.unknowns;
    let mut out = Vec::new();
    for t in 0..tri.tetrahedron_count() {
        for k in 0..3 {
            let octagon_arcs = |tet: usize, f: usize, v: usize| i64::from(tet == t && partner(k, f) != v);
            let constraints: Vec<Constraint> = system
                .rows
                .iter()
                .map(|r| {
                    let g = tri.gluing(r.tet, r.face).expect("rows come from glued faces");
                    let constant = octagon_arcs(r.tet, r.face, r.vertex)
                        - octagon_arcs(g.tet, g.face, g.perm.apply(r.vertex));
                    Constraint { coefficients: r.coefficients.clone(), constant }
                })
                .collect();
            let mut forced_zero = vec![false; n];
            for q in 0..3 {
                forced_zero[7 * t + 4 + q] = true;
            }
            for v in lattice_search(n, &constraints, bound - 1, forced_zero, limits)? {
                let mut s = SurfaceVector::from_normal_coords(&v.into_iter().map(BigInt::from).collect::<Vec<_>>());
                s.tets[t].oct[k] = BigInt::from(1);
                out.push(s);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Which candidate set a sphere search runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Search {
    Vertex,
    Brute(u64),
}

/// Candidates from `search` that reconstruct to a single 2-sphere. Complete only
/// relative to the candidate set.
pub fn find_connected_chi2(tri: &Triangulation, search: Search, limits: &Limits) -> Result<Vec<SurfaceVector>> {
    let candidates = match search {
        Search::Vertex => enumerate_vertex_surfaces(tri, limits)?,
        Search::Brute(bound) => brute_force_enumerate(tri, bound, limits)?,
    };
    let mut out = Vec::new();
    for v in candidates {
        if reconstruct_surface(tri, &v, limits)?.summary.is_connected_sphere() {
            out.push(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::{check_admissible, classify, vertex_link, Classification, SurfaceMode};
    use crate::triangulation::examples::*;

    #[test]
    fn single_tetrahedron_rays_are_units() {
        let rays = enumerate_vertex_surfaces(&single_tetrahedron(), &Limits::default()).unwrap();
        assert_eq!(rays.len(), 7);
        assert!(rays.iter().all(|r| r.coordinate_sum() == BigInt::from(1)));
    }

    #[test]
    fn brute_force_small_bounds() {
        let l = Limits::default();
        let single = single_tetrahedron();
        assert_eq!(brute_force_enumerate(&single, 0, &l).unwrap(), vec![SurfaceVector::zero(1)]);
        assert_eq!(brute_force_enumerate(&single, 1, &l).unwrap().len(), 8);
        // Two quads of distinct types are excluded at bound 2.
        let two = brute_force_enumerate(&single, 2, &l).unwrap();
        assert_eq!(two.len(), 1 + 7 + (7 * 8 / 2 - 3));
    }

    #[test]
    fn simplex_boundary_links_are_vertex_surfaces() {
        let t = simplex_boundary();
        let rays = enumerate_vertex_surfaces(&t, &Limits::default()).unwrap();
        for v in 0..5 {
            assert!(rays.contains(&vertex_link(&t, v).unwrap()));
        }
        for r in &rays {
            assert!(check_admissible(&t, r, SurfaceMode::Normal).unwrap().admissible);
        }
    }

    #[test]
    fn ray_ceiling_is_reported() {
        let limits = Limits { max_rays: 3, ..Limits::default() };
        let err = solution_cone(&doubled_tetrahedron(), &limits).unwrap_err();
        assert!(err.is_ceiling());
        let limits = Limits { max_bound: 2, ..Limits::default() };
        assert!(brute_force_enumerate(&doubled_tetrahedron(), 3, &limits).unwrap_err().is_ceiling());
    }

    #[test]
    fn octagon_surfaces_are_almost_normal() {
        // In the doubled tetrahedron the other copy would need the same length 8 curve.
        let doubled = enumerate_octagon_surfaces(&doubled_tetrahedron(), 6, &Limits::default()).unwrap();
        assert!(doubled.is_empty());
        assert!(enumerate_octagon_surfaces(&simplex_boundary(), 4, &Limits::default()).unwrap().is_empty());
        let t = Triangulation::parse("1\n0:3:120 0:2:013 0:1:023 0:0:312\n").unwrap();
        let found = enumerate_octagon_surfaces(&t, 6, &Limits::default()).unwrap();
        assert!(!found.is_empty());
        for v in &found {
            assert_eq!(v.total_octagons(), 1u32.into());
            assert_eq!(classify(&t, v), Classification::AlmostNormalOctagon);
        }
        let single = enumerate_octagon_surfaces(&single_tetrahedron(), 1, &Limits::default()).unwrap();
        assert_eq!(single.len(), 3);
    }

    #[test]
    fn sphere_search() {
        let t = simplex_boundary();
        let spheres = find_connected_chi2(&t, Search::Vertex, &Limits::default()).unwrap();
        for v in 0..5 {
            assert!(spheres.contains(&vertex_link(&t, v).unwrap()));
        }
        let single = find_connected_chi2(&single_tetrahedron(), Search::Brute(3), &Limits::default()).unwrap();
        assert!(single.is_empty());
    }
}
