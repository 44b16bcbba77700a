use normalhst::enumeration::{brute_force_enumerate, enumerate_octagon_surfaces, enumerate_vertex_surfaces};
use normalhst::normal::{euler_characteristic, is_admissible, reconstruct_surface, SurfaceVector};
use normalhst::triangulation::examples::*;
use normalhst::{Limits, Triangulation};
use normalhst_oracles::matching::{is_extreme_ray, is_primitive, matching_matrix, naive_solutions};
use normalhst_oracles::surfaces;
use num_bigint::BigInt;
use std::collections::BTreeSet;

fn corpus(name: &str) -> Triangulation {
    let path = format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    Triangulation::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn sum(v: &SurfaceVector) -> BigInt {
    v.coordinate_sum()
}

#[test]
fn vertex_surfaces_agree_with_filtered_brute_force() {
    for t in [single_tetrahedron(), doubled_tetrahedron(), simplex_boundary()] {
        let dd: BTreeSet<SurfaceVector> = enumerate_vertex_surfaces(&t, &Limits::default())
            .unwrap()
            .into_iter()
            .filter(|v| sum(v) <= 6.into())
            .collect();
        let m = matching_matrix(&t);
        let bf: BTreeSet<SurfaceVector> = brute_force_enumerate(&t, 6, &Limits::default())
            .unwrap()
            .into_iter()
            .filter(|v| {
                let x = v.normal_coords();
                is_primitive(&x) && is_extreme_ray(&m, &x)
            })
            .collect();
        assert!(!dd.is_empty());
        assert_eq!(dd, bf);
    }
}

#[test]
fn brute_force_matches_naive_search() {
    for t in [single_tetrahedron(), doubled_tetrahedron(), simplex_boundary(), corpus("one_tet_closed.tri")] {
        let mut ours: Vec<Vec<BigInt>> = brute_force_enumerate(&t, 6, &Limits::default())
            .unwrap()
            .iter()
            .map(|v| v.normal_coords())
            .collect();
        ours.sort();
        assert_eq!(ours, naive_solutions(&t, 6));
    }
}

#[test]
fn euler_characteristic_three_ways() {
    for name in ["single.tri", "doubled.tri", "one_tet_closed.tri", "simplex_boundary.tri"] {
        let t = corpus(name);
        let mut surfaces = brute_force_enumerate(&t, 6, &Limits::default()).unwrap();
        surfaces.extend(enumerate_octagon_surfaces(&t, 6, &Limits::default()).unwrap());
        for v in surfaces.iter().filter(|v| is_admissible(&t, v)) {
            let chi = euler_characteristic(&t, v).unwrap();
            let r = reconstruct_surface(&t, v, &Limits::default()).unwrap();
            let parts: i64 = r.summary.components.iter().map(|c| c.euler_characteristic).sum();
            assert_eq!(chi, BigInt::from(parts), "{name}: {}", v.to_json());
            assert_eq!(chi, BigInt::from(r.summary.euler_characteristic));
            assert_eq!(chi, surfaces::euler_characteristic(&t, v), "{name}: {}", v.to_json());
        }
    }
}
