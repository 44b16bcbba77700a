use normalhst::curves::{check_348, CurvePattern};
use normalhst::enumeration::enumerate_octagon_surfaces;
use normalhst::normal::{is_admissible, reconstruct_surface, vertex_link};
use normalhst::triangulation::{compute_skeleton, validate_manifold};
use normalhst::{Limits, Triangulation};

fn load(name: &str) -> Triangulation {
    let path = format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    Triangulation::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

const ALL: [&str; 5] = ["single.tri", "doubled.tri", "simplex_boundary.tri", "one_tet_closed.tri", "pseudo_manifold.tri"];

#[test]
fn corpus_round_trips_and_validates() {
    for name in ALL {
        let t = load(name);
        assert_eq!(Triangulation::parse(&t.to_text()).unwrap(), t);
        let report = validate_manifold(&t);
        let sk = compute_skeleton(&t);
        assert_eq!(report.euler_characteristic, sk.euler_characteristic());
        match name {
            "pseudo_manifold.tri" => {
                assert!(!report.is_manifold);
                assert_eq!(report.bad_vertices, vec![0]);
            }
            "single.tri" => assert!(report.is_manifold && !report.closed),
            _ => assert!(report.is_manifold && report.closed && report.orientable, "{name}"),
        }
    }
}

#[test]
fn vertex_links_of_closed_manifolds_are_spheres() {
    for name in ["doubled.tri", "simplex_boundary.tri", "one_tet_closed.tri"] {
        let t = load(name);
        let vertices = compute_skeleton(&t).vertices.len();
        for v in 0..vertices {
            let link = vertex_link(&t, v).unwrap();
            assert!(is_admissible(&t, &link));
            let r = reconstruct_surface(&t, &link, &Limits::default()).unwrap();
            assert!(r.summary.is_connected_sphere(), "{name} vertex {v}");
        }
    }
}

#[test]
fn octagon_surfaces_have_one_octagon_loop() {
    let mut checked = 0;
    for name in ALL {
        let t = load(name);
        for v in enumerate_octagon_surfaces(&t, 6, &Limits::default()).unwrap() {
            if !is_admissible(&t, &v) {
                continue;
            }
            let mut octagons = 0;
            for c in &v.tets {
                let r = check_348(&CurvePattern::of_tetrahedron(c).unwrap()).unwrap();
                assert!(r.pass, "{name}: {}", v.to_json());
                assert!(r.lengths.iter().all(|&l| l == 3 || l == 4 || l == 8));
                octagons += r.octagon_loops;
            }
            assert_eq!(octagons, 1);
            checked += 1;
        }
    }
    assert!(checked > 0);
}
