mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use lattice_diameter::geometry::{hull3d, Point3};
use lattice_diameter::innerpoints::candidate_points;
use lattice_diameter::polygons::{
    delta2, enumerate_family, transform_polygon, PolygonFamily, SQUARE_SYMMETRIES,
};
use lattice_diameter::shelling::ShellingSearch;
use lattice_diameter::symmetry::{canonical_pairs, canonical_u, enumerate_group, SymmetryMode};

fn point_set(max: i64, len: usize) -> impl Strategy<Value = Vec<Point3>> {
    prop::collection::vec(prop::array::uniform3(0..=max), 1..=len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn hull_matches_brute_force(points in point_set(5, 15)) {
        if let Err(msg) = common::check_hull(&points) {
            return Err(TestCaseError::fail(msg));
        }
    }
}

proptest! {
    #[test]
    fn hull_ignores_input_order(mut points in point_set(4, 12)) {
        let a = hull3d(&points);
        points.reverse();
        let b = hull3d(&points);
        prop_assert_eq!(a.ok(), b.ok());
    }

    #[test]
    fn distances_form_a_metric(points in point_set(4, 14)) {
        let Ok(hull) = hull3d(&points) else { return Ok(()) };
        let g = hull.edge_graph();
        let n = g.len();
        let dist: Vec<Vec<Option<usize>>> = (0..n).map(|s| g.distances_from(s)).collect();
        for a in 0..n {
            prop_assert_eq!(dist[a][a], Some(0));
            for b in 0..n {
                prop_assert!(dist[a][b].is_some(), "polytope graphs are connected");
                prop_assert_eq!(dist[a][b], dist[b][a]);
                for c in 0..n {
                    prop_assert!(dist[a][c].unwrap() <= dist[a][b].unwrap() + dist[b][c].unwrap());
                }
            }
        }
        let diameter = dist.iter().flatten().flatten().max().copied().unwrap();
        prop_assert_eq!(g.diameter().unwrap(), diameter);
    }

    #[test]
    fn hull_is_invariant_under_cube_symmetries(points in point_set(4, 12), g in 0usize..48) {
        let Ok(hull) = hull3d(&points) else { return Ok(()) };
        let sym = &enumerate_group(3)[g];
        let image: Vec<Point3> = points.iter().map(|&p| sym.apply3(p, 4)).collect();
        let moved = hull3d(&image).unwrap();
        prop_assert_eq!(hull.vertices().len(), moved.vertices().len());
        prop_assert_eq!(hull.edges().len(), moved.edges().len());
        prop_assert_eq!(hull.facets().len(), moved.facets().len());
        prop_assert_eq!(hull.edge_graph().diameter().unwrap(), moved.edge_graph().diameter().unwrap());
    }

    #[test]
    fn canonical_u_is_constant_on_orbits(u in prop::array::uniform3(0i64..=5), g in 0usize..48) {
        let sym = &enumerate_group(3)[g];
        prop_assert_eq!(canonical_u(sym.apply3(u, 5), 5), canonical_u(u, 5));
        prop_assert_eq!(canonical_u(u.map(|c| 5 - c), 5), canonical_u(u, 5));
    }
}

#[test]
fn polygon_family_matches_subset_oracle() {
    for k in 1..=3 {
        let (best, oracle) = common::oracle_family(k);
        let family = enumerate_family(k);
        assert_eq!(family.target_diameter(), best, "k={k}");
        assert_eq!(delta2(k), best, "k={k}");
        assert_eq!(family.members(), oracle.as_slice(), "k={k}");
    }
}

#[test]
fn polygon_families_are_closed_under_square_symmetries() {
    for k in 1..=5 {
        let family = enumerate_family(k);
        let members: BTreeSet<_> = family.members().iter().collect();
        for p in family.members() {
            for s in SQUARE_SYMMETRIES {
                assert!(members.contains(&transform_polygon(p, s, k)), "k={k}");
            }
        }
    }
}

#[test]
fn polygon_cache_round_trips_bit_exactly() {
    for k in 1..=5 {
        let family = enumerate_family(k);
        let text = family.to_cache_string();
        let back = PolygonFamily::from_cache_str(&text).unwrap();
        assert_eq!(back, family);
        assert_eq!(back.to_cache_string(), text);
        assert_eq!(enumerate_family(k).to_cache_string(), text);
    }
}

#[test]
fn group_axioms_up_to_dimension_three() {
    for d in 1..=3 {
        common::check_group_axioms(d).unwrap();
    }
}

#[test]
fn canonical_pairs_are_one_per_orbit() {
    for k in 1..=6 {
        let full: BTreeSet<Point3> = canonical_pairs(3, k, SymmetryMode::Full).unwrap().iter().map(|p| p.u).collect();
        assert_eq!(full, common::oracle_orbit_reps(k), "k={k}");
        let paper: BTreeSet<Point3> =
            canonical_pairs(3, k, SymmetryMode::Paper).unwrap().iter().map(|p| p.u).collect();
        let expected: BTreeSet<Point3> = full.iter().copied().filter(|u| u.contains(&0)).collect();
        assert_eq!(paper, expected, "k={k}");
    }
}

#[test]
fn boundary_edges_survive_adding_interior_points() {
    let k = 4;
    let family = enumerate_family(k);
    let limit = family.target_diameter() + k as usize - 1;
    let mut checked = 0;
    for pair in canonical_pairs(3, k, SymmetryMode::Paper).unwrap() {
        ShellingSearch::new(&family, pair, limit).run(|s| {
            let mut pts = s.boundary_vertices.clone();
            let inner: Vec<Point3> = (1..k)
                .flat_map(|x| (1..k).flat_map(move |y| (1..k).map(move |z| [x, y, z])))
                .collect();
            for extra in [candidate_points(&s, k), inner] {
                pts.extend(extra);
                let hull = hull3d(&pts).unwrap();
                let v = hull.vertices();
                let edges: BTreeSet<(Point3, Point3)> = hull.edges().iter().map(|&(i, j)| (v[i], v[j])).collect();
                for e in &s.boundary_edges {
                    assert!(edges.contains(e), "{} lost {e:?}", s.trace_line(&pair));
                }
            }
            checked += 1;
        });
    }
    assert!(checked > 0);
}
