//! Property-based invariants over random geometry.

use proptest::prelude::*;

use sphere_gap::constants::{COMPOUND_TOL, CONSTRUCTED_TOL};
use sphere_gap::gapmetrics::{max_gap_exact, min_gap, min_gap_brute};
use sphere_gap::hull3d::build_hull;
use sphere_gap::sphgeom::{
    interior_angles, midpoint, mixed, normalize, sph_dist, spherical_area, SphTriangle, UnitVec3,
    Vec3,
};
use sphere_gap::tessellate::dissect;

fn unit_vec() -> impl Strategy<Value = UnitVec3> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter_map("usable direction", |(x, y, z)| {
            let v = Vec3::new(x, y, z);
            if v.norm() > 0.1 {
                Some(normalize(v).unwrap())
            } else {
                None
            }
        })
}

/// Triangles kept away from degeneracy so compound identities are testable
/// at the stated tolerances.
fn fat_triangle() -> impl Strategy<Value = SphTriangle> {
    (unit_vec(), unit_vec(), unit_vec()).prop_filter_map("non-degenerate", |(a, b, c)| {
        if mixed(a, b, c).abs() < 1e-3 {
            return None;
        }
        SphTriangle::new(a, b, c).ok()
    })
}

proptest! {
    #[test]
    fn triangle_inequality(a in unit_vec(), b in unit_vec(), c in unit_vec()) {
        let ab = sph_dist(a, b).0;
        let bc = sph_dist(b, c).0;
        let ac = sph_dist(a, c).0;
        prop_assert!(ac <= ab + bc + CONSTRUCTED_TOL);
    }

    #[test]
    fn spherical_law_of_cosines(t in fat_triangle()) {
        let (_, _, cc) = interior_angles(&t).unwrap();
        let [sa, sb, sc] = t.side_lengths();
        let lhs = sc.0.cos();
        let rhs = sa.0.cos() * sb.0.cos() + sa.0.sin() * sb.0.sin() * cc.0.cos();
        prop_assert!((lhs - rhs).abs() <= COMPOUND_TOL);
    }

    #[test]
    fn girard_additivity_under_dissection(t in fat_triangle()) {
        prop_assume!(sph_dist(t.a(), t.b()).0 < 2.5
            && sph_dist(t.b(), t.c()).0 < 2.5
            && sph_dist(t.a(), t.c()).0 < 2.5);
        if let Ok(kids) = dissect(&t) {
            let sum: f64 = kids.iter().map(|k| spherical_area(k).unwrap().0).sum();
            prop_assert!((sum - spherical_area(&t).unwrap().0).abs() <= COMPOUND_TOL);
        }
    }

    #[test]
    fn midpoint_is_symmetric_and_equidistant(a in unit_vec(), b in unit_vec()) {
        prop_assume!(sph_dist(a, b).0 < 3.0);
        let m1 = midpoint(a, b).unwrap();
        let m2 = midpoint(b, a).unwrap();
        prop_assert_eq!(m1, m2);
        prop_assert!((sph_dist(a, m1).0 - sph_dist(b, m1).0).abs() <= CONSTRUCTED_TOL);
    }

    #[test]
    fn circumcenter_is_equidistant(t in fat_triangle()) {
        let (c, _) = sphere_gap::sphgeom::circumcenter(&t).unwrap();
        let d: Vec<f64> = t.vertices().iter().map(|v| sph_dist(c, *v).0).collect();
        let spread = d.iter().cloned().fold(0.0f64, f64::max)
            - d.iter().cloned().fold(f64::INFINITY, f64::min);
        prop_assert!(spread <= COMPOUND_TOL);
    }

    #[test]
    fn min_gap_routes_agree_bitwise(pts in proptest::collection::vec(unit_vec(), 4..80)) {
        let brute = min_gap_brute(&pts).unwrap();
        let auto = min_gap(&pts).unwrap();
        prop_assert_eq!(brute.0.0.to_bits(), auto.0.0.to_bits());
        prop_assert_eq!(brute.1, auto.1);
    }

    #[test]
    fn empty_circle_center_is_a_valid_witness(pts in proptest::collection::vec(unit_vec(), 2..24)) {
        let (d, c) = max_gap_exact(&pts).unwrap();
        let f = pts.iter().map(|&p| sph_dist(c, p).0).fold(f64::INFINITY, f64::min);
        prop_assert!((f - d.0 / 2.0).abs() <= 1e-10);
    }

    #[test]
    fn inserting_the_closest_pair_midpoint_never_raises_the_gap(
        pts in proptest::collection::vec(unit_vec(), 4..20)
    ) {
        let (before, _) = max_gap_exact(&pts).unwrap();
        let (_, (i, j)) = min_gap(&pts).unwrap();
        prop_assume!(sph_dist(pts[i], pts[j]).0 > 1e-6);
        let mut ext = pts.clone();
        ext.push(midpoint(pts[i], pts[j]).unwrap());
        let (after, _) = max_gap_exact(&ext).unwrap();
        prop_assert!(after.0 <= before.0 + CONSTRUCTED_TOL);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hull_invariants_on_random_sets(pts in proptest::collection::vec(unit_vec(), 6..60)) {
        let hull = match build_hull(&pts) {
            Ok(h) => h,
            Err(_) => return Ok(()),
        };
        prop_assert!(hull.max_plane_violation() <= 1e-10);
        prop_assert_eq!(hull.euler_characteristic(), 2);
        // random draws are in general position: every point is a vertex
        prop_assert_eq!(hull.vertex_indices().len(), pts.len());
        prop_assert_eq!(hull.facet_count(), 2 * pts.len() - 4);
    }
}
