//! Central tolerance table and shared closed-form constants.
//!
//! Every threshold used by the library is defined here, not inline at the
//! point of use. Two families:
//!
//! * `*_TOL` — accuracy we promise for results (tested against),
//! * `*_EPS` — predicate cutoffs below which inputs count as degenerate.

use std::f64::consts::PI;

/// Unit-norm invariant for constructed vectors: `| ‖v‖ − 1 | ≤ NORM_TOL`.
pub const NORM_TOL: f64 = 1e-12;

/// Identities that are a single construction away (midpoint equidistance,
/// normalized values, closed-form equalities).
pub const CONSTRUCTED_TOL: f64 = 1e-12;

/// Compound trigonometric identities (laws of cosines/sines, area
/// additivity, circumcenter equidistance) accumulate more rounding.
pub const COMPOUND_TOL: f64 = 1e-10;

/// Norm below which a raw 3-vector has no usable direction.
pub const ZERO_VECTOR_EPS: f64 = 1e-15;

/// Two points closer than π − ANTIPODAL_EPS to distance π have no unique
/// midpoint.
pub const ANTIPODAL_EPS: f64 = 1e-9;

/// Orientation / co-great-circularity predicate: a mixed product with
/// absolute value at or below this counts as coplanar with the origin.
pub const MIXED_PRODUCT_EPS: f64 = 1e-12;

/// Plane-side slack for boundary-inclusive triangle containment. Dissection
/// vertices sit exactly on parent edges, so the test cannot be strict.
pub const CONTAINS_TOL: f64 = 1e-12;

/// Agreement demanded between the brute-force and hull-based largest-empty-
/// circle routes, and between a scanner prefix and a one-shot recomputation.
pub const PATH_AGREEMENT_TOL: f64 = 1e-9;

/// Slack for the empty-circumcircle property of hull facets.
pub const EMPTY_CIRCLE_SLACK: f64 = 1e-9;

/// Largest point count handled by the brute-force largest-empty-circle
/// enumeration; beyond it the Delaunay (convex hull) route takes over.
pub const N_BRUTE: usize = 60;

/// Point count above which `min_gap` switches from the quadratic baseline
/// to the spatial-cell path (which must agree bitwise).
pub const MIN_GAP_ACCEL_THRESHOLD: usize = 2000;

/// Covering radius of the Fibonacci lattice with `M` samples is bounded by
/// `FIB_COVERING_COEFF / sqrt(M)`. Calibrated empirically: the measured
/// coefficient is ≈ 2.728 on lattices of 10^4 and 4·10^4 points (computed
/// as the lattice's own largest-empty-circle radius times √M), so 3.1
/// keeps a 13% margin.
pub const FIB_COVERING_COEFF: f64 = 3.1;

/// Covering-radius bound for a Fibonacci lattice of `m` samples, in radians.
pub fn lattice_covering_bound(m: usize) -> f64 {
    FIB_COVERING_COEFF / (m as f64).sqrt()
}

/// Icosahedron spherical edge length, arccos(1/√5) ≈ 1.1071487177940904.
pub fn icosahedron_edge() -> f64 {
    (1.0 / 5f64.sqrt()).acos()
}

/// Octahedron spherical edge length, π/2.
pub fn octahedron_edge() -> f64 {
    PI / 2.0
}

/// Tetrahedron spherical edge length, arccos(−1/3) ≈ 1.9106332362490186.
pub fn tetrahedron_edge() -> f64 {
    (-1f64 / 3.0).acos()
}

/// Stage-one gap-ratio bound for the icosahedron, π / arccos(1/√5) ≈ 2.8376.
pub fn stage_one_bound_icosahedron() -> f64 {
    PI / icosahedron_edge()
}

/// Stage-two bound in closed radical form, (12 − 4√5) / arccos(1/√5) ≈ 2.760.
pub fn stage_two_bound_icosahedron() -> f64 {
    (12.0 - 4.0 * 5f64.sqrt()) / icosahedron_edge()
}

/// The golden ratio (1 + √5)/2; also the three-point lower bound.
pub fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}
