//! Uniformity measures: minimal pairwise separation, largest empty circle,
//! gap ratio, per-prefix scans, restricted (per-face) ratios, and the
//! Fibonacci-lattice oracle.
//!
//! The largest empty circle has two routes. The brute route enumerates a
//! complete candidate set (circumcenters of non-degenerate triples, pair
//! great-circle poles, pair midpoint antipodes, point antipodes) and
//! evaluates the min-distance function honestly at each; it is the
//! correctness oracle up to `N_BRUTE` points. The hull route reads the
//! candidates off the spherical Delaunay triangulation (hull facets) and is
//! the performance path for origin-interior sets.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use rayon::prelude::*;

use crate::constants::{
    ANTIPODAL_EPS, CONTAINS_TOL, MIN_GAP_ACCEL_THRESHOLD, MIXED_PRODUCT_EPS, N_BRUTE,
    ZERO_VECTOR_EPS,
};
use crate::error::{GeomError, Result};
use crate::hull3d::{build_hull, HullBuilder};
use crate::sphgeom::{
    centroid, contains, midpoint, normalize, sph_dist, Radians, SphTriangle, UnitVec3,
};

/// Per-prefix uniformity record: the minimal pairwise distance with its
/// witnessing pair, the largest-empty-circle diameter with its witnessing
/// center, and their ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub n: usize,
    pub rho_min: Radians,
    pub min_pair: (usize, usize),
    pub rho_max: Radians,
    pub center: UnitVec3,
    pub ratio: f64,
}

impl GapReport {
    /// Fixed-format JSON line; distances carry 12 significant digits.
    pub fn to_json_line(&self) -> String {
        format!(
            "{{\"n\":{},\"rho_min\":{:.11e},\"min_pair\":[{},{}],\"rho_max\":{:.11e},\"center\":[{:.16e},{:.16e},{:.16e}],\"ratio\":{:.11e}}}",
            self.n,
            self.rho_min.0,
            self.min_pair.0,
            self.min_pair.1,
            self.rho_max.0,
            self.center.x(),
            self.center.y(),
            self.center.z(),
            self.ratio,
        )
    }
}

// ---------------------------------------------------------------------------
// minimal pairwise distance

type MinState = (f64, (usize, usize));

fn tuple_less(a: &MinState, b: &MinState) -> bool {
    match a.0.total_cmp(&b.0) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => a.1 < b.1,
    }
}

/// Exact minimum over all pairs, O(n²). Ties resolve to the smallest index
/// pair, so the result is a unique minimum tuple.
pub fn min_gap_brute(points: &[UnitVec3]) -> Result<(Radians, (usize, usize))> {
    if points.len() < 2 {
        return Err(GeomError::TooFewPoints {
            need: 2,
            got: points.len(),
        });
    }
    let mut best: MinState = (f64::INFINITY, (0, 0));
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let cand = (sph_dist(points[i], points[j]).0, (i, j));
            if tuple_less(&cand, &best) {
                best = cand;
            }
        }
    }
    Ok((Radians(best.0), best.1))
}

/// Spatial-cell path. Cells are sized from an upper bound (the best
/// consecutive pair), so the true closest pair always shares a 3×3×3
/// neighborhood; the result is the same unique minimum tuple as the
/// baseline, bit for bit.
fn min_gap_cells(points: &[UnitVec3]) -> (Radians, (usize, usize)) {
    let mut best: MinState = (f64::INFINITY, (0, 0));
    for i in 0..points.len() - 1 {
        let cand = (sph_dist(points[i], points[i + 1]).0, (i, i + 1));
        if tuple_less(&cand, &best) {
            best = cand;
        }
    }
    // chord length of the upper bound, padded one ulp-ish
    let cell = (2.0 * (best.0 / 2.0).sin()).max(1e-12) * (1.0 + 1e-12);

    let key = |p: UnitVec3| -> (i64, i64, i64) {
        (
            ((p.x() + 1.0) / cell).floor() as i64,
            ((p.y() + 1.0) / cell).floor() as i64,
            ((p.z() + 1.0) / cell).floor() as i64,
        )
    };
    let mut grid: std::collections::HashMap<(i64, i64, i64), Vec<u32>> =
        std::collections::HashMap::new();
    for (i, &p) in points.iter().enumerate() {
        grid.entry(key(p)).or_default().push(i as u32);
    }
    for (i, &p) in points.iter().enumerate() {
        let (kx, ky, kz) = key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    let Some(cellpts) = grid.get(&(kx + dx, ky + dy, kz + dz)) else {
                        continue;
                    };
                    for &j in cellpts {
                        let j = j as usize;
                        if j <= i {
                            continue;
                        }
                        let cand = (sph_dist(points[i], points[j]).0, (i, j));
                        if tuple_less(&cand, &best) {
                            best = cand;
                        }
                    }
                }
            }
        }
    }
    (Radians(best.0), best.1)
}

/// Minimal pairwise spherical distance and its witnessing pair.
pub fn min_gap(points: &[UnitVec3]) -> Result<(Radians, (usize, usize))> {
    if points.len() < 2 {
        return Err(GeomError::TooFewPoints {
            need: 2,
            got: points.len(),
        });
    }
    if points.len() <= MIN_GAP_ACCEL_THRESHOLD {
        min_gap_brute(points)
    } else {
        Ok(min_gap_cells(points))
    }
}

// ---------------------------------------------------------------------------
// largest empty circle

fn min_dist_to_set(c: UnitVec3, points: &[UnitVec3]) -> f64 {
    points
        .iter()
        .map(|&p| sph_dist(c, p).0)
        .fold(f64::INFINITY, f64::min)
}

/// As `min_dist_to_set`, but gives up once the running minimum falls
/// strictly below `cutoff` — such a candidate can neither win nor tie, so
/// the maximization result (value and witness) is unchanged.
fn min_dist_with_cutoff(c: UnitVec3, points: &[UnitVec3], cutoff: f64) -> f64 {
    let mut m = f64::INFINITY;
    for &p in points {
        let d = sph_dist(c, p).0;
        if d < m {
            m = d;
            if m < cutoff {
                return m;
            }
        }
    }
    m
}

type MaxState = (f64, UnitVec3);

/// Total order for candidate maximization: larger min-distance wins, ties
/// go to the lexicographically smaller center.
fn better(a: &MaxState, b: &MaxState) -> bool {
    match a.0.total_cmp(&b.0) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => a.1.lex_cmp(b.1) == Ordering::Less,
    }
}

fn pick_best(candidates: Vec<UnitVec3>, points: &[UnitVec3]) -> MaxState {
    let identity = || (f64::NEG_INFINITY, UnitVec3::new(0.0, 0.0, 1.0).unwrap());
    candidates
        .into_par_iter()
        .fold(identity, |best: MaxState, c| {
            let cand = (min_dist_with_cutoff(c, points, best.0), c);
            if better(&cand, &best) {
                cand
            } else {
                best
            }
        })
        .reduce(identity, |a, b| if better(&a, &b) { a } else { b })
}

fn max_gap_small(points: &[UnitVec3]) -> Result<(Radians, UnitVec3)> {
    match points.len() {
        0 => Err(GeomError::EmptySet),
        1 => Ok((Radians(2.0 * PI), points[0].antipode())),
        2 => {
            let d = sph_dist(points[0], points[1]).0;
            let center = if d >= PI - ANTIPODAL_EPS {
                points[0].any_orthogonal()
            } else {
                midpoint(points[0], points[1])?.antipode()
            };
            Ok((Radians(2.0 * PI - d), center))
        }
        _ => unreachable!("max_gap_small is only called with n <= 2"),
    }
}

/// Brute-force largest empty circle: honest evaluation over the complete
/// candidate set. The great-circle poles of every pair are included so that
/// sets lying on (or containing) a single great circle still find the
/// orthogonal maximizer.
pub fn max_gap_brute(points: &[UnitVec3]) -> Result<(Radians, UnitVec3)> {
    let n = points.len();
    if n <= 2 {
        return max_gap_small(points);
    }
    let mut cands: Vec<UnitVec3> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                if let Ok((c1, c2)) = crate::sphgeom::circumcenters_raw(points[i], points[j], points[k])
                {
                    cands.push(c1);
                    cands.push(c2);
                }
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let cr = points[i].cross(points[j]);
            if cr.norm() > ZERO_VECTOR_EPS {
                let pole = normalize(cr).unwrap();
                cands.push(pole);
                cands.push(pole.antipode());
            }
            if sph_dist(points[i], points[j]).0 < PI - ANTIPODAL_EPS {
                cands.push(midpoint(points[i], points[j]).unwrap().antipode());
            }
        }
    }
    for &p in points {
        cands.push(p.antipode());
    }
    let (f, c) = pick_best(cands, points);
    Ok((Radians(2.0 * f), c))
}

/// Hull route: candidates are the Delaunay circumcenters, the midpoint
/// antipodes of Delaunay edges, and the point antipodes, all evaluated
/// honestly. Requires a full-dimensional hull with the origin interior.
pub fn max_gap_hull(points: &[UnitVec3]) -> Result<(Radians, UnitVec3)> {
    let hull = build_hull(points)?;
    if !hull.origin_interior() {
        return Err(GeomError::OriginNotInterior);
    }
    let mut cands: Vec<UnitVec3> = hull.delaunay_circumcenters()?;
    let mut edges: Vec<(u32, u32)> = hull
        .facets()
        .flat_map(|f| {
            [
                (f.v[0].min(f.v[1]), f.v[0].max(f.v[1])),
                (f.v[1].min(f.v[2]), f.v[1].max(f.v[2])),
                (f.v[2].min(f.v[0]), f.v[2].max(f.v[0])),
            ]
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    for (u, v) in edges {
        let (a, b) = (points[u as usize], points[v as usize]);
        if sph_dist(a, b).0 < PI - ANTIPODAL_EPS {
            cands.push(midpoint(a, b)?.antipode());
        }
    }
    for &p in points {
        cands.push(p.antipode());
    }
    let (f, c) = pick_best(cands, points);
    Ok((Radians(2.0 * f), c))
}

/// Largest-empty-circle diameter and witnessing center.
///
/// Dispatch: brute route up to `N_BRUTE` points, hull route beyond; if the
/// hull route does not apply (degenerate set, origin not interior) the
/// brute route answers regardless of size.
pub fn max_gap_exact(points: &[UnitVec3]) -> Result<(Radians, UnitVec3)> {
    let n = points.len();
    if n <= 2 {
        return max_gap_small(points);
    }
    if n <= N_BRUTE {
        return max_gap_brute(points);
    }
    match max_gap_hull(points) {
        Ok(r) => Ok(r),
        Err(GeomError::OriginNotInterior) | Err(GeomError::DegenerateHull) => {
            max_gap_brute(points)
        }
        Err(e) => Err(e),
    }
}

/// Gap ratio of a point set: largest-empty-circle diameter over minimal
/// pairwise distance.
pub fn gap_ratio(points: &[UnitVec3]) -> Result<GapReport> {
    let (rho_min, min_pair) = min_gap(points)?;
    let (rho_max, center) = max_gap_exact(points)?;
    Ok(GapReport {
        n: points.len(),
        rho_min,
        min_pair,
        rho_max,
        center,
        ratio: rho_max.0 / rho_min.0,
    })
}

// ---------------------------------------------------------------------------
// Fibonacci-lattice oracle

/// The i-th of m Fibonacci-lattice directions.
pub fn fibonacci_lattice_point(i: usize, m: usize) -> UnitVec3 {
    let golden_angle = PI * (3.0 - 5f64.sqrt());
    let z = 1.0 - (2.0 * i as f64 + 1.0) / m as f64;
    let r = (1.0 - z * z).max(0.0).sqrt();
    let ang = golden_angle * i as f64;
    UnitVec3::new(r * ang.cos(), r * ang.sin(), z).unwrap()
}

/// All m lattice directions.
pub fn fibonacci_lattice(m: usize) -> impl Iterator<Item = UnitVec3> {
    (0..m).map(move |i| fibonacci_lattice_point(i, m))
}

/// Lower bound on the largest-empty-circle diameter by sampling the
/// min-distance function on an `m`-point Fibonacci lattice. Always at most
/// the exact value; the shortfall is bounded by `2 · lattice_covering_bound(m)`.
pub fn grid_oracle_max_gap(points: &[UnitVec3], m: usize) -> Radians {
    debug_assert!(m >= 1000, "oracle needs at least 1000 samples");
    let fmax = (0..m)
        .into_par_iter()
        .fold(
            || f64::NEG_INFINITY,
            |best, i| best.max(min_dist_with_cutoff(fibonacci_lattice_point(i, m), points, best)),
        )
        .reduce(|| f64::NEG_INFINITY, f64::max);
    Radians(2.0 * fmax)
}

/// As `grid_oracle_max_gap`, but the maximization is restricted to lattice
/// directions lying inside the given triangle.
pub fn grid_oracle_max_gap_in_face(face: &SphTriangle, points: &[UnitVec3], m: usize) -> Radians {
    let fmax = (0..m)
        .into_par_iter()
        .fold(
            || f64::NEG_INFINITY,
            |best, i| {
                let c = fibonacci_lattice_point(i, m);
                if contains(face, c) {
                    best.max(min_dist_with_cutoff(c, points, best))
                } else {
                    best
                }
            },
        )
        .reduce(|| f64::NEG_INFINITY, f64::max);
    Radians(2.0 * fmax)
}

// ---------------------------------------------------------------------------
// prefix scanning

#[derive(Debug, Clone, Copy)]
struct FacetEntry {
    h: f64,
    center: UnitVec3,
    id: u32,
}

impl PartialEq for FacetEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for FacetEntry {}
impl PartialOrd for FacetEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FacetEntry {
    // min-offset first; ties by center coordinates, then id
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .h
            .total_cmp(&self.h)
            .then_with(|| other.center.lex_cmp(self.center))
            .then(other.id.cmp(&self.id))
    }
}

/// Online per-prefix gap analysis.
///
/// `rho_min` is maintained incrementally. For prefixes up to `N_BRUTE` the
/// largest empty circle comes from the brute route; beyond that the scanner
/// keeps an incremental hull and a priority queue of facet plane offsets —
/// the facet with the smallest offset carries the circumcircle of largest
/// radius, which by emptiness is the largest empty circle.
pub struct PrefixScanner {
    pts: Vec<UnitVec3>,
    best_min: MinState,
    hull: HullBuilder,
    heap: BinaryHeap<FacetEntry>,
}

impl PrefixScanner {
    pub fn new() -> Self {
        PrefixScanner {
            pts: Vec::new(),
            best_min: (f64::INFINITY, (0, 0)),
            hull: HullBuilder::new(),
            heap: BinaryHeap::new(),
        }
    }

    pub fn points(&self) -> &[UnitVec3] {
        &self.pts
    }

    /// Push the next point; from the second point on, returns the prefix
    /// report.
    pub fn push(&mut self, p: UnitVec3) -> Option<GapReport> {
        let m = self.pts.len();
        for i in 0..m {
            let cand = (sph_dist(self.pts[i], p).0, (i, m));
            if tuple_less(&cand, &self.best_min) {
                self.best_min = cand;
            }
        }
        self.pts.push(p);

        let ev = self.hull.push(p);
        for id in ev.created {
            let (center, h) = self.hull.facet_key(id);
            self.heap.push(FacetEntry { h, center, id });
        }

        let n = self.pts.len();
        if n < 2 {
            return None;
        }
        let (rho_max, center) = self.prefix_max();
        Some(GapReport {
            n,
            rho_min: Radians(self.best_min.0),
            min_pair: self.best_min.1,
            rho_max,
            center,
            ratio: rho_max.0 / self.best_min.0,
        })
    }

    fn prefix_max(&mut self) -> (Radians, UnitVec3) {
        let n = self.pts.len();
        if n <= N_BRUTE {
            return max_gap_brute(&self.pts).expect("n >= 2");
        }
        while let Some(top) = self.heap.peek() {
            if self.hull.facet_alive(top.id) {
                break;
            }
            self.heap.pop();
        }
        match self.heap.peek() {
            Some(top) if top.h > MIXED_PRODUCT_EPS => {
                let v0 = self.hull.facet(top.id).v[0] as usize;
                let r = sph_dist(top.center, self.pts[v0]);
                (Radians(2.0 * r.0), top.center)
            }
            // hull degenerate or origin not interior: answer honestly
            _ => max_gap_exact(&self.pts).expect("n >= 2"),
        }
    }
}

impl Default for PrefixScanner {
    fn default() -> Self {
        Self::new()
    }
}

/// Gap reports for every prefix S_2 … S_n of the given sequence.
pub fn prefix_gap_ratios(points: &[UnitVec3]) -> Result<Vec<GapReport>> {
    if points.len() < 2 {
        return Err(GeomError::TooFewPoints {
            need: 2,
            got: points.len(),
        });
    }
    let mut sc = PrefixScanner::new();
    Ok(points.iter().filter_map(|&p| sc.push(p)).collect())
}

/// Largest prefix ratio of a sequence.
pub fn max_prefix_ratio(points: &[UnitVec3]) -> Result<f64> {
    Ok(prefix_gap_ratios(points)?
        .iter()
        .map(|r| r.ratio)
        .fold(f64::NEG_INFINITY, f64::max))
}

// ---------------------------------------------------------------------------
// face-restricted analysis

/// Gap report for a complete depth-k dissection of one equilateral face,
/// with the empty-circle center restricted to the face. The restricted
/// maximizer of such a point set is the face centroid.
pub fn face_restricted_report(face: &SphTriangle, points: &[UnitVec3]) -> Result<GapReport> {
    // count must be a triangular number (2^k + 1)(2^k + 2)/2
    let depth = (0..=20u8).find(|&k| {
        let m = 1usize << k;
        (m + 1) * (m + 2) / 2 == points.len()
    });
    if depth.is_none() {
        return Err(GeomError::IncompleteLevel);
    }
    for &p in points {
        if !contains(face, p) {
            return Err(GeomError::IncompleteLevel);
        }
    }
    for v in face.vertices() {
        let present = points
            .iter()
            .any(|&p| sph_dist(p, v).0 < 10.0 * CONTAINS_TOL);
        if !present {
            return Err(GeomError::IncompleteLevel);
        }
    }

    let (rho_min, min_pair) = min_gap(points)?;
    let c = centroid(face)?;
    let d = min_dist_to_set(c, points);
    Ok(GapReport {
        n: points.len(),
        rho_min,
        min_pair,
        rho_max: Radians(2.0 * d),
        center: c,
        ratio: 2.0 * d / rho_min.0,
    })
}
