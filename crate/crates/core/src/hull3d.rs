//! Incremental 3D convex hull for unit-sphere point sets.
//!
//! For points on the sphere with the origin interior to their hull, the
//! hull facets are exactly the spherical Delaunay triangles, and each
//! facet's plane offset h gives the circumradius of its empty circumcircle
//! as arccos(h). That duality is what the gap analysis rides on.
//!
//! Insertion is incremental with a visible-region walk; the facet set is
//! deterministic for a fixed input order. Coplanar points (|signed volume|
//! at or below `MIXED_PRODUCT_EPS`) are treated as not visible, which keeps
//! the massively cocircular tessellation inputs stable.

use std::collections::HashMap;

use crate::constants::MIXED_PRODUCT_EPS;
use crate::error::{GeomError, Result};
use crate::sphgeom::{normalize, sph_dist, Radians, UnitVec3, Vec3};

const VIS_EPS: f64 = MIXED_PRODUCT_EPS;

/// Signed volume of the parallelepiped (b−a, c−a, d−a); positive when `d`
/// is on the normal side of the oriented plane (a, b, c).
fn orient3d(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> f64 {
    (b - a).cross(c - a).dot(d - a)
}

#[derive(Debug, Clone)]
pub struct Facet {
    /// Vertex indices, counterclockwise seen from outside.
    pub v: [u32; 3],
    /// nbr[i] is the facet across edge (v[i], v[(i+1)%3]).
    nbr: [u32; 3],
    pub alive: bool,
}

/// Outward unit normal and plane offset of a facet (normal · vertex).
fn facet_plane(pts: &[UnitVec3], f: &Facet) -> (UnitVec3, f64) {
    let a = pts[f.v[0] as usize].as_vec();
    let b = pts[f.v[1] as usize].as_vec();
    let c = pts[f.v[2] as usize].as_vec();
    let n = normalize((b - a).cross(c - a)).expect("facet is non-degenerate");
    (n, n.as_vec().dot(a))
}

/// Facet ids created by one insertion.
#[derive(Debug, Default)]
pub struct InsertEvents {
    pub created: Vec<u32>,
}

/// Online hull construction: points are pushed one at a time and the hull
/// after n pushes is the hull of the first n points.
#[derive(Debug, Clone)]
pub struct HullBuilder {
    pts: Vec<UnitVec3>,
    facets: Vec<Facet>,
    interior: Option<Vec3>,
    pending: Vec<u32>,
    visited: Vec<bool>,
}

impl HullBuilder {
    pub fn new() -> Self {
        HullBuilder {
            pts: Vec::new(),
            facets: Vec::new(),
            interior: None,
            pending: Vec::new(),
            visited: Vec::new(),
        }
    }

    pub fn points(&self) -> &[UnitVec3] {
        &self.pts
    }

    pub fn simplex_formed(&self) -> bool {
        self.interior.is_some()
    }

    pub fn facet(&self, id: u32) -> &Facet {
        &self.facets[id as usize]
    }

    pub fn facet_alive(&self, id: u32) -> bool {
        self.facets[id as usize].alive
    }

    /// (outward unit normal, plane offset) of a facet; the normal is the
    /// spherical circumcenter of the facet's vertex triple.
    pub fn facet_key(&self, id: u32) -> (UnitVec3, f64) {
        facet_plane(&self.pts, &self.facets[id as usize])
    }

    pub fn push(&mut self, p: UnitVec3) -> InsertEvents {
        let idx = self.pts.len() as u32;
        self.pts.push(p);
        let mut ev = InsertEvents::default();
        if self.interior.is_none() {
            self.pending.push(idx);
            if let Some(simplex) = self.find_simplex() {
                self.build_simplex(simplex, &mut ev);
                let leftovers: Vec<u32> = self
                    .pending
                    .drain(..)
                    .filter(|i| !simplex.contains(i))
                    .collect();
                for i in leftovers {
                    self.insert(i, &mut ev);
                }
            }
        } else {
            self.insert(idx, &mut ev);
        }
        ev
    }

    fn find_simplex(&self) -> Option<[u32; 4]> {
        let pts = &self.pts;
        let pend = &self.pending;
        if pend.len() < 4 {
            return None;
        }
        let i0 = pend[0];
        let a = pts[i0 as usize].as_vec();
        let i1 = *pend[1..]
            .iter()
            .find(|&&j| (pts[j as usize].as_vec() - a).norm() > 1e-9)?;
        let b = pts[i1 as usize].as_vec();
        let i2 = *pend
            .iter()
            .find(|&&j| {
                j != i0
                    && j != i1
                    && (b - a).cross(pts[j as usize].as_vec() - a).norm() > 1e-9
            })?;
        let c = pts[i2 as usize].as_vec();
        let i3 = *pend.iter().find(|&&j| {
            j != i0
                && j != i1
                && j != i2
                && orient3d(a, b, c, pts[j as usize].as_vec()).abs() > VIS_EPS
        })?;
        Some([i0, i1, i2, i3])
    }

    fn build_simplex(&mut self, s: [u32; 4], ev: &mut InsertEvents) {
        let v = |i: u32| self.pts[i as usize].as_vec();
        let centroid = (v(s[0]) + v(s[1]) + v(s[2]) + v(s[3])) * 0.25;
        self.interior = Some(centroid);

        // each face oriented so the opposite simplex vertex is behind it
        let combos = [
            ([s[0], s[1], s[2]], s[3]),
            ([s[0], s[1], s[3]], s[2]),
            ([s[0], s[2], s[3]], s[1]),
            ([s[1], s[2], s[3]], s[0]),
        ];
        for (tri, opp) in combos {
            let mut t = tri;
            if orient3d(v(t[0]), v(t[1]), v(t[2]), v(opp)) > 0.0 {
                t.swap(1, 2);
            }
            let id = self.facets.len() as u32;
            self.facets.push(Facet {
                v: t,
                nbr: [u32::MAX; 3],
                alive: true,
            });
            ev.created.push(id);
        }

        // wire neighbors through directed edges
        let mut by_edge: HashMap<(u32, u32), u32> = HashMap::new();
        let base = self.facets.len() - 4;
        for id in base..self.facets.len() {
            let f = &self.facets[id];
            for k in 0..3 {
                by_edge.insert((f.v[k], f.v[(k + 1) % 3]), id as u32);
            }
        }
        for id in base..self.facets.len() {
            for k in 0..3 {
                let (u, w) = (self.facets[id].v[k], self.facets[id].v[(k + 1) % 3]);
                self.facets[id].nbr[k] = by_edge[&(w, u)];
            }
        }
    }

    fn is_visible(&self, fid: u32, p: Vec3) -> bool {
        let f = &self.facets[fid as usize];
        let a = self.pts[f.v[0] as usize].as_vec();
        let b = self.pts[f.v[1] as usize].as_vec();
        let c = self.pts[f.v[2] as usize].as_vec();
        orient3d(a, b, c, p) > VIS_EPS
    }

    fn insert(&mut self, idx: u32, ev: &mut InsertEvents) {
        let p = self.pts[idx as usize].as_vec();

        let seed = match (0..self.facets.len() as u32)
            .find(|&f| self.facets[f as usize].alive && self.is_visible(f, p))
        {
            Some(f) => f,
            None => return, // inside (or on) the current hull
        };

        // visible region, depth-first in a fixed order
        self.visited.clear();
        self.visited.resize(self.facets.len(), false);
        let mut visible: Vec<u32> = Vec::new();
        let mut stack = vec![seed];
        self.visited[seed as usize] = true;
        while let Some(f) = stack.pop() {
            visible.push(f);
            for k in 0..3 {
                let nb = self.facets[f as usize].nbr[k];
                if !self.visited[nb as usize] && self.is_visible(nb, p) {
                    self.visited[nb as usize] = true;
                    stack.push(nb);
                }
            }
        }

        // horizon: directed edges of visible facets whose far side survives
        let mut first_edge: Option<(u32, u32)> = None;
        let mut next_on_horizon: HashMap<u32, (u32, u32)> = HashMap::new(); // u -> (w, outside)
        for &f in &visible {
            for k in 0..3 {
                let nb = self.facets[f as usize].nbr[k];
                if !self.visited[nb as usize] {
                    let u = self.facets[f as usize].v[k];
                    let w = self.facets[f as usize].v[(k + 1) % 3];
                    let prev = next_on_horizon.insert(u, (w, nb));
                    assert!(prev.is_none(), "pinched horizon at vertex {u}");
                    if first_edge.is_none() {
                        first_edge = Some((u, w));
                    }
                }
            }
        }
        let (start, _) = first_edge.expect("visible region of an exterior point has a horizon");

        // walk the horizon cycle, creating the cone of new facets
        let mut new_ids: Vec<u32> = Vec::new();
        let mut u = start;
        loop {
            let (w, outside) = next_on_horizon[&u];
            let id = self.facets.len() as u32;
            self.facets.push(Facet {
                v: [u, w, idx],
                nbr: [outside, u32::MAX, u32::MAX],
                alive: true,
            });
            self.visited.push(false);
            // fix the outside facet's pointer across (w, u)
            let of = &mut self.facets[outside as usize];
            for k in 0..3 {
                if of.v[k] == w && of.v[(k + 1) % 3] == u {
                    of.nbr[k] = id;
                }
            }
            new_ids.push(id);
            u = w;
            if u == start {
                break;
            }
        }
        assert_eq!(
            new_ids.len(),
            next_on_horizon.len(),
            "horizon is not a single cycle"
        );
        let m = new_ids.len();
        for (i, &id) in new_ids.iter().enumerate() {
            self.facets[id as usize].nbr[1] = new_ids[(i + 1) % m]; // across (w, p)
            self.facets[id as usize].nbr[2] = new_ids[(i + m - 1) % m]; // across (p, u)
        }

        for &f in &visible {
            self.facets[f as usize].alive = false;
        }
        ev.created.extend_from_slice(&new_ids);

        if let Some(interior) = self.interior {
            debug_assert!(new_ids.iter().all(|&id| {
                let f = &self.facets[id as usize];
                orient3d(
                    self.pts[f.v[0] as usize].as_vec(),
                    self.pts[f.v[1] as usize].as_vec(),
                    self.pts[f.v[2] as usize].as_vec(),
                    interior,
                ) < 0.0
            }));
        }
    }

    pub fn finish(self) -> Result<Hull> {
        if self.pts.len() < 4 {
            return Err(GeomError::TooFewPoints {
                need: 4,
                got: self.pts.len(),
            });
        }
        if self.interior.is_none() {
            return Err(GeomError::DegenerateHull);
        }
        let origin_interior = self
            .facets
            .iter()
            .filter(|f| f.alive)
            .all(|f| facet_plane(&self.pts, f).1 > MIXED_PRODUCT_EPS);
        Ok(Hull {
            pts: self.pts,
            facets: self.facets,
            origin_interior,
        })
    }
}

impl Default for HullBuilder {
    fn default() -> Self {
        Self::new()
    }
}

/// A finished hull: input points, alive facets, and whether the origin is
/// strictly interior.
#[derive(Debug, Clone)]
pub struct Hull {
    pts: Vec<UnitVec3>,
    facets: Vec<Facet>,
    origin_interior: bool,
}

/// Build the hull of a point set in one call.
pub fn build_hull(points: &[UnitVec3]) -> Result<Hull> {
    if points.len() < 4 {
        return Err(GeomError::TooFewPoints {
            need: 4,
            got: points.len(),
        });
    }
    let mut b = HullBuilder::new();
    for &p in points {
        b.push(p);
    }
    b.finish()
}

impl Hull {
    pub fn points(&self) -> &[UnitVec3] {
        &self.pts
    }

    pub fn origin_interior(&self) -> bool {
        self.origin_interior
    }

    /// Alive facets in creation order.
    pub fn facets(&self) -> impl Iterator<Item = &Facet> {
        self.facets.iter().filter(|f| f.alive)
    }

    pub fn facet_count(&self) -> usize {
        self.facets.iter().filter(|f| f.alive).count()
    }

    /// Indices of points that ended up as hull vertices.
    pub fn vertex_indices(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.facets().flat_map(|f| f.v).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// V − E + F with E counted as 3F/2.
    pub fn euler_characteristic(&self) -> i64 {
        let f = self.facet_count() as i64;
        let v = self.vertex_indices().len() as i64;
        v - 3 * f / 2 + f
    }

    /// Outward unit normal and plane offset of an alive facet.
    pub fn facet_plane(&self, f: &Facet) -> (UnitVec3, f64) {
        facet_plane(&self.pts, f)
    }

    /// Spherical circumradius of a facet's circumcircle.
    pub fn facet_circumradius(&self, f: &Facet) -> Radians {
        let (n, _) = facet_plane(&self.pts, f);
        sph_dist(n, self.pts[f.v[0] as usize])
    }

    /// One normalized outward circumcenter per facet: the spherical Voronoi
    /// vertices of the input set. Requires the origin strictly interior.
    pub fn delaunay_circumcenters(&self) -> Result<Vec<UnitVec3>> {
        if !self.origin_interior {
            return Err(GeomError::OriginNotInterior);
        }
        Ok(self.facets().map(|f| facet_plane(&self.pts, f).0).collect())
    }

    /// Largest violation of "every point on or inside every facet plane".
    pub fn max_plane_violation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for f in self.facets() {
            let (n, h) = facet_plane(&self.pts, f);
            for p in &self.pts {
                worst = worst.max(n.as_vec().dot(p.as_vec()) - h);
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::EMPTY_CIRCLE_SLACK;
    use crate::sphgeom::UnitVec3;
    use crate::tessellate::{solid, SolidKind};

    fn uv(x: f64, y: f64, z: f64) -> UnitVec3 {
        UnitVec3::new(x, y, z).unwrap()
    }

    #[test]
    fn octahedron_hull() {
        let s = solid(SolidKind::Octahedron);
        let h = build_hull(s.vertices()).unwrap();
        assert_eq!(h.facet_count(), 8);
        assert!(h.origin_interior());
        assert_eq!(h.euler_characteristic(), 2);
        let centers = h.delaunay_circumcenters().unwrap();
        assert_eq!(centers.len(), 8);
        let t = 1.0 / 3f64.sqrt();
        for c in centers {
            assert!((c.x().abs() - t).abs() < 1e-12);
            assert!((c.y().abs() - t).abs() < 1e-12);
            assert!((c.z().abs() - t).abs() < 1e-12);
        }
    }

    #[test]
    fn icosahedron_hull_circumcenters_are_face_centroids() {
        let s = solid(SolidKind::Icosahedron);
        let h = build_hull(s.vertices()).unwrap();
        assert_eq!(h.facet_count(), 20);
        let centers = h.delaunay_circumcenters().unwrap();
        for f in 0..20 {
            let g = crate::sphgeom::centroid(&s.face_triangle(f)).unwrap();
            let best = centers
                .iter()
                .map(|c| sph_dist(*c, g).0)
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-10, "face {f} centroid unmatched: {best}");
        }
    }

    #[test]
    fn hemispherical_input_is_not_origin_interior() {
        let s = solid(SolidKind::Tetrahedron);
        let pole = Vec3::new(0.0, 0.0, 2.0);
        let pts: Vec<UnitVec3> = s
            .vertices()
            .iter()
            .map(|v| normalize(v.as_vec() + pole).unwrap())
            .collect();
        let h = build_hull(&pts).unwrap();
        assert!(!h.origin_interior());
        assert_eq!(
            h.delaunay_circumcenters(),
            Err(GeomError::OriginNotInterior)
        );
    }

    #[test]
    fn degenerate_and_tiny_inputs() {
        assert_eq!(
            build_hull(&[uv(1.0, 0.0, 0.0), uv(0.0, 1.0, 0.0)]).err(),
            Some(GeomError::TooFewPoints { need: 4, got: 2 }),
            "too few"
        );
        // four points on one great circle are coplanar
        let pts = [
            uv(1.0, 0.0, 0.0),
            uv(0.0, 1.0, 0.0),
            uv(-1.0, 0.0, 0.0),
            uv(0.0, -1.0, 0.0),
        ];
        assert_eq!(build_hull(&pts).err(), Some(GeomError::DegenerateHull));
    }

    #[test]
    fn random_points_all_become_vertices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let n = 100;
            let pts: Vec<UnitVec3> = (0..n)
                .map(|_| {
                    loop {
                        let v = Vec3::new(
                            rng.gen_range(-1.0..1.0),
                            rng.gen_range(-1.0..1.0),
                            rng.gen_range(-1.0..1.0),
                        );
                        if v.norm() > 0.1 && v.norm() < 1.0 {
                            break normalize(v).unwrap();
                        }
                    }
                })
                .collect();
            let h = build_hull(&pts).unwrap();
            assert_eq!(h.facet_count(), 2 * n - 4);
            assert_eq!(h.vertex_indices().len(), n);
            assert_eq!(h.euler_characteristic(), 2);
            assert!(h.max_plane_violation() < 1e-10);

            // empty circumcircle: no point strictly inside any facet circle
            for f in h.facets() {
                let (c, _) = h.facet_plane(f);
                let r = h.facet_circumradius(f).0;
                for p in h.points() {
                    assert!(sph_dist(c, *p).0 > r - EMPTY_CIRCLE_SLACK);
                }
            }
        }
    }

    #[test]
    fn deterministic_facet_set() {
        let s = solid(SolidKind::Icosahedron);
        let h1 = build_hull(s.vertices()).unwrap();
        let h2 = build_hull(s.vertices()).unwrap();
        let f1: Vec<[u32; 3]> = h1.facets().map(|f| f.v).collect();
        let f2: Vec<[u32; 3]> = h2.facets().map(|f| f.v).collect();
        assert_eq!(f1, f2);
    }

    #[test]
    fn incremental_events_report_created_facets() {
        let s = solid(SolidKind::Octahedron);
        let mut b = HullBuilder::new();
        let mut created = 0usize;
        for &p in s.vertices() {
            created += b.push(p).created.len();
        }
        let alive = (0..created as u32).filter(|&i| b.facet_alive(i)).count();
        let h = b.finish().unwrap();
        assert_eq!(alive, h.facet_count());
    }
}
