//! Spherical trigonometry kernel: unit vectors, spherical triangles,
//! distances, midpoints, circumcenters, centroids, angles, areas and
//! tangent-plane projection.
//!
//! Distances are computed as `atan2(‖a × b‖, a · b)` rather than
//! `acos(a · b)`; the arccosine form cancels catastrophically near 0 and π.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use crate::constants::{
    ANTIPODAL_EPS, CONSTRUCTED_TOL, CONTAINS_TOL, MIXED_PRODUCT_EPS, NORM_TOL, ZERO_VECTOR_EPS,
};
use crate::error::{GeomError, Result};

/// Plain 3-vector. Not necessarily unit length; see [`UnitVec3`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3 {
            x: self.y * o.z - self.z * o.y,
            y: self.z * o.x - self.x * o.z,
            z: self.x * o.y - self.y * o.x,
        }
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// A point on the unit 2-sphere: a 3-vector with `| ‖v‖ − 1 | ≤ NORM_TOL`.
///
/// The universal currency of the crate. Construction goes through
/// [`normalize`] / [`UnitVec3::new`] (which rescale) or
/// [`UnitVec3::from_unit_coords`] (which validates and keeps the bits,
/// used when reading points back from files).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVec3(Vec3);

impl UnitVec3 {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        normalize(Vec3::new(x, y, z))
    }

    /// Accepts coordinates that are already unit length, bit-for-bit.
    pub fn from_unit_coords(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Vec3::new(x, y, z);
        let n = v.norm();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(GeomError::OutOfRange {
                what: "unit vector norm",
                value: n,
            });
        }
        Ok(UnitVec3(v))
    }

    pub fn x(self) -> f64 {
        self.0.x
    }

    pub fn y(self) -> f64 {
        self.0.y
    }

    pub fn z(self) -> f64 {
        self.0.z
    }

    pub fn as_vec(self) -> Vec3 {
        self.0
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.0.x, self.0.y, self.0.z]
    }

    pub fn dot(self, o: UnitVec3) -> f64 {
        self.0.dot(o.0)
    }

    pub fn cross(self, o: UnitVec3) -> Vec3 {
        self.0.cross(o.0)
    }

    pub fn antipode(self) -> UnitVec3 {
        UnitVec3(-self.0)
    }

    /// Lexicographic order on (x, y, z); deterministic tie-breaking.
    pub fn lex_cmp(self, o: UnitVec3) -> Ordering {
        self.x()
            .total_cmp(&o.x())
            .then(self.y().total_cmp(&o.y()))
            .then(self.z().total_cmp(&o.z()))
    }

    /// Some unit vector orthogonal to `self`, chosen deterministically.
    pub fn any_orthogonal(self) -> UnitVec3 {
        let ax = self.x().abs();
        let ay = self.y().abs();
        let az = self.z().abs();
        let axis = if ax <= ay && ax <= az {
            Vec3::new(1.0, 0.0, 0.0)
        } else if ay <= az {
            Vec3::new(0.0, 1.0, 0.0)
        } else {
            Vec3::new(0.0, 0.0, 1.0)
        };
        normalize(self.0.cross(axis)).expect("axis was chosen non-parallel")
    }
}

/// An angle or arc length in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Radians(pub f64);

impl Radians {
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn to_degrees(self) -> f64 {
        self.0.to_degrees()
    }
}

impl std::fmt::Display for Radians {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} rad", self.0)
    }
}

/// Scale a raw vector to unit length.
pub fn normalize(v: Vec3) -> Result<UnitVec3> {
    let n = v.norm();
    if n <= ZERO_VECTOR_EPS {
        return Err(GeomError::ZeroVector);
    }
    Ok(UnitVec3(Vec3::new(v.x / n, v.y / n, v.z / n)))
}

/// Great-circle (orthodromic) distance, in [0, π].
pub fn sph_dist(a: UnitVec3, b: UnitVec3) -> Radians {
    Radians(a.cross(b).norm().atan2(a.dot(b)))
}

/// Spherical midpoint on the minor arc between two non-antipodal points.
///
/// Symmetric in its arguments bit-for-bit: the component sums commute, so
/// shared subdivision vertices derived from either side of an edge agree
/// exactly.
pub fn midpoint(a: UnitVec3, b: UnitVec3) -> Result<UnitVec3> {
    if sph_dist(a, b).0 >= PI - ANTIPODAL_EPS {
        return Err(GeomError::AntipodalPair);
    }
    normalize(a.as_vec() + b.as_vec())
}

/// Mixed product a · (b × c); zero iff the three directions are coplanar
/// with the origin (i.e. lie on one great circle).
pub fn mixed(a: UnitVec3, b: UnitVec3, c: UnitVec3) -> f64 {
    a.as_vec().dot(b.as_vec().cross(c.as_vec()))
}

/// Both spherical circumcenters of a raw point triple, or an error when the
/// triple lies on one great circle. The first center is the one on the
/// positively-oriented side of (a, b, c).
pub fn circumcenters_raw(a: UnitVec3, b: UnitVec3, c: UnitVec3) -> Result<(UnitVec3, UnitVec3)> {
    let m = mixed(a, b, c);
    if m.abs() <= MIXED_PRODUCT_EPS {
        return Err(GeomError::DegenerateTriangle);
    }
    let n = (b.as_vec() - a.as_vec()).cross(c.as_vec() - a.as_vec());
    // ‖n‖ ≥ |a·(b×c)| > MIXED_PRODUCT_EPS, so normalization cannot fail.
    let nhat = normalize(n)?;
    if m > 0.0 {
        Ok((nhat, nhat.antipode()))
    } else {
        Ok((nhat.antipode(), nhat))
    }
}

/// An ordered spherical triangle with pairwise distances strictly inside
/// (0, π) and positive area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphTriangle {
    a: UnitVec3,
    b: UnitVec3,
    c: UnitVec3,
}

impl SphTriangle {
    pub fn new(a: UnitVec3, b: UnitVec3, c: UnitVec3) -> Result<Self> {
        for (u, v) in [(a, b), (b, c), (c, a)] {
            let d = sph_dist(u, v).0;
            if d <= CONSTRUCTED_TOL {
                return Err(GeomError::DegenerateTriangle);
            }
            if d >= PI - ANTIPODAL_EPS {
                return Err(GeomError::AntipodalPair);
            }
        }
        if mixed(a, b, c).abs() <= MIXED_PRODUCT_EPS {
            return Err(GeomError::DegenerateTriangle);
        }
        Ok(SphTriangle { a, b, c })
    }

    pub fn a(&self) -> UnitVec3 {
        self.a
    }

    pub fn b(&self) -> UnitVec3 {
        self.b
    }

    pub fn c(&self) -> UnitVec3 {
        self.c
    }

    /// The vertex set of the triangle, in stored order.
    pub fn vertices(&self) -> [UnitVec3; 3] {
        [self.a, self.b, self.c]
    }

    /// Side lengths (|bc|, |ca|, |ab|), i.e. each opposite the same-index vertex.
    pub fn side_lengths(&self) -> [Radians; 3] {
        [
            sph_dist(self.b, self.c),
            sph_dist(self.c, self.a),
            sph_dist(self.a, self.b),
        ]
    }

    pub fn is_equilateral(&self, tol: f64) -> bool {
        let [a, b, c] = self.side_lengths();
        (a.0 - b.0).abs() <= tol && (b.0 - c.0).abs() <= tol && (a.0 - c.0).abs() <= tol
    }
}

/// Both circumcenters of the triangle; first the one on the side of the
/// triangle's own orientation.
pub fn circumcenter(t: &SphTriangle) -> Result<(UnitVec3, UnitVec3)> {
    circumcenters_raw(t.a, t.b, t.c)
}

/// Normalized vertex sum. For an equilateral triangle this is the unique
/// point equidistant from all three vertices; for other triangles it is a
/// convenience only and carries no equidistance promise.
pub fn centroid(t: &SphTriangle) -> Result<UnitVec3> {
    normalize(t.a.as_vec() + t.b.as_vec() + t.c.as_vec())
}

fn tangent_toward(at: UnitVec3, towards: UnitVec3) -> Result<Vec3> {
    let t = towards.as_vec() - at.as_vec() * at.dot(towards);
    let n = t.norm();
    if n <= ZERO_VECTOR_EPS {
        return Err(GeomError::DegenerateTriangle);
    }
    Ok(t * (1.0 / n))
}

/// Interior angles at vertices (a, b, c), each measured in the plane
/// tangent at the vertex. Each lies in (0, π).
pub fn interior_angles(t: &SphTriangle) -> Result<(Radians, Radians, Radians)> {
    let angle_at = |p: UnitVec3, q: UnitVec3, r: UnitVec3| -> Result<Radians> {
        let tq = tangent_toward(p, q)?;
        let tr = tangent_toward(p, r)?;
        Ok(Radians(tq.cross(tr).norm().atan2(tq.dot(tr))))
    };
    Ok((
        angle_at(t.a, t.b, t.c)?,
        angle_at(t.b, t.c, t.a)?,
        angle_at(t.c, t.a, t.b)?,
    ))
}

/// Spherical area by the angular excess: A + B + C − π.
pub fn spherical_area(t: &SphTriangle) -> Result<Radians> {
    let (a, b, c) = interior_angles(t)?;
    Ok(Radians(a.0 + b.0 + c.0 - PI))
}

/// Boundary-inclusive containment test for a triangle lying strictly inside
/// one hemisphere. `p` counts as inside when it is on the interior side of
/// all three edge planes, with `CONTAINS_TOL` slack for points that sit
/// exactly on an edge.
pub fn contains(t: &SphTriangle, p: UnitVec3) -> bool {
    let s = if mixed(t.a, t.b, t.c) >= 0.0 { 1.0 } else { -1.0 };
    for (u, v) in [(t.a, t.b), (t.b, t.c), (t.c, t.a)] {
        let n = u.cross(v);
        let nn = n.norm();
        if nn <= ZERO_VECTOR_EPS {
            return false;
        }
        if s * p.as_vec().dot(n) / nn < -CONTAINS_TOL {
            return false;
        }
    }
    true
}

/// Gnomonic projection of `p` onto the plane tangent at `base` (projection
/// from the sphere center). The image sits at Euclidean distance
/// tan(ζ(base, p)) from `base`; defined only inside the open hemisphere.
pub fn tangent_project(base: UnitVec3, p: UnitVec3) -> Result<Vec3> {
    let d = base.dot(p);
    if d <= 0.0 {
        return Err(GeomError::OutOfHemisphere);
    }
    Ok(p.as_vec() * (1.0 / d))
}
