//! Platonic seed solids, recursive triangular dissection, and the
//! deterministic online point stream with exact deduplication of shared
//! subdivision vertices.
//!
//! Subdivision positions come from recursive spherical midpoints, never
//! from projecting a planar grid. A vertex has one canonical derivation:
//! points on a solid edge are derived along that edge (shared by both
//! adjacent faces, so their positions agree bit-for-bit), interior points
//! from the face-local grid.

use std::f64::consts::PI;
use std::str::FromStr;

use crate::constants::{icosahedron_edge, octahedron_edge, tetrahedron_edge};
use crate::error::{GeomError, Result};
use crate::sphgeom::{midpoint, mixed, normalize, sph_dist, Radians, SphTriangle, UnitVec3, Vec3};

/// The three Platonic solids with triangular faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolidKind {
    Tetrahedron,
    Octahedron,
    Icosahedron,
}

impl SolidKind {
    pub const ALL: [SolidKind; 3] = [
        SolidKind::Tetrahedron,
        SolidKind::Octahedron,
        SolidKind::Icosahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolidKind::Tetrahedron => "tetrahedron",
            SolidKind::Octahedron => "octahedron",
            SolidKind::Icosahedron => "icosahedron",
        }
    }

    /// Spherical edge length of the projected solid.
    pub fn edge_arc(self) -> Radians {
        Radians(match self {
            SolidKind::Tetrahedron => tetrahedron_edge(),
            SolidKind::Octahedron => octahedron_edge(),
            SolidKind::Icosahedron => icosahedron_edge(),
        })
    }

    pub fn vertex_count(self) -> usize {
        match self {
            SolidKind::Tetrahedron => 4,
            SolidKind::Octahedron => 6,
            SolidKind::Icosahedron => 12,
        }
    }

    pub fn edge_count(self) -> usize {
        match self {
            SolidKind::Tetrahedron => 6,
            SolidKind::Octahedron => 12,
            SolidKind::Icosahedron => 30,
        }
    }

    pub fn face_count(self) -> usize {
        match self {
            SolidKind::Tetrahedron => 4,
            SolidKind::Octahedron => 8,
            SolidKind::Icosahedron => 20,
        }
    }

    /// Cosine of the edge arc between adjacent vertices.
    fn adjacency_cos(self) -> f64 {
        match self {
            SolidKind::Tetrahedron => -1.0 / 3.0,
            SolidKind::Octahedron => 0.0,
            SolidKind::Icosahedron => 1.0 / 5f64.sqrt(),
        }
    }

    /// Total number of distinct tessellation vertices once depth `k` is
    /// complete: V + E(2^k − 1) + F(2^k − 1)(2^k − 2)/2.
    pub fn total_points(self, depth: u8) -> u64 {
        let m = 1u64 << depth;
        let v = self.vertex_count() as u64;
        let e = self.edge_count() as u64;
        let f = self.face_count() as u64;
        v + e * (m - 1) + f * (m - 1) * (m.saturating_sub(2)) / 2
    }
}

impl FromStr for SolidKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "tetra" | "tetrahedron" => Ok(SolidKind::Tetrahedron),
            "octa" | "octahedron" => Ok(SolidKind::Octahedron),
            "icosa" | "icosahedron" => Ok(SolidKind::Icosahedron),
            other => Err(format!("unknown solid '{other}' (tetra|octa|icosa)")),
        }
    }
}

/// A Platonic solid projected to the unit sphere: ordered vertices, faces
/// as counterclockwise (seen from outside) vertex-index triples, and the
/// sorted edge list.
#[derive(Debug, Clone)]
pub struct Solid {
    kind: SolidKind,
    vertices: Vec<UnitVec3>,
    faces: Vec<[u32; 3]>,
    edges: Vec<(u32, u32)>,
    // faces[f] uses edges face_edges[f], each as a canonical (min, max) pair
    // in ascending lexicographic order.
    face_edges: Vec<[(u32, u32); 3]>,
    // index of the first face containing each edge; that face emits the
    // edge's subdivision points.
    edge_owner: Vec<u32>,
}

/// Build a solid. For the octahedron and icosahedron the first two listed
/// vertices are an antipodal pair, matching the stream's opening move.
pub fn solid(kind: SolidKind) -> Solid {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let raw: Vec<Vec3> = match kind {
        SolidKind::Tetrahedron => vec![
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(1.0, -1.0, -1.0),
            Vec3::new(-1.0, 1.0, -1.0),
            Vec3::new(-1.0, -1.0, 1.0),
        ],
        SolidKind::Octahedron => vec![
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(-1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, -1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
            Vec3::new(0.0, 0.0, -1.0),
        ],
        // Circular permutations of (0, ±1, ±φ), listed antipodal pair by
        // antipodal pair.
        SolidKind::Icosahedron => vec![
            Vec3::new(0.0, -1.0, phi),
            Vec3::new(0.0, 1.0, -phi),
            Vec3::new(0.0, 1.0, phi),
            Vec3::new(0.0, -1.0, -phi),
            Vec3::new(1.0, phi, 0.0),
            Vec3::new(-1.0, -phi, 0.0),
            Vec3::new(-1.0, phi, 0.0),
            Vec3::new(1.0, -phi, 0.0),
            Vec3::new(phi, 0.0, 1.0),
            Vec3::new(-phi, 0.0, -1.0),
            Vec3::new(-phi, 0.0, 1.0),
            Vec3::new(phi, 0.0, -1.0),
        ],
    };
    let vertices: Vec<UnitVec3> = raw.into_iter().map(|v| normalize(v).unwrap()).collect();

    let n = vertices.len();
    let target = kind.adjacency_cos();
    let adjacent =
        |i: usize, j: usize| -> bool { (vertices[i].dot(vertices[j]) - target).abs() < 1e-9 };

    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if adjacent(i, j) {
                edges.push((i as u32, j as u32));
            }
        }
    }

    let mut faces = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if !adjacent(i, j) {
                continue;
            }
            for k in (j + 1)..n {
                if adjacent(i, k) && adjacent(j, k) {
                    // store counterclockwise as seen from outside
                    if mixed(vertices[i], vertices[j], vertices[k]) > 0.0 {
                        faces.push([i as u32, j as u32, k as u32]);
                    } else {
                        faces.push([i as u32, k as u32, j as u32]);
                    }
                }
            }
        }
    }

    assert_eq!(edges.len(), kind.edge_count());
    assert_eq!(faces.len(), kind.face_count());

    let edge_index = |u: u32, v: u32| -> u32 {
        let key = (u.min(v), u.max(v));
        edges.iter().position(|e| *e == key).unwrap() as u32
    };

    let mut face_edges = Vec::with_capacity(faces.len());
    for f in &faces {
        let mut es = [
            (f[0].min(f[1]), f[0].max(f[1])),
            (f[1].min(f[2]), f[1].max(f[2])),
            (f[2].min(f[0]), f[2].max(f[0])),
        ];
        es.sort();
        face_edges.push(es);
    }

    let mut edge_owner = vec![u32::MAX; edges.len()];
    for (fi, es) in face_edges.iter().enumerate() {
        for &(u, v) in es {
            let ei = edge_index(u, v) as usize;
            if edge_owner[ei] == u32::MAX {
                edge_owner[ei] = fi as u32;
            }
        }
    }

    Solid {
        kind,
        vertices,
        faces,
        edges,
        face_edges,
        edge_owner,
    }
}

impl Solid {
    pub fn kind(&self) -> SolidKind {
        self.kind
    }

    pub fn vertices(&self) -> &[UnitVec3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[u32; 3]] {
        &self.faces
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn face_triangle(&self, f: usize) -> SphTriangle {
        let [i, j, k] = self.faces[f];
        SphTriangle::new(
            self.vertices[i as usize],
            self.vertices[j as usize],
            self.vertices[k as usize],
        )
        .expect("solid faces are non-degenerate")
    }

    fn edge_index(&self, u: u32, v: u32) -> usize {
        let key = (u.min(v), u.max(v));
        self.edges.iter().position(|e| *e == key).unwrap()
    }
}

/// Triangular dissection σ: split a spherical triangle into four by the
/// spherical midpoints of its arcs. Children are
/// ⟨a, m_ab, m_ac⟩, ⟨m_ab, b, m_bc⟩, ⟨c, m_ac, m_bc⟩ and the central
/// ⟨m_ab, m_ac, m_bc⟩.
pub fn dissect(t: &SphTriangle) -> Result<[SphTriangle; 4]> {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let mab = midpoint(a, b)?;
    let mac = midpoint(a, c)?;
    let mbc = midpoint(b, c)?;
    Ok([
        SphTriangle::new(a, mab, mac)?,
        SphTriangle::new(mab, b, mbc)?,
        SphTriangle::new(c, mac, mbc)?,
        SphTriangle::new(mab, mac, mbc)?,
    ])
}

/// The nine edges induced by one dissection step: six on the boundary of
/// the parent, three bounding the central triangle.
pub fn edge_set(t: &SphTriangle) -> Result<[(UnitVec3, UnitVec3); 9]> {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let mab = midpoint(a, b)?;
    let mac = midpoint(a, c)?;
    let mbc = midpoint(b, c)?;
    Ok([
        (a, mab),
        (mab, b),
        (b, mbc),
        (mbc, c),
        (c, mac),
        (mac, a),
        (mac, mbc),
        (mbc, mab),
        (mab, mac),
    ])
}

/// Symbolic identity of a tessellation vertex; two ids are equal iff they
/// denote the same geometric point of the global subdivision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointId {
    /// A vertex of the seed solid.
    SolidVertex(u32),
    /// A point on a solid edge at dyadic position `num / 2^level` measured
    /// from the lower-indexed endpoint; `num` is odd (fully reduced).
    EdgePoint { edge: (u32, u32), num: u32, level: u8 },
    /// A face-interior grid point, keyed by its coordinates at the first
    /// level where it exists (i or j odd).
    FaceInterior { face: u32, i: u32, j: u32, level: u8 },
}

fn tri_len(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// Flat index into a triangular grid with rows j = 0..=n, row j holding
/// columns i = 0..=n−j.
fn tri_idx(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(i + j <= n);
    j * (n + 1) - j.saturating_sub(1) * j / 2 + i
}

/// The global subdivision state: per-edge dyadic point registries plus a
/// per-face triangular grid, refined level by level.
#[derive(Debug, Clone)]
pub struct Tessellation {
    solid: Solid,
    depth: u8,
    edge_pts: Vec<Vec<UnitVec3>>,
    face_grid: Vec<Vec<UnitVec3>>,
}

impl Tessellation {
    pub fn new(kind: SolidKind) -> Self {
        let s = solid(kind);
        let edge_pts = s
            .edges
            .iter()
            .map(|&(u, v)| vec![s.vertices[u as usize], s.vertices[v as usize]])
            .collect();
        let face_grid = s
            .faces
            .iter()
            .map(|&[a, b, c]| {
                // depth 0 grid, n = 1: corners (0,0)=A, (1,0)=B, (0,1)=C
                vec![
                    s.vertices[a as usize],
                    s.vertices[b as usize],
                    s.vertices[c as usize],
                ]
            })
            .collect();
        Tessellation {
            solid: s,
            depth: 0,
            edge_pts,
            face_grid,
        }
    }

    pub fn solid(&self) -> &Solid {
        &self.solid
    }

    pub fn depth(&self) -> u8 {
        self.depth
    }

    /// Position of the grid point (i, j) of face `f` at level `level`
    /// (level ≤ current depth; coordinates are scaled up internally).
    fn grid_pos(&self, f: usize, i: u32, j: u32, level: u8) -> UnitVec3 {
        let shift = (self.depth - level) as u32;
        let n = 1usize << self.depth;
        self.face_grid[f][tri_idx((i << shift) as usize, (j << shift) as usize, n)]
    }

    fn edge_pos(&self, e: usize, num: u32, level: u8) -> UnitVec3 {
        let shift = (self.depth - level) as u32;
        self.edge_pts[e][(num << shift) as usize]
    }

    /// Split every edge of the current level at its spherical midpoint.
    pub fn refine(&mut self) {
        let n_old = 1usize << self.depth;
        let n = 2 * n_old;

        for pts in &mut self.edge_pts {
            let mut new = Vec::with_capacity(n + 1);
            for i in 0..n_old {
                new.push(pts[i]);
                new.push(midpoint(pts[i], pts[i + 1]).expect("subdivided arcs are short"));
            }
            new.push(pts[n_old]);
            *pts = new;
        }

        let zero = self.solid.vertices[0];
        for (f, &[a, b, c]) in self.solid.faces.iter().enumerate() {
            let old = &self.face_grid[f];
            let mut g = vec![zero; tri_len(n)];

            for j in 0..=n_old {
                for i in 0..=(n_old - j) {
                    g[tri_idx(2 * i, 2 * j, n)] = old[tri_idx(i, j, n_old)];
                }
            }

            // Boundary rows come from the canonical edge registries. The
            // parity rule below would produce the same bits (midpoint is
            // argument-symmetric), but the edge registry is the one
            // canonical derivation.
            let edge_lookup = |u: u32, v: u32, t: usize| -> UnitVec3 {
                let e = self.solid.edge_index(u, v);
                if u < v {
                    self.edge_pts[e][t]
                } else {
                    self.edge_pts[e][n - t]
                }
            };
            for t in (1..n).step_by(2) {
                g[tri_idx(t, 0, n)] = edge_lookup(a, b, t);
                g[tri_idx(0, t, n)] = edge_lookup(a, c, t);
                g[tri_idx(n - t, t, n)] = edge_lookup(b, c, t);
            }

            // Interior odd-parity points are midpoints of the mesh edge
            // they bisect; all parents have even coordinates.
            for j in 1..n {
                for i in 1..(n - j) {
                    let (pi, pj, qi, qj) = match (i % 2, j % 2) {
                        (1, 0) => (i - 1, j, i + 1, j),
                        (0, 1) => (i, j - 1, i, j + 1),
                        (1, 1) => (i + 1, j - 1, i - 1, j + 1),
                        _ => continue,
                    };
                    g[tri_idx(i, j, n)] =
                        midpoint(g[tri_idx(pi, pj, n)], g[tri_idx(qi, qj, n)]).unwrap();
                }
            }

            self.face_grid[f] = g;
        }

        self.depth += 1;
    }

    fn ensure_depth(&mut self, k: u8) {
        while self.depth < k {
            self.refine();
        }
    }

    /// The points new at level `k`, in canonical order: faces by stored
    /// index; within a face the new midpoints of each canonical edge (only
    /// from the edge's owner face) in ascending position, then interior
    /// points row-major.
    pub fn new_points_at(&mut self, k: u8) -> Vec<(PointId, UnitVec3)> {
        self.ensure_depth(k);
        if k == 0 {
            return self
                .solid
                .vertices
                .iter()
                .enumerate()
                .map(|(i, &v)| (PointId::SolidVertex(i as u32), v))
                .collect();
        }

        let n = 1u32 << k;
        let mut out = Vec::new();
        for f in 0..self.solid.faces.len() {
            for &(u, v) in &self.solid.face_edges[f] {
                let e = self.solid.edge_index(u, v);
                if self.solid.edge_owner[e] != f as u32 {
                    continue; // the owning face already emitted these
                }
                for num in (1..n).step_by(2) {
                    let id = PointId::EdgePoint {
                        edge: (u, v),
                        num,
                        level: k,
                    };
                    out.push((id, self.edge_pos(e, num, k)));
                }
            }
            for j in 1..n {
                for i in 1..(n - j) {
                    if i % 2 == 1 || j % 2 == 1 {
                        let id = PointId::FaceInterior {
                            face: f as u32,
                            i,
                            j,
                            level: k,
                        };
                        out.push((id, self.grid_pos(f, i, j, k)));
                    }
                }
            }
        }
        out
    }

    /// All points of one face's complete depth-`k` dissection, row-major.
    pub fn face_points(&mut self, f: usize, k: u8) -> Vec<UnitVec3> {
        self.ensure_depth(k);
        let n = 1u32 << k;
        let mut out = Vec::with_capacity(tri_len(n as usize));
        for j in 0..=n {
            for i in 0..=(n - j) {
                out.push(self.grid_pos(f, i, j, k));
            }
        }
        out
    }
}

/// Points of the global depth-`k` subdivision that are new at level `k`
/// (for `k = 0`, the solid's vertices), each exactly once.
pub fn level_points(s: &Solid, k: u8) -> Vec<(PointId, UnitVec3)> {
    let mut t = Tessellation::new(s.kind());
    t.new_points_at(k)
}

/// Deterministic, resumable point stream: level 0 first (vertices, with the
/// antipodal pair leading where one exists), then each deeper level's new
/// points in canonical order.
#[derive(Debug, Clone)]
pub struct TessellationStream {
    tess: Tessellation,
    buf: Vec<UnitVec3>,
    pos: usize,
    level: u8,
    emitted: u64,
}

impl TessellationStream {
    pub fn new(kind: SolidKind) -> Self {
        let mut tess = Tessellation::new(kind);
        let buf = tess.new_points_at(0).into_iter().map(|(_, p)| p).collect();
        TessellationStream {
            tess,
            buf,
            pos: 0,
            level: 0,
            emitted: 0,
        }
    }

    /// Depth of the level currently being emitted.
    pub fn level(&self) -> u8 {
        self.level
    }

    /// Position inside the current level.
    pub fn position_in_level(&self) -> usize {
        self.pos
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    /// Emit the next point; the stream is infinite.
    pub fn next_point(&mut self) -> (u64, UnitVec3) {
        if self.pos == self.buf.len() {
            self.level += 1;
            self.buf = self
                .tess
                .new_points_at(self.level)
                .into_iter()
                .map(|(_, p)| p)
                .collect();
            self.pos = 0;
        }
        let p = self.buf[self.pos];
        let i = self.emitted;
        self.pos += 1;
        self.emitted += 1;
        (i, p)
    }

    /// Collect the next `n` points.
    pub fn take_points(&mut self, n: usize) -> Vec<UnitVec3> {
        (0..n).map(|_| self.next_point().1).collect()
    }
}

impl Iterator for TessellationStream {
    type Item = (u64, UnitVec3);

    fn next(&mut self) -> Option<(u64, UnitVec3)> {
        Some(self.next_point())
    }
}

/// Face-local dissection grid for a standalone spherical triangle, built by
/// the same midpoint recursion as the global tessellation (so the two agree
/// bit-for-bit on any shared face).
#[derive(Debug, Clone)]
pub struct FaceGrid {
    depth: u8,
    pts: Vec<UnitVec3>,
}

impl FaceGrid {
    pub fn build(t: &SphTriangle, depth: u8) -> Result<Self> {
        let mut n = 1usize;
        let mut pts = vec![t.a(), t.b(), t.c()];
        for _ in 0..depth {
            let n2 = 2 * n;
            let mut g = vec![t.a(); tri_len(n2)];
            for j in 0..=n {
                for i in 0..=(n - j) {
                    g[tri_idx(2 * i, 2 * j, n2)] = pts[tri_idx(i, j, n)];
                }
            }
            for j in 0..=n2 {
                for i in 0..=(n2 - j) {
                    let (pi, pj, qi, qj) = match (i % 2, j % 2) {
                        (1, 0) => (i - 1, j, i + 1, j),
                        (0, 1) => (i, j - 1, i, j + 1),
                        (1, 1) => (i + 1, j - 1, i - 1, j + 1),
                        _ => continue,
                    };
                    g[tri_idx(i, j, n2)] =
                        midpoint(g[tri_idx(pi, pj, n2)], g[tri_idx(qi, qj, n2)])?;
                }
            }
            pts = g;
            n = n2;
        }
        Ok(FaceGrid { depth, pts })
    }

    pub fn depth(&self) -> u8 {
        self.depth
    }

    pub fn side(&self) -> usize {
        1 << self.depth
    }

    pub fn points(&self) -> &[UnitVec3] {
        &self.pts
    }

    pub fn at(&self, i: usize, j: usize) -> UnitVec3 {
        self.pts[tri_idx(i, j, self.side())]
    }

    /// Subsample down to the complete point set of a shallower depth
    /// (positions are unchanged by refinement), row-major.
    pub fn at_depth(&self, k: u8) -> Vec<UnitVec3> {
        assert!(k <= self.depth);
        let stride = 1usize << (self.depth - k);
        let m = 1usize << k;
        let mut out = Vec::with_capacity(tri_len(m));
        for j in 0..=m {
            for i in 0..=(m - j) {
                out.push(self.at(i * stride, j * stride));
            }
        }
        out
    }

    /// All mesh edges of the dissection at the grid's own depth, as index
    /// pairs into `points()`.
    pub fn mesh_edges(&self) -> Vec<(usize, usize)> {
        let n = self.side();
        let mut out = Vec::new();
        for j in 0..=n {
            for i in 0..=(n - j) {
                if i + j < n {
                    out.push((tri_idx(i, j, n), tri_idx(i + 1, j, n)));
                    out.push((tri_idx(i, j, n), tri_idx(i, j + 1, n)));
                    out.push((tri_idx(i + 1, j, n), tri_idx(i, j + 1, n)));
                }
            }
        }
        out
    }

    /// Grid coordinates of the central equilateral triangle at depth `k`:
    /// the central child of the previous depth's central triangle.
    pub fn central_corner_coords(k: u8) -> [(usize, usize); 3] {
        assert!(k >= 1);
        let mut c = [(1usize, 0usize), (0, 1), (1, 1)];
        for _ in 1..k {
            let d = [
                (2 * c[0].0, 2 * c[0].1),
                (2 * c[1].0, 2 * c[1].1),
                (2 * c[2].0, 2 * c[2].1),
            ];
            c = [
                ((d[0].0 + d[1].0) / 2, (d[0].1 + d[1].1) / 2),
                ((d[0].0 + d[2].0) / 2, (d[0].1 + d[2].1) / 2),
                ((d[1].0 + d[2].0) / 2, (d[1].1 + d[2].1) / 2),
            ];
        }
        c
    }
}

/// Complete point set of σ^k applied to a standalone triangle.
pub fn dissection_points(t: &SphTriangle, k: u8) -> Result<Vec<UnitVec3>> {
    Ok(FaceGrid::build(t, k)?.pts)
}

/// An equilateral spherical triangle with edge `alpha`, placed around the
/// north pole. Test and analysis helper.
pub fn equilateral_triangle(alpha: Radians) -> Result<SphTriangle> {
    let a = alpha.0;
    if !(a > 0.0 && a < 2.0 * PI / 3.0) {
        return Err(GeomError::OutOfRange {
            what: "equilateral edge length",
            value: a,
        });
    }
    // circumradius r: sin(r) = 2 sin(a/2) / √3
    let r = (2.0 * (a / 2.0).sin() / 3f64.sqrt()).asin();
    let mk = |ang: f64| UnitVec3::new(r.sin() * ang.cos(), r.sin() * ang.sin(), r.cos()).unwrap();
    let t = SphTriangle::new(
        mk(0.0),
        mk(2.0 * PI / 3.0),
        mk(4.0 * PI / 3.0),
    )?;
    debug_assert!((sph_dist(t.a(), t.b()).0 - a).abs() < 1e-9);
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{COMPOUND_TOL, CONSTRUCTED_TOL};
    use crate::sphgeom::spherical_area;
    use std::collections::HashSet;

    #[test]
    fn solids_have_expected_shape() {
        for kind in SolidKind::ALL {
            let s = solid(kind);
            assert_eq!(s.vertices().len(), kind.vertex_count());
            assert_eq!(s.faces().len(), kind.face_count());
            assert_eq!(s.edges().len(), kind.edge_count());
            let alpha = kind.edge_arc().0;
            for &(u, v) in s.edges() {
                let d = sph_dist(s.vertices()[u as usize], s.vertices()[v as usize]).0;
                assert!((d - alpha).abs() < CONSTRUCTED_TOL);
            }
            for f in 0..s.faces().len() {
                let t = s.face_triangle(f);
                assert!(t.is_equilateral(CONSTRUCTED_TOL));
                assert!(mixed(t.a(), t.b(), t.c()) > 0.0, "faces stored ccw");
            }
        }
    }

    #[test]
    fn octahedron_and_icosahedron_open_with_antipodal_pair() {
        for kind in [SolidKind::Octahedron, SolidKind::Icosahedron] {
            let s = solid(kind);
            let d = sph_dist(s.vertices()[0], s.vertices()[1]).0;
            assert!((d - PI).abs() < CONSTRUCTED_TOL);
        }
    }

    #[test]
    fn icosahedron_leading_vertices() {
        let s = solid(SolidKind::Icosahedron);
        let v0 = s.vertices()[0];
        assert!((v0.x() - 0.0).abs() < 1e-12);
        assert!((v0.y() + 0.5257311121191336).abs() < CONSTRUCTED_TOL);
        assert!((v0.z() - 0.8506508083520399).abs() < CONSTRUCTED_TOL);
        let v1 = s.vertices()[1];
        assert!((v1.y() - 0.5257311121191336).abs() < CONSTRUCTED_TOL);
        assert!((v1.z() + 0.8506508083520399).abs() < CONSTRUCTED_TOL);
    }

    #[test]
    fn icosahedron_face_area_and_angles() {
        let s = solid(SolidKind::Icosahedron);
        let t = s.face_triangle(0);
        assert!((spherical_area(&t).unwrap().0 - PI / 5.0).abs() < COMPOUND_TOL);
        let (a, _, _) = crate::sphgeom::interior_angles(&t).unwrap();
        assert!((a.0 - 2.0 * PI / 5.0).abs() < COMPOUND_TOL);
    }

    #[test]
    fn dissect_preserves_area_and_central_equilateral() {
        let s = solid(SolidKind::Icosahedron);
        let t = s.face_triangle(0);
        let children = dissect(&t).unwrap();
        let sum: f64 = children
            .iter()
            .map(|c| spherical_area(c).unwrap().0)
            .sum();
        assert!((sum - spherical_area(&t).unwrap().0).abs() < COMPOUND_TOL);
        assert!(children[3].is_equilateral(CONSTRUCTED_TOL));
        // central edge of the icosahedron face dissection is exactly π/5
        let y = sph_dist(children[3].a(), children[3].b()).0;
        assert!((y - PI / 5.0).abs() < CONSTRUCTED_TOL);
    }

    #[test]
    fn dissect_octant_central_edge() {
        let t = equilateral_triangle(Radians(PI / 2.0)).unwrap();
        let children = dissect(&t).unwrap();
        let y = sph_dist(children[3].a(), children[3].b()).0;
        assert!((y - PI / 3.0).abs() < CONSTRUCTED_TOL);
    }

    #[test]
    fn central_triangle_stays_equilateral_under_recursion() {
        // depth 6 on a couple of edge lengths
        for alpha in [0.3, 1.0, PI / 2.0] {
            let mut t = equilateral_triangle(Radians(alpha)).unwrap();
            for _ in 0..6 {
                t = dissect(&t).unwrap()[3];
                assert!(t.is_equilateral(CONSTRUCTED_TOL));
            }
        }
    }

    #[test]
    fn edge_set_lengths() {
        let s = solid(SolidKind::Icosahedron);
        let t = s.face_triangle(0);
        let alpha = SolidKind::Icosahedron.edge_arc().0;
        let edges = edge_set(&t).unwrap();
        assert_eq!(edges.len(), 9);
        let lengths: Vec<f64> = edges.iter().map(|&(u, v)| sph_dist(u, v).0).collect();
        for l in &lengths[..6] {
            assert!((l - alpha / 2.0).abs() < CONSTRUCTED_TOL);
        }
        for l in &lengths[6..] {
            assert!((l - lengths[6]).abs() < CONSTRUCTED_TOL);
        }
        let min = lengths.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = lengths.iter().cloned().fold(0.0, f64::max);
        assert!((min - alpha / 2.0).abs() < CONSTRUCTED_TOL);
        assert!((max - lengths[8]).abs() < CONSTRUCTED_TOL);
    }

    #[test]
    fn level_point_counts_match_closed_form() {
        for kind in SolidKind::ALL {
            let mut t = Tessellation::new(kind);
            let mut total = 0u64;
            for k in 0..=5u8 {
                total += t.new_points_at(k).len() as u64;
                assert_eq!(total, kind.total_points(k), "{kind:?} depth {k}");
            }
        }
    }

    #[test]
    fn total_point_closed_forms() {
        // 2·4^k + 2, 4·4^k + 2 and 10·4^k + 2 points once level k completes
        for k in 0..=6u8 {
            let p = 1u64 << (2 * k); // 4^k
            assert_eq!(SolidKind::Tetrahedron.total_points(k), 2 * p + 2);
            assert_eq!(SolidKind::Octahedron.total_points(k), 4 * p + 2);
            assert_eq!(SolidKind::Icosahedron.total_points(k), 10 * p + 2);
        }
    }

    #[test]
    fn icosahedron_level_counts() {
        let s = solid(SolidKind::Icosahedron);
        assert_eq!(level_points(&s, 0).len(), 12);
        assert_eq!(level_points(&s, 1).len(), 30);
        assert_eq!(level_points(&s, 2).len(), 120);
    }

    #[test]
    fn point_ids_are_never_repeated() {
        let mut t = Tessellation::new(SolidKind::Icosahedron);
        let mut seen = HashSet::new();
        for k in 0..=3u8 {
            for (id, _) in t.new_points_at(k) {
                assert!(seen.insert(id), "duplicate id {id:?}");
            }
        }
        assert_eq!(seen.len(), SolidKind::Icosahedron.total_points(3) as usize);
    }

    #[test]
    fn shared_edge_points_are_bitwise_identical_across_faces() {
        // For each solid edge, the owning face's grid row and the other
        // face's grid row must hold identical bits.
        let mut t = Tessellation::new(SolidKind::Icosahedron);
        t.ensure_depth(3);
        let n = 1u32 << 3;
        let s = t.solid.clone();
        for (e, &(u, v)) in s.edges().iter().enumerate() {
            let faces: Vec<usize> = (0..s.faces().len())
                .filter(|&f| s.face_edges[f].contains(&(u, v)))
                .collect();
            assert_eq!(faces.len(), 2);
            for num in 1..n {
                let reference = t.edge_pos(e, num, 3);
                for &f in &faces {
                    let [a, b, c] = s.faces()[f];
                    // locate (u, v) on this face's boundary and read the
                    // grid position
                    let got = if (a, b) == (u, v) || (b, a) == (u, v) {
                        let i = if a == u { num } else { n - num };
                        t.grid_pos(f, i, 0, 3)
                    } else if (a, c) == (u, v) || (c, a) == (u, v) {
                        let j = if a == u { num } else { n - num };
                        t.grid_pos(f, 0, j, 3)
                    } else {
                        let tpos = if b == u { num } else { n - num };
                        t.grid_pos(f, n - tpos, tpos, 3)
                    };
                    assert_eq!(got, reference);
                }
            }
        }
    }

    #[test]
    fn global_min_distance_halves_each_level() {
        // ρ_min of the complete level-k set is α/2^k.
        for kind in SolidKind::ALL {
            let alpha = kind.edge_arc().0;
            let mut t = Tessellation::new(kind);
            let mut pts: Vec<UnitVec3> = Vec::new();
            for k in 0..=3u8 {
                pts.extend(t.new_points_at(k).into_iter().map(|(_, p)| p));
                let mut min = f64::INFINITY;
                for i in 0..pts.len() {
                    for j in (i + 1)..pts.len() {
                        min = min.min(sph_dist(pts[i], pts[j]).0);
                    }
                }
                let want = alpha / f64::from(1u32 << k);
                assert!(
                    (min - want).abs() < CONSTRUCTED_TOL,
                    "{kind:?} k={k}: {min} vs {want}"
                );
            }
        }
    }

    #[test]
    fn stream_is_deterministic_and_matches_levels() {
        let mut s1 = TessellationStream::new(SolidKind::Icosahedron);
        let mut s2 = TessellationStream::new(SolidKind::Icosahedron);
        let a = s1.take_points(200);
        let b = s2.take_points(200);
        assert_eq!(a, b);

        let sdl = solid(SolidKind::Icosahedron);
        let lvl0: Vec<UnitVec3> = level_points(&sdl, 0).into_iter().map(|(_, p)| p).collect();
        let lvl1: Vec<UnitVec3> = level_points(&sdl, 1).into_iter().map(|(_, p)| p).collect();
        assert_eq!(&a[..12], &lvl0[..]);
        assert_eq!(&a[12..42], &lvl1[..]);
    }

    #[test]
    fn stream_opens_antipodal_and_new_points_sit_at_half_edge() {
        let mut st = TessellationStream::new(SolidKind::Icosahedron);
        let pts = st.take_points(42);
        assert!((sph_dist(pts[0], pts[1]).0 - PI).abs() < CONSTRUCTED_TOL);
        let alpha = SolidKind::Icosahedron.edge_arc().0;
        for n in 12..42 {
            let mut min = f64::INFINITY;
            for j in 0..n {
                min = min.min(sph_dist(pts[n], pts[j]).0);
            }
            assert!((min - alpha / 2.0).abs() < CONSTRUCTED_TOL, "point {n}");
        }
    }

    #[test]
    fn face_grid_matches_global_face() {
        let mut t = Tessellation::new(SolidKind::Icosahedron);
        let global = t.face_points(0, 3);
        let local = FaceGrid::build(&t.solid().face_triangle(0), 3).unwrap();
        assert_eq!(global.len(), local.points().len());
        for (g, l) in global.iter().zip(local.points()) {
            assert_eq!(g, l, "bitwise identical derivations");
        }
    }

    #[test]
    fn boundary_min_and_central_max_edges() {
        // Min edge of the depth-k mesh is on the boundary (α/2^k); max edge
        // is an edge of the central equilateral triangle. Holds on (0, π/2].
        for alpha in [0.4, 1.0, icosahedron_edge(), PI / 2.0] {
            let t = equilateral_triangle(Radians(alpha)).unwrap();
            for k in 1..=4u8 {
                let g = FaceGrid::build(&t, k).unwrap();
                let mut min = f64::INFINITY;
                let mut max = 0.0f64;
                for (i, j) in g.mesh_edges() {
                    let d = sph_dist(g.points()[i], g.points()[j]).0;
                    min = min.min(d);
                    max = max.max(d);
                }
                let want_min = alpha / f64::from(1u32 << k);
                assert!((min - want_min).abs() < CONSTRUCTED_TOL, "α={alpha} k={k}");
                let cc = FaceGrid::central_corner_coords(k);
                let c0 = g.at(cc[0].0, cc[0].1);
                let c1 = g.at(cc[1].0, cc[1].1);
                let central = sph_dist(c0, c1).0;
                assert!((max - central).abs() < CONSTRUCTED_TOL, "α={alpha} k={k}");
            }
        }
    }

    #[test]
    fn central_edge_follows_iterated_formula() {
        // iterate y = 2 asin(tan(α/2)/2) and compare with the measured
        // central edge of the grid
        let alpha = icosahedron_edge();
        let t = equilateral_triangle(Radians(alpha)).unwrap();
        let mut y = alpha;
        for k in 1..=4u8 {
            y = 2.0 * ((y / 2.0).tan() / 2.0).asin();
            let g = FaceGrid::build(&t, k).unwrap();
            let cc = FaceGrid::central_corner_coords(k);
            let measured = sph_dist(g.at(cc[0].0, cc[0].1), g.at(cc[1].0, cc[1].1)).0;
            assert!((measured - y).abs() < 1e-10, "k={k}: {measured} vs {y}");
        }
    }

    #[test]
    fn solid_kind_parsing() {
        assert_eq!("icosa".parse::<SolidKind>().unwrap(), SolidKind::Icosahedron);
        assert_eq!(
            "Tetrahedron".parse::<SolidKind>().unwrap(),
            SolidKind::Tetrahedron
        );
        assert!("cube".parse::<SolidKind>().is_err());
    }
}
