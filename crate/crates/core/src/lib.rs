//! Online uniform point placement on the unit sphere and exact gap-ratio
//! analysis.
//!
//! The placement strategy has two stages: project the vertices of a
//! triangular-faced Platonic seed solid (the icosahedron, opening with an
//! antipodal pair), then recursively split every spherical triangle at its
//! arc midpoints, level by level. The analysis side measures uniformity by
//! the gap ratio — the diameter of the largest empty circle over the
//! minimal pairwise distance — for every prefix of the stream, and
//! reproduces the known closed-form bounds and lower-bound constructions.
//!
//! Modules:
//! * [`sphgeom`] — spherical trigonometry kernel,
//! * [`tessellate`] — seed solids, dissection, the deterministic stream,
//! * [`hull3d`] — incremental convex hull / spherical Delaunay duality,
//! * [`gapmetrics`] — ρ_min, largest empty circle, prefix scans, oracles,
//! * [`analysis`] — closed forms, lower bounds, counterexample, tables.

pub mod analysis;
pub mod constants;
pub mod error;
pub mod gapmetrics;
pub mod hull3d;
pub mod sphgeom;
pub mod tessellate;

pub use error::{GeomError, Result};
pub use gapmetrics::{GapReport, PrefixScanner};
pub use sphgeom::{Radians, SphTriangle, UnitVec3, Vec3};
pub use tessellate::{Solid, SolidKind, TessellationStream};
