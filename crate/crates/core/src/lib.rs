//! Convex cells around unit balls in 3-space.
//!
//! - [`polyhedron`]: bounded convex polyhedra from half-spaces, with full face lattice.
//! - [`metrics`]: surface area, volume, edge curvature, total edge length, inradius, diameter.
//! - [`clip`]: intersection with origin-centered cube windows.
//! - [`certificates`]: numerical checks of the area/volume/curvature/edge-length inequalities.
//! - [`packing`] and [`window`]: Voronoi tilings of periodic packings and cube-window accounting.
//! - [`optimizer`]: minimum-area polytopes circumscribed about the unit ball.
//! - [`io`]: JSON and OFF files.

pub mod certificates;
pub mod clip;
pub mod constants;
pub mod error;
pub mod halfspace;
pub mod io;
pub mod lp;
pub mod metrics;
pub mod nelder_mead;
pub mod optimizer;
pub mod packing;
pub mod polyhedron;
pub mod segments;
pub mod shapes;
pub mod window;

pub use certificates::{CertificateReport, MeetingSegment, SegmentCase};
pub use clip::{clip_to_cube, ClippedCell};
pub use error::{CertificateError, GeometryError, OptimizeError};
pub use halfspace::{HalfSpace, Vec3};
pub use metrics::{metrics, CellMetrics};
pub use optimizer::{area_objective, minimize_area, OptimizationResult, TangentPolytopeParams};
pub use packing::{PeriodicPacking, Preset};
pub use polyhedron::{intersect_halfspaces, ConvexPolyhedron};
pub use window::{Tiling, WindowReport};
