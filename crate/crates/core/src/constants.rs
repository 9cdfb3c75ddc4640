//! Reference values used across reports and tests.

/// Lower bound on the average cell surface area of a normal tiling, 24/√3.
pub const AVERAGE_AREA_LOWER_BOUND: f64 = 13.856_406_460_551_02;

/// Surface area of the rhombic dodecahedron of inradius 1, 12√2.
pub const RHOMBIC_DODECAHEDRON_AREA: f64 = 16.970_562_748_477_143;

/// Surface area of the regular dodecahedron of inradius 1.
pub const REGULAR_DODECAHEDRON_AREA: f64 = 16.650_873_085_546_53;

/// Area of the modified Williams foam cell (reference only).
pub const BRAKKE_FOAM_AREA: f64 = 16.95753;

/// Total edge length of the cube circumscribed about the unit ball.
pub const CUBE_EDGE_LENGTH_BOUND: f64 = 24.0;

/// Densest packing density π/√18.
pub const KEPLER_DENSITY: f64 = 0.740_480_489_693_061_1;

/// Relative default tolerance on certificate slacks.
pub const DEFAULT_CERT_TOL: f64 = 1e-7;

/// Angular tolerance for merging near-coplanar faces and for case sums.
pub const EPS_ANGLE: f64 = 1e-7;

/// Relative tolerance for point-on-plane tests; scaled by the characteristic length.
pub const EPS_GEOM_REL: f64 = 1e-9;
