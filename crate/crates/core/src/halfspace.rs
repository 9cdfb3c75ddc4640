use nalgebra::Vector3;
use crate::error::GeometryError;

pub type Vec3 = Vector3<f64>;

/// Tolerance on `|normal| = 1`.
pub const EPS_UNIT: f64 = 1e-12;

/// The closed half-space `{x : x·normal ≤ offset}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSpace {
    pub normal: Vec3,
    pub offset: f64,
}

impl HalfSpace {
    /// Builds a half-space from a unit normal. Rejects non-unit or non-finite input.
    pub fn new(normal: Vec3, offset: f64) -> Result<Self, GeometryError> {
        if !normal.iter().all(|c| c.is_finite()) || !offset.is_finite() {
            return Err(GeometryError::InvalidHalfSpace("non-finite component".into()));
        }
        if (normal.norm() - 1.0).abs() > EPS_UNIT {
            return Err(GeometryError::InvalidHalfSpace(format!(
                "normal has length {}",
                normal.norm()
            )));
        }
        Ok(Self { normal, offset })
    }

    /// Scales an arbitrary nonzero normal to unit length, rescaling the offset to match.
    /// Returns the half-space and whether rescaling was needed.
    pub fn normalized(normal: Vec3, offset: f64) -> Result<(Self, bool), GeometryError> {
        let len = normal.norm();
        if !len.is_finite() || !offset.is_finite() || len < 1e-300 {
            return Err(GeometryError::InvalidHalfSpace(format!(
                "cannot normalize normal of length {len}"
            )));
        }
        let rescaled = (len - 1.0).abs() > EPS_UNIT;
        if !rescaled {
            return Ok((Self { normal, offset }, false));
        }
        Ok((
            Self {
                normal: normal / len,
                offset: offset / len,
            },
            rescaled,
        ))
    }

    /// Signed distance of `p` past the boundary plane (positive outside).
    #[inline]
    pub fn signed_distance(&self, p: &Vec3) -> f64 {
        self.normal.dot(p) - self.offset
    }

    #[inline]
    pub fn contains(&self, p: &Vec3, eps: f64) -> bool {
        self.signed_distance(p) <= eps
    }

    pub fn translated(&self, t: &Vec3) -> Self {
        Self {
            normal: self.normal,
            offset: self.offset + self.normal.dot(t),
        }
    }

    /// True when both describe the same plane with the same orientation.
    pub fn same_plane(&self, other: &HalfSpace, eps: f64) -> bool {
        self.normal.dot(&other.normal) > 1.0 - 1e-12 && (self.offset - other.offset).abs() <= eps
    }

    /// The six faces of the axis-aligned cube `[-h, h]³`.
    pub fn cube(h: f64) -> [HalfSpace; 6] {
        [
            HalfSpace { normal: Vec3::x(), offset: h },
            HalfSpace { normal: -Vec3::x(), offset: h },
            HalfSpace { normal: Vec3::y(), offset: h },
            HalfSpace { normal: -Vec3::y(), offset: h },
            HalfSpace { normal: Vec3::z(), offset: h },
            HalfSpace { normal: -Vec3::z(), offset: h },
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_unit() {
        assert!(HalfSpace::new(Vec3::new(2.0, 0.0, 0.0), 1.0).is_err());
        assert!(HalfSpace::new(Vec3::new(f64::NAN, 0.0, 0.0), 1.0).is_err());
        assert!(HalfSpace::new(Vec3::x(), 1.0).is_ok());
    }

    #[test]
    fn normalization_rescales_offset() {
        let (h, warn) = HalfSpace::normalized(Vec3::new(2.0, 0.0, 0.0), 2.0).unwrap();
        assert!(warn);
        assert_eq!(h.normal, Vec3::x());
        assert_eq!(h.offset, 1.0);
        let (_, warn) = HalfSpace::normalized(Vec3::z(), 3.0).unwrap();
        assert!(!warn);
        assert!(HalfSpace::normalized(Vec3::zeros(), 1.0).is_err());
    }

    #[test]
    fn translation_shifts_offset() {
        let h = HalfSpace::new(Vec3::x(), 1.0).unwrap();
        let t = h.translated(&Vec3::new(0.5, 3.0, 0.0));
        assert_eq!(t.offset, 1.5);
        assert!(t.contains(&Vec3::new(1.5, 0.0, 0.0), 0.0));
    }
}
