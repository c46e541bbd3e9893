//! Circles in the plane and on the unit sphere, and the inversive distance
//! between them.
//!
//! A planar circle always carries its bounded disk as companion disk. A
//! spherical circle carries the cap of radius `< π` about its stored center.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Points of the finite complex plane.
pub type PlanarPoint = Complex64;

/// Tolerance on unit-norm checks for sphere directions.
pub const UNIT_TOL: f64 = 1e-12;

/// Tolerance used by pair classification for the tangent/orthogonal bands.
pub const BAND_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarCircle {
    center: PlanarPoint,
    radius: f64,
}

impl PlanarCircle {
    pub fn new(center: PlanarPoint, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParams(format!(
                "planar radius must be positive and finite, got {radius}"
            )));
        }
        if !center.re.is_finite() || !center.im.is_finite() {
            return Err(Error::InvalidParams("planar center must be finite".into()));
        }
        Ok(Self { center, radius })
    }

    /// `C(x, r)` for a real center.
    pub fn on_axis(x: f64, radius: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0), radius)
    }

    pub fn center(&self) -> PlanarPoint {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Whether `z` lies within `tol` of the circle itself.
    pub fn passes_through(&self, z: PlanarPoint, tol: f64) -> bool {
        ((z - self.center).norm() - self.radius).abs() <= tol * self.radius.max(1.0)
    }

    pub fn contains(&self, z: PlanarPoint) -> bool {
        (z - self.center).norm() < self.radius
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalCircle {
    center: Vector3<f64>,
    radius: f64,
}

impl SphericalCircle {
    /// Builds a circle from a unit center direction and a spherical radius in `(0, π)`.
    pub fn new(center: Vector3<f64>, radius: f64) -> Result<Self> {
        if (center.norm() - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvalidParams(format!(
                "spherical center must be a unit vector, |c| = {}",
                center.norm()
            )));
        }
        if !(radius > 0.0 && radius < PI) {
            return Err(Error::InvalidParams(format!(
                "spherical radius must lie in (0, pi), got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    /// Like [`SphericalCircle::new`] but normalizes the direction first.
    pub fn from_direction(direction: Vector3<f64>, radius: f64) -> Result<Self> {
        let n = direction.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidParams("zero or non-finite direction".into()));
        }
        Self::new(direction / n, radius)
    }

    pub fn center(&self) -> Vector3<f64> {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// The affine plane `{X : n·X = h}` cutting the circle out of the sphere.
    pub fn plane(&self) -> (Vector3<f64>, f64) {
        (self.center, self.radius.cos())
    }

    /// The same circle with the complementary cap as companion disk.
    pub fn complement(&self) -> Self {
        Self {
            center: -self.center,
            radius: PI - self.radius,
        }
    }

    /// Whether the companion cap contains the unit vector `p` in its interior.
    pub fn cap_contains(&self, p: &Vector3<f64>) -> bool {
        self.center.dot(p) > self.radius.cos()
    }
}

/// Common interface for anything with an inversive distance.
pub trait InversiveDistance {
    fn inv_dist(&self, other: &Self) -> f64;
}

impl InversiveDistance for PlanarCircle {
    fn inv_dist(&self, other: &Self) -> f64 {
        inv_dist_plane(self, other)
    }
}

impl InversiveDistance for SphericalCircle {
    fn inv_dist(&self, other: &Self) -> f64 {
        inv_dist_sphere(self, other)
    }
}

/// `(|p₁−p₂|² − r₁² − r₂²) / (2 r₁ r₂)`.
pub fn inv_dist_plane(c1: &PlanarCircle, c2: &PlanarCircle) -> f64 {
    let (r1, r2) = (c1.radius, c2.radius);
    // Symmetric in (r1, r2) term by term, so swapping arguments is bit-exact.
    ((c1.center - c2.center).norm_sqr() - (r1 * r1 + r2 * r2)) / (2.0 * (r1 * r2))
}

/// `(−cos∢(p₁,p₂) + cos r₁ cos r₂) / (sin r₁ sin r₂)`.
pub fn inv_dist_sphere(s1: &SphericalCircle, s2: &SphericalCircle) -> f64 {
    let cos_angle = s1.center.dot(&s2.center);
    let (r1, r2) = (s1.radius, s2.radius);
    (r1.cos() * r2.cos() - cos_angle) / (r1.sin() * r2.sin())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    Separated,
    ExternallyTangent,
    Overlapping,
    Orthogonal,
    InternallyTangent,
    Contained,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairClassification {
    pub kind: PairKind,
    /// Overlap angle in `(0, π)`, present iff `|d| < 1`.
    pub angle: Option<f64>,
    /// Hyperbolic distance between the spanned planes, present iff `|d| > 1`.
    pub delta: Option<f64>,
}

/// Classifies a circle pair by the value band its inversive distance falls in.
///
/// The equalities `d = 1`, `d = 0` and `d = −1` are tested with tolerance
/// [`BAND_TOL`].
pub fn classify_pair(d: f64) -> PairClassification {
    let (kind, angle, delta) = if (d - 1.0).abs() <= BAND_TOL {
        (PairKind::ExternallyTangent, None, None)
    } else if (d + 1.0).abs() <= BAND_TOL {
        (PairKind::InternallyTangent, None, None)
    } else if d > 1.0 {
        (PairKind::Separated, None, Some(d.acosh()))
    } else if d < -1.0 {
        (PairKind::Contained, None, Some((-d).acosh()))
    } else if d.abs() <= BAND_TOL {
        (PairKind::Orthogonal, Some(FRAC_PI_2), None)
    } else {
        (PairKind::Overlapping, Some(d.acos()), None)
    };
    PairClassification { kind, angle, delta }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(x: f64, y: f64, r: f64) -> PlanarCircle {
        PlanarCircle::new(Complex64::new(x, y), r).unwrap()
    }

    #[test]
    fn plane_examples() {
        assert_eq!(inv_dist_plane(&c(-1.0, 0.0, 1.0), &c(1.0, 0.0, 1.0)), 1.0);
        assert_relative_eq!(
            inv_dist_plane(&c(1.0, 0.0, 1.0), &c(2.35, 0.0, 0.65)),
            4.0 / 13.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            inv_dist_plane(&c(-1.0, 0.0, 1.0), &c(2.35, 0.0, 0.65)),
            98.0 / 13.0,
            max_relative = 1e-14
        );
        assert_eq!(inv_dist_plane(&c(0.0, 0.0, 1.0), &c(0.0, 0.0, 2.0)), -1.25);
    }

    #[test]
    fn plane_is_symmetric_bitwise() {
        let (p, q) = (c(0.3, -1.7, 0.41), c(-2.2, 0.9, 1.37));
        assert_eq!(inv_dist_plane(&p, &q), inv_dist_plane(&q, &p));
    }

    #[test]
    fn sphere_examples() {
        let z = Vector3::z();
        let r = 0.7;
        let s = SphericalCircle::new(z, r).unwrap();
        assert_relative_eq!(inv_dist_sphere(&s, &s), -1.0, epsilon = 1e-14);

        let n = SphericalCircle::new(z, FRAC_PI_2).unwrap();
        let south = SphericalCircle::new(-z, FRAC_PI_2).unwrap();
        assert_relative_eq!(inv_dist_sphere(&n, &south), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn rejects_bad_circles() {
        assert!(PlanarCircle::new(Complex64::new(0.0, 0.0), 0.0).is_err());
        assert!(PlanarCircle::new(Complex64::new(f64::NAN, 0.0), 1.0).is_err());
        assert!(SphericalCircle::new(Vector3::new(1.0, 1.0, 0.0), 0.5).is_err());
        assert!(SphericalCircle::new(Vector3::x(), PI).is_err());
        assert!(SphericalCircle::new(Vector3::x(), 0.0).is_err());
    }

    #[test]
    fn classification_bands() {
        assert_eq!(classify_pair(1.0).kind, PairKind::ExternallyTangent);
        let o = classify_pair(0.0);
        assert_eq!(o.kind, PairKind::Orthogonal);
        assert_eq!(o.angle, Some(FRAC_PI_2));
        let s = classify_pair(2.0f64.cosh());
        assert_eq!(s.kind, PairKind::Separated);
        assert_relative_eq!(s.delta.unwrap(), 2.0, epsilon = 1e-14);
        assert!(s.angle.is_none());

        let deep = classify_pair(-0.5);
        assert_eq!(deep.kind, PairKind::Overlapping);
        assert_relative_eq!(deep.angle.unwrap(), 2.0 * PI / 3.0, epsilon = 1e-14);
        assert_eq!(classify_pair(-1.0).kind, PairKind::InternallyTangent);
        let inside = classify_pair(-3.0f64.cosh());
        assert_eq!(inside.kind, PairKind::Contained);
        assert_relative_eq!(inside.delta.unwrap(), 3.0, epsilon = 1e-13);
    }

    #[test]
    fn overlap_angle_matches_law_of_cosines() {
        // Two unit-ish circles crossing; the overlap angle is π minus the
        // angle between the radii at an intersection point.
        let (p, q) = (c(0.0, 0.0, 1.0), c(1.3, 0.4, 0.8));
        let dist2 = (p.center() - q.center()).norm_sqr();
        let (r1, r2) = (p.radius(), q.radius());
        let phi = ((r1 * r1 + r2 * r2 - dist2) / (2.0 * r1 * r2)).acos();
        let theta = classify_pair(inv_dist_plane(&p, &q)).angle.unwrap();
        assert_relative_eq!(theta, PI - phi, epsilon = 1e-12);
    }
}
