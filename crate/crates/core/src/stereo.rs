//! Stereographic projection from the north pole `(0, 0, 1)` onto the
//! equatorial plane, `(X, Y, Z) ↦ (X + iY) / (1 − Z)`.

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::inversive::{PlanarCircle, PlanarPoint, SphericalCircle};

/// Tolerance for a spherical circle passing through the north pole.
pub const NORTH_POLE_TOL: f64 = 1e-12;

pub fn lift_point(z: PlanarPoint) -> Vector3<f64> {
    let n2 = z.norm_sqr();
    let s = 1.0 + n2;
    Vector3::new(2.0 * z.re / s, 2.0 * z.im / s, (n2 - 1.0) / s)
}

/// Projects a point of the sphere; `None` for the north pole.
pub fn drop_point(p: &Vector3<f64>) -> Option<PlanarPoint> {
    let den = 1.0 - p.z;
    if den <= 0.0 {
        None
    } else {
        Some(Complex64::new(p.x / den, p.y / den))
    }
}

/// Lifts a planar circle; the bounded companion disk becomes the cap that
/// avoids the north pole.
pub fn stereographic_lift(c: &PlanarCircle) -> SphericalCircle {
    // The lifted circle lies in the plane 2p·(X,Y) + (k−1)Z = 1+k with
    // k = |p|² − r², and the disk side is where the left side is larger.
    let p = c.center();
    let r = c.radius();
    let k = (p.norm() - r) * (p.norm() + r);
    let normal = Vector3::new(2.0 * p.re, 2.0 * p.im, k - 1.0);
    let len = normal.norm();
    // cos ρ = (1+k)/|N| and sin ρ = 2r/|N|.
    let radius = (2.0 * r).atan2(1.0 + k);
    SphericalCircle::new(normal / len, radius).expect("lifted circle is valid")
}

/// Projects a spherical circle that avoids the north pole back to the plane.
///
/// When the companion cap contains the north pole its image is the unbounded
/// side, and the returned circle (bounded-disk convention) has the complementary
/// companion.
pub fn stereographic_drop(s: &SphericalCircle) -> Result<PlanarCircle> {
    let c = s.center();
    let (sin_r, cos_r) = s.radius().sin_cos();
    let lead = c.z - cos_r;
    if lead.abs() <= NORTH_POLE_TOL {
        return Err(Error::NorthPoleCircle);
    }
    let center = -Complex64::new(c.x, c.y) / lead;
    PlanarCircle::new(center, sin_r / lead.abs())
}
