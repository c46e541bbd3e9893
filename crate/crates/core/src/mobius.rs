//! Möbius and anti-Möbius maps of the extended plane, and their action on circles.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::inversive::{PlanarCircle, PlanarPoint};

const DET_TOL: f64 = 1e-14;

/// Distance tolerance for "circle passes through the pole".
pub const POLE_TOL: f64 = 1e-12;

/// `z ↦ (a w + b) / (c w + d)` with `w = z̄` when `conjugate_first` is set.
///
/// Entries are kept scaled so that the largest has magnitude one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    conjugate_first: bool,
}

/// Image of a point: finite, or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointImage {
    Finite(PlanarPoint),
    Infinity,
}

impl PointImage {
    pub fn finite(self) -> Option<PlanarPoint> {
        match self {
            PointImage::Finite(z) => Some(z),
            PointImage::Infinity => None,
        }
    }
}

impl MobiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        Self::build(a, b, c, d, false)
    }

    /// An orientation-reversing map `z ↦ (a z̄ + b) / (c z̄ + d)`.
    pub fn anti(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        Self::build(a, b, c, d, true)
    }

    fn build(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        conjugate_first: bool,
    ) -> Result<Self> {
        let scale = [a, b, c, d].iter().map(|v| v.norm()).fold(0.0, f64::max);
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::InvalidParams("degenerate Möbius matrix".into()));
        }
        let m = Self {
            a: a / scale,
            b: b / scale,
            c: c / scale,
            d: d / scale,
            conjugate_first,
        };
        if m.det().norm() <= DET_TOL {
            return Err(Error::InvalidParams("singular Möbius matrix".into()));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self {
            a: one,
            b: zero,
            c: zero,
            d: one,
            conjugate_first: false,
        }
    }

    pub fn translation(shift: Complex64) -> Self {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self::new(one, shift, zero, one).expect("translation is invertible")
    }

    /// `z ↦ k z` for non-zero complex `k`.
    pub fn scaling(k: Complex64) -> Result<Self> {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self::new(k, zero, zero, one)
    }

    /// Counterclockwise rotation by `angle` about `center`.
    pub fn rotation_about(center: PlanarPoint, angle: f64) -> Self {
        let e = Complex64::from_polar(1.0, angle);
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self::new(e, center - e * center, zero, one).expect("rotation is invertible")
    }

    /// `z ↦ 1/z`.
    pub fn reciprocal() -> Self {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self::new(zero, one, one, zero).expect("reciprocal is invertible")
    }

    /// Inversion through the circle `o`: `z ↦ q + ρ² / (z̄ − q̄)`.
    pub fn inversion(o: &PlanarCircle) -> Self {
        let q = o.center();
        let rho2 = o.radius() * o.radius();
        Self::anti(
            q,
            Complex64::new(rho2 - q.norm_sqr(), 0.0),
            Complex64::new(1.0, 0.0),
            -q.conj(),
        )
        .expect("inversion is invertible")
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_anti(&self) -> bool {
        self.conjugate_first
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    fn pre(&self, z: Complex64) -> Complex64 {
        if self.conjugate_first {
            z.conj()
        } else {
            z
        }
    }

    pub fn apply(&self, z: PlanarPoint) -> PointImage {
        let w = self.pre(z);
        let den = self.c * w + self.d;
        if den == Complex64::new(0.0, 0.0) {
            PointImage::Infinity
        } else {
            PointImage::Finite((self.a * w + self.b) / den)
        }
    }

    /// Image of the point at infinity.
    pub fn apply_infinity(&self) -> PointImage {
        if self.c == Complex64::new(0.0, 0.0) {
            PointImage::Infinity
        } else {
            PointImage::Finite(self.a / self.c)
        }
    }

    /// The finite point sent to infinity, if any.
    pub fn pole(&self) -> Option<PlanarPoint> {
        if self.c == Complex64::new(0.0, 0.0) {
            None
        } else {
            let w = -self.d / self.c;
            Some(if self.conjugate_first { w.conj() } else { w })
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        let (oa, ob, oc, od) = if self.conjugate_first {
            (
                other.a.conj(),
                other.b.conj(),
                other.c.conj(),
                other.d.conj(),
            )
        } else {
            (other.a, other.b, other.c, other.d)
        };
        Self::build(
            self.a * oa + self.b * oc,
            self.a * ob + self.b * od,
            self.c * oa + self.d * oc,
            self.c * ob + self.d * od,
            self.conjugate_first ^ other.conjugate_first,
        )
        .expect("composition of invertible maps is invertible")
    }

    pub fn inverse(&self) -> MobiusMap {
        let (a, b, c, d) = (self.d, -self.b, -self.c, self.a);
        if self.conjugate_first {
            Self::build(a.conj(), b.conj(), c.conj(), d.conj(), true)
        } else {
            Self::build(a, b, c, d, false)
        }
        .expect("inverse of an invertible map is invertible")
    }

    /// Image of a circle, returned with its bounded companion disk.
    ///
    /// Fails with [`Error::LineImage`] when the circle passes within
    /// [`POLE_TOL`] of the pole.
    pub fn apply_circle(&self, circle: &PlanarCircle) -> Result<PlanarCircle> {
        let (p, r) = if self.conjugate_first {
            (circle.center().conj(), circle.radius())
        } else {
            (circle.center(), circle.radius())
        };
        if let Some(pole) = self.pole() {
            if circle.passes_through(pole, POLE_TOL) {
                return Err(Error::LineImage {
                    pole_re: pole.re,
                    pole_im: pole.im,
                });
            }
        }
        // Hermitian form H = [[1, -p], [-p̄, |p|² - r²]] pulled back through
        // N = adj(M): H' = N* H N.
        let k = p.norm_sqr() - r * r;
        let n = [[self.d, -self.b], [-self.c, self.a]];
        let h = [
            [Complex64::new(1.0, 0.0), -p],
            [-p.conj(), Complex64::new(k, 0.0)],
        ];
        let form = |i: usize, j: usize| -> Complex64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for (s, h_row) in h.iter().enumerate() {
                for (t, h_st) in h_row.iter().enumerate() {
                    acc += n[s][i].conj() * h_st * n[t][j];
                }
            }
            acc
        };
        let a_coef = form(0, 0).re;
        let b_coef = form(0, 1);
        if a_coef.abs() <= f64::MIN_POSITIVE {
            let pole = self.pole().unwrap_or(Complex64::new(f64::INFINITY, 0.0));
            return Err(Error::LineImage {
                pole_re: pole.re,
                pole_im: pole.im,
            });
        }
        let center = -b_coef / a_coef;
        let radius = self.det().norm() * r / a_coef.abs();
        PlanarCircle::new(center, radius)
    }
}

/// Image of `c` under inversion through `o`.
///
/// Closed form: the center goes to `q + ρ²(p − q) / (|p − q|² − r²)` and the
/// radius to `ρ² r / ||p − q|² − r²|`.
pub fn invert_in_circle(o: &PlanarCircle, c: &PlanarCircle) -> Result<PlanarCircle> {
    let q = o.center();
    if c.passes_through(q, POLE_TOL) {
        return Err(Error::LineImage {
            pole_re: q.re,
            pole_im: q.im,
        });
    }
    let rho2 = o.radius() * o.radius();
    let offset = c.center() - q;
    let r = c.radius();
    let dist = offset.norm();
    // |p − q|² − r² factored to avoid cancellation near the degenerate case.
    let power = (dist - r) * (dist + r);
    PlanarCircle::new(q + offset * (rho2 / power), rho2 * r / power.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn inversion_examples() {
        let unit = PlanarCircle::on_axis(0.0, 1.0).unwrap();
        let img = invert_in_circle(&unit, &PlanarCircle::on_axis(4.0, 1.0).unwrap()).unwrap();
        assert_relative_eq!(img.center().re, 4.0 / 15.0, epsilon = 1e-15);
        assert_relative_eq!(img.radius(), 1.0 / 15.0, epsilon = 1e-15);

        // A circle orthogonal to the unit circle is fixed set-wise.
        let orth = PlanarCircle::new(cx(2.0, 1.0), 2.0).unwrap();
        let fixed = invert_in_circle(&unit, &orth).unwrap();
        assert_relative_eq!(fixed.center().re, 2.0, epsilon = 1e-14);
        assert_relative_eq!(fixed.center().im, 1.0, epsilon = 1e-14);
        assert_relative_eq!(fixed.radius(), 2.0, epsilon = 1e-14);

        let through_center = PlanarCircle::on_axis(1.0, 1.0).unwrap();
        assert!(invert_in_circle(&unit, &through_center).is_err());
    }

    #[test]
    fn closed_form_inversion_matches_anti_mobius_map() {
        let o = PlanarCircle::new(cx(0.2, 0.7), 1.3).unwrap();
        let c = PlanarCircle::new(cx(-1.5, 2.5), 0.8).unwrap();
        let direct = invert_in_circle(&o, &c).unwrap();
        let via_map = MobiusMap::inversion(&o).apply_circle(&c).unwrap();
        assert_relative_eq!(direct.center().re, via_map.center().re, epsilon = 1e-12);
        assert_relative_eq!(direct.center().im, via_map.center().im, epsilon = 1e-12);
        assert_relative_eq!(direct.radius(), via_map.radius(), epsilon = 1e-12);
    }

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_fixes_circles() {
        let c = PlanarCircle::new(cx(0.3, -2.0), 1.7).unwrap();
        let img = MobiusMap::identity().apply_circle(&c).unwrap();
        assert_relative_eq!(img.center().re, 0.3, epsilon = 1e-15);
        assert_relative_eq!(img.center().im, -2.0, epsilon = 1e-15);
        assert_relative_eq!(img.radius(), 1.7, epsilon = 1e-15);
    }

    #[test]
    fn reciprocal_of_axis_circle() {
        // Diametral points 1.7 and 3 map to 1/1.7 and 1/3 on the real axis.
        let c = PlanarCircle::on_axis(2.35, 0.65).unwrap();
        let img = MobiusMap::reciprocal().apply_circle(&c).unwrap();
        let (lo, hi) = (1.0 / 3.0, 1.0 / 1.7);
        assert_relative_eq!(img.center().re, (lo + hi) / 2.0, epsilon = 1e-14);
        assert!(img.center().im.abs() < 1e-15);
        assert_relative_eq!(img.radius(), (hi - lo) / 2.0, epsilon = 1e-14);
    }

    #[test]
    fn reciprocal_of_circle_through_origin_is_a_line() {
        let c = PlanarCircle::on_axis(1.0, 1.0).unwrap();
        assert!(matches!(
            MobiusMap::reciprocal().apply_circle(&c),
            Err(Error::LineImage { .. })
        ));
    }

    #[test]
    fn compose_and_inverse() {
        let m = MobiusMap::new(cx(1.0, 2.0), cx(-0.5, 0.1), cx(0.3, 0.0), cx(2.0, -1.0)).unwrap();
        let inv = MobiusMap::inversion(&PlanarCircle::new(cx(0.2, 0.7), 1.3).unwrap());
        let z = cx(0.4, -1.1);
        for map in [m, inv, m.compose(&inv), inv.compose(&m)] {
            let back = map
                .inverse()
                .apply(map.apply(z).finite().unwrap())
                .finite()
                .unwrap();
            assert_relative_eq!(back.re, z.re, epsilon = 1e-12);
            assert_relative_eq!(back.im, z.im, epsilon = 1e-12);
        }
        let lhs = m.compose(&inv).apply(z).finite().unwrap();
        let rhs = m.apply(inv.apply(z).finite().unwrap()).finite().unwrap();
        assert_relative_eq!(lhs.re, rhs.re, epsilon = 1e-12);
        assert_relative_eq!(lhs.im, rhs.im, epsilon = 1e-12);
        assert!(m.compose(&inv).is_anti());
        assert!(!inv.compose(&inv).is_anti());
    }

    #[test]
    fn pole_and_infinity() {
        let m = MobiusMap::new(cx(1.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0), cx(-2.0, 0.0)).unwrap();
        assert_eq!(m.pole(), Some(cx(2.0, 0.0)));
        assert_eq!(m.apply(cx(2.0, 0.0)), PointImage::Infinity);
        assert_eq!(m.apply_infinity(), PointImage::Finite(cx(1.0, 0.0)));
        assert_eq!(MobiusMap::translation(cx(1.0, 1.0)).pole(), None);
    }

    #[test]
    fn rejects_singular() {
        assert!(MobiusMap::new(cx(1.0, 0.0), cx(2.0, 0.0), cx(2.0, 0.0), cx(4.0, 0.0)).is_err());
    }
}
