//! Coaxial families through two circles centered on the real axis, the
//! unit-speed Möbius flows along them, and the circles flowed between two
//! enveloping members.
//!
//! Every flow here is a conjugate `μ_t = T⁻¹ ∘ ν_t ∘ T` of a standard flow:
//! translation `w − t i` (tangent family), scaling `eᵗ w` (intersecting
//! family) or rotation `e^{it} w` (disjoint family).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::inversive::{PlanarCircle, PlanarPoint};
use crate::mobius::MobiusMap;

/// Tolerance on the power of the radical-axis point when classifying.
pub const DISCRIMINANT_TOL: f64 = 1e-10;

/// Denominator magnitude below which the closed-form radius is refused.
pub const BREAKDOWN_TOL: f64 = 1e-13;

const ORIENTATION_PROBE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// Two common points `x₀ ± y i`; hyperbolic flow.
    Intersecting,
    /// One common point on the real axis; parabolic flow.
    Tangent,
    /// Limit points `x₀ ± y` on the real axis; elliptic flow.
    Disjoint,
}

impl FamilyKind {
    pub fn flow_name(&self) -> &'static str {
        match self {
            FamilyKind::Intersecting => "hyperbolic",
            FamilyKind::Tangent => "parabolic",
            FamilyKind::Disjoint => "elliptic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoaxialFamily {
    pub kind: FamilyKind,
    pub y: f64,
    /// Abscissa of the radical axis.
    pub radical_axis: f64,
    pub generators: (PlanarCircle, PlanarCircle),
}

impl CoaxialFamily {
    fn require_normalized(&self) -> Result<()> {
        if self.radical_axis.abs() > 1e-12 {
            return Err(Error::BadKindParams(format!(
                "radical axis must be the imaginary axis, found Re z = {}",
                self.radical_axis
            )));
        }
        Ok(())
    }

    /// The member through the real point `x`, as `(center, radius)` on the real axis.
    pub fn member_through(&self, x: f64) -> Result<(f64, f64)> {
        self.require_normalized()?;
        let y = self.y;
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::OutOfRange(format!(
                "member abscissa must be positive, got {x}"
            )));
        }
        Ok(match self.kind {
            FamilyKind::Tangent => (x / 2.0, x / 2.0),
            FamilyKind::Intersecting => ((x * x - y * y) / (2.0 * x), (x * x + y * y) / (2.0 * x)),
            FamilyKind::Disjoint => {
                if x <= y {
                    return Err(Error::OutOfRange(format!(
                        "elliptic member needs x > y = {y}, got {x}"
                    )));
                }
                ((x * x + y * y) / (2.0 * x), (x - y) * (x + y) / (2.0 * x))
            }
        })
    }
}

/// Classifies the pencil through two circles centered on the real axis.
pub fn build_family(cu: &PlanarCircle, cv: &PlanarCircle) -> Result<CoaxialFamily> {
    if cu == cv {
        return Err(Error::IdenticalCircles);
    }
    let (p1, p2) = (cu.center(), cv.center());
    if p1.im.abs() > 1e-12 || p2.im.abs() > 1e-12 {
        return Err(Error::InvalidParams(
            "generators must be centered on the real axis".into(),
        ));
    }
    let (p1, p2, r1, r2) = (p1.re, p2.re, cu.radius(), cv.radius());
    if (p1 - p2).abs() <= 1e-15 {
        return Err(Error::InvalidParams(
            "concentric generators are not a normalized pencil".into(),
        ));
    }
    // Equal power (x−p₁)² − r₁² = (x−p₂)² − r₂².
    let x0 = ((r1 * r1 - r2 * r2) + (p2 * p2 - p1 * p1)) / (2.0 * (p2 - p1));
    let power = (x0 - p1) * (x0 - p1) - r1 * r1;
    let (kind, y) = if power.abs() <= DISCRIMINANT_TOL {
        (FamilyKind::Tangent, 0.0)
    } else if power < 0.0 {
        (FamilyKind::Intersecting, (-power).sqrt())
    } else {
        (FamilyKind::Disjoint, power.sqrt())
    };
    Ok(CoaxialFamily {
        kind,
        y,
        radical_axis: x0,
        generators: (*cu, *cv),
    })
}

/// The Möbius map `T` straightening the normalized family.
///
/// `anchor` is the real point sent to `1`: `x₂` for the intersecting family,
/// `x₁` for the disjoint one. It is ignored for the tangent family, where
/// `T(z) = 1/z`.
pub fn conjugator(family: &CoaxialFamily, anchor: f64) -> Result<MobiusMap> {
    family.require_normalized()?;
    let y = family.y;
    let one = Complex64::new(1.0, 0.0);
    match family.kind {
        FamilyKind::Tangent => Ok(MobiusMap::reciprocal()),
        FamilyKind::Intersecting => {
            if !(y > 0.0) || !anchor.is_finite() {
                return Err(Error::BadKindParams(
                    "intersecting family needs y > 0".into(),
                ));
            }
            let yi = Complex64::new(0.0, y);
            let kappa = Complex64::new(anchor, -y) / Complex64::new(anchor, y);
            MobiusMap::new(kappa, kappa * yi, one, -yi)
        }
        FamilyKind::Disjoint => {
            if !(y > 0.0) || !(anchor > y) || !anchor.is_finite() {
                return Err(Error::BadKindParams(format!(
                    "disjoint family needs 0 < y < anchor, got y = {y}, anchor = {anchor}"
                )));
            }
            let kappa = (anchor + y) / (anchor - y);
            MobiusMap::new(
                Complex64::new(kappa, 0.0),
                Complex64::new(-kappa * y, 0.0),
                one,
                Complex64::new(y, 0.0),
            )
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopePair {
    pub a1: PlanarCircle,
    pub a2: PlanarCircle,
    pub f1: f64,
    pub f2: f64,
    pub r1: f64,
    pub r2: f64,
    pub x1: f64,
    pub x2: f64,
}

/// The family members `A₁ ∋ x₁` and `A₂ ∋ x₂`.
pub fn envelope(family: &CoaxialFamily, x1: f64, x2: f64) -> Result<EnvelopePair> {
    if !(x1 > 1.0 && x2 > x1) || !x2.is_finite() {
        return Err(Error::OutOfRange(format!(
            "need 1 < x1 < x2, got x1 = {x1}, x2 = {x2}"
        )));
    }
    let (f1, r1) = family.member_through(x1)?;
    let (f2, r2) = family.member_through(x2)?;
    Ok(EnvelopePair {
        a1: PlanarCircle::on_axis(f1, r1)?,
        a2: PlanarCircle::on_axis(f2, r2)?,
        f1,
        f2,
        r1,
        r2,
        x1,
        x2,
    })
}

/// A unit-speed flow along a normalized family, with the sign of time fixed
/// so that the flow runs counterclockwise on the generator through `1 + r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowSpec {
    pub family: CoaxialFamily,
    pub conjugator: MobiusMap,
    /// `+1.0` or `−1.0`, multiplying time before the standard flow.
    pub orientation: f64,
    /// `T(x₁)`, the base point of the inner envelope in straightened coordinates.
    inner_base: Complex64,
    /// `T(x₂)`.
    outer_base: Complex64,
}

impl FlowSpec {
    /// Builds the flow for the initial circle through `x1 < x2` on the real axis.
    pub fn new(family: CoaxialFamily, x1: f64, x2: f64) -> Result<Self> {
        let anchor = match family.kind {
            FamilyKind::Disjoint => x1,
            _ => x2,
        };
        let t = conjugator(&family, anchor)?;
        let image = |x: f64| {
            t.apply(Complex64::new(x, 0.0))
                .finite()
                .ok_or_else(|| Error::BadKindParams(format!("{x} is the conjugator pole")))
        };
        let mut spec = Self {
            family,
            conjugator: t,
            orientation: 1.0,
            inner_base: image(x1)?,
            outer_base: image(x2)?,
        };
        let initial = PlanarCircle::on_axis(0.5 * (x1 + x2), 0.5 * (x2 - x1))?;
        let probe = flow_circle(&spec, &initial, ORIENTATION_PROBE)?;
        if probe.center().im < 0.0 {
            spec.orientation = -1.0;
        }
        Ok(spec)
    }

    /// The standard flow `ν_s` in straightened coordinates.
    fn standard(&self, s: f64) -> MobiusMap {
        match self.family.kind {
            FamilyKind::Tangent => MobiusMap::translation(Complex64::new(0.0, -s)),
            FamilyKind::Intersecting => {
                MobiusMap::scaling(Complex64::new(s.exp(), 0.0)).expect("e^s is non-zero")
            }
            FamilyKind::Disjoint => {
                MobiusMap::scaling(Complex64::from_polar(1.0, s)).expect("unit rotation")
            }
        }
    }

    fn standard_point(&self, w: Complex64, s: f64) -> Complex64 {
        match self.family.kind {
            FamilyKind::Tangent => w - Complex64::new(0.0, s),
            FamilyKind::Intersecting => w * s.exp(),
            FamilyKind::Disjoint => w * Complex64::from_polar(1.0, s),
        }
    }

    /// The Möbius map `μ_t`.
    pub fn map(&self, t: f64) -> MobiusMap {
        let s = self.orientation * t;
        self.conjugator
            .inverse()
            .compose(&self.standard(s))
            .compose(&self.conjugator)
    }

    fn unstraighten(&self, w: Complex64) -> Result<Complex64> {
        self.conjugator
            .inverse()
            .apply(w)
            .finite()
            .ok_or_else(|| Error::NumericBreakdown("tangency point at infinity".into()))
    }

    /// Recovers the flow time whose inner tangency point is `p`, the inverse
    /// of `t ↦ a₁(t)`. Elliptic times are returned in `(−π, π]`.
    pub fn time_of_inner_tangency(&self, p: PlanarPoint) -> Result<f64> {
        let w = self
            .conjugator
            .apply(p)
            .finite()
            .ok_or_else(|| Error::NumericBreakdown("point maps to infinity".into()))?;
        let s = match self.family.kind {
            FamilyKind::Tangent => (self.inner_base - w).im,
            FamilyKind::Intersecting => (w.norm() / self.inner_base.norm()).ln(),
            FamilyKind::Disjoint => (w / self.inner_base).arg(),
        };
        Ok(self.orientation * s)
    }

    /// Angle of the straightened inner envelope for the intersecting family.
    pub fn envelope_angle(&self) -> f64 {
        self.inner_base.arg()
    }
}

/// `μ_t(c)`.
pub fn flow_circle(spec: &FlowSpec, c: &PlanarCircle, t: f64) -> Result<PlanarCircle> {
    if t == 0.0 {
        return Ok(*c);
    }
    spec.map(t).apply_circle(c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowedCircleState {
    pub t: f64,
    /// Tangency point with `A₁`.
    pub a1: PlanarPoint,
    /// Tangency point with `A₂`.
    pub a2: PlanarPoint,
    pub z: PlanarPoint,
    pub r: f64,
}

impl FlowedCircleState {
    pub fn circle(&self) -> Result<PlanarCircle> {
        PlanarCircle::new(self.z, self.r)
    }
}

/// Center and radius of `μ_t(C)` from its tangency points with the envelopes.
pub fn flowed_state(spec: &FlowSpec, env: &EnvelopePair, t: f64) -> Result<FlowedCircleState> {
    let s = spec.orientation * t;
    let a1 = spec.unstraighten(spec.standard_point(spec.inner_base, s))?;
    let a2 = spec.unstraighten(spec.standard_point(spec.outer_base, s))?;
    let (f1, f2, r1, r2) = (
        Complex64::new(env.f1, 0.0),
        Complex64::new(env.f2, 0.0),
        env.r1,
        env.r2,
    );
    let den = (a1 - f1) * r2 + (a2 - f2) * r1;
    if den.norm() < BREAKDOWN_TOL {
        return Err(Error::NumericBreakdown(format!(
            "radius denominator {:e} at t = {t}",
            den.norm()
        )));
    }
    let r = (a2 - a1) * (r1 * r2) / den;
    let z = f1 + (a1 - f1) * ((r1 + r.re) / r1);
    if !(r.re > 0.0) {
        return Err(Error::NumericBreakdown(format!(
            "non-positive radius at t = {t}"
        )));
    }
    Ok(FlowedCircleState {
        t,
        a1,
        a2,
        z,
        r: r.re,
    })
}

/// `h(z, r) = |√3 z − i|² / (2r²) − 1`, the inversive distance between
/// `C(z, r)` and its rotation by `2π/3` about `i/√3`.
pub fn rotated_inv_dist(z: PlanarPoint, r: f64) -> f64 {
    let w = z * 3f64.sqrt() - Complex64::new(0.0, 1.0);
    0.5 * w.norm_sqr() / (r * r) - 1.0
}

/// Angle `θ` of the straightened inner envelope, `arccos((f₁f₂ + y²)/(r₁r₂))`.
pub fn intersecting_envelope_angle(env: &EnvelopePair, y: f64) -> f64 {
    let c = (env.f1 * env.f2 + y * y) / (env.r1 * env.r2);
    if c >= 1.0 {
        0.0
    } else if c <= -1.0 {
        PI
    } else {
        c.acos()
    }
}
