//! The construction redone on the sphere: the circle `O` orthogonal to the
//! base triple becomes the equator, so the base circles have equal radii and
//! equally spaced centers on it, and the flow parameter is shifted so the
//! local maximum of the profile sits at `s = 0`.

use nalgebra::Vector3;

use crate::construction::{incenter, orthogonal_circle, MsConstruction, Vertex};
use crate::error::{Error, Result};
use crate::inversive::{PlanarCircle, SphericalCircle};
use crate::lift::{lift_and_normalize, NormalizationContext, SphericalRealization};
use crate::optimize::bisect;
use crate::stereo::stereographic_lift;

const PROBE: f64 = 1e-3;
/// Largest outer crossing tried when solving for tangency.
pub const TANGENCY_X2_MAX: f64 = 1e6;
/// Accuracy of `min d = 1` in the tangency example.
pub const TANGENCY_TOL: f64 = 1e-11;

#[derive(Debug, Clone)]
pub struct EquatorialConstruction {
    pub planar: MsConstruction,
    /// Planar time of the local maximum.
    pub m: f64,
    /// `±1`, the planar time is `m + direction · s`.
    pub direction: f64,
    rho: f64,
}

impl EquatorialConstruction {
    pub fn new(planar: MsConstruction) -> Result<Self> {
        let o = orthogonal_circle(planar.params.a)
            .map_err(|e| Error::BadEquatorialSetup(e.to_string()))?;
        let m = planar
            .find_extrema()
            .map_err(|e| Error::BadEquatorialSetup(e.to_string()))?
            .m;
        let mut eq = Self {
            planar,
            m,
            direction: 1.0,
            rho: o.radius(),
        };
        if eq.equator_residual() > 1e-9 {
            return Err(Error::BadEquatorialSetup(
                "base circles are not centered on the equator".into(),
            ));
        }
        // Orient the parameter so that C_{w'} starts into the upper hemisphere.
        if eq.realization(PROBE)?.circle(Vertex::WPrime).center().z < 0.0 {
            eq.direction = -1.0;
        }
        Ok(eq)
    }

    pub fn planar_time(&self, s: f64) -> f64 {
        self.m + self.direction * s
    }

    fn to_sphere(&self, c: &PlanarCircle) -> SphericalCircle {
        let k = 1.0 / self.rho;
        let scaled = PlanarCircle::new(k * (c.center() - incenter()), k * c.radius())
            .expect("similarity keeps circles");
        stereographic_lift(&scaled)
    }

    pub fn realization(&self, s: f64) -> Result<SphericalRealization> {
        let cfg = self.planar.configuration(self.planar_time(s))?;
        Ok(SphericalRealization {
            circles: cfg.circles.map(|c| self.to_sphere(&c)),
            t: Some(cfg.t),
        })
    }

    /// Inversive distance between `C_{w'}` and `C_{u'}` on the sphere.
    pub fn profile(&self, s: f64) -> Result<f64> {
        let r = self.realization(s)?;
        Ok(r.inv_dist(Vertex::WPrime.index(), Vertex::UPrime.index()))
    }

    /// Largest `|Z|` of a base circle center.
    pub fn equator_residual(&self) -> f64 {
        self.planar
            .base
            .iter()
            .map(|c| self.to_sphere(c).center().z.abs())
            .fold(0.0, f64::max)
    }

    /// How far the planes of the lifted envelope circles miss the line where
    /// the planes of the lifted `C_u`, `C_v` meet.
    pub fn pencil_axis_residual(&self) -> f64 {
        let (nu, hu) = self.to_sphere(&self.planar.base[0]).plane();
        let (nv, hv) = self.to_sphere(&self.planar.base[1]).plane();
        // Point on both planes in the span of the normals.
        let g = nu.dot(&nv);
        let det = 1.0 - g * g;
        let alpha = (hu - g * hv) / det;
        let beta = (hv - g * hu) / det;
        let p0: Vector3<f64> = alpha * nu + beta * nv;
        let dir = nu.cross(&nv).normalize();
        let env = &self.planar.envelope;
        [env.a1, env.a2]
            .iter()
            .map(|c| {
                let (n, h) = self.to_sphere(c).plane();
                (n.dot(&p0) - h).abs().max((n.dot(&(p0 + dir)) - h).abs())
            })
            .fold(0.0, f64::max)
    }
}

pub fn on_sphere_construction(a: f64, x1: f64, x2: f64) -> Result<EquatorialConstruction> {
    EquatorialConstruction::new(MsConstruction::from_a(a, x1, x2)?)
}

#[derive(Debug, Clone)]
pub struct TangencyExample {
    pub x1: f64,
    pub x2: f64,
    pub b: f64,
    pub tau: f64,
    pub tau_prime: f64,
    pub d_tau: f64,
    pub equatorial: EquatorialConstruction,
    pub context: NormalizationContext,
    /// The normalized packing at `τ`.
    pub realization: SphericalRealization,
}

fn min_profile(x1: f64, x2: f64) -> Result<f64> {
    Ok(MsConstruction::from_a(1.0, x1, x2)?.find_extrema()?.d_tau)
}

/// Base triple `a = 1` with `C` through `x₁` and a solved `x₂` so that the
/// primed circles become tangent, `min d = 1`, giving `𝒪(1, b, 1, 1)` when
/// `C` touches `C_v` (`x₁ = 2`).
pub fn tangency_example(x1: f64) -> Result<TangencyExample> {
    let fail = |e: Error| Error::NoTangencySolution(e.to_string());
    let g = |x2: f64| min_profile(x1, x2).map(|d| d - 1.0);

    let mut lo = x1 + 0.5;
    if g(lo).map_err(fail)? <= 0.0 {
        return Err(Error::NoTangencySolution(format!(
            "minimum already below 1 at x2 = {lo}"
        )));
    }
    let mut hi = lo;
    loop {
        hi = x1 + 2.0 * (hi - x1);
        if hi > TANGENCY_X2_MAX {
            return Err(Error::NoTangencySolution(format!(
                "minimum stays above 1 up to x2 = {TANGENCY_X2_MAX}"
            )));
        }
        if g(hi).map_err(fail)? <= 0.0 {
            break;
        }
        lo = hi;
    }
    let mut err = None;
    let x2 = bisect(
        |x2| match g(x2) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                f64::NAN
            }
        },
        lo,
        hi,
        TANGENCY_TOL,
        400,
    )
    .ok_or_else(|| Error::NoTangencySolution("bisection lost its bracket".into()))?;
    if let Some(e) = err {
        return Err(fail(e));
    }

    let planar = MsConstruction::from_a(1.0, x1, x2).map_err(fail)?;
    let ext = planar.find_extrema().map_err(fail)?;
    let context = NormalizationContext::at_critical(&planar, ext.tau)?;
    let realization = lift_and_normalize(&planar.configuration(ext.tau)?, &context)?;
    let b = planar.params.b;
    let equatorial = EquatorialConstruction::new(planar)?;
    Ok(TangencyExample {
        x1,
        x2,
        b,
        tau: ext.tau,
        tau_prime: ext.tau_prime,
        d_tau: ext.d_tau,
        equatorial,
        context,
        realization,
    })
}
