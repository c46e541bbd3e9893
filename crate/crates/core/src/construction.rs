//! The flowed octahedral configuration `𝒞(t)` built on a normalized base
//! triple, its outer-face profile `d(t)`, and the searches on that profile.
//!
//! The base circles sit on the vertices `−1`, `1`, `i√3` of an equilateral
//! triangle with incenter `i/√3`. The initial circle `C` crosses the real axis
//! at `1 < x₁ < x₂`; it is flowed along the pencil of `C_u`, `C_v` and then
//! rotated by `2π/3` about the incenter to produce the outer face.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::coaxial::{
    build_family, envelope, flow_circle, flowed_state, rotated_inv_dist, CoaxialFamily,
    EnvelopePair, FamilyKind, FlowSpec, FlowedCircleState,
};
use crate::error::{Error, Result};
use crate::inversive::{inv_dist_plane, PlanarCircle, PlanarPoint};
use crate::mobius::invert_in_circle;
use crate::optimize::{bisect, central_difference, maximize, minimize};

/// Number of grid samples used to bracket extrema.
pub const EXTREMA_GRID: usize = 4000;
/// Search window for the parabolic and hyperbolic profiles.
pub const OPEN_WINDOW: (f64, f64) = (-10.0, 10.0);
/// Bracket width at which extremum refinement stops.
pub const EXTREMUM_TOL: f64 = 1e-10;
/// Signed-area margin for strict interior of the half-plane.
pub const HALF_PLANE_TOL: f64 = 1e-12;

const FD_STEP: f64 = 1e-5;
const SLOPE_TOL: f64 = 1e-6;
const CURVATURE_STEP: f64 = 1e-4;
const EQUAL_MIN_RTOL: f64 = 1e-9;

/// `i/√3`, the incenter of the base triangle.
pub fn incenter() -> PlanarPoint {
    Complex64::new(0.0, 1.0 / 3f64.sqrt())
}

/// Counterclockwise rotation by `2π/3` about the incenter.
pub fn rotate_third(z: PlanarPoint) -> PlanarPoint {
    let c = incenter();
    c + Complex64::from_polar(1.0, 2.0 * PI / 3.0) * (z - c)
}

fn rotate_circle(c: &PlanarCircle) -> PlanarCircle {
    PlanarCircle::new(rotate_third(c.center()), c.radius()).expect("rotation keeps radius")
}

/// The six vertices of the octahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    U,
    V,
    W,
    UPrime,
    VPrime,
    WPrime,
}

impl Vertex {
    pub const ALL: [Vertex; 6] = [
        Vertex::U,
        Vertex::V,
        Vertex::W,
        Vertex::UPrime,
        Vertex::VPrime,
        Vertex::WPrime,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Vertex::U => "u",
            Vertex::V => "v",
            Vertex::W => "w",
            Vertex::UPrime => "u'",
            Vertex::VPrime => "v'",
            Vertex::WPrime => "w'",
        }
    }
}

/// `√(2/(a+1))`, the base radius giving pairwise inversive distance `a`.
pub fn base_radius(a: f64) -> f64 {
    (2.0 / (a + 1.0)).sqrt()
}

/// Circles of radius `√(2/(a+1))` centered at `−1`, `1`, `i√3`.
pub fn base_triple(a: f64) -> Result<[PlanarCircle; 3]> {
    if !(a >= 0.0) || !a.is_finite() {
        return Err(Error::InvalidParams(format!(
            "face label a must be >= 0, got {a}"
        )));
    }
    let r = base_radius(a);
    Ok([
        PlanarCircle::on_axis(-1.0, r)?,
        PlanarCircle::on_axis(1.0, r)?,
        PlanarCircle::new(Complex64::new(0.0, 3f64.sqrt()), r)?,
    ])
}

/// The initial circle through `x₁ < x₂` with its labels `b = ⟨C_u, C⟩` and
/// `c = ⟨C_v, C⟩`.
pub fn initial_circle(a: f64, x1: f64, x2: f64) -> Result<(PlanarCircle, f64, f64)> {
    if !(x1 > 1.0 && x2 > x1) || !x2.is_finite() {
        return Err(Error::InvalidParams(format!(
            "need 1 < x1 < x2, got x1 = {x1}, x2 = {x2}"
        )));
    }
    let [cu, cv, _] = base_triple(a)?;
    let c = PlanarCircle::on_axis(0.5 * (x1 + x2), 0.5 * (x2 - x1))?;
    let b_label = inv_dist_plane(&cu, &c);
    let c_label = inv_dist_plane(&cv, &c);
    if c_label < 0.0 {
        return Err(Error::NegativeC(c_label));
    }
    Ok((c, b_label, c_label))
}

/// Face label `a` from the pencil parameter `y` and the pencil kind.
pub fn face_label_from_y(y: f64, kind: FamilyKind) -> Result<f64> {
    match kind {
        FamilyKind::Tangent => {
            if y == 0.0 {
                Ok(1.0)
            } else {
                Err(Error::InvalidParams("tangent pencil has y = 0".into()))
            }
        }
        FamilyKind::Intersecting if y > 0.0 && y <= 1.0 => Ok((1.0 - y * y) / (1.0 + y * y)),
        FamilyKind::Disjoint if y > 0.0 && y < 1.0 => Ok((1.0 + y * y) / (1.0 - y * y)),
        _ => Err(Error::InvalidParams(format!(
            "y = {y} is out of range for a {} pencil",
            kind.flow_name()
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MsParams {
    pub a: f64,
    pub x1: f64,
    pub x2: f64,
    pub kind: FamilyKind,
    pub y: f64,
    pub r_base: f64,
    pub b: f64,
    pub c: f64,
}

impl MsParams {
    pub fn new(a: f64, x1: f64, x2: f64) -> Result<Self> {
        let (_, b, c) = initial_circle(a, x1, x2)?;
        let [cu, cv, _] = base_triple(a)?;
        let family = build_family(&cu, &cv)?;
        Ok(Self {
            a,
            x1,
            x2,
            kind: family.kind,
            y: family.y,
            r_base: base_radius(a),
            b,
            c,
        })
    }

    pub fn from_y(y: f64, kind: FamilyKind, x1: f64, x2: f64) -> Result<Self> {
        Self::new(face_label_from_y(y, kind)?, x1, x2)
    }
}

/// The six circles of `𝒞(t)`, indexed by [`Vertex`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Configuration {
    pub t: f64,
    pub circles: [PlanarCircle; 6],
}

impl Configuration {
    pub fn circle(&self, v: Vertex) -> &PlanarCircle {
        &self.circles[v.index()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremaReport {
    /// First global minimizer.
    pub tau: f64,
    /// Second global minimizer, the mirror of `tau` under the involution.
    pub tau_prime: f64,
    /// Local maximizer between `tau` and `tau_prime`.
    pub m: f64,
    /// Absolute maximizer (periodic profiles only).
    pub big_m: Option<f64>,
    /// Period (periodic profiles only).
    pub omega: Option<f64>,
    pub d_tau: f64,
    pub d_m: f64,
    pub d_big_m: Option<f64>,
}

impl ExtremaReport {
    /// Geometric mean of `d(τ)` and `d(m)`, a target safely inside the pair band.
    pub fn demo_target(&self) -> f64 {
        (self.d_tau * self.d_m).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalityReport {
    pub in_half_plane: bool,
    /// Signed area of `(i/√3, −1, z(τ))`, positive on the side of `z = 1`.
    pub signed_area: f64,
    pub o_circle: Option<PlanarCircle>,
    pub inv_dist_to_o: Option<f64>,
    pub passes: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSolution {
    pub t: f64,
    pub t_prime: f64,
    pub d_target: f64,
    pub d_t: f64,
    pub d_t_prime: f64,
}

/// The circle centered at the incenter orthogonal to all three base circles.
pub fn orthogonal_circle(a: f64) -> Result<PlanarCircle> {
    if !(a > 0.5) {
        return Err(Error::NoOrthogonalCircle(a));
    }
    // ρ² + r_base² = |i/√3 − 1|² = 4/3.
    let rho2 = 4.0 / 3.0 - 2.0 / (a + 1.0);
    PlanarCircle::new(incenter(), rho2.sqrt())
}

/// Signed area of the triangle `(i/√3, −1, z)`; positive on the side of `1`.
pub fn half_plane_signed_area(z: PlanarPoint) -> f64 {
    let p0 = incenter();
    let e = Complex64::new(-1.0, 0.0) - p0;
    let f = z - p0;
    0.5 * (e.re * f.im - e.im * f.re)
}

/// A fully set-up planar construction for one parameter choice.
#[derive(Debug, Clone)]
pub struct MsConstruction {
    pub params: MsParams,
    pub family: CoaxialFamily,
    pub flow: FlowSpec,
    pub envelope: EnvelopePair,
    pub base: [PlanarCircle; 3],
    pub initial: PlanarCircle,
    extrema: OnceLock<Result<ExtremaReport>>,
}

impl MsConstruction {
    pub fn new(params: MsParams) -> Result<Self> {
        let base = base_triple(params.a)?;
        let (initial, _, _) = initial_circle(params.a, params.x1, params.x2)?;
        let family = build_family(&base[0], &base[1])?;
        let flow = FlowSpec::new(family, params.x1, params.x2)?;
        let envelope = envelope(&family, params.x1, params.x2)?;
        Ok(Self {
            params,
            family,
            flow,
            envelope,
            base,
            initial,
            extrema: OnceLock::new(),
        })
    }

    pub fn from_a(a: f64, x1: f64, x2: f64) -> Result<Self> {
        Self::new(MsParams::new(a, x1, x2)?)
    }

    pub fn is_periodic(&self) -> bool {
        self.family.kind == FamilyKind::Disjoint
    }

    /// Tangency points, center and radius of `μ_t(C)` in closed form.
    pub fn state(&self, t: f64) -> Result<FlowedCircleState> {
        flowed_state(&self.flow, &self.envelope, t)
    }

    /// `μ_t(C)` by applying the flow map to the initial circle.
    pub fn flowed_circle(&self, t: f64) -> Result<PlanarCircle> {
        flow_circle(&self.flow, &self.initial, t)
    }

    /// `d(t) = h(z(t), r(t))`.
    pub fn profile_d(&self, t: f64) -> Result<f64> {
        let s = self.state(t)?;
        Ok(rotated_inv_dist(s.z, s.r))
    }

    /// `d(t)` as the inversive distance between `C_{w'}(t)` and `C_{u'}(t)`
    /// of the configuration built through the Möbius flow.
    pub fn profile_direct(&self, t: f64) -> Result<f64> {
        let cfg = self.configuration(t)?;
        Ok(inv_dist_plane(
            cfg.circle(Vertex::WPrime),
            cfg.circle(Vertex::UPrime),
        ))
    }

    pub fn configuration(&self, t: f64) -> Result<Configuration> {
        let w_prime = self.flowed_circle(t)?;
        let u_prime = rotate_circle(&w_prime);
        let v_prime = rotate_circle(&u_prime);
        Ok(Configuration {
            t,
            circles: [
                self.base[0],
                self.base[1],
                self.base[2],
                u_prime,
                v_prime,
                w_prime,
            ],
        })
    }

    fn profile_or_inf(&self, t: f64) -> f64 {
        self.profile_d(t).unwrap_or(f64::INFINITY)
    }

    /// Global minimizers, the local maximizer between them and, for periodic
    /// profiles, the absolute maximizer over one period.
    pub fn find_extrema(&self) -> Result<ExtremaReport> {
        self.extrema.get_or_init(|| self.compute_extrema()).clone()
    }

    fn compute_extrema(&self) -> Result<ExtremaReport> {
        let periodic = self.is_periodic();
        let (lo, hi) = if periodic {
            (0.0, 2.0 * PI)
        } else {
            OPEN_WINDOW
        };
        let n = EXTREMA_GRID;
        let step = (hi - lo) / n as f64;
        let ts: Vec<f64> = if periodic {
            (0..n).map(|i| lo + step * i as f64).collect()
        } else {
            (0..=n).map(|i| lo + step * i as f64).collect()
        };
        let ds: Vec<f64> = ts.par_iter().map(|&t| self.profile_or_inf(t)).collect();
        let len = ts.len();

        let neighbours = |i: usize| -> Option<(usize, usize)> {
            if periodic {
                Some(((i + len - 1) % len, (i + 1) % len))
            } else if i == 0 || i + 1 == len {
                None
            } else {
                Some((i - 1, i + 1))
            }
        };
        let mut minima = Vec::new();
        let mut maxima = Vec::new();
        for i in 0..len {
            let Some((p, q)) = neighbours(i) else {
                continue;
            };
            if !ds[i].is_finite() {
                continue;
            }
            // Bracket in unwrapped time around sample i.
            let (a, b) = (ts[i] - step, ts[i] + step);
            if ds[i] < ds[p] && ds[i] <= ds[q] {
                let m = minimize(|t| self.profile_or_inf(t), a, b, EXTREMUM_TOL, 500);
                minima.push((m.x, m.value));
            } else if ds[i] > ds[p] && ds[i] >= ds[q] {
                let m = maximize(|t| self.profile_or_inf(t), a, b, EXTREMUM_TOL, 500);
                maxima.push((m.x, m.value));
            }
        }
        if minima.is_empty() {
            return Err(Error::NoInteriorMinimum { lo, hi });
        }
        if maxima.is_empty() {
            return Err(Error::NoLocalMaximum);
        }
        let wrap = |t: f64| if periodic { t.rem_euclid(2.0 * PI) } else { t };
        let (m, d_m) = *maxima
            .iter()
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("non-empty");
        let big = if periodic {
            let (t, v) = *maxima
                .iter()
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .expect("non-empty");
            if (t - m).abs() < 10.0 * step {
                return Err(Error::NoLocalMaximum);
            }
            Some((t, v))
        } else {
            None
        };
        // Forward distance from m, in (−period/2, period/2] for periodic profiles.
        let offset = |t: f64| {
            let dt = t - m;
            if periodic {
                (dt + PI).rem_euclid(2.0 * PI) - PI
            } else {
                dt
            }
        };
        let before = minima
            .iter()
            .filter(|(t, _)| offset(*t) < 0.0)
            .max_by(|x, y| offset(x.0).total_cmp(&offset(y.0)));
        let after = minima
            .iter()
            .filter(|(t, _)| offset(*t) > 0.0)
            .min_by(|x, y| offset(x.0).total_cmp(&offset(y.0)));
        let (Some(&(tau_raw, d_tau)), Some(&(tp_raw, d_tp))) = (before, after) else {
            return Err(Error::NoInteriorMinimum { lo, hi });
        };
        let global_min = minima.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
        if (d_tau - global_min).abs() > EQUAL_MIN_RTOL * global_min.abs().max(1.0)
            || (d_tp - global_min).abs() > EQUAL_MIN_RTOL * global_min.abs().max(1.0)
        {
            return Err(Error::NumericBreakdown(
                "minimizers around the local maximum are not global minima".into(),
            ));
        }

        // Unwrap everything to tau < m < tau' (< M) < tau + period.
        let tau = wrap(tau_raw);
        let m_t = tau + offset(m) - offset(tau_raw);
        // The maximum is flat, so pin it as the fixed point of the involution.
        let m_t = if self.params.a > 0.5 {
            self.involution_midpoint(m_t)?
        } else {
            m_t
        };
        let tau_prime = m_t + offset(tp_raw);
        let big_m = big.map(|(t, _)| {
            let mut u = t;
            while u <= tau_prime {
                u += 2.0 * PI;
            }
            while u - 2.0 * PI > tau_prime {
                u -= 2.0 * PI;
            }
            u
        });

        for t in [Some(tau), Some(m_t), Some(tau_prime), big_m]
            .into_iter()
            .flatten()
        {
            let value = self.profile_d(t)?;
            let slope = central_difference(|s| self.profile_or_inf(s), t, FD_STEP);
            let curvature = (self.profile_d(t + CURVATURE_STEP)? - 2.0 * value
                + self.profile_d(t - CURVATURE_STEP)?)
                / (CURVATURE_STEP * CURVATURE_STEP);
            let scale = value.abs().max(curvature.abs()).max(1.0);
            if !(slope.abs() < SLOPE_TOL * scale) {
                return Err(Error::NumericBreakdown(format!(
                    "derivative check failed at t = {t}: d' = {slope:e}"
                )));
            }
        }

        Ok(ExtremaReport {
            tau,
            tau_prime,
            m: m_t,
            big_m,
            omega: periodic.then_some(2.0 * PI),
            d_tau,
            d_m,
            d_big_m: big.map(|b| b.1),
        })
    }

    /// The pair `t < τ < t′` with `d(t) = d(t′) = d_target`.
    pub fn find_pair(&self, d_target: f64) -> Result<PairSolution> {
        let ext = self.find_extrema()?;
        if !(d_target > ext.d_tau && d_target < ext.d_m) {
            return Err(Error::OutOfBand {
                target: d_target,
                lo: ext.d_tau,
                hi: ext.d_m,
            });
        }
        let g = |t: f64| self.profile_or_inf(t) - d_target;
        let ftol = 1e-13 * d_target.abs();

        let right = bisect(g, ext.tau, ext.m, ftol, 300)
            .ok_or_else(|| Error::NumericBreakdown("right branch not bracketed".into()))?;

        let left_lo = match ext.big_m {
            Some(big_m) => big_m - 2.0 * PI,
            None => {
                let mut width = 0.01;
                let mut lo = ext.tau - width;
                while g(lo) <= 0.0 {
                    width *= 2.0;
                    lo = ext.tau - width;
                    if lo < OPEN_WINDOW.0 {
                        return Err(Error::NumericBreakdown("left branch not bracketed".into()));
                    }
                }
                lo
            }
        };
        let left = bisect(g, left_lo, ext.tau, ftol, 300)
            .ok_or_else(|| Error::NumericBreakdown("left branch not bracketed".into()))?;

        Ok(PairSolution {
            t: left,
            t_prime: right,
            d_target,
            d_t: self.profile_d(left)?,
            d_t_prime: self.profile_d(right)?,
        })
    }

    /// Half-plane and orthogonal-circle conditions on the circle at `tau`.
    pub fn criticality_check(&self, tau: f64) -> Result<CriticalityReport> {
        let o = orthogonal_circle(self.params.a)?;
        let state = self.state(tau)?;
        let signed_area = half_plane_signed_area(state.z);
        let in_half_plane = signed_area > HALF_PLANE_TOL;
        let inv_dist_to_o = inv_dist_plane(&state.circle()?, &o);
        Ok(CriticalityReport {
            in_half_plane,
            signed_area,
            o_circle: Some(o),
            inv_dist_to_o: Some(inv_dist_to_o),
            passes: in_half_plane && inv_dist_to_o > 0.0,
        })
    }

    /// Angle at the incenter between the ray to `z(t)` and a ray tangent to
    /// `C_{w'}(t)`.
    pub fn alpha(&self, t: f64) -> Result<f64> {
        let s = self.state(t)?;
        let dist = (s.z - incenter()).norm();
        if dist <= s.r {
            return Err(Error::CenterInsideCircle);
        }
        Ok((s.r / dist).asin())
    }

    /// `t′` with `μ_{t′}(C) = I_O(μ_t(C))`. Periodic results lie in `(−π, π]`.
    pub fn involution_partner(&self, t: f64) -> Result<f64> {
        let o = orthogonal_circle(self.params.a)?;
        let s = self.state(t)?;
        // I_O fixes A₁, so the image circle touches A₁ at the image of a₁(t).
        let q = o.center();
        let offset = s.a1 - q;
        let image = q + o.radius() * o.radius() / offset.conj();
        self.flow.time_of_inner_tangency(image)
    }

    /// Midpoint of `t` and its involution partner, taken on the same branch.
    /// This is the fixed point of the involution, the local maximizer `m`.
    pub fn involution_midpoint(&self, t: f64) -> Result<f64> {
        let mut p = self.involution_partner(t)?;
        if self.is_periodic() {
            p += 2.0 * PI * ((t - p) / (2.0 * PI)).round();
        }
        Ok(0.5 * (t + p))
    }

    /// `I_O(μ_t(C))` computed by inversion, for checking the partner.
    pub fn inverted_flowed_circle(&self, t: f64) -> Result<PlanarCircle> {
        let o = orthogonal_circle(self.params.a)?;
        invert_in_circle(&o, &self.state(t)?.circle()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn parabolic() -> MsConstruction {
        MsConstruction::from_a(1.0, 1.7, 3.0).unwrap()
    }

    fn hyperbolic() -> MsConstruction {
        MsConstruction::new(
            MsParams::from_y(0.5, FamilyKind::Intersecting, 2.11803, 4.06155).unwrap(),
        )
        .unwrap()
    }

    fn elliptic() -> MsConstruction {
        MsConstruction::new(MsParams::from_y(0.5, FamilyKind::Disjoint, 2.0, 6.0).unwrap()).unwrap()
    }

    #[test]
    fn base_triple_examples() {
        let t = base_triple(1.0).unwrap();
        assert_eq!(t[0].radius(), 1.0);
        assert_relative_eq!(inv_dist_plane(&t[0], &t[1]), 1.0, epsilon = 1e-15);
        let t = base_triple(0.6).unwrap();
        assert_relative_eq!(t[0].radius(), 1.25f64.sqrt(), epsilon = 1e-15);
        let fam = build_family(&t[0], &t[1]).unwrap();
        assert_relative_eq!(fam.y, 0.5, epsilon = 1e-15);
        let t = base_triple(5.0 / 3.0).unwrap();
        assert_relative_eq!(t[2].radius(), 0.75f64.sqrt(), epsilon = 1e-15);
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            assert_relative_eq!(inv_dist_plane(&t[i], &t[j]), 5.0 / 3.0, epsilon = 1e-12);
        }
        assert!(base_triple(-0.1).is_err());
    }

    #[test]
    fn initial_labels() {
        let (_, b, c) = initial_circle(1.0, 1.7, 3.0).unwrap();
        assert!((b - 7.538).abs() < 5e-4 && (c - 0.308).abs() < 5e-4);
        // The rounded inputs put b at 6.6878 rather than 6.689.
        let (_, b, c) = initial_circle(0.6, 2.11803, 4.06155).unwrap();
        assert!((b - 6.6878).abs() < 5e-4 && (c - 1.000).abs() < 5e-4);
        let (_, b, c) = initial_circle(5.0 / 3.0, 2.0, 6.0).unwrap();
        assert!((b - 5.846).abs() < 5e-4 && (c - 1.227).abs() < 5e-4);
    }

    #[test]
    fn initial_circle_overlapping_cv_too_deeply() {
        // C(1.25, 0.15) sits inside C_v and has c < 0.
        assert!(matches!(
            initial_circle(1.0, 1.1, 1.4),
            Err(Error::NegativeC(c)) if c < 0.0
        ));
        assert!(matches!(
            initial_circle(1.0, 3.0, 1.7),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn a_from_y() {
        assert_relative_eq!(
            face_label_from_y(0.5, FamilyKind::Intersecting).unwrap(),
            0.6,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            face_label_from_y(0.5, FamilyKind::Disjoint).unwrap(),
            5.0 / 3.0,
            epsilon = 1e-15
        );
        assert!(face_label_from_y(1.0, FamilyKind::Disjoint).is_err());
    }

    #[test]
    fn profile_at_reported_times() {
        assert!((parabolic().profile_d(0.121766).unwrap() - 18.6065).abs() < 5e-5);
        // The hyperbolic inputs are themselves rounded to 5 decimals.
        assert!((hyperbolic().profile_d(1.31696).unwrap() - 46.8136).abs() < 5e-4);
        assert!((elliptic().profile_d(3.85532).unwrap() - 391.247).abs() < 5e-4);
    }

    #[test]
    fn profile_two_ways_agree() {
        for c in [parabolic(), hyperbolic(), elliptic()] {
            for k in -20..=20 {
                let t = 0.15 * k as f64;
                let closed = c.profile_d(t).unwrap();
                let direct = c.profile_direct(t).unwrap();
                assert!(
                    (closed - direct).abs() < 1e-9 * closed.abs().max(1.0),
                    "t = {t}: {closed} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn configuration_has_rotational_symmetry() {
        let cfg = hyperbolic().configuration(0.4).unwrap();
        let rot = |v: Vertex| rotate_circle(cfg.circle(v));
        for (from, to) in [
            (Vertex::U, Vertex::V),
            (Vertex::V, Vertex::W),
            (Vertex::W, Vertex::U),
            (Vertex::WPrime, Vertex::UPrime),
            (Vertex::UPrime, Vertex::VPrime),
            (Vertex::VPrime, Vertex::WPrime),
        ] {
            let (a, b) = (rot(from), *cfg.circle(to));
            assert!((a.center() - b.center()).norm() < 1e-10);
            assert!((a.radius() - b.radius()).abs() < 1e-10);
        }
    }

    #[test]
    fn extrema_parabolic() {
        let e = parabolic().find_extrema().unwrap();
        assert!((e.tau - 0.121766).abs() < 5e-7, "{e:?}");
        assert!((e.m - 0.866025).abs() < 5e-7);
        assert!((e.d_tau - 18.6065).abs() < 5e-5);
        assert!((e.d_m - 28.051).abs() < 5e-4);
        assert!(e.big_m.is_none() && e.omega.is_none());
        assert!(e.tau < e.m && e.m < e.tau_prime);
    }

    #[test]
    fn extrema_elliptic_ordering() {
        let e = elliptic().find_extrema().unwrap();
        let big_m = e.big_m.unwrap();
        assert!(0.0 < e.tau && e.tau < e.m && e.m < e.tau_prime);
        assert!(e.tau_prime < big_m && big_m < 2.0 * PI);
        assert!(e.d_m <= e.d_big_m.unwrap());
        assert_eq!(e.omega, Some(2.0 * PI));
    }

    #[test]
    fn pair_straddles_tau() {
        let c = parabolic();
        let p = c.find_pair(20.0).unwrap();
        let tau = c.find_extrema().unwrap().tau;
        assert!(p.t < tau && tau < p.t_prime);
        assert!((p.d_t - 20.0).abs() < 1e-9 && (p.d_t_prime - 20.0).abs() < 1e-9);
    }

    #[test]
    fn pair_band_is_open() {
        let c = parabolic();
        let e = c.find_extrema().unwrap();
        assert!(matches!(c.find_pair(e.d_tau), Err(Error::OutOfBand { .. })));
        assert!(matches!(c.find_pair(e.d_m), Err(Error::OutOfBand { .. })));
        assert!(matches!(
            c.find_pair(e.d_m + 1.0),
            Err(Error::OutOfBand { .. })
        ));
    }

    #[test]
    fn orthogonal_circle_radii() {
        assert_relative_eq!(
            orthogonal_circle(1.0).unwrap().radius(),
            1.0 / 3f64.sqrt(),
            epsilon = 1e-15
        );
        assert_relative_eq!(
            orthogonal_circle(0.6).unwrap().radius(),
            (1.0f64 / 12.0).sqrt(),
            epsilon = 1e-15
        );
        assert_eq!(orthogonal_circle(0.5), Err(Error::NoOrthogonalCircle(0.5)));
        for a in [0.6, 1.0, 5.0 / 3.0, 7.0] {
            let o = orthogonal_circle(a).unwrap();
            for c in base_triple(a).unwrap() {
                assert!(inv_dist_plane(&o, &c).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn criticality_of_parabolic_case() {
        let c = parabolic();
        let tau = c.find_extrema().unwrap().tau;
        let report = c.criticality_check(tau).unwrap();
        assert!(report.in_half_plane && report.passes);
        assert!(report.inv_dist_to_o.unwrap() > 0.0);
        // The incenter sits on the boundary line and is excluded.
        assert!(half_plane_signed_area(incenter()).abs() <= HALF_PLANE_TOL);
        assert!(half_plane_signed_area(Complex64::new(1.0, 0.0)) > 0.0);
    }

    #[test]
    fn criticality_needs_orthogonal_circle() {
        let c = MsConstruction::from_a(0.4, 2.0, 4.0).unwrap();
        assert_eq!(
            c.criticality_check(0.1),
            Err(Error::NoOrthogonalCircle(0.4))
        );
    }

    #[test]
    fn alpha_encodes_profile() {
        let c = parabolic();
        let tau = c.find_extrema().unwrap().tau;
        let alpha = c.alpha(tau).unwrap();
        let cot = 1.0 / alpha.tan();
        assert!((0.5 + 1.5 * cot * cot - 18.6065).abs() < 5e-5);
        assert!(alpha > 0.0 && alpha < PI / 2.0);
    }

    #[test]
    fn involution_fixes_m_and_swaps_minima() {
        for c in [hyperbolic(), elliptic(), parabolic()] {
            let e = c.find_extrema().unwrap();
            assert!((c.involution_partner(e.m).unwrap() - e.m).abs() < 1e-6);
            let tp = c.involution_partner(e.tau).unwrap();
            assert!((tp - e.tau_prime).abs() < 1e-6, "{tp} vs {}", e.tau_prime);
        }
    }

    #[test]
    fn partner_circle_matches_inversion() {
        let c = hyperbolic();
        for t in [-0.7, 0.2, 1.1, 2.5] {
            let tp = c.involution_partner(t).unwrap();
            let flowed = c.state(tp).unwrap().circle().unwrap();
            let inverted = c.inverted_flowed_circle(t).unwrap();
            assert!((flowed.center() - inverted.center()).norm() < 1e-9);
            assert!((flowed.radius() - inverted.radius()).abs() < 1e-9);
        }
    }
}
