//! Lifting octahedral configurations to the sphere, the latitude
//! normalization, the packing test and the diagonal non-equivalence test.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Rotation3, Vector3};

use crate::construction::{incenter, orthogonal_circle, Configuration, MsConstruction, Vertex};
use crate::error::{Error, Result};
use crate::inversive::{inv_dist_sphere, PlanarCircle, SphericalCircle};
use crate::mobius::MobiusMap;
use crate::optimize::bisect;
use crate::polyhedral::{octahedron, spherical_corner_angle, EdgeLabeledTriangulation};
use crate::stereo::{stereographic_drop, stereographic_lift};

/// Edge-label agreement for a realization.
pub const LABEL_TOL: f64 = 1e-8;
/// Adjacent centers closer than `π − ANTIPODAL_TOL` count as non-antipodal.
pub const ANTIPODAL_TOL: f64 = 1e-9;
/// Minimum `|det|` of the three center directions of a face.
pub const GREAT_CIRCLE_TOL: f64 = 1e-10;
pub const AREA_TOL: f64 = 1e-6;
/// Edge-label agreement required before comparing diagonals.
pub const CERT_LABEL_TOL: f64 = 1e-6;
/// Diagonal gap above which two realizations are certified inequivalent.
pub const CERT_SEPARATION: f64 = 1e-6;
/// Window for the meridian flow parameter.
pub const FLOW_WINDOW: (f64, f64) = (-10.0, 10.0);

/// One spherical circle per octahedron vertex, indexed by [`Vertex`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalRealization {
    pub circles: [SphericalCircle; 6],
    pub t: Option<f64>,
}

impl SphericalRealization {
    pub fn new(circles: [SphericalCircle; 6]) -> Self {
        Self { circles, t: None }
    }

    /// Plain stereographic lift, no normalization.
    pub fn lift(cfg: &Configuration) -> Self {
        Self {
            circles: cfg.circles.map(|c| stereographic_lift(&c)),
            t: Some(cfg.t),
        }
    }

    pub fn circle(&self, v: Vertex) -> &SphericalCircle {
        &self.circles[v.index()]
    }

    pub fn inv_dist(&self, i: usize, j: usize) -> f64 {
        inv_dist_sphere(&self.circles[i], &self.circles[j])
    }

    pub fn radii(&self) -> [f64; 6] {
        self.circles.map(|c| c.radius())
    }

    /// Geodesic distance between the centers of circles `i` and `j`.
    pub fn center_distance(&self, i: usize, j: usize) -> f64 {
        let (a, b) = (self.circles[i].center(), self.circles[j].center());
        a.cross(&b).norm().atan2(a.dot(&b))
    }

    /// Applies a rotation of the sphere to every circle.
    pub fn rotated(&self, rot: &Rotation3<f64>) -> Self {
        self.map_circles(|_, c| {
            SphericalCircle::from_direction(rot * c.center(), c.radius()).expect("rotation")
        })
    }

    pub fn map_circles<F>(&self, mut f: F) -> Self
    where
        F: FnMut(usize, &SphericalCircle) -> SphericalCircle,
    {
        let mut circles = self.circles;
        for (i, c) in circles.iter_mut().enumerate() {
            *c = f(i, c);
        }
        Self { circles, t: self.t }
    }

    /// The image under a Möbius map of the plane, acting through stereographic
    /// projection. Companion caps may flip, so only `|inversive distance|` is
    /// preserved.
    pub fn mobius_image(&self, map: &MobiusMap) -> Result<Self> {
        let mut circles = self.circles;
        for c in circles.iter_mut() {
            let planar = stereographic_drop(c)?;
            *c = stereographic_lift(&map.apply_circle(&planar)?);
        }
        Ok(Self { circles, t: self.t })
    }
}

/// Data of the normalization at a critical time: `O`, `O′` and the scale of
/// the similarity `z ↦ e^s (z − i/√3)` that makes the lifted `O`, `O′`
/// latitudinal and the latitudes `L`, `L′` through the unprimed and primed
/// centers equal in radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationContext {
    pub tau: f64,
    pub o: PlanarCircle,
    pub o_prime: PlanarCircle,
    pub log_scale: f64,
}

fn similarity(c: &PlanarCircle, log_scale: f64) -> PlanarCircle {
    let k = log_scale.exp();
    PlanarCircle::new(k * (c.center() - incenter()), k * c.radius()).expect("similarity")
}

/// The `s` for which the lifted centers of `cu` and `cw` sit on latitudes of
/// equal radius, one in each hemisphere.
pub fn equalizing_log_scale(cu: &PlanarCircle, cw: &PlanarCircle) -> Result<f64> {
    let latitude_gap = |ls: f64| {
        let zu = stereographic_lift(&similarity(cu, ls)).center().z;
        let zw = stereographic_lift(&similarity(cw, ls)).center().z;
        zu + zw
    };
    let (lo, hi) = FLOW_WINDOW;
    let (glo, ghi) = (latitude_gap(lo), latitude_gap(hi));
    if !(glo.signum() != ghi.signum()) {
        return Err(Error::NormalizationFailed(format!(
            "latitude gap does not change sign on [{lo}, {hi}] ({glo:e}, {ghi:e})"
        )));
    }
    Ok(bisect(latitude_gap, lo, hi, 0.0, 400).expect("bracketed"))
}

impl NormalizationContext {
    pub fn at_critical(con: &MsConstruction, tau: f64) -> Result<Self> {
        let o = orthogonal_circle(con.params.a)?;
        let s = con.state(tau)?;
        // The circle about the incenter orthogonal to C_{w'} also meets the
        // other primed circles at right angles by the order-three symmetry.
        let power = (s.z - incenter()).norm_sqr() - s.r * s.r;
        if !(power > 0.0) {
            return Err(Error::CenterInsideCircle);
        }
        let o_prime = PlanarCircle::new(incenter(), power.sqrt())?;
        let log_scale = equalizing_log_scale(&con.base[0], &s.circle()?)?;
        Ok(Self {
            tau,
            o,
            o_prime,
            log_scale,
        })
    }

    pub fn apply(&self, c: &PlanarCircle) -> PlanarCircle {
        similarity(c, self.log_scale)
    }

    /// Spherical images of `O` and `O′`.
    pub fn lifted_orthogonal_circles(&self) -> (SphericalCircle, SphericalCircle) {
        (
            stereographic_lift(&self.apply(&self.o)),
            stereographic_lift(&self.apply(&self.o_prime)),
        )
    }
}

/// Lifts `cfg` after moving the common center of `O`, `O′` to the origin and
/// running the meridian flow until `L` and `L′` have equal radii.
pub fn lift_and_normalize(
    cfg: &Configuration,
    ctx: &NormalizationContext,
) -> Result<SphericalRealization> {
    if (ctx.o.center() - incenter()).norm() > 1e-12
        || (ctx.o_prime.center() - incenter()).norm() > 1e-12
    {
        return Err(Error::NormalizationFailed(
            "O and O' are not concentric".into(),
        ));
    }
    let ls = equalizing_log_scale(cfg.circle(Vertex::U), cfg.circle(Vertex::WPrime))?;
    Ok(SphericalRealization {
        circles: cfg.circles.map(|c| stereographic_lift(&similarity(&c, ls))),
        t: Some(cfg.t),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PackingReport {
    pub is_realization: bool,
    pub max_label_error: f64,
    pub non_antipodal: bool,
    pub non_great_circle: bool,
    pub min_abs_triple_product: f64,
    /// `det` of the three center directions of each face.
    pub face_signs: Vec<f64>,
    pub faces_positive: bool,
    /// Sum of signed face areas.
    pub total_area: f64,
    pub interiors_disjoint: bool,
    pub triangulates: bool,
}

impl PackingReport {
    pub fn passes(&self) -> bool {
        self.is_realization && self.non_antipodal && self.non_great_circle && self.triangulates
    }
}

fn det3(a: &Vector3<f64>, b: &Vector3<f64>, c: &Vector3<f64>) -> f64 {
    Matrix3::from_columns(&[*a, *b, *c]).determinant()
}

fn geodesic(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

fn triangle_excess(p: &[Vector3<f64>; 3]) -> f64 {
    let a = geodesic(&p[1], &p[2]);
    let b = geodesic(&p[2], &p[0]);
    let c = geodesic(&p[0], &p[1]);
    spherical_corner_angle(a, b, c)
        + spherical_corner_angle(b, c, a)
        + spherical_corner_angle(c, a, b)
        - PI
}

/// Whether the short arcs `p₁p₂` and `q₁q₂` cross at a point interior to both.
fn arcs_cross(p1: &Vector3<f64>, p2: &Vector3<f64>, q1: &Vector3<f64>, q2: &Vector3<f64>) -> bool {
    let n1 = p1.cross(p2);
    let n2 = q1.cross(q2);
    if n1.dot(q1) * n1.dot(q2) >= 0.0 || n2.dot(p1) * n2.dot(p2) >= 0.0 {
        return false;
    }
    let x = n1.cross(&n2);
    x.dot(&(p1 + p2)) * x.dot(&(q1 + q2)) > 0.0
}

fn strictly_inside(tri: &[Vector3<f64>; 3], p: &Vector3<f64>) -> bool {
    det3(&tri[0], &tri[1], p) > 0.0
        && det3(&tri[1], &tri[2], p) > 0.0
        && det3(&tri[2], &tri[0], p) > 0.0
}

fn faces_overlap(centers: &[Vector3<f64>], f: &[usize; 3], g: &[usize; 3]) -> bool {
    let tf = f.map(|i| centers[i]);
    let tg = g.map(|i| centers[i]);
    for i in 0..3 {
        for j in 0..3 {
            let (a, b) = (f[i], f[(i + 1) % 3]);
            let (c, d) = (g[j], g[(j + 1) % 3]);
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if arcs_cross(&centers[a], &centers[b], &centers[c], &centers[d]) {
                return true;
            }
        }
    }
    f.iter()
        .any(|v| !g.contains(v) && strictly_inside(&tg, &centers[*v]))
        || g.iter()
            .any(|v| !f.contains(v) && strictly_inside(&tf, &centers[*v]))
}

fn share_edge(f: &[usize; 3], g: &[usize; 3]) -> bool {
    f.iter().filter(|v| g.contains(v)).count() >= 2
}

/// Checks the packing conditions: realized labels, no antipodal adjacent
/// centers, no face on a great circle, and a positively oriented geodesic
/// triangulation by the centers.
pub fn validate_packing(r: &SphericalRealization, k: &EdgeLabeledTriangulation) -> PackingReport {
    let centers: Vec<Vector3<f64>> = r.circles.iter().map(|c| c.center()).collect();

    let mut max_label_error: f64 = 0.0;
    let mut non_antipodal = true;
    for e in k.edges() {
        let err = (r.inv_dist(e.u, e.v) - e.label).abs() / e.label.abs().max(1.0);
        max_label_error = max_label_error.max(err);
        if geodesic(&centers[e.u], &centers[e.v]) >= PI - ANTIPODAL_TOL {
            non_antipodal = false;
        }
    }

    let mut face_signs = Vec::new();
    let mut total_area = 0.0;
    let mut min_abs_triple_product = f64::INFINITY;
    for f in k.faces() {
        let p = f.map(|i| centers[i]);
        let det = det3(&p[0], &p[1], &p[2]);
        min_abs_triple_product = min_abs_triple_product.min(det.abs());
        face_signs.push(det);
        total_area += det.signum() * triangle_excess(&p);
    }
    let faces_positive = face_signs.iter().all(|&d| d > GREAT_CIRCLE_TOL);

    let faces = k.faces();
    let mut interiors_disjoint = true;
    for (i, f) in faces.iter().enumerate() {
        for g in &faces[i + 1..] {
            if !share_edge(f, g) && faces_overlap(&centers, f, g) {
                interiors_disjoint = false;
            }
        }
    }

    let area_ok = (total_area - 4.0 * PI).abs() <= AREA_TOL;
    PackingReport {
        is_realization: max_label_error <= LABEL_TOL,
        max_label_error,
        non_antipodal,
        non_great_circle: min_abs_triple_product > GREAT_CIRCLE_TOL,
        min_abs_triple_product,
        face_signs,
        faces_positive,
        total_area,
        interiors_disjoint,
        triangulates: faces_positive && area_ok && interiors_disjoint,
    }
}

/// The octahedron labeled by the measured inversive distances of `r` on the
/// `a`, `b`, `c`, `d` edge classes (taken at `vw`, `uw′`, `vw′`, `u′v′`).
pub fn measured_octahedron(r: &SphericalRealization) -> EdgeLabeledTriangulation {
    use Vertex::*;
    let d = |x: Vertex, y: Vertex| r.inv_dist(x.index(), y.index());
    octahedron(d(V, W), d(U, WPrime), d(V, WPrime), d(UPrime, VPrime))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    NotEquivalent,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::NotEquivalent => "not_equivalent",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonEquivalenceCertificate {
    pub edge_labels_match: bool,
    pub max_edge_gap: f64,
    pub diagonals_1: [f64; 3],
    pub diagonals_2: [f64; 3],
    pub separation: f64,
    pub verdict: Verdict,
}

const DIAGONALS: [(Vertex, Vertex); 3] = [
    (Vertex::U, Vertex::UPrime),
    (Vertex::V, Vertex::VPrime),
    (Vertex::W, Vertex::WPrime),
];

fn sorted_diagonals(r: &SphericalRealization) -> [f64; 3] {
    let mut d = DIAGONALS.map(|(x, y)| r.inv_dist(x.index(), y.index()).abs());
    d.sort_by(f64::total_cmp);
    d
}

/// Compares `|inversive distance|` on the three diagonals `uu′`, `vv′`, `ww′`
/// of two realizations of the same labeled octahedron. Any Möbius map keeps
/// these, so a gap proves the two are not inversive equivalent. Equal
/// diagonals prove nothing.
pub fn certify_nonequivalence(
    r1: &SphericalRealization,
    r2: &SphericalRealization,
) -> Result<NonEquivalenceCertificate> {
    let k = octahedron(0.0, 0.0, 0.0, 0.0);
    let max_edge_gap = k
        .edges()
        .iter()
        .map(|e| (r1.inv_dist(e.u, e.v).abs() - r2.inv_dist(e.u, e.v).abs()).abs())
        .fold(0.0, f64::max);
    if max_edge_gap > CERT_LABEL_TOL {
        return Err(Error::LabelMismatch(max_edge_gap));
    }
    let diagonals_1 = sorted_diagonals(r1);
    let diagonals_2 = sorted_diagonals(r2);
    let separation = diagonals_1
        .iter()
        .zip(&diagonals_2)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(NonEquivalenceCertificate {
        edge_labels_match: true,
        max_edge_gap,
        diagonals_1,
        diagonals_2,
        separation,
        verdict: if separation > CERT_SEPARATION {
            Verdict::NotEquivalent
        } else {
            Verdict::Inconclusive
        },
    })
}

/// Rotation about the polar axis by `angle`, applied to the primed circles only.
pub fn rotate_primed(r: &SphericalRealization, angle: f64) -> SphericalRealization {
    let rot = Rotation3::from_axis_angle(&Vector3::z_axis(), angle);
    r.map_circles(|i, c| {
        if i >= 3 {
            SphericalCircle::from_direction(rot * c.center(), c.radius()).expect("rotation")
        } else {
            *c
        }
    })
}
