//! Edge-labeled triangulations of the sphere, the spherical length function
//! built from vertex radii, and vertex angle sums.

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::inversive::InversiveDistance;

/// Angle-sum tolerance for flatness, in radians.
pub const FLAT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeLabeledTriangulation {
    n_vertices: usize,
    faces: Vec<[usize; 3]>,
    edges: Vec<Edge>,
    index: HashMap<(usize, usize), usize>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl EdgeLabeledTriangulation {
    /// Builds a closed oriented triangulation. Every face edge needs a label,
    /// every edge must bound exactly two faces with opposite orientations and
    /// `V − E + F = 2`.
    pub fn new(
        n_vertices: usize,
        faces: Vec<[usize; 3]>,
        labels: &[((usize, usize), f64)],
    ) -> Result<Self> {
        let mut oriented: HashMap<(usize, usize), usize> = HashMap::new();
        for f in &faces {
            if f.iter().any(|&i| i >= n_vertices) || f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(Error::InvalidTriangulation(format!("bad face {f:?}")));
            }
            for k in 0..3 {
                *oriented.entry((f[k], f[(k + 1) % 3])).or_default() += 1;
            }
        }
        for (&(a, b), &n) in &oriented {
            if n != 1 || oriented.get(&(b, a)) != Some(&1) {
                return Err(Error::InvalidTriangulation(format!(
                    "edge {a}-{b} is not shared by two oppositely oriented faces"
                )));
            }
        }
        let mut edges = Vec::new();
        let mut index = HashMap::new();
        for &((u, v), label) in labels {
            let k = key(u, v);
            if !oriented.contains_key(&(u, v)) {
                return Err(Error::InvalidTriangulation(format!(
                    "{u}-{v} is not a face edge"
                )));
            }
            if index.insert(k, edges.len()).is_some() {
                return Err(Error::InvalidTriangulation(format!(
                    "edge {u}-{v} labeled twice"
                )));
            }
            edges.push(Edge {
                u: k.0,
                v: k.1,
                label,
            });
        }
        if edges.len() * 2 != oriented.len() {
            return Err(Error::InvalidTriangulation("unlabeled edges".into()));
        }
        let euler = n_vertices as i64 - edges.len() as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(Error::InvalidTriangulation(format!(
                "Euler characteristic {euler}"
            )));
        }
        Ok(Self {
            n_vertices,
            faces,
            edges,
            index,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn label(&self, u: usize, v: usize) -> Option<f64> {
        self.index.get(&key(u, v)).map(|&i| self.edges[i].label)
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.index.contains_key(&key(u, v))
    }

    /// Vertex pairs that are not edges.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n_vertices {
            for v in u + 1..self.n_vertices {
                if !self.is_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }
}

/// The octahedron `𝒪(a, b, c, d)` on vertices `u, v, w, u′, v′, w′` (indices
/// 0 to 5). Faces are listed counterclockwise as seen from outside.
pub fn octahedron(a: f64, b: f64, c: f64, d: f64) -> EdgeLabeledTriangulation {
    const U: usize = 0;
    const V: usize = 1;
    const W: usize = 2;
    const UP: usize = 3;
    const VP: usize = 4;
    const WP: usize = 5;
    let faces = vec![
        [W, V, U],
        [UP, VP, WP],
        [V, WP, U],
        [W, UP, V],
        [U, VP, W],
        [UP, WP, V],
        [VP, UP, W],
        [WP, VP, U],
    ];
    let labels = [
        ((U, V), a),
        ((V, W), a),
        ((W, U), a),
        ((UP, VP), d),
        ((VP, WP), d),
        ((WP, UP), d),
        ((U, WP), b),
        ((V, WP), c),
        ((V, UP), b),
        ((W, UP), c),
        ((W, VP), b),
        ((U, VP), c),
    ];
    EdgeLabeledTriangulation::new(6, faces, &labels).expect("octahedron is a valid triangulation")
}

#[derive(Debug, Clone, PartialEq)]
pub struct LengthFunction {
    /// Lengths in the order of [`EdgeLabeledTriangulation::edges`].
    pub lengths: Vec<f64>,
}

impl LengthFunction {
    pub fn get(&self, k: &EdgeLabeledTriangulation, u: usize, v: usize) -> Option<f64> {
        k.index.get(&key(u, v)).map(|&i| self.lengths[i])
    }
}

/// `ℓ(uv) = arccos(cos r_u cos r_v − β(uv) sin r_u sin r_v)`, checked against
/// the strict triangle inequality and perimeter `< 2π` on every face.
pub fn length_function(k: &EdgeLabeledTriangulation, radii: &[f64]) -> Result<LengthFunction> {
    if radii.len() != k.n_vertices || radii.iter().any(|&r| !(r > 0.0 && r < PI)) {
        return Err(Error::InvalidParams(
            "need one radius in (0, π) per vertex".into(),
        ));
    }
    let mut lengths = Vec::with_capacity(k.edges.len());
    for e in &k.edges {
        let (ru, rv) = (radii[e.u], radii[e.v]);
        let arg = ru.cos() * rv.cos() - e.label * ru.sin() * rv.sin();
        if !(arg.abs() < 1.0) {
            return Err(Error::UndefinedLength {
                u: e.u,
                v: e.v,
                arg,
            });
        }
        lengths.push(arg.acos());
    }
    let ell = LengthFunction { lengths };
    for f in &k.faces {
        let s = face_sides(k, &ell, f);
        let [x, y, z] = s;
        if !(x < y + z && y < x + z && z < x + y) {
            return Err(Error::InvalidFace {
                face: *f,
                inequality: "triangle inequality",
            });
        }
        if !(x + y + z < 2.0 * PI) {
            return Err(Error::InvalidFace {
                face: *f,
                inequality: "perimeter bound",
            });
        }
    }
    Ok(ell)
}

/// Sides opposite the three corners of `f`.
fn face_sides(k: &EdgeLabeledTriangulation, ell: &LengthFunction, f: &[usize; 3]) -> [f64; 3] {
    let side = |i: usize, j: usize| ell.get(k, f[i], f[j]).expect("face edge has a length");
    [side(1, 2), side(2, 0), side(0, 1)]
}

/// Corner angle opposite side `a` of a spherical triangle with sides `a, b, c`,
/// by the half-angle form of the law of cosines.
pub fn spherical_corner_angle(a: f64, b: f64, c: f64) -> f64 {
    let s = 0.5 * (a + b + c);
    let num = ((s - b).sin() * (s - c).sin()).max(0.0);
    let den = (s.sin() * (s - a).sin()).max(0.0);
    2.0 * num.sqrt().atan2(den.sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexAngleReport {
    pub sums: Vec<f64>,
    pub singular: Vec<usize>,
}

impl VertexAngleReport {
    pub fn is_flat(&self) -> bool {
        self.singular.is_empty()
    }
}

pub fn angle_sums(k: &EdgeLabeledTriangulation, ell: &LengthFunction) -> VertexAngleReport {
    let mut sums = vec![0.0; k.n_vertices];
    for f in &k.faces {
        let [a, b, c] = face_sides(k, ell, f);
        sums[f[0]] += spherical_corner_angle(a, b, c);
        sums[f[1]] += spherical_corner_angle(b, c, a);
        sums[f[2]] += spherical_corner_angle(c, a, b);
    }
    let singular = sums
        .iter()
        .enumerate()
        .filter(|(_, s)| (*s - 2.0 * PI).abs() > FLAT_TOL)
        .map(|(i, _)| i)
        .collect();
    VertexAngleReport { sums, singular }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeClass {
    DeepOverlap,
    Overlap,
    Tangent,
    Separated,
}

impl EdgeClass {
    pub fn of(beta: f64) -> Self {
        if beta < 0.0 {
            EdgeClass::DeepOverlap
        } else if beta < 1.0 {
            EdgeClass::Overlap
        } else if beta == 1.0 {
            EdgeClass::Tangent
        } else {
            EdgeClass::Separated
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabelSummary {
    pub classes: Vec<EdgeClass>,
    pub edge_segregated: bool,
    pub edge_separated: bool,
}

pub fn classify_labels(k: &EdgeLabeledTriangulation) -> LabelSummary {
    let classes: Vec<EdgeClass> = k.edges.iter().map(|e| EdgeClass::of(e.label)).collect();
    LabelSummary {
        edge_segregated: k.edges.iter().all(|e| e.label >= 0.0),
        edge_separated: k.edges.iter().all(|e| e.label > 1.0),
        classes,
    }
}

/// True when every pair of circles, edge or not, has inversive distance `≥ 0`.
/// Edge-segregated labels do not imply this.
pub fn is_segregated<C: InversiveDistance>(circles: &[C]) -> bool {
    circles
        .iter()
        .enumerate()
        .all(|(i, a)| circles[i + 1..].iter().all(|b| a.inv_dist(b) >= 0.0))
}
