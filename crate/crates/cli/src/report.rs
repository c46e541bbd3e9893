//! JSON run reports. Field names are fixed; see `docs/report-schema.md`.

use serde::Serialize;
use serde_json::Value;

use msoct::lift::{NonEquivalenceCertificate, PackingReport};
use msoct::{CriticalityReport, ExtremaReport, MsConstruction, PairSolution};

pub const SCHEMA: &str = "msoct-report/1";
/// Significant digits kept for every number in a report.
pub const SIG_DIGITS: usize = 12;

#[derive(Debug, Clone, Serialize)]
pub struct CaseEcho {
    pub a: f64,
    pub y: f64,
    pub kind: &'static str,
    pub x1: f64,
    pub x2: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Labels {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Extrema {
    pub tau: f64,
    pub tau_prime: f64,
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: Option<f64>,
    pub omega: Option<f64>,
    pub d_tau: f64,
    pub d_m: f64,
    #[serde(rename = "d_M")]
    pub d_big_m: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Criticality {
    pub in_half_plane: bool,
    pub signed_area: f64,
    pub o_radius: Option<f64>,
    pub inv_dist_to_o: Option<f64>,
    pub passes: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PackingSummary {
    pub passes: bool,
    pub is_realization: bool,
    pub max_label_error: f64,
    pub non_antipodal: bool,
    pub non_great_circle: bool,
    pub faces_positive: bool,
    pub interiors_disjoint: bool,
    pub triangulates: bool,
    pub total_area: f64,
    pub face_signs: Vec<f64>,
}

impl From<&PackingReport> for PackingSummary {
    fn from(p: &PackingReport) -> Self {
        Self {
            passes: p.passes(),
            is_realization: p.is_realization,
            max_label_error: p.max_label_error,
            non_antipodal: p.non_antipodal,
            non_great_circle: p.non_great_circle,
            faces_positive: p.faces_positive,
            interiors_disjoint: p.interiors_disjoint,
            triangulates: p.triangulates,
            total_area: p.total_area,
            face_signs: p.face_signs.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub edge_labels_match: bool,
    pub max_edge_gap: f64,
    pub diagonals_1: [f64; 3],
    pub diagonals_2: [f64; 3],
    pub separation: f64,
    pub verdict: &'static str,
}

impl From<&NonEquivalenceCertificate> for Certificate {
    fn from(c: &NonEquivalenceCertificate) -> Self {
        Self {
            edge_labels_match: c.edge_labels_match,
            max_edge_gap: c.max_edge_gap,
            diagonals_1: c.diagonals_1,
            diagonals_2: c.diagonals_2,
            separation: c.separation,
            verdict: c.verdict.as_str(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub t: f64,
    pub t_prime: f64,
    pub d_target: f64,
    pub d_t: f64,
    pub d_t_prime: f64,
    pub packings: [PackingSummary; 2],
    pub certificate: Option<Certificate>,
}

impl PairReport {
    pub fn new(
        pair: &PairSolution,
        packings: [&PackingReport; 2],
        cert: Option<&NonEquivalenceCertificate>,
    ) -> Self {
        Self {
            t: pair.t,
            t_prime: pair.t_prime,
            d_target: pair.d_target,
            d_t: pair.d_t,
            d_t_prime: pair.d_t_prime,
            packings: packings.map(PackingSummary::from),
            certificate: cert.map(Certificate::from),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub case: CaseEcho,
    pub labels: Labels,
    pub extrema: Extrema,
    pub criticality: Option<Criticality>,
    pub pair: Option<PairReport>,
}

impl RunReport {
    pub fn new(
        con: &MsConstruction,
        ext: &ExtremaReport,
        crit: Option<CriticalityReport>,
        pair: Option<PairReport>,
    ) -> Self {
        let p = &con.params;
        Self {
            schema: SCHEMA,
            case: CaseEcho {
                a: p.a,
                y: p.y,
                kind: p.kind.flow_name(),
                x1: p.x1,
                x2: p.x2,
            },
            labels: Labels {
                a: p.a,
                b: p.b,
                c: p.c,
            },
            extrema: Extrema {
                tau: ext.tau,
                tau_prime: ext.tau_prime,
                m: ext.m,
                big_m: ext.big_m,
                omega: ext.omega,
                d_tau: ext.d_tau,
                d_m: ext.d_m,
                d_big_m: ext.d_big_m,
            },
            criticality: crit.map(|c| Criticality {
                in_half_plane: c.in_half_plane,
                signed_area: c.signed_area,
                o_radius: c.o_circle.map(|o| o.radius()),
                inv_dist_to_o: c.inv_dist_to_o,
                passes: c.passes,
            }),
            pair,
        }
    }

    /// Pretty JSON with every number rounded to [`SIG_DIGITS`] significant digits.
    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        round_numbers(&mut v);
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }
}

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

fn round_numbers(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_f64().filter(|_| n.is_f64()) {
                if let Some(r) = serde_json::Number::from_f64(round_sig(x)) {
                    *n = r;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}
