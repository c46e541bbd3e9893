//! Commands behind the `msoct` binary: worked-case reports, pair search with
//! certification, and SVG figures.

pub mod report;
pub mod svg;

use std::fs;
use std::io::Write;
use std::path::Path;

use msoct::coaxial::FamilyKind;
use msoct::construction::face_label_from_y;
use msoct::lift::{
    certify_nonequivalence, lift_and_normalize, measured_octahedron, validate_packing,
    NormalizationContext, SphericalRealization, Verdict,
};
use msoct::{MsConstruction, MsParams};

pub use report::{PairReport, RunReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or parameters outside their domain.
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl From<msoct::Error> for CliError {
    fn from(e: msoct::Error) -> Self {
        match e {
            msoct::Error::InvalidParams(_)
            | msoct::Error::NegativeC(_)
            | msoct::Error::OutOfBand { .. } => CliError::Usage(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Pencil kind to use when only `y` is given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FlowChoice {
    Hyperbolic,
    #[default]
    Elliptic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseSpec {
    pub a: Option<f64>,
    pub y: Option<f64>,
    pub flow: FlowChoice,
    pub x1: f64,
    pub x2: f64,
}

impl CaseSpec {
    pub fn with_a(a: f64, x1: f64, x2: f64) -> Self {
        Self {
            a: Some(a),
            y: None,
            flow: FlowChoice::default(),
            x1,
            x2,
        }
    }

    pub fn with_y(y: f64, flow: FlowChoice, x1: f64, x2: f64) -> Self {
        Self {
            a: None,
            y: Some(y),
            flow,
            x1,
            x2,
        }
    }

    pub fn face_label(&self) -> CliResult<f64> {
        match (self.a, self.y) {
            (Some(a), None) => Ok(a),
            (None, Some(y)) => {
                let kind = if y == 0.0 {
                    FamilyKind::Tangent
                } else {
                    match self.flow {
                        FlowChoice::Hyperbolic => FamilyKind::Intersecting,
                        FlowChoice::Elliptic => FamilyKind::Disjoint,
                    }
                };
                Ok(face_label_from_y(y, kind)?)
            }
            _ => Err(CliError::Usage("give exactly one of --a and --y".into())),
        }
    }

    pub fn params(&self) -> CliResult<MsParams> {
        if !(self.x1 > 1.0 && self.x2 > self.x1) {
            return Err(CliError::Usage(format!(
                "need 1 < x1 < x2, got x1 = {}, x2 = {}",
                self.x1, self.x2
            )));
        }
        Ok(MsParams::new(self.face_label()?, self.x1, self.x2)?)
    }

    pub fn construction(&self) -> CliResult<MsConstruction> {
        Ok(MsConstruction::new(self.params()?)?)
    }
}

/// Report and exit code for `case`. The code is 1 when the critical
/// configuration fails the half-plane or orthogonal-circle test.
pub fn cmd_case(spec: &CaseSpec) -> CliResult<(RunReport, i32)> {
    let con = spec.construction()?;
    let ext = con.find_extrema()?;
    let crit = con.criticality_check(ext.tau);
    let code = match &crit {
        Ok(c) if c.passes => 0,
        _ => 1,
    };
    Ok((RunReport::new(&con, &ext, crit.ok(), None), code))
}

/// The two members of the pair at `d_target`, lifted and normalized.
pub fn pair_realizations(
    con: &MsConstruction,
    d_target: f64,
) -> CliResult<(
    msoct::PairSolution,
    SphericalRealization,
    SphericalRealization,
)> {
    let pair = con.find_pair(d_target)?;
    let ext = con.find_extrema()?;
    let ctx = NormalizationContext::at_critical(con, ext.tau)?;
    let r1 = lift_and_normalize(&con.configuration(pair.t)?, &ctx)?;
    let r2 = lift_and_normalize(&con.configuration(pair.t_prime)?, &ctx)?;
    Ok((pair, r1, r2))
}

/// Report and exit code for `pair`. The code is 0 only when both members pack
/// and the diagonal test separates them.
pub fn cmd_pair(spec: &CaseSpec, d_target: f64) -> CliResult<(RunReport, i32)> {
    let con = spec.construction()?;
    let ext = con.find_extrema()?;
    let (pair, r1, r2) = pair_realizations(&con, d_target)?;
    let p1 = validate_packing(&r1, &measured_octahedron(&r1));
    let p2 = validate_packing(&r2, &measured_octahedron(&r2));
    let cert = certify_nonequivalence(&r1, &r2);
    let ok =
        p1.passes() && p2.passes() && matches!(&cert, Ok(c) if c.verdict == Verdict::NotEquivalent);
    let crit = con.criticality_check(ext.tau).ok();
    let pair_report = PairReport::new(&pair, [&p1, &p2], cert.as_ref().ok());
    let report = RunReport::new(&con, &ext, crit, Some(pair_report));
    Ok((report, if ok { 0 } else { 1 }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    Flow,
    Graph,
    Sphere,
}

/// SVG text for one of the figures.
pub fn figure_svg(spec: &CaseSpec, kind: FigureKind, t: Option<f64>) -> CliResult<String> {
    let con = spec.construction()?;
    let ext = con.find_extrema()?;
    Ok(match kind {
        FigureKind::Flow => svg::flow_figure(&con, &ext)?,
        FigureKind::Graph => svg::graph_figure(&con, &ext)?,
        FigureKind::Sphere => {
            let ctx = NormalizationContext::at_critical(&con, ext.tau)?;
            let r = lift_and_normalize(&con.configuration(t.unwrap_or(ext.tau))?, &ctx)?;
            svg::sphere_figure(&r)
        }
    })
}

pub fn cmd_figure(spec: &CaseSpec, kind: FigureKind, t: Option<f64>, out: &Path) -> CliResult<()> {
    let text = figure_svg(spec, kind, t)?;
    write_atomic(out, text.as_bytes())
}

/// Writes to a temporary file beside `path` and renames it into place, so a
/// failed run leaves no partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let fail =
        |e: std::io::Error| CliError::Failed(format!("cannot write {}: {e}", path.display()));
    let name = path
        .file_name()
        .ok_or_else(|| CliError::Failed(format!("not a file path: {}", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(fail(e));
    }
    Ok(())
}
