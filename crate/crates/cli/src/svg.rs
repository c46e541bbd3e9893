//! Hand-written SVG 1.1 figures on a fixed 1000×1000 canvas.

use std::f64::consts::PI;
use std::fmt::Write;

use nalgebra::Vector3;

use msoct::lift::SphericalRealization;
use msoct::polyhedral::octahedron;
use msoct::{ExtremaReport, MsConstruction, PlanarCircle, Vertex};

pub const SIZE: f64 = 1000.0;
const MARGIN: f64 = 40.0;
/// Flowed circles drawn in the flow figure.
pub const FLOW_SAMPLES: usize = 24;
const GRAPH_SAMPLES: usize = 400;
const ARC_SAMPLES: usize = 48;
const CAP_SAMPLES: usize = 180;

const STYLE: &str = "\
.base{fill:none;stroke:#1f4e9c;stroke-width:2.5}
.flowed{fill:none;stroke:#7a7a7a;stroke-width:0.8}
.envelope{fill:none;stroke:#000;stroke-width:1.5;stroke-dasharray:6 4}
.critical{fill:none;stroke:#e07b00;stroke-width:2.5}
.maximum{fill:none;stroke:#2a9d3c;stroke-width:2.5}
.curve{fill:none;stroke:#1f4e9c;stroke-width:2}
.axis{fill:none;stroke:#000;stroke-width:1}
.marker{stroke:none}
.tau{fill:#e07b00}
.max{fill:#2a9d3c}
.outline{fill:none;stroke:#000;stroke-width:1.5}
.front{fill:none;stroke:#1f4e9c;stroke-width:2}
.back{fill:none;stroke:#9bb0d3;stroke-width:1;stroke-dasharray:4 3}
.edge.front{stroke:#b03030;stroke-width:1.5}
.edge.back{stroke:#e3a5a5;stroke-width:1}
.label{font-family:sans-serif;font-size:16px}
";

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn header(title: &str) -> String {
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n",
    );
    let _ = writeln!(s, "<title>{title}</title>");
    let _ = writeln!(s, "<style type=\"text/css\"><![CDATA[\n{STYLE}]]></style>");
    s.push_str("<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"#fff\"/>\n");
    s
}

/// Uniform world-to-canvas map with the y axis pointing up.
struct Frame {
    x0: f64,
    y1: f64,
    scale: f64,
}

impl Frame {
    fn fit(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Self {
        let w = (xmax - xmin).max(1e-9);
        let h = (ymax - ymin).max(1e-9);
        let scale = (SIZE - 2.0 * MARGIN) / w.max(h);
        // Center the shorter side.
        let x0 = xmin - 0.5 * (w.max(h) - w);
        let y1 = ymax + 0.5 * (w.max(h) - h);
        Self { x0, y1, scale }
    }

    fn x(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) * self.scale
    }

    fn y(&self, y: f64) -> f64 {
        MARGIN + (self.y1 - y) * self.scale
    }
}

fn circle_el(out: &mut String, f: &Frame, class: &str, c: &PlanarCircle) {
    let _ = writeln!(
        out,
        "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
        num(f.x(c.center().re)),
        num(f.y(c.center().im)),
        num(c.radius() * f.scale)
    );
}

fn sample_times(ext: &ExtremaReport, n: usize, closed: bool) -> Vec<f64> {
    let (lo, hi) = match ext.omega {
        Some(w) => (0.0, w),
        None => {
            let span = ext.tau_prime - ext.tau;
            (ext.tau - span, ext.tau_prime + span)
        }
    };
    let steps = if closed || ext.omega.is_none() {
        n - 1
    } else {
        n
    };
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / steps as f64)
        .collect()
}

/// Base triple, envelopes, flowed circles, and the outer face at `τ` and `m`.
pub fn flow_figure(con: &MsConstruction, ext: &ExtremaReport) -> msoct::Result<String> {
    let env = &con.envelope;
    let mut bounds = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for c in con.base.iter().chain([&env.a1, &env.a2, &con.initial]) {
        let (p, r) = (c.center(), c.radius());
        bounds.0 = bounds.0.min(p.re - r);
        bounds.1 = bounds.1.max(p.re + r);
        bounds.2 = bounds.2.min(p.im - r);
        bounds.3 = bounds.3.max(p.im + r);
    }
    let f = Frame::fit(bounds.0, bounds.1, bounds.2, bounds.3);

    let mut out = header("coaxial flow");
    out.push_str("<g id=\"envelopes\">\n");
    for c in [&env.a1, &env.a2] {
        circle_el(&mut out, &f, "envelope", c);
    }
    out.push_str("</g>\n<g id=\"flowed\">\n");
    for t in sample_times(ext, FLOW_SAMPLES, false) {
        circle_el(&mut out, &f, "flowed", &con.state(t)?.circle()?);
    }
    out.push_str("</g>\n<g id=\"base\">\n");
    for c in &con.base {
        circle_el(&mut out, &f, "base", c);
    }
    out.push_str("</g>\n");
    for (id, class, t) in [
        ("critical", "critical", ext.tau),
        ("maximum", "maximum", ext.m),
    ] {
        let _ = writeln!(out, "<g id=\"{id}\">");
        let cfg = con.configuration(t)?;
        for v in [Vertex::UPrime, Vertex::VPrime, Vertex::WPrime] {
            circle_el(&mut out, &f, class, cfg.circle(v));
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// `log₁₀ d(t)` with markers at the extrema.
pub fn graph_figure(con: &MsConstruction, ext: &ExtremaReport) -> msoct::Result<String> {
    let ts = sample_times(ext, GRAPH_SAMPLES, true);
    let mut pts = Vec::with_capacity(ts.len());
    for &t in &ts {
        pts.push((t, con.profile_d(t)?.max(1e-12).log10()));
    }
    let (lo, hi) = (ts[0], ts[ts.len() - 1]);
    let ymin = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let ymax = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    // Stretch the value axis to the full canvas height.
    let sx = (SIZE - 2.0 * MARGIN) / (hi - lo);
    let sy = (SIZE - 2.0 * MARGIN) / (ymax - ymin).max(1e-9);
    let px = |t: f64| MARGIN + (t - lo) * sx;
    let py = |v: f64| SIZE - MARGIN - (v - ymin) * sy;

    let mut out = header("inversive distance profile");
    let _ = writeln!(
        out,
        "<polyline class=\"axis\" points=\"{},{} {},{} {},{}\"/>",
        num(MARGIN),
        num(MARGIN),
        num(MARGIN),
        num(SIZE - MARGIN),
        num(SIZE - MARGIN),
        num(SIZE - MARGIN)
    );
    out.push_str("<polyline class=\"curve\" points=\"");
    for (i, (t, v)) in pts.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{},{}", num(px(*t)), num(py(*v)));
    }
    out.push_str("\"/>\n");

    let mut markers = vec![
        ("tau", "tau", ext.tau, ext.d_tau),
        ("tau_prime", "tau", ext.tau_prime, ext.d_tau),
        ("m", "max", ext.m, ext.d_m),
    ];
    if let (Some(t), Some(d)) = (ext.big_m, ext.d_big_m) {
        markers.push(("M", "max", t, d));
    }
    for (label, class, t, d) in markers {
        let _ = writeln!(
            out,
            "<circle class=\"marker {class}\" data-label=\"{label}\" data-t=\"{}\" data-d=\"{}\" cx=\"{}\" cy=\"{}\" r=\"6\"/>",
            crate::report::round_sig(t),
            crate::report::round_sig(d),
            num(px(t)),
            num(py(d.log10()))
        );
    }
    let _ = writeln!(
        out,
        "<text class=\"label\" x=\"{}\" y=\"{}\">t from {} to {}; log10 d from {} to {}</text>",
        num(MARGIN),
        num(MARGIN - 12.0),
        num(lo),
        num(hi),
        num(ymin),
        num(ymax)
    );
    out.push_str("</svg>\n");
    Ok(out)
}

fn project(p: &Vector3<f64>) -> (f64, f64) {
    let s = 0.5 * SIZE - MARGIN;
    (0.5 * SIZE + s * p.x, 0.5 * SIZE - s * p.y)
}

/// Splits a sampled curve into runs on the near (`Z ≥ 0`) and far side.
fn sided_paths(out: &mut String, class: &str, vertex: &str, pts: &[Vector3<f64>]) {
    let mut front = String::new();
    let mut back = String::new();
    let mut prev: Option<bool> = None;
    for p in pts {
        let visible = p.z >= 0.0;
        let (x, y) = project(p);
        let target = if visible { &mut front } else { &mut back };
        let cmd = if prev == Some(visible) { 'L' } else { 'M' };
        let _ = write!(target, "{cmd}{},{} ", num(x), num(y));
        prev = Some(visible);
    }
    for (side, d) in [("front", front), ("back", back)] {
        if !d.is_empty() {
            let _ = writeln!(
                out,
                "<path class=\"{class} {side}\" data-vertex=\"{vertex}\" d=\"{}\"/>",
                d.trim_end()
            );
        }
    }
}

/// Orthographic view from the north pole.
pub fn sphere_figure(r: &SphericalRealization) -> String {
    let mut out = header("spherical packing");
    let _ = writeln!(
        out,
        "<circle class=\"outline\" cx=\"500.000\" cy=\"500.000\" r=\"{}\"/>",
        num(0.5 * SIZE - MARGIN)
    );
    out.push_str("<g id=\"caps\">\n");
    for v in Vertex::ALL {
        let c = r.circle(v);
        let n = c.center();
        let helper = if n.x.abs() < 0.9 {
            Vector3::x()
        } else {
            Vector3::y()
        };
        let e1 = n.cross(&helper).normalize();
        let e2 = n.cross(&e1);
        let (s, co) = c.radius().sin_cos();
        let pts: Vec<Vector3<f64>> = (0..=CAP_SAMPLES)
            .map(|k| {
                let th = 2.0 * PI * k as f64 / CAP_SAMPLES as f64;
                co * n + s * (th.cos() * e1 + th.sin() * e2)
            })
            .collect();
        sided_paths(&mut out, "cap", v.name(), &pts);
    }
    out.push_str("</g>\n<g id=\"edges\">\n");
    let k = octahedron(0.0, 0.0, 0.0, 0.0);
    for e in k.edges() {
        let (a, b) = (r.circles[e.u].center(), r.circles[e.v].center());
        let omega = a.cross(&b).norm().atan2(a.dot(&b));
        let pts: Vec<Vector3<f64>> = (0..=ARC_SAMPLES)
            .map(|i| {
                let s = i as f64 / ARC_SAMPLES as f64;
                ((1.0 - s) * omega).sin() * a + (s * omega).sin() * b
            })
            .map(|p| p.normalize())
            .collect();
        let name = format!("{}-{}", Vertex::ALL[e.u].name(), Vertex::ALL[e.v].name());
        sided_paths(&mut out, "edge", &name, &pts);
    }
    out.push_str("</g>\n</svg>\n");
    out
}
