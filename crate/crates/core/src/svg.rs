//! SVG rendering of crease patterns.

use std::fmt::Write;

use crate::crease::{Assignment, CreasePattern};

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    /// Stroke width as a fraction of the larger drawing side.
    pub stroke: f64,
    pub boundary_stroke: f64,
    pub mountain_color: String,
    pub valley_color: String,
    pub boundary_color: String,
    pub flat_color: String,
    /// Dash pattern for valleys, in stroke widths.
    pub valley_dash: (f64, f64),
    /// Margin around the bounding box as a fraction of its larger side.
    pub margin: f64,
    pub pixel_size: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            stroke: 0.004,
            boundary_stroke: 0.008,
            mountain_color: "#d62728".into(),
            valley_color: "#1f77b4".into(),
            boundary_color: "#000000".into(),
            flat_color: "#999999".into(),
            valley_dash: (4.0, 2.0),
            margin: 0.05,
            pixel_size: 600.0,
        }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Renders the pattern with y pointing up, as in the constructions.
pub fn to_svg(cp: &CreasePattern, style: &SvgStyle) -> String {
    let (lo, hi) = cp.bounding_box().map(|(lo, hi)| ((lo.x, lo.y), (hi.x, hi.y))).unwrap_or(((0.0, 0.0), (1.0, 1.0)));
    let side = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
    let pad = style.margin * side;
    let (x0, y0) = (lo.0 - pad, -hi.1 - pad);
    let (w, h) = (hi.0 - lo.0 + 2.0 * pad, hi.1 - lo.1 + 2.0 * pad);
    let scale = style.pixel_size / w.max(h);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num(w * scale),
        num(h * scale),
        num(x0),
        num(y0),
        num(w),
        num(h)
    );
    if !cp.metadata.construction.is_empty() {
        let _ = writeln!(out, "  <title>{}</title>", escape(&cp.metadata.construction));
    }
    let layers = [
        (Assignment::Flat, "flat", &style.flat_color, style.stroke, None),
        (Assignment::Boundary, "boundary", &style.boundary_color, style.boundary_stroke, None),
        (Assignment::Valley, "valley", &style.valley_color, style.stroke, Some(style.valley_dash)),
        (Assignment::Mountain, "mountain", &style.mountain_color, style.stroke, None),
    ];
    for (assignment, id, color, width, dash) in layers {
        let width = width * side;
        let dash = dash.map(|(on, off)| format!(" stroke-dasharray=\"{} {}\"", num(on * width), num(off * width)));
        let _ = writeln!(
            out,
            "  <g id=\"{id}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-linecap=\"round\"{}>",
            escape(color),
            num(width),
            dash.unwrap_or_default()
        );
        for e in cp.edges.iter().filter(|e| e.assignment == assignment) {
            let (p, q) = (cp.vertices[e.a], cp.vertices[e.b]);
            let _ = writeln!(
                out,
                "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                num(p.x),
                num(-p.y),
                num(q.x),
                num(-q.y)
            );
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
