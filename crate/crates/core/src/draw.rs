//! Polygon figures: the repetitive polygon with its region arcs and a set of
//! diagonals, rendered to SVG or TikZ. Output is deterministic for a fixed
//! input.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::sets::DiagonalSet;
use crate::polygon::PolygonParams;

#[derive(Debug, Error)]
pub enum DrawError {
    #[error("unknown draw format {0:?}, expected svg or tikz")]
    UnknownFormat(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DrawFormat {
    Svg,
    Tikz,
}

impl FromStr for DrawFormat {
    type Err = DrawError;

    fn from_str(s: &str) -> Result<Self, DrawError> {
        match s {
            "svg" => Ok(DrawFormat::Svg),
            "tikz" => Ok(DrawFormat::Tikz),
            other => Err(DrawError::UnknownFormat(other.to_string())),
        }
    }
}

/// Physical layout. For `p = 1` the polygon is the plain `(n+3)`-gon; for
/// `p >= 2` it has `p(n+2)` vertices and the region boundaries share a
/// vertex labelled `1=N`.
struct Layout {
    params: PolygonParams,
    physical: usize,
}

impl Layout {
    fn new(params: PolygonParams) -> Self {
        let n_verts = params.vertex_count() as usize;
        let physical = if params.p() == 1 {
            n_verts
        } else {
            params.p() as usize * (n_verts - 1)
        };
        Layout { params, physical }
    }

    /// Fractional slot of a region-local vertex; slots run clockwise.
    fn slot(&self, region: u32, label: u32) -> f64 {
        if self.params.p() == 1 {
            (label - 1) as f64
        } else {
            let span = self.params.vertex_count() as usize - 1;
            ((region as usize - 1) * span + (label as usize - 1)) as f64
        }
    }

    fn point(&self, slot: f64, radius: f64) -> (f64, f64) {
        // clockwise from the top
        let theta = std::f64::consts::FRAC_PI_2
            - 2.0 * std::f64::consts::PI * slot / self.physical as f64;
        (radius * theta.cos(), radius * theta.sin())
    }

    fn vertex_label(&self, physical_index: usize) -> String {
        let n_verts = self.params.vertex_count();
        if self.params.p() == 1 {
            return (physical_index as u32 + 1).to_string();
        }
        let span = n_verts as usize - 1;
        if physical_index % span == 0 {
            format!("1={n_verts}")
        } else {
            ((physical_index % span) as u32 + 1).to_string()
        }
    }
}

fn fmt2(v: f64) -> String {
    let v = if v.abs() < 5e-3 { 0.0 } else { v };
    format!("{v:.2}")
}

pub fn render(set: &DiagonalSet, format: DrawFormat) -> String {
    match format {
        DrawFormat::Svg => render_svg(set),
        DrawFormat::Tikz => render_tikz(set),
    }
}

/// Control point of the quadratic used for a diagonal: on the bisecting
/// slot, pulled outward from the straight chord so curves near the region
/// boundary stay clear of the inner arcs.
fn chord_control(layout: &Layout, s1: f64, s2: f64, radius: f64) -> (f64, f64) {
    let mid = (s1 + s2) / 2.0;
    let half_angle = (s2 - s1).abs() * std::f64::consts::PI / layout.physical as f64;
    let r = radius * (0.25 + 0.75 * half_angle.cos());
    layout.point(mid, r)
}

fn render_svg(set: &DiagonalSet) -> String {
    let params = set.params();
    let layout = Layout::new(params);
    let radius = 200.0;
    let cx = 250.0;
    let cy = 250.0;
    let at = |pt: (f64, f64)| (cx + pt.0, cy - pt.1);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\" viewBox=\"0 0 500 500\">"
    );
    let _ = writeln!(
        out,
        "  <!-- repetitive polygon n={} p={} ({} boundary vertices) -->",
        params.n(),
        params.p(),
        layout.physical
    );

    // boundary
    let mut points = String::new();
    for t in 0..layout.physical {
        let (x, y) = at(layout.point(t as f64, radius));
        if t > 0 {
            points.push(' ');
        }
        let _ = write!(points, "{},{}", fmt2(x), fmt2(y));
    }
    let _ = writeln!(
        out,
        "  <polygon class=\"boundary\" points=\"{points}\" fill=\"none\" stroke=\"black\"/>"
    );

    // region arcs (absent for p = 1, where the (1,N) side is an edge)
    if params.p() >= 2 {
        let span = (params.vertex_count() - 1) as f64;
        for k in 1..=params.p() {
            let s1 = layout.slot(k, 1);
            let s2 = s1 + span;
            let (x1, y1) = at(layout.point(s1, radius));
            let (x2, y2) = at(layout.point(s2, radius));
            let (cxq, cyq) = at(layout.point((s1 + s2) / 2.0, radius * 0.22));
            let _ = writeln!(
                out,
                "  <path class=\"region-arc\" d=\"M {} {} Q {} {} {} {}\" fill=\"none\" stroke=\"black\"/>",
                fmt2(x1), fmt2(y1), fmt2(cxq), fmt2(cyq), fmt2(x2), fmt2(y2)
            );
        }
        for k in 1..=params.p() {
            let mid = layout.slot(k, 1) + span / 2.0;
            let (x, y) = at(layout.point(mid, radius * 0.55));
            let _ = writeln!(
                out,
                "  <text class=\"region-label\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">Π{k}</text>",
                fmt2(x), fmt2(y)
            );
        }
    }

    // diagonals
    for d in set.iter() {
        let s1 = layout.slot(d.region(), d.i());
        let s2 = layout.slot(d.region(), d.j());
        let (x1, y1) = at(layout.point(s1, radius));
        let (x2, y2) = at(layout.point(s2, radius));
        if params.p() == 1 {
            let _ = writeln!(
                out,
                "  <line class=\"diagonal\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
                fmt2(x1), fmt2(y1), fmt2(x2), fmt2(y2)
            );
        } else {
            let (cxq, cyq) = at(chord_control(&layout, s1, s2, radius));
            let _ = writeln!(
                out,
                "  <path class=\"diagonal\" d=\"M {} {} Q {} {} {} {}\" fill=\"none\" stroke=\"black\"/>",
                fmt2(x1), fmt2(y1), fmt2(cxq), fmt2(cyq), fmt2(x2), fmt2(y2)
            );
        }
    }

    // vertices and labels
    for t in 0..layout.physical {
        let (x, y) = at(layout.point(t as f64, radius));
        let _ = writeln!(
            out,
            "  <circle class=\"vertex\" cx=\"{}\" cy=\"{}\" r=\"2.5\"/>",
            fmt2(x), fmt2(y)
        );
        let (lx, ly) = at(layout.point(t as f64, radius * 1.08));
        let _ = writeln!(
            out,
            "  <text class=\"vertex-label\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
            fmt2(lx), fmt2(ly), layout.vertex_label(t)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn render_tikz(set: &DiagonalSet) -> String {
    let params = set.params();
    let layout = Layout::new(params);
    let radius = 3.0;

    let mut out = String::new();
    let _ = writeln!(out, "\\begin{{tikzpicture}}");
    let _ = writeln!(
        out,
        "% repetitive polygon n={} p={} ({} boundary vertices)",
        params.n(),
        params.p(),
        layout.physical
    );
    let mut cycle = String::new();
    for t in 0..layout.physical {
        let (x, y) = layout.point(t as f64, radius);
        let _ = write!(cycle, "({},{}) -- ", fmt2(x), fmt2(y));
    }
    let _ = writeln!(out, "\\draw {cycle}cycle;");

    if params.p() >= 2 {
        let span = (params.vertex_count() - 1) as f64;
        for k in 1..=params.p() {
            let s1 = layout.slot(k, 1);
            let s2 = s1 + span;
            let (x1, y1) = layout.point(s1, radius);
            let (x2, y2) = layout.point(s2, radius);
            let (cxq, cyq) = layout.point((s1 + s2) / 2.0, radius * 0.22);
            let _ = writeln!(
                out,
                "\\draw ({},{}) .. controls ({},{}) .. ({},{}); % region arc {k}",
                fmt2(x1), fmt2(y1), fmt2(cxq), fmt2(cyq), fmt2(x2), fmt2(y2)
            );
        }
        for k in 1..=params.p() {
            let mid = layout.slot(k, 1) + span / 2.0;
            let (x, y) = layout.point(mid, radius * 0.55);
            let _ = writeln!(out, "\\node at ({},{}) {{$\\Pi_{{{k}}}$}};", fmt2(x), fmt2(y));
        }
    }

    for d in set.iter() {
        let s1 = layout.slot(d.region(), d.i());
        let s2 = layout.slot(d.region(), d.j());
        let (x1, y1) = layout.point(s1, radius);
        let (x2, y2) = layout.point(s2, radius);
        if params.p() == 1 {
            let _ = writeln!(
                out,
                "\\draw[thick] ({},{}) -- ({},{}); % {d}",
                fmt2(x1), fmt2(y1), fmt2(x2), fmt2(y2)
            );
        } else {
            let (cxq, cyq) = chord_control(&layout, s1, s2, radius);
            let _ = writeln!(
                out,
                "\\draw[thick] ({},{}) .. controls ({},{}) .. ({},{}); % {d}",
                fmt2(x1), fmt2(y1), fmt2(cxq), fmt2(cyq), fmt2(x2), fmt2(y2)
            );
        }
    }

    for t in 0..layout.physical {
        let (x, y) = layout.point(t as f64, radius * 1.1);
        let _ = writeln!(
            out,
            "\\node at ({},{}) {{\\small ${}$}};",
            fmt2(x),
            fmt2(y),
            layout.vertex_label(t)
        );
    }
    let _ = writeln!(out, "\\end{{tikzpicture}}");
    out
}
