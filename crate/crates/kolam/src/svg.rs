//! SVG output for diamond drawings.
//!
//! Each curve becomes one closed `<path>` made of cubic Bézier arcs between
//! consecutive edge midpoints. The tangent at a midpoint follows the curve
//! through it (diagonal when crossing, axis-parallel when turning) and both
//! arcs meeting there share it, so the path is smooth. Where two curves turn
//! away from each other at a site they are pushed apart by [`SvgStyle::gap`]
//! so they do not touch.

use std::fmt::Write as _;

use kolam_core::layout::{layout, Pass, Point};
use kolam_core::{Assignment, Curve, KolamLayout, Result};

/// Length of one lattice edge in user units.
pub const UNIT: f64 = 40.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    pub stroke: String,
    pub stroke_width: f64,
    pub dot_fill: String,
    pub dot_radius: f64,
    pub background: Option<String>,
    /// Half the separation of two curves turning at the same site.
    pub gap: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self {
            stroke: "#1b3b8b".into(),
            stroke_width: 2.5,
            dot_fill: "#111111".into(),
            dot_radius: 3.5,
            background: Some("#ffffff".into()),
            gap: 3.0,
        }
    }
}

type Vec2 = (f64, f64);

/// One cubic arc `start → end` with its two control points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub start: Vec2,
    pub c1: Vec2,
    pub c2: Vec2,
    pub end: Vec2,
}

impl Arc {
    pub fn at(&self, t: f64) -> Vec2 {
        let u = 1.0 - t;
        let w = [u * u * u, 3.0 * u * u * t, 3.0 * u * t * t, t * t * t];
        let pts = [self.start, self.c1, self.c2, self.end];
        let x = pts.iter().zip(w).map(|(p, w)| p.0 * w).sum();
        let y = pts.iter().zip(w).map(|(p, w)| p.1 * w).sum();
        (x, y)
    }
}

/// Control arm length as a fraction of the chord.
const ARM: f64 = 0.4;

fn unit(v: Point) -> Vec2 {
    let len = f64::from(v.0 * v.0 + v.1 * v.1).sqrt();
    (f64::from(v.0) / len, f64::from(v.1) / len)
}

/// Position and tangent of a pass, in lattice units with `y` up.
fn anchor(pass: &Pass, gap: f64) -> (Vec2, Vec2) {
    let (from, to) = (pass.from.vector(), pass.to.vector());
    let mut at = (f64::from(pass.at.0) / 2.0, f64::from(pass.at.1) / 2.0);
    if pass.site.is_some() && pass.turns() {
        let away = unit((from.0 + to.0, from.1 + to.1));
        at = (at.0 + away.0 * gap, at.1 + away.1 * gap);
    }
    (at, unit((to.0 - from.0, to.1 - from.1)))
}

/// Arcs of a closed curve in lattice units; `gap` is in lattice units too.
pub fn curve_arcs(curve: &Curve, gap: f64) -> Vec<Arc> {
    let anchors: Vec<(Vec2, Vec2)> = curve.passes.iter().map(|p| anchor(p, gap)).collect();
    (0..anchors.len())
        .map(|i| {
            let (a, ta) = anchors[i];
            let (b, tb) = anchors[(i + 1) % anchors.len()];
            let arm = ARM * ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
            let c1 = (a.0 + arm * ta.0, a.1 + arm * ta.1);
            let c2 = (b.0 - arm * tb.0, b.1 - arm * tb.1);
            Arc { start: a, c1, c2, end: b }
        })
        .collect()
}

struct Canvas {
    half: f64,
}

impl Canvas {
    fn point(&self, p: Vec2) -> String {
        format!("{} {}", num((p.0 + self.half) * UNIT), num((self.half - p.1) * UNIT))
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Renders the drawing of `assignment` on the diamond grid of parameter `n`.
pub fn render_svg(n: usize, assignment: &Assignment, style: &SvgStyle) -> Result<String> {
    let geometry = layout(n);
    let curves = geometry.trace(assignment)?;
    Ok(render_curves(&geometry, &curves, &assignment.to_hex(), style))
}

pub fn render_curves(geometry: &KolamLayout, curves: &[Curve], label: &str, style: &SvgStyle) -> String {
    let half = geometry.n as f64 + 1.0;
    let canvas = Canvas { half };
    let size = num(2.0 * half * UNIT);
    let gap = style.gap / UNIT;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(out, "  <title>diamond {} assignment {label}</title>", geometry.n);
    if let Some(bg) = &style.background {
        let _ = writeln!(out, "  <rect width=\"{size}\" height=\"{size}\" fill=\"{bg}\"/>");
    }
    let _ = writeln!(
        out,
        "  <g fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-linecap=\"round\" stroke-linejoin=\"round\">",
        style.stroke,
        num(style.stroke_width)
    );
    for curve in curves {
        let arcs = curve_arcs(curve, gap);
        let mut d = format!("M {}", canvas.point(arcs[0].start));
        for arc in &arcs {
            let _ = write!(d, " C {} {} {}", canvas.point(arc.c1), canvas.point(arc.c2), canvas.point(arc.end));
        }
        d.push_str(" Z");
        let _ = writeln!(out, "    <path d=\"{d}\"/>");
    }
    out.push_str("  </g>\n");
    let _ = writeln!(out, "  <g fill=\"{}\">", style.dot_fill);
    for &(x, y) in &geometry.dots {
        let c = canvas.point((f64::from(x) / 2.0, f64::from(y) / 2.0));
        let (cx, cy) = c.split_once(' ').expect("two coordinates");
        let _ = writeln!(out, "    <circle cx=\"{cx}\" cy=\"{cy}\" r=\"{}\"/>", num(style.dot_radius));
    }
    out.push_str("  </g>\n</svg>\n");
    out
}

/// Number of closed `<path>` elements in a document produced by this module.
pub fn closed_path_count(svg: &str) -> usize {
    svg.lines().filter(|l| l.trim_start().starts_with("<path ") && l.contains(" Z\"")).count()
}
