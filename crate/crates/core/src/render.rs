//! Static SVG rendering of an APCP view.

use std::fmt::Write;

use crate::bundling::{sample_path, Point};
use crate::error::Result;
use crate::pipeline::Apcp;

#[derive(Debug, Clone)]
pub struct SvgOptions {
    pub axis_gap: f64,
    pub height: f64,
    pub margin: f64,
    pub samples_per_segment: usize,
    pub highlight: Option<usize>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self {
            axis_gap: 200.0,
            height: 400.0,
            margin: 40.0,
            samples_per_segment: 16,
            highlight: None,
        }
    }
}

/// Renders axes, ADP bands and points, and sampled bundled curves. Members
/// whose `true_state` flag is set get a dashed black stroke; the highlighted
/// member is drawn red and last.
pub fn render_svg(apcp: &Apcp, axis_names: &[String], true_state: &[bool], opts: &SvgOptions) -> Result<String> {
    let n_axes = apcp.order.len();
    let width = opts.margin * 2.0 + opts.axis_gap * (n_axes - 1) as f64;
    let height = opts.margin * 2.0 + opts.height;
    let px = |p: Point| (opts.margin + p.x * opts.axis_gap, opts.margin + (1.0 - p.y) * opts.height);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(svg, r##"<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>"##);

    for layout in &apcp.layouts {
        let (x0, y1) = px(Point::new(layout.band.x0, layout.band.y1));
        let (x1, y0) = px(Point::new(layout.band.x1, layout.band.y0));
        let _ = writeln!(
            svg,
            r##"<rect class="adp-band" x="{x0:.3}" y="{y1:.3}" width="{:.3}" height="{:.3}" fill="#f2f2f2" stroke="#cccccc"/>"##,
            x1 - x0,
            y0 - y1
        );
    }

    for (a, name) in axis_names.iter().enumerate().take(n_axes) {
        let (x, top) = px(Point::new(a as f64, 1.0));
        let (_, bottom) = px(Point::new(a as f64, 0.0));
        let _ = writeln!(
            svg,
            r##"<line class="axis" x1="{x:.3}" y1="{top:.3}" x2="{x:.3}" y2="{bottom:.3}" stroke="#000000"/>"##
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x:.3}" y="{:.3}" text-anchor="middle" font-size="12">{}</text>"#,
            bottom + 16.0,
            escape(name)
        );
    }

    let mut order: Vec<usize> = (0..apcp.paths.len()).collect();
    if let Some(h) = opts.highlight {
        order.sort_by_key(|&k| apcp.paths[k].member == h);
    }
    for k in order {
        let path = &apcp.paths[k];
        let points = sample_path(path, opts.samples_per_segment)?;
        let mut d = String::new();
        for (i, &p) in points.iter().enumerate() {
            let (x, y) = px(p);
            let _ = write!(d, "{}{x:.6},{y:.6}", if i == 0 { "M" } else { " L" });
        }
        let highlighted = opts.highlight == Some(path.member);
        let truth = true_state.get(path.member).copied().unwrap_or(false);
        let (stroke, extra) = match (highlighted, truth) {
            (true, _) => ("#d62728", ""),
            (false, true) => ("#000000", r#" stroke-dasharray="4 2""#),
            (false, false) => ("#1f77b4", ""),
        };
        let _ = writeln!(
            svg,
            r#"<path class="member" data-member="{}" d="{d}" fill="none" stroke="{stroke}" stroke-opacity="0.6"{extra}/>"#,
            path.member
        );
    }

    for layout in &apcp.layouts {
        for p in &layout.points {
            let (x, y) = px(p.position());
            let fill = if opts.highlight == Some(p.member) { "#d62728" } else { "#1f77b4" };
            let _ = writeln!(
                svg,
                r#"<circle class="adp-point" data-member="{}" data-pair="{}" cx="{x:.3}" cy="{y:.3}" r="2.5" fill="{fill}"/>"#,
                p.member, layout.pair
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
