//! SVG 1.1 drawings with magnified insets of the tightest spots.

use std::fmt::Write;

use crate::geom::{point_segment_distance_unchecked, Point};
use crate::graph::UnitGraph;
use crate::verify::{verify, ToleranceProfile};

#[derive(Clone, Debug, PartialEq)]
pub struct SvgOptions {
    /// Pixels per unit length.
    pub scale: f64,
    /// Stroke width in pixels.
    pub stroke: f64,
    /// Number of magnified insets (the smallest separations).
    pub insets: usize,
    /// Outline the inset regions on the main drawing.
    pub highlight: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            scale: 40.0,
            stroke: 1.0,
            insets: 4,
            highlight: true,
        }
    }
}

struct Spot {
    center: [f64; 2],
    distance: f64,
}

/// Distinct near-miss locations, smallest separation first.
fn tight_spots(g: &UnitGraph, count: usize) -> Vec<Spot> {
    if count == 0 || g.num_vertices() < 2 {
        return Vec::new();
    }
    let report = verify(g, &ToleranceProfile::fixture());
    let mut cands: Vec<Spot> = Vec::new();
    if let Some(p) = &report.min_vertex_vertex {
        let m = g.vertex(p.u).midpoint(g.vertex(p.v));
        cands.push(Spot {
            center: m.to_f64(),
            distance: p.distance.to_f64(),
        });
    }
    // every vertex's closest non-incident edge, then keep spread-out ones
    let adj = g.adjacency();
    let pts: Vec<[f64; 2]> = g.vertices().iter().map(Point::to_f64).collect();
    for (v, p) in pts.iter().enumerate() {
        let mut best: Option<(f64, usize, usize)> = None;
        for &(a, b) in g.edges() {
            if a == v || b == v || adj[v].is_empty() {
                continue;
            }
            let mid = [(pts[a][0] + pts[b][0]) / 2.0, (pts[a][1] + pts[b][1]) / 2.0];
            if (mid[0] - p[0]).abs() > 1.0 || (mid[1] - p[1]).abs() > 1.0 {
                continue;
            }
            let d =
                point_segment_distance_unchecked(g.vertex(v), g.vertex(a), g.vertex(b)).to_f64();
            if best.is_none_or(|x| d < x.0) {
                best = Some((d, a, b));
            }
        }
        if let Some((d, _, _)) = best {
            cands.push(Spot {
                center: *p,
                distance: d,
            });
        }
    }
    cands.sort_by(|a, b| a.distance.total_cmp(&b.distance));
    let mut out: Vec<Spot> = Vec::new();
    for c in cands {
        if out.len() == count {
            break;
        }
        if out
            .iter()
            .all(|o| (o.center[0] - c.center[0]).hypot(o.center[1] - c.center[1]) > 0.5)
        {
            out.push(c);
        }
    }
    out
}

/// Renders the graph: one `<line>` per edge, one `<circle>` per vertex,
/// plus inset panels that reuse the drawing at high magnification.
pub fn export_svg(g: &UnitGraph, opts: &SvgOptions) -> String {
    let pts: Vec<[f64; 2]> = g.vertices().iter().map(Point::to_f64).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, 1.0f64, 1.0f64);
    if let Some(p) = pts.first() {
        (x0, y0, x1, y1) = (p[0], p[1], p[0], p[1]);
    }
    for p in &pts {
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    let margin = 0.5;
    let (w, h) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
    let spots = tight_spots(g, opts.insets);
    let panel = (w.max(h) / 4.0).max(1.0);
    let total_h = if spots.is_empty() { h } else { h + panel };
    let s = opts.scale;
    let sw = opts.stroke / s;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" xmlns:xlink="http://www.w3.org/1999/xlink" version="1.1" width="{:.1}" height="{:.1}" viewBox="{} {} {} {}">"#,
        w * s,
        total_h * s,
        x0 - margin,
        -(y1 + margin),
        w,
        total_h
    );
    let _ = writeln!(out, "<defs>");
    let _ = writeln!(
        out,
        r#"<g id="graph" stroke="black" stroke-width="{sw}" stroke-linecap="round" transform="scale(1,-1)">"#
    );
    for &(a, b) in g.edges() {
        let (p, q) = (pts[a], pts[b]);
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" vector-effect="non-scaling-stroke"/>"#,
            p[0], p[1], q[0], q[1]
        );
    }
    for p in &pts {
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="black" stroke="none"/>"#,
            p[0],
            p[1],
            2.0 * sw
        );
    }
    let _ = writeln!(out, "</g>\n</defs>");
    let _ = writeln!(out, r##"<use xlink:href="#graph"/>"##);
    for (i, spot) in spots.iter().enumerate() {
        let half = (spot.distance * 20.0).max(1e-12);
        let (cx, cy) = (spot.center[0], -spot.center[1]);
        if opts.highlight {
            let r = 0.15;
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="red" stroke-width="{sw}"/>"#,
                cx - r,
                cy - r,
                2.0 * r,
                2.0 * r
            );
        }
        let px = x0 - margin + i as f64 * panel;
        let py = -(y1 + margin) + h;
        let _ = writeln!(
            out,
            r##"<svg x="{px}" y="{py}" width="{panel}" height="{panel}" viewBox="{} {} {} {}"><rect x="{}" y="{}" width="{}" height="{}" fill="white" stroke="red" vector-effect="non-scaling-stroke"/><use xlink:href="#graph"/></svg>"##,
            cx - half,
            cy - half,
            2.0 * half,
            2.0 * half,
            cx - half,
            cy - half,
            2.0 * half,
            2.0 * half
        );
    }
    let _ = writeln!(out, "</svg>");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn triangle_has_three_lines_and_markers() {
        let v = vec![
            Point::from_f64(0.0, 0.0),
            Point::from_f64(1.0, 0.0),
            Point::from_f64(0.5, 0.866),
        ];
        let g = UnitGraph::new(
            v,
            [(0, 1), (1, 2), (0, 2)],
            [],
            BTreeMap::new(),
            BTreeMap::new(),
        )
        .unwrap();
        let svg = export_svg(&g, &SvgOptions::default());
        assert_eq!(svg.matches("<line ").count(), 3);
        assert_eq!(svg.matches("<circle ").count(), 3);
    }
}
