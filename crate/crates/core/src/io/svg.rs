//! Deterministic SVG drawings of cone graphs.

use std::fmt::Write;

use crate::geometry::{bounding_box, Coord};
use crate::graph::ConeGraph;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SvgOptions {
    /// Draw the cone wedges around this vertex.
    pub cones_at: Option<usize>,
}

const PALETTE: [&str; 8] = [
    "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

fn cone_color(cone: usize) -> &'static str {
    PALETTE[(cone - 1) % PALETTE.len()]
}

/// Fixed-precision number so output does not depend on float formatting
/// quirks.
fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Screen coordinates: SVG's y axis points down.
fn screen(c: Coord) -> Coord {
    Coord::new(c.x, -c.y)
}

pub fn render_svg(g: &ConeGraph, labels: &[Option<String>], opts: &SvgOptions) -> String {
    let coords: Vec<Coord> = g.points().coords().into_iter().map(screen).collect();
    let (lo, hi) = bounding_box(&coords).unwrap_or((Coord::new(0.0, 0.0), Coord::new(0.0, 0.0)));
    let span = hi.sub(lo);
    let size = span.x.max(span.y);
    let size = if size > 0.0 { size } else { 1.0 };
    let margin = 0.05 * size;
    let (w, h) = (span.x + 2.0 * margin, span.y + 2.0 * margin);
    let diag = span.norm().max(size);
    let radius = 0.006 * diag;
    let stroke = 0.002 * diag;
    let head = 0.02 * diag;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        num(lo.x - margin),
        num(lo.y - margin),
        num(w),
        num(h)
    );

    if let Some(apex) = opts.cones_at.and_then(|id| coords.get(id).copied()) {
        let sys = g.sys();
        let reach = 2.0 * diag;
        let _ = writeln!(out, r#"<g opacity="0.3">"#);
        for i in 1..=sys.k() {
            // sample the arc so wide cones stay within a convex polygon
            let steps = 8;
            let mut pts = vec![apex];
            for s in 0..=steps {
                let phi = sys.lower_ray_angle(i) + sys.theta() * s as f64 / steps as f64;
                pts.push(apex.add(screen(Coord::from_angle(phi)).scale(reach)));
            }
            let list: Vec<String> = pts
                .iter()
                .map(|p| format!("{},{}", num(p.x), num(p.y)))
                .collect();
            let _ = writeln!(
                out,
                r#"<polygon points="{}" fill="{}"/>"#,
                list.join(" "),
                cone_color(i)
            );
        }
        let _ = writeln!(out, "</g>");
    }

    for e in g.edges() {
        let (p, q) = (coords[e.src], coords[e.dst]);
        let d = q.sub(p);
        let len = d.norm();
        let u = d.scale(1.0 / len);
        let tip = q.sub(u.scale(radius));
        let base = tip.sub(u.scale(head.min(0.5 * len)));
        let color = cone_color(e.cone);
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="{}"/>"#,
            num(p.x),
            num(p.y),
            num(base.x),
            num(base.y),
            num(stroke)
        );
        let side = Coord::new(-u.y, u.x).scale(0.4 * head.min(0.5 * len));
        let (l, r) = (base.add(side), base.sub(side));
        let _ = writeln!(
            out,
            r#"<polygon points="{},{} {},{} {},{}" fill="{color}"/>"#,
            num(tip.x),
            num(tip.y),
            num(l.x),
            num(l.y),
            num(r.x),
            num(r.y)
        );
    }

    for (id, c) in coords.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="black"/>"#,
            num(c.x),
            num(c.y),
            num(radius)
        );
        if let Some(Some(label)) = labels.get(id) {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="{}">{}</text>"#,
                num(c.x + 1.5 * radius),
                num(c.y - 1.5 * radius),
                num(4.0 * radius),
                escape(label)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ConeSystem, PointSet};
    use crate::graph::{build_theta, Family};

    fn count(doc: &str, tag: &str) -> usize {
        doc.matches(&format!("<{tag} ")).count()
    }

    #[test]
    fn empty_graph_draws_points_only() {
        let s = PointSet::new([(0.0, 0.0), (1.0, 0.5)]).unwrap();
        let g = ConeGraph::from_edges(s, ConeSystem::six(), Family::Theta, [], 0).unwrap();
        let doc = render_svg(&g, &[], &SvgOptions::default());
        assert_eq!(count(&doc, "circle"), 2);
        assert_eq!(count(&doc, "line") + count(&doc, "path"), 0);
        assert!(doc.ends_with("</svg>\n"));
    }

    #[test]
    fn two_points_two_arrows() {
        let s = PointSet::new([(0.0, 0.0), (1.0, 0.5)]).unwrap();
        let g = build_theta(&s, &ConeSystem::six());
        let doc = render_svg(&g, &[Some("a<1>".into())], &SvgOptions::default());
        assert_eq!(count(&doc, "circle"), 2);
        assert_eq!(count(&doc, "line") + count(&doc, "path"), 2);
        assert!(doc.contains("a&lt;1&gt;"));
        // 5% margin around a 1 × 0.5 box, y flipped
        assert!(
            doc.contains(r#"viewBox="-0.050000 -0.550000 1.100000 0.600000""#),
            "{doc}"
        );
    }

    #[test]
    fn output_is_deterministic_and_wedges_optional() {
        let s = PointSet::new([(0.0, 0.0), (1.0, 0.5), (0.2, 1.3)]).unwrap();
        let g = build_theta(&s, &ConeSystem::six());
        let opts = SvgOptions { cones_at: Some(0) };
        let a = render_svg(&g, &[], &opts);
        assert_eq!(a, render_svg(&g, &[], &opts));
        assert!(a.contains(r#"opacity="0.3""#));
        assert_eq!(count(&a, "polygon"), g.edges().len() + 6);
    }

    #[test]
    fn single_point_has_valid_viewbox() {
        let s = PointSet::new([(2.0, 3.0)]).unwrap();
        let g = ConeGraph::from_edges(s, ConeSystem::six(), Family::Theta, [], 0).unwrap();
        let doc = render_svg(&g, &[], &SvgOptions { cones_at: Some(5) });
        assert!(
            doc.contains(r#"viewBox="1.950000 -3.050000 0.100000 0.100000""#),
            "{doc}"
        );
    }
}
