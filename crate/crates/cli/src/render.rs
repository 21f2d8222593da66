//! SVG rendering of instances: dash-dot Voronoi diagram, solid graph
//! edges, dashed vertex-region boundary, and an optional route trace.
//! Geometry is computed exactly upstream; floats appear only at the final
//! coordinate-formatting step, so output is deterministic.

use std::fmt::Write as _;

use greedygeo::delaunay::{edge_oracle, SharedFeature};
use greedygeo::regions::vertex_region;
use greedygeo::routing::{RouteKind, RouteOutcome};
use greedygeo::{GeometricGraph, Point, SiteId};

#[derive(Debug, Clone, Default)]
pub struct RenderOptions {
    pub voronoi: bool,
    pub graph_edges: bool,
    pub vertex_region: Option<SiteId>,
    pub route: Option<RouteOutcome>,
}

const CANVAS: f64 = 720.0;

struct Frame {
    min_x: f64,
    min_y: f64,
    scale: f64,
    span: f64,
}

impl Frame {
    fn fit(points: &[(f64, f64)]) -> Frame {
        let mut min_x = f64::INFINITY;
        let mut min_y = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        for &(x, y) in points {
            min_x = min_x.min(x);
            min_y = min_y.min(y);
            max_x = max_x.max(x);
            max_y = max_y.max(y);
        }
        let w = max_x - min_x;
        let h = max_y - min_y;
        let span = w.max(h).max(1.0);
        let margin = span * 0.1;
        // center the square window on the bounding box
        let cx = (min_x + max_x) / 2.0;
        let cy = (min_y + max_y) / 2.0;
        let half = span / 2.0 + margin;
        Frame {
            min_x: cx - half,
            min_y: cy - half,
            scale: CANVAS / (2.0 * half),
            span: 2.0 * half,
        }
    }

    fn to_screen_pt(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            (x - self.min_x) * self.scale,
            CANVAS - (y - self.min_y) * self.scale,
        )
    }

    fn world_box(&self) -> [(f64, f64); 4] {
        let a = (self.min_x, self.min_y);
        let b = (self.min_x + self.span, self.min_y);
        let c = (self.min_x + self.span, self.min_y + self.span);
        let d = (self.min_x, self.min_y + self.span);
        [a, b, c, d]
    }
}

fn fp(p: &Point) -> (f64, f64) {
    (p.x.to_f64(), p.y.to_f64())
}

fn fmt(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.3}")
}

pub fn render_svg(g: &GeometricGraph, opts: &RenderOptions) -> String {
    let sites = g.sites();
    let mut anchors: Vec<(f64, f64)> = sites.iter().map(fp).collect();
    if let Some(r) = &opts.route {
        anchors.push(fp(&r.destination));
    }
    let frame = Frame::fit(&anchors);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {c} {c}" width="{c}" height="{c}">"##,
        c = CANVAS
    );
    let _ = writeln!(svg, r##"<rect width="{c}" height="{c}" fill="white"/>"##, c = CANVAS);

    if opts.voronoi {
        render_voronoi(&mut svg, g, &frame);
    }
    if let Some(i) = opts.vertex_region {
        render_region(&mut svg, g, i, &frame);
    }
    if opts.graph_edges {
        for (i, j) in g.edges() {
            let (x1, y1) = frame.to_screen_pt(fp(g.point(i)));
            let (x2, y2) = frame.to_screen_pt(fp(g.point(j)));
            let _ = writeln!(
                svg,
                r##"<line class="edge" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#111111" stroke-width="1.6"/>"##,
                fmt(x1), fmt(y1), fmt(x2), fmt(y2)
            );
        }
    }
    if let Some(route) = &opts.route {
        render_route(&mut svg, g, route, &frame);
    }

    for i in sites.ids() {
        let (x, y) = frame.to_screen_pt(fp(g.point(i)));
        let _ = writeln!(
            svg,
            r##"<circle class="site" cx="{}" cy="{}" r="3.2" fill="#111111"/>"##,
            fmt(x), fmt(y)
        );
        let _ = writeln!(
            svg,
            r##"<text x="{}" y="{}" font-size="11" fill="#333333">{}</text>"##,
            fmt(x + 5.0), fmt(y - 5.0), i
        );
    }

    svg.push_str("</svg>\n");
    svg
}

fn render_voronoi(svg: &mut String, g: &GeometricGraph, frame: &Frame) {
    let sites = g.sites();
    let reach = frame.span * 3.0;
    for i in sites.ids() {
        for j in i + 1..sites.len() {
            let (_, feature) = edge_oracle(sites, i, j).expect("valid distinct ids");
            let SharedFeature::Segment { start, end } = feature else {
                continue;
            };
            // the shared segment lies on the bisector, running along the
            // left normal of the site pair
            let (ax, ay) = fp(&sites[i]);
            let (bx, by) = fp(&sites[j]);
            let (mut ux, mut uy) = (-(by - ay), bx - ax);
            let len = (ux * ux + uy * uy).sqrt();
            ux /= len;
            uy /= len;
            let mid = ((ax + bx) / 2.0, (ay + by) / 2.0);
            let anchor_lo = start.as_ref().map(|p| fp(p));
            let anchor_hi = end.as_ref().map(|p| fp(p));
            let p0 = anchor_lo.unwrap_or_else(|| {
                let from = anchor_hi.unwrap_or(mid);
                (from.0 - ux * reach, from.1 - uy * reach)
            });
            let p1 = anchor_hi.unwrap_or_else(|| {
                let from = anchor_lo.unwrap_or(mid);
                (from.0 + ux * reach, from.1 + uy * reach)
            });
            let (x1, y1) = frame.to_screen_pt(p0);
            let (x2, y2) = frame.to_screen_pt(p1);
            let _ = writeln!(
                svg,
                r##"<line class="voronoi" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#666666" stroke-width="1" stroke-dasharray="10 4 2 4"/>"##,
                fmt(x1), fmt(y1), fmt(x2), fmt(y2)
            );
        }
    }
}

fn render_region(svg: &mut String, g: &GeometricGraph, i: SiteId, frame: &Frame) {
    let region = vertex_region(g, i);
    // clip the (possibly unbounded) region to the rendering box
    let mut poly: Vec<(f64, f64)> = frame.world_box().to_vec();
    for (_, h) in region.constraints() {
        poly = clip(&poly, h.a().to_f64(), h.b().to_f64(), h.c().to_f64());
        if poly.is_empty() {
            return;
        }
    }
    let mut path = String::new();
    for (k, &(x, y)) in poly.iter().enumerate() {
        let (sx, sy) = frame.to_screen_pt((x, y));
        let _ = write!(path, "{}{},{} ", if k == 0 { "M" } else { "L" }, fmt(sx), fmt(sy));
    }
    path.push('Z');
    let _ = writeln!(
        svg,
        r##"<path class="region" d="{path}" fill="#cc2222" fill-opacity="0.06" stroke="#cc2222" stroke-width="1.4" stroke-dasharray="6 4"/>"##
    );
}

fn render_route(svg: &mut String, g: &GeometricGraph, route: &RouteOutcome, frame: &Frame) {
    let mut pts = String::new();
    for &v in &route.path {
        let (x, y) = frame.to_screen_pt(fp(g.point(v)));
        let _ = write!(pts, "{},{} ", fmt(x), fmt(y));
    }
    let _ = writeln!(
        svg,
        r##"<polyline class="route" points="{}" fill="none" stroke="#0066cc" stroke-width="2.4"/>"##,
        pts.trim_end()
    );
    let (dx, dy) = frame.to_screen_pt(fp(&route.destination));
    for (sx, sy, ex, ey) in [(-6.0, -6.0, 6.0, 6.0), (-6.0, 6.0, 6.0, -6.0)] {
        let _ = writeln!(
            svg,
            r##"<line class="route" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#007700" stroke-width="2"/>"##,
            fmt(dx + sx), fmt(dy + sy), fmt(dx + ex), fmt(dy + ey)
        );
    }
    if route.kind == RouteKind::Stuck {
        let (tx, ty) = frame.to_screen_pt(fp(g.point(route.terminal())));
        let _ = writeln!(
            svg,
            r##"<circle class="route" cx="{}" cy="{}" r="9" fill="none" stroke="#dd0000" stroke-width="2"/>"##,
            fmt(tx), fmt(ty)
        );
    }
}

/// Sutherland-Hodgman step: keep the part of `poly` with a·x + b·y ≤ c.
fn clip(poly: &[(f64, f64)], a: f64, b: f64, c: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for k in 0..poly.len() {
        let p = poly[k];
        let q = poly[(k + 1) % poly.len()];
        let fpv = a * p.0 + b * p.1 - c;
        let fqv = a * q.0 + b * q.1 - c;
        if fpv <= 0.0 {
            out.push(p);
        }
        if (fpv < 0.0 && fqv > 0.0) || (fpv > 0.0 && fqv < 0.0) {
            let t = fpv / (fpv - fqv);
            out.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
        }
    }
    out
}
