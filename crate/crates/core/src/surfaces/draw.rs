//! Informational drawings of the pieces of a certificate, with matching
//! labels on glued segments. Never parsed back.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::certificate::{CertificateBase, ConstructionCertificate, Surgery};
use super::piece::Piece;
use super::surface::{FlatSurface, SlotRef};
use crate::gauss::GaussianRational as G;

const CELL: f64 = 220.0;
const PAD: f64 = 24.0;
const COLUMNS: usize = 4;

type Point = (f64, f64);

struct Drawing {
    segments: Vec<(Point, Point, Option<usize>)>,
    rays: Vec<((f64, f64), (f64, f64))>,
    caption: String,
}

fn pt(v: &G) -> (f64, f64) {
    v.to_f64_pair()
}

fn add(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 + b.0, a.1 + b.1)
}

fn chain(start: (f64, f64), vectors: &[G]) -> Vec<(f64, f64)> {
    let mut out = vec![start];
    for v in vectors {
        out.push(add(*out.last().unwrap(), pt(v)));
    }
    out
}

fn draw(piece: &Piece, labels: &[Option<usize>]) -> Drawing {
    let mut segments = Vec::new();
    let mut rays = Vec::new();
    let caption = match piece {
        Piece::Polygon { edges } => {
            let p = chain((0.0, 0.0), edges);
            for k in 0..edges.len() {
                segments.push((p[k], p[k + 1], labels[k]));
            }
            "polygon".to_string()
        }
        Piece::PolarPart { order, tau, top, bottom, pole } => {
            let t = chain((0.0, 0.0), top);
            let b = chain((0.0, 0.0), bottom);
            let (l, m) = (top.len(), bottom.len());
            for i in 0..l {
                segments.push((t[i], t[i + 1], labels[i]));
            }
            for j in 0..m {
                segments.push((b[j], b[j + 1], labels[l + m - 1 - j]));
            }
            rays.push(((0.0, 0.0), (-1.0, 0.0)));
            rays.push((t[l], (1.0, 0.0)));
            if m > 0 {
                rays.push((b[m], (1.0, 0.0)));
            }
            format!("pole {pole}: order {order}, type {tau}")
        }
        Piece::SimplePolePart { vectors, pole } => {
            let p = chain((0.0, 0.0), vectors);
            for k in 0..vectors.len() {
                segments.push((p[k], p[k + 1], labels[k]));
            }
            let c = *p.last().unwrap();
            let norm = (c.0 * c.0 + c.1 * c.1).sqrt().max(1e-12);
            let dir = (-c.1 / norm, c.0 / norm);
            rays.push(((0.0, 0.0), dir));
            rays.push((c, dir));
            format!("pole {pole}: simple")
        }
    };
    Drawing { segments, rays, caption }
}

fn slot_labels(surface: &FlatSurface) -> BTreeMap<SlotRef, usize> {
    let mut out = BTreeMap::new();
    for (k, (a, b)) in surface.pairings.iter().enumerate() {
        out.insert(*a, k);
        out.insert(*b, k);
    }
    out
}

fn render_into(svg: &mut String, surface: &FlatSurface, title: &str, origin_y: f64) -> f64 {
    let labels = slot_labels(surface);
    let _ = writeln!(svg, r#"<text x="{PAD}" y="{:.2}" class="title">{title}</text>"#, origin_y + 16.0);
    let top = origin_y + 24.0;
    for (index, piece) in surface.pieces.iter().enumerate() {
        let slot_labels: Vec<Option<usize>> =
            (0..piece.slot_count()).map(|s| labels.get(&SlotRef::new(index, s)).copied()).collect();
        let d = draw(piece, &slot_labels);
        let (col, row) = (index % COLUMNS, index / COLUMNS);
        let (x0, y0) = (PAD + col as f64 * CELL, top + row as f64 * CELL);

        let pts: Vec<(f64, f64)> = d.segments.iter().flat_map(|s| [s.0, s.1]).collect();
        let (mut lo, mut hi) = ((0.0f64, 0.0f64), (0.0f64, 0.0f64));
        for p in &pts {
            lo = (lo.0.min(p.0), lo.1.min(p.1));
            hi = (hi.0.max(p.0), hi.1.max(p.1));
        }
        let extent = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        let stub = extent * 0.35;
        for (start, dir) in &d.rays {
            let end = add(*start, (dir.0 * stub, dir.1 * stub));
            lo = (lo.0.min(end.0), lo.1.min(end.1));
            hi = (hi.0.max(end.0), hi.1.max(end.1));
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        let scale = (CELL - 2.0 * PAD) / span;
        let map = |p: (f64, f64)| (x0 + (p.0 - lo.0) * scale, y0 + CELL - 2.0 * PAD - (p.1 - lo.1) * scale);

        let _ = writeln!(svg, r#"<g class="piece" data-index="{index}">"#);
        for (start, dir) in &d.rays {
            let (a, b) = (map(*start), map(add(*start, (dir.0 * stub, dir.1 * stub))));
            let _ = writeln!(svg, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" class="ray"/>"#, a.0, a.1, b.0, b.1);
        }
        for (p, q, label) in &d.segments {
            let (a, b) = (map(*p), map(*q));
            let _ = writeln!(svg, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" class="edge"/>"#, a.0, a.1, b.0, b.1);
            if let Some(k) = label {
                let mid = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
                let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" class="label">{k}</text>"#, mid.0 + 3.0, mid.1 - 3.0);
            }
        }
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" class="caption">{}</text>"#, x0, y0 + CELL - PAD + 14.0, d.caption);
        let _ = writeln!(svg, "</g>");
    }
    let rows = surface.pieces.len().div_ceil(COLUMNS).max(1);
    top + rows as f64 * CELL
}

/// SVG drawing of every base surface of a certificate.
pub fn render_svg(cert: &ConstructionCertificate) -> String {
    let surfaces: Vec<(String, &FlatSurface)> = match &cert.base {
        CertificateBase::Surface(s) => vec![("base surface".to_string(), s)],
        CertificateBase::StableGluing(g) => {
            g.components.iter().enumerate().map(|(k, s)| (format!("component {k}"), s)).collect()
        }
    };
    let mut body = String::new();
    let mut y = 0.0;
    for (title, s) in &surfaces {
        y = render_into(&mut body, s, title, y);
    }
    if !cert.surgeries.is_empty() {
        let steps: Vec<String> = cert
            .surgeries
            .iter()
            .map(|s| match s {
                Surgery::BlowUpZero { zero_id, parts } => format!("blow up zero {zero_id} into {parts:?}"),
                Surgery::SewHandle { zero_id } => format!("sew a handle at zero {zero_id}"),
            })
            .collect();
        let _ = writeln!(body, r#"<text x="{PAD}" y="{:.2}" class="title">then: {}</text>"#, y + 16.0, steps.join("; "));
        y += 28.0;
    }
    let width = PAD * 2.0 + COLUMNS as f64 * CELL;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{:.0}" viewBox="0 0 {width:.0} {:.0}">"#, y + PAD, y + PAD);
    svg.push_str(
        "<style>.edge{stroke:#222;stroke-width:1.5}.ray{stroke:#888;stroke-dasharray:4 3}\
         .label{font:11px sans-serif;fill:#b03}.caption{font:11px sans-serif;fill:#444}\
         .title{font:bold 13px sans-serif}</style>\n",
    );
    svg.push_str(&body);
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::g;

    #[test]
    fn labels_match_pairings() {
        let mut s = FlatSurface::default();
        let p = s.add(Piece::polygon(vec![g(1, 0), g(0, 1), g(-1, 0), g(0, -1)]));
        s.glue(SlotRef::new(p, 0), SlotRef::new(p, 2));
        s.glue(SlotRef::new(p, 1), SlotRef::new(p, 3));
        let svg = render_svg(&ConstructionCertificate::from_surface(s).unwrap());
        assert_eq!(svg.matches(r#"class="label">0<"#).count(), 2);
        assert_eq!(svg.matches(r#"class="label">1<"#).count(), 2);
    }
}
