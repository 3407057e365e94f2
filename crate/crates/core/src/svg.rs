//! Deterministic SVG pictures of embedded tilings and plabic graphs.
//!
//! World coordinates are the exact tiling coordinates divided by
//! [`POLYGON_SCALE`], printed with [`SVG_PRECISION`] decimals; the `y` axis is
//! flipped so that the picture matches the usual orientation.

use std::fmt::Write;

use crate::error::Result;
use crate::geometry::{Point, POLYGON_SCALE};
use crate::plabic::{Color, PlabicGraph, Vertex};
use crate::tiling::{embed_tiling, plabic_to_tiling, subset_point, EmbeddedTiling};

/// Decimal digits used for every coordinate.
pub const SVG_PRECISION: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SvgOptions {
    /// Width of the picture in pixels; the height follows the aspect ratio.
    pub width: u32,
    pub labels: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { width: 640, labels: true }
    }
}

type Xy = (f64, f64);

fn world(p: Point) -> Xy {
    let s = POLYGON_SCALE as f64;
    (p.x as f64 / s, -(p.y as f64) / s)
}

fn num(x: f64) -> String {
    let s = format!("{x:.SVG_PRECISION$}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn points_attr(pts: &[Xy]) -> String {
    pts.iter().map(|&(x, y)| format!("{},{}", num(x), num(y))).collect::<Vec<_>>().join(" ")
}

struct Canvas {
    body: String,
    min: Xy,
    max: Xy,
}

impl Canvas {
    fn new(points: impl IntoIterator<Item = Xy>) -> Self {
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for (x, y) in points {
            min = (min.0.min(x), min.1.min(y));
            max = (max.0.max(x), max.1.max(y));
        }
        if !min.0.is_finite() {
            min = (0.0, 0.0);
            max = (0.0, 0.0);
        }
        Canvas { body: String::new(), min, max }
    }

    fn extent(&self) -> f64 {
        (self.max.0 - self.min.0).max(self.max.1 - self.min.1).max(1.0)
    }

    fn finish(self, opts: &SvgOptions, title: &str) -> String {
        let pad = 0.12 * self.extent();
        let (x0, y0) = (self.min.0 - pad, self.min.1 - pad);
        let (w, h) = (self.max.0 - self.min.0 + 2.0 * pad, self.max.1 - self.min.1 + 2.0 * pad);
        let height = (opts.width as f64 * h / w).round() as u32;
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ =
            writeln!(out, "<!-- {title}; exact rational coordinates printed with {SVG_PRECISION} decimal digits -->");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{height}\" viewBox=\"{} {} {} {}\">",
            opts.width,
            num(x0),
            num(y0),
            num(w),
            num(h)
        );
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

/// Draws the faces, edges and labelled vertices of an embedded tiling.
pub fn render_tiling(t: &EmbeddedTiling, opts: &SvgOptions) -> String {
    let tiling = t.tiling();
    let xy: Vec<Xy> = t.coords().iter().map(|&p| world(p)).collect();
    let mut c = Canvas::new(xy.iter().copied());
    let unit = c.extent();
    let stroke = num(0.006 * unit);
    c.body.push_str("<g class=\"faces\">\n");
    for f in tiling.faces() {
        let pts: Vec<Xy> = t.face_points(f).into_iter().map(world).collect();
        let (class, fill) = match f.color {
            Color::Black => ("black", "#202020"),
            Color::White => ("white", "none"),
        };
        let _ = writeln!(
            c.body,
            "<polygon class=\"face {class}\" data-clique=\"{}\" points=\"{}\" fill=\"{fill}\" stroke=\"black\" stroke-width=\"{stroke}\"/>",
            f.clique.label(),
            points_attr(&pts)
        );
    }
    c.body.push_str("</g>\n<g class=\"edges\">\n");
    for &[a, b] in tiling.edges() {
        let (p, q) =
            (world(t.coord(a).expect("edge ends are vertices")), world(t.coord(b).expect("edge ends are vertices")));
        let _ = writeln!(
            c.body,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"{stroke}\"/>",
            num(p.0),
            num(p.1),
            num(q.0),
            num(q.1)
        );
    }
    c.body.push_str("</g>\n<g class=\"vertices\">\n");
    for (s, &(x, y)) in tiling.vertices().iter().zip(&xy) {
        draw_label_point(&mut c.body, &s.label(), (x, y), unit, opts.labels);
    }
    c.body.push_str("</g>\n");
    c.finish(opts, &format!("plabic tiling, n = {}, k = {}", tiling.collection().n(), tiling.collection().k()))
}

fn draw_label_point(body: &mut String, label: &str, (x, y): Xy, unit: f64, with_text: bool) {
    let _ = writeln!(
        body,
        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"white\" stroke=\"black\" stroke-width=\"{}\"/>",
        num(x),
        num(y),
        num(0.012 * unit),
        num(0.004 * unit)
    );
    if with_text {
        let at = format!(
            "x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"sans-serif\" text-anchor=\"middle\"",
            num(x),
            num(y - 0.025 * unit),
            num(0.05 * unit)
        );
        let _ = writeln!(
            body,
            "<text class=\"halo\" {at} fill=\"white\" stroke=\"white\" stroke-width=\"{}\">{label}</text>",
            num(0.012 * unit)
        );
        let _ = writeln!(body, "<text class=\"label\" {at} fill=\"#0040a0\">{label}</text>");
    }
}

/// Draws a reduced plabic graph over the embedding of its dual tiling: face
/// labels sit at their tiling points, internal vertices at the average of
/// the labels of their faces, boundary vertices on an enclosing circle.
pub fn render_graph(g: &PlabicGraph, opts: &SvgOptions) -> Result<String> {
    let labels = g.face_labels()?;
    let t = embed_tiling(&plabic_to_tiling(g)?, None)?;
    let face_xy: Vec<Xy> = labels.faces.iter().map(|f| world(subset_point(t.polygon(), f.label))).collect();
    let count = face_xy.len() as f64;
    let centre = face_xy.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0 / count, a.1 + p.1 / count));
    let spread = face_xy.iter().map(|p| (p.0 - centre.0).hypot(p.1 - centre.1)).fold(0.0, f64::max);
    let radius = spread + 0.35 * spread.max(1.0);

    let nv = g.vertices().len();
    let mut around = vec![(0.0, 0.0, 0usize); nv];
    for (f, face) in labels.faces.iter().enumerate() {
        for &v in &face.vertices {
            around[v] = (around[v].0 + face_xy[f].0, around[v].1 + face_xy[f].1, around[v].2 + 1);
        }
    }
    let n = g.n();
    let polygon_dir: Vec<Xy> = t.polygon().iter().map(|&p| world(p)).collect();
    let mut pos = vec![(0.0, 0.0); nv];
    for (v, kind) in g.vertices().iter().enumerate() {
        pos[v] = match *kind {
            Vertex::Internal(_) => {
                let (x, y, m) = around[v];
                let m = m.max(1) as f64;
                (x / m, y / m)
            }
            Vertex::Boundary(i) => {
                let a = face_xy[labels.boundary_faces[i - 1]];
                let b = face_xy[labels.boundary_faces[i % n]];
                let mut d = ((a.0 + b.0) / 2.0 - centre.0, (a.1 + b.1) / 2.0 - centre.1);
                if d.0.hypot(d.1) < 1e-9 {
                    d = polygon_dir[i - 1];
                }
                let len = d.0.hypot(d.1);
                (centre.0 + radius * d.0 / len, centre.1 + radius * d.1 / len)
            }
        };
    }

    let mut c = Canvas::new(pos.iter().copied().chain(face_xy.iter().copied()));
    let unit = c.extent();
    let _ = writeln!(
        c.body,
        "<circle class=\"disk\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#909090\" stroke-width=\"{}\"/>",
        num(centre.0),
        num(centre.1),
        num(radius),
        num(0.004 * unit)
    );
    c.body.push_str("<g class=\"edges\">\n");
    for &[x, y] in g.edges() {
        let _ = writeln!(
            c.body,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"{}\"/>",
            num(pos[x].0),
            num(pos[x].1),
            num(pos[y].0),
            num(pos[y].1),
            num(0.006 * unit)
        );
    }
    c.body.push_str("</g>\n<g class=\"vertices\">\n");
    for (v, kind) in g.vertices().iter().enumerate() {
        let (x, y) = pos[v];
        let (fill, r) = match *kind {
            Vertex::Internal(Color::Black) => ("black", 0.018),
            Vertex::Internal(Color::White) => ("white", 0.018),
            Vertex::Boundary(_) => ("#909090", 0.01),
        };
        let _ = writeln!(
            c.body,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\" stroke=\"black\" stroke-width=\"{}\"/>",
            num(x),
            num(y),
            num(r * unit),
            num(0.005 * unit)
        );
        if let Vertex::Boundary(i) = *kind {
            let out = ((x - centre.0) / radius, (y - centre.1) / radius);
            let _ = writeln!(
                c.body,
                "<text class=\"boundary\" x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"sans-serif\" text-anchor=\"middle\">{i}</text>",
                num(x + 0.05 * unit * out.0),
                num(y + 0.05 * unit * out.1 + 0.015 * unit),
                num(0.045 * unit)
            );
        }
    }
    c.body.push_str("</g>\n<g class=\"face-labels\">\n");
    for (f, face) in labels.faces.iter().enumerate() {
        if opts.labels {
            let (x, y) = face_xy[f];
            let _ = writeln!(
                c.body,
                "<text class=\"label\" x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"sans-serif\" text-anchor=\"middle\" fill=\"#0040a0\">{}</text>",
                num(x),
                num(y + 0.015 * unit),
                num(0.045 * unit),
                face.label.label()
            );
        }
    }
    c.body.push_str("</g>\n");
    Ok(c.finish(opts, &format!("plabic graph, n = {n}, k = {}", labels.k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::collection::WSCollection;
    use crate::cyclic::{Ground, Subset};
    use crate::positroid::GrassmannNecklace;
    use crate::tiling::{build_tiling, tiling_to_plabic};

    fn square() -> WSCollection {
        let sets = [[1, 2], [1, 3], [1, 4], [2, 3], [3, 4]].iter().map(|s| Subset::of(s)).collect();
        WSCollection::new(Ground::new(4).unwrap(), 2, sets, Some(GrassmannNecklace::uniform(4, 2).unwrap())).unwrap()
    }

    #[test]
    fn tiling_picture() {
        let t = embed_tiling(&build_tiling(&square()), None).unwrap();
        let svg = render_tiling(&t, &SvgOptions::default());
        assert!(svg.contains("6 decimal digits"));
        assert_eq!(svg.matches("<text class=\"label\"").count(), 5);
        assert_eq!(svg.matches("class=\"face black\"").count(), 2);
        assert_eq!(svg.matches("fill=\"#202020\"").count(), 2);
        assert!(svg.contains(">13</text>"));
        assert_eq!(svg, render_tiling(&t, &SvgOptions::default()));
        let bare = render_tiling(&t, &SvgOptions { labels: false, ..SvgOptions::default() });
        assert!(!bare.contains("<text"));
    }

    #[test]
    fn singleton_picture() {
        let c = WSCollection::from_necklace(&GrassmannNecklace::new(vec![Subset::of(&[1])]).unwrap());
        let svg = render_tiling(&embed_tiling(&build_tiling(&c), None).unwrap(), &SvgOptions::default());
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains(">1</text>"));
        assert!(!svg.contains("<polygon"));
    }

    #[test]
    fn graph_picture() {
        let g = tiling_to_plabic(&square(), &Budget::default()).unwrap();
        let svg = render_graph(&g, &SvgOptions::default()).unwrap();
        assert_eq!(svg.matches("<text class=\"label\"").count(), 5);
        assert_eq!(svg.matches("<text class=\"boundary\"").count(), 4);
        assert_eq!(svg.matches("<line").count(), g.edges().len());
        assert_eq!(svg, render_graph(&g, &SvgOptions::default()).unwrap());
    }

    #[test]
    fn numbers_are_fixed_width() {
        assert_eq!(num(0.5), "0.500000");
        assert_eq!(num(-0.0000001), "0.000000");
        assert_eq!(num(-1.25), "-1.250000");
    }
}
