//! Deterministic SVG drawings of triangulations.

use std::fmt::Write;

use num_rational::BigRational;

use crate::delaunay::{is_illegal, TriMap};
use crate::geometry::{circumcenter, distance_sq, Coord, Point};
use crate::hypermap::{Dim, OrbitKind};

const SIZE: i64 = 1000;
const MARGIN: i64 = 50;
const DIGITS: usize = 9;

#[derive(Clone, Copy, Debug, Default)]
pub struct SvgOptions {
    /// Draw the circumcircles of the triangles next to illegal edges.
    pub highlight_illegal: bool,
}

struct Frame {
    min_x: Coord,
    min_y: Coord,
    scale: Coord,
}

impl Frame {
    fn fit(points: &[Point]) -> Frame {
        let min_x = points.iter().map(|p| p.x()).min().cloned().unwrap_or_else(Coord::zero);
        let max_x = points.iter().map(|p| p.x()).max().cloned().unwrap_or_else(Coord::zero);
        let min_y = points.iter().map(|p| p.y()).min().cloned().unwrap_or_else(Coord::zero);
        let max_y = points.iter().map(|p| p.y()).max().cloned().unwrap_or_else(Coord::zero);
        let span = std::cmp::max(&max_x - &min_x, &max_y - &min_y);
        let inner = Coord::from_int(SIZE - 2 * MARGIN);
        let scale = if span.is_zero() { Coord::from_int(1) } else { &inner / &span };
        Frame { min_x, min_y, scale }
    }

    fn x(&self, p: &Point) -> String {
        (&Coord::from_int(MARGIN) + &(&(p.x() - &self.min_x) * &self.scale)).to_decimal(DIGITS)
    }

    /// y grows downwards in SVG.
    fn y(&self, p: &Point) -> String {
        (&Coord::from_int(SIZE - MARGIN) - &(&(p.y() - &self.min_y) * &self.scale)).to_decimal(DIGITS)
    }
}

/// Segments for edges, filled circles for vertices and, optionally,
/// outlined circumcircles. Identical maps give identical bytes.
pub fn render_svg(t: &TriMap, opts: SvgOptions) -> String {
    let m = t.map();
    let (_, points) = m.darts_and_points();
    let frame = Frame::fit(&points);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#).unwrap();

    if opts.highlight_illegal {
        out.push_str("<g class=\"circumcircles\" fill=\"none\" stroke=\"crimson\" stroke-width=\"1.5\">\n");
        for face in m.orbits(OrbitKind::Face) {
            let touches_illegal = face.iter().any(|&s| is_illegal(t, m.dart_at(s)).unwrap_or(false));
            if !touches_illegal {
                continue;
            }
            let (a, b, c) = (m.location_at(face[0]), m.location_at(face[1]), m.location_at(face[2]));
            let Some(center) = circumcenter(a, b, c) else { continue };
            let radius = distance_sq(&center, a).to_f64().sqrt();
            let radius = BigRational::from_float(radius).map(Coord::from_rational).unwrap_or_else(Coord::zero);
            let r = (&radius * &frame.scale).to_decimal(DIGITS);
            writeln!(
                out,
                r#"<circle class="circumcircle" cx="{}" cy="{}" r="{r}"/>"#,
                frame.x(&center),
                frame.y(&center)
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }

    out.push_str("<g class=\"edges\" stroke=\"black\" stroke-width=\"1\">\n");
    for edge in m.orbits(OrbitKind::Dim0) {
        let a = m.location_at(edge[0]);
        let b = m.location_at(m.alpha_slot(Dim::Zero, edge[0]));
        writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, frame.x(a), frame.y(a), frame.x(b), frame.y(b))
            .unwrap();
    }
    out.push_str("</g>\n");

    out.push_str("<g class=\"vertices\" fill=\"black\">\n");
    for vertex in m.orbits(OrbitKind::Dim1) {
        let p = m.location_at(vertex[0]);
        writeln!(out, r#"<circle class="vertex" cx="{}" cy="{}" r="4"/>"#, frame.x(p), frame.y(p)).unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}
