//! Independent checkers: triangulation and embedding validity, general
//! position screening and a brute-force empty-circumcircle oracle that
//! never touches the flip machinery.

use std::fmt;

use crate::builder::PointSet;
use crate::delaunay::TriMap;
use crate::exec::Execution;
use crate::geometry::{ccw, in_circle, Orientation, Point};
use crate::hypermap::{DartId, FreeMap, Hypermap, OrbitKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    InvHmap,
    NotPlanar,
    EdgeSize,
    FaceSize,
    VertexConsistency,
    EdgePoints,
    FaceOrientation,
    Duplicate,
    Collinear,
    Cocircular,
    BoundaryOrientation,
    Exterior,
    EmptyCircumcircle,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::InvHmap => "inv_hmap",
            Rule::NotPlanar => "not_planar",
            Rule::EdgeSize => "edge_size",
            Rule::FaceSize => "face_size",
            Rule::VertexConsistency => "vertex_consistency",
            Rule::EdgePoints => "edge_points",
            Rule::FaceOrientation => "face_orientation",
            Rule::Duplicate => "duplicate",
            Rule::Collinear => "collinear",
            Rule::Cocircular => "cocircular",
            Rule::BoundaryOrientation => "boundary_orientation",
            Rule::Exterior => "exterior",
            Rule::EmptyCircumcircle => "empty_circumcircle",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub darts: Vec<DartId>,
    pub points: Vec<Point>,
    pub detail: String,
}

impl Violation {
    fn new(rule: Rule, darts: Vec<DartId>, points: Vec<Point>, detail: impl Into<String>) -> Self {
        Violation { rule, darts, points, detail: detail.into() }
    }

    /// One machine-readable line:
    /// `VIOLATION <rule> darts=<ids|-> points=<x:y;..|->`.
    pub fn record(&self) -> String {
        let darts = if self.darts.is_empty() {
            "-".to_string()
        } else {
            self.darts.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        };
        let points = if self.points.is_empty() {
            "-".to_string()
        } else {
            self.points
                .iter()
                .map(|p| format!("{}:{}", p.x().to_literal(), p.y().to_literal()))
                .collect::<Vec<_>>()
                .join(";")
        };
        format!("VIOLATION {} darts={} points={}", self.rule, darts, points)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.violations.extend(other.violations);
    }

    fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "passed");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

fn dart_list(m: &Hypermap, slots: &[usize]) -> Vec<DartId> {
    slots.iter().map(|&s| m.dart_at(s)).collect()
}

/// Validates a raw free map: the hypermap preconditions first, then the
/// triangulation rules of [`check_triangulation`].
pub fn check_free_map(fm: &FreeMap) -> CheckReport {
    match Hypermap::build(fm) {
        Ok(m) => check_triangulation(&m),
        Err(e) => {
            let mut report = CheckReport::default();
            report.push(Violation::new(Rule::InvHmap, vec![], vec![], e.to_string()));
            report
        }
    }
}

/// Planarity, two-dart edges and three-dart faces. A [`Hypermap`] value
/// already satisfies the hypermap preconditions.
pub fn check_triangulation(m: &Hypermap) -> CheckReport {
    let mut report = CheckReport::default();
    let census = m.census();
    if !census.is_planar() {
        report.push(Violation::new(Rule::NotPlanar, vec![], vec![], format!("genus {} ({census})", census.genus)));
    }
    for edge in m.orbits(OrbitKind::Dim0) {
        if edge.len() != 2 {
            report.push(Violation::new(
                Rule::EdgeSize,
                dart_list(m, &edge),
                vec![],
                format!("edge of dart {} has {} dart(s)", m.dart_at(edge[0]), edge.len()),
            ));
        }
    }
    for face in m.orbits(OrbitKind::Face) {
        if face.len() != 3 {
            report.push(Violation::new(
                Rule::FaceSize,
                dart_list(m, &face),
                vec![],
                format!("face of dart {} has {} dart(s)", m.dart_at(face[0]), face.len()),
            ));
        }
    }
    report
}

/// Location consistency and face orientation: one point per vertex,
/// distinct points on each edge, every triangle counter-clockwise except
/// exactly one clockwise external face.
pub fn check_wellembedded(m: &Hypermap) -> CheckReport {
    let mut report = CheckReport::default();
    for vertex in m.orbits(OrbitKind::Dim1) {
        let p = m.location_at(vertex[0]);
        if let Some(&bad) = vertex.iter().find(|&&s| m.location_at(s) != p) {
            report.push(Violation::new(
                Rule::VertexConsistency,
                dart_list(m, &vertex),
                vec![p.clone(), m.location_at(bad).clone()],
                format!("darts of the vertex of {} disagree on its location", m.dart_at(vertex[0])),
            ));
        }
    }
    for edge in m.orbits(OrbitKind::Dim0) {
        for (i, &s) in edge.iter().enumerate() {
            if edge[i + 1..].iter().any(|&t| m.location_at(t) == m.location_at(s)) {
                report.push(Violation::new(
                    Rule::EdgePoints,
                    dart_list(m, &edge),
                    vec![m.location_at(s).clone()],
                    format!("edge of dart {} has both ends at {}", m.dart_at(edge[0]), m.location_at(s)),
                ));
                break;
            }
        }
    }
    let mut clockwise = Vec::new();
    for face in m.orbits(OrbitKind::Face) {
        if face.len() != 3 {
            continue;
        }
        let pts: Vec<Point> = face.iter().map(|&s| m.location_at(s).clone()).collect();
        match ccw(&pts[0], &pts[1], &pts[2]) {
            Orientation::Positive => {}
            Orientation::Negative => clockwise.push((face, pts)),
            Orientation::Zero => report.push(Violation::new(
                Rule::FaceOrientation,
                dart_list(m, &face),
                pts,
                "degenerate (collinear) face",
            )),
        }
    }
    match clockwise.len() {
        1 => {}
        0 => report.push(Violation::new(Rule::FaceOrientation, vec![], vec![], "no clockwise external face")),
        n => {
            for (face, pts) in clockwise {
                report.push(Violation::new(
                    Rule::FaceOrientation,
                    dart_list(m, &face),
                    pts,
                    format!("one of {n} clockwise faces; exactly one is allowed"),
                ));
            }
        }
    }
    report
}

/// Brute force: no vertex of the map lies strictly inside the
/// circumcircle of any counter-clockwise face.
pub fn delaunay_oracle(t: &TriMap, exec: Execution) -> CheckReport {
    let m = t.map();
    let (_, points) = m.darts_and_points();
    let faces: Vec<Vec<usize>> = m
        .orbits(OrbitKind::Face)
        .into_iter()
        .filter(|f| f.len() == 3 && ccw(m.location_at(f[0]), m.location_at(f[1]), m.location_at(f[2])).is_positive())
        .collect();
    let violations = exec.flat_map(faces.len(), |i| {
        let face = &faces[i];
        let (p, q, r) = (m.location_at(face[0]), m.location_at(face[1]), m.location_at(face[2]));
        points
            .iter()
            .filter(|s| *s != p && *s != q && *s != r)
            .filter(|s| in_circle(p, q, r, s).is_positive())
            .map(|s| {
                Violation::new(
                    Rule::EmptyCircumcircle,
                    dart_list(m, face),
                    vec![p.clone(), q.clone(), r.clone(), s.clone()],
                    format!("{s} is inside the circumcircle of {p} {q} {r}"),
                )
            })
            .collect()
    });
    CheckReport { violations }
}

/// Duplicates, collinear triples and, when `cocircular` is set, cocircular
/// quadruples among all points of the set. Triple and quadruple scans are
/// skipped when duplicates exist.
pub fn general_position(ps: &PointSet, cocircular: bool, exec: Execution) -> CheckReport {
    let pts = ps.points();
    let n = pts.len();
    let mut report = CheckReport::default();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| pts[i].cmp(&pts[j]).then(i.cmp(&j)));
    for w in order.windows(2) {
        if pts[w[0]] == pts[w[1]] {
            let (i, j) = (w[0].min(w[1]), w[0].max(w[1]));
            report.push(Violation::new(
                Rule::Duplicate,
                vec![],
                vec![pts[i].clone()],
                format!("points #{} and #{} coincide at {}", i + 1, j + 1, pts[i]),
            ));
        }
    }
    if !report.passed() {
        return report;
    }

    report.violations.extend(exec.flat_map(n, |i| {
        let mut out = Vec::new();
        for j in i + 1..n {
            for k in j + 1..n {
                if ccw(&pts[i], &pts[j], &pts[k]).is_zero() {
                    out.push(Violation::new(
                        Rule::Collinear,
                        vec![],
                        vec![pts[i].clone(), pts[j].clone(), pts[k].clone()],
                        format!("{} {} {} are collinear", pts[i], pts[j], pts[k]),
                    ));
                }
            }
        }
        out
    }));

    if cocircular {
        report.violations.extend(exec.flat_map(n, |i| {
            let mut out = Vec::new();
            for j in i + 1..n {
                for k in j + 1..n {
                    if ccw(&pts[i], &pts[j], &pts[k]).is_zero() {
                        continue;
                    }
                    for l in k + 1..n {
                        if in_circle(&pts[i], &pts[j], &pts[k], &pts[l]).is_zero() {
                            out.push(Violation::new(
                                Rule::Cocircular,
                                vec![],
                                vec![pts[i].clone(), pts[j].clone(), pts[k].clone(), pts[l].clone()],
                                format!("{} {} {} {} are cocircular", pts[i], pts[j], pts[k], pts[l]),
                            ));
                        }
                    }
                }
            }
            out
        }));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geometry::Coord;
    use crate::hypermap::Dim;

    fn d(v: u32) -> DartId {
        DartId::new(v)
    }

    #[test]
    fn single_triangle_passes() {
        let m = fixtures::single_triangle();
        assert!(check_triangulation(&m).passed());
        assert!(check_wellembedded(&m).passed());
        let t = TriMap::new(m).unwrap();
        assert!(delaunay_oracle(&t, Execution::Sequential).passed());
    }

    #[test]
    fn one_dart_edge_is_reported() {
        let mut fm = fixtures::single_triangle().free_map();
        fm.insert_dart(7, Point::from_ints(0, 0));
        let report = check_free_map(&fm);
        assert!(report.has(Rule::EdgeSize));
        let v = report.violations.iter().find(|v| v.rule == Rule::EdgeSize).unwrap();
        assert_eq!(v.darts, vec![d(7)]);
    }

    #[test]
    fn torus_is_not_planar() {
        // one vertex, two edges, one face: chi = 0, genus 1
        let mut fm = FreeMap::new();
        for i in 1..=4 {
            fm.insert_dart(i, Point::from_ints(0, 0));
        }
        fm.add_link(Dim::Zero, 1, 2).add_link(Dim::Zero, 3, 4);
        fm.add_link(Dim::One, 1, 3).add_link(Dim::One, 3, 2).add_link(Dim::One, 2, 4);
        let m = Hypermap::build(&fm).unwrap();
        let c = m.census();
        assert_eq!((c.darts, c.edges, c.vertices, c.faces, c.components), (4, 2, 1, 1, 1));
        assert_eq!(c.genus, num_rational::Ratio::from_integer(1));
        assert!(check_triangulation(&m).has(Rule::NotPlanar));
    }

    #[test]
    fn inv_hmap_failure_is_reported() {
        let mut fm = FreeMap::new();
        fm.insert_dart(1, Point::from_ints(0, 0)).add_link(Dim::Zero, 1, 5);
        let report = check_free_map(&fm);
        assert!(report.has(Rule::InvHmap));
    }

    #[test]
    fn wellembedded_violations() {
        let m = fixtures::single_triangle();
        let mut bad = m.clone();
        bad.set_location(d(6), Point::new(Coord::ratio(1, 1000), Coord::zero())).unwrap();
        let report = check_wellembedded(&bad);
        assert!(report.has(Rule::VertexConsistency));

        let mut flat = m.clone();
        for id in [2, 3] {
            flat.set_location(d(id), Point::from_ints(0, 0)).unwrap();
        }
        let report = check_wellembedded(&flat);
        assert!(report.has(Rule::EdgePoints));
    }

    #[test]
    fn two_clockwise_faces_are_reported() {
        let (t, _) = fixtures::running_example();
        let mut m = t.map().clone();
        // mirror every location: each face changes orientation
        let moves: Vec<(DartId, Point)> = m
            .darts()
            .iter()
            .map(|&x| {
                let p = m.location(x).unwrap();
                (x, Point::new(-p.x().clone(), p.y().clone()))
            })
            .collect();
        for (x, p) in moves {
            m.set_location(x, p).unwrap();
        }
        let report = check_wellembedded(&m);
        assert!(report.has(Rule::FaceOrientation));
        assert!(report.violations.iter().filter(|v| v.rule == Rule::FaceOrientation).count() > 1);
    }

    #[test]
    fn oracle_flags_running_example() {
        let (t, pts) = fixtures::running_example();
        let report = delaunay_oracle(&t, Execution::Sequential);
        assert!(!report.passed());
        let hit = report.violations.iter().find(|v| v.points[3] == pts.s).unwrap();
        let mut corners = hit.points[..3].to_vec();
        corners.sort();
        let mut expected = vec![pts.p.clone(), pts.q.clone(), pts.r.clone()];
        expected.sort();
        assert_eq!(corners, expected);
        assert_eq!(report, delaunay_oracle(&t, Execution::Parallel));
    }

    #[test]
    fn general_position_examples() {
        let ps = PointSet::new(
            [Point::from_ints(0, 0), Point::from_ints(1, 0), Point::from_ints(0, 1)],
            vec![Point::from_ints(5, 7)],
        );
        assert!(general_position(&ps, true, Execution::Sequential).passed());

        let ps = PointSet::new(
            [Point::from_ints(0, 0), Point::from_ints(4, 0), Point::from_ints(0, 4)],
            vec![Point::from_ints(1, 1), Point::from_ints(2, 2)],
        );
        let report = general_position(&ps, false, Execution::Sequential);
        assert!(report.has(Rule::Collinear));

        let ps = PointSet::new(
            [Point::from_ints(0, 0), Point::from_ints(1, 0), Point::from_ints(1, 1)],
            vec![Point::from_ints(0, 1)],
        );
        assert!(general_position(&ps, false, Execution::Sequential).passed());
        let report = general_position(&ps, true, Execution::Parallel);
        assert!(report.has(Rule::Cocircular));

        let ps = PointSet::new(
            [Point::from_ints(0, 0), Point::from_ints(4, 0), Point::from_ints(0, 4)],
            vec![Point::from_ints(1, 1), Point::from_ints(1, 1)],
        );
        let report = general_position(&ps, false, Execution::Sequential);
        assert!(report.has(Rule::Duplicate));
    }

    #[test]
    fn records_are_single_lines() {
        let v = Violation::new(Rule::Collinear, vec![d(1), d(2)], vec![Point::from_ints(1, 2)], "x");
        assert_eq!(v.record(), "VIOLATION collinear darts=1,2 points=1:2");
    }
}
