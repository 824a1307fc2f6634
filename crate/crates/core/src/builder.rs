//! Initial triangulations: an enclosing triangle refined by inserting the
//! interior points one at a time, each splitting its containing triangle
//! into three.

use std::collections::HashMap;

use thiserror::Error;

use crate::delaunay::TriMap;
use crate::exec::Execution;
use crate::geometry::{ccw, Orientation, Point};
use crate::hypermap::{DartId, Dim, Hypermap, OrbitKind};
use crate::verify::{self, CheckReport, Rule, Violation};

/// An enclosing triangle (counter-clockwise) and the points inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    pub boundary: [Point; 3],
    pub interior: Vec<Point>,
}

impl PointSet {
    pub fn new(boundary: [Point; 3], interior: Vec<Point>) -> Self {
        PointSet { boundary, interior }
    }

    /// Boundary corners followed by the interior points.
    pub fn points(&self) -> Vec<Point> {
        self.boundary.iter().chain(&self.interior).cloned().collect()
    }

    pub fn len(&self) -> usize {
        3 + self.interior.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BuilderError {
    #[error("degenerate input: {0}")]
    DegenerateInput(CheckReport),
    #[error("point {0} is not inside any triangle")]
    NotInside(Box<Point>),
    #[error("point {0} lies on an edge of the triangulation")]
    OnEdge(Box<Point>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LocateError {
    #[error("point {0} is not inside the triangulation")]
    NotInside(Box<Point>),
    #[error("point {0} lies on an edge")]
    OnEdge(Box<Point>),
}

/// Degeneracies that rule out a point set: those of
/// [`verify::general_position`] (without the cocircular scan), a boundary
/// that is not counter-clockwise, and interior points not strictly inside.
pub fn screen_point_set(ps: &PointSet, exec: Execution) -> CheckReport {
    let mut report = verify::general_position(ps, false, exec);
    let [a, b, c] = &ps.boundary;
    if !ccw(a, b, c).is_positive() {
        report.violations.push(Violation {
            rule: Rule::BoundaryOrientation,
            darts: vec![],
            points: ps.boundary.to_vec(),
            detail: format!("boundary {a} {b} {c} is not counter-clockwise"),
        });
        return report;
    }
    for p in &ps.interior {
        let inside = ccw(a, b, p).is_positive() && ccw(b, c, p).is_positive() && ccw(c, a, p).is_positive();
        if !inside {
            report.violations.push(Violation {
                rule: Rule::Exterior,
                darts: vec![],
                points: vec![p.clone()],
                detail: format!("{p} is not strictly inside the boundary triangle"),
            });
        }
    }
    report
}

/// The six-dart map of one triangle: darts 1..6 with `α₀ = (1 2)(3 4)(5 6)`
/// and `α₁ = (1 6)(2 3)(4 5)`; face `(1 3 5)` is `(a, b, c)` and face
/// `(2 6 4)` is the clockwise outside.
pub fn triangle_map(a: &Point, b: &Point, c: &Point) -> Hypermap {
    let mut m = Hypermap::new();
    for (id, p) in [(1, a), (2, b), (3, b), (4, c), (5, c), (6, a)] {
        m.insert_dart(DartId::new(id), p.clone()).expect("fresh darts");
    }
    for (k, x, y) in
        [(Dim::Zero, 1, 2), (Dim::Zero, 3, 4), (Dim::Zero, 5, 6), (Dim::One, 1, 6), (Dim::One, 2, 3), (Dim::One, 4, 5)]
    {
        m.add_link(k, DartId::new(x), DartId::new(y)).expect("open paths");
    }
    m
}

/// Builds the starting triangulation of a point set, inserting interior
/// points in order.
pub fn initial_triangulation(ps: &PointSet) -> Result<TriMap, BuilderError> {
    initial_triangulation_with(ps, Execution::default())
}

pub fn initial_triangulation_with(ps: &PointSet, exec: Execution) -> Result<TriMap, BuilderError> {
    let report = screen_point_set(ps, exec);
    if !report.passed() {
        return Err(BuilderError::DegenerateInput(report));
    }
    let [a, b, c] = &ps.boundary;
    let mut m = triangle_map(a, b, c);
    for p in &ps.interior {
        let face = locate_in(&m, p).map_err(|e| match e {
            LocateError::NotInside(p) => BuilderError::NotInside(p),
            LocateError::OnEdge(p) => BuilderError::OnEdge(p),
        })?;
        split_triangle(&mut m, face, p);
        debug_assert!(verify::check_triangulation(&m).passed());
        debug_assert!(verify::check_wellembedded(&m).passed());
    }
    Ok(TriMap::new(m).expect("insertion preserves the triangulation invariants"))
}

/// The lowest dart of the counter-clockwise face strictly containing `p`.
pub fn locate(t: &TriMap, p: &Point) -> Result<DartId, LocateError> {
    locate_in(t.map(), p).map(|s| t.map().dart_at(s))
}

/// Slot of the lowest dart of the face containing `p`.
fn locate_in(m: &Hypermap, p: &Point) -> Result<usize, LocateError> {
    let mut on_edge = false;
    for face in m.orbits(OrbitKind::Face) {
        if face.len() != 3 {
            continue;
        }
        let (a, b, c) = (m.location_at(face[0]), m.location_at(face[1]), m.location_at(face[2]));
        if !ccw(a, b, c).is_positive() {
            continue;
        }
        let sides = [ccw(a, b, p), ccw(b, c, p), ccw(c, a, p)];
        if sides.iter().all(|o| o.is_positive()) {
            let lowest = *face.iter().min_by_key(|&&s| m.dart_at(s)).expect("non-empty face");
            return Ok(lowest);
        }
        if !sides.contains(&Orientation::Negative) {
            on_edge = true;
        }
    }
    if on_edge {
        Err(LocateError::OnEdge(Box::new(p.clone())))
    } else {
        Err(LocateError::NotInside(Box::new(p.clone())))
    }
}

/// Connects `p` to the three corners of the face of `a` using six new
/// darts, three edge links, two vertex links and three vertex merges.
fn split_triangle(m: &mut Hypermap, a: usize, p: &Point) {
    let a1 = m.phi_slot(a);
    let a2 = m.phi_slot(a1);
    let corners = [a, a1, a2];
    let first = m.next_free_id();

    // for each corner X: e_X at X towards p, f_X at p towards X
    let mut spokes = Vec::with_capacity(3);
    for (i, &corner) in corners.iter().enumerate() {
        let e = DartId::new(first + 2 * i as u32);
        let f = DartId::new(first + 2 * i as u32 + 1);
        let at = m.location_at(corner).clone();
        m.insert_dart(e, at).expect("fresh dart");
        m.insert_dart(f, p.clone()).expect("fresh dart");
        m.add_link(Dim::Zero, e, f).expect("fresh edge");
        spokes.push((m.slot(e).unwrap(), f));
    }
    m.add_link(Dim::One, spokes[0].1, spokes[1].1).expect("fresh vertex");
    m.add_link(Dim::One, spokes[1].1, spokes[2].1).expect("fresh vertex");
    for (&corner, &(e, _)) in corners.iter().zip(&spokes) {
        m.merge_slot(Dim::One, corner, e);
    }
}

/// Builds a map from polygonal faces over indexed points. Each face lists
/// point indices in traversal order; every directed side `i → j` must occur
/// once and be matched by a side `j → i` of another face. Darts are
/// numbered from 1 in face order, one per face corner.
pub fn from_faces(points: &[Point], faces: &[Vec<usize>]) -> Result<Hypermap, String> {
    let mut sides: HashMap<(usize, usize), usize> = HashMap::new();
    let mut next_in_face = Vec::new();
    let mut origin = Vec::new();
    for face in faces {
        if face.len() < 2 {
            return Err(format!("face {face:?} has fewer than two corners"));
        }
        let base = origin.len();
        for (i, &u) in face.iter().enumerate() {
            let v = face[(i + 1) % face.len()];
            if u >= points.len() || v >= points.len() {
                return Err(format!("face {face:?} references a missing point"));
            }
            if sides.insert((u, v), base + i).is_some() {
                return Err(format!("side {u} -> {v} occurs twice"));
            }
            origin.push(u);
            next_in_face.push(base + (i + 1) % face.len());
        }
    }
    let n = origin.len();
    let mut twin = vec![0; n];
    for (&(u, v), &s) in &sides {
        twin[s] = *sides.get(&(v, u)).ok_or_else(|| format!("side {u} -> {v} has no opposite side"))?;
    }
    // φ(s) = α₁⁻¹(α₀(s)), so α₁(φ(s)) = α₀(s)
    let mut alpha1 = vec![0; n];
    for s in 0..n {
        alpha1[next_in_face[s]] = twin[s];
    }

    let mut m = Hypermap::new();
    let id = |s: usize| DartId::new(s as u32 + 1);
    for (s, &u) in origin.iter().enumerate() {
        m.insert_dart(id(s), points[u].clone()).map_err(|e| e.to_string())?;
    }
    for (k, perm) in [(Dim::Zero, &twin), (Dim::One, &alpha1)] {
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cur = s;
            seen[cur] = true;
            while !seen[perm[cur]] {
                m.add_link(k, id(cur), id(perm[cur])).map_err(|e| e.to_string())?;
                cur = perm[cur];
                seen[cur] = true;
            }
        }
    }
    Ok(m)
}
