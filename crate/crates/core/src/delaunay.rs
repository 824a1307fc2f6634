//! Certified triangulations and the naive Delaunay algorithm: flip the
//! lowest illegal edge until none remains, tracking the lifted-volume
//! measure, which drops by three lifted tetrahedra per flip.

use std::fmt;

use thiserror::Error;

use crate::exec::Execution;
use crate::geometry::{ccw, in_circle, triangle_lift_volume_closed, Coord};
use crate::hypermap::{DartId, Hypermap, OrbitKind, UnknownDart};
use crate::surgery::EdgeQuad;
use crate::verify::{self, CheckReport};

/// A hypermap that passed both the triangulation and the well-embedding
/// checks. Every constructor re-runs them, so a `TriMap` value always
/// carries both certificates.
#[derive(Clone, Debug)]
pub struct TriMap {
    map: Hypermap,
    /// Slots ordered by dart id.
    by_id: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("not a well-embedded triangulation: {report}")]
pub struct NotATriangulation {
    pub report: CheckReport,
}

impl TriMap {
    pub fn new(map: Hypermap) -> Result<TriMap, NotATriangulation> {
        let mut report = verify::check_triangulation(&map);
        if report.passed() {
            report.extend(verify::check_wellembedded(&map));
        }
        if !report.passed() {
            return Err(NotATriangulation { report });
        }
        let mut by_id: Vec<usize> = (0..map.dart_count()).collect();
        by_id.sort_by_key(|&s| map.dart_at(s));
        Ok(TriMap { map, by_id })
    }

    pub fn map(&self) -> &Hypermap {
        &self.map
    }

    pub fn into_map(self) -> Hypermap {
        self.map
    }

    /// Number of distinct vertex locations.
    pub fn point_count(&self) -> usize {
        self.map.darts_and_points().1.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipEvent {
    pub dart: DartId,
    pub measure_before: Coord,
    pub measure_after: Coord,
}

impl fmt::Display for FlipEvent {
    /// `FLIP <dart> <before> <after>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FLIP {} {} {}", self.dart, self.measure_before, self.measure_after)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlipTrace {
    pub events: Vec<FlipEvent>,
}

impl FlipTrace {
    pub fn flip_count(&self) -> usize {
        self.events.len()
    }

    /// True when every event strictly decreases the measure.
    pub fn is_strictly_decreasing(&self) -> bool {
        self.events.iter().all(|e| e.measure_after < e.measure_before)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    UnknownDart(#[from] UnknownDart),
    #[error("flip budget of {cap} exceeded")]
    FlipBudgetExceeded { cap: usize, trace: FlipTrace },
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
}

#[derive(Clone, Copy, Debug)]
pub struct DelaunayOptions {
    /// Flip cap; `None` means `10·n²` for `n` distinct points.
    pub max_flips: Option<usize>,
    pub execution: Execution,
    /// Re-certify the map and recompute the full measure after every flip.
    pub recheck: bool,
}

impl Default for DelaunayOptions {
    fn default() -> Self {
        DelaunayOptions { max_flips: None, execution: Execution::default(), recheck: cfg!(debug_assertions) }
    }
}

fn illegal_slot(m: &Hypermap, s: usize) -> bool {
    let q = EdgeQuad::new(m, s);
    let [p, qq, r, ss] = q.points(m);
    ccw(p, qq, r).is_positive() && ccw(qq, p, ss).is_positive() && in_circle(p, qq, r, ss).is_positive()
}

/// Whether the edge of `d` is illegal: both adjacent triangles are
/// counter-clockwise and the far corner of one is strictly inside the
/// circumcircle of the other. Cocircular corners are legal.
pub fn is_illegal(t: &TriMap, d: DartId) -> Result<bool, UnknownDart> {
    Ok(illegal_slot(&t.map, t.map.slot_or_err(d)?))
}

/// The illegal dart with the lowest id.
pub fn find_illegal(t: &TriMap) -> Option<DartId> {
    find_illegal_with(t, Execution::default())
}

pub fn find_illegal_with(t: &TriMap, exec: Execution) -> Option<DartId> {
    t.lowest_illegal_slot(exec).map(|s| t.map.dart_at(s))
}

pub fn no_dart_illegal(t: &TriMap) -> bool {
    find_illegal(t).is_none()
}

/// Number of illegal edges (each counted once).
pub fn illegal_edge_count(t: &TriMap, exec: Execution) -> usize {
    exec.count(t.map.dart_count(), |s| illegal_slot(&t.map, s)) / 2
}

fn face_volume_slot(m: &Hypermap, s: usize) -> Coord {
    let s1 = m.phi_slot(s);
    let s2 = m.phi_slot(s1);
    triangle_lift_volume_closed(m.location_at(s), m.location_at(s1), m.location_at(s2))
}

/// Sum over every dart of the lifted-prism volume of its face, so each
/// triangle counts three times and the clockwise outside counts negatively.
pub fn total_lifted_volume(t: &TriMap) -> Coord {
    let three = Coord::from_int(3);
    t.map.orbits(OrbitKind::Face).iter().map(|f| &face_volume_slot(&t.map, f[0]) * &three).sum()
}

/// One flip of the lowest illegal edge, or the map unchanged when there is
/// none.
pub fn step_tri(t: &TriMap) -> Result<TriMap, EngineError> {
    let mut next = t.clone();
    let measure = total_lifted_volume(t);
    next.step(measure, &DelaunayOptions::default())?;
    Ok(next)
}

impl TriMap {
    fn lowest_illegal_slot(&self, exec: Execution) -> Option<usize> {
        exec.find_first(self.by_id.len(), |i| illegal_slot(&self.map, self.by_id[i])).map(|i| self.by_id[i])
    }

    /// Flips the lowest illegal edge in place and returns the event.
    fn step(&mut self, measure: Coord, opts: &DelaunayOptions) -> Result<Option<FlipEvent>, EngineError> {
        match self.lowest_illegal_slot(opts.execution) {
            Some(s) => self.flip_illegal(s, measure, opts).map(Some),
            None => Ok(None),
        }
    }

    fn flip_illegal(&mut self, s: usize, measure: Coord, opts: &DelaunayOptions) -> Result<FlipEvent, EngineError> {
        let dart = self.map.dart_at(s);
        let report = self.map.flip_report_slot(s);
        if !report.embedding_ok {
            return Err(EngineError::InternalInvariantBroken(format!(
                "illegal edge of dart {dart} fails the flip preconditions: {report:?}"
            )));
        }

        let six = EdgeQuad::new(&self.map, s).darts();
        let old: Coord = six.iter().map(|&d| face_volume_slot(&self.map, d)).sum();
        self.map.flip_slot(s);
        let new: Coord = six.iter().map(|&d| face_volume_slot(&self.map, d)).sum();
        let after = &(&measure - &old) + &new;

        if opts.recheck {
            let mut report = verify::check_triangulation(&self.map);
            report.extend(verify::check_wellembedded(&self.map));
            if !report.passed() {
                return Err(EngineError::InternalInvariantBroken(format!("after flipping {dart}: {report}")));
            }
            let full = total_lifted_volume(self);
            if full != after {
                return Err(EngineError::InternalInvariantBroken(format!(
                    "measure after flipping {dart} is {full}, incremental update gave {after}"
                )));
            }
        }
        if after >= measure {
            return Err(EngineError::InternalInvariantBroken(format!(
                "measure did not decrease when flipping {dart}: {measure} -> {after}"
            )));
        }
        Ok(FlipEvent { dart, measure_before: measure, measure_after: after })
    }
}

/// Flips illegal edges until none remains.
pub fn delaunay(t: &TriMap, max_flips: Option<usize>) -> Result<(TriMap, FlipTrace), EngineError> {
    let opts = DelaunayOptions { max_flips, ..DelaunayOptions::default() };
    delaunay_with(t, &opts, |_, _| {})
}

/// [`delaunay`] with explicit options. `observer` sees the map and the
/// chosen dart before each flip.
pub fn delaunay_with<F>(t: &TriMap, opts: &DelaunayOptions, mut observer: F) -> Result<(TriMap, FlipTrace), EngineError>
where
    F: FnMut(&TriMap, DartId),
{
    let cap = opts.max_flips.unwrap_or_else(|| {
        let n = t.point_count();
        10 * n * n
    });
    let mut current = t.clone();
    let mut trace = FlipTrace::default();
    let mut measure = total_lifted_volume(&current);
    loop {
        let Some(s) = current.lowest_illegal_slot(opts.execution) else {
            return Ok((current, trace));
        };
        if trace.flip_count() >= cap {
            return Err(EngineError::FlipBudgetExceeded { cap, trace });
        }
        observer(&current, current.map.dart_at(s));
        let event = current.flip_illegal(s, measure, opts)?;
        measure = event.measure_after.clone();
        trace.events.push(event);
    }
}
