//! Map surgery: shifting, splitting and merging orbits, and the edge flip
//! built from two splits and two merges.
//!
//! All public operations take a map by reference and return a new one.

use thiserror::Error;

use crate::geometry::{ccw, Point};
use crate::hypermap::{ConstructorError, DartId, Dim, Hypermap, OrbitKind, UnknownDart};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error(transparent)]
    UnknownDart(#[from] UnknownDart),
    #[error("dart {1} has no stored {0}-successor")]
    NoSuccessor(Dim, DartId),
    #[error("split needs two different darts, got {0} twice")]
    SameDart(DartId),
    #[error("darts {1} and {2} are not in the same {0}-orbit")]
    NotSameOrbit(Dim, DartId, DartId),
    #[error("darts {1} and {2} are already in the same {0}-orbit")]
    SameOrbit(Dim, DartId, DartId),
    #[error("the edge of dart {0} does not have exactly two darts")]
    NotTwoDartEdge(DartId),
    #[error("flip preconditions violated: {0:?}")]
    PrecondViolated(FlipPrecondReport),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipFailure {
    None,
    SameFace,
    SmallVertex,
    NotConvex,
    NotTwoDartEdge,
}

/// Outcome of the two flip preconditions. `embedding_ok` implies
/// `topological_ok`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlipPrecondReport {
    pub topological_ok: bool,
    pub embedding_ok: bool,
    pub failure: FlipFailure,
}

impl FlipPrecondReport {
    fn fail(failure: FlipFailure, topological_ok: bool) -> Self {
        FlipPrecondReport { topological_ok, embedding_ok: false, failure }
    }
}

/// The darts around an edge `a = x`, `b = α₀(a)` and the two faces
/// `(a, a1, a2)` and `(b, b1, b2)`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct EdgeQuad {
    pub a: usize,
    pub a1: usize,
    pub a2: usize,
    pub b: usize,
    pub b1: usize,
    pub b2: usize,
}

impl EdgeQuad {
    pub(crate) fn new(m: &Hypermap, a: usize) -> Self {
        let a1 = m.phi_slot(a);
        let a2 = m.phi_slot(a1);
        let b = m.alpha_slot(Dim::Zero, a);
        let b1 = m.phi_slot(b);
        let b2 = m.phi_slot(b1);
        EdgeQuad { a, a1, a2, b, b1, b2 }
    }

    /// Points `(p, q, r, s)`: `pq` is the edge, `r` and `s` are opposite.
    pub(crate) fn points<'m>(&self, m: &'m Hypermap) -> [&'m Point; 4] {
        [m.location_at(self.a), m.location_at(self.b), m.location_at(self.a2), m.location_at(self.b2)]
    }

    pub(crate) fn darts(&self) -> [usize; 6] {
        [self.a, self.a1, self.a2, self.b, self.b1, self.b2]
    }
}

impl Hypermap {
    /// Moves the open end of `x`'s `k`-path: drops the stored link out of
    /// `x` and links the path's last dart to its first. `α_k` is unchanged.
    pub fn shift(&self, k: Dim, x: DartId) -> Result<Hypermap, SurgeryError> {
        let xs = self.slot_or_err(x)?;
        if self.succ_slot(k, xs).is_none() {
            return Err(SurgeryError::NoSuccessor(k, x));
        }
        let mut m = self.clone();
        m.shift_slot(k, xs);
        Ok(m)
    }

    /// Splits the `k`-orbit of `x` and `y` into `{α(x) .. y}` and
    /// `{α(y) .. x}`, leaving neither with a stored successor.
    pub fn split(&self, k: Dim, x: DartId, y: DartId) -> Result<Hypermap, SurgeryError> {
        let xs = self.slot_or_err(x)?;
        let ys = self.slot_or_err(y)?;
        if xs == ys {
            return Err(SurgeryError::SameDart(x));
        }
        if !self.same_orbit_slot(k, xs, ys) {
            return Err(SurgeryError::NotSameOrbit(k, x, y));
        }
        let mut m = self.clone();
        m.split_slot(k, xs, ys);
        Ok(m)
    }

    /// Joins the distinct `k`-orbits of `x` and `y` so that `α_k(x) = y`.
    pub fn merge(&self, k: Dim, x: DartId, y: DartId) -> Result<Hypermap, SurgeryError> {
        let xs = self.slot_or_err(x)?;
        let ys = self.slot_or_err(y)?;
        if self.same_orbit_slot(k, xs, ys) {
            return Err(SurgeryError::SameOrbit(k, x, y));
        }
        let mut m = self.clone();
        m.merge_slot(k, xs, ys);
        Ok(m)
    }

    /// Checks whether the edge of `x` can be flipped.
    ///
    /// Topologically the two edge darts must lie in distinct faces and on
    /// vertices of at least three darts. For the embedding the two adjacent
    /// faces must be triangles whose four corners form a strictly convex
    /// quadrangle.
    pub fn flip_preconditions(&self, x: DartId) -> Result<FlipPrecondReport, SurgeryError> {
        let xs = self.slot_or_err(x)?;
        if self.orbit_len(OrbitKind::Dim0, xs) != 2 {
            return Err(SurgeryError::NotTwoDartEdge(x));
        }
        Ok(self.flip_report_slot(xs))
    }

    /// Flips the edge of `x` onto the two opposite corners of its adjacent
    /// triangles.
    ///
    /// With faces `(p, q, r)` around `x` and `(q, p, s)` around `α₀(x)`, the
    /// result has faces `(r, s, q)` and `(s, r, p)`; `x` now sits at `r` and
    /// `α₀(x)` at `s`.
    pub fn flip(&self, x: DartId) -> Result<Hypermap, SurgeryError> {
        let report = self.flip_preconditions(x)?;
        if !report.embedding_ok {
            return Err(SurgeryError::PrecondViolated(report));
        }
        let mut m = self.clone();
        m.flip_slot(self.slot_or_err(x)?);
        Ok(m)
    }

    pub(crate) fn same_orbit_slot(&self, k: Dim, x: usize, y: usize) -> bool {
        self.path_start(k, x) == self.path_start(k, y)
    }

    pub(crate) fn flip_report_slot(&self, xs: usize) -> FlipPrecondReport {
        let q = EdgeQuad::new(self, xs);
        if self.orbit_len(OrbitKind::Dim0, xs) != 2 {
            return FlipPrecondReport::fail(FlipFailure::NotTwoDartEdge, false);
        }
        if self.orbit_slots(OrbitKind::Face, q.a).contains(&q.b) {
            return FlipPrecondReport::fail(FlipFailure::SameFace, false);
        }
        if self.orbit_len(OrbitKind::Dim1, q.a) < 3 || self.orbit_len(OrbitKind::Dim1, q.b) < 3 {
            return FlipPrecondReport::fail(FlipFailure::SmallVertex, false);
        }
        let triangles = self.phi_slot(q.a2) == q.a && self.phi_slot(q.b2) == q.b;
        let [p, qq, r, s] = q.points(self);
        let convex = triangles
            && ccw(r, p, s).is_positive()
            && ccw(p, s, qq).is_positive()
            && ccw(s, qq, r).is_positive()
            && ccw(qq, r, p).is_positive();
        if !convex {
            return FlipPrecondReport::fail(FlipFailure::NotConvex, true);
        }
        FlipPrecondReport { topological_ok: true, embedding_ok: true, failure: FlipFailure::None }
    }

    pub(crate) fn shift_slot(&mut self, k: Dim, xs: usize) {
        let start = self.path_start(k, xs);
        let end = self.path_end(k, xs);
        self.remove_link_slot(k, xs).expect("shift needs a successor");
        self.add_link_slot(k, end, start).expect("shift keeps the orbit open");
    }

    pub(crate) fn split_slot(&mut self, k: Dim, xs: usize, ys: usize) {
        if self.succ_slot(k, xs).is_some() {
            self.shift_slot(k, xs);
        }
        self.remove_link_slot(k, ys).expect("after shifting, only x ends the path");
    }

    pub(crate) fn merge_slot(&mut self, k: Dim, xs: usize, ys: usize) {
        if self.succ_slot(k, xs).is_some() {
            self.shift_slot(k, xs);
        }
        if let Some(p) = self.pred_slot(k, ys) {
            self.shift_slot(k, p);
        }
        let res: Result<(), ConstructorError> = self.add_link_slot(k, xs, ys);
        res.expect("merge joins two open paths");
    }

    /// Flip without precondition checks.
    pub(crate) fn flip_slot(&mut self, xs: usize) -> EdgeQuad {
        let q = EdgeQuad::new(self, xs);
        // detach the edge from p and q
        let before_a = self.alpha_inv_slot(Dim::One, q.a);
        self.split_slot(Dim::One, q.a, before_a);
        let before_b = self.alpha_inv_slot(Dim::One, q.b);
        self.split_slot(Dim::One, q.b, before_b);
        // reattach at r and s
        self.merge_slot(Dim::One, q.a2, q.a);
        self.merge_slot(Dim::One, q.b2, q.b);
        let r = self.location_at(q.a2).clone();
        let s = self.location_at(q.b2).clone();
        self.set_location_slot(q.a, r);
        self.set_location_slot(q.b, s);
        q
    }
}
