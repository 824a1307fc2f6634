//! Hypermaps encoded as free maps: an ordered sequence of dart insertions
//! and links, validated constructor by constructor.
//!
//! Per dimension, stored links form open paths. The permutation `α_k` is the
//! closure of those paths: a dart's image is its stored successor, or the
//! start of its path when it has none. Faces are the orbits of
//! `φ = α₁⁻¹ ∘ α₀⁻¹`.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::geometry::Point;

/// Identifier of a dart. The value `0` is the reserved `nil` dart and is
/// rejected by [`Hypermap::build`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DartId(u32);

impl DartId {
    pub const NIL: DartId = DartId(0);

    pub const fn new(value: u32) -> Self {
        DartId(value)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn is_nil(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for DartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for DartId {
    fn from(v: u32) -> Self {
        DartId(v)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Dim {
    Zero,
    One,
}

impl Dim {
    pub const ALL: [Dim; 2] = [Dim::Zero, Dim::One];

    pub fn index(self) -> usize {
        match self {
            Dim::Zero => 0,
            Dim::One => 1,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Which permutation an orbit follows: `α₀` (edges), `α₁` (vertices) or
/// `φ` (faces).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrbitKind {
    Dim0,
    Dim1,
    Face,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Link {
    pub dim: Dim,
    pub source: DartId,
    pub target: DartId,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Constructor {
    InsertDart { dart: DartId, location: Point },
    AddLink(Link),
}

/// The raw constructor sequence. An empty sequence is the void map.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FreeMap {
    constructors: Vec<Constructor>,
}

impl FreeMap {
    pub fn new() -> Self {
        FreeMap::default()
    }

    pub fn from_constructors(constructors: Vec<Constructor>) -> Self {
        FreeMap { constructors }
    }

    pub fn insert_dart(&mut self, dart: impl Into<DartId>, location: Point) -> &mut Self {
        self.constructors.push(Constructor::InsertDart { dart: dart.into(), location });
        self
    }

    pub fn add_link(&mut self, dim: Dim, source: impl Into<DartId>, target: impl Into<DartId>) -> &mut Self {
        self.constructors.push(Constructor::AddLink(Link { dim, source: source.into(), target: target.into() }));
        self
    }

    pub fn constructors(&self) -> &[Constructor] {
        &self.constructors
    }

    pub fn len(&self) -> usize {
        self.constructors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constructors.is_empty()
    }
}

/// A violated constructor precondition.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ConstructorError {
    #[error("dart {0} is already present")]
    DuplicateDart(DartId),
    #[error("the nil dart cannot be inserted")]
    NilDart,
    #[error("dart {0} is not in the map")]
    UnknownDart(DartId),
    #[error("dart {1} already has a {0}-successor")]
    SourceHasSuccessor(Dim, DartId),
    #[error("dart {1} already has a {0}-predecessor")]
    TargetHasPredecessor(Dim, DartId),
    #[error("link {1} -> {2} at dimension {0} would close an orbit")]
    WouldCloseOrbit(Dim, DartId, DartId),
}

/// The first constructor of a free map that fails its precondition.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("constructor {index}: {kind}")]
pub struct BuildError {
    /// Zero-based position in the constructor sequence.
    pub index: usize,
    pub kind: ConstructorError,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Error)]
#[error("dart {0} is not in the map")]
pub struct UnknownDart(pub DartId);

/// Topological census of a hypermap.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Census {
    pub darts: usize,
    pub edges: usize,
    pub vertices: usize,
    pub faces: usize,
    pub components: usize,
    /// `v + e + f - d`
    pub chi: i64,
    /// `c - chi / 2`
    pub genus: Ratio<i64>,
}

impl Census {
    pub fn is_planar(&self) -> bool {
        self.genus == Ratio::from_integer(0)
    }

    pub fn satisfies_euler_formula(&self) -> bool {
        self.chi == 2 * self.components as i64
    }
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d={} e={} v={} f={} c={} chi={} genus={}",
            self.darts, self.edges, self.vertices, self.faces, self.components, self.chi, self.genus
        )
    }
}

/// A free map whose constructors all satisfied their preconditions, with
/// successor/predecessor tables for each dimension.
///
/// Darts are addressed internally by slot, their position in insertion
/// order.
#[derive(Clone, Debug, Default)]
pub struct Hypermap {
    darts: Vec<DartId>,
    slot_of: HashMap<DartId, usize>,
    base_locations: Vec<Point>,
    locations: Vec<Point>,
    /// Slots whose location differs from their insertion, in override order.
    overridden: Vec<usize>,
    links: Vec<Link>,
    succ: [Vec<Option<usize>>; 2],
    pred: [Vec<Option<usize>>; 2],
}

/// Validate a free map; see [`Hypermap::build`].
pub fn build_map(constructors: &FreeMap) -> Result<Hypermap, BuildError> {
    Hypermap::build(constructors)
}

impl Hypermap {
    pub fn new() -> Self {
        Hypermap::default()
    }

    /// Replays the constructors, checking each precondition against the map
    /// built so far.
    pub fn build(constructors: &FreeMap) -> Result<Hypermap, BuildError> {
        let mut m = Hypermap::new();
        for (index, c) in constructors.constructors.iter().enumerate() {
            let res = match c {
                Constructor::InsertDart { dart, location } => m.insert_dart(*dart, location.clone()),
                Constructor::AddLink(link) => m.add_link(link.dim, link.source, link.target),
            };
            res.map_err(|kind| BuildError { index, kind })?;
        }
        Ok(m)
    }

    /// The equivalent constructor sequence: every dart insertion in order,
    /// then every stored link in order.
    pub fn free_map(&self) -> FreeMap {
        let mut fm = FreeMap::new();
        for (d, p) in self.darts.iter().zip(&self.base_locations) {
            fm.insert_dart(*d, p.clone());
        }
        for l in &self.links {
            fm.constructors.push(Constructor::AddLink(*l));
        }
        fm
    }

    pub fn dart_count(&self) -> usize {
        self.darts.len()
    }

    /// Darts in insertion order.
    pub fn darts(&self) -> &[DartId] {
        &self.darts
    }

    pub fn contains(&self, d: DartId) -> bool {
        self.slot_of.contains_key(&d)
    }

    /// Stored links in constructor order.
    pub fn links(&self) -> &[Link] {
        &self.links
    }

    /// Current location of a dart.
    pub fn location(&self, d: DartId) -> Result<&Point, UnknownDart> {
        Ok(&self.locations[self.slot_or_err(d)?])
    }

    /// Location given when the dart was inserted.
    pub fn base_location(&self, d: DartId) -> Result<&Point, UnknownDart> {
        Ok(&self.base_locations[self.slot_or_err(d)?])
    }

    /// Darts whose location was changed after insertion, in the order the
    /// changes were first made.
    pub fn location_overrides(&self) -> impl Iterator<Item = (DartId, &Point)> + '_ {
        self.overridden.iter().map(|&s| (self.darts[s], &self.locations[s]))
    }

    pub fn successor(&self, k: Dim, d: DartId) -> Result<Option<DartId>, UnknownDart> {
        let s = self.slot_or_err(d)?;
        Ok(self.succ_slot(k, s).map(|t| self.darts[t]))
    }

    pub fn predecessor(&self, k: Dim, d: DartId) -> Result<Option<DartId>, UnknownDart> {
        let s = self.slot_or_err(d)?;
        Ok(self.pred_slot(k, s).map(|t| self.darts[t]))
    }

    /// `α_k(d)` or `α_k⁻¹(d)`.
    pub fn alpha(&self, k: Dim, d: DartId, direction: Direction) -> Result<DartId, UnknownDart> {
        let s = self.slot_or_err(d)?;
        let t = match direction {
            Direction::Forward => self.alpha_slot(k, s),
            Direction::Inverse => self.alpha_inv_slot(k, s),
        };
        Ok(self.darts[t])
    }

    /// `φ(d) = α₁⁻¹(α₀⁻¹(d))` or `φ⁻¹(d) = α₀(α₁(d))`.
    pub fn face_succ(&self, d: DartId, direction: Direction) -> Result<DartId, UnknownDart> {
        let s = self.slot_or_err(d)?;
        let t = match direction {
            Direction::Forward => self.phi_slot(s),
            Direction::Inverse => self.phi_inv_slot(s),
        };
        Ok(self.darts[t])
    }

    /// The cycle of `d` under the chosen permutation, starting at `d`.
    pub fn orbit(&self, kind: OrbitKind, d: DartId) -> Result<Vec<DartId>, UnknownDart> {
        let s = self.slot_or_err(d)?;
        Ok(self.orbit_slots(kind, s).into_iter().map(|t| self.darts[t]).collect())
    }

    pub fn census(&self) -> Census {
        let n = self.darts.len();
        let edges = self.count_orbits(OrbitKind::Dim0);
        let vertices = self.count_orbits(OrbitKind::Dim1);
        let faces = self.count_orbits(OrbitKind::Face);

        let mut uf = UnionFind::<usize>::new(n);
        for l in &self.links {
            uf.union(self.slot_of[&l.source], self.slot_of[&l.target]);
        }
        let mut roots: Vec<usize> = (0..n).map(|s| uf.find(s)).collect();
        roots.sort_unstable();
        roots.dedup();
        let components = roots.len();

        let chi = (vertices + edges + faces) as i64 - n as i64;
        let genus = Ratio::from_integer(components as i64) - Ratio::new(chi, 2);
        Census { darts: n, edges, vertices, faces, components, chi, genus }
    }

    /// Darts in insertion order, and the distinct dart locations sorted
    /// lexicographically.
    pub fn darts_and_points(&self) -> (Vec<DartId>, Vec<Point>) {
        let mut points = self.locations.clone();
        points.sort();
        points.dedup();
        (self.darts.clone(), points)
    }

    // slot-level access

    pub(crate) fn slot(&self, d: DartId) -> Option<usize> {
        self.slot_of.get(&d).copied()
    }

    pub(crate) fn slot_or_err(&self, d: DartId) -> Result<usize, UnknownDart> {
        self.slot(d).ok_or(UnknownDart(d))
    }

    pub(crate) fn dart_at(&self, s: usize) -> DartId {
        self.darts[s]
    }

    pub(crate) fn location_at(&self, s: usize) -> &Point {
        &self.locations[s]
    }

    pub(crate) fn succ_slot(&self, k: Dim, s: usize) -> Option<usize> {
        self.succ[k.index()][s]
    }

    pub(crate) fn pred_slot(&self, k: Dim, s: usize) -> Option<usize> {
        self.pred[k.index()][s]
    }

    /// First dart of the open path containing `s`.
    pub(crate) fn path_start(&self, k: Dim, mut s: usize) -> usize {
        while let Some(p) = self.pred_slot(k, s) {
            s = p;
        }
        s
    }

    /// Last dart of the open path containing `s`.
    pub(crate) fn path_end(&self, k: Dim, mut s: usize) -> usize {
        while let Some(n) = self.succ_slot(k, s) {
            s = n;
        }
        s
    }

    pub(crate) fn alpha_slot(&self, k: Dim, s: usize) -> usize {
        self.succ_slot(k, s).unwrap_or_else(|| self.path_start(k, s))
    }

    pub(crate) fn alpha_inv_slot(&self, k: Dim, s: usize) -> usize {
        self.pred_slot(k, s).unwrap_or_else(|| self.path_end(k, s))
    }

    pub(crate) fn phi_slot(&self, s: usize) -> usize {
        self.alpha_inv_slot(Dim::One, self.alpha_inv_slot(Dim::Zero, s))
    }

    pub(crate) fn phi_inv_slot(&self, s: usize) -> usize {
        self.alpha_slot(Dim::Zero, self.alpha_slot(Dim::One, s))
    }

    fn step_slot(&self, kind: OrbitKind, s: usize) -> usize {
        match kind {
            OrbitKind::Dim0 => self.alpha_slot(Dim::Zero, s),
            OrbitKind::Dim1 => self.alpha_slot(Dim::One, s),
            OrbitKind::Face => self.phi_slot(s),
        }
    }

    pub(crate) fn orbit_slots(&self, kind: OrbitKind, s: usize) -> Vec<usize> {
        let mut out = vec![s];
        let mut t = self.step_slot(kind, s);
        while t != s {
            out.push(t);
            t = self.step_slot(kind, t);
        }
        out
    }

    pub(crate) fn orbit_len(&self, kind: OrbitKind, s: usize) -> usize {
        let mut len = 1;
        let mut t = self.step_slot(kind, s);
        while t != s {
            len += 1;
            t = self.step_slot(kind, t);
        }
        len
    }

    /// Orbits of `kind`, each starting at its first slot in insertion order.
    pub(crate) fn orbits(&self, kind: OrbitKind) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.darts.len()];
        let mut out = Vec::new();
        for s in 0..self.darts.len() {
            if seen[s] {
                continue;
            }
            let orbit = self.orbit_slots(kind, s);
            for &t in &orbit {
                seen[t] = true;
            }
            out.push(orbit);
        }
        out
    }

    fn count_orbits(&self, kind: OrbitKind) -> usize {
        let mut seen = vec![false; self.darts.len()];
        let mut count = 0;
        for s in 0..self.darts.len() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut t = self.step_slot(kind, s);
            while t != s {
                seen[t] = true;
                t = self.step_slot(kind, t);
            }
        }
        count
    }

    // mutation, kept inside the crate so that every public value stays valid

    /// Applies an insertion after checking its precondition.
    pub(crate) fn insert_dart(&mut self, d: DartId, location: Point) -> Result<(), ConstructorError> {
        if d.is_nil() {
            return Err(ConstructorError::NilDart);
        }
        if self.contains(d) {
            return Err(ConstructorError::DuplicateDart(d));
        }
        self.slot_of.insert(d, self.darts.len());
        self.darts.push(d);
        self.base_locations.push(location.clone());
        self.locations.push(location);
        for k in 0..2 {
            self.succ[k].push(None);
            self.pred[k].push(None);
        }
        Ok(())
    }

    /// Appends a link after checking its precondition.
    pub(crate) fn add_link(&mut self, k: Dim, x: DartId, y: DartId) -> Result<(), ConstructorError> {
        let xs = self.slot(x).ok_or(ConstructorError::UnknownDart(x))?;
        let ys = self.slot(y).ok_or(ConstructorError::UnknownDart(y))?;
        if self.succ_slot(k, xs).is_some() {
            return Err(ConstructorError::SourceHasSuccessor(k, x));
        }
        if self.pred_slot(k, ys).is_some() {
            return Err(ConstructorError::TargetHasPredecessor(k, y));
        }
        if self.alpha_slot(k, xs) == ys {
            return Err(ConstructorError::WouldCloseOrbit(k, x, y));
        }
        self.succ[k.index()][xs] = Some(ys);
        self.pred[k.index()][ys] = Some(xs);
        self.links.push(Link { dim: k, source: x, target: y });
        Ok(())
    }

    /// Removes the stored `k`-link out of `s`, returning its target slot.
    pub(crate) fn remove_link_slot(&mut self, k: Dim, s: usize) -> Option<usize> {
        let t = self.succ[k.index()][s].take()?;
        self.pred[k.index()][t] = None;
        let source = self.darts[s];
        let pos =
            self.links.iter().position(|l| l.dim == k && l.source == source).expect("link table and link list agree");
        self.links.remove(pos);
        Some(t)
    }

    pub(crate) fn add_link_slot(&mut self, k: Dim, x: usize, y: usize) -> Result<(), ConstructorError> {
        self.add_link(k, self.darts[x], self.darts[y])
    }

    pub(crate) fn set_location_slot(&mut self, s: usize, p: Point) {
        if !self.overridden.contains(&s) {
            self.overridden.push(s);
        }
        self.locations[s] = p;
    }

    /// Applies a location override.
    pub(crate) fn set_location(&mut self, d: DartId, p: Point) -> Result<(), UnknownDart> {
        let s = self.slot_or_err(d)?;
        self.set_location_slot(s, p);
        Ok(())
    }

    pub(crate) fn next_free_id(&self) -> u32 {
        self.darts.iter().map(|d| d.get()).max().unwrap_or(0) + 1
    }
}
