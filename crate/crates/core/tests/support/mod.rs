#![allow(dead_code)]

use std::collections::HashSet;

use flipmap::builder::PointSet;
use flipmap::exec::Execution;
use flipmap::geometry::{ccw, Coord, Point};
use flipmap::hypermap::{Constructor, DartId, Dim, FreeMap};
use flipmap::verify;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational in `[-range, range]` with a denominator between 1 and 7.
pub fn rational(rng: &mut impl Rng, range: i64) -> Coord {
    let den = rng.random_range(1..=7);
    Coord::ratio(rng.random_range(-range * den..=range * den), den)
}

pub fn rational_point(rng: &mut impl Rng, range: i64) -> Point {
    Point::new(rational(rng, range), rational(rng, range))
}

pub fn int_point(rng: &mut impl Rng, range: i64) -> Point {
    Point::from_ints(rng.random_range(-range..=range), rng.random_range(-range..=range))
}

pub fn boundary(size: i64) -> [Point; 3] {
    [Point::from_ints(-size, -size), Point::from_ints(size, -size), Point::from_ints(0, size)]
}

/// `n` interior points strictly inside [`boundary`] with no duplicates, no
/// collinear triples and no cocircular quadruples among all `n + 3` points.
/// Sets of up to 25 points use non-integer rationals half of the time.
pub fn general_position_set(rng: &mut impl Rng, n: usize, size: i64) -> PointSet {
    points_inside(rng, n, size, true)
}

/// Like [`general_position_set`], with the quartic cocircular scan optional.
pub fn points_inside(rng: &mut impl Rng, n: usize, size: i64, cocircular: bool) -> PointSet {
    let rational_coords = n <= 25 && rng.random_bool(0.5);
    let b = boundary(size);
    loop {
        let mut pts: Vec<Point> = b.to_vec();
        while pts.len() < n + 3 {
            let p = if rational_coords { rational_point(rng, size) } else { int_point(rng, size) };
            let inside = ccw(&b[0], &b[1], &p).is_positive()
                && ccw(&b[1], &b[2], &p).is_positive()
                && ccw(&b[2], &b[0], &p).is_positive();
            if !inside || pts.contains(&p) {
                continue;
            }
            let collinear = (0..pts.len()).any(|i| (i + 1..pts.len()).any(|j| ccw(&pts[i], &pts[j], &p).is_zero()));
            if !collinear {
                pts.push(p);
            }
        }
        let ps = PointSet::new(b.clone(), pts.split_off(3));
        if verify::general_position(&ps, cocircular, Execution::default()).passed() {
            return ps;
        }
    }
}

/// The free map read literally: every `α_k` image is found by scanning the
/// constructor list, following stored links back to the start of a path
/// when a dart has no stored successor.
pub struct NaiveMap<'a> {
    constructors: &'a [Constructor],
}

impl<'a> NaiveMap<'a> {
    pub fn new(fm: &'a FreeMap) -> Self {
        NaiveMap { constructors: fm.constructors() }
    }

    pub fn darts(&self) -> Vec<DartId> {
        self.constructors
            .iter()
            .filter_map(|c| match c {
                Constructor::InsertDart { dart, .. } => Some(*dart),
                _ => None,
            })
            .collect()
    }

    pub fn location(&self, d: DartId) -> Option<&Point> {
        self.constructors.iter().find_map(|c| match c {
            Constructor::InsertDart { dart, location } if *dart == d => Some(location),
            _ => None,
        })
    }

    pub fn succ(&self, k: Dim, d: DartId) -> Option<DartId> {
        self.constructors.iter().find_map(|c| match c {
            Constructor::AddLink(l) if l.dim == k && l.source == d => Some(l.target),
            _ => None,
        })
    }

    pub fn pred(&self, k: Dim, d: DartId) -> Option<DartId> {
        self.constructors.iter().find_map(|c| match c {
            Constructor::AddLink(l) if l.dim == k && l.target == d => Some(l.source),
            _ => None,
        })
    }

    fn top(&self, k: Dim, d: DartId) -> DartId {
        match self.pred(k, d) {
            Some(x) => self.top(k, x),
            None => d,
        }
    }

    fn bottom(&self, k: Dim, d: DartId) -> DartId {
        match self.succ(k, d) {
            Some(y) => self.bottom(k, y),
            None => d,
        }
    }

    pub fn alpha(&self, k: Dim, d: DartId) -> DartId {
        self.succ(k, d).unwrap_or_else(|| self.top(k, d))
    }

    pub fn alpha_inv(&self, k: Dim, d: DartId) -> DartId {
        self.pred(k, d).unwrap_or_else(|| self.bottom(k, d))
    }

    pub fn phi(&self, d: DartId) -> DartId {
        self.alpha_inv(Dim::One, self.alpha_inv(Dim::Zero, d))
    }

    /// Whether `k`-linking `x` to `y` satisfies the link precondition.
    pub fn link_allowed(&self, k: Dim, x: DartId, y: DartId) -> bool {
        let known = self.darts();
        known.contains(&x)
            && known.contains(&y)
            && self.succ(k, x).is_none()
            && self.pred(k, y).is_none()
            && self.alpha(k, x) != y
    }
}

/// A random valid free map: darts `1..=n` at random points, then up to
/// `attempts` random links kept only when the naive precondition allows
/// them. Darts and links are interleaved.
pub fn random_free_map(rng: &mut impl Rng, n: u32, attempts: usize) -> FreeMap {
    let mut fm = FreeMap::new();
    let mut inserted = 0u32;
    let mut tries = 0;
    while inserted < n || tries < attempts {
        if inserted < n && (inserted < 2 || rng.random_ratio(1, 3) || tries >= attempts) {
            inserted += 1;
            fm.insert_dart(inserted, int_point(rng, 20));
            continue;
        }
        tries += 1;
        let k = if rng.random_bool(0.5) { Dim::Zero } else { Dim::One };
        let x = DartId::new(rng.random_range(1..=inserted));
        let y = DartId::new(rng.random_range(1..=inserted));
        if NaiveMap::new(&fm).link_allowed(k, x, y) {
            fm.add_link(k, x, y);
        }
    }
    fm
}

/// Orbit counts computed by brute force from the naive permutations.
pub fn naive_orbit_count(nm: &NaiveMap<'_>, step: impl Fn(DartId) -> DartId) -> usize {
    let mut seen = HashSet::new();
    let mut count = 0;
    for d in nm.darts() {
        if seen.contains(&d) {
            continue;
        }
        count += 1;
        let mut e = d;
        loop {
            seen.insert(e);
            e = step(e);
            if e == d {
                break;
            }
        }
    }
    count
}
