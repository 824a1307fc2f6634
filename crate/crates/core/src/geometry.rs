//! Exact planar geometry: rational coordinates, the orientation and
//! in-circle determinants, the paraboloid lift and the lifted volumes that
//! drive the termination measure.
//!
//! Every value here is exact. The sign predicates take an `i128` shortcut
//! when all inputs are small integers and fall back to arbitrary-precision
//! rationals otherwise; both paths compute the same determinant.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub mod axioms;

/// Largest magnitude for which a coordinate takes the `i128` path.
///
/// With |v| < 2^24 every translated in-circle term stays below 2^104.
const SMALL_LIMIT: i64 = 1 << 24;

/// An exact rational coordinate, always kept in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coord(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseCoordError {
    #[error("empty coordinate literal")]
    Empty,
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
}

impl Coord {
    pub fn zero() -> Self {
        Coord(BigRational::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Coord(BigRational::from_integer(BigInt::from(v)))
    }

    /// `numer / denom`, or `None` when the denominator is zero.
    pub fn new(numer: BigInt, denom: BigInt) -> Option<Self> {
        if denom.is_zero() {
            None
        } else {
            Some(Coord(BigRational::new(numer, denom)))
        }
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        Coord::new(numer.into(), denom.into()).expect("nonzero denominator")
    }

    pub fn from_rational(r: BigRational) -> Self {
        Coord(r)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> Orientation {
        Orientation::from_ordering(self.0.cmp(&BigRational::zero()))
    }

    pub fn abs(&self) -> Self {
        Coord(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// The integer value if this is an integer of magnitude below the
    /// small-integer limit.
    fn small_int(&self) -> Option<i64> {
        if !self.0.is_integer() {
            return None;
        }
        let v = self.0.numer().to_i64()?;
        (v.abs() < SMALL_LIMIT).then_some(v)
    }

    /// Compact literal: `n` for integers, `n/d` otherwise. This is the form
    /// used inside map files.
    pub fn to_literal(&self) -> String {
        if self.0.is_integer() {
            self.0.numer().to_string()
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }

    /// Decimal rendering rounded (half away from zero) to `sig` significant
    /// digits, computed exactly.
    pub fn to_decimal(&self, sig: usize) -> String {
        assert!(sig > 0);
        if self.0.is_zero() {
            return "0".to_string();
        }
        let negative = self.0.is_negative();
        let mag = self.0.abs();
        let ten = BigRational::from_integer(BigInt::from(10));

        // exponent e with 10^e <= mag < 10^(e+1)
        let mut exp: i64 = 0;
        let mut scale = BigRational::one();
        if mag >= scale {
            while mag >= &scale * &ten {
                scale = &scale * &ten;
                exp += 1;
            }
        } else {
            while mag < scale {
                scale = &scale / &ten;
                exp -= 1;
            }
        }

        // digits = round(mag * 10^(sig-1-exp))
        let shift = sig as i64 - 1 - exp;
        let scaled = if shift >= 0 { &mag * pow10(shift as u32) } else { &mag / pow10((-shift) as u32) };
        let mut digits = round_half_away(&scaled);
        let mut shift = shift;
        if digits == pow10_int(sig as u32) {
            // rounding carried into a new leading digit
            digits /= 10;
            shift -= 1;
        }

        let text = digits.to_string();
        let body = if shift <= 0 {
            let mut s = text;
            s.extend(std::iter::repeat_n('0', (-shift) as usize));
            s
        } else {
            let shift = shift as usize;
            let (int_part, frac_part) = if text.len() > shift {
                let (a, b) = text.split_at(text.len() - shift);
                (a.to_string(), b.to_string())
            } else {
                let mut frac = "0".repeat(shift - text.len());
                frac.push_str(&text);
                ("0".to_string(), frac)
            };
            let frac_part = frac_part.trim_end_matches('0');
            if frac_part.is_empty() {
                int_part
            } else {
                format!("{int_part}.{frac_part}")
            }
        };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }
}

fn pow10(n: u32) -> BigRational {
    BigRational::from_integer(pow10_int(n))
}

fn pow10_int(n: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), n as usize)
}

fn round_half_away(r: &BigRational) -> BigInt {
    let floor = r.floor();
    let frac = r - &floor;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if frac >= half {
        floor.to_integer() + 1
    } else {
        floor.to_integer()
    }
}

impl fmt::Display for Coord {
    /// Always `num/den`, e.g. `0/1`, `-8/3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl FromStr for Coord {
    type Err = ParseCoordError;

    /// Accepts integers (`-3`), finite decimals (`0.25`, `-.5`) parsed
    /// exactly, and fractions (`num/den`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseCoordError::Empty);
        }
        let invalid = || ParseCoordError::Invalid(s.to_string());

        if let Some((num, den)) = s.split_once('/') {
            let num = parse_int(num).ok_or_else(invalid)?;
            if den.starts_with(['+', '-']) {
                return Err(invalid());
            }
            let den = parse_int(den).ok_or_else(invalid)?;
            return Coord::new(num, den).ok_or_else(|| ParseCoordError::ZeroDenominator(s.into()));
        }

        if let Some((int_part, frac_part)) = s.split_once('.') {
            let (negative, int_digits) = split_sign(int_part);
            if frac_part.is_empty() || !is_digits(frac_part) {
                return Err(invalid());
            }
            if !int_digits.is_empty() && !is_digits(int_digits) {
                return Err(invalid());
            }
            let mut all = String::with_capacity(int_digits.len() + frac_part.len());
            all.push_str(int_digits);
            all.push_str(frac_part);
            let mut numer: BigInt = all.parse().map_err(|_| invalid())?;
            if negative {
                numer = -numer;
            }
            let denom = pow10_int(frac_part.len() as u32);
            return Ok(Coord(BigRational::new(numer, denom)));
        }

        let v = parse_int(s).ok_or_else(invalid)?;
        Ok(Coord(BigRational::from_integer(v)))
    }
}

fn split_sign(s: &str) -> (bool, &str) {
    if let Some(rest) = s.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = s.strip_prefix('+') {
        (false, rest)
    } else {
        (false, s)
    }
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn parse_int(s: &str) -> Option<BigInt> {
    let (negative, digits) = split_sign(s);
    if !is_digits(digits) {
        return None;
    }
    let v: BigInt = digits.parse().ok()?;
    Some(if negative { -v } else { v })
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Coord> for &Coord {
            type Output = Coord;
            fn $method(self, rhs: &Coord) -> Coord {
                Coord($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Coord> for Coord {
            type Output = Coord;
            fn $method(self, rhs: Coord) -> Coord {
                Coord($trait::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl std::ops::Div<&Coord> for &Coord {
    type Output = Coord;
    /// Panics on division by zero.
    fn div(self, rhs: &Coord) -> Coord {
        Coord(&self.0 / &rhs.0)
    }
}

impl Neg for Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        Coord(-self.0)
    }
}

impl std::iter::Sum for Coord {
    fn sum<I: Iterator<Item = Coord>>(iter: I) -> Coord {
        iter.fold(Coord::zero(), |acc, c| acc + c)
    }
}

impl From<i64> for Coord {
    fn from(v: i64) -> Self {
        Coord::from_int(v)
    }
}

/// A point of the plane with exact coordinates. Equality, ordering and
/// hashing use the coordinates only; ordering is lexicographic on `(x, y)`.
#[derive(Clone)]
pub struct Point {
    x: Coord,
    y: Coord,
    small: Option<(i64, i64)>,
}

impl Point {
    pub fn new(x: Coord, y: Coord) -> Self {
        let small = x.small_int().zip(y.small_int());
        Point { x, y, small }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Coord::from_int(x), Coord::from_int(y))
    }

    pub fn x(&self) -> &Coord {
        &self.x
    }

    pub fn y(&self) -> &Coord {
        &self.y
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y
    }
}

impl Eq for Point {}

impl Hash for Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.x.hash(state);
        self.y.hash(state);
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x.to_literal(), self.y.to_literal())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A point of space, usually the image of a plane point on the paraboloid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LiftedPoint {
    pub x: Coord,
    pub y: Coord,
    pub z: Coord,
}

impl LiftedPoint {
    pub fn new(x: Coord, y: Coord, z: Coord) -> Self {
        LiftedPoint { x, y, z }
    }

    /// The point itself at height zero.
    pub fn on_base(p: &Point) -> Self {
        LiftedPoint::new(p.x.clone(), p.y.clone(), Coord::zero())
    }
}

/// Sign of an orientation-style determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Negative,
    Zero,
    Positive,
}

impl Orientation {
    pub fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Orientation::Negative,
            Ordering::Equal => Orientation::Zero,
            Ordering::Greater => Orientation::Positive,
        }
    }

    fn from_i128(v: i128) -> Self {
        Orientation::from_ordering(v.cmp(&0))
    }

    pub fn is_positive(self) -> bool {
        self == Orientation::Positive
    }

    pub fn is_negative(self) -> bool {
        self == Orientation::Negative
    }

    pub fn is_zero(self) -> bool {
        self == Orientation::Zero
    }
}

impl Neg for Orientation {
    type Output = Orientation;
    fn neg(self) -> Orientation {
        match self {
            Orientation::Negative => Orientation::Positive,
            Orientation::Zero => Orientation::Zero,
            Orientation::Positive => Orientation::Negative,
        }
    }
}

fn det3(m: [[&Coord; 3]; 3]) -> Coord {
    let minor = |a: &Coord, b: &Coord, c: &Coord, d: &Coord| &(a * d) - &(b * c);
    let t0 = m[0][0] * &minor(m[1][1], m[1][2], m[2][1], m[2][2]);
    let t1 = m[0][1] * &minor(m[1][0], m[1][2], m[2][0], m[2][2]);
    let t2 = m[0][2] * &minor(m[1][0], m[1][1], m[2][0], m[2][1]);
    &(&t0 - &t1) + &t2
}

fn det3_i128(m: [[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// `det[[xp,yp,1],[xq,yq,1],[xr,yr,1]]`, twice the signed area of `(p,q,r)`.
pub fn ccw_det(p: &Point, q: &Point, r: &Point) -> Coord {
    let qx = &q.x - &p.x;
    let qy = &q.y - &p.y;
    let rx = &r.x - &p.x;
    let ry = &r.y - &p.y;
    &(&qx * &ry) - &(&qy * &rx)
}

/// Orientation of the triple; `Positive` means counter-clockwise.
pub fn ccw(p: &Point, q: &Point, r: &Point) -> Orientation {
    if let (Some(a), Some(b), Some(c)) = (p.small, q.small, r.small) {
        let (qx, qy) = ((b.0 - a.0) as i128, (b.1 - a.1) as i128);
        let (rx, ry) = ((c.0 - a.0) as i128, (c.1 - a.1) as i128);
        return Orientation::from_i128(qx * ry - qy * rx);
    }
    ccw_det(p, q, r).signum()
}

/// The 4×4 in-circle determinant with rows `(x, y, x²+y², 1)` for
/// `p, q, r, s` in that order.
pub fn in_circle_det(p: &Point, q: &Point, r: &Point, s: &Point) -> Coord {
    let row = |a: &Point| {
        let dx = &a.x - &s.x;
        let dy = &a.y - &s.y;
        let lifted = &(&dx * &dx) + &(&dy * &dy);
        [dx, dy, lifted]
    };
    let (a, b, c) = (row(p), row(q), row(r));
    det3([[&a[0], &a[1], &a[2]], [&b[0], &b[1], &b[2]], [&c[0], &c[1], &c[2]]])
}

/// Sign of [`in_circle_det`]. When `ccw(p,q,r)` is positive, `Positive`
/// means `s` is strictly inside the circumcircle of `(p,q,r)`, `Negative`
/// strictly outside and `Zero` cocircular.
pub fn in_circle(p: &Point, q: &Point, r: &Point, s: &Point) -> Orientation {
    if let (Some(a), Some(b), Some(c), Some(d)) = (p.small, q.small, r.small, s.small) {
        let row = |u: (i64, i64)| {
            let dx = (u.0 - d.0) as i128;
            let dy = (u.1 - d.1) as i128;
            [dx, dy, dx * dx + dy * dy]
        };
        return Orientation::from_i128(det3_i128([row(a), row(b), row(c)]));
    }
    in_circle_det(p, q, r, s).signum()
}

/// Projection onto the paraboloid `z = x² + y²`.
pub fn lift(p: &Point) -> LiftedPoint {
    let z = &(&p.x * &p.x) + &(&p.y * &p.y);
    LiftedPoint::new(p.x.clone(), p.y.clone(), z)
}

/// The signed 4×4 determinant with rows `(x, y, z, 1)`; six times the
/// signed volume of the tetrahedron `(a, b, c, d)`.
pub fn tetra_det(a: &LiftedPoint, b: &LiftedPoint, c: &LiftedPoint, d: &LiftedPoint) -> Coord {
    let row = |u: &LiftedPoint| [&u.x - &d.x, &u.y - &d.y, &u.z - &d.z];
    let (ra, rb, rc) = (row(a), row(b), row(c));
    det3([[&ra[0], &ra[1], &ra[2]], [&rb[0], &rb[1], &rb[2]], [&rc[0], &rc[1], &rc[2]]])
}

/// Signed volume of the truncated prism between the plane triangle
/// `(p, q, r)` and its lifted copy, as a sum of three tetrahedra.
///
/// With `P̂, Q̂, R̂` the lifted corners and `p, q, r` the base corners the
/// tetrahedra are `(R̂; p, q, r)`, `(Q̂; p, q, R̂)` and `(P̂; p, Q̂, R̂)`,
/// each listed apex first so that a counter-clockwise base gives a
/// non-negative volume. Agrees exactly with [`triangle_lift_volume_closed`].
pub fn triangle_lift_volume(p: &Point, q: &Point, r: &Point) -> Coord {
    let (bp, bq, br) = (LiftedPoint::on_base(p), LiftedPoint::on_base(q), LiftedPoint::on_base(r));
    let (lp, lq, lr) = (lift(p), lift(q), lift(r));
    let sum = tetra_det(&lr, &bp, &bq, &br) + tetra_det(&lq, &bp, &bq, &lr) + tetra_det(&lp, &bp, &lq, &lr);
    &sum / &Coord::from_int(6)
}

/// `area(p,q,r) · (ẑp + ẑq + ẑr) / 3` with signed area.
pub fn triangle_lift_volume_closed(p: &Point, q: &Point, r: &Point) -> Coord {
    if let (Some(a), Some(b), Some(c)) = (p.small, q.small, r.small) {
        let (qx, qy) = ((b.0 - a.0) as i128, (b.1 - a.1) as i128);
        let (rx, ry) = ((c.0 - a.0) as i128, (c.1 - a.1) as i128);
        let z = |u: (i64, i64)| (u.0 as i128) * (u.0 as i128) + (u.1 as i128) * (u.1 as i128);
        let six_v = (qx * ry - qy * rx) * (z(a) + z(b) + z(c));
        return Coord::from_rational(BigRational::new(BigInt::from(six_v), BigInt::from(6)));
    }
    let heights = lift(p).z + lift(q).z + lift(r).z;
    &(&ccw_det(p, q, r) * &heights) / &Coord::from_int(6)
}

/// Center of the circle through three non-collinear points.
pub fn circumcenter(p: &Point, q: &Point, r: &Point) -> Option<Point> {
    let d = ccw_det(p, q, r);
    if d.is_zero() {
        return None;
    }
    let (bx, by) = (&q.x - &p.x, &q.y - &p.y);
    let (cx, cy) = (&r.x - &p.x, &r.y - &p.y);
    let b2 = &(&bx * &bx) + &(&by * &by);
    let c2 = &(&cx * &cx) + &(&cy * &cy);
    let two_d = &d * &Coord::from_int(2);
    let ux = &(&(&cy * &b2) - &(&by * &c2)) / &two_d;
    let uy = &(&(&bx * &c2) - &(&cx * &b2)) / &two_d;
    Some(Point::new(&p.x + &ux, &p.y + &uy))
}

/// Squared Euclidean distance.
pub fn distance_sq(p: &Point, q: &Point) -> Coord {
    let dx = &p.x - &q.x;
    let dy = &p.y - &q.y;
    &(&dx * &dx) + &(&dy * &dy)
}
