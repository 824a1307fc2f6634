//! Knuth's orientation axioms and the exchange property as checkable
//! implications. Each function returns `true` when the implication holds
//! for the given points, including the vacuous case where a hypothesis
//! fails.

use super::{ccw, in_circle, Point};

/// Cyclic invariance: `ccw(p,q,r) ⇒ ccw(q,r,p)`.
pub fn cyclic(p: &Point, q: &Point, r: &Point) -> bool {
    !ccw(p, q, r).is_positive() || ccw(q, r, p).is_positive()
}

/// Antisymmetry of the sign: `ccw(p,q,r) = -ccw(q,p,r)`.
pub fn antisymmetric(p: &Point, q: &Point, r: &Point) -> bool {
    ccw(p, q, r) == -ccw(q, p, r)
}

/// Hypotheses of the fifth axiom.
pub fn fifth_hypotheses(p: &Point, q: &Point, r: &Point, s: &Point, t: &Point) -> bool {
    ccw(q, p, r).is_positive()
        && ccw(q, p, s).is_positive()
        && ccw(q, p, t).is_positive()
        && ccw(q, r, s).is_positive()
        && ccw(q, s, t).is_positive()
}

/// Fifth axiom: `ccw(q,p,r) ∧ ccw(q,p,s) ∧ ccw(q,p,t) ∧ ccw(q,r,s) ∧
/// ccw(q,s,t) ⇒ ccw(q,r,t)`.
pub fn fifth(p: &Point, q: &Point, r: &Point, s: &Point, t: &Point) -> bool {
    !fifth_hypotheses(p, q, r, s, t) || ccw(q, r, t).is_positive()
}

/// Hypotheses of the exchange property: two counter-clockwise triangles
/// `(p,q,r)` and `(q,p,s)` sharing `pq`, with `s` strictly inside the
/// circumcircle of `(p,q,r)`.
pub fn exchange_hypotheses(p: &Point, q: &Point, r: &Point, s: &Point) -> bool {
    ccw(p, q, r).is_positive() && ccw(q, p, s).is_positive() && in_circle(p, q, r, s).is_positive()
}

/// Exchange: under [`exchange_hypotheses`], the flipped triangles
/// `(r,s,q)` and `(s,r,p)` are counter-clockwise.
pub fn exchange(p: &Point, q: &Point, r: &Point, s: &Point) -> bool {
    !exchange_hypotheses(p, q, r, s) || (ccw(r, s, q).is_positive() && ccw(s, r, p).is_positive())
}
