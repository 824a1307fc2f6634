//! Small hand-built maps used by the tests, benches and documentation.

use crate::builder::from_faces;
use crate::delaunay::TriMap;
use crate::geometry::Point;
use crate::hypermap::Hypermap;

/// The four points of the flip example: edge `pq` with `r` above and `s`
/// below; `s` lies inside the circumcircle of `(p, q, r)`.
#[derive(Clone, Debug)]
pub struct FlipQuad {
    pub p: Point,
    pub q: Point,
    pub r: Point,
    pub s: Point,
}

impl FlipQuad {
    pub fn standard() -> Self {
        FlipQuad {
            p: Point::from_ints(0, 0),
            q: Point::from_ints(4, 0),
            r: Point::from_ints(2, 3),
            s: Point::from_ints(2, -1),
        }
    }

    fn points(&self) -> Vec<Point> {
        vec![self.p.clone(), self.q.clone(), self.r.clone(), self.s.clone()]
    }
}

/// Six darts on `(0,0), (1,0), (0,1)`: `α₀ = (1 2)(3 4)(5 6)`,
/// `α₁ = (1 6)(2 3)(4 5)`, inner face `(1 3 5)`, outer face `(2 6 4)`.
pub fn single_triangle() -> Hypermap {
    crate::builder::triangle_map(&Point::from_ints(0, 0), &Point::from_ints(1, 0), &Point::from_ints(0, 1))
}

/// Triangles `(p, q, r)` and `(q, p, s)` with a quadrangular outer face.
/// Dart 1 runs from `p` to `q`, dart 4 from `q` to `p`.
pub fn two_triangles() -> (Hypermap, FlipQuad) {
    let quad = FlipQuad::standard();
    let m = from_faces(&quad.points(), &[vec![0, 1, 2], vec![1, 0, 3], vec![0, 2, 1, 3]]).expect("valid faces");
    (m, quad)
}

/// The flip example inside the enclosing triangle `(-20,-20), (24,-20),
/// (2,30)`: a well-embedded triangulation whose only illegal edge is `pq`
/// (darts 1 and 4). One flip makes it Delaunay.
pub fn running_example() -> (TriMap, FlipQuad) {
    let quad = FlipQuad::standard();
    let mut pts = quad.points();
    pts.extend([Point::from_ints(-20, -20), Point::from_ints(24, -20), Point::from_ints(2, 30)]);
    let (p, q, r, s, a, b, c) = (0, 1, 2, 3, 4, 5, 6);
    let faces = vec![
        vec![p, q, r],
        vec![q, p, s],
        vec![p, c, a],
        vec![b, s, a],
        vec![s, p, a],
        vec![p, r, c],
        vec![q, s, b],
        vec![c, q, b],
        vec![r, q, c],
        vec![a, c, b],
    ];
    let m = from_faces(&pts, &faces).expect("valid faces");
    (TriMap::new(m).expect("well-embedded"), quad)
}
