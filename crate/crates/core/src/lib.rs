//! Plane triangulations as combinatorial hypermaps, edge-flip surgery and
//! the naive Delaunay algorithm, all over exact rational coordinates.
//!
//! A triangulation is a [`Hypermap`]: darts with two permutations, `α₀`
//! pairing the two darts of each edge and `α₁` cycling the darts around
//! each vertex; faces are the orbits of `φ = α₁⁻¹ ∘ α₀⁻¹`. Maps are built
//! from a free constructor sequence whose preconditions are checked one by
//! one. [`delaunay()`] flips illegal edges until none remains; every flip
//! strictly lowers the volume under the lifted triangulation.
//!
//! ```
//! use flipmap::{builder, delaunay, geometry::Point, verify, exec::Execution};
//!
//! let ps = builder::PointSet::new(
//!     [Point::from_ints(0, 0), Point::from_ints(100, 0), Point::from_ints(0, 100)],
//!     vec![Point::from_ints(10, 10), Point::from_ints(40, 30), Point::from_ints(20, 50)],
//! );
//! let start = builder::initial_triangulation(&ps).unwrap();
//! let (done, trace) = delaunay::delaunay(&start, None).unwrap();
//! assert!(delaunay::no_dart_illegal(&done));
//! assert!(trace.is_strictly_decreasing());
//! assert!(verify::delaunay_oracle(&done, Execution::default()).passed());
//! ```

pub mod builder;
pub mod delaunay;
pub mod exec;
pub mod fixtures;
pub mod geometry;
pub mod hypermap;
pub mod io;
pub mod surgery;
pub mod svg;
pub mod verify;

pub use delaunay::{delaunay, FlipEvent, FlipTrace, TriMap};
pub use geometry::{Coord, Point};
pub use hypermap::{build_map, Census, DartId, Dim, FreeMap, Hypermap};
