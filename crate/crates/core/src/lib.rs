//! Exact-arithmetic toolkit for integer distance sets in the plane.
//!
//! A planar point set is an *integer distance set* when the Euclidean
//! distance between every pair of its points is an integer. Such sets
//! embed, after rotation, in a lattice of the form
//! `{(x, y*sqrt(m)) : x, y in (1/2M) Z}` for a squarefree `m`, and this
//! crate works exclusively in that normalized model so that every
//! predicate is decided in exact rational arithmetic.
//!
//! The crate is organized around that pipeline:
//!
//! * [`exactmath`] — big rationals, quadratic-field elements `a + b*sqrt(d)`,
//!   factorization, divisor counts, Legendre symbols, and representation
//!   counts for `x^2 + D*y^2 = M`.
//! * [`geom`] — distances, collinearity/concyclicity predicates,
//!   circumradii, and reconstruction of coordinates from a distance matrix.
//! * [`construct`] — generators for the classical families (collinear plus
//!   apex, concyclic from Pythagorean angles), transforms, and fixtures.
//! * [`bounds`] — divisor audits for collinear configurations, circle
//!   radius canonicalization, Legendre splitting, circle capacities, and
//!   the large-radius arc check.
//! * [`varieties`] — grlex Gröbner machinery for the distance varieties,
//!   fiber and singular-point counts, auxiliary polynomial expansions,
//!   admissible point selection, rational curve fitting, and numeric
//!   monodromy continuation.
//! * [`search`] — bounded exhaustive search for integer distance sets via
//!   two-anchor candidate enumeration and branch-and-bound maximum clique.
//! * [`classify`] — structure witnesses (best covering line/circle) and
//!   the no-3-collinear/no-4-concyclic admissibility predicate.
//! * [`io`] — the JSON interchange formats shared with the CLI.

pub mod bounds;
pub mod classify;
pub mod construct;
pub mod exactmath;
pub mod geom;
pub mod io;
pub mod search;
pub mod varieties;

pub use exactmath::Rat;
pub use geom::{NormalizedPoint, PointSet};
