//! Exact plane geometry over the normalized lattice model.
//!
//! A point is stored as a pair of rationals `(x, t)` and denotes the plane
//! point `(x, t*sqrt(m))` for the ambient squarefree `m` carried by the
//! surrounding [`PointSet`]. Squared distances, collinearity, and
//! concyclicity are all decided in rational arithmetic: the common
//! `sqrt(m)` factor of the second coordinate scales determinants without
//! changing their vanishing.

mod reconstruct;

pub use reconstruct::reconstruct_from_distances;

use crate::exactmath::{
    is_perfect_square, is_squarefree, rat_int, rat_to_int, Rat,
};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("m = {0} must be a positive squarefree integer")]
    BadM(u64),
    #[error("duplicate points at indices {0} and {1}")]
    DuplicatePoints(usize, usize),
    #[error("point set must contain at least {0} points")]
    TooFewPoints(usize),
    #[error("pair ({i}, {j}) has non-square squared distance {dist2}")]
    NonIntegerDistance { i: usize, j: usize, dist2: Rat },
    #[error("distance {0} exceeds the supported integer range")]
    DistanceOverflow(BigInt),
    #[error("distance matrix must be symmetric with zero diagonal")]
    MalformedMatrix,
    #[error("triangle inequality fails on indices ({0}, {1}, {2})")]
    TriangleInequality(usize, usize, usize),
    #[error("degenerate triangle sides ({0}, {1}, {2})")]
    DegenerateTriangle(Rat, Rat, Rat),
    #[error("point {0}: extracted squared height is negative")]
    NegativeHeight(usize),
    #[error("point {index}: squarefree part {found} conflicts with m = {expected}")]
    InconsistentM { index: usize, found: u64, expected: u64 },
    #[error("point {0}: no consistent sign assignment")]
    SignAssignment(usize),
    #[error("point {0}: coordinates leave the (1/2M) lattice")]
    OffLattice(usize),
    #[error("matrix is not realizable in the plane: pair ({0}, {1}) disagrees")]
    NotRealizable(usize, usize),
    #[error("all triples are degenerate")]
    AllDegenerate,
    #[error(transparent)]
    Exact(#[from] crate::exactmath::ExactError),
}

/// The plane point `(x, t*sqrt(m))` for the ambient `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalizedPoint {
    pub x: Rat,
    pub t: Rat,
}

impl NormalizedPoint {
    pub fn new(x: Rat, t: Rat) -> Self {
        NormalizedPoint { x, t }
    }

    pub fn from_ints(x: i64, t: i64) -> Self {
        NormalizedPoint::new(rat_int(x), rat_int(t))
    }

    pub fn origin() -> Self {
        NormalizedPoint::from_ints(0, 0)
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.t.is_zero()
    }
}

impl fmt::Display for NormalizedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.t)
    }
}

/// Total order on points by `(x, t)`, used for canonical set orderings.
pub fn point_cmp(a: &NormalizedPoint, b: &NormalizedPoint) -> Ordering {
    a.x.cmp(&b.x).then_with(|| a.t.cmp(&b.t))
}

/// A finite list of distinct normalized points together with the field
/// discriminant `m`. `min_origin_distance` is the smallest distance from
/// the origin to another point, when the origin belongs to the set and
/// that distance is an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    pub m: u64,
    pub points: Vec<NormalizedPoint>,
    pub min_origin_distance: Option<u64>,
}

impl PointSet {
    pub fn new(m: u64, points: Vec<NormalizedPoint>) -> Result<Self, GeomError> {
        if m == 0 || !is_squarefree(m) {
            return Err(GeomError::BadM(m));
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(GeomError::DuplicatePoints(i, j));
                }
            }
        }
        let min_origin_distance = min_origin_distance(m, &points);
        Ok(PointSet {
            m,
            points,
            min_origin_distance,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn min_origin_distance(m: u64, points: &[NormalizedPoint]) -> Option<u64> {
    let origin = points.iter().find(|p| p.is_origin())?;
    let mut best: Option<u64> = None;
    for p in points {
        if p.is_origin() {
            continue;
        }
        let d2 = dist2(origin, p, m);
        let int = rat_to_int(&d2)?;
        let root = is_perfect_square(&int).ok()??;
        let d = root.to_u64()?;
        best = Some(best.map_or(d, |b| b.min(d)));
    }
    best
}

/// Symmetric matrix of pairwise integer distances with zero diagonal; the
/// triangle inequality is validated on every triple at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    entries: Vec<Vec<u64>>,
}

impl DistanceMatrix {
    pub fn new(entries: Vec<Vec<u64>>) -> Result<Self, GeomError> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(GeomError::MalformedMatrix);
        }
        for i in 0..n {
            if entries[i][i] != 0 {
                return Err(GeomError::MalformedMatrix);
            }
            for j in 0..n {
                if entries[i][j] != entries[j][i] {
                    return Err(GeomError::MalformedMatrix);
                }
                if i != j && entries[i][j] == 0 {
                    return Err(GeomError::DuplicatePoints(i.min(j), i.max(j)));
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    if k == i || k == j {
                        continue;
                    }
                    if entries[i][k] + entries[k][j] < entries[i][j] {
                        return Err(GeomError::TriangleInequality(i, k, j));
                    }
                }
            }
        }
        Ok(DistanceMatrix { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }
}

/// Exact squared Euclidean distance between `(p.x, p.t*sqrt(m))` and
/// `(q.x, q.t*sqrt(m))`.
pub fn dist2(p: &NormalizedPoint, q: &NormalizedPoint, m: u64) -> Rat {
    let dx = &p.x - &q.x;
    let dt = &p.t - &q.t;
    &dx * &dx + Rat::from_integer(m.into()) * &dt * &dt
}

/// Certificate produced by [`verify_ids`]: the full matrix of pairwise
/// integer distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceCertificate {
    pub distances: Vec<Vec<u64>>,
}

impl DistanceCertificate {
    pub fn max_distance(&self) -> u64 {
        self.distances
            .iter()
            .flat_map(|row| row.iter().copied())
            .max()
            .unwrap_or(0)
    }
}

/// Accepts exactly when every pairwise squared distance is the square of a
/// nonnegative integer; on success returns the full distance matrix, on
/// failure the first violating pair.
pub fn verify_ids(set: &PointSet) -> Result<DistanceCertificate, GeomError> {
    let n = set.len();
    if n < 2 {
        return Err(GeomError::TooFewPoints(2));
    }
    let mut distances = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d2 = dist2(&set.points[i], &set.points[j], set.m);
            let int = rat_to_int(&d2).ok_or_else(|| GeomError::NonIntegerDistance {
                i,
                j,
                dist2: d2.clone(),
            })?;
            let root = is_perfect_square(&int)?.ok_or_else(|| GeomError::NonIntegerDistance {
                i,
                j,
                dist2: d2.clone(),
            })?;
            let d = root
                .to_u64()
                .ok_or_else(|| GeomError::DistanceOverflow(root.clone()))?;
            distances[i][j] = d;
            distances[j][i] = d;
        }
    }
    Ok(DistanceCertificate { distances })
}

/// True when the three points lie on a common line: the 3x3 determinant
/// with rows `(x_i, t_i, 1)` vanishes. The shared `sqrt(m)` factor of the
/// second coordinates scales the determinant, so the test is unchanged.
pub fn collinear3(p1: &NormalizedPoint, p2: &NormalizedPoint, p3: &NormalizedPoint) -> bool {
    let lhs = (&p2.x - &p1.x) * (&p3.t - &p1.t);
    let rhs = (&p3.x - &p1.x) * (&p2.t - &p1.t);
    lhs == rhs
}

/// Outcome of the four-point concyclicity determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Concyclicity {
    Concyclic,
    NotConcyclic,
    /// Three of the four points are collinear, so no circle is determined.
    Degenerate,
}

/// Structured concyclicity test: rows `(x^2 + m t^2, x, t, 1)`.
pub fn concyclic4_detailed(
    ps: [&NormalizedPoint; 4],
    m: u64,
) -> Concyclicity {
    for i in 0..4 {
        for j in (i + 1)..4 {
            for k in (j + 1)..4 {
                if collinear3(ps[i], ps[j], ps[k]) {
                    return Concyclicity::Degenerate;
                }
            }
        }
    }
    let mrat = Rat::from_integer(m.into());
    let rows: Vec<[Rat; 4]> = ps
        .iter()
        .map(|p| {
            [
                &p.x * &p.x + &mrat * &p.t * &p.t,
                p.x.clone(),
                p.t.clone(),
                rat_int(1),
            ]
        })
        .collect();
    if det4(&rows).is_zero() {
        Concyclicity::Concyclic
    } else {
        Concyclicity::NotConcyclic
    }
}

/// Total predicate used by batch scans: degenerate quadruples count as not
/// concyclic.
pub fn concyclic4(
    p1: &NormalizedPoint,
    p2: &NormalizedPoint,
    p3: &NormalizedPoint,
    p4: &NormalizedPoint,
    m: u64,
) -> bool {
    concyclic4_detailed([p1, p2, p3, p4], m) == Concyclicity::Concyclic
}

fn det3(r: &[[Rat; 3]; 3]) -> Rat {
    &r[0][0] * (&r[1][1] * &r[2][2] - &r[1][2] * &r[2][1])
        - &r[0][1] * (&r[1][0] * &r[2][2] - &r[1][2] * &r[2][0])
        + &r[0][2] * (&r[1][0] * &r[2][1] - &r[1][1] * &r[2][0])
}

fn det4(rows: &[[Rat; 4]]) -> Rat {
    let mut acc = Rat::zero();
    for col in 0..4 {
        let mut minor: [[Rat; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| Rat::zero()));
        for (mi, row) in rows[1..].iter().enumerate() {
            let mut mj = 0;
            for (cj, val) in row.iter().enumerate() {
                if cj != col {
                    minor[mi][mj] = val.clone();
                    mj += 1;
                }
            }
        }
        let term = &rows[0][col] * det3(&minor);
        if col % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Exact squared circumradius of a triangle with side lengths `d`, `d1`,
/// `d2`, via `(d*d1*d2)^2 / ((d+d1+d2)(d+d1-d2)(d-d1+d2)(-d+d1+d2))`.
pub fn circumradius2(d: &Rat, d1: &Rat, d2: &Rat) -> Result<Rat, GeomError> {
    let degenerate = GeomError::DegenerateTriangle(d.clone(), d1.clone(), d2.clone());
    if !d.is_positive() || !d1.is_positive() || !d2.is_positive() {
        return Err(degenerate);
    }
    let f1 = d + d1 + d2;
    let f2 = d + d1 - d2;
    let f3 = d - d1 + d2;
    let f4 = -d.clone() + d1 + d2;
    if !f2.is_positive() || !f3.is_positive() || !f4.is_positive() {
        return Err(degenerate);
    }
    let num = d * d1 * d2;
    Ok(&num * &num / (f1 * f2 * f3 * f4))
}

/// Maximum pairwise distance of a certified integer distance set.
pub fn diameter(set: &PointSet) -> Result<u64, GeomError> {
    Ok(verify_ids(set)?.max_distance())
}

/// Exact cosine data for an angle: `cos^2` together with the sign of the
/// cosine. Ordered by the size of the angle (smaller angle first), which
/// is the reverse of the cosine order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCos {
    /// Sign of the cosine: -1, 0, or 1.
    pub sign: i8,
    /// The rational value of `cos^2`.
    pub cos2: Rat,
}

impl ExactCos {
    /// Compares by angle: `Less` means a strictly smaller angle.
    pub fn angle_cmp(&self, other: &ExactCos) -> Ordering {
        // Larger cosine = smaller angle.
        match other.sign.cmp(&self.sign) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match self.sign {
            1 => other.cos2.cmp(&self.cos2),
            -1 => self.cos2.cmp(&other.cos2),
            _ => Ordering::Equal,
        }
    }
}

/// Report of the minimal angle over all ordered non-degenerate triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinAngleReport {
    pub cos: ExactCos,
    /// Indices `(i, j, k)` realizing the minimum, with the angle at `j`.
    pub at: (usize, usize, usize),
    /// `sin^2` of the same angle, `1 - cos^2`.
    pub sin2: Rat,
}

/// Exact minimal angle over ordered triples `(P_i, P_j, P_k)` with the
/// angle measured at `P_j`. Triples with angle `0` or `pi` (collinear) are
/// excluded; errors when every triple is degenerate.
pub fn min_angle_cos2(set: &PointSet) -> Result<MinAngleReport, GeomError> {
    let n = set.len();
    if n < 3 {
        return Err(GeomError::TooFewPoints(3));
    }
    let m = Rat::from_integer(set.m.into());
    let mut best: Option<MinAngleReport> = None;
    for j in 0..n {
        for i in 0..n {
            if i == j {
                continue;
            }
            for k in (i + 1)..n {
                if k == j {
                    continue;
                }
                let u = (&set.points[i].x - &set.points[j].x, &set.points[i].t - &set.points[j].t);
                let v = (&set.points[k].x - &set.points[j].x, &set.points[k].t - &set.points[j].t);
                let dot = &u.0 * &v.0 + &m * &u.1 * &v.1;
                let nu = &u.0 * &u.0 + &m * &u.1 * &u.1;
                let nv = &v.0 * &v.0 + &m * &v.1 * &v.1;
                let denom = &nu * &nv;
                if denom.is_zero() {
                    continue;
                }
                let cos2 = &dot * &dot / &denom;
                if cos2 == rat_int(1) {
                    // Angle 0 or pi: the triple is collinear, filtered out.
                    continue;
                }
                let cand = MinAngleReport {
                    sin2: rat_int(1) - &cos2,
                    cos: ExactCos {
                        sign: if dot.is_zero() {
                            0
                        } else if dot.is_positive() {
                            1
                        } else {
                            -1
                        },
                        cos2,
                    },
                    at: (i, j, k),
                };
                best = Some(match best.take() {
                    None => cand,
                    Some(b) => {
                        if cand.cos.angle_cmp(&b.cos) == Ordering::Less {
                            cand
                        } else {
                            b
                        }
                    }
                });
            }
        }
    }
    best.ok_or(GeomError::AllDegenerate)
}
