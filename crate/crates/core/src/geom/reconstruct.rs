//! Embedding a realizable integer distance matrix into the normalized
//! lattice model.
//!
//! Point 0 is anchored at the origin and the point nearest to it at
//! `(M, 0)`. Every other coordinate then follows from the law-of-cosines
//! identity `x_i = (d_i0^2 + M^2 - d_i1^2) / 2M`, and the height satisfies
//! `m * t_i^2 = d_i0^2 - x_i^2` with `m` the common squarefree part of the
//! extracted values. Signs of `t_i` are fixed against the lowest-index
//! point that leaves the axis.

use super::{dist2, verify_ids, DistanceMatrix, GeomError, NormalizedPoint, PointSet};
use crate::exactmath::{rat_int, squarefree_decomp_big, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Reconstructs a [`PointSet`] whose pairwise distances reproduce `matrix`
/// exactly; rejects non-realizable inputs with the violating index.
pub fn reconstruct_from_distances(matrix: &DistanceMatrix) -> Result<PointSet, GeomError> {
    let n = matrix.n();
    if n == 0 {
        return Err(GeomError::TooFewPoints(1));
    }
    if n == 1 {
        return PointSet::new(1, vec![NormalizedPoint::origin()]);
    }

    // Nearest point to the anchor, lowest index on ties.
    let near = (1..n)
        .min_by_key(|&i| (matrix.get(0, i), i))
        .expect("n >= 2");
    let m_dist = BigInt::from(matrix.get(0, near));
    let two_m = Rat::from_integer(2 * &m_dist);

    let mut xs: Vec<Rat> = Vec::with_capacity(n);
    for i in 0..n {
        if i == 0 {
            xs.push(rat_int(0));
        } else if i == near {
            xs.push(Rat::from_integer(m_dist.clone()));
        } else {
            let d0 = BigInt::from(matrix.get(i, 0));
            let d1 = BigInt::from(matrix.get(i, near));
            let num = &d0 * &d0 + &m_dist * &m_dist - &d1 * &d1;
            xs.push(Rat::from_integer(num) / &two_m);
        }
    }

    // Extract m and |t_i| from d_i0^2 = x_i^2 + m t_i^2.
    let mut m: Option<u64> = None;
    let mut heights: Vec<Rat> = Vec::with_capacity(n);
    for i in 0..n {
        let d0 = BigInt::from(matrix.get(i, 0));
        let val = Rat::from_integer(&d0 * &d0) - &xs[i] * &xs[i];
        if val.is_negative() {
            return Err(GeomError::NegativeHeight(i));
        }
        if val.is_zero() {
            heights.push(rat_int(0));
            continue;
        }
        // val = p/q with q > 0; val = (s^2 f) / q^2 * q / ... : write
        // sqrt(val) = sqrt(p q) / q = s sqrt(f) / q.
        let pq = val.numer() * val.denom();
        let (s, f) = squarefree_decomp_big(&pq)?;
        match m {
            None => m = Some(f),
            Some(expected) if expected != f => {
                return Err(GeomError::InconsistentM {
                    index: i,
                    found: f,
                    expected,
                })
            }
            _ => {}
        }
        heights.push(Rat::new(s, val.denom().clone()));
    }
    // Fully collinear inputs leave m undetermined; use 1 by convention.
    let m = m.unwrap_or(1);

    // Fix signs against the lowest-index point off the axis.
    let mut points: Vec<NormalizedPoint> = Vec::with_capacity(n);
    let mut anchor3: Option<usize> = None;
    for i in 0..n {
        let t = if heights[i].is_zero() {
            rat_int(0)
        } else {
            match anchor3 {
                None => {
                    anchor3 = Some(i);
                    heights[i].clone()
                }
                Some(a) => {
                    let target =
                        Rat::from_integer(BigInt::from(matrix.get(i, a)).pow(2));
                    let plus = NormalizedPoint::new(xs[i].clone(), heights[i].clone());
                    let minus = NormalizedPoint::new(xs[i].clone(), -heights[i].clone());
                    if dist2(&plus, &points[a], m) == target {
                        heights[i].clone()
                    } else if dist2(&minus, &points[a], m) == target {
                        -heights[i].clone()
                    } else {
                        return Err(GeomError::SignAssignment(i));
                    }
                }
            }
        };
        points.push(NormalizedPoint::new(xs[i].clone(), t));
    }

    // Lattice membership: x_i, t_i in (1/2M) Z.
    for (i, p) in points.iter().enumerate() {
        if !(&p.x * &two_m).is_integer() || !(&p.t * &two_m).is_integer() {
            return Err(GeomError::OffLattice(i));
        }
    }

    let set = PointSet::new(m, points)?;

    // The reconstruction is only accepted if it reproduces the input
    // matrix exactly.
    let cert = verify_ids(&set)?;
    for i in 0..n {
        for j in 0..n {
            if cert.distances[i][j] != matrix.get(i, j) {
                return Err(GeomError::NotRealizable(i, j));
            }
        }
    }
    Ok(set)
}
