//! The distance varieties cut out by
//! `Q_{m,P_j}(x, y, d_j) = (x - a_j)^2 + m(y - b_j)^2 - d_j^2`: basis
//! construction, the fiber over the origin, the singular locus, and
//! Jacobian ranks at exact or numeric points.

use super::mpoly::{MPoly, VarSet};
use super::VarietiesError;
use crate::exactmath::{is_squarefree, rat_sqrt, Rat};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

/// Generating set for `X_k` (or `C_k` when `curve` is present) together
/// with its defining data.
#[derive(Debug, Clone)]
pub struct IdealBasis {
    pub vars: VarSet,
    pub m: u64,
    /// The chosen rational points `P_j = (a_j, b_j)`.
    pub points: Vec<(Rat, Rat)>,
    /// The plane-curve polynomial for `C_k`, in the two-variable roster.
    pub curve: Option<MPoly>,
    /// Generators: the embedded curve first when present, then the
    /// distance generators in point order.
    pub gens: Vec<MPoly>,
}

impl IdealBasis {
    pub fn k(&self) -> usize {
        self.points.len()
    }

    /// Product of the generator degrees (the Bézout ceiling for the
    /// degree of the cut-out variety).
    pub fn degree_product(&self) -> u64 {
        self.gens.iter().map(|g| u64::from(g.degree())).product()
    }
}

/// The distance generator `Q_{m,P}(x, y, d_j)` in the given roster.
pub fn distance_generator(vars: VarSet, m: u64, j: usize, a: &Rat, b: &Rat) -> MPoly {
    let x = MPoly::var(vars, vars.x_index());
    let y = MPoly::var(vars, vars.y_index());
    let dj = MPoly::var(vars, j);
    let xa = x.sub(&MPoly::constant(vars, a.clone()));
    let yb = y.sub(&MPoly::constant(vars, b.clone()));
    let m_rat = Rat::from_integer(m.into());
    xa.pow(2)
        .add(&yb.pow(2).scale(&m_rat))
        .sub(&dj.pow(2))
}

fn validate_points(points: &[(Rat, Rat)]) -> Result<(), VarietiesError> {
    for (i, p) in points.iter().enumerate() {
        if p.0.is_zero() && p.1.is_zero() {
            return Err(VarietiesError::OriginPoint(i));
        }
        for (j, q) in points.iter().enumerate().skip(i + 1) {
            if p == q {
                return Err(VarietiesError::DuplicatePoint(i, j));
            }
        }
    }
    Ok(())
}

/// Builds the generating set `{Q_{m,P_j}}` for distinct rational points,
/// none of which is the origin.
pub fn build_xk(m: u64, points: &[(Rat, Rat)]) -> Result<IdealBasis, VarietiesError> {
    if m == 0 || !is_squarefree(m) {
        return Err(VarietiesError::BadM(m));
    }
    validate_points(points)?;
    let vars = VarSet::affine(points.len());
    let gens = points
        .iter()
        .enumerate()
        .map(|(j, (a, b))| distance_generator(vars, m, j, a, b))
        .collect();
    Ok(IdealBasis {
        vars,
        m,
        points: points.to_vec(),
        curve: None,
        gens,
    })
}

/// Value `sign * sqrt(radicand)` with a nonnegative rational radicand;
/// `sign = 0` exactly when the radicand is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HybridScalar {
    pub sign: i8,
    pub radicand: Rat,
}

impl HybridScalar {
    pub fn new(sign: i8, radicand: Rat) -> Self {
        if radicand.is_zero() {
            HybridScalar {
                sign: 0,
                radicand,
            }
        } else {
            debug_assert!(sign == 1 || sign == -1);
            debug_assert!(radicand.is_positive());
            HybridScalar { sign, radicand }
        }
    }

    pub fn zero() -> Self {
        HybridScalar {
            sign: 0,
            radicand: Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// The exact square `sign^2 * radicand`.
    pub fn square(&self) -> Rat {
        if self.is_zero() {
            Rat::zero()
        } else {
            self.radicand.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

/// A point of the variety with rational base coordinates and square-root
/// fiber coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HybridPoint {
    pub x: Rat,
    pub y: Rat,
    pub d: Vec<HybridScalar>,
}

impl HybridPoint {
    pub fn sign_vector(&self) -> Vec<i8> {
        self.d.iter().map(|s| s.sign).collect()
    }
}

/// Either an exact hybrid point or a numeric complex point.
#[derive(Debug, Clone)]
pub enum VarietyPoint {
    Exact(HybridPoint),
    Numeric(Vec<Complex64>),
}

/// The fiber of the variety over `(x, y) = (0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    /// `radicands[j] = a_j^2 + m b_j^2`, the exact value of `d_j^2`.
    pub radicands: Vec<Rat>,
    pub points: Vec<HybridPoint>,
}

impl Fiber {
    pub fn count(&self) -> usize {
        self.points.len()
    }
}

/// Enumerates the `2^k` points `(0, 0, ±sqrt(a_1^2 + m b_1^2), ...)`
/// lying over the origin.
pub fn fiber_over_origin(basis: &IdealBasis) -> Result<Fiber, VarietiesError> {
    if let Some(curve) = &basis.curve {
        if !curve.eval_rat(&[Rat::zero(), Rat::zero()]).is_zero() {
            return Err(VarietiesError::NotOnVariety { gen: 0 });
        }
    }
    let m_rat = Rat::from_integer(basis.m.into());
    let radicands: Vec<Rat> = basis
        .points
        .iter()
        .map(|(a, b)| a * a + &m_rat * b * b)
        .collect();
    // All radicands are positive because no P_j is the origin.
    debug_assert!(radicands.iter().all(Signed::is_positive));
    let k = radicands.len();
    let mut points = Vec::with_capacity(1usize << k);
    for mask in 0..(1u64 << k) {
        let d = radicands
            .iter()
            .enumerate()
            .map(|(j, r)| HybridScalar::new(if mask >> j & 1 == 1 { -1 } else { 1 }, r.clone()))
            .collect();
        points.push(HybridPoint {
            x: Rat::zero(),
            y: Rat::zero(),
            d,
        });
    }
    Ok(Fiber { radicands, points })
}

/// The singular points of `X_k`: exactly the lifts with `(x, y) = P_j`
/// for some `j` (where `d_j = 0`), `k * 2^(k-1)` in total. Every returned
/// point is re-checked to have Jacobian rank below `k`.
pub fn singular_points_xk(basis: &IdealBasis) -> Result<Vec<HybridPoint>, VarietiesError> {
    if basis.curve.is_some() {
        return Err(VarietiesError::RosterMismatch);
    }
    let m_rat = Rat::from_integer(basis.m.into());
    let k = basis.k();
    let mut out = Vec::with_capacity(k << k.saturating_sub(1));
    for j in 0..k {
        let (aj, bj) = &basis.points[j];
        let radicands: Vec<Rat> = basis
            .points
            .iter()
            .map(|(ai, bi)| {
                let dx = aj - ai;
                let dy = bj - bi;
                &dx * &dx + &m_rat * &dy * &dy
            })
            .collect();
        let free: Vec<usize> = (0..k).filter(|&i| i != j).collect();
        for mask in 0..(1u64 << free.len()) {
            let mut d = vec![HybridScalar::zero(); k];
            for (bit, &i) in free.iter().enumerate() {
                let sign = if mask >> bit & 1 == 1 { -1 } else { 1 };
                d[i] = HybridScalar::new(sign, radicands[i].clone());
            }
            let point = HybridPoint {
                x: aj.clone(),
                y: bj.clone(),
                d,
            };
            let report = jacobian(basis, &VarietyPoint::Exact(point.clone()), 0.0)?;
            debug_assert!(report.rank < k, "listed singular point has full rank");
            out.push(point);
        }
    }
    Ok(out)
}

/// Jacobian matrix data at a point of the variety.
#[derive(Debug, Clone)]
pub struct JacobianReport {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// Row index (within the generator list) of each zero row, if any.
    pub zero_rows: Vec<usize>,
}

/// Evaluates the Jacobian of the basis generators at `point` and computes
/// its rank: exactly for hybrid points, by tolerance-thresholded Gaussian
/// elimination for numeric ones. The point must satisfy the generators.
pub fn jacobian(
    basis: &IdealBasis,
    point: &VarietyPoint,
    tol: f64,
) -> Result<JacobianReport, VarietiesError> {
    match point {
        VarietyPoint::Exact(p) => jacobian_exact(basis, p),
        VarietyPoint::Numeric(coords) => jacobian_numeric(basis, coords, tol),
    }
}

fn jacobian_exact(basis: &IdealBasis, p: &HybridPoint) -> Result<JacobianReport, VarietiesError> {
    let k = basis.k();
    if p.d.len() != k {
        return Err(VarietiesError::BadDimension {
            expected: k,
            got: p.d.len(),
        });
    }
    // Exact membership: Q_{m,P_j}(x, y, d_j) = 0 with d_j^2 known exactly.
    let m_rat = Rat::from_integer(basis.m.into());
    for (j, (a, b)) in basis.points.iter().enumerate() {
        let dx = &p.x - a;
        let dy = &p.y - b;
        let value = &dx * &dx + &m_rat * &dy * &dy - p.d[j].square();
        if !value.is_zero() {
            return Err(VarietiesError::NotOnVariety {
                gen: j + usize::from(basis.curve.is_some()),
            });
        }
    }
    if let Some(curve) = &basis.curve {
        if !curve.eval_rat(&[p.x.clone(), p.y.clone()]).is_zero() {
            return Err(VarietiesError::NotOnVariety { gen: 0 });
        }
    }

    // The d-columns of the rows with d_j != 0 form a diagonal block with
    // distinct columns, so the rank splits: those rows are independent,
    // and the remaining rows live entirely in the two base columns.
    let nonzero_d = p.d.iter().filter(|s| !s.is_zero()).count();
    let mut base_rows: Vec<(Rat, Rat)> = Vec::new();
    let mut zero_rows = Vec::new();
    let curve_offset = usize::from(basis.curve.is_some());
    if let Some(curve) = &basis.curve {
        let qx = curve
            .partial(0)
            .eval_rat(&[p.x.clone(), p.y.clone()]);
        let qy = curve
            .partial(1)
            .eval_rat(&[p.x.clone(), p.y.clone()]);
        if qx.is_zero() && qy.is_zero() {
            zero_rows.push(0);
        }
        base_rows.push((qx, qy));
    }
    let two = Rat::from_integer(2.into());
    for (j, (a, b)) in basis.points.iter().enumerate() {
        if p.d[j].is_zero() {
            let row = (&two * (&p.x - a), &two * &m_rat * (&p.y - b));
            if row.0.is_zero() && row.1.is_zero() {
                zero_rows.push(j + curve_offset);
            }
            base_rows.push(row);
        }
    }
    let rank = nonzero_d + rank2(&base_rows);
    Ok(JacobianReport {
        rows: basis.gens.len(),
        cols: basis.vars.len(),
        rank,
        zero_rows,
    })
}

/// Rank of a matrix with two columns over the rationals.
fn rank2(rows: &[(Rat, Rat)]) -> usize {
    let mut first: Option<&(Rat, Rat)> = None;
    for row in rows {
        if row.0.is_zero() && row.1.is_zero() {
            continue;
        }
        match first {
            None => first = Some(row),
            Some(pivot) => {
                if &pivot.0 * &row.1 != &pivot.1 * &row.0 {
                    return 2;
                }
            }
        }
    }
    usize::from(first.is_some())
}

fn jacobian_numeric(
    basis: &IdealBasis,
    coords: &[Complex64],
    tol: f64,
) -> Result<JacobianReport, VarietiesError> {
    let n = basis.vars.len();
    if coords.len() != n {
        return Err(VarietiesError::BadDimension {
            expected: n,
            got: coords.len(),
        });
    }
    let tol = if tol > 0.0 { tol } else { 1e-9 };
    let scale: f64 = coords.iter().map(|c| c.norm()).fold(1.0, f64::max);
    for (g, gen) in basis.gens.iter().enumerate() {
        let value = gen.eval_complex(coords);
        if value.norm() > tol * scale * scale {
            return Err(VarietiesError::NotOnVariety { gen: g });
        }
    }
    let mut matrix: Vec<Vec<Complex64>> = basis
        .gens
        .iter()
        .map(|gen| (0..n).map(|v| gen.partial(v).eval_complex(coords)).collect())
        .collect();
    let zero_rows = matrix
        .iter()
        .enumerate()
        .filter(|(_, row)| row.iter().all(|c| c.norm() <= tol * scale))
        .map(|(i, _)| i)
        .collect();

    // Gaussian elimination with partial pivoting.
    let rows = matrix.len();
    let mut rank = 0usize;
    let mut row = 0usize;
    let norm: f64 = matrix
        .iter()
        .flat_map(|r| r.iter().map(|c| c.norm()))
        .fold(1.0, f64::max);
    for col in 0..n {
        let Some(pivot) = (row..rows)
            .filter(|&r| matrix[r][col].norm() > tol * norm)
            .max_by(|&a, &b| {
                matrix[a][col]
                    .norm()
                    .partial_cmp(&matrix[b][col].norm())
                    .expect("finite norms")
            })
        else {
            continue;
        };
        matrix.swap(row, pivot);
        for r in (row + 1)..rows {
            let factor = matrix[r][col] / matrix[row][col];
            for c in col..n {
                let sub = factor * matrix[row][c];
                matrix[r][c] -= sub;
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    Ok(JacobianReport {
        rows,
        cols: n,
        rank,
        zero_rows,
    })
}
