//! Curve-restricted varieties: the generating set for a plane curve
//! intersected with the distance generators, admissible selection of the
//! anchor points, and rational curve fitting through sampled points.

use super::mpoly::{MPoly, Monomial, VarSet};
use super::quadpoly::QuadPoly;
use super::rpolys::{r_polys, RPolys};
use super::xk::{distance_generator, Fiber, IdealBasis};
use super::VarietiesError;
use crate::exactmath::{is_squarefree, Quad, Rat};
use crate::geom::PointSet;
use num_traits::{One, Signed, Zero};

/// Basis for the curve-restricted variety, with the fiber over the
/// origin when the origin lies on the curve.
#[derive(Debug, Clone)]
pub struct CkBasis {
    pub basis: IdealBasis,
    /// `2^k` lifts of the origin; `None` when the origin is off the
    /// curve (the degree lower-bound witness is then unavailable).
    pub origin_fiber: Option<Fiber>,
    /// Bézout ceiling: the product of the generator degrees.
    pub degree_product: u64,
}

/// Builds `{Q} ∪ {Q_{m,P'_j}}` for a plane curve `Q` and distinct
/// non-origin rational points.
pub fn build_ck(
    curve: &MPoly,
    m: u64,
    points: &[(Rat, Rat)],
) -> Result<CkBasis, VarietiesError> {
    if curve.vars != VarSet::curve() {
        return Err(VarietiesError::RosterMismatch);
    }
    if curve.is_zero() {
        return Err(VarietiesError::ZeroPolynomial);
    }
    if m == 0 || !is_squarefree(m) {
        return Err(VarietiesError::BadM(m));
    }
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
    let k = points.len();
    let vars = VarSet::affine(k);
    let mut gens = vec![curve.embed_curve(k)?];
    for (j, (a, b)) in points.iter().enumerate() {
        gens.push(distance_generator(vars, m, j, a, b));
    }
    let basis = IdealBasis {
        vars,
        m,
        points: points.to_vec(),
        curve: Some(curve.clone()),
        gens,
    };
    let degree_product = basis.degree_product();
    let origin_on_curve = curve.eval_rat(&[Rat::zero(), Rat::zero()]).is_zero();
    let origin_fiber = if origin_on_curve {
        Some(super::xk::fiber_over_origin(&basis)?)
    } else {
        None
    };
    Ok(CkBasis {
        basis,
        origin_fiber,
        degree_product,
    })
}

/// Selection mode: anchor points on the curve (general case) or off it
/// (line/circle case).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionMode {
    OnCurve,
    OffCurve,
}

/// Result of the admissible scan.
#[derive(Debug, Clone)]
pub enum Selection {
    Chosen(SelectionReport),
    /// Fewer candidates than the counting threshold guarantees, or the
    /// greedy scan exhausted the candidates.
    Insufficient { threshold: u64, found: usize },
}

#[derive(Debug, Clone)]
pub struct SelectionReport {
    pub points: Vec<(Rat, Rat)>,
    pub threshold: u64,
    /// Indices of the chosen points within the candidate list.
    pub indices: Vec<usize>,
}

/// Counting threshold above which the scan is guaranteed to succeed:
/// `2 + k(k-1) d^2 + 3d(d-2)` on the curve, `2 + 2k(k-1)` off it.
pub fn selection_threshold(mode: SelectionMode, k: usize, degree: u32) -> u64 {
    let k = k as i128;
    let d = i128::from(degree);
    let value = match mode {
        SelectionMode::OnCurve => 2 + k * (k - 1) * d * d + 3 * d * (d - 2),
        SelectionMode::OffCurve => 2 + 2 * k * (k - 1),
    };
    value.max(0) as u64
}

/// Per-candidate data reused across the filters.
struct Screen {
    m: u64,
    disc: i64,
    curve: MPoly,
    qx: MPoly,
    qy: MPoly,
    rp: Option<RPolys>,
    /// Center of the model circle in off-curve mode.
    center: Option<(Rat, Rat)>,
}

impl Screen {
    fn new(curve: &MPoly, m: u64, mode: SelectionMode) -> Result<Self, VarietiesError> {
        let d = curve.degree();
        let center = match mode {
            SelectionMode::OnCurve => None,
            SelectionMode::OffCurve => match d {
                1 => None,
                2 => Some(circle_center(curve, m).ok_or(VarietiesError::NotLineOrCircle)?),
                _ => return Err(VarietiesError::NotLineOrCircle),
            },
        };
        let rp = (mode == SelectionMode::OnCurve && d >= 3)
            .then(|| r_polys(curve, m))
            .transpose()?;
        Ok(Screen {
            m,
            disc: -(m as i64),
            curve: curve.clone(),
            qx: curve.partial(0),
            qy: curve.partial(1),
            rp,
            center,
        })
    }

    fn quad(&self, r: &Rat) -> Result<Quad, VarietiesError> {
        Ok(Quad::rational(r.clone(), self.disc)?)
    }

    /// `a + sign * i sqrt(m) * b` as an element of `Q(sqrt(-m))`.
    fn conj_coord(&self, a: &Rat, b: &Rat, sign: i8) -> Result<Quad, VarietiesError> {
        let b_signed = if sign >= 0 { b.clone() } else { -b.clone() };
        Ok(Quad::new(a.clone(), b_signed, self.disc)?)
    }

    /// Substitution of the parametrized line `x = x0 + dx s`, `y = y0 + dy s`
    /// into a plane polynomial.
    fn substitute_line(
        &self,
        poly: &MPoly,
        x0: &Quad,
        dx: &Quad,
        y0: &Quad,
        dy: &Quad,
    ) -> Result<QuadPoly, VarietiesError> {
        let xline = QuadPoly::new(self.disc, vec![x0.clone(), dx.clone()])?;
        let yline = QuadPoly::new(self.disc, vec![y0.clone(), dy.clone()])?;
        let mut acc = QuadPoly::zero(self.disc);
        for (mono, c) in poly.terms() {
            let term = xline
                .pow(mono.0[0])?
                .mul(&yline.pow(mono.0[1])?)?
                .scale(&Quad::rational(c.clone(), self.disc)?)?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// True when the isotropic line through `(a, b)` with the given sign
    /// (`x ± i sqrt(m) y` constant) passes through a singular point of
    /// the curve.
    fn line_hits_singular_locus(
        &self,
        a: &Rat,
        b: &Rat,
        sign: i8,
    ) -> Result<bool, VarietiesError> {
        // Parametrize x = c ∓ i sqrt(m) s, y = s for the line
        // x ± i sqrt(m) y = c.
        let c = self.conj_coord(a, b, sign)?;
        let dx = Quad::new(
            Rat::zero(),
            Rat::from_integer(i64::from(-sign).into()),
            self.disc,
        )?;
        let zero = self.quad(&Rat::zero())?;
        let one = self.quad(&Rat::one())?;
        let on_line = |poly: &MPoly| self.substitute_line(poly, &c, &dx, &zero, &one);
        let g1 = on_line(&self.curve)?;
        let g2 = on_line(&self.qx)?;
        let g3 = on_line(&self.qy)?;
        let g = g1.gcd(&g2)?.gcd(&g3)?;
        // Nonconstant gcd has a complex root: a singular point on the line.
        Ok(g.degree().is_some_and(|d| d >= 1))
    }

    /// The intersection multiplicities of the two isotropic lines with
    /// the curve at `(a, b)` itself: the orders of vanishing of
    /// `Q(a ∓ i sqrt(m) s, b + s)` at `s = 0`.
    fn vanishing_orders(&self, a: &Rat, b: &Rat) -> Result<(usize, usize), VarietiesError> {
        let aq = self.quad(a)?;
        let bq = self.quad(b)?;
        let one = self.quad(&Rat::one())?;
        let minus_i = Quad::new(Rat::zero(), Rat::from_integer((-1i64).into()), self.disc)?;
        let plus_i = minus_i.neg();
        let p_plus = self.substitute_line(&self.curve, &aq, &minus_i, &bq, &one)?;
        let p_minus = self.substitute_line(&self.curve, &aq, &plus_i, &bq, &one)?;
        let ord = |p: &QuadPoly| p.vanishing_order_at_zero().unwrap_or(usize::MAX);
        Ok((ord(&p_plus), ord(&p_minus)))
    }

    /// The midpoint-conjugate point of a pair must avoid the curve:
    /// `((a+a')/2 + i sqrt(m)(b-b')/2, (b+b')/2 - i(a-a')/(2 sqrt(m)))`.
    fn midpoint_clear(
        &self,
        p: &(Rat, Rat),
        q: &(Rat, Rat),
    ) -> Result<bool, VarietiesError> {
        let two = Rat::from_integer(2.into());
        let m_rat = Rat::from_integer(self.m.into());
        let z1 = Quad::new((&p.0 + &q.0) / &two, (&p.1 - &q.1) / &two, self.disc)?;
        // -i(a-a')/(2 sqrt(m)) = -i sqrt(m) (a-a') / (2m).
        let z2 = Quad::new(
            (&p.1 + &q.1) / &two,
            -(&p.0 - &q.0) / (&two * &m_rat),
            self.disc,
        )?;
        let value = self.curve.eval_quad(&[z1, z2], self.disc)?;
        Ok(!value.is_zero())
    }

    fn passes_unary(
        &self,
        mode: SelectionMode,
        a: &Rat,
        b: &Rat,
    ) -> Result<bool, VarietiesError> {
        if a.is_zero() && b.is_zero() {
            return Ok(false);
        }
        match mode {
            SelectionMode::OnCurve => {
                // Not a singular point of the curve.
                let at = [a.clone(), b.clone()];
                if self.qx.eval_rat(&at).is_zero() && self.qy.eval_rat(&at).is_zero() {
                    return Ok(false);
                }
                // Both isotropic intersection multiplicities must be 1; for
                // rational nonsingular points this re-derives the partials
                // condition and screens the lift degeneracy directly.
                let (n1, n2) = self.vanishing_orders(a, b)?;
                if n1 != 1 || n2 != 1 {
                    return Ok(false);
                }
                // Outside the common zero locus of the boundary expansions.
                if let Some(rp) = &self.rp {
                    let w_plus = self.conj_coord(a, b, 1)?;
                    let w_minus = self.conj_coord(a, b, -1)?;
                    let mut all_vanish = true;
                    for j in 0..=rp.degree.saturating_sub(2) {
                        if !rp.plus[j].eval(&w_plus)?.is_zero()
                            || !rp.minus[j].eval(&w_minus)?.is_zero()
                        {
                            all_vanish = false;
                            break;
                        }
                    }
                    if all_vanish {
                        return Ok(false);
                    }
                }
                // The isotropic lines through the point avoid the singular
                // locus entirely.
                if self.line_hits_singular_locus(a, b, 1)?
                    || self.line_hits_singular_locus(a, b, -1)?
                {
                    return Ok(false);
                }
                Ok(true)
            }
            SelectionMode::OffCurve => {
                if let Some((cx, cy)) = &self.center {
                    if a == cx && b == cy {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

/// Center `(p, q)` of a model circle `λ((x-p)^2 + m(y-q)^2 - r)`, if the
/// polynomial has that shape.
fn circle_center(curve: &MPoly, m: u64) -> Option<(Rat, Rat)> {
    let mut c20 = Rat::zero();
    let mut c02 = Rat::zero();
    let mut c11 = Rat::zero();
    let mut c10 = Rat::zero();
    let mut c01 = Rat::zero();
    for (mono, c) in curve.terms() {
        match (mono.0[0], mono.0[1]) {
            (2, 0) => c20 = c.clone(),
            (0, 2) => c02 = c.clone(),
            (1, 1) => c11 = c.clone(),
            (1, 0) => c10 = c.clone(),
            (0, 1) => c01 = c.clone(),
            _ => {}
        }
    }
    let m_rat = Rat::from_integer(m.into());
    if c20.is_zero() || !c11.is_zero() || c02 != &m_rat * &c20 {
        return None;
    }
    let two = Rat::from_integer(2.into());
    let p = -&c10 / (&two * &c20);
    let q = -&c01 / (&two * &m_rat * &c20);
    Some((p, q))
}

/// Scans the candidate points in input order and returns the first `k`
/// that pass every admissibility filter for the given mode; deterministic
/// by construction. Candidates are the `(x, t)` pairs of the point set
/// (the plane points being `(x, t*sqrt(m))`).
pub fn admissible_select(
    curve: &MPoly,
    set: &PointSet,
    k: usize,
    mode: SelectionMode,
) -> Result<Selection, VarietiesError> {
    if curve.vars != VarSet::curve() {
        return Err(VarietiesError::RosterMismatch);
    }
    if curve.is_zero() {
        return Err(VarietiesError::ZeroPolynomial);
    }
    let screen = Screen::new(curve, set.m, mode)?;
    let candidates: Vec<(Rat, Rat)> = set
        .points
        .iter()
        .map(|p| (p.x.clone(), p.t.clone()))
        .collect();

    // Mode/candidate consistency is a precondition, not a filter.
    for (i, (a, b)) in candidates.iter().enumerate() {
        let on_curve = curve.eval_rat(&[a.clone(), b.clone()]).is_zero();
        match mode {
            SelectionMode::OnCurve if !on_curve => {
                return Err(VarietiesError::ModeMismatch {
                    index: i,
                    reason: "candidate is off the curve in on-curve mode".into(),
                })
            }
            SelectionMode::OffCurve if on_curve => {
                return Err(VarietiesError::ModeMismatch {
                    index: i,
                    reason: "candidate lies on the curve in off-curve mode".into(),
                })
            }
            _ => {}
        }
    }

    let threshold = selection_threshold(mode, k, curve.degree());
    if (candidates.len() as u64) < threshold {
        return Ok(Selection::Insufficient {
            threshold,
            found: 0,
        });
    }

    let mut chosen: Vec<(Rat, Rat)> = Vec::with_capacity(k);
    let mut indices = Vec::with_capacity(k);
    'scan: for (i, (a, b)) in candidates.iter().enumerate() {
        if chosen.len() == k {
            break;
        }
        if chosen.contains(&(a.clone(), b.clone())) {
            continue;
        }
        if !screen.passes_unary(mode, a, b)? {
            continue;
        }
        for sel in &chosen {
            if !screen.midpoint_clear(&(a.clone(), b.clone()), sel)?
                || !screen.midpoint_clear(sel, &(a.clone(), b.clone()))?
            {
                continue 'scan;
            }
        }
        chosen.push((a.clone(), b.clone()));
        indices.push(i);
    }

    if chosen.len() < k {
        return Ok(Selection::Insufficient {
            threshold,
            found: chosen.len(),
        });
    }
    // Re-verify the complete selection before returning it.
    verify_selection(curve, set.m, &chosen, mode)?;
    Ok(Selection::Chosen(SelectionReport {
        points: chosen,
        threshold,
        indices,
    }))
}

/// Independent re-check that a selection satisfies every admissibility
/// condition; errors identify the failing point.
pub fn verify_selection(
    curve: &MPoly,
    m: u64,
    chosen: &[(Rat, Rat)],
    mode: SelectionMode,
) -> Result<(), VarietiesError> {
    let screen = Screen::new(curve, m, mode)?;
    for (i, (a, b)) in chosen.iter().enumerate() {
        if !screen.passes_unary(mode, a, b)? {
            return Err(VarietiesError::ModeMismatch {
                index: i,
                reason: "selected point fails a unary admissibility filter".into(),
            });
        }
        for (j, other) in chosen.iter().enumerate() {
            if i == j {
                continue;
            }
            if !screen.midpoint_clear(&(a.clone(), b.clone()), other)? {
                return Err(VarietiesError::ModeMismatch {
                    index: i,
                    reason: format!("midpoint-conjugate point with {j} lies on the curve"),
                });
            }
        }
    }
    Ok(())
}

/// Fits a nonzero rational polynomial of degree at most `d` through the
/// given distinct points, when one exists: the kernel of the
/// monomial-evaluation matrix over the rationals. Returns `None` when the
/// kernel is trivial. Requires at least `d^2 + 1` points.
pub fn fit_rational_curve(
    points: &[(Rat, Rat)],
    d: u32,
) -> Result<Option<MPoly>, VarietiesError> {
    let needed = (d as usize) * (d as usize) + 1;
    if points.len() < needed {
        return Err(VarietiesError::TooFew {
            needed,
            got: points.len(),
        });
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] == points[j] {
                return Err(VarietiesError::DuplicateSample(i, j));
            }
        }
    }
    let vars = VarSet::curve();
    // Monomials of degree <= d in grlex-descending order.
    let mut monos: Vec<Monomial> = Vec::new();
    for a in 0..=d {
        for b in 0..=(d - a) {
            monos.push(Monomial(vec![a, b]));
        }
    }
    monos.sort();
    monos.reverse();
    let cols = monos.len();

    let mut matrix: Vec<Vec<Rat>> = points
        .iter()
        .map(|(x, y)| {
            monos
                .iter()
                .map(|mo| {
                    let mut v = Rat::one();
                    for _ in 0..mo.0[0] {
                        v *= x;
                    }
                    for _ in 0..mo.0[1] {
                        v *= y;
                    }
                    v
                })
                .collect()
        })
        .collect();

    // Reduced row echelon over the rationals.
    let rows = matrix.len();
    let mut pivot_cols = Vec::new();
    let mut row = 0usize;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(row, p);
        let inv = matrix[row][col].clone().recip();
        for c in col..cols {
            matrix[row][c] = &matrix[row][c] * &inv;
        }
        for r in 0..rows {
            if r != row && !matrix[r][col].is_zero() {
                let factor = matrix[r][col].clone();
                for c in col..cols {
                    let sub = &factor * &matrix[row][c];
                    matrix[r][c] = &matrix[r][c] - sub;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if pivot_cols.len() == cols {
        return Ok(None);
    }
    // Kernel vector for the first free column.
    let free = (0..cols)
        .find(|c| !pivot_cols.contains(c))
        .expect("free column exists");
    let mut coeffs = vec![Rat::zero(); cols];
    coeffs[free] = Rat::one();
    for (r, &pc) in pivot_cols.iter().enumerate() {
        coeffs[pc] = -matrix[r][free].clone();
    }
    let mut poly = MPoly::zero(vars);
    for (c, mono) in monos.iter().enumerate() {
        poly.add_term(mono.clone(), coeffs[c].clone());
    }
    debug_assert!(!poly.is_zero());
    Ok(Some(poly.primitive_scaled()))
}
