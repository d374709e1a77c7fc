//! Boundary expansions of a homogenized plane curve along the two
//! isotropic directions: writing
//! `Qbar(∓i*sqrt(m) + w*z, 1, z) = sum_j R_{j,±}(w) z^j` produces, for
//! each `j`, a polynomial `R_{j,±}` of degree at most `j` over
//! `Q(sqrt(-m))`; for curves of degree at least 3 some `R_{j,±}` with
//! `j <= d-2` is nonzero.

use super::mpoly::{MPoly, VarSet};
use super::quadpoly::QuadPoly;
use super::VarietiesError;
use crate::exactmath::{Quad, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Which of the two sign families a witness was found in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSign {
    Plus,
    Minus,
}

/// The two expansion families plus the nonvanishing witness (the first
/// index `j <= d-2` where at least one family is nonzero).
#[derive(Debug, Clone)]
pub struct RPolys {
    pub degree: usize,
    /// `R_{j,+}`: expansion at `-i*sqrt(m)`.
    pub plus: Vec<QuadPoly>,
    /// `R_{j,-}`: expansion at `+i*sqrt(m)`.
    pub minus: Vec<QuadPoly>,
    pub witness: Option<(usize, WitnessSign)>,
}

fn binomial(n: u32, k: u32) -> Rat {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Rat::new(num, den)
}

/// Expands `Qbar(∓i*sqrt(m) + w*z, 1, z)` into the coefficient grid of
/// `(w, z)` over `Q(sqrt(-m))`. `branch` is `-1` for the `+` family
/// (evaluation at `-i*sqrt(m)`) and `+1` for the `-` family.
fn expand_family(q: &MPoly, m: u64, branch: i8) -> Result<Vec<QuadPoly>, VarietiesError> {
    let disc = -(m as i64);
    let h = q.homogenize()?;
    let d = q.degree() as usize;
    let base = Quad::new(
        Rat::zero(),
        Rat::from_integer(i64::from(branch).into()),
        disc,
    )?;
    let zero = Quad::rational(Rat::zero(), disc)?;
    // grid[z_power][w_power]
    let mut grid = vec![vec![zero; d + 1]; d + 1];
    for (mono, c) in h.terms() {
        let alpha = mono.0[0];
        let gamma = mono.0[2];
        // y^beta evaluates to 1.
        for t in 0..=alpha {
            let coeff = Quad::rational(c * binomial(alpha, t), disc)?
                .mul(&base.pow(alpha - t)?)?;
            let row = (t + gamma) as usize;
            let col = t as usize;
            grid[row][col] = grid[row][col].add(&coeff)?;
        }
    }
    grid.into_iter()
        .map(|row| QuadPoly::new(disc, row))
        .collect()
}

/// Computes both expansion families for a nonzero plane curve of degree
/// at least 1, checks the degree bounds, and finds the nonvanishing
/// witness when `d >= 2`.
pub fn r_polys(q: &MPoly, m: u64) -> Result<RPolys, VarietiesError> {
    if q.vars != VarSet::curve() {
        return Err(VarietiesError::RosterMismatch);
    }
    if q.is_zero() {
        return Err(VarietiesError::ZeroPolynomial);
    }
    let d = q.degree() as usize;
    let plus = expand_family(q, m, -1)?;
    let minus = expand_family(q, m, 1)?;
    for (j, r) in plus.iter().chain(minus.iter()).enumerate() {
        let j = j % (d + 1);
        debug_assert!(
            r.degree().map_or(true, |deg| deg <= j),
            "deg R_{j} exceeds {j}"
        );
    }
    let witness = (d >= 2)
        .then(|| {
            (0..=d - 2).find_map(|j| {
                if !plus[j].is_zero() {
                    Some((j, WitnessSign::Plus))
                } else if !minus[j].is_zero() {
                    Some((j, WitnessSign::Minus))
                } else {
                    None
                }
            })
        })
        .flatten();
    Ok(RPolys {
        degree: d,
        plus,
        minus,
        witness,
    })
}

/// True when `(x^2 + m)^(d-1)` divides the top form `Q_d(x, 1)`; in that
/// case (and only then) every `R_{j,±}` with `j <= d-2` vanishes.
pub fn top_form_divisible(q: &MPoly, m: u64) -> Result<bool, VarietiesError> {
    let d = q.degree();
    if d == 0 {
        return Err(VarietiesError::ZeroPolynomial);
    }
    let disc = -(m as i64);
    let top = q.homogeneous_component(d);
    // Q_d(x, 1) as a univariate polynomial.
    let mut coeffs = vec![Quad::rational(Rat::zero(), disc)?; d as usize + 1];
    for (mono, c) in top.terms() {
        coeffs[mono.0[0] as usize] = Quad::rational(c.clone(), disc)?;
    }
    let top_poly = QuadPoly::new(disc, coeffs)?;
    let factor = QuadPoly::new(
        disc,
        vec![
            Quad::rational(Rat::from_integer(m.into()), disc)?,
            Quad::rational(Rat::zero(), disc)?,
            Quad::rational(Rat::one(), disc)?,
        ],
    )?
    .pow(d - 1)?;
    if top_poly.is_zero() {
        return Ok(true);
    }
    if factor.degree() > top_poly.degree() {
        return Ok(false);
    }
    let (_, rem) = top_poly.divrem(&factor)?;
    Ok(rem.is_zero())
}
