//! Symbolic machinery for the distance varieties: the grlex Gröbner
//! check for the ideals `<Q_{m,P_1}, ..., Q_{m,P_k}>` where
//! `Q_{m,P}(x, y, d) = (x - a)^2 + m(y - b)^2 - d^2`, fiber and
//! singular-point counts, the auxiliary boundary expansions, admissible
//! point selection, rational curve fitting, and numeric monodromy
//! continuation along loops in the base.

mod ck;
mod groebner;
mod monodromy;
mod mpoly;
mod quadpoly;
mod rpolys;
mod xk;

pub use ck::{
    admissible_select, build_ck, fit_rational_curve, verify_selection, CkBasis, Selection,
    SelectionMode, SelectionReport,
};
pub use groebner::{buchberger_check, mdiv, s_poly, BuchbergerOutcome};
pub use monodromy::{
    branch_points, loop_for_pattern, monodromy_signs, winding_numbers, MonodromyOptions,
    SignVector,
};
pub use mpoly::{grlex_cmp, parse_curve, MPoly, Monomial, VarSet};
pub use quadpoly::QuadPoly;
pub use rpolys::{r_polys, RPolys};
pub use xk::{
    build_xk, fiber_over_origin, jacobian, singular_points_xk, Fiber, HybridPoint, HybridScalar,
    IdealBasis, JacobianReport, VarietyPoint,
};

use crate::exactmath::{ExactError, Rat};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VarietiesError {
    #[error("polynomials use different variable rosters")]
    RosterMismatch,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is already homogenized")]
    AlreadyHomogenized,
    #[error("basis must be nonempty with nonzero generators")]
    EmptyBasis,
    #[error("m = {0} must be a positive squarefree integer")]
    BadM(u64),
    #[error("duplicate points at indices {0} and {1}")]
    DuplicatePoint(usize, usize),
    #[error("point {0} is the origin")]
    OriginPoint(usize),
    #[error("point does not satisfy generator {gen} of the variety")]
    NotOnVariety { gen: usize },
    #[error("point has wrong dimension: expected {expected}, got {got}")]
    BadDimension { expected: usize, got: usize },
    #[error("candidate {index}: {reason}")]
    ModeMismatch { index: usize, reason: String },
    #[error("off-curve mode requires a line or a model circle")]
    NotLineOrCircle,
    #[error("need at least {needed} items, got {got}")]
    TooFew { needed: usize, got: usize },
    #[error("duplicate sample points at indices {0} and {1}")]
    DuplicateSample(usize, usize),
    #[error("loop must start and end at the origin")]
    LoopNotClosed,
    #[error("loop passes within tolerance of branch point {0}")]
    LoopTooClose(usize),
    #[error("continuation endpoint for sheet {0} failed to snap to a sign")]
    SnapFailed(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A rational projective point stored as coprime integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    /// Clears denominators and divides by the common content; the first
    /// nonzero coordinate is normalized positive.
    pub fn from_rationals(coords: &[Rat]) -> Result<Self, VarietiesError> {
        if coords.iter().all(Zero::is_zero) {
            return Err(VarietiesError::ZeroPolynomial);
        }
        let mut denom_lcm = BigInt::one();
        for c in coords {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = coords
            .iter()
            .map(|c| (c * Rat::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        for v in &mut ints {
            *v /= &g;
        }
        if ints
            .iter()
            .find(|v| !v.is_zero())
            .is_some_and(Signed::is_negative)
        {
            for v in &mut ints {
                *v = -v.clone();
            }
        }
        Ok(ProjPoint { coords: ints })
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Height: the maximum absolute value of the coprime integer
    /// coordinates.
    pub fn height(&self) -> BigUint {
        self.coords
            .iter()
            .map(|c| c.magnitude().clone())
            .max()
            .expect("nonempty")
    }
}
