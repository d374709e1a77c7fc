//! Univariate polynomials with coefficients in a quadratic field
//! `Q(sqrt(d))`, enough for the auxiliary-polynomial expansions and the
//! line-substitution screenings: arithmetic, Euclidean division, gcd, and
//! order of vanishing at zero.

use super::VarietiesError;
use crate::exactmath::{Quad, Rat};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadPoly {
    d: i64,
    /// Coefficient of `s^i` at index `i`; trailing zeros trimmed.
    coeffs: Vec<Quad>,
}

impl QuadPoly {
    pub fn zero(d: i64) -> Self {
        QuadPoly { d, coeffs: vec![] }
    }

    pub fn new(d: i64, mut coeffs: Vec<Quad>) -> Result<Self, VarietiesError> {
        for c in &coeffs {
            if c.discriminant() != d {
                return Err(crate::exactmath::ExactError::MixedDiscriminants(
                    d,
                    c.discriminant(),
                )
                .into());
            }
        }
        while coeffs.last().is_some_and(Quad::is_zero) {
            coeffs.pop();
        }
        Ok(QuadPoly { d, coeffs })
    }

    pub fn constant(c: Quad) -> Self {
        let d = c.discriminant();
        QuadPoly::new(d, vec![c]).expect("single coefficient")
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Quad {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Quad::rational(Rat::zero(), self.d).expect("valid d"))
    }

    pub fn coeffs(&self) -> &[Quad] {
        &self.coeffs
    }

    fn check(&self, other: &QuadPoly) -> Result<(), VarietiesError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(crate::exactmath::ExactError::MixedDiscriminants(self.d, other.d).into())
        }
    }

    pub fn add(&self, other: &QuadPoly) -> Result<QuadPoly, VarietiesError> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i))?);
        }
        QuadPoly::new(self.d, out)
    }

    pub fn sub(&self, other: &QuadPoly) -> Result<QuadPoly, VarietiesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QuadPoly {
        QuadPoly {
            d: self.d,
            coeffs: self.coeffs.iter().map(Quad::neg).collect(),
        }
    }

    pub fn mul(&self, other: &QuadPoly) -> Result<QuadPoly, VarietiesError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(QuadPoly::zero(self.d));
        }
        let zero = Quad::rational(Rat::zero(), self.d)?;
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        QuadPoly::new(self.d, out)
    }

    pub fn scale(&self, c: &Quad) -> Result<QuadPoly, VarietiesError> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul(c)?);
        }
        QuadPoly::new(self.d, out)
    }

    pub fn pow(&self, e: u32) -> Result<QuadPoly, VarietiesError> {
        let one = Quad::rational(Rat::from_integer(1.into()), self.d)?;
        let mut acc = QuadPoly::constant(one);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn eval(&self, at: &Quad) -> Result<Quad, VarietiesError> {
        let mut acc = Quad::rational(Rat::zero(), self.d)?;
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at)?.add(c)?;
        }
        Ok(acc)
    }

    /// Euclidean division: `self = q * divisor + r` with
    /// `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &QuadPoly) -> Result<(QuadPoly, QuadPoly), VarietiesError> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(crate::exactmath::ExactError::DivisionByZero.into());
        }
        let mut rem = self.clone();
        let mut quot = QuadPoly::zero(self.d);
        let dd = divisor.degree().expect("nonzero divisor");
        let lead_inv = divisor.coeffs[dd].inv()?;
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.coeffs[rd].mul(&lead_inv)?;
            // term = factor * s^(rd - dd)
            let zero = Quad::rational(Rat::zero(), self.d)?;
            let mut term_coeffs = vec![zero; rd - dd + 1];
            term_coeffs[rd - dd] = factor;
            let term = QuadPoly::new(self.d, term_coeffs)?;
            quot = quot.add(&term)?;
            rem = rem.sub(&term.mul(divisor)?)?;
        }
        Ok((quot, rem))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &QuadPoly) -> Result<QuadPoly, VarietiesError> {
        self.check(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        if let Some(deg) = a.degree() {
            let inv = a.coeffs[deg].inv()?;
            a = a.scale(&inv)?;
        }
        Ok(a)
    }

    /// Multiplicity of the root `s = 0`: the index of the first nonzero
    /// coefficient. `None` for the zero polynomial.
    pub fn vanishing_order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}
