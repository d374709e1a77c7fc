//! Elements `a + b*sqrt(d)` of a quadratic extension of the rationals.
//!
//! The discriminant `d` is a fixed squarefree integer, positive or
//! negative, shared per computation context; combining values with
//! different discriminants is a reported error, never a coercion.

use super::{is_squarefree, ExactError, Rat};
use num_traits::{Signed, Zero};
use std::fmt;

/// `a + b*sqrt(d)` with rational `a`, `b` and squarefree `d != 0, 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quad {
    a: Rat,
    b: Rat,
    d: i64,
}

impl Quad {
    pub fn new(a: Rat, b: Rat, d: i64) -> Result<Self, ExactError> {
        if d == 0 || d == 1 || !is_squarefree(d.unsigned_abs()) {
            return Err(ExactError::BadDiscriminant(d));
        }
        Ok(Quad { a, b, d })
    }

    /// Embeds a rational into the field with discriminant `d`.
    pub fn rational(a: Rat, d: i64) -> Result<Self, ExactError> {
        Quad::new(a, Rat::zero(), d)
    }

    /// The element `sqrt(d)` itself.
    pub fn sqrt_d(d: i64) -> Result<Self, ExactError> {
        Quad::new(Rat::zero(), Rat::from_integer(1.into()), d)
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn radical_part(&self) -> &Rat {
        &self.b
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn check(&self, other: &Quad) -> Result<(), ExactError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(ExactError::MixedDiscriminants(self.d, other.d))
        }
    }

    pub fn add(&self, other: &Quad) -> Result<Quad, ExactError> {
        self.check(other)?;
        Ok(Quad {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d: self.d,
        })
    }

    pub fn sub(&self, other: &Quad) -> Result<Quad, ExactError> {
        self.check(other)?;
        Ok(Quad {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            d: self.d,
        })
    }

    pub fn mul(&self, other: &Quad) -> Result<Quad, ExactError> {
        self.check(other)?;
        let drat = Rat::from_integer(self.d.into());
        Ok(Quad {
            a: &self.a * &other.a + &drat * &self.b * &other.b,
            b: &self.a * &other.b + &self.b * &other.a,
            d: self.d,
        })
    }

    pub fn neg(&self) -> Quad {
        Quad {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conj(&self) -> Quad {
        Quad {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Field norm `a^2 - d*b^2`; zero exactly on the zero element.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from_integer(self.d.into()) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Quad, ExactError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let c = self.conj();
        Ok(Quad {
            a: c.a / &n,
            b: c.b / &n,
            d: self.d,
        })
    }

    pub fn div(&self, other: &Quad) -> Result<Quad, ExactError> {
        self.mul(&other.inv()?)
    }

    pub fn scale(&self, r: &Rat) -> Quad {
        Quad {
            a: &self.a * r,
            b: &self.b * r,
            d: self.d,
        }
    }

    pub fn pow(&self, mut e: u32) -> Result<Quad, ExactError> {
        let mut base = self.clone();
        let mut acc = Quad::rational(Rat::from_integer(1.into()), self.d)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, self.d);
        }
        if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, -self.b.clone(), self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_int};
    use proptest::prelude::*;

    fn q(an: i64, ad: i64, bn: i64, bd: i64, d: i64) -> Quad {
        Quad::new(rat(an, ad), rat(bn, bd), d).unwrap()
    }

    #[test]
    fn discriminant_validation() {
        assert!(Quad::new(rat_int(1), rat_int(1), 0).is_err());
        assert!(Quad::new(rat_int(1), rat_int(1), 1).is_err());
        assert!(Quad::new(rat_int(1), rat_int(1), 4).is_err());
        assert!(Quad::new(rat_int(1), rat_int(1), 12).is_err());
        assert!(Quad::new(rat_int(1), rat_int(1), -1).is_ok());
        assert!(Quad::new(rat_int(1), rat_int(1), -6).is_ok());
    }

    #[test]
    fn mixed_discriminants_rejected() {
        let x = q(1, 1, 2, 1, 2);
        let y = q(1, 1, 2, 1, 3);
        assert_eq!(x.add(&y), Err(ExactError::MixedDiscriminants(2, 3)));
        assert_eq!(x.mul(&y), Err(ExactError::MixedDiscriminants(2, 3)));
    }

    #[test]
    fn gaussian_arithmetic() {
        // (1 + i)(1 - i) = 2 with i = sqrt(-1).
        let z = q(1, 1, 1, 1, -1);
        let w = z.conj();
        let prod = z.mul(&w).unwrap();
        assert_eq!(prod, Quad::rational(rat_int(2), -1).unwrap());
        assert_eq!(z.norm(), rat_int(2));
    }

    #[test]
    fn division_inverts() {
        let z = q(3, 2, -5, 7, 5);
        let w = q(1, 3, 2, 1, 5);
        let r = z.div(&w).unwrap().mul(&w).unwrap();
        assert_eq!(r, z);
        assert!(Quad::rational(rat_int(0), 5).unwrap().inv().is_err());
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(
            a1 in -9i64..9, b1 in -9i64..9, a2 in -9i64..9, b2 in -9i64..9,
            d in prop::sample::select(vec![-6i64, -3, -2, -1, 2, 3, 5, 7, 10]),
        ) {
            let x = Quad::new(rat_int(a1), rat_int(b1), d).unwrap();
            let y = Quad::new(rat_int(a2), rat_int(b2), d).unwrap();
            prop_assert_eq!(x.mul(&y).unwrap().norm(), x.norm() * y.norm());
        }

        #[test]
        fn norm_zero_only_at_zero(a in -20i64..20, b in -20i64..20, d in prop::sample::select(vec![-5i64, -2, -1, 2, 3, 6])) {
            let x = Quad::new(rat_int(a), rat_int(b), d).unwrap();
            prop_assert_eq!(x.norm().is_zero(), x.is_zero());
        }
    }
}
