//! Multivariate polynomials over the rationals with the graded
//! lexicographic order on `d_1 > ... > d_k > x > y (> z)`.

use super::VarietiesError;
use crate::exactmath::{Quad, Rat};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Variable roster: `d_1, ..., d_k, x, y` and optionally a trailing
/// homogenization variable `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarSet {
    pub k: usize,
    pub homogenized: bool,
}

impl VarSet {
    pub fn affine(k: usize) -> Self {
        VarSet {
            k,
            homogenized: false,
        }
    }

    /// Two-variable roster `[x, y]` for plane curves.
    pub fn curve() -> Self {
        VarSet::affine(0)
    }

    pub fn len(&self) -> usize {
        self.k + 2 + usize::from(self.homogenized)
    }

    pub fn x_index(&self) -> usize {
        self.k
    }

    pub fn y_index(&self) -> usize {
        self.k + 1
    }

    pub fn z_index(&self) -> Option<usize> {
        self.homogenized.then_some(self.k + 2)
    }

    pub fn name(&self, i: usize) -> String {
        if i < self.k {
            format!("d{}", i + 1)
        } else if i == self.k {
            "x".into()
        } else if i == self.k + 1 {
            "y".into()
        } else {
            "z".into()
        }
    }
}

/// Exponent vector over a fixed roster; ordered by grlex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic comparison: total degree first, ties broken
/// lexicographically with the earlier variable more significant.
fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// Public grlex comparison with a roster-length check.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Result<Ordering, VarietiesError> {
    if a.len() != b.len() {
        return Err(VarietiesError::RosterMismatch);
    }
    Ok(grlex(a, b))
}

/// Sparse multivariate polynomial over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub vars: VarSet,
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero(vars: VarSet) -> Self {
        MPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarSet, c: Rat) -> Self {
        let mut p = MPoly::zero(vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn one(vars: VarSet) -> Self {
        MPoly::constant(vars, Rat::one())
    }

    /// The variable with the given roster index.
    pub fn var(vars: VarSet, index: usize) -> Self {
        let mut e = vec![0u32; vars.len()];
        e[index] = 1;
        let mut p = MPoly::zero(vars);
        p.add_term(Monomial(e), Rat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: Rat) {
        debug_assert_eq!(mono.0.len(), self.vars.len());
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Leading (grlex-largest) monomial and coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn check_roster(&self, other: &MPoly) -> Result<(), VarietiesError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(VarietiesError::RosterMismatch)
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let mut out = MPoly::zero(self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> MPoly {
        let mut out = MPoly::zero(self.vars);
        if r.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * r);
        }
        out
    }

    /// Multiplication by a single term.
    pub fn mul_term(&self, mono: &Monomial, coeff: &Rat) -> MPoly {
        let mut out = MPoly::zero(self.vars);
        if coeff.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.add_term(m.mul(mono), c * coeff);
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.vars);
        for (m, c) in &other.terms {
            for (m2, c2) in &self.terms {
                out.add_term(m2.mul(m), c2 * c);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(self.vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to roster index `i`.
    pub fn partial(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut e2 = m.0.clone();
            e2[i] -= 1;
            out.add_term(Monomial(e2), c * Rat::from_integer(e.into()));
        }
        out
    }

    /// Terms of total degree exactly `deg`.
    pub fn homogeneous_component(&self, deg: u32) -> MPoly {
        let mut out = MPoly::zero(self.vars);
        for (m, c) in &self.terms {
            if m.degree() == deg {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// `z^deg(Q) * Q(vars/z)`: homogeneous of the same total degree.
    pub fn homogenize(&self) -> Result<MPoly, VarietiesError> {
        if self.is_zero() {
            return Err(VarietiesError::ZeroPolynomial);
        }
        if self.vars.homogenized {
            return Err(VarietiesError::AlreadyHomogenized);
        }
        let vars = VarSet {
            k: self.vars.k,
            homogenized: true,
        };
        let total = self.degree();
        let mut out = MPoly::zero(vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.push(total - m.degree());
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Re-expresses a plane-curve polynomial (roster `[x, y]`) over the
    /// roster with `k` distance variables, mapping `x`, `y` to the target
    /// roster's `x`, `y`.
    pub fn embed_curve(&self, k: usize) -> Result<MPoly, VarietiesError> {
        if self.vars != VarSet::curve() {
            return Err(VarietiesError::RosterMismatch);
        }
        let vars = VarSet::affine(k);
        let mut out = MPoly::zero(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; vars.len()];
            e[vars.x_index()] = m.0[0];
            e[vars.y_index()] = m.0[1];
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    pub fn eval_rat(&self, values: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term *= &values[i];
                }
            }
            acc += term;
        }
        acc
    }

    pub fn eval_quad(&self, values: &[Quad], d: i64) -> Result<Quad, VarietiesError> {
        let mut acc = Quad::rational(Rat::zero(), d)?;
        for (m, c) in &self.terms {
            let mut term = Quad::rational(c.clone(), d)?;
            for (i, &e) in m.0.iter().enumerate() {
                term = term.mul(&values[i].pow(e)?)?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    pub fn eval_complex(&self, values: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (i, &e) in m.0.iter().enumerate() {
                term *= values[i].powi(e as i32);
            }
            acc += term;
        }
        acc
    }

    /// Canonical integer-scaled form: all coefficients integers with
    /// content 1 and positive leading coefficient.
    pub fn primitive_scaled(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = (c * Rat::from_integer(denom_lcm.clone())).to_integer();
            numer_gcd = numer_gcd.gcd(&scaled);
        }
        let mut factor = Rat::new(denom_lcm, numer_gcd);
        if self
            .leading()
            .map(|(_, c)| (c * &factor).is_negative())
            .unwrap_or(false)
        {
            factor = -factor;
        }
        self.scale(&factor)
    }
}

impl fmt::Display for MPoly {
    /// Canonical text form: grlex-descending terms, integer-scaled
    /// coefficients, positive leading sign.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let scaled = self.primitive_scaled();
        let mut first = true;
        for (m, c) in scaled.terms.iter().rev() {
            let int = c.to_integer();
            let mag = int.magnitude();
            if first {
                first = false;
                if int.is_negative() {
                    write!(f, "-")?;
                }
            } else if int.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = m.degree() == 0;
            if !mag.is_one() || is_const {
                write!(f, "{mag}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first_var = true;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                write!(f, "{}", self.vars.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Parses a plane-curve polynomial in the variables `x` and `y`, e.g.
/// `"y^2 - x^3 - 2*x + 1/4"`.
pub fn parse_curve(input: &str) -> Result<MPoly, VarietiesError> {
    let vars = VarSet::curve();
    let mut out = MPoly::zero(vars);
    let bad = |s: &str| VarietiesError::Parse(s.to_string());
    let mut chars = input.chars().peekable();
    let mut sign = 1i64;
    let mut pending = false;
    loop {
        while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
            chars.next();
        }
        let Some(&c) = chars.peek() else {
            break;
        };
        match c {
            '+' => {
                chars.next();
                pending = true;
                continue;
            }
            '-' => {
                chars.next();
                sign = -sign;
                pending = true;
                continue;
            }
            _ => {}
        }
        // One term: optional rational coefficient, then variable powers.
        let mut coeff: Option<Rat> = None;
        let mut exps = [0u32; 2];
        let mut saw_factor = false;
        loop {
            while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
                chars.next();
            }
            match chars.peek() {
                Some('*') => {
                    chars.next();
                    continue;
                }
                Some(c) if c.is_ascii_digit() => {
                    let mut num = String::new();
                    while matches!(chars.peek(), Some(c) if c.is_ascii_digit()) {
                        num.push(chars.next().unwrap());
                    }
                    let mut value =
                        Rat::from_integer(num.parse::<BigInt>().map_err(|_| bad(&num))?);
                    while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
                        chars.next();
                    }
                    if matches!(chars.peek(), Some('/')) {
                        chars.next();
                        while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
                            chars.next();
                        }
                        let mut den = String::new();
                        while matches!(chars.peek(), Some(c) if c.is_ascii_digit()) {
                            den.push(chars.next().unwrap());
                        }
                        let d: BigInt = den.parse().map_err(|_| bad(&den))?;
                        if d.is_zero() {
                            return Err(bad("division by zero"));
                        }
                        value /= Rat::from_integer(d);
                    }
                    coeff = Some(coeff.map_or(value.clone(), |c| c * &value));
                    saw_factor = true;
                }
                Some(&v @ ('x' | 'y')) => {
                    chars.next();
                    let idx = if v == 'x' { 0 } else { 1 };
                    let mut e = 1u32;
                    while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
                        chars.next();
                    }
                    if matches!(chars.peek(), Some('^')) {
                        chars.next();
                        let mut num = String::new();
                        while matches!(chars.peek(), Some(c) if c.is_ascii_digit()) {
                            num.push(chars.next().unwrap());
                        }
                        e = num.parse().map_err(|_| bad(&num))?;
                    }
                    exps[idx] += e;
                    saw_factor = true;
                }
                _ => break,
            }
        }
        if !saw_factor {
            return Err(bad(input));
        }
        let coeff = coeff.unwrap_or_else(Rat::one) * Rat::from_integer(sign.into());
        out.add_term(Monomial(exps.to_vec()), coeff);
        sign = 1;
        pending = false;
    }
    if pending {
        return Err(bad("trailing sign"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_int};

    fn mono(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn grlex_order_pins() {
        // Roster [d1, d2, x, y]: d1^2 > d2^2, x > y, x^3 > d1^2.
        assert_eq!(
            grlex_cmp(&[2, 0, 0, 0], &[0, 2, 0, 0]).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            grlex_cmp(&[0, 0, 1, 0], &[0, 0, 0, 1]).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            grlex_cmp(&[0, 0, 3, 0], &[2, 0, 0, 0]).unwrap(),
            Ordering::Greater
        );
        assert!(grlex_cmp(&[1, 0], &[1, 0, 0]).is_err());
    }

    #[test]
    fn grlex_is_a_monomial_order() {
        // Multiplicativity on a small exhaustive grid.
        let grid: Vec<Vec<u32>> = (0..3)
            .flat_map(|a| (0..3).flat_map(move |b| (0..3).map(move |c| vec![a, b, c])))
            .collect();
        for a in &grid {
            for b in &grid {
                for c in &grid {
                    let ab = grlex(a, b);
                    let ac_bc = grlex(
                        &a.iter().zip(c).map(|(x, y)| x + y).collect::<Vec<_>>(),
                        &b.iter().zip(c).map(|(x, y)| x + y).collect::<Vec<_>>(),
                    );
                    assert_eq!(ab, ac_bc);
                }
            }
        }
    }

    #[test]
    fn arithmetic_and_eval() {
        let vars = VarSet::curve();
        let x = MPoly::var(vars, 0);
        let y = MPoly::var(vars, 1);
        // (x + y)^2 = x^2 + 2xy + y^2.
        let p = x.add(&y).pow(2);
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.eval_rat(&[rat_int(2), rat_int(3)]), rat_int(25));
        let q = p.sub(&x.mul(&y).scale(&rat_int(2)));
        assert_eq!(q.eval_rat(&[rat_int(2), rat_int(3)]), rat_int(13));
    }

    #[test]
    fn partial_derivatives() {
        let p = parse_curve("x^3 + 2*x*y - y^2").unwrap();
        assert_eq!(format!("{}", p.partial(0)), "3*x^2 + 2*y");
        assert_eq!(format!("{}", p.partial(1)), "2*x - 2*y");
    }

    #[test]
    fn homogenize_pins() {
        let p = parse_curve("x^2 + y - 1").unwrap();
        let h = p.homogenize().unwrap();
        assert_eq!(format!("{h}"), "x^2 + y*z - z^2");
        let c = parse_curve("7").unwrap();
        assert_eq!(format!("{}", c.homogenize().unwrap()), "7");
    }

    #[test]
    fn display_canonical() {
        let vars = VarSet::affine(1);
        let mut p = MPoly::zero(vars);
        p.add_term(mono(&[2, 0, 0]), rat(1, 2));
        p.add_term(mono(&[0, 1, 0]), rat(-1, 3));
        p.add_term(mono(&[0, 0, 0]), rat_int(1));
        assert_eq!(format!("{p}"), "3*d1^2 - 2*x + 6");
        let neg = p.neg();
        // Leading sign normalizes, so display is identical.
        assert_eq!(format!("{neg}"), "3*d1^2 - 2*x + 6");
        assert_eq!(format!("{}", MPoly::zero(vars)), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "y - x^2",
            "x^2 + y^2 - 25",
            "3*x^2*y - 2*x + 1",
            "y^2 - x^3 - 2*x - 1",
        ] {
            let p = parse_curve(s).unwrap();
            assert_eq!(format!("{p}"), s);
        }
        let p = parse_curve("1/2 * x + 1/3").unwrap();
        assert_eq!(format!("{p}"), "3*x + 2");
        assert!(parse_curve("x +").is_err());
        assert!(parse_curve("w^2").is_err());
    }

    #[test]
    fn leading_term_is_grlex_max() {
        let vars = VarSet::affine(2);
        let mut p = MPoly::zero(vars);
        p.add_term(mono(&[0, 2, 0, 0]), rat_int(-1));
        p.add_term(mono(&[0, 0, 2, 0]), rat_int(1));
        p.add_term(mono(&[0, 0, 0, 1]), rat_int(5));
        let (m, c) = p.leading().unwrap();
        assert_eq!(m, &mono(&[0, 2, 0, 0]));
        assert_eq!(c, &rat_int(-1));
    }
}
