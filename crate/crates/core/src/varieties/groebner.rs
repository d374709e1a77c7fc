//! Multivariable division, S-polynomials, and the Buchberger criterion,
//! all with respect to the fixed grlex order.

use super::mpoly::{MPoly, Monomial};
use super::VarietiesError;
use num_traits::Zero;

/// Division with remainder by an ordered list of divisors: returns
/// quotients `q_i` and a remainder `r` with `f = sum q_i g_i + r`, no
/// monomial of `r` divisible by any leading monomial of the divisors, and
/// `lm(q_i g_i) <= lm(f)` whenever `q_i g_i != 0`.
pub fn mdiv(f: &MPoly, divisors: &[MPoly]) -> Result<(Vec<MPoly>, MPoly), VarietiesError> {
    if divisors.is_empty() || divisors.iter().any(MPoly::is_zero) {
        return Err(VarietiesError::EmptyBasis);
    }
    for g in divisors {
        f.check_roster(g)?;
    }
    let leads: Vec<(Monomial, _)> = divisors
        .iter()
        .map(|g| {
            let (m, c) = g.leading().expect("nonzero divisor");
            (m.clone(), c.clone())
        })
        .collect();

    let mut quotients = vec![MPoly::zero(f.vars); divisors.len()];
    let mut remainder = MPoly::zero(f.vars);
    let mut p = f.clone();
    while let Some((lm_p, lc_p)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let mut divided = false;
        for (i, (lm_g, lc_g)) in leads.iter().enumerate() {
            if lm_g.divides(&lm_p) {
                let mono = lm_p.div(lm_g);
                let coeff = &lc_p / lc_g;
                quotients[i].add_term(mono.clone(), coeff.clone());
                p = p.sub(&divisors[i].mul_term(&mono, &coeff));
                divided = true;
                break;
            }
        }
        if !divided {
            remainder.add_term(lm_p.clone(), lc_p.clone());
            p.add_term(lm_p, -lc_p);
        }
    }
    Ok((quotients, remainder))
}

/// The cancellation combination
/// `S(f, g) = (lcm/lt f) * f - (lcm/lt g) * g` of the leading monomials'
/// least common multiple.
pub fn s_poly(f: &MPoly, g: &MPoly) -> Result<MPoly, VarietiesError> {
    f.check_roster(g)?;
    let (lm_f, lc_f) = f.leading().ok_or(VarietiesError::ZeroPolynomial)?;
    let (lm_g, lc_g) = g.leading().ok_or(VarietiesError::ZeroPolynomial)?;
    let lcm = lm_f.lcm(lm_g);
    let left = f.mul_term(&lcm.div(lm_f), &lc_f.recip());
    let right = g.mul_term(&lcm.div(lm_g), &lc_g.recip());
    Ok(left.sub(&right))
}

/// Outcome of the Buchberger criterion: either every S-polynomial reduces
/// to zero, or the first failing pair is returned as a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuchbergerOutcome {
    Pass,
    Fail {
        i: usize,
        j: usize,
        remainder: MPoly,
    },
}

impl BuchbergerOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, BuchbergerOutcome::Pass)
    }
}

/// Checks whether `gens` is a Gröbner basis for the ideal it generates:
/// every S-polynomial must have remainder zero on division by the whole
/// list.
pub fn buchberger_check(gens: &[MPoly]) -> Result<BuchbergerOutcome, VarietiesError> {
    if gens.is_empty() || gens.iter().any(MPoly::is_zero) {
        return Err(VarietiesError::EmptyBasis);
    }
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let s = s_poly(&gens[i], &gens[j])?;
            if s.is_zero() {
                continue;
            }
            let (_, remainder) = mdiv(&s, gens)?;
            if !remainder.is_zero() {
                return Ok(BuchbergerOutcome::Fail { i, j, remainder });
            }
        }
    }
    Ok(BuchbergerOutcome::Pass)
}

/// Test-facing assertion of the division contract; used by the suites to
/// re-check every division they perform.
pub fn check_division_contract(
    f: &MPoly,
    divisors: &[MPoly],
    quotients: &[MPoly],
    remainder: &MPoly,
) -> bool {
    // Reassembly.
    let mut sum = remainder.clone();
    for (q, g) in quotients.iter().zip(divisors) {
        sum = sum.add(&q.mul(g));
    }
    if &sum != f {
        return false;
    }
    // No remainder monomial divisible by a leading monomial.
    for (m, _) in remainder.terms() {
        for g in divisors {
            if g.leading().expect("nonzero").0.divides(m) {
                return false;
            }
        }
    }
    // Leading-monomial bound.
    if let Some((lm_f, _)) = f.leading() {
        for (q, g) in quotients.iter().zip(divisors) {
            let prod = q.mul(g);
            if let Some((lm_qg, _)) = prod.leading() {
                if lm_qg > lm_f {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat_int, Rat};
    use crate::varieties::mpoly::{parse_curve, VarSet};
    use crate::varieties::xk::build_xk;

    /// d1^2 as a polynomial in the roster [d1, x, y].
    fn d1_squared() -> MPoly {
        let vars = VarSet::affine(1);
        MPoly::var(vars, 0).pow(2)
    }

    /// x^2 + y^2 - d1^2 in the roster [d1, x, y].
    fn sphere_gen() -> MPoly {
        let vars = VarSet::affine(1);
        let x = MPoly::var(vars, vars.x_index());
        let y = MPoly::var(vars, vars.y_index());
        let d1 = MPoly::var(vars, 0);
        x.pow(2).add(&y.pow(2)).sub(&d1.pow(2))
    }

    #[test]
    fn mdiv_single_step() {
        // Dividing d1^2 by {x^2 + y^2 - d1^2} leaves x^2 + y^2.
        let f = d1_squared();
        let (quots, rem) = mdiv(&f, &[sphere_gen()]).unwrap();
        assert_eq!(format!("{rem}"), "x^2 + y^2");
        assert_eq!(format!("{}", quots[0]), "1");
        assert!(check_division_contract(&f, &[sphere_gen()], &quots, &rem));
    }

    #[test]
    fn mdiv_indivisible_passthrough() {
        let vars = VarSet::affine(1);
        let f = MPoly::var(vars, vars.x_index());
        let (quots, rem) = mdiv(&f, &[sphere_gen()]).unwrap();
        assert_eq!(rem, f);
        assert!(quots[0].is_zero());
    }

    #[test]
    fn mdiv_generator_divides_itself() {
        let f = sphere_gen();
        let (quots, rem) = mdiv(&f, &[sphere_gen()]).unwrap();
        assert!(rem.is_zero());
        assert_eq!(format!("{}", quots[0]), "1");
    }

    #[test]
    fn s_poly_of_distance_generators() {
        // S(Q_i, Q_j) equals d_i^2 Q_j - d_j^2 Q_i up to the sign fixed by
        // the leading coefficients (-1 on both generators).
        let basis = build_xk(1, &[(rat_int(1), rat_int(0)), (rat_int(0), rat_int(1))]).unwrap();
        let q1 = &basis.gens[0];
        let q2 = &basis.gens[1];
        let s = s_poly(q1, q2).unwrap();
        let vars = q1.vars;
        let d1sq = MPoly::var(vars, 0).pow(2);
        let d2sq = MPoly::var(vars, 1).pow(2);
        let expected = d1sq.mul(q2).sub(&d2sq.mul(q1));
        assert_eq!(s, expected);
        assert!(s_poly(q1, q1).unwrap().is_zero());
    }

    #[test]
    fn s_poly_coprime_leads_reduce_to_zero() {
        // Classical fact checked by hand: with coprime leading monomials
        // x^2 + 1 and y^2 + 1, the S-polynomial reduces to zero.
        let f = parse_curve("x^2 + 1").unwrap();
        let g = parse_curve("y^2 + 1").unwrap();
        let s = s_poly(&f, &g).unwrap();
        let (_, rem) = mdiv(&s, &[f, g]).unwrap();
        assert!(rem.is_zero());
    }

    #[test]
    fn buchberger_distance_generators_pass() {
        let basis = build_xk(
            5,
            &[
                (rat_int(1), rat_int(2)),
                (rat_int(-3), rat_int(1)),
                (rat_int(0), rat_int(7)),
            ],
        )
        .unwrap();
        assert!(buchberger_check(&basis.gens).unwrap().is_pass());
    }

    #[test]
    fn buchberger_failure_witnessed() {
        // {x^2 - y, x} is not a Gröbner basis: the S-pair leaves -y (up to
        // sign, per the division order).
        let f = parse_curve("x^2 - y").unwrap();
        let g = parse_curve("x").unwrap();
        match buchberger_check(&[f, g]).unwrap() {
            BuchbergerOutcome::Fail { i: 0, j: 1, remainder } => {
                assert_eq!(format!("{remainder}"), "y");
            }
            other => panic!("expected failure witness, got {other:?}"),
        }
    }

    #[test]
    fn buchberger_singleton_passes() {
        assert!(buchberger_check(&[sphere_gen()]).unwrap().is_pass());
        assert!(buchberger_check(&[]).is_err());
    }

    #[test]
    fn division_contract_on_random_combinations() {
        // Exercise mdiv against products and sums of the generators.
        let basis = build_xk(
            3,
            &[
                (Rat::new(1.into(), 2.into()), rat_int(0)),
                (rat_int(2), rat_int(1)),
            ],
        )
        .unwrap();
        let gens = &basis.gens;
        let combos = [
            gens[0].mul(&gens[1]),
            gens[0].add(&gens[1]).pow(2),
            gens[0].mul(&gens[0]).sub(&gens[1]),
            s_poly(&gens[0], &gens[1]).unwrap(),
        ];
        for f in &combos {
            let (q, r) = mdiv(f, gens).unwrap();
            assert!(check_division_contract(f, gens, &q, &r));
        }
    }
}
