//! Counting machinery for integer distance sets on lines and circles:
//! the divisor audit for collinear configurations, canonicalization of
//! circle radii to the form `n/(2*sqrt(D))`, the chord-divisibility flip,
//! Legendre splitting, representation-count capacities, and the
//! large-radius arc check.

use crate::exactmath::{
    self, count_representations, is_squarefree, legendre, rat_int, rat_to_int, tau, ExactError,
    Rat,
};
use crate::geom::{
    min_angle_cos2, verify_ids, GeomError, MinAngleReport, NormalizedPoint, PointSet,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("need at least {0} collinear points")]
    TooFewPoints(usize),
    #[error("line x-coordinates must be strictly increasing")]
    NotIncreasing,
    #[error("apex lies on the line")]
    ApexOnLine,
    #[error("divisor identity failed at point {0}")]
    IdentityFailure(usize),
    #[error("triangle sides are too large for exact canonicalization")]
    SidesTooLarge,
    #[error("gcd({n}, {d}) != 1")]
    NotCoprime { n: u64, d: u64 },
    #[error("{0} must be squarefree and positive")]
    NotSquarefree(u64),
    #[error("set is not concyclic: point {0} is off the common circle")]
    NotConcyclic(usize),
    #[error("no non-collinear triple determines a circle")]
    NoCircle,
    #[error("circle radius^2 {actual} does not match the declared form {expected}")]
    RadiusMismatch { actual: Rat, expected: Rat },
    #[error("chord {length} between points {i} and {j} is not divisible by {m1}; this would falsify the flip step")]
    ChordNotDivisible { i: usize, j: usize, length: u64, m1: u64 },
    #[error("point {0} lies outside the box [-N, N]^2")]
    OutsideBox(usize),
    #[error("certified input contradicts the arc bound; this should be impossible")]
    ContradictsArcBound,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Audit of a collinear configuration with an off-line apex: the product
/// decomposition `D^2 q2^2 = [D b_i + D(q1 - m_i)] [D b_i - D(q1 - m_i)]`
/// holds for every collinear point, so the number of collinear points is
/// bounded by the divisor count of the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineAuditReport {
    /// Integer span between the extreme collinear points.
    pub a: BigInt,
    /// The scaling integer `2a / gcd(b_1^2 - b_K^2 + a^2, 2a)`.
    pub d_scale: BigInt,
    /// The integer `D^2 q2^2`.
    pub target: BigInt,
    /// Divisor count of the target.
    pub tau_target: u64,
    /// Number of collinear points audited.
    pub k: usize,
    /// Number of distinct divisors `D b_i + D(q1 - m_i)` observed.
    pub divisors_observed: usize,
    /// True when the closed form for `q1 - m_1` and every product
    /// decomposition were verified exactly.
    pub identity_checked: bool,
}

/// Runs the divisor audit for collinear points `(x_i, 0)` (strictly
/// increasing `x_i`) and an apex `(q1, t*sqrt(m))` off the line. All
/// points together must form a certified integer distance set.
pub fn audit_collinear(
    line_xs: &[Rat],
    apex: &NormalizedPoint,
    m: u64,
) -> Result<LineAuditReport, BoundsError> {
    let k = line_xs.len();
    if k < 2 {
        return Err(BoundsError::TooFewPoints(2));
    }
    if line_xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BoundsError::NotIncreasing);
    }
    if apex.t.is_zero() {
        return Err(BoundsError::ApexOnLine);
    }

    let mut points: Vec<NormalizedPoint> = line_xs
        .iter()
        .map(|x| NormalizedPoint::new(x.clone(), rat_int(0)))
        .collect();
    points.push(apex.clone());
    let set = PointSet::new(m, points)?;
    let cert = verify_ids(&set)?;
    let apex_idx = k;
    let b: Vec<BigInt> = (0..k)
        .map(|i| BigInt::from(cert.distances[apex_idx][i]))
        .collect();
    let a = BigInt::from(cert.distances[0][k - 1]);

    // D = 2a / gcd(b_1^2 - b_K^2 + a^2, 2a).
    let numer = &b[0] * &b[0] - &b[k - 1] * &b[k - 1] + &a * &a;
    let two_a = BigInt::from(2) * &a;
    let g = numer.gcd(&two_a);
    let d_scale = &two_a / &g;

    // Closed form q1 - m_1 = (b_1^2 - b_K^2 + a^2) / 2a.
    let q1 = &apex.x;
    let lhs = q1 - &line_xs[0];
    let rhs = Rat::new(numer.clone(), two_a.clone());
    if lhs != rhs {
        return Err(BoundsError::IdentityFailure(0));
    }

    // Product decomposition per point, all in integer arithmetic.
    let d_rat = Rat::from_integer(d_scale.clone());
    let mut target: Option<BigInt> = None;
    let mut divisors: Vec<BigInt> = Vec::with_capacity(k);
    for i in 0..k {
        let offset = &d_rat * (q1 - &line_xs[i]);
        let offset = rat_to_int(&offset).ok_or(BoundsError::IdentityFailure(i))?;
        let u = &d_scale * &b[i] + &offset;
        let v = &d_scale * &b[i] - &offset;
        let prod = &u * &v;
        match &target {
            None => target = Some(prod),
            Some(t) if *t != prod => return Err(BoundsError::IdentityFailure(i)),
            _ => {}
        }
        divisors.push(u);
    }
    let target = target.expect("k >= 2");

    // Independent check: target = D^2 q2^2 with q2^2 = m t^2.
    let q2sq = Rat::from_integer(BigInt::from(m)) * &apex.t * &apex.t;
    let direct = &d_rat * &d_rat * q2sq;
    if rat_to_int(&direct) != Some(target.clone()) {
        return Err(BoundsError::IdentityFailure(0));
    }

    divisors.sort();
    divisors.dedup();
    let divisors_observed = divisors.len();

    let target_u64 = target
        .to_u64()
        .ok_or_else(|| ExactError::TooLarge(target.clone()))?;
    let tau_target = tau(target_u64)?;
    Ok(LineAuditReport {
        a,
        d_scale,
        target,
        tau_target,
        k,
        divisors_observed,
        identity_checked: true,
    })
}

/// A circle radius in the reduced form `n / (2*sqrt(D))` with
/// `gcd(n, D) = 1` and `D` squarefree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalRadius {
    pub n: u64,
    pub d: u64,
}

impl CanonicalRadius {
    pub fn new(n: u64, d: u64) -> Result<Self, BoundsError> {
        if d == 0 || !is_squarefree(d) {
            return Err(BoundsError::NotSquarefree(d));
        }
        if n == 0 || n.gcd(&d) != 1 {
            return Err(BoundsError::NotCoprime { n, d });
        }
        Ok(CanonicalRadius { n, d })
    }

    /// The exact squared radius `n^2 / (4D)`.
    pub fn radius2(&self) -> Rat {
        Rat::new(
            BigInt::from(self.n) * BigInt::from(self.n),
            BigInt::from(4u32) * BigInt::from(self.d),
        )
    }
}

/// A radius written as `num / (den * sqrt(radicand))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusForm {
    pub num: BigUint,
    pub den: BigUint,
    pub radicand: u64,
}

impl RadiusForm {
    pub fn radius2(&self) -> Rat {
        let n2 = BigInt::from(self.num.clone()).pow(2);
        let d2 = BigInt::from(self.den.clone()).pow(2) * BigInt::from(self.radicand);
        Rat::new(n2, d2)
    }
}

/// One inequality `c(from) <= c(to)` in the canonicalization chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadiusStep {
    /// Dilation by a positive integer: distances scale, integrality is
    /// preserved.
    Dilate { factor: BigUint },
    /// Chord-divisibility flip from `k*sqrt(m1)/(2*sqrt(m2))` down to
    /// `k/(2*sqrt(m1*m2))`.
    Flip { k: BigUint, m1: u64, m2: u64 },
}

/// The full reduction trace from a circumradius to its canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadiusTrace {
    pub initial: RadiusForm,
    pub steps: Vec<(RadiusStep, RadiusForm)>,
}

/// Canonicalizes the circumradius of an integer triangle `(d, d1, d2)` to
/// `n/(2*sqrt(D))` with `gcd(n, D) = 1` and `D` squarefree, emitting the
/// dilation and flip steps applied along the way.
pub fn canonical_radius(
    d: u64,
    d1: u64,
    d2: u64,
) -> Result<(CanonicalRadius, RadiusTrace), BoundsError> {
    // R = d*d1*d2 / sqrt(delta) with delta the Heron product.
    let (s1, s2, s3) = (d as i128, d1 as i128, d2 as i128);
    let f1 = s1 + s2 + s3;
    let f2 = s1 + s2 - s3;
    let f3 = s1 - s2 + s3;
    let f4 = -s1 + s2 + s3;
    if f2 <= 0 || f3 <= 0 || f4 <= 0 || d == 0 || d1 == 0 || d2 == 0 {
        return Err(GeomError::DegenerateTriangle(
            Rat::from_integer(d.into()),
            Rat::from_integer(d1.into()),
            Rat::from_integer(d2.into()),
        )
        .into());
    }
    let delta = (f1 * f2)
        .checked_mul(f3 * f4)
        .and_then(|v| v.to_u64())
        .ok_or(BoundsError::SidesTooLarge)?;
    let (s, f) = exactmath::squarefree_decomp(delta)?;

    // R = l1 / (l2 * sqrt(D)) in lowest terms.
    let prod = BigUint::from(d) * BigUint::from(d1) * BigUint::from(d2);
    let g = prod.gcd(&BigUint::from(s));
    let l1 = &prod / &g;
    let l2 = BigUint::from(s) / &g;
    let big_d = f;
    let initial = RadiusForm {
        num: l1.clone(),
        den: l2.clone(),
        radicand: big_d,
    };
    let mut steps = Vec::new();

    // Bring the denominator to exactly 2 by the smallest dilation.
    let two = BigUint::from(2u32);
    let (mut n, dilate_by) = if l2.is_one() {
        (&l1 * &two, BigUint::one())
    } else if l2 == two {
        (l1.clone(), BigUint::one())
    } else if (&l2 % &two).is_zero() {
        (l1.clone(), &l2 / &two)
    } else {
        (&l1 * &two, l2.clone())
    };
    if !dilate_by.is_one() {
        steps.push((
            RadiusStep::Dilate {
                factor: dilate_by.clone(),
            },
            RadiusForm {
                num: n.clone(),
                den: two.clone(),
                radicand: big_d,
            },
        ));
    }

    // Flip shared primes from the numerator into the radicand.
    loop {
        let shared = n.gcd(&BigUint::from(big_d));
        if shared.is_one() {
            break;
        }
        let m1 = shared.to_u64().expect("divides a u64");
        let m2 = big_d / m1;
        let k = &n / &shared;
        steps.push((
            RadiusStep::Flip {
                k: k.clone(),
                m1,
                m2,
            },
            RadiusForm {
                num: k.clone(),
                den: two.clone(),
                radicand: big_d,
            },
        ));
        n = k;
    }

    let n_u64 = n
        .to_u64()
        .ok_or_else(|| ExactError::TooLarge(BigInt::from(n.clone())))?;
    let canonical = CanonicalRadius::new(n_u64, big_d)?;
    Ok((canonical, RadiusTrace { initial, steps }))
}

/// Exact circle through three points in the normalized model, as
/// `(center_x, center_t, radius^2)`; `None` when the points are collinear.
pub fn circle_through3(
    p1: &NormalizedPoint,
    p2: &NormalizedPoint,
    p3: &NormalizedPoint,
    m: u64,
) -> Option<(Rat, Rat, Rat)> {
    let mr = Rat::from_integer(BigInt::from(m));
    // (x - cx)^2 + m (t - ct)^2 = rho for all three points; subtracting
    // pairs gives a linear system in (cx, ct).
    let lin = |p: &NormalizedPoint, q: &NormalizedPoint| {
        let ax = Rat::from_integer(BigInt::from(2)) * (&p.x - &q.x);
        let at = Rat::from_integer(BigInt::from(2)) * &mr * (&p.t - &q.t);
        let rhs = &p.x * &p.x - &q.x * &q.x + &mr * (&p.t * &p.t - &q.t * &q.t);
        (ax, at, rhs)
    };
    let (a1, b1, c1) = lin(p1, p2);
    let (a2, b2, c2) = lin(p1, p3);
    let det = &a1 * &b2 - &a2 * &b1;
    if det.is_zero() {
        return None;
    }
    let cx = (&c1 * &b2 - &c2 * &b1) / &det;
    let ct = (&a1 * &c2 - &a2 * &c1) / &det;
    let dx = &p1.x - &cx;
    let dt = &p1.t - &ct;
    let rho = &dx * &dx + &mr * &dt * &dt;
    Some((cx, ct, rho))
}

/// The common circle of a concyclic set: center and squared radius.
pub fn common_circle(set: &PointSet) -> Result<(Rat, Rat, Rat), BoundsError> {
    let n = set.len();
    let mut circle = None;
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                if let Some(c) =
                    circle_through3(&set.points[i], &set.points[j], &set.points[k], set.m)
                {
                    circle = Some(c);
                    break 'outer;
                }
            }
        }
    }
    let (cx, ct, rho) = circle.ok_or(BoundsError::NoCircle)?;
    let mr = Rat::from_integer(BigInt::from(set.m));
    for (idx, p) in set.points.iter().enumerate() {
        let dx = &p.x - &cx;
        let dt = &p.t - &ct;
        if &dx * &dx + &mr * &dt * &dt != rho {
            return Err(BoundsError::NotConcyclic(idx));
        }
    }
    Ok((cx, ct, rho))
}

/// Result of a verified flip: the rescaled set and the radii involved.
#[derive(Debug, Clone)]
pub struct FlipReport {
    /// Squared radius of the input set, `k^2 m1 / (4 m2)`.
    pub radius2: Rat,
    /// The rescaled set on radius `k / (2 sqrt(m1 m2))`.
    pub flipped: PointSet,
    /// All chords of the input, each divisible by `m1`.
    pub chords: Vec<u64>,
}

/// Verifies that every chord of a certified concyclic set on radius
/// `k*sqrt(m1)/(2*sqrt(m2))` is divisible by `m1`, then divides all
/// coordinates by `m1` and certifies the result on the flipped radius
/// `k/(2*sqrt(m1*m2))`.
///
/// A chord that fails the divisibility check is reported as a
/// counterexample; it would falsify the flip inequality and is never
/// expected on certified inputs.
pub fn flip_witness(set: &PointSet, k: u64, m1: u64, m2: u64) -> Result<FlipReport, BoundsError> {
    if set.len() < 3 {
        return Err(BoundsError::TooFewPoints(3));
    }
    if m1 == 0 || !is_squarefree(m1) {
        return Err(BoundsError::NotSquarefree(m1));
    }
    if m2 == 0 || !is_squarefree(m2) {
        return Err(BoundsError::NotSquarefree(m2));
    }
    let km1 = k
        .checked_mul(m1)
        .ok_or_else(|| ExactError::TooLarge(BigInt::from(k)))?;
    if km1.gcd(&m2) != 1 {
        return Err(BoundsError::NotCoprime { n: km1, d: m2 });
    }

    let cert = verify_ids(set)?;
    let (_, _, rho) = common_circle(set)?;
    let expected = Rat::new(
        BigInt::from(k) * BigInt::from(k) * BigInt::from(m1),
        BigInt::from(4u32) * BigInt::from(m2),
    );
    if rho != expected {
        return Err(BoundsError::RadiusMismatch {
            actual: rho,
            expected,
        });
    }

    let n = set.len();
    let mut chords = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let length = cert.distances[i][j];
            if length % m1 != 0 {
                return Err(BoundsError::ChordNotDivisible { i, j, length, m1 });
            }
            chords.push(length);
        }
    }

    let m1r = Rat::from_integer(BigInt::from(m1));
    let flipped_points = set
        .points
        .iter()
        .map(|p| NormalizedPoint::new(&p.x / &m1r, &p.t / &m1r))
        .collect();
    let flipped = PointSet::new(set.m, flipped_points)?;
    verify_ids(&flipped)?;
    let (_, _, flipped_rho) = common_circle(&flipped)?;
    let target_rho = Rat::new(
        BigInt::from(k) * BigInt::from(k),
        BigInt::from(4u32) * BigInt::from(m1) * BigInt::from(m2),
    );
    if flipped_rho != target_rho {
        return Err(BoundsError::RadiusMismatch {
            actual: flipped_rho,
            expected: target_rho,
        });
    }
    Ok(FlipReport {
        radius2: rho,
        flipped,
        chords,
    })
}

/// Splits `n = n1 * n2`, sending a prime `p` to `n1` when `(-D/p) = -1`
/// and to `n2` when `(-D/p) = 1`; the prime 2, where the symbol is
/// undefined, goes to `n2`.
pub fn split_by_legendre(n: u64, d: u64) -> Result<(u64, u64), BoundsError> {
    if d == 0 || !is_squarefree(d) {
        return Err(BoundsError::NotSquarefree(d));
    }
    if n == 0 || n.gcd(&d) != 1 {
        return Err(BoundsError::NotCoprime { n, d });
    }
    let mut n1 = 1u64;
    let mut n2 = 1u64;
    for &(p, e) in exactmath::factorize(n).factors() {
        if p == 2 {
            n2 *= p.pow(e);
            continue;
        }
        match legendre(&-BigInt::from(d), p)? {
            -1 => n1 *= p.pow(e),
            1 => n2 *= p.pow(e),
            _ => unreachable!("gcd(n, D) = 1 rules out p | D"),
        }
    }
    Ok((n1, n2))
}

/// Capacity bound for a circle of canonical radius `n/(2*sqrt(D))`: no
/// integer distance set on that circle can exceed the number of lattice
/// points on `x^2 + D y^2 = n2^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleBoundReport {
    pub canonical: CanonicalRadius,
    pub n1: u64,
    pub n2: u64,
    pub capacity: u64,
}

pub fn circle_capacity(cr: &CanonicalRadius) -> Result<CircleBoundReport, BoundsError> {
    let (n1, n2) = split_by_legendre(cr.n, cr.d)?;
    let n2sq = n2
        .checked_mul(n2)
        .ok_or_else(|| ExactError::TooLarge(BigInt::from(n2)))?;
    let capacity = count_representations(cr.d, n2sq)?;
    Ok(CircleBoundReport {
        canonical: *cr,
        n1,
        n2,
        capacity,
    })
}

/// Verdict of the large-radius arc check.
#[derive(Debug, Clone)]
pub enum ArcVerdict {
    /// The squared radius exceeds the threshold below which three
    /// box-bounded integer-distance points could coexist on the circle,
    /// so the set has at most two points.
    AtMostTwoConfirmed { rho: Rat, threshold: Rat },
    /// The radius is small enough that the arc argument concludes
    /// nothing; the exact inequality chain is reported.
    SmallRadiusRegime {
        rho: Rat,
        threshold: Rat,
        min_angle: Option<MinAngleReport>,
        /// `2 N^2 / rho`, the exact upper bound on `sin^2` of any
        /// inscribed angle subtending a box-bounded chord.
        arc_sin2_bound: Rat,
    },
}

/// Checks a certified concyclic set against the large-radius two-point
/// argument, entirely on squared quantities.
///
/// Any non-degenerate triple of integer-distance points in the box has
/// `sin^2(theta) >= 3/(256 N^4)` (its triangle has area at least
/// `sqrt(3)/4` and sides at most `2 sqrt(2) N`), while on a circle of
/// squared radius `rho` every inscribed angle subtending a box chord has
/// `sin^2(theta) = chord^2/(4 rho) <= 2 N^2 / rho`. For
/// `rho > 512 N^6 / 3` the two are incompatible, so at most two points
/// fit.
pub fn large_radius_check(
    set: &PointSet,
    box_n: u64,
    rho_hint: Option<&Rat>,
) -> Result<ArcVerdict, BoundsError> {
    let nrat = Rat::from_integer(BigInt::from(box_n));
    let mr = Rat::from_integer(BigInt::from(set.m));
    for (i, p) in set.points.iter().enumerate() {
        let within_x = p.x.clone().abs() <= nrat;
        let within_t = &mr * &p.t * &p.t <= &nrat * &nrat;
        if !within_x || !within_t {
            return Err(BoundsError::OutsideBox(i));
        }
    }

    let rho = if set.len() >= 3 {
        verify_ids(set)?;
        let (_, _, rho) = common_circle(set)?;
        if let Some(hint) = rho_hint {
            if *hint != rho {
                return Err(BoundsError::RadiusMismatch {
                    actual: rho,
                    expected: hint.clone(),
                });
            }
        }
        rho
    } else {
        rho_hint.cloned().ok_or(BoundsError::NoCircle)?
    };

    // threshold = 512 N^6 / 3.
    let n2 = &nrat * &nrat;
    let threshold = Rat::from_integer(BigInt::from(512u32)) * &n2 * &n2 * &n2 / rat_int(3);
    let arc_sin2_bound = Rat::from_integer(BigInt::from(2u32)) * &n2 / &rho;

    if set.len() <= 2 {
        return Ok(if rho > threshold {
            ArcVerdict::AtMostTwoConfirmed { rho, threshold }
        } else {
            ArcVerdict::SmallRadiusRegime {
                rho,
                threshold,
                min_angle: None,
                arc_sin2_bound,
            }
        });
    }

    // Three or more certified points: the arc bound must hold; a
    // violation would contradict the two-point argument.
    let report = min_angle_cos2(set)?;
    if report.sin2 > arc_sin2_bound || rho > threshold {
        return Err(BoundsError::ContradictsArcBound);
    }
    Ok(ArcVerdict::SmallRadiusRegime {
        rho,
        threshold,
        min_angle: Some(report),
        arc_sin2_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::collinear_plus_apex;
    use crate::exactmath::rat;
    use crate::geom::reconstruct_from_distances;
    use crate::geom::DistanceMatrix;

    fn apex_audit(h: u64) -> LineAuditReport {
        let set = collinear_plus_apex(h).unwrap();
        let mut xs: Vec<Rat> = set.points[1..].iter().map(|p| p.x.clone()).collect();
        xs.sort();
        audit_collinear(&xs, &set.points[0], set.m).unwrap()
    }

    #[test]
    fn audit_apex_h4() {
        let r = apex_audit(4);
        // Span from -3 to 3; b_1 = b_K = 5 by symmetry.
        assert_eq!(r.a, BigInt::from(6));
        assert_eq!(r.k, 3);
        assert!(r.identity_checked);
        assert_eq!(r.divisors_observed, r.k);
        assert!((r.k as u64) <= r.tau_target);
    }

    #[test]
    fn audit_apex_h12() {
        let r = apex_audit(12);
        assert_eq!(r.k, 9);
        assert!(r.identity_checked);
        assert!((r.k as u64) <= r.tau_target);
    }

    #[test]
    fn audit_two_points_degenerates_gracefully() {
        // Collinear points (0,0) and (3,0) with apex (0,4).
        let r = audit_collinear(
            &[rat_int(0), rat_int(3)],
            &NormalizedPoint::from_ints(0, 4),
            1,
        )
        .unwrap();
        assert_eq!(r.k, 2);
        assert!(r.identity_checked);
    }

    #[test]
    fn audit_rejects_apex_on_line() {
        let err = audit_collinear(
            &[rat_int(0), rat_int(3)],
            &NormalizedPoint::from_ints(7, 0),
            1,
        )
        .unwrap_err();
        assert!(matches!(err, BoundsError::ApexOnLine));
    }

    #[test]
    fn canonical_radius_pins() {
        let (c, _) = canonical_radius(3, 4, 5).unwrap();
        assert_eq!((c.n, c.d), (5, 1));
        let (c, _) = canonical_radius(1, 1, 1).unwrap();
        assert_eq!((c.n, c.d), (2, 3));
        let (c, _) = canonical_radius(39, 25, 16).unwrap();
        assert_eq!((c.n, c.d), (65, 1));
        assert!(canonical_radius(1, 2, 3).is_err());
    }

    #[test]
    fn canonical_radius_trace_reproduces_circumradius() {
        let mut checked = 0u32;
        for d in 1..=25u64 {
            for d1 in d..=25 {
                for d2 in d1..=25 {
                    if d + d1 <= d2 {
                        continue;
                    }
                    let (canonical, trace) = canonical_radius(d, d1, d2).unwrap();
                    assert_eq!(canonical.n.gcd(&canonical.d), 1);
                    assert!(is_squarefree(canonical.d));

                    // Walk the trace backwards to recover the original R^2.
                    let mut rho = canonical.radius2();
                    for (step, after) in trace.steps.iter().rev() {
                        assert_eq!(after.radius2(), rho);
                        match step {
                            RadiusStep::Flip { m1, .. } => {
                                let m1r = Rat::from_integer(BigInt::from(*m1));
                                rho = rho * &m1r * &m1r;
                            }
                            RadiusStep::Dilate { factor } => {
                                let f = Rat::from_integer(BigInt::from(factor.clone()));
                                rho = rho / (&f * &f);
                            }
                        }
                    }
                    assert_eq!(rho, trace.initial.radius2());
                    let direct = crate::geom::circumradius2(
                        &Rat::from_integer(d.into()),
                        &Rat::from_integer(d1.into()),
                        &Rat::from_integer(d2.into()),
                    )
                    .unwrap();
                    assert_eq!(rho, direct, "triangle ({d},{d1},{d2})");
                    checked += 1;
                }
            }
        }
        assert!(checked > 500);
    }

    #[test]
    fn split_pins() {
        assert_eq!(split_by_legendre(15, 1).unwrap(), (3, 5));
        assert_eq!(split_by_legendre(1, 7).unwrap(), (1, 1));
        // p = 2 goes to n2 by convention.
        assert_eq!(split_by_legendre(2, 3).unwrap(), (1, 2));
        assert!(split_by_legendre(6, 3).is_err());
    }

    #[test]
    fn split_recombines_and_respects_residues() {
        for d in 1..=50u64 {
            if !is_squarefree(d) {
                continue;
            }
            for n in (1..=10_000u64).step_by(13) {
                if n.gcd(&d) != 1 {
                    continue;
                }
                let (n1, n2) = split_by_legendre(n, d).unwrap();
                assert_eq!(n1 * n2, n);
                for &(p, _) in exactmath::factorize(n1).factors() {
                    assert_eq!(legendre(&-BigInt::from(d), p).unwrap(), -1);
                }
                for &(p, _) in exactmath::factorize(n2).factors() {
                    if p != 2 {
                        assert_eq!(legendre(&-BigInt::from(d), p).unwrap(), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn capacity_pins() {
        let r = circle_capacity(&CanonicalRadius::new(5, 1).unwrap()).unwrap();
        assert_eq!((r.n1, r.n2, r.capacity), (1, 5, 12));
        let r = circle_capacity(&CanonicalRadius::new(2, 3).unwrap()).unwrap();
        // x^2 + 3 y^2 = 4: (+-2, 0) and (+-1, +-1).
        assert_eq!((r.n2, r.capacity), (2, 6));
        let r = circle_capacity(&CanonicalRadius::new(3, 1).unwrap()).unwrap();
        assert_eq!((r.n2, r.capacity), (1, 4));
    }

    /// Scaling a triangle whose canonical radius is n/(2 sqrt(D)) by a
    /// prime factor m1 of D produces a set on radius k sqrt(m1)/(2 sqrt(m2)).
    fn flip_instance(sides: (u64, u64, u64), m1: u64) -> (PointSet, u64, u64) {
        let (canonical, _) = canonical_radius(sides.0, sides.1, sides.2).unwrap();
        assert_eq!(canonical.d % m1, 0);
        let m2 = canonical.d / m1;
        let rows = vec![
            vec![0, sides.0, sides.1],
            vec![sides.0, 0, sides.2],
            vec![sides.1, sides.2, 0],
        ];
        let set = reconstruct_from_distances(&DistanceMatrix::new(rows).unwrap()).unwrap();
        let scaled =
            crate::construct::transform(&set, &crate::construct::TransformOp::Scale { k: m1 })
                .unwrap();
        (scaled, canonical.n, m2)
    }

    #[test]
    fn flip_equilateral_side_three() {
        // Side-3 equilateral triangle sits on radius sqrt(3) = 2 sqrt(3)/2,
        // so k = 2, m1 = 3, m2 = 1; all chords are divisible by 3 and the
        // flipped set is the side-1 triangle on radius 2/(2 sqrt(3)).
        let (set, k, m2) = flip_instance((1, 1, 1), 3);
        assert_eq!((k, m2), (2, 1));
        let report = flip_witness(&set, k, 3, m2).unwrap();
        assert_eq!(report.chords, vec![3, 3, 3]);
        let cert = verify_ids(&report.flipped).unwrap();
        assert_eq!(cert.distances[0][1], 1);
    }

    #[test]
    fn flip_identity_when_m1_is_one() {
        let (canonical, _) = canonical_radius(2, 3, 4).unwrap();
        assert_eq!((canonical.n, canonical.d), (16, 15));
        let (set, k, m2) = flip_instance((2, 3, 4), 1);
        let report = flip_witness(&set, k, 1, m2).unwrap();
        assert_eq!(report.flipped, set);
    }

    #[test]
    fn flip_requires_three_points() {
        let set = PointSet::new(
            1,
            vec![
                NormalizedPoint::from_ints(0, 0),
                NormalizedPoint::from_ints(3, 0),
            ],
        )
        .unwrap();
        assert!(matches!(
            flip_witness(&set, 3, 1, 1),
            Err(BoundsError::TooFewPoints(3))
        ));
    }

    #[test]
    fn arc_check_two_points_huge_circle() {
        let set = PointSet::new(
            1,
            vec![
                NormalizedPoint::from_ints(0, 0),
                NormalizedPoint::from_ints(10, 0),
            ],
        )
        .unwrap();
        // Claimed circle of astronomically large squared radius through
        // the two points.
        let rho = rat(10_000_000_000_000_000, 1);
        match large_radius_check(&set, 10, Some(&rho)).unwrap() {
            ArcVerdict::AtMostTwoConfirmed { .. } => {}
            other => panic!("expected confirmation, got {other:?}"),
        }
    }

    #[test]
    fn arc_check_small_radius_triple() {
        let set = PointSet::new(
            3,
            vec![
                NormalizedPoint::from_ints(0, 0),
                NormalizedPoint::from_ints(2, 0),
                NormalizedPoint::from_ints(1, 1),
            ],
        )
        .unwrap();
        match large_radius_check(&set, 4, None).unwrap() {
            ArcVerdict::SmallRadiusRegime { min_angle, .. } => {
                assert!(min_angle.is_some());
            }
            other => panic!("expected small-radius regime, got {other:?}"),
        }
    }

    #[test]
    fn arc_check_rejects_points_outside_box() {
        let set = PointSet::new(
            1,
            vec![
                NormalizedPoint::from_ints(0, 0),
                NormalizedPoint::from_ints(50, 0),
            ],
        )
        .unwrap();
        assert!(matches!(
            large_radius_check(&set, 10, Some(&rat_int(1))),
            Err(BoundsError::OutsideBox(1))
        ));
    }
}
