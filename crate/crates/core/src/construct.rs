//! Generators for the classical integer distance families — collinear
//! points plus an apex, and concyclic points built from Pythagorean
//! angles — together with distance-preserving transforms and fixture
//! loading.

use crate::exactmath::{factorize, rat_int, Rat};
use crate::geom::{verify_ids, GeomError, NormalizedPoint, PointSet};
use crate::io::{IoError, PointSetFile};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("apex height must be positive")]
    BadHeight,
    #[error("invalid pythagorean triple ({0}, {1}, {2})")]
    BadTriple(u64, u64, u64),
    #[error("duplicate angles at indices {0} and {1}")]
    DuplicateAngle(usize, usize),
    #[error("empty angle list")]
    NoAngles,
    #[error("translation ({0}, {1}) leaves the set's lattice")]
    OffLatticeTranslation(Rat, Rat),
    #[error("scale factor must be positive")]
    BadScale,
    #[error("fixture not found: {0}")]
    FixtureNotFound(String),
    #[error("fixture failed certification: {0}")]
    FixtureRejected(#[source] GeomError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Io(#[from] IoError),
}

/// Divisor-pair recipe behind [`collinear_plus_apex`]: the same-parity
/// splittings `d1 * d2 = h^2` with `d1 <= d2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApexRecipe {
    pub h: u64,
    pub pairs: Vec<(u64, u64)>,
}

impl ApexRecipe {
    pub fn new(h: u64) -> Result<Self, ConstructError> {
        if h == 0 {
            return Err(ConstructError::BadHeight);
        }
        let h2 = h.checked_mul(h).ok_or(ConstructError::BadHeight)?;
        let mut pairs = Vec::new();
        for d1 in factorize(h2).divisors() {
            let d2 = h2 / d1;
            if d1 <= d2 && (d1 % 2) == (d2 % 2) {
                pairs.push((d1, d2));
            }
        }
        pairs.sort_unstable();
        Ok(ApexRecipe { h, pairs })
    }
}

/// Set with apex `(0, h)` and one collinear point `(x, 0)` for every
/// same-parity divisor pair `(d1, d2)` of `h^2`, where `x = (d2 - d1)/2`,
/// both signs included. The apex then sits at integer distance
/// `(d1 + d2)/2` from each collinear point.
pub fn collinear_plus_apex(h: u64) -> Result<PointSet, ConstructError> {
    let recipe = ApexRecipe::new(h)?;
    let mut xs: Vec<i64> = Vec::new();
    for &(d1, d2) in &recipe.pairs {
        let x = ((d2 - d1) / 2) as i64;
        xs.push(x);
        if x != 0 {
            xs.push(-x);
        }
    }
    xs.sort_unstable();
    let mut points = vec![NormalizedPoint::new(rat_int(0), Rat::from_integer(h.into()))];
    points.extend(xs.into_iter().map(|x| NormalizedPoint::from_ints(x, 0)));
    let set = PointSet::new(1, points)?;
    if set.len() >= 2 {
        verify_ids(&set)?;
    }
    Ok(set)
}

/// An angle `phi` with `sin(phi) = a/c` and `cos(phi) = b/c` drawn from a
/// gcd-reduced Pythagorean triple; `(0, 1, 1)` encodes `phi = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PythagoreanAngle {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl PythagoreanAngle {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self, ConstructError> {
        let bad = ConstructError::BadTriple(a, b, c);
        if c == 0 {
            return Err(bad);
        }
        let aa = a.checked_mul(a).ok_or(ConstructError::BadTriple(a, b, c))?;
        let bb = b.checked_mul(b).ok_or(ConstructError::BadTriple(a, b, c))?;
        let cc = c.checked_mul(c).ok_or(ConstructError::BadTriple(a, b, c))?;
        if aa + bb != cc {
            return Err(bad);
        }
        if a.gcd(&b).gcd(&c) != 1 {
            return Err(bad);
        }
        Ok(PythagoreanAngle { a, b, c })
    }

    pub fn zero() -> Self {
        PythagoreanAngle { a: 0, b: 1, c: 1 }
    }
}

/// Places point `i` at angle `2 phi_i` on a circle about the origin whose
/// radius is half the least common denominator clearing every chord
/// fraction and every angle coordinate, so that all pairwise chords
/// `2r |sin(phi_i - phi_j)|` come out as positive integers.
pub fn concyclic_pythagorean(angles: &[PythagoreanAngle]) -> Result<PointSet, ConstructError> {
    if angles.is_empty() {
        return Err(ConstructError::NoAngles);
    }
    for i in 0..angles.len() {
        for j in (i + 1)..angles.len() {
            if angles[i] == angles[j] {
                return Err(ConstructError::DuplicateAngle(i, j));
            }
        }
    }

    let mut lcm = BigUint::one();
    for angle in angles {
        lcm = lcm.lcm(&BigUint::from(angle.c));
    }
    for i in 0..angles.len() {
        for j in (i + 1)..angles.len() {
            let (ai, bi, ci) = (angles[i].a, angles[i].b, angles[i].c);
            let (aj, bj, cj) = (angles[j].a, angles[j].b, angles[j].c);
            // chord/(2r) = |a_i b_j - b_i a_j| / (c_i c_j), reduced.
            let num = (ai as i128 * bj as i128 - bi as i128 * aj as i128).unsigned_abs();
            let den = ci as u128 * cj as u128;
            let g = num.gcd(&den);
            lcm = lcm.lcm(&BigUint::from(den / g));
        }
    }
    let r = Rat::new(BigInt::from(lcm), BigInt::from(2));

    let points = angles
        .iter()
        .map(|angle| {
            let c2 = Rat::from_integer((angle.c * angle.c).into());
            // cos(2 phi) = (b^2 - a^2)/c^2, sin(2 phi) = 2ab/c^2.
            let cos2phi =
                Rat::from_integer(BigInt::from(angle.b) * angle.b - BigInt::from(angle.a) * angle.a)
                    / &c2;
            let sin2phi =
                Rat::from_integer(BigInt::from(2u32) * angle.a * angle.b) / &c2;
            NormalizedPoint::new(&r * cos2phi, &r * sin2phi)
        })
        .collect();
    let set = PointSet::new(1, points)?;
    if set.len() >= 2 {
        verify_ids(&set)?;
    }
    Ok(set)
}

/// Exact chord length `2r |sin(phi_i)cos(phi_j) - cos(phi_i)sin(phi_j)|`
/// between two placed angles, given the radius used by the generator.
pub fn chord(r: &Rat, ai: &PythagoreanAngle, aj: &PythagoreanAngle) -> Rat {
    let num = (ai.a as i128 * aj.b as i128 - ai.b as i128 * aj.a as i128).unsigned_abs();
    let den = ai.c as u128 * aj.c as u128;
    Rat::from_integer(BigInt::from(2)) * r * Rat::new(BigInt::from(num), BigInt::from(den))
}

/// The radius chosen by [`concyclic_pythagorean`] for an angle list.
pub fn pythagorean_radius(angles: &[PythagoreanAngle]) -> Result<Rat, ConstructError> {
    let set = concyclic_pythagorean(angles)?;
    let p = &set.points[0];
    let d2 = &p.x * &p.x + &p.t * &p.t;
    Ok(crate::exactmath::rat_sqrt(&d2).expect("radius is rational by construction"))
}

/// Distance-preserving (or uniformly scaling) transforms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformOp {
    /// Translate by `(dx, dt*sqrt(m))`; the vector must lie in the set's
    /// lattice.
    Translate { dx: Rat, dt: Rat },
    /// Reflect across the x-axis.
    ReflectX,
    /// Scale all coordinates (hence all distances) by a positive integer.
    Scale { k: u64 },
}

/// Applies `op`; integer-distance certification is preserved (scaling
/// multiplies every distance by the factor).
pub fn transform(set: &PointSet, op: &TransformOp) -> Result<PointSet, ConstructError> {
    let points = match op {
        TransformOp::Translate { dx, dt } => {
            let denom = lattice_denominator(set);
            let denom_rat = Rat::from_integer(denom);
            if !(dx * &denom_rat).is_integer() || !(dt * &denom_rat).is_integer() {
                return Err(ConstructError::OffLatticeTranslation(dx.clone(), dt.clone()));
            }
            set.points
                .iter()
                .map(|p| NormalizedPoint::new(&p.x + dx, &p.t + dt))
                .collect()
        }
        TransformOp::ReflectX => set
            .points
            .iter()
            .map(|p| NormalizedPoint::new(p.x.clone(), -p.t.clone()))
            .collect(),
        TransformOp::Scale { k } => {
            if *k == 0 {
                return Err(ConstructError::BadScale);
            }
            let kr = Rat::from_integer((*k).into());
            set.points
                .iter()
                .map(|p| NormalizedPoint::new(&p.x * &kr, &p.t * &kr))
                .collect()
        }
    };
    Ok(PointSet::new(set.m, points)?)
}

/// Denominator of the set's lattice: `2M` when the minimal origin
/// distance is known, otherwise the least common denominator of the
/// existing coordinates.
fn lattice_denominator(set: &PointSet) -> BigInt {
    if let Some(m) = set.min_origin_distance {
        return BigInt::from(2 * m);
    }
    let mut denom = BigInt::one();
    for p in &set.points {
        denom = denom.lcm(p.x.denom());
        denom = denom.lcm(p.t.denom());
    }
    denom
}

/// Directory holding the bundled fixture files.
pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Loads and certifies a fixture by file path.
pub fn load_fixture_path(path: &Path) -> Result<PointSet, ConstructError> {
    if !path.exists() {
        return Err(ConstructError::FixtureNotFound(
            path.display().to_string(),
        ));
    }
    let file = PointSetFile::read(path)?;
    let set = file.to_point_set()?;
    if set.len() >= 2 {
        verify_ids(&set).map_err(ConstructError::FixtureRejected)?;
    }
    Ok(set)
}

/// Loads a bundled fixture by name (without the `.json` suffix).
pub fn load_fixture(name: &str) -> Result<PointSet, ConstructError> {
    let path = fixture_dir().join(format!("{name}.json"));
    if !path.exists() {
        return Err(ConstructError::FixtureNotFound(name.to_string()));
    }
    load_fixture_path(&path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::geom::{diameter, dist2};
    use num_traits::ToPrimitive;

    #[test]
    fn apex_recipe_parity_pairs() {
        let r = ApexRecipe::new(4).unwrap();
        assert_eq!(r.pairs, vec![(2, 8), (4, 4)]);
        for &(d1, d2) in &r.pairs {
            assert_eq!(d1 * d2, 16);
            assert_eq!(d1 % 2, d2 % 2);
        }
    }

    #[test]
    fn apex_h4() {
        let s = collinear_plus_apex(4).unwrap();
        let mut got: Vec<(i64, i64)> = s
            .points
            .iter()
            .map(|p| (p.x.to_integer().to_i64().unwrap(), p.t.to_integer().to_i64().unwrap()))
            .collect();
        got.sort_unstable();
        assert_eq!(got, vec![(-3, 0), (0, 0), (0, 4), (3, 0)]);
        let cert = verify_ids(&s).unwrap();
        let mut apex_dists: Vec<u64> = (1..s.len()).map(|j| cert.distances[0][j]).collect();
        apex_dists.sort_unstable();
        assert_eq!(apex_dists, vec![4, 5, 5]);
    }

    #[test]
    fn apex_h1_trivial() {
        let s = collinear_plus_apex(1).unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn apex_h12_ten_points() {
        let s = collinear_plus_apex(12).unwrap();
        assert_eq!(s.len(), 10);
        let mut xs: Vec<i64> = s.points[1..]
            .iter()
            .map(|p| p.x.to_integer().to_i64().unwrap())
            .collect();
        xs.sort_unstable();
        assert_eq!(xs, vec![-35, -16, -9, -5, 0, 5, 9, 16, 35]);
        assert_eq!(diameter(&s).unwrap(), 70);
    }

    #[test]
    fn apex_collinear_count_matches_direct_scan() {
        // Independent scan: integer x with x^2 + h^2 a perfect square.
        for h in 1..=200u64 {
            let s = collinear_plus_apex(h).unwrap();
            let mut count = 0u64;
            let bound = (h * h / 2) as i64;
            for x in -bound..=bound {
                let v = (x * x) as u64 + h * h;
                if crate::exactmath::is_square_u64(v).is_some() {
                    count += 1;
                }
            }
            assert_eq!(s.len() as u64, count + 1, "h = {h}");
        }
    }

    #[test]
    fn pythagorean_example_65() {
        let angles = vec![
            PythagoreanAngle::zero(),
            PythagoreanAngle::new(3, 4, 5).unwrap(),
            PythagoreanAngle::new(5, 12, 13).unwrap(),
        ];
        let r = pythagorean_radius(&angles).unwrap();
        assert_eq!(r, rat(65, 2));
        let s = concyclic_pythagorean(&angles).unwrap();
        let cert = verify_ids(&s).unwrap();
        let mut chords = vec![
            cert.distances[0][1],
            cert.distances[0][2],
            cert.distances[1][2],
        ];
        chords.sort_unstable();
        assert_eq!(chords, vec![16, 25, 39]);
    }

    #[test]
    fn pythagorean_single_angle() {
        let s = concyclic_pythagorean(&[PythagoreanAngle::new(3, 4, 5).unwrap()]).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn pythagorean_pair_chord_3() {
        let angles = vec![PythagoreanAngle::zero(), PythagoreanAngle::new(3, 4, 5).unwrap()];
        assert_eq!(pythagorean_radius(&angles).unwrap(), rat(5, 2));
        let s = concyclic_pythagorean(&angles).unwrap();
        assert_eq!(verify_ids(&s).unwrap().distances[0][1], 3);
    }

    #[test]
    fn duplicate_angles_rejected() {
        let a = PythagoreanAngle::new(3, 4, 5).unwrap();
        assert!(matches!(
            concyclic_pythagorean(&[a, a]),
            Err(ConstructError::DuplicateAngle(0, 1))
        ));
    }

    #[test]
    fn transform_scale_doubles_distances() {
        let s = PointSet::new(
            1,
            vec![
                NormalizedPoint::from_ints(0, 0),
                NormalizedPoint::from_ints(3, 0),
                NormalizedPoint::from_ints(0, 4),
            ],
        )
        .unwrap();
        let scaled = transform(&s, &TransformOp::Scale { k: 2 }).unwrap();
        let cert = verify_ids(&scaled).unwrap();
        assert_eq!(cert.distances[0][1], 6);
        assert_eq!(cert.distances[0][2], 8);
        assert_eq!(cert.distances[1][2], 10);
    }

    #[test]
    fn transform_preserves_distance_matrix() {
        let s = collinear_plus_apex(4).unwrap();
        let before = verify_ids(&s).unwrap();
        let reflected = transform(&s, &TransformOp::ReflectX).unwrap();
        assert_eq!(verify_ids(&reflected).unwrap(), before);
        let translated = transform(
            &s,
            &TransformOp::Translate { dx: rat_int(1), dt: rat_int(0) },
        )
        .unwrap();
        assert_eq!(verify_ids(&translated).unwrap(), before);
    }

    #[test]
    fn off_lattice_translation_rejected() {
        let s = collinear_plus_apex(4).unwrap();
        // Minimal origin distance is 3, so the lattice is (1/6) Z.
        assert_eq!(s.min_origin_distance, Some(3));
        let err = transform(
            &s,
            &TransformOp::Translate { dx: rat(1, 7), dt: rat_int(0) },
        )
        .unwrap_err();
        assert!(matches!(err, ConstructError::OffLatticeTranslation(..)));
        assert!(transform(
            &s,
            &TransformOp::Translate { dx: rat(1, 6), dt: rat(5, 6) },
        )
        .is_ok());
    }

    #[test]
    fn scale_multiplies_diameter() {
        for k in 1..=4u64 {
            let s = collinear_plus_apex(12).unwrap();
            let scaled = transform(&s, &TransformOp::Scale { k }).unwrap();
            assert_eq!(diameter(&scaled).unwrap(), k * diameter(&s).unwrap());
        }
    }

    #[test]
    fn generators_certify_broadly() {
        for h in 1..=60 {
            let s = collinear_plus_apex(h).unwrap();
            if s.len() >= 2 {
                verify_ids(&s).unwrap();
            }
        }
        let triples = [(0u64, 1u64, 1u64), (3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25)];
        let angles: Vec<PythagoreanAngle> = triples
            .iter()
            .map(|&(a, b, c)| PythagoreanAngle::new(a, b, c).unwrap())
            .collect();
        let s = concyclic_pythagorean(&angles).unwrap();
        verify_ids(&s).unwrap();
        // Every 4-subset of the output is concyclic.
        for i in 0..s.len() {
            for j in (i + 1)..s.len() {
                for k in (j + 1)..s.len() {
                    for l in (k + 1)..s.len() {
                        assert!(crate::geom::concyclic4(
                            &s.points[i],
                            &s.points[j],
                            &s.points[k],
                            &s.points[l],
                            s.m
                        ));
                    }
                }
            }
        }
    }

    #[test]
    fn builtin_triangle_fixture_loads() {
        let s = load_fixture("triangle_3_4_5").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(dist2(&s.points[0], &s.points[1], s.m), rat_int(9));
    }

    #[test]
    fn missing_and_corrupt_fixtures() {
        assert!(matches!(
            load_fixture("no_such_fixture"),
            Err(ConstructError::FixtureNotFound(_))
        ));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, "{not json").unwrap();
        assert!(matches!(
            load_fixture_path(&path),
            Err(ConstructError::Io(_))
        ));
    }
}
