//! Numeric monodromy evidence: continuing the sheet functions
//! `d_j(z) = sqrt(2(-a_j + i sqrt(m) b_j)(z - z_j))` along closed
//! polyline loops based at the origin, where
//! `z_j = (a_j + i sqrt(m) b_j)/2`. A loop with winding number `w_j`
//! around `z_j` multiplies the `j`-th sheet by `(-1)^{w_j}`.
//!
//! This is sampled numeric evidence for the sheet-connectivity argument,
//! not a proof: endpoints are snapped to the exact radical values within
//! a relative tolerance.

use super::VarietiesError;
use crate::exactmath::Rat;
use num_complex::Complex64;
use num_traits::ToPrimitive;

/// Signs picked up by each sheet after continuation around a loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVector(pub Vec<i8>);

impl SignVector {
    pub fn all_positive(k: usize) -> Self {
        SignVector(vec![1; k])
    }
}

/// Options for the continuation.
#[derive(Debug, Clone, Copy)]
pub struct MonodromyOptions {
    /// Relative tolerance for the endpoint snap.
    pub snap_tol: f64,
    /// Minimum allowed distance between the loop and any branch point.
    pub guard: f64,
    /// Maximum recursion depth when bisecting a step.
    pub max_depth: u32,
}

impl Default for MonodromyOptions {
    fn default() -> Self {
        MonodromyOptions {
            snap_tol: 1e-6,
            guard: 1e-8,
            max_depth: 48,
        }
    }
}

/// Branch points `z_j = (a_j + i sqrt(m) b_j) / 2` of the sheet functions.
pub fn branch_points(m: u64, points: &[(Rat, Rat)]) -> Vec<Complex64> {
    let sqrt_m = (m as f64).sqrt();
    points
        .iter()
        .map(|(a, b)| {
            Complex64::new(
                a.to_f64().unwrap_or(f64::NAN) / 2.0,
                sqrt_m * b.to_f64().unwrap_or(f64::NAN) / 2.0,
            )
        })
        .collect()
}

/// Winding numbers of a closed polyline around each target point, by
/// summing exact-signed argument increments (integral, so rounding is
/// safe for points off the path).
pub fn winding_numbers(loop_pts: &[Complex64], targets: &[Complex64]) -> Vec<i64> {
    targets
        .iter()
        .map(|&z| {
            let mut total = 0.0f64;
            for w in loop_pts.windows(2) {
                let a = w[0] - z;
                let b = w[1] - z;
                total += (b / a).arg();
            }
            (total / std::f64::consts::TAU).round() as i64
        })
        .collect()
}

fn dist_point_segment(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Continues every sheet along the closed polyline `loop_pts` (which must
/// start and end at the origin) and returns the sign each sheet picks up.
pub fn monodromy_signs(
    m: u64,
    points: &[(Rat, Rat)],
    loop_pts: &[Complex64],
    options: &MonodromyOptions,
) -> Result<SignVector, VarietiesError> {
    if loop_pts.len() < 2
        || loop_pts[0].norm() > options.guard
        || loop_pts[loop_pts.len() - 1].norm() > options.guard
    {
        return Err(VarietiesError::LoopNotClosed);
    }
    let zs = branch_points(m, points);
    for (j, &z) in zs.iter().enumerate() {
        for w in loop_pts.windows(2) {
            if dist_point_segment(z, w[0], w[1]) < options.guard {
                return Err(VarietiesError::LoopTooClose(j));
            }
        }
    }

    let sqrt_m = (m as f64).sqrt();
    let mut signs = Vec::with_capacity(points.len());
    for (j, (a, b)) in points.iter().enumerate() {
        let af = a.to_f64().unwrap_or(f64::NAN);
        let bf = b.to_f64().unwrap_or(f64::NAN);
        // d^2 = f(z) = 2(-a + i sqrt(m) b)(z - z_j), linear and nonzero
        // along the loop.
        let slope = Complex64::new(-af, sqrt_m * bf) * 2.0;
        let f = |z: Complex64| slope * (z - zs[j]);

        let start = f(loop_pts[0]);
        let mut current = start.sqrt();
        let mut f_prev = start;
        for w in loop_pts.windows(2) {
            continue_segment(
                &f,
                w[0],
                w[1],
                &mut current,
                &mut f_prev,
                options.max_depth,
            )?;
        }
        // Snap: the endpoint must be +-(the starting square root).
        let base = start.sqrt();
        let scale = base.norm();
        let sign = if (current - base).norm() <= options.snap_tol * scale {
            1
        } else if (current + base).norm() <= options.snap_tol * scale {
            -1
        } else {
            return Err(VarietiesError::SnapFailed(j));
        };
        signs.push(sign);
    }
    Ok(SignVector(signs))
}

/// Advances the continuous square root of `f` from `from` to `to`,
/// bisecting until each accepted step turns the argument of `f` by less
/// than a quarter turn, which pins the branch choice.
fn continue_segment(
    f: &dyn Fn(Complex64) -> Complex64,
    from: Complex64,
    to: Complex64,
    current: &mut Complex64,
    f_prev: &mut Complex64,
    depth: u32,
) -> Result<(), VarietiesError> {
    let f_next = f(to);
    let dot = f_next * f_prev.conj();
    if dot.re > 0.0 {
        // Argument moved by less than pi/2: the nearer square root is the
        // continuous one.
        let root = f_next.sqrt();
        *current = if (root - *current).norm() <= (root + *current).norm() {
            root
        } else {
            -root
        };
        *f_prev = f_next;
        return Ok(());
    }
    if depth == 0 {
        return Err(VarietiesError::SnapFailed(0));
    }
    let mid = (from + to) * 0.5;
    continue_segment(f, from, mid, current, f_prev, depth - 1)?;
    continue_segment(f, mid, to, current, f_prev, depth - 1)
}

/// Builds a closed polyline based at the origin that winds once around
/// exactly the targets selected by `pattern` (out along a radial segment,
/// once around a small circle, and back).
pub fn loop_for_pattern(targets: &[Complex64], pattern: &[bool]) -> Vec<Complex64> {
    assert_eq!(targets.len(), pattern.len());
    let mut pts = vec![Complex64::new(0.0, 0.0)];
    for (j, &hit) in pattern.iter().enumerate() {
        if !hit {
            continue;
        }
        let z = targets[j];
        // Radius: a third of the distance to the nearest other feature.
        let mut clearance = z.norm();
        for (i, &other) in targets.iter().enumerate() {
            if i != j {
                clearance = clearance.min((z - other).norm());
            }
        }
        let r = clearance / 3.0;
        let dir = if z.norm() > 0.0 {
            z / z.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let entry = z - dir * r;
        pts.push(entry);
        let segments = 64;
        let base_angle = (entry - z).arg();
        for s in 1..=segments {
            let angle = base_angle + std::f64::consts::TAU * (s as f64) / (segments as f64);
            pts.push(z + Complex64::from_polar(r, angle));
        }
        pts.push(Complex64::new(0.0, 0.0));
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat_int;

    fn pts(coords: &[(i64, i64)]) -> Vec<(Rat, Rat)> {
        coords
            .iter()
            .map(|&(a, b)| (rat_int(a), rat_int(b)))
            .collect()
    }

    #[test]
    fn null_homotopic_loop_keeps_signs() {
        let points = pts(&[(1, 0), (0, 1), (2, 2)]);
        let zs = branch_points(3, &points);
        let lp = loop_for_pattern(&zs, &[false, false, false]);
        let signs = monodromy_signs(3, &points, &lp, &MonodromyOptions::default()).unwrap();
        assert_eq!(signs, SignVector::all_positive(3));
    }

    #[test]
    fn single_winding_flips_one_sheet() {
        let points = pts(&[(2, 0), (0, 2), (-3, 1)]);
        let zs = branch_points(1, &points);
        for j in 0..points.len() {
            let mut pattern = vec![false; points.len()];
            pattern[j] = true;
            let lp = loop_for_pattern(&zs, &pattern);
            // The loop must wind exactly as requested.
            let winds = winding_numbers(&lp, &zs);
            for (i, &w) in winds.iter().enumerate() {
                assert_eq!(w, i64::from(i == j), "target {i}, loop around {j}");
            }
            let signs = monodromy_signs(1, &points, &lp, &MonodromyOptions::default()).unwrap();
            for (i, &s) in signs.0.iter().enumerate() {
                assert_eq!(s, if i == j { -1 } else { 1 });
            }
        }
    }

    #[test]
    fn winding_all_flips_all() {
        let points = pts(&[(1, 1), (-2, 1)]);
        let zs = branch_points(2, &points);
        let lp = loop_for_pattern(&zs, &[true, true]);
        let signs = monodromy_signs(2, &points, &lp, &MonodromyOptions::default()).unwrap();
        assert_eq!(signs.0, vec![-1, -1]);
    }

    #[test]
    fn signs_depend_only_on_winding_pattern() {
        let points = pts(&[(2, 1), (0, 3)]);
        let zs = branch_points(5, &points);
        let pattern = [true, false];
        let coarse = loop_for_pattern(&zs, &pattern);
        // A homotopic rediscretization: drop to a 17-gon around the target.
        let mut fine = vec![Complex64::new(0.0, 0.0)];
        let z = zs[0];
        let r = (z.norm()).min((z - zs[1]).norm()) / 4.0;
        let entry = z - z / z.norm() * r;
        fine.push(entry);
        let base = (entry - z).arg();
        for s in 1..=17 {
            let ang = base + std::f64::consts::TAU * (s as f64) / 17.0;
            fine.push(z + Complex64::from_polar(r, ang));
        }
        fine.push(Complex64::new(0.0, 0.0));

        assert_eq!(winding_numbers(&coarse, &zs), winding_numbers(&fine, &zs));
        let a = monodromy_signs(5, &points, &coarse, &MonodromyOptions::default()).unwrap();
        let b = monodromy_signs(5, &points, &fine, &MonodromyOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn loop_through_branch_point_rejected() {
        let points = pts(&[(2, 0)]);
        let zs = branch_points(1, &points);
        // Segment passing straight through z_1 = (1, 0).
        let lp = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        assert!(matches!(
            monodromy_signs(1, &points, &lp, &MonodromyOptions::default()),
            Err(VarietiesError::LoopTooClose(0))
        ));
        let _ = zs;
    }

    #[test]
    fn open_path_rejected() {
        let points = pts(&[(2, 0)]);
        let lp = vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)];
        assert!(matches!(
            monodromy_signs(1, &points, &lp, &MonodromyOptions::default()),
            Err(VarietiesError::LoopNotClosed)
        ));
    }
}
