//! Optimal synthesis from the origin and the Lorentzian distance function.
//!
//! The distance d(0, ·) is the supremum of Lorentzian length over
//! future-directed causal curves. Its value splits by target region:
//!
//! | region          | distance | attained by                          |
//! |-----------------|----------|--------------------------------------|
//! | `Outside`       | 0        | — (no causal curve; empty supremum)  |
//! | `LowerBoundary` | 0        | abnormal (lightlike) curve           |
//! | `Interior`      | t ∈ (0,π)| unique normal extremal               |
//! | `UpperBoundary` | π        | — (supremum, not attained)           |
//! | `Apex` (0, π)   | π        | a continuum of normal extremals      |
//! | `Beyond`        | +∞       | — (lengths unbounded)                |
//!
//! The two non-obvious rows are pinned down by explicit comparison
//! constructions, both provided here: the three-segment bypass family whose
//! length grows without bound for `Beyond` targets, and the interior
//! sequence approaching an `UpperBoundary` point whose distances increase
//! to π.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::expmap::{classify, log_map, ReachabilityClass, Side};
use crate::extremal::{abnormal_extremal, normal_extremal, AbnormalBranch, ExtremalClass};
use crate::geometry::{gudermannian, Control, Point};

/// Classification plus Lorentzian distance, with the attainment time when
/// an optimal trajectory exists (`time == Some(value)` exactly then).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceResult {
    pub class: ReachabilityClass,
    /// Finite nonnegative value or `f64::INFINITY`.
    pub value: f64,
    pub time: Option<f64>,
}

/// One sample of a trajectory: time, point, and the control in effect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub point: Point,
    pub control: Control,
}

/// A sampled trajectory. `t` is strictly increasing across `samples`;
/// `continuum` flags the apex target, where the returned ψ₀ = 0
/// representative is one choice out of a continuum of optimal curves.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub kind: ExtremalClass,
    pub continuum: bool,
}

impl Trajectory {
    pub fn endpoint(&self) -> Point {
        self.samples.last().expect("trajectory has samples").point
    }

    pub fn duration(&self) -> f64 {
        self.samples.last().expect("trajectory has samples").t
    }
}

/// Initial vertical coordinate ψ₀ of the unique normal extremal from the
/// origin through an interior target.
pub fn psi_for_target(p: Point) -> Result<f64> {
    Ok(log_map(p)?.psi0)
}

/// Arrival time t ∈ (0, π) of that extremal; equal to the Lorentzian
/// distance, and computed by the same path as `log_map(p).t`.
pub fn time_for_target(p: Point) -> Result<f64> {
    Ok(log_map(p)?.t)
}

/// Lorentzian distance from the origin, with classification and attainment.
pub fn lorentz_distance_from_origin(p: Point) -> DistanceResult {
    let class = classify(p);
    match class {
        ReachabilityClass::Outside => DistanceResult {
            class,
            value: 0.0,
            time: None,
        },
        ReachabilityClass::LowerBoundary(_) => DistanceResult {
            class,
            value: 0.0,
            time: Some(0.0),
        },
        ReachabilityClass::Interior => {
            let t = log_map(p).expect("interior point").t;
            DistanceResult {
                class,
                value: t,
                time: Some(t),
            }
        }
        ReachabilityClass::UpperBoundary(_) => DistanceResult {
            class,
            value: PI,
            time: None,
        },
        ReachabilityClass::Apex => DistanceResult {
            class,
            value: PI,
            time: Some(PI),
        },
        ReachabilityClass::Beyond => DistanceResult {
            class,
            value: f64::INFINITY,
            time: None,
        },
    }
}

/// Optimal trajectory from the origin to `p`, sampled at `n_samples`
/// uniformly spaced times (uniform in t is uniform in length, since t is
/// arclength for normal extremals).
///
/// Interior targets get the normal extremal with ψ₀ = [`psi_for_target`],
/// controls (cosh ψ, sinh ψ); lower-boundary targets the abnormal curve
/// with controls (1, ±1); the apex the ψ₀ = 0 representative with
/// `continuum` set. Everything else has no optimal trajectory.
pub fn synthesis_trajectory(p: Point, n_samples: usize) -> Result<Trajectory> {
    if n_samples < 2 {
        return Err(Error::TooFewSamples { n: n_samples });
    }
    let class = classify(p);
    match class {
        ReachabilityClass::Interior => {
            let coords = log_map(p)?;
            let samples = (0..n_samples)
                .map(|i| {
                    let t = coords.t * i as f64 / (n_samples - 1) as f64;
                    let s = normal_extremal(coords.psi0, t);
                    TrajectorySample {
                        t,
                        point: s.point(),
                        control: s.control(),
                    }
                })
                .collect();
            Ok(Trajectory {
                samples,
                kind: ExtremalClass::Normal,
                continuum: false,
            })
        }
        ReachabilityClass::LowerBoundary(side) => {
            let branch = match side {
                Side::Right => AbnormalBranch::Plus,
                Side::Left => AbnormalBranch::Minus,
                Side::Center => return Err(Error::TargetIsOrigin),
            };
            let duration = p.theta.abs();
            let control = Control::new(1.0, branch.u2());
            let samples = (0..n_samples)
                .map(|i| {
                    let t = duration * i as f64 / (n_samples - 1) as f64;
                    TrajectorySample {
                        t,
                        point: abnormal_extremal(branch, Point::ORIGIN, t),
                        control,
                    }
                })
                .collect();
            Ok(Trajectory {
                samples,
                kind: branch.extremal_class(),
                continuum: false,
            })
        }
        ReachabilityClass::Apex => {
            let samples = (0..n_samples)
                .map(|i| {
                    let t = PI * i as f64 / (n_samples - 1) as f64;
                    TrajectorySample {
                        t,
                        point: Point::new(0.0, t),
                        control: Control::new(1.0, 0.0),
                    }
                })
                .collect();
            Ok(Trajectory {
                samples,
                kind: ExtremalClass::Normal,
                continuum: true,
            })
        }
        _ => Err(Error::NoOptimalTrajectory { class }),
    }
}

/// Length of the three-segment admissible curve from the origin to a
/// target beyond the upper boundary, parametrized by the turning height
/// α > 0:
///
/// ```text
/// L(α) = (φ₁ + gd(|θ₁|) − 2 gd(α)) cosh α
/// ```
///
/// Only the middle (vertical, timelike) segment contributes; the two
/// lightlike legs along cone translates have length zero. For a `Beyond`
/// target the bracket stays positive and L(α) → +∞ as α → ∞, which is what
/// forces the distance to be infinite. The θ₁ < 0 variant mirrors the
/// θ₁ > 0 one through the reflection isometry θ ↦ −θ, so one expression
/// covers all three sign cases of θ₁.
pub fn bypass_curve_length(p: Point, alpha: f64) -> Result<f64> {
    let class = classify(p);
    if class != ReachabilityClass::Beyond {
        return Err(Error::NotBeyond { class });
    }
    let alpha_ok = alpha.is_finite() && alpha > 0.0;
    if !alpha_ok {
        return Err(Error::InvalidAlpha { alpha });
    }
    Ok((p.phi + gudermannian(p.theta.abs()) - 2.0 * gudermannian(alpha)) * alpha.cosh())
}

/// The sampled three-segment bypass curve itself, for cross-checking
/// [`bypass_curve_length`] against the length functional: up the lower cone
/// boundary to height ±α, vertically with control (1, 0), then down a
/// translated cone boundary into the target. Requires α ≥ |θ₁| so the
/// third segment can reach the target.
pub fn bypass_trajectory(p: Point, alpha: f64, n_samples: usize) -> Result<Vec<TrajectorySample>> {
    let length = bypass_curve_length(p, alpha)?;
    if alpha < p.theta.abs() {
        return Err(Error::InvalidAlpha { alpha });
    }
    if n_samples < 2 {
        return Err(Error::TooFewSamples { n: n_samples });
    }
    // construct for θ₁ ≥ 0 and reflect at the end if needed
    let reflect = p.theta < 0.0;
    let theta1 = p.theta.abs();
    let phi1 = p.phi;
    let t1 = alpha;
    let t2 = alpha + length;
    let t3 = t2 + (alpha - theta1);
    let ch_alpha = alpha.cosh();
    let samples = (0..n_samples)
        .map(|i| {
            let t = t3 * i as f64 / (n_samples - 1) as f64;
            let (point, u2) = if t <= t1 {
                (Point::new(t, gudermannian(t)), 1.0)
            } else if t <= t2 {
                (
                    Point::new(alpha, gudermannian(alpha) + (t - t1) / ch_alpha),
                    0.0,
                )
            } else {
                let th = alpha - (t - t2);
                (
                    Point::new(th, phi1 + gudermannian(theta1) - gudermannian(th)),
                    -1.0,
                )
            };
            let (point, u2) = if reflect {
                (Point::new(-point.theta, point.phi), -u2)
            } else {
                (point, u2)
            };
            TrajectorySample {
                t,
                point,
                control: Control::new(1.0, u2),
            }
        })
        .collect();
    Ok(samples)
}

/// Smallest admissible index n₀ = ⌈1 / (π/2 − gd(|θ̃|))⌉ of the
/// upper-boundary approach sequence.
pub fn sequence_start(theta_tilde: f64) -> Result<u64> {
    if theta_tilde == 0.0 {
        return Err(Error::ZeroTheta);
    }
    Ok((1.0 / (FRAC_PI_2 - gudermannian(theta_tilde.abs()))).ceil() as u64)
}

/// Distance from the origin to qₙ = (θ̃, π − gd(|θ̃|) − 1/n), the n-th point
/// of the interior sequence approaching the upper-boundary point over θ̃.
/// Increasing in n with limit π, which pins the boundary distance at π.
pub fn upper_boundary_distance_sequence(theta_tilde: f64, n: u64) -> Result<f64> {
    let n0 = sequence_start(theta_tilde)?;
    if n < n0 {
        return Err(Error::IndexBelowBound { n, n0 });
    }
    let q = Point::new(
        theta_tilde,
        PI - gudermannian(theta_tilde.abs()) - 1.0 / n as f64,
    );
    time_for_target(q)
}

/// Whether `p` lies in the closed reachable set of `q0`.
///
/// The boundary consists of the two abnormal curves through `q0`, so the
/// condition is φ − φ₀ ≥ |gd(θ) − gd(θ₀)|; this is the set the admissible
/// flow actually sweeps (the constant-control solutions of the system pass
/// through φ₀ + (u₁/u₂)(gd(θ₀ + u₂t) − gd(θ₀))).
pub fn reachable_from(q0: Point, p: Point) -> bool {
    p.phi - q0.phi >= (gudermannian(p.theta) - gudermannian(q0.theta)).abs()
}

/// Variant that instead translates the origin boundary profile to `q0`,
/// i.e. tests φ − φ₀ ≥ gd(|θ − θ₀|). Coincides with [`reachable_from`]
/// when θ₀ = 0 and is strictly wider otherwise (gd is concave on θ ≥ 0);
/// kept for comparison.
pub fn reachable_from_translated_boundary(q0: Point, p: Point) -> bool {
    p.phi - q0.phi >= gudermannian((p.theta - q0.theta).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::first_integral;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn psi_for_target_values() {
        for &phi in &[0.3, FRAC_PI_2, 2.9] {
            assert_eq!(psi_for_target(Point::new(0.0, phi)).unwrap(), 0.0);
        }
        assert!((psi_for_target(Point::new(1.0, FRAC_PI_2)).unwrap() - 1.0).abs() < 1e-14);
        // frozen from a 50-digit evaluation of both the acos and the
        // arcsin/tan forms of the inverse (they agree to all digits)
        let psi = psi_for_target(Point::new(0.5, 2.0)).unwrap();
        assert!((psi - 0.5603181141552463).abs() < 1e-14, "psi {psi}");
    }

    #[test]
    fn time_for_target_values() {
        assert!((time_for_target(Point::new(0.0, FRAC_PI_2)).unwrap() - FRAC_PI_2).abs() < 1e-15);
        // vertical geodesic: unit speed, time equals phi
        for &phi in &[0.2, 1.0, 2.0, 3.0] {
            assert!((time_for_target(Point::new(0.0, phi)).unwrap() - phi).abs() < 1e-13);
        }
        let t = time_for_target(Point::new(0.5, 2.0)).unwrap();
        assert!((t - 2.0592466334331694).abs() < 1e-13, "t {t}");
    }

    #[test]
    fn synthesis_reaches_the_target() {
        let p = Point::new(0.5, 2.0);
        let psi = psi_for_target(p).unwrap();
        let t = time_for_target(p).unwrap();
        let end = normal_extremal(psi, t);
        assert!((end.theta - p.theta).abs() < 1e-9);
        assert!((end.phi - p.phi).abs() < 1e-9);
    }

    #[test]
    fn distance_dispatch_table() {
        let d = lorentz_distance_from_origin(Point::new(0.0, FRAC_PI_2));
        assert_eq!(d.class, ReachabilityClass::Interior);
        assert!((d.value - FRAC_PI_2).abs() < 1e-12);
        assert_eq!(d.time, Some(d.value));

        let d = lorentz_distance_from_origin(Point::new(2.0, gudermannian(2.0)));
        assert_eq!(d.class, ReachabilityClass::LowerBoundary(Side::Right));
        assert_eq!(d.value, 0.0);
        assert_eq!(d.time, Some(0.0));

        let d = lorentz_distance_from_origin(Point::new(1.0, 3.0));
        assert_eq!(d.class, ReachabilityClass::Beyond);
        assert!(d.value.is_infinite() && d.time.is_none());

        let d = lorentz_distance_from_origin(Point::new(0.0, PI));
        assert_eq!(d.class, ReachabilityClass::Apex);
        assert!((d.value - PI).abs() < 1e-12);
        assert_eq!(d.time, Some(d.value));

        let d = lorentz_distance_from_origin(Point::new(1.0, PI - gudermannian(1.0)));
        assert_eq!(d.class, ReachabilityClass::UpperBoundary(Side::Right));
        assert_eq!(d.value, PI);
        assert_eq!(d.time, None);

        let d = lorentz_distance_from_origin(Point::new(0.5, 0.1));
        assert_eq!(d.class, ReachabilityClass::Outside);
        assert_eq!(d.value, 0.0);
        assert_eq!(d.time, None);
    }

    #[test]
    fn vertical_trajectory_samples() {
        let traj = synthesis_trajectory(Point::new(0.0, FRAC_PI_2), 3).unwrap();
        assert_eq!(traj.kind, ExtremalClass::Normal);
        assert!(!traj.continuum);
        let ts: Vec<f64> = traj.samples.iter().map(|s| s.t).collect();
        assert!((ts[0] - 0.0).abs() < 1e-15);
        assert!((ts[1] - FRAC_PI_4).abs() < 1e-15);
        assert!((ts[2] - FRAC_PI_2).abs() < 1e-15);
        for s in &traj.samples {
            assert_eq!(s.point.theta, 0.0);
            assert!((s.point.phi - s.t).abs() < 1e-14);
            assert_eq!(s.control, Control::new(1.0, 0.0));
        }
    }

    #[test]
    fn interior_trajectory_hits_endpoint() {
        let p = Point::new(1.0, FRAC_PI_2);
        let traj = synthesis_trajectory(p, 33).unwrap();
        let end = traj.endpoint();
        assert!((end.theta - p.theta).abs() < 1e-9);
        assert!((end.phi - p.phi).abs() < 1e-9);
        // controls are the unit-speed normal controls
        for s in &traj.samples {
            assert!((s.control.cone_gap() - 1.0).abs() < 1e-12);
        }
        // the conserved quantity is the same at both ends
        let psi0 = psi_for_target(p).unwrap();
        let d0 = first_integral(&normal_extremal(psi0, 0.0));
        let d1 = first_integral(&normal_extremal(psi0, traj.duration()));
        assert!((d0 - d1).abs() < 1e-12);
    }

    #[test]
    fn abnormal_trajectory_to_the_lower_boundary() {
        let target = Point::new(2.0, gudermannian(2.0));
        let traj = synthesis_trajectory(target, 3).unwrap();
        assert_eq!(traj.kind, ExtremalClass::AbnormalPlus);
        for s in &traj.samples {
            assert_eq!(s.control, Control::new(1.0, 1.0));
        }
        let end = traj.endpoint();
        assert!((end.theta - 2.0).abs() < 1e-12);
        assert!((end.phi - gudermannian(2.0)).abs() < 1e-12);

        let target = Point::new(-1.5, gudermannian(1.5));
        let traj = synthesis_trajectory(target, 4).unwrap();
        assert_eq!(traj.kind, ExtremalClass::AbnormalMinus);
        assert!((traj.endpoint().theta + 1.5).abs() < 1e-12);
    }

    #[test]
    fn apex_trajectory_is_flagged_as_one_of_many() {
        let traj = synthesis_trajectory(Point::new(0.0, PI), 5).unwrap();
        assert!(traj.continuum);
        assert_eq!(traj.kind, ExtremalClass::Normal);
        let end = traj.endpoint();
        assert_eq!(end.theta, 0.0);
        assert!((end.phi - PI).abs() < 1e-15);
    }

    #[test]
    fn no_trajectory_for_unreachable_targets() {
        for p in [
            Point::new(1.0, 3.0),                    // beyond
            Point::new(1.0, PI - gudermannian(1.0)), // upper boundary
            Point::new(0.5, 0.1),                    // outside
        ] {
            assert!(matches!(
                synthesis_trajectory(p, 10),
                Err(Error::NoOptimalTrajectory { .. })
            ));
        }
        assert!(matches!(
            synthesis_trajectory(Point::ORIGIN, 10),
            Err(Error::TargetIsOrigin)
        ));
        assert!(matches!(
            synthesis_trajectory(Point::new(0.0, FRAC_PI_2), 1),
            Err(Error::TooFewSamples { n: 1 })
        ));
    }

    #[test]
    fn bypass_length_frozen_values() {
        // target (1, 2.8), frozen from a 50-digit evaluation
        let p = Point::new(1.0, 2.8);
        let cases = [
            (1.0, 2.984673653681565),
            (2.0, 3.996387900158318),
            (5.0, 40.89919607889305),
            (10.0, 5774.881516258038),
        ];
        for &(alpha, expect) in &cases {
            let l = bypass_curve_length(p, alpha).unwrap();
            assert!(
                (l - expect).abs() < 1e-10 * expect.max(1.0),
                "alpha {alpha}: {l}"
            );
        }
        // mirror target gives the same lengths
        let m = Point::new(-1.0, 2.8);
        for &(alpha, expect) in &cases[..3] {
            let l = bypass_curve_length(m, alpha).unwrap();
            assert!((l - expect).abs() < 1e-12 * expect.max(1.0));
        }
        // alpha -> 0+ limit is phi1 + gd(theta1)
        let l = bypass_curve_length(p, 1e-9).unwrap();
        assert!((l - 3.6657694832396586).abs() < 1e-6);
    }

    #[test]
    fn bypass_length_grows_monotonically_for_large_alpha() {
        let p = Point::new(1.0, 2.8);
        let mut prev = bypass_curve_length(p, 5.0).unwrap();
        for i in 1..=20 {
            let alpha = 5.0 + 0.5 * i as f64;
            let l = bypass_curve_length(p, alpha).unwrap();
            assert!(l > prev, "L({alpha}) = {l} not above {prev}");
            prev = l;
        }
        assert!(prev > 1e3);
    }

    #[test]
    fn bypass_domain_errors() {
        assert!(matches!(
            bypass_curve_length(Point::new(0.5, 2.0), 1.0),
            Err(Error::NotBeyond { .. })
        ));
        assert!(matches!(
            bypass_curve_length(Point::new(1.0, 2.8), 0.0),
            Err(Error::InvalidAlpha { .. })
        ));
        assert!(matches!(
            bypass_trajectory(Point::new(1.0, 2.8), 0.5, 100),
            Err(Error::InvalidAlpha { .. })
        ));
    }

    #[test]
    fn bypass_samples_connect_origin_to_target() {
        for p in [
            Point::new(1.0, 2.8),
            Point::new(-1.0, 2.8),
            Point::new(0.0, 3.3),
        ] {
            let samples = bypass_trajectory(p, 2.0, 4001).unwrap();
            let first = samples.first().unwrap();
            assert_eq!(first.point, Point::ORIGIN);
            let last = samples.last().unwrap();
            assert!((last.point.theta - p.theta).abs() < 1e-12, "{p:?}");
            assert!((last.point.phi - p.phi).abs() < 1e-12, "{p:?}");
            for w in samples.windows(2) {
                assert!(w[1].t > w[0].t);
            }
            for s in &samples {
                assert!(s.control.is_admissible());
            }
        }
    }

    #[test]
    fn sequence_bound_and_values() {
        assert_eq!(sequence_start(1.0).unwrap(), 2); // ceil(1.4183857...)
        assert!(matches!(sequence_start(0.0), Err(Error::ZeroTheta)));
        assert!(matches!(
            upper_boundary_distance_sequence(1.0, 1),
            Err(Error::IndexBelowBound { n: 1, n0: 2 })
        ));

        let d10 = upper_boundary_distance_sequence(1.0, 10).unwrap();
        assert!((d10 - 2.641795544412876).abs() < 1e-13);
        assert!(d10 > FRAC_PI_2 && d10 < PI);

        let d = upper_boundary_distance_sequence(1.0, 1_000_000).unwrap();
        assert!((PI - d - 0.001533102686597899).abs() < 1e-12);
    }

    #[test]
    fn sequence_increases_toward_pi() {
        let mut prev = 0.0;
        for k in 1..=6 {
            let d = upper_boundary_distance_sequence(1.0, 10u64.pow(k)).unwrap();
            assert!(d > prev);
            prev = d;
        }
        assert!(PI - prev < 0.01);
    }

    #[test]
    fn reachability_from_origin_matches_classification() {
        for &(th, ph) in &[
            (0.5, 2.0),
            (0.0, 0.1),
            (1.0, 3.0),
            (2.0, 0.5),
            (-1.0, 0.2),
            (0.3, -1.0),
        ] {
            let p = Point::new(th, ph);
            let reach = reachable_from(Point::ORIGIN, p);
            let class = classify(p);
            assert_eq!(reach, class != ReachabilityClass::Outside, "{p:?}");
            assert_eq!(
                reach,
                reachable_from_translated_boundary(Point::ORIGIN, p),
                "{p:?}"
            );
        }
    }

    #[test]
    fn reachability_boundary_is_the_abnormal_curve() {
        let q0 = Point::new(1.0, 0.0);
        let on_boundary = abnormal_extremal(AbnormalBranch::Plus, q0, 2.0);
        assert!(reachable_from(q0, on_boundary));

        let below = Point::new(3.0, gudermannian(3.0) - gudermannian(1.0) - 1e-3);
        assert!(!reachable_from(q0, below));
        // ... while the translated-profile variant disagrees away from the axis
        let mid = Point::new(3.0, 1.0);
        assert!(reachable_from(q0, mid));
        assert!(!reachable_from_translated_boundary(q0, mid));
    }
}
