//! Independent numerical machinery used to verify the closed forms of the
//! other modules: a fixed-step classical RK4 integrator, central finite
//! differences, and trapezoid quadrature of the Lorentzian length
//! functional. Fixed step with explicit step-halving checks in the tests,
//! rather than an adaptive pair: determinism matters more than adaptivity
//! at these problem sizes.

use crate::error::{Error, Result};
use crate::geometry::CONE_EPS;
use crate::synthesis::TrajectorySample;

/// Right-hand side of an ODE system: writes dy/dt into the last argument.
pub type OdeRhs<'a> = &'a dyn Fn(f64, &[f64], &mut [f64]);

/// An initial-value problem ẏ = rhs(t, y) integrated from `t0` to `t1`
/// (either direction) with fixed `step` magnitude; the last step is
/// shortened to land on `t1` exactly.
pub struct OdeProblem<'a> {
    pub rhs: OdeRhs<'a>,
    pub initial: Vec<f64>,
    pub t0: f64,
    pub t1: f64,
    pub step: f64,
}

/// Result of [`rk4_integrate`]: the state at `t1` plus every intermediate
/// step, including the initial condition.
pub struct Rk4Solution {
    pub final_state: Vec<f64>,
    pub samples: Vec<(f64, Vec<f64>)>,
}

fn rk4_step(rhs: OdeRhs, t: f64, h: f64, y: &mut [f64], scratch: &mut [Vec<f64>]) {
    let n = y.len();
    let [k1, k2, k3, k4, tmp] = scratch else {
        panic!("scratch len 5")
    };
    rhs(t, y, k1);
    for i in 0..n {
        tmp[i] = y[i] + 0.5 * h * k1[i];
    }
    rhs(t + 0.5 * h, tmp, k2);
    for i in 0..n {
        tmp[i] = y[i] + 0.5 * h * k2[i];
    }
    rhs(t + 0.5 * h, tmp, k3);
    for i in 0..n {
        tmp[i] = y[i] + h * k3[i];
    }
    rhs(t + h, tmp, k4);
    for i in 0..n {
        y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

fn rk4_run(prob: &OdeProblem, mut on_step: impl FnMut(f64, &[f64])) -> Result<Vec<f64>> {
    assert!(prob.step > 0.0, "step must be positive");
    let n = prob.initial.len();
    let mut y = prob.initial.clone();
    let mut scratch = vec![vec![0.0; n]; 5];
    on_step(prob.t0, &y);

    let span = prob.t1 - prob.t0;
    if span == 0.0 {
        return Ok(y);
    }
    let dir = span.signum();
    let h = prob.step * dir;
    let full_steps = (span.abs() / prob.step).floor() as u64;
    let mut t = prob.t0;
    for k in 1..=full_steps {
        rk4_step(prob.rhs, t, h, &mut y, &mut scratch);
        t = prob.t0 + h * k as f64;
        if !y.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFiniteState { t });
        }
        on_step(t, &y);
    }
    let h_last = prob.t1 - t;
    if h_last != 0.0 {
        rk4_step(prob.rhs, t, h_last, &mut y, &mut scratch);
        if !y.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFiniteState { t: prob.t1 });
        }
        on_step(prob.t1, &y);
    }
    Ok(y)
}

/// Classical 4th-order Runge–Kutta, global error O(step⁴). Errors with
/// [`Error::NonFiniteState`] as soon as any component leaves the finite
/// range.
pub fn rk4_integrate(prob: &OdeProblem) -> Result<Rk4Solution> {
    let mut samples = Vec::new();
    let final_state = rk4_run(prob, |t, y| samples.push((t, y.to_vec())))?;
    Ok(Rk4Solution {
        final_state,
        samples,
    })
}

/// Same integration without storing the dense output.
pub fn rk4_endpoint(prob: &OdeProblem) -> Result<Vec<f64>> {
    rk4_run(prob, |_, _| {})
}

/// Central difference (f(x+h) − f(x−h)) / 2h of a vector-valued function;
/// O(h²) accurate.
pub fn central_diff<F: Fn(f64) -> Vec<f64>>(f: F, x: f64, h: f64) -> Vec<f64> {
    let fp = f(x + h);
    let fm = f(x - h);
    fp.iter()
        .zip(&fm)
        .map(|(a, b)| (a - b) / (2.0 * h))
        .collect()
}

/// Composite trapezoid quadrature of the Lorentzian length
/// ∫ √(u₁² − u₂²) dt over the stored samples. The integrand is clamped to
/// zero whenever u₁² − u₂² falls below [`CONE_EPS`], so lightlike legs
/// integrate to exactly 0 and roundoff below the cone cannot produce NaN.
pub fn length_functional(samples: &[TrajectorySample]) -> f64 {
    let integrand = |s: &TrajectorySample| {
        let gap = s.control.cone_gap();
        if gap < CONE_EPS {
            0.0
        } else {
            gap.sqrt()
        }
    };
    samples
        .windows(2)
        .map(|w| (w[1].t - w[0].t) * (integrand(&w[0]) + integrand(&w[1])) / 2.0)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Control, Point};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn constant_field_is_integrated_exactly() {
        let rhs = |_: f64, _: &[f64], dy: &mut [f64]| {
            dy[0] = 0.0;
            dy[1] = 1.0;
        };
        let prob = OdeProblem {
            rhs: &rhs,
            initial: vec![0.0, 0.0],
            t0: 0.0,
            t1: 2.0,
            step: 0.1,
        };
        let sol = rk4_integrate(&prob).unwrap();
        assert_eq!(sol.final_state[0], 0.0);
        assert!((sol.final_state[1] - 2.0).abs() < 1e-15);
        assert_eq!(sol.samples.len(), 21);
        assert_eq!(sol.samples.last().unwrap().0, 2.0);
    }

    #[test]
    fn backward_integration_and_partial_last_step() {
        let rhs = |_: f64, y: &[f64], dy: &mut [f64]| dy[0] = y[0];
        let prob = OdeProblem {
            rhs: &rhs,
            initial: vec![1.0],
            t0: 0.0,
            t1: -1.0,
            step: 0.01,
        };
        let y = rk4_endpoint(&prob).unwrap();
        assert!((y[0] - (-1.0f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn hamiltonian_quarter_period() {
        use crate::extremal::{hamiltonian_rhs, ExtremalState};
        let rhs = |_: f64, y: &[f64], dy: &mut [f64]| {
            dy.copy_from_slice(&hamiltonian_rhs(&ExtremalState::new(y[0], y[1], y[2])));
        };
        let prob = OdeProblem {
            rhs: &rhs,
            initial: vec![0.0, 0.0, 1.0],
            t0: 0.0,
            t1: FRAC_PI_2,
            step: 1e-4,
        };
        let y = rk4_endpoint(&prob).unwrap();
        assert!((y[0] - 1.0).abs() < 1e-10);
        assert!((y[1] - FRAC_PI_2).abs() < 1e-10);
        assert!(y[2].abs() < 1e-10);
    }

    #[test]
    fn non_finite_states_are_reported() {
        // blows up in finite time: y' = y^2, y(0) = 1 diverges at t = 1
        let rhs = |_: f64, y: &[f64], dy: &mut [f64]| dy[0] = y[0] * y[0];
        let prob = OdeProblem {
            rhs: &rhs,
            initial: vec![1.0],
            t0: 0.0,
            t1: 2.0,
            step: 1e-3,
        };
        assert!(matches!(
            rk4_endpoint(&prob),
            Err(Error::NonFiniteState { .. })
        ));
    }

    #[test]
    fn central_diff_basics() {
        let d = central_diff(|x| vec![x.sin()], 0.0, 1e-5);
        assert!((d[0] - 1.0).abs() < 1e-10);
        let d = central_diff(|_| vec![3.5], 0.7, 1e-5);
        assert_eq!(d[0], 0.0);
    }

    #[test]
    fn lightlike_length_is_exactly_zero() {
        let samples: Vec<TrajectorySample> = (0..100)
            .map(|i| TrajectorySample {
                t: i as f64 * 0.01,
                point: Point::new(i as f64 * 0.01, 0.0),
                control: Control::new(1.0, 1.0),
            })
            .collect();
        assert_eq!(length_functional(&samples), 0.0);
    }

    #[test]
    fn unit_speed_length_is_elapsed_time() {
        let n = 10_000;
        let samples: Vec<TrajectorySample> = (0..n)
            .map(|i| {
                let t = FRAC_PI_2 * i as f64 / (n - 1) as f64;
                TrajectorySample {
                    t,
                    point: Point::new(0.0, t),
                    control: Control::new(1.0, 0.0),
                }
            })
            .collect();
        assert!((length_functional(&samples) - FRAC_PI_2).abs() < 1e-6);
    }
}
