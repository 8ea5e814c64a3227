//! The built-in acceptance checks behind `ads-lorentz selftest`.
//!
//! Each criterion pins its tolerances in code and reports the measured
//! headline number, so a regression shows up as a FAIL line rather than a
//! silently looser bound. The integration test suite drives the same
//! functions one by one.

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;

use ads_lorentz::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commands::{run_dist, run_traj, TrajFormat, EXIT_NO_TRAJECTORY, EXIT_OK};
use crate::Config;

pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Headline measurement (a max error or drift), when one exists.
    pub metric: Option<f64>,
}

impl CriterionResult {
    fn new(
        index: usize,
        name: &'static str,
        passed: bool,
        detail: String,
        metric: Option<f64>,
    ) -> Self {
        CriterionResult {
            index,
            name,
            passed,
            detail,
            metric,
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn hamiltonian_ode(_: f64, y: &[f64], dy: &mut [f64]) {
    dy.copy_from_slice(&hamiltonian_rhs(&ExtremalState::new(y[0], y[1], y[2])));
}

fn integrate_normal(psi0: f64, t: f64, step: f64) -> ExtremalState {
    let prob = OdeProblem {
        rhs: &hamiltonian_ode,
        initial: vec![0.0, 0.0, psi0],
        t0: 0.0,
        t1: t,
        step,
    };
    let y = rk4_endpoint(&prob).expect("Hamiltonian flow stays finite");
    ExtremalState::new(y[0], y[1], y[2])
}

const PSI0_SET: [f64; 6] = [-3.0, -1.0, -0.5, 0.5, 1.0, 3.0];

/// Criterion 1: closed form vs RK4 oracle (step 1e−4) at t ∈ {0.5, π/2, 2, 3},
/// including across the t = π/2 seam; max component error < 1e−8.
pub fn criterion_closed_form_vs_oracle() -> CriterionResult {
    let tol = 1e-8;
    let mut worst: f64 = 0.0;
    for &psi0 in &PSI0_SET {
        for &t in &[0.5, FRAC_PI_2, 2.0, 3.0] {
            let num = integrate_normal(psi0, t, 1e-4);
            let ana = normal_extremal(psi0, t);
            worst = worst
                .max((num.theta - ana.theta).abs())
                .max((num.phi - ana.phi).abs())
                .max((num.psi - ana.psi).abs());
        }
    }
    CriterionResult::new(
        1,
        "closed form vs RK4 oracle",
        worst < tol,
        format!("max component error {worst:.3e} (tol {tol:.0e})"),
        Some(worst),
    )
}

/// Criterion 2: first integral |cosh ψ cosh θ − cosh ψ₀| < 1e−9 along the closed
/// form (1000 samples, t ∈ [0, 3π]) and along the RK4 path.
pub fn criterion_first_integral() -> CriterionResult {
    let tol = 1e-9;
    let mut drift: f64 = 0.0;
    for &psi0 in &PSI0_SET {
        let d0 = psi0.cosh();
        for i in 0..1000 {
            let t = 3.0 * PI * i as f64 / 999.0;
            drift = drift.max((first_integral(&normal_extremal(psi0, t)) - d0).abs());
        }
        let prob = OdeProblem {
            rhs: &hamiltonian_ode,
            initial: vec![0.0, 0.0, psi0],
            t0: 0.0,
            t1: 3.0 * PI,
            step: 1e-4,
        };
        let sol = rk4_integrate(&prob).expect("finite");
        for (_, y) in sol.samples.iter().step_by(50) {
            drift = drift.max((y[2].cosh() * y[0].cosh() - d0).abs());
        }
    }
    CriterionResult::new(
        2,
        "first-integral conservation",
        drift < tol,
        format!("max drift {drift:.3e} (tol {tol:.0e})"),
        Some(drift),
    )
}

/// Criterion 3: exp∘log identity on 10⁴ random interior points, max error < 1e−9.
pub fn criterion_exp_log_roundtrip() -> CriterionResult {
    let tol = 1e-9;
    let mut r = rng(0x5EED_0003);
    let mut worst: f64 = 0.0;
    let mut all_interior = true;
    for _ in 0..10_000 {
        let psi0 = r.gen_range(-5.0..5.0);
        let t = r.gen_range(0.01..PI - 0.01);
        let p = exp_map(ExpCoords::new(psi0, t)).expect("t in range");
        all_interior &= classify(p) == ReachabilityClass::Interior;
        let back = log_map(p).expect("interior");
        worst = worst.max((back.psi0 - psi0).abs()).max((back.t - t).abs());
    }
    CriterionResult::new(
        3,
        "exp/log roundtrip",
        worst < tol && all_interior,
        format!("max roundtrip error {worst:.3e} (tol {tol:.0e}), images interior: {all_interior}"),
        Some(worst),
    )
}

/// Criterion 4: the distance table — π/2 on the axis, 0 on the lower cone (exactly),
/// π at the apex, +∞ beyond.
pub fn criterion_distance_table() -> CriterionResult {
    let d1 = lorentz_distance_from_origin(Point::new(0.0, FRAC_PI_2));
    let d2 = lorentz_distance_from_origin(Point::new(2.0, gudermannian(2.0)));
    let d3 = lorentz_distance_from_origin(Point::new(0.0, PI));
    let d4 = lorentz_distance_from_origin(Point::new(1.0, 3.0));
    let e1 = (d1.value - FRAC_PI_2).abs();
    let e3 = (d3.value - PI).abs();
    let passed = d1.class == ReachabilityClass::Interior
        && e1 < 1e-12
        && matches!(d2.class, ReachabilityClass::LowerBoundary(_))
        && d2.value == 0.0
        && d3.class == ReachabilityClass::Apex
        && e3 < 1e-12
        && d4.class == ReachabilityClass::Beyond
        && d4.value == f64::INFINITY;
    CriterionResult::new(
        4,
        "distance table",
        passed,
        format!(
            "|d-pi/2| = {e1:.2e}, cone d = {}, |d-pi| = {e3:.2e}, beyond d = {}",
            d2.value, d4.value
        ),
        Some(e1.max(e3)),
    )
}

/// Criterion 5: upper-boundary limit at θ̃ = 1 — d(qₙ) strictly increasing over
/// n ∈ {10, …, 10⁶} and π − d(q₁₀⁶) < 0.01.
pub fn criterion_upper_boundary_limit() -> CriterionResult {
    let mut increasing = true;
    let mut prev = 0.0;
    let mut last = 0.0;
    for k in 1..=6 {
        let d = upper_boundary_distance_sequence(1.0, 10u64.pow(k)).expect("admissible index");
        increasing &= d > prev;
        prev = d;
        last = d;
    }
    let gap = PI - last;
    CriterionResult::new(
        5,
        "upper-boundary distance limit",
        increasing && gap < 0.01,
        format!("increasing: {increasing}, pi - d(1e6) = {gap:.4e} (tol 1e-2)"),
        Some(gap),
    )
}

/// Criterion 6: bypass family at target (1, 2.8) — L(α) exceeds 10³ by α = 10 and the
/// closed form matches the sampled-curve quadrature within 0.1% at
/// α ∈ {1, 2, 5}.
pub fn criterion_bypass_family() -> CriterionResult {
    let p = Point::new(1.0, 2.8);
    let big = bypass_curve_length(p, 10.0).expect("beyond target");
    let mut worst_rel: f64 = 0.0;
    for &alpha in &[1.0, 2.0, 5.0] {
        let closed = bypass_curve_length(p, alpha).expect("beyond target");
        let quad = length_functional(&bypass_trajectory(p, alpha, 20_000).expect("valid alpha"));
        worst_rel = worst_rel.max(((quad - closed) / closed).abs());
    }
    CriterionResult::new(
        6,
        "unbounded bypass family",
        big > 1e3 && worst_rel < 1e-3,
        format!("L(10) = {big:.1} (> 1e3), worst quadrature mismatch {worst_rel:.3e} (tol 1e-3)"),
        Some(worst_rel),
    )
}

/// Criterion 7: Killing suite — equation residuals < 1e−6 for 3 fields × 4
/// coordinate pairs × 100 points; bracket table to 1e−12.
pub fn criterion_killing_suite() -> CriterionResult {
    let mut r = rng(0x5EED_0007);
    let axes = [CoordinateAxis::Theta, CoordinateAxis::Phi];
    let fields = [KillingField::K1, KillingField::K2, KillingField::K3];
    let mut worst_res: f64 = 0.0;
    let mut worst_bracket: f64 = 0.0;
    for _ in 0..100 {
        let p = Point::new(r.gen_range(-2.0..2.0), r.gen_range(-3.0..3.0));
        for k in fields {
            for v in axes {
                for w in axes {
                    worst_res = worst_res.max(killing_residual(&k, p, v, w).abs());
                }
            }
        }
        let table = [
            (KillingField::K1, KillingField::K2, 1.0, KillingField::K3),
            (KillingField::K2, KillingField::K3, -1.0, KillingField::K1),
            (KillingField::K3, KillingField::K1, 1.0, KillingField::K2),
        ];
        for (a, b, sign, c) in table {
            let got = lie_bracket(a, b, p);
            let want = killing_eval(c, p).scale(sign);
            worst_bracket = worst_bracket
                .max((got.d_theta - want.d_theta).abs())
                .max((got.d_phi - want.d_phi).abs());
        }
    }
    CriterionResult::new(
        7,
        "Killing residuals and brackets",
        worst_res < 1e-6 && worst_bracket < 1e-12,
        format!("max residual {worst_res:.3e} (tol 1e-6), max bracket defect {worst_bracket:.3e} (tol 1e-12)"),
        Some(worst_res),
    )
}

/// Criterion 8: transport distance — φ-translated bases reproduce the origin distance
/// (100 pairs, 1e−9); inverse-route targets recover the generating time
/// (50 pairs, 1e−5); halving the flow step moves results by < 1e−8.
pub fn criterion_transport(cfg: &Config) -> CriterionResult {
    let mut r = rng(0x5EED_0008);
    let mut worst_translate: f64 = 0.0;
    for _ in 0..100 {
        let phi0 = r.gen_range(-3.0..3.0);
        let q1 = Point::new(r.gen_range(-2.0..2.0), phi0 + r.gen_range(-1.0..4.0));
        let via = transport_distance_with_step(Point::new(0.0, phi0), q1, cfg.flow_step)
            .expect("translation is exact");
        let plain = lorentz_distance_from_origin(Point::new(q1.theta, q1.phi - phi0));
        if via.value.is_finite() || plain.value.is_finite() {
            worst_translate = worst_translate.max((via.value - plain.value).abs());
        }
    }

    let mut worst_recover: f64 = 0.0;
    let mut worst_halving: f64 = 0.0;
    for _ in 0..50 {
        let q0 = Point::new(r.gen_range(-2.0..2.0), r.gen_range(-3.0..3.0));
        let t_gen = r.gen_range(0.2..PI - 0.2);
        let end = exp_map(ExpCoords::new(r.gen_range(-2.0..2.0), t_gen)).expect("in range");
        let q1 = route_to_origin(q0)
            .inverse()
            .apply(end, cfg.flow_step)
            .expect("flows stay finite");
        let d = transport_distance_with_step(q0, q1, cfg.flow_step).expect("finite");
        worst_recover = worst_recover.max((d.value - t_gen).abs());
        let d_half = transport_distance_with_step(q0, q1, cfg.flow_step / 2.0).expect("finite");
        worst_halving = worst_halving.max((d.value - d_half.value).abs());
    }

    let passed = worst_translate < 1e-9 && worst_recover < 1e-5 && worst_halving < 1e-8;
    CriterionResult::new(
        8,
        "transport distance",
        passed,
        format!(
            "translate {worst_translate:.3e} (1e-9), recover {worst_recover:.3e} (1e-5), halving {worst_halving:.3e} (1e-8)"
        ),
        Some(worst_recover),
    )
}

/// Criterion 9: geodesic additivity — d(0, γ(s)) + d(γ(s), q₁) = t_q₁ within 1e−5
/// for 200 random interior targets and midpoints.
pub fn criterion_additivity(cfg: &Config) -> CriterionResult {
    let mut r = rng(0x5EED_0009);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let psi0 = r.gen_range(-3.0..3.0);
        let t_total = r.gen_range(0.1..PI - 0.1);
        let q1 = exp_map(ExpCoords::new(psi0, t_total)).expect("in range");
        let s = t_total * r.gen_range(0.1..0.9);
        let mid = exp_map(ExpCoords::new(psi0, s)).expect("in range");
        let first = lorentz_distance_from_origin(mid).value;
        let rest = transport_distance_with_step(mid, q1, cfg.flow_step)
            .expect("finite")
            .value;
        worst = worst.max((first + rest - t_total).abs());
    }
    CriterionResult::new(
        9,
        "geodesic additivity",
        worst < 1e-5,
        format!("max defect {worst:.3e} (tol 1e-5)"),
        Some(worst),
    )
}

/// Criterion 10: lightlike boundary — abnormal velocities have zero metric norm
/// (1e−10, 100 sample times) and abnormal trajectories zero length
/// (1e−12).
pub fn criterion_lightlike_boundary() -> CriterionResult {
    let mut worst_norm: f64 = 0.0;
    for branch in [AbnormalBranch::Plus, AbnormalBranch::Minus] {
        for i in 0..100 {
            let t = 3.0 * i as f64 / 99.0;
            let p = abnormal_extremal(branch, Point::ORIGIN, t);
            let v = TangentVector::new(branch.u2(), 1.0 / p.theta.cosh());
            worst_norm = worst_norm.max(metric_eval(p, v, v).abs());
        }
    }
    let mut worst_len: f64 = 0.0;
    for &theta in &[2.5, -1.7] {
        let target = Point::new(theta, gudermannian(theta.abs()));
        let traj = synthesis_trajectory(target, 1000).expect("boundary target");
        worst_len = worst_len.max(length_functional(&traj.samples).abs());
    }
    CriterionResult::new(
        10,
        "lightlike boundary",
        worst_norm < 1e-10 && worst_len < 1e-12,
        format!("max |g(v,v)| {worst_norm:.3e} (1e-10), max length {worst_len:.3e} (1e-12)"),
        Some(worst_norm),
    )
}

/// Criterion 11: CLI contract — `dist 0 π/2` prints the distance to 15 significant
/// digits and `traj 1 3.0` exits 2 with the class diagnostic. (That
/// `selftest` itself exits 0 is this table's bottom line.)
pub fn criterion_cli_contract(cfg: &Config) -> CriterionResult {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_dist(0.0, FRAC_PI_2, None, cfg, &mut out, &mut err).expect("in-memory write");
    let text = String::from_utf8(out).expect("utf8");
    let dist_ok = code == EXIT_OK && {
        let value = text
            .split("\"distance\":")
            .nth(1)
            .and_then(|rest| rest.split(',').next())
            .and_then(|tok| tok.parse::<f64>().ok());
        match value {
            Some(v) => (v - FRAC_PI_2).abs() <= 1e-15 * FRAC_PI_2,
            None => false,
        }
    };

    let mut out2 = Vec::new();
    let mut err2 = Vec::new();
    let code2 =
        run_traj(1.0, 3.0, 50, TrajFormat::Csv, &mut out2, &mut err2).expect("in-memory write");
    let msg = String::from_utf8(err2).expect("utf8");
    let traj_ok = code2 == EXIT_NO_TRAJECTORY && msg.starts_with("Beyond: distance=inf");

    CriterionResult::new(
        11,
        "CLI contract",
        dist_ok && traj_ok,
        format!("dist digits ok: {dist_ok}, traj exit-2 diagnostic ok: {traj_ok}"),
        None,
    )
}

/// Run every criterion in order.
pub fn run_all(cfg: &Config) -> Vec<CriterionResult> {
    vec![
        criterion_closed_form_vs_oracle(),
        criterion_first_integral(),
        criterion_exp_log_roundtrip(),
        criterion_distance_table(),
        criterion_upper_boundary_limit(),
        criterion_bypass_family(),
        criterion_killing_suite(),
        criterion_transport(cfg),
        criterion_additivity(cfg),
        criterion_lightlike_boundary(),
        criterion_cli_contract(cfg),
    ]
}

/// Print the pass/fail table; returns the process exit code (0 iff all
/// criteria passed).
pub fn print_report(results: &[CriterionResult], out: &mut dyn Write) -> std::io::Result<u8> {
    for c in results {
        writeln!(
            out,
            "criterion {:>2}  {:<34} {}  {}",
            c.index,
            c.name,
            if c.passed { "PASS" } else { "FAIL" },
            c.detail
        )?;
    }
    if let Some(drift) = results.iter().find(|c| c.index == 2).and_then(|c| c.metric) {
        writeln!(out, "first-integral max drift: {drift:.3e}")?;
    }
    let passed = results.iter().filter(|c| c.passed).count();
    writeln!(out, "selftest: {passed}/{} criteria passed", results.len())?;
    Ok(if passed == results.len() { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    // mutation check: a sign error in a field's coefficients must blow the
    // residual far past the criterion tolerance, so a broken build cannot
    // report a green selftest
    #[test]
    fn sign_flipped_k2_is_caught_by_the_residual_check() {
        struct BrokenK2;
        impl VectorField for BrokenK2 {
            fn eval(&self, p: Point) -> TangentVector {
                TangentVector::new(-p.phi.sin(), p.theta.tanh() * p.phi.cos())
            }
            fn jacobian(&self, p: Point) -> [[f64; 2]; 2] {
                let (sin_phi, cos_phi) = p.phi.sin_cos();
                let ch = p.theta.cosh();
                [
                    [0.0, -cos_phi],
                    [cos_phi / (ch * ch), -p.theta.tanh() * sin_phi],
                ]
            }
        }
        let p = Point::new(0.7, 1.1);
        let mut worst = 0.0f64;
        for v in [CoordinateAxis::Theta, CoordinateAxis::Phi] {
            for w in [CoordinateAxis::Theta, CoordinateAxis::Phi] {
                worst = worst.max(killing_residual(&BrokenK2, p, v, w).abs());
            }
        }
        assert!(
            worst > 1e-2,
            "mutated field slipped through: residual {worst}"
        );
    }

    #[test]
    fn report_exit_code_reflects_failures() {
        let mut out = Vec::new();
        let good = CriterionResult::new(1, "x", true, "ok".into(), None);
        assert_eq!(print_report(&[good], &mut out).unwrap(), 0);
        let bad = CriterionResult::new(1, "x", false, "broke".into(), None);
        assert_eq!(print_report(&[bad], &mut out).unwrap(), 1);
    }
}
