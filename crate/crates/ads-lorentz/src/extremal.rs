//! Pontryagin extremals of the time-maximization problem.
//!
//! Normal extremals (multiplier ν = −1) are parametrized by arclength
//! (u₁² − u₂² = 1), which makes Lorentzian length equal to time along them.
//! Their vertical coordinate ψ encodes the adjoint through h₁ = −cosh ψ,
//! h₂ = sinh ψ, and the flow conserves D = cosh ψ cosh θ ≥ 1.
//!
//! Abnormal extremals (ν = 0) are the two lightlike families u₂ = ±u₁,
//! normalized here to u₁ = 1; they sweep the boundary of the reachable set
//! and carry zero Lorentzian length.

use std::f64::consts::PI;

use crate::geometry::{gudermannian, Control, Point, CONE_EPS};

/// State (θ, φ, ψ) of the normal Hamiltonian flow: base point plus the
/// vertical coordinate ψ with h₁ = −cosh ψ, h₂ = sinh ψ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalState {
    pub theta: f64,
    pub phi: f64,
    pub psi: f64,
}

impl ExtremalState {
    pub fn new(theta: f64, phi: f64, psi: f64) -> Self {
        ExtremalState { theta, phi, psi }
    }

    pub fn point(&self) -> Point {
        Point::new(self.theta, self.phi)
    }

    /// h₁ = −cosh ψ ≤ −1.
    pub fn h1(&self) -> f64 {
        -self.psi.cosh()
    }

    /// h₂ = sinh ψ.
    pub fn h2(&self) -> f64 {
        self.psi.sinh()
    }

    /// The unit-speed control (u₁, u₂) = (cosh ψ, sinh ψ) realized by the
    /// maximality condition along a normal extremal.
    pub fn control(&self) -> Control {
        Control::new(self.psi.cosh(), self.psi.sinh())
    }

    /// Adjoint covector λ = ξ₁ dθ + ξ₂ dφ of the normal extremal:
    /// ξ₁ = sinh ψ, ξ₂ = −cosh ψ cosh θ = −D.
    pub fn adjoint(&self) -> AdjointCovector {
        AdjointCovector {
            xi1: self.psi.sinh(),
            xi2: -self.psi.cosh() * self.theta.cosh(),
        }
    }
}

/// Coefficients of an adjoint covector λ = ξ₁ dθ + ξ₂ dφ. PMP
/// nontriviality demands (ξ₁, ξ₂) ≠ (0, 0) along any extremal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjointCovector {
    pub xi1: f64,
    pub xi2: f64,
}

impl AdjointCovector {
    /// h₁ = ⟨λ, X₁⟩ = ξ₂ / cosh θ.
    pub fn h1(&self, p: Point) -> f64 {
        self.xi2 / p.theta.cosh()
    }

    /// h₂ = ⟨λ, X₂⟩ = ξ₁.
    pub fn h2(&self) -> f64 {
        self.xi1
    }
}

/// Which extremal family a trajectory belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalClass {
    Normal,
    /// Lightlike family with u₂ = +u₁ (θ increasing).
    AbnormalPlus,
    /// Lightlike family with u₂ = −u₁ (θ decreasing).
    AbnormalMinus,
}

/// One of the two abnormal families, as an argument type for
/// [`abnormal_extremal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbnormalBranch {
    Plus,
    Minus,
}

impl AbnormalBranch {
    /// The constant control second component under the u₁ = 1 normalization.
    pub fn u2(self) -> f64 {
        match self {
            AbnormalBranch::Plus => 1.0,
            AbnormalBranch::Minus => -1.0,
        }
    }

    pub fn extremal_class(self) -> ExtremalClass {
        match self {
            AbnormalBranch::Plus => ExtremalClass::AbnormalPlus,
            AbnormalBranch::Minus => ExtremalClass::AbnormalMinus,
        }
    }
}

/// PMP multiplier: ν = −1 (normal) or ν = 0 (abnormal).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplier {
    /// ν = −1.
    Normal,
    /// ν = 0.
    Abnormal,
}

/// Outcome of the maximality analysis of the PMP Hamiltonian
/// h₁u₁ + h₂u₂ − ν√(u₁² − u₂²) over the control cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaximalityCase {
    /// The supremum is +∞ or not attained; no extremal arises.
    NoMax,
    /// ν = 0, h₁ = −h₂ < 0: maximum 0 at u₂ = +u₁.
    AbnormalPlus,
    /// ν = 0, h₁ = h₂ < 0: maximum 0 at u₂ = −u₁.
    AbnormalMinus,
    /// ν = −1, h₁² − h₂² = 1 with h₁ < 0: maximum 0 along the ray
    /// (u₁, u₂) = ρ(−h₁, h₂), ρ > 0.
    NormalCone,
}

/// Right-hand side of the normal Hamiltonian system in (θ, φ, ψ):
///
/// ```text
/// θ̇ = sinh ψ,   φ̇ = cosh ψ / cosh θ,   ψ̇ = −cosh ψ tanh θ
/// ```
pub fn hamiltonian_rhs(s: &ExtremalState) -> [f64; 3] {
    let chp = s.psi.cosh();
    [s.psi.sinh(), chp / s.theta.cosh(), -chp * s.theta.tanh()]
}

/// The conserved quantity D = cosh ψ cosh θ ≥ 1 of the normal flow.
pub fn first_integral(s: &ExtremalState) -> f64 {
    s.psi.cosh() * s.theta.cosh()
}

/// Closed-form normal extremal from the origin with initial vertical
/// coordinate ψ₀, evaluated at time t (any real t; the trajectory is
/// odd in t through φ(−t) = −φ(t), θ(−t) = −θ(t)):
///
/// ```text
/// θ(t) = arsinh(sinh ψ₀ · sin t)
/// ψ(t) = arsinh(sinh ψ₀ · cos t / √(1 + sinh²ψ₀ sin²t))
/// φ(t) = monotone continuation of arctan(cosh ψ₀ · tan t)
/// ```
///
/// φ is strictly increasing with the exact seam values φ(nπ) = nπ and
/// φ(nπ + π/2) = nπ + π/2.
pub fn normal_extremal(psi0: f64, t: f64) -> ExtremalState {
    let s0 = psi0.sinh();
    let (sin_t, cos_t) = t.sin_cos();
    let theta = (s0 * sin_t).asinh();
    let psi = (s0 * cos_t / (1.0 + s0 * s0 * sin_t * sin_t).sqrt()).asinh();
    ExtremalState::new(theta, phi_from_origin(psi0.cosh(), t), psi)
}

/// Monotone continuation of φ(t) = arctan(c₀ tan t) past the poles of tan.
///
/// On [nπ, (n+1)π) the solution is nπ + atan2(c₀ sin τ, cos τ) with
/// τ = t − nπ, which reproduces the two half-period branches of the
/// piecewise formula and takes the seam values exactly, with no tan(π/2)
/// evaluation anywhere.
fn phi_from_origin(c0: f64, t: f64) -> f64 {
    let mut n = (t / PI).floor();
    let mut tau = t - n * PI;
    // keep τ within [0, π) against rounding of the floor reduction; a τ a
    // few ulps outside would flip the atan2 branch at sin τ = 0, cos τ < 0
    if tau >= PI {
        n += 1.0;
        tau = t - n * PI;
    } else if tau < 0.0 {
        n -= 1.0;
        tau = t - n * PI;
    }
    n * PI + (c0 * tau.sin()).atan2(tau.cos())
}

/// Abnormal (lightlike) extremal through `q0`, u₁ = 1 normalization:
///
/// - `Plus`  (u₂ = +1): (θ₀ + t, φ₀ + gd(θ₀ + t) − gd(θ₀))
/// - `Minus` (u₂ = −1): (θ₀ − t, φ₀ + gd(θ₀) − gd(θ₀ − t))
///
/// φ increases along both branches for t > 0.
pub fn abnormal_extremal(branch: AbnormalBranch, q0: Point, t: f64) -> Point {
    match branch {
        AbnormalBranch::Plus => Point::new(
            q0.theta + t,
            q0.phi + gudermannian(q0.theta + t) - gudermannian(q0.theta),
        ),
        AbnormalBranch::Minus => Point::new(
            q0.theta - t,
            q0.phi + gudermannian(q0.theta) - gudermannian(q0.theta - t),
        ),
    }
}

/// Case analysis of when the PMP Hamiltonian attains its maximum over the
/// control cone, given the linear Hamiltonians (h₁, h₂) and the multiplier.
///
/// All equality tests use the absolute tolerance [`CONE_EPS`].
pub fn maximality_case(h1: f64, h2: f64, nu: Multiplier) -> MaximalityCase {
    match nu {
        Multiplier::Abnormal => {
            if h1 < 0.0 && (h1 - h2).abs() <= CONE_EPS {
                MaximalityCase::AbnormalMinus
            } else if h1 < 0.0 && (h1 + h2).abs() <= CONE_EPS {
                MaximalityCase::AbnormalPlus
            } else {
                MaximalityCase::NoMax
            }
        }
        Multiplier::Normal => {
            if h1 < 0.0 && (h1 * h1 - h2 * h2 - 1.0).abs() <= CONE_EPS {
                MaximalityCase::NormalCone
            } else {
                MaximalityCase::NoMax
            }
        }
    }
}
