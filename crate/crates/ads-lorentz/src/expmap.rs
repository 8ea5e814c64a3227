//! The exponential map, its explicit inverse on the diamond C′, and
//! classification of targets against the causal boundaries of the origin.
//!
//! The map (ψ₀, t) ↦ (θ(t), φ(t)) restricted to t ∈ (0, π) is a
//! diffeomorphism of ℝ × (0, π) onto
//!
//! ```text
//! C′ = { (θ, φ) : gd(|θ|) < φ < π − gd(|θ|) }
//! ```
//!
//! Along every unit-speed normal extremal from the origin the quantity
//! cos φ · cosh θ equals cos t, which gives the inverse in a form that is
//! smooth across φ = π/2 and needs no tan evaluation:
//!
//! ```text
//! t₀ = acos(cos φ · cosh θ)
//! ψ₀ = arsinh( sinh θ / √(1 − (cos φ cosh θ)²) )
//! ```
//!
//! This is algebraically identical to the three-branch arcsin/tan form of
//! the written inverse (the branches on φ ≶ π/2 collapse into the single
//! acos), and agrees with it to machine precision away from φ = π/2.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::extremal::normal_extremal;
use crate::geometry::{gudermannian, Point};

/// Absolute tolerance for boundary membership in [`classify`].
/// Classification drives the case dispatch of the distance function, so
/// equality against the boundary curves has to be deterministic.
pub const BOUNDARY_EPS: f64 = 1e-10;

/// Which side of the θ = 0 axis a boundary point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Center,
    Right,
}

impl Side {
    fn of_theta(theta: f64) -> Side {
        if theta.abs() <= BOUNDARY_EPS {
            Side::Center
        } else if theta > 0.0 {
            Side::Right
        } else {
            Side::Left
        }
    }
}

/// Position of a target point relative to the causal structure of the
/// origin.
///
/// - `Outside` — below the lower cone φ = gd(|θ|): unreachable, distance 0
///   by the empty-supremum convention;
/// - `LowerBoundary` — on the lower cone (the origin itself classifies
///   here, with side `Center`): reached by an abnormal curve of length 0;
/// - `Interior` — inside C′: reached by a unique normal extremal;
/// - `UpperBoundary` — on φ = π − gd(|θ|) with θ ≠ 0: distance π, not
///   attained;
/// - `Apex` — the point (0, π): distance π attained by a continuum of
///   extremals;
/// - `Beyond` — above the upper boundary: distance +∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReachabilityClass {
    Outside,
    LowerBoundary(Side),
    Interior,
    UpperBoundary(Side),
    Apex,
    Beyond,
}

impl ReachabilityClass {
    /// Stable name used by the CLI output schemas.
    pub fn name(&self) -> &'static str {
        match self {
            ReachabilityClass::Outside => "Outside",
            ReachabilityClass::LowerBoundary(_) => "LowerBoundary",
            ReachabilityClass::Interior => "Interior",
            ReachabilityClass::UpperBoundary(_) => "UpperBoundary",
            ReachabilityClass::Apex => "Apex",
            ReachabilityClass::Beyond => "Beyond",
        }
    }

    pub fn side(&self) -> Option<Side> {
        match self {
            ReachabilityClass::LowerBoundary(s) | ReachabilityClass::UpperBoundary(s) => Some(*s),
            _ => None,
        }
    }
}

/// Coordinates (ψ₀, t) in the domain of the exponential map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpCoords {
    pub psi0: f64,
    pub t: f64,
}

impl ExpCoords {
    pub fn new(psi0: f64, t: f64) -> Self {
        ExpCoords { psi0, t }
    }
}

/// Endpoint of the unit-speed normal extremal from the origin.
///
/// Errors with [`Error::TimeOutOfRange`] for t ∉ (0, π); the image then
/// always classifies `Interior`.
pub fn exp_map(c: ExpCoords) -> Result<Point> {
    if !(c.t > 0.0 && c.t < PI) {
        return Err(Error::TimeOutOfRange { t: c.t });
    }
    Ok(normal_extremal(c.psi0, c.t).point())
}

/// Inverse of [`exp_map`] on the interior of C′.
///
/// Errors with [`Error::NotInterior`] for any other classification. The
/// argument of the square root is clamped at 0 so that boundary roundoff
/// cannot produce a NaN.
pub fn log_map(p: Point) -> Result<ExpCoords> {
    let class = classify(p);
    if class != ReachabilityClass::Interior {
        return Err(Error::NotInterior { class });
    }
    let c = (p.phi.cos() * p.theta.cosh()).clamp(-1.0, 1.0);
    let t = c.acos();
    let e = ((1.0 - c) * (1.0 + c)).max(0.0);
    let psi0 = (p.theta.sinh() / e.sqrt()).asinh();
    Ok(ExpCoords { psi0, t })
}

/// Classify a point against the causal boundaries of the origin, with
/// boundary equality tested to the absolute tolerance [`BOUNDARY_EPS`].
///
/// The lower-boundary test wins when both bands overlap (possible only for
/// |θ| large enough that the diamond is thinner than the tolerance).
pub fn classify(p: Point) -> ReachabilityClass {
    let lower = gudermannian(p.theta.abs());
    let upper = PI - lower;
    if (p.phi - lower).abs() <= BOUNDARY_EPS {
        ReachabilityClass::LowerBoundary(Side::of_theta(p.theta))
    } else if p.phi < lower {
        ReachabilityClass::Outside
    } else if (p.phi - upper).abs() <= BOUNDARY_EPS {
        if p.theta.abs() <= BOUNDARY_EPS {
            ReachabilityClass::Apex
        } else {
            ReachabilityClass::UpperBoundary(Side::of_theta(p.theta))
        }
    } else if p.phi > upper {
        ReachabilityClass::Beyond
    } else {
        ReachabilityClass::Interior
    }
}
