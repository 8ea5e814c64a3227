//! Error type shared by the fallible operations of the crate.

use crate::expmap::ReachabilityClass;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum Error {
    /// The exponential map is only defined for times in (0, π).
    #[error("time {t} outside the exponential-map domain (0, pi)")]
    TimeOutOfRange { t: f64 },

    /// Inverse-map and synthesis formulas require an interior point of C′.
    #[error("target classified {class:?}, expected an interior point of C'")]
    NotInterior { class: ReachabilityClass },

    /// Requested a trajectory to a target that provably has none.
    #[error("no optimal trajectory exists for a {class:?} target")]
    NoOptimalTrajectory { class: ReachabilityClass },

    /// Bypass curves are only defined for targets beyond the upper boundary.
    #[error("target classified {class:?}, expected Beyond the upper boundary")]
    NotBeyond { class: ReachabilityClass },

    /// The bypass parameter must satisfy α > 0 (and α ≥ |θ₁| for sampling).
    #[error("invalid bypass parameter alpha = {alpha}")]
    InvalidAlpha { alpha: f64 },

    /// Sequence index below the admissibility bound n₀.
    #[error("sequence index {n} below the admissibility bound n0 = {n0}")]
    IndexBelowBound { n: u64, n0: u64 },

    /// The upper-boundary sequence needs a nonzero θ̃.
    #[error("theta_tilde must be nonzero")]
    ZeroTheta,

    /// Numerical integration left the finite range.
    #[error("integration produced a non-finite state at t = {t}")]
    NonFiniteState { t: f64 },

    /// The trajectory to the origin itself is a single point; callers must
    /// handle it directly.
    #[error("target is the origin")]
    TargetIsOrigin,

    /// Sampled outputs need at least two samples.
    #[error("need at least 2 samples, got {n}")]
    TooFewSamples { n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
