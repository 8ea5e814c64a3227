//! Lorentzian geometry of the anti-de Sitter plane.
//!
//! The plane is the universal cover of the one-sheeted hyperboloid
//! −x₁² − x₂² + x₃² = −1 in pseudo-Euclidean 3-space, coordinatized by
//! (θ, φ) ∈ ℝ² with metric
//!
//! ```text
//! g = dθ² − cosh²θ dφ²
//! ```
//!
//! so ∂θ is spacelike, ∂φ timelike, and the future direction is increasing
//! φ. Lorentzian length is maximized rather than minimized, which makes the
//! distance function one-sided: it is 0 where no causal path exists, finite
//! inside the causal diamond of a point, and +∞ past the upper boundary.
//!
//! Modules:
//!
//! - [`geometry`] — points, tangent vectors, the metric, the orthonormal
//!   frame, the control cone, and the ambient embedding;
//! - [`extremal`] — closed-form normal and abnormal extremal trajectories
//!   of the time-maximization problem, the Hamiltonian system, and the
//!   first integral cosh ψ cosh θ;
//! - [`expmap`] — the exponential map ℝ × (0, π) → C′, its explicit
//!   inverse, and target classification against the causal boundaries;
//! - [`synthesis`] — optimal synthesis from the origin and the Lorentzian
//!   distance with every target-region case, plus the unbounded bypass
//!   family and the upper-boundary approach sequence;
//! - [`killing`] — the three Killing fields, Killing-equation residuals,
//!   Lie brackets, flows, and distance transport between arbitrary points;
//! - [`oracle`] — independent numerics (fixed-step RK4, central
//!   differences, length quadrature) used to cross-check the closed forms.
//!
//! Every operation is a pure function of its inputs; all values are plain
//! `Copy` data or owned buffers, safe to share and send across threads.
//!
//! ```
//! use std::f64::consts::FRAC_PI_2;
//! use ads_lorentz::{lorentz_distance_from_origin, transport_distance, Point, ReachabilityClass};
//!
//! // distance from the origin straight up the time axis
//! let d = lorentz_distance_from_origin(Point::new(0.0, FRAC_PI_2));
//! assert_eq!(d.class, ReachabilityClass::Interior);
//! assert!((d.value - FRAC_PI_2).abs() < 1e-12);
//!
//! // the same target seen from a translated base point, via Killing transport
//! let between = transport_distance(Point::new(0.0, 1.0), Point::new(0.0, 1.0 + FRAC_PI_2))?;
//! assert!((between.value - FRAC_PI_2).abs() < 1e-9);
//! # Ok::<(), ads_lorentz::Error>(())
//! ```

pub mod error;
pub mod expmap;
pub mod extremal;
pub mod geometry;
pub mod killing;
pub mod oracle;
pub mod synthesis;

pub use error::{Error, Result};
pub use expmap::{classify, exp_map, log_map, ExpCoords, ReachabilityClass, Side, BOUNDARY_EPS};
pub use extremal::{
    abnormal_extremal, first_integral, hamiltonian_rhs, maximality_case, normal_extremal,
    AbnormalBranch, AdjointCovector, ExtremalClass, ExtremalState, MaximalityCase, Multiplier,
};
pub use geometry::{
    causal_class, embed, frame, frame_coefficients, gudermannian, metric_eval, AmbientPoint,
    CausalClass, Control, Point, TangentVector, CONE_EPS,
};
pub use killing::{
    killing_eval, killing_flow, killing_residual, lie_bracket, route_to_origin, stream_samples,
    transport_distance, transport_distance_with_step, CoordinateAxis, IsometryRoute, KillingField,
    RouteLeg, VectorField, DEFAULT_FLOW_STEP,
};
pub use oracle::{
    central_diff, length_functional, rk4_endpoint, rk4_integrate, OdeProblem, Rk4Solution,
};
pub use synthesis::{
    bypass_curve_length, bypass_trajectory, lorentz_distance_from_origin, psi_for_target,
    reachable_from, reachable_from_translated_boundary, sequence_start, synthesis_trajectory,
    time_for_target, upper_boundary_distance_sequence, DistanceResult, Trajectory,
    TrajectorySample,
};
