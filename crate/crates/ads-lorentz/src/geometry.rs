//! Points, tangent vectors, the Lorentzian metric and orthonormal frame,
//! the admissible control cone, and the ambient hyperboloid embedding.
//!
//! Coordinates (θ, φ) live on the universal cover: both range over all of
//! ℝ and φ is never reduced mod 2π, since the distance function
//! distinguishes φ from φ + 2π.

/// Absolute tolerance for membership on the light cone u₁² − u₂² = 0 and
/// for the algebraic equality tests of the extremal case analysis. These
/// are measure-zero conditions that callers hit through exact
/// constructions, so the tolerance only absorbs roundoff; it is absolute,
/// which makes classification meaningful for vectors of unit-order size.
pub const CONE_EPS: f64 = 1e-12;

/// A point (θ, φ) of the universal cover of the one-sheeted hyperboloid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub theta: f64,
    pub phi: f64,
}

impl Point {
    pub const ORIGIN: Point = Point {
        theta: 0.0,
        phi: 0.0,
    };

    /// Both coordinates must be finite.
    pub fn new(theta: f64, phi: f64) -> Self {
        debug_assert!(
            theta.is_finite() && phi.is_finite(),
            "non-finite point ({theta}, {phi})"
        );
        Point { theta, phi }
    }

    pub fn is_finite(&self) -> bool {
        self.theta.is_finite() && self.phi.is_finite()
    }
}

/// A tangent vector in the coordinate basis (∂θ, ∂φ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    pub d_theta: f64,
    pub d_phi: f64,
}

impl TangentVector {
    pub const ZERO: TangentVector = TangentVector {
        d_theta: 0.0,
        d_phi: 0.0,
    };

    pub fn new(d_theta: f64, d_phi: f64) -> Self {
        TangentVector { d_theta, d_phi }
    }

    pub fn scale(self, a: f64) -> Self {
        TangentVector::new(a * self.d_theta, a * self.d_phi)
    }
}

impl std::ops::Add for TangentVector {
    type Output = TangentVector;
    fn add(self, rhs: TangentVector) -> TangentVector {
        TangentVector::new(self.d_theta + rhs.d_theta, self.d_phi + rhs.d_phi)
    }
}

impl std::ops::Neg for TangentVector {
    type Output = TangentVector;
    fn neg(self) -> TangentVector {
        TangentVector::new(-self.d_theta, -self.d_phi)
    }
}

/// A control value (u₁, u₂). Admissible controls satisfy u₁ > 0 and
/// u₁² − u₂² ≥ 0: the closed future half of the light cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Control {
    pub u1: f64,
    pub u2: f64,
}

impl Control {
    pub fn new(u1: f64, u2: f64) -> Self {
        Control { u1, u2 }
    }

    /// u₁² − u₂²; positive for timelike, zero for lightlike controls.
    pub fn cone_gap(&self) -> f64 {
        self.u1 * self.u1 - self.u2 * self.u2
    }

    pub fn is_admissible(&self) -> bool {
        self.u1 > 0.0 && self.cone_gap() >= -CONE_EPS
    }
}

/// A point of the ambient pseudo-Euclidean space, on (or near) the
/// hyperboloid −x₁² − x₂² + x₃² = −1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbientPoint {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl AmbientPoint {
    /// −x₁² − x₂² + x₃² + 1; zero exactly on the hyperboloid.
    pub fn hyperboloid_residual(&self) -> f64 {
        -self.x1 * self.x1 - self.x2 * self.x2 + self.x3 * self.x3 + 1.0
    }
}

/// Causal type of a tangent vector. The cone orientation is fixed by the
/// control set: future means increasing φ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalClass {
    TimelikeFuture,
    LightlikeFuture,
    Spacelike,
    TimelikePast,
    LightlikePast,
    Zero,
}

/// The Gudermannian function gd(x) = arctan(sinh x).
///
/// Every causal boundary in this geometry is a translate of φ = ±gd(θ), so
/// it appears throughout the reachability and synthesis code. Odd, strictly
/// increasing, with gd(±∞) = ±π/2.
pub fn gudermannian(x: f64) -> f64 {
    x.sinh().atan()
}

/// The metric g = dθ² − cosh²θ dφ² evaluated on two tangent vectors at `p`.
/// Bilinear, and symmetric in (v, w) down to the last bit (the products are
/// grouped so that swapping v and w commutes them pairwise).
pub fn metric_eval(p: Point, v: TangentVector, w: TangentVector) -> f64 {
    let ch = p.theta.cosh();
    v.d_theta * w.d_theta - (ch * ch) * (v.d_phi * w.d_phi)
}

/// The orthonormal frame (X₁, X₂) = ((1/cosh θ) ∂φ, ∂θ), satisfying
/// g(X₁, X₁) = −1, g(X₂, X₂) = 1, g(X₁, X₂) = 0. X₁ is future timelike.
pub fn frame(p: Point) -> (TangentVector, TangentVector) {
    (
        TangentVector::new(0.0, 1.0 / p.theta.cosh()),
        TangentVector::new(1.0, 0.0),
    )
}

/// Coefficients (u₁, u₂) of v = u₁X₁ + u₂X₂ in the orthonormal frame at `p`.
pub fn frame_coefficients(p: Point, v: TangentVector) -> (f64, f64) {
    (v.d_phi * p.theta.cosh(), v.d_theta)
}

/// Classify a tangent vector against the light cone at `p`.
///
/// Decomposes v = u₁X₁ + u₂X₂ and branches on the signs of u₁² − u₂²
/// (within [`CONE_EPS`]) and u₁. `Zero` only for the exact zero vector.
pub fn causal_class(v: TangentVector, p: Point) -> CausalClass {
    let (u1, u2) = frame_coefficients(p, v);
    if u1 == 0.0 {
        return if u2 == 0.0 {
            CausalClass::Zero
        } else {
            CausalClass::Spacelike
        };
    }
    let gap = u1 * u1 - u2 * u2;
    if gap.abs() <= CONE_EPS {
        if u1 > 0.0 {
            CausalClass::LightlikeFuture
        } else {
            CausalClass::LightlikePast
        }
    } else if gap > 0.0 {
        if u1 > 0.0 {
            CausalClass::TimelikeFuture
        } else {
            CausalClass::TimelikePast
        }
    } else {
        CausalClass::Spacelike
    }
}

/// Embedding (θ, φ) ↦ (cosh θ cos φ, cosh θ sin φ, sinh θ) into the ambient
/// space. Provided for tests and visualization; all geometry in this crate
/// is otherwise intrinsic in (θ, φ).
pub fn embed(p: Point) -> AmbientPoint {
    let ch = p.theta.cosh();
    AmbientPoint {
        x1: ch * p.phi.cos(),
        x2: ch * p.phi.sin(),
        x3: p.theta.sinh(),
    }
}
