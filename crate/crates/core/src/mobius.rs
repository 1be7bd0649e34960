//! `SL(2,ℂ)` algebra for the marked groups `⟨A, B_ρ⟩`.
//!
//! `A = (α, 1; 0, α⁻¹)` and `B_ρ = (β, 0; ρ, β⁻¹)` with `α = e^{iπ/p}`,
//! `β = e^{iπ/q}`. An infinite order is the parabolic limit `α = 1`, where
//! every `sin(π/p)` term is taken to be `0` and every `cos(π/p)` term `1`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use crate::{tol, Error, Result, C64};

const I: C64 = C64::new(0.0, 1.0);

/// Order of an elliptic generator; `Infinite` is the parabolic limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("order must be at least 2, got {n}")));
        }
        Ok(Order::Finite(n))
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }

    pub fn value(self) -> Option<u32> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }

    /// `π/p`, or `0` in the parabolic limit.
    pub fn angle(self) -> f64 {
        match self {
            Order::Finite(n) => PI / n as f64,
            Order::Infinite => 0.0,
        }
    }

    pub fn sin_pi(self) -> f64 {
        match self {
            Order::Finite(n) => (PI / n as f64).sin(),
            Order::Infinite => 0.0,
        }
    }

    pub fn cos_pi(self) -> f64 {
        match self {
            Order::Finite(n) => (PI / n as f64).cos(),
            Order::Infinite => 1.0,
        }
    }

    /// `e^{iπ/p}`; `1` when infinite.
    pub fn rotation(self) -> C64 {
        C64::from_polar(1.0, self.angle())
    }

    /// `true` for finite orders of at least `n`, and for the parabolic limit.
    pub fn at_least(self, n: u32) -> bool {
        match self {
            Order::Finite(m) => m >= n,
            Order::Infinite => true,
        }
    }

    pub(crate) fn require_finite(self, what: &str) -> Result<u32> {
        self.value()
            .ok_or_else(|| Error::unsupported(format!("{what} requires finite orders")))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

impl serde::Serialize for Order {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(n) => s.serialize_u32(*n),
            Order::Infinite => s.serialize_str("inf"),
        }
    }
}

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite(C64),
    Infinity,
}

impl SpherePoint {
    pub fn finite(self) -> Option<C64> {
        match self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }
}

/// A 2×2 complex matrix `(a, b; c, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2C {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Mat2C {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2C { a, b, c, d }
    }

    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Mat2C::new(one, zero, zero, one)
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C64 {
        self.a + self.d
    }

    pub fn scale(&self, k: C64) -> Self {
        Mat2C::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    /// Rescale to determinant one (principal square root of the determinant).
    pub fn normalized(&self) -> Result<Self> {
        let det = self.det();
        if det.norm() == 0.0 {
            return Err(Error::invalid("singular matrix"));
        }
        Ok(self.scale(det.sqrt().inv()))
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        Mat2C::new(self.d / det, -self.b / det, -self.c / det, self.a / det)
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut exp = n.unsigned_abs();
        let mut acc = Mat2C::identity();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * sq;
            }
            sq = sq * sq;
            exp >>= 1;
        }
        acc
    }

    /// `[self, other] = self · other · self⁻¹ · other⁻¹`.
    pub fn commutator(&self, other: &Mat2C) -> Self {
        *self * *other * self.inverse() * other.inverse()
    }

    /// Möbius action `z ↦ (az + b)/(cz + d)` on the Riemann sphere.
    pub fn apply(&self, z: SpherePoint) -> SpherePoint {
        match z {
            SpherePoint::Infinity => {
                if self.c == C64::new(0.0, 0.0) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(self.a / self.c)
                }
            }
            SpherePoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den == C64::new(0.0, 0.0) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite((self.a * z + self.b) / den)
                }
            }
        }
    }

    /// Möbius action on a finite point; `None` when it lands on ∞.
    pub fn apply_finite(&self, z: C64) -> Option<C64> {
        self.apply(SpherePoint::Finite(z)).finite()
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Mat2C) -> f64 {
        [
            self.a - other.a,
            self.b - other.b,
            self.c - other.c,
            self.d - other.d,
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
    }

    /// Entrywise modulus scale, used for relative comparisons.
    pub fn max_abs(&self) -> f64 {
        [self.a, self.b, self.c, self.d]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `true` when the matrix is `±identity` up to `eps` (relative to its size).
    pub fn is_plus_minus_identity(&self, eps: f64) -> bool {
        let scale = self.max_abs().max(1.0);
        self.b.norm() <= eps * scale
            && self.c.norm() <= eps * scale
            && (self.a - self.d).norm() <= eps * scale
    }
}

impl Mul for Mat2C {
    type Output = Mat2C;

    fn mul(self, r: Mat2C) -> Mat2C {
        Mat2C::new(
            self.a * r.a + self.b * r.c,
            self.a * r.b + self.b * r.d,
            self.c * r.a + self.d * r.c,
            self.c * r.b + self.d * r.d,
        )
    }
}

/// `tr[X, Y] − 2`.
pub fn commutator_gamma(x: &Mat2C, y: &Mat2C) -> C64 {
    x.commutator(y).trace() - 2.0
}

/// The marked group `⟨A, B_ρ⟩` with generator orders `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupSpec {
    p: Order,
    q: Order,
    rho: C64,
}

impl GroupSpec {
    pub fn new(p: Order, q: Order, rho: C64) -> Result<Self> {
        for o in [p, q] {
            if let Order::Finite(n) = o {
                if n < 2 {
                    return Err(Error::invalid(format!("order must be at least 2, got {n}")));
                }
            }
        }
        if p == Order::Finite(2) && q == Order::Finite(2) {
            return Err(Error::invalid("p = q = 2 gives a dihedral group"));
        }
        if !(rho.re.is_finite() && rho.im.is_finite()) {
            return Err(Error::invalid("ρ must be finite"));
        }
        Ok(GroupSpec { p, q, rho })
    }

    /// Convenience constructor for finite orders.
    pub fn finite(p: u32, q: u32, rho: C64) -> Result<Self> {
        GroupSpec::new(Order::finite(p)?, Order::finite(q)?, rho)
    }

    pub fn p(&self) -> Order {
        self.p
    }

    pub fn q(&self) -> Order {
        self.q
    }

    pub fn rho(&self) -> C64 {
        self.rho
    }

    pub fn with_rho(&self, rho: C64) -> Self {
        GroupSpec { rho, ..*self }
    }

    /// The same ρ with the roles of the two orders exchanged.
    pub fn swapped(&self) -> Self {
        GroupSpec {
            p: self.q,
            q: self.p,
            rho: self.rho,
        }
    }

    pub fn alpha(&self) -> C64 {
        self.p.rotation()
    }

    pub fn beta(&self) -> C64 {
        self.q.rotation()
    }

    /// `sin(π/p)·sin(π/q)`.
    pub fn sin_product(&self) -> f64 {
        self.p.sin_pi() * self.q.sin_pi()
    }
}

/// The canonical generators `(A, B_ρ)`.
pub fn make_generators(spec: &GroupSpec) -> Result<(Mat2C, Mat2C)> {
    if spec.rho == C64::new(0.0, 0.0) {
        return Err(Error::invalid("ρ = 0 gives a reducible group"));
    }
    let alpha = spec.alpha();
    let beta = spec.beta();
    let zero = C64::new(0.0, 0.0);
    let a = Mat2C::new(alpha, C64::new(1.0, 0.0), zero, alpha.inv());
    let b = Mat2C::new(beta, zero, spec.rho, beta.inv());
    Ok((a, b))
}

/// Both fixed points of the Möbius action of `m`.
///
/// For `c ≠ 0` the roots of `cz² + (d − a)z − b = 0` are returned, the one of
/// larger modulus last; for `c = 0` infinity comes first. A parabolic map
/// reports its single fixed point twice.
pub fn fixed_points(m: &Mat2C) -> Result<[SpherePoint; 2]> {
    if m.is_plus_minus_identity(1e-14) {
        return Err(Error::UndefinedFixedPoints);
    }
    let diff = m.a - m.d;
    let scale = m.max_abs().max(1.0);
    if m.c.norm() <= 1e-15 * scale {
        if diff.norm() <= 1e-15 * scale {
            return Ok([SpherePoint::Infinity, SpherePoint::Infinity]);
        }
        return Ok([SpherePoint::Infinity, SpherePoint::Finite(m.b / (m.d - m.a))]);
    }
    // c z² − (a − d) z − b = 0, with the cancellation-free root pairing.
    let disc = (diff * diff + 4.0 * m.b * m.c).sqrt();
    let plus = diff + disc;
    let minus = diff - disc;
    let big = if plus.norm() >= minus.norm() { plus } else { minus };
    if big.norm() == 0.0 {
        let z = diff / (2.0 * m.c);
        return Ok([SpherePoint::Finite(z), SpherePoint::Finite(z)]);
    }
    let far = big / (2.0 * m.c);
    let near = -2.0 * m.b / big;
    Ok([SpherePoint::Finite(near), SpherePoint::Finite(far)])
}

/// `γ = ρ(ρ − 4 sin(π/p) sin(π/q)) = tr[A,B] − 2`.
pub fn gamma_of(spec: &GroupSpec) -> C64 {
    let rho = spec.rho;
    rho * (rho - 4.0 * spec.sin_product())
}

/// The partner `4 sin(π/p) sin(π/q) − ρ` giving a conjugate group.
pub fn symmetry_image(spec: &GroupSpec) -> C64 {
    let k = (spec.alpha() - spec.alpha().inv()) * (spec.beta() - spec.beta().inv());
    -k - spec.rho
}

/// Both ρ with `ρ(ρ − 4 sin(π/p) sin(π/q)) = γ`, as `(smaller Re, larger Re)`
/// for real γ and otherwise in root-formula order.
pub fn rho_from_gamma(p: Order, q: Order, gamma: C64) -> (C64, C64) {
    let s2 = 2.0 * p.sin_pi() * q.sin_pi();
    let root = (C64::new(s2 * s2, 0.0) + gamma).sqrt();
    (s2 - root, s2 + root)
}

/// A closed disk in ℂ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: C64,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: C64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid(format!("disk radius must be positive, got {radius}")));
        }
        Ok(Disk { center, radius })
    }

    /// `|z − center| − radius`: positive outside, negative inside.
    pub fn signed_distance(&self, z: C64) -> f64 {
        (z - self.center).norm() - self.radius
    }

    pub fn contains(&self, z: C64) -> bool {
        self.signed_distance(z) <= 0.0
    }

    pub fn boundary_point(&self, theta: f64) -> C64 {
        self.center + C64::from_polar(self.radius, theta)
    }
}

/// The isometric disks `D₁ = {|cz + d| ≤ 1}` and `D₂ = {|cz − a| ≤ 1}`.
pub fn isometric_disks(m: &Mat2C) -> Result<(Disk, Disk)> {
    if m.c.norm() <= 1e-15 * m.max_abs().max(1.0) {
        return Err(Error::FixesInfinity);
    }
    let radius = 1.0 / m.c.norm();
    Ok((
        Disk::new(-m.d / m.c, radius)?,
        Disk::new(m.a / m.c, radius)?,
    ))
}

/// Parameters of the conjugate pair `⟨U, V_λ⟩`, normalised to `|λ| ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaParams {
    p: Order,
    q: Order,
    lambda: C64,
}

impl LambdaParams {
    /// Builds the parameters, replacing `λ` by `1/λ` when `|λ| < 1`.
    pub fn new(p: Order, q: Order, lambda: C64) -> Result<Self> {
        p.require_finite("λ coordinates")?;
        q.require_finite("λ coordinates")?;
        GroupSpec::new(p, q, C64::new(1.0, 0.0))?;
        if lambda.norm() == 0.0 || !lambda.norm().is_finite() {
            return Err(Error::invalid("λ must be finite and non-zero"));
        }
        let lambda = if lambda.norm() < 1.0 { lambda.inv() } else { lambda };
        Ok(LambdaParams { p, q, lambda })
    }

    pub fn finite(p: u32, q: u32, lambda: C64) -> Result<Self> {
        LambdaParams::new(Order::finite(p)?, Order::finite(q)?, lambda)
    }

    pub fn p(&self) -> Order {
        self.p
    }

    pub fn q(&self) -> Order {
        self.q
    }

    pub fn lambda(&self) -> C64 {
        self.lambda
    }

    pub fn sin_product(&self) -> f64 {
        self.p.sin_pi() * self.q.sin_pi()
    }
}

/// The two ρ conjugate to `⟨U, V_λ⟩`: `(ρ₋, ρ₊)` with
/// `ρ₋ = −(λ−1)²/λ · s` and `ρ₊ = (λ+1)²/λ · s`, `s = sin(π/p) sin(π/q)`.
pub fn rho_from_lambda(params: &LambdaParams) -> (C64, C64) {
    let s = params.sin_product();
    let l = params.lambda;
    let minus = -(l - 1.0) * (l - 1.0) / l * s;
    let plus = (l + 1.0) * (l + 1.0) / l * s;
    (minus, plus)
}

/// The two `λ` solving `(λ − 1/λ)² s² = ρ(ρ − 4s)` on the principal branch
/// of `√γ`; their product is `−1` and the first has `|λ| ≥ 1`.
///
/// The other two solutions are the negatives of these and give the same
/// group up to replacing `V` by `V⁻¹`.
pub fn lambda_from_rho(spec: &GroupSpec) -> Result<(C64, C64)> {
    spec.p.require_finite("λ coordinates")?;
    spec.q.require_finite("λ coordinates")?;
    let s = spec.sin_product();
    let w = gamma_of(spec).sqrt() / s;
    let disc = (w * w + 4.0).sqrt();
    let l1 = (w + disc) / 2.0;
    let l2 = (w - disc) / 2.0;
    if l1.norm() >= l2.norm() {
        Ok((l1, l2))
    } else {
        Ok((l2, l1))
    }
}

/// The rotation `U` of order `p` fixing `±i` and the elliptic `V_λ` of order `q` fixing `±λ`.
pub fn lambda_generators(params: &LambdaParams) -> (Mat2C, Mat2C) {
    let (cp, sp) = (params.p.cos_pi(), params.p.sin_pi());
    let (cq, sq) = (params.q.cos_pi(), params.q.sin_pi());
    let l = params.lambda;
    let u = Mat2C::new(cp.into(), (-sp).into(), sp.into(), cp.into());
    let v = Mat2C::new(cq.into(), -l * sq, l.inv() * sq, cq.into());
    (u, v)
}

/// The involution `W` with `W U W⁻¹ = A`, carrying the complement of the
/// isometric disks of `U` into the sector fundamental domain of `A`.
///
/// Undefined for `p = 6`, where `1 − 2 sin(π/p)` vanishes.
pub fn sector_conjugator(p: Order) -> Result<Mat2C> {
    let n = p.require_finite("the sector conjugator")?;
    let sp = p.sin_pi();
    let denom = 1.0 - 2.0 * sp;
    if denom.abs() < tol::ALGEBRAIC {
        return Err(Error::unsupported(format!(
            "sector conjugator is singular for p = {n}"
        )));
    }
    let root = sp.sqrt();
    let k = C64::new(denom, 0.0).sqrt().inv();
    Ok(Mat2C::new(
        C64::new(root, 0.0),
        I * ((sp - 1.0) / root),
        -I * root,
        C64::new(-root, 0.0),
    )
    .scale(k))
}
