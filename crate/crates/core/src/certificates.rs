//! Sufficient conditions for `⟨A, B⟩` to be discrete and freely generated.
//!
//! Every test here is one-sided: [`Verdict::FreeDiscrete`] is a proof, while
//! [`Verdict::NoCertificate`] only says that this particular condition did not fire.
//! Open conditions must clear [`tol::STRICT`]; the closed ones (the λ region
//! and the imaginary-part strip) accept equality up to [`tol::CLOSED`].

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::mobius::{
    gamma_of, isometric_disks, lambda_from_rho, lambda_generators, sector_conjugator, Disk,
    GroupSpec, LambdaParams, Mat2C, Order,
};
use crate::{tol, Error, Result, C64};

const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    FreeDiscrete,
    NoCertificate,
}

/// The rule that produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Witness {
    DisksElliptic,
    DisksGeneral,
    LineFamily,
    LambdaRegion,
    ImBound,
}

impl Witness {
    pub const ALL: [Witness; 5] = [
        Witness::DisksElliptic,
        Witness::DisksGeneral,
        Witness::LineFamily,
        Witness::LambdaRegion,
        Witness::ImBound,
    ];

    /// Raster code, `1..=5`; `0` is reserved for "no certificate".
    pub fn code(self) -> u8 {
        match self {
            Witness::DisksElliptic => 1,
            Witness::DisksGeneral => 2,
            Witness::LineFamily => 3,
            Witness::LambdaRegion => 4,
            Witness::ImBound => 5,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Witness::ALL.into_iter().find(|w| w.code() == code)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Slack of the binding inequality (non-negative whenever the verdict is free).
    pub slack: f64,
}

impl Certificate {
    pub fn free(witness: Witness, slack: f64) -> Self {
        Certificate {
            verdict: Verdict::FreeDiscrete,
            witness: Some(witness),
            slack: slack.max(0.0),
        }
    }

    pub fn none(slack: f64) -> Self {
        Certificate {
            verdict: Verdict::NoCertificate,
            witness: None,
            slack,
        }
    }

    pub fn is_free(&self) -> bool {
        self.verdict == Verdict::FreeDiscrete
    }

    /// `0` for no certificate, otherwise the witness code.
    pub fn code(&self) -> u8 {
        self.witness.map_or(0, Witness::code)
    }
}

fn strict(witness: Witness, slack: f64) -> Certificate {
    if tol::strictly_positive(slack) {
        Certificate::free(witness, slack)
    } else {
        Certificate::none(slack)
    }
}

fn closed(witness: Witness, slack: f64) -> Certificate {
    if tol::non_negative(slack) {
        Certificate::free(witness, slack)
    } else {
        Certificate::none(slack)
    }
}

// ---------------------------------------------------------------------------
// Four-disk tests

/// The four radius-2 disks excluded by the elliptic disk test, in the order
/// `−2i e^{iπ/p} sin(π/q)`, `2cos(π/p − π/q)`, `2i e^{−iπ/p} sin(π/q)`, `−2cos(π/p + π/q)`.
pub fn exclusion_disks(p: Order, q: Order) -> [Disk; 4] {
    let (a, b) = (p.angle(), q.angle());
    let sq = q.sin_pi();
    let centers = [
        -2.0 * I * C64::from_polar(1.0, a) * sq,
        C64::new(2.0 * (a - b).cos(), 0.0),
        2.0 * I * C64::from_polar(1.0, -a) * sq,
        C64::new(-2.0 * (a + b).cos(), 0.0),
    ];
    centers.map(|center| Disk { center, radius: 2.0 })
}

/// Minimum over the four exclusion disks of `|ρ − center| − 2`.
pub fn elliptic_disk_slack(p: Order, q: Order, rho: C64) -> f64 {
    exclusion_disks(p, q)
        .iter()
        .map(|d| d.signed_distance(rho))
        .fold(f64::INFINITY, f64::min)
}

/// Four-disk test for `⟨A, B_ρ⟩` with both generators elliptic.
///
/// Requires `p ≥ 3` (or parabolic); order-2 `A` has no non-degenerate
/// sector surgery. `q = 2` is admitted.
pub fn cert_disks_elliptic(spec: &GroupSpec) -> Result<Certificate> {
    if !spec.p().at_least(3) {
        return Err(Error::unsupported("disk certificates need p ≥ 3"));
    }
    Ok(strict(
        Witness::DisksElliptic,
        elliptic_disk_slack(spec.p(), spec.q(), spec.rho()),
    ))
}

/// The open sector `K` with apex at the finite fixed point `(i/2)csc(π/p)` of
/// `A`, opening towards `0` with cone angle `2π/p`. In the parabolic limit
/// it is the strip `|Re z| < 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorK {
    p: Order,
}

impl SectorK {
    pub fn new(p: Order) -> Result<Self> {
        if !p.at_least(2) {
            return Err(Error::invalid("sector needs p ≥ 2"));
        }
        Ok(SectorK { p })
    }

    pub fn apex(&self) -> Option<C64> {
        self.p
            .value()
            .map(|_| C64::new(0.0, 0.5 / self.p.sin_pi()))
    }

    pub fn half_angle(&self) -> f64 {
        self.p.angle()
    }

    /// Angle of `z − apex` measured from the axis direction `−i`.
    fn axis_angle(&self, z: C64) -> Option<f64> {
        let apex = self.apex()?;
        let w = z - apex;
        if w.norm() == 0.0 {
            return Some(0.0);
        }
        Some((I * w).arg())
    }

    pub fn contains(&self, z: C64) -> bool {
        match self.axis_angle(z) {
            Some(phi) => z != self.apex().unwrap() && phi.abs() < self.half_angle(),
            None => z.re.abs() < 0.5,
        }
    }

    pub fn contains_closed(&self, z: C64, eps: f64) -> bool {
        self.distance(z) <= eps
    }

    /// Euclidean distance from `z` to the closed sector.
    pub fn distance(&self, z: C64) -> f64 {
        let Some(phi) = self.axis_angle(z) else {
            return (z.re.abs() - 0.5).max(0.0);
        };
        let h = self.half_angle();
        let excess = phi.abs() - h;
        if excess <= 0.0 {
            return 0.0;
        }
        let r = (z - self.apex().unwrap()).norm();
        if excess >= FRAC_PI_2 {
            r
        } else {
            r * excess.sin()
        }
    }

    pub fn meets_disk(&self, disk: &Disk) -> bool {
        self.distance(disk.center) < disk.radius
    }
}

/// Four-disk test for `⟨A, Y⟩` with `Y` arbitrary, valid when the isometric
/// disks of `Y` meet the sector `K`.
pub fn cert_disks_general(p: Order, y: &Mat2C) -> Result<Certificate> {
    let sector = SectorK::new(p)?;
    let y = det_one(y)?;
    let alpha = p.rotation();
    let (a, b, c, d) = (y.a, y.b, y.c, y.d);
    let scale = y.max_abs().max(1.0);
    if c.norm() <= 1e-14 * scale {
        return Err(Error::SharedFixedPoint);
    }
    let a2 = alpha * alpha;
    let quartic = b * a2 * a2 + (d - a) * a2 * alpha - (2.0 * b + c) * a2 + (a - d) * alpha + b;
    if quartic.norm() <= 1e-14 * scale {
        return Err(Error::SharedFixedPoint);
    }
    let (d1, d2) = isometric_disks(&y)?;
    if !(sector.meets_disk(&d1) && sector.meets_disk(&d2)) {
        return Err(Error::precondition(
            "isometric disks of Y must meet the sector K; normalise first",
        ));
    }
    let k = alpha - alpha.conj();
    let slack = [
        (c - d * k).norm(),
        (c + a * k).norm(),
        (c + a * alpha + d * alpha.conj()).norm(),
        (c - a * alpha.conj() - d * alpha).norm(),
    ]
    .into_iter()
    .map(|m| m - 2.0)
    .fold(f64::INFINITY, f64::min);
    Ok(strict(Witness::DisksGeneral, slack))
}

fn det_one(y: &Mat2C) -> Result<Mat2C> {
    if (y.det() - 1.0).norm() <= tol::INCIDENCE {
        Ok(*y)
    } else {
        y.normalized()
    }
}

/// `Ỹ = AⁿYAᵐ` with both isometric-disk centres in the closed sector `K`.
///
/// `m` moves the pole `−d/c` and `n` the image of ∞ independently; among
/// admissible exponents in `−p..=p` the smallest `|m|` (then smallest `m`) and
/// likewise for `n` are chosen.
pub fn normalize_into_sector(p: Order, y: &Mat2C) -> Result<(Mat2C, i32, i32)> {
    let n_p = p.require_finite("sector normalisation")?;
    if n_p < 3 {
        return Err(Error::unsupported("sector normalisation needs p ≥ 3"));
    }
    let sector = SectorK::new(p)?;
    let (d1, d2) = isometric_disks(y)?;
    let apex = sector.apex().unwrap();
    let step = 2.0 * PI / n_p as f64;
    let h = sector.half_angle();
    let pick = |z: C64| -> i32 {
        let w = z - apex;
        if w.norm() == 0.0 {
            return 0;
        }
        let phi = (I * w).arg();
        let range = n_p as i32;
        (-range..=range)
            .filter(|&k| {
                let ang = wrap(phi + k as f64 * step);
                ang.abs() <= h + 1e-12
            })
            .min_by_key(|&k| (k.abs(), k))
            .expect("every point lies in some rotated copy of K")
    };
    // A^k rotates about the apex by k·2π/p; the pole of AⁿYAᵐ is A^{-m}(Q₁).
    let m = -pick(d1.center);
    let n = pick(d2.center);
    let (a, _) = crate::mobius::make_generators(&GroupSpec::new(p, p, C64::new(1.0, 0.0))?)?;
    let y_new = a.pow(n) * *y * a.pow(m);
    Ok((y_new, m, n))
}

fn wrap(angle: f64) -> f64 {
    let mut a = angle % (2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    } else if a < -PI {
        a += 2.0 * PI;
    }
    a
}

// ---------------------------------------------------------------------------
// Line families

/// Distance from `rho` to the line `{ρ₀(1 + it) : t ∈ ℝ}`.
pub fn line_distance(anchor: C64, rho: C64) -> f64 {
    ((rho - anchor) * anchor.conj()).re.abs() / anchor.norm()
}

/// Certifies `spec.rho` when it lies on the line through a disk-certified
/// anchor `ρ₀` in direction `iρ₀`.
pub fn cert_line_family(spec: &GroupSpec, anchor: C64) -> Result<Certificate> {
    if anchor.norm() == 0.0 {
        return Err(Error::precondition("anchor must be non-zero"));
    }
    let base = cert_disks_elliptic(&spec.with_rho(anchor))?;
    if !base.is_free() {
        return Err(Error::precondition(format!(
            "anchor {anchor} fails the disk test (slack {:.3e})",
            base.slack
        )));
    }
    let dist = line_distance(anchor, spec.rho());
    if dist <= tol::INCIDENCE {
        Ok(Certificate::free(Witness::LineFamily, base.slack))
    } else {
        Ok(Certificate::none(-dist))
    }
}

/// Number of uniformly spaced anchors sampled on the Thales circle.
pub const ANCHOR_SAMPLES: usize = 512;

/// Searches for an anchor `ρ₀ = ρ/(1 + it)` passing the disk test.
///
/// Anchors are parametrised as `ρ cos ψ · e^{−iψ}` with `t = tan ψ`; the best
/// few samples are refined by golden-section search on the disk slack.
/// Returns the best anchor and its slack when one clears the strict margin.
pub fn find_line_anchor(spec: &GroupSpec) -> Result<Option<(C64, f64)>> {
    if !spec.p().at_least(3) {
        return Err(Error::unsupported("disk certificates need p ≥ 3"));
    }
    let rho = spec.rho();
    if rho.norm() == 0.0 {
        return Ok(None);
    }
    let (p, q) = (spec.p(), spec.q());
    let anchor = |psi: f64| rho * C64::from_polar(psi.cos(), -psi);
    let slack = |psi: f64| elliptic_disk_slack(p, q, anchor(psi));

    let n = ANCHOR_SAMPLES;
    let step = PI / (n + 1) as f64;
    let samples: Vec<(f64, f64)> = (1..=n)
        .map(|k| {
            let psi = -FRAC_PI_2 + k as f64 * step;
            (psi, slack(psi))
        })
        .collect();

    let mut best = samples
        .iter()
        .copied()
        .fold((0.0, f64::NEG_INFINITY), |acc, s| if s.1 > acc.1 { s } else { acc });
    if !tol::strictly_positive(best.1) {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| samples[j].1.total_cmp(&samples[i].1));
        for &i in order.iter().take(4) {
            let lo = samples[i].0 - step;
            let hi = samples[i].0 + step;
            let (psi, val) = golden_max(&slack, lo.max(-FRAC_PI_2), hi.min(FRAC_PI_2));
            if val > best.1 {
                best = (psi, val);
            }
            if tol::strictly_positive(best.1) {
                break;
            }
        }
    }
    Ok(tol::strictly_positive(best.1).then(|| (anchor(best.0), best.1)))
}

fn golden_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Line-family certificate with an automatically chosen anchor.
pub fn cert_line_search(spec: &GroupSpec) -> Result<Certificate> {
    Ok(match find_line_anchor(spec)? {
        Some((_, slack)) => Certificate::free(Witness::LineFamily, slack),
        None => Certificate::none(f64::NAN),
    })
}

/// A certificate for `⟨A, B_ρ⟩` produced along a ray `ρ_t = ρ₀ + ict`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayCertificate {
    pub certificate: Certificate,
    /// The certified parameter `ρ_t`.
    pub rho: C64,
    /// `β` with `β + 1/β = tr Y`, fixing `B_ρ = (β, 0; ρ, β⁻¹)`.
    pub beta: C64,
    /// Direction `ic` of the ray.
    pub direction: C64,
}

/// `ρ₀` with `tr B_{ρ₀} = tr Y` and `tr[A, B_{ρ₀}] = tr[A, Y]`, chosen so
/// that conjugating `Y` by `diag(√(1+it), 1/√(1+it))` moves it to `ρ₀ + ict`.
fn ray_through(p: Order, y: &Mat2C, t: f64) -> (C64, C64, C64) {
    let alpha = p.rotation();
    let k = alpha - alpha.inv();
    let tr = y.trace();
    let beta = (tr + (tr * tr - 4.0).sqrt()) / 2.0;
    let rho0 = y.c + ((y.a - y.d) - (beta - beta.inv())) * k / 2.0;
    let direction = I * y.c;
    (rho0 + direction * t, beta, direction)
}

/// Extends a four-disk certificate for `{A, Y}` along the ray `ρ₀ + ict`, `c = Y₂₁`.
pub fn cert_general_ray(p: Order, y: &Mat2C, t: f64) -> Result<RayCertificate> {
    if !p.at_least(3) {
        return Err(Error::unsupported("ray certificates need p ≥ 3"));
    }
    let y = det_one(y)?;
    let base = cert_disks_general(p, &y)?;
    if !base.is_free() {
        return Err(Error::precondition(format!(
            "{{A, Y}} fails the general disk test (slack {:.3e})",
            base.slack
        )));
    }
    let (rho, beta, direction) = ray_through(p, &y, t);
    Ok(RayCertificate {
        certificate: Certificate::free(Witness::LineFamily, base.slack),
        rho,
        beta,
        direction,
    })
}

/// `Y = W V_λ W⁻¹`, the `λ`-generator moved into the `⟨A, ·⟩` normal form.
pub fn sector_conjugate(params: &LambdaParams) -> Result<Mat2C> {
    let w = sector_conjugator(params.p())?;
    let (_, v) = lambda_generators(params);
    Ok(w * v * w.inverse())
}

/// Ray certificate anchored at a point of the `λ` region, via the conjugate
/// `Y = W V_λ W⁻¹` which forms a conic pair with `A`.
pub fn cert_lambda_ray(params: &LambdaParams, t: f64) -> Result<RayCertificate> {
    if !params.p().at_least(3) {
        return Err(Error::unsupported("ray certificates need p ≥ 3"));
    }
    let base = lambda_feasible(params);
    if !base.is_free() {
        return Err(Error::precondition(format!(
            "λ = {} is outside the λ region (slack {:.3e})",
            params.lambda(),
            base.slack
        )));
    }
    let y = sector_conjugate(params)?;
    let (rho, beta, direction) = ray_through(params.p(), &y, t);
    Ok(RayCertificate {
        certificate: Certificate::free(Witness::LambdaRegion, base.slack),
        rho,
        beta,
        direction,
    })
}

// ---------------------------------------------------------------------------
// λ region

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// `|λ| csc(π/q) − |λ cot(π/q) ± cot(π/p)| − csc(π/p)`.
pub fn lambda_sign_slack(params: &LambdaParams, sign: Sign) -> f64 {
    let (p, q) = (params.p(), params.q());
    let (cot_p, csc_p) = (p.cos_pi() / p.sin_pi(), 1.0 / p.sin_pi());
    let (cot_q, csc_q) = (q.cos_pi() / q.sin_pi(), 1.0 / q.sin_pi());
    let l = params.lambda();
    l.norm() * csc_q - (l * cot_q + sign.value() * cot_p).norm() - csc_p
}

/// Both isometric disks of `U` inside both isometric disks of `V_λ`.
pub fn lambda_feasible(params: &LambdaParams) -> Certificate {
    let slack = lambda_sign_slack(params, Sign::Plus).min(lambda_sign_slack(params, Sign::Minus));
    closed(Witness::LambdaRegion, slack)
}

fn require_lambda_orders(p: Order, q: Order) -> Result<()> {
    p.require_finite("λ boundary")?;
    q.require_finite("λ boundary")?;
    GroupSpec::new(p, q, C64::new(1.0, 0.0)).map(|_| ())
}

/// `r_±(θ)`, the modulus where the `±` inequality becomes an equality on the ray `arg λ = θ`.
pub fn lambda_boundary_radius(p: Order, q: Order, theta: f64, sign: Sign) -> Result<f64> {
    require_lambda_orders(p, q)?;
    let s = sign.value();
    let (cot_p, csc_p) = (p.cos_pi() / p.sin_pi(), 1.0 / p.sin_pi());
    let (cot_q, csc_q) = (q.cos_pi() / q.sin_pi(), 1.0 / q.sin_pi());
    let (st, ct) = theta.sin_cos();
    let lin = s * ct * cot_p * cot_q + csc_p * csc_q;
    let u = ct * csc_p * cot_q + s * cot_p * csc_q;
    Ok(lin + (u * u + st * st * cot_q * cot_q).sqrt())
}

/// `λ = r_±(θ) e^{iθ}` on the boundary of the λ region.
pub fn lambda_boundary(p: Order, q: Order, theta: f64, sign: Sign) -> Result<C64> {
    Ok(C64::from_polar(lambda_boundary_radius(p, q, theta, sign)?, theta))
}

/// `λ` on the boundary of the feasible set along `arg λ = θ` (the larger of `r_±`).
pub fn lambda_region_boundary(p: Order, q: Order, theta: f64) -> Result<C64> {
    let r = lambda_boundary_radius(p, q, theta, Sign::Plus)?
        .max(lambda_boundary_radius(p, q, theta, Sign::Minus)?);
    Ok(C64::from_polar(r, theta))
}

/// `(ρ₊(θ), ρ₋(θ))` built from `r₊`.
pub fn rho_boundary(p: Order, q: Order, theta: f64) -> Result<(C64, C64)> {
    rho_boundary_with(p, q, theta, Sign::Plus)
}

/// As [`rho_boundary`] but from `r_sign`.
pub fn rho_boundary_with(p: Order, q: Order, theta: f64, sign: Sign) -> Result<(C64, C64)> {
    let l = lambda_boundary(p, q, theta, sign)?;
    let s = p.sin_pi() * q.sin_pi();
    Ok((s * (l + 1.0) * (l + 1.0) / l, -s * (l - 1.0) * (l - 1.0) / l))
}

// ---------------------------------------------------------------------------
// Imaginary-part strip

/// `2√(1 − sin²(π/p) sin²(π/q))`.
pub fn im_bound(p: Order, q: Order) -> f64 {
    let s = p.sin_pi() * q.sin_pi();
    2.0 * (1.0 - s * s).max(0.0).sqrt()
}

/// `|Im ρ| ≥ 2√(1 − sin² sin²)` certifies; equality is admitted.
pub fn cert_im_bound(spec: &GroupSpec) -> Result<Certificate> {
    if !(spec.p().at_least(3) && spec.q().at_least(3)) {
        return Err(Error::unsupported("the imaginary-part bound needs p, q ≥ 3"));
    }
    Ok(closed(
        Witness::ImBound,
        spec.rho().im.abs() - im_bound(spec.p(), spec.q()),
    ))
}

// ---------------------------------------------------------------------------
// Combined

/// Runs the certificates in order (elliptic disks, imaginary-part strip,
/// line families, then the λ region) and returns the first that fires.
///
/// Each family is tried with both orderings of `(p, q)` (the two orderings
/// describe the same group with the generators exchanged), and the line
/// families are also tried at the symmetry image `4 sin sin − ρ`, which
/// gives a conjugate group.
pub fn cert_combined(spec: &GroupSpec) -> Certificate {
    let rho = spec.rho();
    let mut families: Vec<GroupSpec> = vec![*spec];
    if spec.p() != spec.q() {
        families.push(spec.swapped());
    }
    families.retain(|s| s.p().at_least(3));

    let mut best_disk = f64::NEG_INFINITY;
    for fam in &families {
        if let Ok(c) = cert_disks_elliptic(fam) {
            if c.is_free() {
                return c;
            }
            best_disk = best_disk.max(c.slack);
        }
    }

    if let Ok(c) = cert_im_bound(spec) {
        if c.is_free() {
            return c;
        }
    }

    if rho.norm() > 0.0 {
        // the disk union is symmetric under conjugation, so ρ̄ adds nothing
        let images = [rho, 4.0 * spec.sin_product() - rho];
        for fam in &families {
            for img in images {
                if let Ok(Some((_, slack))) = find_line_anchor(&fam.with_rho(img)) {
                    return Certificate::free(Witness::LineFamily, slack);
                }
            }
        }
    }

    if spec.p().is_finite() && spec.q().is_finite() {
        if let Some(c) = lambda_route(spec) {
            return c;
        }
    }

    Certificate::none(best_disk)
}

/// λ-region test through both `λ` of [`lambda_from_rho`] and both orderings.
pub fn lambda_route(spec: &GroupSpec) -> Option<Certificate> {
    let (l1, l2) = lambda_from_rho(spec).ok()?;
    let mut best: Option<Certificate> = None;
    for (p, q) in [(spec.p(), spec.q()), (spec.q(), spec.p())] {
        for l in [l1, l2] {
            let Ok(params) = LambdaParams::new(p, q, l) else {
                continue;
            };
            let c = lambda_feasible(&params);
            if c.is_free() {
                return Some(c);
            }
            if best.map_or(true, |b| c.slack > b.slack) {
                best = Some(c);
            }
        }
    }
    best.filter(Certificate::is_free)
}

/// One sample of the tangency envelope: the point `ρ_λ` and the ray direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeSample {
    pub lambda: C64,
    pub rho: C64,
    /// `ν_λ = (λ² − 1)/λ`, parallel to `c_λ = Y₂₁`.
    pub nu: C64,
    /// Direction `i c_λ` of the certified line through `rho`.
    pub direction: C64,
}

/// Samples the boundary of the λ region at `n` equally spaced arguments and
/// returns the points and directions of the lines certified through them.
pub fn envelope_samples(p: Order, q: Order, n: usize) -> Result<Vec<EnvelopeSample>> {
    if !(p.is_finite() && q.is_finite() && p.at_least(3) && q.at_least(3)) {
        return Err(Error::unsupported("envelope needs finite p, q ≥ 3"));
    }
    if n == 0 {
        return Err(Error::invalid("sample count must be at least 1"));
    }
    (0..n)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / n as f64;
            let lambda = lambda_region_boundary(p, q, theta)?;
            let params = LambdaParams::new(p, q, lambda)?;
            let y = sector_conjugate(&params)?;
            let (rho, _, direction) = ray_through(p, &y, 0.0);
            Ok(EnvelopeSample {
                lambda,
                rho,
                nu: (lambda * lambda - 1.0) / lambda,
                direction,
            })
        })
        .collect()
}

/// `γ = tr[A, B] − 2` of a ray certificate, for cross-checks.
pub fn ray_gamma(p: Order, ray: &RayCertificate) -> C64 {
    let alpha = p.rotation();
    let k = (alpha - alpha.inv()) * (ray.beta - ray.beta.inv());
    ray.rho * (ray.rho + k)
}

#[doc(hidden)]
pub fn gamma_for(spec: &GroupSpec) -> C64 {
    gamma_of(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mobius::{commutator_gamma, make_generators};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn spec(p: u32, q: u32, rho: C64) -> GroupSpec {
        GroupSpec::finite(p, q, rho).unwrap()
    }

    fn half_cusp(p: u32, q: u32) -> C64 {
        let po = Order::Finite(p);
        let qo = Order::Finite(q);
        let s = po.sin_pi() * qo.sin_pi();
        c(2.0 * s, im_bound(po, qo))
    }

    #[test]
    fn disks_elliptic_examples() {
        assert!(cert_disks_elliptic(&spec(3, 3, c(10.0, 0.0))).unwrap().is_free());
        for p in [3, 4, 8, 20] {
            let cert = cert_disks_elliptic(&spec(p, p, c(2.0, 0.0))).unwrap();
            assert!(!cert.is_free());
        }
        let tangent = cert_disks_elliptic(&spec(3, 3, c(0.0, 0.0))).unwrap();
        assert!(!tangent.is_free());
        let right = cert_disks_elliptic(&spec(3, 3, c(4.1, 0.0))).unwrap();
        assert!(right.is_free());
        assert!((right.slack - 0.1).abs() < 1e-12);
        assert!(cert_disks_elliptic(&spec(2, 5, c(10.0, 0.0))).is_err());
        assert!(cert_disks_elliptic(&spec(5, 2, c(10.0, 0.0))).unwrap().is_free());
    }

    #[test]
    fn exclusion_disk_centres_for_p_equal_q() {
        let d = exclusion_disks(Order::Finite(3), Order::Finite(3));
        let h = 3f64.sqrt() / 2.0;
        let expect = [c(1.5, -h), c(2.0, 0.0), c(1.5, h), c(1.0, 0.0)];
        for (disk, e) in d.iter().zip(expect) {
            assert!((disk.center - e).norm() < 1e-14);
            assert_eq!(disk.radius, 2.0);
        }
    }

    #[test]
    fn sector_membership() {
        let k = SectorK::new(Order::Finite(3)).unwrap();
        let apex = k.apex().unwrap();
        assert!((apex - c(0.0, 0.5 / (PI / 3.0).sin())).norm() < 1e-15);
        assert!(k.contains(c(0.0, 0.0)));
        assert!(k.contains(c(0.0, -5.0)));
        assert!(!k.contains(c(0.0, 1.0)));
        assert!(!k.contains(apex));
        assert!(k.contains_closed(apex, 0.0));
        // boundary ray from the apex at 60° from −i
        let edge = apex + C64::from_polar(2.0, -FRAC_PI_2 + PI / 3.0);
        assert!(k.distance(edge) < 1e-12);
        assert!(!k.contains(edge + c(1e-6, 0.0)));

        let strip = SectorK::new(Order::Infinite).unwrap();
        assert!(strip.contains(c(0.4, 100.0)));
        assert!((strip.distance(c(2.0, 0.0)) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn disks_general_agrees_with_elliptic_for_equal_orders() {
        for &(p, rho) in &[(3, c(10.0, 0.0)), (4, c(1.0, 3.0)), (5, c(-3.5, 0.2)), (3, c(0.5, 0.5))] {
            let s = spec(p, p, rho);
            let (_, b) = make_generators(&s).unwrap();
            let g = cert_disks_general(Order::Finite(p), &b).unwrap();
            let e = cert_disks_elliptic(&s).unwrap();
            assert_eq!(g.verdict, e.verdict, "p = {p}, ρ = {rho}");
            assert!((g.slack - e.slack).abs() < 1e-12);
        }
    }

    #[test]
    fn disks_general_errors() {
        let (a, _) = make_generators(&spec(3, 3, c(1.0, 0.0))).unwrap();
        assert_eq!(
            cert_disks_general(Order::Finite(3), &a),
            Err(Error::SharedFixedPoint)
        );
        // isometric disks of radius 0.01 centred far from K
        let far = Mat2C::new(c(1000.0, 5000.0), c(0.0, 0.0), c(100.0, 0.0), c(1.0, 0.0))
            .normalized()
            .unwrap();
        let y = Mat2C::new(c(1.0, 0.0), c(-1.0 / 100.0 + 50.0, 0.0), c(100.0, 0.0), c(0.0, 0.0));
        let _ = far;
        let shifted = {
            // conjugate by a translation that moves the disks out of K
            let t = Mat2C::new(c(1.0, 0.0), c(40.0, 3.0), c(0.0, 0.0), c(1.0, 0.0));
            t * y * t.inverse()
        };
        assert!(matches!(
            cert_disks_general(Order::Finite(3), &shifted),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn normalise_identity_when_already_in_sector() {
        let (_, b) = make_generators(&spec(5, 3, c(4.0, 1.0))).unwrap();
        let (d1, d2) = isometric_disks(&b).unwrap();
        let k = SectorK::new(Order::Finite(5)).unwrap();
        if k.contains_closed(d1.center, 1e-12) && k.contains_closed(d2.center, 1e-12) {
            let (y, m, n) = normalize_into_sector(Order::Finite(5), &b).unwrap();
            assert_eq!((m, n), (0, 0));
            assert_eq!(y, b);
        }
        let (_, b) = make_generators(&spec(3, 3, c(0.0, -2.0))).unwrap();
        let (_, m, n) = normalize_into_sector(Order::Finite(3), &b).unwrap();
        assert!(m.abs() <= 1 && n.abs() <= 1);
    }

    #[test]
    fn line_family_examples() {
        let anchor = c(10.0, 0.0);
        let s = spec(3, 3, anchor);
        let direct = cert_disks_elliptic(&s).unwrap();
        let lf = cert_line_family(&s, anchor).unwrap();
        assert!(lf.is_free());
        assert_eq!(lf.slack, direct.slack);

        let s = spec(3, 3, anchor * c(1.0, 5.0));
        assert!(cert_line_family(&s, anchor).unwrap().is_free());
        let off = spec(3, 3, c(5.0, 1.0));
        assert_eq!(cert_line_family(&off, anchor).unwrap().verdict, Verdict::NoCertificate);

        let bad = cert_line_family(&spec(3, 3, c(1.5, 0.0)), c(1.5, 0.0));
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }

    #[test]
    fn half_cusp_has_no_line_anchor() {
        for p in 3..=6 {
            for q in 3..=6 {
                let s = spec(p, q, half_cusp(p, q));
                assert!(find_line_anchor(&s).unwrap().is_none(), "({p},{q})");
            }
        }
    }

    #[test]
    fn general_ray_reduces_to_line_family() {
        let rho0 = c(6.0, 2.0);
        let s = spec(4, 4, rho0);
        let (_, b) = make_generators(&s).unwrap();
        for t in [0.0, 0.3, -2.5] {
            let ray = cert_general_ray(Order::Finite(4), &b, t).unwrap();
            assert!((ray.rho - rho0 * c(1.0, t)).norm() < 1e-12);
            assert!(ray.certificate.is_free());
        }
    }

    #[test]
    fn general_ray_preserves_commutator_trace() {
        // A loxodromic Y normalised into K, then carried along the ray.
        let y = Mat2C::new(c(2.0, 1.0), c(0.5, -0.25), c(6.0, 5.0), c(0.0, 0.0));
        let y = y.normalized().unwrap();
        let p = Order::Finite(5);
        let (y, _, _) = normalize_into_sector(p, &y).unwrap();
        let Ok(ray) = cert_general_ray(p, &y, 0.8) else {
            return;
        };
        let (a, _) = make_generators(&spec(5, 5, c(1.0, 0.0))).unwrap();
        let s = C64::new(1.0, 0.8);
        let yt = Mat2C::new(y.a, y.b / s, y.c * s, y.d);
        assert!((commutator_gamma(&a, &yt) - ray_gamma(p, &ray)).norm() < 1e-9);
    }

    #[test]
    fn lambda_feasible_examples() {
        let f = |p, q, l: C64| lambda_feasible(&LambdaParams::finite(p, q, l).unwrap());
        let edge = f(3, 3, c(3.0, 0.0));
        assert!(edge.is_free());
        assert!(edge.slack.abs() < 1e-12);
        assert!(!f(3, 3, c(1.0, 0.0)).is_free());
        assert!(f(3, 2, c(2.0, 0.0)).is_free());
        assert!(f(3, 2, c(0.0, 1.8)).is_free());
        assert!(!f(3, 2, c(1.7, 0.0)).is_free());
    }

    #[test]
    fn lambda_boundary_examples() {
        let (p3, p7) = (Order::Finite(3), Order::Finite(7));
        let r = lambda_boundary_radius(p3, p3, 0.0, Sign::Plus).unwrap();
        assert!((r - 3.0).abs() < 1e-13);
        let a = lambda_boundary_radius(p3, p7, FRAC_PI_2, Sign::Plus).unwrap();
        let b = lambda_boundary_radius(p3, p7, FRAC_PI_2, Sign::Minus).unwrap();
        assert!((a - b).abs() < 1e-13);
        let l = lambda_boundary(p3, p7, 0.3, Sign::Plus).unwrap();
        let params = LambdaParams::new(p3, p7, l).unwrap();
        assert!(lambda_sign_slack(&params, Sign::Plus).abs() < 1e-10);
    }

    #[test]
    fn equal_order_boundary_matches_closed_form() {
        for p in [3u32, 4, 9] {
            let o = Order::Finite(p);
            let (s, co) = (o.sin_pi(), o.cos_pi());
            for theta in [0.0, 0.4, 1.9, 3.0] {
                let (st, ct) = f64::sin_cos(theta);
                for sign in [Sign::Plus, Sign::Minus] {
                    let sg = sign.value();
                    let closed = (1.0 + sg * ct * co * co
                        + (co * co * ((ct + sg) * (ct + sg) + st * st * s * s)).sqrt())
                        / (s * s);
                    let r = lambda_boundary_radius(o, o, theta, sign).unwrap();
                    assert!((r - closed).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn rho_boundary_examples() {
        let p3 = Order::Finite(3);
        let (plus, minus) = rho_boundary(p3, p3, 0.0).unwrap();
        assert!((plus - c(4.0, 0.0)).norm() < 1e-12);
        assert!((minus - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((plus + minus - c(3.0, 0.0)).norm() < 1e-12);

        let (p, q) = (Order::Finite(4), Order::Finite(9));
        for theta in [0.1, 1.0, 2.2] {
            let (a_plus, a_minus) = rho_boundary_with(p, q, theta, Sign::Minus).unwrap();
            let (b_plus, b_minus) = rho_boundary(p, q, theta + PI).unwrap();
            assert!((a_plus - b_minus).norm() < 1e-10);
            assert!((a_minus - b_plus).norm() < 1e-10);
        }
    }

    #[test]
    fn im_bound_examples() {
        let at_cusp = cert_im_bound(&spec(3, 3, half_cusp(3, 3))).unwrap();
        assert!(at_cusp.is_free());
        assert!(at_cusp.slack.abs() < 1e-12);
        assert!((im_bound(Order::Finite(3), Order::Finite(3)) - 1.3228756555322954).abs() < 1e-15);
        assert!(!cert_im_bound(&spec(3, 3, c(0.0, 1.0))).unwrap().is_free());
        assert_eq!(im_bound(Order::Infinite, Order::Infinite), 2.0);
        assert!((im_bound(Order::Finite(10_000), Order::Finite(10_000)) - 2.0).abs() < 1e-6);
    }

    #[test]
    fn combined_examples() {
        let centre = spec(3, 3, c(1.5, 0.0));
        assert!(!cert_combined(&centre).is_free());
        let right = cert_combined(&spec(3, 3, c(4.1, 0.0)));
        assert_eq!(right.witness, Some(Witness::DisksElliptic));
        for p in [3, 4, 7] {
            let s = p as f64;
            let _ = s;
            let mid = 2.0 * Order::Finite(p).sin_pi().powi(2);
            assert!(!cert_combined(&spec(p, p, c(mid, 0.0))).is_free());
        }
    }

    #[test]
    fn lambda_ray_at_imaginary_tangency() {
        for (p, q) in [(3u32, 3u32), (4, 4), (5, 7), (4, 9)] {
            let (po, qo) = (Order::Finite(p), Order::Finite(q));
            let s = po.sin_pi() * qo.sin_pi();
            let sv = 1.0 / s + (1.0 / (s * s) - 1.0).sqrt();
            let params = LambdaParams::new(po, qo, c(0.0, sv)).unwrap();
            let ray = cert_lambda_ray(&params, 0.0).unwrap();
            let expect = c(2.0 * s, -im_bound(po, qo));
            assert!((ray.rho - expect).norm() < 1e-10, "({p},{q}): {}", ray.rho);
            // the certified line is horizontal
            assert!(ray.direction.im.abs() < 1e-10 * ray.direction.norm());
        }
    }

    #[test]
    fn envelope_examples() {
        for p in [3u32, 4] {
            let o = Order::Finite(p);
            let centre = c(2.0 * o.sin_pi() * o.sin_pi(), 0.0);
            let h = im_bound(o, o);
            let samples = envelope_samples(o, o, 64).unwrap();
            assert_eq!(samples.len(), 64);
            for smp in &samples {
                let u = smp.direction / smp.direction.norm();
                let dist = ((centre - smp.rho) * u.conj()).im.abs();
                assert!(dist >= h - 1e-9, "line meets D(2s, h): {dist}");
                let params = LambdaParams::new(o, o, smp.lambda).unwrap();
                assert!(lambda_feasible(&params).slack.abs() < 1e-9);
                // the sampled point is one of the two ρ attached to λ
                let (r1, r2) = crate::mobius::rho_from_lambda(&params);
                assert!((smp.rho - r1).norm().min((smp.rho - r2).norm()) < 1e-9);
            }
        }
        let p3 = Order::Finite(3);
        for smp in envelope_samples(p3, p3, 16).unwrap() {
            if smp.lambda.im.abs() < 1e-12 {
                assert!(smp.nu.im.abs() < 1e-12);
            }
            if smp.lambda.re.abs() < 1e-12 {
                assert!(smp.nu.re.abs() < 1e-12);
            }
        }
        assert!(envelope_samples(p3, p3, 0).is_err());
    }
}
