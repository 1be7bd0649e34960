//! The reduced Burau representation of `B₃` specialised at `t = μ`, and a
//! sufficient condition for the specialisation to be faithful.
//!
//! The image `G_μ` is conjugate to `⟨A, B_ρ⟩` with orders `(3, 2)` and
//! `ρ = i√μ + √3 − i/√μ`, so faithfulness reduces to the `λ` region test
//! `|λ| ≥ √3`.

use serde::{Deserialize, Serialize};

use crate::mobius::{LambdaParams, Mat2C, Order};
use crate::{tol, Error, Result, C64};

const I: C64 = C64::new(0.0, 1.0);

/// `(3 − 2√2, 3 + 2√2)`: outside this annulus faithfulness was already known.
pub const MGOV_PROVED: (f64, f64) = (0.171_572_875_253_809_9, 5.828_427_124_746_19);

/// `((3 − √5)/2, (3 + √5)/2)`: the conjectured annulus containing every non-faithful `μ`.
pub const MGOV_CONJECTURED: (f64, f64) = (0.381_966_011_250_105_1, 2.618_033_988_749_895);

fn require_nonzero(mu: C64) -> Result<()> {
    if mu.norm() == 0.0 || !mu.re.is_finite() || !mu.im.is_finite() {
        return Err(Error::invalid("μ must be finite and non-zero"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BurauGenerators {
    pub a: Mat2C,
    pub b: Mat2C,
}

impl BurauGenerators {
    /// `‖ABA − BAB‖` (max entry), which vanishes for every `μ`.
    pub fn braid_residue(&self) -> f64 {
        (self.a * self.b * self.a).max_abs_diff(&(self.b * self.a * self.b))
    }
}

/// `A = (−μ, 1; 0, 1)/√(−μ)` and `B = (1, 0; μ, −μ)/√(−μ)`.
pub fn burau_generators(mu: C64) -> Result<BurauGenerators> {
    require_nonzero(mu)?;
    let k = (-mu).sqrt().inv();
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    Ok(BurauGenerators {
        a: Mat2C::new(-mu, one, zero, one).scale(k),
        b: Mat2C::new(one, zero, mu, -mu).scale(k),
    })
}

/// The unnormalised images `(−t, 1; 0, 1)` and `(1, 0; t, −t)` at `t = μ`.
pub fn burau_matrices(mu: C64) -> (Mat2C, Mat2C) {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    (
        Mat2C::new(-mu, one, zero, one),
        Mat2C::new(one, zero, mu, -mu),
    )
}

/// The coordinates attached to `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BurauPoint {
    pub mu: C64,
    /// Principal `√μ`.
    pub sqrt_mu: C64,
    /// `√μ − 1/√μ`.
    pub z: C64,
    /// The branch of `(z ± √(z² + 3))/√3` with `|λ| ≥ 1`.
    pub lambda: C64,
    /// The other branch; `lambda · lambda_other = −1`.
    pub lambda_other: C64,
    /// `i√μ + √3 − i/√μ`.
    pub rho: C64,
}

impl BurauPoint {
    /// `max |z ± √(z² + 3)| = √3 |λ|`.
    pub fn branch_modulus(&self) -> f64 {
        3f64.sqrt() * self.lambda.norm()
    }

    /// `ρ` from the other square root of `μ`, equal to `2√3 − ρ`.
    pub fn rho_partner(&self) -> C64 {
        rho_of_sqrt(-self.sqrt_mu)
    }

    /// The `λ` parameter with orders `(3, 2)` giving a group conjugate to `G_μ`.
    pub fn lambda_params(&self) -> Result<LambdaParams> {
        LambdaParams::new(Order::Finite(3), Order::Finite(2), I * self.lambda)
    }
}

fn rho_of_sqrt(r: C64) -> C64 {
    I * r + 3f64.sqrt() - I / r
}

pub fn mu_coordinates(mu: C64) -> Result<BurauPoint> {
    require_nonzero(mu)?;
    let sqrt_mu = mu.sqrt();
    let z = sqrt_mu - sqrt_mu.inv();
    let w = (z * z + 3.0).sqrt();
    let s3 = 3f64.sqrt();
    let (mut l1, mut l2) = ((z + w) / s3, (z - w) / s3);
    if l2.norm() > l1.norm() {
        std::mem::swap(&mut l1, &mut l2);
    }
    Ok(BurauPoint {
        mu,
        sqrt_mu,
        z,
        lambda: l1,
        lambda_other: l2,
        rho: rho_of_sqrt(sqrt_mu),
    })
}

/// `i√μ + √3 − i/√μ` with the principal root.
pub fn rho_of_mu(mu: C64) -> Result<C64> {
    require_nonzero(mu)?;
    Ok(rho_of_sqrt(mu.sqrt()))
}

/// Both values of `ρ(μ)`, principal root first.
pub fn rho_of_mu_both(mu: C64) -> Result<(C64, C64)> {
    require_nonzero(mu)?;
    let r = mu.sqrt();
    Ok((rho_of_sqrt(r), rho_of_sqrt(-r)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BurauVerdict {
    Faithful,
    NoCertificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BurauCertificate {
    pub verdict: BurauVerdict,
    /// `max |z ± √(z² + 3)| − 3`.
    pub slack: f64,
}

impl BurauCertificate {
    pub fn is_faithful(&self) -> bool {
        self.verdict == BurauVerdict::Faithful
    }
}

/// Faithful when `max |z ± √(z² + 3)| ≥ 3` and `μ ≠ −1`.
pub fn faithful_certificate(mu: C64) -> Result<BurauCertificate> {
    let pt = mu_coordinates(mu)?;
    let slack = pt.branch_modulus() - 3.0;
    let excluded = (mu + 1.0).norm() <= tol::ALGEBRAIC;
    let verdict = if tol::non_negative(slack) && !excluded {
        BurauVerdict::Faithful
    } else {
        BurauVerdict::NoCertificate
    };
    Ok(BurauCertificate { verdict, slack })
}

/// Where `|μ|` sits relative to the known and conjectured annuli.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnulusReport {
    pub mu: C64,
    pub modulus: f64,
    /// Inside the closed annulus `3 − 2√2 ≤ |μ| ≤ 3 + 2√2`.
    pub in_proved_annulus: bool,
    /// Inside the closed annulus `(3 − √5)/2 ≤ |μ| ≤ (3 + √5)/2`.
    pub in_conjectured_annulus: bool,
    pub certificate: BurauCertificate,
}

impl AnnulusReport {
    /// Outside the conjectured annulus the certificate must fire.
    pub fn consistent(&self) -> bool {
        self.in_conjectured_annulus || self.certificate.is_faithful()
    }
}

pub fn annulus_report(mu: C64) -> Result<AnnulusReport> {
    let certificate = faithful_certificate(mu)?;
    let m = mu.norm();
    let within = |(lo, hi): (f64, f64)| m >= lo - tol::ALGEBRAIC && m <= hi + tol::ALGEBRAIC;
    Ok(AnnulusReport {
        mu,
        modulus: m,
        in_proved_annulus: within(MGOV_PROVED),
        in_conjectured_annulus: within(MGOV_CONJECTURED),
        certificate,
    })
}
