//! Farey polynomials of low slope and the cusp groups where `P_{r/s}(ρ) = −2`.

use std::fmt;

use nalgebra::Matrix3;

use crate::mobius::Order;
use crate::{Error, Result, C64};

/// The slopes with tabulated polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FareySlope {
    ZeroOne,
    OneOne,
    OneHalf,
    OneThird,
}

impl FareySlope {
    pub const ALL: [FareySlope; 4] = [
        FareySlope::ZeroOne,
        FareySlope::OneOne,
        FareySlope::OneHalf,
        FareySlope::OneThird,
    ];

    pub fn new(numerator: u32, denominator: u32) -> Result<Self> {
        match (numerator, denominator) {
            (0, 1) => Ok(FareySlope::ZeroOne),
            (1, 1) => Ok(FareySlope::OneOne),
            (1, 2) => Ok(FareySlope::OneHalf),
            (1, 3) => Ok(FareySlope::OneThird),
            _ => Err(Error::unsupported(format!(
                "Farey slope {numerator}/{denominator} is not tabulated"
            ))),
        }
    }

    pub fn ratio(self) -> (u32, u32) {
        match self {
            FareySlope::ZeroOne => (0, 1),
            FareySlope::OneOne => (1, 1),
            FareySlope::OneHalf => (1, 2),
            FareySlope::OneThird => (1, 3),
        }
    }
}

impl fmt::Display for FareySlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.ratio();
        write!(f, "{n}/{d}")
    }
}

/// Polynomial with complex coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<C64>,
}

impl ComplexPolynomial {
    pub fn new(mut coeffs: Vec<C64>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| *c == C64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::invalid("the zero polynomial has no leading coefficient"));
        }
        Ok(ComplexPolynomial { coeffs })
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> C64 {
        *self.coeffs.last().unwrap()
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Option<ComplexPolynomial> {
        if self.degree() == 0 {
            return None;
        }
        let d = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        ComplexPolynomial::new(d).ok()
    }

    /// `self + k`.
    pub fn shifted(&self, k: C64) -> ComplexPolynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += k;
        ComplexPolynomial { coeffs }
    }

    /// All roots with multiplicity. Degrees above three are not supported.
    pub fn roots(&self) -> Result<Vec<C64>> {
        let c = &self.coeffs;
        match self.degree() {
            0 => Ok(Vec::new()),
            1 => Ok(vec![-c[0] / c[1]]),
            2 => {
                let (a, b, k) = (c[2], c[1], c[0]);
                let disc = (b * b - 4.0 * a * k).sqrt();
                // pick the sign that avoids cancellation, then use Vieta for the other root
                let q = if (b.conj() * disc).re >= 0.0 {
                    -(b + disc) / 2.0
                } else {
                    -(b - disc) / 2.0
                };
                if q == C64::new(0.0, 0.0) {
                    return Ok(vec![q, q]);
                }
                Ok(vec![q / a, k / q])
            }
            3 => {
                let lead = c[3];
                let (a0, a1, a2) = (c[0] / lead, c[1] / lead, c[2] / lead);
                let zero = C64::new(0.0, 0.0);
                let one = C64::new(1.0, 0.0);
                let companion = Matrix3::new(zero, zero, -a0, one, zero, -a1, zero, one, -a2);
                let eig = companion
                    .schur()
                    .eigenvalues()
                    .ok_or_else(|| Error::invalid("companion matrix did not triangularise"))?;
                let dp = self.derivative().expect("cubic has a derivative");
                Ok(eig.iter().map(|&z| self.polish(&dp, z)).collect())
            }
            d => Err(Error::unsupported(format!("root finding for degree {d}"))),
        }
    }

    fn polish(&self, dp: &ComplexPolynomial, mut z: C64) -> C64 {
        for _ in 0..4 {
            let d = dp.eval(z);
            if d.norm() == 0.0 {
                break;
            }
            let step = self.eval(z) / d;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            let next = z - step;
            if self.eval(next).norm() >= self.eval(z).norm() {
                break;
            }
            z = next;
        }
        z
    }
}

/// `P_{r/s}(z)` for fixed orders, with `α = e^{iπ/p}`, `β = e^{iπ/q}`.
pub fn farey_poly(slope: FareySlope, p: Order, q: Order) -> Result<ComplexPolynomial> {
    if !(p.at_least(2) && q.at_least(2)) {
        return Err(Error::invalid("orders must be at least 2"));
    }
    let a = p.rotation();
    let b = q.rotation();
    let one = C64::new(1.0, 0.0);
    let ab = a * b;
    let a_b = a / b;
    let coeffs = match slope {
        FareySlope::ZeroOne => vec![a_b + a_b.inv(), -one],
        FareySlope::OneOne => vec![ab + ab.inv(), one],
        FareySlope::OneHalf => vec![2.0 * one, ab - a_b - a_b.inv() + ab.inv(), one],
        FareySlope::OneThird => {
            let (a2, b2) = (a * a, b * b);
            vec![
                ab.inv() + ab,
                3.0 - a2.inv() - a2 - b2.inv() - b2 + a2 / b2 + b2 / a2,
                ab - 2.0 * a_b - 2.0 * a_b.inv() + ab.inv(),
                one,
            ]
        }
    };
    ComplexPolynomial::new(coeffs)
}

/// Roots of `P_{r/s}(z) = −2`, unordered.
pub fn solve_cusp(slope: FareySlope, p: Order, q: Order) -> Result<Vec<C64>> {
    farey_poly(slope, p, q)?.shifted(C64::new(2.0, 0.0)).roots()
}

/// `|P_{r/s}(ρ) + 2|`.
pub fn cusp_residue(slope: FareySlope, p: Order, q: Order, rho: C64) -> Result<f64> {
    Ok((farey_poly(slope, p, q)?.eval(rho) + 2.0).norm())
}
