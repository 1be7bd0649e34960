//! The polygonal region `Ω_{p,q}`: every `ρ` outside it gives a discrete
//! group isomorphic to `ℤ_p * ℤ_q`.

use serde::{Deserialize, Serialize};

use crate::certificates::{exclusion_disks, im_bound};
use crate::mobius::Order;
use crate::{tol, Error, Result, C64};

/// `√2 · √(7 − cos(2π/p))`.
pub fn xi(p: Order) -> Result<f64> {
    if !p.at_least(3) {
        return Err(Error::unsupported("ξ needs p ≥ 3"));
    }
    Ok(2f64.sqrt() * (7.0 - (2.0 * p.angle()).cos()).sqrt())
}

fn require_pair(p: Order, q: Order) -> Result<(f64, f64)> {
    let (Some(a), Some(b)) = (p.value(), q.value()) else {
        return Err(Error::unsupported("Ω needs finite orders"));
    };
    if a < 3 || b < 3 {
        return Err(Error::unsupported("Ω needs p, q ≥ 3"));
    }
    Ok((p.angle(), q.angle()))
}

/// The corner `ρ*_{p,q}` where the line family through the right-hand disks
/// touches the union of the four exclusion disks.
pub fn rho_star(p: Order, q: Order) -> Result<C64> {
    let (a, b) = require_pair(p, q)?;
    let x = xi(p)?;
    Ok(C64::new(
        a.cos() * b.cos() + 0.5 * b.sin() * (4.0 * a.sin() + x),
        0.5 * x * b.cos() + a.cos() * b.sin(),
    ))
}

/// Real-axis intercept of the line through `ρ*_{p,q}` in direction `iρ*_{p,q}`.
pub fn x_pq(p: Order, q: Order) -> Result<f64> {
    let (a, b) = require_pair(p, q)?;
    let x = xi(p)?;
    let num = (2.0 * a - 2.0 * b).cos() - (2.0 * a).cos() - (2.0 * b).cos()
        + x * (a.sin() - (a - 2.0 * b).sin())
        + 5.0;
    let den = a.cos() * b.cos() + 0.5 * b.sin() * (4.0 * a.sin() + x);
    Ok(num / den)
}

/// A line `{point + t·dir}` together with the side that belongs to Ω.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientedLine {
    pub point: C64,
    /// Unit direction.
    pub dir: C64,
    /// `+1` when Ω lies to the left of `dir`, `−1` when to the right.
    pub side: i8,
}

impl OrientedLine {
    /// Oriented so that `inside` lies in the Ω half-plane.
    pub fn through(point: C64, dir: C64, inside: C64) -> Result<Self> {
        let n = dir.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::invalid("line direction must be non-zero"));
        }
        let dir = dir / n;
        let cross = (dir.conj() * (inside - point)).im;
        if cross == 0.0 {
            return Err(Error::invalid("reference point lies on the line"));
        }
        Ok(OrientedLine {
            point,
            dir,
            side: if cross > 0.0 { 1 } else { -1 },
        })
    }

    /// Signed distance, positive on the Ω side.
    pub fn signed_distance(&self, z: C64) -> f64 {
        self.side as f64 * (self.dir.conj() * (z - self.point)).im
    }

    pub fn distance(&self, z: C64) -> f64 {
        self.signed_distance(z).abs()
    }

    pub fn conj(&self, inside: C64) -> Self {
        Self::through(self.point.conj(), self.dir.conj(), inside).expect("conjugate of a valid line")
    }

    /// Mirror image in the vertical line `Re z = centre`.
    pub fn reflect(&self, centre: f64, inside: C64) -> Self {
        Self::through(2.0 * centre - self.point.conj(), -self.dir.conj(), inside)
            .expect("reflection of a valid line")
    }

    pub fn coincides(&self, other: &OrientedLine, eps: f64) -> bool {
        (self.dir.conj() * other.dir).im.abs() <= eps && self.distance(other.point) <= eps
    }
}

/// `Ω_{p,q}`, stored with `p ≤ q`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaRegion {
    p: Order,
    q: Order,
    lines: Vec<OrientedLine>,
    pub xi_p: f64,
    pub xi_q: f64,
    pub rho_star_pq: C64,
    pub rho_star_qp: C64,
    pub x_pq: f64,
    pub x_qp: f64,
}

impl OmegaRegion {
    pub fn p(&self) -> Order {
        self.p
    }

    pub fn q(&self) -> Order {
        self.q
    }

    pub fn lines(&self) -> &[OrientedLine] {
        &self.lines
    }

    /// The reflection centre `2 sin(π/p) sin(π/q)`.
    pub fn centre(&self) -> f64 {
        2.0 * self.p.sin_pi() * self.q.sin_pi()
    }

    /// Smallest signed distance to the lines; positive exactly inside.
    pub fn margin(&self, z: C64) -> f64 {
        self.lines
            .iter()
            .map(|l| l.signed_distance(z))
            .fold(f64::INFINITY, f64::min)
    }

    /// Distance from `z` to the nearest boundary line.
    pub fn line_distance(&self, z: C64) -> f64 {
        self.lines
            .iter()
            .map(|l| l.distance(z))
            .fold(f64::INFINITY, f64::min)
    }
}

fn order_pair(p: Order, q: Order) -> (Order, Order) {
    match (p.value(), q.value()) {
        (Some(a), Some(b)) if a > b => (q, p),
        (None, Some(_)) => (q, p),
        _ => (p, q),
    }
}

/// Builds `Ω_{p,q}`; the orders are swapped into `p ≤ q` first.
///
/// Every line is oriented to keep `2 sin(π/p) sin(π/q)` inside. For `p = q`
/// the two line families coincide and the vertical pair only touches the
/// region at its real vertices, leaving the six sides of a hexagon.
pub fn build_omega(p: Order, q: Order) -> Result<OmegaRegion> {
    let (p, q) = order_pair(p, q);
    let (a, b) = require_pair(p, q)?;
    let centre = 2.0 * a.sin() * b.sin();
    let inside = C64::new(centre, 0.0);
    let i = C64::new(0.0, 1.0);

    let mut raw = Vec::with_capacity(12);
    let x0 = 2.0 + 2.0 * (a - b).cos();
    let vertical = OrientedLine::through(C64::new(x0, 0.0), i, inside)?;
    let h = im_bound(p, q);
    let top = OrientedLine::through(C64::new(centre, h), C64::new(1.0, 0.0), inside)?;

    let star_pq = rho_star(p, q)?;
    let star_qp = rho_star(q, p)?;
    let mut slanted = Vec::new();
    for star in [star_pq, star_qp] {
        let line = OrientedLine::through(star, i * star, inside)?;
        let c = line.conj(inside);
        slanted.extend([line, c, line.reflect(centre, inside), c.reflect(centre, inside)]);
    }

    raw.push(vertical);
    raw.push(vertical.reflect(centre, inside));
    raw.push(top);
    raw.push(top.conj(inside));
    raw.extend(slanted);

    let mut lines: Vec<OrientedLine> = Vec::with_capacity(12);
    for l in raw {
        if !lines.iter().any(|m| m.coincides(&l, tol::LINE_DEDUP)) {
            lines.push(l);
        }
    }
    if p == q {
        lines.drain(0..2);
    }

    Ok(OmegaRegion {
        p,
        q,
        lines,
        xi_p: xi(p)?,
        xi_q: xi(q)?,
        rho_star_pq: star_pq,
        rho_star_qp: star_qp,
        x_pq: x_pq(p, q)?,
        x_qp: x_pq(q, p)?,
    })
}

/// Strict membership in the open region; boundary points are outside.
///
/// Points within [`tol::STRICT`] of a boundary line count as on it.
pub fn omega_contains(region: &OmegaRegion, rho: C64) -> bool {
    region.margin(rho) > tol::STRICT
}

/// The cusp groups on `∂Ω`: `ρ_{0/1}`, `ρ_{1/1}`, then the `1/2` pair (upper first).
pub fn boundary_cusps(p: Order, q: Order) -> Result<[C64; 4]> {
    let (p, q) = order_pair(p, q);
    let (a, b) = require_pair(p, q)?;
    let s = a.sin() * b.sin();
    let h = im_bound(p, q);
    Ok([
        C64::new(2.0 + 2.0 * (a - b).cos(), 0.0),
        C64::new(-2.0 - 2.0 * (a + b).cos(), 0.0),
        C64::new(2.0 * s, h),
        C64::new(2.0 * s, -h),
    ])
}

/// Indices of the exclusion circles through `ρ*_{p,q}` (within `eps`).
pub fn rho_star_circles(p: Order, q: Order, eps: f64) -> Result<Vec<usize>> {
    let star = rho_star(p, q)?;
    Ok(exclusion_disks(p, q)
        .iter()
        .enumerate()
        .filter(|(_, d)| d.signed_distance(star).abs() <= eps)
        .map(|(k, _)| k)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(n: u32) -> Order {
        Order::Finite(n)
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn xi_values() {
        assert!((xi(o(3)).unwrap() - 15f64.sqrt()).abs() < 1e-14);
        assert!((xi(o(4)).unwrap() - 14f64.sqrt()).abs() < 1e-14);
        assert!((xi(Order::Infinite).unwrap() - 2.0 * 3f64.sqrt()).abs() < 1e-14);
        assert!(xi(o(2)).is_err());
    }

    #[test]
    fn rho_star_three_three() {
        let r = rho_star(o(3), o(3)).unwrap();
        assert!((r - c(3.427050983, 1.401258538)).norm() < 1e-8);
        assert!(((r - 2.0).norm() - 2.0).abs() < 1e-9);
        assert!(((r - c(1.5, 3f64.sqrt() / 2.0)).norm() - 2.0).abs() < 1e-9);
        assert_eq!(rho_star_circles(o(3), o(3), 1e-9).unwrap(), vec![1, 2]);
        assert!((rho_star(o(3), o(4)).unwrap() - rho_star(o(4), o(3)).unwrap()).norm() > 1e-3);
    }

    #[test]
    fn intercept_matches_closed_form() {
        for (p, q) in [(3, 3), (3, 7), (5, 9), (7, 3)] {
            let r = rho_star(o(p), o(q)).unwrap();
            let x = x_pq(o(p), o(q)).unwrap();
            assert!((x - r.norm_sqr() / r.re).abs() < 1e-9, "({p},{q})");
        }
        assert!((x_pq(o(5), o(9)).unwrap() - 4.015).abs() < 1e-3);
    }

    #[test]
    fn hexagon_four_four() {
        let w = build_omega(o(4), o(4)).unwrap();
        assert_eq!(w.lines().len(), 6);
        let real_vertices: Vec<f64> = [c(4.0, 0.0), c(-2.0, 0.0)]
            .iter()
            .map(|&z| w.line_distance(z))
            .collect();
        assert!(real_vertices.iter().all(|&d| d < 1e-12));
        assert!(!omega_contains(&w, c(4.0, 0.0)));
        assert!(omega_contains(&w, c(3.99, 0.0)));
        assert!(!omega_contains(&w, c(-2.0, 0.0)));
        assert!(omega_contains(&w, c(-1.99, 0.0)));
    }

    #[test]
    fn membership_examples() {
        let w = build_omega(o(3), o(3)).unwrap();
        assert!(omega_contains(&w, c(1.5, 0.0)));
        assert!(!omega_contains(&w, c(10.0, 0.0)));
        assert!(!omega_contains(&w, c(4.0, 0.0)));
        assert!(!omega_contains(&w, c(1.5, 1.4)));
    }

    #[test]
    fn twelve_lines_closed_under_symmetries() {
        let w = build_omega(o(3), o(7)).unwrap();
        assert_eq!(w.lines().len(), 12);
        let inside = c(w.centre(), 0.0);
        for l in w.lines() {
            for image in [l.conj(inside), l.reflect(w.centre(), inside)] {
                assert!(w.lines().iter().any(|m| m.coincides(&image, 1e-12)));
            }
        }
        assert_eq!(build_omega(o(7), o(3)).unwrap(), w);
        assert!(build_omega(o(2), o(7)).is_err());
    }

    #[test]
    fn cusps_on_boundary() {
        for (p, q) in [(3, 3), (3, 4), (4, 4), (3, 7), (5, 9), (12, 12)] {
            let w = build_omega(o(p), o(q)).unwrap();
            let cusps = boundary_cusps(o(p), o(q)).unwrap();
            for z in cusps {
                assert!(w.line_distance(z) < 1e-9, "({p},{q}) {z}");
                assert!(!omega_contains(&w, z));
            }
            let s4 = 2.0 * w.centre();
            assert!((s4 - cusps[0] - cusps[1]).norm() < 1e-12);
        }
        let [_, _, up, _] = boundary_cusps(o(3), o(3)).unwrap();
        assert!((up - c(1.5, 1.3228756555322954)).norm() < 1e-12);
    }
}
