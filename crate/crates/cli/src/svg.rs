//! Fixed-scale SVG figures: one unit is 60 px and the imaginary axis points up.

use std::fmt::Write as _;

use riley::certificates::exclusion_disks;
use riley::mobius::Disk;
use riley::region::{boundary_cusps, build_omega, rho_star, x_pq, OrientedLine};
use riley::{Order, C64};

use crate::error::CliResult;

pub const SCALE: f64 = 60.0;
pub const REGION_FILL: &str = "#cccccc";
pub const DISK_FILL: &str = "#d33";
pub const DISK_OPACITY: f64 = 0.4;

/// Plot frame in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Frame {
    pub const REGION: Frame = Frame {
        re_min: -5.0,
        re_max: 5.0,
        im_min: -4.5,
        im_max: 4.5,
    };

    pub fn px(&self, z: C64) -> (f64, f64) {
        ((z.re - self.re_min) * SCALE, (self.im_max - z.im) * SCALE)
    }

    pub fn width(&self) -> f64 {
        (self.re_max - self.re_min) * SCALE
    }

    pub fn height(&self) -> f64 {
        (self.im_max - self.im_min) * SCALE
    }

    fn corners(&self) -> Vec<C64> {
        vec![
            C64::new(self.re_min, self.im_min),
            C64::new(self.re_max, self.im_min),
            C64::new(self.re_max, self.im_max),
            C64::new(self.re_min, self.im_max),
        ]
    }

    /// The part of `line` inside the frame, if any.
    pub fn clip_line(&self, line: &OrientedLine) -> Option<(C64, C64)> {
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        let d = line.dir;
        let p = line.point;
        for (pc, dc, min, max) in [
            (p.re, d.re, self.re_min, self.re_max),
            (p.im, d.im, self.im_min, self.im_max),
        ] {
            if dc.abs() < 1e-15 {
                if pc < min || pc > max {
                    return None;
                }
                continue;
            }
            let (a, b) = ((min - pc) / dc, (max - pc) / dc);
            lo = lo.max(a.min(b));
            hi = hi.min(a.max(b));
        }
        (lo < hi).then(|| (p + d * lo, p + d * hi))
    }
}

/// Formats a pixel coordinate with three decimals and no negative zero.
pub fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Sutherland–Hodgman clip of a convex polygon by the Ω side of `line`.
fn clip_polygon(poly: &[C64], line: &OrientedLine) -> Vec<C64> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for (k, &a) in poly.iter().enumerate() {
        let b = poly[(k + 1) % poly.len()];
        let (da, db) = (line.signed_distance(a), line.signed_distance(b));
        if da >= 0.0 {
            out.push(a);
        }
        if (da >= 0.0) != (db >= 0.0) {
            out.push(a + (b - a) * (da / (da - db)));
        }
    }
    out
}

/// Vertices of the intersection of the frame with every half-plane.
pub fn omega_polygon(lines: &[OrientedLine], frame: &Frame) -> Vec<C64> {
    lines
        .iter()
        .fold(frame.corners(), |poly, l| clip_polygon(&poly, l))
}

fn header(out: &mut String, frame: &Frame) {
    let (w, h) = (num(frame.width()), num(frame.height()));
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(out, "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"#ffffff\"/>");
}

fn disk(out: &mut String, frame: &Frame, d: &Disk) {
    let (x, y) = frame.px(d.center);
    let _ = writeln!(
        out,
        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{DISK_FILL}\" fill-opacity=\"{DISK_OPACITY}\" stroke=\"{DISK_FILL}\"/>",
        num(x),
        num(y),
        num(d.radius * SCALE)
    );
}

fn marker(out: &mut String, frame: &Frame, z: C64, fill: &str) {
    let (x, y) = frame.px(z);
    let _ = writeln!(
        out,
        "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{fill}\"/>",
        num(x),
        num(y)
    );
}

fn polyline(out: &mut String, frame: &Frame, pts: &[C64], stroke: &str) {
    let coords: Vec<String> = pts
        .iter()
        .map(|&z| {
            let (x, y) = frame.px(z);
            format!("{},{}", num(x), num(y))
        })
        .collect();
    let _ = writeln!(
        out,
        "<polyline points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1.5\"/>",
        coords.join(" ")
    );
}

/// `Ω` shaded, its boundary lines, the four exclusion disks of `(p, q)` in the
/// given order, the cusps (black), `ρ*` (blue) and `x_{p,q}` (green).
pub fn region_svg(p: Order, q: Order) -> CliResult<String> {
    let frame = Frame::REGION;
    let omega = build_omega(p, q)?;
    let mut out = String::new();
    header(&mut out, &frame);

    let poly = omega_polygon(omega.lines(), &frame);
    let pts: Vec<String> = poly
        .iter()
        .map(|&z| {
            let (x, y) = frame.px(z);
            format!("{},{}", num(x), num(y))
        })
        .collect();
    let _ = writeln!(
        out,
        "<polygon points=\"{}\" fill=\"{REGION_FILL}\" stroke=\"none\"/>",
        pts.join(" ")
    );
    for d in exclusion_disks(p, q) {
        disk(&mut out, &frame, &d);
    }
    for l in omega.lines() {
        if let Some((a, b)) = frame.clip_line(l) {
            let ((x1, y1), (x2, y2)) = (frame.px(a), frame.px(b));
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333333\" stroke-width=\"1\"/>",
                num(x1),
                num(y1),
                num(x2),
                num(y2)
            );
        }
    }
    for z in boundary_cusps(p, q)? {
        marker(&mut out, &frame, z, "#000000");
    }
    marker(&mut out, &frame, rho_star(p, q)?, "#0066cc");
    marker(&mut out, &frame, C64::new(x_pq(p, q)?, 0.0), "#009e73");
    out.push_str("</svg>\n");
    Ok(out)
}

/// The four disks overlaid with sampled `λ`-boundary curves in the `ρ` plane.
pub fn compare_svg(p: Order, q: Order, curves: &[Vec<C64>]) -> String {
    let frame = Frame {
        re_min: -7.0,
        re_max: 9.0,
        im_min: -6.0,
        im_max: 6.0,
    };
    let mut out = String::new();
    header(&mut out, &frame);
    for d in exclusion_disks(p, q) {
        disk(&mut out, &frame, &d);
    }
    for c in curves {
        polyline(&mut out, &frame, c, "#0066cc");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon_svg_has_six_lines() {
        let svg = region_svg(Order::Finite(3), Order::Finite(3)).unwrap();
        assert_eq!(svg.matches("<line ").count(), 6);
        assert!(svg.contains(REGION_FILL));
        assert_eq!(svg.matches("fill-opacity=\"0.4\"").count(), 4);
    }

    #[test]
    fn pixel_mapping() {
        let f = Frame::REGION;
        assert_eq!(f.px(C64::new(0.0, 0.0)), (300.0, 270.0));
        assert_eq!(f.px(C64::new(1.0, 1.0)), (360.0, 210.0));
    }

    #[test]
    fn polygon_lies_inside_omega() {
        let w = build_omega(Order::Finite(4), Order::Finite(4)).unwrap();
        let poly = omega_polygon(w.lines(), &Frame::REGION);
        assert_eq!(poly.len(), 6);
        for z in poly {
            assert!(w.margin(z) > -1e-9);
        }
    }
}
