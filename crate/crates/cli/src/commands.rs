//! Subcommand bodies, kept free of argument parsing and I/O.

use std::f64::consts::PI;

use serde::Serialize;
use serde_json::{json, Value};

use riley::burau::{annulus_report, faithful_certificate, mu_coordinates};
use riley::certificates::{
    cert_combined, exclusion_disks, lambda_region_boundary, lambda_route,
};
use riley::farey::{cusp_residue, solve_cusp, FareySlope};
use riley::mobius::{gamma_of, lambda_from_rho, rho_from_lambda, symmetry_image};
use riley::parse::Window;
use riley::region::boundary_cusps;
use riley::schema::RegionRecord;
use riley::{GroupSpec, LambdaParams, Order, C64};

use crate::error::{CliError, CliResult};
use crate::svg;

pub fn cx(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn order_json(o: Order) -> Value {
    match o.value() {
        Some(n) => json!(n),
        None => json!("inf"),
    }
}

/// One certification record for `⟨A, B_ρ⟩`.
pub fn certify_record(spec: &GroupSpec) -> Value {
    let cert = cert_combined(spec);
    let lambdas = lambda_from_rho(spec)
        .ok()
        .map(|(a, b)| vec![cx(a), cx(b)]);
    json!({
        "input": {"p": order_json(spec.p()), "q": order_json(spec.q()), "rho": cx(spec.rho())},
        "verdict": cert.verdict,
        "witness": cert.witness,
        "slack": cert.slack,
        "gamma": cx(gamma_of(spec)),
        "symmetry_image": cx(symmetry_image(spec)),
        "lambda_branches": lambdas,
    })
}

pub fn burau_record(mu: C64) -> CliResult<Value> {
    let pt = mu_coordinates(mu)?;
    let cert = faithful_certificate(mu)?;
    Ok(json!({
        "input": {"mu": cx(mu)},
        "verdict": cert.verdict,
        "slack": cert.slack,
        "z": cx(pt.z),
        "lambda_branches": [cx(pt.lambda), cx(pt.lambda_other)],
        "rho": cx(pt.rho),
        "rho_partner": cx(pt.rho_partner()),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionFormat {
    Svg,
    Json,
}

pub fn region_output(p: Order, q: Order, format: RegionFormat) -> CliResult<String> {
    match format {
        RegionFormat::Svg => svg::region_svg(p, q),
        RegionFormat::Json => Ok(RegionRecord::build(p, q)?.to_json() + "\n"),
    }
}

pub fn cusps_record(p: Order, q: Order) -> CliResult<Value> {
    let mut slopes = Vec::new();
    for slope in FareySlope::ALL {
        let roots = solve_cusp(slope, p, q)?;
        let residues: Vec<f64> = roots
            .iter()
            .map(|&r| cusp_residue(slope, p, q, r))
            .collect::<Result<_, _>>()?;
        slopes.push(json!({
            "slope": slope.to_string(),
            "roots": roots.iter().map(|&r| cx(r)).collect::<Vec<_>>(),
            "residues": residues,
        }));
    }
    let boundary = boundary_cusps(p, q)
        .ok()
        .map(|b| b.iter().map(|&z| cx(z)).collect::<Vec<_>>());
    Ok(json!({
        "p": order_json(p),
        "q": order_json(q),
        "farey": slopes,
        "boundary_cusps": boundary,
    }))
}

/// Annulus comparison at one `μ`.
pub fn annulus_record(mu: C64) -> CliResult<Value> {
    Ok(serde_json::to_value(annulus_report(mu)?).expect("report serialises"))
}

#[derive(Debug, Clone, Serialize)]
pub struct AnnulusScan {
    pub window: Window,
    pub resolution: usize,
    pub points: usize,
    pub faithful: usize,
    /// Uncertified points outside the conjectured annulus.
    pub violations: usize,
    pub uncertified_outside_proved: usize,
}

pub fn annulus_scan(window: Window, resolution: usize) -> CliResult<AnnulusScan> {
    if resolution < 2 {
        return Err(CliError::Unsupported("resolution must be at least 2".into()));
    }
    let mut s = AnnulusScan {
        window,
        resolution,
        points: 0,
        faithful: 0,
        violations: 0,
        uncertified_outside_proved: 0,
    };
    for r in 0..resolution {
        for c in 0..resolution {
            let mu = window.pixel_centre(c, r, resolution);
            let Ok(rep) = annulus_report(mu) else {
                continue;
            };
            s.points += 1;
            if rep.certificate.is_faithful() {
                s.faithful += 1;
            } else {
                if !rep.in_conjectured_annulus {
                    s.violations += 1;
                }
                if !rep.in_proved_annulus {
                    s.uncertified_outside_proved += 1;
                }
            }
        }
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Lambda,
    Disks,
    Tie,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct AngleComparison {
    pub angle: f64,
    /// Distance from `2 sin sin` to the far edge of the disk union along the ray.
    pub disk_extent: f64,
    /// Distance to the last point along the ray not certified by the `λ` region.
    pub lambda_extent: f64,
    pub winner: Winner,
}

#[derive(Debug, Clone, Serialize)]
pub struct LambdaComparison {
    pub p: u32,
    pub q: u32,
    pub angles: Vec<AngleComparison>,
    pub lambda_wins: usize,
    pub disk_wins: usize,
    pub ties: usize,
}

const RAY_LENGTH: f64 = 12.0;
const RAY_STEP: f64 = 0.02;
const TIE: f64 = 1e-6;

fn disk_extent(p: Order, q: Order, c: C64, u: C64) -> f64 {
    exclusion_disks(p, q)
        .iter()
        .filter_map(|d| {
            let w = c - d.center;
            let b = (u.conj() * w).re;
            let disc = b * b - (w.norm_sqr() - d.radius * d.radius);
            (disc >= 0.0).then(|| -b + disc.sqrt())
        })
        .fold(0.0, f64::max)
}

fn lambda_extent(spec: &GroupSpec, c: C64, u: C64) -> f64 {
    let certified = |t: f64| lambda_route(&spec.with_rho(c + u * t)).is_some();
    let steps = (RAY_LENGTH / RAY_STEP) as usize;
    let Some(k) = (0..=steps).rev().find(|&k| !certified(k as f64 * RAY_STEP)) else {
        return 0.0;
    };
    let (mut lo, mut hi) = (k as f64 * RAY_STEP, (k + 1) as f64 * RAY_STEP);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if certified(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

/// Compares, ray by ray from `2 sin(π/p) sin(π/q)`, how far the uncertified
/// sets of the disk test and of the `λ` region reach.
pub fn compare_lambda(p: Order, q: Order, n_angles: usize) -> CliResult<LambdaComparison> {
    let (Some(pv), Some(qv)) = (p.value(), q.value()) else {
        return Err(CliError::Unsupported("comparison needs finite orders".into()));
    };
    if pv < 3 || qv < 3 {
        return Err(CliError::Unsupported("comparison needs p, q ≥ 3".into()));
    }
    if n_angles == 0 {
        return Err(CliError::Unsupported("need at least one angle".into()));
    }
    let spec = GroupSpec::new(p, q, C64::new(1.0, 0.0))?;
    let c = C64::new(2.0 * spec.sin_product(), 0.0);
    let angles: Vec<AngleComparison> = (0..n_angles)
        .map(|k| {
            let angle = 2.0 * PI * k as f64 / n_angles as f64;
            let u = C64::from_polar(1.0, angle);
            let d = disk_extent(p, q, c, u);
            let l = lambda_extent(&spec, c, u);
            let winner = if l < d - TIE {
                Winner::Lambda
            } else if d < l - TIE {
                Winner::Disks
            } else {
                Winner::Tie
            };
            AngleComparison {
                angle,
                disk_extent: d,
                lambda_extent: l,
                winner,
            }
        })
        .collect();
    let count = |w: Winner| angles.iter().filter(|a| a.winner == w).count();
    Ok(LambdaComparison {
        p: pv,
        q: qv,
        lambda_wins: count(Winner::Lambda),
        disk_wins: count(Winner::Disks),
        ties: count(Winner::Tie),
        angles,
    })
}

/// Both `ρ` curves traced by the boundary of the `λ` region.
pub fn lambda_curves(p: Order, q: Order, samples: usize) -> CliResult<Vec<Vec<C64>>> {
    let mut plus = Vec::with_capacity(samples + 1);
    let mut minus = Vec::with_capacity(samples + 1);
    for k in 0..=samples {
        let theta = 2.0 * PI * k as f64 / samples as f64;
        let lambda = lambda_region_boundary(p, q, theta)?;
        let (a, b) = rho_from_lambda(&LambdaParams::new(p, q, lambda)?);
        minus.push(a);
        plus.push(b);
    }
    Ok(vec![plus, minus])
}

pub fn compare_svg(p: Order, q: Order) -> CliResult<String> {
    Ok(svg::compare_svg(p, q, &lambda_curves(p, q, 720)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certify_examples() {
        let spec = GroupSpec::finite(4, 4, C64::new(10.0, 0.0)).unwrap();
        let v = certify_record(&spec);
        assert_eq!(v["verdict"], "FreeDiscrete");
        assert_eq!(v["witness"], "DisksElliptic");
        let centre = GroupSpec::finite(3, 3, C64::new(1.5, 0.0)).unwrap();
        assert_eq!(certify_record(&centre)["verdict"], "NoCertificate");
        assert_eq!(burau_record(C64::new(9.0, 0.0)).unwrap()["verdict"], "Faithful");
    }

    #[test]
    fn cusps_json() {
        let v = cusps_record(Order::Finite(3), Order::Finite(3)).unwrap();
        assert_eq!(v["farey"].as_array().unwrap().len(), 4);
        for s in v["farey"].as_array().unwrap() {
            for r in s["residues"].as_array().unwrap() {
                assert!(r.as_f64().unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn region_json_round_trips() {
        let text = region_output(Order::Finite(3), Order::Finite(7), RegionFormat::Json).unwrap();
        let rec = RegionRecord::from_json(&text).unwrap();
        assert_eq!(rec.omega.lines.len(), 12);
    }

    #[test]
    fn disk_extent_along_negative_axis() {
        let (p, q) = (Order::Finite(3), Order::Finite(3));
        let d = disk_extent(p, q, C64::new(1.5, 0.0), C64::new(-1.0, 0.0));
        assert!((d - 2.5).abs() < 1e-12);
    }
}
