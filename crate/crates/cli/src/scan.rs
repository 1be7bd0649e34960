//! Raster scans of a rectangle in the `ρ` (or `μ`) plane.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use rayon::ThreadPoolBuilder;
use serde::Serialize;

use riley::burau::faithful_certificate;
use riley::certificates::{cert_combined, cert_disks_elliptic, lambda_route};
use riley::parse::Window;
use riley::region::{build_omega, omega_contains, OmegaRegion};
use riley::{GroupSpec, Order, C64};

use crate::error::{CliError, CliResult};

/// Code written for `ρ` outside `Ω` in [`ScanMode::Omega`].
pub const OMEGA_EXTERIOR: u8 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    Omega,
    Disks,
    Lambda,
    Combined,
    Burau,
}

impl FromStr for ScanMode {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "omega" => Ok(ScanMode::Omega),
            "disks" => Ok(ScanMode::Disks),
            "lambda" => Ok(ScanMode::Lambda),
            "combined" => Ok(ScanMode::Combined),
            "burau" => Ok(ScanMode::Burau),
            _ => Err(CliError::Parse(format!(
                "unknown mode {s:?} (expected omega, disks, lambda, combined or burau)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanJob {
    pub p: Order,
    pub q: Order,
    pub window: Window,
    pub resolution: usize,
    pub mode: ScanMode,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub job: ScanJob,
    pub version: &'static str,
    /// Row-major codes, row 0 at the top (largest imaginary part).
    pub codes: Vec<u8>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ScanOptions {
    /// Worker threads; `None` uses the rayon default.
    pub workers: Option<usize>,
    /// Rows not started before the budget expires are abandoned.
    pub budget: Option<Duration>,
}

enum Evaluator {
    Omega(OmegaRegion),
    Group(GroupSpec, ScanMode),
    Burau,
}

impl Evaluator {
    fn new(job: &ScanJob) -> CliResult<Self> {
        let base = C64::new(1.0, 0.0);
        Ok(match job.mode {
            ScanMode::Omega => Evaluator::Omega(build_omega(job.p, job.q)?),
            ScanMode::Burau => Evaluator::Burau,
            ScanMode::Disks => {
                let spec = GroupSpec::new(job.p, job.q, base)?;
                let spec = if spec.p().at_least(3) {
                    spec
                } else {
                    spec.swapped()
                };
                cert_disks_elliptic(&spec)?;
                Evaluator::Group(spec, job.mode)
            }
            ScanMode::Lambda => {
                job.p.require_finite_order()?;
                job.q.require_finite_order()?;
                Evaluator::Group(GroupSpec::new(job.p, job.q, base)?, job.mode)
            }
            ScanMode::Combined => Evaluator::Group(GroupSpec::new(job.p, job.q, base)?, job.mode),
        })
    }

    fn code(&self, z: C64) -> u8 {
        match self {
            Evaluator::Omega(region) => {
                if omega_contains(region, z) {
                    0
                } else {
                    OMEGA_EXTERIOR
                }
            }
            Evaluator::Burau => match faithful_certificate(z) {
                Ok(c) if c.is_faithful() => 4,
                _ => 0,
            },
            Evaluator::Group(spec, mode) => {
                let spec = spec.with_rho(z);
                match mode {
                    ScanMode::Disks => cert_disks_elliptic(&spec).map_or(0, |c| c.code()),
                    ScanMode::Lambda => lambda_route(&spec).map_or(0, |c| c.code()),
                    _ => cert_combined(&spec).code(),
                }
            }
        }
    }
}

trait RequireFinite {
    fn require_finite_order(self) -> CliResult<()>;
}

impl RequireFinite for Order {
    fn require_finite_order(self) -> CliResult<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(CliError::Unsupported("the λ region needs finite orders".into()))
        }
    }
}

impl ScanJob {
    pub fn validate(&self) -> CliResult<()> {
        if self.resolution < 2 {
            return Err(CliError::Unsupported("resolution must be at least 2".into()));
        }
        Evaluator::new(self).map(|_| ())
    }

    pub fn pixel(&self, col: usize, row: usize) -> C64 {
        self.window.pixel_centre(col, row, self.resolution)
    }
}

/// Evaluates every pixel centre. Output does not depend on the worker count.
pub fn run_scan(job: &ScanJob, opts: ScanOptions) -> CliResult<ScanResult> {
    if job.resolution < 2 {
        return Err(CliError::Unsupported("resolution must be at least 2".into()));
    }
    let eval = Evaluator::new(job)?;
    let n = job.resolution;
    let start = Instant::now();
    let row = |r: usize| -> Option<Vec<u8>> {
        if opts.budget.is_some_and(|b| start.elapsed() > b) {
            return None;
        }
        Some((0..n).map(|c| eval.code(job.pixel(c, r))).collect())
    };
    let mut builder = ThreadPoolBuilder::new();
    if let Some(w) = opts.workers {
        builder = builder.num_threads(w.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Unsupported(format!("cannot start worker pool: {e}")))?;
    let rows: Vec<Option<Vec<u8>>> = pool.install(|| (0..n).into_par_iter().map(row).collect());

    let completed = rows.iter().filter(|r| r.is_some()).count();
    if completed < n {
        return Err(CliError::Partial {
            completed,
            total: n,
        });
    }
    Ok(ScanResult {
        job: *job,
        version: env!("CARGO_PKG_VERSION"),
        codes: rows.into_iter().flatten().flatten().collect(),
    })
}

/// `v` with 12 significant digits in positional notation.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

impl ScanResult {
    pub fn get(&self, col: usize, row: usize) -> u8 {
        self.codes[row * self.job.resolution + col]
    }

    pub fn counts(&self) -> [usize; 7] {
        let mut c = [0; 7];
        for &k in &self.codes {
            c[k as usize] += 1;
        }
        c
    }

    pub fn to_csv(&self) -> String {
        let n = self.job.resolution;
        let mut out = String::with_capacity(n * n * 32);
        out.push_str("x,y,code\n");
        for r in 0..n {
            for c in 0..n {
                let z = self.job.pixel(c, r);
                let _ = writeln!(out, "{},{},{}", fmt_sig(z.re), fmt_sig(z.im), self.get(c, r));
            }
        }
        out
    }

    /// Binary greyscale image; uncertified pixels are black.
    pub fn to_pgm(&self) -> Vec<u8> {
        let n = self.job.resolution;
        let mut out = format!("P5\n{n} {n}\n255\n").into_bytes();
        out.extend(self.codes.iter().map(|&k| GREYS[k as usize]));
        out
    }

    pub fn to_svg(&self) -> String {
        let n = self.job.resolution;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{n}\" height=\"{n}\" viewBox=\"0 0 {n} {n}\" shape-rendering=\"crispEdges\">"
        );
        for r in 0..n {
            let mut c = 0;
            while c < n {
                let k = self.get(c, r);
                let start = c;
                while c < n && self.get(c, r) == k {
                    c += 1;
                }
                let _ = writeln!(
                    out,
                    "<rect x=\"{start}\" y=\"{r}\" width=\"{}\" height=\"1\" fill=\"{}\"/>",
                    c - start,
                    COLOURS[k as usize]
                );
            }
        }
        out.push_str("</svg>\n");
        out
    }

    pub fn summary(&self) -> serde_json::Value {
        serde_json::json!({
            "job": self.job,
            "version": self.version,
            "rows": self.job.resolution,
            "cols": self.job.resolution,
            "counts": self.counts(),
        })
    }
}

const GREYS: [u8; 7] = [0, 230, 200, 170, 140, 110, 255];
const COLOURS: [&str; 7] = [
    "#000000", "#d33333", "#e69f00", "#56b4e9", "#009e73", "#cc79a7", "#cccccc",
];

#[cfg(test)]
mod tests {
    use super::*;

    fn job(mode: ScanMode, res: usize) -> ScanJob {
        ScanJob {
            p: Order::Finite(3),
            q: Order::Finite(3),
            window: Window::new(-6.0, 8.0, -4.0, 4.0).unwrap(),
            resolution: res,
            mode,
        }
    }

    #[test]
    fn sig_digits() {
        assert_eq!(fmt_sig(1.5), "1.50000000000");
        assert_eq!(fmt_sig(-0.0175), "-0.0175000000000");
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(123456.0), "123456.000000");
        assert_eq!(fmt_sig(-1e-13), "-0.000000000000100000000000");
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("omega".parse::<ScanMode>().unwrap(), ScanMode::Omega);
        assert!(matches!("x".parse::<ScanMode>(), Err(CliError::Parse(_))));
    }

    #[test]
    fn rejects_bad_jobs() {
        assert!(job(ScanMode::Disks, 1).validate().is_err());
        let mut j = job(ScanMode::Omega, 4);
        j.p = Order::Finite(2);
        assert!(matches!(j.validate(), Err(CliError::Unsupported(_))));
    }

    #[test]
    fn small_scan_shapes() {
        let r = run_scan(&job(ScanMode::Disks, 8), ScanOptions::default()).unwrap();
        assert_eq!(r.codes.len(), 64);
        assert_eq!(r.to_csv().lines().count(), 65);
        let pgm = r.to_pgm();
        assert!(pgm.starts_with(b"P5\n8 8\n255\n"));
        assert_eq!(pgm.len(), b"P5\n8 8\n255\n".len() + 64);
    }

    #[test]
    fn zero_budget_reports_partial() {
        let opts = ScanOptions {
            workers: Some(1),
            budget: Some(Duration::ZERO),
        };
        match run_scan(&job(ScanMode::Combined, 16), opts) {
            Err(CliError::Partial { completed, total }) => {
                assert!(completed < total);
                assert_eq!(total, 16);
            }
            other => panic!("expected partial result, got {other:?}"),
        }
    }
}
