//! JSON record describing `Ω_{p,q}` together with its disks and marked points.

use serde::{Deserialize, Serialize};

use crate::certificates::exclusion_disks;
use crate::mobius::{Disk, Order};
use crate::region::{boundary_cusps, build_omega, rho_star, x_pq, OmegaRegion, OrientedLine};
use crate::{Error, Result, C64};

type Pair = [f64; 2];

fn pair(z: C64) -> Pair {
    [z.re, z.im]
}

fn point(p: Pair) -> C64 {
    C64::new(p[0], p[1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineRecord {
    pub point: Pair,
    pub dir: Pair,
    pub side: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaRecord {
    pub lines: Vec<LineRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskRecord {
    pub center: Pair,
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionRecord {
    pub p: u32,
    pub q: u32,
    pub omega: OmegaRecord,
    pub disks: Vec<DiskRecord>,
    pub cusps: Vec<Pair>,
    pub rho_star: Pair,
    pub x_pq: f64,
}

impl RegionRecord {
    /// Builds the record for `(p, q)` as given: `Ω` is symmetric in the orders
    /// while the disks, `ρ*` and `x` follow the given order.
    pub fn build(p: Order, q: Order) -> Result<Self> {
        let (Some(pv), Some(qv)) = (p.value(), q.value()) else {
            return Err(Error::unsupported("region records need finite orders"));
        };
        let omega = build_omega(p, q)?;
        Ok(RegionRecord {
            p: pv,
            q: qv,
            omega: omega_record(&omega),
            disks: exclusion_disks(p, q)
                .iter()
                .map(|d| DiskRecord {
                    center: pair(d.center),
                    r: d.radius,
                })
                .collect(),
            cusps: boundary_cusps(p, q)?.iter().map(|&z| pair(z)).collect(),
            rho_star: pair(rho_star(p, q)?),
            x_pq: x_pq(p, q)?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serialises")
    }

    /// Parses and validates a record.
    pub fn from_json(text: &str) -> Result<Self> {
        let rec: RegionRecord =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        rec.validate()?;
        Ok(rec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Parse(m.to_string()));
        if self.p < 3 || self.q < 3 {
            return bad("orders must be at least 3");
        }
        for l in &self.omega.lines {
            if l.side != 1 && l.side != -1 {
                return bad("line side must be ±1");
            }
            if !l.point.iter().chain(&l.dir).all(|v| v.is_finite()) {
                return bad("line coordinates must be finite");
            }
            if (point(l.dir).norm() - 1.0).abs() > 1e-9 {
                return bad("line direction must be a unit vector");
            }
        }
        for d in &self.disks {
            Disk::new(point(d.center), d.r).map_err(|e| Error::Parse(e.to_string()))?;
        }
        let finite = self
            .cusps
            .iter()
            .chain(std::iter::once(&self.rho_star))
            .flatten()
            .chain(std::iter::once(&self.x_pq))
            .all(|v| v.is_finite());
        if !finite {
            return bad("coordinates must be finite");
        }
        Ok(())
    }

    pub fn lines(&self) -> Vec<OrientedLine> {
        self.omega
            .lines
            .iter()
            .map(|l| OrientedLine {
                point: point(l.point),
                dir: point(l.dir),
                side: l.side,
            })
            .collect()
    }
}

pub fn omega_record(region: &OmegaRegion) -> OmegaRecord {
    OmegaRecord {
        lines: region
            .lines()
            .iter()
            .map(|l| LineRecord {
                point: pair(l.point),
                dir: pair(l.dir),
                side: l.side,
            })
            .collect(),
    }
}
