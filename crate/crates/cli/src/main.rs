use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use riley::parse::{parse_complex, parse_order, parse_window};
use riley::{GroupSpec, Order};
use riley_cli::commands::{self, RegionFormat};
use riley_cli::scan::{run_scan, ScanJob, ScanMode, ScanOptions};
use riley_cli::{CliError, CliResult};

/// Discreteness certificates for ⟨A, B_ρ⟩ with elliptic generators of orders p and q.
#[derive(Parser)]
#[command(name = "riley", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Orders {
    /// Order of A (integer ≥ 2 or "inf").
    #[arg(long, default_value = "3")]
    p: String,
    /// Order of B (integer ≥ 2 or "inf").
    #[arg(long, default_value = "3")]
    q: String,
}

impl Orders {
    fn parse(&self) -> CliResult<(Order, Order)> {
        Ok((parse_order(&self.p)?, parse_order(&self.q)?))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Certify points; prints one JSON object per input. Reads stdin when no value is given.
    Certify {
        #[command(flatten)]
        orders: Orders,
        /// ρ as RE+IMi (repeatable).
        #[arg(long, allow_hyphen_values = true)]
        rho: Vec<String>,
        /// Test the Burau specialisation at μ instead.
        #[arg(long)]
        burau: bool,
        /// μ as RE+IMi (repeatable, with --burau).
        #[arg(long, allow_hyphen_values = true)]
        mu: Vec<String>,
    },
    /// Write Ω, the exclusion disks and marked points as SVG or JSON.
    Region {
        #[command(flatten)]
        orders: Orders,
        #[arg(long, default_value = "svg")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rasterise a certificate over a window; writes OUT.csv and OUT.pgm (or OUT.svg).
    Scan {
        #[command(flatten)]
        orders: Orders,
        #[arg(long, default_value = "-6,8,-4,4", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 400)]
        res: usize,
        /// omega, disks, lambda, combined or burau.
        #[arg(long, default_value = "combined")]
        mode: String,
        /// Output path without extension.
        #[arg(long)]
        out: PathBuf,
        /// Raster format: pgm or svg. csv writes only the CSV.
        #[arg(long, default_value = "pgm")]
        format: String,
        /// Worker threads (default: all cores).
        #[arg(long)]
        workers: Option<usize>,
        /// Abandon the scan after this many milliseconds.
        #[arg(long)]
        budget_ms: Option<u64>,
    },
    /// Compare the λ region with the four-disk test, angle by angle.
    CompareLambda {
        #[command(flatten)]
        orders: Orders,
        #[arg(long, default_value = "svg")]
        format: String,
        #[arg(long, default_value_t = 360)]
        angles: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cusp groups from the Farey polynomials of slope 0/1, 1/1, 1/2, 1/3.
    Cusps {
        #[command(flatten)]
        orders: Orders,
    },
    /// Compare the Burau certificate with the known and conjectured annuli.
    BurauAnnulus {
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long, default_value = "-4,4,-4,4", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 400)]
        res: usize,
    },
}

fn emit(out: Option<&Path>, body: &[u8]) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, body)?,
        None => io::stdout().lock().write_all(body)?,
    }
    Ok(())
}

fn json_line(v: &serde_json::Value) -> String {
    serde_json::to_string(v).expect("json value serialises") + "\n"
}

fn stdin_values() -> CliResult<Vec<String>> {
    let mut vals = Vec::new();
    for line in io::stdin().lock().lines() {
        let line = line?;
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            vals.push(t.to_string());
        }
    }
    Ok(vals)
}

fn with_extension(base: &Path, ext: &str) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Certify {
            orders,
            rho,
            burau,
            mu,
        } => {
            if burau {
                let inputs = if mu.is_empty() { stdin_values()? } else { mu };
                for m in inputs {
                    let rec = commands::burau_record(parse_complex(&m)?)?;
                    emit(None, json_line(&rec).as_bytes())?;
                }
            } else {
                let (p, q) = orders.parse()?;
                let inputs = if rho.is_empty() { stdin_values()? } else { rho };
                for r in inputs {
                    let spec = GroupSpec::new(p, q, parse_complex(&r)?)?;
                    emit(None, json_line(&commands::certify_record(&spec)).as_bytes())?;
                }
            }
        }
        Command::Region {
            orders,
            format,
            out,
        } => {
            let (p, q) = orders.parse()?;
            let format = match format.as_str() {
                "svg" => RegionFormat::Svg,
                "json" => RegionFormat::Json,
                f => return Err(CliError::Parse(format!("region format must be svg or json, got {f:?}"))),
            };
            emit(out.as_deref(), commands::region_output(p, q, format)?.as_bytes())?;
        }
        Command::Scan {
            orders,
            window,
            res,
            mode,
            out,
            format,
            workers,
            budget_ms,
        } => {
            let (p, q) = orders.parse()?;
            let job = ScanJob {
                p,
                q,
                window: parse_window(&window)?,
                resolution: res,
                mode: mode.parse::<ScanMode>()?,
            };
            if !matches!(format.as_str(), "pgm" | "svg" | "csv") {
                return Err(CliError::Parse(format!("scan format must be pgm, svg or csv, got {format:?}")));
            }
            job.validate()?;
            let opts = ScanOptions {
                workers,
                budget: budget_ms.map(Duration::from_millis),
            };
            let result = run_scan(&job, opts)?;
            fs::write(with_extension(&out, "csv"), result.to_csv())?;
            match format.as_str() {
                "pgm" => fs::write(with_extension(&out, "pgm"), result.to_pgm())?,
                "svg" => fs::write(with_extension(&out, "svg"), result.to_svg())?,
                _ => {}
            }
            emit(None, json_line(&result.summary()).as_bytes())?;
        }
        Command::CompareLambda {
            orders,
            format,
            angles,
            out,
        } => {
            let (p, q) = orders.parse()?;
            let body = match format.as_str() {
                "svg" => {
                    commands::compare_lambda(p, q, 1)?;
                    commands::compare_svg(p, q)?
                }
                "json" => {
                    let cmp = commands::compare_lambda(p, q, angles)?;
                    serde_json::to_string_pretty(&cmp).expect("comparison serialises") + "\n"
                }
                f => return Err(CliError::Parse(format!("compare-lambda format must be svg or json, got {f:?}"))),
            };
            emit(out.as_deref(), body.as_bytes())?;
        }
        Command::Cusps { orders } => {
            let (p, q) = orders.parse()?;
            emit(None, json_line(&commands::cusps_record(p, q)?).as_bytes())?;
        }
        Command::BurauAnnulus { mu, window, res } => {
            let v = match mu {
                Some(m) => commands::annulus_record(parse_complex(&m)?)?,
                None => serde_json::to_value(commands::annulus_scan(parse_window(&window)?, res)?)
                    .expect("scan serialises"),
            };
            emit(None, json_line(&v).as_bytes())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("riley: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
