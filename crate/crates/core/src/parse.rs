//! Text forms used on the command line: complex literals, orders and windows.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::mobius::Order;
use crate::{Error, Result, C64};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn real(s: &str, whole: &str) -> Result<f64> {
    let s = s.trim();
    // reject forms f64::from_str accepts but a literal should not
    if s.is_empty() || s.eq_ignore_ascii_case("nan") || s.to_ascii_lowercase().contains("inf") {
        return Err(perr(format!("bad number in {whole:?}")));
    }
    let v: f64 = s.parse().map_err(|_| perr(format!("bad number {s:?} in {whole:?}")))?;
    if !v.is_finite() {
        return Err(perr(format!("number out of range in {whole:?}")));
    }
    Ok(v)
}

/// Parses `RE`, `IMi`, `RE+IMi`, `RE-IMi`, `i`, `-i` and `RE±i`.
///
/// Exponents (`1e-3+2E2i`) and surrounding whitespace are accepted.
pub fn parse_complex(text: &str) -> Result<C64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(perr("empty complex literal"));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(C64::new(real(&s, text)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real(&body[..k], text)?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => real(other, text)?,
    };
    Ok(C64::new(re, im))
}

/// Parses a positive integer order `≥ 2`, or `inf`/`∞` for the parabolic case.
pub fn parse_order(text: &str) -> Result<Order> {
    let s = text.trim();
    if matches!(s.to_ascii_lowercase().as_str(), "inf" | "infinity") || s == "∞" {
        return Ok(Order::Infinite);
    }
    let n: u32 = s
        .parse()
        .map_err(|_| perr(format!("order must be an integer or 'inf', got {text:?}")))?;
    Order::finite(n).map_err(|e| perr(e.to_string()))
}

/// An axis-aligned rectangle `[re_min, re_max] × [im_min, im_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let all_finite = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite());
        if !all_finite || re_min >= re_max || im_min >= im_max {
            return Err(Error::invalid("window must be finite and non-degenerate"));
        }
        Ok(Window {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    pub fn width(&self) -> f64 {
        self.re_max - self.re_min
    }

    pub fn height(&self) -> f64 {
        self.im_max - self.im_min
    }

    /// Centre of pixel `(col, row)` on an `n × n` grid; row 0 is the top.
    pub fn pixel_centre(&self, col: usize, row: usize, n: usize) -> C64 {
        let dx = self.width() / n as f64;
        let dy = self.height() / n as f64;
        C64::new(
            self.re_min + (col as f64 + 0.5) * dx,
            self.im_max - (row as f64 + 0.5) * dy,
        )
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.re_min, self.re_max, self.im_min, self.im_max)
    }
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(perr(format!("window needs four comma-separated numbers, got {s:?}")));
        }
        let v: Vec<f64> = parts.iter().map(|p| real(p, s)).collect::<Result<_>>()?;
        Window::new(v[0], v[1], v[2], v[3]).map_err(|e| perr(e.to_string()))
    }
}

pub fn parse_window(text: &str) -> Result<Window> {
    text.parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn complex_forms() {
        let cases = [
            ("10+0i", c(10.0, 0.0)),
            ("1.5", c(1.5, 0.0)),
            ("-2i", c(0.0, -2.0)),
            ("i", c(0.0, 1.0)),
            ("-i", c(0.0, -1.0)),
            ("3-i", c(3.0, -1.0)),
            ("1.5 + 1.32i", c(1.5, 1.32)),
            ("1e-3+2E2i", c(1e-3, 200.0)),
            ("-1e+2-3e-1i", c(-100.0, -0.3)),
            ("+4", c(4.0, 0.0)),
        ];
        for (s, v) in cases {
            assert_eq!(parse_complex(s).unwrap(), v, "{s}");
        }
        for bad in ["", "abc", "1+2", "1++2i", "nan", "infi", "1e400", "2ii", "+"] {
            assert!(matches!(parse_complex(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn orders() {
        assert_eq!(parse_order("3").unwrap(), Order::Finite(3));
        assert_eq!(parse_order("inf").unwrap(), Order::Infinite);
        assert_eq!(parse_order("∞").unwrap(), Order::Infinite);
        assert!(parse_order("1").is_err());
        assert!(parse_order("-3").is_err());
        assert!(parse_order("3.5").is_err());
    }

    #[test]
    fn windows() {
        let w = parse_window("-6,8,-4,4").unwrap();
        assert_eq!(w, Window::new(-6.0, 8.0, -4.0, 4.0).unwrap());
        assert_eq!(w.to_string().parse::<Window>().unwrap(), w);
        assert!(parse_window("1,1,0,1").is_err());
        assert!(parse_window("0,1,0").is_err());
        let centre = w.pixel_centre(0, 0, 2);
        assert_eq!(centre, c(-2.5, 2.0));
    }
}
