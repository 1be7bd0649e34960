//! Discreteness and freeness certificates for two-generator Möbius groups
//! `⟨A, B_ρ⟩` whose generators are elliptic of orders `p` and `q`.
//!
//! The crate is organised bottom-up:
//!
//! * [`mobius`]: `SL(2,ℂ)` matrices, the canonical generator pair, trace
//!   invariants, fixed points, isometric disks and the `λ ↔ ρ` coordinate change.
//! * [`certificates`]: sufficient conditions for `⟨A,B⟩ ≅ ℤ_p * ℤ_q` to be
//!   discrete (four-disk tests, line families, the `λ` region, the
//!   imaginary-part strip) and the combined certifier.
//! * [`region`]: the polygonal exclusion region `Ω_{p,q}` and its sharp cusps.
//! * [`farey`]: low-slope Farey polynomials and cusp root finding.
//! * [`burau`]: faithfulness of the specialised reduced Burau representation of `B₃`.
//! * [`parse`] and [`schema`]: text literals and the JSON region record.

pub mod burau;
pub mod certificates;
mod error;
pub mod farey;
pub mod mobius;
pub mod parse;
pub mod region;
pub mod schema;
pub mod tol;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

pub use mobius::{GroupSpec, LambdaParams, Mat2C, Order};
