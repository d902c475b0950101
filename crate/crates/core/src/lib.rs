//! Exact computer algebra for the almost-unramified theory of unitary groups
//! over an unramified quadratic extension.
//!
//! The crate is split the way the mathematics is:
//!
//! * [`exactalg`]: big rationals, Laurent polynomials, unreduced rational
//!   functions, cyclotomic scalars and kernel computations.
//! * [`weyl`]: the hyperoctahedral group `{±1}^r ⋊ S_r`.
//! * [`hecke`]: the finite Iwahori–Hecke algebra with parameters `(q, q²)`,
//!   its characters `κ^±` and the eigenvector / idempotent.
//! * [`satake`]: invariant Laurent polynomials and the two theta
//!   specialisation maps.
//! * [`doubling`]: doubling L-, ε- and zeta-factor closed forms,
//!   Gindikin–Karpelevich constants and theta parameter bookkeeping.
//! * [`weilrep`]: residue-lattice and finite-field models of the Weil
//!   representation.
//! * [`verify`]: named suites that run the identity batteries and produce
//!   machine-readable reports.

pub mod doubling;
pub mod error;
pub mod exactalg;
pub mod hecke;
pub mod satake;
pub mod verify;
pub mod weilrep;
pub mod weyl;

pub use error::{Error, Result};
pub use exactalg::{CycScalar, Factored, LPoly, RFunc, Rat};
pub use hecke::HeckeElement;
pub use satake::{HermitianSpaceDesc, SymLaurent};
pub use weyl::SignedPermutation;

use std::fmt;
use std::str::FromStr;

/// Hard bound on the symbolic rank unless overridden by `UHECKE_MAX_R`.
pub const DEFAULT_MAX_R: usize = 4;

/// Reads `UHECKE_MAX_R`, falling back to [`DEFAULT_MAX_R`].
pub fn max_symbolic_rank() -> usize {
    std::env::var("UHECKE_MAX_R")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_R)
}

/// The sign ε of a hermitian space, equivalently of a Hecke character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    /// The integer `(ε1)`.
    pub fn unit(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("invalid sign `{other}`"))),
        }
    }
}
