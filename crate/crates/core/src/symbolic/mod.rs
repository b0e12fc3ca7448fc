//! Exact symbolic layer: coefficients in ℚ(i, √2), rational functions of
//! named symbols, and linear differential operators built on them.

mod coeff;
mod deriv;
mod multiplier;
mod parse;
mod pde;
mod poly;
mod scalar;
mod symbol;

pub use coeff::Coeff;
pub use deriv::{MultiIndex, MAX_ORDER};
pub use multiplier::{apply_operator, ExpLinearMultiplier};
pub use parse::parse_scalar;
pub use pde::LinearPDE;
pub use poly::{Monomial, Poly};
pub use scalar::Scalar;
pub use symbol::{Symbol, SymbolKind, BETA, GAMMA};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymbolicError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
