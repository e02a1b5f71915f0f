//! Exact and truncated-numerical engine for Fock semicrossed products of
//! finitely generated modules over `Z` and `Z[i]`.

pub mod coeff;
pub mod domain;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod fock;
pub mod groupalg;
pub mod modules;
pub mod sample;
pub mod scenario;
pub mod semicross;
mod wire;

pub use coeff::Coeff;
pub use domain::{Domain, DomainElem, Fraction};
pub use error::{Error, Result};
