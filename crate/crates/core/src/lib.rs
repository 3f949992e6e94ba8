//! Geometry of the inversion map `Fx ↦ Fx⁻¹` on PG(n-1, q), Desarguesian and
//! scattered spreads, and partitions of PG(2^k - 1, q) into normal rational
//! curves.

pub mod error;
pub mod gf;
pub mod inversion;
pub mod io;
pub mod partitions;
pub mod pg;
pub mod spreads;

pub use error::{Error, Result};
pub use gf::{theta, FieldElement, Theta, Tower, TowerConfig};
pub use pg::{ProjPoint, Subspace, DEFAULT_BUDGET};
