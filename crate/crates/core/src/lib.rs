//! Rigorous solver for the Diophantine equation
//! `F_{n1} + F_{n2} + F_{n3} + F_{n4} = 2^a`.
//!
//! The pipeline has three legs, mirroring the classical Baker-method proof
//! structure:
//!
//! 1. **Search** (`search`): exhaustive enumeration of all canonical
//!    solutions with `n1 ≤ 350`, plus an audit of the published solution
//!    table and the special-case Lucas equations.
//! 2. **Absolute bound** (`matveev`): linear forms in logarithms give
//!    `n1 < 2.8 × 10^58` for any further solution.
//! 3. **Reduction** (`dpreduce` + `cfrac`): Dujella–Pethő reduction with
//!    certified continued fractions pulls the absolute bound below 350,
//!    closing the proof.
//!
//! All real analysis flows through `realfield`: exact ℚ(√5) arithmetic for
//! algebraic identities and midpoint–radius enclosures (with outward
//! rounding) for everything transcendental. No floating-point comparison
//! decides anything.

pub mod cfrac;
pub mod dpreduce;
pub mod error;
pub mod matveev;
pub mod realfield;
pub mod search;
pub mod sequences;

pub use error::{Error, Result};
