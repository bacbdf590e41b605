//! Exact divisor-class arithmetic on fake quadrics.
//!
//! A fake quadric is a minimal surface of general type with `q = p_g = 0`
//! and `K² = 8`. Its Néron–Severi lattice is unimodular of rank 2, so it is
//! one of two lattices ([`LatticeType::Even`] or [`LatticeType::Odd`]), and
//! everything in this crate is integer arithmetic on classes `xH + yF`:
//!
//! * [`lattice`]: intersection pairing, canonical class, the even-to-odd
//!   embedding and the tangent splitting check.
//! * [`riemann_roch`]: Euler characteristic and arithmetic genus.
//! * [`positivity`]: curve-class admissibility, effective, nef, big and
//!   ample criteria, cone rays.
//! * [`cohomology`]: `h²` vanishing, `h⁰` bounds and the bounded-cohomology
//!   case analysis.
//! * [`diophantine`]: the double point formula, `P⁴` non-embedding
//!   certificates and low-genus class lists.
//! * [`report`]: the acceptance suite as a single serializable document.
//!
//! ```
//! use fakequad::{DivisorClass, SurfaceModel, riemann_roch, positivity};
//!
//! let odd = SurfaceModel::odd();
//! let k = odd.canonical().clone();
//! assert_eq!(odd.self_intersection(&k), 8.into());
//! assert_eq!(riemann_roch::arithmetic_genus(&odd, &k).unwrap(), 9.into());
//! assert!(positivity::is_ample(&odd, &DivisorClass::new(3, -1)));
//! ```

// Errors carry the offending class and both conflicting values; they are
// cold and never on the sweep path.
#![allow(clippy::result_large_err)]

pub mod analysis;
pub mod cohomology;
pub mod diophantine;
pub mod error;
mod json;
pub mod lattice;
pub mod positivity;
pub mod report;
pub mod riemann_roch;

pub use error::{Error, Result};
pub use lattice::{DivisorClass, LatticeType, RationalClass, SurfaceModel};

/// Schema id embedded in every JSON document under the key `"schema"`.
pub const SCHEMA: &str = "fakequad/v1";
