use num_bigint::BigInt;
use thiserror::Error;

use crate::lattice::{DivisorClass, LatticeType};

/// Errors raised by the library.
///
/// `ConsistencyFault`, `ParityFault` and `DegreeFault` indicate that two
/// independent routes to the same number disagreed. They are never expected
/// and the CLI maps them to a distinct exit status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{operation} requires the {expected} lattice, got {found}")]
    WrongLattice {
        operation: &'static str,
        expected: LatticeType,
        found: LatticeType,
    },

    #[error(
        "{operation}: class {class} has arithmetic genus {p_a}, only genus-0 classes are accepted"
    )]
    NotRational {
        operation: &'static str,
        class: DivisorClass,
        p_a: BigInt,
    },

    #[error("{operation}: class {class} is not an admissible curve class on the {lattice} model")]
    NotAdmissible {
        operation: &'static str,
        class: DivisorClass,
        lattice: LatticeType,
    },

    #[error("{name} = {value} is out of range ({expected})")]
    OutOfRange {
        name: &'static str,
        value: String,
        expected: &'static str,
    },

    #[error("consistency fault in {quantity} at {class}: closed form gives {closed_form}, generic formula gives {generic}")]
    ConsistencyFault {
        quantity: &'static str,
        class: DivisorClass,
        closed_form: BigInt,
        generic: BigInt,
    },

    #[error("parity fault in {quantity} at {class}: product {product} is odd")]
    ParityFault {
        quantity: &'static str,
        class: DivisorClass,
        product: BigInt,
    },

    #[error("degree fault: residual along {constraint} is not quadratic in the parameter")]
    DegreeFault { constraint: String },
}

impl Error {
    /// True for faults that mean the implementation disagrees with itself,
    /// as opposed to bad input.
    pub fn is_internal_fault(&self) -> bool {
        matches!(
            self,
            Error::ConsistencyFault { .. } | Error::ParityFault { .. } | Error::DegreeFault { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
