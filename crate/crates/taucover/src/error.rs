//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Operands belong to different fields or different tower levels.
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    /// A text form did not match the grammar.
    #[error("parse error: {0}")]
    Parse(String),

    /// Division by the zero polynomial or a non-unit.
    #[error("division by zero")]
    DivisionByZero,

    /// A requested enumeration exceeds the configured caps.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    /// Structurally invalid input (wrong degree, zero discriminant, ...).
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Resource limits for exhaustive searches. Every limit is checked before
/// the corresponding enumeration starts, never during it.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Largest permitted order for an enumerated matrix group table.
    pub max_group_order: u64,
    /// Largest permitted field size for exhaustive root searches.
    pub max_field_size: u64,
    /// Largest permitted degree for polynomial factorization inputs.
    pub max_poly_degree: usize,
    /// Hard guard on raw ring scans (|R|^4 matrix candidates).
    pub max_scan: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_group_order: 200_000,
            max_field_size: 1 << 16,
            max_poly_degree: 8,
            max_scan: 400_000_000,
        }
    }
}

impl Caps {
    /// Default caps with a different group-order ceiling.
    pub fn with_group_order(order: u64) -> Self {
        Caps {
            max_group_order: order,
            ..Caps::default()
        }
    }
}
