//! Input files, rendering and the command line.
//!
//! Algebraic presentations and cell attachments share one grammar; a cell
//! attachment is a presentation whose degree-0 part presents the base and
//! whose `d` lines give the attaching maps. Only the report wording differs.

mod cli;
mod parse;
pub mod render;

use thiserror::Error;

pub use cli::{attaching_data, run_command};
pub use parse::{parse_expr, parse_presentation, parse_presentation_with, ParseError};

use crate::present::Presentation;

/// Reads a cell attachment file. Analyze the result with
/// [`Vocabulary::Topological`](crate::analyze::Vocabulary) for loop-space wording.
pub fn compile_attachment(text: &str) -> Result<Presentation, ParseError> {
    parse_presentation(text)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("primes_bound needs a dimension of at least 2, got {0}")]
pub struct DimensionTooSmall(pub u32);

/// Bound on the primes a `{2,3}`-localized model can leave implicit for a
/// complex of dimension `n`: `max(3, ⌊n/2⌋)`.
pub fn primes_bound(n: u32) -> Result<u32, DimensionTooSmall> {
    if n < 2 {
        return Err(DimensionTooSmall(n));
    }
    Ok((n / 2).max(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_bound_values() {
        assert_eq!(primes_bound(38), Ok(19));
        assert_eq!(primes_bound(6), Ok(3));
        assert_eq!(primes_bound(8), Ok(4));
        assert!(primes_bound(1).is_err());
    }
}
