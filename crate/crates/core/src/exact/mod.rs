//! Exact arithmetic: big rationals, integer matrices with Smith/Hermite normal forms,
//! small rational linear algebra and commutative Laurent polynomials.

mod intmat;
pub mod laurent;
pub mod ratmat;
mod rat;
mod snf;

use std::fmt;

pub use intmat::IntMat;
pub use laurent::{Laurent, LaurentMatrix, Var};
pub use rat::{ceil_rat, Rat};
pub use snf::{hermite_rows, is_saturated, kernel_basis, snf, SnfResult};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRatError(pub String);

/// Writes one signed term of a sum: `c*f1*f2`, with the sign pulled out as a `+`/`-`
/// separator and a unit coefficient omitted when factors are present.
pub(crate) fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    c: &Rat,
    factors: &[String],
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let mag = c.abs();
    let mut parts: Vec<String> = Vec::new();
    if !mag.is_one() || factors.is_empty() {
        parts.push(mag.to_string());
    }
    parts.extend(factors.iter().cloned());
    write!(f, "{}", parts.join("*"))
}
