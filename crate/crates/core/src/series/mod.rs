//! Truncated exponential-generating-function kernel over exact rationals.

mod bi;
mod uni;
mod zw;

pub use bi::BiSeries;
pub use uni::UniSeries;
pub use zw::{RationalZWExpr, SeriesRing, ZWTerm};
