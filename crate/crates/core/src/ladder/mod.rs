//! Ladder bimodules acting between polynomial representations, and the
//! orthogonal Gelfand-Zetlin operators they are compared against.

pub mod action;
pub mod merge;
pub mod ogz;

pub use action::Ladder;
pub use merge::LadderContext;
