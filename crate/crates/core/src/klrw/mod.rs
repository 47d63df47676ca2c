//! The deformed KLRW algebra in its faithful polynomial representation.

pub mod element;
pub mod graded;
pub mod invariants;
pub mod problem;
pub mod relations;
pub mod word;

pub use element::{AlgebraElement, CrossingSign};
pub use problem::Problem;
pub use word::Word;
