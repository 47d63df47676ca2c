//! Permutation-twisted and shift-twisted operator calculi.

pub mod perm_op;
pub mod shift_op;

pub use perm_op::PermOperator;
pub use shift_op::{Alphabet, ShiftOperator};
