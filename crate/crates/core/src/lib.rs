pub mod error;
pub mod exact;
pub mod operators;
pub mod klrw;
pub mod ladder;
pub mod multisegment;
pub mod quiver;
pub mod sampling;
pub mod weights;
