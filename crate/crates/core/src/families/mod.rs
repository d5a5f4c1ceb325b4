//! Example monoid constructors.
pub mod bits;
pub mod finite;
pub mod lazy;

pub use crate::classify::{bounded_classify, WindowProbe};
