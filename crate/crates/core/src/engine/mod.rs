pub mod big;
pub mod mono;
pub mod plus;
pub mod rules;
pub mod shuffle;
pub mod side;
pub mod uq;

pub use big::BigAlgebra;
pub use side::GradedSide;
pub use uq::{Cop, Elem, Tensor2, Tensor3, Uq};
