//! Small quantum Borel algebras at odd roots of unity: exact structure
//! constants, twist cohomology, and reduction of Drinfeld twists to normal form.

pub mod acceptance;
pub mod cohomology;
pub mod dp_moves;
pub mod dualside;
pub mod engine;
pub mod error;
pub mod groupalg;
pub mod io;
pub mod linalg;
pub mod reduction;
pub mod rootdata;
pub mod scalars;
pub mod tensor_hopf;

pub use error::{Error, Result};
