//! Exact scalars: Q(ζ_l), the generic field Q(v), and q-numbers.

mod cyclo;
mod generic;
pub mod poly;
pub mod qnum;

pub use cyclo::{CycField, CycScalar};
pub use generic::{specialize_lpoly, GenericScalar};
pub use qnum::{q_binomial, qbinom, qfactorial, qint, QValue, ScalarMode};

/// Field operations shared by the cyclotomic and generic scalars, so the
/// straightening engine can run over either.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;
    /// The parameter (v or ζ) raised to `k`.
    fn vpow_like(&self, k: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn mul_vpow(&self, k: i64) -> Self {
        self.mul(&self.vpow_like(k))
    }
}

/// Specialize v ↦ ζ_l.
pub fn specialize(x: &GenericScalar, l: u32) -> crate::error::Result<CycScalar> {
    x.specialize(l)
}
