//! The rational-function field Q(v), with specialization v ↦ ζ_l.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cyclo::{CycField, CycScalar};
use super::poly::{LPoly, Poly};
use super::Coeff;
use crate::error::{Error, Result};

/// A reduced fraction num/den of Laurent polynomials in v.
///
/// `den` is an ordinary polynomial with nonzero constant term and positive
/// leading coefficient, coprime to `num` (including integer content).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GenericScalar {
    num: LPoly,
    den: Poly,
}

impl GenericScalar {
    pub fn zero() -> Self {
        GenericScalar { num: LPoly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        GenericScalar { num: LPoly::one(), den: Poly::one() }
    }

    pub fn int(n: i64) -> Self {
        GenericScalar { num: LPoly::int(n), den: Poly::one() }
    }

    /// v^k
    pub fn vpow(k: i64) -> Self {
        GenericScalar { num: LPoly::monomial(k), den: Poly::one() }
    }

    pub fn from_lpoly(p: LPoly) -> Self {
        GenericScalar { num: p, den: Poly::one() }
    }

    pub fn numerator(&self) -> &LPoly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(num: LPoly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator in Q(v)");
        if num.is_zero() {
            return GenericScalar::zero();
        }
        let k = den.low_order();
        let mut den = den.shift_down(k);
        let mut shift = num.shift - k as i64;
        let mut np = num.poly;
        if den.degree() > 0 {
            let g = np.gcd(&den);
            if g.degree() > 0 {
                np = np.exact_div(&g);
                den = den.exact_div(&g);
            }
        }
        let mut c = np.content().gcd(&den.content());
        if den.lead().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            np = np.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        let lo = np.low_order();
        if lo > 0 {
            np = np.shift_down(lo);
            shift += lo as i64;
        }
        GenericScalar { num: LPoly { shift, poly: np }, den }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return GenericScalar { num: self.num.add(&o.num), den: Poly::one() };
        }
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        let n = self.num.mul(&LPoly::new(0, o.den.clone())).add(&o.num.mul(&LPoly::new(0, self.den.clone())));
        Self::reduce(n, self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Self {
        GenericScalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return GenericScalar { num: self.num.mul(&o.num), den: Poly::one() };
        }
        Self::reduce(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // (v^s p / d)^{-1} = v^{-s} d / p
        Some(Self::reduce(LPoly::new(-self.num.shift, self.den.clone()), self.num.poly.clone()))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }

    /// Image under v ↦ ζ_l.
    pub fn specialize(&self, l: u32) -> Result<CycScalar> {
        let f = CycField::get(l);
        let d = eval_poly(f, 0, &self.den);
        if d.is_zero() {
            return Err(Error::SpecializationPole(format!("denominator vanishes at order {}", l)));
        }
        let n = eval_poly(f, self.num.shift, &self.num.poly);
        Ok(n.div_ref(&d).expect("nonzero denominator"))
    }
}

fn eval_poly(f: &'static CycField, shift: i64, p: &Poly) -> CycScalar {
    let terms: Vec<(i64, BigInt)> = p
        .0
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (shift + i as i64, c.clone()))
        .collect();
    f.eval_terms(&terms)
}

/// Specialize a Laurent polynomial at ζ_l.
pub fn specialize_lpoly(p: &LPoly, l: u32) -> CycScalar {
    eval_poly(CycField::get(l), p.shift, &p.poly)
}

impl fmt::Debug for GenericScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GenericScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |t: Vec<(i64, BigInt)>| -> String {
            if t.is_empty() {
                return "0".into();
            }
            t.iter()
                .map(|(e, c)| match e {
                    0 => c.to_string(),
                    _ => format!("{}*v^{}", c, e),
                })
                .collect::<Vec<_>>()
                .join(" + ")
        };
        if self.den.is_one() {
            write!(f, "{}", show(self.num.terms()))
        } else {
            let dt = LPoly::new(0, self.den.clone()).terms();
            write!(f, "({})/({})", show(self.num.terms()), show(dt))
        }
    }
}

impl Coeff for GenericScalar {
    fn zero_like(&self) -> Self {
        GenericScalar::zero()
    }
    fn one_like(&self) -> Self {
        GenericScalar::one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        GenericScalar::int(n)
    }
    fn vpow_like(&self, k: i64) -> Self {
        GenericScalar::vpow(k)
    }
    fn is_zero(&self) -> bool {
        GenericScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        GenericScalar::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        GenericScalar::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        GenericScalar::mul(self, o)
    }
    fn neg(&self) -> Self {
        GenericScalar::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        GenericScalar::inv(self)
    }
    fn mul_vpow(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        GenericScalar { num: LPoly { shift: self.num.shift + k, poly: self.num.poly.clone() }, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> GenericScalar {
        GenericScalar::vpow(1)
    }

    #[test]
    fn fractions_reduce() {
        // (v^2 - 1)/(v - 1) = v + 1
        let a = GenericScalar::from_lpoly(LPoly::from_terms(&[(2, 1), (0, -1)]));
        let b = GenericScalar::from_lpoly(LPoly::from_terms(&[(1, 1), (0, -1)]));
        let q = a.div(&b).unwrap();
        assert!(q.is_laurent());
        assert_eq!(q, v().add(&GenericScalar::one()));
    }

    #[test]
    fn specialize_powers() {
        let x = GenericScalar::vpow(5);
        assert!(x.specialize(5).unwrap().is_one());
        let pole = GenericScalar::from_lpoly(LPoly::from_terms(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]))
            .inv()
            .unwrap();
        assert!(matches!(pole.specialize(5), Err(Error::SpecializationPole(_))));
    }

    #[test]
    fn inverse_of_v_minus_vinv() {
        let d = v().sub(&GenericScalar::vpow(-1));
        let s = d.inv().unwrap().specialize(5).unwrap();
        let f = CycField::get(5);
        let dz = f.zeta_pow(1) - f.zeta_pow(-1);
        assert!((s * dz).is_one());
    }
}
