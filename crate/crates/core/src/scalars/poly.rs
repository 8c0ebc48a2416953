//! Dense integer polynomials and Laurent polynomials in one variable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial with integer coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly(pub Vec<BigInt>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Poly {
        let mut p = Poly(vec![c]);
        p.trim();
        p
    }

    pub fn from_coeffs<I: IntoIterator<Item = i64>>(it: I) -> Poly {
        let mut p = Poly(it.into_iter().map(BigInt::from).collect());
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; -1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn lead(&self) -> &BigInt {
        self.0.last().expect("lead of zero polynomial")
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i);
            let b = o.0.get(i);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        let mut p = Poly(v);
        p.trim();
        p
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        let mut p = Poly(v);
        p.trim();
        p
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        let mut p = Poly(self.0.iter().map(|x| x * c).collect());
        p.trim();
        p
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide every coefficient by `c` (must divide exactly).
    pub fn div_scalar(&self, c: &BigInt) -> Poly {
        Poly(self.0.iter().map(|x| x / c).collect())
    }

    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        self.div_scalar(&g)
    }

    /// Pseudo-remainder of self by d: lc(d)^k · self mod d.
    fn prem(&self, d: &Poly) -> Poly {
        let mut r = self.clone();
        let dd = d.degree();
        let lc = d.lead().clone();
        while !r.is_zero() && r.degree() >= dd {
            let shift = (r.degree() - dd) as usize;
            let c = r.lead().clone();
            r = r.scale(&lc);
            let mut sub = vec![BigInt::zero(); shift];
            sub.extend(d.0.iter().map(|x| x * &c));
            r = r.sub(&Poly(sub));
        }
        r
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.primitive();
        let mut b = o.primitive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == 0 {
                return Poly::one();
            }
            let r = a.prem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Exact quotient self / d; panics if the division is not exact over Z.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Poly::zero();
        }
        let mut r = self.clone();
        let dd = d.degree() as usize;
        let lc = d.lead().clone();
        let mut q = vec![BigInt::zero(); (self.degree() - d.degree()).max(0) as usize + 1];
        while !r.is_zero() && r.degree() >= d.degree() {
            let shift = r.degree() as usize - dd;
            let (c, rem) = r.lead().div_rem(&lc);
            assert!(rem.is_zero(), "inexact polynomial division");
            let mut sub = vec![BigInt::zero(); shift];
            sub.extend(d.0.iter().map(|x| x * &c));
            q[shift] = c;
            r = r.sub(&Poly(sub));
        }
        assert!(r.is_zero(), "inexact polynomial division");
        let mut p = Poly(q);
        p.trim();
        p
    }

    /// Number of factors x dividing self (self nonzero).
    pub fn low_order(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn shift_down(&self, k: usize) -> Poly {
        Poly(self.0[k..].to_vec())
    }
}

/// Laurent polynomial v^shift · poly, with poly(0) ≠ 0 unless zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LPoly {
    pub shift: i64,
    pub poly: Poly,
}

impl LPoly {
    pub fn new(shift: i64, poly: Poly) -> LPoly {
        if poly.is_zero() {
            return LPoly { shift: 0, poly };
        }
        let k = poly.low_order();
        LPoly { shift: shift + k as i64, poly: poly.shift_down(k) }
    }

    pub fn zero() -> LPoly {
        LPoly { shift: 0, poly: Poly::zero() }
    }

    pub fn one() -> LPoly {
        LPoly { shift: 0, poly: Poly::one() }
    }

    pub fn int(n: i64) -> LPoly {
        LPoly::new(0, Poly::constant(BigInt::from(n)))
    }

    /// v^k
    pub fn monomial(k: i64) -> LPoly {
        LPoly { shift: k, poly: Poly::one() }
    }

    /// Σ c_e v^e from (exponent, coefficient) pairs.
    pub fn from_terms(terms: &[(i64, i64)]) -> LPoly {
        if terms.is_empty() {
            return LPoly::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for &(e, c) in terms {
            v[(e - lo) as usize] += c;
        }
        let mut p = Poly(v);
        p.trim();
        LPoly::new(lo, p)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, o: &LPoly) -> LPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.shift.min(o.shift);
        let a = pad(&self.poly, (self.shift - lo) as usize);
        let b = pad(&o.poly, (o.shift - lo) as usize);
        LPoly::new(lo, a.add(&b))
    }

    pub fn neg(&self) -> LPoly {
        LPoly { shift: self.shift, poly: self.poly.neg() }
    }

    pub fn sub(&self, o: &LPoly) -> LPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &LPoly) -> LPoly {
        LPoly::new(self.shift + o.shift, self.poly.mul(&o.poly))
    }

    /// Terms as (exponent, coefficient).
    pub fn terms(&self) -> Vec<(i64, BigInt)> {
        self.poly
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.shift + i as i64, c.clone()))
            .collect()
    }

    /// Substitute v ↦ v^d (d > 0).
    pub fn substitute_power(&self, d: i64) -> LPoly {
        assert!(d > 0);
        let t: Vec<(i64, BigInt)> = self.terms();
        if t.is_empty() {
            return LPoly::zero();
        }
        let lo = t.iter().map(|x| x.0 * d).min().unwrap();
        let hi = t.iter().map(|x| x.0 * d).max().unwrap();
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in t {
            v[(e * d - lo) as usize] += c;
        }
        LPoly::new(lo, Poly(v))
    }
}

fn pad(p: &Poly, k: usize) -> Poly {
    let mut v = vec![BigInt::zero(); k];
    v.extend(p.0.iter().cloned());
    Poly(v)
}
