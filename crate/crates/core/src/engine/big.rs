//! The degree-truncated divided-power algebra U_q(b) at ζ.
//!
//! Structure constants are computed in the generic positive part over Q(v)
//! (heights above the truncation are dropped), rewritten in the divided-power
//! basis E^{(m)} = Π_r E_r^{m_r}/[m_r]_{q_r}!, and only then specialized, so no
//! division by [l]! ever happens at ζ.

use std::sync::{Arc, RwLock};

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::mono::Packing;
use super::plus::PlusAlgebra;
use super::side::{ETerms, ETerms2, GradedSide};
use super::uq::KVec;
use crate::error::{Error, Result};
use crate::rootdata::RootDatum;
use crate::scalars::{qfactorial, CycField, CycScalar, GenericScalar};

pub struct BigAlgebra {
    pub rd: RootDatum,
    pub l: u32,
    pub f: &'static CycField,
    pub gen: PlusAlgebra<GenericScalar>,
    pub max_height: i64,
    pub kp: Packing,
    root_chi: Vec<KVec>,
    mul_cache: RwLock<FxHashMap<(u64, u64), ETerms>>,
    cop_cache: RwLock<FxHashMap<u64, ETerms2>>,
}

impl BigAlgebra {
    pub fn new(rd: &RootDatum, max_height: i64) -> Result<BigAlgebra> {
        if !rd.admissible_order() {
            return Err(Error::Config(format!("order {} is not admissible for {}", rd.l, rd.label())));
        }
        let gen = PlusAlgebra::new(rd, GenericScalar::one(), None, Some(max_height), |g| Ok(g.clone()))?;
        let kp = Packing::new(rd.rank, (rd.l - 1) as u64, gen.pk.end())?;
        let root_chi = rd
            .roots
            .iter()
            .map(|r| (0..rd.rank).map(|i| rd.sym[i].iter().zip(&r.deg).map(|(a, b)| a * b).sum()).collect())
            .collect();
        Ok(BigAlgebra {
            rd: rd.clone(),
            l: rd.l,
            f: CycField::get(rd.l),
            gen,
            max_height,
            kp,
            root_chi,
            mul_cache: RwLock::new(FxHashMap::default()),
            cop_cache: RwLock::new(FxHashMap::default()),
        })
    }

    /// Default truncation 2l + 2.
    pub fn default_height(l: u32) -> i64 {
        2 * l as i64 + 2
    }

    /// Π_r [m_r]_{q_r}!
    pub fn fact(&self, m: u64) -> GenericScalar {
        let mut acc = GenericScalar::one();
        for r in 0..self.gen.nroots() {
            let n = self.gen.pk.get(m, r);
            if n > 1 {
                acc = acc.mul(&GenericScalar::from_lpoly(qfactorial(n, self.rd.root_d(r))));
            }
        }
        acc
    }

    fn specialize(&self, g: &GenericScalar) -> Result<CycScalar> {
        g.specialize(self.l)
            .map_err(|e| Error::Engine(format!("divided-power structure constant leaves the integral form: {}", e)))
    }

    /// E^{(m)} E^{(n)} in the divided-power basis.
    pub fn try_mul(&self, m: u64, n: u64) -> Result<ETerms> {
        if let Some(v) = self.mul_cache.read().unwrap().get(&(m, n)) {
            return Ok(v.clone());
        }
        let den = self.fact(m).mul(&self.fact(n));
        let mut out = Vec::new();
        for (p, c) in self.gen.mul_mono(m, n).iter() {
            let g = c.mul(&self.fact(*p)).div(&den).expect("nonzero factorial");
            let s = self.specialize(&g)?;
            if !s.is_zero() {
                out.push((*p, s));
            }
        }
        let out = Arc::new(out);
        self.mul_cache.write().unwrap().insert((m, n), out.clone());
        Ok(out)
    }

    /// Braided coproduct of E^{(m)} in the divided-power basis.
    pub fn try_cop(&self, m: u64) -> Result<ETerms2> {
        if let Some(v) = self.cop_cache.read().unwrap().get(&m) {
            return Ok(v.clone());
        }
        let den = self.fact(m);
        let mut out = Vec::new();
        for (a, b, c) in self.gen.coproduct(m).iter() {
            let g = c.mul(&self.fact(*a)).mul(&self.fact(*b)).div(&den).expect("nonzero factorial");
            let s = self.specialize(&g)?;
            if !s.is_zero() {
                out.push((*a, *b, s));
            }
        }
        let out = Arc::new(out);
        self.cop_cache.write().unwrap().insert(m, out.clone());
        Ok(out)
    }

    /// Check every product and coproduct of basis monomials up to height h
    /// specializes.
    pub fn validate(&self, h: i64) -> Result<()> {
        let ms = self.gen.monomials_up_to_height(h.min(self.max_height));
        for &m in &ms {
            self.try_cop(m)?;
            for &n in &ms {
                if self.gen.height(m) + self.gen.height(n) <= self.max_height {
                    self.try_mul(m, n)?;
                }
            }
        }
        Ok(())
    }

    pub fn height(&self, e: u64) -> i64 {
        self.gen.height(e)
    }

    /// Image of a small-algebra PBW monomial E^m (exponents < l): [m]! E^{(m)}.
    pub fn from_small(&self, small: &PlusAlgebra<CycScalar>, e: u64) -> (u64, CycScalar) {
        let ex = small.exps(e);
        let m = self.gen.pack(&ex);
        let c = self.specialize(&self.fact(m)).expect("factorials below l specialize");
        (m, c)
    }

    /// Inverse of `from_small` on monomials with all exponents < l.
    pub fn to_small(&self, small: &PlusAlgebra<CycScalar>, m: u64) -> Option<(u64, CycScalar)> {
        let ex = self.gen.exps(m);
        if ex.iter().any(|&x| x >= self.l) {
            return None;
        }
        let c = self.specialize(&self.fact(m)).ok()?.inv()?;
        Some((small.pack(&ex), c))
    }
}

impl GradedSide for BigAlgebra {
    fn rd(&self) -> &RootDatum {
        &self.rd
    }
    fn field(&self) -> &'static CycField {
        self.f
    }
    fn e_part(&self, m: u64) -> u64 {
        m & ((1u64 << self.kp.offset) - 1)
    }
    fn k_part(&self, m: u64) -> KVec {
        (0..self.rd.rank).map(|i| self.kp.get(m, i) as i64).collect()
    }
    fn mono(&self, k: &[i64], e: u64) -> u64 {
        let l = self.l as i64;
        let mut m = e;
        for (i, &a) in k.iter().enumerate() {
            m = self.kp.set(m, i, a.rem_euclid(l) as u32);
        }
        m
    }
    fn chi(&self, e: u64) -> KVec {
        let mut c: KVec = SmallVec::from_elem(0, self.rd.rank);
        for r in 0..self.gen.nroots() {
            let n = self.gen.pk.get(e, r) as i64;
            if n != 0 {
                for (x, y) in c.iter_mut().zip(&self.root_chi[r]) {
                    *x += n * y;
                }
            }
        }
        c
    }
    fn e_degree(&self, e: u64) -> SmallVec<[i64; 4]> {
        self.gen.degree(e)
    }
    fn e_basis(&self, deg: &[i64]) -> Vec<u64> {
        self.gen.basis(deg)
    }
    fn e_mul(&self, a: u64, b: u64) -> ETerms {
        self.try_mul(a, b).unwrap_or_else(|e| panic!("{}", e))
    }
    fn e_cop(&self, e: u64) -> ETerms2 {
        self.try_cop(e).unwrap_or_else(|e| panic!("{}", e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{qbinom, specialize_lpoly};

    #[test]
    fn a1_divided_powers() {
        let rd = RootDatum::from_label("A1", 5).unwrap();
        let big = BigAlgebra::new(&rd, 12).unwrap();
        let e = |n: u32| big.gen.pack(&[n]);
        // E^{(a)}E^{(b)} = [a+b choose a] E^{(a+b)}
        for (a, b) in [(2, 3), (1, 4), (3, 4), (5, 5)] {
            let t = big.try_mul(e(a), e(b)).unwrap();
            let c = specialize_lpoly(&qbinom(a + b, a, 1).unwrap(), 5);
            if c.is_zero() {
                assert!(t.is_empty());
            } else {
                assert_eq!(t.as_slice(), &[(e(a + b), c)]);
            }
        }
        // Δ(E^{(5)}) = Σ q^{−t(5−t)} K^t E^{(5−t)} ⊗ E^{(t)}
        let cop = big.try_cop(e(5)).unwrap();
        assert_eq!(cop.len(), 6);
        for (a, b, c) in cop.iter() {
            let t = big.gen.exps(*b)[0] as i64;
            assert_eq!(big.gen.exps(*a)[0] as i64, 5 - t);
            assert_eq!(*c, big.f.zeta_pow(-t * (5 - t)));
        }
    }

    #[test]
    fn a2_integral() {
        let rd = RootDatum::from_label("A2", 5).unwrap();
        let big = BigAlgebra::new(&rd, 8).unwrap();
        big.validate(8).unwrap();
    }
}
