//! Shared shape of the two Hopf algebras the cohomology runs on: the small
//! algebra u_q and the truncated divided-power algebra. Both are C[G] ⋉ A
//! with A a braided (K-dropped) bialgebra in the Q-grading.

use std::sync::Arc;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::plus::acc_add;
use super::uq::{KVec, Tensor2};
use crate::rootdata::RootDatum;
use crate::scalars::{CycField, CycScalar};

pub type ETerms = Arc<Vec<(u64, CycScalar)>>;
pub type ETerms2 = Arc<Vec<(u64, u64, CycScalar)>>;

pub trait GradedSide: Sync {
    fn rd(&self) -> &RootDatum;
    fn field(&self) -> &'static CycField;
    fn e_part(&self, m: u64) -> u64;
    fn k_part(&self, m: u64) -> KVec;
    /// K^k E^e packed.
    fn mono(&self, k: &[i64], e: u64) -> u64;
    /// χ(E^e) = S·|e|
    fn chi(&self, e: u64) -> KVec;
    fn e_degree(&self, e: u64) -> SmallVec<[i64; 4]>;
    /// Basis of A in a Q-degree.
    fn e_basis(&self, deg: &[i64]) -> Vec<u64>;
    /// E^a E^b in A.
    fn e_mul(&self, a: u64, b: u64) -> ETerms;
    /// Braided coproduct Δ̄ of A: Δ(E^e) = Σ c K^{|e2|}E^{e1} ⊗ E^{e2}.
    fn e_cop(&self, e: u64) -> ETerms2;

    fn rank(&self) -> usize {
        self.rd().rank
    }

    fn l(&self) -> u32 {
        self.rd().l
    }

    /// (K^a E^m)(K^b E^n) = q^{−(b,|m|)} K^{a+b} E^m E^n
    fn mul_full(&self, x: u64, y: u64) -> Vec<(u64, CycScalar)> {
        let (ex, ey) = (self.e_part(x), self.e_part(y));
        let (ka, kb) = (self.k_part(x), self.k_part(y));
        let e = -dot(&kb, &self.chi(ex));
        let k: KVec = ka.iter().zip(&kb).map(|(a, b)| a + b).collect();
        let kk = self.mono(&k, 0);
        self.e_mul(ex, ey).iter().map(|(p, c)| (kk | *p, c.mul_zeta(e))).collect()
    }

    /// Δ(K^a E^m) = Σ c K^{a+|m2|} E^{m1} ⊗ K^a E^{m2}
    fn cop_full(&self, m: u64) -> Vec<(u64, u64, CycScalar)> {
        let e = self.e_part(m);
        let a = self.k_part(m);
        self.e_cop(e)
            .iter()
            .map(|(m1, m2, c)| {
                let d2 = self.e_degree(*m2);
                let k1: KVec = a.iter().zip(&d2).map(|(x, y)| x + y).collect();
                (self.mono(&k1, *m1), self.mono(&a, *m2), c.clone())
            })
            .collect()
    }

    /// B^{-1}(y⊗z)B for B = Σ ζ^{aᵀMb} P_a⊗P_b (B(y⊗z)B^{-1} if `inverse`).
    fn conj_term(&self, y: u64, z: u64, form: &[Vec<i64>], inverse: bool) -> (u64, u64, i64) {
        let s = if inverse { -1 } else { 1 };
        let r = self.rank();
        let c1 = self.chi(self.e_part(y));
        let c2 = self.chi(self.e_part(z));
        let mut w1: KVec = SmallVec::from_elem(0, r);
        let mut w2: KVec = SmallVec::from_elem(0, r);
        let mut x = 0i64;
        for i in 0..r {
            for j in 0..r {
                let mij = s * form[i][j];
                w1[i] -= mij * c2[j];
                w2[j] -= mij * c1[i];
                x += c1[i] * mij * c2[j];
            }
        }
        let e = -x - dot(&w1, &c1) - dot(&w2, &c2);
        let k1: KVec = self.k_part(y).iter().zip(&w1).map(|(a, b)| a + b).collect();
        let k2: KVec = self.k_part(z).iter().zip(&w2).map(|(a, b)| a + b).collect();
        (self.mono(&k1, self.e_part(y)), self.mono(&k2, self.e_part(z)), e)
    }

    /// Δ^B of a monomial (plain Δ if the form is None).
    fn cop_full_b(&self, m: u64, form: Option<&[Vec<i64>]>) -> Vec<(u64, u64, CycScalar)> {
        let t = self.cop_full(m);
        match form {
            None => t,
            Some(form) => t
                .into_iter()
                .map(|(y, z, c)| {
                    let (a, b, e) = self.conj_term(y, z, form, false);
                    (a, b, c.mul_zeta(e))
                })
                .collect(),
        }
    }

    /// Full basis K^k E^e of a Q-degree.
    fn full_basis(&self, deg: &[i64]) -> Vec<u64> {
        let es = self.e_basis(deg);
        let mut out = Vec::new();
        for k in k_vectors(self.rank(), self.l()) {
            for &e in &es {
                out.push(self.mono(&k, e));
            }
        }
        out
    }

    fn tensor_mul(&self, x: &Tensor2, y: &Tensor2) -> Tensor2 {
        let mut acc = FxHashMap::default();
        for ((a, b), s) in x {
            for ((c, d), t) in y {
                let p1 = self.mul_full(*a, *c);
                if p1.is_empty() {
                    continue;
                }
                let p2 = self.mul_full(*b, *d);
                let st = s * t;
                for (m1, c1) in &p1 {
                    let f = &st * c1;
                    for (m2, c2) in &p2 {
                        acc_add(&mut acc, (*m1, *m2), &f * c2);
                    }
                }
            }
        }
        acc
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// All vectors in (Z/l)^rank, first coordinate most significant.
pub fn k_vectors(rank: usize, l: u32) -> Vec<KVec> {
    let mut out: Vec<KVec> = vec![SmallVec::new()];
    for _ in 0..rank {
        let mut next = Vec::new();
        for v in &out {
            for a in 0..l as i64 {
                let mut w = v.clone();
                w.push(a);
                next.push(w);
            }
        }
        out = next;
    }
    out
}
