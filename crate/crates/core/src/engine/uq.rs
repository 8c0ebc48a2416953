//! The small quantum Borel algebra u_q(b) at a primitive l-th root of unity.
//!
//! Basis: K^a E^m with a ∈ (Z/l)^rank and E^m an ordered PBW monomial with all
//! exponents < l. Packed as one u64: E exponents in the low bits, K exponents
//! above them.
//!
//! Conventions: K_α E_β = q^{(α,β)} E_β K_α, Δ(E_α) = E_α⊗1 + K_α⊗E_α,
//! S(E_α) = −K_α^{-1}E_α.

use std::sync::{Arc, RwLock};

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::mono::Packing;
use super::plus::{acc_add, PlusAlgebra};
use super::side::{ETerms, ETerms2, GradedSide};
use crate::error::{Error, Result};
use crate::rootdata::RootDatum;
use crate::scalars::{CycField, CycScalar};

pub type Elem = FxHashMap<u64, CycScalar>;
pub type Tensor2 = FxHashMap<(u64, u64), CycScalar>;
pub type Tensor3 = FxHashMap<(u64, u64, u64), CycScalar>;
pub type KVec = SmallVec<[i64; 4]>;

/// Which coproduct to use: the plain one or Δ^B = B^{-1} Δ(·) B for a form M.
#[derive(Clone, Copy, Debug)]
pub enum Cop<'a> {
    Plain,
    Twisted(&'a [Vec<i64>]),
}

impl<'a> Cop<'a> {
    pub fn form(&self) -> Option<&'a [Vec<i64>]> {
        match self {
            Cop::Plain => None,
            Cop::Twisted(m) => {
                if m.iter().all(|r| r.iter().all(|&x| x == 0)) {
                    None
                } else {
                    Some(m)
                }
            }
        }
    }
}

pub struct Uq {
    pub rd: RootDatum,
    pub l: u32,
    pub f: &'static CycField,
    pub plus: PlusAlgebra<CycScalar>,
    pub kp: Packing,
    /// χ_r = S·deg(E_r), the weight character of each root vector.
    root_chi: Vec<KVec>,
    anti_cache: RwLock<FxHashMap<u64, Arc<Elem>>>,
}

impl Uq {
    pub fn new(rd: &RootDatum) -> Result<Uq> {
        if !rd.admissible_order() {
            return Err(Error::Config(format!("order {} is not admissible for {}", rd.l, rd.label())));
        }
        let l = rd.l;
        let f = CycField::get(l);
        let plus = PlusAlgebra::new(rd, f.one(), Some(l), None, |g| {
            g.specialize(l).map_err(|e| Error::Engine(format!("structure constant: {}", e)))
        })?;
        let kp = Packing::new(rd.rank, (l - 1) as u64, plus.pk.end())?;
        let root_chi = rd
            .roots
            .iter()
            .map(|r| (0..rd.rank).map(|i| rd.form(&unit(rd.rank, i), &r.deg)).collect())
            .collect();
        Ok(Uq { rd: rd.clone(), l, f, plus, kp, root_chi, anti_cache: RwLock::new(FxHashMap::default()) })
    }

    pub fn from_label(label: &str, l: u32) -> Result<Uq> {
        Uq::new(&RootDatum::from_label(label, l)?)
    }

    pub fn rank(&self) -> usize {
        self.rd.rank
    }

    pub fn one_elem(&self) -> Elem {
        let mut e = FxHashMap::default();
        e.insert(0, self.f.one());
        e
    }

    #[inline]
    pub fn e_part(&self, m: u64) -> u64 {
        m & ((1u64 << self.kp.offset) - 1)
    }

    #[inline]
    pub fn k_part(&self, m: u64) -> KVec {
        (0..self.rd.rank).map(|i| self.kp.get(m, i) as i64).collect()
    }

    /// K^a E^m packed.
    pub fn mono(&self, k: &[i64], e: u64) -> u64 {
        let l = self.l as i64;
        let mut m = e;
        for (i, &a) in k.iter().enumerate() {
            m = self.kp.set(m, i, a.rem_euclid(l) as u32);
        }
        m
    }

    /// K^a
    pub fn k_mono(&self, k: &[i64]) -> u64 {
        self.mono(k, 0)
    }

    /// E_r (root index r)
    pub fn e_root(&self, r: usize) -> u64 {
        self.plus.root_mono(r)
    }

    /// E_α for simple root i
    pub fn e_simple(&self, i: usize) -> u64 {
        self.plus.root_mono(self.rd.simple[i])
    }

    /// χ(E^m) = S·|m|
    pub fn chi(&self, e: u64) -> KVec {
        let mut c: KVec = SmallVec::from_elem(0, self.rd.rank);
        for r in 0..self.plus.nroots() {
            let n = self.plus.pk.get(e, r) as i64;
            if n != 0 {
                for (x, y) in c.iter_mut().zip(&self.root_chi[r]) {
                    *x += n * y;
                }
            }
        }
        c
    }

    /// Q-degree of a monomial (K part contributes 0).
    pub fn degree(&self, m: u64) -> KVec {
        self.plus.degree(self.e_part(m))
    }

    pub fn height(&self, m: u64) -> i64 {
        self.plus.height(self.e_part(m))
    }

    fn dot(a: &[i64], b: &[i64]) -> i64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    /// K-part of m shifted by the K-part of k; the E part of m is kept.
    #[inline]
    fn k_shift(&self, m: u64, k: u64) -> u64 {
        let mut out = m;
        for i in 0..self.rd.rank {
            out = self.kp.set(out, i, (self.kp.get(m, i) + self.kp.get(k, i)) % self.l);
        }
        out
    }

    /// e with (K^aE^m)(K^b) = ζ^e K^{a+b}E^m, given χ(E^m).
    #[inline]
    fn k_phase(&self, chi_m: &[i64], kb: u64) -> i64 {
        -(0..self.rd.rank).map(|i| self.kp.get(kb, i) as i64 * chi_m[i]).sum::<i64>()
    }

    fn is_group_elem(&self, u: &Elem) -> bool {
        u.keys().all(|&m| self.e_part(m) == 0)
    }

    fn is_group2(&self, t: &Tensor2) -> bool {
        t.keys().all(|&(a, b)| self.e_part(a) == 0 && self.e_part(b) == 0)
    }

    /// G · Y for G in the group algebra of the torus squared.
    fn mul2_group_left(&self, g: &Tensor2, y: &Tensor2) -> Tensor2 {
        let mut acc = FxHashMap::default();
        for ((a, b), s) in g {
            for ((c, d), t) in y {
                acc_add(&mut acc, (self.k_shift(*c, *a), self.k_shift(*d, *b)), s * t);
            }
        }
        acc
    }

    fn mul2_group_right(&self, x: &Tensor2, g: &Tensor2) -> Tensor2 {
        let mut acc = FxHashMap::default();
        for ((a, b), s) in x {
            let (ca, cb) = (self.chi(self.e_part(*a)), self.chi(self.e_part(*b)));
            for ((c, d), t) in g {
                let e = self.k_phase(&ca, *c) + self.k_phase(&cb, *d);
                acc_add(&mut acc, (self.k_shift(*a, *c), self.k_shift(*b, *d)), (s * t).mul_zeta(e));
            }
        }
        acc
    }

    /// X · (u ⊗ 1) or X · (1 ⊗ u) for u in the group algebra.
    fn mul2_group_side(&self, x: &Tensor2, u: &Elem, right: bool) -> Tensor2 {
        let mut acc = FxHashMap::default();
        for ((a, b), s) in x {
            let m = if right { *b } else { *a };
            let cm = self.chi(self.e_part(m));
            for (c, t) in u {
                let p = self.k_shift(m, *c);
                let key = if right { (*a, p) } else { (p, *b) };
                acc_add(&mut acc, key, (s * t).mul_zeta(self.k_phase(&cm, *c)));
            }
        }
        acc
    }

    /// (K^a E^m)(K^b E^n) = q^{−(b,|m|)} K^{a+b} E^m E^n
    pub fn mul_mono(&self, x: u64, y: u64) -> Vec<(u64, CycScalar)> {
        let (ex, ey) = (self.e_part(x), self.e_part(y));
        let (ka, kb) = (self.k_part(x), self.k_part(y));
        let e = -Self::dot(&kb, &self.chi(ex));
        let k: KVec = ka.iter().zip(&kb).map(|(a, b)| a + b).collect();
        let kk = self.mono(&k, 0);
        self.plus.mul_mono(ex, ey).iter().map(|(p, c)| (kk | *p, c.mul_zeta(e))).collect()
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let mut acc = FxHashMap::default();
        for (m, a) in x {
            for (n, b) in y {
                let ab = a * b;
                for (p, c) in self.mul_mono(*m, *n) {
                    acc_add(&mut acc, p, &ab * &c);
                }
            }
        }
        acc
    }

    pub fn counit(&self, x: &Elem) -> CycScalar {
        let mut s = self.f.zero();
        for (m, c) in x {
            if self.e_part(*m) == 0 {
                s = s + c.clone();
            }
        }
        s
    }

    /// Δ of a basis monomial (plain coproduct).
    pub fn coproduct_mono(&self, m: u64) -> Vec<(u64, u64, CycScalar)> {
        let e = self.e_part(m);
        let a = self.k_part(m);
        self.plus
            .coproduct(e)
            .iter()
            .map(|(m1, m2, c)| {
                let d2 = self.plus.degree(*m2);
                let k1: KVec = a.iter().zip(&d2).map(|(x, y)| x + y).collect();
                (self.mono(&k1, *m1), self.mono(&a, *m2), c.clone())
            })
            .collect()
    }

    /// B^{-1}(y⊗z)B for B = Σ ζ^{aᵀMb} P_a⊗P_b (or B(y⊗z)B^{-1} if `inverse`).
    pub fn conj_term(&self, y: u64, z: u64, form: &[Vec<i64>], inverse: bool) -> (u64, u64, i64) {
        let s = if inverse { -1 } else { 1 };
        let r = self.rd.rank;
        let c1 = self.chi(self.e_part(y));
        let c2 = self.chi(self.e_part(z));
        // w1 = −Mχ2, w2 = −Mᵀχ1
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
        let e = -x - Self::dot(&w1, &c1) - Self::dot(&w2, &c2);
        let k1: KVec = self.k_part(y).iter().zip(&w1).map(|(a, b)| a + b).collect();
        let k2: KVec = self.k_part(z).iter().zip(&w2).map(|(a, b)| a + b).collect();
        (self.mono(&k1, self.e_part(y)), self.mono(&k2, self.e_part(z)), e)
    }

    pub fn conj(&self, t: &Tensor2, form: &[Vec<i64>], inverse: bool) -> Tensor2 {
        let mut out = FxHashMap::default();
        for ((y, z), c) in t {
            let (a, b, e) = self.conj_term(*y, *z, form, inverse);
            acc_add(&mut out, (a, b), c.mul_zeta(e));
        }
        out
    }

    pub fn coproduct_mono_cop(&self, m: u64, cop: Cop) -> Vec<(u64, u64, CycScalar)> {
        let t = self.coproduct_mono(m);
        match cop.form() {
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

    pub fn coproduct(&self, x: &Elem, cop: Cop) -> Tensor2 {
        let mut acc = FxHashMap::default();
        for (m, a) in x {
            for (y, z, c) in self.coproduct_mono_cop(*m, cop) {
                acc_add(&mut acc, (y, z), a * &c);
            }
        }
        acc
    }

    /// S(E_r) for a root vector, by the bracket recursion.
    fn antipode_root(&self, r: usize) -> Elem {
        match self.rd.roots[r].split {
            None => {
                let i = self.rd.roots[r].word[0] as usize;
                let mut k: KVec = SmallVec::from_elem(0, self.rd.rank);
                k[i] = -1;
                let mut e = FxHashMap::default();
                e.insert(self.mono(&k, self.plus.root_mono(r)), self.f.from_int(-1));
                e
            }
            Some((a, b)) => {
                let (sa, sb) = (self.antipode_root(a), self.antipode_root(b));
                let c = self.rd.form(&self.rd.roots[a].deg, &self.rd.roots[b].deg);
                let mut out = self.mul(&sb, &sa);
                for (k, v) in self.mul(&sa, &sb) {
                    acc_add(&mut out, k, v.mul_zeta(c).neg_ref());
                }
                out
            }
        }
    }

    fn antipode_e(&self, e: u64) -> Arc<Elem> {
        if let Some(v) = self.anti_cache.read().unwrap().get(&e) {
            return v.clone();
        }
        let res = if e == 0 {
            self.one_elem()
        } else {
            let s = self.plus.pk.last_nonzero(e).unwrap();
            let rest = e - self.plus.pk.unit(s);
            // S(E^{rest} E_s) = S(E_s) S(E^{rest})
            let sr = if rest == 0 { self.one_elem() } else { (*self.antipode_e(rest)).clone() };
            self.mul(&self.antipode_root(s), &sr)
        };
        let res = Arc::new(res);
        self.anti_cache.write().unwrap().insert(e, res.clone());
        res
    }

    pub fn antipode(&self, x: &Elem) -> Elem {
        let mut acc = FxHashMap::default();
        for (m, a) in x {
            let k: KVec = self.k_part(*m).iter().map(|v| -v).collect();
            let mut kinv = FxHashMap::default();
            kinv.insert(self.k_mono(&k), a.clone());
            for (p, c) in self.mul(&self.antipode_e(self.e_part(*m)), &kinv) {
                acc_add(&mut acc, p, c);
            }
        }
        acc
    }

    /// Multiply tensors componentwise: (a⊗b)(c⊗d) = ac⊗bd.
    pub fn mul2(&self, x: &Tensor2, y: &Tensor2) -> Tensor2 {
        if self.is_group2(x) {
            return self.mul2_group_left(x, y);
        }
        if self.is_group2(y) {
            return self.mul2_group_right(x, y);
        }
        let mut acc = FxHashMap::default();
        for ((a, b), s) in x {
            for ((c, d), t) in y {
                let p1 = self.mul_mono(*a, *c);
                if p1.is_empty() {
                    continue;
                }
                let p2 = self.mul_mono(*b, *d);
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

    pub fn mul3(&self, x: &Tensor3, y: &Tensor3) -> Tensor3 {
        let mut acc = FxHashMap::default();
        for ((a, b, c), s) in x {
            for ((d, e, g), t) in y {
                let p1 = self.mul_mono(*a, *d);
                if p1.is_empty() {
                    continue;
                }
                let p2 = self.mul_mono(*b, *e);
                if p2.is_empty() {
                    continue;
                }
                let p3 = self.mul_mono(*c, *g);
                let st = s * t;
                for (m1, c1) in &p1 {
                    for (m2, c2) in &p2 {
                        let f = &(&st * c1) * c2;
                        for (m3, c3) in &p3 {
                            acc_add(&mut acc, (*m1, *m2, *m3), &f * c3);
                        }
                    }
                }
            }
        }
        acc
    }

    /// X · (u ⊗ 1)
    pub fn mul2_right_left(&self, x: &Tensor2, u: &Elem) -> Tensor2 {
        if self.is_group_elem(u) {
            return self.mul2_group_side(x, u, false);
        }
        let mut acc = FxHashMap::default();
        for ((a, b), s) in x {
            for (c, t) in u {
                let st = s * t;
                for (m, cc) in self.mul_mono(*a, *c) {
                    acc_add(&mut acc, (m, *b), &st * &cc);
                }
            }
        }
        acc
    }

    /// X · (1 ⊗ u)
    pub fn mul2_right_right(&self, x: &Tensor2, u: &Elem) -> Tensor2 {
        if self.is_group_elem(u) {
            return self.mul2_group_side(x, u, true);
        }
        let mut acc = FxHashMap::default();
        for ((a, b), s) in x {
            for (c, t) in u {
                let st = s * t;
                for (m, cc) in self.mul_mono(*b, *c) {
                    acc_add(&mut acc, (*a, m), &st * &cc);
                }
            }
        }
        acc
    }

    /// (Δ' ⊗ 1)(J)
    pub fn cop_left(&self, j: &Tensor2, cop: Cop) -> Tensor3 {
        let mut acc = FxHashMap::default();
        for ((a, b), s) in j {
            for (x, y, c) in self.coproduct_mono_cop(*a, cop) {
                acc_add(&mut acc, (x, y, *b), s * &c);
            }
        }
        acc
    }

    /// (1 ⊗ Δ')(J)
    pub fn cop_right(&self, j: &Tensor2, cop: Cop) -> Tensor3 {
        let mut acc = FxHashMap::default();
        for ((a, b), s) in j {
            for (x, y, c) in self.coproduct_mono_cop(*b, cop) {
                acc_add(&mut acc, (*a, x, y), s * &c);
            }
        }
        acc
    }

    /// All basis monomials (l^{rank + |Φ+|} of them).
    pub fn basis(&self) -> Vec<u64> {
        let es = self.plus.monomials_up_to_height(i64::MAX / 4);
        let ks = self.k_vectors();
        let mut out = Vec::with_capacity(es.len() * ks.len());
        for k in &ks {
            for &e in &es {
                out.push(self.mono(k, e));
            }
        }
        out
    }

    /// All K exponent vectors in (Z/l)^rank.
    pub fn k_vectors(&self) -> Vec<KVec> {
        let mut out: Vec<KVec> = vec![SmallVec::new()];
        for _ in 0..self.rd.rank {
            let mut next = Vec::new();
            for v in &out {
                for a in 0..self.l as i64 {
                    let mut w = v.clone();
                    w.push(a);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    /// Basis of the degree-γ component (u_q)_γ.
    pub fn basis_of_degree(&self, deg: &[i64]) -> Vec<u64> {
        let es = self.plus.basis(deg);
        let mut out = Vec::new();
        for k in self.k_vectors() {
            for &e in &es {
                out.push(self.mono(&k, e));
            }
        }
        out
    }

    /// Top height of u_q^+: (l−1) Σ_{μ∈Φ+} |μ|.
    pub fn top_height(&self) -> i64 {
        (self.l as i64 - 1) * self.rd.total_root_height()
    }

    pub fn elem_from(&self, terms: &[(u64, CycScalar)]) -> Elem {
        let mut e = FxHashMap::default();
        for (m, c) in terms {
            acc_add(&mut e, *m, c.clone());
        }
        e
    }

    pub fn tensor_one(&self) -> Tensor2 {
        let mut t = FxHashMap::default();
        t.insert((0, 0), self.f.one());
        t
    }
}

impl GradedSide for Uq {
    fn rd(&self) -> &RootDatum {
        &self.rd
    }
    fn field(&self) -> &'static CycField {
        self.f
    }
    fn e_part(&self, m: u64) -> u64 {
        Uq::e_part(self, m)
    }
    fn k_part(&self, m: u64) -> KVec {
        Uq::k_part(self, m)
    }
    fn mono(&self, k: &[i64], e: u64) -> u64 {
        Uq::mono(self, k, e)
    }
    fn chi(&self, e: u64) -> KVec {
        Uq::chi(self, e)
    }
    fn e_degree(&self, e: u64) -> SmallVec<[i64; 4]> {
        self.plus.degree(e)
    }
    fn e_basis(&self, deg: &[i64]) -> Vec<u64> {
        self.plus.basis(deg)
    }
    fn e_mul(&self, a: u64, b: u64) -> ETerms {
        self.plus.mul_mono(a, b)
    }
    fn e_cop(&self, e: u64) -> ETerms2 {
        self.plus.coproduct(e)
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Σ c·x into acc.
pub fn add_scaled<K: std::hash::Hash + Eq + Copy>(
    acc: &mut FxHashMap<K, CycScalar>,
    x: &FxHashMap<K, CycScalar>,
    c: &CycScalar,
) {
    for (k, v) in x {
        acc_add(acc, *k, v * c);
    }
}

pub fn sub_maps<K: std::hash::Hash + Eq + Copy>(
    x: &FxHashMap<K, CycScalar>,
    y: &FxHashMap<K, CycScalar>,
) -> FxHashMap<K, CycScalar> {
    let mut acc = x.clone();
    for (k, v) in y {
        acc_add(&mut acc, *k, v.neg_ref());
    }
    acc
}

/// 1 ⊗ J
pub fn one_left(j: &Tensor2) -> Tensor3 {
    j.iter().map(|((a, b), c)| ((0, *a, *b), c.clone())).collect()
}

/// J ⊗ 1
pub fn one_right(j: &Tensor2) -> Tensor3 {
    j.iter().map(|((a, b), c)| ((*a, *b, 0), c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assoc_check(uq: &Uq) {
        let b = uq.basis();
        let pick = |i: usize| b[(i * 7919) % b.len()];
        for i in 0..40 {
            let (x, y, z) = (pick(i), pick(i + 13), pick(i + 101));
            let ex = uq.elem_from(&[(x, uq.f.one())]);
            let ey = uq.elem_from(&[(y, uq.f.one())]);
            let ez = uq.elem_from(&[(z, uq.f.one())]);
            assert_eq!(uq.mul(&uq.mul(&ex, &ey), &ez), uq.mul(&ex, &uq.mul(&ey, &ez)));
        }
    }

    #[test]
    fn a1_basics() {
        let uq = Uq::from_label("A1", 5).unwrap();
        assert_eq!(uq.basis().len(), 25);
        let e = uq.e_simple(0);
        let e2 = uq.elem_from(&[(e * 2, uq.f.one())]);
        let e3 = uq.elem_from(&[(e * 3, uq.f.one())]);
        assert!(uq.mul(&e2, &e3).is_empty());
        assert_eq!(uq.mul_mono(uq.k_mono(&[4]), uq.k_mono(&[1])), vec![(0, uq.f.one())]);
        assoc_check(&uq);
    }

    #[test]
    fn a2_serre_and_assoc() {
        let uq = Uq::from_label("A2", 5).unwrap();
        assert_eq!(uq.basis().len(), 3125);
        let e1 = uq.elem_from(&[(uq.e_simple(0), uq.f.one())]);
        let e2 = uq.elem_from(&[(uq.e_simple(1), uq.f.one())]);
        let q2 = uq.f.zeta_pow(1) + uq.f.zeta_pow(-1);
        // E1²E2 − [2]E1E2E1 + E2E1² = 0
        let a = uq.mul(&uq.mul(&e1, &e1), &e2);
        let b = uq.mul(&uq.mul(&e1, &e2), &e1);
        let c = uq.mul(&uq.mul(&e2, &e1), &e1);
        let mut s = a.clone();
        add_scaled(&mut s, &b, &q2.neg_ref());
        add_scaled(&mut s, &c, &uq.f.one());
        assert!(s.is_empty());
        assoc_check(&uq);
    }

    fn hopf_check(uq: &Uq, form: &[Vec<i64>]) {
        let b = uq.basis();
        let cop = Cop::Twisted(form);
        let pick = |i: usize| b[(i * 7919 + 3) % b.len()];
        for i in 0..25 {
            let x = uq.elem_from(&[(pick(i), uq.f.one()), (pick(i + 5), uq.f.zeta_pow(2))]);
            let y = uq.elem_from(&[(pick(i + 77), uq.f.one())]);
            // coassociativity
            let d = uq.coproduct(&x, cop);
            assert_eq!(uq.cop_left(&d, cop), uq.cop_right(&d, cop));
            // bialgebra
            let lhs = uq.coproduct(&uq.mul(&x, &y), cop);
            let rhs = uq.mul2(&d, &uq.coproduct(&y, cop));
            assert_eq!(lhs, rhs);
            // antipode
            let mut s = FxHashMap::default();
            for ((a, bb), c) in &d {
                let sa = uq.antipode(&uq.elem_from(&[(*a, c.clone())]));
                for (p, v) in uq.mul(&sa, &uq.elem_from(&[(*bb, uq.f.one())])) {
                    acc_add(&mut s, p, v);
                }
            }
            let mut expect = FxHashMap::default();
            acc_add(&mut expect, 0, uq.counit(&x));
            if form.iter().all(|r| r.iter().all(|&v| v == 0)) {
                assert_eq!(s, expect);
            }
        }
    }

    #[test]
    fn hopf_axioms() {
        let uq = Uq::from_label("A1", 5).unwrap();
        hopf_check(&uq, &[vec![0]]);
        let uq = Uq::from_label("A2", 5).unwrap();
        hopf_check(&uq, &[vec![0, 0], vec![0, 0]]);
        hopf_check(&uq, &[vec![0, 1], vec![4, 0]]);
    }
}
