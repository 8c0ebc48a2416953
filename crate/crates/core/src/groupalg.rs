//! The grouplike group G = (Z/l)^rank inside u_q: characters, idempotents,
//! bilinear forms as twists of C[G], and normalization of group twists.
//!
//! A character a ∈ G^∨ ≅ (Z/l)^rank takes K^k to ζ^{a·k}. The idempotent of a
//! is P_a = l^{-rank} Σ_k ζ^{−a·k} K^k, so K^k P_a = ζ^{a·k} P_a.

use rustc_hash::FxHashMap;

use crate::engine::plus::acc_add;
use crate::engine::{Elem, Tensor2, Uq};
use crate::error::{Error, Result};
use crate::scalars::CycScalar;

pub type FormMatrix = Vec<Vec<i64>>;

/// Indexing of (Z/l)^rank by integer codes Σ k_i l^i.
#[derive(Clone, Copy, Debug)]
pub struct GroupIndex {
    pub rank: usize,
    pub l: u32,
}

impl GroupIndex {
    pub fn new(rank: usize, l: u32) -> Self {
        GroupIndex { rank, l }
    }

    pub fn size(&self) -> usize {
        (self.l as usize).pow(self.rank as u32)
    }

    pub fn decode(&self, mut c: usize) -> Vec<i64> {
        let l = self.l as usize;
        (0..self.rank)
            .map(|_| {
                let x = c % l;
                c /= l;
                x as i64
            })
            .collect()
    }

    pub fn encode(&self, k: &[i64]) -> usize {
        let l = self.l as i64;
        k.iter().rev().fold(0i64, |acc, &x| acc * l + x.rem_euclid(l)) as usize
    }

    pub fn all(&self) -> Vec<Vec<i64>> {
        (0..self.size()).map(|c| self.decode(c)).collect()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<i64> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
        self.encode(&s)
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// aᵀ M b
pub fn bilinear(m: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for (i, row) in m.iter().enumerate() {
        if a[i] != 0 {
            s += a[i] * dot(row, b);
        }
    }
    s
}

pub fn zero_form(rank: usize) -> FormMatrix {
    vec![vec![0; rank]; rank]
}

pub fn is_zero_form(m: &[Vec<i64>], l: u32) -> bool {
    m.iter().all(|r| r.iter().all(|x| x.rem_euclid(l as i64) == 0))
}

pub fn reduce_form(m: &[Vec<i64>], l: u32) -> FormMatrix {
    m.iter().map(|r| r.iter().map(|x| x.rem_euclid(l as i64)).collect()).collect()
}

/// Mᵀ = −M and zero diagonal, mod l.
pub fn is_alternating(m: &[Vec<i64>], l: u32) -> bool {
    let l = l as i64;
    let n = m.len();
    (0..n).all(|i| m[i].len() == n && m[i][i].rem_euclid(l) == 0 && (0..n).all(|j| (m[i][j] + m[j][i]).rem_euclid(l) == 0))
}

/// All alternating matrices mod l, in lexicographic order of their upper entries.
pub fn enumerate_alternating(rank: usize, l: u32) -> Vec<FormMatrix> {
    let slots: Vec<(usize, usize)> = (0..rank).flat_map(|i| (i + 1..rank).map(move |j| (i, j))).collect();
    let gi = GroupIndex::new(slots.len(), l);
    (0..gi.size())
        .map(|c| {
            let v = gi.decode(c);
            let mut m = zero_form(rank);
            for (k, &(i, j)) in slots.iter().enumerate() {
                m[i][j] = v[slots.len() - 1 - k];
                m[j][i] = (-v[slots.len() - 1 - k]).rem_euclid(l as i64);
            }
            m
        })
        .collect()
}

/// P_a in the K basis.
pub fn idempotent(uq: &Uq, a: &[i64]) -> Elem {
    let gi = GroupIndex::new(uq.rank(), uq.l);
    let scale = uq.f.from_ratio(1, gi.size() as i64);
    let mut e = FxHashMap::default();
    for k in gi.all() {
        acc_add(&mut e, uq.k_mono(&k), scale.mul_zeta(-dot(a, &k)));
    }
    e
}

/// B = Σ_{a,b} ζ^{aᵀMb} P_a ⊗ P_b in the K⊗K basis.
/// The coefficient of K^k ⊗ K^j is l^{-rank} Σ_{b : Mb ≡ k} ζ^{−b·j}.
pub fn form_to_twist(uq: &Uq, m: &[Vec<i64>]) -> Tensor2 {
    let gi = GroupIndex::new(uq.rank(), uq.l);
    let l = uq.l as i64;
    let scale = uq.f.from_ratio(1, gi.size() as i64);
    let all = gi.all();
    let mut out = FxHashMap::default();
    for b in &all {
        let k: Vec<i64> = m.iter().map(|row| dot(row, b).rem_euclid(l)).collect();
        let km = uq.k_mono(&k);
        for j in &all {
            acc_add(&mut out, (km, uq.k_mono(j)), scale.mul_zeta(-dot(b, j)));
        }
    }
    out
}

/// Values σ(a,b) of a C[G]⊗C[G] tensor on idempotent pairs, indexed by codes.
pub fn idempotent_values(uq: &Uq, j: &Tensor2) -> Result<Vec<Vec<CycScalar>>> {
    let gi = GroupIndex::new(uq.rank(), uq.l);
    let n = gi.size();
    let all = gi.all();
    let mut out = vec![vec![uq.f.zero(); n]; n];
    for ((x, y), c) in j {
        if uq.e_part(*x) != 0 || uq.e_part(*y) != 0 {
            return Err(Error::Domain("tensor is not supported in C[G]⊗C[G]".into()));
        }
        let (k1, k2) = (uq.k_part(*x), uq.k_part(*y));
        for a in 0..n {
            let ea = dot(&all[a], &k1);
            for b in 0..n {
                let v = c.mul_zeta(ea + dot(&all[b], &k2));
                out[a][b] = &out[a][b] + &v;
            }
        }
    }
    Ok(out)
}

/// Σ_c ζ^{f(c)} P_c in the K basis.
pub fn group_unit(uq: &Uq, f: &[i64]) -> Elem {
    let gi = GroupIndex::new(uq.rank(), uq.l);
    let all = gi.all();
    let scale = uq.f.from_ratio(1, gi.size() as i64);
    let mut e = FxHashMap::default();
    for k in &all {
        let mut s = uq.f.zero();
        for (c, fc) in all.iter().zip(f) {
            s = s + uq.f.zeta_pow(fc - dot(c, k));
        }
        acc_add(&mut e, uq.k_mono(k), &s * &scale);
    }
    e
}

fn inv_mod(a: i64, l: i64) -> Option<i64> {
    (1..l).find(|&x| (a * x).rem_euclid(l) == 1)
}

/// Given a twist J0 of C[G] with l-th-root-of-unity values on idempotent pairs,
/// returns (f, N): gauging by v = Σ_c ζ^{f(c)} P_c takes J0 to the form twist
/// of the alternating matrix N.
pub fn normalize_group_twist_logs(uq: &Uq, j0: &Tensor2) -> Result<(Vec<i64>, FormMatrix)> {
    let gi = GroupIndex::new(uq.rank(), uq.l);
    let l = uq.l as i64;
    let n = gi.size();
    let vals = idempotent_values(uq, j0)?;
    let mut s = vec![vec![0i64; n]; n];
    for a in 0..n {
        for b in 0..n {
            s[a][b] = vals[a][b].zeta_log().ok_or_else(|| {
                Error::UnsupportedDegreeZero("group twist value is not an l-th root of unity".into())
            })? as i64;
        }
    }
    let rank = uq.rank();
    let units: Vec<usize> = (0..rank)
        .map(|i| {
            let mut e = vec![0; rank];
            e[i] = 1;
            gi.encode(&e)
        })
        .collect();
    let inv2 = inv_mod(2, l).unwrap();
    let mut nm = zero_form(rank);
    for i in 0..rank {
        for j in 0..rank {
            nm[i][j] = ((s[units[i]][units[j]] - s[units[j]][units[i]]) * inv2).rem_euclid(l);
        }
    }
    let all = gi.all();
    // t(a,b) = aᵀNb − s(a,b) must equal f(a+b) − f(a) − f(b)
    let t = |a: usize, b: usize| (bilinear(&nm, &all[a], &all[b]) - s[a][b]).rem_euclid(l);
    let mut f = vec![0i64; n];
    for c in 1..n {
        let k = &all[c];
        let i = k.iter().position(|&x| x != 0).unwrap();
        let mut prev = k.clone();
        prev[i] -= 1;
        let p = gi.encode(&prev);
        f[c] = (f[p] + f[units[i]] + t(p, units[i])).rem_euclid(l);
    }
    for a in 0..n {
        for b in 0..n {
            let ab = gi.add(a, b);
            if (f[ab] - f[a] - f[b] - t(a, b)).rem_euclid(l) != 0 {
                return Err(Error::UnsupportedDegreeZero(
                    "symmetric part of the group cocycle is not a coboundary over Z/l".into(),
                ));
            }
        }
    }
    Ok((f, nm))
}

/// Returns (v, N) with v·J0 = form_to_twist(N), N alternating.
pub fn normalize_group_twist(uq: &Uq, j0: &Tensor2) -> Result<(Elem, FormMatrix)> {
    let (f, nm) = normalize_group_twist_logs(uq, j0)?;
    Ok((group_unit(uq, &f), nm))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_alternating(1, 5).len(), 1);
        assert_eq!(enumerate_alternating(2, 5).len(), 5);
        assert_eq!(enumerate_alternating(3, 7).len(), 343);
        assert!(enumerate_alternating(3, 7).iter().all(|m| is_alternating(m, 7)));
    }

    #[test]
    fn idempotents() {
        let uq = Uq::from_label("A1", 5).unwrap();
        let p1 = idempotent(&uq, &[1]);
        let p2 = idempotent(&uq, &[2]);
        assert!(uq.mul(&p1, &p2).is_empty());
        assert_eq!(uq.mul(&p1, &p1), p1);
        let mut s = FxHashMap::default();
        for a in 0..5 {
            for (k, v) in idempotent(&uq, &[a]) {
                acc_add(&mut s, k, v);
            }
        }
        assert_eq!(s, uq.one_elem());
    }

    #[test]
    fn form_twist_shape() {
        let uq = Uq::from_label("A2", 5).unwrap();
        let m = vec![vec![0, 1], vec![4, 0]];
        let b = form_to_twist(&uq, &m);
        assert_eq!(b.len(), 625);
        assert_eq!(form_to_twist(&uq, &zero_form(2)), uq.tensor_one());
        let (v, n) = normalize_group_twist(&uq, &b).unwrap();
        assert_eq!(n, m);
        assert_eq!(v, uq.one_elem());
    }
}
