//! Independent model of u_q^+: the image of the free algebra in the quantum
//! shuffle algebra on words over the simple roots. Products are q-shuffles;
//! linear relations come from exact linear algebra in word space.

use rustc_hash::FxHashMap;

use super::plus::acc_add;
use super::rules::words_of_degree;
use super::uq::Uq;
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::rootdata::{height, RootDatum};
use crate::scalars::{CycField, CycScalar};

pub type ShuffleVec = FxHashMap<Vec<u8>, CycScalar>;

pub struct ShuffleOracle {
    pub rd: RootDatum,
    pub f: &'static CycField,
    pub bound: i64,
}

impl ShuffleOracle {
    pub const DEFAULT_BOUND: i64 = 6;

    pub fn new(rd: &RootDatum, bound: i64) -> Self {
        ShuffleOracle { rd: rd.clone(), f: CycField::get(rd.l), bound }
    }

    fn q(&self, a: u8, b: u8) -> i64 {
        self.rd.sym[a as usize][b as usize]
    }

    fn shuffle_words(&self, u: &[u8], w: &[u8], out: &mut Vec<(Vec<u8>, i64)>, prefix: &mut Vec<u8>, e: i64) {
        if u.is_empty() || w.is_empty() {
            let mut k = prefix.clone();
            k.extend_from_slice(u);
            k.extend_from_slice(w);
            out.push((k, e));
            return;
        }
        prefix.push(u[0]);
        self.shuffle_words(&u[1..], w, out, prefix, e);
        prefix.pop();
        // w[0] moves past every letter of u
        let x: i64 = u.iter().map(|&a| self.q(a, w[0])).sum();
        prefix.push(w[0]);
        self.shuffle_words(u, &w[1..], out, prefix, e + x);
        prefix.pop();
    }

    fn check_height(&self, n: usize) -> Result<()> {
        if n as i64 > self.bound {
            return Err(Error::OracleBound(format!("height {} exceeds oracle bound {}", n, self.bound)));
        }
        Ok(())
    }

    /// q-shuffle product.
    pub fn shuffle(&self, a: &ShuffleVec, b: &ShuffleVec) -> Result<ShuffleVec> {
        let mut out = FxHashMap::default();
        for (u, x) in a {
            for (w, y) in b {
                self.check_height(u.len() + w.len())?;
                let xy = x * y;
                let mut terms = Vec::new();
                self.shuffle_words(u, w, &mut terms, &mut Vec::new(), 0);
                for (k, e) in terms {
                    acc_add(&mut out, k, xy.mul_zeta(e));
                }
            }
        }
        Ok(out)
    }

    pub fn letter(&self, i: usize) -> ShuffleVec {
        let mut v = FxHashMap::default();
        v.insert(vec![i as u8], self.f.one());
        v
    }

    pub fn one(&self) -> ShuffleVec {
        let mut v = FxHashMap::default();
        v.insert(Vec::new(), self.f.one());
        v
    }

    /// Image of a word of generators E_{i1}···E_{ik}.
    pub fn word_image(&self, w: &[u8]) -> Result<ShuffleVec> {
        let mut acc = self.one();
        for &i in w {
            acc = self.shuffle(&acc, &self.letter(i as usize))?;
        }
        Ok(acc)
    }

    /// Image of the root vector E_r via its Lyndon bracket.
    pub fn root_image(&self, r: usize) -> Result<ShuffleVec> {
        let root = &self.rd.roots[r];
        match root.split {
            None => Ok(self.letter(root.word[0] as usize)),
            Some((a, b)) => {
                let (ea, eb) = (self.root_image(a)?, self.root_image(b)?);
                let c = self.rd.form(&self.rd.roots[a].deg, &self.rd.roots[b].deg);
                let mut out = self.shuffle(&ea, &eb)?;
                for (k, v) in self.shuffle(&eb, &ea)? {
                    acc_add(&mut out, k, v.mul_zeta(c).neg_ref());
                }
                Ok(out)
            }
        }
    }

    /// Image of the ordered PBW monomial with exponents `m`.
    pub fn pbw_image(&self, m: &[u32]) -> Result<ShuffleVec> {
        let mut acc = self.one();
        for (r, &n) in m.iter().enumerate() {
            if n > 0 {
                let e = self.root_image(r)?;
                for _ in 0..n {
                    acc = self.shuffle(&acc, &e)?;
                }
            }
        }
        Ok(acc)
    }

    fn to_sparse(&self, v: &ShuffleVec, index: &FxHashMap<Vec<u8>, usize>) -> Vec<(usize, CycScalar)> {
        let mut s: Vec<(usize, CycScalar)> = v.iter().map(|(k, c)| (index[k], c.clone())).collect();
        s.sort_by_key(|x| x.0);
        s
    }

    /// dim of u^+ in a Q-degree: rank of the images of all words.
    pub fn graded_dim(&self, deg: &[i64]) -> Result<usize> {
        self.check_height(height(deg) as usize)?;
        let words = words_of_degree(deg);
        let index: FxHashMap<Vec<u8>, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut vecs = Vec::new();
        for w in &words {
            vecs.push(self.to_sparse(&self.word_image(w)?, &index));
        }
        Ok(rank(&self.f.one(), &vecs))
    }

    /// Check Ψ(x·y) = Ψ(x) ∗ Ψ(y) for all PBW basis pairs with total height
    /// ≤ h. Returns the number of pairs checked, or the first failing pair.
    pub fn check_engine(&self, uq: &Uq, h: i64) -> Result<std::result::Result<usize, (u64, u64)>> {
        let ms = uq.plus.monomials_up_to_height(h.min(self.bound));
        let mut images: FxHashMap<u64, ShuffleVec> = FxHashMap::default();
        for &m in &ms {
            images.insert(m, self.pbw_image(&uq.plus.exps(m))?);
        }
        let mut count = 0;
        for &x in &ms {
            for &y in &ms {
                if uq.plus.height(x) + uq.plus.height(y) > h.min(self.bound) {
                    continue;
                }
                let lhs = self.shuffle(&images[&x], &images[&y])?;
                let mut rhs: ShuffleVec = FxHashMap::default();
                for (p, c) in uq.plus.mul_mono(x, y).iter() {
                    for (k, v) in &images[p] {
                        acc_add(&mut rhs, k.clone(), v * c);
                    }
                }
                if lhs != rhs {
                    return Ok(Err((x, y)));
                }
                count += 1;
            }
        }
        Ok(Ok(count))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims() {
        let rd = RootDatum::from_label("A2", 5).unwrap();
        let o = ShuffleOracle::new(&rd, 6);
        assert_eq!(o.graded_dim(&[1, 1]).unwrap(), 2);
        assert_eq!(o.graded_dim(&[2, 1]).unwrap(), 2);
        let rd = RootDatum::from_label("A1", 5).unwrap();
        let o = ShuffleOracle::new(&rd, 6);
        assert_eq!(o.graded_dim(&[4]).unwrap(), 1);
        assert_eq!(o.graded_dim(&[5]).unwrap(), 0);
        assert!(o.graded_dim(&[7]).is_err());
    }

    #[test]
    fn engine_matches() {
        let uq = Uq::from_label("A2", 5).unwrap();
        let o = ShuffleOracle::new(&uq.rd, 6);
        assert!(o.check_engine(&uq, 6).unwrap().is_ok());
    }
}
