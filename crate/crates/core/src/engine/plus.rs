//! The positive part: PBW straightening over an arbitrary coefficient field.
//!
//! Monomials E^m = Π_r E_r^{m_r} (root order increasing left to right) are
//! packed into a u64. The algebra is either nilpotent (all exponents below a
//! bound, the small algebra) or degree-truncated (heights above a bound are
//! dropped), or both.

use std::sync::{Arc, RwLock};

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::mono::Packing;
use super::rules::{generic_rules, pbw_monomials};
use crate::error::Result;
use crate::rootdata::{QDegree, RootDatum};
use crate::scalars::{Coeff, GenericScalar};

pub type Terms<C> = Vec<(u64, C)>;
pub type Terms2<C> = Vec<(u64, u64, C)>;
pub type Deg = SmallVec<[i64; 4]>;

pub fn acc_add<K: std::hash::Hash + Eq, C: Coeff>(acc: &mut FxHashMap<K, C>, k: K, c: C) {
    use std::collections::hash_map::Entry;
    match acc.entry(k) {
        Entry::Occupied(mut e) => {
            let v = e.get().add(&c);
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
    }
}

pub struct PlusAlgebra<C: Coeff> {
    pub rd: RootDatum,
    pub pk: Packing,
    /// Exponents must be < bound (nilpotent algebra).
    pub bound: Option<u32>,
    /// Monomials of height > max_height are dropped.
    pub max_height: Option<i64>,
    rules: Vec<Vec<Terms<C>>>,
    root_height: Vec<i64>,
    /// (root a, root b) form values
    root_form: Vec<Vec<i64>>,
    one: C,
    tr_cache: RwLock<FxHashMap<(u64, u8), Arc<Terms<C>>>>,
    mul_cache: RwLock<FxHashMap<(u64, u64), Arc<Terms<C>>>>,
    co_cache: RwLock<FxHashMap<u64, Arc<Terms2<C>>>>,
}

impl<C: Coeff> PlusAlgebra<C> {
    /// Build from the generic rules, converting each coefficient with `conv`.
    pub fn new(
        rd: &RootDatum,
        one: C,
        bound: Option<u32>,
        max_height: Option<i64>,
        conv: impl Fn(&GenericScalar) -> Result<C>,
    ) -> Result<Self> {
        let g = generic_rules(rd)?;
        let n = rd.num_roots();
        let max_exp = match (bound, max_height) {
            (Some(b), _) => (b - 1).max(2) as u64,
            (None, Some(h)) => h.max(2) as u64,
            (None, None) => 255,
        };
        let pk = Packing::new(n, max_exp, 0)?;
        let mut rules: Vec<Vec<Terms<C>>> = vec![Vec::new(); n];
        for s in 0..n {
            for r in 0..s {
                let mut t = Vec::new();
                for (m, c) in &g.rules[&(s, r)] {
                    let v = conv(c)?;
                    if !v.is_zero() {
                        t.push((pk.pack(m), v));
                    }
                }
                rules[s].push(t);
            }
        }
        let root_height = rd.roots.iter().map(|r| r.height()).collect();
        let root_form = (0..n).map(|a| (0..n).map(|b| rd.form(&rd.roots[a].deg, &rd.roots[b].deg)).collect()).collect();
        Ok(PlusAlgebra {
            rd: rd.clone(),
            pk,
            bound,
            max_height,
            rules,
            root_height,
            root_form,
            one,
            tr_cache: RwLock::new(FxHashMap::default()),
            mul_cache: RwLock::new(FxHashMap::default()),
            co_cache: RwLock::new(FxHashMap::default()),
        })
    }

    pub fn one(&self) -> &C {
        &self.one
    }

    pub fn nroots(&self) -> usize {
        self.pk.len
    }

    pub fn exps(&self, m: u64) -> Vec<u32> {
        self.pk.unpack(m)
    }

    pub fn pack(&self, e: &[u32]) -> u64 {
        self.pk.pack(e)
    }

    /// E_r as a monomial.
    pub fn root_mono(&self, r: usize) -> u64 {
        self.pk.unit(r)
    }

    pub fn height(&self, m: u64) -> i64 {
        (0..self.pk.len).map(|r| self.pk.get(m, r) as i64 * self.root_height[r]).sum()
    }

    pub fn degree(&self, m: u64) -> Deg {
        let mut d: Deg = SmallVec::from_elem(0, self.rd.rank);
        for r in 0..self.pk.len {
            let n = self.pk.get(m, r) as i64;
            if n != 0 {
                for (x, y) in d.iter_mut().zip(&self.rd.roots[r].deg) {
                    *x += n * y;
                }
            }
        }
        d
    }

    /// (|m|, |n|)
    pub fn pair(&self, m: u64, n: u64) -> i64 {
        let mut s = 0;
        for a in 0..self.pk.len {
            let x = self.pk.get(m, a) as i64;
            if x == 0 {
                continue;
            }
            for b in 0..self.pk.len {
                let y = self.pk.get(n, b) as i64;
                if y != 0 {
                    s += x * y * self.root_form[a][b];
                }
            }
        }
        s
    }

    /// Whether a monomial survives the nilpotency bound and truncation.
    pub fn is_valid(&self, m: u64) -> bool {
        if let Some(b) = self.bound {
            if (0..self.pk.len).any(|r| self.pk.get(m, r) >= b) {
                return false;
            }
        }
        if let Some(h) = self.max_height {
            if self.height(m) > h {
                return false;
            }
        }
        true
    }

    /// E^m · E_r
    pub fn times_root(&self, m: u64, r: usize) -> Arc<Terms<C>> {
        if let Some(v) = self.tr_cache.read().unwrap().get(&(m, r as u8)) {
            return v.clone();
        }
        let res = Arc::new(self.compute_times_root(m, r));
        self.tr_cache.write().unwrap().insert((m, r as u8), res.clone());
        res
    }

    fn compute_times_root(&self, m: u64, r: usize) -> Terms<C> {
        if let Some(h) = self.max_height {
            if self.height(m) + self.root_height[r] > h {
                return Vec::new();
            }
        }
        match self.pk.last_nonzero(m) {
            Some(s) if s > r => {
                let m1 = m - self.pk.unit(s);
                let mut acc: FxHashMap<u64, C> = FxHashMap::default();
                for (p, c) in &self.rules[s][r] {
                    for (q, d) in self.mul_mono(m1, *p).iter() {
                        acc_add(&mut acc, *q, c.mul(d));
                    }
                }
                acc.into_iter().collect()
            }
            _ => {
                let n = self.pk.get(m, r) + 1;
                if self.bound.is_some_and(|b| n >= b) {
                    return Vec::new();
                }
                vec![(m + self.pk.unit(r), self.one.clone())]
            }
        }
    }

    /// E^m · E^n
    pub fn mul_mono(&self, m: u64, n: u64) -> Arc<Terms<C>> {
        if n == 0 {
            return Arc::new(vec![(m, self.one.clone())]);
        }
        if let Some(v) = self.mul_cache.read().unwrap().get(&(m, n)) {
            return v.clone();
        }
        let mut cur: FxHashMap<u64, C> = FxHashMap::default();
        cur.insert(m, self.one.clone());
        for r in 0..self.pk.len {
            for _ in 0..self.pk.get(n, r) {
                let mut next: FxHashMap<u64, C> = FxHashMap::default();
                for (q, c) in cur {
                    for (t, d) in self.times_root(q, r).iter() {
                        acc_add(&mut next, *t, c.mul(d));
                    }
                }
                cur = next;
            }
        }
        let res = Arc::new(cur.into_iter().collect::<Vec<_>>());
        self.mul_cache.write().unwrap().insert((m, n), res.clone());
        res
    }

    pub fn mul(&self, x: &FxHashMap<u64, C>, y: &FxHashMap<u64, C>) -> FxHashMap<u64, C> {
        let mut acc = FxHashMap::default();
        for (m, a) in x {
            for (n, b) in y {
                let ab = a.mul(b);
                for (p, c) in self.mul_mono(*m, *n).iter() {
                    acc_add(&mut acc, *p, ab.mul(c));
                }
            }
        }
        acc
    }

    /// Braided product in A ⊗ A: (x1⊗x2)(y1⊗y2) = v^{−(|x1|,|y2|)} x1y1 ⊗ x2y2.
    pub fn braided_mul(&self, x: &FxHashMap<(u64, u64), C>, y: &FxHashMap<(u64, u64), C>) -> FxHashMap<(u64, u64), C> {
        let mut acc = FxHashMap::default();
        for ((x1, x2), a) in x {
            for ((y1, y2), b) in y {
                let f = a.mul(b).mul_vpow(-self.pair(*x1, *y2));
                let p1 = self.mul_mono(*x1, *y1);
                if p1.is_empty() {
                    continue;
                }
                let p2 = self.mul_mono(*x2, *y2);
                for (m1, c1) in p1.iter() {
                    let fc = f.mul(c1);
                    for (m2, c2) in p2.iter() {
                        acc_add(&mut acc, (*m1, *m2), fc.mul(c2));
                    }
                }
            }
        }
        acc
    }

    /// The braided coproduct Δ̄(E^m) with grouplikes dropped:
    /// Δ(E^m) = Σ c K^{|m2|} E^{m1} ⊗ E^{m2}.
    pub fn coproduct(&self, m: u64) -> Arc<Terms2<C>> {
        if let Some(v) = self.co_cache.read().unwrap().get(&m) {
            return v.clone();
        }
        let res: FxHashMap<(u64, u64), C> = if m == 0 {
            let mut t = FxHashMap::default();
            t.insert((0, 0), self.one.clone());
            t
        } else {
            let s = self.pk.last_nonzero(m).unwrap();
            let m1 = m - self.pk.unit(s);
            if m1 == 0 {
                self.root_coproduct(s)
            } else {
                let a: FxHashMap<(u64, u64), C> = self.coproduct(m1).iter().map(|(p, q, c)| ((*p, *q), c.clone())).collect();
                let b: FxHashMap<(u64, u64), C> =
                    self.coproduct(self.pk.unit(s)).iter().map(|(p, q, c)| ((*p, *q), c.clone())).collect();
                self.braided_mul(&a, &b)
            }
        };
        let res = Arc::new(res.into_iter().map(|((a, b), c)| (a, b, c)).collect::<Vec<_>>());
        self.co_cache.write().unwrap().insert(m, res.clone());
        res
    }

    fn root_coproduct(&self, s: usize) -> FxHashMap<(u64, u64), C> {
        let e = self.pk.unit(s);
        match self.rd.roots[s].split {
            None => {
                let mut t = FxHashMap::default();
                t.insert((e, 0), self.one.clone());
                t.insert((0, e), self.one.clone());
                t
            }
            Some((a, b)) => {
                let get = |r: usize| -> FxHashMap<(u64, u64), C> {
                    self.coproduct(self.pk.unit(r)).iter().map(|(p, q, c)| ((*p, *q), c.clone())).collect()
                };
                let (da, db) = (get(a), get(b));
                let ab = self.braided_mul(&da, &db);
                let ba = self.braided_mul(&db, &da);
                let mut out = ab;
                let c = self.one.vpow_like(self.root_form[a][b]).neg();
                for (k, v) in ba {
                    acc_add(&mut out, k, v.mul(&c));
                }
                out
            }
        }
    }

    /// Root vector E_μ expressed in the PBW basis (Lyndon bracket evaluated).
    pub fn root_vector_bracket(&self, r: usize) -> FxHashMap<u64, C> {
        match self.rd.roots[r].split {
            None => {
                let mut t = FxHashMap::default();
                t.insert(self.pk.unit(r), self.one.clone());
                t
            }
            Some((a, b)) => {
                let ea = self.root_vector_bracket(a);
                let eb = self.root_vector_bracket(b);
                let mut out = self.mul(&ea, &eb);
                let c = self.one.vpow_like(self.root_form[a][b]).neg();
                for (k, v) in self.mul(&eb, &ea) {
                    acc_add(&mut out, k, v.mul(&c));
                }
                out
            }
        }
    }

    /// Valid monomials of a given degree.
    pub fn basis(&self, deg: &[i64]) -> Vec<u64> {
        let mut v: Vec<u64> = pbw_monomials(&self.rd, deg)
            .into_iter()
            .filter(|e| self.bound.is_none_or(|b| e.iter().all(|&x| x < b)))
            .map(|e| self.pk.pack(&e))
            .filter(|&m| self.is_valid(m))
            .collect();
        v.sort_unstable();
        v
    }

    /// All valid monomials of height ≤ h.
    pub fn monomials_up_to_height(&self, h: i64) -> Vec<u64> {
        let mut out = vec![0u64];
        for r in 0..self.pk.len {
            let mut next = Vec::new();
            for &m in &out {
                let mut k = 0u32;
                loop {
                    let mm = self.pk.set(m, r, k);
                    if self.height(mm) > h || self.bound.is_some_and(|b| k >= b) {
                        break;
                    }
                    next.push(mm);
                    k += 1;
                }
            }
            out = next;
        }
        out.retain(|&m| self.is_valid(m));
        out.sort_unstable();
        out
    }

    pub fn degree_vec(&self, m: u64) -> QDegree {
        self.degree(m).to_vec()
    }
}
