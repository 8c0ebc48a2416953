//! Q-graded cobar complexes of u_q^B and of the truncated divided-power
//! algebra: differentials, H¹/H² dimensions, and bounding-element solves.
//!
//! Two routes compute the same dimensions. The full route works with the
//! unnormalized complex C^n = H^{⊗n} including grouplikes. The reduced route
//! uses the connected braided coalgebra A = U^+ with the twisted coproduct
//! Δ̄^B(E^m) = Σ c ζ^{χ1ᵀMχ2} E^{m1}⊗E^{m2}; a degree γ contributes to the
//! cohomology of the Hopf algebra only when the grouplike characters act
//! trivially on it, i.e. (I − 2MS)γ ≡ 0 mod l.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::engine::plus::acc_add;
use crate::engine::{Elem, GradedSide, Tensor2, Tensor3};
use crate::error::{Error, Result};
use crate::groupalg::bilinear;
use crate::linalg::{rank, Echelon, SparseVec};
use crate::rootdata::{deg_le, deg_sub, QDegree, RootDatum};
use crate::scalars::CycScalar;

pub type Form<'a> = Option<&'a [Vec<i64>]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Reduced,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HDims {
    pub degree: QDegree,
    pub c1: usize,
    pub c2: usize,
    pub h1: usize,
    pub h2: usize,
}

fn nonzero_form(form: Form) -> Form {
    form.filter(|m| m.iter().any(|r| r.iter().any(|&x| x != 0)))
}

/// Exponent vector v of the character action on degree γ (ω_a acts by
/// ζ^{a·v}): v = γ + Mᵀχ − Mχ = (I − 2MS)γ mod l.
pub fn eigen_vector(rd: &RootDatum, form: Form, gamma: &[i64]) -> Vec<i64> {
    let l = rd.l as i64;
    let r = rd.rank;
    let sg: Vec<i64> = (0..r).map(|i| (0..r).map(|j| rd.sym[i][j] * gamma[j]).sum()).collect();
    (0..r)
        .map(|i| {
            let mut v = gamma[i];
            if let Some(m) = nonzero_form(form) {
                v -= 2 * (0..r).map(|j| m[i][j] * sg[j]).sum::<i64>();
            }
            v.rem_euclid(l)
        })
        .collect()
}

/// Whether G^∨ acts trivially on degree γ.
pub fn invariant_degree(rd: &RootDatum, form: Form, gamma: &[i64]) -> bool {
    eigen_vector(rd, form, gamma).iter().all(|&x| x == 0)
}

/// All 0 < γ ≤ bound (componentwise).
pub fn degrees_up_to(bound: &[i64]) -> Vec<QDegree> {
    let mut out: Vec<QDegree> = vec![vec![]];
    for &n in bound {
        let mut next = Vec::new();
        for p in &out {
            for k in 0..=n {
                let mut q = p.clone();
                q.push(k);
                next.push(q);
            }
        }
        out = next;
    }
    out.retain(|d| d.iter().any(|&x| x > 0));
    out.sort_by_key(|d| (d.iter().sum::<i64>(), d.clone()));
    out
}

/// Default range for the small side: γ ≤ l·θ with θ the highest root.
pub fn default_bound(rd: &RootDatum) -> QDegree {
    let theta = rd.roots.iter().max_by_key(|r| r.height()).unwrap();
    theta.deg.iter().map(|x| x * rd.l as i64).collect()
}

fn is_zero_deg(d: &[i64]) -> bool {
    d.iter().all(|&x| x == 0)
}

// ---------- reduced route ----------

/// Δ̄^B with both tensor factors of positive degree.
pub fn reduced_cop<S: GradedSide>(s: &S, form: Form, e: u64) -> Vec<(u64, u64, CycScalar)> {
    let form = nonzero_form(form);
    s.e_cop(e)
        .iter()
        .filter(|(a, b, _)| *a != 0 && *b != 0)
        .map(|(a, b, c)| {
            let x = match form {
                Some(m) => bilinear(m, &s.chi(*a), &s.chi(*b)),
                None => 0,
            };
            (*a, *b, c.mul_zeta(x))
        })
        .collect()
}

/// Pairs (β, γ−β) with both parts positive.
fn splits(gamma: &[i64]) -> Vec<(QDegree, QDegree)> {
    let mut out = Vec::new();
    for b in degrees_up_to(gamma) {
        if b.as_slice() != gamma {
            let c = deg_sub(gamma, &b);
            out.push((b, c));
        }
    }
    out
}

struct Indexer<K: std::hash::Hash + Eq> {
    map: FxHashMap<K, usize>,
}

impl<K: std::hash::Hash + Eq + Copy> Indexer<K> {
    fn new() -> Self {
        Indexer { map: FxHashMap::default() }
    }
    fn get(&mut self, k: K) -> usize {
        let n = self.map.len();
        *self.map.entry(k).or_insert(n)
    }
}

fn to_sparse<K: std::hash::Hash + Eq + Copy>(m: &FxHashMap<K, CycScalar>, idx: &mut Indexer<K>) -> SparseVec<CycScalar> {
    let b: BTreeMap<usize, CycScalar> = m.iter().map(|(k, v)| (idx.get(*k), v.clone())).collect();
    b.into_iter().collect()
}

/// Basis of reduced C² in degree γ.
fn reduced_c2_basis<S: GradedSide>(s: &S, gamma: &[i64]) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for (b, c) in splits(gamma) {
        let (x, y) = (s.e_basis(&b), s.e_basis(&c));
        for &p in &x {
            for &q in &y {
                out.push((p, q));
            }
        }
    }
    out
}

/// Reduced-route dimensions (before the invariance filter) of degree γ:
/// returns (dim C¹, dim C², rank d1, rank d2).
pub fn reduced_ranks<S: GradedSide>(s: &S, form: Form, gamma: &[i64]) -> (usize, usize, usize, usize) {
    let one = s.field().one();
    let c1 = s.e_basis(gamma);
    let mut idx2 = Indexer::new();
    let d1: Vec<SparseVec<CycScalar>> = c1
        .iter()
        .map(|&e| {
            let mut t: FxHashMap<(u64, u64), CycScalar> = FxHashMap::default();
            for (a, b, c) in reduced_cop(s, form, e) {
                acc_add(&mut t, (a, b), c.neg_ref());
            }
            to_sparse(&t, &mut idx2)
        })
        .collect();
    let c2 = reduced_c2_basis(s, gamma);
    let mut idx3 = Indexer::new();
    let d2: Vec<SparseVec<CycScalar>> = c2
        .iter()
        .map(|&(a, b)| {
            let mut t: FxHashMap<(u64, u64, u64), CycScalar> = FxHashMap::default();
            for (x, y, c) in reduced_cop(s, form, a) {
                acc_add(&mut t, (x, y, b), c.neg_ref());
            }
            for (x, y, c) in reduced_cop(s, form, b) {
                acc_add(&mut t, (a, x, y), c);
            }
            to_sparse(&t, &mut idx3)
        })
        .collect();
    (c1.len(), c2.len(), rank(&one, &d1), rank(&one, &d2))
}

// ---------- full route ----------

/// d1(v) = 1⊗v − Δ^B(v) + v⊗1 for homogeneous v.
pub fn cobar_d1<S: GradedSide>(s: &S, form: Form, v: &Elem) -> Result<Tensor2> {
    homogeneous1(s, v)?;
    let form = nonzero_form(form);
    let mut out = FxHashMap::default();
    for (m, c) in v {
        acc_add(&mut out, (0, *m), c.clone());
        acc_add(&mut out, (*m, 0), c.clone());
        for (a, b, d) in s.cop_full_b(*m, form) {
            acc_add(&mut out, (a, b), (c * &d).neg_ref());
        }
    }
    Ok(out)
}

/// d2(J) = 1⊗J − (Δ^B⊗1)J + (1⊗Δ^B)J − J⊗1 for homogeneous J.
pub fn cobar_d2<S: GradedSide>(s: &S, form: Form, j: &Tensor2) -> Result<Tensor3> {
    homogeneous2(s, j)?;
    let form = nonzero_form(form);
    let mut out = FxHashMap::default();
    for ((a, b), c) in j {
        acc_add(&mut out, (0, *a, *b), c.clone());
        acc_add(&mut out, (*a, *b, 0), c.neg_ref());
        for (x, y, d) in s.cop_full_b(*a, form) {
            acc_add(&mut out, (x, y, *b), (c * &d).neg_ref());
        }
        for (x, y, d) in s.cop_full_b(*b, form) {
            acc_add(&mut out, (*a, x, y), c * &d);
        }
    }
    Ok(out)
}

fn homogeneous1<S: GradedSide>(s: &S, v: &Elem) -> Result<()> {
    let mut degs = v.keys().map(|m| s.e_degree(s.e_part(*m)));
    if let Some(d) = degs.next() {
        if degs.any(|e| e != d) {
            return Err(Error::Domain("element is not Q-homogeneous".into()));
        }
    }
    Ok(())
}

fn deg2<S: GradedSide>(s: &S, k: &(u64, u64)) -> QDegree {
    let (a, b) = (s.e_degree(s.e_part(k.0)), s.e_degree(s.e_part(k.1)));
    a.iter().zip(&b).map(|(x, y)| x + y).collect()
}

fn homogeneous2<S: GradedSide>(s: &S, j: &Tensor2) -> Result<()> {
    let mut degs = j.keys().map(|k| deg2(s, k));
    if let Some(d) = degs.next() {
        if degs.any(|e| e != d) {
            return Err(Error::Domain("tensor is not Q-homogeneous".into()));
        }
    }
    Ok(())
}

/// Full C² basis of degree γ: pairs of monomials with degrees summing to γ.
fn full_c2_basis<S: GradedSide>(s: &S, gamma: &[i64]) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut parts = degrees_up_to(gamma);
    parts.push(vec![0; gamma.len()]);
    for b in parts {
        let c = deg_sub(gamma, &b);
        let x = s.full_basis(&b);
        let y = s.full_basis(&c);
        for &p in &x {
            for &q in &y {
                out.push((p, q));
            }
        }
    }
    out
}

/// Full-route (dim C¹, dim C², rank d1, rank d2).
pub fn full_ranks<S: GradedSide>(s: &S, form: Form, gamma: &[i64]) -> Result<(usize, usize, usize, usize)> {
    let one = s.field().one();
    let c1 = s.full_basis(gamma);
    let mut idx2 = Indexer::new();
    let mut d1 = Vec::new();
    for &m in &c1 {
        let t = cobar_d1(s, form, &single(m, &one))?;
        d1.push(to_sparse(&t, &mut idx2));
    }
    let c2 = full_c2_basis(s, gamma);
    let mut idx3 = Indexer::new();
    let mut d2 = Vec::new();
    for &(a, b) in &c2 {
        let mut t = FxHashMap::default();
        t.insert((a, b), one.clone());
        d2.push(to_sparse(&cobar_d2(s, form, &t)?, &mut idx3));
    }
    Ok((c1.len(), c2.len(), rank(&one, &d1), rank(&one, &d2)))
}

fn single(m: u64, c: &CycScalar) -> Elem {
    let mut e = FxHashMap::default();
    e.insert(m, c.clone());
    e
}

/// dim H¹_γ and dim H²_γ by either route.
pub fn h_dims<S: GradedSide>(s: &S, form: Form, gamma: &[i64], route: Route) -> Result<HDims> {
    if is_zero_deg(gamma) || gamma.iter().any(|&x| x < 0) {
        return Err(Error::Domain("degree must lie in Q^+ \\ {0}".into()));
    }
    let (c1, c2, r1, r2) = match route {
        Route::Reduced => reduced_ranks(s, form, gamma),
        Route::Full => full_ranks(s, form, gamma)?,
    };
    let (mut h1, mut h2) = (c1 - r1, c2 - r2 - r1);
    if route == Route::Reduced && !invariant_degree(s.rd(), form, gamma) {
        h1 = 0;
        h2 = 0;
    }
    Ok(HDims { degree: gamma.to_vec(), c1, c2, h1, h2 })
}

/// Canonical H² representatives (full route): kernel vectors of d2 not in
/// im d1, taken greedily in basis order.
pub fn h2_representatives<S: GradedSide>(s: &S, form: Form, gamma: &[i64]) -> Result<Vec<Tensor2>> {
    let one = s.field().one();
    let c2 = full_c2_basis(s, gamma);
    let mut idx3 = Indexer::new();
    let mut d2 = Vec::new();
    for &(a, b) in &c2 {
        let mut t = FxHashMap::default();
        t.insert((a, b), one.clone());
        d2.push(to_sparse(&cobar_d2(s, form, &t)?, &mut idx3));
    }
    let ker = crate::linalg::kernel(&one, &d2);
    let idx2: FxHashMap<(u64, u64), usize> = c2.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut ech = Echelon::new(one.clone(), false);
    for &m in &s.full_basis(gamma) {
        let t = cobar_d1(s, form, &single(m, &one))?;
        let v: BTreeMap<usize, CycScalar> = t.iter().map(|(k, c)| (idx2[k], c.clone())).collect();
        let _ = ech.insert(&v.into_iter().collect::<Vec<_>>());
    }
    let mut reps = Vec::new();
    for k in ker {
        if let Ok(true) = ech.insert(&k) {
            reps.push(k.iter().map(|(i, c)| (c2[*i], c.clone())).collect());
        }
    }
    Ok(reps)
}

/// Solver for d1(v) = J in a fixed degree γ (full route), optionally with one
/// extra column t: J = c·t + d1(v).
pub struct BoundingSolver {
    pub degree: QDegree,
    basis: Vec<u64>,
    index: FxHashMap<(u64, u64), usize>,
    ech: Echelon<CycScalar>,
    pub rank: usize,
    extra: bool,
    zero: CycScalar,
}

impl BoundingSolver {
    pub fn new<S: GradedSide>(s: &S, form: Form, gamma: &[i64], extra: Option<&Tensor2>) -> Result<Self> {
        let one = s.field().one();
        let basis = s.full_basis(gamma);
        let mut index = FxHashMap::default();
        let mut ech = Echelon::new(one.clone(), true);
        let add = |t: &Tensor2, index: &mut FxHashMap<(u64, u64), usize>, ech: &mut Echelon<CycScalar>| {
            let mut v: BTreeMap<usize, CycScalar> = BTreeMap::new();
            for (k, c) in t {
                let n = index.len();
                let i = *index.entry(*k).or_insert(n);
                v.insert(i, c.clone());
            }
            ech.insert(&v.into_iter().collect::<Vec<_>>()).is_ok()
        };
        let mut rank = 0;
        for &m in &basis {
            let t = cobar_d1(s, form, &single(m, &one))?;
            if add(&t, &mut index, &mut ech) {
                rank += 1;
            }
        }
        if let Some(t) = extra {
            add(t, &mut index, &mut ech);
        }
        Ok(BoundingSolver {
            degree: gamma.to_vec(),
            basis,
            index,
            ech,
            rank,
            extra: extra.is_some(),
            zero: s.field().zero(),
        })
    }

    /// d1 is injective on degree γ (H¹_γ = 0 on the full complex).
    pub fn injective(&self) -> bool {
        self.rank == self.basis.len()
    }

    /// Returns (c, v) with J = c·t + d1(v) (c = 0 without an extra column).
    pub fn solve(&self, j: &Tensor2) -> Option<(CycScalar, Elem)> {
        let mut v: BTreeMap<usize, CycScalar> = BTreeMap::new();
        for (k, c) in j {
            v.insert(*self.index.get(k)?, c.clone());
        }
        let x = self.ech.solve(&v.into_iter().collect::<Vec<_>>())?;
        let mut c = self.zero.clone();
        let mut out = FxHashMap::default();
        for (i, a) in x {
            if i < self.basis.len() {
                acc_add(&mut out, self.basis[i], a);
            } else if self.extra {
                c = a;
            }
        }
        Some((c, out))
    }
}

/// Some v with d1(v) = J_γ, or None if J_γ is not exact.
pub fn solve_bounding<S: GradedSide>(s: &S, form: Form, j: &Tensor2) -> Result<Option<Elem>> {
    if j.is_empty() {
        return Ok(Some(FxHashMap::default()));
    }
    let d = cobar_d2(s, form, j)?;
    if !d.is_empty() {
        return Err(Error::NotACocycle("d2(J_γ) ≠ 0".into()));
    }
    let gamma = deg2(s, j.keys().next().unwrap());
    let solver = BoundingSolver::new(s, form, &gamma, None)?;
    Ok(solver.solve(j).map(|(_, v)| v))
}

/// Whether the degree lies in l·Φ+.
pub fn in_l_roots(rd: &RootDatum, gamma: &[i64]) -> Option<usize> {
    let l = rd.l as i64;
    if gamma.iter().any(|x| x % l != 0) {
        return None;
    }
    let mu: Vec<i64> = gamma.iter().map(|x| x / l).collect();
    rd.root_index(&mu)
}

pub fn deg_within(gamma: &[i64], bound: &[i64]) -> bool {
    deg_le(gamma, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{BigAlgebra, Uq};
    use crate::groupalg::enumerate_alternating;

    #[test]
    fn a1_small_both_routes() {
        let uq = Uq::from_label("A1", 5).unwrap();
        for n in 1..=7 {
            let r = h_dims(&uq, None, &[n], Route::Reduced).unwrap();
            let f = h_dims(&uq, None, &[n], Route::Full).unwrap();
            assert_eq!((r.h1, r.h2), (f.h1, f.h2), "degree {}", n);
            assert_eq!(r.h1, 0);
            assert_eq!(r.h2, usize::from(n == 5));
        }
    }

    #[test]
    fn a1_big_vanishes() {
        let rd = RootDatum::from_label("A1", 5).unwrap();
        let big = BigAlgebra::new(&rd, 12).unwrap();
        for n in 1..=12 {
            let r = h_dims(&big, None, &[n], Route::Reduced).unwrap();
            assert_eq!((r.h1, r.h2), (0, 0), "degree {}", n);
        }
    }

    #[test]
    fn a2_twisted_routes_agree() {
        let uq = Uq::from_label("A2", 5).unwrap();
        let forms = enumerate_alternating(2, 5);
        let m = &forms[1];
        for g in [[1i64, 0], [1, 1], [2, 1]] {
            let r = h_dims(&uq, Some(m), &g, Route::Reduced).unwrap();
            let f = h_dims(&uq, Some(m), &g, Route::Full).unwrap();
            assert_eq!((r.h1, r.h2), (f.h1, f.h2), "degree {:?}", g);
        }
    }

    #[test]
    fn d2_d1_zero_and_solve() {
        let uq = Uq::from_label("A2", 5).unwrap();
        let forms = enumerate_alternating(2, 5);
        let m = &forms[2];
        let f = uq.f;
        let mut v: Elem = FxHashMap::default();
        for (i, &b) in uq.full_basis(&[1, 1]).iter().enumerate().step_by(7) {
            v.insert(b, f.zeta_pow(i as i64).add_ref(&f.from_int(i as i64)));
        }
        let j = cobar_d1(&uq, Some(m), &v).unwrap();
        assert!(cobar_d2(&uq, Some(m), &j).unwrap().is_empty());
        let w = solve_bounding(&uq, Some(m), &j).unwrap().unwrap();
        assert_eq!(cobar_d1(&uq, Some(m), &w).unwrap(), j);
    }
}
