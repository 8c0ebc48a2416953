//! The graded dual (u_q^*)_B as functionals on the PBW basis, with product
//! (f·_B g)(m) = (f⊗g)(Δ^B m), and checks of its presentation.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::cohomology::{degrees_up_to, Form};
use crate::engine::plus::acc_add;
use crate::engine::side::k_vectors;
use crate::engine::{Elem, GradedSide};
use crate::groupalg::bilinear;
use crate::linalg::{rank, SparseVec};
use crate::rootdata::{deg_add, deg_sub, QDegree};
use crate::scalars::{qbinom, specialize_lpoly, CycScalar};

/// A functional on the PBW basis K^kE^m (absent monomials pair to 0).
pub type DualElement = Elem;

fn form_or_none(form: Form) -> Form {
    form.filter(|m| m.iter().any(|r| r.iter().any(|&x| x != 0)))
}

/// Paired degrees present in f.
fn degrees_of<S: GradedSide>(s: &S, f: &DualElement) -> Vec<QDegree> {
    let mut d: Vec<QDegree> = f.keys().map(|m| s.e_degree(s.e_part(*m)).to_vec()).collect();
    d.sort();
    d.dedup();
    d
}

/// (f·_B g)(m) = Σ (f⊗g)(Δ^B m).
pub fn dual_multiply_b<S: GradedSide>(s: &S, f: &DualElement, g: &DualElement, form: Form) -> DualElement {
    let form = form_or_none(form);
    let mut out = FxHashMap::default();
    let mut targets: Vec<QDegree> = Vec::new();
    for a in degrees_of(s, f) {
        for b in degrees_of(s, g) {
            targets.push(deg_add(&a, &b));
        }
    }
    targets.sort();
    targets.dedup();
    for gamma in targets {
        for m in s.full_basis(&gamma) {
            let mut acc = s.field().zero();
            for (y, z, c) in s.cop_full_b(m, form) {
                if let (Some(a), Some(b)) = (f.get(&y), g.get(&z)) {
                    acc = acc.add_ref(&(&c * &(a * b)));
                }
            }
            if !acc.is_zero() {
                out.insert(m, acc);
            }
        }
    }
    out
}

/// The counit, the unit of the dual.
pub fn epsilon<S: GradedSide>(s: &S) -> DualElement {
    character(s, &vec![0; s.rank()])
}

/// ω_a: K^k ↦ ζ^{a·k}, zero off degree 0.
pub fn character<S: GradedSide>(s: &S, a: &[i64]) -> DualElement {
    k_vectors(s.rank(), s.l())
        .into_iter()
        .map(|k| (s.mono(&k, 0), s.field().zeta_pow(a.iter().zip(&k).map(|(x, y)| x * y).sum())))
        .collect()
}

/// X_i(K^k E_j) = δ_ij.
pub fn x_simple<S: GradedSide>(s: &S, i: usize) -> DualElement {
    let mut d = vec![0; s.rank()];
    d[i] = 1;
    let e = s.e_basis(&d);
    k_vectors(s.rank(), s.l()).into_iter().map(|k| (s.mono(&k, e[0]), s.field().one())).collect()
}

/// Braided commutator coefficient for root functionals:
/// X_aX_b − q^{(a,b)} ζ^{2 χ_aᵀMχ_b} X_bX_a.
pub fn bracket_coefficient<S: GradedSide>(s: &S, a: &[i64], b: &[i64], form: Form) -> i64 {
    let rd = s.rd();
    let mut e = rd.form(a, b);
    if let Some(m) = form_or_none(form) {
        let chi = |d: &[i64]| -> Vec<i64> {
            (0..rd.rank).map(|i| (0..rd.rank).map(|j| rd.sym[i][j] * d[j]).sum()).collect()
        };
        e += 2 * bilinear(m, &chi(a), &chi(b));
    }
    e
}

/// Root functional X_μ via the Lyndon bracketing of the X_α.
pub fn x_root<S: GradedSide>(s: &S, r: usize, form: Form) -> DualElement {
    let rd = s.rd();
    let root = &rd.roots[r];
    match root.split {
        None => x_simple(s, root.word[0] as usize),
        Some((a, b)) => {
            let (xa, xb) = (x_root(s, a, form), x_root(s, b, form));
            let c = bracket_coefficient(s, &rd.roots[a].deg, &rd.roots[b].deg, form);
            let mut out = dual_multiply_b(s, &xa, &xb, form);
            for (k, v) in dual_multiply_b(s, &xb, &xa, form) {
                acc_add(&mut out, k, v.mul_zeta(c).neg_ref());
            }
            out
        }
    }
}

pub fn dual_pow<S: GradedSide>(s: &S, f: &DualElement, n: u32, form: Form) -> DualElement {
    let mut acc = epsilon(s);
    for _ in 0..n {
        acc = dual_multiply_b(s, &acc, f, form);
    }
    acc
}

fn scale(f: &DualElement, c: &CycScalar) -> DualElement {
    f.iter().map(|(k, v)| (*k, v * c)).filter(|(_, v)| !v.is_zero()).collect()
}

/// B(x, y) exponent for G-degrees given as K-vectors (characters χ = S·deg
/// for root degrees, the index itself for group characters).
fn b_exp(form: Form, x: &[i64], y: &[i64]) -> i64 {
    match form_or_none(form) {
        Some(m) => bilinear(m, x, y),
        None => 0,
    }
}

fn chi_of<S: GradedSide>(s: &S, d: &[i64]) -> Vec<i64> {
    let rd = s.rd();
    (0..rd.rank).map(|i| (0..rd.rank).map(|j| rd.sym[i][j] * d[j]).sum()).collect()
}

/// Measured scalar c with ω_a·_B X_i·_B ω_a^{-1} = c·X_i, if proportional.
pub fn commutator_scalar<S: GradedSide>(s: &S, a: &[i64], i: usize, form: Form) -> Option<CycScalar> {
    let w = character(s, a);
    let neg: Vec<i64> = a.iter().map(|x| -x).collect();
    let wi = character(s, &neg);
    let x = x_simple(s, i);
    let lhs = dual_multiply_b(s, &dual_multiply_b(s, &w, &x, form), &wi, form);
    let (k0, x0) = x.iter().next()?;
    let c = lhs.get(k0).cloned().unwrap_or_else(|| s.field().zero()).div_ref(x0)?;
    if scale(&x, &c) == lhs {
        Some(c)
    } else {
        None
    }
}

/// ω·_B X_α·_B ω^{-1} = ω(K_α)·B(α,ω)/B(ω,α)·X_α for all characters ω and
/// simple α.
pub fn commutator_check<S: GradedSide>(s: &S, form: Form) -> bool {
    for a in k_vectors(s.rank(), s.l()) {
        for i in 0..s.rank() {
            let mut d = vec![0; s.rank()];
            d[i] = 1;
            let chi = chi_of(s, &d);
            let e = a[i] + b_exp(form, &chi, &a) - b_exp(form, &a, &chi);
            match commutator_scalar(s, &a, i, form) {
                Some(c) if c == s.field().zeta_pow(e) => {}
                _ => return false,
            }
        }
    }
    true
}

/// The B-Serre combination for the ordered pair (α_i, α_j), with an optional
/// additive perturbation of the i = 0 coefficient.
pub fn bserre_element<S: GradedSide>(s: &S, i: usize, j: usize, form: Form, perturb: i64) -> DualElement {
    let rd = s.rd();
    let f = s.field();
    let a = rd.cartan[i][j];
    let n = (1 - a) as u32;
    let (mut di, mut dj) = (vec![0; rd.rank], vec![0; rd.rank]);
    di[i] = 1;
    dj[j] = 1;
    let (ci, cj) = (chi_of(s, &di), chi_of(s, &dj));
    let (baa, bab, bba) = (b_exp(form, &ci, &ci), b_exp(form, &ci, &cj), b_exp(form, &cj, &ci));
    let (xi, xj) = (x_simple(s, i), x_simple(s, j));
    let mut out = FxHashMap::default();
    for t in 0..=n {
        let mut c = specialize_lpoly(&qbinom(n, t, -rd.d(i)).expect("binomial"), rd.l);
        if t % 2 == 1 {
            c = c.neg_ref();
        }
        let e = baa * (a * (1 - a)) / 2 - bab * (n - t) as i64 - bba * t as i64;
        c = c.mul_zeta(e);
        if t == 0 && perturb != 0 {
            c = c.add_ref(&f.from_int(perturb));
        }
        let mut w = dual_pow(s, &xi, n - t, form);
        w = dual_multiply_b(s, &w, &xj, form);
        w = dual_multiply_b(s, &w, &dual_pow(s, &xi, t, form), form);
        for (k, v) in w {
            acc_add(&mut out, k, &v * &c);
        }
    }
    out
}

/// All B-Serre relations hold in (u_q^*)_B.
pub fn bserre_check<S: GradedSide>(s: &S, form: Form) -> bool {
    let r = s.rank();
    (0..r).all(|i| (0..r).all(|j| i == j || bserre_element(s, i, j, form, 0).is_empty()))
}

/// X_μ^l = 0 for every positive root μ.
pub fn nilpotency_check<S: GradedSide>(s: &S, form: Form) -> bool {
    (0..s.rd().num_roots()).all(|r| dual_pow(s, &x_root(s, r, form), s.l(), form).is_empty())
}

/// Coefficient of E^{a}⊗E^{b} in Δ̄^B(E^n), as a map per n.
fn reduced_pairs<S: GradedSide>(s: &S, n: u64, form: Form) -> FxHashMap<(u64, u64), CycScalar> {
    let form = form_or_none(form);
    let mut out = FxHashMap::default();
    for (a, b, c) in s.e_cop(n).iter() {
        let x = match form {
            Some(m) => bilinear(m, &s.chi(*a), &s.chi(*b)),
            None => 0,
        };
        acc_add(&mut out, (*a, *b), c.mul_zeta(x));
    }
    out
}

/// Dimension of new relations in degree γ of the algebra generated by the
/// X_α (the positive dual u^-_B).
///
/// With F the free algebra, I the kernel onto u^-_B and J the ideal generated
/// by I in lower degrees, the answer is dim (F/J)_γ − dim A_γ. A functional on
/// (F/J)_γ is fixed by its left derivatives a_i ∈ A_{γ−α_i}; it kills J iff its
/// right derivatives b_j also lie in A_{γ−α_j}, which is a small linear system.
pub fn new_relations<S: GradedSide>(s: &S, form: Form, gamma: &[i64]) -> usize {
    let r = s.rank();
    let one = s.field().one();
    let unit = |i: usize| {
        let mut d = vec![0; r];
        d[i] = 1;
        d
    };
    // unknown blocks: a_i then b_j
    let mut blocks: Vec<(bool, usize, Vec<u64>)> = Vec::new();
    for side in [true, false] {
        for i in 0..r {
            if gamma[i] > 0 {
                blocks.push((side, i, s.e_basis(&deg_sub(gamma, &unit(i)))));
            }
        }
    }
    let mut offset = FxHashMap::default();
    let mut n = 0;
    for (side, i, b) in &blocks {
        offset.insert((*side, *i), n);
        n += b.len();
    }
    let mut rows: Vec<SparseVec<CycScalar>> = Vec::new();
    let height: i64 = gamma.iter().sum();
    if height == 1 {
        let i = gamma.iter().position(|&x| x == 1).unwrap();
        rows.push(vec![(offset[&(true, i)], one.clone()), (offset[&(false, i)], one.neg_ref())]);
    }
    for (sa, i, ba) in &blocks {
        if !*sa {
            continue;
        }
        for j in 0..r {
            let rest = deg_sub(&deg_sub(gamma, &unit(*i)), &unit(j));
            if rest.iter().any(|&x| x < 0) {
                continue;
            }
            let bb = &blocks.iter().find(|(s2, k, _)| !*s2 && *k == j).unwrap().2;
            let xi = s.e_basis(&unit(*i))[0];
            let xj = s.e_basis(&unit(j))[0];
            for m in s.e_basis(&rest) {
                // Σ a_i[n]·coef(E^m⊗E_j in Δ̄ E^n) − Σ b_j[n]·coef(E_i⊗E^m in Δ̄ E^n)
                let mut row: BTreeMap<usize, CycScalar> = BTreeMap::new();
                for (t, &e) in ba.iter().enumerate() {
                    if let Some(c) = reduced_or_trivial(s, e, m, xj, form) {
                        row.insert(offset[&(true, *i)] + t, c);
                    }
                }
                for (t, &e) in bb.iter().enumerate() {
                    if let Some(c) = reduced_or_trivial(s, e, xi, m, form) {
                        let k = offset[&(false, j)] + t;
                        let v = row.remove(&k).unwrap_or_else(|| s.field().zero()).sub_ref(&c);
                        if !v.is_zero() {
                            row.insert(k, v);
                        }
                    }
                }
                if !row.is_empty() {
                    rows.push(row.into_iter().collect());
                }
            }
        }
    }
    let quotient = n - rank(&one, &rows);
    quotient - s.e_basis(gamma).len()
}

/// Coefficient of E^a⊗E^b in Δ̄^B(E^n), counting the trivial terms
/// E^n⊗1 and 1⊗E^n.
fn reduced_or_trivial<S: GradedSide>(s: &S, n: u64, a: u64, b: u64, form: Form) -> Option<CycScalar> {
    let c = reduced_pairs(s, n, form).get(&(a, b)).cloned()?;
    if c.is_zero() {
        None
    } else {
        Some(c)
    }
}

/// New-relation dimensions for all 0 < γ ≤ bound; zero entries omitted.
pub fn minimal_relation_dims<S: GradedSide>(s: &S, form: Form, bound: &[i64]) -> BTreeMap<QDegree, usize> {
    let mut out = BTreeMap::new();
    for g in degrees_up_to(bound) {
        let d = new_relations(s, form, &g);
        if d > 0 {
            out.insert(g, d);
        }
    }
    out
}

/// Minimal generators of u^-_B per degree: the primitive part of A_γ, i.e.
/// the kernel of the reduced coproduct.
pub fn minimal_generator_dims<S: GradedSide>(s: &S, form: Form, bound: &[i64]) -> BTreeMap<QDegree, usize> {
    let one = s.field().one();
    let mut out = BTreeMap::new();
    for g in degrees_up_to(bound) {
        let basis = s.e_basis(&g);
        if basis.is_empty() {
            continue;
        }
        let mut idx: FxHashMap<(u64, u64), usize> = FxHashMap::default();
        let vecs: Vec<SparseVec<CycScalar>> = basis
            .iter()
            .map(|&e| {
                let mut v: Vec<(usize, CycScalar)> = reduced_pairs(s, e, form)
                    .into_iter()
                    .filter(|((a, b), c)| *a != 0 && *b != 0 && !c.is_zero())
                    .map(|(k, c)| {
                        let n = idx.len();
                        (*idx.entry(k).or_insert(n), c)
                    })
                    .collect();
                v.sort_by_key(|x| x.0);
                v
            })
            .collect();
        let d = basis.len() - rank(&one, &vecs);
        if d > 0 {
            out.insert(g, d);
        }
    }
    out
}

/// G^∨-eigenvalue exponent vector of a class in degree γ, from the measured
/// commutator scalars: the character ω_a acts by ζ^{a·v} with v returned here.
pub fn measured_eigen_vector<S: GradedSide>(s: &S, form: Form, gamma: &[i64]) -> Option<Vec<i64>> {
    let r = s.rank();
    let l = s.l() as i64;
    let mut v = vec![0i64; r];
    // the exponent is linear in a; probe the unit characters
    for (p, vp) in v.iter_mut().enumerate() {
        let mut a = vec![0; r];
        a[p] = 1;
        let mut e = 0;
        for i in 0..r {
            let c = commutator_scalar(s, &a, i, form)?;
            e += gamma[i] * c.zeta_log()? as i64;
        }
        *vp = e.rem_euclid(l);
    }
    Some(v)
}

/// Exponent vector predicted by extending ω(K_α)·B(α,ω)/B(ω,α)
/// multiplicatively to degree γ: (I − 2MS)γ mod l.
pub fn predicted_eigen_vector<S: GradedSide>(s: &S, form: Form, gamma: &[i64]) -> Vec<i64> {
    crate::cohomology::eigen_vector(s.rd(), form, gamma)
}

pub fn is_trivial_eigen(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Smallest exponent e > 0 of ζ^e attained by ω_a on a class with exponent
/// vector v, over all characters a (None if the class is invariant).
pub fn eigen_exponents(v: &[i64], l: u32) -> Vec<i64> {
    let mut out: Vec<i64> = k_vectors(v.len(), l)
        .iter()
        .map(|a| a.iter().zip(v).map(|(x, y)| x * y).sum::<i64>().rem_euclid(l as i64))
        .filter(|&e| e != 0)
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn degree_label(gamma: &[i64]) -> String {
    gamma.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Pairing check: the X-words and characters span the dual in degree γ.
pub fn dual_spans<S: GradedSide>(s: &S, form: Form, gamma: &[i64]) -> bool {
    let one = s.field().one();
    let basis = s.full_basis(gamma);
    let idx: FxHashMap<u64, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let h: i64 = gamma.iter().sum();
    for _ in 0..h {
        let mut next = Vec::new();
        for w in &words {
            for i in 0..s.rank() {
                let mut v = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        words = next;
    }
    words.retain(|w| {
        let mut d = vec![0; s.rank()];
        for &i in w {
            d[i] += 1;
        }
        d.as_slice() == gamma
    });
    let mut vecs = Vec::new();
    for a in k_vectors(s.rank(), s.l()) {
        for w in &words {
            let mut f = character(s, &a);
            for &i in w {
                f = dual_multiply_b(s, &f, &x_simple(s, i), form);
            }
            let mut v: SparseVec<CycScalar> = f.iter().map(|(k, c)| (idx[k], c.clone())).collect();
            v.sort_by_key(|x| x.0);
            vecs.push(v);
        }
    }
    rank(&one, &vecs) == basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Uq;
    use crate::groupalg::enumerate_alternating;

    #[test]
    fn unit_and_generators() {
        let uq = Uq::from_label("A2", 5).unwrap();
        let x = x_simple(&uq, 0);
        assert_eq!(dual_multiply_b(&uq, &epsilon(&uq), &x, None), x);
        assert_eq!(dual_multiply_b(&uq, &x, &epsilon(&uq), None), x);
        assert!(dual_spans(&uq, None, &[1, 1]));
    }

    #[test]
    fn a1_relations() {
        let uq = Uq::from_label("A1", 5).unwrap();
        assert!(nilpotency_check(&uq, None));
        assert!(!dual_pow(&uq, &x_simple(&uq, 0), 4, None).is_empty());
        let dims = minimal_relation_dims(&uq, None, &[8]);
        assert_eq!(dims.into_iter().collect::<Vec<_>>(), vec![(vec![5], 1)]);
    }

    #[test]
    fn a2_presentation() {
        let uq = Uq::from_label("A2", 5).unwrap();
        for m in enumerate_alternating(2, 5).iter().take(2) {
            assert!(commutator_check(&uq, Some(m)));
            assert!(bserre_check(&uq, Some(m)));
            assert!(!bserre_element(&uq, 0, 1, Some(m), 1).is_empty());
        }
    }

    #[test]
    fn a2_minimal_relations_all_forms() {
        let uq = Uq::from_label("A2", 5).unwrap();
        for m in enumerate_alternating(2, 5) {
            let dims = minimal_relation_dims(&uq, Some(&m), &[8, 8]);
            let expect: BTreeMap<QDegree, usize> =
                [(vec![1, 2], 1), (vec![2, 1], 1), (vec![5, 0], 1), (vec![0, 5], 1), (vec![5, 5], 1)].into_iter().collect();
            assert_eq!(dims, expect);
            assert!(nilpotency_check(&uq, Some(&m)));
            for (g, _) in dims {
                let v = measured_eigen_vector(&uq, Some(&m), &g).unwrap();
                assert_eq!(v, predicted_eigen_vector(&uq, Some(&m), &g));
                assert_eq!(is_trivial_eigen(&v), g.iter().all(|x| x % 5 == 0));
            }
        }
    }
}
