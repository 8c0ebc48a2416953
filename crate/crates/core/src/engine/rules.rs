//! Straightening rules for Lyndon root vectors, derived over Q(v) by linear
//! algebra in the free algebra modulo the q-Serre relations.
//!
//! For root indices s > r (in the convex order) the rule expresses E_s E_r as
//! a combination of ordered PBW monomials of degree α_s + α_r.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::rootdata::{deg_le, deg_sub, LieType, QDegree, RootDatum};
use crate::scalars::{qbinom, GenericScalar};

pub type Word = Vec<u8>;
pub type WordVec = FxHashMap<Word, GenericScalar>;

/// Rules for one root datum type (independent of l).
#[derive(Debug)]
pub struct GenericRules {
    pub nroots: usize,
    /// (s, r) with s > r ↦ [(exponent vector, coefficient)]
    pub rules: HashMap<(usize, usize), Vec<(Vec<u32>, GenericScalar)>>,
}

static CACHE: OnceLock<Mutex<HashMap<(LieType, usize), Arc<GenericRules>>>> = OnceLock::new();

/// All words whose letter multiset is `deg`.
pub fn words_of_degree(deg: &[i64]) -> Vec<Word> {
    let mut out = Vec::new();
    let total: i64 = deg.iter().sum();
    let mut rem: Vec<i64> = deg.to_vec();
    let mut cur: Word = Vec::with_capacity(total as usize);
    fn go(rem: &mut Vec<i64>, cur: &mut Word, total: usize, out: &mut Vec<Word>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for i in 0..rem.len() {
            if rem[i] > 0 {
                rem[i] -= 1;
                cur.push(i as u8);
                go(rem, cur, total, out);
                cur.pop();
                rem[i] += 1;
            }
        }
    }
    go(&mut rem, &mut cur, total as usize, &mut out);
    out
}

pub fn concat(a: &WordVec, b: &WordVec) -> WordVec {
    let mut out: WordVec = FxHashMap::default();
    for (u, x) in a {
        for (w, y) in b {
            let mut k = u.clone();
            k.extend_from_slice(w);
            let c = x.mul(y);
            add_into(&mut out, k, c);
        }
    }
    out
}

fn add_into(out: &mut WordVec, k: Word, c: GenericScalar) {
    match out.get_mut(&k) {
        Some(v) => {
            *v = v.add(&c);
            if v.is_zero() {
                out.remove(&k);
            }
        }
        None => {
            if !c.is_zero() {
                out.insert(k, c);
            }
        }
    }
}

fn lin(a: &WordVec, ca: &GenericScalar, b: &WordVec, cb: &GenericScalar) -> WordVec {
    let mut out: WordVec = FxHashMap::default();
    for (k, x) in a {
        add_into(&mut out, k.clone(), x.mul(ca));
    }
    for (k, x) in b {
        add_into(&mut out, k.clone(), x.mul(cb));
    }
    out
}

/// Word expansions of the Lyndon root vectors: E_μ = E_a E_b − v^{(a,b)} E_b E_a.
pub fn root_expansions(rd: &RootDatum) -> Vec<WordVec> {
    let mut exps: Vec<Option<WordVec>> = vec![None; rd.num_roots()];
    let mut order: Vec<usize> = (0..rd.num_roots()).collect();
    order.sort_by_key(|&r| rd.roots[r].height());
    for r in order {
        let root = &rd.roots[r];
        let e = match root.split {
            None => {
                let i = root.word[0];
                let mut m = FxHashMap::default();
                m.insert(vec![i], GenericScalar::one());
                m
            }
            Some((a, b)) => {
                let ea = exps[a].as_ref().unwrap();
                let eb = exps[b].as_ref().unwrap();
                let c = rd.form(&rd.roots[a].deg, &rd.roots[b].deg);
                lin(&concat(ea, eb), &GenericScalar::one(), &concat(eb, ea), &GenericScalar::vpow(c).neg())
            }
        };
        exps[r] = Some(e);
    }
    exps.into_iter().map(|e| e.unwrap()).collect()
}

/// Ordered PBW exponent vectors of degree `deg` (no exponent bound).
pub fn pbw_monomials(rd: &RootDatum, deg: &[i64]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; rd.num_roots()];
    fn go(rd: &RootDatum, r: usize, rem: QDegree, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if r == rd.num_roots() {
            if rem.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let d = &rd.roots[r].deg;
        let mut rem2 = rem.clone();
        let mut n = 0;
        loop {
            cur[r] = n;
            go(rd, r + 1, rem2.clone(), cur, out);
            if !deg_le(d, &rem2) {
                break;
            }
            rem2 = deg_sub(&rem2, d);
            n += 1;
        }
        cur[r] = 0;
    }
    go(rd, 0, deg.to_vec(), &mut cur, &mut out);
    out
}

/// Word expansion of an ordered PBW monomial.
pub fn monomial_expansion(exps: &[WordVec], m: &[u32]) -> WordVec {
    let mut acc: WordVec = FxHashMap::default();
    acc.insert(Vec::new(), GenericScalar::one());
    for (r, &n) in m.iter().enumerate() {
        for _ in 0..n {
            acc = concat(&acc, &exps[r]);
        }
    }
    acc
}

/// The q-Serre element for (i, j): Σ_k (−1)^k [n k]_{v_i} E_i^{n−k} E_j E_i^k, n = 1 − a_ij.
pub fn serre_element(rd: &RootDatum, i: usize, j: usize) -> WordVec {
    let n = (1 - rd.cartan[i][j]) as u32;
    let mut out: WordVec = FxHashMap::default();
    for k in 0..=n {
        let mut w: Word = vec![i as u8; (n - k) as usize];
        w.push(j as u8);
        w.extend(std::iter::repeat_n(i as u8, k as usize));
        let mut c = GenericScalar::from_lpoly(qbinom(n, k, rd.d(i)).unwrap());
        if k % 2 == 1 {
            c = c.neg();
        }
        add_into(&mut out, w, c);
    }
    out
}

/// Spanning set of the degree-`deg` part of the two-sided ideal generated by
/// the q-Serre elements.
pub fn serre_ideal_span(rd: &RootDatum, deg: &[i64]) -> Vec<WordVec> {
    let mut out = Vec::new();
    for i in 0..rd.rank {
        for j in 0..rd.rank {
            if i == j {
                continue;
            }
            let sd = rd.serre_degree(i, j);
            if !deg_le(&sd, deg) {
                continue;
            }
            let s = serre_element(rd, i, j);
            let rest = deg_sub(deg, &sd);
            // split rest = left + right over all sub-degrees
            for left in sub_degrees(&rest) {
                let right = deg_sub(&rest, &left);
                let lw = words_of_degree(&left);
                let rw = words_of_degree(&right);
                for u in &lw {
                    for w in &rw {
                        let mut e: WordVec = FxHashMap::default();
                        for (k, c) in &s {
                            let mut key = u.clone();
                            key.extend_from_slice(k);
                            key.extend_from_slice(w);
                            e.insert(key, c.clone());
                        }
                        out.push(e);
                    }
                }
            }
        }
    }
    out
}

/// All degrees 0 ≤ δ ≤ deg.
pub fn sub_degrees(deg: &[i64]) -> Vec<QDegree> {
    let mut out: Vec<QDegree> = vec![vec![]];
    for &n in deg {
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
    out
}

fn to_sparse(v: &WordVec, index: &HashMap<Word, usize>) -> Vec<(usize, GenericScalar)> {
    let mut s: Vec<(usize, GenericScalar)> = v.iter().map(|(k, c)| (index[k], c.clone())).collect();
    s.sort_by_key(|x| x.0);
    s
}

/// Rules for the datum's type, derived once per process.
pub fn generic_rules(rd: &RootDatum) -> Result<Arc<GenericRules>> {
    let key = (rd.lie_type, rd.rank);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().unwrap().get(&key) {
        return Ok(r.clone());
    }
    let rules = Arc::new(derive_rules(rd)?);
    cache.lock().unwrap().insert(key, rules.clone());
    Ok(rules)
}

fn derive_rules(rd: &RootDatum) -> Result<GenericRules> {
    let n = rd.num_roots();
    let exps = root_expansions(rd);
    let mut by_degree: HashMap<QDegree, Vec<(usize, usize)>> = HashMap::new();
    for s in 0..n {
        for r in 0..s {
            let d: QDegree = rd.roots[s].deg.iter().zip(&rd.roots[r].deg).map(|(a, b)| a + b).collect();
            by_degree.entry(d).or_default().push((s, r));
        }
    }
    let mut rules = HashMap::new();
    for (deg, pairs) in by_degree {
        let words = words_of_degree(&deg);
        let index: HashMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut ech = Echelon::new(GenericScalar::one(), true);
        let ideal = serre_ideal_span(rd, &deg);
        let mut inserted = 0usize;
        for g in &ideal {
            let _ = ech.insert(&to_sparse(g, &index));
            inserted += 1;
        }
        let ideal_rank = ech.rank();
        let monos = pbw_monomials(rd, &deg);
        for m in &monos {
            let e = monomial_expansion(&exps, m);
            match ech.insert(&to_sparse(&e, &index)) {
                Ok(true) => {}
                _ => {
                    return Err(Error::Engine(format!(
                        "PBW monomials of degree {:?} are dependent modulo the Serre ideal",
                        deg
                    )))
                }
            }
        }
        if ideal_rank + monos.len() != words.len() {
            return Err(Error::Engine(format!(
                "PBW monomials do not span degree {:?}: {} + {} != {}",
                deg,
                ideal_rank,
                monos.len(),
                words.len()
            )));
        }
        for (s, r) in pairs {
            let target = concat(&exps[s], &exps[r]);
            let x = ech
                .solve(&to_sparse(&target, &index))
                .ok_or_else(|| Error::Engine("straightening target outside the span".into()))?;
            let rule: Vec<(Vec<u32>, GenericScalar)> = x
                .into_iter()
                .filter(|(j, _)| *j >= inserted)
                .map(|(j, c)| (monos[j - inserted].clone(), c))
                .collect();
            rules.insert((s, r), rule);
        }
    }
    Ok(GenericRules { nroots: n, rules })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_rule_shape() {
        let rd = RootDatum::from_label("A2", 5).unwrap();
        let rules = generic_rules(&rd).unwrap();
        // E_2 E_1 = v E_1 E_2 − v E_12 (up to convention), two terms
        let r = &rules.rules[&(2, 0)];
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|(_, c)| c.is_laurent()));
        // E_12 and E_1 q-commute
        let r = &rules.rules[&(1, 0)];
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].0, vec![1, 1, 0]);
    }

    #[test]
    fn b2_and_g2_rules_exist() {
        for lab in ["B2", "G2"] {
            let rd = RootDatum::from_label(lab, 13).unwrap();
            let rules = generic_rules(&rd).unwrap();
            let n = rd.num_roots();
            assert_eq!(rules.rules.len(), n * (n - 1) / 2);
        }
    }
}
