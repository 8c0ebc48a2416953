//! Sparse exact elimination over a field of `Coeff` scalars.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::scalars::Coeff;

/// Sparse vector: sorted (index, nonzero coefficient) pairs.
pub type SparseVec<C> = Vec<(usize, C)>;

pub fn sparse_from_map<C: Coeff>(m: BTreeMap<usize, C>) -> SparseVec<C> {
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

struct Row<C> {
    vec: SparseVec<C>,
    combo: SparseVec<C>,
}

/// Incremental semi-echelon basis. Each stored row has a distinct pivot (its
/// first index) with coefficient 1. Optionally tracks, for every row, its
/// expression in terms of the inserted vectors.
pub struct Echelon<C: Coeff> {
    rows: Vec<Row<C>>,
    pivots: FxHashMap<usize, usize>,
    track: bool,
    inserted: usize,
    one: C,
}

/// Subtract c·row from an accumulator.
fn axpy<C: Coeff>(acc: &mut BTreeMap<usize, C>, c: &C, row: &[(usize, C)]) {
    for (i, x) in row {
        let t = c.mul(x);
        match acc.get_mut(i) {
            Some(v) => {
                *v = v.sub(&t);
                if v.is_zero() {
                    acc.remove(i);
                }
            }
            None => {
                acc.insert(*i, t.neg());
            }
        }
    }
}

impl<C: Coeff> Echelon<C> {
    /// `one` fixes the scalar field (needed to build zeros for cyclotomic scalars).
    pub fn new(one: C, track: bool) -> Self {
        Echelon { rows: Vec::new(), pivots: FxHashMap::default(), track, inserted: 0, one }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce v against the basis; returns the remainder and (if tracking) the
    /// combination r with v − remainder = Σ r_j (inserted vector j).
    fn reduce_full(&self, v: &[(usize, C)]) -> (SparseVec<C>, BTreeMap<usize, C>) {
        let mut acc: BTreeMap<usize, C> = v.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
        let mut out: SparseVec<C> = Vec::new();
        let mut used: BTreeMap<usize, C> = BTreeMap::new();
        while let Some((i, c)) = acc.pop_first() {
            match self.pivots.get(&i) {
                Some(&r) => {
                    let row = &self.rows[r];
                    axpy(&mut acc, &c, &row.vec[1..]);
                    if self.track {
                        // used += c·combo
                        let neg = c.neg();
                        axpy(&mut used, &neg, &row.combo);
                    }
                }
                None => out.push((i, c)),
            }
        }
        (out, used)
    }

    pub fn reduce(&self, v: &[(usize, C)]) -> SparseVec<C> {
        self.reduce_full(v).0
    }

    pub fn is_in_span(&self, v: &[(usize, C)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Insert a vector. Returns Ok(true) if it enlarged the span; when tracking
    /// and the vector was dependent, returns Err(kernel combination) expressing
    /// a linear relation among the inserted vectors.
    pub fn insert(&mut self, v: &[(usize, C)]) -> std::result::Result<bool, SparseVec<C>> {
        let idx = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce_full(v);
        // v = rem + Σ used_j · v_j  ⇒  rem = v − Σ used_j v_j
        let mut combo: BTreeMap<usize, C> = BTreeMap::new();
        if self.track {
            combo.insert(idx, self.one.clone());
            for (j, c) in used {
                combo.insert(j, c.neg());
            }
        }
        if rem.is_empty() {
            if self.track {
                return Err(sparse_from_map(combo));
            }
            return Ok(false);
        }
        let inv = rem[0].1.inv().expect("nonzero pivot");
        let vec: SparseVec<C> = rem.iter().map(|(i, c)| (*i, c.mul(&inv))).collect();
        let combo: SparseVec<C> = combo.into_iter().map(|(i, c)| (i, c.mul(&inv))).collect();
        self.pivots.insert(vec[0].0, self.rows.len());
        self.rows.push(Row { vec, combo });
        Ok(true)
    }

    /// Coefficients x with Σ x_j (inserted j) = t, if t is in the span.
    /// Requires tracking.
    pub fn solve(&self, t: &[(usize, C)]) -> Option<SparseVec<C>> {
        assert!(self.track, "solve requires a tracking echelon");
        let (rem, used) = self.reduce_full(t);
        if !rem.is_empty() {
            return None;
        }
        Some(sparse_from_map(used))
    }
}

/// Rank of a list of sparse vectors.
pub fn rank<C: Coeff>(one: &C, vecs: &[SparseVec<C>]) -> usize {
    let mut e = Echelon::new(one.clone(), false);
    for v in vecs {
        let _ = e.insert(v);
    }
    e.rank()
}

/// Basis of the kernel of the map e_j ↦ vecs[j].
pub fn kernel<C: Coeff>(one: &C, vecs: &[SparseVec<C>]) -> Vec<SparseVec<C>> {
    let mut e = Echelon::new(one.clone(), true);
    let mut ker = Vec::new();
    for v in vecs {
        if let Err(k) = e.insert(v) {
            ker.push(k);
        }
    }
    ker
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::CycField;

    #[test]
    fn solve_and_kernel() {
        let f = CycField::get(5);
        let z = f.zeta_pow(1);
        let one = f.one();
        let cols = vec![
            vec![(0, one.clone()), (1, z.clone())],
            vec![(1, one.clone()), (2, one.clone())],
            vec![(0, one.clone()), (1, z.add_ref(&one)), (2, one.clone())],
        ];
        let ker = kernel(&one, &cols);
        assert_eq!(ker.len(), 1);
        let mut e = Echelon::new(one.clone(), true);
        for c in &cols {
            let _ = e.insert(c);
        }
        let t = vec![(0, f.from_int(2)), (1, z.mul_ref(&f.from_int(2)).add_ref(&f.from_int(3))), (2, f.from_int(3))];
        let x = e.solve(&t).unwrap();
        // check Σ x_j cols_j = t
        let mut acc: BTreeMap<usize, _> = BTreeMap::new();
        for (j, c) in &x {
            let neg = c.neg_ref();
            axpy(&mut acc, &neg, &cols[*j]);
        }
        assert_eq!(sparse_from_map(acc), t);
        assert!(e.solve(&[(3, one.clone())]).is_none());
    }
}
