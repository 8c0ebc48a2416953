//! Quantum integers, factorials and Gaussian binomials.

use super::cyclo::CycScalar;
use super::generic::specialize_lpoly;
use super::poly::LPoly;
use crate::error::{Error, Result};

/// [n]_{v^d} = Σ_{i=0}^{n-1} v^{d(n-1-2i)}.
pub fn qint(n: u32, d: i64) -> LPoly {
    let terms: Vec<(i64, i64)> = (0..n as i64).map(|i| (d * (n as i64 - 1 - 2 * i), 1)).collect();
    LPoly::from_terms(&terms)
}

/// [n]_{v^d}! as a Laurent polynomial.
pub fn qfactorial(n: u32, d: i64) -> LPoly {
    (1..=n).fold(LPoly::one(), |acc, k| acc.mul(&qint(k, d)))
}

/// Gaussian binomial [n choose m]_{v^d}, via the q-Pascal recursion
/// [n m] = v^{dm}[n-1 m] + v^{d(m-n)}[n-1 m-1].
pub fn qbinom(n: u32, m: u32, d: i64) -> Result<LPoly> {
    if m > n {
        return Err(Error::Domain(format!("binomial [{} choose {}] has m > n", n, m)));
    }
    let mut row = vec![LPoly::one()];
    for k in 1..=n {
        let mut next = Vec::with_capacity(k as usize + 1);
        for j in 0..=k {
            let mut acc = LPoly::zero();
            if j < k {
                acc = acc.add(&LPoly::monomial(d * j as i64).mul(&row[j as usize]));
            }
            if j > 0 {
                acc = acc.add(&LPoly::monomial(d * (j as i64 - k as i64)).mul(&row[j as usize - 1]));
            }
            next.push(acc);
        }
        row = next;
    }
    Ok(row.swap_remove(m as usize))
}

/// Which scalars a q-number should be returned in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarMode {
    Generic,
    Cyclotomic(u32),
}

/// A q-number value in the requested mode.
#[derive(Clone, Debug, PartialEq)]
pub enum QValue {
    Generic(LPoly),
    Cyclotomic(CycScalar),
}

/// [n choose m]_{q_α} with q_α = q^d.
pub fn q_binomial(n: u32, m: u32, d: i64, mode: ScalarMode) -> Result<QValue> {
    let p = qbinom(n, m, d)?;
    Ok(match mode {
        ScalarMode::Generic => QValue::Generic(p),
        ScalarMode::Cyclotomic(l) => QValue::Cyclotomic(specialize_lpoly(&p, l)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(qbinom(2, 1, 1).unwrap(), LPoly::from_terms(&[(1, 1), (-1, 1)]));
        assert_eq!(qint(3, 2), LPoly::from_terms(&[(4, 1), (0, 1), (-4, 1)]));
        assert!(qbinom(2, 3, 1).is_err());
    }
}
