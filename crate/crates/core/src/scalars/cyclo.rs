//! Exact arithmetic in the cyclotomic field Q(ζ_l).
//!
//! Elements are stored as `num / den` where `num` is an integer vector in the
//! power basis 1, ζ, …, ζ^{φ(l)−1} of Q[x]/Φ_l. The representation is kept
//! canonical (content of `num` coprime to `den`, `den > 0`), so equality is
//! structural. Arithmetic runs on machine integers with checked i128
//! intermediates and falls back to big integers on overflow.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::Coeff;

/// Static data for Q(ζ_l): the cyclotomic polynomial and reduction tables.
#[derive(Debug)]
pub struct CycField {
    l: u32,
    phi: usize,
    prime: bool,
    /// `red[k]` = x^k mod Φ_l, for 0 ≤ k < red.len().
    red: Vec<Vec<i64>>,
    units: Vec<u32>,
    zeta_pows: OnceLock<Vec<CycScalar>>,
}

static FIELDS: OnceLock<Mutex<HashMap<u32, &'static CycField>>> = OnceLock::new();

impl CycField {
    /// The shared field of order `l` (built once per process, then cached).
    pub fn get(l: u32) -> &'static CycField {
        assert!(l >= 1, "cyclotomic order must be positive");
        let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = map.lock().unwrap();
        if let Some(f) = guard.get(&l) {
            return f;
        }
        let f: &'static CycField = Box::leak(Box::new(CycField::build(l)));
        guard.insert(l, f);
        f
    }

    fn build(l: u32) -> CycField {
        let phi_poly = cyclotomic_poly(l);
        let phi = phi_poly.len() - 1;
        let top = (l as usize).max(2 * phi);
        let mut red: Vec<Vec<i64>> = Vec::with_capacity(top);
        for k in 0..top {
            let mut v = vec![0i64; phi];
            if k < phi {
                v[k] = 1;
            } else {
                // x^k = x * x^{k-1}; shift then fold the overflow coefficient.
                let prev = &red[k - 1];
                let carry = prev[phi - 1];
                for i in (1..phi).rev() {
                    v[i] = prev[i - 1];
                }
                v[0] = 0;
                for (i, c) in phi_poly.iter().take(phi).enumerate() {
                    v[i] -= carry * c;
                }
            }
            red.push(v);
        }
        let units = (1..l.max(2)).filter(|k| k.gcd(&l) == 1).collect();
        CycField {
            l,
            phi,
            prime: phi + 1 == l as usize,
            red,
            units,
            zeta_pows: OnceLock::new(),
        }
    }

    pub fn order(&self) -> u32 {
        self.l
    }

    /// Degree φ(l) of the field over Q.
    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn zero(&'static self) -> CycScalar {
        CycScalar::small(self, SmallVec::from_elem(0, self.phi), 1)
    }

    pub fn one(&'static self) -> CycScalar {
        self.from_int(1)
    }

    pub fn from_int(&'static self, n: i64) -> CycScalar {
        let mut v: SmallVec<[i64; 6]> = SmallVec::from_elem(0, self.phi);
        v[0] = n;
        CycScalar::small(self, v, 1)
    }

    pub fn from_ratio(&'static self, n: i64, d: i64) -> CycScalar {
        assert!(d != 0, "zero denominator");
        let mut v: SmallVec<[i64; 6]> = SmallVec::from_elem(0, self.phi);
        v[0] = n;
        let mut x = CycScalar::small(self, v, d);
        x.normalize();
        x
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(&'static self, k: i64) -> CycScalar {
        let pows = self.zeta_pows.get_or_init(|| {
            (0..self.l as usize)
                .map(|j| {
                    let v: SmallVec<[i64; 6]> = self.red[j].iter().copied().collect();
                    CycScalar::small(self, v, 1)
                })
                .collect()
        });
        pows[k.rem_euclid(self.l as i64) as usize].clone()
    }

    /// Build from rational coordinates in the power basis (length φ(l)).
    pub fn from_rationals(&'static self, coords: &[(BigInt, BigInt)]) -> CycScalar {
        assert_eq!(coords.len(), self.phi, "coordinate vector has wrong length");
        let mut den = BigInt::one();
        for (_, d) in coords {
            assert!(!d.is_zero(), "zero denominator");
            den = den.lcm(d);
        }
        let num: Vec<BigInt> = coords.iter().map(|(n, d)| n * (&den / d)).collect();
        CycScalar::from_big(self, num, den)
    }

    /// Value of an integer polynomial Σ c_i x^{e_i} at ζ.
    pub fn eval_terms(&'static self, terms: &[(i64, BigInt)]) -> CycScalar {
        let mut acc = vec![BigInt::zero(); self.phi];
        for (e, c) in terms {
            let k = e.rem_euclid(self.l as i64) as usize;
            for (a, r) in acc.iter_mut().zip(&self.red[k]) {
                if *r != 0 {
                    *a += c * r;
                }
            }
        }
        CycScalar::from_big(self, acc, BigInt::one())
    }
}

/// Coefficients of Φ_l, lowest degree first.
fn cyclotomic_poly(l: u32) -> Vec<i64> {
    // x^l - 1 divided by Φ_d for every proper divisor d of l.
    let mut p = vec![0i64; l as usize + 1];
    p[0] = -1;
    p[l as usize] = 1;
    for d in 1..l {
        if l.is_multiple_of(d) {
            p = exact_div_monic(&p, &cyclotomic_poly(d));
        }
    }
    p
}

fn exact_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let da = a.len() - 1;
    let mut q = vec![0i64; da - db + 1];
    for i in (0..=da - db).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

#[derive(Clone)]
enum Repr {
    Small { num: SmallVec<[i64; 6]>, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

/// An element of Q(ζ_l).
#[derive(Clone)]
pub struct CycScalar {
    field: &'static CycField,
    repr: Repr,
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.field.l != other.field.l {
            return false;
        }
        match (&self.repr, &other.repr) {
            (Repr::Small { num: a, den: d }, Repr::Small { num: b, den: e }) => d == e && a == b,
            (Repr::Big { num: a, den: d }, Repr::Big { num: b, den: e }) => d == e && a == b,
            _ => false,
        }
    }
}
impl Eq for CycScalar {}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl CycScalar {
    fn small(field: &'static CycField, num: SmallVec<[i64; 6]>, den: i64) -> CycScalar {
        CycScalar { field, repr: Repr::Small { num, den } }
    }

    pub fn field(&self) -> &'static CycField {
        self.field
    }

    /// Canonicalize from i128 parts; falls back to big integers if needed.
    fn from_i128(field: &'static CycField, num: &[i128], den: i128) -> CycScalar {
        debug_assert!(den != 0);
        let mut g = den.unsigned_abs();
        for &c in num {
            if g == 1 {
                break;
            }
            g = gcd_u128(g, c.unsigned_abs());
        }
        let g = g as i128;
        let sgn = if den < 0 { -1 } else { 1 };
        let den2 = den / g * sgn;
        let mut out: SmallVec<[i64; 6]> = SmallVec::with_capacity(num.len());
        let mut fits = i64::try_from(den2).is_ok();
        if fits {
            for &c in num {
                match i64::try_from(c / g * sgn) {
                    Ok(v) => out.push(v),
                    Err(_) => {
                        fits = false;
                        break;
                    }
                }
            }
        }
        if fits {
            return CycScalar::small(field, out, den2 as i64);
        }
        let numb = num.iter().map(|&c| BigInt::from(c / g * sgn)).collect();
        CycScalar { field, repr: Repr::Big { num: numb, den: BigInt::from(den2) } }
    }

    fn from_big(field: &'static CycField, mut num: Vec<BigInt>, mut den: BigInt) -> CycScalar {
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        if let Some(d) = den.to_i64() {
            let small: Option<SmallVec<[i64; 6]>> = num.iter().map(|c| c.to_i64()).collect();
            if let Some(s) = small {
                return CycScalar::small(field, s, d);
            }
        }
        CycScalar { field, repr: Repr::Big { num, den } }
    }

    fn normalize(&mut self) {
        let (num, den) = self.big_parts();
        *self = CycScalar::from_big(self.field, num, den);
    }

    fn big_parts(&self) -> (Vec<BigInt>, BigInt) {
        match &self.repr {
            Repr::Small { num, den } => (num.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(*den)),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().all(|&c| c == 0),
            Repr::Big { num, .. } => num.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small { num, den } => *den == 1 && num[0] == 1 && num[1..].iter().all(|&c| c == 0),
            Repr::Big { .. } => false,
        }
    }

    /// Rational coordinates in the power basis, each reduced.
    pub fn to_rationals(&self) -> Vec<(BigInt, BigInt)> {
        let (num, den) = self.big_parts();
        num.into_iter()
            .map(|n| {
                let g = n.gcd(&den);
                if n.is_zero() {
                    (BigInt::zero(), BigInt::one())
                } else {
                    (&n / &g, &den / &g)
                }
            })
            .collect()
    }

    /// Some(r) if the element is the rational r.
    pub fn as_rational(&self) -> Option<(BigInt, BigInt)> {
        let (num, den) = self.big_parts();
        if num[1..].iter().all(|c| c.is_zero()) {
            Some((num[0].clone(), den))
        } else {
            None
        }
    }

    pub fn add_ref(&self, o: &CycScalar) -> CycScalar {
        debug_assert_eq!(self.field.l, o.field.l);
        if let (Repr::Small { num: a, den: d }, Repr::Small { num: b, den: e }) = (&self.repr, &o.repr) {
            if d == e {
                let mut out: SmallVec<[i64; 6]> = SmallVec::with_capacity(a.len());
                let mut ok = true;
                for (x, y) in a.iter().zip(b) {
                    match x.checked_add(*y) {
                        Some(s) => out.push(s),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    if *d == 1 {
                        return CycScalar::small(self.field, out, 1);
                    }
                    let n: SmallVec<[i128; 6]> = out.iter().map(|&c| c as i128).collect();
                    return CycScalar::from_i128(self.field, &n, *d as i128);
                }
            } else {
                let (d, e) = (*d as i128, *e as i128);
                let g = d.gcd(&e);
                let (fd, fe) = (e / g, d / g);
                if let Some(den) = d.checked_mul(fd) {
                    let n: Option<SmallVec<[i128; 6]>> = a
                        .iter()
                        .zip(b)
                        .map(|(&x, &y)| (x as i128).checked_mul(fd)?.checked_add((y as i128).checked_mul(fe)?))
                        .collect();
                    if let Some(n) = n {
                        return CycScalar::from_i128(self.field, &n, den);
                    }
                }
            }
        }
        let (a, d) = self.big_parts();
        let (b, e) = o.big_parts();
        let den = &d * &e;
        let num = a.iter().zip(&b).map(|(x, y)| x * &e + y * &d).collect();
        CycScalar::from_big(self.field, num, den)
    }

    pub fn neg_ref(&self) -> CycScalar {
        match &self.repr {
            Repr::Small { num, den } => {
                if num.iter().all(|&c| c != i64::MIN) {
                    return CycScalar::small(self.field, num.iter().map(|&c| -c).collect(), *den);
                }
                let (n, d) = self.big_parts();
                CycScalar::from_big(self.field, n.into_iter().map(|c| -c).collect(), d)
            }
            Repr::Big { num, den } => {
                CycScalar { field: self.field, repr: Repr::Big { num: num.iter().map(|c| -c).collect(), den: den.clone() } }
            }
        }
    }

    pub fn sub_ref(&self, o: &CycScalar) -> CycScalar {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &CycScalar) -> CycScalar {
        debug_assert_eq!(self.field.l, o.field.l);
        let f = self.field;
        if self.is_zero() || o.is_zero() {
            return f.zero();
        }
        if let (Repr::Small { num: a, den: d }, Repr::Small { num: b, den: e }) = (&self.repr, &o.repr) {
            if let Some(r) = mul_small(f, a, *d, b, *e) {
                return r;
            }
        }
        let (a, d) = self.big_parts();
        let (b, e) = o.big_parts();
        let mut conv = vec![BigInt::zero(); 2 * f.phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = conv[..f.phi].to_vec();
        for (k, c) in conv.iter().enumerate().skip(f.phi) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&f.red[k]) {
                if *r != 0 {
                    *o += c * r;
                }
            }
        }
        CycScalar::from_big(f, out, d * e)
    }

    /// Multiply by ζ^k.
    pub fn mul_zeta(&self, k: i64) -> CycScalar {
        let f = self.field;
        let l = f.l as usize;
        let k = k.rem_euclid(l as i64) as usize;
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        if f.prime {
            if let Repr::Small { num, den } = &self.repr {
                let mut w = [0i64; 64];
                if l <= 64 {
                    for (i, &c) in num.iter().enumerate() {
                        w[(i + k) % l] = c;
                    }
                    let top = w[l - 1];
                    let mut out: SmallVec<[i64; 6]> = SmallVec::with_capacity(f.phi);
                    for &c in w.iter().take(l - 1) {
                        match c.checked_sub(top) {
                            Some(v) => out.push(v),
                            None => return self.mul_ref(&f.zeta_pow(k as i64)),
                        }
                    }
                    return CycScalar::small(f, out, *den);
                }
            }
        }
        self.mul_ref(&f.zeta_pow(k as i64))
    }

    /// Apply the Galois automorphism ζ ↦ ζ^k (k coprime to l).
    pub fn galois(&self, k: u32) -> CycScalar {
        let f = self.field;
        let (num, den) = self.big_parts();
        let mut acc = vec![BigInt::zero(); f.phi];
        for (i, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as u64 * k as u64 % f.l as u64) as usize;
            for (a, r) in acc.iter_mut().zip(&f.red[e]) {
                if *r != 0 {
                    *a += c * r;
                }
            }
        }
        CycScalar::from_big(f, acc, den)
    }

    /// Multiplicative inverse via the product of Galois conjugates.
    pub fn inv(&self) -> Option<CycScalar> {
        if self.is_zero() {
            return None;
        }
        let f = self.field;
        let mut conj = f.one();
        for &k in &f.units {
            if k != 1 {
                conj = conj.mul_ref(&self.galois(k));
            }
        }
        let norm = self.mul_ref(&conj);
        let (n, d) = norm.as_rational().expect("field norm must be rational");
        let scale = CycScalar::from_big(f, {
            let mut v = vec![BigInt::zero(); f.phi];
            v[0] = d;
            v
        }, n);
        Some(conj.mul_ref(&scale))
    }

    pub fn div_ref(&self, o: &CycScalar) -> Option<CycScalar> {
        o.inv().map(|i| self.mul_ref(&i))
    }

    pub fn pow(&self, mut e: u64) -> CycScalar {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    /// Integer exponent k with self = ζ^k, if self is an l-th root of unity.
    pub fn zeta_log(&self) -> Option<u32> {
        let f = self.field;
        (0..f.l).find(|&k| *self == f.zeta_pow(k as i64))
    }
}

fn mul_small(f: &'static CycField, a: &[i64], d: i64, b: &[i64], e: i64) -> Option<CycScalar> {
    let phi = f.phi;
    let mut conv: SmallVec<[i128; 16]> = SmallVec::from_elem(0, 2 * phi - 1);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                conv[i + j] = conv[i + j].checked_add(x as i128 * y as i128)?;
            }
        }
    }
    for k in (phi..2 * phi - 1).rev() {
        let c = conv[k];
        if c == 0 {
            continue;
        }
        for (i, &r) in f.red[k].iter().enumerate() {
            if r != 0 {
                conv[i] = conv[i].checked_add(c.checked_mul(r as i128)?)?;
            }
        }
    }
    let den = (d as i128).checked_mul(e as i128)?;
    Some(CycScalar::from_i128(f, &conv[..phi], den))
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{}", self)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords = self.to_rationals();
        let mut first = true;
        for (i, (n, d)) in coords.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let mag = if d.is_one() { n.abs().to_string() } else { format!("{}/{}", n.abs(), d) };
            let sign = if n.is_negative() { "-" } else { "+" };
            if first {
                if n.is_negative() {
                    write!(fm, "-")?;
                }
            } else {
                write!(fm, " {} ", sign)?;
            }
            first = false;
            match i {
                0 => write!(fm, "{}", mag)?,
                _ => {
                    let z = if i == 1 { "z".to_string() } else { format!("z^{}", i) };
                    if mag == "1" {
                        write!(fm, "{}", z)?
                    } else {
                        write!(fm, "{}*{}", mag, z)?
                    }
                }
            }
        }
        if first {
            write!(fm, "0")?;
        }
        Ok(())
    }
}

macro_rules! impl_ops {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&CycScalar> for &CycScalar {
            type Output = CycScalar;
            fn $m(self, o: &CycScalar) -> CycScalar {
                self.$f(o)
            }
        }
        impl std::ops::$tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, o: CycScalar) -> CycScalar {
                self.$f(&o)
            }
        }
    };
}
impl_ops!(Add, add, add_ref);
impl_ops!(Sub, sub, sub_ref);
impl_ops!(Mul, mul, mul_ref);

impl std::ops::Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        self.neg_ref()
    }
}
impl std::ops::Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        self.neg_ref()
    }
}
impl std::ops::AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, o: &CycScalar) {
        *self = self.add_ref(o);
    }
}

impl Coeff for CycScalar {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        self.field.from_int(n)
    }
    fn vpow_like(&self, k: i64) -> Self {
        self.field.zeta_pow(k)
    }
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn sub(&self, o: &Self) -> Self {
        self.sub_ref(o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn inv(&self) -> Option<Self> {
        CycScalar::inv(self)
    }
    fn mul_vpow(&self, k: i64) -> Self {
        self.mul_zeta(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(15), vec![1, -1, 0, 1, -1, 1, 0, -1, 1]);
    }

    #[test]
    fn zeta_relations() {
        for l in [5u32, 7, 9, 15] {
            let f = CycField::get(l);
            assert!(f.zeta_pow(l as i64).is_one());
            let mut s = f.zero();
            for k in 0..l {
                s = s + f.zeta_pow(k as i64);
            }
            // Σ ζ^k = 0 for every primitive root of order l > 1.
            assert!(s.is_zero(), "l={}", l);
        }
    }

    #[test]
    fn mul_zeta_matches_mul() {
        let f = CycField::get(7);
        let x = f.from_ratio(3, 2) + f.zeta_pow(3).mul_ref(&f.from_int(-5));
        for k in -8..8 {
            assert_eq!(x.mul_zeta(k), x.mul_ref(&f.zeta_pow(k)));
        }
    }

    #[test]
    fn inverse_composite_order() {
        let f = CycField::get(15);
        let x = f.one() + f.zeta_pow(1) + f.from_int(3).mul_ref(&f.zeta_pow(4));
        let y = x.inv().unwrap();
        assert!((x * y).is_one());
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let f = CycField::get(5);
        let big = f.from_int(i64::MAX / 2) + f.zeta_pow(1);
        let sq = big.mul_ref(&big);
        let back = sq.div_ref(&big).unwrap();
        assert_eq!(back, big);
    }
}
