use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::ToPrimitive;
use proptest::prelude::*;
use qborel::cohomology::{cobar_d1, cobar_d2, h_dims, solve_bounding, Route};
use qborel::dp_moves::dp_twist_simple;
use qborel::dualside::{
    bserre_check, bserre_element, character, dual_multiply_b, dual_pow, epsilon, minimal_relation_dims,
    nilpotency_check, x_root, x_simple,
};
use qborel::engine::{BigAlgebra, Cop, Elem, GradedSide, Tensor2, Uq};
use qborel::rootdata::RootDatum;
use qborel::scalars::CycScalar;
use qborel::tensor_hopf::{degree_of2, exp_nilpotent, gauge};
use rustc_hash::FxHashMap;

fn a1() -> &'static Uq {
    static U: OnceLock<Uq> = OnceLock::new();
    U.get_or_init(|| Uq::from_label("A1", 5).unwrap())
}

fn a2() -> &'static Uq {
    static U: OnceLock<Uq> = OnceLock::new();
    U.get_or_init(|| Uq::from_label("A2", 5).unwrap())
}

fn single(m: u64, c: CycScalar) -> Elem {
    [(m, c)].into_iter().collect()
}

fn component(uq: &Uq, j: &Tensor2, deg: &[i64]) -> Tensor2 {
    j.iter().filter(|(k, _)| degree_of2(uq, k) == deg).map(|(k, c)| (*k, c.clone())).collect()
}

fn num(x: &CycScalar) -> (f64, f64) {
    let l = x.field().order() as f64;
    x.to_rationals().iter().enumerate().fold((0.0, 0.0), |acc, (k, (n, d))| {
        let c = n.to_f64().unwrap() / d.to_f64().unwrap();
        let t = 2.0 * std::f64::consts::PI * k as f64 / l;
        (acc.0 + c * t.cos(), acc.1 + c * t.sin())
    })
}

// ---------- dual side ----------

#[test]
fn counit_is_the_unit() {
    let uq = a2();
    let m = vec![vec![0, 1], vec![4, 0]];
    for form in [None, Some(m.as_slice())] {
        let x = x_simple(uq, 1);
        assert_eq!(dual_multiply_b(uq, &epsilon(uq), &x, form), x);
        assert_eq!(dual_multiply_b(uq, &x, &epsilon(uq), form), x);
    }
}

#[test]
fn simple_functionals_pair_with_generators() {
    let uq = a2();
    for i in 0..2 {
        let x = x_simple(uq, i);
        for k in uq.k_vectors() {
            for j in 0..2 {
                let v = x.get(&uq.mono(&k, uq.e_simple(j)));
                if i == j {
                    assert!(v.unwrap().is_one());
                } else {
                    assert!(v.is_none());
                }
            }
        }
        assert_eq!(x.len(), 25);
    }
}

#[test]
fn characters_conjugate_simple_functionals() {
    // with M = 0: ω_a X_i ω_{−a} = ζ^{a_i} X_i
    let uq = a2();
    for a in [[1i64, 0], [0, 1], [2, 3]] {
        let neg = [-a[0], -a[1]];
        for i in 0..2 {
            let x = x_simple(uq, i);
            let c = dual_multiply_b(uq, &dual_multiply_b(uq, &character(uq, &a), &x, None), &character(uq, &neg), None);
            let expect: Elem = x.iter().map(|(m, v)| (*m, v.mul_zeta(a[i]))).collect();
            assert_eq!(c, expect);
        }
    }
    // with M ≠ 0 the result is still a root-of-unity multiple of X_i
    let m = vec![vec![0, 1], vec![4, 0]];
    let a = [1i64, 2];
    for i in 0..2 {
        let x = x_simple(uq, i);
        let c = dual_multiply_b(uq, &dual_multiply_b(uq, &character(uq, &a), &x, Some(&m)), &character(uq, &[-1, -2]), Some(&m));
        let ratio = c.values().next().unwrap().clone();
        assert!(ratio.zeta_log().is_some());
        let expect: Elem = x.iter().map(|(k, v)| (*k, v * &ratio)).collect();
        assert_eq!(c, expect);
    }
}

#[test]
fn bserre_relations() {
    let uq = a2();
    assert!(bserre_check(uq, None));
    for m in qborel::groupalg::enumerate_alternating(2, 5) {
        assert!(bserre_check(uq, Some(&m)));
    }
    let m = vec![vec![0, 2], vec![3, 0]];
    assert!(!bserre_element(uq, 0, 1, Some(&m), 1).is_empty());
}

#[test]
fn root_functionals_are_nilpotent() {
    let uq = a1();
    assert!(nilpotency_check(uq, None));
    let x = x_simple(uq, 0);
    let x4 = dual_pow(uq, &x, 4, None);
    // X^4(E^4) = q^{−6}[4][3][2]
    let v = x4.get(&uq.plus.pack(&[4])).unwrap();
    let qi = |n: i64| (0..n).fold((0.0, 0.0), |acc, i| {
        let t = 2.0 * std::f64::consts::PI * (n - 1 - 2 * i) as f64 / 5.0;
        (acc.0 + t.cos(), acc.1 + t.sin())
    });
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let t = -2.0 * std::f64::consts::PI * 6.0 / 5.0;
    let expect = mul(mul(mul(qi(4), qi(3)), qi(2)), (t.cos(), t.sin()));
    let got = num(v);
    assert!((got.0 - expect.0).abs() < 1e-9 && (got.1 - expect.1).abs() < 1e-9);

    let uq = a2();
    let m = vec![vec![0, 1], vec![4, 0]];
    let r = uq.rd.root_index(&[1, 1]).unwrap();
    for form in [None, Some(m.as_slice())] {
        let x = x_root(uq, r, form);
        assert!(dual_pow(uq, &x, 5, form).is_empty());
        assert!(!dual_pow(uq, &x, 4, form).is_empty());
    }
}

#[test]
fn minimal_relations() {
    let uq = a1();
    let got = minimal_relation_dims(uq, None, &[6]);
    assert_eq!(got, [(vec![5], 1)].into_iter().collect::<BTreeMap<_, _>>());

    let uq = a2();
    let m = vec![vec![0, 1], vec![4, 0]];
    let expect: BTreeMap<Vec<i64>, usize> =
        [(vec![1, 2], 1), (vec![2, 1], 1), (vec![5, 0], 1), (vec![0, 5], 1), (vec![5, 5], 1)].into_iter().collect();
    assert_eq!(minimal_relation_dims(uq, Some(&m), &[5, 5]), expect);
}

// ---------- cohomology ----------

#[test]
fn d1_examples() {
    let uq = a1();
    let f = uq.f;
    assert!(cobar_d1(uq, None, &FxHashMap::default()).unwrap().is_empty());
    let e = uq.e_simple(0);
    let d = cobar_d1(uq, None, &single(e, f.one())).unwrap();
    let expect: Tensor2 = [((uq.k_mono(&[0]), e), f.one()), ((uq.k_mono(&[1]), e), -f.one())].into_iter().collect();
    assert_eq!(d, expect);
    let c = f.zeta_pow(2) + f.from_int(3);
    let scaled = cobar_d1(uq, None, &single(e, c.clone())).unwrap();
    assert_eq!(scaled, expect.iter().map(|(k, v)| (*k, v * &c)).collect::<Tensor2>());
}

fn homogeneous(uq: &Uq, deg: &[i64], picks: &[(usize, i64)]) -> Elem {
    let basis = uq.basis_of_degree(deg);
    let mut x: Elem = FxHashMap::default();
    for (i, c) in picks {
        let e = x.entry(basis[i % basis.len()]).or_insert(uq.f.zero());
        *e = &*e + &uq.f.zeta_pow(*c);
    }
    x.retain(|_, c| !c.is_zero());
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn d2_after_d1_vanishes(d in prop::sample::select(vec![vec![1i64, 0], vec![1, 1], vec![2, 1], vec![1, 2], vec![2, 2], vec![3, 1]]),
                            picks in proptest::collection::vec((0usize..1000, 0i64..5), 1..5),
                            form in 0usize..5) {
        let uq = a2();
        let m = qborel::groupalg::enumerate_alternating(2, 5)[form].clone();
        let v = homogeneous(uq, &d, &picks);
        let t = cobar_d1(uq, Some(&m), &v).unwrap();
        prop_assert!(cobar_d2(uq, Some(&m), &t).unwrap().is_empty());
        let w = solve_bounding(uq, Some(&m), &t).unwrap().unwrap();
        prop_assert_eq!(cobar_d1(uq, Some(&m), &w).unwrap(), t);
    }
}

#[test]
fn minimal_term_of_gauged_twist() {
    let uq = a2();
    let f = uq.f;
    let x: Elem = [(uq.e_simple(0), f.from_int(2)), (uq.mono(&[1, 3], uq.e_simple(0)), f.zeta_pow(2))].into_iter().collect();
    let v = exp_nilpotent(uq, &x).unwrap();
    let j = gauge(uq, &v, &uq.tensor_one(), Cop::Plain).unwrap();
    let low = component(uq, &j, &[1, 0]);
    assert!(cobar_d2(uq, None, &low).unwrap().is_empty());
    let neg: Tensor2 = cobar_d1(uq, None, &x).unwrap().into_iter().map(|(k, c)| (k, -c)).collect();
    assert_eq!(low, neg);
    assert!(solve_bounding(uq, None, &low).unwrap().is_some());
}

#[test]
fn small_side_dimensions() {
    let uq = a1();
    for route in [Route::Reduced, Route::Full] {
        let h = h_dims(uq, None, &[5], route).unwrap();
        assert_eq!((h.h1, h.h2), (0, 1));
        let h = h_dims(uq, None, &[3], route).unwrap();
        assert_eq!((h.h1, h.h2), (0, 0));
    }
    for g in 1..=8 {
        let h = h_dims(uq, None, &[g], Route::Reduced).unwrap();
        assert_eq!(h.h2, (g == 5) as usize, "degree {}", g);
    }
}

#[test]
fn big_side_vanishes() {
    let rd = RootDatum::from_label("A1", 5).unwrap();
    let big = BigAlgebra::new(&rd, 12).unwrap();
    for g in 1..=10 {
        let h = h_dims(&big, None, &[g], Route::Reduced).unwrap();
        assert_eq!((h.h1, h.h2), (0, 0), "degree {}", g);
    }
    let h = h_dims(&big, None, &[5], Route::Full).unwrap();
    assert_eq!((h.h1, h.h2), (0, 0));
}

#[test]
fn dp_class_is_nonexact_on_small_side_only() {
    let uq = a1();
    let rd = uq.rd.clone();
    let big = BigAlgebra::new(&rd, 12).unwrap();
    let f = uq.f;
    for lam in [f.one(), f.zeta_pow(1) + f.from_int(2)] {
        let j = dp_twist_simple(uq, 0, &lam).unwrap();
        assert_eq!(j.len(), 5);
        let top = component(uq, &j, &[5]);
        assert_eq!(top.len(), 4);
        assert!(cobar_d2(uq, None, &top).unwrap().is_empty());
        assert_eq!(solve_bounding(uq, None, &top).unwrap(), None);

        // same tensor in the divided-power basis: bounded by −λE^{(5)}
        let mut lifted: Tensor2 = FxHashMap::default();
        for ((a, b), c) in &top {
            let (ea, ca) = big.from_small(&uq.plus, uq.e_part(*a));
            let (eb, cb) = big.from_small(&uq.plus, uq.e_part(*b));
            let key = (big.mono(&uq.k_part(*a), ea), big.mono(&uq.k_part(*b), eb));
            lifted.insert(key, &(c * &ca) * &cb);
        }
        let v = solve_bounding(&big, None, &lifted).unwrap().unwrap();
        let e5 = big.mono(&[0], big.gen.pack(&[5]));
        assert_eq!(v, single(e5, -lam.clone()));
    }
}
