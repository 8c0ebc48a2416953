use std::sync::OnceLock;

use proptest::prelude::*;
use qborel::cohomology::BoundingSolver;
use qborel::dp_moves::{dp_derivation_direct, dp_exp_automorphism, dp_twist_simple, dp_word_for_root, DpContext, DpMove, DpWord};
use qborel::engine::{BigAlgebra, Cop, Elem, Uq};
use qborel::groupalg::{enumerate_alternating, form_to_twist};
use qborel::reduction::{
    alt_injectivity_check, classify_orbit, find_compatible_pair, kappa_restriction_invariant, random_small_unit,
    random_twist, KappaVerdict, Reducer, TwistInput,
};
use qborel::rootdata::RootDatum;
use qborel::scalars::CycScalar;
use qborel::tensor_hopf::{gauge, is_twist};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

struct Datum {
    uq: Uq,
    ctx: DpContext,
}

fn datum(label: &'static str) -> &'static Datum {
    static A1: OnceLock<Datum> = OnceLock::new();
    static A2: OnceLock<Datum> = OnceLock::new();
    let cell = match label {
        "A1" => &A1,
        _ => &A2,
    };
    cell.get_or_init(|| {
        let uq = Uq::from_label(label, 5).unwrap();
        let ctx = DpContext::new(&uq).unwrap();
        Datum { uq, ctx }
    })
}

fn single(m: u64, c: CycScalar) -> Elem {
    [(m, c)].into_iter().collect()
}

fn mv(alpha: usize, lambda: CycScalar) -> DpMove {
    DpMove { alpha, lambda, sign: 1 }
}

#[test]
fn derivation_values() {
    let Datum { uq, ctx } = datum("A2");
    let f = uq.f;
    let d1 = &ctx.ders[0];
    assert!(d1.apply(uq, &single(uq.e_simple(0), f.one())).is_empty());
    for k in [[1, 0], [0, 1], [3, 2]] {
        assert!(d1.apply(uq, &single(uq.k_mono(&k), f.one())).is_empty());
    }
    let img = d1.apply(uq, &single(uq.e_simple(1), f.one()));
    assert!(!img.is_empty());
    assert!(img.keys().all(|m| uq.degree(*m).as_slice() == [5, 1]));
}

#[test]
fn derivation_agrees_with_direct_commutator() {
    let Datum { uq, ctx } = datum("A2");
    let big = BigAlgebra::new(&uq.rd, 5 + 3).unwrap();
    for m in uq.basis().into_iter().filter(|m| uq.height(*m) <= 3 && uq.k_part(*m).iter().sum::<i64>() <= 1) {
        let x = single(m, uq.f.one());
        for (i, d) in ctx.ders.iter().enumerate() {
            assert_eq!(d.apply(uq, &x), dp_derivation_direct(uq, &big, i, &x).unwrap());
        }
    }
}

fn elem(uq: &Uq, picks: &[(usize, i64)]) -> Elem {
    let basis = uq.basis();
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
    fn exp_is_an_automorphism(p in proptest::collection::vec((0usize..3125, 0i64..5), 1..4),
                              q in proptest::collection::vec((0usize..3125, 0i64..5), 1..4),
                              i in 0usize..2, lam in -3i64..4) {
        let Datum { uq, ctx } = datum("A2");
        let d = &ctx.ders[i];
        let lam = uq.f.from_int(lam);
        let (x, y) = (elem(uq, &p), elem(uq, &q));
        let phi = |z: &Elem| dp_exp_automorphism(uq, d, &lam, z);
        prop_assert_eq!(phi(&uq.mul(&x, &y)), uq.mul(&phi(&x), &phi(&y)));
        prop_assert_eq!(dp_exp_automorphism(uq, d, &lam.neg_ref(), &phi(&x)), x.clone());
        prop_assert_eq!(dp_exp_automorphism(uq, d, &uq.f.zero(), &x), x);
    }

    #[test]
    fn derivation_obeys_leibniz(p in proptest::collection::vec((0usize..3125, 0i64..5), 1..4),
                                q in proptest::collection::vec((0usize..3125, 0i64..5), 1..4),
                                i in 0usize..2) {
        let Datum { uq, ctx } = datum("A2");
        let d = &ctx.ders[i];
        let (x, y) = (elem(uq, &p), elem(uq, &q));
        let mut rhs = uq.mul(&d.apply(uq, &x), &y);
        for (m, c) in uq.mul(&x, &d.apply(uq, &y)) {
            let e = rhs.entry(m).or_insert(uq.f.zero());
            *e = &*e + &c;
        }
        rhs.retain(|_, c| !c.is_zero());
        prop_assert_eq!(d.apply(uq, &uq.mul(&x, &y)), rhs);
    }
}

#[test]
fn dp_gauge_of_identity_is_the_simple_twist() {
    for label in ["A1", "A2"] {
        let Datum { uq, ctx } = datum(label);
        let f = uq.f;
        for i in 0..uq.rank() {
            assert_eq!(dp_twist_simple(uq, i, &f.zero()).unwrap(), uq.tensor_one());
            for lam in [f.one(), f.zeta_pow(2) - f.from_int(1)] {
                let j = ctx.gauge(uq, &mv(i, lam.clone()), &uq.tensor_one(), None);
                assert_eq!(j, dp_twist_simple(uq, i, &lam).unwrap());
                assert_eq!(ctx.gauge(uq, &mv(i, lam).inverse(), &j, None), uq.tensor_one());
            }
        }
    }
}

#[test]
fn dp_gauge_round_trip_on_b_side() {
    let Datum { uq, ctx } = datum("A2");
    let f = uq.f;
    let m = vec![vec![0, 2], vec![3, 0]];
    let j = uq.tensor_one();
    let w = DpWord::from_moves(vec![mv(0, f.from_int(2)), mv(1, f.zeta_pow(1))]);
    let g = ctx.apply_word(uq, &w, &j, Some(&m));
    assert!(is_twist(uq, &g, Cop::Twisted(&m)).unwrap().ok);
    assert!(g.keys().all(|(a, b)| uq.plus.is_valid(uq.e_part(*a)) && uq.plus.is_valid(uq.e_part(*b))));
    assert_eq!(ctx.apply_word(uq, &w.inverse(), &g, Some(&m)), j);
}

#[test]
fn words_for_roots() {
    let Datum { uq, ctx } = datum("A2");
    let f = uq.f;
    for i in 0..2 {
        let r = uq.rd.simple[i];
        assert_eq!(dp_word_for_root(uq, r, &f.one()).moves.len(), 1);
    }
    let r = uq.rd.root_index(&[1, 1]).unwrap();
    let w1 = dp_word_for_root(uq, r, &f.one());
    assert_eq!(w1.moves.len(), 4);
    assert_eq!(w1.leading_degree, Some(vec![5, 5]));
    let t1 = ctx.leading_term(uq, &w1, None).unwrap();
    assert!(!t1.is_empty());

    let t2 = ctx.leading_term(uq, &dp_word_for_root(uq, r, &f.from_int(2)), None).unwrap();
    let solver = BoundingSolver::new(uq, None, &[5, 5], Some(&t1)).unwrap();
    let (c, _) = solver.solve(&t2).unwrap();
    assert_eq!(c, f.from_int(2));
    assert!(DpWord::from_moves(w1.moves.clone()).leading_degree.is_none());
    assert!(ctx.leading_term(uq, &DpWord::from_moves(w1.moves), None).is_err());
}

#[test]
fn reduce_form_twists() {
    let Datum { uq, ctx } = datum("A2");
    let mut red = Reducer::new(uq, ctx);
    for m in enumerate_alternating(2, 5) {
        let nf = red.reduce(&TwistInput::Dense(form_to_twist(uq, &m))).unwrap();
        assert_eq!(nf.alt_form, m);
        assert!(nf.c.iter().all(|c| c.is_zero()));
        assert!(nf.log.moves.is_empty());
        assert!(nf.log.degree_zero.is_none());
    }
}

#[test]
fn reduce_simple_dp_twists() {
    let Datum { uq, ctx } = datum("A2");
    let f = uq.f;
    let mut red = Reducer::new(uq, ctx);
    for i in 0..2 {
        let r = uq.rd.simple[i];
        let mut coords = Vec::new();
        for lam in [f.one(), f.from_int(2)] {
            let j = dp_twist_simple(uq, i, &lam).unwrap();
            let input = TwistInput::Dense(j.clone());
            let nf = red.reduce(&input).unwrap();
            assert_eq!(nf.alt_form, vec![vec![0, 0], vec![0, 0]]);
            assert!(!nf.log.moves.is_empty());
            assert!(nf.c.iter().enumerate().all(|(k, c)| (k == r) != c.is_zero()));
            match red.replay(&nf, true).unwrap() {
                TwistInput::Dense(back) => assert_eq!(back, j),
                TwistInput::Factored { .. } => panic!("dense replay requested"),
            }
            coords.push(nf.c[r].clone());
        }
        assert_eq!(coords[1], &coords[0] * &f.from_int(2));
    }
}

#[test]
fn reduce_gauged_form_twists() {
    let Datum { uq, ctx } = datum("A2");
    let mut red = Reducer::new(uq, ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in enumerate_alternating(2, 5).into_iter().take(3) {
        let cop = if m[0][1] == 0 { Cop::Plain } else { Cop::Twisted(&m) };
        let u = random_small_unit(uq, &mut rng, 1, 2).unwrap();
        let jp = gauge(uq, &u, &uq.tensor_one(), cop).unwrap();
        let input = TwistInput::Factored { form: m.clone(), jp: jp.clone() };
        let nf = red.reduce(&input).unwrap();
        assert_eq!(nf.alt_form, m);
        assert!(nf.c.iter().all(|c| c.is_zero()));
        match red.replay(&nf, false).unwrap() {
            TwistInput::Factored { form, jp: back } => {
                assert_eq!(form, m);
                assert_eq!(back, jp);
            }
            TwistInput::Dense(_) => panic!("factored replay expected"),
        }
    }
}

#[test]
fn composite_words_are_supported_on_their_roots() {
    let Datum { uq, ctx } = datum("A2");
    let f = uq.f;
    let mut red = Reducer::new(uq, ctx);
    let (r1, r2) = (uq.rd.simple[0], uq.rd.simple[1]);
    let mut jp = uq.tensor_one();
    for w in [dp_word_for_root(uq, r1, &f.from_int(3)), dp_word_for_root(uq, r2, &f.zeta_pow(1))] {
        jp = ctx.apply_word(uq, &w, &jp, None);
    }
    let (form, c) = classify_orbit(&mut red, &TwistInput::Factored { form: vec![vec![0, 0], vec![0, 0]], jp }).unwrap();
    assert_eq!(form, vec![vec![0, 0], vec![0, 0]]);
    for (r, x) in c.iter().enumerate() {
        assert_eq!(!x.is_zero(), r == r1 || r == r2, "root {}", r);
    }
}

#[test]
fn gauge_equivalent_twists_share_their_form() {
    let Datum { uq, ctx } = datum("A2");
    let mut red = Reducer::new(uq, ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let m = vec![vec![0, 4], vec![1, 0]];
    let all: Vec<usize> = (0..uq.rd.num_roots()).collect();
    for _ in 0..2 {
        let a = random_twist(uq, ctx, &m, &all, &mut rng).unwrap();
        let TwistInput::Factored { jp, .. } = &a else { unreachable!() };
        let u = random_small_unit(uq, &mut rng, 1, 2).unwrap();
        let b = TwistInput::Factored { form: m.clone(), jp: gauge(uq, &u, jp, Cop::Twisted(&m)).unwrap() };
        let (fa, ca) = classify_orbit(&mut red, &a).unwrap();
        let (fb, cb) = classify_orbit(&mut red, &b).unwrap();
        assert_eq!(fa, m);
        assert_eq!(fa, fb);
        assert_eq!(ca, cb);
    }
}

#[test]
fn alternating_forms_are_distinguished() {
    let Datum { uq, ctx } = datum("A1");
    let mut red = Reducer::new(uq, ctx);
    assert!(alt_injectivity_check(&mut red, &enumerate_alternating(1, 5), &[0], 2, 1).unwrap());
    let Datum { uq, ctx } = datum("A2");
    let mut red = Reducer::new(uq, ctx);
    let roots: Vec<usize> = uq.rd.simple.clone();
    assert!(alt_injectivity_check(&mut red, &enumerate_alternating(2, 5), &roots, 1, 2).unwrap());
}

// κᵀMκ computed entrywise from the symmetrized Cartan matrix.
fn pullback(sym: &[Vec<i64>], m: &[Vec<i64>], l: i64) -> Vec<Vec<i64>> {
    let n = sym.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| sym[a][i] * m[a][b] * sym[b][j]).sum::<i64>().rem_euclid(l)).collect())
        .collect()
}

#[test]
fn kappa_verdicts() {
    let a2 = RootDatum::from_label("A2", 5).unwrap();
    let forms = enumerate_alternating(2, 5);
    for m in &forms {
        assert_eq!(kappa_restriction_invariant(&a2, m, m), KappaVerdict::Equal);
        for m2 in &forms {
            if m != m2 {
                assert_eq!(kappa_restriction_invariant(&a2, m, m2), KappaVerdict::Distinct);
            }
        }
    }
    assert!(find_compatible_pair(&a2).is_none());

    let a4 = RootDatum::from_label("A4", 5).unwrap();
    let (m, m2) = find_compatible_pair(&a4).unwrap();
    assert_ne!(m, m2);
    assert_eq!(pullback(&a4.sym, &m, 5), pullback(&a4.sym, &m2, 5));
    assert_eq!(kappa_restriction_invariant(&a4, &m, &m2), KappaVerdict::Compatible);
}
