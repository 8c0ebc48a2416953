use qborel::dp_moves::{dp_word_for_root, DpContext};
use qborel::engine::{Elem, Uq};
use qborel::error::Error;
use qborel::io::{
    dp_word_from_json, dp_word_to_json, elem_from_json, elem_to_json, normal_form_from_json, normal_form_to_json,
    scalar_from_json, scalar_to_json, tensor_from_json, tensor_to_json, twist_input_from_json, twist_input_to_json,
};
use qborel::reduction::{random_twist, Reducer, TwistInput};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[test]
fn scalars_round_trip_including_big_coordinates() {
    let uq = Uq::from_label("A1", 5).unwrap();
    let f = uq.f;
    let big = (f.zeta_pow(1) + f.from_int(2)).pow(90).mul_ref(&f.from_ratio(1, 7));
    assert!(big.to_rationals().iter().any(|(n, _)| n.bits() > 64));
    for x in [f.zero(), f.one(), f.from_ratio(-3, 4), f.zeta_pow(3), big] {
        let v = scalar_to_json(&x);
        assert_eq!(scalar_from_json(f, &v).unwrap(), x);
    }
    assert!(scalar_from_json(f, &json!([[1, 0], [0, 1], [0, 1], [0, 1]])).is_err());
    // trailing zero coordinates may be omitted
    assert_eq!(scalar_from_json(f, &json!([[1, 1]])).unwrap(), f.one());
    assert!(scalar_from_json(f, &json!([[1, 1], [0, 1], [0, 1], [0, 1], [0, 1]])).is_err());
    assert_eq!(scalar_from_json(f, &json!([["-5", "2"]])).unwrap(), f.from_ratio(-5, 2));
}

#[test]
fn elements_and_tensors_round_trip() {
    let uq = Uq::from_label("A2", 5).unwrap();
    let f = uq.f;
    let x: Elem = [(uq.mono(&[1, 4], uq.e_simple(0)), f.zeta_pow(2)), (uq.k_mono(&[0, 0]), f.from_int(-1))].into_iter().collect();
    assert_eq!(elem_from_json(&uq, &elem_to_json(&uq, &x)).unwrap(), x);
    let t = uq.coproduct(&x, qborel::engine::Cop::Plain);
    assert_eq!(tensor_from_json(&uq, &tensor_to_json(&uq, &t)).unwrap(), t);

    let other = json!({"ambient": "big", "terms": []});
    assert!(matches!(elem_from_json(&uq, &other), Err(Error::Type(_))));
    let out_of_range = json!({"ambient": "small", "terms": [{"coeff": [[1,1],[0,1],[0,1],[0,1]], "k": [0, 0], "e": [5, 0, 0]}]});
    assert!(elem_from_json(&uq, &out_of_range).is_err());
}

#[test]
fn words_and_normal_forms_round_trip() {
    let uq = Uq::from_label("A2", 5).unwrap();
    let ctx = DpContext::new(&uq).unwrap();
    let w = dp_word_for_root(&uq, uq.rd.root_index(&[1, 1]).unwrap(), &uq.f.from_int(3));
    let back = dp_word_from_json(&uq, &dp_word_to_json(&w)).unwrap();
    assert_eq!(back.moves, w.moves);

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let m = vec![vec![0, 3], vec![2, 0]];
    let input = random_twist(&uq, &ctx, &m, &[0, 2], &mut rng).unwrap();
    let v = twist_input_to_json(&uq, &input);
    let reread = twist_input_from_json(&uq, &v).unwrap();
    match (&input, &reread) {
        (TwistInput::Factored { form: a, jp: x }, TwistInput::Factored { form: b, jp: y }) => {
            assert_eq!(a, b);
            assert_eq!(x, y);
        }
        _ => panic!("representation changed"),
    }
    let mut red = Reducer::new(&uq, &ctx);
    let nf = red.reduce(&input).unwrap();
    let nf2 = normal_form_from_json(&uq, &normal_form_to_json(&uq, &nf)).unwrap();
    assert_eq!(nf2, nf);
}
