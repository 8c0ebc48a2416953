//! JSON encodings. Scalars are arrays of [num, den] pairs in the power basis
//! 1, ζ, ζ², …; monomials are {k, e} exponent vectors (e in PBW root order).
//! Everything that needs the field or the datum takes the algebra.

use num_bigint::BigInt;
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::dp_moves::{DpMove, DpWord};
use crate::engine::{Elem, Tensor2, Uq};
use crate::error::{Error, Result};
use crate::groupalg::FormMatrix;
use crate::reduction::{GaugeLog, GaugeMove, TwistInput, TwistNormalForm};
use crate::scalars::{CycField, CycScalar};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn big_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => Value::String(x.to_string()),
    }
}

fn parse_big(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| perr(format!("not an integer: {}", n))),
        Value::String(s) => s.parse().map_err(|_| perr(format!("not an integer: {}", s))),
        _ => Err(perr(format!("expected an integer, got {}", v))),
    }
}

pub fn scalar_to_json(c: &CycScalar) -> Value {
    Value::Array(c.to_rationals().iter().map(|(n, d)| json!([big_value(n), big_value(d)])).collect())
}

pub fn scalar_from_json(f: &'static CycField, v: &Value) -> Result<CycScalar> {
    let arr = v.as_array().ok_or_else(|| perr("scalar must be an array of [num, den] pairs"))?;
    if arr.len() > f.degree() {
        return Err(perr(format!("scalar has {} coordinates, field degree is {}", arr.len(), f.degree())));
    }
    let mut coords = Vec::with_capacity(f.degree());
    for p in arr {
        let pair = p.as_array().filter(|p| p.len() == 2).ok_or_else(|| perr("coordinate must be [num, den]"))?;
        let (n, d) = (parse_big(&pair[0])?, parse_big(&pair[1])?);
        if d == BigInt::from(0) {
            return Err(perr("zero denominator"));
        }
        coords.push((n, d));
    }
    coords.resize(f.degree(), (BigInt::from(0), BigInt::from(1)));
    Ok(f.from_rationals(&coords))
}

pub fn mono_to_json(uq: &Uq, m: u64) -> Value {
    json!({ "k": uq.k_part(m).to_vec(), "e": uq.plus.exps(uq.e_part(m)) })
}

pub fn mono_from_json(uq: &Uq, v: &Value) -> Result<u64> {
    let ints = |key: &str, len: usize| -> Result<Vec<i64>> {
        let a = v.get(key).and_then(Value::as_array).ok_or_else(|| perr(format!("monomial needs \"{}\"", key)))?;
        if a.len() != len {
            return Err(perr(format!("\"{}\" must have length {}", key, len)));
        }
        a.iter().map(|x| x.as_i64().ok_or_else(|| perr(format!("\"{}\" entries must be integers", key)))).collect()
    };
    let k = ints("k", uq.rank())?;
    let e = ints("e", uq.plus.nroots())?;
    let l = uq.l as i64;
    if e.iter().any(|&x| !(0..l).contains(&x)) {
        return Err(perr(format!("PBW exponents must lie in [0, {})", l)));
    }
    let e: Vec<u32> = e.iter().map(|&x| x as u32).collect();
    Ok(uq.mono(&k, uq.plus.pack(&e)))
}

fn sorted<K: Ord + Copy, V>(m: &FxHashMap<K, V>) -> Vec<(K, &V)> {
    let mut v: Vec<(K, &V)> = m.iter().map(|(k, c)| (*k, c)).collect();
    v.sort_by_key(|(k, _)| *k);
    v
}

pub fn elem_to_json(uq: &Uq, x: &Elem) -> Value {
    let terms: Vec<Value> = sorted(x)
        .into_iter()
        .map(|(m, c)| {
            let mut t = mono_to_json(uq, m);
            t["coeff"] = scalar_to_json(c);
            t
        })
        .collect();
    json!({ "ambient": "small", "terms": terms })
}

pub fn elem_from_json(uq: &Uq, v: &Value) -> Result<Elem> {
    match v.get("ambient") {
        Some(Value::String(s)) if s == "small" => {}
        Some(a) => return Err(Error::Type(format!("expected ambient \"small\", got {}", a))),
        None => return Err(perr("element needs an \"ambient\" tag")),
    }
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| perr("element needs \"terms\""))?;
    let mut out = FxHashMap::default();
    for t in terms {
        let m = mono_from_json(uq, t)?;
        let c = scalar_from_json(uq.f, t.get("coeff").ok_or_else(|| perr("term needs \"coeff\""))?)?;
        crate::engine::plus::acc_add(&mut out, m, c);
    }
    Ok(out)
}

pub fn tensor_to_json(uq: &Uq, t: &Tensor2) -> Value {
    Value::Array(
        sorted(t)
            .into_iter()
            .map(|((a, b), c)| json!({ "coeff": scalar_to_json(c), "left": mono_to_json(uq, a), "right": mono_to_json(uq, b) }))
            .collect(),
    )
}

pub fn tensor_from_json(uq: &Uq, v: &Value) -> Result<Tensor2> {
    let arr = v.as_array().ok_or_else(|| perr("tensor must be a list of {coeff, left, right}"))?;
    let mut out = FxHashMap::default();
    for t in arr {
        let field = |k: &str| t.get(k).ok_or_else(|| perr(format!("tensor term needs \"{}\"", k)));
        let key = (mono_from_json(uq, field("left")?)?, mono_from_json(uq, field("right")?)?);
        crate::engine::plus::acc_add(&mut out, key, scalar_from_json(uq.f, field("coeff")?)?);
    }
    Ok(out)
}

pub fn form_from_json(v: &Value, rank: usize) -> Result<FormMatrix> {
    let m: FormMatrix = serde_json::from_value(v.clone()).map_err(|e| perr(format!("form matrix: {}", e)))?;
    if m.len() != rank || m.iter().any(|r| r.len() != rank) {
        return Err(perr(format!("form matrix must be {}×{}", rank, rank)));
    }
    Ok(m)
}

pub fn dp_word_to_json(w: &DpWord) -> Value {
    Value::Array(
        w.moves
            .iter()
            .map(|m| json!({ "alpha": m.alpha, "lambda": scalar_to_json(&m.lambda), "sign": m.sign }))
            .collect(),
    )
}

pub fn dp_word_from_json(uq: &Uq, v: &Value) -> Result<DpWord> {
    let arr = v.as_array().ok_or_else(|| perr("dp word must be a list of {alpha, lambda, sign}"))?;
    let mut moves = Vec::new();
    for m in arr {
        let alpha = m.get("alpha").and_then(Value::as_u64).ok_or_else(|| perr("move needs integer \"alpha\""))? as usize;
        if alpha >= uq.rank() {
            return Err(perr(format!("alpha {} out of range for rank {}", alpha, uq.rank())));
        }
        let lambda = scalar_from_json(uq.f, m.get("lambda").ok_or_else(|| perr("move needs \"lambda\""))?)?;
        let sign = match m.get("sign").and_then(Value::as_i64) {
            Some(1) => 1,
            Some(-1) => -1,
            _ => return Err(perr("move \"sign\" must be 1 or -1")),
        };
        moves.push(DpMove { alpha, lambda, sign });
    }
    Ok(DpWord::from_moves(moves))
}

fn move_to_json(uq: &Uq, m: &GaugeMove) -> Value {
    match m {
        GaugeMove::Small { unit, inverse } => {
            json!({ "small": { "unit": elem_to_json(uq, unit), "inverse": elem_to_json(uq, inverse) } })
        }
        GaugeMove::Dp(w) => json!({ "dp": { "root": w.target, "word": dp_word_to_json(w) } }),
    }
}

fn move_from_json(uq: &Uq, v: &Value) -> Result<GaugeMove> {
    if let Some(s) = v.get("small") {
        let get = |k: &str| s.get(k).ok_or_else(|| perr(format!("small move needs \"{}\"", k)));
        return Ok(GaugeMove::Small { unit: elem_from_json(uq, get("unit")?)?, inverse: elem_from_json(uq, get("inverse")?)? });
    }
    if let Some(d) = v.get("dp") {
        let mut w = dp_word_from_json(uq, d.get("word").ok_or_else(|| perr("dp move needs \"word\""))?)?;
        if let Some(r) = d.get("root").and_then(Value::as_u64) {
            let r = r as usize;
            if r >= uq.rd.num_roots() {
                return Err(perr(format!("root index {} out of range", r)));
            }
            w.target = Some(r);
            w.leading_degree = Some(uq.rd.roots[r].deg.iter().map(|x| x * uq.l as i64).collect());
        }
        return Ok(GaugeMove::Dp(w));
    }
    Err(perr("log move must be {\"small\": …} or {\"dp\": …}"))
}

pub fn normal_form_to_json(uq: &Uq, nf: &TwistNormalForm) -> Value {
    json!({
        "type": uq.rd.label(),
        "l": uq.l,
        "alt_form": nf.alt_form,
        "c": nf.c.iter().map(scalar_to_json).collect::<Vec<_>>(),
        "obstructions": nf.obstructions,
        "log": {
            "degree_zero": nf.log.degree_zero.as_ref().map(|v| elem_to_json(uq, v)),
            "moves": nf.log.moves.iter().map(|m| move_to_json(uq, m)).collect::<Vec<_>>(),
        }
    })
}

pub fn normal_form_from_json(uq: &Uq, v: &Value) -> Result<TwistNormalForm> {
    let get = |k: &str| v.get(k).ok_or_else(|| perr(format!("normal form needs \"{}\"", k)));
    let alt_form = form_from_json(get("alt_form")?, uq.rank())?;
    let c = get("c")?
        .as_array()
        .ok_or_else(|| perr("\"c\" must be a list"))?
        .iter()
        .map(|x| scalar_from_json(uq.f, x))
        .collect::<Result<Vec<_>>>()?;
    if c.len() != uq.rd.num_roots() {
        return Err(perr("\"c\" needs one entry per positive root"));
    }
    let obstructions = serde_json::from_value(v.get("obstructions").cloned().unwrap_or(json!([])))
        .map_err(|e| perr(format!("obstructions: {}", e)))?;
    let log = get("log")?;
    let degree_zero = match log.get("degree_zero") {
        None | Some(Value::Null) => None,
        Some(x) => Some(elem_from_json(uq, x)?),
    };
    let moves = log
        .get("moves")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("log needs \"moves\""))?
        .iter()
        .map(|m| move_from_json(uq, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(TwistNormalForm { alt_form, c, log: GaugeLog { degree_zero, moves }, obstructions })
}

/// A twist file: either a bare tensor list, or {type, l, twist, form?} where
/// a present form means the factored input B_form·twist.
pub fn twist_input_to_json(uq: &Uq, t: &TwistInput) -> Value {
    match t {
        TwistInput::Dense(j) => json!({ "type": uq.rd.label(), "l": uq.l, "twist": tensor_to_json(uq, j) }),
        TwistInput::Factored { form, jp } => {
            json!({ "type": uq.rd.label(), "l": uq.l, "form": form, "twist": tensor_to_json(uq, jp) })
        }
    }
}

pub fn twist_input_from_json(uq: &Uq, v: &Value) -> Result<TwistInput> {
    if v.is_array() {
        return Ok(TwistInput::Dense(tensor_from_json(uq, v)?));
    }
    let j = tensor_from_json(uq, v.get("twist").ok_or_else(|| perr("twist file needs \"twist\""))?)?;
    match v.get("form") {
        None | Some(Value::Null) => Ok(TwistInput::Dense(j)),
        Some(f) => Ok(TwistInput::Factored { form: form_from_json(f, uq.rank())?, jp: j }),
    }
}

/// (type, l) recorded in a file, if any.
pub fn datum_of(v: &Value) -> Option<(String, u32)> {
    let t = v.get("type")?.as_str()?.to_string();
    let l = v.get("l")?.as_u64()? as u32;
    Some((t, l))
}
