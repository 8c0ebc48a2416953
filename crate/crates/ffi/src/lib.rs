//! C ABI for qborel.
//!
//! Algebras are opaque handles created by `qb_algebra_new` and released with
//! `qb_algebra_free`. Every call returns a `QbStatus`; on failure the message
//! is available from `qb_last_error_message` until the next call on the same
//! thread. Strings returned through out-parameters are owned by the caller
//! and must be released with `qb_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qborel::cohomology::{h_dims, Route};
use qborel::dp_moves::DpContext;
use qborel::engine::{Cop, Uq};
use qborel::groupalg::{is_alternating, FormMatrix};
use qborel::io;
use qborel::reduction::{kappa_restriction_invariant, KappaVerdict, Reducer, TwistInput};
use qborel::rootdata::RootDatum;
use qborel::tensor_hopf::is_twist;
use qborel::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Config = 3,
    Parse = 4,
    Domain = 5,
    /// a verification or theorem check failed
    Verification = 6,
    Engine = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QbKappaVerdict {
    Distinct = 0,
    Compatible = 1,
    Equal = 2,
}

/// Opaque algebra handle.
pub struct QbAlgebra {
    uq: Uq,
    ctx: Option<DpContext>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QbStatus {
    match e {
        Error::Config(_) => QbStatus::Config,
        Error::Parse(_) => QbStatus::Parse,
        Error::Domain(_) | Error::Type(_) | Error::UnsupportedDegreeZero(_) => QbStatus::Domain,
        Error::NotACocycle(_) | Error::TheoremViolation(_) | Error::Convention(_) => QbStatus::Verification,
        _ => QbStatus::Engine,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (QbStatus, String)>) -> QbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QbStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            QbStatus::Panic
        }
    }
}

fn lib(e: Error) -> (QbStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (QbStatus, String) {
    (QbStatus::NullPointer, format!("{} is null", name))
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, (QbStatus, String)> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (QbStatus::InvalidUtf8, format!("{} is not UTF-8", name)))
}

unsafe fn json_arg(p: *const c_char, name: &str) -> Result<serde_json::Value, (QbStatus, String)> {
    serde_json::from_str(str_arg(p, name)?).map_err(|e| (QbStatus::Parse, format!("{}: {}", name, e)))
}

unsafe fn form_arg(p: *const i64, len: usize, rank: usize, l: u32) -> Result<FormMatrix, (QbStatus, String)> {
    if p.is_null() {
        return Ok(vec![vec![0; rank]; rank]);
    }
    if len != rank * rank {
        return Err((QbStatus::Config, format!("form needs {} entries, got {}", rank * rank, len)));
    }
    let flat = std::slice::from_raw_parts(p, len);
    let m: FormMatrix = flat.chunks(rank).map(|r| r.iter().map(|x| x.rem_euclid(l as i64)).collect()).collect();
    if !is_alternating(&m, l) {
        return Err((QbStatus::Config, "form is not alternating".into()));
    }
    Ok(m)
}

fn form_opt(m: &FormMatrix) -> Option<&[Vec<i64>]> {
    if m.iter().all(|r| r.iter().all(|&x| x == 0)) {
        None
    } else {
        Some(m)
    }
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (QbStatus, String)> {
    let c = CString::new(s).map_err(|_| (QbStatus::Engine, "output contains NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// ABI version: major·10000 + minor·100 + patch.
#[no_mangle]
pub extern "C" fn qb_version() -> u32 {
    100
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn qb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn qb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build u_q for a root-system label such as "A2" and an odd order l.
///
/// # Safety
/// `label` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qb_algebra_new(label: *const c_char, l: u32, out: *mut *mut QbAlgebra) -> QbStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let uq = Uq::from_label(str_arg(label, "label")?, l).map_err(lib)?;
        *out = Box::into_raw(Box::new(QbAlgebra { uq, ctx: None }));
        Ok(())
    })
}

/// # Safety
/// `a` must be NULL or a handle from `qb_algebra_new`, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qb_algebra_free(a: *mut QbAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Rank of the root system and number of positive roots.
///
/// # Safety
/// `a` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qb_algebra_shape(a: *const QbAlgebra, rank: *mut usize, positive_roots: *mut usize) -> QbStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("algebra"))?;
        if rank.is_null() || positive_roots.is_null() {
            return Err(null("out"));
        }
        *rank = a.uq.rank();
        *positive_roots = a.uq.rd.num_roots();
        Ok(())
    })
}

/// dim H¹ and dim H² of u_q twisted by the alternating form (row-major,
/// rank² entries, or NULL for the trivial form) in Q-degree `degree`.
///
/// # Safety
/// `a` must be a live handle; arrays must hold the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn qb_cohomology_dims(
    a: *const QbAlgebra,
    form: *const i64,
    form_len: usize,
    degree: *const i64,
    degree_len: usize,
    h1: *mut usize,
    h2: *mut usize,
) -> QbStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("algebra"))?;
        if degree.is_null() {
            return Err(null("degree"));
        }
        if h1.is_null() || h2.is_null() {
            return Err(null("out"));
        }
        let r = a.uq.rank();
        if degree_len != r {
            return Err((QbStatus::Config, format!("degree needs {} entries", r)));
        }
        let m = form_arg(form, form_len, r, a.uq.l)?;
        let g = std::slice::from_raw_parts(degree, degree_len);
        let h = h_dims(&a.uq, form_opt(&m), g, Route::Reduced).map_err(lib)?;
        *h1 = h.h1;
        *h2 = h.h2;
        Ok(())
    })
}

/// Sets `*ok` to 1 if the twist file (JSON) satisfies the twist equation.
///
/// # Safety
/// `a` must be a live handle; `json` NUL-terminated; `ok` writable.
#[no_mangle]
pub unsafe extern "C" fn qb_twist_verify_json(a: *const QbAlgebra, json: *const c_char, ok: *mut i32) -> QbStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("algebra"))?;
        if ok.is_null() {
            return Err(null("ok"));
        }
        let v = json_arg(json, "json")?;
        let check = match io::twist_input_from_json(&a.uq, &v).map_err(lib)? {
            TwistInput::Dense(j) => is_twist(&a.uq, &j, Cop::Plain),
            TwistInput::Factored { form, jp } => match form_opt(&form) {
                Some(f) => is_twist(&a.uq, &jp, Cop::Twisted(f)),
                None => is_twist(&a.uq, &jp, Cop::Plain),
            },
        }
        .map_err(lib)?;
        *ok = i32::from(check.ok);
        Ok(())
    })
}

fn context(a: &mut QbAlgebra) -> Result<(), (QbStatus, String)> {
    if a.ctx.is_none() {
        a.ctx = Some(DpContext::new(&a.uq).map_err(lib)?);
    }
    Ok(())
}

/// Reduce a twist file (JSON) to its normal form; writes the normal-form JSON.
///
/// # Safety
/// `a` must be a live handle; `json` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qb_twist_reduce_json(a: *mut QbAlgebra, json: *const c_char, out: *mut *mut c_char) -> QbStatus {
    guard(|| {
        let a = a.as_mut().ok_or_else(|| null("algebra"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let v = json_arg(json, "json")?;
        context(a)?;
        let input = io::twist_input_from_json(&a.uq, &v).map_err(lib)?;
        let ctx = a.ctx.as_ref().expect("context built above");
        let nf = Reducer::new(&a.uq, ctx).reduce(&input).map_err(lib)?;
        let mut res = io::normal_form_to_json(&a.uq, &nf);
        res["representation"] = serde_json::json!(if matches!(input, TwistInput::Dense(_)) { "dense" } else { "factored" });
        write_string(out, res.to_string())
    })
}

/// Replay a normal form (JSON from `qb_twist_reduce_json`); writes the twist file JSON.
///
/// # Safety
/// `a` must be a live handle; `json` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qb_twist_replay_json(a: *mut QbAlgebra, json: *const c_char, out: *mut *mut c_char) -> QbStatus {
    guard(|| {
        let a = a.as_mut().ok_or_else(|| null("algebra"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let v = json_arg(json, "json")?;
        context(a)?;
        let nf = io::normal_form_from_json(&a.uq, &v).map_err(lib)?;
        let dense = v.get("representation").and_then(|x| x.as_str()) == Some("dense");
        let ctx = a.ctx.as_ref().expect("context built above");
        let back = Reducer::new(&a.uq, ctx).replay(&nf, dense).map_err(lib)?;
        write_string(out, io::twist_input_to_json(&a.uq, &back).to_string())
    })
}

/// Compare two alternating forms through the Killing map. Matrix-level
/// only: no algebra is built.
///
/// # Safety
/// `label` NUL-terminated; `m1`, `m2` hold `len` = rank² entries; `verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn qb_kappa_invariant(
    label: *const c_char,
    l: u32,
    m1: *const i64,
    m2: *const i64,
    len: usize,
    verdict: *mut QbKappaVerdict,
) -> QbStatus {
    guard(|| {
        if m1.is_null() || m2.is_null() {
            return Err(null("form"));
        }
        if verdict.is_null() {
            return Err(null("verdict"));
        }
        let rd = RootDatum::from_label(str_arg(label, "label")?, l).map_err(lib)?;
        let a = form_arg(m1, len, rd.rank, l)?;
        let b = form_arg(m2, len, rd.rank, l)?;
        *verdict = match kappa_restriction_invariant(&rd, &a, &b) {
            KappaVerdict::Distinct => QbKappaVerdict::Distinct,
            KappaVerdict::Compatible => QbKappaVerdict::Compatible,
            KappaVerdict::Equal => QbKappaVerdict::Equal,
        };
        Ok(())
    })
}
