use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use qborel_ffi::*;

fn algebra(label: &str, l: u32) -> *mut QbAlgebra {
    let label = CString::new(label).unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { qb_algebra_new(label.as_ptr(), l, &mut a) }, QbStatus::Ok);
    a
}

fn last_error() -> String {
    let p = qb_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn handle_lifecycle_and_errors() {
    let a = algebra("A2", 5);
    let (mut r, mut n) = (0usize, 0usize);
    assert_eq!(unsafe { qb_algebra_shape(a, &mut r, &mut n) }, QbStatus::Ok);
    assert_eq!((r, n), (2, 3));
    unsafe { qb_algebra_free(a) };
    unsafe { qb_algebra_free(ptr::null_mut()) };

    let label = CString::new("A2").unwrap();
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { qb_algebra_new(label.as_ptr(), 4, &mut b) }, QbStatus::Config);
    assert!(b.is_null());
    assert!(last_error().contains("odd"));
    assert_eq!(unsafe { qb_algebra_new(ptr::null(), 5, &mut b) }, QbStatus::NullPointer);
    assert_eq!(unsafe { qb_algebra_shape(ptr::null(), &mut r, &mut n) }, QbStatus::NullPointer);
    assert_eq!(qb_version(), 100);
}

#[test]
fn cohomology_through_the_abi() {
    let a = algebra("A1", 5);
    let (mut h1, mut h2) = (9usize, 9usize);
    for n in 1..=7i64 {
        let d = [n];
        assert_eq!(unsafe { qb_cohomology_dims(a, ptr::null(), 0, d.as_ptr(), 1, &mut h1, &mut h2) }, QbStatus::Ok);
        assert_eq!((h1, h2), (0, usize::from(n == 5)));
    }
    let bad = [1i64, 2];
    assert_eq!(unsafe { qb_cohomology_dims(a, ptr::null(), 0, bad.as_ptr(), 2, &mut h1, &mut h2) }, QbStatus::Config);
    unsafe { qb_algebra_free(a) };
}

#[test]
fn twist_reduce_and_replay() {
    let a = algebra("A1", 5);
    // 1⊗1 + a nonnormalized term fails; the dp twist of E^(5) passes
    let bad = CString::new(
        r#"[{"coeff":[[1,1]],"left":{"k":[0],"e":[0]},"right":{"k":[0],"e":[0]}},
            {"coeff":[[1,1]],"left":{"k":[0],"e":[1]},"right":{"k":[0],"e":[0]}}]"#,
    )
    .unwrap();
    let mut ok = -1;
    assert_eq!(unsafe { qb_twist_verify_json(a, bad.as_ptr(), &mut ok) }, QbStatus::Ok);
    assert_eq!(ok, 0);

    let uq = qborel::engine::Uq::from_label("A1", 5).unwrap();
    let j = qborel::dp_moves::dp_twist_simple(&uq, 0, &uq.f.from_int(3)).unwrap();
    let file = qborel::io::twist_input_to_json(&uq, &qborel::reduction::TwistInput::Dense(j)).to_string();
    let file_c = CString::new(file.clone()).unwrap();
    assert_eq!(unsafe { qb_twist_verify_json(a, file_c.as_ptr(), &mut ok) }, QbStatus::Ok);
    assert_eq!(ok, 1);

    let mut nf = ptr::null_mut();
    assert_eq!(unsafe { qb_twist_reduce_json(a, file_c.as_ptr(), &mut nf) }, QbStatus::Ok);
    let nf_json: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(nf) }.to_str().unwrap()).unwrap();
    assert_eq!(nf_json["c"], serde_json::json!([[[3, 1], [0, 1], [0, 1], [0, 1]]]));
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { qb_twist_replay_json(a, nf, &mut back) }, QbStatus::Ok);
    let back_json: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(back) }.to_str().unwrap()).unwrap();
    let orig: serde_json::Value = serde_json::from_str(&file).unwrap();
    assert_eq!(back_json, orig);
    unsafe {
        qb_string_free(nf);
        qb_string_free(back);
        qb_algebra_free(a);
    }
}

#[test]
fn kappa_verdicts() {
    let label = CString::new("A2").unwrap();
    let m0 = [0i64, 0, 0, 0];
    let m1 = [0i64, 1, 4, 0];
    let mut v = QbKappaVerdict::Equal;
    assert_eq!(unsafe { qb_kappa_invariant(label.as_ptr(), 5, m0.as_ptr(), m1.as_ptr(), 4, &mut v) }, QbStatus::Ok);
    assert_eq!(v, QbKappaVerdict::Distinct);
    assert_eq!(unsafe { qb_kappa_invariant(label.as_ptr(), 5, m1.as_ptr(), m1.as_ptr(), 4, &mut v) }, QbStatus::Ok);
    assert_eq!(v, QbKappaVerdict::Equal);
    let sym = [0i64, 1, 1, 0];
    assert_eq!(unsafe { qb_kappa_invariant(label.as_ptr(), 5, m0.as_ptr(), sym.as_ptr(), 4, &mut v) }, QbStatus::Config);
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/qborel.h");
    let text = std::fs::read_to_string(header).unwrap();
    for f in ["qb_algebra_new", "qb_algebra_free", "qb_last_error_message", "qb_string_free", "qb_twist_reduce_json"] {
        assert!(text.contains(f), "header lacks {}", f);
    }
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c", header]).output() else {
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
