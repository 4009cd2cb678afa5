use std::ffi::{CStr, CString};
use std::ptr;

use qcorr_ffi::*;

fn last_error() -> String {
    let p = qcorr_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn matrix(dim: usize, entries: &[f64]) -> *mut QcorrMatrix {
    let mut m = ptr::null_mut();
    let status = unsafe { qcorr_matrix_new(dim, entries.as_ptr(), entries.len(), &mut m) };
    assert_eq!(status, QcorrStatus::Ok);
    m
}

fn real_interleaved(values: &[f64]) -> Vec<f64> {
    values.iter().flat_map(|&x| [x, 0.0]).collect()
}

#[test]
fn makhlin_and_class_of_swap() {
    let swap = real_interleaved(&[
        1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0., 0., 0., 0., 0., 1.,
    ]);
    let m = matrix(4, &swap);
    assert_eq!(unsafe { qcorr_matrix_dim(m) }, 4);
    let mut inv = QcorrMakhlin::default();
    assert_eq!(
        unsafe { qcorr_makhlin_invariants(m, 1e-9, &mut inv) },
        QcorrStatus::Ok
    );
    assert!((inv.alpha + 1.0).abs() < 1e-12);
    assert!(inv.beta.abs() < 1e-12);
    assert!((inv.gamma + 3.0).abs() < 1e-12);
    let mut mask = 0u32;
    assert_eq!(
        unsafe { qcorr_classify(m, 1e-9, &mut mask) },
        QcorrStatus::Ok
    );
    assert_eq!(mask, 1 << QcorrCoset::Swap as u32);
    unsafe { qcorr_matrix_free(m) };
}

#[test]
fn non_unitary_and_bad_lengths() {
    let shear = real_interleaved(&[
        1., 1., 0., 0., 0., 1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 1.,
    ]);
    let m = matrix(4, &shear);
    let mut mask = 0u32;
    assert_eq!(
        unsafe { qcorr_classify(m, 1e-9, &mut mask) },
        QcorrStatus::NotUnitary
    );
    assert!(last_error().contains("not unitary"));
    unsafe { qcorr_matrix_free(m) };

    let mut out = ptr::null_mut();
    let status = unsafe { qcorr_matrix_new(2, [1.0, 0.0].as_ptr(), 2, &mut out) };
    assert_eq!(status, QcorrStatus::Malformed);
    assert!(out.is_null());
    let status = unsafe { qcorr_matrix_new(2, ptr::null(), 8, &mut out) };
    assert_eq!(status, QcorrStatus::NullPointer);
}

#[test]
fn json_matrix_and_coset() {
    let text = CString::new(
        r#"{"dim":2,"entries":[[0.7071067811865476,0],[0.7071067811865476,0],[0.7071067811865476,0],[-0.7071067811865476,0]]}"#,
    )
    .unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { qcorr_matrix_from_json(text.as_ptr(), &mut m) },
        QcorrStatus::Ok
    );
    let mut inv = QcorrMakhlin::default();
    // 2x2 input is rejected
    assert_eq!(
        unsafe { qcorr_makhlin_invariants(m, 1e-9, &mut inv) },
        QcorrStatus::Malformed
    );
    unsafe { qcorr_matrix_free(m) };

    let bad = CString::new("{not json").unwrap();
    assert_eq!(
        unsafe { qcorr_matrix_from_json(bad.as_ptr(), &mut m) },
        QcorrStatus::Malformed
    );

    let mut coset = QcorrCoset::I;
    let cycle = [1u32, 2, 3, 0];
    assert_eq!(
        unsafe { qcorr_coset_of(cycle.as_ptr(), &mut coset) },
        QcorrStatus::Ok
    );
    assert_eq!(coset, QcorrCoset::Cnot21);
    let broken = [0u32, 0, 1, 2];
    assert_eq!(
        unsafe { qcorr_coset_of(broken.as_ptr(), &mut coset) },
        QcorrStatus::Malformed
    );
}

#[test]
fn counterparts_through_handles() {
    let k = [1u8, 1];
    let mut bv = ptr::null_mut();
    assert_eq!(
        unsafe { qcorr_bv_new(2, 0, k.as_ptr(), &mut bv) },
        QcorrStatus::Ok
    );

    let mut perm = [0u32; 4];
    let hh = CString::new("HH").unwrap();
    let status = unsafe { qcorr_phase_counterpart(bv, hh.as_ptr(), 1e-9, perm.as_mut_ptr(), 4) };
    assert_eq!(status, QcorrStatus::Ok);
    assert_eq!(perm, [3, 2, 1, 0]);

    let mut f = ptr::null_mut();
    assert_eq!(unsafe { qcorr_bv_function(bv, &mut f) }, QcorrStatus::Ok);
    let mut perm8 = [0u32; 8];
    let ccc = CString::new("CCC").unwrap();
    let status =
        unsafe { qcorr_standard_counterpart(f, ccc.as_ptr(), 1e-9, perm8.as_mut_ptr(), 8) };
    assert_eq!(status, QcorrStatus::Ok);
    // f(x) = x₁ ⊕ x₂: y flips for x = 01, 10
    assert_eq!(perm8, [0, 1, 3, 2, 5, 4, 6, 7]);

    let status =
        unsafe { qcorr_standard_counterpart(f, ccc.as_ptr(), 1e-9, perm8.as_mut_ptr(), 4) };
    assert_eq!(status, QcorrStatus::BufferTooSmall);

    let hcc = CString::new("HCC").unwrap();
    let status =
        unsafe { qcorr_standard_counterpart(f, hcc.as_ptr(), 1e-9, perm8.as_mut_ptr(), 8) };
    assert_eq!(status, QcorrStatus::NoCounterpart);

    let cc = CString::new("CC").unwrap();
    let status = unsafe { qcorr_standard_counterpart(f, cc.as_ptr(), 1e-9, perm8.as_mut_ptr(), 8) };
    assert_eq!(status, QcorrStatus::Malformed);
    assert!(last_error().contains("arity"));

    unsafe {
        qcorr_function_free(f);
        qcorr_bv_free(bv);
    }
}

#[test]
fn simulations() {
    let truth = [0u8, 1, 1, 1];
    let mut f = ptr::null_mut();
    assert_eq!(
        unsafe { qcorr_function_new(2, truth.as_ptr(), 4, &mut f) },
        QcorrStatus::Ok
    );
    let (mut parity, mut calls) = (9u8, 0u32);
    assert_eq!(
        unsafe { qcorr_run_parity(f, &mut parity, &mut calls) },
        QcorrStatus::Ok
    );
    assert_eq!((parity, calls), (1, 2));
    unsafe { qcorr_function_free(f) };

    let bad = [0u8, 2];
    assert_eq!(
        unsafe { qcorr_function_new(1, bad.as_ptr(), 2, &mut f) },
        QcorrStatus::Malformed
    );

    let k = [1u8, 0, 1, 1];
    let mut bv = ptr::null_mut();
    assert_eq!(
        unsafe { qcorr_bv_new(4, 1, k.as_ptr(), &mut bv) },
        QcorrStatus::Ok
    );
    let mut out = [0u8; 4];
    assert_eq!(
        unsafe { qcorr_run_bv(bv, out.as_mut_ptr(), 4, &mut calls) },
        QcorrStatus::Ok
    );
    assert_eq!((out, calls), (k, 1));
    assert_eq!(
        unsafe { qcorr_run_bv(bv, out.as_mut_ptr(), 2, &mut calls) },
        QcorrStatus::BufferTooSmall
    );
    unsafe { qcorr_bv_free(bv) };
}

#[test]
fn complexity_and_report() {
    let os = CString::new("OS").unwrap();
    let oa = CString::new("OA").unwrap();
    let cc = CString::new("extracted:CC").unwrap();
    let mut q = 0i64;
    unsafe {
        assert_eq!(
            qcorr_query_complexity(QcorrProblem::Parity, 2, os.as_ptr(), 1e-9, &mut q),
            QcorrStatus::Ok
        );
        assert_eq!(q, 4);
        assert_eq!(
            qcorr_query_complexity(QcorrProblem::Parity, 2, oa.as_ptr(), 1e-9, &mut q),
            QcorrStatus::Ok
        );
        assert_eq!(q, 2);
        assert_eq!(
            qcorr_query_complexity(QcorrProblem::Bv, 2, cc.as_ptr(), 1e-9, &mut q),
            QcorrStatus::Ok
        );
        assert_eq!(q, -1);
        assert_eq!(
            qcorr_query_complexity(QcorrProblem::Bv, 7, os.as_ptr(), 1e-9, &mut q),
            QcorrStatus::SizeLimit
        );
    }

    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { qcorr_speedup_report_json(QcorrProblem::Bv, 2, 1e-9, &mut json) },
        QcorrStatus::Ok
    );
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { qcorr_string_free(json) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["genuine_speedup"], 1.0);
    assert_eq!(v["naive_speedup"], 3.0);
}

#[test]
fn null_outputs_are_rejected() {
    let os = CString::new("OS").unwrap();
    let status =
        unsafe { qcorr_query_complexity(QcorrProblem::Bv, 2, os.as_ptr(), 1e-9, ptr::null_mut()) };
    assert_eq!(status, QcorrStatus::NullPointer);
    unsafe {
        qcorr_matrix_free(ptr::null_mut());
        qcorr_string_free(ptr::null_mut());
    }
}
