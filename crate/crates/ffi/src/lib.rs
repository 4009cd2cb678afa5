//! C ABI over `qcorr`.
//!
//! Objects cross the boundary as opaque handles created by `*_new` and
//! released by the matching `*_free`. Every fallible call returns a
//! [`QcorrStatus`]; on failure the message is available from
//! [`qcorr_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qcorr::correspondence::{
    classify_cc, coset_of, extract_counterpart, makhlin_report, BasisAssignment, CosetId,
};
use qcorr::matrix::{CMatrix, Complex64};
use qcorr::oracle::{
    bv_function, phase_oracle, standard_oracle, BVInstance, BooleanFunction, OracleAction,
};
use qcorr::query::{
    deterministic_query_complexity, oracle_family, run_bv_quantum, run_parity_quantum,
    speedup_report, NamedOracle, ProblemKind, ProblemSpec, SpeedupConfig,
};
use qcorr::Error;

/// Result codes. 2, 3 and 4 match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcorrStatus {
    Ok = 0,
    NullPointer = 1,
    Malformed = 2,
    NotUnitary = 3,
    SizeLimit = 4,
    NoCounterpart = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcorrCoset {
    I = 0,
    Swap = 1,
    Cnot12 = 2,
    Cnot21 = 3,
    Swat12 = 4,
    Swat21 = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcorrProblem {
    Parity = 0,
    Bv = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct QcorrMakhlin {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// Imaginary part dropped from `gamma`.
    pub gamma_imag: f64,
}

/// Opaque square complex matrix.
pub struct QcorrMatrix(CMatrix);

/// Opaque Boolean function.
pub struct QcorrFunction(BooleanFunction);

/// Opaque Bernstein-Vazirani instance.
pub struct QcorrBv(BVInstance);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct FfiError {
    status: QcorrStatus,
    message: String,
}

impl From<Error> for FfiError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotUnitary { .. } => QcorrStatus::NotUnitary,
            Error::SizeLimit { .. } => QcorrStatus::SizeLimit,
            _ => QcorrStatus::Malformed,
        };
        FfiError {
            status,
            message: e.to_string(),
        }
    }
}

fn fail(status: QcorrStatus, message: impl Into<String>) -> FfiError {
    FfiError {
        status,
        message: message.into(),
    }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), FfiError>) -> QcorrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => QcorrStatus::Ok,
        Ok(Err(e)) => {
            set_last_error(&e.message);
            e.status
        }
        Err(_) => {
            set_last_error("internal panic");
            QcorrStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, FfiError> {
    p.as_ref()
        .ok_or_else(|| fail(QcorrStatus::NullPointer, "null pointer argument"))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, FfiError> {
    p.as_mut()
        .ok_or_else(|| fail(QcorrStatus::NullPointer, "null output pointer"))
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], FfiError> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(QcorrStatus::NullPointer, "null array argument"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, FfiError> {
    if p.is_null() {
        return Err(fail(QcorrStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(QcorrStatus::Malformed, "string is not UTF-8"))
}

fn bits_from_bytes(bytes: &[u8]) -> Result<Vec<bool>, FfiError> {
    bytes
        .iter()
        .map(|&b| match b {
            0 => Ok(false),
            1 => Ok(true),
            other => Err(fail(
                QcorrStatus::Malformed,
                format!("{other} is not a bit"),
            )),
        })
        .collect()
}

fn coset_code(id: CosetId) -> QcorrCoset {
    match id {
        CosetId::I => QcorrCoset::I,
        CosetId::Swap => QcorrCoset::Swap,
        CosetId::Cnot12 => QcorrCoset::Cnot12,
        CosetId::Cnot21 => QcorrCoset::Cnot21,
        CosetId::Swat12 => QcorrCoset::Swat12,
        CosetId::Swat21 => QcorrCoset::Swat21,
    }
}

fn problem_kind(p: QcorrProblem) -> ProblemKind {
    match p {
        QcorrProblem::Parity => ProblemKind::Parity,
        QcorrProblem::Bv => ProblemKind::BvIdentify,
    }
}

fn into_handle<T>(value: T, slot: &mut *mut T) {
    *slot = Box::into_raw(Box::new(value));
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qcorr_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a `dim`×`dim` matrix from `2·dim²` interleaved `re, im` values in
/// row-major order.
///
/// # Safety
/// `entries` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_matrix_new(
    dim: usize,
    entries: *const f64,
    len: usize,
    out_matrix: *mut *mut QcorrMatrix,
) -> QcorrStatus {
    guard(|| {
        let slot = out(out_matrix)?;
        if len != 2 * dim * dim {
            return Err(fail(
                QcorrStatus::Malformed,
                format!("expected {} doubles, got {len}", 2 * dim * dim),
            ));
        }
        let raw = slice(entries, len)?;
        let data = raw
            .chunks_exact(2)
            .map(|c| Complex64::new(c[0], c[1]))
            .collect();
        into_handle(QcorrMatrix(CMatrix::from_vec(dim, data)?), slot);
        Ok(())
    })
}

/// Parses the matrix JSON schema `{"dim": d, "entries": [[re, im], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out_matrix` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_matrix_from_json(
    json: *const c_char,
    out_matrix: *mut *mut QcorrMatrix,
) -> QcorrStatus {
    guard(|| {
        let slot = out(out_matrix)?;
        let m: CMatrix = serde_json_from_str(str_arg(json)?)?;
        into_handle(QcorrMatrix(m), slot);
        Ok(())
    })
}

fn serde_json_from_str<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, FfiError> {
    serde_json::from_str(text).map_err(|e| fail(QcorrStatus::Malformed, e.to_string()))
}

/// # Safety
/// `matrix` must be NULL or a handle from `qcorr_matrix_new`/`_from_json`
/// that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn qcorr_matrix_free(matrix: *mut QcorrMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// # Safety
/// `matrix` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcorr_matrix_dim(matrix: *const QcorrMatrix) -> usize {
    matrix.as_ref().map_or(0, |m| m.0.dim())
}

/// # Safety
/// `matrix` must be a live handle; `out_invariants` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_makhlin_invariants(
    matrix: *const QcorrMatrix,
    tol: f64,
    out_invariants: *mut QcorrMakhlin,
) -> QcorrStatus {
    guard(|| {
        let m = deref(matrix)?;
        let slot = out(out_invariants)?;
        let r = makhlin_report(&m.0, tol)?;
        *slot = QcorrMakhlin {
            alpha: r.triple.alpha,
            beta: r.triple.beta,
            gamma: r.triple.gamma,
            gamma_imag: r.gamma_imag,
        };
        Ok(())
    })
}

/// Writes the counterpart class as a bit set: bit `c` is set when coset
/// `c` (a `QcorrCoset` value) belongs to the class. 0 is the empty class.
///
/// # Safety
/// `matrix` must be a live handle; `out_mask` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_classify(
    matrix: *const QcorrMatrix,
    tol: f64,
    out_mask: *mut u32,
) -> QcorrStatus {
    guard(|| {
        let m = deref(matrix)?;
        let slot = out(out_mask)?;
        let class = classify_cc(&m.0, tol)?;
        *slot = class
            .members()
            .iter()
            .fold(0, |acc, &id| acc | 1 << coset_code(id) as u32);
        Ok(())
    })
}

/// Coset of a permutation of `{0,1,2,3}` given as four images.
///
/// # Safety
/// `perm` must point to four readable values; `out_coset` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_coset_of(
    perm: *const u32,
    out_coset: *mut QcorrCoset,
) -> QcorrStatus {
    guard(|| {
        let p = slice(perm, 4)?;
        let slot = out(out_coset)?;
        let p = [p[0] as usize, p[1] as usize, p[2] as usize, p[3] as usize];
        *slot = coset_code(coset_of(&p)?);
        Ok(())
    })
}

/// Truth table of length `2^n`, entries 0 or 1, index MSB = `x₁`.
///
/// # Safety
/// `truth` must point to `len` readable bytes; `out_function` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_function_new(
    n: usize,
    truth: *const u8,
    len: usize,
    out_function: *mut *mut QcorrFunction,
) -> QcorrStatus {
    guard(|| {
        let slot = out(out_function)?;
        let bits = bits_from_bytes(slice(truth, len)?)?;
        into_handle(QcorrFunction(BooleanFunction::new(n, bits)?), slot);
        Ok(())
    })
}

/// # Safety
/// `function` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcorr_function_free(function: *mut QcorrFunction) {
    if !function.is_null() {
        drop(Box::from_raw(function));
    }
}

/// Promise instance `f(x) = k0 ⊕ k·x`; `k` holds `n` bytes, `k₁` first.
///
/// # Safety
/// `k` must point to `n` readable bytes; `out_instance` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_bv_new(
    n: usize,
    k0: u8,
    k: *const u8,
    out_instance: *mut *mut QcorrBv,
) -> QcorrStatus {
    guard(|| {
        let slot = out(out_instance)?;
        let k = bits_from_bytes(slice(k, n)?)?;
        let k0 = bits_from_bytes(&[k0])?[0];
        into_handle(QcorrBv(BVInstance::new(n, k0, k)?), slot);
        Ok(())
    })
}

/// # Safety
/// `instance` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qcorr_bv_free(instance: *mut QcorrBv) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

fn write_counterpart(
    oracle: &OracleAction,
    bases: &str,
    tol: f64,
    out_perm: &mut [u32],
) -> Result<(), FfiError> {
    let bases: BasisAssignment = bases.parse()?;
    if out_perm.len() < oracle.dim() {
        return Err(fail(
            QcorrStatus::BufferTooSmall,
            format!("permutation needs {} slots", oracle.dim()),
        ));
    }
    let g = extract_counterpart(oracle, &bases, tol)?.ok_or_else(|| {
        fail(
            QcorrStatus::NoCounterpart,
            format!("no counterpart under {bases}"),
        )
    })?;
    for (slot, &image) in out_perm.iter_mut().zip(g.perm()) {
        *slot = image as u32;
    }
    Ok(())
}

/// Counterpart of the standard oracle of `function` under a `C`/`H` word of
/// length `n + 1`. Writes `2^(n+1)` images into `out_perm`.
///
/// # Safety
/// `function` must be a live handle, `bases` NUL-terminated, and `out_perm`
/// writable for `out_len` values.
#[no_mangle]
pub unsafe extern "C" fn qcorr_standard_counterpart(
    function: *const QcorrFunction,
    bases: *const c_char,
    tol: f64,
    out_perm: *mut u32,
    out_len: usize,
) -> QcorrStatus {
    guard(|| {
        let f = deref(function)?;
        let bases = str_arg(bases)?;
        if out_perm.is_null() {
            return Err(fail(QcorrStatus::NullPointer, "null output buffer"));
        }
        let buf = std::slice::from_raw_parts_mut(out_perm, out_len);
        write_counterpart(&standard_oracle(&f.0), bases, tol, buf)
    })
}

/// Counterpart of the phase oracle of `instance` under a word of length `n`.
///
/// # Safety
/// As for `qcorr_standard_counterpart`.
#[no_mangle]
pub unsafe extern "C" fn qcorr_phase_counterpart(
    instance: *const QcorrBv,
    bases: *const c_char,
    tol: f64,
    out_perm: *mut u32,
    out_len: usize,
) -> QcorrStatus {
    guard(|| {
        let inst = deref(instance)?;
        let bases = str_arg(bases)?;
        if out_perm.is_null() {
            return Err(fail(QcorrStatus::NullPointer, "null output buffer"));
        }
        let buf = std::slice::from_raw_parts_mut(out_perm, out_len);
        write_counterpart(&phase_oracle(&inst.0), bases, tol, buf)
    })
}

/// Truth table of the promise function of `instance` as a new handle.
///
/// # Safety
/// `instance` must be a live handle; `out_function` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_bv_function(
    instance: *const QcorrBv,
    out_function: *mut *mut QcorrFunction,
) -> QcorrStatus {
    guard(|| {
        let inst = deref(instance)?;
        let slot = out(out_function)?;
        into_handle(QcorrFunction(bv_function(&inst.0)), slot);
        Ok(())
    })
}

/// Exact deterministic query complexity. `oracle` is `OS`, `OA`, `OB`,
/// `OBT` or `extracted:WORD`. Writes -1 when the family cannot solve the
/// problem.
///
/// # Safety
/// `oracle` must be NUL-terminated; `out_queries` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_query_complexity(
    problem: QcorrProblem,
    n: usize,
    oracle: *const c_char,
    tol: f64,
    out_queries: *mut i64,
) -> QcorrStatus {
    guard(|| {
        let slot = out(out_queries)?;
        let named: NamedOracle = str_arg(oracle)?.parse()?;
        let p = ProblemSpec::new(problem_kind(problem), n)?;
        let fam = oracle_family(&p, &named, tol)?;
        *slot = deterministic_query_complexity(&p, &fam)?.map_or(-1, i64::from);
        Ok(())
    })
}

/// Simulates Bernstein-Vazirani; writes the recovered `k` (`n` bytes).
///
/// # Safety
/// `instance` must be a live handle; `out_k` writable for `k_len` bytes;
/// `out_queries` writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_run_bv(
    instance: *const QcorrBv,
    out_k: *mut u8,
    k_len: usize,
    out_queries: *mut u32,
) -> QcorrStatus {
    guard(|| {
        let inst = deref(instance)?;
        let queries = out(out_queries)?;
        if out_k.is_null() {
            return Err(fail(QcorrStatus::NullPointer, "null output buffer"));
        }
        if k_len < inst.0.n() {
            return Err(fail(
                QcorrStatus::BufferTooSmall,
                format!("k needs {} bytes", inst.0.n()),
            ));
        }
        let (k, calls) = run_bv_quantum(&inst.0)?;
        let buf = std::slice::from_raw_parts_mut(out_k, k_len);
        for (slot, b) in buf.iter_mut().zip(k) {
            *slot = b as u8;
        }
        *queries = calls as u32;
        Ok(())
    })
}

/// Simulates the PARITY algorithm.
///
/// # Safety
/// `function` must be a live handle; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_run_parity(
    function: *const QcorrFunction,
    out_parity: *mut u8,
    out_queries: *mut u32,
) -> QcorrStatus {
    guard(|| {
        let f = deref(function)?;
        let parity = out(out_parity)?;
        let queries = out(out_queries)?;
        let (p, calls) = run_parity_quantum(&f.0)?;
        *parity = p as u8;
        *queries = calls as u32;
        Ok(())
    })
}

/// Speed-up report as a JSON string over the `{C, H}` grid. Free the
/// result with `qcorr_string_free`.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcorr_speedup_report_json(
    problem: QcorrProblem,
    n: usize,
    tol: f64,
    out_json: *mut *mut c_char,
) -> QcorrStatus {
    guard(|| {
        let slot = out(out_json)?;
        let p = ProblemSpec::new(problem_kind(problem), n)?;
        let cfg = SpeedupConfig {
            tol,
            ..SpeedupConfig::default()
        };
        let report = speedup_report(&p, &cfg)?;
        let text = serde_json::to_string(&report).expect("report serializes");
        *slot = CString::new(text).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qcorr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
