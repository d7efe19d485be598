//! C ABI over `commutant`.
//!
//! Objects are opaque handles owned by the caller and released with the
//! matching `*_free`. Every fallible call returns a `CmStatus`; on failure a
//! message is available from `cm_last_error_message` on the same thread.
//! Strings returned through out-parameters are freed with `cm_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use commutant::centralizer::centralizer_from_rcf;
use commutant::io::{matrix_to_json, parse_input};
use commutant::rcf::rcf_transform;
use commutant::{
    frobenius_dimension, invertible_witness_search, simultaneous_intertwiners, CentralizerBasis,
    Error, FieldSpec, IntertwinerSpace, MatrixK,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    NonPrimeModulus = 3,
    DimensionMismatch = 4,
    NonSquare = 5,
    Singular = 6,
    UnsupportedField = 7,
    OutOfRange = 8,
    InvalidArgument = 9,
    Internal = 10,
    Panic = 11,
}

/// A matrix over `Z/p` or `Q`.
pub struct CmMatrix {
    inner: MatrixK,
}

/// A centralizer basis with per-element provenance.
pub struct CmCentralizer {
    inner: CentralizerBasis,
}

/// A basis of simultaneous intertwiners.
pub struct CmIntertwinerSpace {
    inner: IntertwinerSpace,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CmStatus {
    match e {
        Error::Parse { .. } => CmStatus::Parse,
        Error::NonPrimeModulus(_) => CmStatus::NonPrimeModulus,
        Error::DimensionMismatch(_)
        | Error::ShapeMismatch(_)
        | Error::SizeMismatch
        | Error::SpecMismatch
        | Error::EmptyMatrix => CmStatus::DimensionMismatch,
        Error::NonSquare { .. } => CmStatus::NonSquare,
        Error::Singular | Error::SingularInput | Error::ZeroInversion => CmStatus::Singular,
        Error::UnsupportedField => CmStatus::UnsupportedField,
        Error::InternalInconsistency(_) => CmStatus::Internal,
        _ => CmStatus::InvalidArgument,
    }
}

fn fail(status: CmStatus, message: &str) -> CmStatus {
    set_error(message);
    status
}

/// Runs `body`, converting errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), CmStatus>) -> CmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            CmStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(CmStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: commutant::Result<T>) -> Result<T, CmStatus> {
    r.map_err(|e| fail(status_of(&e), &e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, CmStatus> {
    p.as_ref()
        .ok_or_else(|| fail(CmStatus::NullPointer, "null pointer argument"))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, CmStatus> {
    p.as_mut()
        .ok_or_else(|| fail(CmStatus::NullPointer, "null output pointer"))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, CmStatus> {
    if p.is_null() {
        return Err(fail(CmStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(CmStatus::InvalidArgument, "string is not UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("generated text has no interior nul")
        .into_raw()
}

fn field(modulus: u64) -> Result<FieldSpec, CmStatus> {
    if modulus == 0 {
        Ok(FieldSpec::rationals())
    } else {
        lift(FieldSpec::prime(modulus))
    }
}

fn boxed(m: MatrixK) -> *mut CmMatrix {
    Box::into_raw(Box::new(CmMatrix { inner: m }))
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn cm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a matrix from row-major integers. `modulus` is a prime, or 0 for Q.
///
/// # Safety
/// `data` must point to `rows * cols` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_matrix_from_i64(
    modulus: u64,
    rows: usize,
    cols: usize,
    data: *const i64,
    out_matrix: *mut *mut CmMatrix,
) -> CmStatus {
    guard(|| {
        let slot = out(out_matrix)?;
        *slot = ptr::null_mut();
        if data.is_null() {
            return Err(fail(CmStatus::NullPointer, "null data"));
        }
        let spec = field(modulus)?;
        let values = std::slice::from_raw_parts(data, rows.saturating_mul(cols));
        *slot = boxed(lift(MatrixK::from_i64s(spec, rows, cols, values))?);
        Ok(())
    })
}

/// Parses the text input format and picks matrix `name`. A null `name`
/// selects `A`, or the only matrix in the file.
///
/// # Safety
/// `input` (and `name` when non-null) must be nul-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn cm_matrix_parse(
    input: *const c_char,
    name: *const c_char,
    out_matrix: *mut *mut CmMatrix,
) -> CmStatus {
    guard(|| {
        let slot = out(out_matrix)?;
        *slot = ptr::null_mut();
        let doc = lift(parse_input(text(input)?))?;
        let chosen = if name.is_null() {
            doc.get("A").or(match doc.matrices.as_slice() {
                [(_, only)] => Some(only),
                _ => None,
            })
        } else {
            doc.get(text(name)?)
        };
        let m = chosen.ok_or_else(|| fail(CmStatus::InvalidArgument, "no such matrix"))?;
        *slot = boxed(m.clone());
        Ok(())
    })
}

/// # Safety
/// `m` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn cm_matrix_free(m: *mut CmMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cm_matrix_rows(m: *const CmMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.rows())
}

/// # Safety
/// `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cm_matrix_cols(m: *const CmMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.cols())
}

/// Entry `(i, j)` as text such as `"3"` or `"-2/5"`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_matrix_entry(
    m: *const CmMatrix,
    i: usize,
    j: usize,
    out_text: *mut *mut c_char,
) -> CmStatus {
    guard(|| {
        let slot = out(out_text)?;
        *slot = ptr::null_mut();
        let m = &deref(m)?.inner;
        if i >= m.rows() || j >= m.cols() {
            return Err(fail(CmStatus::OutOfRange, "entry index out of range"));
        }
        *slot = into_c_string(m[(i, j)].to_text());
        Ok(())
    })
}

/// The matrix as a JSON array of rows of scalar strings.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_matrix_to_json(
    m: *const CmMatrix,
    out_json: *mut *mut c_char,
) -> CmStatus {
    guard(|| {
        let slot = out(out_json)?;
        *slot = ptr::null_mut();
        *slot = into_c_string(matrix_to_json(&deref(m)?.inner).to_string());
        Ok(())
    })
}

/// Writes 1 to `out` if `a` and `b` commute, 0 otherwise.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_matrix_commutes(
    a: *const CmMatrix,
    b: *const CmMatrix,
    out_flag: *mut i32,
) -> CmStatus {
    guard(|| {
        let slot = out(out_flag)?;
        let (a, b) = (&deref(a)?.inner, &deref(b)?.inner);
        if a.rows() != b.rows() || a.cols() != b.cols() || a.spec() != b.spec() {
            return Err(fail(
                CmStatus::DimensionMismatch,
                "matrices differ in shape or field",
            ));
        }
        *slot = i32::from(lift(a.commutator(b))?.is_zero());
        Ok(())
    })
}

/// Computes a basis of the centralizer of `a`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_centralizer(
    a: *const CmMatrix,
    out_basis: *mut *mut CmCentralizer,
) -> CmStatus {
    guard(|| {
        let slot = out(out_basis)?;
        *slot = ptr::null_mut();
        let rcf = lift(rcf_transform(&deref(a)?.inner))?;
        let basis = lift(centralizer_from_rcf(&rcf))?;
        *slot = Box::into_raw(Box::new(CmCentralizer { inner: basis }));
        Ok(())
    })
}

/// # Safety
/// `c` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn cm_centralizer_free(c: *mut CmCentralizer) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cm_centralizer_dimension(c: *const CmCentralizer) -> usize {
    c.as_ref().map_or(0, |c| c.inner.dimension())
}

/// Copies basis element `k` (0-based) into a new matrix handle.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_centralizer_element(
    c: *const CmCentralizer,
    k: usize,
    out_matrix: *mut *mut CmMatrix,
) -> CmStatus {
    guard(|| {
        let slot = out(out_matrix)?;
        *slot = ptr::null_mut();
        let m = deref(c)?
            .inner
            .elements
            .get(k)
            .ok_or_else(|| fail(CmStatus::OutOfRange, "basis index out of range"))?;
        *slot = boxed(m.clone());
        Ok(())
    })
}

/// Block `(i, j)` (1-based) and power `t` that produced element `k`.
///
/// # Safety
/// `c` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_centralizer_provenance(
    c: *const CmCentralizer,
    k: usize,
    out_i: *mut usize,
    out_j: *mut usize,
    out_power: *mut usize,
) -> CmStatus {
    guard(|| {
        let (si, sj, st) = (out(out_i)?, out(out_j)?, out(out_power)?);
        let p = deref(c)?
            .inner
            .provenance
            .get(k)
            .ok_or_else(|| fail(CmStatus::OutOfRange, "basis index out of range"))?;
        (*si, *sj, *st) = (p.block.0, p.block.1, p.power);
        Ok(())
    })
}

/// `dim C(a)` from the invariant factor degrees.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_frobenius_dimension(
    a: *const CmMatrix,
    out_dim: *mut usize,
) -> CmStatus {
    guard(|| {
        let slot = out(out_dim)?;
        let rcf = lift(rcf_transform(&deref(a)?.inner))?;
        *slot = lift(frobenius_dimension(&rcf.factors))?;
        Ok(())
    })
}

/// Basis of `{U : U a = a' U, U b = b' U}`.
///
/// # Safety
/// All four handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_intertwiners(
    a: *const CmMatrix,
    b: *const CmMatrix,
    a_prime: *const CmMatrix,
    b_prime: *const CmMatrix,
    out_space: *mut *mut CmIntertwinerSpace,
) -> CmStatus {
    guard(|| {
        let slot = out(out_space)?;
        *slot = ptr::null_mut();
        let space = lift(simultaneous_intertwiners(
            &deref(a)?.inner,
            &deref(b)?.inner,
            &deref(a_prime)?.inner,
            &deref(b_prime)?.inner,
        ))?;
        *slot = Box::into_raw(Box::new(CmIntertwinerSpace { inner: space }));
        Ok(())
    })
}

/// # Safety
/// `s` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn cm_intertwiner_space_free(s: *mut CmIntertwinerSpace) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cm_intertwiner_dimension(s: *const CmIntertwinerSpace) -> usize {
    s.as_ref().map_or(0, |s| s.inner.dimension())
}

/// `"coset_via_rcf"` or `"brute_kernel"`; a static string, do not free.
///
/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cm_intertwiner_method(s: *const CmIntertwinerSpace) -> *const c_char {
    match s.as_ref().map(|s| s.inner.method.name()) {
        Some("coset_via_rcf") => c"coset_via_rcf".as_ptr(),
        Some(_) => c"brute_kernel".as_ptr(),
        None => ptr::null(),
    }
}

/// Copies basis element `k` (0-based) into a new matrix handle.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_intertwiner_element(
    s: *const CmIntertwinerSpace,
    k: usize,
    out_matrix: *mut *mut CmMatrix,
) -> CmStatus {
    guard(|| {
        let slot = out(out_matrix)?;
        *slot = ptr::null_mut();
        let m = deref(s)?
            .inner
            .basis
            .get(k)
            .ok_or_else(|| fail(CmStatus::OutOfRange, "basis index out of range"))?;
        *slot = boxed(m.clone());
        Ok(())
    })
}

/// Random search for an invertible element. On success with no witness
/// found, `*out` is set to null.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cm_intertwiner_witness(
    s: *const CmIntertwinerSpace,
    trials: usize,
    seed: u64,
    out_matrix: *mut *mut CmMatrix,
) -> CmStatus {
    guard(|| {
        let slot = out(out_matrix)?;
        *slot = ptr::null_mut();
        if let Some(w) = lift(invertible_witness_search(&deref(s)?.inner, trials, seed))? {
            *slot = boxed(w);
        }
        Ok(())
    })
}
