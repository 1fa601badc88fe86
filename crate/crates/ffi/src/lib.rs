//! C interface to `toric_gw`.
//!
//! Geometries are opaque handles created by [`tgw_geometry_parse`] and
//! released with [`tgw_geometry_free`]. Strings returned through out
//! parameters are owned by the caller and released with
//! [`tgw_string_free`]. Every function returns a [`TgwStatus`]; on failure
//! the message is available from [`tgw_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use toric_gw::asympt::{gamma_hat_series, gamma_vs_stationary_phase};
use toric_gw::hypergeom::{build_equivariant, ClassicalRing};
use toric_gw::quantum::quantum_table;
use toric_gw::recursion::verify_recursion;
use toric_gw::toric::{Geometry, ToricFibrationSpec};
use toric_gw::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TgwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Spec = 4,
    NonGenericLine = 5,
    Unsupported = 6,
    Degenerate = 7,
    Computation = 8,
    /// A check ran and found a mismatch.
    CheckFailed = 9,
    Panic = 10,
}

/// Opaque geometry handle.
pub struct TgwGeometry {
    inner: Geometry,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TgwStatus {
    match e {
        Error::Parse { .. } => TgwStatus::Parse,
        Error::Spec(_) | Error::NonRegularChamber(_) | Error::SingularFixedPoint(_) => TgwStatus::Spec,
        Error::NonGenericLine(_) => TgwStatus::NonGenericLine,
        Error::Unsupported(_) => TgwStatus::Unsupported,
        Error::Degenerate(_) => TgwStatus::Degenerate,
        _ => TgwStatus::Computation,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (TgwStatus, String)>) -> TgwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TgwStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("panic inside toric_gw");
            TgwStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (TgwStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (TgwStatus, String) {
    (TgwStatus::NullPointer, "null pointer argument".into())
}

unsafe fn geometry<'a>(g: *const TgwGeometry) -> Result<&'a Geometry, (TgwStatus, String)> {
    g.as_ref().map(|g| &g.inner).ok_or_else(null)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (TgwStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|_| (TgwStatus::Computation, "interior NUL in output".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Copies the last error message of this thread into `buf` (NUL
/// terminated, truncated to `len`) and returns the full message length
/// in bytes, or 0 if there is none.
///
/// # Safety
/// `buf` must be valid for `len` bytes or null.
#[no_mangle]
pub unsafe extern "C" fn tgw_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Parses a geometry description.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tgw_geometry_parse(text: *const c_char, out: *mut *mut TgwGeometry) -> TgwStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (TgwStatus::InvalidUtf8, "geometry text is not UTF-8".to_string()))?;
        let spec = ToricFibrationSpec::parse(s).map_err(lib_err)?;
        let inner = Geometry::new(spec).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(TgwGeometry { inner }));
        Ok(())
    })
}

/// # Safety
/// `g` must come from [`tgw_geometry_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tgw_geometry_free(g: *mut TgwGeometry) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of fixed points and of oriented edges.
///
/// # Safety
/// `g` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tgw_geometry_counts(g: *const TgwGeometry, points: *mut usize, edges: *mut usize) -> TgwStatus {
    guard(|| {
        let g = geometry(g)?;
        if points.is_null() || edges.is_null() {
            return Err(null());
        }
        *points = g.points.len();
        *edges = g.edges.len();
        Ok(())
    })
}

/// Fixed points and edges as text.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tgw_geometry_dump(g: *const TgwGeometry, out: *mut *mut c_char) -> TgwStatus {
    guard(|| {
        let g = geometry(g)?;
        write_string(out, g.dump())
    })
}

/// Runs the recursion check on every lambda line of the geometry with its
/// own cutoff and `t`-order. Counts are summed over lines. Returns
/// `CheckFailed` if any identity fails.
///
/// # Safety
/// `g` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tgw_verify_recursion(
    g: *const TgwGeometry,
    kmax: u32,
    checked: *mut usize,
    passed: *mut usize,
    skipped: *mut usize,
) -> TgwStatus {
    guard(|| {
        let g = geometry(g)?;
        if checked.is_null() || passed.is_null() || skipped.is_null() {
            return Err(null());
        }
        if kmax == 0 {
            return Err((TgwStatus::Spec, "kmax must be at least 1".into()));
        }
        let bound = g.generic_bound(&g.spec.cutoff, kmax);
        let (mut c, mut p, mut s) = (0, 0, 0);
        for line in &g.spec.lambda_lines {
            g.check_generic(line, bound).map_err(lib_err)?;
            let eq = build_equivariant(g, line, &g.spec.cutoff, g.spec.t_order, false);
            let rep = verify_recursion(g, &eq, kmax).map_err(lib_err)?;
            c += rep.checked();
            p += rep.passed();
            s += rep.skipped.len();
        }
        *checked = c;
        *passed = p;
        *skipped = s;
        if p == c {
            Ok(())
        } else {
            Err((TgwStatus::CheckFailed, format!("{} of {c} recursion checks failed", c - p)))
        }
    })
}

/// Small quantum product table at the origin, one product per line.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tgw_quantum_table(g: *const TgwGeometry, out: *mut *mut c_char) -> TgwStatus {
    guard(|| {
        let g = geometry(g)?;
        let ring = ClassicalRing::from_pairing(g, None).map_err(lib_err)?;
        let table = quantum_table(g, &ring, &g.spec.cutoff).map_err(lib_err)?;
        write_string(out, table.to_text())
    })
}

/// Asymptotic series of the Gamma function through `u^order`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tgw_gamma_series(order: u32, out: *mut *mut c_char) -> TgwStatus {
    guard(|| write_string(out, gamma_hat_series(order as usize).to_string()))
}

/// Compares the Gamma series with its stationary phase expansion through
/// `u^order`. Returns `CheckFailed` on a mismatch.
#[no_mangle]
pub extern "C" fn tgw_gamma_check(order: u32) -> TgwStatus {
    guard(|| match gamma_vs_stationary_phase(order as usize).map_err(lib_err)? {
        true => Ok(()),
        false => Err((TgwStatus::CheckFailed, "series differ".into())),
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tgw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
