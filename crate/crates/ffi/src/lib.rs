//! C ABI for `polymut`.
//!
//! Objects cross the boundary as opaque handles created by `*_from_json` or
//! by operations, and released with the matching `*_free`. Every fallible
//! function returns an `int32_t` status (`PM_OK` or a negative code) and
//! writes its result through an out-pointer. The message for the last
//! failure on the calling thread is available from `pm_last_error`.
//! Strings returned by the library must be released with `pm_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polymut::cluster::{Seed, SeedGraphNode};
use polymut::lie::{fflv_a, fflv_c, gt_polytope_a, gt_polytope_c, nz_sp4, sl4_no_body, Weight};
use polymut::mutation::MutationDatum;
use polymut::{Error, IntVector, RationalPolytope};

pub const PM_OK: i32 = 0;
pub const PM_ERR_NULL: i32 = -1;
pub const PM_ERR_UTF8: i32 = -2;
pub const PM_ERR_PARSE: i32 = -3;
pub const PM_ERR_INVALID: i32 = -4;
pub const PM_ERR_NOT_WELL_DEFINED: i32 = -5;
pub const PM_ERR_NON_CONVEX: i32 = -6;
pub const PM_ERR_NOT_INTERIOR: i32 = -7;
pub const PM_ERR_OTHER: i32 = -8;
pub const PM_ERR_PANIC: i32 = -9;

/// An exact rational polytope.
pub struct PmPolytope(RationalPolytope);

/// A mutation datum `(w, F, f)`.
pub struct PmDatum(MutationDatum);

/// A seed `(J, J_uf, ε)`.
pub struct PmSeed(Seed);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => PM_ERR_PARSE,
        Error::Dimension(_) | Error::Invalid(_) | Error::Frozen(_) | Error::ZeroVector => {
            PM_ERR_INVALID
        }
        Error::NotWellDefined(_) => PM_ERR_NOT_WELL_DEFINED,
        Error::NonConvexImage { .. } => PM_ERR_NON_CONVEX,
        Error::NotInterior(_) => PM_ERR_NOT_INTERIOR,
        _ => PM_ERR_OTHER,
    }
}

struct Fail(i32);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        set_error(e.to_string());
        Fail(code_of(&e))
    }
}

fn fail<T>(code: i32, msg: &str) -> Result<T, Fail> {
    set_error(msg);
    Err(Fail(code))
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PM_OK,
        Ok(Err(Fail(code))) => code,
        Err(_) => {
            set_error("internal panic");
            PM_ERR_PANIC
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return fail(PM_ERR_NULL, "null string argument");
    }
    CStr::from_ptr(s)
        .to_str()
        .or_else(|_| fail(PM_ERR_UTF8, "argument is not valid UTF-8"))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().map_or_else(|| fail(PM_ERR_NULL, "null handle"), Ok)
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return fail(PM_ERR_NULL, "null out-pointer");
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return fail(PM_ERR_NULL, "null out-pointer");
    }
    *out = CString::new(s).map_or(ptr::null_mut(), CString::into_raw);
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_polytope_from_json(json: *const c_char, out: *mut *mut PmPolytope) -> i32 {
    guard(|| {
        let p = RationalPolytope::from_json(read_str(json)?)?;
        put(out, PmPolytope(p))
    })
}

/// Generates a polytope. `kind` is one of `gt-a`, `gt-c`, `fflv-a`,
/// `fflv-c`, `sl4-nobody`, `nz-sp4`; `lambda` is like `"2,2,2"`. `n` is
/// ignored by the last two kinds.
///
/// # Safety
/// `kind` and `lambda` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_polytope_generate(
    kind: *const c_char,
    n: usize,
    lambda: *const c_char,
    out: *mut *mut PmPolytope,
) -> i32 {
    guard(|| {
        let lambda: Weight = read_str(lambda)?.parse()?;
        let p = match read_str(kind)? {
            "gt-a" => gt_polytope_a(n, &lambda)?,
            "gt-c" => gt_polytope_c(n, &lambda)?,
            "fflv-a" => fflv_a(n, &lambda)?,
            "fflv-c" => fflv_c(n, &lambda)?,
            "sl4-nobody" => sl4_no_body(&lambda)?,
            "nz-sp4" => nz_sp4(&lambda)?,
            other => return fail(PM_ERR_INVALID, &format!("unknown kind {other:?}")),
        };
        put(out, PmPolytope(p))
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_polytope_to_json(p: *const PmPolytope, out: *mut *mut c_char) -> i32 {
    guard(|| put_string(out, deref(p)?.0.to_json()))
}

/// # Safety
/// `p` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pm_polytope_free(p: *mut PmPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Ambient dimension, or 0 for a NULL handle.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pm_polytope_dim(p: *const PmPolytope) -> usize {
    p.as_ref().map_or(0, |p| p.0.dim())
}

/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pm_polytope_vertex_count(p: *const PmPolytope) -> usize {
    p.as_ref().map_or(0, |p| p.0.vertices().len())
}

/// Number of lattice points of `k·P`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_polytope_lattice_points(p: *const PmPolytope, k: u32, out: *mut u64) -> i32 {
    guard(|| {
        let p = deref(p)?;
        if out.is_null() {
            return fail(PM_ERR_NULL, "null out-pointer");
        }
        *out = p.0.dilate(&polymut::exact::rat(k as i64, 1)).lattice_point_count();
        Ok(())
    })
}

/// Number of interior lattice points.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_polytope_interior_points(p: *const PmPolytope, out: *mut u64) -> i32 {
    guard(|| {
        let p = deref(p)?;
        if out.is_null() {
            return fail(PM_ERR_NULL, "null out-pointer");
        }
        *out = p.0.interior_lattice_points().len() as u64;
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_polytope_polar(p: *const PmPolytope, out: *mut *mut PmPolytope) -> i32 {
    guard(|| {
        let d = deref(p)?.0.polar()?;
        put(out, PmPolytope(d))
    })
}

/// Polar dual of `P − a` for the lattice point `a[0..len]`.
///
/// # Safety
/// `p` must be a live handle, `a` must point to `len` integers and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_polytope_dual_at(
    p: *const PmPolytope,
    a: *const i64,
    len: usize,
    out: *mut *mut PmPolytope,
) -> i32 {
    guard(|| {
        let p = deref(p)?;
        if a.is_null() && len > 0 {
            return fail(PM_ERR_NULL, "null point");
        }
        let pt = if len == 0 { &[][..] } else { std::slice::from_raw_parts(a, len) };
        let d = p.0.dual_at(&IntVector::from_i64(pt))?;
        put(out, PmPolytope(d))
    })
}

/// Whether `P` and `Q` are the same set. Writes 1 or 0.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_polytope_equal(p: *const PmPolytope, q: *const PmPolytope, out: *mut i32) -> i32 {
    guard(|| {
        let (p, q) = (deref(p)?, deref(q)?);
        if out.is_null() {
            return fail(PM_ERR_NULL, "null out-pointer");
        }
        *out = i32::from(p.0 == q.0);
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_datum_from_json(json: *const c_char, out: *mut *mut PmDatum) -> i32 {
    guard(|| {
        let d = MutationDatum::from_json(read_str(json)?)?;
        put(out, PmDatum(d))
    })
}

/// # Safety
/// `d` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pm_datum_free(d: *mut PmDatum) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// `mut_w(P, F)` on the N side.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_mutate_n(d: *const PmDatum, p: *const PmPolytope, out: *mut *mut PmPolytope) -> i32 {
    guard(|| {
        let m = deref(d)?.0.mutate_n(&deref(p)?.0)?;
        put(out, PmPolytope(m))
    })
}

/// `f(φ_{w,F}(Q))` on the M side.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_mutate_m(d: *const PmDatum, q: *const PmPolytope, out: *mut *mut PmPolytope) -> i32 {
    guard(|| {
        let m = deref(d)?.0.apply_polytope(&deref(q)?.0)?;
        put(out, PmPolytope(m))
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_seed_from_json(json: *const c_char, out: *mut *mut PmSeed) -> i32 {
    guard(|| {
        let s = Seed::from_json(read_str(json)?)?;
        put(out, PmSeed(s))
    })
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_seed_to_json(s: *const PmSeed, out: *mut *mut c_char) -> i32 {
    guard(|| put_string(out, deref(s)?.0.to_json_value().to_string()))
}

/// # Safety
/// `s` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pm_seed_free(s: *mut PmSeed) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Mutates the seed at label `k` and maps `payload` through `μ_k^T`.
/// Either out-pointer may be NULL when that result is not wanted.
///
/// # Safety
/// Both handles must be live; non-NULL out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pm_seed_mutate(
    s: *const PmSeed,
    k: usize,
    payload: *const PmPolytope,
    out_seed: *mut *mut PmSeed,
    out_payload: *mut *mut PmPolytope,
) -> i32 {
    guard(|| {
        let node = SeedGraphNode::root(deref(s)?.0.clone(), deref(payload)?.0.clone())?;
        let next = node.tropical_mutate(k)?;
        if !out_seed.is_null() {
            put(out_seed, PmSeed(next.seed))?;
        }
        if !out_payload.is_null() {
            put(out_payload, PmPolytope(next.payload))?;
        }
        Ok(())
    })
}
