//! C ABI for crepant-kit.
//!
//! Every function returns a [`CkStatus`]. On failure a message is available
//! from [`ck_last_error_message`] on the calling thread. Strings returned
//! through `out` parameters are owned by the caller and released with
//! [`ck_string_free`]; quotient handles with [`ck_quotient_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;

use crepant_kit::cohomology::{bott_cohomology, pushforward_vanishing, LineBundle, ProjSpace};
use crepant_kit::crepancy::{canonical_of_total_space, explore_discrepancy};
use crepant_kit::group_rep::{CyclicAction, HilbertSeries};
use crepant_kit::report;
use crepant_kit::sod::kuznetsov_sod_check;
use crepant_kit::tilting::{hom_hilbert, skew_hom_hilbert, tilting_check};
use crepant_kit::{Error, ScalarQuotient};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotGorenstein = 3,
    BufferTooSmall = 4,
    Overflow = 5,
    Panic = 6,
}

/// Opaque handle for `C^n/Z_d` with the scalar action.
pub struct CkQuotient(ScalarQuotient);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: CkStatus, msg: impl Into<String>) -> CkStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> CkStatus {
    let status = match e {
        Error::NotGorenstein { .. } => CkStatus::NotGorenstein,
        _ => CkStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> CkStatus) -> CkStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(CkStatus::Panic, "internal panic"))
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(CkStatus::NullPointer, concat!("`", stringify!($p), "` is NULL"));
        })+
    };
}

/// Last error message on this thread, or NULL. Valid until the next failing
/// call on the same thread.
#[no_mangle]
pub extern "C" fn ck_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ck_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn ck_quotient_new(n: u32, d: u32, out: *mut *mut CkQuotient) -> CkStatus {
    non_null!(out);
    guard(|| match ScalarQuotient::new(n, d) {
        Ok(q) => {
            *out = Box::into_raw(Box::new(CkQuotient(q)));
            CkStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// # Safety
/// `q` must come from [`ck_quotient_new`] and not be freed twice. NULL is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn ck_quotient_free(q: *mut CkQuotient) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ck_quotient_is_gorenstein(q: *const CkQuotient, out: *mut bool) -> CkStatus {
    non_null!(q, out);
    *out = (*q).0.is_gorenstein();
    CkStatus::Ok
}

/// Twist `c` with `ω_X̃ = t^*O(c)`.
///
/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ck_canonical_twist(q: *const CkQuotient, out: *mut i64) -> CkStatus {
    non_null!(q, out);
    guard(|| match canonical_of_total_space((*q).0) {
        Ok(t) => {
            *out = t;
            CkStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// Discrepancy as a reduced fraction. When `d ∤ n` the fraction is still
/// written and `CK_STATUS_NOT_GORENSTEIN` is returned.
///
/// # Safety
/// `q` must be a live handle; `numer` and `denom` writable.
#[no_mangle]
pub unsafe extern "C" fn ck_discrepancy(q: *const CkQuotient, numer: *mut i64, denom: *mut i64) -> CkStatus {
    non_null!(q, numer, denom);
    guard(|| match explore_discrepancy((*q).0) {
        Ok(disc) => {
            *numer = *disc.value.numer();
            *denom = *disc.value.denom();
            if disc.gorenstein {
                CkStatus::Ok
            } else {
                fail(CkStatus::NotGorenstein, disc.trace.join("; "))
            }
        }
        Err(e) => from_error(e),
    })
}

/// `out_offending_i` / `out_offending_m` are set to -1 when the higher
/// direct images vanish.
///
/// # Safety
/// All out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_pushforward_vanishing(
    n: u32,
    d: u32,
    twist: i64,
    out_vanishes: *mut bool,
    out_offending_i: *mut i64,
    out_offending_m: *mut i64,
) -> CkStatus {
    non_null!(out_vanishes, out_offending_i, out_offending_m);
    guard(|| match pushforward_vanishing(n, d, twist) {
        Ok(w) => {
            *out_vanishes = w.vanishes;
            let (i, m) = w.offending.map_or((-1, -1), |(i, m)| (i as i64, m as i64));
            *out_offending_i = i;
            *out_offending_m = m;
            CkStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

unsafe fn write_u64s<I: ToPrimitive>(values: &[I], out: *mut u64, capacity: usize, written: *mut usize) -> CkStatus {
    *written = values.len();
    if capacity < values.len() {
        return fail(
            CkStatus::BufferTooSmall,
            format!("need {} slots, got {capacity}", values.len()),
        );
    }
    for (i, v) in values.iter().enumerate() {
        match v.to_u64() {
            Some(x) => *out.add(i) = x,
            None => return fail(CkStatus::Overflow, format!("entry {i} exceeds 64 bits")),
        }
    }
    CkStatus::Ok
}

/// `h^0..h^{n-1}` of `O(k)` on `P^{n-1}`. `written` receives the number of
/// entries, also when the buffer is too small.
///
/// # Safety
/// `out` must hold `capacity` writable slots; `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ck_bott_cohomology(
    n: u32,
    k: i64,
    out: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> CkStatus {
    non_null!(out, written);
    guard(|| match ProjSpace::new(n) {
        Ok(space) => write_u64s(&bott_cohomology(space, LineBundle::new(k)).0, out, capacity, written),
        Err(e) => from_error(e),
    })
}

unsafe fn series_call(
    q: *const CkQuotient,
    out: *mut u64,
    capacity: usize,
    written: *mut usize,
    f: impl FnOnce(ScalarQuotient) -> crepant_kit::Result<HilbertSeries>,
) -> CkStatus {
    non_null!(q, out, written);
    guard(|| match f((*q).0) {
        Ok(s) => write_u64s(s.coefficients(), out, capacity, written),
        Err(e) => from_error(e),
    })
}

/// Graded dimensions of `Hom(t^*O(-a), t^*O(-b))` for fiber degrees
/// `0..=max_fiber_degree`.
///
/// # Safety
/// `q` must be a live handle; `out` must hold `capacity` slots.
#[no_mangle]
pub unsafe extern "C" fn ck_hom_hilbert(
    q: *const CkQuotient,
    a: u32,
    b: u32,
    max_fiber_degree: usize,
    out: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> CkStatus {
    series_call(q, out, capacity, written, |q| hom_hilbert(q, a, b, max_fiber_degree))
}

/// The skew group algebra side of [`ck_hom_hilbert`].
///
/// # Safety
/// As for [`ck_hom_hilbert`].
#[no_mangle]
pub unsafe extern "C" fn ck_skew_hom_hilbert(
    q: *const CkQuotient,
    a: u32,
    b: u32,
    max_fiber_degree: usize,
    out: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> CkStatus {
    series_call(q, out, capacity, written, |q| skew_hom_hilbert(q, a, b, max_fiber_degree))
}

/// # Safety
/// `q` must be a live handle and `out_passed` writable.
#[no_mangle]
pub unsafe extern "C" fn ck_tilting_check(q: *const CkQuotient, max_fiber_degree: usize, out_passed: *mut bool) -> CkStatus {
    non_null!(q, out_passed);
    guard(|| match tilting_check((*q).0, max_fiber_degree) {
        Ok(r) => {
            *out_passed = r.passed();
            CkStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// # Safety
/// `q` must be a live handle; out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn ck_sod_check(q: *const CkQuotient, out_passed: *mut bool, out_blocks: *mut u32) -> CkStatus {
    non_null!(q, out_passed, out_blocks);
    guard(|| match kuznetsov_sod_check((*q).0) {
        Ok(r) => {
            *out_passed = r.passed();
            *out_blocks = r.blocks.len() as u32;
            CkStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

fn hand_out(s: String, out: *mut *mut c_char) -> CkStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: checked non-null by the callers.
            unsafe { *out = c.into_raw() };
            CkStatus::Ok
        }
        Err(_) => fail(CkStatus::Panic, "report contained a NUL byte"),
    }
}

/// Full instance report as JSON; the same document `crepant-kit analyze
/// --format json` prints. `out_verdict_code` receives the CLI exit code
/// (0 pass, 1 otherwise).
///
/// # Safety
/// `out_json` and `out_verdict_code` must be writable. Free the string with
/// [`ck_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ck_analyze_json(
    n: u32,
    d: u32,
    max_degree: usize,
    out_json: *mut *mut c_char,
    out_verdict_code: *mut i32,
) -> CkStatus {
    non_null!(out_json, out_verdict_code);
    guard(|| match report::analyze(n, d, max_degree) {
        Ok(r) => {
            *out_verdict_code = r.exit_code();
            hand_out(r.to_json(), out_json)
        }
        Err(e) => from_error(e),
    })
}

/// Molien report as JSON for a diagonal action with `weights_len` weights.
///
/// # Safety
/// `weights` must point to `weights_len` readable values; `out_json` must be
/// writable. Free the string with [`ck_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ck_molien_json(
    d: u32,
    weights: *const i64,
    weights_len: usize,
    max_degree: usize,
    out_json: *mut *mut c_char,
) -> CkStatus {
    non_null!(weights, out_json);
    guard(|| {
        let w = std::slice::from_raw_parts(weights, weights_len);
        match CyclicAction::new(d, w).and_then(|a| report::molien(&a, max_degree)) {
            Ok(r) => hand_out(r.to_json(), out_json),
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ck_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
