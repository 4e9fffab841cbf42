//! C ABI for the `locclab` toolkit.
//!
//! State sets and verdicts are exposed as opaque handles; every fallible
//! call returns a [`LoccStatus`] code and the last error message is kept in
//! thread-local storage. Strings returned by the library are NUL-terminated,
//! UTF-8, and must be released with [`locclab_string_free`].
//!
//! The generated header lives at `include/locclab.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use locclab::decider::{decide_one_way, DecideConfig, SearchLimits, SidePolicy, VerdictStatus};
use locclab::states::{
    make_named, make_tiling, state_set_from_json, state_set_to_json, NamedSet, StateSet,
    TilingParams,
};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoccStatus {
    /// Success.
    Ok = 0,
    /// A pointer argument was NULL or otherwise unusable.
    NullArgument = 1,
    /// Invalid input (malformed JSON, bad parameters, non-orthogonal set).
    InvalidInput = 2,
    /// Internal failure; consult `locclab_last_error_message`.
    Internal = 5,
}

/// Which side moves first.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoccSide {
    AliceFirst = 0,
    BobFirst = 1,
    EitherFirst = 2,
}

/// Verdict of the decision pipeline (mirrors the CLI exit codes).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoccVerdictStatus {
    Distinguishable = 0,
    Indistinguishable = 3,
    Undetermined = 4,
}

/// Opaque state-set handle.
pub struct LoccStateSet {
    inner: StateSet,
}

/// Opaque verdict handle.
pub struct LoccVerdict {
    inner: locclab::decider::Verdict,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let cstring = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("error message unavailable").expect("static"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Message for the most recent failure on this thread, or NULL after a
/// success. The pointer stays valid until the next library call on the same
/// thread; do not free it.
#[no_mangle]
pub extern "C" fn locclab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|s| s.as_ptr())
            .unwrap_or(std::ptr::null())
    })
}

/// Library version as a static NUL-terminated string; do not free it.
#[no_mangle]
pub extern "C" fn locclab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

fn guarded<T>(out: *mut *mut T, build: impl FnOnce() -> Result<T, (LoccStatus, String)>) -> LoccStatus {
    if out.is_null() {
        set_error("output pointer is NULL".into());
        return LoccStatus::NullArgument;
    }
    let result = catch_unwind(AssertUnwindSafe(build));
    match result {
        Ok(Ok(value)) => {
            clear_error();
            unsafe { *out = Box::into_raw(Box::new(value)) };
            LoccStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            unsafe { *out = std::ptr::null_mut() };
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            unsafe { *out = std::ptr::null_mut() };
            LoccStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, (LoccStatus, String)> {
    if ptr.is_null() {
        return Err((LoccStatus::NullArgument, "string argument is NULL".into()));
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| (LoccStatus::InvalidInput, "string is not UTF-8".into()))
}

/// Parse a state set from its JSON form.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn locclab_state_set_from_json(
    json: *const c_char,
    out: *mut *mut LoccStateSet,
) -> LoccStatus {
    guarded(out, || {
        let text = unsafe { read_str(json) }?;
        let inner = state_set_from_json(text)
            .map_err(|e| (LoccStatus::InvalidInput, e.to_string()))?;
        Ok(LoccStateSet { inner })
    })
}

/// Build the tiling family for sizes `1 <= la <= lb`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn locclab_state_set_tiling(
    la: usize,
    lb: usize,
    out: *mut *mut LoccStateSet,
) -> LoccStatus {
    guarded(out, || {
        let inner = make_tiling(TilingParams { l_a: la, l_b: lb })
            .map_err(|e| (LoccStatus::InvalidInput, e.to_string()))?;
        Ok(LoccStateSet { inner })
    })
}

/// Build a named set: one of `bell3`, `quad_3x2`, `groisman_2x2`,
/// `penta_3x3`, `hex_3x2`.
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn locclab_state_set_named(
    name: *const c_char,
    out: *mut *mut LoccStateSet,
) -> LoccStatus {
    guarded(out, || {
        let name = unsafe { read_str(name) }?;
        let named: NamedSet = name
            .parse()
            .map_err(|e: locclab::Error| (LoccStatus::InvalidInput, e.to_string()))?;
        Ok(LoccStateSet {
            inner: make_named(named),
        })
    })
}

/// Number of states in the set; 0 for a NULL handle.
///
/// # Safety
/// `set` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn locclab_state_set_len(set: *const LoccStateSet) -> usize {
    if set.is_null() {
        return 0;
    }
    unsafe { &*set }.inner.len()
}

/// Local dimensions of the set; zeros for a NULL handle.
///
/// # Safety
/// `set` must be NULL or a live handle; `d_a`/`d_b` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn locclab_state_set_dims(
    set: *const LoccStateSet,
    d_a: *mut usize,
    d_b: *mut usize,
) {
    let (da, db) = if set.is_null() {
        (0, 0)
    } else {
        let inner = &unsafe { &*set }.inner;
        (inner.d_a, inner.d_b)
    };
    if !d_a.is_null() {
        unsafe { *d_a = da };
    }
    if !d_b.is_null() {
        unsafe { *d_b = db };
    }
}

/// Serialize a state set to its JSON form.
///
/// # Safety
/// `set` must be a live handle and `out` a valid pointer; release the
/// returned string with [`locclab_string_free`].
#[no_mangle]
pub unsafe extern "C" fn locclab_state_set_to_json(
    set: *const LoccStateSet,
    out: *mut *mut c_char,
) -> LoccStatus {
    if set.is_null() {
        set_error("state-set handle is NULL".into());
        return LoccStatus::NullArgument;
    }
    let text = state_set_to_json(&unsafe { &*set }.inner);
    string_out(text, out)
}

fn string_out(text: String, out: *mut *mut c_char) -> LoccStatus {
    if out.is_null() {
        set_error("output pointer is NULL".into());
        return LoccStatus::NullArgument;
    }
    match CString::new(text) {
        Ok(cstring) => {
            clear_error();
            unsafe { *out = cstring.into_raw() };
            LoccStatus::Ok
        }
        Err(_) => {
            set_error("string contains interior NUL".into());
            LoccStatus::Internal
        }
    }
}

/// Run the one-way decision pipeline. `restarts = 0` and `tol <= 0` select
/// the defaults (32 restarts, 1e-9).
///
/// # Safety
/// `set` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn locclab_analyze(
    set: *const LoccStateSet,
    side: LoccSide,
    tol: f64,
    seed: u64,
    restarts: usize,
    out: *mut *mut LoccVerdict,
) -> LoccStatus {
    if set.is_null() {
        set_error("state-set handle is NULL".into());
        return LoccStatus::NullArgument;
    }
    let inner = &unsafe { &*set }.inner;
    guarded(out, || {
        let policy = match side {
            LoccSide::AliceFirst => SidePolicy::AliceFirst,
            LoccSide::BobFirst => SidePolicy::BobFirst,
            LoccSide::EitherFirst => SidePolicy::EitherFirst,
        };
        let config = DecideConfig {
            tol: if tol > 0.0 { tol } else { locclab::DEFAULT_TOL },
            seed,
            restarts: if restarts == 0 {
                locclab::DEFAULT_RESTARTS
            } else {
                restarts
            },
            limits: SearchLimits::default(),
        };
        let verdict = decide_one_way(inner, policy, &config)
            .map_err(|e| (LoccStatus::InvalidInput, e.to_string()))?;
        Ok(LoccVerdict { inner: verdict })
    })
}

/// Status of a verdict handle; `Undetermined` for NULL.
///
/// # Safety
/// `verdict` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn locclab_verdict_status(verdict: *const LoccVerdict) -> LoccVerdictStatus {
    if verdict.is_null() {
        return LoccVerdictStatus::Undetermined;
    }
    match unsafe { &*verdict }.inner.status {
        VerdictStatus::Distinguishable => LoccVerdictStatus::Distinguishable,
        VerdictStatus::Indistinguishable => LoccVerdictStatus::Indistinguishable,
        VerdictStatus::Undetermined => LoccVerdictStatus::Undetermined,
    }
}

/// Serialize the full verdict (stages, certificates, warnings) as JSON.
///
/// # Safety
/// `verdict` must be a live handle and `out` a valid pointer; release the
/// returned string with [`locclab_string_free`].
#[no_mangle]
pub unsafe extern "C" fn locclab_verdict_to_json(
    verdict: *const LoccVerdict,
    out: *mut *mut c_char,
) -> LoccStatus {
    if verdict.is_null() {
        set_error("verdict handle is NULL".into());
        return LoccStatus::NullArgument;
    }
    match serde_json::to_string_pretty(&unsafe { &*verdict }.inner) {
        Ok(text) => string_out(text, out),
        Err(e) => {
            set_error(format!("serialization failed: {e}"));
            LoccStatus::Internal
        }
    }
}

/// Minimum number of product states a one-way distinguishable `n`-set in
/// `C^dA x C^dB` must contain (0 when the bound does not bind).
#[no_mangle]
pub extern "C" fn locclab_min_product_bound(d_a: usize, d_b: usize, n: usize) -> usize {
    locclab::decider::min_product_bound(d_a, d_b, n)
}

/// Release a state-set handle (NULL is a no-op).
///
/// # Safety
/// `set` must be NULL or a handle produced by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn locclab_state_set_free(set: *mut LoccStateSet) {
    if !set.is_null() {
        drop(unsafe { Box::from_raw(set) });
    }
}

/// Release a verdict handle (NULL is a no-op).
///
/// # Safety
/// `verdict` must be NULL or a handle produced by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn locclab_verdict_free(verdict: *mut LoccVerdict) {
    if !verdict.is_null() {
        drop(unsafe { Box::from_raw(verdict) });
    }
}

/// Release a string returned by this library (NULL is a no-op).
///
/// # Safety
/// `s` must be NULL or a string produced by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn locclab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
