//! C ABI over `ticketry`.
//!
//! Handles are opaque and owned by the caller once returned; release them with the
//! matching `*_free` function. Every fallible call returns a [`TkStatus`]; on failure
//! [`tk_last_error`] describes the problem until the next call on the same thread.
//! Strings cross the boundary as NUL-terminated UTF-8.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use ticketry::cli::{audit, exit_code};
use ticketry::fares::Price;
use ticketry::instance::{Instance, InstanceDocument};
use ticketry::routing::{cheapest_path, RouteOptions, RouteResult};
use ticketry::verify::EnumBudget;
use ticketry::Error;

/// Result of every fallible call. The nonzero values match the command-line exit codes
/// where they overlap.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TkStatus {
    Ok = 0,
    /// A required pointer was null or a string was not UTF-8.
    InvalidArgument = 1,
    Parse = 2,
    InvalidQuery = 3,
    ResourceLimit = 4,
    /// A panic was caught at the boundary.
    Internal = 5,
}

/// A parsed instance: network, zones, fare system and optional query.
pub struct TkInstance {
    inner: Instance,
}

/// A cheapest path with its price and node ids.
pub struct TkRoute {
    result: RouteResult,
    ids: Vec<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: TkStatus, msg: impl Into<String>) -> TkStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> TkStatus {
    let status = match exit_code(&e) {
        2 => TkStatus::Parse,
        4 => TkStatus::ResourceLimit,
        _ => TkStatus::InvalidQuery,
    };
    fail(status, e.to_string())
}

/// Runs `f` with panics turned into [`TkStatus::Internal`].
fn guard(f: impl FnOnce() -> TkStatus) -> TkStatus {
    set_error("");
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(TkStatus::Internal, "panic in ticketry"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, TkStatus> {
    if p.is_null() {
        return Err(fail(TkStatus::InvalidArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(TkStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn price_value(p: Price) -> f64 {
    p.value().unwrap_or(f64::INFINITY)
}

unsafe fn store<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// Message for the last failed call on this thread; empty after a success. The pointer
/// stays valid until the next call.
#[no_mangle]
pub extern "C" fn tk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses an instance from TOML text.
///
/// # Safety
/// `toml` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tk_instance_parse(toml: *const c_char, out: *mut *mut TkInstance) -> TkStatus {
    guard(|| {
        if out.is_null() {
            return fail(TkStatus::InvalidArgument, "out is null");
        }
        let src = match text(toml, "toml") {
            Ok(s) => s,
            Err(s) => return s,
        };
        match InstanceDocument::parse(src).and_then(|d| d.build()) {
            Ok(inner) => {
                store(out, TkInstance { inner });
                TkStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Reads and parses an instance file.
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tk_instance_open(path: *const c_char, out: *mut *mut TkInstance) -> TkStatus {
    guard(|| {
        if out.is_null() {
            return fail(TkStatus::InvalidArgument, "out is null");
        }
        let path = match text(path, "path") {
            Ok(s) => s,
            Err(s) => return s,
        };
        match InstanceDocument::read(Path::new(path)).and_then(|d| d.build()) {
            Ok(inner) => {
                store(out, TkInstance { inner });
                TkStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `inst` must come from `tk_instance_parse` / `tk_instance_open` (or be null) and not
/// be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tk_instance_free(inst: *mut TkInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Prices the walk given by `len` node ids. Virtual nodes on crossed edges may be left
/// out. An unavailable tariff yields `INFINITY`.
///
/// # Safety
/// `inst` must be a live handle, `ids` must point to `len` valid strings and `price` to
/// writable memory.
#[no_mangle]
pub unsafe extern "C" fn tk_price_walk(
    inst: *const TkInstance,
    ids: *const *const c_char,
    len: usize,
    price: *mut f64,
) -> TkStatus {
    guard(|| {
        if inst.is_null() || price.is_null() || (ids.is_null() && len > 0) {
            return fail(TkStatus::InvalidArgument, "null argument");
        }
        let inst = &(*inst).inner;
        let mut walk = Vec::with_capacity(len);
        for i in 0..len {
            match text(*ids.add(i), "node id") {
                Ok(s) => walk.push(s),
                Err(s) => return s,
            }
        }
        let result = inst
            .fare()
            .and_then(|fs| Ok((fs, inst.network.resolve_walk(&walk)?)))
            .and_then(|(fs, w)| fs.price(&inst.network, &w));
        match result {
            Ok(p) => {
                *price = price_value(p);
                TkStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Cheapest path from `from` to `to` under the instance's fare system.
///
/// # Safety
/// `inst` must be a live handle, `from` / `to` valid strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tk_route(
    inst: *const TkInstance,
    from: *const c_char,
    to: *const c_char,
    compact: bool,
    out: *mut *mut TkRoute,
) -> TkStatus {
    guard(|| {
        if inst.is_null() || out.is_null() {
            return fail(TkStatus::InvalidArgument, "null argument");
        }
        let inst = &(*inst).inner;
        let (from, to) = match (text(from, "from"), text(to, "to")) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let ptn = &inst.network.ptn;
        let opts = RouteOptions {
            compact,
            ..RouteOptions::default()
        };
        let routed = (|| {
            let (x, y) = (ptn.index_of(from)?, ptn.index_of(to)?);
            cheapest_path(inst.fare()?, &inst.network, x, y, &opts)
        })();
        match routed {
            Ok(result) => {
                let ids = result
                    .walk
                    .nodes()
                    .iter()
                    .map(|&v| CString::new(ptn.id(v)).unwrap_or_default())
                    .collect();
                store(out, TkRoute { result, ids });
                TkStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Price of the route; `INFINITY` if no tariff applies.
///
/// # Safety
/// `route` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tk_route_price(route: *const TkRoute) -> f64 {
    route.as_ref().map_or(f64::NAN, |r| price_value(r.result.price))
}

/// Number of nodes on the route.
///
/// # Safety
/// `route` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tk_route_len(route: *const TkRoute) -> usize {
    route.as_ref().map_or(0, |r| r.ids.len())
}

/// Id of the `i`-th route node, or null when out of range. Owned by the route.
///
/// # Safety
/// `route` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tk_route_node(route: *const TkRoute, i: usize) -> *const c_char {
    route
        .as_ref()
        .and_then(|r| r.ids.get(i))
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// Number of zones the route visits under the tariff's count, or -1 if the tariff does
/// not count zones.
///
/// # Safety
/// `route` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tk_route_zone_count(route: *const TkRoute) -> i64 {
    route
        .as_ref()
        .and_then(|r| r.result.zone_count)
        .map_or(-1, |z| z as i64)
}

/// # Safety
/// `route` must come from `tk_route` (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tk_route_free(route: *mut TkRoute) {
    if !route.is_null() {
        drop(Box::from_raw(route));
    }
}

/// Runs the property checks and condition evaluators, writing a JSON report to `out`
/// (release it with `tk_string_free`). Budgets of 0 take the defaults.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tk_audit_json(
    inst: *const TkInstance,
    budget_edges: usize,
    budget_segments: usize,
    out: *mut *mut c_char,
) -> TkStatus {
    guard(|| {
        if inst.is_null() || out.is_null() {
            return fail(TkStatus::InvalidArgument, "null argument");
        }
        let defaults = EnumBudget::default();
        let pick = |v: usize, d: usize| if v == 0 { d } else { v };
        let report = EnumBudget::new(
            pick(budget_edges, defaults.max_edges),
            pick(budget_segments, defaults.max_segments),
            defaults.max_elongation_edges,
        )
        .and_then(|b| audit(&(*inst).inner, b, None));
        match report {
            Ok(v) => {
                *out = CString::new(v.to_string()).unwrap_or_default().into_raw();
                TkStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `s` must come from this library (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
