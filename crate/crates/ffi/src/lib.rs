//! C ABI over the character-table library.
//!
//! Tables are opaque handles owned by the caller and released with
//! `cliffchar_table_free`. Every fallible call returns a `CliffcharStatus`;
//! on failure `cliffchar_last_error` describes the cause for the calling
//! thread. Strings handed out are NUL-terminated UTF-8 and released with
//! `cliffchar_string_free`. No call unwinds across the boundary.
//!
//! # Safety
//!
//! Pointer arguments must be null or valid for the access the function
//! documents. Table handles and strings must come from this library and be
//! released exactly once; null is rejected with `NullPointer` (or ignored by
//! the `_free` functions).

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use cliffchar::chars::{assemble_irr, CharacterTable};
use cliffchar::cli::{cmd_verify, lift_table, JobSpec};
use cliffchar::linalg2::BitVec;
use cliffchar::pauli::{char_value, PauliCharacter};
use cliffchar::render::{render_table, Format};
use cliffchar::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CliffcharStatus {
    Ok = 0,
    /// A required pointer was null.
    NullPointer = 1,
    /// An argument is out of range or malformed.
    InvalidArgument = 2,
    /// The request exceeds the supported group sizes.
    SizeCap = 3,
    /// The value asked for is not a rational integer.
    NotInteger = 4,
    /// A consistency check of the computation failed.
    CheckFailed = 5,
    /// Filesystem or serialisation failure.
    Io = 6,
    /// Any other library error.
    Internal = 7,
    /// A panic was caught at the boundary.
    Panic = 8,
}

/// Output format for `cliffchar_table_render`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CliffcharFormat {
    Text = 0,
    Json = 1,
    Csv = 2,
}

impl From<CliffcharFormat> for Format {
    fn from(f: CliffcharFormat) -> Self {
        match f {
            CliffcharFormat::Text => Format::Text,
            CliffcharFormat::Json => Format::Json,
            CliffcharFormat::Csv => Format::Csv,
        }
    }
}

/// An irreducible (or lifted) character table. Opaque.
pub struct CliffcharTable {
    table: CharacterTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CliffcharStatus {
    match e {
        Error::SizeCap(_) | Error::BudgetExceeded { .. } => CliffcharStatus::SizeCap,
        Error::InvalidArgument(_) | Error::LengthMismatch { .. } | Error::DimensionMismatch(_) => {
            CliffcharStatus::InvalidArgument
        }
        Error::InvariantViolated(_) | Error::ClassIncompatible(_) | Error::NotIrreducible(_) => {
            CliffcharStatus::CheckFailed
        }
        Error::Io(_) | Error::Json(_) | Error::Cache(_) => CliffcharStatus::Io,
        _ => CliffcharStatus::Internal,
    }
}

/// Runs `f`, recording any error or panic for `cliffchar_last_error`.
fn guard(f: impl FnOnce() -> Result<(), (CliffcharStatus, String)>) -> CliffcharStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CliffcharStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            CliffcharStatus::Panic
        }
    }
}

fn lib<T>(r: cliffchar::Result<T>) -> Result<T, (CliffcharStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (CliffcharStatus, String) {
    (CliffcharStatus::NullPointer, format!("{what} is null"))
}

fn table_ref<'a>(t: *const CliffcharTable) -> Result<&'a CharacterTable, (CliffcharStatus, String)> {
    // SAFETY: non-null handles come from `Box::into_raw` in this crate.
    unsafe { t.as_ref() }.map(|t| &t.table).ok_or_else(|| null("table"))
}

fn hand_out(table: CharacterTable, out: *mut *mut CliffcharTable) -> Result<(), (CliffcharStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    // SAFETY: checked non-null; the caller provides writable storage.
    unsafe { *out = Box::into_raw(Box::new(CliffcharTable { table })) };
    Ok(())
}

fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), (CliffcharStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    // SAFETY: checked non-null; the caller provides writable storage.
    unsafe { *out = value };
    Ok(())
}

fn string_out(s: String, out: *mut *mut c_char) -> Result<(), (CliffcharStatus, String)> {
    let c = CString::new(s).map_err(|e| (CliffcharStatus::Internal, e.to_string()))?;
    write(out, c.into_raw(), "out")
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn cliffchar_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cliffchar_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version string"),
    };
    VERSION.as_ptr()
}

/// Irr(𝒞_n) for `n` in {1, 2}.
#[no_mangle]
pub unsafe extern "C" fn cliffchar_chartable(n: u32, out: *mut *mut CliffcharTable) -> CliffcharStatus {
    guard(|| {
        if !(1..=2).contains(&n) {
            return Err((CliffcharStatus::SizeCap, format!("character tables are available for n = 1, 2 (got {n})")));
        }
        hand_out(lib(assemble_irr(n as usize))?, out)
    })
}

/// The five 1-qubit irreducibles lifted to class functions on 𝒞₂.
#[no_mangle]
pub unsafe extern "C" fn cliffchar_lift_one_qubit(out: *mut *mut CliffcharTable) -> CliffcharStatus {
    guard(|| {
        let (table, report) = lib(lift_table(1, &JobSpec::ephemeral(Format::Text)))?;
        if !report.passed() {
            return Err((CliffcharStatus::CheckFailed, "a lifted row is not irreducible".into()));
        }
        hand_out(table, out)
    })
}

#[no_mangle]
pub unsafe extern "C" fn cliffchar_table_free(table: *mut CliffcharTable) {
    if !table.is_null() {
        // SAFETY: the handle came from `Box::into_raw` and is released once.
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Group order.
#[no_mangle]
pub unsafe extern "C" fn cliffchar_table_group_order(table: *const CliffcharTable, out: *mut u64) -> CliffcharStatus {
    guard(|| write(out, table_ref(table)?.info().order(), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn cliffchar_table_rows(table: *const CliffcharTable, out: *mut usize) -> CliffcharStatus {
    guard(|| write(out, table_ref(table)?.len(), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn cliffchar_table_classes(table: *const CliffcharTable, out: *mut usize) -> CliffcharStatus {
    guard(|| write(out, table_ref(table)?.info().len(), "out"))
}

/// Size and element order of class `class`.
#[no_mangle]
pub unsafe extern "C" fn cliffchar_table_class(
    table: *const CliffcharTable,
    class: usize,
    size: *mut u64,
    element_order: *mut u32,
) -> CliffcharStatus {
    guard(|| {
        let info = table_ref(table)?.info();
        if class >= info.len() {
            return Err((CliffcharStatus::InvalidArgument, format!("class {class} out of range")));
        }
        let c = info.class(class);
        write(size, c.size, "size")?;
        write(element_order, c.element_order, "element_order")
    })
}

/// Value of row `row` at class `class`, when it is a rational integer.
#[no_mangle]
pub unsafe extern "C" fn cliffchar_table_value(
    table: *const CliffcharTable,
    row: usize,
    class: usize,
    out: *mut i64,
) -> CliffcharStatus {
    guard(|| {
        let t = table_ref(table)?;
        if row >= t.len() || class >= t.info().len() {
            return Err((CliffcharStatus::InvalidArgument, format!("({row}, {class}) out of range")));
        }
        let v = t.row(row).value(class);
        let n = v
            .to_i64()
            .ok_or_else(|| (CliffcharStatus::NotInteger, format!("value {v} is not an integer")))?;
        write(out, n, "out")
    })
}

/// Label of row `row`; free with `cliffchar_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cliffchar_table_label(
    table: *const CliffcharTable,
    row: usize,
    out: *mut *mut c_char,
) -> CliffcharStatus {
    guard(|| {
        let t = table_ref(table)?;
        let r = t
            .rows()
            .get(row)
            .ok_or_else(|| (CliffcharStatus::InvalidArgument, format!("row {row} out of range")))?;
        string_out(r.label.clone(), out)
    })
}

/// The table rendered as text, JSON or CSV; free with `cliffchar_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cliffchar_table_render(
    table: *const CliffcharTable,
    format: CliffcharFormat,
    out: *mut *mut c_char,
) -> CliffcharStatus {
    guard(|| string_out(lib(render_table(table_ref(table)?, format.into()))?, out))
}

/// Runs the invariant suite for `n` in {1, 2}. `passed` receives whether
/// every check held; `report`, if non-null, receives the report as JSON.
#[no_mangle]
pub unsafe extern "C" fn cliffchar_verify(n: u32, passed: *mut bool, report: *mut *mut c_char) -> CliffcharStatus {
    guard(|| {
        let r = lib(cmd_verify(n as usize, &JobSpec::ephemeral(Format::Json)))?;
        write(passed, r.passed(), "passed")?;
        if !report.is_null() {
            string_out(lib(r.render(Format::Json))?, report)?;
        }
        Ok(())
    })
}

/// `(−1)^{a·x}`, the Pauli character labelled `a` at the Weyl index
/// `x`; bit `j < n` is the Z part and bit `n + j` the X part of qubit `j+1`.
#[no_mangle]
pub unsafe extern "C" fn cliffchar_pauli_char_value(n: u32, a: u64, x: u64, out: *mut i8) -> CliffcharStatus {
    guard(|| {
        let n = n as usize;
        if n == 0 || n > 32 {
            return Err((CliffcharStatus::InvalidArgument, format!("n = {n} out of range")));
        }
        let mask = if 2 * n == 64 { u64::MAX } else { (1u64 << (2 * n)) - 1 };
        if a & !mask != 0 || x & !mask != 0 {
            return Err((CliffcharStatus::InvalidArgument, "index has bits beyond 2n".into()));
        }
        let chi = PauliCharacter::new(BitVec::from_bits(2 * n, a));
        write(out, lib(char_value(&chi, &BitVec::from_bits(2 * n, x)))?, "out")
    })
}

/// Releases a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn cliffchar_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: the pointer came from `CString::into_raw` in this crate.
        drop(unsafe { CString::from_raw(s) });
    }
}
