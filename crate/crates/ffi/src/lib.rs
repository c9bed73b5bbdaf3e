//! C interface to the command runner.
//!
//! Documents and reports are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every entry point returns a
//! `GckStatus`; panics are caught at the boundary.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gckit::cli::{run_text, Command, Options, Report, StructureDoc};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GckStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// The document or the options could not be parsed; a report naming the
    /// problem is still produced by `gck_run`.
    InvalidInput = 3,
    UnknownCommand = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GckCommand {
    Check = 0,
    Poisson = 1,
    Decompose = 2,
    Orthcomp = 3,
    Linearize = 4,
    Normalform = 5,
}

/// A `GckCommand` value received as a raw integer.
fn command_of(raw: u32) -> Option<Command> {
    Some(match raw {
        0 => Command::Check,
        1 => Command::Poisson,
        2 => Command::Decompose,
        3 => Command::Orthcomp,
        4 => Command::Linearize,
        5 => Command::Normalform,
        _ => return None,
    })
}

/// A validated structure document.
pub struct GckDocument {
    text: String,
}

/// A finished report; `json` is NUL-terminated.
pub struct GckReport {
    json: CString,
    exit_code: i32,
}

fn guarded(f: impl FnOnce() -> GckStatus) -> GckStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(GckStatus::Panic)
}

/// # Safety
/// `s` is null or a valid NUL-terminated string.
unsafe fn optional_str(s: *const c_char) -> Result<Option<String>, GckStatus> {
    if s.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(s).to_str().map(|s| Some(s.to_string())).map_err(|_| GckStatus::InvalidUtf8)
}

/// Parses and validates a JSON structure document.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is a valid pointer. On success
/// `*out` owns a document to release with `gck_document_free`.
#[no_mangle]
pub unsafe extern "C" fn gck_document_parse(json: *const c_char, out: *mut *mut GckDocument) -> GckStatus {
    guarded(|| {
        if json.is_null() || out.is_null() {
            return GckStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match optional_str(json) {
            Ok(Some(t)) => t,
            Ok(None) => return GckStatus::NullPointer,
            Err(e) => return e,
        };
        if StructureDoc::from_json(&text).and_then(|d| d.load()).is_err() {
            return GckStatus::InvalidInput;
        }
        *out = Box::into_raw(Box::new(GckDocument { text }));
        GckStatus::Ok
    })
}

/// # Safety
/// `doc` is null or was returned by `gck_document_parse` and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gck_document_free(doc: *mut GckDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Runs `command`, a `GckCommand` value, on `doc`. `point` and `subspace`
/// may be null; `degree` bounds the identity suites (the command line uses 3).
///
/// # Safety
/// `doc` is a live document; `point`, `subspace` are null or NUL-terminated;
/// `out` is a valid pointer. On `Ok` or `InvalidInput`, `*out` owns a report
/// to release with `gck_report_free`.
#[no_mangle]
pub unsafe extern "C" fn gck_run(
    doc: *const GckDocument,
    command: u32,
    point: *const c_char,
    subspace: *const c_char,
    degree: u32,
    out: *mut *mut GckReport,
) -> GckStatus {
    guarded(|| {
        if doc.is_null() || out.is_null() {
            return GckStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let Some(command) = command_of(command) else { return GckStatus::UnknownCommand };
        let (point, subspace) = match (optional_str(point), optional_str(subspace)) {
            (Ok(p), Ok(s)) => (p, s),
            _ => return GckStatus::InvalidUtf8,
        };
        let opts = Options { point, subspace, degree };
        let (report, code) = run_text(command, &(*doc).text, &opts);
        *out = Box::into_raw(Box::new(wrap(&report, code)));
        if code == 2 {
            GckStatus::InvalidInput
        } else {
            GckStatus::Ok
        }
    })
}

fn wrap(report: &Report, exit_code: i32) -> GckReport {
    let json = CString::new(report.to_json()).expect("JSON has no interior NUL");
    GckReport { json, exit_code }
}

/// The compact JSON report, borrowed from `report`.
///
/// # Safety
/// `report` is null or a live report; the result is valid until
/// `gck_report_free`.
#[no_mangle]
pub unsafe extern "C" fn gck_report_json(report: *const GckReport) -> *const c_char {
    if report.is_null() {
        return ptr::null();
    }
    (*report).json.as_ptr()
}

/// The command-line exit code of the report: 0, 1 or 2; -1 for null.
///
/// # Safety
/// `report` is null or a live report.
#[no_mangle]
pub unsafe extern "C" fn gck_report_exit_code(report: *const GckReport) -> i32 {
    if report.is_null() {
        return -1;
    }
    (*report).exit_code
}

/// # Safety
/// `report` is null or was returned by `gck_run` and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gck_report_free(report: *mut GckReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Static NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn gck_status_message(status: GckStatus) -> *const c_char {
    let s: &'static CStr = match status {
        GckStatus::Ok => c"ok",
        GckStatus::NullPointer => c"null pointer argument",
        GckStatus::InvalidUtf8 => c"string argument is not UTF-8",
        GckStatus::InvalidInput => c"document or options could not be parsed",
        GckStatus::UnknownCommand => c"unknown command",
        GckStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Report schema version.
#[no_mangle]
pub extern "C" fn gck_schema_version() -> u32 {
    gckit::cli::SCHEMA
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_arguments_are_rejected() {
        let mut doc = ptr::null_mut();
        assert_eq!(unsafe { gck_document_parse(ptr::null(), &mut doc) }, GckStatus::NullPointer);
        let mut report = ptr::null_mut();
        let r = unsafe { gck_run(ptr::null(), GckCommand::Check as u32, ptr::null(), ptr::null(), 3, &mut report) };
        assert_eq!(r, GckStatus::NullPointer);
        assert!(unsafe { gck_report_json(ptr::null()) }.is_null());
        assert_eq!(unsafe { gck_report_exit_code(ptr::null()) }, -1);
    }
}
