//! C ABI over the `acgw` library.
//!
//! Strings passed in are NUL-terminated UTF-8. Strings handed out are owned by the caller and
//! released with [`acgw_string_free`]. Every call returns an [`AcgwStatus`]; on failure the message
//! is available from [`acgw_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use acgw::cli::{exit_code, generate, run_command, violations, Command, GenKind};
use acgw::document::{parse, to_text, Document};
use acgw::model::{build, AnyModel};
use acgw::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AcgwStatus {
    Ok = 0,
    /// Validation failure or a construction that does not apply.
    Semantic = 1,
    Parse = 2,
    NullArgument = 3,
    InvalidUtf8 = 4,
    UnknownName = 5,
    Panic = 6,
}

/// A parsed and built document.
pub struct AcgwDocument {
    doc: Document,
    model: AnyModel,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn from_error(e: &Error) -> AcgwStatus {
    set_error(e.to_string());
    if exit_code(e) == 2 {
        AcgwStatus::Parse
    } else {
        AcgwStatus::Semantic
    }
}

fn guard(f: impl FnOnce() -> AcgwStatus) -> AcgwStatus {
    clear_error();
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        AcgwStatus::Panic
    })
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, AcgwStatus> {
    if p.is_null() {
        set_error("null argument");
        return Err(AcgwStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not UTF-8");
        AcgwStatus::InvalidUtf8
    })
}

fn out_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Parse and build a document.
///
/// # Safety
/// `text` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn acgw_document_parse(text: *const c_char, out: *mut *mut AcgwDocument) -> AcgwStatus {
    guard(|| {
        if out.is_null() {
            set_error("null argument");
            return AcgwStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let text = match str_arg(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse(text).and_then(|(doc, spans)| build(&doc, &spans).map(|model| (doc, model))) {
            Ok((doc, model)) => {
                *out = Box::into_raw(Box::new(AcgwDocument { doc, model }));
                AcgwStatus::Ok
            }
            Err(e) => from_error(&e),
        }
    })
}

/// # Safety
/// `doc` must come from [`acgw_document_parse`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn acgw_document_free(doc: *mut AcgwDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// `Ok` when every item validates; otherwise `Semantic` with the violations as the last error.
///
/// # Safety
/// `doc` must be a live document handle.
#[no_mangle]
pub unsafe extern "C" fn acgw_document_validate(doc: *const AcgwDocument) -> AcgwStatus {
    guard(|| {
        let Some(d) = doc.as_ref() else {
            set_error("null argument");
            return AcgwStatus::NullArgument;
        };
        let vs = match &d.model {
            AnyModel::Set(m) => violations(m),
            AnyModel::Linear(m) => violations(m),
        };
        if vs.is_empty() {
            AcgwStatus::Ok
        } else {
            set_error(vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n"));
            AcgwStatus::Semantic
        }
    })
}

/// Number of declared items.
///
/// # Safety
/// `doc` must be a live document handle or null.
#[no_mangle]
pub unsafe extern "C" fn acgw_document_item_count(doc: *const AcgwDocument) -> usize {
    doc.as_ref().map_or(0, |d| d.doc.items.len())
}

/// The canonical text form of the document.
///
/// # Safety
/// `doc` must be a live document handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn acgw_document_to_text(doc: *const AcgwDocument, out: *mut *mut c_char) -> AcgwStatus {
    guard(|| match (doc.as_ref(), out.is_null()) {
        (Some(d), false) => {
            *out = out_string(to_text(&d.doc));
            AcgwStatus::Ok
        }
        _ => {
            set_error("null argument");
            AcgwStatus::NullArgument
        }
    })
}

/// Run a command (`validate`, `homology`, `exact`, `snake`, `les`, `map-homology`, `oracle`,
/// `render`) on document text, as the command-line tool would.
///
/// `*stdout_out` receives the report and `*exit_out` the tool's exit code. The status is `Ok`
/// whenever the command ran, even if it reported a failure through the exit code.
///
/// # Safety
/// String arguments must be valid C strings; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn acgw_run(
    text: *const c_char,
    command: *const c_char,
    json: bool,
    stdout_out: *mut *mut c_char,
    exit_out: *mut i32,
) -> AcgwStatus {
    guard(|| {
        if stdout_out.is_null() || exit_out.is_null() {
            set_error("null argument");
            return AcgwStatus::NullArgument;
        }
        *stdout_out = ptr::null_mut();
        let (text, name) = match (str_arg(text), str_arg(command)) {
            (Ok(t), Ok(c)) => (t, c),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let Some(cmd) = Command::from_name(name) else {
            set_error(format!("unknown command `{name}`"));
            return AcgwStatus::UnknownName;
        };
        let o = run_command(text, cmd, json);
        if !o.stderr.is_empty() {
            set_error(o.stderr.trim_end());
        }
        *stdout_out = out_string(o.stdout);
        *exit_out = o.code;
        AcgwStatus::Ok
    })
}

/// A random document of kind `complex`, `exact`, `map`, `ses`, `snake`, `strong-snake` or
/// `linear`. A `size` of 0 uses the default bound.
///
/// # Safety
/// `kind` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn acgw_generate(
    kind: *const c_char,
    seed: u64,
    size: usize,
    json: bool,
    out: *mut *mut c_char,
) -> AcgwStatus {
    guard(|| {
        if out.is_null() {
            set_error("null argument");
            return AcgwStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let name = match str_arg(kind) {
            Ok(k) => k,
            Err(s) => return s,
        };
        let Some(kind) = GenKind::from_name(name) else {
            set_error(format!("unknown kind `{name}`"));
            return AcgwStatus::UnknownName;
        };
        let o = generate(kind, seed, (size > 0).then_some(size), json);
        if o.code != 0 {
            set_error(o.stderr.trim_end());
            return AcgwStatus::Semantic;
        }
        *out = out_string(o.stdout);
        AcgwStatus::Ok
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn acgw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn acgw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn acgw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
