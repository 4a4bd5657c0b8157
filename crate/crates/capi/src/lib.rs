//! C ABI for the lexicon toolkit.
//!
//! Theories are opaque handles created by [`tlx_theory_parse`] or
//! [`tlx_theory_fragment`] and released with [`tlx_theory_free`]. Results
//! are NUL-terminated UTF-8 strings owned by this library; release them
//! with [`tlx_string_free`]. Every fallible call returns a [`TlxStatus`];
//! on failure [`tlx_last_error_message`] returns a description, valid on
//! the calling thread until the next fallible call.
//!
//! The generated header lives at `include/treelex.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::str::FromStr;

use treelex::engine::{self, EngineConfig, EngineError};
use treelex::fragment::{self, Fragment};
use treelex::tree::{self, LexicalRule, TreeError};
use treelex::{
    format_atom_seq, parse_atom_path, parse_theory, render_theory, Atom, AtomPath, NodeName,
    ParseError, Theory,
};

/// Status of a C API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TlxStatus {
    Ok = 0,
    /// Malformed theory text, path, or identifier.
    SyntaxError = 1,
    /// A referenced node does not exist.
    UnknownNode = 2,
    /// A node defines no prefix of the queried path.
    NoMatchingSentence = 3,
    /// The inheritance depth limit was hit (cyclic theory).
    DepthExceeded = 4,
    /// A lexical rule was not applicable to the entry.
    RuleNotApplicable = 5,
    /// Any other evaluation or reconstruction failure.
    EvalError = 6,
    /// A null pointer, invalid UTF-8, or otherwise malformed argument.
    InvalidArgument = 7,
}

/// Opaque theory handle.
pub struct TlxTheory {
    inner: Theory,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::default();
    });
}

fn invalid(message: &str) -> TlxStatus {
    set_error(message);
    TlxStatus::InvalidArgument
}

fn parse_status(err: &ParseError) -> TlxStatus {
    set_error(&err.to_string());
    TlxStatus::SyntaxError
}

fn engine_status(err: &EngineError) -> TlxStatus {
    set_error(&err.to_string());
    match err {
        EngineError::UnknownNode(_) => TlxStatus::UnknownNode,
        EngineError::NoMatchingSentence { .. } => TlxStatus::NoMatchingSentence,
        EngineError::DepthExceeded { .. } => TlxStatus::DepthExceeded,
        _ => TlxStatus::EvalError,
    }
}

fn tree_status(err: &TreeError) -> TlxStatus {
    match err {
        TreeError::Engine(e) => engine_status(e),
        TreeError::RuleNotApplicable { .. } => {
            set_error(&err.to_string());
            TlxStatus::RuleNotApplicable
        }
        _ => {
            set_error(&err.to_string());
            TlxStatus::EvalError
        }
    }
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, TlxStatus> {
    if ptr.is_null() {
        return Err(invalid(&format!("{what} is null")));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| invalid(&format!("{what} is not valid UTF-8")))
}

fn theory_ref<'a>(theory: *const TlxTheory) -> Result<&'a Theory, TlxStatus> {
    if theory.is_null() {
        return Err(invalid("theory handle is null"));
    }
    // SAFETY: non-null handles come from tlx_theory_parse/tlx_theory_fragment.
    Ok(unsafe { &(*theory).inner })
}

fn out_string(out: *mut *mut c_char, text: String) -> TlxStatus {
    if out.is_null() {
        return invalid("output pointer is null");
    }
    let c = match CString::new(text) {
        Ok(c) => c,
        Err(_) => return invalid("result contained an interior NUL byte"),
    };
    // SAFETY: out was checked non-null; the caller owns the allocation.
    unsafe { *out = c.into_raw() };
    clear_error();
    TlxStatus::Ok
}

fn out_theory(out: *mut *mut TlxTheory, theory: Theory) -> TlxStatus {
    if out.is_null() {
        return invalid("output pointer is null");
    }
    // SAFETY: out was checked non-null; the caller owns the handle.
    unsafe { *out = Box::into_raw(Box::new(TlxTheory { inner: theory })) };
    clear_error();
    TlxStatus::Ok
}

fn config(max_depth: usize) -> EngineConfig {
    if max_depth == 0 {
        EngineConfig::default()
    } else {
        EngineConfig::with_max_depth(max_depth)
    }
}

/// Parse theory text into a new handle.
///
/// # Safety
/// `source` must be a valid NUL-terminated string and `out` a valid
/// pointer; on `Ok` the caller owns the handle and must free it with
/// [`tlx_theory_free`].
#[no_mangle]
pub unsafe extern "C" fn tlx_theory_parse(
    source: *const c_char,
    out: *mut *mut TlxTheory,
) -> TlxStatus {
    let source = match read_str(source, "source") {
        Ok(s) => s,
        Err(status) => return status,
    };
    match parse_theory(source) {
        Ok(theory) => out_theory(out, theory),
        Err(e) => parse_status(&e),
    }
}

/// Load a built-in fragment (`figure1` or `extended`) into a new handle.
///
/// # Safety
/// As for [`tlx_theory_parse`].
#[no_mangle]
pub unsafe extern "C" fn tlx_theory_fragment(
    name: *const c_char,
    out: *mut *mut TlxTheory,
) -> TlxStatus {
    let name = match read_str(name, "fragment name") {
        Ok(s) => s,
        Err(status) => return status,
    };
    match Fragment::from_str(name) {
        Ok(fragment) => out_theory(out, fragment::load_fragment(fragment)),
        Err(e) => invalid(&e.to_string()),
    }
}

/// Release a theory handle. Null is ignored.
///
/// # Safety
/// `theory` must be null or a handle returned by this library that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn tlx_theory_free(theory: *mut TlxTheory) {
    if !theory.is_null() {
        drop(Box::from_raw(theory));
    }
}

/// Number of node definitions in the theory; 0 on a null handle.
///
/// # Safety
/// `theory` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn tlx_theory_node_count(theory: *const TlxTheory) -> usize {
    match theory_ref(theory) {
        Ok(t) => t.node_count(),
        Err(_) => 0,
    }
}

/// Render the theory back to its canonical text form.
///
/// # Safety
/// `theory` must be a live handle; `out` a valid pointer. The caller frees
/// the string with [`tlx_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tlx_theory_render(
    theory: *const TlxTheory,
    out: *mut *mut c_char,
) -> TlxStatus {
    match theory_ref(theory) {
        Ok(t) => out_string(out, render_theory(t)),
        Err(status) => status,
    }
}

/// Evaluate `node:path` and write the atoms, space-separated.
/// `path` uses the angle-bracket syntax, e.g. `"<parent cat>"`.
/// `max_depth` of 0 selects the default limit.
///
/// # Safety
/// `theory` must be a live handle; `node`, `path` valid NUL-terminated
/// strings; `out` a valid pointer. The caller frees the string with
/// [`tlx_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tlx_theory_query(
    theory: *const TlxTheory,
    node: *const c_char,
    path: *const c_char,
    max_depth: usize,
    out: *mut *mut c_char,
) -> TlxStatus {
    let theory = match theory_ref(theory) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let node = match read_str(node, "node name") {
        Ok(s) => s,
        Err(status) => return status,
    };
    let path = match read_str(path, "path") {
        Ok(s) => s,
        Err(status) => return status,
    };
    let node = match NodeName::new(node) {
        Ok(n) => n,
        Err(e) => return invalid(&e.to_string()),
    };
    let path = match parse_atom_path(path) {
        Ok(p) => p,
        Err(e) => return parse_status(&e),
    };
    match engine::query(theory, &node, &path, &config(max_depth)) {
        Ok(atoms) => out_string(out, format_atom_seq(&atoms)),
        Err(e) => engine_status(&e),
    }
}

/// Reconstruct an entry's elementary tree and write its bracketed form.
///
/// `rule` may be null or one of `dative`, `passive`, `sai`, `whq`; `alt`
/// may be null or an alternation name (mutually exclusive with `rule`).
/// `sets` may be null or an array of `sets_len` strings of the form
/// `"<path>=atom"`, applied as an overlay before reconstruction.
///
/// # Safety
/// `theory` must be a live handle; `entry` a valid NUL-terminated string;
/// `rule`/`alt` null or valid strings; `sets` null or a valid array of
/// `sets_len` valid strings; `out` a valid pointer. The caller frees the
/// result with [`tlx_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tlx_theory_tree(
    theory: *const TlxTheory,
    entry: *const c_char,
    rule: *const c_char,
    alt: *const c_char,
    sets: *const *const c_char,
    sets_len: usize,
    max_depth: usize,
    out: *mut *mut c_char,
) -> TlxStatus {
    let theory = match theory_ref(theory) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let entry = match read_str(entry, "entry name") {
        Ok(s) => s,
        Err(status) => return status,
    };
    let entry = match NodeName::new(entry) {
        Ok(n) => n,
        Err(e) => return invalid(&e.to_string()),
    };

    let rule = if rule.is_null() {
        None
    } else {
        let text = match read_str(rule, "rule") {
            Ok(s) => s,
            Err(status) => return status,
        };
        match LexicalRule::from_str(text) {
            Ok(r) => Some(r),
            Err(_) => return invalid(&format!("unknown rule `{text}`")),
        }
    };

    let alt = if alt.is_null() {
        None
    } else {
        let text = match read_str(alt, "alternation name") {
            Ok(s) => s,
            Err(status) => return status,
        };
        match Atom::new(text) {
            Ok(a) => Some(a),
            Err(e) => return invalid(&e.to_string()),
        }
    };
    if rule.is_some() && alt.is_some() {
        return invalid("rule and alt are mutually exclusive");
    }

    let mut assignments: Vec<(AtomPath, Vec<Atom>)> = Vec::new();
    if sets_len > 0 {
        if sets.is_null() {
            return invalid("sets is null but sets_len is nonzero");
        }
        for i in 0..sets_len {
            let raw = match read_str(*sets.add(i), "set entry") {
                Ok(s) => s,
                Err(status) => return status,
            };
            let Some((path, value)) = raw.split_once('=') else {
                return invalid(&format!("set entry `{raw}` is missing `=`"));
            };
            let path = match parse_atom_path(path.trim()) {
                Ok(p) => p,
                Err(e) => return parse_status(&e),
            };
            let atom = match Atom::new(value.trim()) {
                Ok(a) => a,
                Err(e) => return invalid(&e.to_string()),
            };
            assignments.push((path, vec![atom]));
        }
    }

    match tree::derive_tree(
        theory,
        &entry,
        rule,
        alt.as_ref(),
        &assignments,
        &config(max_depth),
    ) {
        Ok(t) => out_string(out, tree::render_bracketed(&t)),
        Err(e) => tree_status(&e),
    }
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library that has not been
/// freed already.
#[no_mangle]
pub unsafe extern "C" fn tlx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Description of the last error on this thread; the empty string after a
/// successful call. Valid until the next fallible call on this thread.
#[no_mangle]
pub extern "C" fn tlx_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}
