//! C ABI over `derangement-core`.
//!
//! Every function returns a [`DgStatus`]. Results are written through out
//! pointers. On failure, [`dg_last_error`] returns a message for the calling
//! thread. Groups are opaque handles released with [`dg_group_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use derangement_core::blocks::{is_quasiprimitive, max_normal_series};
use derangement_core::dgraph::{build_graph, derangement_set};
use derangement_core::group::DEFAULT_MAX_ORDER;
use derangement_core::kronecker::kronecker_equivalent;
use derangement_core::{catalog, Error, PermGroup, Permutation};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    CapExceeded = 5,
    NotFound = 6,
    NotASubgroup = 7,
    Io = 8,
    Panic = 9,
    Other = 10,
}

/// Opaque handle to an enumerated permutation group.
pub struct DgGroup {
    group: PermGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DgStatus {
    match e {
        Error::DegreeMismatch { .. } | Error::InvalidArgument(_) | Error::NotTransitive => DgStatus::InvalidArgument,
        Error::PointOutOfRange { .. }
        | Error::MalformedCycles(_)
        | Error::NotAPermutation(_)
        | Error::MalformedGroupFile { .. } => DgStatus::Parse,
        Error::OrderCapExceeded { .. } | Error::GraphTooLarge { .. } => DgStatus::CapExceeded,
        Error::UnknownGroup(_) => DgStatus::NotFound,
        Error::NotASubgroup | Error::NotAnElement => DgStatus::NotASubgroup,
        Error::Io { .. } => DgStatus::Io,
        _ => DgStatus::Other,
    }
}

fn guard(f: impl FnOnce() -> Result<(), DgStatus>) -> DgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DgStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            DgStatus::Panic
        }
    }
}

fn check<T>(r: Result<T, Error>) -> Result<T, DgStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, DgStatus> {
    if p.is_null() {
        set_error("null string argument".into());
        return Err(DgStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8".into());
        DgStatus::InvalidUtf8
    })
}

unsafe fn group_ref<'a>(g: *const DgGroup) -> Result<&'a PermGroup, DgStatus> {
    if g.is_null() {
        set_error("null group handle".into());
        return Err(DgStatus::NullPointer);
    }
    Ok(&(*g).group)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), DgStatus> {
    if out.is_null() {
        set_error("null output pointer".into());
        return Err(DgStatus::NullPointer);
    }
    *out = v;
    Ok(())
}

fn effective_cap(max_order: usize) -> usize {
    if max_order == 0 {
        DEFAULT_MAX_ORDER
    } else {
        max_order
    }
}

fn parse_gens(list: &str, degree: usize) -> Result<Vec<Permutation>, Error> {
    list.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Permutation::parse_cycles(s, degree))
        .collect()
}

unsafe fn emit_group(out: *mut *mut DgGroup, group: PermGroup) -> Result<(), DgStatus> {
    write(out, Box::into_raw(Box::new(DgGroup { group })))
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Enumerates a built-in catalog group. `max_order` of 0 selects the default cap.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_group_builtin(name: *const c_char, max_order: usize, out: *mut *mut DgGroup) -> DgStatus {
    guard(|| {
        let name = text(name)?;
        let entry = check(catalog::builtin(name))?;
        let group = check(entry.load(effective_cap(max_order)))?;
        emit_group(out, group)
    })
}

/// Enumerates the group generated by `generators`, a `;`-separated list of
/// 1-based cycle strings such as `"(1 2 3 4);(1 2)"`.
///
/// # Safety
/// `generators` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_group_from_generators(
    degree: usize,
    generators: *const c_char,
    max_order: usize,
    out: *mut *mut DgGroup,
) -> DgStatus {
    guard(|| {
        let list = text(generators)?;
        let gens = check(parse_gens(list, degree))?;
        let group = check(PermGroup::enumerate(gens, degree, effective_cap(max_order)))?;
        emit_group(out, group)
    })
}

/// Loads a `.grp` file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_group_from_file(path: *const c_char, max_order: usize, out: *mut *mut DgGroup) -> DgStatus {
    guard(|| {
        let path = text(path)?;
        let entry = check(catalog::load_group_file(Path::new(path)))?;
        let group = check(entry.load(effective_cap(max_order)))?;
        emit_group(out, group)
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `group` must come from one of the constructors and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dg_group_free(group: *mut DgGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_group_order(group: *const DgGroup, out: *mut usize) -> DgStatus {
    guard(|| write(out, group_ref(group)?.order()))
}

/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_group_degree(group: *const DgGroup, out: *mut usize) -> DgStatus {
    guard(|| write(out, group_ref(group)?.degree()))
}

/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_is_transitive(group: *const DgGroup, out: *mut bool) -> DgStatus {
    guard(|| write(out, group_ref(group)?.is_transitive()))
}

/// Number of fixed-point-free elements.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_derangement_count(group: *const DgGroup, out: *mut usize) -> DgStatus {
    guard(|| write(out, derangement_set(group_ref(group)?).count()))
}

unsafe fn clique_like(
    group: *const DgGroup,
    max_vertices: usize,
    node_budget: u64,
    coclique: bool,
    size: *mut usize,
    exact: *mut bool,
) -> Result<(), DgStatus> {
    let g = group_ref(group)?;
    if size.is_null() || exact.is_null() {
        set_error("null output pointer".into());
        return Err(DgStatus::NullPointer);
    }
    let graph = check(build_graph(g, max_vertices))?;
    let r = if coclique {
        graph.coclique_number(node_budget)
    } else {
        graph.clique_number(node_budget)
    };
    *size = r.size;
    *exact = r.exact;
    Ok(())
}

/// Clique number of the derangement graph. `exact` is false when the
/// search stopped at `node_budget` and `size` is only a lower bound.
///
/// # Safety
/// `group` must be a live handle; `size` and `exact` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dg_clique_number(
    group: *const DgGroup,
    max_vertices: usize,
    node_budget: u64,
    size: *mut usize,
    exact: *mut bool,
) -> DgStatus {
    guard(|| clique_like(group, max_vertices, node_budget, false, size, exact))
}

/// Independence number of the derangement graph.
///
/// # Safety
/// `group` must be a live handle; `size` and `exact` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dg_coclique_number(
    group: *const DgGroup,
    max_vertices: usize,
    node_budget: u64,
    size: *mut usize,
    exact: *mut bool,
) -> DgStatus {
    guard(|| clique_like(group, max_vertices, node_budget, true, size, exact))
}

/// Length of a longest normal imprimitivity series of a transitive group.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_series_length(group: *const DgGroup, out: *mut usize) -> DgStatus {
    guard(|| {
        let s = check(max_normal_series(group_ref(group)?))?;
        write(out, s.length())
    })
}

/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_is_quasiprimitive(group: *const DgGroup, out: *mut bool) -> DgStatus {
    guard(|| write(out, is_quasiprimitive(group_ref(group)?)))
}

/// Compares the subgroups generated by `u` and `u_prime` (same format as
/// [`dg_group_from_generators`]; an empty string means the trivial subgroup).
///
/// # Safety
/// `group` must be a live handle; strings NUL-terminated; out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn dg_kronecker_equivalent(
    group: *const DgGroup,
    u: *const c_char,
    u_prime: *const c_char,
    equivalent: *mut bool,
    conjugate: *mut bool,
) -> DgStatus {
    guard(|| {
        let g = group_ref(group)?;
        let a = check(parse_gens(text(u)?, g.degree()).and_then(|p| g.subgroup_from_perms(&p)))?;
        let b = check(parse_gens(text(u_prime)?, g.degree()).and_then(|p| g.subgroup_from_perms(&p)))?;
        if equivalent.is_null() || conjugate.is_null() {
            set_error("null output pointer".into());
            return Err(DgStatus::NullPointer);
        }
        let rep = check(kronecker_equivalent(g, &a, &b))?;
        *equivalent = rep.equivalent;
        *conjugate = rep.conjugate;
        Ok(())
    })
}
