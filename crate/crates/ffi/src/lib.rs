//! C ABI over `brauer-core`.
//!
//! Every function returns a [`BrauerStatus`]; on failure the message is
//! available from [`brauer_last_error`] on the same thread. Handles are
//! opaque and must be released with their `_free` function. Strings handed
//! out by the library are released with [`brauer_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use brauer_core::groups::{Group, GroupSpec, DEFAULT_GROUP_CAP};
use brauer_core::verify::{
    find_instance, run_instance, run_task, Task, TaskOptions, VerificationReport, VERSION,
};
use brauer_core::Error;

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrauerStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Bad group description, unknown task or instance, bad block index.
    InvalidInput = 3,
    /// The input is well formed but outside the supported hypotheses.
    Precondition = 4,
    /// A group or field exceeded its size cap.
    TooLarge = 5,
    /// An internal consistency check failed.
    Contract = 6,
    Io = 7,
    Panic = 8,
}

/// A finite group given by its textual description.
pub struct BrauerGroup {
    spec: GroupSpec,
    order: usize,
}

/// A finished verification report.
pub struct BrauerReport {
    report: VerificationReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BrauerStatus {
    match e {
        Error::NotPrime(_) | Error::MalformedSpec(_) | Error::Usage(_) | Error::Json(_) => {
            BrauerStatus::InvalidInput
        }
        Error::Precondition(_) | Error::NotCoprime { .. } | Error::SingularGenerator => {
            BrauerStatus::Precondition
        }
        Error::GroupTooLarge(_) | Error::FieldTooLarge(..) => BrauerStatus::TooLarge,
        Error::Io(_) => BrauerStatus::Io,
        _ => BrauerStatus::Contract,
    }
}

enum Failure {
    Status(BrauerStatus, String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

/// Runs `body`, recording any error or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> BrauerStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BrauerStatus::Ok,
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            BrauerStatus::Panic
        }
    }
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure::Status(
            BrauerStatus::NullArgument,
            format!("{name} is null"),
        ))
    } else {
        Ok(())
    }
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    non_null(p, name)?;
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Status(BrauerStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

fn parse_task(name: &str) -> Result<Task, Failure> {
    Ok(name.parse::<Task>()?)
}

fn to_c(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure::Status(BrauerStatus::Contract, "output contains a nul byte".into()))
}

/// The message of the last failed call on this thread, or null. Owned by
/// the library and valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn brauer_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version tag, a static string.
#[no_mangle]
pub extern "C" fn brauer_version() -> *const c_char {
    static V: &str = concat!("brauer-", env!("CARGO_PKG_VERSION"), "+r1\0");
    debug_assert_eq!(&V[..V.len() - 1], VERSION);
    V.as_ptr().cast()
}

/// Parses a group description such as `kind=symmetric,n=4` and builds the
/// group, refusing orders above `max_order` (0 selects the default cap).
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn brauer_group_new(
    spec: *const c_char,
    max_order: usize,
    out: *mut *mut BrauerGroup,
) -> BrauerStatus {
    guard(|| {
        non_null(out, "out")?;
        let spec = GroupSpec::parse(text(spec, "spec")?)?;
        let cap = if max_order == 0 {
            DEFAULT_GROUP_CAP
        } else {
            max_order
        };
        let order = Group::from_spec(&spec, cap)?.order();
        *out = Box::into_raw(Box::new(BrauerGroup { spec, order }));
        Ok(())
    })
}

/// # Safety
/// `group` must come from [`brauer_group_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn brauer_group_free(group: *mut BrauerGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn brauer_group_order(
    group: *const BrauerGroup,
    out: *mut usize,
) -> BrauerStatus {
    guard(|| {
        non_null(group, "group")?;
        non_null(out, "out")?;
        *out = (*group).order;
        Ok(())
    })
}

/// Canonical description of the group; free with [`brauer_string_free`].
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn brauer_group_describe(
    group: *const BrauerGroup,
    out: *mut *mut c_char,
) -> BrauerStatus {
    guard(|| {
        non_null(group, "group")?;
        non_null(out, "out")?;
        *out = to_c((*group).spec.to_string())?;
        Ok(())
    })
}

/// Runs a verification task (`axioms`, `lemma-ab`, `prop-ac`, `defining`,
/// `theorem-a`, `brown`) on all positive-defect blocks.
///
/// # Safety
/// `group` must be a live handle, `task` a nul-terminated string and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn brauer_verify(
    group: *const BrauerGroup,
    task: *const c_char,
    ell: u64,
    seed: u64,
    out: *mut *mut BrauerReport,
) -> BrauerStatus {
    guard(|| {
        non_null(group, "group")?;
        non_null(out, "out")?;
        let task = parse_task(text(task, "task")?)?;
        let opts = TaskOptions {
            seed,
            ..TaskOptions::default()
        };
        let report = run_task(task, &(*group).spec, ell, &opts)?;
        *out = Box::into_raw(Box::new(BrauerReport { report }));
        Ok(())
    })
}

/// Runs a task on a named registry instance, including its recorded
/// expectations.
///
/// # Safety
/// `instance` and `task` must be nul-terminated strings and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn brauer_verify_instance(
    instance: *const c_char,
    task: *const c_char,
    ell: u64,
    seed: u64,
    out: *mut *mut BrauerReport,
) -> BrauerStatus {
    guard(|| {
        non_null(out, "out")?;
        let name = text(instance, "instance")?;
        let inst = find_instance(name).ok_or_else(|| {
            Failure::Status(
                BrauerStatus::InvalidInput,
                format!("unknown instance {name}"),
            )
        })?;
        let report = run_instance(&inst, parse_task(text(task, "task")?)?, ell, seed)?;
        *out = Box::into_raw(Box::new(BrauerReport { report }));
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn brauer_report_passed(
    report: *const BrauerReport,
    out: *mut bool,
) -> BrauerStatus {
    guard(|| {
        non_null(report, "report")?;
        non_null(out, "out")?;
        *out = (*report).report.pass;
        Ok(())
    })
}

/// The report as pretty-printed JSON; free with [`brauer_string_free`].
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn brauer_report_json(
    report: *const BrauerReport,
    out: *mut *mut c_char,
) -> BrauerStatus {
    guard(|| {
        non_null(report, "report")?;
        non_null(out, "out")?;
        *out = to_c((*report).report.to_json()?)?;
        Ok(())
    })
}

/// # Safety
/// `report` must come from a verify call and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn brauer_report_free(report: *mut BrauerReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn brauer_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
