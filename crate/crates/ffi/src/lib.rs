//! C ABI over the moolab library.
//!
//! Handles are opaque pointers created by `moolab_*_new` style functions and released with
//! the matching `*_free`. Every function returns a [`MoolabStatus`]; on failure a message is
//! available from [`moolab_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;
use std::sync::Arc;

use moolab::algorithms::{execute, AlgorithmKind, AlgorithmSpec, RunSettings};
use moolab::core::{evaluated, FloatSolution, Problem};
use moolab::indicators::{additive_epsilon, hypervolume, igd, Front, Indicator};
use moolab::problems::{default_reference_front, problem_by_name};
use moolab::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoolabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownName = 3,
    DimensionMismatch = 4,
    BufferTooSmall = 5,
    RuntimeError = 6,
    Panic = 7,
}

/// A benchmark problem.
pub struct MoolabProblem {
    inner: Arc<dyn Problem>,
}

/// A set of objective vectors.
pub struct MoolabFront {
    inner: Front,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(error: &Error) -> MoolabStatus {
    match error {
        Error::Lookup { .. } => MoolabStatus::UnknownName,
        Error::Dimension { .. } | Error::UnsupportedDimension(_) => MoolabStatus::DimensionMismatch,
        Error::Argument(_) | Error::Config(_) => MoolabStatus::InvalidArgument,
        _ => MoolabStatus::RuntimeError,
    }
}

struct Failure(MoolabStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(MoolabStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording errors and converting panics into `MoolabStatus::Panic`.
fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> MoolabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MoolabStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            MoolabStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(MoolabStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice_arg<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

/// Message of the last failed call on this thread, or null. The pointer stays valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn moolab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn moolab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a problem by name (`"ZDT1"`, `"DTLZ2:5"`, ...).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn moolab_problem_new(name: *const c_char, out: *mut *mut MoolabProblem) -> MoolabStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let name = str_arg(name, "name")?;
        let inner = problem_by_name(name)?;
        *out = Box::into_raw(Box::new(MoolabProblem { inner }));
        Ok(())
    })
}

/// # Safety
/// `problem` must come from `moolab_problem_new` and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn moolab_problem_free(problem: *mut MoolabProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// # Safety
/// `problem` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn moolab_problem_dimensions(
    problem: *const MoolabProblem,
    n_vars: *mut usize,
    n_objectives: *mut usize,
) -> MoolabStatus {
    guard(|| {
        let p = ref_arg(problem, "problem")?;
        *out_arg(n_vars, "n_vars")? = p.inner.n_vars();
        *out_arg(n_objectives, "n_objectives")? = p.inner.n_objectives();
        Ok(())
    })
}

/// Evaluates one decision vector into `objectives`.
///
/// # Safety
/// `variables` must hold `n_vars` doubles and `objectives` room for `n_objectives`.
#[no_mangle]
pub unsafe extern "C" fn moolab_problem_evaluate(
    problem: *const MoolabProblem,
    variables: *const f64,
    n_vars: usize,
    objectives: *mut f64,
    n_objectives: usize,
) -> MoolabStatus {
    guard(|| {
        let p = ref_arg(problem, "problem")?;
        let x = slice_arg(variables, n_vars, "variables")?;
        if objectives.is_null() {
            return Err(null("objectives"));
        }
        let m = p.inner.n_objectives();
        if n_objectives < m {
            return Err(Failure(
                MoolabStatus::BufferTooSmall,
                format!("objective buffer holds {n_objectives}, need {m}"),
            ));
        }
        let solution = evaluated(p.inner.as_ref(), FloatSolution::new(x.to_vec()))?;
        slice::from_raw_parts_mut(objectives, m).copy_from_slice(&solution.objectives);
        Ok(())
    })
}

/// Runs `algorithm` (NSGAII, SMPSO, GDE3, MOEAD) with default parameters and returns the
/// final front.
///
/// # Safety
/// Pointers must be valid; `out` receives a handle to free with `moolab_front_free`.
#[no_mangle]
pub unsafe extern "C" fn moolab_run(
    algorithm: *const c_char,
    problem: *const MoolabProblem,
    max_evaluations: u64,
    seed: u64,
    out: *mut *mut MoolabFront,
) -> MoolabStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let kind: AlgorithmKind = str_arg(algorithm, "algorithm")?.parse()?;
        let p = ref_arg(problem, "problem")?;
        let settings = RunSettings {
            max_evaluations,
            seed,
            ..RunSettings::default()
        };
        let outcome = execute(&AlgorithmSpec::new(kind), Arc::clone(&p.inner), &settings)?;
        let inner = Front::from_solutions(&outcome.front)?;
        *out = Box::into_raw(Box::new(MoolabFront { inner }));
        Ok(())
    })
}

/// Builds a front from `rows * cols` row-major doubles.
///
/// # Safety
/// `data` must hold `rows * cols` doubles.
#[no_mangle]
pub unsafe extern "C" fn moolab_front_new(
    data: *const f64,
    rows: usize,
    cols: usize,
    out: *mut *mut MoolabFront,
) -> MoolabStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let len = rows
            .checked_mul(cols)
            .ok_or_else(|| Failure(MoolabStatus::InvalidArgument, "rows * cols overflows".into()))?;
        let values = slice_arg(data, len, "data")?;
        let points = if cols == 0 { Vec::new() } else { values.chunks(cols).map(<[f64]>::to_vec).collect() };
        let inner = Front::new(points)?;
        *out = Box::into_raw(Box::new(MoolabFront { inner }));
        Ok(())
    })
}

/// Sampled reference front of a named problem.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn moolab_reference_front(name: *const c_char, out: *mut *mut MoolabFront) -> MoolabStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let inner = default_reference_front(str_arg(name, "name")?)?;
        *out = Box::into_raw(Box::new(MoolabFront { inner }));
        Ok(())
    })
}

/// # Safety
/// `front` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn moolab_front_free(front: *mut MoolabFront) {
    if !front.is_null() {
        drop(Box::from_raw(front));
    }
}

/// Number of points and objectives.
///
/// # Safety
/// `front` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn moolab_front_shape(
    front: *const MoolabFront,
    rows: *mut usize,
    cols: *mut usize,
) -> MoolabStatus {
    guard(|| {
        let f = ref_arg(front, "front")?;
        *out_arg(rows, "rows")? = f.inner.len();
        *out_arg(cols, "cols")? = f.inner.dim();
        Ok(())
    })
}

/// Copies the points row-major into `buffer`, which must hold `rows * cols` doubles.
///
/// # Safety
/// `buffer` must have room for `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn moolab_front_copy(
    front: *const MoolabFront,
    buffer: *mut f64,
    capacity: usize,
) -> MoolabStatus {
    guard(|| {
        let f = ref_arg(front, "front")?;
        let need = f.inner.len() * f.inner.dim();
        if capacity < need {
            return Err(Failure(
                MoolabStatus::BufferTooSmall,
                format!("buffer holds {capacity} values, need {need}"),
            ));
        }
        if buffer.is_null() {
            return Err(null("buffer"));
        }
        let dst = slice::from_raw_parts_mut(buffer, need);
        for (chunk, p) in dst.chunks_mut(f.inner.dim()).zip(f.inner.points()) {
            chunk.copy_from_slice(p);
        }
        Ok(())
    })
}

/// Exact hypervolume of `front` against `reference_point` (no normalization).
///
/// # Safety
/// `reference_point` must hold `len` doubles and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn moolab_hypervolume(
    front: *const MoolabFront,
    reference_point: *const f64,
    len: usize,
    out: *mut f64,
) -> MoolabStatus {
    guard(|| {
        let f = ref_arg(front, "front")?;
        let r = slice_arg(reference_point, len, "reference_point")?;
        *out_arg(out, "out")? = hypervolume(&f.inner, r)?;
        Ok(())
    })
}

/// Additive epsilon of `front` relative to `reference` (no normalization).
///
/// # Safety
/// Handles must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn moolab_epsilon(
    front: *const MoolabFront,
    reference: *const MoolabFront,
    out: *mut f64,
) -> MoolabStatus {
    guard(|| {
        let (f, r) = (ref_arg(front, "front")?, ref_arg(reference, "reference")?);
        *out_arg(out, "out")? = additive_epsilon(&f.inner, &r.inner)?;
        Ok(())
    })
}

/// Inverted generational distance of `front` relative to `reference` (no normalization).
///
/// # Safety
/// Handles must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn moolab_igd(
    front: *const MoolabFront,
    reference: *const MoolabFront,
    out: *mut f64,
) -> MoolabStatus {
    guard(|| {
        let (f, r) = (ref_arg(front, "front")?, ref_arg(reference, "reference")?);
        *out_arg(out, "out")? = igd(&f.inner, &r.inner)?;
        Ok(())
    })
}

/// Named indicator (EP, SPREAD, HV, IGD, IGD+) on fronts normalized by the reference front.
///
/// # Safety
/// `name` must be a NUL-terminated string, handles live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn moolab_indicator(
    name: *const c_char,
    front: *const MoolabFront,
    reference: *const MoolabFront,
    out: *mut f64,
) -> MoolabStatus {
    guard(|| {
        let indicator: Indicator = str_arg(name, "name")?.parse()?;
        let (f, r) = (ref_arg(front, "front")?, ref_arg(reference, "reference")?);
        *out_arg(out, "out")? = indicator.compute(&f.inner, &r.inner)?;
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last_error() -> String {
        unsafe { CStr::from_ptr(moolab_last_error()).to_string_lossy().into_owned() }
    }

    fn front(points: &[[f64; 2]]) -> *mut MoolabFront {
        let flat: Vec<f64> = points.iter().flatten().copied().collect();
        let mut f = ptr::null_mut();
        assert_eq!(unsafe { moolab_front_new(flat.as_ptr(), points.len(), 2, &mut f) }, MoolabStatus::Ok);
        f
    }

    #[test]
    fn hypervolume_example() {
        let f = front(&[[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]]);
        let mut hv = 0.0;
        let status = unsafe { moolab_hypervolume(f, [2.0, 2.0].as_ptr(), 2, &mut hv) };
        assert_eq!(status, MoolabStatus::Ok);
        assert_eq!(hv, 3.25);
        let mut eps = 1.0;
        assert_eq!(unsafe { moolab_epsilon(f, f, &mut eps) }, MoolabStatus::Ok);
        assert_eq!(eps, 0.0);
        unsafe { moolab_front_free(f) };
    }

    #[test]
    fn problem_round_trip() {
        let mut p = ptr::null_mut();
        let name = CString::new("ZDT1").unwrap();
        assert_eq!(unsafe { moolab_problem_new(name.as_ptr(), &mut p) }, MoolabStatus::Ok);
        let (mut n, mut m) = (0usize, 0usize);
        assert_eq!(unsafe { moolab_problem_dimensions(p, &mut n, &mut m) }, MoolabStatus::Ok);
        assert_eq!((n, m), (30, 2));
        let x = vec![0.0; 30];
        let mut f = [0.0; 2];
        assert_eq!(unsafe { moolab_problem_evaluate(p, x.as_ptr(), 30, f.as_mut_ptr(), 2) }, MoolabStatus::Ok);
        assert_eq!(f, [0.0, 1.0]);
        assert_eq!(
            unsafe { moolab_problem_evaluate(p, x.as_ptr(), 29, f.as_mut_ptr(), 2) },
            MoolabStatus::InvalidArgument
        );
        assert_eq!(
            unsafe { moolab_problem_evaluate(p, x.as_ptr(), 30, f.as_mut_ptr(), 1) },
            MoolabStatus::BufferTooSmall
        );

        let alg = CString::new("NSGAII").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { moolab_run(alg.as_ptr(), p, 10_000, 1, &mut out) }, MoolabStatus::Ok);
        let (mut rows, mut cols) = (0usize, 0usize);
        unsafe { moolab_front_shape(out, &mut rows, &mut cols) };
        assert!(rows > 0 && cols == 2);
        let mut buf = vec![0.0; rows * cols];
        assert_eq!(unsafe { moolab_front_copy(out, buf.as_mut_ptr(), buf.len()) }, MoolabStatus::Ok);
        assert_eq!(
            unsafe { moolab_front_copy(out, buf.as_mut_ptr(), buf.len() - 1) },
            MoolabStatus::BufferTooSmall
        );
        let mut reference = ptr::null_mut();
        assert_eq!(unsafe { moolab_reference_front(name.as_ptr(), &mut reference) }, MoolabStatus::Ok);
        let hv_name = CString::new("HV").unwrap();
        let mut hv = 0.0;
        assert_eq!(unsafe { moolab_indicator(hv_name.as_ptr(), out, reference, &mut hv) }, MoolabStatus::Ok);
        assert!(hv > 0.0 && hv < 1.0, "{hv}");
        unsafe {
            moolab_front_free(out);
            moolab_front_free(reference);
            moolab_problem_free(p);
        }
    }

    #[test]
    fn errors_set_last_error() {
        let mut p = ptr::null_mut();
        let name = CString::new("NOPE").unwrap();
        assert_eq!(unsafe { moolab_problem_new(name.as_ptr(), &mut p) }, MoolabStatus::UnknownName);
        assert!(last_error().contains("NOPE"));
        assert!(p.is_null());
        assert_eq!(unsafe { moolab_problem_new(ptr::null(), &mut p) }, MoolabStatus::NullPointer);
        assert_eq!(
            unsafe { moolab_front_new(ptr::null(), 0, 2, &mut ptr::null_mut()) },
            MoolabStatus::InvalidArgument
        );
        let mut v = 0.0;
        assert_eq!(unsafe { moolab_igd(ptr::null(), ptr::null(), &mut v) }, MoolabStatus::NullPointer);
        unsafe {
            moolab_front_free(ptr::null_mut());
            moolab_problem_free(ptr::null_mut());
        }
    }

    #[test]
    fn panics_are_caught() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, MoolabStatus::Panic);
        assert!(last_error().contains("boom"));
    }
}
