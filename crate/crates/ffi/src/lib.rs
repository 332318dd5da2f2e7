//! C interface to the `nemoea` library.
//!
//! Every fallible function returns a [`NemoeaStatus`]; on failure a message
//! is available from [`nemoea_last_error`] on the same thread. Handles are
//! opaque and must be released with their `_free` function. Output pointers
//! are written only on success.

use nemoea::algorithms::{run, AlgorithmConfig, AlgorithmKind, RunOutcome};
use nemoea::indicators::hypervolume_2d;
use nemoea::operators::threshold_mutation_rate;
use nemoea::pareto::BitString;
use nemoea::problems::{instance_load, KnapsackInstance, NkInstance, Problem, ProblemInstance};
use nemoea::stats::wilcoxon_rank_sum;
use nemoea::{Error, RandomSource};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NemoeaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    Parse = 4,
    BufferTooSmall = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NemoeaAlgorithm {
    NeMoea = 0,
    Nsga2 = 1,
    SmsEmoa = 2,
    Nsga3 = 3,
}

impl From<NemoeaAlgorithm> for AlgorithmKind {
    fn from(a: NemoeaAlgorithm) -> Self {
        match a {
            NemoeaAlgorithm::NeMoea => AlgorithmKind::NeMoea,
            NemoeaAlgorithm::Nsga2 => AlgorithmKind::Nsga2,
            NemoeaAlgorithm::SmsEmoa => AlgorithmKind::SmsEmoa,
            NemoeaAlgorithm::Nsga3 => AlgorithmKind::Nsga3,
        }
    }
}

/// Opaque problem instance.
pub struct NemoeaProblem {
    inner: ProblemInstance,
}

/// Opaque result of one optimization run.
pub struct NemoeaRun {
    inner: RunOutcome,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(NemoeaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::DimensionMismatch { .. } | Error::LengthMismatch { .. } | Error::UnsupportedDimension(_) => {
                NemoeaStatus::DimensionMismatch
            }
            Error::Parse { .. } => NemoeaStatus::Parse,
            Error::InvalidParameter(_) | Error::Config(_) => NemoeaStatus::InvalidArgument,
            _ => NemoeaStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(NemoeaStatus::NullPointer, format!("{what} is null"))
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NemoeaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            NemoeaStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            NemoeaStatus::Internal
        }
    }
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Message of the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn nemoea_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Random knapsack instance with `n` items and `m` objectives and constraints.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn nemoea_problem_generate_kp(
    n: usize,
    m: usize,
    seed: u64,
    out: *mut *mut NemoeaProblem,
) -> NemoeaStatus {
    guard(|| {
        let inner = ProblemInstance::Knapsack(KnapsackInstance::generate(n, m, &mut RandomSource::new(seed))?);
        write_out(out, Box::into_raw(Box::new(NemoeaProblem { inner })))
    })
}

/// Random NK-landscape with `n` bits, epistasis `k` and `m` objectives.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn nemoea_problem_generate_nk(
    n: usize,
    k: usize,
    m: usize,
    seed: u64,
    out: *mut *mut NemoeaProblem,
) -> NemoeaStatus {
    guard(|| {
        let inner = ProblemInstance::Nk(NkInstance::generate(n, k, m, &mut RandomSource::new(seed))?);
        write_out(out, Box::into_raw(Box::new(NemoeaProblem { inner })))
    })
}

/// Parses an instance file held in a NUL-terminated string.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn nemoea_problem_load(text: *const c_char, out: *mut *mut NemoeaProblem) -> NemoeaStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Failure(NemoeaStatus::Parse, "instance text is not UTF-8".into()))?;
        let inner = instance_load(text)?;
        write_out(out, Box::into_raw(Box::new(NemoeaProblem { inner })))
    })
}

/// # Safety
/// `problem` must be null or a handle from this library that was not freed.
#[no_mangle]
pub unsafe extern "C" fn nemoea_problem_free(problem: *mut NemoeaProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Number of decision bits; 0 for a null handle.
///
/// # Safety
/// `problem` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nemoea_problem_num_bits(problem: *const NemoeaProblem) -> usize {
    problem.as_ref().map_or(0, |p| p.inner.num_bits())
}

/// Number of objectives; 0 for a null handle.
///
/// # Safety
/// `problem` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nemoea_problem_num_objectives(problem: *const NemoeaProblem) -> usize {
    problem.as_ref().map_or(0, |p| p.inner.num_objectives())
}

/// Evaluates a genome given as `n` bytes (non-zero means set). Writes `m`
/// objective values of the repaired genome and, if `repaired` is non-null,
/// whether constraint repair changed the input.
///
/// # Safety
/// `bits` must point to `n` bytes and `objectives` to `m` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn nemoea_problem_evaluate(
    problem: *const NemoeaProblem,
    bits: *const u8,
    n: usize,
    objectives: *mut f64,
    m: usize,
    repaired: *mut bool,
) -> NemoeaStatus {
    guard(|| {
        let problem = problem.as_ref().ok_or_else(|| null("problem"))?;
        let bits = slice(bits, n, "bits")?;
        if n != problem.inner.num_bits() {
            return Err(Error::DimensionMismatch { expected: problem.inner.num_bits(), found: n }.into());
        }
        if m != problem.inner.num_objectives() {
            return Err(Error::DimensionMismatch { expected: problem.inner.num_objectives(), found: m }.into());
        }
        if objectives.is_null() {
            return Err(null("objectives"));
        }
        let genome = BitString::from_bits(bits.iter().map(|&b| b != 0).collect());
        let eval = problem.inner.evaluate(&genome);
        std::slice::from_raw_parts_mut(objectives, m).copy_from_slice(eval.objectives.as_slice());
        if !repaired.is_null() {
            repaired.write(eval.repaired_genome.is_some());
        }
        Ok(())
    })
}

/// Runs one algorithm with its default settings for `population_size`
/// individuals and `generations` generations.
///
/// # Safety
/// `problem` must be a live handle and `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn nemoea_run(
    problem: *const NemoeaProblem,
    algorithm: NemoeaAlgorithm,
    population_size: usize,
    generations: usize,
    seed: u64,
    out: *mut *mut NemoeaRun,
) -> NemoeaStatus {
    guard(|| {
        let problem = problem.as_ref().ok_or_else(|| null("problem"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let config = AlgorithmConfig::preset(algorithm.into(), population_size, generations);
        let inner = run(&problem.inner, &config, &mut RandomSource::new(seed))?;
        write_out(out, Box::into_raw(Box::new(NemoeaRun { inner })))
    })
}

/// # Safety
/// `run` must be null or a handle from this library that was not freed.
#[no_mangle]
pub unsafe extern "C" fn nemoea_run_free(run: *mut NemoeaRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

/// Number of archived non-dominated solutions; 0 for a null handle.
///
/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nemoea_run_archive_len(run: *const NemoeaRun) -> usize {
    run.as_ref().map_or(0, |r| r.inner.archive.len())
}

/// Total objective evaluations of the run; 0 for a null handle.
///
/// # Safety
/// `run` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nemoea_run_evaluations(run: *const NemoeaRun) -> u64 {
    run.as_ref().map_or(0, |r| r.inner.evaluations)
}

/// Copies archive objective vectors row-major into `buffer`, which holds
/// `capacity` doubles. `written` receives the number of doubles required.
///
/// # Safety
/// `buffer` must point to `capacity` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn nemoea_run_archive_points(
    run: *const NemoeaRun,
    buffer: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> NemoeaStatus {
    guard(|| {
        let run = run.as_ref().ok_or_else(|| null("run"))?;
        let flat: Vec<f64> = run.inner.archive.objective_vectors().into_iter().flatten().collect();
        write_out(written, flat.len())?;
        if flat.len() > capacity {
            return Err(Failure(
                NemoeaStatus::BufferTooSmall,
                format!("need {} values, buffer holds {capacity}", flat.len()),
            ));
        }
        if !flat.is_empty() {
            if buffer.is_null() {
                return Err(null("buffer"));
            }
            std::slice::from_raw_parts_mut(buffer, flat.len()).copy_from_slice(&flat);
        }
        Ok(())
    })
}

/// Hypervolume of the archive of a bi-objective run with respect to
/// `(ref_x, ref_y)`.
///
/// # Safety
/// `run` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nemoea_run_hypervolume(
    run: *const NemoeaRun,
    ref_x: f64,
    ref_y: f64,
    out: *mut f64,
) -> NemoeaStatus {
    guard(|| {
        let run = run.as_ref().ok_or_else(|| null("run"))?;
        let hv = hypervolume_2d(&run.inner.archive.objective_vectors(), [ref_x, ref_y])?;
        write_out(out, hv)
    })
}

/// Hypervolume of `count` points stored row-major as `(x, y)` pairs.
///
/// # Safety
/// `points` must point to `2 * count` doubles.
#[no_mangle]
pub unsafe extern "C" fn nemoea_hypervolume_2d(
    points: *const f64,
    count: usize,
    ref_x: f64,
    ref_y: f64,
    out: *mut f64,
) -> NemoeaStatus {
    guard(|| {
        let flat = slice(
            points,
            count.checked_mul(2).ok_or_else(|| Failure(NemoeaStatus::InvalidArgument, "count overflows".into()))?,
            "points",
        )?;
        let pts: Vec<&[f64]> = flat.chunks_exact(2).collect();
        write_out(out, hypervolume_2d(&pts, [ref_x, ref_y])?)
    })
}

/// Two-sided Wilcoxon rank-sum p-value of samples `a` and `b`.
///
/// # Safety
/// `a` and `b` must point to `na` and `nb` doubles.
#[no_mangle]
pub unsafe extern "C" fn nemoea_wilcoxon(
    a: *const f64,
    na: usize,
    b: *const f64,
    nb: usize,
    p_value: *mut f64,
) -> NemoeaStatus {
    guard(|| {
        let t = wilcoxon_rank_sum(slice(a, na, "a")?, slice(b, nb, "b")?)?;
        write_out(p_value, t.p_value)
    })
}

/// Threshold mutation rate `(1 - delta) ln(k) / n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nemoea_threshold_mutation_rate(k: usize, n: usize, delta: f64, out: *mut f64) -> NemoeaStatus {
    guard(|| write_out(out, threshold_mutation_rate(k, n, delta)?))
}
