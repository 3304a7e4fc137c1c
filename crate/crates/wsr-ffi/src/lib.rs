//! C ABI for the wsr scoring library: opaque ensemble handles, status
//! codes, and one function per scoring rule. See `include/wsr.h` for the
//! generated header.

use std::ffi::c_char;

use wsr::{
    clogs_sample, crps_sample, es_sample, logs_sample, mmds_sample, owcrps_sample, owes_sample,
    owmmds_sample, owvs_sample, twcrps_sample, twes_sample, twmmds_sample, twvs_sample, vs_sample,
    BoundsSpec, Chain, EnsembleForecast, Error, MultiChain, MultiWeight, MultivariateEnsemble,
    ScoreStatus, VsParams, Weight,
};

/// Status code returned by every wsr FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WsrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    DimensionMismatch = 3,
    BadMemberWeights = 4,
    InvalidBounds = 5,
    NonPositiveScale = 6,
    DegenerateSample = 7,
    TooFewMembers = 8,
    BadVsParams = 9,
    NegativeWeight = 10,
    InternalError = 11,
}

fn status_for(err: &Error) -> WsrStatus {
    match err {
        Error::DimensionMismatch { .. } | Error::BadOutputShape { .. } => {
            WsrStatus::DimensionMismatch
        }
        Error::NonFiniteInput(_) | Error::EmptyEnsemble | Error::NonFiniteFunctionOutput { .. } => {
            WsrStatus::InvalidInput
        }
        Error::BadMemberWeights(_) => WsrStatus::BadMemberWeights,
        Error::InvalidBounds { .. } => WsrStatus::InvalidBounds,
        Error::NonPositiveScale(_) => WsrStatus::NonPositiveScale,
        Error::DegenerateSample => WsrStatus::DegenerateSample,
        Error::TooFewMembers(_) => WsrStatus::TooFewMembers,
        Error::BadVsWeights(_) | Error::BadOrder(_) => WsrStatus::BadVsParams,
        Error::NegativeWeight { .. } => WsrStatus::NegativeWeight,
        _ => WsrStatus::InternalError,
    }
}

/// Whether a computed score is defined; mirrors the library's score status.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WsrScoreStatus {
    Defined = 0,
    UndefinedWeightMass = 1,
    InvalidInput = 2,
}

/// One score for one forecast case. `value` is NaN unless `status` is
/// `Defined`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct WsrScore {
    pub value: f64,
    pub status: WsrScoreStatus,
    /// Nonzero when a custom chaining function decreased on the sample grid.
    pub decreasing_chain: i32,
}

impl From<wsr::ScoreValue> for WsrScore {
    fn from(score: wsr::ScoreValue) -> Self {
        WsrScore {
            value: score.value,
            status: match score.status {
                ScoreStatus::Defined => WsrScoreStatus::Defined,
                ScoreStatus::UndefinedWeightMass => WsrScoreStatus::UndefinedWeightMass,
                ScoreStatus::InvalidInput => WsrScoreStatus::InvalidInput,
            },
            decreasing_chain: score.decreasing_chain as i32,
        }
    }
}

/// Opaque handle to an m-member univariate ensemble forecast.
pub struct WsrEnsemble(EnsembleForecast);

/// Opaque handle to a d-by-m multivariate ensemble forecast.
pub struct WsrMultiEnsemble(MultivariateEnsemble);

unsafe fn slice_arg<'a>(ptr: *const f64, len: usize) -> Option<&'a [f64]> {
    if ptr.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(ptr, len))
    }
}

fn write_score(out: *mut WsrScore, result: wsr::Result<wsr::ScoreValue>) -> WsrStatus {
    if out.is_null() {
        return WsrStatus::NullPointer;
    }
    match result {
        Ok(score) => {
            unsafe { *out = score.into() };
            WsrStatus::Ok
        }
        Err(err) => status_for(&err),
    }
}

/// Creates an ensemble from `len` members. `weights` may be NULL for
/// uniform weights; otherwise it must hold `len` nonnegative values.
/// On success writes a handle to `out`; release it with
/// `wsr_ensemble_free`.
///
/// # Safety
/// `members` must point to `len` readable doubles, `weights` to `len`
/// readable doubles when non-NULL, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wsr_ensemble_new(
    members: *const f64,
    len: usize,
    weights: *const f64,
    out: *mut *mut WsrEnsemble,
) -> WsrStatus {
    if out.is_null() {
        return WsrStatus::NullPointer;
    }
    let Some(members) = slice_arg(members, len) else {
        return WsrStatus::NullPointer;
    };
    let built = match slice_arg(weights, len) {
        Some(w) => EnsembleForecast::with_weights(members.to_vec(), w.to_vec()),
        None => EnsembleForecast::new(members.to_vec()),
    };
    match built {
        Ok(fc) => {
            *out = Box::into_raw(Box::new(WsrEnsemble(fc)));
            WsrStatus::Ok
        }
        Err(err) => status_for(&err),
    }
}

/// Releases an ensemble handle. NULL is a no-op.
///
/// # Safety
/// `handle` must be NULL or a pointer returned by `wsr_ensemble_new` that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn wsr_ensemble_free(handle: *mut WsrEnsemble) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Creates a multivariate ensemble from a d-by-m matrix stored column-major
/// (member j occupies `data[j*dim .. (j+1)*dim]`). `weights` may be NULL.
///
/// # Safety
/// `data` must point to `dim * members` readable doubles, `weights` to
/// `members` readable doubles when non-NULL, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wsr_multi_ensemble_new(
    data: *const f64,
    dim: usize,
    members: usize,
    weights: *const f64,
    out: *mut *mut WsrMultiEnsemble,
) -> WsrStatus {
    if out.is_null() {
        return WsrStatus::NullPointer;
    }
    if dim == 0 || members == 0 {
        return WsrStatus::InvalidInput;
    }
    let Some(data) = slice_arg(data, dim * members) else {
        return WsrStatus::NullPointer;
    };
    let member_vecs: Vec<Vec<f64>> = data.chunks_exact(dim).map(|c| c.to_vec()).collect();
    let built = match slice_arg(weights, members) {
        Some(w) => MultivariateEnsemble::from_members_weighted(member_vecs, w.to_vec()),
        None => MultivariateEnsemble::from_members(member_vecs),
    };
    match built {
        Ok(fc) => {
            *out = Box::into_raw(Box::new(WsrMultiEnsemble(fc)));
            WsrStatus::Ok
        }
        Err(err) => status_for(&err),
    }
}

/// Releases a multivariate ensemble handle. NULL is a no-op.
///
/// # Safety
/// `handle` must be NULL or a pointer returned by `wsr_multi_ensemble_new`
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn wsr_multi_ensemble_free(handle: *mut WsrMultiEnsemble) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

macro_rules! deref_handle {
    ($handle:expr) => {
        match $handle.as_ref() {
            Some(h) => h,
            None => return WsrStatus::NullPointer,
        }
    };
}

/// CRPS of an ensemble forecast.
///
/// # Safety
/// `ens` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wsr_crps(
    ens: *const WsrEnsemble,
    obs: f64,
    out: *mut WsrScore,
) -> WsrStatus {
    let ens = deref_handle!(ens);
    write_score(out, crps_sample(obs, &ens.0))
}

/// LogS via Gaussian KDE; pass `bw <= 0` or NaN to use the default
/// bandwidth rule.
///
/// # Safety
/// `ens` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wsr_logs(
    ens: *const WsrEnsemble,
    obs: f64,
    bw: f64,
    out: *mut WsrScore,
) -> WsrStatus {
    let ens = deref_handle!(ens);
    let bandwidth = if bw.is_finite() && bw > 0.0 { Some(bw) } else { None };
    write_score(out, logs_sample(obs, &ens.0, bandwidth))
}

fn uni_chain(family: WsrWeightFamily, a: f64, b: f64) -> wsr::Result<Chain> {
    match family {
        WsrWeightFamily::Interval => Chain::interval(a, b),
        WsrWeightFamily::GaussCdf => Chain::gauss_cdf(a, b),
        WsrWeightFamily::GaussPdf => Chain::gauss_pdf(a, b),
    }
}

fn uni_weight(family: WsrWeightFamily, a: f64, b: f64) -> wsr::Result<Weight> {
    match family {
        WsrWeightFamily::Interval => Weight::interval(a, b),
        WsrWeightFamily::GaussCdf => Weight::gauss_cdf(a, b),
        WsrWeightFamily::GaussPdf => Weight::gauss_pdf(a, b),
    }
}

/// Built-in weight/chaining families. For `Interval` the two parameters
/// are the bounds (a, b); for the Gaussian families they are (mu, sigma).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WsrWeightFamily {
    Interval = 0,
    GaussCdf = 1,
    GaussPdf = 2,
}

/// Threshold-weighted CRPS with a built-in chaining family.
///
/// # Safety
/// `ens` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wsr_twcrps(
    ens: *const WsrEnsemble,
    obs: f64,
    family: WsrWeightFamily,
    param1: f64,
    param2: f64,
    out: *mut WsrScore,
) -> WsrStatus {
    let ens = deref_handle!(ens);
    let result = uni_chain(family, param1, param2)
        .and_then(|chain| twcrps_sample(obs, &ens.0, &chain));
    write_score(out, result)
}

/// Outcome-weighted CRPS with a built-in weight family.
///
/// # Safety
/// `ens` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wsr_owcrps(
    ens: *const WsrEnsemble,
    obs: f64,
    family: WsrWeightFamily,
    param1: f64,
    param2: f64,
    out: *mut WsrScore,
) -> WsrStatus {
    let ens = deref_handle!(ens);
    let result = uni_weight(family, param1, param2)
        .and_then(|weight| owcrps_sample(obs, &ens.0, &weight));
    write_score(out, result)
}

/// Conditional (censored = 0) or censored (censored != 0) likelihood score
/// for the interval weight 1{a < z < b}. Pass `bw <= 0` or NaN for the
/// default bandwidth.
///
/// # Safety
/// `ens` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wsr_clogs(
    ens: *const WsrEnsemble,
    obs: f64,
    a: f64,
    b: f64,
    bw: f64,
    censored: i32,
    out: *mut WsrScore,
) -> WsrStatus {
    let ens = deref_handle!(ens);
    let bandwidth = if bw.is_finite() && bw > 0.0 { Some(bw) } else { None };
    let result = BoundsSpec::univariate(a, b)
        .and_then(|bounds| clogs_sample(obs, &ens.0, &bounds, bandwidth, censored != 0));
    write_score(out, result)
}

/// Energy score. `obs` must hold `dim` values matching the ensemble.
///
/// # Safety
/// `ens` must be a live handle, `obs` must point to `dim` readable doubles,
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wsr_es(
    ens: *const WsrMultiEnsemble,
    obs: *const f64,
    dim: usize,
    out: *mut WsrScore,
) -> WsrStatus {
    let ens = deref_handle!(ens);
    let Some(obs) = slice_arg(obs, dim) else {
        return WsrStatus::NullPointer;
    };
    write_score(out, es_sample(obs, &ens.0))
}

fn vs_params(p: f64, scaling: Option<&[f64]>) -> wsr::Result<VsParams> {
    let params = VsParams::new(p)?;
    match scaling {
        Some(h) => params.with_scaling(h.to_vec()),
        None => Ok(params),
    }
}

/// Variogram score of order `p`. `scaling` may be NULL for all-ones, or a
/// row-major d-by-d matrix of nonnegative entries.
///
/// # Safety
/// `ens` must be a live handle, `obs` must point to `dim` readable doubles,
/// `scaling` to `dim * dim` readable doubles when non-NULL, and `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn wsr_vs(
    ens: *const WsrMultiEnsemble,
    obs: *const f64,
    dim: usize,
    p: f64,
    scaling: *const f64,
    out: *mut WsrScore,
) -> WsrStatus {
    let ens = deref_handle!(ens);
    let Some(obs) = slice_arg(obs, dim) else {
        return WsrStatus::NullPointer;
    };
    let scaling = slice_arg(scaling, dim * dim);
    let result = vs_params(p, scaling).and_then(|params| vs_sample(obs, &ens.0, &params));
    write_score(out, result)
}

/// Gaussian-kernel score (MMDS).
///
/// # Safety
/// `ens` must be a live handle, `obs` must point to `dim` readable doubles,
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wsr_mmds(
    ens: *const WsrMultiEnsemble,
    obs: *const f64,
    dim: usize,
    out: *mut WsrScore,
) -> WsrStatus {
    let ens = deref_handle!(ens);
    let Some(obs) = slice_arg(obs, dim) else {
        return WsrStatus::NullPointer;
    };
    write_score(out, mmds_sample(obs, &ens.0))
}

unsafe fn box_bounds(a: *const f64, b: *const f64, dim: usize) -> Option<wsr::Result<BoundsSpec>> {
    let a = slice_arg(a, dim)?;
    let b = slice_arg(b, dim)?;
    Some(BoundsSpec::per_dim(a.to_vec(), b.to_vec()))
}

/// Threshold-weighted energy score with the componentwise clamp chain onto
/// the box [a, b]; `a` and `b` each hold `dim` values.
///
/// # Safety
/// `ens` must be a live handle; `obs`, `a`, and `b` must each point to
/// `dim` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wsr_twes(
    ens: *const WsrMultiEnsemble,
    obs: *const f64,
    dim: usize,
    a: *const f64,
    b: *const f64,
    out: *mut WsrScore,
) -> WsrStatus {
    let ens = deref_handle!(ens);
    let Some(obs) = slice_arg(obs, dim) else {
        return WsrStatus::NullPointer;
    };
    let Some(bounds) = box_bounds(a, b, dim) else {
        return WsrStatus::NullPointer;
    };
    let result =
        bounds.and_then(|bounds| twes_sample(obs, &ens.0, &MultiChain::interval(bounds)));
    write_score(out, result)
}

/// Threshold-weighted variogram score with the componentwise clamp chain.
///
/// # Safety
/// As for `wsr_twes`; additionally `scaling` must point to `dim * dim`
/// readable doubles when non-NULL.
#[no_mangle]
pub unsafe extern "C" fn wsr_twvs(
    ens: *const WsrMultiEnsemble,
    obs: *const f64,
    dim: usize,
    a: *const f64,
    b: *const f64,
    p: f64,
    scaling: *const f64,
    out: *mut WsrScore,
) -> WsrStatus {
    let ens = deref_handle!(ens);
    let Some(obs) = slice_arg(obs, dim) else {
        return WsrStatus::NullPointer;
    };
    let Some(bounds) = box_bounds(a, b, dim) else {
        return WsrStatus::NullPointer;
    };
    let scaling = slice_arg(scaling, dim * dim);
    let result = bounds.and_then(|bounds| {
        let params = vs_params(p, scaling)?;
        twvs_sample(obs, &ens.0, &MultiChain::interval(bounds), &params)
    });
    write_score(out, result)
}

/// Threshold-weighted Gaussian-kernel score with the componentwise clamp
/// chain.
///
/// # Safety
/// As for `wsr_twes`.
#[no_mangle]
pub unsafe extern "C" fn wsr_twmmds(
    ens: *const WsrMultiEnsemble,
    obs: *const f64,
    dim: usize,
    a: *const f64,
    b: *const f64,
    out: *mut WsrScore,
) -> WsrStatus {
    let ens = deref_handle!(ens);
    let Some(obs) = slice_arg(obs, dim) else {
        return WsrStatus::NullPointer;
    };
    let Some(bounds) = box_bounds(a, b, dim) else {
        return WsrStatus::NullPointer;
    };
    let result =
        bounds.and_then(|bounds| twmmds_sample(obs, &ens.0, &MultiChain::interval(bounds)));
    write_score(out, result)
}

/// Outcome-weighted energy score with the box-indicator weight
/// 1{a_i < z_i < b_i for all i}.
///
/// # Safety
/// As for `wsr_twes`.
#[no_mangle]
pub unsafe extern "C" fn wsr_owes(
    ens: *const WsrMultiEnsemble,
    obs: *const f64,
    dim: usize,
    a: *const f64,
    b: *const f64,
    out: *mut WsrScore,
) -> WsrStatus {
    let ens = deref_handle!(ens);
    let Some(obs) = slice_arg(obs, dim) else {
        return WsrStatus::NullPointer;
    };
    let Some(bounds) = box_bounds(a, b, dim) else {
        return WsrStatus::NullPointer;
    };
    let result =
        bounds.and_then(|bounds| owes_sample(obs, &ens.0, &MultiWeight::interval(bounds)));
    write_score(out, result)
}

/// Outcome-weighted variogram score with the box-indicator weight.
///
/// # Safety
/// As for `wsr_twvs`.
#[no_mangle]
pub unsafe extern "C" fn wsr_owvs(
    ens: *const WsrMultiEnsemble,
    obs: *const f64,
    dim: usize,
    a: *const f64,
    b: *const f64,
    p: f64,
    scaling: *const f64,
    out: *mut WsrScore,
) -> WsrStatus {
    let ens = deref_handle!(ens);
    let Some(obs) = slice_arg(obs, dim) else {
        return WsrStatus::NullPointer;
    };
    let Some(bounds) = box_bounds(a, b, dim) else {
        return WsrStatus::NullPointer;
    };
    let scaling = slice_arg(scaling, dim * dim);
    let result = bounds.and_then(|bounds| {
        let params = vs_params(p, scaling)?;
        owvs_sample(obs, &ens.0, &MultiWeight::interval(bounds), &params)
    });
    write_score(out, result)
}

/// Outcome-weighted Gaussian-kernel score with the box-indicator weight.
///
/// # Safety
/// As for `wsr_twes`.
#[no_mangle]
pub unsafe extern "C" fn wsr_owmmds(
    ens: *const WsrMultiEnsemble,
    obs: *const f64,
    dim: usize,
    a: *const f64,
    b: *const f64,
    out: *mut WsrScore,
) -> WsrStatus {
    let ens = deref_handle!(ens);
    let Some(obs) = slice_arg(obs, dim) else {
        return WsrStatus::NullPointer;
    };
    let Some(bounds) = box_bounds(a, b, dim) else {
        return WsrStatus::NullPointer;
    };
    let result =
        bounds.and_then(|bounds| owmmds_sample(obs, &ens.0, &MultiWeight::interval(bounds)));
    write_score(out, result)
}

/// Static description of a status code; never NULL.
#[no_mangle]
pub extern "C" fn wsr_status_message(status: WsrStatus) -> *const c_char {
    let message: &'static [u8] = match status {
        WsrStatus::Ok => b"ok\0",
        WsrStatus::NullPointer => b"null pointer argument\0",
        WsrStatus::InvalidInput => b"invalid input\0",
        WsrStatus::DimensionMismatch => b"dimension mismatch\0",
        WsrStatus::BadMemberWeights => b"bad member weights\0",
        WsrStatus::InvalidBounds => b"invalid bounds: a must be strictly less than b\0",
        WsrStatus::NonPositiveScale => b"scale parameter must be positive\0",
        WsrStatus::DegenerateSample => b"degenerate sample\0",
        WsrStatus::TooFewMembers => b"too few members\0",
        WsrStatus::BadVsParams => b"bad variogram parameters\0",
        WsrStatus::NegativeWeight => b"weight function returned a negative value\0",
        WsrStatus::InternalError => b"internal error\0",
    };
    message.as_ptr() as *const c_char
}
