//! C ABI for the camonoid library.
//!
//! The surface is deliberately small: build an analysis for a group spec
//! and alphabet size, read numeric fields or the full JSON report through
//! an opaque handle, and free everything explicitly. All functions return
//! a `CamStatus`; out-parameters are written only on `CAM_OK`.

use camonoid::{error::CaError, group::FiniteGroup, report, report::AnalyzeOptions};
use libc::c_char;
use std::ffi::{CStr, CString};

/// Status codes. Values 1..3 mirror the CLI exit-code contract
/// (input / guard / internal); extras cover ABI-level misuse.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CamStatus {
    CamOk = 0,
    CamErrInput = 1,
    CamErrGuard = 2,
    CamErrInternal = 3,
    CamErrNotAbelian = 4,
    CamErrNullArgument = 5,
    CamErrUtf8 = 6,
}

fn status_of(e: &CaError) -> CamStatus {
    match e {
        CaError::NotAbelian => CamStatus::CamErrNotAbelian,
        _ => match e.exit_code() {
            1 => CamStatus::CamErrInput,
            2 => CamStatus::CamErrGuard,
            _ => CamStatus::CamErrInternal,
        },
    }
}

/// Opaque analysis handle.
pub struct CamAnalysis {
    report: report::AnalysisReport,
}

/// Analyzes `CA(G;A)` for the given group spec (e.g. `"cyclic:2xcyclic:2"`)
/// and alphabet size, writing a new handle to `out`. Free with
/// `cam_analysis_free`.
///
/// # Safety
/// `group_spec` must be a valid NUL-terminated string and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn cam_analyze(
    group_spec: *const c_char,
    q: u32,
    out: *mut *mut CamAnalysis,
) -> CamStatus {
    if group_spec.is_null() || out.is_null() {
        return CamStatus::CamErrNullArgument;
    }
    let spec = match CStr::from_ptr(group_spec).to_str() {
        Ok(s) => s,
        Err(_) => return CamStatus::CamErrUtf8,
    };
    let group = match FiniteGroup::from_spec(spec) {
        Ok(g) => g,
        Err(e) => return status_of(&e),
    };
    match report::analyze(group, q as usize, AnalyzeOptions::default()) {
        Ok(r) => {
            *out = Box::into_raw(Box::new(CamAnalysis { report: r }));
            CamStatus::CamOk
        }
        Err(e) => status_of(&e),
    }
}

/// Frees a handle returned by `cam_analyze`. NULL is a no-op.
///
/// # Safety
/// `analysis` must be a pointer from `cam_analyze`, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn cam_analysis_free(analysis: *mut CamAnalysis) {
    if !analysis.is_null() {
        drop(Box::from_raw(analysis));
    }
}

macro_rules! getter {
    ($(#[$doc:meta])* $name:ident, $field:ident as $ty:ty) => {
        $(#[$doc])*
        /// # Safety
        /// Both pointers must be valid.
        #[no_mangle]
        pub unsafe extern "C" fn $name(
            analysis: *const CamAnalysis,
            out: *mut $ty,
        ) -> CamStatus {
            if analysis.is_null() || out.is_null() {
                return CamStatus::CamErrNullArgument;
            }
            *out = (*analysis).report.$field as $ty;
            CamStatus::CamOk
        }
    };
}

getter!(
    /// Order of the group.
    cam_analysis_group_order, n as u64
);
getter!(
    /// Alphabet size.
    cam_analysis_alphabet_size, q as u64
);
getter!(
    /// Number of G-orbits on the configuration space.
    cam_analysis_orbit_count, orbit_count as u64
);
getter!(
    /// Number of conjugacy classes of subgroups.
    cam_analysis_class_count, class_count as u64
);
getter!(
    /// Size of the full (reflexive) edge set of the class order.
    cam_analysis_edge_count, edge_count as u64
);

/// Relative rank of the invertible subgroup in the full monoid. Fails with
/// `CAM_ERR_NOT_ABELIAN` for nonabelian groups.
///
/// # Safety
/// Both pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn cam_analysis_relative_rank(
    analysis: *const CamAnalysis,
    out: *mut u64,
) -> CamStatus {
    if analysis.is_null() || out.is_null() {
        return CamStatus::CamErrNullArgument;
    }
    match (*analysis).report.relative_rank {
        Some(r) => {
            *out = r as u64;
            CamStatus::CamOk
        }
        None => CamStatus::CamErrNotAbelian,
    }
}

/// The full report as a JSON string. Free with `cam_string_free`.
///
/// # Safety
/// Both pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn cam_analysis_json(
    analysis: *const CamAnalysis,
    out: *mut *mut c_char,
) -> CamStatus {
    if analysis.is_null() || out.is_null() {
        return CamStatus::CamErrNullArgument;
    }
    match CString::new((*analysis).report.to_json()) {
        Ok(s) => {
            *out = s.into_raw();
            CamStatus::CamOk
        }
        Err(_) => CamStatus::CamErrInternal,
    }
}

/// The invertible-subgroup structure string (e.g.
/// `"(1 wr S2) x (Z2 wr S1)^3 x (Z2xZ2 wr S2)"`). Free with
/// `cam_string_free`.
///
/// # Safety
/// Both pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn cam_analysis_ica_structure(
    analysis: *const CamAnalysis,
    out: *mut *mut c_char,
) -> CamStatus {
    if analysis.is_null() || out.is_null() {
        return CamStatus::CamErrNullArgument;
    }
    match CString::new((*analysis).report.ica_structure.clone()) {
        Ok(s) => {
            *out = s.into_raw();
            CamStatus::CamOk
        }
        Err(_) => CamStatus::CamErrInternal,
    }
}

/// Frees a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must come from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn cam_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn cam_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
