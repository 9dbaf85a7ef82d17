//! C ABI over `knitcoral`.
//!
//! Every fallible function returns a [`KcStatus`]. On failure a message is
//! available from [`kc_last_error_message`] on the same thread. Objects are
//! opaque handles created by `*_new`-style functions and released with the
//! matching `*_free`. Strings returned through out-parameters are owned by
//! the caller and released with [`kc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use knitcoral::crochet::{
    distribute_multipliers, plan_rows, render_pattern, MagicCircle, PatternMode, RowPlan,
};
use knitcoral::diffgeo::{coral_curvature_paper, curvature_report};
use knitcoral::mesh::{tessellate, write_obj, write_ply, Mesh};
use knitcoral::oracle::{validate_all, ValidationConfig};
use knitcoral::{DomainPoint, Error, SurfaceFamily, SurfaceKind, Vec3};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    SingularPoint = 3,
    SingularMetric = 4,
    Io = 5,
    Parse = 6,
    BufferTooSmall = 7,
    Internal = 8,
}

/// Values accepted by the `kind` argument of [`kc_surface_new`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KcSurfaceKind {
    Coral = 0,
    Lettuce = 1,
    Paraboloid = 2,
}

/// Values accepted by `mode` arguments.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KcPatternMode {
    Even = 0,
    Block = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct KcVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<Vec3> for KcVec3 {
    fn from(v: Vec3) -> Self {
        KcVec3 {
            x: v.x,
            y: v.y,
            z: v.z,
        }
    }
}

/// Position and partial derivatives up to second order.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct KcJet2 {
    pub p: KcVec3,
    pub ru: KcVec3,
    pub rv: KcVec3,
    pub ruu: KcVec3,
    pub ruv: KcVec3,
    pub rvv: KcVec3,
}

/// Pointwise curvature summary. The `has_*` flags mark optional fields.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct KcCurvature {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub normal: KcVec3,
    pub k_forms: f64,
    pub k_paper: f64,
    pub has_k_paper: bool,
    pub area_factor: f64,
    pub has_area_factor: bool,
    pub mean: f64,
    pub k1: f64,
    pub k2: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct KcPlannedRow {
    pub radius: u32,
    pub length: f64,
    pub chains: u64,
}

/// Opaque surface handle.
pub struct KcSurface(SurfaceFamily);
/// Opaque row plan handle.
pub struct KcRowPlan(RowPlan);
/// Opaque mesh handle.
pub struct KcMesh(Mesh);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> KcStatus {
    match e {
        Error::InvalidParameter(_) => KcStatus::InvalidParameter,
        Error::SingularPoint { .. } => KcStatus::SingularPoint,
        Error::SingularMetric { .. } => KcStatus::SingularMetric,
        Error::Io { .. } => KcStatus::Io,
        Error::Parse(_) => KcStatus::Parse,
    }
}

struct Fail(KcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(KcStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> KcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            KcStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            KcStatus::Internal
        }
    }
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn surface_kind(kind: u32) -> Result<SurfaceKind, Fail> {
    match kind {
        0 => Ok(SurfaceKind::NCoral),
        1 => Ok(SurfaceKind::Lettuce),
        2 => Ok(SurfaceKind::HyperbolicParaboloid),
        k => Err(Fail(
            KcStatus::InvalidParameter,
            format!("unknown surface kind {k}"),
        )),
    }
}

fn pattern_mode(mode: u32) -> Result<PatternMode, Fail> {
    match mode {
        0 => Ok(PatternMode::Even),
        1 => Ok(PatternMode::Block),
        m => Err(Fail(
            KcStatus::InvalidParameter,
            format!("unknown pattern mode {m}"),
        )),
    }
}

fn into_c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(KcStatus::Internal, "string contains NUL".into()))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn kc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn kc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn kc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a surface. `kind` takes a [`KcSurfaceKind`] value.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kc_surface_new(kind: u32, n: u32, out: *mut *mut KcSurface) -> KcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = SurfaceFamily::new(surface_kind(kind)?, n)?;
        out.write(Box::into_raw(Box::new(KcSurface(s))));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from [`kc_surface_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kc_surface_free(s: *mut KcSurface) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kc_surface_position(
    s: *const KcSurface,
    u: f64,
    v: f64,
    out: *mut KcVec3,
) -> KcStatus {
    guard(|| {
        let s = get(s, "surface")?;
        put(out, s.0.position(DomainPoint::new(u, v)).into(), "out")
    })
}

/// Closed-form jet at `(u, v)`.
///
/// # Safety
/// `s` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kc_surface_jet(
    s: *const KcSurface,
    u: f64,
    v: f64,
    out: *mut KcJet2,
) -> KcStatus {
    guard(|| {
        let j = get(s, "surface")?.0.jet(DomainPoint::new(u, v));
        let jet = KcJet2 {
            p: j.p.into(),
            ru: j.ru.into(),
            rv: j.rv.into(),
            ruu: j.ruu.into(),
            ruv: j.ruv.into(),
            rvv: j.rvv.into(),
        };
        put(out, jet, "out")
    })
}

/// Fundamental forms and curvatures at a regular point.
///
/// # Safety
/// `s` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kc_curvature(
    s: *const KcSurface,
    u: f64,
    v: f64,
    out: *mut KcCurvature,
) -> KcStatus {
    guard(|| {
        let s = get(s, "surface")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = curvature_report(&s.0, DomainPoint::new(u, v))?;
        let f = &r.forms;
        out.write(KcCurvature {
            e: f.e,
            f: f.f,
            g: f.g,
            l: f.l,
            m: f.m,
            n: f.n,
            normal: r.normal.into(),
            k_forms: r.k_forms,
            k_paper: r.k_paper.unwrap_or(f64::NAN),
            has_k_paper: r.k_paper.is_some(),
            area_factor: f.a.unwrap_or(f64::NAN),
            has_area_factor: f.a.is_some(),
            mean: r.h,
            k1: r.k1,
            k2: r.k2,
        });
        Ok(())
    })
}

/// Closed-form coral curvature as published; finite on the axis.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kc_coral_curvature_paper(
    n: u32,
    u: f64,
    v: f64,
    out: *mut f64,
) -> KcStatus {
    guard(|| {
        if n < 2 {
            return Err(Fail(
                KcStatus::InvalidParameter,
                format!("coral needs n >= 2, got {n}"),
            ));
        }
        put(out, coral_curvature_paper(n, DomainPoint::new(u, v)), "out")
    })
}

/// Plans rows `r = 1..=max_radius` starting from `initial_chains`, with a
/// magic circle of `magic_chains` in the rendered instructions.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kc_plan_rows(
    initial_chains: u64,
    max_radius: u32,
    magic_chains: u32,
    out: *mut *mut KcRowPlan,
) -> KcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let plan = plan_rows(initial_chains, max_radius)?
            .with_magic_circle(MagicCircle::new(magic_chains)?);
        out.write(Box::into_raw(Box::new(KcRowPlan(plan))));
        Ok(())
    })
}

/// # Safety
/// `plan` must be null or a handle from [`kc_plan_rows`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kc_row_plan_free(plan: *mut KcRowPlan) {
    if !plan.is_null() {
        drop(Box::from_raw(plan));
    }
}

/// Number of rows; 0 for a null handle.
///
/// # Safety
/// `plan` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kc_row_plan_len(plan: *const KcRowPlan) -> usize {
    plan.as_ref().map_or(0, |p| p.0.rows.len())
}

/// # Safety
/// `plan` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kc_row_plan_row(
    plan: *const KcRowPlan,
    index: usize,
    out: *mut KcPlannedRow,
) -> KcStatus {
    guard(|| {
        let plan = get(plan, "plan")?;
        let row = plan.0.rows.get(index).ok_or_else(|| {
            Fail(
                KcStatus::InvalidParameter,
                format!("row {index} out of range (plan has {})", plan.0.rows.len()),
            )
        })?;
        put(
            out,
            KcPlannedRow {
                radius: row.radius,
                length: row.length,
                chains: row.chains,
            },
            "out",
        )
    })
}

/// Rendered instructions. Free the string with [`kc_string_free`].
///
/// # Safety
/// `plan` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kc_row_plan_render(
    plan: *const KcRowPlan,
    mode: u32,
    out: *mut *mut c_char,
) -> KcStatus {
    guard(|| {
        let plan = get(plan, "plan")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let text = render_pattern(&plan.0, pattern_mode(mode)?)?;
        out.write(into_c_string(text)?);
        Ok(())
    })
}

/// Per-chain multipliers taking `parent` chains to `target`.
///
/// `*len` always receives the required length. If `buf` is null or
/// `capacity` is too small, nothing is copied and `BufferTooSmall` is
/// returned, so callers can size a buffer with a first call.
///
/// # Safety
/// `len` must be valid for writes; `buf` must be null or valid for
/// `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn kc_distribute_multipliers(
    parent: u64,
    target: u64,
    mode: u32,
    buf: *mut u32,
    capacity: usize,
    len: *mut usize,
) -> KcStatus {
    guard(|| {
        if len.is_null() {
            return Err(null("len"));
        }
        let p = distribute_multipliers(parent, target, pattern_mode(mode)?)?;
        len.write(p.multipliers.len());
        if buf.is_null() || capacity < p.multipliers.len() {
            return Err(Fail(
                KcStatus::BufferTooSmall,
                format!("need room for {} multipliers", p.multipliers.len()),
            ));
        }
        ptr::copy_nonoverlapping(p.multipliers.as_ptr(), buf, p.multipliers.len());
        Ok(())
    })
}

/// Curvature-coloured mesh over `[u_min, u_max] × [v_min, v_max]`.
///
/// # Safety
/// `s` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn kc_mesh_tessellate(
    s: *const KcSurface,
    u_min: f64,
    u_max: f64,
    v_min: f64,
    v_max: f64,
    nu: usize,
    nv: usize,
    wrap_v: bool,
    out: *mut *mut KcMesh,
) -> KcStatus {
    guard(|| {
        let s = get(s, "surface")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let mesh = tessellate(&s.0, (u_min, u_max), (v_min, v_max), nu, nv, wrap_v)?;
        out.write(Box::into_raw(Box::new(KcMesh(mesh))));
        Ok(())
    })
}

/// # Safety
/// `mesh` must be null or a handle from [`kc_mesh_tessellate`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kc_mesh_free(mesh: *mut KcMesh) {
    if !mesh.is_null() {
        drop(Box::from_raw(mesh));
    }
}

/// # Safety
/// `mesh` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kc_mesh_vertex_count(mesh: *const KcMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.0.vertex_count())
}

/// # Safety
/// `mesh` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kc_mesh_triangle_count(mesh: *const KcMesh) -> usize {
    mesh.as_ref().map_or(0, |m| m.0.triangle_count())
}

unsafe fn path_arg(path: *const c_char) -> Result<String, Fail> {
    if path.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(path)
        .to_str()
        .map(str::to_owned)
        .map_err(|_| Fail(KcStatus::InvalidParameter, "path is not UTF-8".into()))
}

/// # Safety
/// `mesh` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn kc_mesh_write_obj(mesh: *const KcMesh, path: *const c_char) -> KcStatus {
    guard(|| Ok(write_obj(&get(mesh, "mesh")?.0, path_arg(path)?)?))
}

/// # Safety
/// `mesh` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn kc_mesh_write_ply(mesh: *const KcMesh, path: *const c_char) -> KcStatus {
    guard(|| Ok(write_ply(&get(mesh, "mesh")?.0, path_arg(path)?)?))
}

/// Runs the default cross-checks. `*passed` tells whether every hard check
/// passed; `*report`, if non-null, receives the report (JSON or text).
///
/// # Safety
/// `passed` must be valid for writes; `report` must be null or valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn kc_validate(
    json: bool,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> KcStatus {
    guard(|| {
        if passed.is_null() {
            return Err(null("passed"));
        }
        let r = validate_all(&ValidationConfig::default())?;
        passed.write(r.passed);
        if !report.is_null() {
            let text = if json { r.to_json() } else { r.to_text() };
            report.write(into_c_string(text)?);
        }
        Ok(())
    })
}
