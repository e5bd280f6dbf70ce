// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! C ABI for hypersample.
//!
//! Every object crosses the boundary as an opaque pointer created by a
//! `*_new` function and released by the matching `*_free`. Fallible calls
//! return an [`HsStatus`]; on anything but `HS_STATUS_OK` a description is
//! available from [`hs_last_error`] on the same thread. Node ids handed out
//! by [`hs_hypergraph_copy_edges`] are 1-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hypersample::bounds::BoundsReport;
use hypersample::oracle::enumerate_bipartite;
use hypersample::oracle::exact_uniform_handle;
use hypersample::rejection::{
    hypergraph_sampling, BipartiteSampler, ConfigurationSampler, SwitchSampler,
};
use hypersample::{Error, Hypergraph, HypergraphInstance, RngSeed};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    /// The rejection cap was reached without an H-simple draw.
    Fail = 3,
    /// The configuration model gave up.
    Exhausted = 4,
    /// Enumeration exceeded its limit.
    TooLarge = 5,
    /// No bipartite graph has the requested degrees.
    Empty = 6,
    InvalidRegion = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// Degree sequence and edge size.
pub struct HsInstance {
    inner: HypergraphInstance,
}

/// A bipartite sampler bound to one instance.
pub struct HsSampler {
    inst: HypergraphInstance,
    inner: Box<dyn BipartiteSampler>,
}

/// A simple k-uniform hypergraph.
pub struct HsHypergraph {
    inner: Hypergraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HsStatus {
    match e {
        Error::Fail { .. } => HsStatus::Fail,
        Error::Exhausted { .. } => HsStatus::Exhausted,
        Error::TooLarge { .. } => HsStatus::TooLarge,
        Error::EmptySpace | Error::NonGraphical => HsStatus::Empty,
        Error::InvalidRegion(_) => HsStatus::InvalidRegion,
        _ => HsStatus::InvalidInput,
    }
}

fn guard<F: FnOnce() -> Result<(), (HsStatus, String)>>(f: F) -> HsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HsStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            HsStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (HsStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (HsStatus, String) {
    (HsStatus::NullPointer, format!("{what} is null"))
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hs_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates an instance from `n` degrees and edge size `k`.
///
/// # Safety
/// `degrees` must point to `n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hs_instance_new(
    degrees: *const usize,
    n: usize,
    k: usize,
    out: *mut *mut HsInstance,
) -> HsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if degrees.is_null() && n > 0 {
            return Err(null("degrees"));
        }
        let d = if n == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(degrees, n).to_vec()
        };
        let inner = HypergraphInstance::new(d, k).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(HsInstance { inner }));
        Ok(())
    })
}

/// # Safety
/// `inst` must come from [`hs_instance_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hs_instance_free(inst: *mut HsInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of hyperedges `m = sum(d) / k`, or 0 for NULL.
///
/// # Safety
/// `inst` must be NULL or a live instance.
#[no_mangle]
pub unsafe extern "C" fn hs_instance_edge_count(inst: *const HsInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.edge_count())
}

unsafe fn new_sampler(
    inst: *const HsInstance,
    out: *mut *mut HsSampler,
    make: impl FnOnce(&HypergraphInstance) -> Result<Box<dyn BipartiteSampler>, Error>,
) -> HsStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| null("inst"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = make(&inst.inner).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(HsSampler {
            inst: inst.inner.clone(),
            inner,
        }));
        Ok(())
    })
}

/// Configuration-model sampler (exactly uniform).
///
/// # Safety
/// `inst` must be a live instance and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hs_sampler_config_new(
    inst: *const HsInstance,
    out: *mut *mut HsSampler,
) -> HsStatus {
    new_sampler(inst, out, |i| Ok(Box::new(ConfigurationSampler::new(i))))
}

/// Switch chain run for `steps` steps per draw from a fixed start graph.
///
/// # Safety
/// `inst` must be a live instance and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hs_sampler_switch_new(
    inst: *const HsInstance,
    steps: u64,
    out: *mut *mut HsSampler,
) -> HsStatus {
    new_sampler(inst, out, |i| Ok(Box::new(SwitchSampler::new(i, steps)?)))
}

/// Exactly uniform sampler backed by full enumeration; fails with
/// `HS_STATUS_TOO_LARGE` beyond `limit` search nodes.
///
/// # Safety
/// `inst` must be a live instance and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hs_sampler_oracle_new(
    inst: *const HsInstance,
    limit: u64,
    out: *mut *mut HsSampler,
) -> HsStatus {
    new_sampler(inst, out, |i| Ok(Box::new(exact_uniform_handle(i, limit)?)))
}

/// # Safety
/// `sampler` must come from one of the `hs_sampler_*_new` functions.
#[no_mangle]
pub unsafe extern "C" fn hs_sampler_free(sampler: *mut HsSampler) {
    if !sampler.is_null() {
        drop(Box::from_raw(sampler));
    }
}

/// Draws one hypergraph by rejection. The random stream is fixed by
/// `(seed, stream)`. `cap == 0` means no cap. `iterations` may be NULL.
///
/// # Safety
/// `sampler` must be live; `out` must be writable; `iterations` NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn hs_sample(
    sampler: *const HsSampler,
    seed: u64,
    stream: u64,
    cap: u64,
    out: *mut *mut HsHypergraph,
    iterations: *mut u64,
) -> HsStatus {
    guard(|| {
        let s = sampler.as_ref().ok_or_else(|| null("sampler"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let mut rng = RngSeed::new(seed, stream).rng();
        let cap = (cap > 0).then_some(cap);
        let (h, stats) =
            hypergraph_sampling(&s.inst, s.inner.as_ref(), &mut rng, cap).map_err(lib_err)?;
        if !iterations.is_null() {
            *iterations = stats.iterations;
        }
        *out = Box::into_raw(Box::new(HsHypergraph { inner: h }));
        Ok(())
    })
}

/// # Safety
/// `h` must come from [`hs_sample`].
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_free(h: *mut HsHypergraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be NULL or live.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_edge_count(h: *const HsHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.inner.edge_count())
}

/// # Safety
/// `h` must be NULL or live.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_k(h: *const HsHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.inner.k())
}

/// Writes the canonical edge list, `k` 1-based ids per edge, into `buf`,
/// which must hold `edge_count * k` values.
///
/// # Safety
/// `h` must be live and `buf` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_copy_edges(
    h: *const HsHypergraph,
    buf: *mut usize,
    len: usize,
) -> HsStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("h"))?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let need = h.inner.edge_count() * h.inner.k();
        if len < need {
            return Err((
                HsStatus::BufferTooSmall,
                format!("buffer holds {len} values, {need} needed"),
            ));
        }
        let out = std::slice::from_raw_parts_mut(buf, need);
        for (slot, &v) in out.iter_mut().zip(h.inner.edges().iter().flatten()) {
            *slot = v + 1;
        }
        Ok(())
    })
}

/// Bounds report as a JSON string; release it with [`hs_string_free`].
/// Pass NaN for `c0` or `eps` to leave them unset.
///
/// # Safety
/// `inst` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hs_bounds_json(
    inst: *const HsInstance,
    c0: f64,
    eps: f64,
    out: *mut *mut c_char,
) -> HsStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| null("inst"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let opt = |x: f64| (!x.is_nan()).then_some(x);
        let report = BoundsReport::compute(&inst.inner, opt(c0), opt(eps)).map_err(lib_err)?;
        let c =
            CString::new(report.to_json()).map_err(|e| (HsStatus::InvalidInput, e.to_string()))?;
        *out = c.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Exact counts of bipartite graphs, H-simple bipartite graphs and
/// hypergraphs. Any output pointer may be NULL.
///
/// # Safety
/// `inst` must be live; each output NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hs_enumerate_counts(
    inst: *const HsInstance,
    limit: u64,
    count_b: *mut u64,
    count_b_star: *mut u64,
    count_h: *mut u64,
) -> HsStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| null("inst"))?;
        let r = enumerate_bipartite(&inst.inner.bipartite(), limit, false).map_err(lib_err)?;
        for (p, v) in [
            (count_b, r.count_b),
            (count_b_star, r.count_b_star),
            (count_h, r.count_h),
        ] {
            if !p.is_null() {
                *p = v;
            }
        }
        Ok(())
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn hs_version() -> *const c_char {
    static VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => panic!("version contains NUL"),
        };
    VERSION.as_ptr()
}
