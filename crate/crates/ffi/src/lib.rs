//! C ABI for the sdslab workbench.
//!
//! Conventions:
//! * handles are opaque pointers created and freed by this library;
//! * every fallible call returns an [`SdsStatus`] and writes results through
//!   out-pointers, which are only valid on `SDS_STATUS_OK`;
//! * strings returned through `char **` are UTF-8, owned by the library, and
//!   must be released with [`sds_string_free`];
//! * [`sds_last_error`] returns a thread-local message for the most recent
//!   failing call on this thread.
//!
//! Safety: every pointer argument must be null, or valid for the access the
//! call performs; string arguments must be nul-terminated; handles and
//! returned strings must be freed exactly once, by this library.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use sdslab::config::{parse_graph_spec, parse_rule_spec, WordsSpec};
use sdslab::phase::{classify, Relation};
use sdslab::report;
use sdslab::stability;
use sdslab::{Error, Graph, Limits};

use serde_json::json;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    Capacity = 3,
    ParseError = 4,
    Domain = 5,
    Internal = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("nul-free");
    });
}

fn status_of(err: &Error) -> SdsStatus {
    match err {
        Error::Parse { .. } => SdsStatus::ParseError,
        Error::Capacity { .. } => SdsStatus::Capacity,
        Error::TooSmall { .. }
        | Error::Invalid(_)
        | Error::NotAPermutation { .. }
        | Error::VertexOutOfRange { .. }
        | Error::SizeMismatch { .. } => SdsStatus::InvalidArgument,
        Error::Disconnected | Error::NotASource { .. } | Error::NotAnAutomorphism => {
            SdsStatus::Domain
        }
        Error::CrossCheck(_) | Error::Io(_) => SdsStatus::Internal,
    }
}

fn fail(err: Error) -> SdsStatus {
    let status = status_of(&err);
    set_error(&err.to_string());
    status
}

/// Opaque graph handle.
pub struct SdsGraph {
    graph: Graph,
    spec: String,
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, SdsStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(SdsStatus::NullArgument);
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        SdsStatus::InvalidArgument
    })
}

fn write_string(out: *mut *mut c_char, text: String) -> SdsStatus {
    let sanitized = text.replace('\0', " ");
    let cstring = CString::new(sanitized).expect("nul-free");
    unsafe {
        *out = cstring.into_raw();
    }
    SdsStatus::Ok
}

fn limits() -> Result<Limits, Error> {
    Limits::from_env()
}

/// Library version as a static string; never freed.
#[no_mangle]
pub extern "C" fn sds_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Thread-local message for the most recent failure. Valid until the next
/// failing call on the same thread; never freed by the caller.
#[no_mangle]
pub extern "C" fn sds_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned through a `char **` out-parameter.
#[no_mangle]
pub unsafe extern "C" fn sds_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Builds a graph from a generator spec: `circ:N`, `circ2:N`, `star:N`,
/// `complete:N`, `path:N` or `tree:1-2,2-3`.
#[no_mangle]
pub unsafe extern "C" fn sds_graph_generate(
    spec: *const c_char,
    out: *mut *mut SdsGraph,
) -> SdsStatus {
    if out.is_null() {
        set_error("null out-pointer");
        return SdsStatus::NullArgument;
    }
    let spec = match unsafe { read_str(spec) } {
        Ok(s) => s,
        Err(status) => return status,
    };
    match parse_graph_spec(spec) {
        Ok(graph) => {
            let handle = Box::new(SdsGraph {
                graph,
                spec: spec.to_string(),
            });
            unsafe {
                *out = Box::into_raw(handle);
            }
            SdsStatus::Ok
        }
        Err(err) => fail(err),
    }
}

/// Parses the edge-list text format (lines `i j`, optional `n <count>`
/// header, `#` comments).
#[no_mangle]
pub unsafe extern "C" fn sds_graph_parse_edge_list(
    text: *const c_char,
    out: *mut *mut SdsGraph,
) -> SdsStatus {
    if out.is_null() {
        set_error("null out-pointer");
        return SdsStatus::NullArgument;
    }
    let text = match unsafe { read_str(text) } {
        Ok(s) => s,
        Err(status) => return status,
    };
    match Graph::parse_edge_list(text) {
        Ok(graph) => {
            let handle = Box::new(SdsGraph {
                graph,
                spec: "edge-list".to_string(),
            });
            unsafe {
                *out = Box::into_raw(handle);
            }
            SdsStatus::Ok
        }
        Err(err) => fail(err),
    }
}

/// Releases a graph handle.
#[no_mangle]
pub unsafe extern "C" fn sds_graph_free(g: *mut SdsGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Vertex count, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn sds_graph_vertex_count(g: *const SdsGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |h| h.graph.n())
}

/// Edge count, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn sds_graph_edge_count(g: *const SdsGraph) -> usize {
    unsafe { g.as_ref() }.map_or(0, |h| h.graph.edges().len())
}

/// Undirected DOT rendering of the graph.
#[no_mangle]
pub unsafe extern "C" fn sds_graph_to_dot(
    g: *const SdsGraph,
    out: *mut *mut c_char,
) -> SdsStatus {
    let Some(handle) = (unsafe { g.as_ref() }) else {
        set_error("null graph handle");
        return SdsStatus::NullArgument;
    };
    if out.is_null() {
        set_error("null out-pointer");
        return SdsStatus::NullArgument;
    }
    write_string(out, handle.graph.to_dot())
}

fn config_value(handle: &SdsGraph, limits: &Limits, extra: &[(&str, serde_json::Value)]) -> serde_json::Value {
    let mut obj = serde_json::Map::new();
    obj.insert("graph".into(), json!(handle.spec));
    obj.insert(
        "limits".into(),
        json!({
            "aut": limits.max_aut_vertices,
            "edges": limits.max_edges,
            "states": limits.max_states,
        }),
    );
    for (k, v) in extra {
        obj.insert((*k).into(), v.clone());
    }
    serde_json::Value::Object(obj)
}

/// Orientation counts (alpha, alpha_bar, kappa, kappa_bar) with cross-check
/// status, as a JSON report. Fails with `SDS_STATUS_INTERNAL` if any
/// cross-check disagrees.
#[no_mangle]
pub unsafe extern "C" fn sds_counts_json(
    g: *const SdsGraph,
    out: *mut *mut c_char,
) -> SdsStatus {
    let Some(handle) = (unsafe { g.as_ref() }) else {
        set_error("null graph handle");
        return SdsStatus::NullArgument;
    };
    if out.is_null() {
        set_error("null out-pointer");
        return SdsStatus::NullArgument;
    }
    let limits = match limits() {
        Ok(l) => l,
        Err(e) => return fail(e),
    };
    match report::counts_payload(&handle.graph, &limits) {
        Ok((payload, all_ok)) => {
            let value = report::envelope("counts", config_value(handle, &limits, &[]), payload);
            if !all_ok {
                set_error("internal cross-checks disagree; see the report");
            }
            let status = write_string(out, report::render_json(&value));
            if all_ok {
                status
            } else {
                SdsStatus::Internal
            }
        }
        Err(err) => fail(err),
    }
}

/// Groups update words by an equivalence on their SDS maps and reports the
/// classes. `rule` uses the rule mini-language (`nor`, `threshold:2`,
/// `eca:150`, ...), `words` one of `transversal`, `all-permutations`,
/// `sampled:c[,L]`; `relation` one of `functional`, `dynamical`, `cycle`.
#[no_mangle]
pub unsafe extern "C" fn sds_classify_json(
    g: *const SdsGraph,
    rule: *const c_char,
    words: *const c_char,
    relation: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> SdsStatus {
    let Some(handle) = (unsafe { g.as_ref() }) else {
        set_error("null graph handle");
        return SdsStatus::NullArgument;
    };
    if out.is_null() {
        set_error("null out-pointer");
        return SdsStatus::NullArgument;
    }
    let (rule, words, relation) = match (|| {
        Ok::<_, SdsStatus>((
            unsafe { read_str(rule) }?,
            unsafe { read_str(words) }?,
            unsafe { read_str(relation) }?,
        ))
    })() {
        Ok(t) => t,
        Err(status) => return status,
    };
    let result = (|| {
        let limits = limits()?;
        let fs = parse_rule_spec(rule, &handle.graph, None, false)?;
        let relation = Relation::parse(relation)?;
        let words_spec = WordsSpec::parse(words)?;
        let list = words_spec.build(&handle.graph, &limits, seed)?;
        let classes = classify(&fs, &list, relation, &limits, 1)?;
        let covers_all = matches!(
            words_spec,
            WordsSpec::Transversal | WordsSpec::AllPermutations
        );
        let payload = report::classify_payload(&fs, &classes, relation.name(), covers_all);
        let config = config_value(
            handle,
            &limits,
            &[
                ("rule", json!(rule)),
                ("words", json!(words_spec.describe())),
                ("relation", json!(relation.name())),
                ("seed", json!(seed)),
            ],
        );
        Ok(report::render_json(&report::envelope(
            "classify", config, payload,
        )))
    })();
    match result {
        Ok(text) => write_string(out, text),
        Err(err) => fail(err),
    }
}

/// Reachable-limit-set report over a word family.
#[no_mangle]
pub unsafe extern "C" fn sds_omega_json(
    g: *const SdsGraph,
    rule: *const c_char,
    words: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> SdsStatus {
    let Some(handle) = (unsafe { g.as_ref() }) else {
        set_error("null graph handle");
        return SdsStatus::NullArgument;
    };
    if out.is_null() {
        set_error("null out-pointer");
        return SdsStatus::NullArgument;
    }
    let (rule, words) = match (|| {
        Ok::<_, SdsStatus>((unsafe { read_str(rule) }?, unsafe { read_str(words) }?))
    })() {
        Ok(t) => t,
        Err(status) => return status,
    };
    let result = (|| {
        let limits = limits()?;
        let fs = parse_rule_spec(rule, &handle.graph, None, false)?;
        let words_spec = WordsSpec::parse(words)?;
        let list = words_spec.build(&handle.graph, &limits, seed)?;
        let omega = stability::omega_report(&fs, &list, &limits, 1)?;
        let payload = report::omega_payload(
            &fs,
            &omega,
            &report::family_desc(&list, &words_spec.describe()),
        );
        let config = config_value(
            handle,
            &limits,
            &[
                ("rule", json!(rule)),
                ("words", json!(words_spec.describe())),
                ("seed", json!(seed)),
            ],
        );
        Ok(report::render_json(&report::envelope(
            "omega", config, payload,
        )))
    })();
    match result {
        Ok(text) => write_string(out, text),
        Err(err) => fail(err),
    }
}

/// The periodic-set stability ratio rho with the word-independence verdict.
/// `words` may be null for the default policy (transversal permutations plus
/// 200 sampled complete words).
#[no_mangle]
pub unsafe extern "C" fn sds_rho_json(
    g: *const SdsGraph,
    rule: *const c_char,
    words: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> SdsStatus {
    let Some(handle) = (unsafe { g.as_ref() }) else {
        set_error("null graph handle");
        return SdsStatus::NullArgument;
    };
    if out.is_null() {
        set_error("null out-pointer");
        return SdsStatus::NullArgument;
    }
    let rule = match unsafe { read_str(rule) } {
        Ok(r) => r,
        Err(status) => return status,
    };
    let words_opt = if words.is_null() {
        None
    } else {
        match unsafe { read_str(words) } {
            Ok(w) => Some(w.to_string()),
            Err(status) => return status,
        }
    };
    let result = (|| {
        let limits = limits()?;
        let fs = parse_rule_spec(rule, &handle.graph, None, false)?;
        let n = handle.graph.n();
        let policy = match &words_opt {
            Some(spec) => WordsSpec::parse(spec)?.to_policy(n, seed),
            None => stability::WordPolicy {
                perms: stability::PermFamily::AlphaTransversal,
                sample: Some(stability::SamplePolicy::defaults(n, seed)),
            },
        };
        let rho = stability::rho(&fs, &limits, 1)?;
        let independence = stability::word_independent(&fs, &policy, &limits, 1)?;
        let payload = report::rho_payload(rho, &independence);
        let config = config_value(
            handle,
            &limits,
            &[
                ("rule", json!(rule)),
                (
                    "words",
                    json!(words_opt.unwrap_or_else(|| "transversal+sampled".into())),
                ),
                ("seed", json!(seed)),
            ],
        );
        Ok(report::render_json(&report::envelope("rho", config, payload)))
    })();
    match result {
        Ok(text) => write_string(out, text),
        Err(err) => fail(err),
    }
}

/// Permutation-independence scan of all 256 ECA rules over circ(n) for
/// n_min..=n_max, as the CSV table.
#[no_mangle]
pub unsafe extern "C" fn sds_scan_csv(
    n_min: usize,
    n_max: usize,
    out: *mut *mut c_char,
) -> SdsStatus {
    if out.is_null() {
        set_error("null out-pointer");
        return SdsStatus::NullArgument;
    }
    let result = (|| {
        let limits = limits()?;
        let rows = stability::eca_scan(n_min, n_max, &limits, 1)?;
        Ok(report::scan_csv(&rows, &format!("n {n_min}..{n_max}")))
    })();
    match result {
        Ok(text) => write_string(out, text),
        Err(err) => fail(err),
    }
}
