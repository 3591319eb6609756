//! C ABI for the verification laboratory: opaque instance handles, status
//! codes, and JSON-string results. Strings returned through `out` parameters
//! are owned by the caller and must be released with
//! [`dihp_lab_string_free`].
//!
//! Status codes mirror the CLI exit codes: 0 ok, 1 internal error, 2 bad
//! input or usage, 3 cap exceeded, 4 verification failure.

use std::ffi::{c_char, CStr, CString};
use std::sync::Arc;

use dihp_lab::csp::Instance;
use dihp_lab::error::Error;
use dihp_lab::game::{
    advantage, AdvantageMode, ConstantProtocol, CycleConsistencyProtocol, EchoProtocol,
    FullInformationProtocol, GameSpec, Protocol,
};
use dihp_lab::ratio::rat_to_string;
use dihp_lab::report::ExperimentRecord;
use dihp_lab::Caps;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum DihpLabStatus {
    Ok = 0,
    InternalError = 1,
    InvalidInput = 2,
    CapExceeded = 3,
    VerificationFailed = 4,
}

/// Opaque CSP instance handle.
pub struct DihpLabInstance {
    inner: Instance,
}

std::thread_local! {
    static LAST_ERROR: std::cell::RefCell<CString> =
        std::cell::RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> DihpLabStatus {
    match err {
        Error::CapExceeded { .. } => DihpLabStatus::CapExceeded,
        Error::Structural(_) | Error::Io(_) => DihpLabStatus::InternalError,
        _ => DihpLabStatus::InvalidInput,
    }
}

fn write_string(out: *mut *mut c_char, value: String) -> DihpLabStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return DihpLabStatus::InvalidInput;
    }
    match CString::new(value) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            DihpLabStatus::Ok
        }
        Err(_) => {
            set_error("result contained an interior nul byte");
            DihpLabStatus::InternalError
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, DihpLabStatus> {
    if ptr.is_null() {
        set_error(&format!("{what} pointer is null"));
        return Err(DihpLabStatus::InvalidInput);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        DihpLabStatus::InvalidInput
    })
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn dihp_lab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message describing the most recent error on this thread; valid until the
/// next failing call. Do not free.
#[no_mangle]
pub extern "C" fn dihp_lab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned through an `out` parameter.
///
/// # Safety
/// `s` must be a pointer previously returned by this library and not yet
/// freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn dihp_lab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an instance from its JSON document into an opaque handle.
///
/// # Safety
/// `json` must be a valid nul-terminated string; `out` must be a valid
/// pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn dihp_lab_instance_parse(
    json: *const c_char,
    out: *mut *mut DihpLabInstance,
) -> DihpLabStatus {
    let json = match read_str(json, "instance json") {
        Ok(s) => s,
        Err(code) => return code,
    };
    if out.is_null() {
        set_error("output pointer is null");
        return DihpLabStatus::InvalidInput;
    }
    match dihp_lab::csp::instance_from_json(json) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(DihpLabInstance { inner }));
            DihpLabStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Releases an instance handle.
///
/// # Safety
/// `h` must come from [`dihp_lab_instance_parse`] and not be freed twice;
/// null is ignored.
#[no_mangle]
pub unsafe extern "C" fn dihp_lab_instance_free(h: *mut DihpLabInstance) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Computes `{instance_hash, val, val_lp, ratio}` as a JSON string with exact
/// `p/q` rationals.
///
/// # Safety
/// `h` must be a live handle; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dihp_lab_lp_report(
    h: *const DihpLabInstance,
    out_json: *mut *mut c_char,
) -> DihpLabStatus {
    if h.is_null() {
        set_error("instance handle is null");
        return DihpLabStatus::InvalidInput;
    }
    let inst = &(*h).inner;
    let caps = Caps::default();
    let result = (|| -> dihp_lab::Result<String> {
        let val = dihp_lab::csp::max_value(inst, &caps)?;
        let lp = dihp_lab::lp::lp_value(inst)?;
        let ratio = &val / &lp;
        Ok(serde_json::json!({
            "instance_hash": inst.content_hash_hex(),
            "val": rat_to_string(&val),
            "val_lp": rat_to_string(&lp),
            "ratio": rat_to_string(&ratio),
        })
        .to_string())
    })();
    match result {
        Ok(json) => write_string(out_json, json),
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Builds the communication game from the instance (canonical one-wise
/// solution when it exists, LP optimum otherwise) and measures a protocol's
/// advantage. `protocol` is one of `constant`, `echo`, `cycle-consistency`,
/// `full-information`; `exact_mode != 0` enumerates instead of sampling. The
/// result is an experiment-record JSON string.
///
/// # Safety
/// `h`, `protocol`, and `out_json` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dihp_lab_game_advantage(
    h: *const DihpLabInstance,
    n: u32,
    alpha_num: u64,
    alpha_den: u64,
    players_per_edge: u32,
    protocol: *const c_char,
    exact_mode: i32,
    trials: u64,
    seed: u64,
    out_json: *mut *mut c_char,
) -> DihpLabStatus {
    if h.is_null() {
        set_error("instance handle is null");
        return DihpLabStatus::InvalidInput;
    }
    let protocol = match read_str(protocol, "protocol name") {
        Ok(s) => s,
        Err(code) => return code,
    };
    if alpha_den == 0 {
        set_error("alpha denominator is zero");
        return DihpLabStatus::InvalidInput;
    }
    let inst = &(*h).inner;
    let caps = Caps::default();
    let result = (|| -> dihp_lab::Result<String> {
        let alpha = dihp_lab::ratio::rat(alpha_num as i64, alpha_den as i64);
        let sol = match dihp_lab::lp::canonical_value1_solution(
            inst,
            dihp_lab::csp::IndependenceOrder::One,
        )? {
            Some(s) => s,
            None => dihp_lab::lp::solve_basic_lp(inst)?,
        };
        let graph = dihp_lab::blowup::reduce_to_graph(inst, &sol)?;
        let spec = Arc::new(GameSpec::new(graph, n as usize, alpha, players_per_edge as usize)?);
        let proto: Box<dyn Protocol> = match protocol {
            "constant" => Box::new(ConstantProtocol { value: true }),
            "echo" => Box::new(EchoProtocol),
            "cycle-consistency" => {
                Box::new(CycleConsistencyProtocol::new(Arc::clone(&spec), caps.component_solver))
            }
            "full-information" => Box::new(FullInformationProtocol::new(Arc::clone(&spec))),
            other => return Err(Error::Domain(format!("unknown protocol `{other}`"))),
        };
        let mode = if exact_mode != 0 {
            AdvantageMode::Exact
        } else {
            AdvantageMode::MonteCarlo { trials, seed }
        };
        let outcome = advantage(proto.as_ref(), &spec, mode, &caps)?;
        let record = ExperimentRecord {
            spec_hash: spec.spec_hash_hex(),
            protocol_name: proto.name().to_string(),
            mode: if exact_mode != 0 { "exact".into() } else { "mc".into() },
            trials: outcome.trials,
            estimate: outcome.estimate,
            ci_low: outcome.ci_low,
            ci_high: outcome.ci_high,
            seed,
        };
        Ok(record.to_json())
    })();
    match result {
        Ok(json) => write_string(out_json, json),
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}

/// Runs a verification suite (`fourier`, `kernels`, `rectangles`,
/// `combinatorics`, or `all`) and returns its manifest JSON. Returns
/// `VerificationFailed` when any check fails; the manifest is still written.
///
/// # Safety
/// `suite` and `out_json` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dihp_lab_verify(
    suite: *const c_char,
    seed: u64,
    out_json: *mut *mut c_char,
) -> DihpLabStatus {
    let suite = match read_str(suite, "suite name") {
        Ok(s) => s,
        Err(code) => return code,
    };
    match dihp_lab::suites::run_suite(suite, seed, &Caps::default()) {
        Ok(manifest) => {
            let all_pass = manifest.all_pass();
            let code = write_string(out_json, manifest.to_json());
            if code != DihpLabStatus::Ok {
                return code;
            }
            if all_pass {
                DihpLabStatus::Ok
            } else {
                set_error("one or more verification checks failed");
                DihpLabStatus::VerificationFailed
            }
        }
        Err(e) => {
            set_error(&e.to_string());
            status_of(&e)
        }
    }
}
