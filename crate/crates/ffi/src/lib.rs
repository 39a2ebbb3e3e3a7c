//! C ABI for the ocnkit toolkit.
//!
//! Conventions:
//! - Nets are opaque handles (`OcnkitNet`) created from the text format
//!   and destroyed with `ocnkit_net_free`.
//! - Every fallible call returns an `ocnkit_status` error code; result
//!   values come back through out-parameters.
//! - Verdicts are tri-state: positive, negative, inconclusive.
//! - Strings returned by the library are heap-allocated and must be
//!   released with `ocnkit_string_free`.
//!
//! The matching declarations live in `include/ocnkit.h`.

use libc::{c_char, c_int, size_t};
use ocnkit::game_engine::Outcome;
use ocnkit::hd_decision::{
    is_history_deterministic, is_history_deterministic_succinct, letter_game_refuter,
};
use ocnkit::lang_ops::{hd_equivalence, hd_inclusion, universality};
use ocnkit::net_model::{expand_binary, Config, NetError, Ocn, DEFAULT_DELTA_LIMIT};
use ocnkit::sim_solver::{simulates, SimQuery};
use ocnkit::textfmt::{emit_net, parse_net, NetFile};
use std::ffi::{CStr, CString};

/// Status codes; 0 is success.
pub const OCNKIT_OK: c_int = 0;
pub const OCNKIT_ERR_NULL_ARGUMENT: c_int = 1;
pub const OCNKIT_ERR_INVALID_UTF8: c_int = 2;
pub const OCNKIT_ERR_PARSE: c_int = 3;
pub const OCNKIT_ERR_INVALID_INPUT: c_int = 4;
pub const OCNKIT_ERR_WRONG_KIND: c_int = 5;

/// Tri-state verdicts.
pub const OCNKIT_VERDICT_NEGATIVE: c_int = 0;
pub const OCNKIT_VERDICT_POSITIVE: c_int = 1;
pub const OCNKIT_VERDICT_INCONCLUSIVE: c_int = 2;

/// Opaque net handle: any parsed input file (unary net, succinct net, or
/// guarded automaton).
pub struct OcnkitNet {
    file: NetFile,
}

impl OcnkitNet {
    fn unary(&self) -> Result<Ocn, c_int> {
        match &self.file {
            NetFile::Ocn(n) => Ok(n.clone()),
            NetFile::Socn(s) => {
                expand_binary(s, DEFAULT_DELTA_LIMIT).map_err(|_| OCNKIT_ERR_WRONG_KIND)
            }
            NetFile::Oca(_) => Err(OCNKIT_ERR_WRONG_KIND),
        }
    }
}

fn verdict_code(outcome: Outcome) -> c_int {
    match outcome {
        Outcome::EveWins => OCNKIT_VERDICT_POSITIVE,
        Outcome::AdamWins => OCNKIT_VERDICT_NEGATIVE,
        Outcome::Inconclusive => OCNKIT_VERDICT_INCONCLUSIVE,
    }
}

fn error_code(_e: &NetError) -> c_int {
    OCNKIT_ERR_INVALID_INPUT
}

/// # Safety
/// `ptr` must be NULL or a pointer previously returned by this library's
/// string-producing functions.
#[no_mangle]
pub unsafe extern "C" fn ocnkit_string_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        drop(CString::from_raw(ptr));
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, c_int> {
    if ptr.is_null() {
        return Err(OCNKIT_ERR_NULL_ARGUMENT);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| OCNKIT_ERR_INVALID_UTF8)
}

fn give_string(s: String, out: *mut *mut c_char) {
    if out.is_null() {
        return;
    }
    let c = CString::new(s.replace('\0', "")).expect("no interior NUL after replacement");
    unsafe { *out = c.into_raw() };
}

/// Parses a net from its text form.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
/// On success `*out` owns the net and must be freed with
/// `ocnkit_net_free`. On failure `*out_error` (when non-NULL) receives a
/// diagnostic string.
#[no_mangle]
pub unsafe extern "C" fn ocnkit_net_parse(
    text: *const c_char,
    out: *mut *mut OcnkitNet,
    out_error: *mut *mut c_char,
) -> c_int {
    if out.is_null() {
        return OCNKIT_ERR_NULL_ARGUMENT;
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(c) => return c,
    };
    match parse_net(text) {
        Ok(file) => {
            *out = Box::into_raw(Box::new(OcnkitNet { file }));
            OCNKIT_OK
        }
        Err(e) => {
            give_string(format!("line {}: {}", e.line, e.msg), out_error);
            OCNKIT_ERR_PARSE
        }
    }
}

/// # Safety
/// `net` must be NULL or a handle from `ocnkit_net_parse`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ocnkit_net_free(net: *mut OcnkitNet) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Writes the canonical text form of the net to `*out_text`.
///
/// # Safety
/// `net` must be a live handle; `out_text` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ocnkit_net_emit(
    net: *const OcnkitNet,
    out_text: *mut *mut c_char,
) -> c_int {
    if net.is_null() || out_text.is_null() {
        return OCNKIT_ERR_NULL_ARGUMENT;
    }
    give_string(emit_net(&(*net).file), out_text);
    OCNKIT_OK
}

/// Kind of the parsed input: "ocn", "socn", or "oca".
///
/// # Safety
/// `net` must be a live handle; `out_kind` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ocnkit_net_kind(
    net: *const OcnkitNet,
    out_kind: *mut *mut c_char,
) -> c_int {
    if net.is_null() || out_kind.is_null() {
        return OCNKIT_ERR_NULL_ARGUMENT;
    }
    give_string((*net).file.kind().to_string(), out_kind);
    OCNKIT_OK
}

/// Decides history-determinism. `caps`/`caps_len` select the counter-cap
/// schedule; pass NULL/0 for the default. On a negative verdict with
/// `out_witness` non-NULL, a textual adversary witness is returned when
/// the bounded refuter finds one.
///
/// # Safety
/// `net` must be a live handle; `caps` must point to `caps_len` values or
/// be NULL; out-pointers must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn ocnkit_check_hd(
    net: *const OcnkitNet,
    caps: *const u64,
    caps_len: size_t,
    out_verdict: *mut c_int,
    out_witness: *mut *mut c_char,
) -> c_int {
    if net.is_null() || out_verdict.is_null() {
        return OCNKIT_ERR_NULL_ARGUMENT;
    }
    let caps_vec: Option<Vec<u64>> = if caps.is_null() || caps_len == 0 {
        None
    } else {
        Some(std::slice::from_raw_parts(caps, caps_len).to_vec())
    };
    let caps_ref = caps_vec.as_deref();
    let (result, unary) = match &(*net).file {
        NetFile::Ocn(n) => (is_history_deterministic(n, caps_ref), Some(n.clone())),
        NetFile::Socn(s) => (
            is_history_deterministic_succinct(s, caps_ref),
            expand_binary(s, DEFAULT_DELTA_LIMIT).ok(),
        ),
        NetFile::Oca(_) => return OCNKIT_ERR_WRONG_KIND,
    };
    let verdict = match result {
        Ok(v) => v,
        Err(e) => return error_code(&e),
    };
    *out_verdict = verdict_code(verdict.outcome);
    if verdict.outcome == Outcome::AdamWins && !out_witness.is_null() {
        if let Some(n) = &unary {
            if let Some(w) = letter_game_refuter(n, 8, 12) {
                give_string(w.render(), out_witness);
            }
        }
    }
    OCNKIT_OK
}

/// Exact word membership. The word is a NUL-terminated string of letters
/// separated by spaces; the empty string is the empty word.
///
/// # Safety
/// `net` must be a live handle; `word` a NUL-terminated string;
/// `out_member` valid.
#[no_mangle]
pub unsafe extern "C" fn ocnkit_member(
    net: *const OcnkitNet,
    word: *const c_char,
    out_member: *mut c_int,
) -> c_int {
    if net.is_null() || out_member.is_null() {
        return OCNKIT_ERR_NULL_ARGUMENT;
    }
    let raw = match read_str(word) {
        Ok(w) => w,
        Err(c) => return c,
    };
    let letters: Vec<String> = raw.split_whitespace().map(|s| s.to_string()).collect();
    let alphabet = match &(*net).file {
        NetFile::Ocn(n) => &n.alphabet,
        NetFile::Socn(s) => &s.0.alphabet,
        NetFile::Oca(a) => &a.alphabet,
    };
    if letters.iter().any(|l| !alphabet.contains(l)) {
        return OCNKIT_ERR_INVALID_INPUT;
    }
    let member = match &(*net).file {
        NetFile::Ocn(n) => n.accepts(&letters),
        NetFile::Socn(s) => s.accepts(&letters),
        NetFile::Oca(a) => a.accepts(&letters),
    };
    *out_member = member as c_int;
    OCNKIT_OK
}

type TwoNetOp =
    fn(&Ocn, &Ocn, Option<&[u64]>) -> Result<ocnkit::game_engine::CappedVerdict, NetError>;

unsafe fn two_net_verdict(
    a: *const OcnkitNet,
    b: *const OcnkitNet,
    out_verdict: *mut c_int,
    op: TwoNetOp,
) -> c_int {
    if a.is_null() || b.is_null() || out_verdict.is_null() {
        return OCNKIT_ERR_NULL_ARGUMENT;
    }
    let left = match (*a).unary() {
        Ok(n) => n,
        Err(c) => return c,
    };
    let right = match (*b).unary() {
        Ok(n) => n,
        Err(c) => return c,
    };
    match op(&left, &right, None) {
        Ok(v) => {
            *out_verdict = verdict_code(v.outcome);
            OCNKIT_OK
        }
        Err(e) => error_code(&e),
    }
}

/// Language inclusion of two history-deterministic nets.
///
/// # Safety
/// `a`, `b` must be live handles; `out_verdict` valid.
#[no_mangle]
pub unsafe extern "C" fn ocnkit_include(
    a: *const OcnkitNet,
    b: *const OcnkitNet,
    out_verdict: *mut c_int,
) -> c_int {
    two_net_verdict(a, b, out_verdict, hd_inclusion)
}

/// Language equivalence of two history-deterministic nets.
///
/// # Safety
/// `a`, `b` must be live handles; `out_verdict` valid.
#[no_mangle]
pub unsafe extern "C" fn ocnkit_equiv(
    a: *const OcnkitNet,
    b: *const OcnkitNet,
    out_verdict: *mut c_int,
) -> c_int {
    two_net_verdict(a, b, out_verdict, hd_equivalence)
}

/// Universality of a history-deterministic net.
///
/// # Safety
/// `net` must be a live handle; `out_verdict` valid.
#[no_mangle]
pub unsafe extern "C" fn ocnkit_universal(
    net: *const OcnkitNet,
    out_verdict: *mut c_int,
) -> c_int {
    if net.is_null() || out_verdict.is_null() {
        return OCNKIT_ERR_NULL_ARGUMENT;
    }
    let n = match (*net).unary() {
        Ok(n) => n,
        Err(c) => return c,
    };
    match universality(&n, None) {
        Ok(v) => {
            *out_verdict = verdict_code(v.outcome);
            OCNKIT_OK
        }
        Err(e) => error_code(&e),
    }
}

/// Does configuration (`state_a`, `counter_a`) of net `a` get simulated
/// by (`state_b`, `counter_b`) of net `b`?
///
/// # Safety
/// `a`, `b` must be live handles; states NUL-terminated; `out_verdict`
/// valid.
#[no_mangle]
pub unsafe extern "C" fn ocnkit_simulates(
    a: *const OcnkitNet,
    state_a: *const c_char,
    counter_a: u64,
    b: *const OcnkitNet,
    state_b: *const c_char,
    counter_b: u64,
    out_verdict: *mut c_int,
) -> c_int {
    if a.is_null() || b.is_null() || out_verdict.is_null() {
        return OCNKIT_ERR_NULL_ARGUMENT;
    }
    let left = match (*a).unary() {
        Ok(n) => n,
        Err(c) => return c,
    };
    let right = match (*b).unary() {
        Ok(n) => n,
        Err(c) => return c,
    };
    let sa = match read_str(state_a) {
        Ok(s) => s,
        Err(c) => return c,
    };
    let sb = match read_str(state_b) {
        Ok(s) => s,
        Err(c) => return c,
    };
    if !left.states.contains(sa) || !right.states.contains(sb) {
        return OCNKIT_ERR_INVALID_INPUT;
    }
    let q = SimQuery::new(&left, Config::new(sa, counter_a), &right, Config::new(sb, counter_b));
    match simulates(&q, None) {
        Ok(v) => {
            *out_verdict = verdict_code(v.outcome);
            OCNKIT_OK
        }
        Err(e) => error_code(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    fn parse_ok(text: &str) -> *mut OcnkitNet {
        let mut net: *mut OcnkitNet = ptr::null_mut();
        let mut err: *mut c_char = ptr::null_mut();
        let code = unsafe { ocnkit_net_parse(c(text).as_ptr(), &mut net, &mut err) };
        assert_eq!(code, OCNKIT_OK);
        assert!(err.is_null());
        net
    }

    const DET_NET: &str = "ocn\nalphabet a\nstate q0 init final\ntrans q0 a +1 q0\n";
    const FORK_NET: &str = "ocn\nalphabet a b c\nstate q0 init\nstate l\nstate r\nstate lf final\nstate rf final\ntrans q0 a +0 l\ntrans q0 a +0 r\ntrans l b +0 lf\ntrans r c +0 rf\n";

    #[test]
    fn parse_emit_round_trip() {
        let net = parse_ok(DET_NET);
        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { ocnkit_net_emit(net, &mut text) }, OCNKIT_OK);
        let emitted = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_string();
        unsafe { ocnkit_string_free(text) };
        let again = parse_ok(&emitted);
        let mut kind: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { ocnkit_net_kind(again, &mut kind) }, OCNKIT_OK);
        assert_eq!(unsafe { CStr::from_ptr(kind) }.to_str().unwrap(), "ocn");
        unsafe {
            ocnkit_string_free(kind);
            ocnkit_net_free(net);
            ocnkit_net_free(again);
        }
    }

    #[test]
    fn parse_error_reports_line() {
        let mut net: *mut OcnkitNet = ptr::null_mut();
        let mut err: *mut c_char = ptr::null_mut();
        let code = unsafe { ocnkit_net_parse(c("ocn\nbogus line\n").as_ptr(), &mut net, &mut err) };
        assert_eq!(code, OCNKIT_ERR_PARSE);
        assert!(net.is_null());
        let msg = unsafe { CStr::from_ptr(err) }.to_str().unwrap().to_string();
        assert!(msg.starts_with("line 2:"), "{msg}");
        unsafe { ocnkit_string_free(err) };
    }

    #[test]
    fn check_hd_verdicts() {
        let det = parse_ok(DET_NET);
        let mut v: c_int = -1;
        assert_eq!(
            unsafe { ocnkit_check_hd(det, ptr::null(), 0, &mut v, ptr::null_mut()) },
            OCNKIT_OK
        );
        assert_eq!(v, OCNKIT_VERDICT_POSITIVE);

        let fork = parse_ok(FORK_NET);
        let mut w: *mut c_char = ptr::null_mut();
        assert_eq!(unsafe { ocnkit_check_hd(fork, ptr::null(), 0, &mut v, &mut w) }, OCNKIT_OK);
        assert_eq!(v, OCNKIT_VERDICT_NEGATIVE);
        assert!(!w.is_null());
        let witness = unsafe { CStr::from_ptr(w) }.to_str().unwrap().to_string();
        assert!(witness.contains("letter"), "{witness}");
        unsafe {
            ocnkit_string_free(w);
            ocnkit_net_free(det);
            ocnkit_net_free(fork);
        }
    }

    #[test]
    fn membership_and_bad_letters() {
        let net = parse_ok(DET_NET);
        let mut m: c_int = -1;
        assert_eq!(unsafe { ocnkit_member(net, c("a a").as_ptr(), &mut m) }, OCNKIT_OK);
        assert_eq!(m, 1);
        assert_eq!(unsafe { ocnkit_member(net, c("").as_ptr(), &mut m) }, OCNKIT_OK);
        assert_eq!(m, 1);
        assert_eq!(
            unsafe { ocnkit_member(net, c("z").as_ptr(), &mut m) },
            OCNKIT_ERR_INVALID_INPUT
        );
        unsafe { ocnkit_net_free(net) };
    }

    #[test]
    fn inclusion_and_universality() {
        let det = parse_ok(DET_NET);
        let mut v: c_int = -1;
        assert_eq!(unsafe { ocnkit_include(det, det, &mut v) }, OCNKIT_OK);
        assert_eq!(v, OCNKIT_VERDICT_POSITIVE);
        assert_eq!(unsafe { ocnkit_universal(det, &mut v) }, OCNKIT_OK);
        assert_eq!(v, OCNKIT_VERDICT_POSITIVE);
        unsafe { ocnkit_net_free(det) };
    }

    #[test]
    fn simulation_and_null_checks() {
        let det = parse_ok(DET_NET);
        let mut v: c_int = -1;
        assert_eq!(
            unsafe {
                ocnkit_simulates(det, c("q0").as_ptr(), 0, det, c("q0").as_ptr(), 0, &mut v)
            },
            OCNKIT_OK
        );
        assert_eq!(v, OCNKIT_VERDICT_POSITIVE);
        assert_eq!(
            unsafe {
                ocnkit_simulates(det, c("nope").as_ptr(), 0, det, c("q0").as_ptr(), 0, &mut v)
            },
            OCNKIT_ERR_INVALID_INPUT
        );
        assert_eq!(
            unsafe { ocnkit_check_hd(ptr::null(), ptr::null(), 0, ptr::null_mut(), ptr::null_mut()) },
            OCNKIT_ERR_NULL_ARGUMENT
        );
        unsafe { ocnkit_net_free(det) };
    }

    #[test]
    fn oca_inputs_are_rejected_where_undecidable() {
        let net = parse_ok("oca\nalphabet a\nstate q0 init final\ntrans q0 zero a +1 q0\ntrans q0 nonzero a +1 q0\n");
        let mut v: c_int = -1;
        assert_eq!(
            unsafe { ocnkit_check_hd(net, ptr::null(), 0, &mut v, ptr::null_mut()) },
            OCNKIT_ERR_WRONG_KIND
        );
        unsafe { ocnkit_net_free(net) };
    }
}
