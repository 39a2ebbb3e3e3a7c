//! Small reference nets used across the toolkit: a history-deterministic
//! net whose resolver depends on the counter, two canonical
//! non-history-deterministic nets, and the minimal suit-fork net.
//!
//! Each constructor documents the accepted language; the test suite checks
//! the nets against independent membership predicates on all short words.

use crate::net_model::{Ocn, Transition};

/// A history-deterministic net over `{a, b, $}` accepting
///
/// ```text
/// L = { a^n $ b^{n1} $ ... b^{nk} $ :  sum(ni) <= n,
///                                      or (nk = 2 and sum(n1..n(k-1)) = n - 1) }
/// ```
///
/// The only nondeterminism sits at `q1` on `b`: the `down` branch (to `m`)
/// keeps tracking the budget, the `right` branch (to `r1`) commits to the
/// word ending after at most one more block of the shape `b$` or `b b $`.
/// A resolver exists and is counter-based: take `down` when the counter is
/// strictly above 1, `right` otherwise.
pub fn hd_threshold_net() -> Ocn {
    Ocn::new(
        &["q0", "q1", "m", "r1", "r2", "r3"],
        &["a", "b", "$"],
        "q0",
        &["q1", "r3"],
        vec![
            Transition::new("q0", "a", 1, "q0"),
            Transition::new("q0", "$", 0, "q1"),
            Transition::new("q1", "$", 0, "q1"),
            Transition::new("q1", "b", -1, "m"),
            Transition::new("q1", "b", -1, "r1"),
            Transition::new("m", "b", -1, "m"),
            Transition::new("m", "$", 0, "q1"),
            Transition::new("r1", "b", 0, "r2"),
            Transition::new("r1", "$", 0, "q1"),
            Transition::new("r2", "$", 0, "r3"),
        ],
    )
}

/// The two nondeterministic `b`-transitions of [`hd_threshold_net`]:
/// `(down, right)` in canonical order.
pub fn hd_threshold_fork() -> (Transition, Transition) {
    (
        Transition::new("q1", "b", -1, "m"),
        Transition::new("q1", "b", -1, "r1"),
    )
}

/// A non-history-deterministic net over `{a, b, $, heart, club}` accepting
/// `{ a^n $ b^k $ s : k <= n, s in {heart, club} }`.
///
/// The `b` loop tracks the block length modulo 7 in its state. After a
/// number of `b`s that is not a multiple of 7, `$` reaches the state `qd`,
/// which handles both suits; after a multiple of 7 it reaches the blind
/// fork `qh`/`qc`, each of which survives only one suit. The language is
/// suit-symmetric either way, but no resolver can pick the fork branch
/// before the suit is revealed.
pub fn mod7_fork_net() -> Ocn {
    let mut transitions = vec![
        Transition::new("q0", "a", 1, "q0"),
        Transition::new("q0", "$", 0, "b0"),
        Transition::new("b0", "$", 0, "qh"),
        Transition::new("b0", "$", 0, "qc"),
        Transition::new("qd", "heart", 0, "qf"),
        Transition::new("qd", "club", 0, "qf"),
        Transition::new("qh", "heart", 0, "qf"),
        Transition::new("qc", "club", 0, "qf"),
    ];
    let mut states = vec![
        "q0".to_string(),
        "qd".to_string(),
        "qh".to_string(),
        "qc".to_string(),
        "qf".to_string(),
    ];
    for i in 0..7u32 {
        states.push(format!("b{i}"));
        transitions.push(Transition::new(
            &format!("b{i}"),
            "b",
            -1,
            &format!("b{}", (i + 6) % 7),
        ));
        if i != 0 {
            transitions.push(Transition::new(&format!("b{i}"), "$", 0, "qd"));
        }
    }
    let state_refs: Vec<&str> = states.iter().map(|s| s.as_str()).collect();
    Ocn::new(
        &state_refs,
        &["a", "b", "$", "heart", "club"],
        "q0",
        &["qf"],
        transitions,
    )
}

/// A net over `{a, b, $}` accepting
/// `{ a^i $ b^j $ b^k : j <= i or k <= i }`, which no
/// history-deterministic net accepts: at the first `$` the run must commit
/// to checking either `j <= i` or `k <= i` before `j` and `k` are known.
pub fn two_budget_net() -> Ocn {
    Ocn::new(
        &["q0", "jchk", "jfree", "kfree", "kchk"],
        &["a", "b", "$"],
        "q0",
        &["jfree", "kchk"],
        vec![
            Transition::new("q0", "a", 1, "q0"),
            Transition::new("q0", "$", 0, "jchk"),
            Transition::new("q0", "$", 0, "kfree"),
            Transition::new("jchk", "b", -1, "jchk"),
            Transition::new("jchk", "$", 0, "jfree"),
            Transition::new("jfree", "b", 0, "jfree"),
            Transition::new("kfree", "b", 0, "kfree"),
            Transition::new("kfree", "$", 0, "kchk"),
            Transition::new("kchk", "b", -1, "kchk"),
        ],
    )
}

/// The minimal blind fork over `{$, heart, club}` accepting
/// `{ $ heart, $ club }`: one state with two `$`-successors, one of which
/// accepts only `heart` and the other only `club`. Not
/// history-deterministic.
pub fn suit_fork_net() -> Ocn {
    Ocn::new(
        &["q0", "qh", "qc", "qf"],
        &["$", "heart", "club"],
        "q0",
        &["qf"],
        vec![
            Transition::new("q0", "$", 0, "qh"),
            Transition::new("q0", "$", 0, "qc"),
            Transition::new("qh", "heart", 0, "qf"),
            Transition::new("qc", "club", 0, "qf"),
        ],
    )
}
