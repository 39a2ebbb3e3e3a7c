//! Language inclusion, equivalence, and universality for
//! history-deterministic nets.
//!
//! Inclusion reduces to history-determinism of a fork gadget: a fresh
//! initial state branches on a fresh letter to both nets, the right-hand
//! net pre-augmented with one extra accepted word so that inclusion is
//! always strict. A resolver for the gadget must commit to the inclusive
//! side at the fork, and can win from there exactly when inclusion holds.
//! Universality reduces to the right-hand net simulating the one-state
//! all-accepting automaton; for history-deterministic nets simulation and
//! inclusion coincide.

use crate::game_engine::{CappedVerdict, Outcome};
use crate::hd_decision::is_history_deterministic;
use crate::net_model::{NetError, Ocn, Transition, LETTER_CAT, LETTER_HEART};
use crate::sim_solver::{simulates, SimQuery};
use std::collections::BTreeSet;

/// Adds a fresh letter and a fresh final state reachable from the initial
/// state by one 0-delta transition on it: the language grows by exactly
/// that one-letter word, and history-determinism is preserved (the new
/// transition is the only option on the new letter).
pub fn augment_with_cat(net: &Ocn) -> Result<Ocn, NetError> {
    if net.alphabet.contains(LETTER_CAT) {
        return Err(NetError::ReservedLetter(LETTER_CAT.to_string()));
    }
    let q_star = net.fresh_state("extra");
    let mut out = net.clone();
    out.states.insert(q_star.clone());
    out.alphabet.insert(LETTER_CAT.to_string());
    out.transitions
        .insert(Transition::new(&net.initial, LETTER_CAT, 0, &q_star));
    out.finals.insert(q_star);
    Ok(out)
}

fn prefixed(net: &Ocn, prefix: &str) -> Ocn {
    let ren = |s: &str| format!("{prefix}.{s}");
    Ocn {
        states: net.states.iter().map(|s| ren(s)).collect(),
        alphabet: net.alphabet.clone(),
        initial: ren(&net.initial),
        finals: net.finals.iter().map(|s| ren(s)).collect(),
        transitions: net
            .transitions
            .iter()
            .map(|t| Transition::new(&ren(&t.source), &t.letter, t.delta, &ren(&t.target)))
            .collect(),
    }
}

/// Builds the inclusion gadget for two nets over the same alphabet: a
/// fresh initial state with two 0-delta transitions on a fresh fork
/// letter, one to each net, where the right-hand net is first augmented
/// by [`augment_with_cat`]. For history-deterministic inputs the gadget
/// is history-deterministic iff the left language is included in the
/// right one.
pub fn inclusion_gadget(left: &Ocn, right: &Ocn) -> Result<Ocn, NetError> {
    if left.alphabet != right.alphabet {
        return Err(NetError::AlphabetMismatch(
            "inclusion requires both nets over the same alphabet".to_string(),
        ));
    }
    for l in [LETTER_HEART, LETTER_CAT] {
        if left.alphabet.contains(l) {
            return Err(NetError::ReservedLetter(l.to_string()));
        }
    }
    let a = prefixed(left, "L");
    let b = prefixed(&augment_with_cat(right)?, "R");
    let init = "fork".to_string();
    let mut states: BTreeSet<String> = &a.states | &b.states;
    states.insert(init.clone());
    let mut alphabet = b.alphabet.clone();
    alphabet.insert(LETTER_HEART.to_string());
    let mut transitions: BTreeSet<Transition> = &a.transitions | &b.transitions;
    transitions.insert(Transition::new(&init, LETTER_HEART, 0, &a.initial));
    transitions.insert(Transition::new(&init, LETTER_HEART, 0, &b.initial));
    Ok(Ocn {
        states,
        alphabet,
        initial: init,
        finals: &a.finals | &b.finals,
        transitions,
    })
}

fn require_hd(net: &Ocn, name: &str, caps: Option<&[u64]>) -> Result<Option<CappedVerdict>, NetError> {
    let v = is_history_deterministic(net, caps)?;
    match v.outcome {
        Outcome::EveWins => Ok(None),
        Outcome::AdamWins => Err(NetError::NotHd(name.to_string())),
        Outcome::Inconclusive => Ok(Some(v)),
    }
}

/// Decides `L(left) ⊆ L(right)` for history-deterministic nets: both
/// inputs are HD-verified first (a refuted input is an error, an
/// inconclusive check is propagated), then history-determinism of the
/// inclusion gadget gives the answer. `EveWins` means included.
pub fn hd_inclusion(left: &Ocn, right: &Ocn, caps: Option<&[u64]>) -> Result<CappedVerdict, NetError> {
    if let Some(v) = require_hd(left, "left", caps)? {
        return Ok(v);
    }
    if let Some(v) = require_hd(right, "right", caps)? {
        return Ok(v);
    }
    is_history_deterministic(&inclusion_gadget(left, right)?, caps)
}

/// Decides language equivalence of two history-deterministic nets as
/// inclusion in both directions; a refuting direction wins, otherwise
/// any inconclusive direction is propagated.
pub fn hd_equivalence(left: &Ocn, right: &Ocn, caps: Option<&[u64]>) -> Result<CappedVerdict, NetError> {
    let fwd = hd_inclusion(left, right, caps)?;
    if fwd.outcome != Outcome::EveWins {
        return Ok(fwd);
    }
    hd_inclusion(right, left, caps)
}

/// The one-state complete all-accepting automaton over `alphabet`, as a
/// 0-delta net.
pub fn universal_acceptor(alphabet: &BTreeSet<String>) -> Ocn {
    let letters: Vec<&str> = alphabet.iter().map(|s| s.as_str()).collect();
    let transitions = letters
        .iter()
        .map(|l| Transition::new("u", l, 0, "u"))
        .collect();
    Ocn::new(&["u"], &letters, "u", &["u"], transitions)
}

/// Decides universality of a history-deterministic net: `net` is
/// universal iff it simulates the one-state all-accepting automaton.
/// Without the history-determinism precondition only one direction holds:
/// `EveWins` (simulation) still implies universality; `AdamWins` refutes
/// universality only for history-deterministic inputs.
pub fn universality(net: &Ocn, caps: Option<&[u64]>) -> Result<CappedVerdict, NetError> {
    let fa = universal_acceptor(&net.alphabet);
    simulates(&SimQuery::initial(&fa, net, 0), caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::hd_threshold_net;
    use crate::net_model::words_up_to;

    fn a_star_net() -> Ocn {
        // Accepts a* over {a,b}: b leads to a rejecting sink.
        Ocn::new(
            &["q0", "dead"],
            &["a", "b"],
            "q0",
            &["q0"],
            vec![
                Transition::new("q0", "a", 0, "q0"),
                Transition::new("q0", "b", 0, "dead"),
                Transition::new("dead", "a", 0, "dead"),
                Transition::new("dead", "b", 0, "dead"),
            ],
        )
    }

    fn sigma_star_net() -> Ocn {
        Ocn::new(
            &["q0"],
            &["a", "b"],
            "q0",
            &["q0"],
            vec![
                Transition::new("q0", "a", 0, "q0"),
                Transition::new("q0", "b", 0, "q0"),
            ],
        )
    }

    fn empty_lang_net() -> Ocn {
        Ocn::new(
            &["q0"],
            &["a", "b"],
            "q0",
            &[],
            vec![
                Transition::new("q0", "a", 0, "q0"),
                Transition::new("q0", "b", 0, "q0"),
            ],
        )
    }

    fn epsilon_only_net() -> Ocn {
        Ocn::new(
            &["q0", "dead"],
            &["a", "b"],
            "q0",
            &["q0"],
            vec![
                Transition::new("q0", "a", 0, "dead"),
                Transition::new("q0", "b", 0, "dead"),
                Transition::new("dead", "a", 0, "dead"),
                Transition::new("dead", "b", 0, "dead"),
            ],
        )
    }

    #[test]
    fn cat_augmentation_adds_exactly_one_word() {
        let net = hd_threshold_net();
        let aug = augment_with_cat(&net).unwrap();
        // Over the original alphabet nothing changes.
        for w in words_up_to(&net.alphabet, 6) {
            assert_eq!(net.accepts(&w), aug.accepts(&w), "word {w:?}");
        }
        // The fresh one-letter word is accepted, and the fresh letter can
        // only ever end a word (its target is a fresh dead final state).
        assert!(aug.accepts(&[LETTER_CAT.to_string()]));
        assert!(!aug.accepts(&[LETTER_CAT.to_string(), LETTER_CAT.to_string()]));
        assert!(!aug.accepts(&[LETTER_CAT.to_string(), "a".to_string()]));
    }

    #[test]
    fn cat_augmentation_preserves_hd() {
        use crate::hd_decision::is_history_deterministic;
        for net in [hd_threshold_net(), a_star_net(), sigma_star_net(), empty_lang_net()] {
            let aug = augment_with_cat(&net).unwrap();
            assert_eq!(
                is_history_deterministic(&aug, None).unwrap().outcome,
                Outcome::EveWins
            );
        }
    }

    #[test]
    fn cat_augmentation_rejects_reserved_collision() {
        let mut net = sigma_star_net();
        net.alphabet.insert(LETTER_CAT.to_string());
        net.transitions.insert(Transition::new("q0", LETTER_CAT, 0, "q0"));
        assert!(matches!(augment_with_cat(&net), Err(NetError::ReservedLetter(_))));
    }

    #[test]
    fn empty_language_is_included_everywhere() {
        let g = inclusion_gadget(&empty_lang_net(), &a_star_net()).unwrap();
        assert_eq!(is_history_deterministic(&g, None).unwrap().outcome, Outcome::EveWins);
        assert_eq!(
            hd_inclusion(&empty_lang_net(), &a_star_net(), None).unwrap().outcome,
            Outcome::EveWins
        );
    }

    #[test]
    fn sigma_star_is_not_included_in_epsilon() {
        let g = inclusion_gadget(&sigma_star_net(), &epsilon_only_net()).unwrap();
        assert_eq!(is_history_deterministic(&g, None).unwrap().outcome, Outcome::AdamWins);
        assert_eq!(
            hd_inclusion(&sigma_star_net(), &epsilon_only_net(), None).unwrap().outcome,
            Outcome::AdamWins
        );
    }

    #[test]
    fn inclusion_is_reflexive_on_hd_nets() {
        for net in [a_star_net(), sigma_star_net(), hd_threshold_net()] {
            assert_eq!(hd_inclusion(&net, &net, None).unwrap().outcome, Outcome::EveWins);
            assert_eq!(hd_equivalence(&net, &net, None).unwrap().outcome, Outcome::EveWins);
        }
    }

    #[test]
    fn a_star_included_in_sigma_star_but_not_conversely() {
        assert_eq!(
            hd_inclusion(&a_star_net(), &sigma_star_net(), None).unwrap().outcome,
            Outcome::EveWins
        );
        assert_eq!(
            hd_inclusion(&sigma_star_net(), &a_star_net(), None).unwrap().outcome,
            Outcome::AdamWins
        );
        assert_eq!(
            hd_equivalence(&a_star_net(), &sigma_star_net(), None).unwrap().outcome,
            Outcome::AdamWins
        );
    }

    #[test]
    fn non_hd_inputs_are_refused() {
        use crate::examples::suit_fork_net;
        let bad = suit_fork_net();
        let mut other = sigma_star_net();
        other.alphabet = bad.alphabet.clone();
        other.transitions = bad
            .alphabet
            .iter()
            .map(|l| Transition::new("q0", l, 0, "q0"))
            .collect();
        assert!(matches!(
            hd_inclusion(&bad, &other, None),
            Err(NetError::NotHd(name)) if name == "left"
        ));
        assert!(matches!(
            hd_inclusion(&other, &bad, None),
            Err(NetError::NotHd(name)) if name == "right"
        ));
    }

    #[test]
    fn alphabet_mismatch_is_refused() {
        let a = a_star_net();
        let mut b = a_star_net();
        b.alphabet.insert("c".to_string());
        assert!(matches!(inclusion_gadget(&a, &b), Err(NetError::AlphabetMismatch(_))));
    }

    #[test]
    fn gadget_agrees_with_bounded_inclusion_on_random_hd_pairs() {
        use crate::hd_decision::is_history_deterministic;
        // Deterministic generator over small complete deterministic nets
        // (deterministic complete nets are always HD).
        let mut seed = 0x2545f4914f6cdd1du64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        let letters = ["a", "b"];
        let gen = |n: usize, next: &mut dyn FnMut() -> u64| -> Ocn {
            let states: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
            let refs: Vec<&str> = states.iter().map(|s| s.as_str()).collect();
            let mut transitions = Vec::new();
            for s in &refs {
                for l in &letters {
                    let d = (next() % 3) as i64 - 1;
                    let tgt = refs[(next() % n as u64) as usize];
                    transitions.push(Transition::new(s, l, d, tgt));
                }
            }
            let finals: Vec<&str> = refs.iter().filter(|_| next() % 2 == 0).cloned().collect();
            Ocn::new(&refs, &letters, refs[0], &finals, transitions)
        };
        let mut checked = 0;
        for _ in 0..50 {
            let x = gen(1 + (next() % 3) as usize, &mut next);
            let y = gen(1 + (next() % 3) as usize, &mut next);
            let g = inclusion_gadget(&x, &y).unwrap();
            let verdict = is_history_deterministic(&g, None).unwrap().outcome;
            if verdict == Outcome::Inconclusive {
                continue;
            }
            let bounded_incl = words_up_to(&x.alphabet, 8)
                .into_iter()
                .all(|w| !x.accepts(&w) || y.accepts(&w));
            if verdict == Outcome::EveWins {
                // A certified inclusion must hold on all bounded words.
                assert!(bounded_incl, "gadget claims inclusion refuted by a short word");
            } else if bounded_incl {
                // A certified non-inclusion with no short counterexample is
                // possible only when the separating word is long; for these
                // tiny deterministic nets, length 8 is already separating.
                panic!("gadget refutes inclusion but no counterexample up to length 8");
            }
            checked += 1;
        }
        assert!(checked >= 30, "too few conclusive random pairs ({checked})");
    }

    #[test]
    fn universality_trivial_cases() {
        assert_eq!(universality(&sigma_star_net(), None).unwrap().outcome, Outcome::EveWins);
        // Rejects the word "b".
        assert_eq!(universality(&a_star_net(), None).unwrap().outcome, Outcome::AdamWins);
        assert_eq!(universality(&empty_lang_net(), None).unwrap().outcome, Outcome::AdamWins);
    }

    #[test]
    fn universality_matches_bounded_check_on_random_hd_nets() {
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        let letters = ["a", "b"];
        let mut conclusive = 0;
        for _ in 0..30 {
            let n = 1 + (next() % 3) as usize;
            let states: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
            let refs: Vec<&str> = states.iter().map(|s| s.as_str()).collect();
            let mut transitions = Vec::new();
            for s in &refs {
                for l in &letters {
                    let d = (next() % 3) as i64 - 1;
                    transitions.push(Transition::new(s, l, d, refs[(next() % n as u64) as usize]));
                }
            }
            let finals: Vec<&str> = refs.iter().filter(|_| next() % 2 == 0).cloned().collect();
            let net = Ocn::new(&refs, &letters, refs[0], &finals, transitions);
            let v = universality(&net, None).unwrap().outcome;
            if v == Outcome::Inconclusive {
                continue;
            }
            conclusive += 1;
            let bounded_universal = words_up_to(&net.alphabet, 8).into_iter().all(|w| net.accepts(&w));
            if v == Outcome::EveWins {
                assert!(bounded_universal, "claimed universal but rejects a short word");
            } else if bounded_universal {
                panic!("claimed non-universal but accepts all words up to length 8");
            }
        }
        assert!(conclusive >= 20, "too few conclusive nets ({conclusive})");
    }

    #[test]
    fn threshold_net_equivalent_to_its_determinization_at_bounded_depth() {
        // Round-trip plumbing check at desk scale: the determinized
        // automaton and the net agree on all short words (the OCA side
        // cannot be re-imported as a net in general because of guards).
        use crate::determinizer::{bounded_equiv, determinize};
        use crate::hd_decision::good_sets;
        let net = hd_threshold_net();
        let sets = good_sets(&net, 8, None).unwrap();
        let d = determinize(&net, &sets).unwrap();
        assert!(bounded_equiv(&net, &d.oca, 8).is_none());
    }
}
