//! Determinization of history-deterministic nets into deterministic
//! one-counter automata via the scaled-counter construction.
//!
//! Each transition's good set is an eventually periodic set of counters;
//! once all of them are re-expressed with one global threshold `I` and
//! period `P`, a counter value can be split into an initial block
//! (`0..=I`, stored in the state) and a periodic part (offset `1..=P` in
//! the state, number of whole periods in the automaton counter). The
//! candidate automaton's runs are in bijection with the runs of the net
//! that take only good transitions, so deleting transitions down to
//! determinism preserves the language.

use crate::hd_decision::{GoodSet, Goodness};
use crate::net_model::{Acceptor, Config, NetError, Oca, OcaTransition, Guard, Ocn, Transition, Word, words_of_length};
use crate::sim_solver::SemilinearSet;
use std::collections::BTreeSet;

/// A state of the scaled automaton: either `<q.m>` in the initial block
/// (original counter `m`, `0 <= m <= I`, automaton counter pinned to 0)
/// or `[q.n]` in the periodic part (original counter `I + n + c*P` where
/// `c` is the automaton counter, `1 <= n <= P`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ScaledState {
    Init { state: String, offset: u64 },
    Periodic { state: String, offset: u64 },
}

impl ScaledState {
    pub fn init(state: &str, offset: u64) -> Self {
        ScaledState::Init { state: state.to_string(), offset }
    }

    pub fn periodic(state: &str, offset: u64) -> Self {
        ScaledState::Periodic { state: state.to_string(), offset }
    }

    pub fn original_state(&self) -> &str {
        match self {
            ScaledState::Init { state, .. } | ScaledState::Periodic { state, .. } => state,
        }
    }

    /// Canonical single-token name used in the emitted automaton.
    pub fn render(&self) -> String {
        match self {
            ScaledState::Init { state, offset } => format!("<{state}.{offset}>"),
            ScaledState::Periodic { state, offset } => format!("[{state}.{offset}]"),
        }
    }
}

/// Maps a valid scaled configuration back to the configuration of the
/// source net it encodes.
pub fn psi(scaled: &ScaledState, counter: u64, i: u64, p: u64) -> Config {
    match scaled {
        ScaledState::Init { state, offset } => {
            debug_assert!(counter == 0 && *offset <= i);
            Config::new(state, *offset)
        }
        ScaledState::Periodic { state, offset } => {
            debug_assert!(*offset >= 1 && *offset <= p);
            Config::new(state, i + offset + counter * p)
        }
    }
}

/// Inverse of [`psi`]: encodes a net configuration as a scaled one.
pub fn theta(config: &Config, i: u64, p: u64) -> (ScaledState, u64) {
    if config.counter <= i {
        (ScaledState::init(&config.state, config.counter), 0)
    } else {
        let excess = config.counter - i - 1;
        (
            ScaledState::periodic(&config.state, excess % p + 1),
            excess / p,
        )
    }
}

/// Re-expresses `set` with threshold `i >= set.threshold` and period `p`
/// (any multiple of `set.period`); membership is unchanged.
pub fn reexpress(set: &SemilinearSet, i: u64, p: u64) -> SemilinearSet {
    debug_assert!(i >= set.threshold && p % set.period == 0);
    SemilinearSet {
        threshold: i,
        period: p,
        base: (0..i).filter(|k| set.membership(*k)).collect(),
        residues: (0..p).filter(|r| set.membership(i + r)).collect(),
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

/// The global scaling parameters: `I` is the largest fitted threshold,
/// `P` the least common multiple of the fitted periods, so that every
/// good set is expressible with threshold `I` and period `P`. Fails if
/// any good set lacks a fitted semilinear description.
pub fn global_period(good_sets: &[GoodSet]) -> Result<(u64, u64), NetError> {
    let mut i = 0u64;
    let mut p = 1u64;
    for gs in good_sets {
        let sl = gs.semilinear.as_ref().ok_or_else(|| {
            NetError::Invalid(format!(
                "good set of `{}` has no fitted semilinear description",
                gs.transition.render()
            ))
        })?;
        i = i.max(sl.threshold);
        p = lcm(p, sl.period);
    }
    Ok((i, p))
}

/// A total goodness oracle: answers whether `transition` is good at a
/// given counter of the source net.
pub type GoodnessOracle<'a> = dyn Fn(&Transition, u64) -> Goodness + 'a;

/// Oracle backed by computed good sets (samples first, semilinear
/// extrapolation beyond them).
pub fn good_set_oracle<'a>(good_sets: &'a [GoodSet]) -> impl Fn(&Transition, u64) -> Goodness + 'a {
    move |t: &Transition, k: u64| {
        good_sets
            .iter()
            .find(|g| g.transition == *t)
            .map_or(Goodness::Inconclusive, |g| g.goodness_at(k))
    }
}

/// Builds the (generally nondeterministic) scaled candidate automaton.
///
/// For each good instance `(q, k) -a,d-> (q', k + d)` of a net transition,
/// one scaled transition is emitted according to where `k` and `k + d`
/// fall relative to the initial block and the period boundary:
/// initial-to-initial and initial-to-periodic moves are zero-guarded with
/// delta 0; periodic moves keep the offset in the state and touch the
/// automaton counter only when crossing a period boundary (+1 upward,
/// -1 downward under a nonzero guard). Goodness at the representative
/// counters `k <= I + 2P + 1` determines all instances, by periodicity.
///
/// Fails on the first inconclusive goodness query, naming `(δ, k)`.
pub fn build_candidate(
    net: &Ocn,
    i: u64,
    p: u64,
    oracle: &GoodnessOracle,
) -> Result<Oca, NetError> {
    let mut states: BTreeSet<String> = BTreeSet::new();
    let mut scaled: Vec<ScaledState> = Vec::new();
    for q in &net.states {
        for m in 0..=i {
            scaled.push(ScaledState::init(q, m));
        }
        for n in 1..=p {
            scaled.push(ScaledState::periodic(q, n));
        }
    }
    for s in &scaled {
        states.insert(s.render());
    }

    let good = |t: &Transition, k: u64| -> Result<bool, NetError> {
        match oracle(t, k) {
            Goodness::Good => Ok(true),
            Goodness::NotGood => Ok(false),
            Goodness::Inconclusive => Err(NetError::Invalid(format!(
                "goodness of `{}` at counter {k} is inconclusive; cannot build the candidate",
                t.render()
            ))),
        }
    };

    let mut transitions: BTreeSet<OcaTransition> = BTreeSet::new();
    for t in &net.transitions {
        // Initial block: states <q.m> live only at automaton counter 0 and
        // encode the source counter m directly.
        for m in 0..=i {
            let next = m as i64 + t.delta;
            if next < 0 || !good(t, m)? {
                continue;
            }
            let next = next as u64;
            let target = if next <= i {
                ScaledState::init(&t.target, next)
            } else {
                ScaledState::periodic(&t.target, next - i)
            };
            transitions.insert(OcaTransition::new(
                &ScaledState::init(&t.source, m).render(),
                Guard::Zero,
                &t.letter,
                0,
                &target.render(),
            ));
        }
        // Periodic part: [q.n] at automaton counter c encodes I + n + c*P.
        for n in 1..=p {
            // Representative counter I + n stands for every c >= 0 by
            // periodicity, except for descents below the period boundary,
            // which are sampled at I + n + P and guarded nonzero.
            let k = i + n;
            if good(t, k)? {
                let next = k as i64 + t.delta;
                debug_assert!(next >= 0);
                let next = next as u64;
                if next <= i {
                    // Only reachable at c = 0, hence zero-guarded.
                    transitions.insert(OcaTransition::new(
                        &ScaledState::periodic(&t.source, n).render(),
                        Guard::Zero,
                        &t.letter,
                        0,
                        &ScaledState::init(&t.target, next).render(),
                    ));
                } else if next <= i + p {
                    for guard in [Guard::Zero, Guard::NonZero] {
                        transitions.insert(OcaTransition::new(
                            &ScaledState::periodic(&t.source, n).render(),
                            guard,
                            &t.letter,
                            0,
                            &ScaledState::periodic(&t.target, next - i).render(),
                        ));
                    }
                } else {
                    for guard in [Guard::Zero, Guard::NonZero] {
                        transitions.insert(OcaTransition::new(
                            &ScaledState::periodic(&t.source, n).render(),
                            guard,
                            &t.letter,
                            1,
                            &ScaledState::periodic(&t.target, next - i - p).render(),
                        ));
                    }
                }
            }
            // Descent across the period boundary: source counter I + n + P
            // (c >= 1), target lands back in the periodic window.
            let kp = i + n + p;
            let next = kp as i64 + t.delta;
            let next = next as u64;
            if next > i && next <= i + p && good(t, kp)? {
                transitions.insert(OcaTransition::new(
                    &ScaledState::periodic(&t.source, n).render(),
                    Guard::NonZero,
                    &t.letter,
                    -1,
                    &ScaledState::periodic(&t.target, next - i).render(),
                ));
            }
        }
    }

    let finals: BTreeSet<String> = scaled
        .iter()
        .filter(|s| net.finals.contains(s.original_state()))
        .map(|s| s.render())
        .collect();
    let oca = Oca {
        states,
        alphabet: net.alphabet.clone(),
        initial: ScaledState::init(&net.initial, 0).render(),
        finals,
        transitions,
    };
    debug_assert!(oca.validate().is_valid());
    Ok(oca)
}

/// Keeps the canonically least transition per `(state, guard, letter)`
/// and drops the rest; the result is deterministic. On a candidate built
/// from a history-deterministic net this preserves the language, because
/// every candidate run on an accepted word is accepting.
pub fn prune(candidate: &Oca) -> Oca {
    let mut seen: BTreeSet<(String, Guard, String)> = BTreeSet::new();
    let mut kept: BTreeSet<OcaTransition> = BTreeSet::new();
    for t in &candidate.transitions {
        if seen.insert((t.source.clone(), t.guard, t.letter.clone())) {
            kept.insert(t.clone());
        }
    }
    Oca { transitions: kept, ..candidate.clone() }
}

/// Compares two acceptors on every word of length at most `limit` and
/// returns the length-lexicographically least separating word, if any.
pub fn bounded_equiv(a: &dyn Acceptor, b: &dyn Acceptor, limit: usize) -> Option<Word> {
    debug_assert_eq!(a.alphabet_ref(), b.alphabet_ref());
    for len in 0..=limit {
        for w in words_of_length(a.alphabet_ref(), len) {
            if a.accepts_word(&w) != b.accepts_word(&w) {
                return Some(w);
            }
        }
    }
    None
}

/// Result of the full determinization pipeline.
#[derive(Clone, Debug)]
pub struct Determinization {
    pub oca: Oca,
    pub threshold: u64,
    pub period: u64,
}

/// Full pipeline: global scaling parameters from the given good sets,
/// candidate construction, pruning to a deterministic automaton.
pub fn determinize(net: &Ocn, good_sets: &[GoodSet]) -> Result<Determinization, NetError> {
    let (i, p) = global_period(good_sets)?;
    let oracle = good_set_oracle(good_sets);
    let candidate = build_candidate(net, i, p, &oracle)?;
    let oca = prune(&candidate);
    debug_assert!(oca.is_deterministic());
    Ok(Determinization { oca, threshold: i, period: p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::hd_threshold_net;
    use crate::hd_decision::good_sets;
    use crate::net_model::words_up_to;
    use proptest::prelude::*;

    fn det_net() -> Ocn {
        Ocn::new(
            &["q0"],
            &["a", "b"],
            "q0",
            &["q0"],
            vec![
                Transition::new("q0", "a", 1, "q0"),
                Transition::new("q0", "b", 0, "q0"),
            ],
        )
    }

    fn synthetic_good_set(t: &Transition, sl: SemilinearSet) -> GoodSet {
        let samples = (0..=8)
            .map(|k| if sl.membership(k) { Goodness::Good } else { Goodness::NotGood })
            .collect();
        GoodSet { transition: t.clone(), samples, semilinear: Some(sl) }
    }

    #[test]
    fn global_period_on_deterministic_net_is_trivial() {
        let net = det_net();
        let sets = good_sets(&net, 8, None).unwrap();
        assert_eq!(global_period(&sets).unwrap(), (0, 1));
    }

    #[test]
    fn global_period_takes_lcm_of_periods() {
        let t1 = Transition::new("q0", "a", 1, "q0");
        let t2 = Transition::new("q0", "b", 0, "q0");
        let sets = vec![
            synthetic_good_set(
                &t1,
                SemilinearSet { threshold: 1, period: 2, base: BTreeSet::new(), residues: [0].into() },
            ),
            synthetic_good_set(
                &t2,
                SemilinearSet { threshold: 0, period: 3, base: BTreeSet::new(), residues: [1].into() },
            ),
        ];
        assert_eq!(global_period(&sets).unwrap(), (1, 6));
    }

    #[test]
    fn global_period_rejects_unfitted_sets() {
        let t = Transition::new("q0", "a", 1, "q0");
        let gs = GoodSet {
            transition: t,
            samples: vec![Goodness::Inconclusive; 9],
            semilinear: None,
        };
        assert!(global_period(&[gs]).is_err());
    }

    #[test]
    fn reexpression_preserves_membership() {
        let sl = SemilinearSet {
            threshold: 2,
            period: 3,
            base: [0].into(),
            residues: [1, 2].into(),
        };
        let re = reexpress(&sl, 5, 6);
        for k in 0..40 {
            assert_eq!(sl.membership(k), re.membership(k), "k={k}");
        }
    }

    #[test]
    fn psi_theta_are_inverse_on_valid_configs() {
        let (i, p) = (3u64, 4u64);
        for q in ["q0", "q1"] {
            for m in 0..=i {
                let s = ScaledState::init(q, m);
                let cfg = psi(&s, 0, i, p);
                assert_eq!(theta(&cfg, i, p), (s, 0));
            }
            for n in 1..=p {
                for c in 0..5 {
                    let s = ScaledState::periodic(q, n);
                    let cfg = psi(&s, c, i, p);
                    assert_eq!(theta(&cfg, i, p), (s.clone(), c));
                }
            }
        }
        // And the other way: every counter decodes to a valid config.
        for k in 0..40 {
            let cfg = Config::new("q0", k);
            let (s, c) = theta(&cfg, i, p);
            assert_eq!(psi(&s, c, i, p), cfg);
        }
    }

    #[test]
    fn deterministic_net_candidate_is_language_equal_and_deterministic() {
        let net = det_net();
        let sets = good_sets(&net, 8, None).unwrap();
        let d = determinize(&net, &sets).unwrap();
        assert_eq!(d.threshold, 0);
        assert_eq!(d.period, 1);
        assert!(d.oca.is_deterministic());
        assert!(bounded_equiv(&net, &d.oca, 8).is_none());
    }

    #[test]
    fn already_deterministic_candidate_is_unchanged_by_prune() {
        let net = det_net();
        let sets = good_sets(&net, 8, None).unwrap();
        let (i, p) = global_period(&sets).unwrap();
        let oracle = good_set_oracle(&sets);
        let cand = build_candidate(&net, i, p, &oracle).unwrap();
        if cand.is_deterministic() {
            assert_eq!(prune(&cand), cand);
        }
        // Prune never removes the last transition on a key that had any.
        let keys = |o: &Oca| -> BTreeSet<(String, Guard, String)> {
            o.transitions
                .iter()
                .map(|t| (t.source.clone(), t.guard, t.letter.clone()))
                .collect()
        };
        assert_eq!(keys(&cand), keys(&prune(&cand)));
    }

    #[test]
    fn candidate_transitions_mirror_good_net_transitions() {
        // The run bijection, checked locally: from every valid scaled
        // configuration with a bounded decoded counter, the candidate's
        // successors decode exactly to the good-transition successors of
        // the decoded net configuration.
        let net = hd_threshold_net();
        let sets = good_sets(&net, 8, None).unwrap();
        let (i, p) = global_period(&sets).unwrap();
        let oracle = good_set_oracle(&sets);
        let cand = build_candidate(&net, i, p, &oracle).unwrap();
        for q in &net.states {
            for k in 0..=(i + 3 * p) {
                let cfg = Config::new(q, k);
                let (s, c) = theta(&cfg, i, p);
                for a in &net.alphabet {
                    let mut from_candidate: BTreeSet<Config> = BTreeSet::new();
                    for succ in cand.successors(&Config::new(&s.render(), c), a) {
                        let scaled = if succ.state.starts_with('<') {
                            assert_eq!(succ.counter, 0, "initial-block state at nonzero counter");
                            ScaledState::init(
                                parse_name(&succ.state).0,
                                parse_name(&succ.state).1,
                            )
                        } else {
                            ScaledState::periodic(
                                parse_name(&succ.state).0,
                                parse_name(&succ.state).1,
                            )
                        };
                        from_candidate.insert(psi(&scaled, succ.counter, i, p));
                    }
                    let mut from_net: BTreeSet<Config> = BTreeSet::new();
                    for t in net.transitions_from(q, a) {
                        let next = k as i64 + t.delta;
                        if next >= 0 && oracle(t, k) == Goodness::Good {
                            from_net.insert(Config::new(&t.target, next as u64));
                        }
                    }
                    assert_eq!(from_candidate, from_net, "state {q} counter {k} letter {a}");
                }
            }
        }
    }

    fn parse_name(name: &str) -> (&str, u64) {
        let inner = &name[1..name.len() - 1];
        let (q, off) = inner.rsplit_once('.').unwrap();
        (q, off.parse().unwrap())
    }

    #[test]
    fn threshold_net_determinizes_to_the_same_language() {
        let net = hd_threshold_net();
        let sets = good_sets(&net, 8, None).unwrap();
        let d = determinize(&net, &sets).unwrap();
        assert!(d.oca.is_deterministic());
        assert!(d.oca.validate().is_valid());
        assert_eq!(bounded_equiv(&net, &d.oca, 8), None);
    }

    #[test]
    fn candidate_language_already_matches_before_pruning() {
        let net = hd_threshold_net();
        let sets = good_sets(&net, 8, None).unwrap();
        let (i, p) = global_period(&sets).unwrap();
        let oracle = good_set_oracle(&sets);
        let cand = build_candidate(&net, i, p, &oracle).unwrap();
        assert_eq!(bounded_equiv(&net, &cand, 8), None);
    }

    #[test]
    fn inconclusive_goodness_refuses_the_build() {
        let net = det_net();
        let oracle = |_: &Transition, _: u64| Goodness::Inconclusive;
        let err = build_candidate(&net, 0, 1, &oracle).unwrap_err();
        assert!(matches!(err, NetError::Invalid(msg) if msg.contains("inconclusive")));
    }

    #[test]
    fn bounded_equiv_finds_least_counterexample() {
        let a = det_net(); // accepts everything over {a,b}
        let mut b = det_net();
        b.finals.clear(); // accepts nothing
        assert_eq!(bounded_equiv(&a, &b, 3), Some(Vec::new())); // epsilon
        assert_eq!(bounded_equiv(&a, &a, 3), None);
    }

    #[test]
    fn pruned_runs_take_only_good_transitions() {
        // Follow the pruned automaton on live words and check that the
        // decoded moves are good in the source net.
        let net = hd_threshold_net();
        let sets = good_sets(&net, 8, None).unwrap();
        let d = determinize(&net, &sets).unwrap();
        let oracle = good_set_oracle(&sets);
        for w in words_up_to(&net.alphabet, 6) {
            let mut cfg = Config::new(&d.oca.initial, 0);
            for a in &w {
                let succs = d.oca.successors(&cfg, a);
                assert!(succs.len() <= 1);
                let Some(next) = succs.into_iter().next() else { break };
                let (dq, doff) = parse_name(&cfg.state);
                let decoded_from = if cfg.state.starts_with('<') {
                    psi(&ScaledState::init(dq, doff), cfg.counter, d.threshold, d.period)
                } else {
                    psi(&ScaledState::periodic(dq, doff), cfg.counter, d.threshold, d.period)
                };
                let (nq, noff) = parse_name(&next.state);
                let decoded_to = if next.state.starts_with('<') {
                    psi(&ScaledState::init(nq, noff), next.counter, d.threshold, d.period)
                } else {
                    psi(&ScaledState::periodic(nq, noff), next.counter, d.threshold, d.period)
                };
                let t = Transition::new(
                    &decoded_from.state,
                    a,
                    decoded_to.counter as i64 - decoded_from.counter as i64,
                    &decoded_to.state,
                );
                assert!(net.transitions.contains(&t), "decoded move {} missing", t.render());
                assert_eq!(oracle(&t, decoded_from.counter), Goodness::Good);
                cfg = next;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn theta_psi_roundtrip(k in 0u64..1000, i in 0u64..6, p in 1u64..6) {
            let cfg = Config::new("q", k);
            let (s, c) = theta(&cfg, i, p);
            prop_assert_eq!(psi(&s, c, i, p), cfg);
        }

        #[test]
        fn reexpress_is_sound(thr in 0u64..4, per in 1u64..4, extra_i in 0u64..4, mult in 1u64..4, bits in proptest::collection::vec(any::<bool>(), 8)) {
            let base: BTreeSet<u64> = (0..thr).filter(|k| bits[*k as usize % bits.len()]).collect();
            let residues: BTreeSet<u64> = (0..per).filter(|r| bits[(thr + r) as usize % bits.len()]).collect();
            let sl = SemilinearSet { threshold: thr, period: per, base, residues };
            let re = reexpress(&sl, thr + extra_i, per * mult);
            for k in 0..60 {
                prop_assert_eq!(sl.membership(k), re.membership(k), "k={}", k);
            }
        }
    }
}
