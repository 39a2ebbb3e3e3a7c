//! Deciding history-determinism of one-counter nets.
//!
//! The pipeline: history-determinism is characterised by the one-token
//! game (Adam picks a letter, Eve moves her token, Adam moves his), which
//! reduces to a simulation game between two derived nets — a "lag"
//! automaton that delays Adam's transition choice by one letter, against
//! the net extended with an accepting hash sink. [`is_history_deterministic`]
//! decides that simulation game with the certified engine.
//!
//! The same reduction, with the first round pinned to a chosen transition,
//! yields the per-transition "good set": the counters at which taking that
//! transition is a winning answer from the diagonal. Good sets drive
//! [`resolver_move`], a positional strategy that resolves nondeterminism
//! on the fly, and feed the determinization pipeline through their
//! semilinear descriptions.
//!
//! [`letter_game_refuter`] is the one-sided counterpart: a bounded search
//! of the letter game itself that produces a replayable Adam strategy tree
//! proving non-history-determinism.

use crate::game_engine::{
    certified_solve, default_cap_schedule, CappedVerdict, MonotoneArena, Move, Outcome, Player,
    Position, DEFAULT_POSITION_BUDGET,
};
use crate::net_model::{
    complete, expand_binary, Config, NetError, Ocn, SuccinctOcn, Transition, DEFAULT_DELTA_LIMIT,
    LETTER_HASH,
};
use crate::sim_solver::{build_sim_arena, detect_semilinear, simulates, SemilinearSet, SimQuery};
use std::collections::BTreeMap;
use std::collections::BTreeSet;

/// A position of the one-token game: Eve's token, Adam's token, and the
/// letter Adam has announced but not yet answered (if inside a round).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G1Position {
    pub eve_config: Config,
    pub adam_config: Config,
    pub pending_letter: Option<String>,
}

impl G1Position {
    pub fn render(&self) -> String {
        let pending = match &self.pending_letter {
            Some(l) => format!(" on {l}"),
            None => String::new(),
        };
        format!(
            "eve ({},{}) adam ({},{}){pending}",
            self.eve_config.state, self.eve_config.counter, self.adam_config.state, self.adam_config.counter
        )
    }
}

/// The one-token game compiled to a monotone arena, with its start
/// position and enough layout to address arbitrary token pairs.
#[derive(Clone, Debug)]
pub struct G1Arena {
    pub arena: MonotoneArena,
    pub start: Position,
    states: Vec<String>,
    /// Alphabet order used in the control layout.
    pub letters: Vec<String>,
}

impl G1Arena {
    fn s_idx(&self, s: &str) -> usize {
        self.states.iter().position(|x| x == s).expect("net state")
    }

    /// The round position with Eve's token at `(eve, k_eve)` and Adam's at
    /// `(adam, k_adam)`, Adam to announce a letter.
    pub fn round_position(&self, eve: &str, adam: &str, k_eve: u64, k_adam: u64) -> Position {
        let n = self.states.len();
        Position::new(2 + self.s_idx(eve) * n + self.s_idx(adam), k_adam, k_eve)
    }

    /// The diagonal position with both tokens at `(state, k)`.
    pub fn diagonal(&self, state: &str, k: u64) -> Position {
        self.round_position(state, state, k, k)
    }
}

/// Least Adam counter from which some `letter`-transition of `state` can
/// start a run to an accepting state; `None` if no such run exists.
fn letter_cover_need(
    net: &Ocn,
    credit: &BTreeMap<String, Option<u64>>,
    state: &str,
    letter: &str,
) -> Option<u64> {
    let mut best: Option<u64> = None;
    for t in net.transitions_from(state, letter) {
        if let Some(Some(c)) = credit.get(&t.target) {
            let k = (*c as i64 - t.delta).max(-t.delta).max(0) as u64;
            best = Some(best.map_or(k, |b| b.min(k)));
        }
    }
    best
}

/// Builds the one-token game on `net` as a monotone arena.
///
/// Round order per control layer: `round(e, a)` — Adam announces a letter;
/// `pick(e, a, l)` — Eve moves her token on the letter; `reply(e', a, l)`
/// — Adam moves his token on the same letter. Counter 1 is Adam's token,
/// counter 2 is Eve's.
///
/// Adam targets: `round(e, a)` with `a` final and `e` non-final (checked
/// at every visited pair), plus an absorbing target reached from
/// `stuck(a, l)` exactly when Adam's token can take an `l`-transition and
/// extend to an accepting run (gated by a single `-need` move). Eve's
/// "declare stuck" move into `stuck(a, l)` is always available; declaring
/// voluntarily only loses when Adam could cover anyway. Adam dead ends
/// (no enabled reply) are Eve wins.
pub fn g1_arena(net: &Ocn) -> Result<G1Arena, NetError> {
    let states: Vec<String> = net.states.iter().cloned().collect();
    let letters: Vec<String> = net.alphabet.iter().cloned().collect();
    let n = states.len();
    let nl = letters.len();
    let s_idx = |s: &str| states.iter().position(|x| x == s).expect("net state");

    // Control indices: 0 unused padding, 1 absorbing target, then the
    // round, pick, reply, and stuck blocks.
    let round = |e: usize, a: usize| 2 + e * n + a;
    let pick = |e: usize, a: usize, l: usize| 2 + n * n + (e * n + a) * nl + l;
    let reply = |e2: usize, a: usize, l: usize| 2 + n * n + n * n * nl + (e2 * n + a) * nl + l;
    let stuck = |a: usize, l: usize| 2 + n * n + 2 * n * n * nl + a * nl + l;
    let count = 2 + n * n + 2 * n * n * nl + n * nl;

    let mut controls = vec![String::new(); count];
    let mut owner = vec![Player::Adam; count];
    let mut target = vec![false; count];
    let mut moves: Vec<Move> = Vec::new();

    controls[0] = "unused".to_string();
    controls[1] = "adam-win".to_string();
    target[1] = true;

    let credit = net.min_credit();

    for (ei, e) in states.iter().enumerate() {
        for (ai, a) in states.iter().enumerate() {
            let c = round(ei, ai);
            controls[c] = format!("round({e},{a})");
            owner[c] = Player::Adam;
            target[c] = net.finals.contains(a) && !net.finals.contains(e);
            for (li, l) in letters.iter().enumerate() {
                // Adam announces the letter.
                moves.push(Move {
                    from: c,
                    label: format!("announce {l}"),
                    d1: 0,
                    d2: 0,
                    to: pick(ei, ai, li),
                });
                let p = pick(ei, ai, li);
                controls[p] = format!("pick({e},{a},{l})");
                owner[p] = Player::Eve;
                let r = reply(ei, ai, li);
                controls[r] = format!("reply({e},{a},{l})");
                owner[r] = Player::Adam;
            }
        }
    }
    for (ai, a) in states.iter().enumerate() {
        for (li, l) in letters.iter().enumerate() {
            let c = stuck(ai, li);
            controls[c] = format!("stuck({a},{l})");
            owner[c] = Player::Adam;
            if let Some(k) = letter_cover_need(net, &credit, a, l) {
                moves.push(Move {
                    from: c,
                    label: format!("cover {a} on {l} with credit {k}"),
                    d1: -(k as i64),
                    d2: 0,
                    to: 1,
                });
            }
        }
    }

    // Eve's token moves and the always-available declare-stuck move.
    for (ei, e) in states.iter().enumerate() {
        for ai in 0..n {
            for (li, l) in letters.iter().enumerate() {
                for t in net.transitions_from(e, l) {
                    moves.push(Move {
                        from: pick(ei, ai, li),
                        label: format!("eve {}", t.render()),
                        d1: 0,
                        d2: t.delta,
                        to: reply(s_idx(&t.target), ai, li),
                    });
                }
                moves.push(Move {
                    from: pick(ei, ai, li),
                    label: "declare stuck".to_string(),
                    d1: 0,
                    d2: 0,
                    to: stuck(ai, li),
                });
            }
        }
    }
    // Adam's token replies.
    for e2 in 0..n {
        for (ai, a) in states.iter().enumerate() {
            for (li, l) in letters.iter().enumerate() {
                for t in net.transitions_from(a, l) {
                    moves.push(Move {
                        from: reply(e2, ai, li),
                        label: format!("adam {}", t.render()),
                        d1: t.delta,
                        d2: 0,
                        to: round(e2, s_idx(&t.target)),
                    });
                }
            }
        }
    }

    let arena = MonotoneArena { controls, owner, moves, adam_target: target };
    arena.validate().map_err(NetError::Invalid)?;
    let init = s_idx(&net.initial);
    Ok(G1Arena {
        arena,
        start: Position::new(round(init, init), 0, 0),
        states,
        letters: letters.clone(),
    })
}

/// Decides the one-token game on `net` from the paired initial
/// configurations with the certified engine; `EveWins` iff Eve wins G1.
pub fn g1_decide(net: &Ocn, caps: Option<&[u64]>) -> Result<CappedVerdict, NetError> {
    let g = g1_arena(net)?;
    let schedule;
    let caps = match caps {
        Some(c) => c,
        None => {
            schedule = default_cap_schedule(&g.arena);
            &schedule
        }
    };
    Ok(certified_solve(&g.arena, g.start, caps, DEFAULT_POSITION_BUDGET))
}

fn lag_name(state: &str, letter: &str) -> String {
    format!("{state}~{letter}")
}

/// The lag automaton over `nc` (which must be complete): states remember
/// the previously read letter, transitions execute the remembered letter
/// and store the new one, the fresh hash letter executes the remembered
/// letter into a final state. The start state's transitions pin the first
/// remembered configuration to `anchor`.
fn lag_automaton(nc: &Ocn, anchor: &str) -> Result<Ocn, NetError> {
    let mut states: BTreeSet<String> = BTreeSet::new();
    for q in &nc.states {
        for a in &nc.alphabet {
            states.insert(lag_name(q, a));
        }
    }
    for f in &nc.finals {
        states.insert(lag_name(f, LETTER_HASH));
    }
    if states.len() != nc.states.len() * nc.alphabet.len() + nc.finals.len() {
        return Err(NetError::Invalid(
            "state/letter names collide in the lag construction".to_string(),
        ));
    }
    let start = "s".to_string(); // lag names all contain '~'
    states.insert(start.clone());

    let mut alphabet = nc.alphabet.clone();
    alphabet.insert(LETTER_HASH.to_string());
    let mut transitions: BTreeSet<Transition> = BTreeSet::new();
    for a in &nc.alphabet {
        transitions.insert(Transition::new(&start, a, 0, &lag_name(anchor, a)));
    }
    for t in &nc.transitions {
        for b in &nc.alphabet {
            transitions.insert(Transition::new(
                &lag_name(&t.source, &t.letter),
                b,
                t.delta,
                &lag_name(&t.target, b),
            ));
        }
        if nc.finals.contains(&t.target) {
            transitions.insert(Transition::new(
                &lag_name(&t.source, &t.letter),
                LETTER_HASH,
                t.delta,
                &lag_name(&t.target, LETTER_HASH),
            ));
        }
    }
    let finals: BTreeSet<String> = nc.finals.iter().map(|f| lag_name(f, LETTER_HASH)).collect();
    Ok(Ocn {
        states,
        alphabet,
        initial: start,
        finals,
        transitions,
    })
}

/// `nc` extended with a fresh accepting sink reachable by the hash letter
/// from every final state; the sink loops on the whole extended alphabet
/// and becomes the only final state. Returns the net and the sink's name.
fn hash_extension(nc: &Ocn) -> (Ocn, String) {
    let sink = nc.fresh_state("acc");
    let mut out = nc.clone();
    out.states.insert(sink.clone());
    out.alphabet.insert(LETTER_HASH.to_string());
    for f in &nc.finals {
        out.transitions.insert(Transition::new(f, LETTER_HASH, 0, &sink));
    }
    for a in &out.alphabet.clone() {
        out.transitions.insert(Transition::new(&sink, a, 0, &sink));
    }
    out.finals = [sink.clone()].into_iter().collect();
    (out, sink)
}

/// Reduces the one-token game on `net` to a simulation query: Eve wins G1
/// on `net` iff the second net (from its initial state) simulates the
/// first (from its start state), both starting with counter 0.
///
/// The first net is the lag automaton anchored at the initial state; the
/// second is `net` (completed) plus the accepting hash sink. The lag
/// automaton has at most `|Q| * (|alphabet| + 1) + 1` states.
pub fn g1_to_sim(net: &Ocn) -> Result<(Ocn, Ocn), NetError> {
    if net.alphabet.contains(LETTER_HASH) {
        return Err(NetError::ReservedLetter(LETTER_HASH.to_string()));
    }
    let nc = complete(net);
    let m = lag_automaton(&nc, &nc.initial)?;
    let (mp, _) = hash_extension(&nc);
    Ok((m, mp))
}

/// Decides history-determinism of `net` with the certified engine via the
/// one-token-game-to-simulation reduction: `EveWins` iff `net` is
/// history-deterministic.
pub fn is_history_deterministic(net: &Ocn, caps: Option<&[u64]>) -> Result<CappedVerdict, NetError> {
    let (m, mp) = g1_to_sim(net)?;
    simulates(&SimQuery::initial(&m, &mp, 0), caps)
}

/// [`is_history_deterministic`] for a succinct net, via delta expansion.
pub fn is_history_deterministic_succinct(
    net: &SuccinctOcn,
    caps: Option<&[u64]>,
) -> Result<CappedVerdict, NetError> {
    let unary = expand_binary(net, DEFAULT_DELTA_LIMIT)?;
    is_history_deterministic(&unary, caps)
}

/// A finite Adam strategy tree for the letter game. At each node Adam
/// plays `letter`; `responses` covers every transition Eve can take on it
/// (an empty list means Eve has none). A node is valid when every branch
/// ends in an Eve loss under the exact letter-game conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdamWitness {
    pub letter: String,
    pub responses: Vec<(Transition, WitnessNode)>,
}

/// Continuation after one Eve response.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessNode {
    /// The reached position already loses for Eve: the word read so far is
    /// in the language but her state is rejecting.
    Loss,
    Continue(Box<AdamWitness>),
}

impl AdamWitness {
    /// Nested JSON-like rendering of the strategy tree.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, indent: usize) {
        let pad = "  ".repeat(indent);
        out.push_str(&format!("{pad}{{letter: \"{}\", responses: [", self.letter));
        if self.responses.is_empty() {
            out.push_str("]}  # eve is stuck on a live word\n");
            return;
        }
        out.push('\n');
        for (t, node) in &self.responses {
            match node {
                WitnessNode::Loss => {
                    out.push_str(&format!(
                        "{pad}  {{transition: \"{}\", node: loss}}\n",
                        t.render()
                    ));
                }
                WitnessNode::Continue(sub) => {
                    out.push_str(&format!("{pad}  {{transition: \"{}\", node:\n", t.render()));
                    sub.render_into(out, indent + 2);
                    out.push_str(&format!("{pad}  }}\n"));
                }
            }
        }
        out.push_str(&format!("{pad}]}}\n"));
    }
}

fn enabled_transitions(net: &Ocn, config: &Config, letter: &str) -> Vec<Transition> {
    net.transitions_from(&config.state, letter)
        .into_iter()
        .filter(|t| config.counter as i64 + t.delta >= 0)
        .cloned()
        .collect()
}

fn refuter_search(
    net: &Ocn,
    config: &Config,
    word: &mut Vec<String>,
    cap: u64,
    fuel: usize,
) -> Option<AdamWitness> {
    if fuel == 0 {
        return None;
    }
    'letters: for a in &net.alphabet {
        word.push(a.clone());
        let options = enabled_transitions(net, config, a);
        if options.is_empty() {
            let live = net.is_live_prefix(word);
            word.pop();
            if live {
                return Some(AdamWitness { letter: a.clone(), responses: Vec::new() });
            }
            continue 'letters;
        }
        let mut responses = Vec::new();
        for t in options {
            let next = Config::new(&t.target, (config.counter as i64 + t.delta) as u64);
            if next.counter > cap {
                word.pop();
                continue 'letters;
            }
            let node = if net.accepts(word) && !net.finals.contains(&next.state) {
                WitnessNode::Loss
            } else {
                match refuter_search(net, &next, word, cap, fuel - 1) {
                    Some(sub) => WitnessNode::Continue(Box::new(sub)),
                    None => {
                        word.pop();
                        continue 'letters;
                    }
                }
            };
            responses.push((t, node));
        }
        word.pop();
        return Some(AdamWitness { letter: a.clone(), responses });
    }
    None
}

/// Bounded search of the letter game for an Adam strategy tree of depth at
/// most `depth` that forces Eve's loss while her counter never exceeds
/// `cap`. A returned witness is a certified proof that `net` is not
/// history-deterministic (see [`replay_witness`]); `None` proves nothing.
pub fn letter_game_refuter(net: &Ocn, cap: u64, depth: usize) -> Option<AdamWitness> {
    let mut word = Vec::new();
    refuter_search(net, &Config::new(&net.initial, 0), &mut word, cap, depth)
}

fn replay_node(net: &Ocn, config: &Config, word: &mut Vec<String>, w: &AdamWitness) -> bool {
    if !net.alphabet.contains(&w.letter) {
        return false;
    }
    word.push(w.letter.clone());
    let options = enabled_transitions(net, config, &w.letter);
    let ok = if options.is_empty() {
        w.responses.is_empty() && net.is_live_prefix(word)
    } else {
        let covered: BTreeSet<&Transition> = w.responses.iter().map(|(t, _)| t).collect();
        options.len() == covered.len()
            && options.iter().all(|t| covered.contains(t))
            && w.responses.iter().all(|(t, node)| {
                let next = Config::new(&t.target, (config.counter as i64 + t.delta) as u64);
                match node {
                    WitnessNode::Loss => net.accepts(word) && !net.finals.contains(&next.state),
                    WitnessNode::Continue(sub) => replay_node(net, &next, word, sub),
                }
            })
    };
    word.pop();
    ok
}

/// Replays an [`AdamWitness`] against the exact letter-game semantics:
/// true iff every Eve option is covered and every branch ends in a genuine
/// Eve loss. Independent of the search that produced the witness.
pub fn replay_witness(net: &Ocn, witness: &AdamWitness) -> bool {
    let mut word = Vec::new();
    replay_node(net, &Config::new(&net.initial, 0), &mut word, witness)
}

/// Whether a transition is a winning answer from the diagonal at a given
/// counter; `Inconclusive` when the capped engine could not certify either
/// way.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Goodness {
    Good,
    NotGood,
    Inconclusive,
}

/// Sampled good set of one transition: `samples[k]` answers whether the
/// transition is good at counter `k`, with an optional semilinear
/// description fitted when all samples are conclusive.
#[derive(Clone, Debug)]
pub struct GoodSet {
    pub transition: Transition,
    pub samples: Vec<Goodness>,
    pub semilinear: Option<SemilinearSet>,
}

impl GoodSet {
    /// Goodness at `k`: the sample when in range, the fitted semilinear
    /// extrapolation beyond it, `Inconclusive` otherwise.
    pub fn goodness_at(&self, k: u64) -> Goodness {
        if (k as usize) < self.samples.len() {
            return self.samples[k as usize];
        }
        match &self.semilinear {
            Some(sl) if sl.membership(k) => Goodness::Good,
            Some(_) => Goodness::NotGood,
            None => Goodness::Inconclusive,
        }
    }
}

/// Builds the pinned-first-round simulation gadget for `delta` in `net`:
/// the transition is good at `(delta.source, k)` iff the second returned
/// net from `(start_pair.1, k)` simulates the first from
/// `(start_pair.0, k)`.
///
/// The first net is the lag automaton anchored at `delta.source`; the
/// second is `net` (completed) plus the accepting hash sink and a fresh
/// start state whose only transition on `delta.letter` is the image of
/// `delta`, and which copies `delta.source`'s transitions on every other
/// letter.
pub fn good_transition_gadget(
    net: &Ocn,
    delta: &Transition,
) -> Result<(Ocn, Ocn, (String, String)), NetError> {
    if !net.transitions.contains(delta) {
        return Err(NetError::Invalid(format!(
            "transition `{}` is not in the net",
            delta.render()
        )));
    }
    if net.alphabet.contains(LETTER_HASH) {
        return Err(NetError::ReservedLetter(LETTER_HASH.to_string()));
    }
    let nc = complete(net);
    let m = lag_automaton(&nc, &delta.source)?;
    let (mut mp, _) = hash_extension(&nc);
    let start = mp.fresh_state("start");
    mp.states.insert(start.clone());
    mp.transitions
        .insert(Transition::new(&start, &delta.letter, delta.delta, &delta.target));
    for b in &nc.alphabet {
        if b == &delta.letter {
            continue;
        }
        for t in nc.transitions_from(&delta.source, b) {
            mp.transitions.insert(Transition::new(&start, b, t.delta, &t.target));
        }
    }
    mp.initial = start.clone();
    let s = m.initial.clone();
    Ok((m, mp, (s, start)))
}

/// Evaluates [`good_transition_gadget`] at every counter `0..=bound`
/// (requires `bound >= 8`) and fits a semilinear description when all
/// samples are conclusive. Inconclusive samples are reported as such and
/// never extrapolated.
pub fn good_set(
    net: &Ocn,
    delta: &Transition,
    bound: u64,
    caps: Option<&[u64]>,
) -> Result<GoodSet, NetError> {
    if bound < 8 {
        return Err(NetError::Invalid("good_set needs bound >= 8".to_string()));
    }
    let (m, mp, (s, sp)) = good_transition_gadget(net, delta)?;
    let sim = build_sim_arena(&SimQuery::new(&m, Config::new(&s, 0), &mp, Config::new(&sp, 0)))?;
    let schedule;
    let caps = match caps {
        Some(c) => c,
        None => {
            schedule = default_cap_schedule(&sim.arena);
            &schedule
        }
    };
    let mut samples = Vec::with_capacity(bound as usize + 1);
    for k in 0..=bound {
        let v = certified_solve(
            &sim.arena,
            Position::new(sim.start.control, k, k),
            caps,
            DEFAULT_POSITION_BUDGET,
        );
        samples.push(match v.outcome {
            Outcome::EveWins => Goodness::Good,
            Outcome::AdamWins => Goodness::NotGood,
            Outcome::Inconclusive => Goodness::Inconclusive,
        });
    }
    let semilinear = if samples.iter().all(|g| *g != Goodness::Inconclusive) {
        let bits: Vec<bool> = samples.iter().map(|g| *g == Goodness::Good).collect();
        detect_semilinear(&bits)
    } else {
        None
    };
    Ok(GoodSet { transition: delta.clone(), samples, semilinear })
}

/// Computes [`good_set`] for every transition of the net.
pub fn good_sets(
    net: &Ocn,
    bound: u64,
    caps: Option<&[u64]>,
) -> Result<Vec<GoodSet>, NetError> {
    net.transitions
        .iter()
        .map(|t| good_set(net, t, bound, caps))
        .collect()
}

/// Result of one resolver query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolverMove {
    Move(Transition),
    /// No enabled transition is good at this counter.
    NoMove,
    /// No transition could be certified good before one with an
    /// inconclusive good-set entry; the blocked transitions are listed.
    Inconclusive(Vec<Transition>),
}

/// Positional resolver: the canonically least (by rendered transition)
/// enabled transition from `config` on `letter` whose good set marks the
/// counter good. Transitions with inconclusive entries encountered before
/// a good one block the answer and are reported, never guessed over.
pub fn resolver_move(
    net: &Ocn,
    good_sets: &[GoodSet],
    config: &Config,
    letter: &str,
) -> ResolverMove {
    let mut enabled = enabled_transitions(net, config, letter);
    enabled.sort_by_key(|t| t.render());
    let mut blocked = Vec::new();
    for t in &enabled {
        let status = good_sets
            .iter()
            .find(|g| g.transition == *t)
            .map_or(Goodness::Inconclusive, |g| g.goodness_at(config.counter));
        match status {
            Goodness::Good if blocked.is_empty() => return ResolverMove::Move(t.clone()),
            Goodness::Good => blocked.push(t.clone()),
            Goodness::NotGood => {}
            Goodness::Inconclusive => blocked.push(t.clone()),
        }
    }
    if blocked.is_empty() {
        ResolverMove::NoMove
    } else {
        ResolverMove::Inconclusive(blocked)
    }
}
