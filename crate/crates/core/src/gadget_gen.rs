//! Generators for the hardness-reduction gadget families, with exact
//! ground-truth oracles.
//!
//! Three reductions are implemented as instance generators:
//! alternating unary-alphabet automata compiled to nets whose
//! history-determinism mirrors AFA emptiness; succinct counter
//! reachability games compiled to succinct nets whose
//! history-determinism mirrors the universal player winning; and pairs of
//! deterministic one-counter automata compiled to a fork automaton whose
//! history-determinism mirrors language inclusion. Every emitted
//! instance ships with the label, the oracle that certified it, and the
//! oracle's bounds, so downstream checks are self-validating.

use crate::net_model::{
    Guard, NetError, Oca, OcaTransition, Ocn, SuccinctOcn, Transition,
};
use crate::textfmt::{emit_oca, emit_ocn, emit_socn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// An alternating finite automaton over a one-letter alphabet: states
/// are split between an existential and a universal player and
/// transitions alternate between the two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnaryAfa {
    pub or_states: BTreeSet<String>,
    pub and_states: BTreeSet<String>,
    pub transitions: BTreeSet<(String, String)>,
    pub initial: String,
    pub finals: BTreeSet<String>,
}

impl UnaryAfa {
    pub fn states(&self) -> BTreeSet<String> {
        &self.or_states | &self.and_states
    }

    pub fn validate(&self) -> Result<(), NetError> {
        let all = self.states();
        if self.or_states.intersection(&self.and_states).next().is_some() {
            return Err(NetError::Invalid("player partitions overlap".to_string()));
        }
        if !all.contains(&self.initial) {
            return Err(NetError::Invalid("undeclared initial state".to_string()));
        }
        for f in &self.finals {
            if !all.contains(f) {
                return Err(NetError::Invalid(format!("undeclared final state `{f}`")));
            }
        }
        for (s, t) in &self.transitions {
            let alternates = (self.or_states.contains(s) && self.and_states.contains(t))
                || (self.and_states.contains(s) && self.or_states.contains(t));
            if !alternates {
                return Err(NetError::Invalid(format!(
                    "transition `{s} -> {t}` does not alternate between the players"
                )));
            }
        }
        Ok(())
    }

    fn successors(&self, q: &str) -> Vec<&String> {
        self.transitions.iter().filter(|(s, _)| s == q).map(|(_, t)| t).collect()
    }
}

fn afa_step(afa: &UnaryAfa, acc: &BTreeSet<String>) -> BTreeSet<String> {
    let mut next = BTreeSet::new();
    for q in &afa.or_states {
        if afa.successors(q).iter().any(|t| acc.contains(*t)) {
            next.insert(q.clone());
        }
    }
    for q in &afa.and_states {
        // Universal quantification over the empty successor set holds
        // vacuously.
        if afa.successors(q).iter().all(|t| acc.contains(*t)) {
            next.insert(q.clone());
        }
    }
    next
}

/// Exact set of accepted word lengths up to `nmax`, by iterating the
/// accepting-set recursion.
pub fn afa_accept_lengths(afa: &UnaryAfa, nmax: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut acc = afa.finals.clone();
    for n in 0..=nmax {
        if acc.contains(&afa.initial) {
            out.insert(n);
        }
        acc = afa_step(afa, &acc);
    }
    out
}

/// Exact emptiness: the subset sequence `Acc_0, Acc_1, ...` is eventually
/// cyclic, so the language is nonempty iff the initial state appears in
/// some accepting set before the first repeat.
pub fn afa_empty(afa: &UnaryAfa) -> bool {
    let mut seen: BTreeSet<BTreeSet<String>> = BTreeSet::new();
    let mut acc = afa.finals.clone();
    while seen.insert(acc.clone()) {
        if acc.contains(&afa.initial) {
            return false;
        }
        acc = afa_step(afa, &acc);
    }
    true
}

/// Letter that proposes the universal player's move toward `q`.
pub fn afa_choice_letter(q: &str) -> String {
    format!("a_{q}")
}

/// Compiles a unary AFA into a net that is history-deterministic iff the
/// AFA's language is empty.
///
/// The net lets the adversary pump a counter with `1`s, then replay a run
/// of the AFA letter by letter, each step paying one counter unit:
/// existential choices are spelled out in the letters, universal choices
/// are left as nondeterminism. Escape states make any unfaithful letter
/// harmless. After a `$`, a final AFA state with counter exactly zero
/// forces a blind choice between the two suit states; anywhere else the
/// run escapes deterministically. All states are accepting.
pub fn afa_to_ocn(afa: &UnaryAfa) -> Result<Ocn, NetError> {
    afa.validate()?;
    let extra = ["qI", "qwin1", "qwin2", "qheart", "qclub", "qlast"];
    for e in extra {
        if afa.states().contains(e) {
            return Err(NetError::Invalid(format!("state name `{e}` is reserved by the gadget")));
        }
    }
    let mut states: Vec<String> = afa.states().into_iter().collect();
    states.extend(extra.iter().map(|s| s.to_string()));
    let mut alphabet: Vec<String> = vec!["$".into(), "heart".into(), "club".into(), "1".into(), "a".into()];
    for q in &afa.and_states {
        alphabet.push(afa_choice_letter(q));
    }
    let mut tr: Vec<Transition> = Vec::new();
    // (1) pump, then enter the AFA copy.
    tr.push(Transition::new("qI", "1", 1, "qI"));
    tr.push(Transition::new("qI", "$", 0, &afa.initial));
    for q_or in &afa.or_states {
        let succ: BTreeSet<&String> = afa.successors(q_or).into_iter().collect();
        for q in &afa.and_states {
            if succ.contains(q) {
                // (2) faithful existential step.
                tr.push(Transition::new(q_or, &afa_choice_letter(q), -1, q));
            } else {
                // (3) unfaithful proposal escapes.
                tr.push(Transition::new(q_or, &afa_choice_letter(q), -1, "qwin1"));
            }
        }
        // (4) the universal-move letter at an existential state escapes.
        tr.push(Transition::new(q_or, "a", -1, "qwin1"));
    }
    for q_and in &afa.and_states {
        // (5) universal step, resolved as nondeterminism.
        for q in afa.successors(q_and) {
            tr.push(Transition::new(q_and, "a", -1, q));
        }
        // (6) existential-style letters at a universal state escape.
        for p in &afa.and_states {
            tr.push(Transition::new(q_and, &afa_choice_letter(p), -1, "qwin1"));
        }
    }
    for q in afa.states() {
        if afa.finals.contains(&q) {
            // (7) at a final state, zero counter forces the suit choice.
            tr.push(Transition::new(&q, "$", -1, "qwin2"));
            tr.push(Transition::new(&q, "$", 0, "qclub"));
            tr.push(Transition::new(&q, "$", 0, "qheart"));
        } else {
            // (8) non-final states end the replay harmlessly.
            tr.push(Transition::new(&q, "$", 0, "qwin2"));
        }
    }
    // (9) and (10): the escape state absorbs any replay tail.
    tr.push(Transition::new("qwin1", "$", 0, "qwin2"));
    tr.push(Transition::new("qwin1", "a", -1, "qwin1"));
    for q in &afa.and_states {
        tr.push(Transition::new("qwin1", &afa_choice_letter(q), -1, "qwin1"));
    }
    // (11) suits end the word.
    tr.push(Transition::new("qheart", "heart", 0, "qlast"));
    tr.push(Transition::new("qclub", "club", 0, "qlast"));
    tr.push(Transition::new("qwin2", "heart", 0, "qlast"));
    tr.push(Transition::new("qwin2", "club", 0, "qlast"));

    let state_refs: Vec<&str> = states.iter().map(|s| s.as_str()).collect();
    let letter_refs: Vec<&str> = alphabet.iter().map(|s| s.as_str()).collect();
    let finals = state_refs.clone();
    Ok(Ocn::new(&state_refs, &letter_refs, "qI", &finals, tr))
}

/// A reachability game on a succinct one-counter net: states are split
/// between the reaching player (`or`) and the avoiding player (`and`),
/// transitions carry arbitrary binary-encoded counter deltas and
/// alternate between the sides, and the reaching player wins by visiting
/// a final state with counter exactly zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocnGame {
    pub or_states: BTreeSet<String>,
    pub and_states: BTreeSet<String>,
    pub transitions: BTreeSet<(String, i64, String)>,
    pub initial: String,
    pub finals: BTreeSet<String>,
}

impl SocnGame {
    pub fn states(&self) -> BTreeSet<String> {
        &self.or_states | &self.and_states
    }

    pub fn validate(&self) -> Result<(), NetError> {
        let all = self.states();
        if self.or_states.intersection(&self.and_states).next().is_some() {
            return Err(NetError::Invalid("player partitions overlap".to_string()));
        }
        if !all.contains(&self.initial) {
            return Err(NetError::Invalid("undeclared initial state".to_string()));
        }
        for f in &self.finals {
            if !all.contains(f) {
                return Err(NetError::Invalid(format!("undeclared final state `{f}`")));
            }
        }
        for (s, _, t) in &self.transitions {
            let alternates = (self.or_states.contains(s) && self.and_states.contains(t))
                || (self.and_states.contains(s) && self.or_states.contains(t));
            if !alternates {
                return Err(NetError::Invalid(format!(
                    "transition `{s} -> {t}` does not alternate between the players"
                )));
            }
        }
        Ok(())
    }

    fn moves(&self, q: &str, k: u64) -> Vec<(i64, &String)> {
        self.transitions
            .iter()
            .filter(|(s, d, _)| s == q && k as i64 + d >= 0)
            .map(|(_, d, t)| (*d, t))
            .collect()
    }
}

/// Bounded verdict of a reachability game search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SocnOutcome {
    OrWins,
    AndWins,
    Unknown,
}

/// Alternating attractor on configurations with counter at most `cap`.
/// Moves pushing the counter past the cap are resolved by `escape_wins`:
/// `false` computes the certified reaching-player winning set (out of
/// bounds counts as a failed branch), `true` computes an over-approximation
/// (out of bounds counts as possibly winning). Attractor ranks are capped
/// at `depth`, bounding the certified strategy's play length.
fn socn_attractor(game: &SocnGame, cap: u64, depth: usize, escape_wins: bool) -> BTreeSet<(String, u64)> {
    let mut won: BTreeSet<(String, u64)> = BTreeSet::new();
    for q in &game.finals {
        won.insert((q.clone(), 0));
    }
    for _ in 0..depth {
        let mut grew = false;
        for q in game.states() {
            let is_or = game.or_states.contains(&q);
            for k in 0..=cap {
                if won.contains(&(q.clone(), k)) {
                    continue;
                }
                let moves = game.moves(&q, k);
                if moves.is_empty() {
                    // A halted play never reaches the target.
                    continue;
                }
                let move_wins = |(d, t): &(i64, &String)| -> bool {
                    let k2 = (k as i64 + d) as u64;
                    if k2 > cap {
                        escape_wins
                    } else {
                        won.contains(&((*t).clone(), k2))
                    }
                };
                let attracted = if is_or {
                    moves.iter().any(move_wins)
                } else {
                    moves.iter().all(move_wins)
                };
                if attracted {
                    won.insert((q.clone(), k));
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    won
}

/// States from which some final state is reachable in the underlying
/// directed graph, ignoring players and counters.
fn finals_graph_reachable(game: &SocnGame) -> BTreeSet<String> {
    let mut can = game.finals.clone();
    loop {
        let mut grew = false;
        for (s, _, t) in &game.transitions {
            if can.contains(t) && can.insert(s.clone()) {
                grew = true;
            }
        }
        if !grew {
            return can;
        }
    }
}

/// Bounded solve of the reachability game from `(initial, 0)`.
///
/// `OrWins` is certified: the reaching player has a strategy hitting a
/// final state at counter zero within `depth` moves, never exceeding the
/// counter cap. `AndWins` is certified when either no final state is
/// graph-reachable at all, or the avoiding player keeps the play out of
/// the over-approximated reaching set (escapes past the cap credited to
/// the reaching player). Everything else is `Unknown`.
pub fn socn_solve_bounded(game: &SocnGame, cap: u64, depth: usize) -> SocnOutcome {
    let start = (game.initial.clone(), 0u64);
    if socn_attractor(game, cap, depth, false).contains(&start) {
        return SocnOutcome::OrWins;
    }
    if !finals_graph_reachable(game).contains(&game.initial) {
        return SocnOutcome::AndWins;
    }
    // The full fixpoint needs at most one rank per configuration.
    let full = game.states().len() * (cap as usize + 1) + 1;
    if !socn_attractor(game, cap, full, true).contains(&start) {
        return SocnOutcome::AndWins;
    }
    SocnOutcome::Unknown
}

/// Letter that confirms the game transition `(source, delta, target)`.
pub fn socn_move_letter(t: &(String, i64, String)) -> String {
    format!("a_{}:{}:{}", t.0, t.1, t.2)
}

fn win_name(q: &str) -> String {
    format!("{q}_win")
}

fn twin_name(q: &str) -> String {
    format!("{q}_twin")
}

fn pick_name(t: &(String, i64, String)) -> String {
    format!("{}_pick_{}:{}", t.0, t.1, t.2)
}

/// Compiles a reachability game into a succinct net that is
/// history-deterministic iff the avoiding player wins the game.
///
/// Words transcribe plays: the adversary spells the reaching player's
/// moves in the letters, the avoiding player's moves are nondeterministic
/// choices that the adversary must then confirm; an unconfirmed choice
/// diverts the run into a deterministic transcript-checking copy. A `$`
/// at a final state with counter zero forces the blind suit choice. All
/// states are accepting.
pub fn socn_to_ocn(game: &SocnGame) -> Result<SuccinctOcn, NetError> {
    game.validate()?;
    let mut states: Vec<String> = game.states().into_iter().collect();
    let mut tr: Vec<Transition> = Vec::new();
    let mut alphabet: Vec<String> =
        vec!["$".into(), "heart".into(), "club".into(), "a".into()];
    for t in &game.transitions {
        alphabet.push(socn_move_letter(t));
    }
    for t in &game.transitions {
        if game.and_states.contains(&t.0) {
            states.push(pick_name(t));
        }
    }
    for q in game.states() {
        states.push(win_name(&q));
    }
    for q in &game.and_states {
        states.push(twin_name(q));
    }
    for e in ["q_dollar", "qheart", "qclub", "qlast"] {
        states.push(e.to_string());
    }
    {
        let mut sorted = states.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != states.len() {
            return Err(NetError::Invalid("state names collide with gadget names".to_string()));
        }
    }

    // (1) reaching player's moves, spelled in the letters.
    for t in &game.transitions {
        if game.or_states.contains(&t.0) {
            tr.push(Transition::new(&t.0, &socn_move_letter(t), t.1, &t.2));
        }
    }
    // (2)-(4) avoiding player's moves: choose on `a`, await confirmation;
    // a different same-state confirmation diverts to the checking copy.
    for t in &game.transitions {
        if !game.and_states.contains(&t.0) {
            continue;
        }
        tr.push(Transition::new(&t.0, "a", 0, &pick_name(t)));
        tr.push(Transition::new(&pick_name(t), &socn_move_letter(t), t.1, &t.2));
        for u in &game.transitions {
            if u.0 == t.0 && u != t {
                tr.push(Transition::new(
                    &pick_name(t),
                    &socn_move_letter(u),
                    u.1,
                    &win_name(&u.2),
                ));
            }
        }
    }
    // (5)-(6) the end-of-play letter.
    for q in game.states() {
        if game.finals.contains(&q) {
            tr.push(Transition::new(&q, "$", -1, "q_dollar"));
            tr.push(Transition::new(&q, "$", 0, "qclub"));
            tr.push(Transition::new(&q, "$", 0, "qheart"));
        } else {
            tr.push(Transition::new(&q, "$", 0, "q_dollar"));
        }
    }
    // (7)-(8) suits end the word.
    tr.push(Transition::new("qheart", "heart", 0, "qlast"));
    tr.push(Transition::new("qclub", "club", 0, "qlast"));
    tr.push(Transition::new("q_dollar", "heart", 0, "qlast"));
    tr.push(Transition::new("q_dollar", "club", 0, "qlast"));
    // The transcript-checking copy: replays any valid transition sequence
    // deterministically.
    for t in &game.transitions {
        if game.or_states.contains(&t.0) {
            tr.push(Transition::new(&win_name(&t.0), &socn_move_letter(t), t.1, &win_name(&t.2)));
        } else {
            tr.push(Transition::new(&twin_name(&t.0), &socn_move_letter(t), t.1, &win_name(&t.2)));
        }
    }
    for q in &game.and_states {
        tr.push(Transition::new(&win_name(q), "a", 0, &twin_name(q)));
    }
    for q in game.states() {
        tr.push(Transition::new(&win_name(&q), "$", 0, "q_dollar"));
    }

    let state_refs: Vec<&str> = states.iter().map(|s| s.as_str()).collect();
    let letter_refs: Vec<&str> = alphabet.iter().map(|s| s.as_str()).collect();
    let finals = state_refs.clone();
    Ok(SuccinctOcn(Ocn::new(&state_refs, &letter_refs, &game.initial, &finals, tr)))
}

/// Compiles a pair of deterministic one-counter automata into a fork
/// automaton that is history-deterministic iff the left language is
/// included in the right one (the general property is undecidable; the
/// generator only emits pairs whose inclusion status is known by
/// construction).
///
/// The right automaton is first augmented with one fresh accepted word,
/// making inclusion strict; a fresh initial state forks on a fresh letter
/// to either side, the single nondeterministic choice.
pub fn doca_inclusion_to_oca(a: &Oca, b: &Oca) -> Result<Oca, NetError> {
    if !a.is_deterministic() || !b.is_deterministic() {
        return Err(NetError::Invalid("inputs must be deterministic".to_string()));
    }
    if a.alphabet != b.alphabet {
        return Err(NetError::AlphabetMismatch(
            "inclusion requires both automata over the same alphabet".to_string(),
        ));
    }
    for l in ["cat", "fork"] {
        if a.alphabet.contains(l) {
            return Err(NetError::ReservedLetter(l.to_string()));
        }
    }
    let ren = |p: &str, s: &str| format!("{p}.{s}");
    let mut states: BTreeSet<String> = BTreeSet::new();
    let mut transitions: BTreeSet<OcaTransition> = BTreeSet::new();
    let mut finals: BTreeSet<String> = BTreeSet::new();
    for (prefix, side) in [("L", a), ("R", b)] {
        states.extend(side.states.iter().map(|s| ren(prefix, s)));
        finals.extend(side.finals.iter().map(|s| ren(prefix, s)));
        transitions.extend(side.transitions.iter().map(|t| {
            OcaTransition::new(&ren(prefix, &t.source), t.guard, &t.letter, t.delta, &ren(prefix, &t.target))
        }));
    }
    // Augment the right side with the one-word language {cat}.
    states.insert("R.extra".to_string());
    finals.insert("R.extra".to_string());
    for g in [Guard::Zero, Guard::NonZero] {
        transitions.insert(OcaTransition::new(&ren("R", &b.initial), g, "cat", 0, "R.extra"));
    }
    states.insert("start".to_string());
    let mut alphabet = a.alphabet.clone();
    alphabet.insert("cat".to_string());
    alphabet.insert("fork".to_string());
    transitions.insert(OcaTransition::new("start", Guard::Zero, "fork", 0, &ren("L", &a.initial)));
    transitions.insert(OcaTransition::new("start", Guard::Zero, "fork", 0, &ren("R", &b.initial)));
    let out = Oca {
        states,
        alphabet,
        initial: "start".to_string(),
        finals,
        transitions,
    };
    debug_assert!(out.validate().is_valid());
    Ok(out)
}

/// One generated corpus entry: the instance text, its ground-truth label,
/// and the oracle (with bounds) that certified the label.
#[derive(Clone, Debug)]
pub struct CorpusInstance {
    pub name: String,
    pub text: String,
    pub label: String,
    pub oracle: String,
    pub bounds: String,
}

/// Renders a corpus manifest, one line per instance:
/// `path<TAB>label<TAB>oracle<TAB>bounds`.
pub fn manifest(instances: &[CorpusInstance]) -> String {
    let mut out = String::new();
    for inst in instances {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            inst.name, inst.label, inst.oracle, inst.bounds
        ));
    }
    out
}

/// Random unary AFA with at most `max_states` states per side; every
/// universal state is given at least one successor to stay within the
/// alternation discipline.
pub fn random_afa(rng: &mut ChaCha8Rng, max_states: usize) -> UnaryAfa {
    let n_or = 1 + rng.gen_range(0..max_states);
    let n_and = 1 + rng.gen_range(0..max_states);
    let or_states: BTreeSet<String> = (0..n_or).map(|i| format!("e{i}")).collect();
    let and_states: BTreeSet<String> = (0..n_and).map(|i| format!("u{i}")).collect();
    let mut transitions = BTreeSet::new();
    for s in &or_states {
        for t in &and_states {
            if rng.gen_bool(0.5) {
                transitions.insert((s.clone(), t.clone()));
            }
        }
    }
    for s in &and_states {
        let mut any = false;
        for t in &or_states {
            if rng.gen_bool(0.5) {
                transitions.insert((s.clone(), t.clone()));
                any = true;
            }
        }
        if !any {
            let t = or_states.iter().nth(rng.gen_range(0..n_or)).unwrap();
            transitions.insert((s.clone(), t.clone()));
        }
    }
    let initial = "e0".to_string();
    let all: Vec<String> = or_states.iter().chain(and_states.iter()).cloned().collect();
    let finals: BTreeSet<String> = all.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
    let afa = UnaryAfa { or_states, and_states, transitions, initial, finals };
    debug_assert!(afa.validate().is_ok());
    afa
}

/// Generates `count` labelled AFA-gadget nets; labels come from the exact
/// emptiness oracle.
pub fn gen_afa_corpus(seed: u64, count: usize) -> Vec<CorpusInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..count {
        let afa = random_afa(&mut rng, 2);
        let net = afa_to_ocn(&afa).expect("generated AFA compiles");
        let empty = afa_empty(&afa);
        out.push(CorpusInstance {
            name: format!("afa-{seed}-{i}.ocn"),
            text: emit_ocn(&net),
            label: if empty { "hd" } else { "not-hd" }.to_string(),
            oracle: "afa-emptiness-subset-cycle".to_string(),
            bounds: "exact".to_string(),
        });
    }
    out
}

/// Random small reachability game; transitions alternate by construction.
pub fn random_socn_game(rng: &mut ChaCha8Rng, max_states: usize, max_delta: i64) -> SocnGame {
    let n_or = 1 + rng.gen_range(0..max_states);
    let n_and = 1 + rng.gen_range(0..max_states);
    let or_states: BTreeSet<String> = (0..n_or).map(|i| format!("v{i}")).collect();
    let and_states: BTreeSet<String> = (0..n_and).map(|i| format!("w{i}")).collect();
    let mut transitions = BTreeSet::new();
    let n_tr = 2 + rng.gen_range(0..3usize);
    for _ in 0..n_tr {
        let d = rng.gen_range(-max_delta..=max_delta);
        if rng.gen_bool(0.5) {
            let s = or_states.iter().nth(rng.gen_range(0..n_or)).unwrap().clone();
            let t = and_states.iter().nth(rng.gen_range(0..n_and)).unwrap().clone();
            transitions.insert((s, d, t));
        } else {
            let s = and_states.iter().nth(rng.gen_range(0..n_and)).unwrap().clone();
            let t = or_states.iter().nth(rng.gen_range(0..n_or)).unwrap().clone();
            transitions.insert((s, d, t));
        }
    }
    let all: Vec<String> = or_states.iter().chain(and_states.iter()).cloned().collect();
    let finals: BTreeSet<String> = all.iter().filter(|_| rng.gen_bool(0.3)).cloned().collect();
    let game = SocnGame {
        or_states,
        and_states,
        transitions,
        initial: "v0".to_string(),
        finals,
    };
    debug_assert!(game.validate().is_ok());
    game
}

/// Generates up to `count` labelled succinct-net instances; games whose
/// bounded solve is inconclusive are skipped, and the bounds used are
/// recorded in the manifest.
pub fn gen_socn_corpus(seed: u64, count: usize) -> Vec<CorpusInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let (cap, depth) = (64u64, 32usize);
    let mut attempts = 0;
    while out.len() < count && attempts < count * 20 {
        attempts += 1;
        let game = random_socn_game(&mut rng, 3, 4);
        let verdict = socn_solve_bounded(&game, cap, depth);
        if verdict == SocnOutcome::Unknown {
            continue;
        }
        let net = socn_to_ocn(&game).expect("generated game compiles");
        out.push(CorpusInstance {
            name: format!("socn-{seed}-{}.socn", out.len()),
            text: emit_socn(&net),
            label: if verdict == SocnOutcome::AndWins { "hd" } else { "not-hd" }.to_string(),
            oracle: "socn-bounded-alternating-search".to_string(),
            bounds: format!("cap={cap} depth={depth}"),
        });
    }
    out
}

/// Generates labelled automaton-inclusion instances: half with inclusion
/// holding by construction (the right side is the left side with extra
/// final states), half with a constructed separating word.
pub fn gen_doca_corpus(seed: u64, count: usize) -> Vec<CorpusInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..count {
        let included = i % 2 == 0;
        let n = 2 + rng.gen_range(0..2usize);
        let states: Vec<String> = (0..n).map(|k| format!("q{k}")).collect();
        let refs: Vec<&str> = states.iter().map(|s| s.as_str()).collect();
        let letters = ["x", "y"];
        let mut transitions = Vec::new();
        for s in &refs {
            for l in &letters {
                for g in [Guard::Zero, Guard::NonZero] {
                    let mut d = rng.gen_range(-1..=1i64);
                    if g == Guard::Zero && d < 0 {
                        d = 0;
                    }
                    transitions.push(OcaTransition::new(
                        s,
                        g,
                        l,
                        d,
                        refs[rng.gen_range(0..n)],
                    ));
                }
            }
        }
        let a_finals: Vec<&str> = refs.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let a = Oca::new(&refs, &letters, refs[0], &a_finals, transitions.clone());
        let b = if included {
            // Same structure, superset of finals: inclusion by construction.
            let extra: Vec<&str> = refs
                .iter()
                .filter(|s| a_finals.contains(s) || rng.gen_bool(0.5))
                .cloned()
                .collect();
            Oca::new(&refs, &letters, refs[0], &extra, transitions.clone())
        } else {
            // Right side accepts nothing while the left accepts epsilon:
            // a separating word exists by construction.
            let mut a2 = a.clone();
            a2.finals = [refs[0].to_string()].into_iter().collect();
            let b = Oca::new(&refs, &letters, refs[0], &[], transitions.clone());
            let h = doca_inclusion_to_oca(&a2, &b).expect("generated pair compiles");
            out.push(CorpusInstance {
                name: format!("doca-{seed}-{i}.oca"),
                text: emit_oca(&h),
                label: "not-inclusion".to_string(),
                oracle: "constructed-separating-word".to_string(),
                bounds: "witness=epsilon-after-fork".to_string(),
            });
            continue;
        };
        let h = doca_inclusion_to_oca(&a, &b).expect("generated pair compiles");
        out.push(CorpusInstance {
            name: format!("doca-{seed}-{i}.oca"),
            text: emit_oca(&h),
            label: "inclusion".to_string(),
            oracle: "finals-superset-construction".to_string(),
            bounds: "structural".to_string(),
        });
    }
    out
}
