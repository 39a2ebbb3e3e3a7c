//! Simulation games between one-counter nets.
//!
//! Builds the simulation-game arena (Spoiler picks a letter and a
//! transition, Duplicator answers on the same letter; finality mismatches
//! and unanswerable letters are Spoiler wins), decides it with the
//! certified engine, converts to and from the classical stuck-based
//! simulation variant, and extracts winning frontiers together with their
//! semilinear descriptions.

use crate::game_engine::{
    certified_solve, default_cap_schedule, CappedVerdict, MonotoneArena, Move, Outcome, Player,
    Position, DEFAULT_POSITION_BUDGET,
};
use crate::net_model::{complete, Config, NetError, Ocn, LETTER_DOLLAR};
use std::collections::BTreeSet;

/// A simulation query: does `(net_b, config_b)` simulate `(net_a, config_a)`?
///
/// Net A is the Spoiler side (its counter benefits Adam); net B is the
/// Duplicator side (its counter benefits Eve).
#[derive(Clone, Debug)]
pub struct SimQuery {
    pub net_a: Ocn,
    pub config_a: Config,
    pub net_b: Ocn,
    pub config_b: Config,
}

impl SimQuery {
    pub fn new(net_a: &Ocn, config_a: Config, net_b: &Ocn, config_b: Config) -> Self {
        SimQuery { net_a: net_a.clone(), config_a, net_b: net_b.clone(), config_b }
    }

    /// The query from the two initial states with equal counters `k`.
    pub fn initial(net_a: &Ocn, net_b: &Ocn, k: u64) -> Self {
        SimQuery::new(
            net_a,
            Config::new(&net_a.initial, k),
            net_b,
            Config::new(&net_b.initial, k),
        )
    }
}

/// A built simulation arena together with its start position.
#[derive(Clone, Debug)]
pub struct SimArena {
    pub arena: MonotoneArena,
    pub start: Position,
}

/// Control-space layout used by [`build_sim_arena`].
struct Layout {
    a_states: Vec<String>,
    b_states: Vec<String>,
    letters: Vec<String>,
}

impl Layout {
    fn new(net_a: &Ocn, net_b: &Ocn) -> Self {
        Layout {
            a_states: net_a.states.iter().cloned().collect(),
            b_states: net_b.states.iter().cloned().collect(),
            letters: net_a.alphabet.iter().cloned().collect(),
        }
    }
    fn a_idx(&self, s: &str) -> usize {
        self.a_states.iter().position(|x| x == s).expect("state of net A")
    }
    fn b_idx(&self, s: &str) -> usize {
        self.b_states.iter().position(|x| x == s).expect("state of net B")
    }
    fn l_idx(&self, a: &str) -> usize {
        self.letters.iter().position(|x| x == a).expect("alphabet letter")
    }
    // Control indices: 0 is unused padding, 1 = target sink, then the
    // round, answer, and cover controls.
    fn target(&self) -> usize {
        1
    }
    fn round(&self, p: usize, q: usize) -> usize {
        2 + p * self.b_states.len() + q
    }
    fn answer(&self, p: usize, q: usize, l: usize) -> usize {
        2 + self.a_states.len() * self.b_states.len()
            + (p * self.b_states.len() + q) * self.letters.len()
            + l
    }
    fn cover(&self, p: usize) -> usize {
        2 + self.a_states.len() * self.b_states.len()
            + self.a_states.len() * self.b_states.len() * self.letters.len()
            + p
    }
    fn count(&self) -> usize {
        2 + self.a_states.len() * self.b_states.len() * (1 + self.letters.len())
            + self.a_states.len()
    }
}

/// Builds the simulation-game arena for `q`.
///
/// Controls: `round(p, q)` — Adam to pick a letter and a Spoiler
/// transition; `answer(p, q, a)` — Eve to answer letter `a` from `q`
/// (Spoiler already moved to `p`); `cover(p)` — the compiled form of the
/// stuck rule; and an absorbing target.
///
/// Adam targets: `round(p, q)` with `p` final and `q` non-final (finality
/// mismatch), and the absorbing target reached from `cover(p)` exactly
/// when the Spoiler counter covers an accepting run (gated by a single
/// `-min_credit(p)` move). Eve's "declare stuck" move into `cover(p)` is
/// always available; taking it voluntarily is never a mistake exactly when
/// the Spoiler side can no longer reach acceptance.
///
/// The finality mismatch is checked at every visited pair, including the
/// initial one: the stuck-based variant (Spoiler plays the fresh letter
/// whenever his state is final) tests the initial pair as well, and only
/// this reading keeps the two games winner-equivalent.
pub fn build_sim_arena(q: &SimQuery) -> Result<SimArena, NetError> {
    if q.net_a.alphabet != q.net_b.alphabet {
        return Err(NetError::AlphabetMismatch(format!(
            "simulation needs equal alphabets (Spoiler {:?}, Duplicator {:?})",
            q.net_a.alphabet, q.net_b.alphabet
        )));
    }
    if !q.net_a.states.contains(&q.config_a.state) || !q.net_b.states.contains(&q.config_b.state) {
        return Err(NetError::Invalid("start configuration outside its net".to_string()));
    }
    let lay = Layout::new(&q.net_a, &q.net_b);
    let n = lay.count();
    let mut controls = vec![String::new(); n];
    let mut owner = vec![Player::Adam; n];
    let mut target = vec![false; n];
    let mut moves: Vec<Move> = Vec::new();

    controls[0] = "unused".to_string();
    controls[lay.target()] = "spoiler-win".to_string();
    target[lay.target()] = true;

    let need = q.net_a.min_credit();

    for (pi, p) in lay.a_states.iter().enumerate() {
        for (qi, qs) in lay.b_states.iter().enumerate() {
            let c = lay.round(pi, qi);
            controls[c] = format!("round({p},{qs})");
            owner[c] = Player::Adam;
            target[c] = q.net_a.finals.contains(p) && !q.net_b.finals.contains(qs);
            for (li, a) in lay.letters.iter().enumerate() {
                let e = lay.answer(pi, qi, li);
                controls[e] = format!("answer({p},{qs},{a})");
                owner[e] = Player::Eve;
            }
        }
        let cv = lay.cover(pi);
        controls[cv] = format!("cover({p})");
        owner[cv] = Player::Adam;
        if let Some(Some(k)) = need.get(p).map(|o| *o) {
            moves.push(Move {
                from: cv,
                label: format!("cover {p} with credit {k}"),
                d1: -(k as i64),
                d2: 0,
                to: lay.target(),
            });
        }
    }

    // Adam's combined (letter, Spoiler transition) moves from every round
    // control.
    let p0 = lay.a_idx(&q.config_a.state);
    let q0 = lay.b_idx(&q.config_b.state);
    for t in &q.net_a.transitions {
        let li = lay.l_idx(&t.letter);
        let p2 = lay.a_idx(&t.target);
        let pi = lay.a_idx(&t.source);
        for qi in 0..lay.b_states.len() {
            moves.push(Move {
                from: lay.round(pi, qi),
                label: format!("{} {}", t.letter, t.render()),
                d1: t.delta,
                d2: 0,
                to: lay.answer(p2, qi, li),
            });
        }
    }

    // Eve's answers and the always-available declare-stuck move.
    for (pi, _) in lay.a_states.iter().enumerate() {
        for (qi, qs) in lay.b_states.iter().enumerate() {
            for (li, a) in lay.letters.iter().enumerate() {
                let e = lay.answer(pi, qi, li);
                for t in q.net_b.transitions_from(qs, a) {
                    moves.push(Move {
                        from: e,
                        label: format!("answer {}", t.render()),
                        d1: 0,
                        d2: t.delta,
                        to: lay.round(pi, lay.b_idx(&t.target)),
                    });
                }
                moves.push(Move {
                    from: e,
                    label: "declare stuck".to_string(),
                    d1: 0,
                    d2: 0,
                    to: lay.cover(pi),
                });
            }
        }
    }

    let arena = MonotoneArena { controls, owner, moves, adam_target: target };
    arena.validate().map_err(NetError::Invalid)?;
    Ok(SimArena {
        arena,
        start: Position::new(lay.round(p0, q0), q.config_a.counter, q.config_b.counter),
    })
}

/// Decides the simulation query with the certified engine; `EveWins`
/// means the Duplicator side simulates the Spoiler side.
pub fn simulates(q: &SimQuery, caps: Option<&[u64]>) -> Result<CappedVerdict, NetError> {
    let sim = build_sim_arena(q)?;
    let schedule;
    let caps = match caps {
        Some(c) => c,
        None => {
            schedule = default_cap_schedule(&sim.arena);
            &schedule
        }
    };
    Ok(certified_solve(&sim.arena, sim.start, caps, DEFAULT_POSITION_BUDGET))
}

/// Builds the arena of the classical stuck-based simulation game: no
/// finality conditions; Eve loses exactly when she cannot answer the
/// letter Adam committed to (compiled as an always-available concession
/// that is only ever forced).
pub fn build_original_sim_arena(q: &SimQuery) -> Result<SimArena, NetError> {
    if q.net_a.alphabet != q.net_b.alphabet {
        return Err(NetError::AlphabetMismatch(format!(
            "simulation needs equal alphabets (Spoiler {:?}, Duplicator {:?})",
            q.net_a.alphabet, q.net_b.alphabet
        )));
    }
    let lay = Layout::new(&q.net_a, &q.net_b);
    // Reuse the layout but without cover controls (indices still allocated,
    // simply unused except the target sink).
    let n = lay.count();
    let mut controls = vec![String::new(); n];
    let mut owner = vec![Player::Adam; n];
    let mut target = vec![false; n];
    let mut moves: Vec<Move> = Vec::new();
    controls[0] = "unused".to_string();
    controls[lay.target()] = "spoiler-win".to_string();
    target[lay.target()] = true;
    for (pi, p) in lay.a_states.iter().enumerate() {
        for (qi, qs) in lay.b_states.iter().enumerate() {
            controls[lay.round(pi, qi)] = format!("round({p},{qs})");
            for (li, a) in lay.letters.iter().enumerate() {
                let e = lay.answer(pi, qi, li);
                controls[e] = format!("answer({p},{qs},{a})");
                owner[e] = Player::Eve;
                for t in q.net_b.transitions_from(qs, a) {
                    moves.push(Move {
                        from: e,
                        label: format!("answer {}", t.render()),
                        d1: 0,
                        d2: t.delta,
                        to: lay.round(pi, lay.b_idx(&t.target)),
                    });
                }
                moves.push(Move {
                    from: e,
                    label: "concede".to_string(),
                    d1: 0,
                    d2: 0,
                    to: lay.target(),
                });
            }
        }
        controls[lay.cover(pi)] = format!("unused({p})")
    }
    let p0 = lay.a_idx(&q.config_a.state);
    let q0 = lay.b_idx(&q.config_b.state);
    for t in &q.net_a.transitions {
        let li = lay.l_idx(&t.letter);
        let p2 = lay.a_idx(&t.target);
        let pi = lay.a_idx(&t.source);
        for qi in 0..lay.b_states.len() {
            moves.push(Move {
                from: lay.round(pi, qi),
                label: format!("{} {}", t.letter, t.render()),
                d1: t.delta,
                d2: 0,
                to: lay.answer(p2, qi, li),
            });
        }
    }
    let arena = MonotoneArena { controls, owner, moves, adam_target: target };
    arena.validate().map_err(NetError::Invalid)?;
    Ok(SimArena {
        arena,
        start: Position::new(lay.round(p0, q0), q.config_a.counter, q.config_b.counter),
    })
}

/// Decides the classical stuck-based simulation game.
pub fn original_simulates(q: &SimQuery, caps: Option<&[u64]>) -> Result<CappedVerdict, NetError> {
    let sim = build_original_sim_arena(q)?;
    let schedule;
    let caps = match caps {
        Some(c) => c,
        None => {
            schedule = default_cap_schedule(&sim.arena);
            &schedule
        }
    };
    Ok(certified_solve(&sim.arena, sim.start, caps, DEFAULT_POSITION_BUDGET))
}

/// Completion in the enabled sense: every state gets a 0-delta escape to
/// a rejecting sink on every letter, so no player is ever blocked on the
/// original alphabet — not even by a counter-blocked decrement. Taking an
/// escape is exactly as good as being stuck in the final-state game
/// (the sink rejects forever), so the winner is unchanged.
fn enabled_complete(net: &Ocn) -> Ocn {
    let mut out = net.clone();
    let sink = out.fresh_state("sink");
    out.states.insert(sink.clone());
    for q in &net.states {
        for a in &net.alphabet {
            out.transitions.insert(crate::net_model::Transition::new(q, a, 0, &sink));
        }
    }
    for a in &net.alphabet {
        out.transitions.insert(crate::net_model::Transition::new(&sink, a, 0, &sink));
    }
    out
}

/// Reduces the final-state simulation game to the stuck-based one:
/// complete both nets (in the enabled sense, so that being stuck on the
/// original alphabet is impossible), then add a fresh letter with 0-delta
/// self-loops exactly on the final states of each net.
pub fn to_original_sim(net_a: &Ocn, net_b: &Ocn) -> Result<(Ocn, Ocn), NetError> {
    let add_dollar = |net: &Ocn| -> Result<Ocn, NetError> {
        if net.alphabet.contains(LETTER_DOLLAR) {
            return Err(NetError::ReservedLetter(format!(
                "net already uses the reserved letter {LETTER_DOLLAR}"
            )));
        }
        let mut out = enabled_complete(net);
        out.alphabet.insert(LETTER_DOLLAR.to_string());
        for f in out.finals.clone() {
            out.transitions.insert(crate::net_model::Transition::new(&f, LETTER_DOLLAR, 0, &f));
        }
        Ok(out)
    };
    Ok((add_dollar(net_a)?, add_dollar(net_b)?))
}

/// Reduces the stuck-based simulation game to the final-state one:
/// complete each net with a rejecting sink and make every original state
/// accepting.
pub fn from_original_sim(net_a: &Ocn, net_b: &Ocn) -> (Ocn, Ocn) {
    let convert = |net: &Ocn| -> Ocn {
        let mut out = complete(net);
        out.finals = net.states.clone();
        out
    };
    (convert(net_a), convert(net_b))
}

/// One entry of a winning frontier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrontierEntry {
    /// The minimal Duplicator counter with a certified Duplicator win.
    Min(u64),
    /// Certified Spoiler win even at the search bound (minimum above it).
    AboveBound,
    /// Certification failed within the cap schedule.
    Unknown,
}

/// The winning frontier of a state pair: for each Spoiler counter
/// `k <= kmax`, the minimal Duplicator counter that wins.
#[derive(Clone, Debug)]
pub struct Frontier {
    pub state_pair: (String, String),
    pub kprime_bound: u64,
    pub table: Vec<FrontierEntry>,
}

impl Frontier {
    /// Canonical text rendering, one `k=.. kprime=..` line per entry.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, e) in self.table.iter().enumerate() {
            let val = match e {
                FrontierEntry::Min(v) => v.to_string(),
                FrontierEntry::AboveBound => format!(">{}", self.kprime_bound),
                FrontierEntry::Unknown => "unknown".to_string(),
            };
            out.push_str(&format!("k={k} kprime={val}\n"));
        }
        out
    }
}

/// Computes the winning frontier of `state_pair` for Spoiler counters up
/// to `kmax`: for each `k`, binary-search the minimal `k'` with a
/// certified Duplicator win (the true winning set is upward closed in
/// `k'`). Panics if the certified table violates monotonicity in `k`,
/// which would indicate a solver bug.
pub fn frontier(
    net_a: &Ocn,
    net_b: &Ocn,
    state_pair: (&str, &str),
    kmax: u64,
    caps: Option<&[u64]>,
) -> Result<Frontier, NetError> {
    let top_cap = caps.and_then(|c| c.last().copied()).unwrap_or(16);
    let kprime_bound = kmax + net_b.states.len() as u64 * top_cap;
    let solve = |k: u64, kp: u64| -> Result<Outcome, NetError> {
        let q = SimQuery::new(
            net_a,
            Config::new(state_pair.0, k),
            net_b,
            Config::new(state_pair.1, kp),
        );
        Ok(simulates(&q, caps)?.outcome)
    };
    let mut table = Vec::new();
    for k in 0..=kmax {
        let entry = match solve(k, kprime_bound)? {
            Outcome::AdamWins => FrontierEntry::AboveBound,
            Outcome::Inconclusive => FrontierEntry::Unknown,
            Outcome::EveWins => {
                // Binary search on the certified-win predicate (monotone in
                // k' because the true winner is and the certificates are
                // counter-monotone).
                let mut lo = 0u64; // lo-1 loses or lo == 0
                let mut hi = kprime_bound; // wins
                let mut conclusive = true;
                while lo < hi {
                    let mid = lo + (hi - lo) / 2;
                    match solve(k, mid)? {
                        Outcome::EveWins => hi = mid,
                        Outcome::AdamWins => lo = mid + 1,
                        Outcome::Inconclusive => {
                            conclusive = false;
                            break;
                        }
                    }
                }
                if conclusive {
                    FrontierEntry::Min(hi)
                } else {
                    FrontierEntry::Unknown
                }
            }
        };
        table.push(entry);
    }
    // Monotonicity post-check: more Spoiler counter never helps the
    // Duplicator side.
    let mut prev: Option<u64> = None;
    for e in &table {
        let cur = match e {
            FrontierEntry::Min(v) => Some(*v),
            FrontierEntry::AboveBound => Some(u64::MAX),
            FrontierEntry::Unknown => None,
        };
        if let (Some(p), Some(c)) = (prev, cur) {
            assert!(c >= p, "frontier table decreased: solver bug");
        }
        if cur.is_some() {
            prev = cur;
        }
    }
    Ok(Frontier {
        state_pair: (state_pair.0.to_string(), state_pair.1.to_string()),
        kprime_bound,
        table,
    })
}

/// An eventually-periodic subset of the naturals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearSet {
    pub threshold: u64,
    pub period: u64,
    pub base: BTreeSet<u64>,
    pub residues: BTreeSet<u64>,
}

impl SemilinearSet {
    pub fn membership(&self, k: u64) -> bool {
        if k < self.threshold {
            self.base.contains(&k)
        } else {
            self.residues.contains(&((k - self.threshold) % self.period))
        }
    }

    /// Canonical text rendering: `I=.. P=.. base={..} residues={..}`.
    pub fn render(&self) -> String {
        let set = |s: &BTreeSet<u64>| {
            let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", items.join(","))
        };
        format!(
            "I={} P={} base={} residues={}",
            self.threshold,
            self.period,
            set(&self.base),
            set(&self.residues)
        )
    }
}

/// Fits the smallest eventually-periodic description to a membership
/// bitvector over `0..=B`: the least threshold `I`, then the least period
/// `P <= (B - I) / 3`, such that the suffix from `I` is `P`-periodic —
/// demanding at least three full periods of evidence. Returns `None` when
/// no such description exists within the evidence bound.
pub fn detect_semilinear(samples: &[bool]) -> Option<SemilinearSet> {
    assert!(samples.len() >= 9, "need samples over at least 0..=8");
    let b = samples.len() - 1;
    for i in 0..=b {
        let maxp = (b - i) / 3;
        for p in 1..=maxp {
            if (i..=b - p).all(|k| samples[k] == samples[k + p]) {
                let set = SemilinearSet {
                    threshold: i as u64,
                    period: p as u64,
                    base: (0..i).filter(|k| samples[*k]).map(|k| k as u64).collect(),
                    residues: (i..i + p).filter(|k| samples[*k]).map(|k| (k - i) as u64).collect(),
                };
                debug_assert!((0..=b).all(|k| set.membership(k as u64) == samples[k]));
                return Some(set);
            }
        }
    }
    None
}
