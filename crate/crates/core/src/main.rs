//! Command-line front end: parse nets, run decisions, emit witnesses and
//! certificates, generate labelled gadget corpora, and host an
//! interactive letter-game REPL.
//!
//! Exit codes: 0 = positive verdict, 1 = negative verdict,
//! 2 = inconclusive, 3 = input error.

use clap::{Parser, Subcommand};
use ocnkit::determinizer::determinize;
use ocnkit::gadget_gen::{gen_afa_corpus, gen_doca_corpus, gen_socn_corpus, manifest, CorpusInstance};
use ocnkit::game_engine::{CappedVerdict, Outcome};
use ocnkit::hd_decision::{
    good_set, good_sets, is_history_deterministic, is_history_deterministic_succinct,
    letter_game_refuter, resolver_move, Goodness, ResolverMove,
};
use ocnkit::lang_ops::{hd_equivalence, hd_inclusion, universality};
use ocnkit::net_model::{expand_binary, Config, Ocn, Transition, DEFAULT_DELTA_LIMIT};
use ocnkit::sim_solver::{original_simulates, simulates, SimQuery};
use ocnkit::textfmt::{emit_oca, parse_net, NetFile};
use std::io::{BufRead, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_POSITIVE: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "ocnkit", about = "Toolkit for history-deterministic one-counter nets", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide history-determinism of a net.
    CheckHd {
        file: PathBuf,
        /// Comma-separated counter-cap schedule, e.g. 4,8,16.
        #[arg(long, value_delimiter = ',')]
        caps: Option<Vec<u64>>,
    },
    /// Decide whether configuration A is simulated by configuration B.
    Simulate {
        file_a: PathBuf,
        state_a: String,
        k_a: u64,
        file_b: PathBuf,
        state_b: String,
        k_b: u64,
        /// Use the classical simulation semantics via the reduction.
        #[arg(long)]
        original_sim: bool,
        #[arg(long, value_delimiter = ',')]
        caps: Option<Vec<u64>>,
    },
    /// Exact membership of a word.
    Member {
        file: PathBuf,
        /// Letters of the word, either as separate arguments or as one
        /// comma-separated (or, for single-character letters, contiguous)
        /// string. No letters means the empty word.
        word: Vec<String>,
    },
    /// Is the word a live prefix (extendable to an accepted word)?
    Prefix {
        file: PathBuf,
        word: Vec<String>,
    },
    /// Language inclusion of two history-deterministic nets.
    Include {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, value_delimiter = ',')]
        caps: Option<Vec<u64>>,
    },
    /// Language equivalence of two history-deterministic nets.
    Equiv {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, value_delimiter = ',')]
        caps: Option<Vec<u64>>,
    },
    /// Universality of a history-deterministic net.
    Universal {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        caps: Option<Vec<u64>>,
    },
    /// Good set of one transition, with a semilinear fit when conclusive.
    GoodSet {
        file: PathBuf,
        /// The transition as one quoted string: "SOURCE LETTER DELTA TARGET".
        transition: String,
        #[arg(long, default_value_t = 16)]
        bound: u64,
        #[arg(long, value_delimiter = ',')]
        caps: Option<Vec<u64>>,
    },
    /// Determinize a history-deterministic net into an equivalent
    /// deterministic one-counter automaton.
    Determinize {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 16)]
        bound: u64,
        #[arg(long, value_delimiter = ',')]
        caps: Option<Vec<u64>>,
    },
    /// Generate a labelled corpus from random alternating unary automata.
    GenAfa {
        seed: u64,
        count: usize,
        #[arg(long, default_value = "corpus")]
        out_dir: PathBuf,
    },
    /// Generate a labelled corpus from random succinct counter games.
    GenSocn {
        seed: u64,
        count: usize,
        #[arg(long, default_value = "corpus")]
        out_dir: PathBuf,
    },
    /// Generate a labelled corpus of automaton-inclusion instances.
    GenDoca {
        seed: u64,
        count: usize,
        #[arg(long, default_value = "corpus")]
        out_dir: PathBuf,
    },
    /// Interactive letter game: you play the adversary, the tool resolves.
    Play {
        file: PathBuf,
        #[arg(long, default_value_t = 16)]
        bound: u64,
    },
}

fn input_error(msg: impl AsRef<str>) -> ExitCode {
    eprintln!("error: {}", msg.as_ref());
    ExitCode::from(EXIT_INPUT_ERROR)
}

fn load(path: &PathBuf) -> Result<NetFile, ExitCode> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))?;
    parse_net(&text)
        .map_err(|e| input_error(format!("{}: line {}: {}", path.display(), e.line, e.msg)))
}

/// A unary net view of any input file; succinct nets are expanded,
/// automata are rejected.
fn as_unary(file: &NetFile, path: &PathBuf) -> Result<Ocn, ExitCode> {
    match file {
        NetFile::Ocn(n) => Ok(n.clone()),
        NetFile::Socn(s) => expand_binary(s, DEFAULT_DELTA_LIMIT)
            .map_err(|e| input_error(format!("{}: {e}", path.display()))),
        NetFile::Oca(_) => Err(input_error(format!(
            "{}: this operation needs a net, not an automaton",
            path.display()
        ))),
    }
}

/// Turns the word arguments into letters. A single argument that is not
/// itself a letter is split on commas, or into characters when every
/// character is a single-letter alphabet symbol.
fn parse_word(alphabet: &std::collections::BTreeSet<String>, raw: &[String]) -> Result<Vec<String>, String> {
    let tokens: Vec<String> = if raw.len() == 1 && !alphabet.contains(&raw[0]) {
        if raw[0].contains(',') {
            raw[0].split(',').map(|s| s.to_string()).collect()
        } else {
            raw[0].chars().map(|c| c.to_string()).collect()
        }
    } else {
        raw.to_vec()
    };
    for t in &tokens {
        if !alphabet.contains(t) {
            return Err(format!("letter `{t}` is not in the alphabet"));
        }
    }
    Ok(tokens)
}

fn verdict_exit(v: &CappedVerdict, positive: &str, negative: &str) -> ExitCode {
    let label = match v.outcome {
        Outcome::EveWins => positive,
        Outcome::AdamWins => negative,
        Outcome::Inconclusive => "inconclusive",
    };
    println!("verdict: {label}");
    println!("cap_used: {}", v.cap_used);
    match v.outcome {
        Outcome::EveWins => ExitCode::from(EXIT_POSITIVE),
        Outcome::AdamWins => ExitCode::from(EXIT_NEGATIVE),
        Outcome::Inconclusive => ExitCode::from(EXIT_INCONCLUSIVE),
    }
}

fn check_hd(file: &PathBuf, caps: Option<&[u64]>) -> ExitCode {
    let parsed = match load(file) {
        Ok(f) => f,
        Err(c) => return c,
    };
    let (verdict, unary) = match &parsed {
        NetFile::Ocn(n) => (is_history_deterministic(n, caps), Some(n.clone())),
        NetFile::Socn(s) => (
            is_history_deterministic_succinct(s, caps),
            expand_binary(s, DEFAULT_DELTA_LIMIT).ok(),
        ),
        NetFile::Oca(_) => {
            return input_error(format!(
                "{}: history-determinism of guarded automata is undecidable; give a net",
                file.display()
            ))
        }
    };
    let verdict = match verdict {
        Ok(v) => v,
        Err(e) => return input_error(format!("{}: {e}", file.display())),
    };
    if verdict.outcome == Outcome::AdamWins {
        if let Some(net) = &unary {
            if let Some(w) = letter_game_refuter(net, 8, 12) {
                println!("witness:");
                print!("{}", w.render());
            }
        }
    }
    verdict_exit(&verdict, "hd", "not-hd")
}

fn simulate_cmd(
    file_a: &PathBuf,
    state_a: &str,
    k_a: u64,
    file_b: &PathBuf,
    state_b: &str,
    k_b: u64,
    original: bool,
    caps: Option<&[u64]>,
) -> ExitCode {
    let a = match load(file_a).and_then(|f| as_unary(&f, file_a)) {
        Ok(n) => n,
        Err(c) => return c,
    };
    let b = match load(file_b).and_then(|f| as_unary(&f, file_b)) {
        Ok(n) => n,
        Err(c) => return c,
    };
    for (net, state, path) in [(&a, state_a, file_a), (&b, state_b, file_b)] {
        if !net.states.contains(state) {
            return input_error(format!("{}: unknown state `{state}`", path.display()));
        }
    }
    let q = SimQuery::new(&a, Config::new(state_a, k_a), &b, Config::new(state_b, k_b));
    let verdict = if original { original_simulates(&q, caps) } else { simulates(&q, caps) };
    match verdict {
        Ok(v) => verdict_exit(&v, "simulated", "not-simulated"),
        Err(e) => input_error(format!("{e}")),
    }
}

fn word_query(file: &PathBuf, raw: &[String], live_prefix: bool) -> ExitCode {
    let parsed = match load(file) {
        Ok(f) => f,
        Err(c) => return c,
    };
    let alphabet = match &parsed {
        NetFile::Ocn(n) => &n.alphabet,
        NetFile::Socn(s) => &s.0.alphabet,
        NetFile::Oca(a) => &a.alphabet,
    };
    let word = match parse_word(alphabet, raw) {
        Ok(w) => w,
        Err(e) => return input_error(format!("{}: {e}", file.display())),
    };
    let answer = if live_prefix {
        match as_unary(&parsed, file) {
            Ok(net) => net.is_live_prefix(&word),
            Err(c) => return c,
        }
    } else {
        match &parsed {
            NetFile::Ocn(n) => n.accepts(&word),
            NetFile::Socn(s) => s.accepts(&word),
            NetFile::Oca(a) => a.accepts(&word),
        }
    };
    let what = if live_prefix { "live-prefix" } else { "member" };
    println!("{what}: {answer}");
    ExitCode::from(if answer { EXIT_POSITIVE } else { EXIT_NEGATIVE })
}

fn two_net_op(
    file_a: &PathBuf,
    file_b: &PathBuf,
    caps: Option<&[u64]>,
    op: impl Fn(&Ocn, &Ocn, Option<&[u64]>) -> Result<CappedVerdict, ocnkit::net_model::NetError>,
    positive: &str,
    negative: &str,
) -> ExitCode {
    let a = match load(file_a).and_then(|f| as_unary(&f, file_a)) {
        Ok(n) => n,
        Err(c) => return c,
    };
    let b = match load(file_b).and_then(|f| as_unary(&f, file_b)) {
        Ok(n) => n,
        Err(c) => return c,
    };
    match op(&a, &b, caps) {
        Ok(v) => verdict_exit(&v, positive, negative),
        Err(e) => input_error(format!("{e}")),
    }
}

fn parse_transition(spec: &str) -> Result<Transition, String> {
    let tokens: Vec<&str> = spec.split_whitespace().collect();
    if tokens.len() != 4 {
        return Err("transition needs exactly SOURCE LETTER DELTA TARGET".to_string());
    }
    let delta: i64 = tokens[2]
        .parse()
        .map_err(|_| format!("bad delta `{}`", tokens[2]))?;
    Ok(Transition::new(tokens[0], tokens[1], delta, tokens[3]))
}

fn good_set_cmd(file: &PathBuf, tokens: &str, bound: u64, caps: Option<&[u64]>) -> ExitCode {
    let net = match load(file).and_then(|f| as_unary(&f, file)) {
        Ok(n) => n,
        Err(c) => return c,
    };
    let t = match parse_transition(tokens) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    let gs = match good_set(&net, &t, bound, caps) {
        Ok(g) => g,
        Err(e) => return input_error(format!("{e}")),
    };
    println!("transition: {}", gs.transition.render());
    let mut any_inconclusive = false;
    for (k, g) in gs.samples.iter().enumerate() {
        let s = match g {
            Goodness::Good => "good",
            Goodness::NotGood => "not-good",
            Goodness::Inconclusive => {
                any_inconclusive = true;
                "inconclusive"
            }
        };
        println!("sample {k}: {s}");
    }
    match &gs.semilinear {
        Some(sl) => println!("semilinear: {}", sl.render()),
        None => println!("semilinear: none"),
    }
    ExitCode::from(if any_inconclusive { EXIT_INCONCLUSIVE } else { EXIT_POSITIVE })
}

fn determinize_cmd(file: &PathBuf, out: &PathBuf, bound: u64, caps: Option<&[u64]>) -> ExitCode {
    let net = match load(file).and_then(|f| as_unary(&f, file)) {
        Ok(n) => n,
        Err(c) => return c,
    };
    let gs = match good_sets(&net, bound, caps) {
        Ok(g) => g,
        Err(e) => return input_error(format!("{e}")),
    };
    let det = match determinize(&net, &gs) {
        Ok(d) => d,
        Err(e) => return input_error(format!("{e}")),
    };
    if let Err(e) = std::fs::write(out, emit_oca(&det.oca)) {
        return input_error(format!("cannot write {}: {e}", out.display()));
    }
    println!("threshold: {}", det.threshold);
    println!("period: {}", det.period);
    println!("states: {}", det.oca.states.len());
    println!("wrote: {}", out.display());
    ExitCode::from(EXIT_POSITIVE)
}

fn write_corpus(out_dir: &PathBuf, family: &str, seed: u64, instances: &[CorpusInstance]) -> ExitCode {
    if let Err(e) = std::fs::create_dir_all(out_dir) {
        return input_error(format!("cannot create {}: {e}", out_dir.display()));
    }
    for inst in instances {
        let path = out_dir.join(&inst.name);
        if let Err(e) = std::fs::write(&path, &inst.text) {
            return input_error(format!("cannot write {}: {e}", path.display()));
        }
    }
    let manifest_path = out_dir.join(format!("{family}-{seed}-manifest.tsv"));
    if let Err(e) = std::fs::write(&manifest_path, manifest(instances)) {
        return input_error(format!("cannot write {}: {e}", manifest_path.display()));
    }
    println!("instances: {}", instances.len());
    println!("manifest: {}", manifest_path.display());
    ExitCode::from(EXIT_POSITIVE)
}

fn play(file: &PathBuf, bound: u64) -> ExitCode {
    let net = match load(file).and_then(|f| as_unary(&f, file)) {
        Ok(n) => n,
        Err(c) => return c,
    };
    let gs = match good_sets(&net, bound, None) {
        Ok(g) => g,
        Err(e) => return input_error(format!("{e}")),
    };
    let mut config = Config::new(&net.initial, 0);
    let mut word: Vec<String> = Vec::new();
    println!("letters: {}", net.alphabet.iter().cloned().collect::<Vec<_>>().join(" "));
    println!("config: {} {}", config.state, config.counter);
    let stdin = std::io::stdin();
    print!("> ");
    let _ = std::io::stdout().flush();
    for line in stdin.lock().lines() {
        let line = match line {
            Ok(l) => l,
            Err(_) => break,
        };
        let letter = line.trim().to_string();
        if letter.is_empty() || letter == "quit" {
            break;
        }
        if !net.alphabet.contains(&letter) {
            println!("unknown letter `{letter}`");
            print!("> ");
            let _ = std::io::stdout().flush();
            continue;
        }
        word.push(letter.clone());
        let enabled: Vec<&Transition> = net
            .transitions
            .iter()
            .filter(|t| {
                t.source == config.state
                    && t.letter == letter
                    && config.counter as i64 + t.delta >= 0
            })
            .collect();
        if enabled.is_empty() {
            if net.is_live_prefix(&word) {
                println!("stuck on a live word: eve loses");
                return ExitCode::from(EXIT_NEGATIVE);
            }
            println!("word left the language: no extension is accepted, eve survives");
            return ExitCode::from(EXIT_POSITIVE);
        }
        let chosen = match resolver_move(&net, &gs, &config, &letter) {
            ResolverMove::Move(t) => {
                println!("resolver: {}", t.render());
                t
            }
            ResolverMove::NoMove => {
                let mut least = enabled.clone();
                least.sort_by_key(|t| t.render());
                let t = least[0].clone();
                println!("resolver: no good transition here; falling back to {}", t.render());
                t
            }
            ResolverMove::Inconclusive(blocked) => {
                let mut least = enabled.clone();
                least.sort_by_key(|t| t.render());
                let t = least[0].clone();
                for b in blocked {
                    println!("resolver: inconclusive good set for {}", b.render());
                }
                println!("resolver: falling back to {}", t.render());
                t
            }
        };
        config = Config::new(&chosen.target, (config.counter as i64 + chosen.delta) as u64);
        println!("config: {} {}", config.state, config.counter);
        if net.accepts(&word) && !net.finals.contains(&config.state) {
            println!("word is accepted but the run is not accepting: eve loses");
            return ExitCode::from(EXIT_NEGATIVE);
        }
        print!("> ");
        let _ = std::io::stdout().flush();
    }
    println!("game over: eve never lost");
    ExitCode::from(EXIT_POSITIVE)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::CheckHd { file, caps } => check_hd(&file, caps.as_deref()),
        Command::Simulate { file_a, state_a, k_a, file_b, state_b, k_b, original_sim, caps } => {
            simulate_cmd(&file_a, &state_a, k_a, &file_b, &state_b, k_b, original_sim, caps.as_deref())
        }
        Command::Member { file, word } => word_query(&file, &word, false),
        Command::Prefix { file, word } => word_query(&file, &word, true),
        Command::Include { file_a, file_b, caps } => {
            two_net_op(&file_a, &file_b, caps.as_deref(), hd_inclusion, "included", "not-included")
        }
        Command::Equiv { file_a, file_b, caps } => {
            two_net_op(&file_a, &file_b, caps.as_deref(), hd_equivalence, "equivalent", "not-equivalent")
        }
        Command::Universal { file, caps } => {
            let net = match load(&file).and_then(|f| as_unary(&f, &file)) {
                Ok(n) => n,
                Err(c) => return c,
            };
            match universality(&net, caps.as_deref()) {
                Ok(v) => verdict_exit(&v, "universal", "not-universal"),
                Err(e) => input_error(format!("{e}")),
            }
        }
        Command::GoodSet { file, transition, bound, caps } => {
            good_set_cmd(&file, &transition, bound, caps.as_deref())
        }
        Command::Determinize { file, output, bound, caps } => {
            determinize_cmd(&file, &output, bound, caps.as_deref())
        }
        Command::GenAfa { seed, count, out_dir } => {
            write_corpus(&out_dir, "afa", seed, &gen_afa_corpus(seed, count))
        }
        Command::GenSocn { seed, count, out_dir } => {
            write_corpus(&out_dir, "socn", seed, &gen_socn_corpus(seed, count))
        }
        Command::GenDoca { seed, count, out_dir } => {
            write_corpus(&out_dir, "doca", seed, &gen_doca_corpus(seed, count))
        }
        Command::Play { file, bound } => play(&file, bound),
    }
}
