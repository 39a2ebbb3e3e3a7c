//! Line-oriented text format for nets and automata.
//!
//! ```text
//! ocn                          # or: oca | socn
//! alphabet a b $
//! state q0 init
//! state q1 final
//! trans q0 a +1 q0
//! trans q0 $ 0 q1              # oca adds a guard column: trans q0 zero $ 0 q1
//! ```
//!
//! `#` starts a comment. The emitter writes a canonical ordering, so
//! parse-emit-parse is the identity on the canonical form.

use crate::net_model::{Guard, Oca, OcaTransition, Ocn, SuccinctOcn, Transition};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

/// A parsed net file of any of the three kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NetFile {
    Ocn(Ocn),
    Oca(Oca),
    Socn(SuccinctOcn),
}

impl NetFile {
    pub fn kind(&self) -> &'static str {
        match self {
            NetFile::Ocn(_) => "ocn",
            NetFile::Oca(_) => "oca",
            NetFile::Socn(_) => "socn",
        }
    }
}

fn parse_delta(tok: &str, line: usize) -> Result<i64, ParseError> {
    let body = tok.strip_prefix('+').unwrap_or(tok);
    if body.is_empty() || body == "-" {
        return err(line, format!("malformed delta `{tok}`"));
    }
    match body.parse::<i64>() {
        Ok(v) => Ok(v),
        Err(_) => err(line, format!("malformed delta `{tok}`")),
    }
}

/// Parses a net in the text format.
pub fn parse_net(input: &str) -> Result<NetFile, ParseError> {
    let mut kind: Option<&str> = None;
    let mut alphabet: BTreeSet<String> = BTreeSet::new();
    let mut states: BTreeSet<String> = BTreeSet::new();
    let mut initial: Option<String> = None;
    let mut finals: BTreeSet<String> = BTreeSet::new();
    let mut ocn_trans: BTreeSet<Transition> = BTreeSet::new();
    let mut oca_trans: BTreeSet<OcaTransition> = BTreeSet::new();

    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        if kind.is_none() {
            match toks[0] {
                "ocn" | "oca" | "socn" if toks.len() == 1 => {
                    kind = Some(match toks[0] {
                        "ocn" => "ocn",
                        "oca" => "oca",
                        _ => "socn",
                    });
                    continue;
                }
                _ => return err(line, "expected header line `ocn`, `oca`, or `socn`"),
            }
        }
        let k = kind.unwrap();
        match toks[0] {
            "alphabet" => {
                if toks.len() < 2 {
                    return err(line, "alphabet line needs at least one letter");
                }
                for l in &toks[1..] {
                    alphabet.insert(l.to_string());
                }
            }
            "state" => {
                if toks.len() < 2 {
                    return err(line, "state line needs a name");
                }
                let name = toks[1].to_string();
                if !states.insert(name.clone()) {
                    return err(line, format!("duplicate state declaration `{name}`"));
                }
                for flag in &toks[2..] {
                    match *flag {
                        "init" => {
                            if let Some(prev) = &initial {
                                return err(line, format!("second init state `{name}` (already `{prev}`)"));
                            }
                            initial = Some(name.clone());
                        }
                        "final" => {
                            finals.insert(name.clone());
                        }
                        other => return err(line, format!("unknown state flag `{other}`")),
                    }
                }
            }
            "trans" => {
                let want = if k == "oca" { 6 } else { 5 };
                if toks.len() != want {
                    return err(line, format!("trans line needs {} fields, got {}", want - 1, toks.len() - 1));
                }
                let (source, guard, letter, delta_tok, target) = if k == "oca" {
                    let g = match toks[2] {
                        "zero" => Guard::Zero,
                        "nonzero" => Guard::NonZero,
                        other => return err(line, format!("unknown guard `{other}`")),
                    };
                    (toks[1], Some(g), toks[3], toks[4], toks[5])
                } else {
                    (toks[1], None, toks[2], toks[3], toks[4])
                };
                if !states.contains(source) {
                    return err(line, format!("undeclared state `{source}`"));
                }
                if !states.contains(target) {
                    return err(line, format!("undeclared state `{target}`"));
                }
                if !alphabet.contains(letter) {
                    return err(line, format!("unknown letter `{letter}`"));
                }
                let delta = parse_delta(delta_tok, line)?;
                if k != "socn" && !(-1..=1).contains(&delta) {
                    return err(line, format!("delta {delta} outside {{-1,0,+1}} (use `socn` for binary deltas)"));
                }
                if let Some(g) = guard {
                    if g == Guard::Zero && delta == -1 {
                        return err(line, "zero-guarded transition cannot decrement");
                    }
                    oca_trans.insert(OcaTransition::new(source, g, letter, delta, target));
                } else {
                    ocn_trans.insert(Transition::new(source, letter, delta, target));
                }
            }
            other => return err(line, format!("unknown directive `{other}`")),
        }
    }

    let kind = match kind {
        Some(k) => k,
        None => return err(1, "empty input"),
    };
    let initial = match initial {
        Some(i) => i,
        None => return err(1, "no init state declared"),
    };
    if alphabet.is_empty() {
        return err(1, "no alphabet declared");
    }
    let file = match kind {
        "oca" => NetFile::Oca(Oca {
            states,
            alphabet,
            initial,
            finals,
            transitions: oca_trans,
        }),
        "socn" => NetFile::Socn(SuccinctOcn(Ocn {
            states,
            alphabet,
            initial,
            finals,
            transitions: ocn_trans,
        })),
        _ => NetFile::Ocn(Ocn {
            states,
            alphabet,
            initial,
            finals,
            transitions: ocn_trans,
        }),
    };
    Ok(file)
}

fn emit_header(
    kind: &str,
    alphabet: &BTreeSet<String>,
    states: &BTreeSet<String>,
    initial: &str,
    finals: &BTreeSet<String>,
    out: &mut String,
) {
    out.push_str(kind);
    out.push('\n');
    out.push_str("alphabet");
    for l in alphabet {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    for q in states {
        out.push_str("state ");
        out.push_str(q);
        if q == initial {
            out.push_str(" init");
        }
        if finals.contains(q) {
            out.push_str(" final");
        }
        out.push('\n');
    }
}

pub fn emit_ocn(net: &Ocn) -> String {
    let mut out = String::new();
    emit_header("ocn", &net.alphabet, &net.states, &net.initial, &net.finals, &mut out);
    for t in &net.transitions {
        out.push_str(&format!("trans {} {} {:+} {}\n", t.source, t.letter, t.delta, t.target));
    }
    out
}

pub fn emit_socn(net: &SuccinctOcn) -> String {
    let mut out = String::new();
    emit_header("socn", &net.0.alphabet, &net.0.states, &net.0.initial, &net.0.finals, &mut out);
    for t in &net.0.transitions {
        out.push_str(&format!("trans {} {} {:+} {}\n", t.source, t.letter, t.delta, t.target));
    }
    out
}

pub fn emit_oca(oca: &Oca) -> String {
    let mut out = String::new();
    emit_header("oca", &oca.alphabet, &oca.states, &oca.initial, &oca.finals, &mut out);
    for t in &oca.transitions {
        out.push_str(&format!(
            "trans {} {} {} {:+} {}\n",
            t.source,
            t.guard.render(),
            t.letter,
            t.delta,
            t.target
        ));
    }
    out
}

pub fn emit_net(file: &NetFile) -> String {
    match file {
        NetFile::Ocn(n) => emit_ocn(n),
        NetFile::Oca(a) => emit_oca(a),
        NetFile::Socn(s) => emit_socn(s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net_model::word_from;

    const SAMPLE: &str = "\
# counting net
ocn
alphabet a b $
state q0 init
state q1 final
trans q0 a +1 q0
trans q0 $ 0 q1   # accept on dollar
trans q1 b -1 q1
";

    #[test]
    fn parse_and_reparse_canonical_form() {
        let net = parse_net(SAMPLE).unwrap();
        let canon = emit_net(&net);
        let again = parse_net(&canon).unwrap();
        assert_eq!(net, again);
        assert_eq!(emit_net(&again), canon);
    }

    #[test]
    fn parsed_net_semantics() {
        let NetFile::Ocn(net) = parse_net(SAMPLE).unwrap() else { panic!() };
        assert!(net.validate().is_valid());
        assert!(net.accepts(&word_from(&["a", "a", "$", "b", "b"])));
        assert!(!net.accepts(&word_from(&["a", "$", "b", "b"])));
    }

    #[test]
    fn rejects_duplicate_state() {
        let bad = "ocn\nalphabet a\nstate q0 init\nstate q0 final\ntrans q0 a 0 q0\n";
        let e = parse_net(bad).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.msg.contains("duplicate"));
    }

    #[test]
    fn rejects_unknown_letter() {
        let bad = "ocn\nalphabet a\nstate q0 init\ntrans q0 b 0 q0\n";
        let e = parse_net(bad).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.msg.contains("unknown letter"));
    }

    #[test]
    fn rejects_malformed_delta() {
        let bad = "ocn\nalphabet a\nstate q0 init\ntrans q0 a ++ q0\n";
        let e = parse_net(bad).unwrap_err();
        assert!(e.msg.contains("malformed delta"));
    }

    #[test]
    fn rejects_wide_delta_in_unary_net() {
        let bad = "ocn\nalphabet a\nstate q0 init\ntrans q0 a +3 q0\n";
        let e = parse_net(bad).unwrap_err();
        assert!(e.msg.contains("socn"));
    }

    #[test]
    fn socn_allows_wide_delta() {
        let good = "socn\nalphabet a\nstate q0 init final\ntrans q0 a +3 q0\n";
        let NetFile::Socn(net) = parse_net(good).unwrap() else { panic!() };
        assert!(net.validate().is_valid());
        let canon = emit_net(&NetFile::Socn(net));
        assert_eq!(parse_net(&canon).unwrap(), parse_net(&canon).map(|n| n).unwrap());
    }

    #[test]
    fn oca_guard_round_trip() {
        let src = "oca\nalphabet a\nstate q0 init\nstate q1 final\ntrans q0 zero a +1 q1\ntrans q0 nonzero a -1 q0\n";
        let file = parse_net(src).unwrap();
        let NetFile::Oca(oca) = &file else { panic!() };
        assert!(oca.validate().is_valid());
        let canon = emit_net(&file);
        assert_eq!(parse_net(&canon).unwrap(), file);
    }

    #[test]
    fn oca_rejects_zero_guard_decrement() {
        let bad = "oca\nalphabet a\nstate q0 init\ntrans q0 zero a -1 q0\n";
        assert!(parse_net(bad).is_err());
    }
}
