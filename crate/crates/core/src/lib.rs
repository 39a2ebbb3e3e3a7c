//! Toolkit for history-deterministic one-counter nets.
//!
//! A one-counter net (OCN) is a finite automaton equipped with a single
//! non-negative counter updated by -1/0/+1 on each transition and never
//! tested for zero; a one-counter automaton (OCA) additionally guards
//! transitions on the counter being zero or nonzero.
//!
//! The library decides history-determinism of OCNs through token/simulation
//! games solved by a certified capped engine, extracts semilinear resolver
//! descriptions, determinizes history-deterministic nets into deterministic
//! OCAs, decides language inclusion/equivalence/universality for
//! history-deterministic nets, and generates self-validating hardness gadget
//! instances (unary-AFA emptiness, succinct counter reachability games,
//! deterministic-OCA inclusion).

pub mod determinizer;
pub mod examples;
pub mod gadget_gen;
pub mod game_engine;
pub mod hd_decision;
pub mod lang_ops;
pub mod net_model;
pub mod sim_solver;
pub mod textfmt;
