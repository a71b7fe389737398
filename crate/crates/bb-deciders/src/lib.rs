//! Deciders and certificate verifiers for non-halting behaviours of small
//! binary Turing machines, as studied by the Busy Beaver Challenge.
//!
//! The crate provides:
//!
//! - classical and directional tape simulation ([`tape`], [`directional`]),
//!   plus space-time diagram rendering ([`spacetime`]);
//! - the cyclers and translated-cyclers deciders ([`loops`]);
//! - backward reasoning over partial configurations ([`backward`]);
//! - the halting-segment abstract simulation graph ([`segment`]);
//! - finite automata reduction with machine-checkable certificates ([`far`]),
//!   backed by a small CDCL SAT solver ([`sat`]) for the meet-in-the-middle
//!   DFA search;
//! - the bouncers decider built on formula tapes and shift rules
//!   ([`bouncers`]);
//! - a decider pipeline, seed database decoding and certificate file
//!   verification ([`pipeline`], [`db`]).
//!
//! Every decider is a pure function of its inputs and safe to run for many
//! machines in parallel. See the `examples/` directory for one runnable
//! program per capability.

pub mod backward;
pub mod bouncers;
pub mod db;
pub mod decision;
pub mod directional;
pub mod far;
pub mod loops;
pub mod machine;
pub mod pipeline;
pub mod sat;
pub mod segment;
pub mod spacetime;
pub mod tape;

pub use machine::{machines, TransitionTable};
pub use tape::{simulate, Configuration, SimulationOutcome};
