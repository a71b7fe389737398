//! Exhaustively decide every 2-state machine (6561 transition tables) and
//! cross-check each non-halting verdict against a million-step simulation.
//! Takes around a minute: `cargo run --release --example sweep_two_states`.

use bb_deciders::decision::Verdict;
use bb_deciders::machine::{Dir, Transition, TransitionTable};
use bb_deciders::pipeline::{run_pipeline, PipelineConfig};
use bb_deciders::tape::{simulate, SimulationOutcome};
use std::time::Instant;

fn main() {
    // All 2-state machines: each of the 4 table entries is undefined or
    // (write, dir, next) over 2x2x2 = 8 options -> 9^4 = 6561 machines.
    let mut machines = Vec::new();
    let options: Vec<Option<Transition>> = {
        let mut v = vec![None];
        for write in 0..2u8 {
            for dir in [Dir::L, Dir::R] {
                for next in 0..2u8 {
                    v.push(Some(Transition { write, dir, next }));
                }
            }
        }
        v
    };
    for a in &options {
        for b in &options {
            for c in &options {
                for d in &options {
                    machines.push(TransitionTable::new(vec![*a, *b, *c, *d]));
                }
            }
        }
    }
    println!("{} machines", machines.len());
    let config = PipelineConfig { halt_check_steps: 10_000, ..PipelineConfig::default() };
    let start = Instant::now();
    let reports = run_pipeline(&machines, &config);
    println!("pipeline done in {:?}", start.elapsed());
    let mut halted = 0;
    let mut nonhalt = 0;
    let mut unknown = 0;
    let mut by_decider: std::collections::BTreeMap<String, usize> = Default::default();
    for report in &reports {
        match report.decision.verdict {
            Verdict::Halted => halted += 1,
            Verdict::Unknown => unknown += 1,
            Verdict::NonHalt => {
                nonhalt += 1;
                *by_decider.entry(report.decision.decider.clone().unwrap()).or_default() += 1;
                // Soundness: cross-check against one million steps.
                let t: TransitionTable = report.decision.machine.parse().unwrap();
                if let SimulationOutcome::Halted(h) = simulate(&t, 1_000_000) {
                    panic!("UNSOUND: {} claimed nonhalt, halts at {}", report.decision.machine, h.step);
                }
                if let Some(cert) = &report.far_certificate {
                    cert.verify().expect("far cert verifies");
                }
                if let Some(cert) = &report.bouncer_certificate {
                    cert.verify().expect("bouncer cert verifies");
                }
            }
        }
    }
    println!("halted {halted}, nonhalt {nonhalt}, unknown {unknown}");
    println!("by decider: {by_decider:?}");
    for report in &reports {
        if report.decision.verdict == Verdict::Unknown {
            println!("UNKNOWN: {}", report.decision.machine);
        }
    }
}
