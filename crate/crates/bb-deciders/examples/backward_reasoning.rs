//! Show that a machine cannot reach any halting configuration by exploring
//! predecessors backwards: `cargo run --example backward_reasoning`.

use bb_deciders::backward::{decide_backward, BackwardDecision, BackwardParams};
use bb_deciders::machine::machines;
use bb_deciders::tape::{simulate, SimulationOutcome};
use bb_deciders::TransitionTable;

fn main() {
    let table: TransitionTable = machines::BACKWARD.parse().unwrap();
    println!("machine: {table}");
    for depth in 1..=4 {
        let params = BackwardParams { max_depth: depth, ..BackwardParams::default() };
        match decide_backward(&table, params) {
            BackwardDecision::NonHalt { max_contradiction_depth } => {
                // The backward argument also needs the machine to run this
                // many forward steps without halting.
                let forward_ok =
                    matches!(simulate(&table, depth), SimulationOutcome::RunningAtLimit(_));
                println!(
                    "depth {depth}: every backward branch contradicts (deepest at {max_contradiction_depth}); \
                     forward check {}",
                    if forward_ok { "passes - machine never halts" } else { "fails" }
                );
            }
            BackwardDecision::Unknown => println!("depth {depth}: live branches remain"),
        }
    }
}
