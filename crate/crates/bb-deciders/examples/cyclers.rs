//! Decide an in-place cycler by exact configuration recurrence:
//! `cargo run --example cyclers`.

use bb_deciders::loops::{decide_cyclers, CyclersParams, LoopDecision};
use bb_deciders::machine::machines;
use bb_deciders::TransitionTable;

fn main() {
    for text in [machines::CYCLER, machines::BB5_CHAMPION] {
        let table: TransitionTable = text.parse().unwrap();
        let decision = decide_cyclers(&table, CyclersParams::default());
        match decision {
            LoopDecision::Cycle { i, j } => {
                println!("{text}: cycles - configuration at step {i} recurs at step {j}")
            }
            LoopDecision::Halted(halt) => println!("{text}: halts at step {}", halt.step),
            _ => println!("{text}: unknown within the step limit"),
        }
    }
}
