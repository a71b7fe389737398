//! Run the 5-state busy beaver champion to its halt and print the step
//! count: `cargo run --release --example simulate_champion`.

use std::time::Instant;

use bb_deciders::machine::machines;
use bb_deciders::tape::{simulate, SimulationOutcome};
use bb_deciders::TransitionTable;

fn main() {
    let table: TransitionTable = machines::BB5_CHAMPION.parse().unwrap();
    println!("machine: {table}");
    let start = Instant::now();
    match simulate(&table, 50_000_000) {
        SimulationOutcome::Halted(halt) => {
            println!(
                "halted at step {} (reading {} in state {}) after {:.2?}",
                halt.step,
                halt.read,
                bb_deciders::machine::state_letter(halt.state),
                start.elapsed()
            );
        }
        SimulationOutcome::RunningAtLimit(_) => println!("still running at the step limit"),
    }
}
