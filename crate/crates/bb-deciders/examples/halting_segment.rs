//! Abstract simulation on a finite tape segment: if the reachable halting
//! nodes do not cover every position, the machine cannot halt.
//! `cargo run --example halting_segment`.

use bb_deciders::machine::machines;
use bb_deciders::segment::{decide_halting_segment, SegmentDecision};
use bb_deciders::TransitionTable;

fn main() {
    let table: TransitionTable = machines::HALTING_SEGMENT.parse().unwrap();
    println!("machine: {table}");
    match decide_halting_segment(&table, 2, 1_000_000) {
        SegmentDecision::NonHalt { n, uncovered } => {
            println!("does not halt: with segment size {n}, the halting nodes miss:");
            for ((state, read), position) in uncovered {
                println!(
                    "  transition {}{read} has no reachable halting node at position {position}",
                    bb_deciders::machine::state_letter(state)
                );
            }
        }
        SegmentDecision::Unknown => println!("unknown at segment size 2"),
    }

    // Some non-halting machines are out of reach for every segment size.
    let stubborn: TransitionTable = machines::HALTING_SEGMENT_UNDECIDABLE.parse().unwrap();
    let verdicts: Vec<bool> = (1..=8)
        .map(|n| decide_halting_segment(&stubborn, n, 10_000_000) != SegmentDecision::Unknown)
        .collect();
    println!("{stubborn}: decided at any n in 1..=8? {}", verdicts.iter().any(|&b| b));
}
