//! Decide translated cyclers by matching record-breaking configurations:
//! `cargo run --example translated_cyclers`.

use bb_deciders::loops::{decide_translated_cyclers, LoopDecision};
use bb_deciders::machine::machines;
use bb_deciders::TransitionTable;

fn main() {
    for text in [machines::RIGHT_RUNNER, machines::ZIGZAG, machines::HALTING_SEGMENT] {
        let table: TransitionTable = text.parse().unwrap();
        match decide_translated_cyclers(&table, 1000) {
            LoopDecision::TranslatedCycle { side, t1, t2, distance } => println!(
                "{text}: translated cycle - records at steps {t1} and {t2} on the {side:?} \
                 match within distance {distance}"
            ),
            LoopDecision::Halted(halt) => println!("{text}: halts at step {}", halt.step),
            _ => println!("{text}: unknown within the step limit"),
        }
    }
}
