//! Run the full decider cascade over a batch of machines in parallel:
//! `cargo run --release --example decider_pipeline`.

use bb_deciders::machine::machines;
use bb_deciders::pipeline::{run_pipeline, PipelineConfig};
use bb_deciders::TransitionTable;

fn main() {
    let batch: Vec<TransitionTable> = [
        machines::CYCLER,
        machines::RIGHT_RUNNER,
        machines::BACKWARD,
        machines::HALTING_SEGMENT,
        machines::HALTING_SEGMENT_UNDECIDABLE,
        machines::FAR_COUNTER,
        machines::BOUNCER,
        machines::BB5_CHAMPION,
        "------",
    ]
    .iter()
    .map(|t| t.parse().unwrap())
    .collect();

    let config = PipelineConfig { halt_check_steps: 50_000_000, ..PipelineConfig::default() };
    for report in run_pipeline(&batch, &config) {
        println!("{}", report.decision.to_json());
    }
}
