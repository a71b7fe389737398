//! Walk the bouncer machinery end to end: simulate to a formula tape,
//! replay macro steps to a special case, then run the full decider.
//! `cargo run --example bouncers`.

use bb_deciders::bouncers::{
    decide_bouncers, reaches_special_case, BouncersDecision, BouncersParams, FormulaTape,
};
use bb_deciders::directional::simulate_directional;
use bb_deciders::machine::machines;
use bb_deciders::TransitionTable;

fn main() {
    let table: TransitionTable = machines::BOUNCER.parse().unwrap();
    println!("machine: {table}");

    // After 64 steps the tape matches a wall-repeater formula.
    let tape = simulate_directional(&table, 64).unwrap();
    println!("after 64 steps: {tape}");
    let f0: FormulaTape = "0^inf (111) 1110 (11) 00 D> 0^inf".parse().unwrap();
    println!("member of {f0}: {}", f0.contains_tape(&tape));

    // Macro steps (align, then step or shift rule) reach a special case.
    let proof = reaches_special_case(&table, &f0, 200, 10_000).unwrap();
    println!("{f0} reaches a special case of itself in {} macro steps", proof.macro_steps);
    for rule in &proof.shift_rules {
        let bits = |w: &[u8]| w.iter().map(|&b| char::from(b'0' + b)).collect::<String>();
        println!(
            "  shift rule ({:?}): context {:?}, {} -> {} in {} steps per copy",
            rule.orientation,
            bits(&rule.context),
            bits(&rule.repeater),
            bits(&rule.image),
            rule.steps
        );
    }

    // The decider guesses its own formula from record-breaking tapes.
    let params = BouncersParams {
        step_limit: 1000,
        macro_limit: 200,
        max_formula_tapes: 16,
        ..BouncersParams::default()
    };
    match decide_bouncers(&table, &params) {
        BouncersDecision::NonHalt(cert) => {
            println!(
                "decided non-halting: formula {} reached at step {}, special case after {} macro steps",
                cert.formula, cert.start_step, cert.macro_steps
            );
            println!("certificate verifies: {}", cert.verify().is_ok());
        }
        BouncersDecision::Unknown => println!("not decided within the limits"),
    }
}
