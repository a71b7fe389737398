//! Finite automata reduction, direct search: enumerate left DFAs, solve the
//! minimal right NFA for each, and emit a machine-checkable certificate.
//! `cargo run --example far_direct`.

use bb_deciders::far::{decide_far_direct, FarDecision};
use bb_deciders::machine::machines;
use bb_deciders::TransitionTable;

fn main() {
    let table: TransitionTable = machines::FAR_COUNTER.parse().unwrap();
    println!("machine: {table} (a binary counter, runs forever)");
    for n in 1..=4 {
        for left_to_right in [true, false] {
            let dir = if left_to_right { "left-to-right" } else { "right-to-left" };
            match decide_far_direct(&table, n, left_to_right) {
                FarDecision::NonHalt(cert) => {
                    println!("found a proof at DFA size {n}, scanning {dir}");
                    println!("  left DFA table: {:?}", cert.delta);
                    println!("  certificate verifies: {:?}", cert.verify().is_ok());
                    let (nfa, _) = cert.nfa().unwrap();
                    for word in ["00A001100", "A0"] {
                        println!(
                            "  NFA {} {word:?}",
                            if nfa.accepts_config_word(word).unwrap() { "accepts" } else { "rejects" }
                        );
                    }
                    println!("{}", cert.to_json());
                    return;
                }
                FarDecision::Unknown => println!("no proof at DFA size {n}, {dir}"),
            }
        }
    }
}
