//! Finite automata reduction via SAT: encode the meet-in-the-middle DFA-pair
//! conditions as CNF, solve, and re-prove the extracted left DFA through the
//! direct pipeline. `cargo run --example far_mitm`.

use bb_deciders::far::{decide_far_mitm, encode_mitm_cnf, FarDecision};
use bb_deciders::machine::machines;
use bb_deciders::sat::{solve_cnf, SatResult};
use bb_deciders::TransitionTable;

fn main() {
    let table: TransitionTable = machines::FAR_COUNTER.parse().unwrap();
    println!("machine: {table}");
    for n in 1..=6 {
        let instance = encode_mitm_cnf(&table, n);
        let sat = matches!(solve_cnf(&instance.cnf), SatResult::Sat(_));
        println!(
            "n = {n}: {} variables, {} clauses -> {}",
            instance.num_vars(),
            instance.cnf.clauses.len(),
            if sat { "SAT" } else { "UNSAT" }
        );
        if let FarDecision::NonHalt(cert) = decide_far_mitm(&table, n) {
            println!(
                "proved non-halting at n = {n}; extracted left DFA {:?} re-verified: {}",
                cert.delta,
                cert.verify().is_ok()
            );
            break;
        }
    }
}
