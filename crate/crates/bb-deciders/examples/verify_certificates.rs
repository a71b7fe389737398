//! Emit one FAR and one bouncer certificate, verify both, and show that
//! tampering is caught: `cargo run --example verify_certificates`.

use bb_deciders::bouncers::{decide_bouncers, BouncersDecision, BouncersParams};
use bb_deciders::far::{decide_far_direct, FarDecision};
use bb_deciders::machine::machines;
use bb_deciders::pipeline::{verify_file, CertKind};
use bb_deciders::TransitionTable;

fn main() {
    let counter: TransitionTable = machines::FAR_COUNTER.parse().unwrap();
    let FarDecision::NonHalt(far_cert) = decide_far_direct(&counter, 2, true) else {
        panic!("counter machine should be decided at n = 2");
    };
    let bouncer: TransitionTable = machines::BOUNCER.parse().unwrap();
    let params = BouncersParams { step_limit: 1000, macro_limit: 200, ..BouncersParams::default() };
    let BouncersDecision::NonHalt(bouncer_cert) = decide_bouncers(&bouncer, &params) else {
        panic!("bouncer machine should be decided");
    };

    for report in verify_file(&far_cert.to_json(), CertKind::Far) {
        println!("far {report}");
    }
    for report in verify_file(&bouncer_cert.to_json(), CertKind::Bouncer) {
        println!("bouncer {report}");
    }

    // A single flipped claim is caught with the violated condition named.
    let mut tampered = (*bouncer_cert).clone();
    tampered.start_step -= 1;
    for report in verify_file(&tampered.to_json(), CertKind::Bouncer) {
        println!("tampered {report}");
    }
}
