//! Finite Automata Reduction: find an NFA accepting at least every
//! eventually-halting configuration of a machine while rejecting the all-0
//! initial one; such an NFA is a machine-checkable non-halting proof.

pub mod cert;
pub mod dfa;
pub mod direct;
pub mod matrix;
pub mod mitm;
pub mod nfa;

pub use cert::{FarCertificate, ScanDirection};
pub use dfa::{search_dfa, CheckResult};
pub use direct::{decide_far_direct, prove_with_delta, solve_minimal_right_nfa, FarDecision};
pub use mitm::{decide_far_mitm, encode_mitm_cnf, MitmInstance};
pub use nfa::{check_far_conditions, verify_far_certificate, BooleanNfa, FarViolation};
