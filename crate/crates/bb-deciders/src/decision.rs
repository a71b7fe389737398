//! Per-machine decision records, serialized as one JSON object per machine.

use serde::Serialize;

use crate::loops::RecordSide;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Halted,
    NonHalt,
    Unknown,
}

/// Decider-specific evidence attached to a non-halting verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Cycle { i: u64, j: u64 },
    TranslatedCycle { side: RecordSide, t1: u64, t2: u64, distance: i64 },
    Backward { max_contradiction_depth: u64, forward_steps: u64 },
    HaltingSegment { n: usize, uncovered: Vec<(String, i32)> },
    FarDirect { dfa_states: usize, direction: String },
    FarMitm { dfa_states: usize },
    Bouncer { start_step: u64, macro_steps: u64, formula: String },
}

/// One machine's outcome. `certificate` names the emitted certificate file
/// when one was written next to the results.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decision {
    pub machine: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decider: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
}

impl Decision {
    pub fn halted(machine: &str, steps: u64) -> Decision {
        Decision {
            machine: machine.to_string(),
            verdict: Verdict::Halted,
            steps: Some(steps),
            decider: None,
            witness: None,
            certificate: None,
        }
    }

    pub fn unknown(machine: &str) -> Decision {
        Decision {
            machine: machine.to_string(),
            verdict: Verdict::Unknown,
            steps: None,
            decider: None,
            witness: None,
            certificate: None,
        }
    }

    pub fn nonhalt(machine: &str, decider: &str, witness: Witness) -> Decision {
        Decision {
            machine: machine.to_string(),
            verdict: Verdict::NonHalt,
            steps: None,
            decider: Some(decider.to_string()),
            witness: Some(witness),
            certificate: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decision serializes")
    }
}
