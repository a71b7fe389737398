//! Bouncer certificate files: the formula tape, the step at which a member
//! tape is reached, and the macro-step count to a special case. Verification
//! replays all three claims.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bouncers::formula::FormulaTape;
use crate::bouncers::step::{
    is_special_case, macro_step, FormulaStep, ShiftRule, SpecialCaseProof, DEFAULT_SHIFT_RULE_CAP,
};
use crate::directional::{DirectionalTape, Orientation};
use crate::machine::{state_letter, TransitionTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftRuleRecord {
    pub u: String,
    pub state: char,
    pub dir: String,
    pub r: String,
    pub r_tilde: String,
    pub steps: u64,
}

impl ShiftRuleRecord {
    fn from_rule(rule: &ShiftRule) -> ShiftRuleRecord {
        let bits = |w: &[u8]| w.iter().map(|&b| char::from(b'0' + b)).collect();
        ShiftRuleRecord {
            u: bits(&rule.context),
            state: state_letter(rule.state),
            dir: match rule.orientation {
                Orientation::Right => "right".into(),
                Orientation::Left => "left".into(),
            },
            r: bits(&rule.repeater),
            r_tilde: bits(&rule.image),
            steps: rule.steps,
        }
    }
}

/// A bouncer proof: `formula` is reached (as a member tape) at `start_step`,
/// and `macro_steps` applications of align-then-step turn it into a special
/// case of itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BouncerCertificate {
    pub version: u32,
    pub machine: String,
    pub formula: String,
    pub start_step: u64,
    pub macro_steps: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift_rules: Option<Vec<ShiftRuleRecord>>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BouncerCertError {
    #[error("cannot parse machine: {0}")]
    Machine(#[from] crate::machine::ParseMachineError),
    #[error("cannot parse formula: {0}")]
    Formula(#[from] crate::bouncers::formula::ParseFormulaError),
    #[error("the machine halts at step {0}, before the start step")]
    HaltsBeforeStart(u64),
    #[error("the tape at the start step is not matched by the formula")]
    NotAMember,
    #[error("macro step {0} cannot be applied (halt or no applicable rule)")]
    MacroStepFails(u64),
    #[error("the final formula is not a special case of the initial one")]
    NotASpecialCase,
}

impl BouncerCertificate {
    pub fn new(
        machine: &str,
        formula: &FormulaTape,
        start_step: u64,
        proof: &SpecialCaseProof,
    ) -> BouncerCertificate {
        BouncerCertificate {
            version: 1,
            machine: machine.to_string(),
            formula: formula.to_string(),
            start_step,
            macro_steps: proof.macro_steps,
            shift_rules: Some(proof.shift_rules.iter().map(ShiftRuleRecord::from_rule).collect()),
        }
    }

    /// Replay the three claims against the machine.
    pub fn verify(&self) -> Result<(), BouncerCertError> {
        let table: TransitionTable = self.machine.parse()?;
        let formula: FormulaTape = self.formula.parse()?;
        let mut tape = DirectionalTape::initial();
        for step in 0..self.start_step {
            if tape.step(&table, step).is_err() {
                return Err(BouncerCertError::HaltsBeforeStart(step + 1));
            }
        }
        if !formula.contains_tape(&tape) {
            return Err(BouncerCertError::NotAMember);
        }
        let mut current = formula.clone();
        for step in 1..=self.macro_steps {
            match macro_step(&table, &current, DEFAULT_SHIFT_RULE_CAP) {
                FormulaStep::Stepped(next, _) => current = next,
                FormulaStep::Halt | FormulaStep::NoRule => {
                    return Err(BouncerCertError::MacroStepFails(step));
                }
            }
        }
        if !is_special_case(&current, &formula) {
            return Err(BouncerCertError::NotASpecialCase);
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

/// Convenience wrapper matching the other verifiers.
pub fn verify_bouncer_certificate(cert: &BouncerCertificate) -> bool {
    cert.verify().is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::machines;

    fn example_certificate() -> BouncerCertificate {
        BouncerCertificate {
            version: 1,
            machine: machines::BOUNCER.into(),
            formula: "0^inf (111) 1110 (11) 00 D> 0^inf".into(),
            start_step: 64,
            macro_steps: 41,
            shift_rules: None,
        }
    }

    #[test]
    fn the_worked_example_verifies() {
        assert_eq!(example_certificate().verify(), Ok(()));
    }

    #[test]
    fn wrong_start_step_fails_membership() {
        let mut cert = example_certificate();
        cert.start_step = 63;
        assert_eq!(cert.verify(), Err(BouncerCertError::NotAMember));
    }

    #[test]
    fn too_few_macro_steps_is_not_a_special_case() {
        let mut cert = example_certificate();
        cert.macro_steps = 40;
        assert_eq!(cert.verify(), Err(BouncerCertError::NotASpecialCase));
    }

    #[test]
    fn malformed_formula_is_reported() {
        let mut cert = example_certificate();
        cert.formula = "0^inf () D>".into();
        assert!(matches!(cert.verify(), Err(BouncerCertError::Formula(_))));
    }

    #[test]
    fn json_round_trip() {
        let cert = example_certificate();
        let back: BouncerCertificate = serde_json::from_str(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
    }
}
