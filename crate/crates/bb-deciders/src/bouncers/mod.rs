//! Bouncers: machines whose tape grows by repeating patterns between fixed
//! walls. A formula tape that reaches a special case of itself under macro
//! steps proves non-halting; the decider guesses candidate formulas by
//! fitting record-breaking tapes that grow linearly in quadratic time.

pub mod cert;
pub mod decide;
pub mod fit;
pub mod formula;
pub mod records;
pub mod step;

pub use cert::{verify_bouncer_certificate, BouncerCertError, BouncerCertificate};
pub use decide::{decide_bouncers, is_quadratic, BouncersDecision, BouncersParams};
pub use fit::{fit_formula_tape, word_power_root};
pub use formula::{FormulaTape, Segment};
pub use records::{record_breaking_tapes, RecordTape, RecordTapeIndex};
pub use step::{
    detect_shift_rule, formula_step, is_special_case, macro_step, reaches_special_case,
    FormulaStep, ShiftRule, SpecialCaseProof, StepKind,
};
