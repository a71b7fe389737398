//! The bouncers decider: find record-breaking tapes growing linearly in
//! quadratic time, fit a formula tape to three of them, and accept when the
//! formula reaches a special case of itself under macro steps.

use crate::bouncers::cert::BouncerCertificate;
use crate::bouncers::fit::fit_formula_tape;
use crate::bouncers::formula::{FormulaTape, Segment};
use crate::bouncers::records::{find_by_length, record_breaking_tapes, RecordTape};
use crate::bouncers::step::{reaches_special_case, DEFAULT_SHIFT_RULE_CAP};
use crate::directional::{Head, Orientation};
use crate::machine::TransitionTable;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("quadratic progression test needs at least 4 values, got {0}")]
pub struct TooFewSteps(pub usize);

/// True iff the sequence has constant, nonnegative second differences.
pub fn is_quadratic(steps: &[u64]) -> Result<bool, TooFewSteps> {
    if steps.len() < 4 {
        return Err(TooFewSteps(steps.len()));
    }
    let first: Vec<i64> = steps.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
    let second: Vec<i64> = first.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(second[0] >= 0 && second.iter().all(|&d| d == second[0]))
}

#[derive(Debug, Clone, Copy)]
pub struct BouncersParams {
    pub step_limit: u64,
    pub macro_limit: u64,
    pub max_formula_tapes: usize,
    pub shift_rule_cap: u64,
}

impl Default for BouncersParams {
    fn default() -> BouncersParams {
        BouncersParams {
            step_limit: 10_000,
            macro_limit: 1000,
            max_formula_tapes: 64,
            shift_rule_cap: DEFAULT_SHIFT_RULE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BouncersDecision {
    NonHalt(Box<BouncerCertificate>),
    Unknown,
}

/// Attach a head and `0^inf` markers to a fitted headless formula. Left-end
/// records were fitted in mirrored space, so their segments and words are
/// reversed back.
fn attach_head(mut segments: Vec<Segment>, head: Head) -> FormulaTape {
    match head.orientation {
        Orientation::Right => FormulaTape::new(true, segments, head, Vec::new(), true),
        Orientation::Left => {
            segments.reverse();
            for seg in &mut segments {
                match seg {
                    Segment::Wall(w) => w.reverse(),
                    Segment::Repeater(r) => r.reverse(),
                }
            }
            FormulaTape::new(true, Vec::new(), head, segments, true)
        }
    }
}

/// Decide whether the machine is a bouncer within the given limits.
pub fn decide_bouncers(table: &TransitionTable, params: &BouncersParams) -> BouncersDecision {
    let records = record_breaking_tapes(table, params.step_limit);
    for (head, tapes) in &records {
        let mut tested = 0usize;
        'tape4: for (i, tape4) in tapes.iter().enumerate() {
            if i < 3 {
                continue;
            }
            for (j, tape3) in tapes[..i].iter().enumerate() {
                if j < 2 {
                    continue;
                }
                let len_diff = tape4.word.len() - tape3.word.len();
                let Some(tape2) = shorter_by(&tapes[..i], tape3, len_diff) else {
                    continue;
                };
                let Some(tape1) = shorter_by(&tapes[..i], tape2, len_diff) else {
                    continue;
                };
                let steps = [tape1.step, tape2.step, tape3.step, tape4.step];
                if !is_quadratic(&steps).expect("four steps") {
                    continue;
                }
                let Some(segments) = fit_formula_tape(&tape1.word, &tape2.word, &tape3.word) else {
                    continue;
                };
                let formula = attach_head(segments, *head);
                if let Some(proof) =
                    reaches_special_case(table, &formula, params.macro_limit, params.shift_rule_cap)
                {
                    let cert = BouncerCertificate::new(&table.to_string(), &formula, tape1.step, &proof);
                    return BouncersDecision::NonHalt(Box::new(cert));
                }
                tested += 1;
                if tested == params.max_formula_tapes {
                    break 'tape4;
                }
            }
        }
    }
    BouncersDecision::Unknown
}

fn shorter_by<'a>(records: &'a [RecordTape], from: &RecordTape, len_diff: usize) -> Option<&'a RecordTape> {
    let target = from.word.len().checked_sub(len_diff)?;
    find_by_length(records, target)
}
