//! Cyclers and translated cyclers.
//!
//! A cycler revisits an exact configuration and therefore loops forever; the
//! decider remembers every configuration seen. A translated cycler repeats a
//! bounded pattern translated in space; the decider compares record-breaking
//! configurations (head visiting a never-visited cell) pairwise, using
//! per-cell last-visit timestamps to bound the relevant tape window.

use std::collections::HashMap;

use serde::Serialize;

use crate::machine::TransitionTable;
use crate::tape::{Configuration, Halt, Simulator, Tape, VisitStamps};

/// Which side of the tape a record was broken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RecordSide {
    Right,
    Left,
}

/// Outcome of a loop decider run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopDecision {
    /// Exact recurrence witness: configuration at step `i` equals the
    /// configuration at step `j`.
    Cycle { i: u64, j: u64 },
    /// Translated-cycle witness: matching records at steps `t1 < t2`.
    TranslatedCycle { side: RecordSide, t1: u64, t2: u64, distance: i64 },
    Halted(Halt),
    Unknown,
}

impl LoopDecision {
    pub fn is_nonhalt(&self) -> bool {
        matches!(self, LoopDecision::Cycle { .. } | LoopDecision::TranslatedCycle { .. })
    }
}

/// Limits for [`decide_cyclers`]. `max_configs` caps the memory spent on the
/// seen-set; exceeding it yields `Unknown`.
#[derive(Debug, Clone, Copy)]
pub struct CyclersParams {
    pub time_limit: u64,
    pub max_configs: usize,
}

impl Default for CyclersParams {
    fn default() -> CyclersParams {
        CyclersParams { time_limit: 1000, max_configs: 1_000_000 }
    }
}

/// Detect exact configuration recurrence within `params.time_limit` steps.
pub fn decide_cyclers(table: &TransitionTable, params: CyclersParams) -> LoopDecision {
    let mut sim = Simulator::new(table);
    let mut seen: HashMap<_, u64> = HashMap::new();
    loop {
        let key = sim.config.key();
        if let Some(&i) = seen.get(&key) {
            return LoopDecision::Cycle { i, j: sim.steps };
        }
        if seen.len() >= params.max_configs {
            return LoopDecision::Unknown;
        }
        seen.insert(key, sim.steps);
        if sim.steps >= params.time_limit {
            return LoopDecision::Unknown;
        }
        if let Err(halt) = sim.step() {
            return LoopDecision::Halted(halt);
        }
    }
}

/// A configuration that broke a record, snapshotted together with the
/// per-cell last-visit timestamps at that moment.
#[derive(Debug, Clone)]
pub struct RecordBreakingConfiguration {
    pub config: Configuration,
    pub step: u64,
    pub side: RecordSide,
    pub last_visit: VisitStamps,
}

impl RecordBreakingConfiguration {
    /// The record position itself (the extreme on the record's side).
    pub fn record_position(&self) -> i64 {
        match self.side {
            RecordSide::Right => self.config.rightmost,
            RecordSide::Left => self.config.leftmost,
        }
    }
}

/// Maximum distance from `older`'s record position reached between the two
/// records, on the non-record side, computed from last-visit timestamps.
pub fn compute_distance_l(
    current: &RecordBreakingConfiguration,
    older: &RecordBreakingConfiguration,
) -> i64 {
    debug_assert_eq!(current.side, older.side);
    debug_assert!(older.step < current.step);
    let older_pos = older.record_position();
    let older_time = older.last_visit.get(older_pos);
    let current_time = current.last_visit.get(current.record_position());
    let mut distance = 0i64;
    for p in current.config.leftmost..=current.config.rightmost {
        match current.side {
            RecordSide::Right if p > older_pos => continue,
            RecordSide::Left if p < older_pos => continue,
            _ => {}
        }
        let visited = current.last_visit.get(p);
        if visited >= older_time && visited <= current_time {
            distance = distance.max((p - older_pos).abs());
        }
    }
    distance
}

/// True when the tape contents within distance L of the two record positions
/// (toward the tape interior) agree cell for cell.
pub fn check_record_pair(
    current: &RecordBreakingConfiguration,
    older: &RecordBreakingConfiguration,
) -> bool {
    debug_assert_eq!(current.side, older.side);
    debug_assert_eq!(current.config.state, older.config.state);
    let distance = compute_distance_l(current, older);
    let current_extreme = current.record_position();
    let older_extreme = older.record_position();
    let step = match current.side {
        RecordSide::Right => -1,
        RecordSide::Left => 1,
    };
    for k in 0..=distance {
        let offset = k * step;
        if current.config.tape.get(current_extreme + offset) != older.config.tape.get(older_extreme + offset) {
            return false;
        }
    }
    true
}

/// Detect a translated cycle within `time_limit` steps.
pub fn decide_translated_cyclers(table: &TransitionTable, time_limit: u64) -> LoopDecision {
    let mut state = 0u8;
    let mut head = 0i64;
    let mut tape = Tape::new();
    let mut last_visit = VisitStamps::default();
    let mut extremes = [0i64, 0i64]; // [right, left]
    let mut records: [Vec<RecordBreakingConfiguration>; 2] = [Vec::new(), Vec::new()];
    let (mut leftmost, mut rightmost) = (0i64, 0i64);

    for time in 0..time_limit {
        last_visit.set(head, time);
        let record_side = if head > extremes[0] {
            Some(RecordSide::Right)
        } else if head < extremes[1] {
            Some(RecordSide::Left)
        } else {
            None
        };
        if let Some(side) = record_side {
            let slot = side as usize;
            extremes[slot] = head;
            let snapshot = RecordBreakingConfiguration {
                config: Configuration { state, head, tape: tape.clone(), leftmost, rightmost },
                step: time,
                side,
                last_visit: last_visit.clone(),
            };
            for older in &records[slot] {
                if older.config.state != snapshot.config.state {
                    continue;
                }
                if check_record_pair(&snapshot, older) {
                    let distance = compute_distance_l(&snapshot, older);
                    return LoopDecision::TranslatedCycle { side, t1: older.step, t2: time, distance };
                }
            }
            records[slot].push(snapshot);
        }

        let read = tape.get(head);
        match table.entry(state, read) {
            None => return LoopDecision::Halted(Halt { step: time + 1, state, read }),
            Some(tr) => {
                tape.set(head, tr.write);
                head += tr.dir.offset();
                state = tr.next;
                leftmost = leftmost.min(head);
                rightmost = rightmost.max(head);
            }
        }
    }
    LoopDecision::Unknown
}
