//! Record-breaking tape collection: whenever the head pushes past the
//! visited extent it sits at a `0^inf` end; the headless tape words at those
//! moments, grouped by head descriptor, are the raw material for fitting
//! formula tapes.

use std::collections::BTreeMap;

use crate::bouncers::formula::Word;
use crate::directional::{DirectionalTape, Head, Orientation};
use crate::machine::TransitionTable;

/// One record snapshot: the step count and the headless tape word. Words of
/// left-end records are stored mirrored (reversed), so that index 0 is
/// always the symbol next to the far `0^inf` marker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordTape {
    pub step: u64,
    pub word: Word,
}

/// Record tapes per head descriptor, chronological with strictly increasing
/// word lengths (later records that do not grow the word are dropped).
pub type RecordTapeIndex = BTreeMap<Head, Vec<RecordTape>>;

/// Simulate `step_limit` directional steps and collect the record-breaking
/// tapes. Position 0 counts as already visited, so the first record happens
/// when the head first reaches position 1 or -1.
pub fn record_breaking_tapes(table: &TransitionTable, step_limit: u64) -> RecordTapeIndex {
    let mut index: RecordTapeIndex = BTreeMap::new();
    let mut tape = DirectionalTape::initial();
    let mut rightmost = 0i64;
    let mut leftmost = 0i64;
    for step in 0..step_limit {
        if tape.step(table, step).is_err() {
            break;
        }
        let step = step + 1;
        let head_pos = tape.classical_head();
        let record = if head_pos > rightmost {
            debug_assert!(tape.head.orientation == Orientation::Right && tape.right.is_empty());
            rightmost = head_pos;
            Some(tape.left.clone())
        } else if head_pos < leftmost {
            debug_assert!(tape.head.orientation == Orientation::Left && tape.left.is_empty());
            leftmost = head_pos;
            let mut word = tape.right.clone();
            word.reverse();
            Some(word)
        } else {
            None
        };
        if let Some(word) = record {
            let list = index.entry(tape.head).or_default();
            let grown = list.last().is_none_or(|last| word.len() > last.word.len());
            if grown {
                list.push(RecordTape { step, word });
            }
        }
    }
    index
}

/// Binary search a length-sorted record list for an exact word length.
pub fn find_by_length(records: &[RecordTape], len: usize) -> Option<&RecordTape> {
    records
        .binary_search_by_key(&len, |r| r.word.len())
        .ok()
        .map(|i| &records[i])
}
