//! Transition tables for binary-alphabet Turing machines and the compact
//! text format used to exchange them (`1RB1LC_..._---0LA`).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Head movement direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Dir {
    L,
    R,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::L => Dir::R,
            Dir::R => Dir::L,
        }
    }

    /// Head offset produced by a move in this direction.
    pub fn offset(self) -> i64 {
        match self {
            Dir::L => -1,
            Dir::R => 1,
        }
    }
}

/// A defined transition: write a symbol, move, switch state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transition {
    pub write: u8,
    pub dir: Dir,
    pub next: u8,
}

/// Error produced while parsing a compact machine string. `offset` is the
/// byte position in the input where the problem was found.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseMachineError {
    #[error("malformed triple at offset {offset}: {found:?}")]
    MalformedTriple { offset: usize, found: String },
    #[error("unknown state letter {letter:?} at offset {offset} (machine has {states} states)")]
    UnknownState { offset: usize, letter: char, states: usize },
    #[error("row at offset {offset} has wrong length {len}, expected 6 characters")]
    WrongRowLength { offset: usize, len: usize },
    #[error("machine has no states")]
    Empty,
}

/// Transition table of a binary-alphabet machine. Row `s` holds the entries
/// for reading 0 and 1 in state `s`; `None` marks an undefined (halting)
/// transition. State A is index 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransitionTable {
    entries: Vec<Option<Transition>>,
}

impl TransitionTable {
    pub fn new(entries: Vec<Option<Transition>>) -> TransitionTable {
        assert!(!entries.is_empty() && entries.len().is_multiple_of(2));
        let states = entries.len() / 2;
        for t in entries.iter().flatten() {
            assert!((t.next as usize) < states && t.write <= 1);
        }
        TransitionTable { entries }
    }

    pub fn states(&self) -> usize {
        self.entries.len() / 2
    }

    /// Entry for `(state, read)`, `None` when the machine halts there.
    pub fn entry(&self, state: u8, read: u8) -> Option<Transition> {
        self.entries[state as usize * 2 + read as usize]
    }

    /// All `(state, read)` pairs with no defined transition, in table order.
    pub fn undefined_transitions(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        for s in 0..self.states() as u8 {
            for r in 0..2u8 {
                if self.entry(s, r).is_none() {
                    out.push((s, r));
                }
            }
        }
        out
    }

    /// All defined transitions `(from, read, transition)` in table order.
    pub fn defined_transitions(&self) -> Vec<(u8, u8, Transition)> {
        let mut out = Vec::new();
        for s in 0..self.states() as u8 {
            for r in 0..2u8 {
                if let Some(t) = self.entry(s, r) {
                    out.push((s, r, t));
                }
            }
        }
        out
    }

    /// Defined transitions whose target state is `target`, in table order.
    pub fn transitions_reaching(&self, target: u8) -> Vec<(u8, u8, Transition)> {
        self.defined_transitions()
            .into_iter()
            .filter(|(_, _, t)| t.next == target)
            .collect()
    }

    /// The machine with every L move swapped for R and vice versa.
    pub fn mirrored(&self) -> TransitionTable {
        TransitionTable {
            entries: self
                .entries
                .iter()
                .map(|e| e.map(|t| Transition { dir: t.dir.flip(), ..t }))
                .collect(),
        }
    }
}

pub fn state_letter(state: u8) -> char {
    (b'A' + state) as char
}

impl FromStr for TransitionTable {
    type Err = ParseMachineError;

    fn from_str(text: &str) -> Result<TransitionTable, ParseMachineError> {
        if text.is_empty() {
            return Err(ParseMachineError::Empty);
        }
        let rows: Vec<&str> = text.split('_').collect();
        let states = rows.len();
        let mut entries = Vec::with_capacity(states * 2);
        let mut offset = 0usize;
        for row in rows {
            if row.len() != 6 {
                return Err(ParseMachineError::WrongRowLength { offset, len: row.len() });
            }
            for half in 0..2 {
                let triple = &row[half * 3..half * 3 + 3];
                let triple_offset = offset + half * 3;
                if triple == "---" {
                    entries.push(None);
                    continue;
                }
                let bytes = triple.as_bytes();
                let write = match bytes[0] {
                    b'0' => 0,
                    b'1' => 1,
                    _ => {
                        return Err(ParseMachineError::MalformedTriple {
                            offset: triple_offset,
                            found: triple.to_string(),
                        })
                    }
                };
                let dir = match bytes[1] {
                    b'L' => Dir::L,
                    b'R' => Dir::R,
                    _ => {
                        return Err(ParseMachineError::MalformedTriple {
                            offset: triple_offset,
                            found: triple.to_string(),
                        })
                    }
                };
                let letter = bytes[2] as char;
                if !letter.is_ascii_uppercase() {
                    return Err(ParseMachineError::MalformedTriple {
                        offset: triple_offset,
                        found: triple.to_string(),
                    });
                }
                let next = (bytes[2] - b'A') as usize;
                if next >= states {
                    return Err(ParseMachineError::UnknownState {
                        offset: triple_offset + 2,
                        letter,
                        states,
                    });
                }
                entries.push(Some(Transition { write, dir, next: next as u8 }));
            }
            offset += row.len() + 1; // row plus '_'
        }
        Ok(TransitionTable { entries })
    }
}

impl fmt::Display for TransitionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in 0..self.states() {
            if s > 0 {
                f.write_str("_")?;
            }
            for r in 0..2 {
                match self.entries[s * 2 + r] {
                    None => f.write_str("---")?,
                    Some(t) => {
                        let d = match t.dir {
                            Dir::L => 'L',
                            Dir::R => 'R',
                        };
                        write!(f, "{}{}{}", t.write, d, state_letter(t.next))?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Machines used throughout the tests and examples.
pub mod machines {
    /// Current 5-state busy beaver champion; halts after 47,176,870 steps.
    pub const BB5_CHAMPION: &str = "1RB1LC_1RC1RB_1RD0LE_1LA1LD_---0LA";
    /// bbchallenge #88,427,177, a unilateral bouncer.
    pub const BOUNCER: &str = "1RB1LE_1LC1RD_1LB1RC_1LA0RD_---0LA";
    /// bbchallenge #55,897,188, decided by backward reasoning.
    pub const BACKWARD: &str = "1RB0LD_1LC0RE_---1LD_1LA1LD_1RA0RA";
    /// 3-state machine decided by the halting segment method at n = 2.
    pub const HALTING_SEGMENT: &str = "1RB1RC_0LA0RA_0LB---";
    /// Non-halting machine out of reach of the halting segment method.
    pub const HALTING_SEGMENT_UNDECIDABLE: &str = "1RB---_1LC0RB_1LB1LA";
    /// 4-state counter machine decided by finite automata reduction.
    pub const FAR_COUNTER: &str = "1RB0LD_1LC1RA_0RB0LC_---1LA";
    /// Two-state in-place cycler.
    pub const CYCLER: &str = "0RB---_0LA---";
    /// One-state right-running translated cycler.
    pub const RIGHT_RUNNER: &str = "1RA---";
    /// Three-state zigzag translated cycler used in record-distance tests.
    pub const ZIGZAG: &str = "1RB1RB_1LC1LC_1RA1RA";
}
