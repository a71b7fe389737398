//! Directional simulation: the head lives between tape cells and points left
//! or right, and machine steps are local word-rewrite rules.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::machine::{state_letter, Dir, TransitionTable};
use crate::tape::Halt;

/// Which way the head points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// `<S`: the head reads the symbol immediately to its left.
    Left,
    /// `S>`: the head reads the symbol immediately to its right.
    Right,
}

/// Head descriptor: state plus pointing direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Head {
    pub state: u8,
    pub orientation: Orientation,
}

impl fmt::Display for Head {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.orientation {
            Orientation::Left => write!(f, "<{}", state_letter(self.state)),
            Orientation::Right => write!(f, "{}>", state_letter(self.state)),
        }
    }
}

/// A directional tape: finite words on both sides of the head, with optional
/// `0^inf` markers at the outer ends. `boundary` tracks the absolute tape
/// position of the cell just right of the head, which keeps the classical
/// correspondence exact; it does not participate in equality.
#[derive(Debug, Clone)]
pub struct DirectionalTape {
    pub left: Vec<u8>,
    pub head: Head,
    pub right: Vec<u8>,
    pub left_infinite: bool,
    pub right_infinite: bool,
    pub boundary: i64,
}

impl PartialEq for DirectionalTape {
    fn eq(&self, other: &DirectionalTape) -> bool {
        self.left == other.left
            && self.head == other.head
            && self.right == other.right
            && self.left_infinite == other.left_infinite
            && self.right_infinite == other.right_infinite
    }
}

impl Eq for DirectionalTape {}

/// Why a directional step could not be taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionalStepError {
    /// The transition for the read symbol is undefined.
    Halted(Halt),
    /// The head faces a finite tape end with no `0^inf` marker.
    OffTheEnd,
}

impl DirectionalTape {
    /// The initial tape `0^inf A> 0^inf`.
    pub fn initial() -> DirectionalTape {
        DirectionalTape {
            left: Vec::new(),
            head: Head { state: 0, orientation: Orientation::Right },
            right: Vec::new(),
            left_infinite: true,
            right_infinite: true,
            boundary: 0,
        }
    }

    /// Remove explicit 0 cells adjacent to the `0^inf` markers.
    pub fn trim(&mut self) {
        if self.left_infinite {
            let zeros = self.left.iter().take_while(|&&c| c == 0).count();
            self.left.drain(..zeros);
        }
        if self.right_infinite {
            while self.right.last() == Some(&0) {
                self.right.pop();
            }
        }
    }

    /// Apply the unique applicable rewrite rule for `steps_taken + 1`-th step.
    pub fn step(&mut self, table: &TransitionTable, steps_taken: u64) -> Result<(), DirectionalStepError> {
        let state = self.head.state;
        let (read, from_marker) = match self.head.orientation {
            Orientation::Right => match self.right.first() {
                Some(&c) => (c, false),
                None if self.right_infinite => (0, true),
                None => return Err(DirectionalStepError::OffTheEnd),
            },
            Orientation::Left => match self.left.last() {
                Some(&c) => (c, false),
                None if self.left_infinite => (0, true),
                None => return Err(DirectionalStepError::OffTheEnd),
            },
        };
        let tr = table.entry(state, read).ok_or(DirectionalStepError::Halted(Halt {
            step: steps_taken + 1,
            state,
            read,
        }))?;
        let next = Head { state: tr.next, orientation: if tr.dir == Dir::L { Orientation::Left } else { Orientation::Right } };
        match (self.head.orientation, tr.dir) {
            // x <S  ->  <S' x'      and      0^inf <S  ->  0^inf <S' x'
            (Orientation::Left, Dir::L) => {
                if !from_marker {
                    self.left.pop();
                }
                self.right.insert(0, tr.write);
                self.boundary -= 1;
            }
            // x <S  ->  x' S'>      and      0^inf <S  ->  0^inf x' S'>
            (Orientation::Left, Dir::R) => {
                if from_marker {
                    self.left.push(tr.write);
                } else {
                    *self.left.last_mut().unwrap() = tr.write;
                }
            }
            // S> x  ->  <S' x'      and      S> 0^inf  ->  <S' x' 0^inf
            (Orientation::Right, Dir::L) => {
                if from_marker {
                    self.right.insert(0, tr.write);
                } else {
                    self.right[0] = tr.write;
                }
            }
            // S> x  ->  x' S'>      and      S> 0^inf  ->  x' S'> 0^inf
            (Orientation::Right, Dir::R) => {
                if !from_marker {
                    self.right.remove(0);
                }
                self.left.push(tr.write);
                self.boundary += 1;
            }
        }
        self.head = next;
        self.trim();
        Ok(())
    }

    /// Absolute position of the classical head (the cell being read).
    pub fn classical_head(&self) -> i64 {
        match self.head.orientation {
            Orientation::Right => self.boundary,
            Orientation::Left => self.boundary - 1,
        }
    }

    /// Classical view `(state, head position, nonzero cells)`.
    pub fn to_classical(&self) -> (u8, i64, BTreeMap<i64, u8>) {
        let mut cells = BTreeMap::new();
        let n = self.left.len() as i64;
        for (i, &c) in self.left.iter().enumerate() {
            if c != 0 {
                cells.insert(self.boundary - n + i as i64, c);
            }
        }
        for (i, &c) in self.right.iter().enumerate() {
            if c != 0 {
                cells.insert(self.boundary + i as i64, c);
            }
        }
        (self.head.state, self.classical_head(), cells)
    }
}

impl fmt::Display for DirectionalTape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.left_infinite {
            parts.push("0^inf".into());
        }
        if !self.left.is_empty() {
            parts.push(self.left.iter().map(|b| char::from(b'0' + b)).collect());
        }
        parts.push(self.head.to_string());
        if !self.right.is_empty() {
            parts.push(self.right.iter().map(|b| char::from(b'0' + b)).collect());
        }
        if self.right_infinite {
            parts.push("0^inf".into());
        }
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid directional tape token {0:?}")]
pub struct ParseTapeError(pub String);

impl FromStr for DirectionalTape {
    type Err = ParseTapeError;

    /// Parses the space-separated form, e.g. `0^inf 11111101100 D> 0^inf`.
    fn from_str(text: &str) -> Result<DirectionalTape, ParseTapeError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let mut left_infinite = false;
        let mut right_infinite = false;
        let mut words: Vec<&str> = Vec::new();
        let mut head: Option<(usize, Head)> = None;
        for (i, tok) in tokens.iter().enumerate() {
            if *tok == "0^inf" {
                if i == 0 {
                    left_infinite = true;
                } else if i == tokens.len() - 1 {
                    right_infinite = true;
                } else {
                    return Err(ParseTapeError(tok.to_string()));
                }
                continue;
            }
            if let Some(h) = parse_head_token(tok) {
                if head.is_some() {
                    return Err(ParseTapeError(tok.to_string()));
                }
                head = Some((words.len(), h));
                continue;
            }
            if tok.chars().all(|c| c == '0' || c == '1') && !tok.is_empty() {
                words.push(tok);
            } else {
                return Err(ParseTapeError(tok.to_string()));
            }
        }
        let (split, head) = head.ok_or_else(|| ParseTapeError(text.to_string()))?;
        let bits = |ws: &[&str]| ws.concat().bytes().map(|b| b - b'0').collect::<Vec<u8>>();
        Ok(DirectionalTape {
            left: bits(&words[..split]),
            head,
            right: bits(&words[split..]),
            left_infinite,
            right_infinite,
            boundary: 0,
        })
    }
}

pub(crate) fn parse_head_token(tok: &str) -> Option<Head> {
    let bytes = tok.as_bytes();
    if bytes.len() != 2 {
        return None;
    }
    if bytes[1] == b'>' && bytes[0].is_ascii_uppercase() {
        Some(Head { state: bytes[0] - b'A', orientation: Orientation::Right })
    } else if bytes[0] == b'<' && bytes[1].is_ascii_uppercase() {
        Some(Head { state: bytes[1] - b'A', orientation: Orientation::Left })
    } else {
        None
    }
}

/// Run the directional simulation from the initial tape for `steps` steps.
pub fn simulate_directional(table: &TransitionTable, steps: u64) -> Result<DirectionalTape, DirectionalStepError> {
    let mut tape = DirectionalTape::initial();
    for s in 0..steps {
        tape.step(table, s)?;
    }
    Ok(tape)
}
