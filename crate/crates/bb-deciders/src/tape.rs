//! Classical simulation: bi-infinite tape, configurations, step and run
//! loops, and word representations of configurations.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::machine::{state_letter, TransitionTable};

/// Growable dense tape with an origin offset. Cells at positions >= 0 live in
/// `pos`, cells at positions < 0 live in `neg` (`neg[i]` is position `-1-i`).
/// Absent cells read as 0.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tape {
    pos: Vec<u8>,
    neg: Vec<u8>,
}

impl Tape {
    pub fn new() -> Tape {
        Tape::default()
    }

    #[inline]
    pub fn get(&self, p: i64) -> u8 {
        if p >= 0 {
            self.pos.get(p as usize).copied().unwrap_or(0)
        } else {
            self.neg.get((-1 - p) as usize).copied().unwrap_or(0)
        }
    }

    #[inline]
    pub fn set(&mut self, p: i64, v: u8) {
        let (vec, i) = if p >= 0 {
            (&mut self.pos, p as usize)
        } else {
            (&mut self.neg, (-1 - p) as usize)
        };
        if i >= vec.len() {
            vec.resize(i + 1, 0);
        }
        vec[i] = v;
    }

    /// Nonzero cells as a sparse map.
    pub fn to_map(&self) -> BTreeMap<i64, u8> {
        let mut map = BTreeMap::new();
        for (i, &v) in self.pos.iter().enumerate() {
            if v != 0 {
                map.insert(i as i64, v);
            }
        }
        for (i, &v) in self.neg.iter().enumerate() {
            if v != 0 {
                map.insert(-1 - i as i64, v);
            }
        }
        map
    }

    /// `(first nonzero position, symbols up to the last nonzero position)`,
    /// or `None` for the all-0 tape.
    pub fn trimmed(&self) -> Option<(i64, Vec<u8>)> {
        let map = self.to_map();
        let (&lo, _) = map.iter().next()?;
        let (&hi, _) = map.iter().next_back()?;
        let content = (lo..=hi).map(|p| self.get(p)).collect();
        Some((lo, content))
    }
}

/// Sparse per-cell last-visit timestamps, mirroring [`Tape`]'s layout.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VisitStamps {
    pos: Vec<u64>,
    neg: Vec<u64>,
}

impl VisitStamps {
    pub fn get(&self, p: i64) -> u64 {
        if p >= 0 {
            self.pos.get(p as usize).copied().unwrap_or(0)
        } else {
            self.neg.get((-1 - p) as usize).copied().unwrap_or(0)
        }
    }

    pub fn set(&mut self, p: i64, t: u64) {
        let (vec, i) = if p >= 0 {
            (&mut self.pos, p as usize)
        } else {
            (&mut self.neg, (-1 - p) as usize)
        };
        if i >= vec.len() {
            vec.resize(i + 1, 0);
        }
        vec[i] = t;
    }
}

/// A full machine configuration: state, head position and tape, plus the
/// extent of positions the head has visited so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub state: u8,
    pub head: i64,
    pub tape: Tape,
    pub leftmost: i64,
    pub rightmost: i64,
}

impl Configuration {
    /// The initial configuration: state A, head at 0, all-0 tape.
    pub fn initial() -> Configuration {
        Configuration { state: 0, head: 0, tape: Tape::new(), leftmost: 0, rightmost: 0 }
    }

    /// Key identifying the configuration up to trailing blank tape: state,
    /// absolute head position and trimmed tape content with its offset.
    pub fn key(&self) -> ConfigKey {
        let (offset, content) = self.tape.trimmed().unwrap_or((0, Vec::new()));
        ConfigKey { state: self.state, head: self.head, offset, content }
    }
}

/// Equality / hashing key for exact configuration recurrence checks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConfigKey {
    pub state: u8,
    pub head: i64,
    pub offset: i64,
    pub content: Vec<u8>,
}

/// Details of a halt: the 1-based step at which the undefined transition was
/// met, and what the machine was reading.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Halt {
    pub step: u64,
    pub state: u8,
    pub read: u8,
}

/// Result of running a machine for a bounded number of steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimulationOutcome {
    Halted(Halt),
    RunningAtLimit(Box<Configuration>),
}

impl SimulationOutcome {
    pub fn halted_step(&self) -> Option<u64> {
        match self {
            SimulationOutcome::Halted(h) => Some(h.step),
            SimulationOutcome::RunningAtLimit(_) => None,
        }
    }
}

/// One computation step. Returns the successor configuration, or the halt
/// record when the transition is undefined. The attempted halting step counts
/// toward `steps_taken`, so a machine halting immediately halts at step 1.
pub fn machine_step(table: &TransitionTable, config: &Configuration, steps_taken: u64) -> Result<Configuration, Halt> {
    let read = config.tape.get(config.head);
    match table.entry(config.state, read) {
        None => Err(Halt { step: steps_taken + 1, state: config.state, read }),
        Some(tr) => {
            let mut next = config.clone();
            next.tape.set(next.head, tr.write);
            next.head += tr.dir.offset();
            next.state = tr.next;
            next.leftmost = next.leftmost.min(next.head);
            next.rightmost = next.rightmost.max(next.head);
            Ok(next)
        }
    }
}

/// In-place stepping loop over a configuration. Used by the deciders that
/// need to own the simulation state.
#[derive(Debug, Clone)]
pub struct Simulator<'a> {
    table: &'a TransitionTable,
    pub config: Configuration,
    pub steps: u64,
    pub last_visit: Option<VisitStamps>,
}

impl<'a> Simulator<'a> {
    pub fn new(table: &'a TransitionTable) -> Simulator<'a> {
        Simulator { table, config: Configuration::initial(), steps: 0, last_visit: None }
    }

    /// Enable per-cell last-visit timestamps (off by default; they slow the
    /// plain simulation down).
    pub fn with_last_visit(mut self) -> Simulator<'a> {
        self.last_visit = Some(VisitStamps::default());
        self
    }

    /// Record the current head visit, then perform one step. `Err` is the
    /// halt record for the attempted step.
    #[inline]
    pub fn step(&mut self) -> Result<(), Halt> {
        if let Some(stamps) = &mut self.last_visit {
            stamps.set(self.config.head, self.steps);
        }
        let read = self.config.tape.get(self.config.head);
        match self.table.entry(self.config.state, read) {
            None => Err(Halt { step: self.steps + 1, state: self.config.state, read }),
            Some(tr) => {
                self.config.tape.set(self.config.head, tr.write);
                self.config.head += tr.dir.offset();
                self.config.state = tr.next;
                self.config.leftmost = self.config.leftmost.min(self.config.head);
                self.config.rightmost = self.config.rightmost.max(self.config.head);
                self.steps += 1;
                Ok(())
            }
        }
    }
}

/// Run from the all-0 initial configuration for at most `step_limit` steps.
pub fn simulate(table: &TransitionTable, step_limit: u64) -> SimulationOutcome {
    let mut sim = Simulator::new(table);
    while sim.steps < step_limit {
        if let Err(halt) = sim.step() {
            return SimulationOutcome::Halted(halt);
        }
    }
    SimulationOutcome::RunningAtLimit(Box::new(sim.config))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordRepresentationError {
    #[error("window [{lo}, {hi}] excludes the head at {head}")]
    HeadOutsideWindow { lo: i64, hi: i64, head: i64 },
    #[error("window [{lo}, {hi}] excludes a 1 at position {position}")]
    OneOutsideWindow { lo: i64, hi: i64, position: i64 },
}

/// Word representation of a configuration over a window of tape positions:
/// the window's symbols left to right with the state letter inserted just
/// before the head cell. The window must contain the head and every 1.
pub fn word_representation(
    config: &Configuration,
    window: (i64, i64),
) -> Result<String, WordRepresentationError> {
    let (lo, hi) = window;
    if config.head < lo || config.head > hi {
        return Err(WordRepresentationError::HeadOutsideWindow { lo, hi, head: config.head });
    }
    for &p in config.tape.to_map().keys() {
        if p < lo || p > hi {
            return Err(WordRepresentationError::OneOutsideWindow { lo, hi, position: p });
        }
    }
    let mut word = String::with_capacity((hi - lo + 2) as usize);
    for p in lo..=hi {
        if p == config.head {
            word.push(state_letter(config.state));
        }
        word.push(if config.tape.get(p) == 0 { '0' } else { '1' });
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::machines;

    fn table(text: &str) -> TransitionTable {
        text.parse().unwrap()
    }

    #[test]
    fn first_champion_step() {
        let t = table(machines::BB5_CHAMPION);
        let next = machine_step(&t, &Configuration::initial(), 0).unwrap();
        assert_eq!(next.state, 1);
        assert_eq!(next.head, 1);
        assert_eq!(next.tape.to_map(), BTreeMap::from([(0, 1)]));
        assert_eq!((next.leftmost, next.rightmost), (0, 1));
    }

    #[test]
    fn all_undefined_machine_halts_at_step_one() {
        let t = table("------");
        let halt = machine_step(&t, &Configuration::initial(), 0).unwrap_err();
        assert_eq!(halt, Halt { step: 1, state: 0, read: 0 });
        assert_eq!(simulate(&t, 10).halted_step(), Some(1));
    }

    #[test]
    fn champion_does_not_halt_in_ten_steps() {
        let t = table(machines::BB5_CHAMPION);
        assert!(matches!(simulate(&t, 10), SimulationOutcome::RunningAtLimit(_)));
    }

    #[test]
    fn bouncer_tape_after_64_steps() {
        let t = table(machines::BOUNCER);
        let out = simulate(&t, 64);
        let config = match out {
            SimulationOutcome::RunningAtLimit(c) => c,
            SimulationOutcome::Halted(_) => panic!("halted early"),
        };
        // 0^inf 11111101100 D> 0^inf: head one past the written block, state D.
        assert_eq!(config.state, 3);
        let (lo, content) = config.tape.trimmed().unwrap();
        assert_eq!(content, vec![1, 1, 1, 1, 1, 1, 0, 1, 1]);
        assert_eq!(config.head - lo, 11);
    }

    #[test]
    fn determinism_of_machine_step() {
        let t = table(machines::BOUNCER);
        let mut config = Configuration::initial();
        for step in 0..200 {
            let a = machine_step(&t, &config, step);
            let b = machine_step(&t, &config, step);
            assert_eq!(a, b);
            match a {
                Ok(next) => config = next,
                Err(_) => break,
            }
        }
    }

    #[test]
    fn word_representation_inserts_state_before_head() {
        // Tape ...0011 00... with head two cells left of the first 1, state A.
        let mut config = Configuration::initial();
        config.tape.set(2, 1);
        config.tape.set(3, 1);
        assert_eq!(word_representation(&config, (-2, 5)).unwrap(), "00A001100");
        assert_eq!(
            word_representation(&Configuration::initial(), (0, 0)).unwrap(),
            "A0"
        );
    }

    #[test]
    fn word_representation_window_widening_adds_zeros() {
        let mut config = Configuration::initial();
        config.tape.set(1, 1);
        let base = word_representation(&config, (0, 1)).unwrap();
        let wide = word_representation(&config, (-1, 2)).unwrap();
        assert_eq!(wide, format!("0{base}0"));
    }

    #[test]
    fn word_representation_rejects_bad_windows() {
        let mut config = Configuration::initial();
        config.tape.set(4, 1);
        assert_eq!(
            word_representation(&config, (0, 2)),
            Err(WordRepresentationError::OneOutsideWindow { lo: 0, hi: 2, position: 4 })
        );
        config.head = -3;
        assert_eq!(
            word_representation(&config, (0, 4)),
            Err(WordRepresentationError::HeadOutsideWindow { lo: 0, hi: 4, head: -3 })
        );
    }

    #[test]
    fn trimmed_tape_keys_compare_semantically() {
        let t = table(machines::CYCLER);
        let c0 = Configuration::initial();
        let c1 = machine_step(&t, &c0, 0).unwrap();
        let c2 = machine_step(&t, &c1, 1).unwrap();
        assert_eq!(c2.key(), c0.key());
        assert_ne!(c1.key(), c0.key());
    }
}
