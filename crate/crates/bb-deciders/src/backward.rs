//! Backward reasoning: explore the predecessors of every halting
//! configuration; if all branches contradict the tape constraints within a
//! depth bound, no halting configuration is reachable.
//!
//! Depth counts backward steps including the construction of the halting
//! configuration itself, so a machine whose halting configurations all die
//! after the chain halt -> predecessor -> contradiction is decided at depth 3.

use std::collections::BTreeMap;

use crate::machine::{Dir, TransitionTable};

/// A partially constrained configuration reached by backward steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialConfiguration {
    pub state: u8,
    pub head: i64,
    /// Only constrained cells are present.
    pub tape: BTreeMap<i64, u8>,
    pub depth: u64,
}

/// One backward transition application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BackwardStep {
    Previous(PartialConfiguration),
    Contradiction,
}

/// Apply `(from, read, write, dir, to)` backwards: `to` must equal the
/// current state; the previous head cell must not contradict the written
/// symbol, and becomes constrained to the read symbol.
pub fn apply_transition_backwards(
    conf: &PartialConfiguration,
    from: u8,
    read: u8,
    write: u8,
    dir: Dir,
) -> BackwardStep {
    let previous_position = conf.head + if dir == Dir::R { -1 } else { 1 };
    if let Some(&constrained) = conf.tape.get(&previous_position) {
        if constrained != write {
            return BackwardStep::Contradiction;
        }
    }
    let mut tape = conf.tape.clone();
    tape.insert(previous_position, read);
    BackwardStep::Previous(PartialConfiguration {
        state: from,
        head: previous_position,
        tape,
        depth: conf.depth + 1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BackwardDecision {
    /// All backward branches contradict within the depth bound. The witness
    /// is the maximum depth at which a contradiction was found.
    NonHalt { max_contradiction_depth: u64 },
    Unknown,
}

#[derive(Debug, Clone, Copy)]
pub struct BackwardParams {
    pub max_depth: u64,
    /// Cap on explored nodes; exceeding it yields `Unknown`.
    pub node_budget: usize,
}

impl Default for BackwardParams {
    fn default() -> BackwardParams {
        BackwardParams { max_depth: 50, node_budget: 100_000 }
    }
}

/// Depth-first backward search from every undefined transition.
///
/// `NonHalt` here only means no halting configuration is reachable in more
/// than `max_depth` steps; callers must separately check that the machine
/// runs `max_depth` forward steps from the all-0 tape without halting.
pub fn decide_backward(table: &TransitionTable, params: BackwardParams) -> BackwardDecision {
    let undefined = table.undefined_transitions();
    if undefined.is_empty() {
        return BackwardDecision::Unknown;
    }
    let mut stack: Vec<PartialConfiguration> = undefined
        .into_iter()
        .map(|(state, read)| PartialConfiguration {
            state,
            head: 0,
            tape: BTreeMap::from([(0, read)]),
            depth: 1,
        })
        .collect();
    let mut max_contradiction_depth = 0;
    let mut explored = 0usize;
    while let Some(conf) = stack.pop() {
        if conf.depth >= params.max_depth {
            return BackwardDecision::Unknown;
        }
        explored += 1;
        if explored > params.node_budget {
            return BackwardDecision::Unknown;
        }
        for (from, read, tr) in table.transitions_reaching(conf.state) {
            match apply_transition_backwards(&conf, from, read, tr.write, tr.dir) {
                BackwardStep::Previous(prev) => stack.push(prev),
                BackwardStep::Contradiction => {
                    max_contradiction_depth = max_contradiction_depth.max(conf.depth + 1);
                }
            }
        }
    }
    BackwardDecision::NonHalt { max_contradiction_depth }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::machines;
    use crate::tape::{simulate, SimulationOutcome};

    fn table(text: &str) -> TransitionTable {
        text.parse().unwrap()
    }

    fn params(max_depth: u64) -> BackwardParams {
        BackwardParams { max_depth, ..BackwardParams::default() }
    }

    #[test]
    fn backward_step_constrains_the_previous_cell() {
        // Halting configuration of the backward example machine: state C
        // reading 0. The only transition into C is B0 = 1LC.
        let halting = PartialConfiguration {
            state: 2,
            head: 0,
            tape: BTreeMap::from([(0, 0)]),
            depth: 1,
        };
        let prev = apply_transition_backwards(&halting, 1, 0, 1, Dir::L);
        let prev = match prev {
            BackwardStep::Previous(p) => p,
            BackwardStep::Contradiction => panic!("unexpected contradiction"),
        };
        assert_eq!(prev.state, 1);
        assert_eq!(prev.head, 1);
        assert_eq!(prev.tape, BTreeMap::from([(0, 0), (1, 0)]));
        assert_eq!(prev.depth, 2);

        // One more step via A0 = 1RB must write a 1 where a 0 is constrained.
        let step = apply_transition_backwards(&prev, 0, 0, 1, Dir::R);
        assert_eq!(step, BackwardStep::Contradiction);
    }

    #[test]
    fn backward_step_accepts_matching_write() {
        let conf = PartialConfiguration {
            state: 1,
            head: 1,
            tape: BTreeMap::from([(0, 1)]),
            depth: 1,
        };
        // A transition writing exactly the constrained value succeeds and the
        // cell is overwritten with its read symbol.
        let step = apply_transition_backwards(&conf, 0, 0, 1, Dir::R);
        match step {
            BackwardStep::Previous(p) => assert_eq!(p.tape, BTreeMap::from([(0, 0)])),
            BackwardStep::Contradiction => panic!("write matches the constraint"),
        }
    }

    #[test]
    fn decides_the_example_machine_at_depth_three() {
        let t = table(machines::BACKWARD);
        assert_eq!(
            decide_backward(&t, params(3)),
            BackwardDecision::NonHalt { max_contradiction_depth: 3 }
        );
        assert_eq!(decide_backward(&t, params(1)), BackwardDecision::Unknown);
    }

    #[test]
    fn champion_stays_unknown() {
        let t = table(machines::BB5_CHAMPION);
        for depth in [1, 5, 10, 20] {
            assert_eq!(decide_backward(&t, params(depth)), BackwardDecision::Unknown);
        }
    }

    #[test]
    fn machine_without_undefined_transitions_is_unknown() {
        let t = table("1RB1LB_1LA1RA");
        assert_eq!(decide_backward(&t, params(10)), BackwardDecision::Unknown);
    }

    #[test]
    fn node_budget_caps_the_search() {
        let t = table(machines::BB5_CHAMPION);
        let p = BackwardParams { max_depth: 30, node_budget: 5 };
        assert_eq!(decide_backward(&t, p), BackwardDecision::Unknown);
    }

    #[test]
    fn deterministic_across_reruns() {
        let t = table(machines::BACKWARD);
        let first = decide_backward(&t, params(7));
        for _ in 0..3 {
            assert_eq!(decide_backward(&t, params(7)), first);
        }
    }

    /// Soundness: never NonHalt for a machine that halts within 10^6 steps
    /// (paired with the required forward run of max_depth steps).
    #[test]
    fn sound_on_halting_corpus() {
        for text in [machines::BB5_CHAMPION, "------", "1RB---_1LA---", "0RB---_1RA0RA"] {
            let t = table(text);
            if let SimulationOutcome::Halted(halt) = simulate(&t, 1_000_000) {
                for depth in [2, 5, 15] {
                    if let BackwardDecision::NonHalt { .. } = decide_backward(&t, params(depth)) {
                        // The pipeline couples NonHalt with a forward run of
                        // max_depth steps; together they must never cover a
                        // halting machine.
                        assert!(
                            halt.step <= depth,
                            "machine {text} halts at {} yet was claimed non-halting at depth {depth}",
                            halt.step
                        );
                    }
                }
            }
        }
    }
}
