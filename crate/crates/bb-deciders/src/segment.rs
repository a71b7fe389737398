//! Halting segment: abstract simulation on a finite tape segment with an
//! explicit "outside" position. If, for some halting transition, the
//! reachable halting nodes do not cover every position in [-1, n], the
//! machine cannot halt.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::machine::{Dir, TransitionTable};

/// State of a segment configuration: still running, or halted via a specific
/// undefined transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SegState {
    Running(u8),
    /// Halting node, tagged with the `(state, read)` transition used to halt.
    Halted { from: u8, read: u8 },
}

/// A segment configuration: machine state (or halt tag), segment content of
/// length n, and head position in [-1, n] where -1 and n mean outside.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SegmentConfiguration {
    pub state: SegState,
    pub segment: Vec<u8>,
    pub position: i32,
}

impl SegmentConfiguration {
    fn n(&self) -> i32 {
        self.segment.len() as i32
    }

    pub fn is_inside(&self) -> bool {
        self.position >= 0 && self.position < self.n()
    }
}

/// Children of a non-halted node.
///
/// Head inside: exactly one child (the machine step restricted to the
/// segment, or a halting child for an undefined transition). Head outside:
/// per transition of the node's state, a halting child, a stay-outside child
/// for movement away, or both a re-enter-at-border child and a stay-outside
/// child for movement toward the segment. Writes outside the segment are
/// discarded.
pub fn expand_node(table: &TransitionTable, node: &SegmentConfiguration) -> Vec<SegmentConfiguration> {
    let state = match node.state {
        SegState::Running(s) => s,
        SegState::Halted { .. } => return Vec::new(),
    };
    let n = node.n();
    let mut children = Vec::new();
    if node.is_inside() {
        let read = node.segment[node.position as usize];
        match table.entry(state, read) {
            None => children.push(SegmentConfiguration {
                state: SegState::Halted { from: state, read },
                segment: node.segment.clone(),
                position: node.position,
            }),
            Some(tr) => {
                let mut segment = node.segment.clone();
                segment[node.position as usize] = tr.write;
                children.push(SegmentConfiguration {
                    state: SegState::Running(tr.next),
                    segment,
                    position: node.position + tr.dir.offset() as i32,
                });
            }
        }
        return children;
    }
    let toward = if node.position == -1 { Dir::R } else { Dir::L };
    for read in 0..2u8 {
        match table.entry(state, read) {
            None => children.push(SegmentConfiguration {
                state: SegState::Halted { from: state, read },
                segment: node.segment.clone(),
                position: node.position,
            }),
            Some(tr) if tr.dir != toward => {
                // Moving farther away: only the state changes.
                children.push(SegmentConfiguration {
                    state: SegState::Running(tr.next),
                    segment: node.segment.clone(),
                    position: node.position,
                });
            }
            Some(tr) => {
                // Moving toward the segment: re-enter at the border (the write
                // lands outside and is discarded), or stay outside.
                let border = if node.position == -1 { 0 } else { n - 1 };
                children.push(SegmentConfiguration {
                    state: SegState::Running(tr.next),
                    segment: node.segment.clone(),
                    position: border,
                });
                children.push(SegmentConfiguration {
                    state: SegState::Running(tr.next),
                    segment: node.segment.clone(),
                    position: node.position,
                });
            }
        }
    }
    children
}

/// Reachable part of the halting segment graph. Halting nodes are indexed by
/// `(halting transition, position)`; their segment content is irrelevant to
/// the coverage test.
#[derive(Debug, Clone)]
pub struct SegmentGraph {
    pub visited: HashSet<SegmentConfiguration>,
    /// Reachable halting nodes as `(halting transition, position)`.
    pub halting: HashSet<((u8, u8), i32)>,
    pub budget_exceeded: bool,
}

/// Forward closure from the n+2 initial nodes (state A, all-0 segment, every
/// head position).
pub fn build_segment_graph(table: &TransitionTable, n: usize, node_budget: usize) -> SegmentGraph {
    let mut visited = HashSet::new();
    let mut halting = HashSet::new();
    let mut frontier = VecDeque::new();
    for position in -1..=(n as i32) {
        let node = SegmentConfiguration {
            state: SegState::Running(0),
            segment: vec![0; n],
            position,
        };
        if visited.insert(node.clone()) {
            frontier.push_back(node);
        }
    }
    let mut budget_exceeded = false;
    'explore: while let Some(node) = frontier.pop_front() {
        for child in expand_node(table, &node) {
            if let SegState::Halted { from, read } = child.state {
                halting.insert(((from, read), child.position));
                continue;
            }
            if visited.len() >= node_budget {
                budget_exceeded = true;
                break 'explore;
            }
            if visited.insert(child.clone()) {
                frontier.push_back(child);
            }
        }
    }
    SegmentGraph { visited, halting, budget_exceeded }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SegmentDecision {
    /// Every halting transition leaves some position uncovered.
    NonHalt { n: usize, uncovered: Vec<((u8, u8), i32)> },
    Unknown,
}

/// Decide via the halting segment graph for segment size `n`.
pub fn decide_halting_segment(table: &TransitionTable, n: usize, node_budget: usize) -> SegmentDecision {
    assert!(n >= 1);
    let graph = build_segment_graph(table, n, node_budget);
    if graph.budget_exceeded {
        return SegmentDecision::Unknown;
    }
    let mut uncovered = Vec::new();
    for (from, read) in table.undefined_transitions() {
        let mut missing: Vec<((u8, u8), i32)> = Vec::new();
        for position in -1..=(n as i32) {
            if !graph.halting.contains(&((from, read), position)) {
                missing.push(((from, read), position));
            }
        }
        if missing.is_empty() {
            // This halting transition covers the whole segment: cannot
            // conclude anything for the machine.
            return SegmentDecision::Unknown;
        }
        uncovered.extend(missing);
    }
    SegmentDecision::NonHalt { n, uncovered }
}
