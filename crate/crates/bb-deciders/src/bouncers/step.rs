//! The step relation on formula tapes: a usual machine step when the head
//! faces a wall, or a shift rule carrying the head across a repeater. Shift
//! rules are discovered by bounded simulation on the finite context word.

use std::collections::HashSet;

use crate::bouncers::formula::{normalize, FormulaTape, Segment, Word};
use crate::directional::{Head, Orientation};
use crate::machine::{Dir, TransitionTable};

/// A proven rewrite `u S> (r) -> (image) u S>` (or its left mirror
/// `(r) <S u -> <S u (image)`), with the machine steps one application of
/// the underlying simulation takes per repeater copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftRule {
    pub orientation: Orientation,
    pub context: Word,
    pub state: u8,
    pub repeater: Word,
    pub image: Word,
    pub steps: u64,
}

/// Default cap on the simulation budget used to prove one shift rule.
pub const DEFAULT_SHIFT_RULE_CAP: u64 = 10_000;

/// Try to prove the shift rule for context `u`, state `s` and repeater `r`
/// by simulating on the finite word. Succeeds iff the head exits the far end
/// in state `s` with the context preserved; fails on exit at the near end,
/// halting, budget exhaustion or configuration repetition.
pub fn detect_shift_rule(
    table: &TransitionTable,
    context: &[u8],
    state: u8,
    orientation: Orientation,
    repeater: &[u8],
    step_budget: u64,
) -> Option<ShiftRule> {
    assert!(!repeater.is_empty());
    let mut word: Word = match orientation {
        Orientation::Right => context.iter().chain(repeater).copied().collect(),
        Orientation::Left => repeater.iter().chain(context).copied().collect(),
    };
    let len = word.len();
    let mut boundary = match orientation {
        Orientation::Right => context.len(),
        Orientation::Left => repeater.len(),
    };
    let mut head = Head { state, orientation };
    let mut steps = 0u64;
    let mut seen: HashSet<(Head, usize, Word)> = HashSet::new();
    loop {
        // Exit conditions: pointing beyond either end of the finite word.
        if head.orientation == Orientation::Right && boundary == len {
            if orientation == Orientation::Right
                && head.state == state
                && word[len - context.len()..] == *context
            {
                return Some(ShiftRule {
                    orientation,
                    context: context.to_vec(),
                    state,
                    repeater: repeater.to_vec(),
                    image: word[..repeater.len()].to_vec(),
                    steps,
                });
            }
            return None;
        }
        if head.orientation == Orientation::Left && boundary == 0 {
            if orientation == Orientation::Left
                && head.state == state
                && word[..context.len()] == *context
            {
                return Some(ShiftRule {
                    orientation,
                    context: context.to_vec(),
                    state,
                    repeater: repeater.to_vec(),
                    image: word[context.len()..].to_vec(),
                    steps,
                });
            }
            return None;
        }
        if steps >= step_budget || !seen.insert((head, boundary, word.clone())) {
            return None;
        }
        let cell = if head.orientation == Orientation::Right { boundary } else { boundary - 1 };
        let read = word[cell];
        let Some(tr) = table.entry(head.state, read) else {
            return None; // halts inside the window
        };
        word[cell] = tr.write;
        if tr.dir == Dir::R {
            boundary = cell + 1;
        } else {
            boundary = cell;
        }
        head = Head {
            state: tr.next,
            orientation: if tr.dir == Dir::R { Orientation::Right } else { Orientation::Left },
        };
        steps += 1;
    }
}

/// Budget for proving one shift rule: every configuration of the finite
/// window could in principle be visited once.
fn shift_rule_budget(table: &TransitionTable, window: usize, cap: u64) -> u64 {
    let configs = (table.states() as u64)
        .saturating_mul(window as u64 + 1)
        .saturating_mul(1u64.checked_shl(window.min(62) as u32).unwrap_or(u64::MAX));
    configs.min(cap)
}

/// What a successful formula step did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepKind {
    Usual,
    /// A shift rule applied to the repeater with this index (in instantiation
    /// order: left side left-to-right, then right side).
    Shift { rule: ShiftRule, repeater_index: usize },
}

/// Outcome of one formula-tape step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormulaStep {
    Stepped(FormulaTape, StepKind),
    /// The machine halts in this configuration.
    Halt,
    /// The head faces a repeater and no shift rule applies (or a bare end).
    NoRule,
}

/// Apply one step of the tape relation to a formula tape: a usual step when
/// the head faces a wall symbol or a `0^inf` marker, otherwise the shift
/// rule with the smallest context taken from the adjacent wall.
pub fn formula_step(table: &TransitionTable, f: &FormulaTape, shift_rule_cap: u64) -> FormulaStep {
    match f.head.orientation {
        Orientation::Right => match f.right.first() {
            Some(Segment::Wall(_)) => usual_step_right(table, f, false),
            None if f.right_infinite => usual_step_right(table, f, true),
            Some(Segment::Repeater(_)) => shift_step_right(table, f, shift_rule_cap),
            None => FormulaStep::NoRule,
        },
        Orientation::Left => match f.left.last() {
            Some(Segment::Wall(_)) => usual_step_left(table, f, false),
            None if f.left_infinite => usual_step_left(table, f, true),
            Some(Segment::Repeater(_)) => shift_step_left(table, f, shift_rule_cap),
            None => FormulaStep::NoRule,
        },
    }
}

fn usual_step_right(table: &TransitionTable, f: &FormulaTape, from_marker: bool) -> FormulaStep {
    let read = if from_marker {
        0
    } else {
        match f.right.first() {
            Some(Segment::Wall(w)) => w[0],
            _ => unreachable!(),
        }
    };
    let Some(tr) = table.entry(f.head.state, read) else {
        return FormulaStep::Halt;
    };
    let mut f2 = f.clone();
    match tr.dir {
        Dir::R => {
            // S> x -> x' S'>
            if !from_marker {
                if let Some(Segment::Wall(w)) = f2.right.first_mut() {
                    w.remove(0);
                }
            }
            push_back(&mut f2.left, tr.write);
        }
        Dir::L => {
            // S> x -> <S' x'
            if from_marker {
                f2.right.insert(0, Segment::Wall(vec![tr.write]));
            } else if let Some(Segment::Wall(w)) = f2.right.first_mut() {
                w[0] = tr.write;
            }
        }
    }
    f2.head = Head {
        state: tr.next,
        orientation: if tr.dir == Dir::R { Orientation::Right } else { Orientation::Left },
    };
    normalize(&mut f2.left);
    normalize(&mut f2.right);
    FormulaStep::Stepped(f2, StepKind::Usual)
}

fn usual_step_left(table: &TransitionTable, f: &FormulaTape, from_marker: bool) -> FormulaStep {
    let read = if from_marker {
        0
    } else {
        match f.left.last() {
            Some(Segment::Wall(w)) => *w.last().unwrap(),
            _ => unreachable!(),
        }
    };
    let Some(tr) = table.entry(f.head.state, read) else {
        return FormulaStep::Halt;
    };
    let mut f2 = f.clone();
    match tr.dir {
        Dir::L => {
            // x <S -> <S' x'
            if !from_marker {
                if let Some(Segment::Wall(w)) = f2.left.last_mut() {
                    w.pop();
                }
            }
            push_front(&mut f2.right, tr.write);
        }
        Dir::R => {
            // x <S -> x' S'>
            if from_marker {
                f2.left.push(Segment::Wall(vec![tr.write]));
            } else if let Some(Segment::Wall(w)) = f2.left.last_mut() {
                *w.last_mut().unwrap() = tr.write;
            }
        }
    }
    f2.head = Head {
        state: tr.next,
        orientation: if tr.dir == Dir::R { Orientation::Right } else { Orientation::Left },
    };
    normalize(&mut f2.left);
    normalize(&mut f2.right);
    FormulaStep::Stepped(f2, StepKind::Usual)
}

fn push_back(segs: &mut Vec<Segment>, bit: u8) {
    if let Some(Segment::Wall(w)) = segs.last_mut() {
        w.push(bit);
    } else {
        segs.push(Segment::Wall(vec![bit]));
    }
}

fn push_front(segs: &mut Vec<Segment>, bit: u8) {
    if let Some(Segment::Wall(w)) = segs.first_mut() {
        w.insert(0, bit);
    } else {
        segs.insert(0, Segment::Wall(vec![bit]));
    }
}

fn shift_step_right(table: &TransitionTable, f: &FormulaTape, cap: u64) -> FormulaStep {
    let Some(Segment::Repeater(repeater)) = f.right.first() else { unreachable!() };
    let wall: &[u8] = match f.left.last() {
        Some(Segment::Wall(w)) => w,
        _ => &[],
    };
    // Smallest context first: suffixes of the adjacent wall.
    for u_len in 0..=wall.len() {
        let context = &wall[wall.len() - u_len..];
        let budget = shift_rule_budget(table, u_len + repeater.len(), cap);
        let Some(rule) =
            detect_shift_rule(table, context, f.head.state, Orientation::Right, repeater, budget)
        else {
            continue;
        };
        let mut f2 = f.clone();
        f2.right.remove(0);
        if u_len > 0 {
            if let Some(Segment::Wall(w)) = f2.left.last_mut() {
                w.truncate(w.len() - u_len);
            }
        }
        f2.left.push(Segment::Repeater(rule.image.clone()));
        if u_len > 0 {
            f2.left.push(Segment::Wall(rule.context.clone()));
        }
        normalize(&mut f2.left);
        normalize(&mut f2.right);
        let repeater_index = f.left.iter().filter(|s| s.is_repeater()).count();
        return FormulaStep::Stepped(f2, StepKind::Shift { rule, repeater_index });
    }
    FormulaStep::NoRule
}

fn shift_step_left(table: &TransitionTable, f: &FormulaTape, cap: u64) -> FormulaStep {
    let Some(Segment::Repeater(repeater)) = f.left.last() else { unreachable!() };
    let wall: &[u8] = match f.right.first() {
        Some(Segment::Wall(w)) => w,
        _ => &[],
    };
    // Smallest context first: prefixes of the adjacent wall.
    for u_len in 0..=wall.len() {
        let context = &wall[..u_len];
        let budget = shift_rule_budget(table, u_len + repeater.len(), cap);
        let Some(rule) =
            detect_shift_rule(table, context, f.head.state, Orientation::Left, repeater, budget)
        else {
            continue;
        };
        let mut f2 = f.clone();
        f2.left.pop();
        if u_len > 0 {
            if let Some(Segment::Wall(w)) = f2.right.first_mut() {
                w.drain(..u_len);
            }
        }
        f2.right.insert(0, Segment::Repeater(rule.image.clone()));
        if u_len > 0 {
            f2.right.insert(0, Segment::Wall(rule.context.clone()));
        }
        normalize(&mut f2.left);
        normalize(&mut f2.right);
        let repeater_index = f.left.iter().filter(|s| s.is_repeater()).count() - 1;
        return FormulaStep::Stepped(f2, StepKind::Shift { rule, repeater_index });
    }
    FormulaStep::NoRule
}

/// One macro step: alignment followed by one formula-tape step.
pub fn macro_step(table: &TransitionTable, f: &FormulaTape, shift_rule_cap: u64) -> FormulaStep {
    formula_step(table, &f.aligned(), shift_rule_cap)
}

/// True iff `candidate` is a special case of `base`: after aligning both,
/// identical skeletons except that each repeater may have absorbed copies of
/// its own word into the wall on its head side.
pub fn is_special_case(candidate: &FormulaTape, base: &FormulaTape) -> bool {
    let c = candidate.aligned();
    let b = base.aligned();
    if c.head != b.head || c.left_infinite != b.left_infinite || c.right_infinite != b.right_infinite {
        return false;
    }

    fn strip_copies_front(wall: &[u8], base_wall: &[u8], rep: &[u8]) -> bool {
        // wall == rep^k ++ base_wall for some k >= 0
        if wall.len() < base_wall.len() {
            return false;
        }
        let extra = wall.len() - base_wall.len();
        if !extra.is_multiple_of(rep.len()) || wall[extra..] != *base_wall {
            return false;
        }
        wall[..extra].chunks(rep.len()).all(|chunk| chunk == rep)
    }

    fn strip_copies_back(wall: &[u8], base_wall: &[u8], rep: &[u8]) -> bool {
        // wall == base_wall ++ rep^k for some k >= 0
        if wall.len() < base_wall.len() {
            return false;
        }
        let extra = wall.len() - base_wall.len();
        if !extra.is_multiple_of(rep.len()) || wall[..base_wall.len()] != *base_wall {
            return false;
        }
        wall[base_wall.len()..].chunks(rep.len()).all(|chunk| chunk == rep)
    }

    // Left side: copies land in the wall to the right of each repeater.
    let (c_walls, c_reps) = FormulaTape::alternating(&c.left);
    let (b_walls, b_reps) = FormulaTape::alternating(&b.left);
    if c_reps != b_reps || c_walls.len() != b_walls.len() {
        return false;
    }
    if c_walls[0] != b_walls[0] {
        return false;
    }
    for i in 1..c_walls.len() {
        if !strip_copies_front(&c_walls[i], &b_walls[i], &b_reps[i - 1]) {
            return false;
        }
    }

    // Right side: copies land in the wall to the left of each repeater.
    let (c_walls, c_reps) = FormulaTape::alternating(&c.right);
    let (b_walls, b_reps) = FormulaTape::alternating(&b.right);
    if c_reps != b_reps || c_walls.len() != b_walls.len() {
        return false;
    }
    let q = c_walls.len() - 1;
    if c_walls[q] != b_walls[q] {
        return false;
    }
    for i in 0..q {
        if !strip_copies_back(&c_walls[i], &b_walls[i], &b_reps[i]) {
            return false;
        }
    }
    true
}

/// Result of driving a formula tape to a special case of itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialCaseProof {
    pub macro_steps: u64,
    pub shift_rules: Vec<ShiftRule>,
}

/// Iterate macro steps from `f` until some iterate is a special case of `f`
/// (success), the machine halts, no rule applies, or the limit runs out.
pub fn reaches_special_case(
    table: &TransitionTable,
    f: &FormulaTape,
    macro_limit: u64,
    shift_rule_cap: u64,
) -> Option<SpecialCaseProof> {
    let mut current = f.clone();
    let mut shift_rules: Vec<ShiftRule> = Vec::new();
    for step in 1..=macro_limit {
        match macro_step(table, &current, shift_rule_cap) {
            FormulaStep::Stepped(next, kind) => {
                if let StepKind::Shift { rule, .. } = kind {
                    if !shift_rules.contains(&rule) {
                        shift_rules.push(rule);
                    }
                }
                if is_special_case(&next, f) {
                    return Some(SpecialCaseProof { macro_steps: step, shift_rules });
                }
                current = next;
            }
            FormulaStep::Halt | FormulaStep::NoRule => return None,
        }
    }
    None
}
