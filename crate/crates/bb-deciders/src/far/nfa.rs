//! Boolean-matrix NFAs and the verification conditions that make one a
//! non-halting proof for a Turing machine.
//!
//! An NFA is a tuple `(q0, {T_sym}, a)`: a word `u` is accepted iff
//! `q0 T_u a^T = 1` with `T_u` the product of the per-symbol matrices.

use std::collections::HashSet;

use thiserror::Error;

use crate::far::matrix::{BoolMat, BoolVec};
use crate::machine::{state_letter, Dir, TransitionTable};

/// NFA over an indexed alphabet. For Turing machine configuration words the
/// convention is symbol 0 = bit 0, symbol 1 = bit 1, symbol 2 + s = the
/// letter of machine state s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanNfa {
    pub q0: BoolVec,
    pub transitions: Vec<BoolMat>,
    pub accept: BoolVec,
}

impl BooleanNfa {
    pub fn states(&self) -> usize {
        self.q0.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.transitions.len()
    }

    /// `q0 T_u a^T`, evaluated left to right on the state row vector.
    pub fn accepts(&self, word: &[usize]) -> Result<bool, UnknownSymbol> {
        let mut v = self.q0.clone();
        for &sym in word {
            let t = self.transitions.get(sym).ok_or(UnknownSymbol(sym))?;
            v = v.mul_mat(t);
        }
        Ok(v.dot(&self.accept))
    }

    /// Accepts a configuration word like `"00A001100"`.
    pub fn accepts_config_word(&self, word: &str) -> Result<bool, ConfigWordError> {
        let symbols = config_word_symbols(word, self.alphabet_size().saturating_sub(2))?;
        self.accepts(&symbols).map_err(ConfigWordError::UnknownSymbol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("symbol index {0} is outside the NFA alphabet")]
pub struct UnknownSymbol(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigWordError {
    #[error("character {0:?} is not a bit or a state letter")]
    BadCharacter(char),
    #[error(transparent)]
    UnknownSymbol(UnknownSymbol),
}

/// Map a configuration word to alphabet indices: '0', '1', then state
/// letters 'A'.. for `states` states.
pub fn config_word_symbols(word: &str, states: usize) -> Result<Vec<usize>, ConfigWordError> {
    word.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            'A'..='Z' if ((c as u8 - b'A') as usize) < states => Ok(2 + (c as u8 - b'A') as usize),
            _ => Err(ConfigWordError::BadCharacter(c)),
        })
        .collect()
}

/// First verification condition violated by a candidate proof, if any.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FarViolation {
    #[error("NFA is malformed: {0}")]
    Malformed(String),
    #[error("leading zeros not ignored: q0 T_0 != q0")]
    LeadingZeros,
    #[error("trailing zeros not ignored: T_0 a^T != a^T")]
    TrailingZeros,
    #[error("steady state is not accepted: s a^T = 0")]
    SteadyNotAccepted,
    #[error("steady state not closed under reading bit {bit}")]
    SteadyNotSteady { bit: u8 },
    #[error("halt closure fails for transition {state}{read} at some reachable state-set")]
    HaltClosure { state: char, read: u8 },
    #[error("left rule {state}{read} violated for context bit {bit}")]
    LeftRule { state: char, read: u8, bit: u8 },
    #[error("right rule {state}{read} violated")]
    RightRule { state: char, read: u8 },
    #[error("the initial configuration is accepted: q0 T_A a^T = 1")]
    InitialAccepted,
}

/// Check all conditions making `(nfa, steady)` a non-halting proof for
/// `table`:
///
/// 1. `q0 T_0 = q0` and `T_0 a^T = a^T` (leading/trailing zeros ignored);
/// 2. `s a^T = 1` and `s T_b >= s` (accepted steady state);
/// 3. `q T_f T_r >= s` for every halting transition `(f, r)` and every
///    state-set `q` in the closure of `{q0}` under `T_0`, `T_1`;
/// 4. `T_b T_f T_r >= T_t T_b T_w` for left rules, both context bits `b`;
/// 5. `T_f T_r >= T_w T_t` for right rules;
/// 6. `q0 T_A a^T = 0` (the all-0 initial configuration is rejected).
pub fn check_far_conditions(
    table: &TransitionTable,
    nfa: &BooleanNfa,
    steady: &BoolVec,
) -> Result<(), FarViolation> {
    let n = nfa.states();
    if nfa.alphabet_size() < 2 + table.states() {
        return Err(FarViolation::Malformed(format!(
            "alphabet has {} symbols, need {}",
            nfa.alphabet_size(),
            2 + table.states()
        )));
    }
    for t in &nfa.transitions {
        if t.rows() != n || t.cols() != n {
            return Err(FarViolation::Malformed("transition matrix dimension mismatch".into()));
        }
    }
    if nfa.accept.len() != n || steady.len() != n {
        return Err(FarViolation::Malformed("vector dimension mismatch".into()));
    }

    let t0 = &nfa.transitions[0];
    let t1 = &nfa.transitions[1];
    let a = &nfa.accept;
    if nfa.q0.mul_mat(t0) != nfa.q0 {
        return Err(FarViolation::LeadingZeros);
    }
    if t0.mul_col(a) != *a {
        return Err(FarViolation::TrailingZeros);
    }
    if !steady.dot(a) {
        return Err(FarViolation::SteadyNotAccepted);
    }
    for bit in 0..2u8 {
        let t = &nfa.transitions[bit as usize];
        if !steady.mul_mat(t).ge(steady) {
            return Err(FarViolation::SteadyNotSteady { bit });
        }
    }

    // Closure of {q0} under T_0 and T_1: the state-sets reachable while
    // scanning an arbitrary bit prefix.
    let halting = table.undefined_transitions();
    if !halting.is_empty() {
        let mut closure: HashSet<BoolVec> = HashSet::new();
        let mut frontier = vec![nfa.q0.clone()];
        closure.insert(nfa.q0.clone());
        while let Some(q) = frontier.pop() {
            for t in [t0, t1] {
                let next = q.mul_mat(t);
                if closure.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        for &(f, r) in &halting {
            let tf = &nfa.transitions[2 + f as usize];
            let tr = &nfa.transitions[r as usize];
            for q in &closure {
                if !q.mul_mat(tf).mul_mat(tr).ge(steady) {
                    return Err(FarViolation::HaltClosure { state: state_letter(f), read: r });
                }
            }
        }
    }

    for (f, r, tr) in table.defined_transitions() {
        let tf_mat = &nfa.transitions[2 + f as usize];
        let tr_mat = &nfa.transitions[r as usize];
        let tt = &nfa.transitions[2 + tr.next as usize];
        let tw = &nfa.transitions[tr.write as usize];
        match tr.dir {
            Dir::L => {
                for bit in 0..2usize {
                    let tb = &nfa.transitions[bit];
                    let lhs = tb.mul(tf_mat).mul(tr_mat);
                    let rhs = tt.mul(tb).mul(tw);
                    if !lhs.ge(&rhs) {
                        return Err(FarViolation::LeftRule {
                            state: state_letter(f),
                            read: r,
                            bit: bit as u8,
                        });
                    }
                }
            }
            Dir::R => {
                let lhs = tf_mat.mul(tr_mat);
                let rhs = tw.mul(tt);
                if !lhs.ge(&rhs) {
                    return Err(FarViolation::RightRule { state: state_letter(f), read: r });
                }
            }
        }
    }

    let ta = &nfa.transitions[2];
    if nfa.q0.mul_mat(ta).dot(&nfa.accept) {
        return Err(FarViolation::InitialAccepted);
    }
    Ok(())
}

/// True iff `(nfa, steady)` proves `table` non-halting from the all-0 tape.
pub fn verify_far_certificate(table: &TransitionTable, nfa: &BooleanNfa, steady: &BoolVec) -> bool {
    check_far_conditions(table, nfa, steady).is_ok()
}
