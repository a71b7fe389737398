//! Formula tapes: alternating walls and parenthesized repeaters around a
//! directed head, e.g. `0^inf (111) 1110 (11) 00 D> 0^inf`. A repeater `(r)`
//! matches any number of copies of `r`; walls match literally.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::directional::{parse_head_token, DirectionalTape, Head};

pub type Word = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    Wall(Word),
    Repeater(Word),
}

impl Segment {
    pub fn word(&self) -> &Word {
        match self {
            Segment::Wall(w) | Segment::Repeater(w) => w,
        }
    }

    pub fn is_repeater(&self) -> bool {
        matches!(self, Segment::Repeater(_))
    }
}

/// A wall-repeater formula tape. Stored in canonical form: walls are
/// nonempty and never adjacent (empty walls between repeaters are implicit);
/// repeaters are always nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaTape {
    pub left_infinite: bool,
    pub left: Vec<Segment>,
    pub head: Head,
    pub right: Vec<Segment>,
    pub right_infinite: bool,
}

/// Merge adjacent walls and drop empty ones.
pub(crate) fn normalize(segs: &mut Vec<Segment>) {
    let mut out: Vec<Segment> = Vec::with_capacity(segs.len());
    for seg in segs.drain(..) {
        match seg {
            Segment::Wall(w) if w.is_empty() => {}
            Segment::Wall(w) => {
                if let Some(Segment::Wall(prev)) = out.last_mut() {
                    prev.extend(w);
                } else {
                    out.push(Segment::Wall(w));
                }
            }
            Segment::Repeater(r) => {
                assert!(!r.is_empty(), "repeaters must be nonempty");
                out.push(Segment::Repeater(r));
            }
        }
    }
    *segs = out;
}

/// Longest prefix of `wall` matching the infinite repetition of `rep`.
fn cyclic_prefix_match(wall: &[u8], rep: &[u8]) -> usize {
    wall.iter().enumerate().take_while(|&(j, &c)| c == rep[j % rep.len()]).count()
}

/// Longest suffix of `wall` matching the infinite repetition of `rep`
/// extended leftward.
fn cyclic_suffix_match(wall: &[u8], rep: &[u8]) -> usize {
    let (n, m) = (wall.len(), rep.len());
    (0..n).take_while(|&j| wall[n - 1 - j] == rep[m - 1 - j % m]).count()
}

fn rotate_left(rep: &[u8], m: usize) -> Word {
    let m = m % rep.len();
    let mut out = rep[m..].to_vec();
    out.extend(&rep[..m]);
    out
}

fn rotate_right(rep: &[u8], m: usize) -> Word {
    rotate_left(rep, rep.len() - m % rep.len())
}

/// Move every repeater as far right as possible: `(r) v -> v (r')` whenever
/// `r v = v r'` for a nonempty wall prefix `v`.
pub(crate) fn bubble_right(segs: &mut Vec<Segment>) {
    normalize(segs);
    loop {
        let mut moved = false;
        for i in 0..segs.len().saturating_sub(1) {
            let (Segment::Repeater(r), Segment::Wall(w)) = (&segs[i], &segs[i + 1]) else {
                continue;
            };
            let m = cyclic_prefix_match(w, r);
            if m == 0 {
                continue;
            }
            let absorbed = Segment::Wall(w[..m].to_vec());
            let rotated = Segment::Repeater(rotate_left(r, m));
            let rest = Segment::Wall(w[m..].to_vec());
            segs.splice(i..=i + 1, [absorbed, rotated, rest]);
            normalize(segs);
            moved = true;
            break;
        }
        if !moved {
            return;
        }
    }
}

/// Move every repeater as far left as possible: `v (r) -> (r') v` whenever
/// `v r = r' v` for a nonempty wall suffix `v`.
pub(crate) fn bubble_left(segs: &mut Vec<Segment>) {
    normalize(segs);
    loop {
        let mut moved = false;
        for i in 0..segs.len().saturating_sub(1) {
            let (Segment::Wall(w), Segment::Repeater(r)) = (&segs[i], &segs[i + 1]) else {
                continue;
            };
            let m = cyclic_suffix_match(w, r);
            if m == 0 {
                continue;
            }
            let kept = Segment::Wall(w[..w.len() - m].to_vec());
            let absorbed = Segment::Wall(w[w.len() - m..].to_vec());
            let rotated = Segment::Repeater(rotate_right(r, m));
            segs.splice(i..=i + 1, [kept, rotated, absorbed]);
            normalize(segs);
            moved = true;
            break;
        }
        if !moved {
            return;
        }
    }
}

impl FormulaTape {
    pub fn new(
        left_infinite: bool,
        mut left: Vec<Segment>,
        head: Head,
        mut right: Vec<Segment>,
        right_infinite: bool,
    ) -> FormulaTape {
        normalize(&mut left);
        normalize(&mut right);
        FormulaTape { left_infinite, left, head, right, right_infinite }
    }

    /// A plain tape as a formula tape (no repeaters).
    pub fn from_tape(tape: &DirectionalTape) -> FormulaTape {
        FormulaTape::new(
            tape.left_infinite,
            vec![Segment::Wall(tape.left.clone())],
            tape.head,
            vec![Segment::Wall(tape.right.clone())],
            tape.right_infinite,
        )
    }

    /// The alignment operator: repeaters move away from the head on both
    /// sides. Idempotent, and preserves the matched tape language.
    pub fn aligned(&self) -> FormulaTape {
        let mut f = self.clone();
        bubble_left(&mut f.left);
        bubble_right(&mut f.right);
        f
    }

    /// Right alignment: bubble repeaters of both sides to the right.
    pub fn aligned_right(&self) -> FormulaTape {
        let mut f = self.clone();
        bubble_right(&mut f.left);
        bubble_right(&mut f.right);
        f
    }

    pub fn repeater_count(&self) -> usize {
        self.left.iter().chain(&self.right).filter(|s| s.is_repeater()).count()
    }

    /// Total number of wall and repeater symbols.
    pub fn symbol_count(&self) -> usize {
        self.left.iter().chain(&self.right).map(|s| s.word().len()).sum()
    }

    /// Instantiate with `counts[i]` copies of the i-th repeater (left side
    /// first, left to right, then right side).
    pub fn instantiate(&self, counts: &[usize]) -> DirectionalTape {
        let mut counts = counts.iter().copied();
        let mut expand = |segs: &[Segment]| {
            let mut out = Word::new();
            for seg in segs {
                match seg {
                    Segment::Wall(w) => out.extend(w),
                    Segment::Repeater(r) => {
                        let k = counts.next().unwrap_or(0);
                        for _ in 0..k {
                            out.extend(r);
                        }
                    }
                }
            }
            out
        };
        let left = expand(&self.left);
        let right = expand(&self.right);
        DirectionalTape {
            left,
            head: self.head,
            right,
            left_infinite: self.left_infinite,
            right_infinite: self.right_infinite,
            boundary: 0,
        }
    }

    /// Instantiate every repeater `k` times.
    pub fn instantiate_uniform(&self, k: usize) -> DirectionalTape {
        self.instantiate(&vec![k; self.repeater_count()])
    }

    /// Exact membership test: does the formula match this tape? Marker ends
    /// absorb any number of zeros, so comparison happens on trimmed words
    /// with bounded zero re-padding.
    pub fn contains_tape(&self, tape: &DirectionalTape) -> bool {
        if tape.head != self.head
            || tape.left_infinite != self.left_infinite
            || tape.right_infinite != self.right_infinite
        {
            return false;
        }
        let mut tape = tape.clone();
        tape.trim();
        let budget = self.symbol_count();
        let left_ok = if self.left_infinite {
            (0..=budget).any(|k| {
                let mut padded = vec![0u8; k];
                padded.extend(&tape.left);
                side_matches(&padded, &self.left)
            })
        } else {
            side_matches(&tape.left, &self.left)
        };
        if !left_ok {
            return false;
        }
        if self.right_infinite {
            (0..=budget).any(|k| {
                let mut padded = tape.right.clone();
                padded.extend(vec![0u8; k]);
                side_matches(&padded, &self.right)
            })
        } else {
            side_matches(&tape.right, &self.right)
        }
    }

    /// Alternating view of one side: q+1 walls (possibly empty) interleaved
    /// with q repeaters.
    pub(crate) fn alternating(segs: &[Segment]) -> (Vec<Word>, Vec<Word>) {
        let mut walls = Vec::new();
        let mut repeaters = Vec::new();
        let mut current = Word::new();
        for seg in segs {
            match seg {
                Segment::Wall(w) => current.extend(w),
                Segment::Repeater(r) => {
                    walls.push(std::mem::take(&mut current));
                    repeaters.push(r.clone());
                }
            }
        }
        walls.push(current);
        (walls, repeaters)
    }
}

/// Position-set matching of a word against one side's segments, anchored at
/// both ends.
#[allow(clippy::needless_range_loop)]
fn side_matches(word: &[u8], segs: &[Segment]) -> bool {
    let n = word.len();
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for seg in segs {
        let mut next = vec![false; n + 1];
        match seg {
            Segment::Wall(w) => {
                for p in 0..=n {
                    if reach[p] && word[p..].starts_with(w) {
                        next[p + w.len()] = true;
                    }
                }
            }
            Segment::Repeater(r) => {
                for p in 0..=n {
                    if !reach[p] {
                        continue;
                    }
                    let mut q = p;
                    loop {
                        next[q] = true;
                        if word[q..].starts_with(r) {
                            q += r.len();
                        } else {
                            break;
                        }
                    }
                }
            }
        }
        reach = next;
    }
    reach[n]
}

fn push_word(out: &mut String, word: &[u8]) {
    for &b in word {
        out.push(char::from(b'0' + b));
    }
}

impl fmt::Display for FormulaTape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tokens: Vec<String> = Vec::new();
        if self.left_infinite {
            tokens.push("0^inf".into());
        }
        let push_segment = |seg: &Segment, tokens: &mut Vec<String>| {
            let mut s = String::new();
            match seg {
                Segment::Wall(w) => push_word(&mut s, w),
                Segment::Repeater(r) => {
                    s.push('(');
                    push_word(&mut s, r);
                    s.push(')');
                }
            }
            tokens.push(s);
        };
        for seg in &self.left {
            push_segment(seg, &mut tokens);
        }
        tokens.push(self.head.to_string());
        for seg in &self.right {
            push_segment(seg, &mut tokens);
        }
        if self.right_infinite {
            tokens.push("0^inf".into());
        }
        write!(f, "{}", tokens.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseFormulaError {
    #[error("invalid token {0:?}")]
    BadToken(String),
    #[error("0^inf allowed only at the ends")]
    MisplacedInfinity,
    #[error("expected exactly one head token")]
    HeadCount,
    #[error("repeaters must be nonempty")]
    EmptyRepeater,
}

impl FromStr for FormulaTape {
    type Err = ParseFormulaError;

    /// Parses the space-separated syntax: optional `0^inf`, bit-words and
    /// `(bitword)` repeaters, a head token `<S` or `S>`, optional trailing
    /// `0^inf`. Example: `0^inf (111) 1110 (11) 00 D> 0^inf`.
    fn from_str(text: &str) -> Result<FormulaTape, ParseFormulaError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let mut left_infinite = false;
        let mut right_infinite = false;
        let mut segs: Vec<Segment> = Vec::new();
        let mut head: Option<(usize, Head)> = None;

        let parse_bits = |s: &str| -> Option<Word> {
            if s.is_empty() || !s.bytes().all(|b| b == b'0' || b == b'1') {
                return None;
            }
            Some(s.bytes().map(|b| b - b'0').collect())
        };

        for (i, tok) in tokens.iter().enumerate() {
            if *tok == "0^inf" {
                if i == 0 {
                    left_infinite = true;
                } else if i == tokens.len() - 1 {
                    right_infinite = true;
                } else {
                    return Err(ParseFormulaError::MisplacedInfinity);
                }
                continue;
            }
            if let Some(h) = parse_head_token(tok) {
                if head.is_some() {
                    return Err(ParseFormulaError::HeadCount);
                }
                head = Some((segs.len(), h));
                continue;
            }
            if let Some(inner) = tok.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
                if inner.is_empty() {
                    return Err(ParseFormulaError::EmptyRepeater);
                }
                let bits = parse_bits(inner).ok_or_else(|| ParseFormulaError::BadToken(tok.to_string()))?;
                segs.push(Segment::Repeater(bits));
                continue;
            }
            let bits = parse_bits(tok).ok_or_else(|| ParseFormulaError::BadToken(tok.to_string()))?;
            segs.push(Segment::Wall(bits));
        }
        let (split, head) = head.ok_or(ParseFormulaError::HeadCount)?;
        let right = segs.split_off(split);
        Ok(FormulaTape::new(left_infinite, segs, head, right, right_infinite))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::directional::Orientation;
    use proptest::prelude::*;

    fn formula(text: &str) -> FormulaTape {
        text.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in [
            "0^inf (111) 1110 (11) 00 D> 0^inf",
            "0^inf A> 0^inf",
            "0^inf 101 (11) 0 D> 10 (100) 11 0^inf",
            "(11) <A 0101011 0^inf",
            "0 D> (01)",
        ] {
            assert_eq!(formula(text).to_string(), text);
        }
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!("0^inf D>".parse::<FormulaTape>().is_ok());
        assert_eq!("() D>".parse::<FormulaTape>(), Err(ParseFormulaError::EmptyRepeater));
        assert_eq!("D> E>".parse::<FormulaTape>(), Err(ParseFormulaError::HeadCount));
        assert_eq!("12 D>".parse::<FormulaTape>(), Err(ParseFormulaError::BadToken("12".into())));
        assert_eq!("1 0^inf D>".parse::<FormulaTape>(), Err(ParseFormulaError::MisplacedInfinity));
        assert_eq!("11 01".parse::<FormulaTape>(), Err(ParseFormulaError::HeadCount));
    }

    #[test]
    fn alignment_moves_repeaters_away_from_the_head() {
        // 0^inf 101 (11) 0 D> 10 (100) 11 0^inf
        //   -> 0^inf 10 (11) 10 D> 101 (001) 1 0^inf
        let f = formula("0^inf 101 (11) 0 D> 10 (100) 11 0^inf");
        assert_eq!(f.aligned(), formula("0^inf 10 (11) 10 D> 101 (001) 1 0^inf"));
    }

    #[test]
    fn alignment_shifts_right_side_repeater_through_its_wall() {
        let f = formula("0^inf (111) 1111 B> (01) 0101011 0^inf");
        assert_eq!(f.aligned(), formula("0^inf (111) 1111 B> 010101 (01) 1 0^inf"));
    }

    #[test]
    fn tape_without_repeaters_is_aligned() {
        let f = formula("0^inf 1101 A> 0 0^inf");
        assert_eq!(f.aligned(), f);
        assert_eq!(f.aligned_right(), f);
    }

    #[test]
    fn right_alignment_only_bubbles_right() {
        // (100) followed by 01: no rotation of 100 starts with 0, unchanged.
        let f = formula("(100) 01 D> 0^inf");
        assert_eq!(f.aligned_right(), f);
        // (100) followed by 10 rotates through the matching prefix.
        let g = formula("(100) 10 D> 0^inf");
        assert_eq!(g.aligned_right(), formula("10 (010) D> 0^inf"));
        // (11) 1 left of the head still bubbles right under right-alignment.
        let h = formula("0^inf (11) 1 D> 0^inf");
        assert_eq!(h.aligned_right(), formula("0^inf 1 (11) D> 0^inf"));
        // Plain alignment would move it left instead.
        assert_eq!(h.aligned(), h);
    }

    #[test]
    fn instantiation_expands_repeaters() {
        let f = formula("0^inf (111) 1110 (11) 00 D> 0^inf");
        let t = f.instantiate(&[1, 1]);
        assert_eq!(t.left, vec![1, 1, 1, 1, 1, 1, 0, 1, 1, 0, 0]);
        assert!(t.right.is_empty());
        assert_eq!(f.instantiate_uniform(0).left, vec![1, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn membership_accepts_the_reached_tape() {
        let f = formula("0^inf (111) 1110 (11) 00 D> 0^inf");
        let t: DirectionalTape = "0^inf 11111101100 D> 0^inf".parse().unwrap();
        assert!(f.contains_tape(&t));
        let early: DirectionalTape = "0^inf 1111110110 D> 0^inf".parse().unwrap();
        assert!(!f.contains_tape(&early));
    }

    #[test]
    fn membership_handles_marker_adjacent_zeros() {
        // A leading zero next to 0^inf is the same configuration.
        let f = formula("0^inf 01 (1) A> 0^inf");
        let t: DirectionalTape = "0^inf 111 A> 0^inf".parse().unwrap();
        assert!(f.contains_tape(&t));
        // A leading zero produced by a repeater copy also matches.
        let g = formula("0^inf (01) 1 A> 0^inf");
        let u: DirectionalTape = "0^inf 1011 A> 0^inf".parse().unwrap();
        assert!(g.contains_tape(&u));
    }

    #[test]
    fn membership_requires_matching_head_and_markers() {
        let f = formula("0^inf (1) A> 0^inf");
        let wrong_state: DirectionalTape = "0^inf 1 B> 0^inf".parse().unwrap();
        assert!(!f.contains_tape(&wrong_state));
        let mut finite: DirectionalTape = "0^inf 1 A> 0^inf".parse().unwrap();
        finite.right_infinite = false;
        assert!(!f.contains_tape(&finite));
    }

    fn arb_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0u8..=1, 1..=max)
    }

    prop_compose! {
        fn arb_formula()(
            left_walls in prop::collection::vec(prop::collection::vec(0u8..=1, 0..=4), 1..=3),
            left_reps in prop::collection::vec(arb_word(4), 0..=2),
            right_walls in prop::collection::vec(prop::collection::vec(0u8..=1, 0..=4), 1..=3),
            right_reps in prop::collection::vec(arb_word(4), 0..=2),
            state in 0u8..=4,
            pointing_right in prop::bool::ANY,
        ) -> FormulaTape {
            let build = |walls: &[Word], reps: &[Word]| {
                let mut segs = Vec::new();
                for (i, w) in walls.iter().enumerate() {
                    segs.push(Segment::Wall(w.clone()));
                    if i < reps.len() {
                        segs.push(Segment::Repeater(reps[i].clone()));
                    }
                }
                segs
            };
            let orientation = if pointing_right { Orientation::Right } else { Orientation::Left };
            FormulaTape::new(
                true,
                build(&left_walls, &left_reps),
                Head { state, orientation },
                build(&right_walls, &right_reps),
                true,
            )
        }
    }

    proptest! {
        /// Alignment is idempotent, for both operators.
        #[test]
        fn alignment_is_idempotent(f in arb_formula()) {
            let a = f.aligned();
            prop_assert_eq!(a.aligned(), a.clone());
            let r = f.aligned_right();
            prop_assert_eq!(r.aligned_right(), r);
        }

        /// Alignment preserves every instantiation exactly: expanding the
        /// same repetition vector before and after alignment gives the same
        /// tape.
        #[test]
        fn alignment_preserves_instantiations(
            f in arb_formula(),
            counts in prop::collection::vec(0usize..=4, 8),
        ) {
            let a = f.aligned();
            prop_assert_eq!(a.repeater_count(), f.repeater_count());
            let counts = &counts[..f.repeater_count()];
            prop_assert_eq!(f.instantiate(counts), a.instantiate(counts));
            let r = f.aligned_right();
            prop_assert_eq!(f.instantiate(counts), r.instantiate(counts));
        }

        /// Every instantiation is a member of the formula's language.
        #[test]
        fn instantiations_are_members(
            f in arb_formula(),
            counts in prop::collection::vec(0usize..=3, 8),
        ) {
            let counts = &counts[..f.repeater_count()];
            prop_assert!(f.contains_tape(&f.instantiate(counts)));
        }
    }
}
