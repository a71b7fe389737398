//! Greedy formula-tape fitting from three tapes with 0, 1 and 2 repetitions
//! of every repeater, and the word-root helper used in its theory.

use crate::bouncers::formula::{normalize, Segment};

/// Fit a headless formula tape to `(t0, t1, t2)`: extend the current wall
/// while all three words agree on their first symbol, otherwise fit the
/// longest repeater `r` such that `t1` continues with one copy and `t2` with
/// two. Guaranteed to reconstruct right-aligned formulas with nonempty
/// intermediary walls from their 0/1/2-fold expansions.
pub fn fit_formula_tape(t0: &[u8], t1: &[u8], t2: &[u8]) -> Option<Vec<Segment>> {
    let mut segments = Vec::new();
    let (mut t0, mut t1, mut t2) = (t0, t1, t2);
    loop {
        if t0.is_empty() && t1.is_empty() && t2.is_empty() {
            normalize(&mut segments);
            return Some(segments);
        }
        if !t0.is_empty() && !t1.is_empty() && !t2.is_empty() && t0[0] == t1[0] && t1[0] == t2[0] {
            match segments.last_mut() {
                Some(Segment::Wall(w)) => w.push(t0[0]),
                _ => segments.push(Segment::Wall(vec![t0[0]])),
            }
            t0 = &t0[1..];
            t1 = &t1[1..];
            t2 = &t2[1..];
            continue;
        }
        let longest = common_prefix_len(t1, t2);
        let mut fitted = false;
        for l in (1..=longest).rev() {
            if 2 * l <= t2.len() && t2[..l] == t2[l..2 * l] {
                segments.push(Segment::Repeater(t2[..l].to_vec()));
                t1 = &t1[l..];
                t2 = &t2[2 * l..];
                fitted = true;
                break;
            }
        }
        if !fitted {
            return None;
        }
    }
}

fn common_prefix_len(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Greatest-common-divisor word root: if `a` and `b` are powers of a common
/// word, return the primitive `gcd(|a|, |b|)`-length root.
pub fn word_power_root<T: Eq + Clone>(a: &[T], b: &[T]) -> Option<Vec<T>> {
    if a.is_empty() || b.is_empty() {
        return None;
    }
    let lcm = a.len() / gcd(a.len(), b.len()) * b.len();
    for i in 0..lcm {
        if a[i % a.len()] != b[i % b.len()] {
            return None;
        }
    }
    Some(a[..gcd(a.len(), b.len())].to_vec())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
