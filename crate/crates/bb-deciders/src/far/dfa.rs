//! Incremental enumeration of canonical, leading-zero-ignoring DFA
//! transition tables. A table `(t_0, ..., t_{2n-1})` with `t_{2i+b} =
//! delta(i, b)` is canonical iff the running maximum `m_k` climbs from 0 to
//! n-1 in steps of 0 or 1 with `m_{2q-1} >= q`; enumerating only these
//! prunes DFAs that relabel others or carry unreachable states.

/// Verdict of the per-prefix check driving the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckResult {
    /// Extend this prefix further.
    More,
    /// Prune: no extension of this prefix can work.
    Skip,
    /// This complete table is a solution; stop the search.
    Stop,
}

/// Depth-first search over canonical table prefixes. `check` is called on
/// each prefix and must not return `More` for complete (length 2n) tables.
/// Returns true iff some table reached `Stop`.
pub fn search_dfa(n: usize, mut check: impl FnMut(&[usize]) -> CheckResult) -> bool {
    assert!(n >= 1);
    let mut t = vec![0usize; 2 * n];
    let mut m = vec![0usize; 2 * n];
    let mut k = 1usize;
    loop {
        match check(&t[..k]) {
            CheckResult::More => {
                assert!(k < 2 * n, "check returned More on a complete table");
                // Lexicographically first extension: a fresh state is forced
                // exactly when postponing it would break canonical form.
                let q_new = m[k - 1] + 1;
                t[k] = if q_new < n && 2 * q_new - 1 == k { q_new } else { 0 };
            }
            CheckResult::Skip => {
                // Next prefix in lexicographic order, never re-entering the
                // skipped subtree.
                loop {
                    if k <= 1 {
                        return false;
                    }
                    k -= 1;
                    if t[k] <= m[k - 1] && t[k] < n - 1 {
                        break;
                    }
                }
                t[k] += 1;
            }
            CheckResult::Stop => return true,
        }
        m[k] = m[k - 1].max(t[k]);
        k += 1;
    }
}

/// Collect every complete canonical table, for tests and oracles.
pub fn enumerate_complete_tables(n: usize) -> Vec<Vec<usize>> {
    let mut tables = Vec::new();
    search_dfa(n, |prefix| {
        if prefix.len() == 2 * n {
            tables.push(prefix.to_vec());
            CheckResult::Skip
        } else {
            CheckResult::More
        }
    });
    tables
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_state_has_one_table() {
        assert_eq!(enumerate_complete_tables(1), vec![vec![0, 0]]);
    }

    #[test]
    fn skip_at_the_root_explores_only_first_slots() {
        let mut calls = 0;
        let found = search_dfa(3, |prefix| {
            calls += 1;
            assert_eq!(prefix.len(), 1);
            CheckResult::Skip
        });
        assert!(!found);
        assert_eq!(calls, 1);
    }

    #[test]
    fn stop_is_propagated() {
        let found = search_dfa(2, |prefix| {
            if prefix.len() == 4 {
                CheckResult::Stop
            } else {
                CheckResult::More
            }
        });
        assert!(found);
    }

    /// Canonical-form filter: each state 0..n-1 appears in the table, first
    /// appearances in order, and each 0 < q < n appears before position 2q.
    fn is_canonical(table: &[usize], n: usize) -> bool {
        if table.iter().any(|&v| v >= n) {
            return false;
        }
        let mut m = 0usize; // running max
        let mut seen_max = 0usize;
        for (k, &v) in table.iter().enumerate() {
            if v > m + 1 {
                return false;
            }
            if v == m + 1 {
                m = v;
                if 2 * v <= k {
                    // First appearance of v is at position k, too late.
                    return false;
                }
            }
            seen_max = seen_max.max(v);
        }
        // All states used.
        seen_max == n - 1 && {
            // First appearances in order is implied by the v <= m + 1 rule.
            let mut first = vec![usize::MAX; n];
            for (k, &v) in table.iter().enumerate() {
                if first[v] == usize::MAX {
                    first[v] = k;
                }
            }
            first.windows(2).all(|w| w[0] < w[1])
                && (1..n).all(|q| first[q] < 2 * q)
        }
    }

    /// The enumeration equals brute-force filtering of all n^(2n) tables.
    #[test]
    fn matches_brute_force_filter_for_small_n() {
        for n in 1..=3usize {
            let enumerated = enumerate_complete_tables(n);
            let mut brute = Vec::new();
            let slots = 2 * n;
            let total = n.pow(slots as u32);
            for code in 0..total {
                let mut table = Vec::with_capacity(slots);
                let mut c = code;
                for _ in 0..slots {
                    table.push(c % n);
                    c /= n;
                }
                table.reverse();
                if table[0] == 0 && is_canonical(&table, n) {
                    brute.push(table);
                }
            }
            let mut enumerated_sorted = enumerated.clone();
            enumerated_sorted.sort();
            brute.sort();
            assert_eq!(enumerated_sorted, brute, "n = {n}");
            // The search itself emits tables in lexicographic order.
            let mut lex = enumerated.clone();
            lex.sort();
            assert_eq!(enumerated, lex);
        }
    }
}
