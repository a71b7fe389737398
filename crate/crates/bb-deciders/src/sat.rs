//! Minimal deterministic CNF satisfiability solver: CDCL with two watched
//! literals, first-UIP clause learning and activity-driven branching with an
//! index tie-break. Backs the meet-in-the-middle DFA search.

use std::fmt::Write as _;

use thiserror::Error;

/// A literal: variable index shifted left once, low bit = negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Lit(u32);

impl Lit {
    fn new(var: usize, positive: bool) -> Lit {
        Lit(((var as u32) << 1) | u32::from(!positive))
    }
    fn from_dimacs(x: i32) -> Lit {
        Lit::new(x.unsigned_abs() as usize - 1, x > 0)
    }
    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }
    fn positive(self) -> bool {
        self.0 & 1 == 0
    }
    fn negated(self) -> Lit {
        Lit(self.0 ^ 1)
    }
    fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Value {
    Unassigned,
    True,
    False,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("literal {0} is zero or out of range for {1} variables")]
    BadLiteral(i32, usize),
    #[error("invalid DIMACS input: {0}")]
    BadDimacs(String),
}

/// CNF formula: N variables (1-based in the clause literals, DIMACS style)
/// and a list of clauses of nonzero signed indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn new(num_vars: usize) -> Cnf {
        Cnf { num_vars, clauses: Vec::new() }
    }

    pub fn add_clause(&mut self, lits: &[i32]) {
        self.clauses.push(lits.to_vec());
    }

    pub fn validate(&self) -> Result<(), CnfError> {
        for clause in &self.clauses {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > self.num_vars {
                    return Err(CnfError::BadLiteral(lit, self.num_vars));
                }
            }
        }
        Ok(())
    }

    /// Evaluate under a full assignment (index 0 = variable 1).
    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = assignment[lit.unsigned_abs() as usize - 1];
                if lit > 0 {
                    value
                } else {
                    !value
                }
            })
        })
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for &lit in clause {
                let _ = write!(out, "{lit} ");
            }
            let _ = writeln!(out, "0");
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<Cnf, CnfError> {
        let mut num_vars = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("p cnf") {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(CnfError::BadDimacs(line.to_string()));
                }
                num_vars = Some(
                    parts[0].parse::<usize>().map_err(|_| CnfError::BadDimacs(line.to_string()))?,
                );
                continue;
            }
            for tok in line.split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| CnfError::BadDimacs(tok.to_string()))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    current.push(lit);
                }
            }
        }
        let cnf = Cnf {
            num_vars: num_vars.ok_or_else(|| CnfError::BadDimacs("missing p cnf header".into()))?,
            clauses,
        };
        cnf.validate()?;
        Ok(cnf)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    Sat(Vec<bool>),
    Unsat,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }
}

const NO_REASON: u32 = u32::MAX;

struct Solver {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<u32>>, // indexed by literal; clauses watching that literal
    values: Vec<Value>,
    levels: Vec<u32>,
    reasons: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    prop_head: usize,
    activity: Vec<f64>,
    activity_inc: f64,
    seen: Vec<bool>,
}

impl Solver {
    fn new(num_vars: usize) -> Solver {
        Solver {
            num_vars,
            clauses: Vec::new(),
            watches: vec![Vec::new(); num_vars * 2],
            values: vec![Value::Unassigned; num_vars],
            levels: vec![0; num_vars],
            reasons: vec![NO_REASON; num_vars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            prop_head: 0,
            activity: vec![0.0; num_vars],
            activity_inc: 1.0,
            seen: vec![false; num_vars],
        }
    }

    fn value(&self, lit: Lit) -> Value {
        match self.values[lit.var()] {
            Value::Unassigned => Value::Unassigned,
            Value::True => {
                if lit.positive() {
                    Value::True
                } else {
                    Value::False
                }
            }
            Value::False => {
                if lit.positive() {
                    Value::False
                } else {
                    Value::True
                }
            }
        }
    }

    fn level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn assign(&mut self, lit: Lit, reason: u32) {
        self.values[lit.var()] = if lit.positive() { Value::True } else { Value::False };
        self.levels[lit.var()] = self.level();
        self.reasons[lit.var()] = reason;
        self.trail.push(lit);
    }

    /// Watched-literal unit propagation; returns a conflicting clause index.
    fn propagate(&mut self) -> Option<u32> {
        while self.prop_head < self.trail.len() {
            let lit = self.trail[self.prop_head];
            self.prop_head += 1;
            let falsified = lit.negated();
            let mut watchers = std::mem::take(&mut self.watches[falsified.index()]);
            let mut kept = 0;
            let mut conflict = None;
            let mut i = 0;
            while i < watchers.len() {
                let ci = watchers[i];
                let cu = ci as usize;
                i += 1;
                // Keep the falsified literal in slot 1.
                if self.clauses[cu][0] == falsified {
                    self.clauses[cu].swap(0, 1);
                }
                let first = self.clauses[cu][0];
                if self.value(first) == Value::True {
                    watchers[kept] = ci;
                    kept += 1;
                    continue;
                }
                // Look for a new literal to watch.
                let mut moved = false;
                for k in 2..self.clauses[cu].len() {
                    let candidate = self.clauses[cu][k];
                    if self.value(candidate) != Value::False {
                        self.clauses[cu].swap(1, k);
                        self.watches[candidate.index()].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                // Unit or conflicting.
                watchers[kept] = ci;
                kept += 1;
                if self.value(first) == Value::False {
                    while i < watchers.len() {
                        watchers[kept] = watchers[i];
                        kept += 1;
                        i += 1;
                    }
                    conflict = Some(ci);
                } else {
                    self.assign(first, ci);
                }
            }
            watchers.truncate(kept);
            self.watches[falsified.index()] = watchers;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn bump(&mut self, var: usize) {
        self.activity[var] += self.activity_inc;
        if self.activity[var] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.activity_inc *= 1e-100;
        }
    }

    /// First-UIP conflict analysis. Returns the learnt clause (asserting
    /// literal first) and the backjump level.
    fn analyze(&mut self, conflict: u32) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![Lit(0)]; // slot for the asserting literal
        let mut counter = 0usize;
        let mut lit: Option<Lit> = None;
        let mut index = self.trail.len();
        let mut clause_idx = conflict;
        loop {
            let mut k = usize::from(lit.is_some());
            while k < self.clauses[clause_idx as usize].len() {
                let q = self.clauses[clause_idx as usize][k];
                k += 1;
                let v = q.var();
                if !self.seen[v] && self.levels[v] > 0 {
                    self.seen[v] = true;
                    self.bump(v);
                    if self.levels[v] == self.level() {
                        counter += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            // Pick the next trail literal seen in the conflict.
            loop {
                index -= 1;
                if self.seen[self.trail[index].var()] {
                    break;
                }
            }
            let p = self.trail[index];
            self.seen[p.var()] = false;
            counter -= 1;
            if counter == 0 {
                learnt[0] = p.negated();
                break;
            }
            lit = Some(p);
            clause_idx = self.reasons[p.var()];
        }
        for l in learnt.iter().skip(1) {
            self.seen[l.var()] = false;
        }
        let backjump = learnt.iter().skip(1).map(|l| self.levels[l.var()]).max().unwrap_or(0);
        // Move a literal of the backjump level into slot 1 for watching.
        if learnt.len() > 1 {
            let pos = 1 + learnt[1..]
                .iter()
                .position(|l| self.levels[l.var()] == backjump)
                .expect("backjump literal present");
            learnt.swap(1, pos);
        }
        (learnt, backjump)
    }

    fn backtrack(&mut self, level: u32) {
        while self.level() > level {
            let lim = self.trail_lim.pop().unwrap();
            for lit in self.trail.drain(lim..) {
                self.values[lit.var()] = Value::Unassigned;
                self.reasons[lit.var()] = NO_REASON;
            }
        }
        self.prop_head = self.trail.len();
    }

    fn add_learnt(&mut self, learnt: Vec<Lit>) {
        let ci = self.clauses.len() as u32;
        if learnt.len() == 1 {
            self.assign(learnt[0], NO_REASON);
            self.clauses.push(learnt);
            return;
        }
        self.watches[learnt[0].index()].push(ci);
        self.watches[learnt[1].index()].push(ci);
        let asserting = learnt[0];
        self.clauses.push(learnt);
        self.assign(asserting, ci);
    }

    fn decide(&mut self) -> bool {
        let mut best: Option<usize> = None;
        for v in 0..self.num_vars {
            if self.values[v] == Value::Unassigned {
                match best {
                    Some(b) if self.activity[v] <= self.activity[b] => {}
                    _ => best = Some(v),
                }
            }
        }
        match best {
            None => false,
            Some(v) => {
                self.trail_lim.push(self.trail.len());
                self.assign(Lit::new(v, false), NO_REASON);
                true
            }
        }
    }

    fn solve(&mut self) -> SatResult {
        if self.propagate().is_some() {
            return SatResult::Unsat;
        }
        loop {
            if let Some(conflict) = self.propagate() {
                if self.level() == 0 {
                    return SatResult::Unsat;
                }
                let (learnt, backjump) = self.analyze(conflict);
                self.backtrack(backjump);
                self.add_learnt(learnt);
                self.activity_inc /= 0.95;
            } else if !self.decide() {
                let assignment = self.values.iter().map(|&v| v == Value::True).collect();
                return SatResult::Sat(assignment);
            }
        }
    }
}

/// Solve a CNF. The returned assignment is re-checked against every clause
/// before being handed back.
pub fn solve_cnf(cnf: &Cnf) -> SatResult {
    cnf.validate().expect("well-formed CNF");
    let mut solver = Solver::new(cnf.num_vars);
    for clause in &cnf.clauses {
        // Normalize: drop duplicate literals, skip tautologies.
        let mut lits: Vec<Lit> = clause.iter().map(|&l| Lit::from_dimacs(l)).collect();
        lits.sort_by_key(|l| l.0);
        lits.dedup();
        if lits.windows(2).any(|w| w[0].var() == w[1].var()) {
            continue;
        }
        match lits.len() {
            0 => return SatResult::Unsat,
            1 => {
                match solver.value(lits[0]) {
                    Value::False => return SatResult::Unsat,
                    Value::True => {}
                    Value::Unassigned => solver.assign(lits[0], NO_REASON),
                }
                solver.clauses.push(lits);
            }
            _ => {
                let ci = solver.clauses.len() as u32;
                solver.watches[lits[0].index()].push(ci);
                solver.watches[lits[1].index()].push(ci);
                solver.clauses.push(lits);
            }
        }
    }
    let result = solver.solve();
    if let SatResult::Sat(assignment) = &result {
        assert!(cnf.eval(assignment), "solver returned a non-model");
    }
    result
}
