//! Satisfiability, entailment and equivalence.
//!
//! Formulas are clausified with a polarity-aware definitional encoding over
//! their negation normal form; the clause set is decided by a DPLL solver with
//! two watched literals and chronological backtracking. Definition variables
//! never leave this module: witnesses are projected back onto the atoms of the
//! input.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{evaluate2, simplify_constants, to_nnf, Atom, Compiled, Formula};
use crate::kb::Signature;

/// Default cap on the signature size for [`enumerate_models`].
pub const DEFAULT_MODEL_CAP: usize = 16;

/// Total map from a stated signature to truth values.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Assignment(BTreeMap<Atom, bool>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn get(&self, atom: &Atom) -> Option<bool> {
        self.0.get(atom).copied()
    }

    pub fn insert(&mut self, atom: Atom, value: bool) {
        self.0.insert(atom, value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, bool)> + '_ {
        self.0.iter().map(|(a, v)| (a, *v))
    }

    pub fn domain(&self) -> Signature {
        self.0.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn satisfies(&self, f: &Formula) -> Result<bool> {
        evaluate2(self, f)
    }
}

impl FromIterator<(Atom, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Atom, bool)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}={}", if *v { 1 } else { 0 })?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Satisfiable(Assignment),
    Unsatisfiable,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Satisfiable(_))
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match self {
            SatResult::Satisfiable(w) => Some(w),
            SatResult::Unsatisfiable => None,
        }
    }
}

/// Resource caps for a single satisfiability call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SatLimits {
    pub max_decisions: u64,
    pub max_clauses: usize,
}

impl Default for SatLimits {
    fn default() -> Self {
        SatLimits {
            max_decisions: 5_000_000,
            max_clauses: 2_000_000,
        }
    }
}

// ---------------------------------------------------------------------------
// Clause-level solver

/// Literal: `var << 1 | negated`.
pub(crate) type Lit = u32;

pub(crate) fn lit(var: u32, positive: bool) -> Lit {
    var << 1 | u32::from(!positive)
}

fn var_of(l: Lit) -> usize {
    (l >> 1) as usize
}

const UNASSIGNED: u8 = 2;

struct Dpll {
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<usize>>,
    // 0 = false, 1 = true, 2 = unassigned
    values: Vec<u8>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    decisions: Vec<(Lit, bool)>,
    qhead: usize,
    order: Vec<u32>,
}

impl Dpll {
    fn value(&self, l: Lit) -> u8 {
        match self.values[var_of(l)] {
            UNASSIGNED => UNASSIGNED,
            v => v ^ (l & 1) as u8,
        }
    }

    fn enqueue(&mut self, l: Lit) {
        self.values[var_of(l)] = 1 ^ (l & 1) as u8;
        self.trail.push(l);
    }

    /// Returns false on conflict.
    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let false_lit = self.trail[self.qhead] ^ 1;
            self.qhead += 1;
            let mut watching = std::mem::take(&mut self.watches[false_lit as usize]);
            let mut i = 0;
            let mut conflict = false;
            while i < watching.len() {
                let ci = watching[i];
                let clause = &mut self.clauses[ci];
                if clause[0] == false_lit {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                let first_value = match self.values[var_of(first)] {
                    UNASSIGNED => UNASSIGNED,
                    v => v ^ (first & 1) as u8,
                };
                if first_value == 1 {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..clause.len() {
                    let l = clause[k];
                    let v = match self.values[var_of(l)] {
                        UNASSIGNED => UNASSIGNED,
                        v => v ^ (l & 1) as u8,
                    };
                    if v != 0 {
                        clause.swap(1, k);
                        self.watches[clause[1] as usize].push(ci);
                        watching.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                if first_value == 0 {
                    conflict = true;
                    break;
                }
                self.enqueue(first);
                i += 1;
            }
            self.watches[false_lit as usize] = watching;
            if conflict {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        for l in self.trail.drain(len..) {
            self.values[var_of(l)] = UNASSIGNED;
        }
        self.qhead = len;
    }
}

/// Decides a clause set over variables `0..num_vars`. Returns a total model
/// when satisfiable.
pub(crate) fn solve_clauses(
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    limits: &SatLimits,
) -> Result<Option<Vec<bool>>> {
    if clauses.len() > limits.max_clauses {
        return Err(Error::SolverBudget(format!(
            "{} clauses exceed the cap of {}",
            clauses.len(),
            limits.max_clauses
        )));
    }
    let mut solver = Dpll {
        clauses: Vec::with_capacity(clauses.len()),
        watches: vec![Vec::new(); 2 * num_vars],
        values: vec![UNASSIGNED; num_vars],
        trail: Vec::with_capacity(num_vars),
        trail_lim: Vec::new(),
        decisions: Vec::new(),
        qhead: 0,
        order: Vec::new(),
    };
    let mut occurrences = vec![0usize; num_vars];
    let mut units = Vec::new();
    for mut clause in clauses {
        clause.sort_unstable();
        clause.dedup();
        if clause.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            continue;
        }
        for &l in &clause {
            occurrences[var_of(l)] += 1;
        }
        match clause.len() {
            0 => return Ok(None),
            1 => units.push(clause[0]),
            _ => {
                let ci = solver.clauses.len();
                solver.watches[clause[0] as usize].push(ci);
                solver.watches[clause[1] as usize].push(ci);
                solver.clauses.push(clause);
            }
        }
    }
    for u in units {
        match solver.value(u) {
            0 => return Ok(None),
            1 => {}
            _ => solver.enqueue(u),
        }
    }
    let mut order: Vec<u32> = (0..num_vars as u32).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(occurrences[v as usize]));
    solver.order = order;

    let mut budget = limits.max_decisions;
    let mut cursor = 0;
    loop {
        if !solver.propagate() {
            // Chronological backtracking: flip the most recent unflipped decision.
            loop {
                let Some((decision, flipped)) = solver.decisions.pop() else {
                    return Ok(None);
                };
                let start = solver.trail_lim.pop().expect("one level per decision");
                solver.undo_to(start);
                if !flipped {
                    solver.trail_lim.push(solver.trail.len());
                    solver.decisions.push((decision ^ 1, true));
                    solver.enqueue(decision ^ 1);
                    break;
                }
            }
            cursor = 0;
            continue;
        }
        while cursor < solver.order.len()
            && solver.values[solver.order[cursor] as usize] != UNASSIGNED
        {
            cursor += 1;
        }
        if cursor == solver.order.len() {
            return Ok(Some(solver.values.iter().map(|&v| v == 1).collect()));
        }
        if budget == 0 {
            return Err(Error::SolverBudget(format!(
                "more than {} decisions",
                limits.max_decisions
            )));
        }
        budget -= 1;
        let decision = lit(solver.order[cursor], false);
        solver.trail_lim.push(solver.trail.len());
        solver.decisions.push((decision, false));
        solver.enqueue(decision);
    }
}

// ---------------------------------------------------------------------------
// Clausification

pub(crate) struct Encoder {
    atoms: BTreeMap<Atom, u32>,
    num_vars: u32,
    clauses: Vec<Vec<Lit>>,
}

impl Encoder {
    pub(crate) fn new() -> Encoder {
        Encoder {
            atoms: BTreeMap::new(),
            num_vars: 0,
            clauses: Vec::new(),
        }
    }

    fn fresh(&mut self) -> u32 {
        self.num_vars += 1;
        self.num_vars - 1
    }

    pub(crate) fn atom_var(&mut self, a: &Atom) -> u32 {
        if let Some(&v) = self.atoms.get(a) {
            return v;
        }
        let v = self.fresh();
        self.atoms.insert(a.clone(), v);
        v
    }

    pub(crate) fn add_formula(&mut self, f: &Formula) {
        f.for_each_atom(&mut |a| {
            self.atom_var(a);
        });
        let g = simplify_constants(&to_nnf(f));
        let mut conjuncts = Vec::new();
        collect_and(&g, &mut conjuncts);
        for c in conjuncts {
            match c {
                Formula::Top => {}
                Formula::Bottom => self.clauses.push(Vec::new()),
                _ => {
                    let mut lits = Vec::new();
                    if self.clause_literals(c, &mut lits) {
                        self.clauses.push(lits);
                    } else {
                        let l = self.encode(c);
                        self.clauses.push(vec![l]);
                    }
                }
            }
        }
    }

    // Collects literals when `f` is a disjunction of literals.
    fn clause_literals(&mut self, f: &Formula, out: &mut Vec<Lit>) -> bool {
        match f {
            Formula::Atom(a) => {
                out.push(lit(self.atom_var(a), true));
                true
            }
            Formula::Not(c) => match c.as_ref() {
                Formula::Atom(a) => {
                    out.push(lit(self.atom_var(a), false));
                    true
                }
                _ => false,
            },
            Formula::Or(l, r) => self.clause_literals(l, out) && self.clause_literals(r, out),
            _ => false,
        }
    }

    // Input is constant-free NNF; only the implication `x -> f` is emitted,
    // which is sound because every definition occurs positively.
    fn encode(&mut self, f: &Formula) -> Lit {
        match f {
            Formula::Atom(a) => lit(self.atom_var(a), true),
            Formula::Not(c) => match c.as_ref() {
                Formula::Atom(a) => lit(self.atom_var(a), false),
                _ => unreachable!("negation normal form"),
            },
            Formula::And(..) => {
                let mut parts = Vec::new();
                collect_and(f, &mut parts);
                let x = self.fresh();
                for p in parts {
                    let l = self.encode(p);
                    self.clauses.push(vec![lit(x, false), l]);
                }
                lit(x, true)
            }
            Formula::Or(..) => {
                let mut parts = Vec::new();
                collect_or(f, &mut parts);
                let x = self.fresh();
                let mut clause = vec![lit(x, false)];
                for p in parts {
                    clause.push(self.encode(p));
                }
                self.clauses.push(clause);
                lit(x, true)
            }
            _ => unreachable!("constant-free negation normal form"),
        }
    }

    /// Solves and projects the model onto the registered atoms.
    pub(crate) fn solve(self, limits: &SatLimits) -> Result<SatResult> {
        let Encoder {
            atoms,
            num_vars,
            clauses,
        } = self;
        match solve_clauses(num_vars as usize, clauses, limits)? {
            None => Ok(SatResult::Unsatisfiable),
            Some(model) => Ok(SatResult::Satisfiable(
                atoms
                    .into_iter()
                    .map(|(a, v)| (a, model[v as usize]))
                    .collect(),
            )),
        }
    }
}

fn collect_and<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::And(l, r) => {
            collect_and(l, out);
            collect_and(r, out);
        }
        _ => out.push(f),
    }
}

fn collect_or<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::Or(l, r) => {
            collect_or(l, out);
            collect_or(r, out);
        }
        _ => out.push(f),
    }
}

// ---------------------------------------------------------------------------
// Public decision procedures

pub fn is_satisfiable(fs: &[Formula]) -> Result<SatResult> {
    is_satisfiable_with(fs, &SatLimits::default())
}

/// Satisfiability of the conjunction of `fs`. The witness is over exactly
/// the atoms of `fs`.
pub fn is_satisfiable_with(fs: &[Formula], limits: &SatLimits) -> Result<SatResult> {
    let mut enc = Encoder::new();
    for f in fs {
        enc.add_formula(f);
    }
    let result = enc.solve(limits)?;
    if let SatResult::Satisfiable(w) = &result {
        debug_assert!(fs.iter().all(|f| evaluate2(w, f) == Ok(true)));
    }
    Ok(result)
}

pub fn entails(premises: &[Formula], goal: &Formula) -> Result<bool> {
    entails_with(premises, goal, &SatLimits::default())
}

/// `premises ⊨ goal`, i.e. `premises ∪ {¬goal}` is unsatisfiable.
pub fn entails_with(premises: &[Formula], goal: &Formula, limits: &SatLimits) -> Result<bool> {
    let mut enc = Encoder::new();
    for f in premises {
        enc.add_formula(f);
    }
    enc.add_formula(&Formula::not(goal.clone()));
    Ok(!enc.solve(limits)?.is_sat())
}

pub fn equivalent(f: &Formula, g: &Formula) -> Result<bool> {
    equivalent_with(f, g, &SatLimits::default())
}

pub fn equivalent_with(f: &Formula, g: &Formula, limits: &SatLimits) -> Result<bool> {
    Ok(entails_with(std::slice::from_ref(f), g, limits)?
        && entails_with(std::slice::from_ref(g), f, limits)?)
}

pub fn elementwise_equivalent(a: &[Formula], b: &[Formula]) -> Result<bool> {
    elementwise_equivalent_with(a, b, &SatLimits::default())
}

/// Every member of `a` has an equivalent member in `b` and vice versa.
pub fn elementwise_equivalent_with(
    a: &[Formula],
    b: &[Formula],
    limits: &SatLimits,
) -> Result<bool> {
    let covered = |from: &[Formula], to: &[Formula]| -> Result<bool> {
        for f in from {
            let mut found = false;
            for g in to {
                if f == g || equivalent_with(f, g, limits)? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(covered(a, b)? && covered(b, a)?)
}

/// All models of `fs` over `sig` by truth-table scan, in canonical order
/// (binary counting with the lexicographically first atom most significant).
pub fn enumerate_models(fs: &[Formula], sig: &Signature, cap: usize) -> Result<Vec<Assignment>> {
    if sig.len() > cap {
        return Err(Error::ModelCap {
            atoms: sig.len(),
            cap,
        });
    }
    let atoms: Vec<Atom> = sig.iter().cloned().collect();
    let index: BTreeMap<Atom, usize> = atoms.iter().cloned().zip(0..).collect();
    for f in fs {
        let mut missing = None;
        f.for_each_atom(&mut |a| {
            if !index.contains_key(a) {
                missing = Some(a.clone());
            }
        });
        if let Some(a) = missing {
            return Err(Error::UnassignedAtom(a.to_string()));
        }
    }
    let compiled: Vec<Compiled> = fs.iter().map(|f| Compiled::new(f, &index)).collect();
    let n = atoms.len();
    let mut values = vec![false; n];
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << n) {
        for (i, v) in values.iter_mut().enumerate() {
            *v = bits >> (n - 1 - i) & 1 == 1;
        }
        if compiled.iter().all(|c| c.eval(&values)) {
            out.push(atoms.iter().cloned().zip(values.iter().copied()).collect());
        }
    }
    Ok(out)
}
