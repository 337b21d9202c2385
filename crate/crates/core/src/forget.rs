//! Forgetting operators, projection, and the renamed encodings that decide
//! projected consistency and entailment with a single satisfiability call.
//!
//! Two operators are provided:
//!
//! * [`ForgetOp::Ve`] (variable elimination) replaces a forgotten atom by
//!   `φ[a→⊤] ∨ φ[a→⊥]`, formula by formula.
//! * [`ForgetOp::Na`] (occurrence-wise elimination) disjoins over every
//!   independent `⊤`/`⊥` choice per occurrence, which can repair a
//!   contradiction inside a single formula.
//!
//! Occurrence-wise elimination is computed as variable elimination after
//! giving every occurrence its own fresh atom. The encodings generalise the
//! same renaming to whole knowledge bases: each formula (VE) or each
//! occurrence (NA) receives private copies of the forgotten atoms, kept atoms
//! stay shared, and satisfiability of the renamed set is exactly
//! satisfiability of the forgotten knowledge base.

use std::fmt;
use std::str::FromStr;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::formula::{
    cnf_clauses, count_occurrences, simplify_constants, substitute_uniform, Atom, Formula,
};
use crate::kb::{KnowledgeBase, Signature};
use crate::sat::{entails_with, is_satisfiable_with, Encoder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ForgetOp {
    /// Formula-wise variable elimination.
    Ve,
    /// Occurrence-wise ("naive") elimination.
    Na,
}

impl ForgetOp {
    pub const ALL: [ForgetOp; 2] = [ForgetOp::Ve, ForgetOp::Na];

    pub fn name(self) -> &'static str {
        match self {
            ForgetOp::Ve => "ve",
            ForgetOp::Na => "na",
        }
    }
}

impl fmt::Display for ForgetOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ForgetOp {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ve" => Ok(ForgetOp::Ve),
            "na" => Ok(ForgetOp::Na),
            other => Err(format!("unknown forgetting operator `{other}` (expected ve or na)")),
        }
    }
}

fn fresh_formula_copy(formula: usize, atom: &Atom) -> Atom {
    Atom::fresh(format!("__f{formula}_{atom}"))
}

fn fresh_occurrence_copy(formula: usize, occurrence: usize, atom: &Atom) -> Atom {
    Atom::fresh(format!("__o{formula}_{occurrence}_{atom}"))
}

/// Eliminates `atoms` one at a time, simplifying after each step.
fn eliminate(f: &Formula, atoms: &[Atom]) -> Formula {
    let mut g = f.clone();
    for a in atoms {
        if count_occurrences(&g, a) == 0 {
            continue;
        }
        let pos = substitute_uniform(&g, a, &Formula::Top);
        let neg = substitute_uniform(&g, a, &Formula::Bottom);
        g = simplify_constants(&Formula::or(pos, neg));
    }
    g
}

/// Gives each occurrence of an atom in `targets` its own fresh copy; returns
/// the renamed formula and the copies in order of appearance.
fn rename_occurrences(f: &Formula, formula: usize, targets: &Signature) -> (Formula, Vec<(Atom, usize, Atom)>) {
    let mut counters: std::collections::BTreeMap<Atom, usize> = Default::default();
    let mut log = Vec::new();
    let renamed = f.map_atoms(&mut |a| {
        if targets.contains(a) {
            let j = counters.entry(a.clone()).or_insert(0);
            let fresh = fresh_occurrence_copy(formula, *j, a);
            log.push((a.clone(), *j, fresh.clone()));
            *j += 1;
            Formula::Atom(fresh)
        } else {
            Formula::Atom(a.clone())
        }
    });
    (renamed, log)
}

/// `f ⊟ S`. Atoms of `S` absent from `f` are ignored; if none is present `f`
/// is returned unchanged, otherwise the result is constant-simplified.
pub fn forget_formula(f: &Formula, s: &Signature, op: ForgetOp, cfg: &Config) -> Result<Formula> {
    let targets = f.atoms().intersection(s);
    if targets.is_empty() {
        return Ok(f.clone());
    }
    let cap = cfg.limits.max_expansion;
    match op {
        ForgetOp::Ve => {
            if targets.len() > cap {
                return Err(Error::ExpansionBudget {
                    needed: targets.len(),
                    cap,
                });
            }
            let atoms: Vec<Atom> = targets.iter().cloned().collect();
            Ok(eliminate(f, &atoms))
        }
        ForgetOp::Na => {
            let occurrences: usize = targets.iter().map(|a| count_occurrences(f, a)).sum();
            if occurrences > cap {
                return Err(Error::ExpansionBudget {
                    needed: occurrences,
                    cap,
                });
            }
            let (renamed, log) = rename_occurrences(f, 0, &targets);
            let fresh: Vec<Atom> = log.into_iter().map(|(_, _, fresh)| fresh).collect();
            Ok(eliminate(&renamed, &fresh))
        }
    }
}

/// Formula-wise `K ⊟ S`; duplicates created by forgetting are merged.
pub fn forget_kb(kb: &KnowledgeBase, s: &Signature, op: ForgetOp, cfg: &Config) -> Result<KnowledgeBase> {
    if s.is_empty() {
        return Ok(kb.clone());
    }
    let forgotten = kb
        .iter()
        .map(|f| forget_formula(f, s, op, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(KnowledgeBase::from_formulas(forgotten))
}

/// Occurrence-wise forgetting through the clause form: every clause that
/// mentions a forgotten atom becomes `true`.
pub fn forget_na_cnf_fast(f: &Formula, s: &Signature, cfg: &Config) -> Result<Formula> {
    let mut cnf = cnf_clauses(f, cfg.limits.max_cnf_clauses)?;
    cnf.clauses
        .retain(|clause| clause.iter().all(|l| !s.contains(&l.atom)));
    Ok(cnf.to_formula())
}

fn require_subsignature(kb: &KnowledgeBase, s: &Signature) -> Result<()> {
    let outside = s.difference(&kb.atoms());
    if outside.is_empty() {
        Ok(())
    } else {
        Err(Error::NotASubsignature(outside.to_string()))
    }
}

/// `K|_S = K ⊟ (At(K) \ S)`.
pub fn project(kb: &KnowledgeBase, keep: &Signature, op: ForgetOp, cfg: &Config) -> Result<KnowledgeBase> {
    require_subsignature(kb, keep)?;
    forget_kb(kb, &kb.atoms().difference(keep), op, cfg)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenameEntry {
    pub formula: usize,
    pub atom: Atom,
    /// Occurrence index within the formula (NA only).
    pub occurrence: Option<usize>,
    pub fresh: Atom,
}

/// A knowledge base with forgotten atoms replaced by private copies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenamedEncoding {
    pub renamed_formulas: Vec<Formula>,
    pub fresh_atoms: Signature,
    pub kept_atoms: Signature,
    pub rename_log: Vec<RenameEntry>,
}

/// Renames the atoms in `forget`: per formula for VE, per occurrence for NA.
pub fn build_renamed_encoding(kb: &KnowledgeBase, forget: &Signature, op: ForgetOp) -> Result<RenamedEncoding> {
    require_subsignature(kb, forget)?;
    let mut renamed_formulas = Vec::with_capacity(kb.len());
    let mut fresh_atoms = Signature::empty();
    let mut rename_log = Vec::new();
    for (i, f) in kb.iter().enumerate() {
        let targets = f.atoms().intersection(forget);
        if targets.is_empty() {
            renamed_formulas.push(f.clone());
            continue;
        }
        match op {
            ForgetOp::Ve => {
                renamed_formulas.push(f.map_atoms(&mut |a| {
                    if targets.contains(a) {
                        Formula::Atom(fresh_formula_copy(i, a))
                    } else {
                        Formula::Atom(a.clone())
                    }
                }));
                for a in targets.iter() {
                    let fresh = fresh_formula_copy(i, a);
                    fresh_atoms.insert(fresh.clone());
                    rename_log.push(RenameEntry {
                        formula: i,
                        atom: a.clone(),
                        occurrence: None,
                        fresh,
                    });
                }
            }
            ForgetOp::Na => {
                let (renamed, log) = rename_occurrences(f, i, &targets);
                renamed_formulas.push(renamed);
                for (atom, j, fresh) in log {
                    fresh_atoms.insert(fresh.clone());
                    rename_log.push(RenameEntry {
                        formula: i,
                        atom,
                        occurrence: Some(j),
                        fresh,
                    });
                }
            }
        }
    }
    Ok(RenamedEncoding {
        renamed_formulas,
        fresh_atoms,
        kept_atoms: kb.atoms().difference(forget),
        rename_log,
    })
}

/// Whether `K|_S` is satisfiable, decided on the renamed encoding.
pub fn is_consistent_subsignature(kb: &KnowledgeBase, keep: &Signature, op: ForgetOp, cfg: &Config) -> Result<bool> {
    require_subsignature(kb, keep)?;
    let enc = build_renamed_encoding(kb, &kb.atoms().difference(keep), op)?;
    Ok(is_satisfiable_with(&enc.renamed_formulas, &cfg.limits.sat)?.is_sat())
}

/// Whether `K ⊟ S ⊨ goal`, decided on the renamed encoding. Goal atoms never
/// collide with the internal copies.
pub fn forgotten_entails(
    kb: &KnowledgeBase,
    forget: &Signature,
    op: ForgetOp,
    goal: &Formula,
    cfg: &Config,
) -> Result<bool> {
    let enc = build_renamed_encoding(kb, forget, op)?;
    entails_with(&enc.renamed_formulas, goal, &cfg.limits.sat)
}

/// Positions of members that are unsatisfiable on their own. Such members
/// make every VE projection inconsistent.
pub fn self_inconsistent_members(kb: &KnowledgeBase, cfg: &Config) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, f) in kb.iter().enumerate() {
        if !is_satisfiable_with(std::slice::from_ref(f), &cfg.limits.sat)?.is_sat() {
            out.push(i);
        }
    }
    Ok(out)
}

/// Bitmask-driven consistency checks used by the enumerators.
pub(crate) struct ConsistencyOracle<'a> {
    kb: &'a KnowledgeBase,
    atoms: Vec<Atom>,
    op: ForgetOp,
    cfg: &'a Config,
}

impl<'a> ConsistencyOracle<'a> {
    pub(crate) fn new(kb: &'a KnowledgeBase, op: ForgetOp, cfg: &'a Config) -> Self {
        ConsistencyOracle {
            kb,
            atoms: kb.atoms().iter().cloned().collect(),
            op,
            cfg,
        }
    }

    pub(crate) fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub(crate) fn signature_of(&self, mask: u64) -> Signature {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect()
    }

    #[cfg(test)]
    pub(crate) fn mask_of(&self, s: &Signature) -> u64 {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(_, a)| s.contains(a))
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Whether the kept set `mask` is a consistent subsignature.
    pub(crate) fn consistent(&self, mask: u64) -> Result<bool> {
        let forget = self.signature_of(!mask & ((1u64 << self.atoms.len()) - 1));
        let mut enc = Encoder::new();
        for (i, f) in self.kb.iter().enumerate() {
            let targets = f.atoms().intersection(&forget);
            if targets.is_empty() {
                enc.add_formula(f);
                continue;
            }
            let renamed = match self.op {
                ForgetOp::Ve => f.map_atoms(&mut |a| {
                    if targets.contains(a) {
                        Formula::Atom(fresh_formula_copy(i, a))
                    } else {
                        Formula::Atom(a.clone())
                    }
                }),
                ForgetOp::Na => rename_occurrences(f, i, &targets).0,
            };
            enc.add_formula(&renamed);
        }
        Ok(enc.solve(&self.cfg.limits.sat)?.is_sat())
    }
}
