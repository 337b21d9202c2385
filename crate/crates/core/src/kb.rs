//! Signatures and knowledge bases.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::Result;
use crate::formula::{atoms_of, parse_formula_at, Atom, Formula};

/// Finite set of atoms. Iteration is lexicographic; signatures themselves
/// order by size first and then lexicographically, so a `BTreeSet` of
/// signatures is already in canonical family order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Signature(BTreeSet<Atom>);

/// A canonically ordered family of signatures.
pub type Family = BTreeSet<Signature>;

impl Signature {
    pub fn empty() -> Signature {
        Signature(BTreeSet::new())
    }

    /// Builds a signature from atom names, validating each.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Signature> {
        names
            .iter()
            .map(|n| Atom::new(n.as_ref().trim()))
            .collect::<Result<BTreeSet<_>>>()
            .map(Signature)
    }

    pub fn insert(&mut self, atom: Atom) -> bool {
        self.0.insert(atom)
    }

    pub fn remove(&mut self, atom: &Atom) -> bool {
        self.0.remove(atom)
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.0.contains(atom)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> + '_ {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &Signature) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Signature) -> Signature {
        Signature(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &Signature) -> Signature {
        Signature(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &Signature) -> Signature {
        Signature(self.0.difference(&other.0).cloned().collect())
    }

    pub fn names(&self) -> Vec<String> {
        self.0.iter().map(|a| a.to_string()).collect()
    }
}

impl Ord for Signature {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for Signature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Atom> for Signature {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        Signature(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Signature {
    type Item = &'a Atom;
    type IntoIter = std::collections::btree_set::Iter<'a, Atom>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders a family as `[{a,b}, {b,c}]`.
pub fn display_family(family: &Family) -> String {
    let parts: Vec<String> = family.iter().map(|s| s.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Finite set of formulas. Structural duplicates are dropped; insertion order
/// is kept and is the order every algorithm iterates in.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct KnowledgeBase {
    formulas: Vec<Formula>,
}

impl KnowledgeBase {
    pub fn new() -> KnowledgeBase {
        KnowledgeBase::default()
    }

    pub fn from_formulas<I: IntoIterator<Item = Formula>>(formulas: I) -> KnowledgeBase {
        let mut kb = KnowledgeBase::new();
        for f in formulas {
            kb.insert(f);
        }
        kb
    }

    /// Parses each string as a formula.
    pub fn parse_all<S: AsRef<str>>(items: &[S]) -> Result<KnowledgeBase> {
        items
            .iter()
            .enumerate()
            .map(|(i, s)| parse_formula_at(s.as_ref(), i + 1))
            .collect::<Result<Vec<_>>>()
            .map(KnowledgeBase::from_formulas)
    }

    /// Returns `false` if a structurally equal formula was already present.
    pub fn insert(&mut self, f: Formula) -> bool {
        if self.formulas.contains(&f) {
            return false;
        }
        self.formulas.push(f);
        true
    }

    /// `self ∪ {f}`.
    pub fn with(&self, f: Formula) -> KnowledgeBase {
        let mut kb = self.clone();
        kb.insert(f);
        kb
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> + '_ {
        self.formulas.iter()
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn atoms(&self) -> Signature {
        let mut sig = Signature::empty();
        for f in &self.formulas {
            f.for_each_atom(&mut |a| {
                sig.insert(a.clone());
            });
        }
        sig
    }

    /// Members selected by a bitmask over formula positions.
    pub(crate) fn subset_by_mask(&self, mask: u64) -> KnowledgeBase {
        KnowledgeBase {
            formulas: self
                .formulas
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, f)| f.clone())
                .collect(),
        }
    }
}

impl fmt::Display for KnowledgeBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, g) in self.formulas.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for KnowledgeBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Atoms of a formula or knowledge base.
pub trait HasAtoms {
    fn signature(&self) -> Signature;
}

impl HasAtoms for Formula {
    fn signature(&self) -> Signature {
        atoms_of(self)
    }
}

impl HasAtoms for KnowledgeBase {
    fn signature(&self) -> Signature {
        self.atoms()
    }
}

/// Parses a knowledge-base file: one formula per line, `#` starts a comment,
/// blank lines are ignored. Syntax errors report the file line.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase> {
    let mut kb = KnowledgeBase::new();
    for (i, line) in text.lines().enumerate() {
        let content = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        if content.trim().is_empty() {
            continue;
        }
        kb.insert(parse_formula_at(content, i + 1)?);
    }
    Ok(kb)
}
