//! Reference implementations written straight from the definitions. They
//! share no code with the library beyond the syntax tree: truth tables
//! instead of the solver, literal per-occurrence expansion instead of the
//! renamed encodings, subset scans instead of the enumerators.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use sigforget::{Atom, Formula, KnowledgeBase};

pub type Names = BTreeSet<String>;
pub type NameFamily = BTreeSet<Names>;

pub const K1: &[&str] = &["a", "!a & c"];
pub const K2: &[&str] = &["a & !a", "c"];
pub const K3: &[&str] = &["a & b & d", "!a | !b", "b & !c", "(c | !b) & d"];
pub const K4: &[&str] = &["a | b", "!a & !b"];
pub const K5: &[&str] = &["a & b", "b", "!b | !a"];

pub fn kb(items: &[&str]) -> KnowledgeBase {
    KnowledgeBase::parse_all(items).unwrap()
}

pub fn names(items: &[&str]) -> Names {
    items.iter().map(|s| s.to_string()).collect()
}

pub fn family(sets: &[&[&str]]) -> NameFamily {
    sets.iter().map(|s| names(s)).collect()
}

pub fn to_names(sig: &sigforget::Signature) -> Names {
    sig.names().into_iter().collect()
}

pub fn to_name_family(fam: &sigforget::Family) -> NameFamily {
    fam.iter().map(to_names).collect()
}

// ---------------------------------------------------------------------------
// Classical semantics

pub fn atoms(f: &Formula, out: &mut Names) {
    match f {
        Formula::Top | Formula::Bottom => {}
        Formula::Atom(a) => {
            out.insert(a.name().to_string());
        }
        Formula::Not(x) => atoms(x, out),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            atoms(l, out);
            atoms(r, out);
        }
    }
}

pub fn atoms_all(fs: &[Formula]) -> Names {
    let mut out = Names::new();
    for f in fs {
        atoms(f, &mut out);
    }
    out
}

pub fn eval(f: &Formula, w: &BTreeMap<String, bool>) -> bool {
    match f {
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Atom(a) => w[a.name()],
        Formula::Not(x) => !eval(x, w),
        Formula::And(l, r) => eval(l, w) && eval(r, w),
        Formula::Or(l, r) => eval(l, w) || eval(r, w),
        Formula::Implies(l, r) => !eval(l, w) || eval(r, w),
    }
}

pub fn assignments(sig: &Names) -> Vec<BTreeMap<String, bool>> {
    let list: Vec<&String> = sig.iter().collect();
    (0..1u64 << list.len())
        .map(|m| {
            list.iter()
                .enumerate()
                .map(|(i, a)| ((*a).clone(), m >> i & 1 == 1))
                .collect()
        })
        .collect()
}

pub fn tt_satisfiable(fs: &[Formula]) -> bool {
    assignments(&atoms_all(fs))
        .iter()
        .any(|w| fs.iter().all(|f| eval(f, w)))
}

pub fn tt_entails(fs: &[Formula], goal: &Formula) -> bool {
    let mut sig = atoms_all(fs);
    atoms(goal, &mut sig);
    assignments(&sig)
        .iter()
        .all(|w| !fs.iter().all(|f| eval(f, w)) || eval(goal, w))
}

pub fn tt_equivalent(f: &Formula, g: &Formula) -> bool {
    tt_entails(std::slice::from_ref(f), g) && tt_entails(std::slice::from_ref(g), f)
}

pub fn tt_elementwise(a: &[Formula], b: &[Formula]) -> bool {
    a.iter().all(|f| b.iter().any(|g| tt_equivalent(f, g)))
        && b.iter().all(|g| a.iter().any(|f| tt_equivalent(f, g)))
}

// ---------------------------------------------------------------------------
// Forgetting by literal expansion

pub fn occurrences(f: &Formula, atom: &str) -> usize {
    match f {
        Formula::Top | Formula::Bottom => 0,
        Formula::Atom(a) => usize::from(a.name() == atom),
        Formula::Not(x) => occurrences(x, atom),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            occurrences(l, atom) + occurrences(r, atom)
        }
    }
}

/// Replaces the occurrences of atoms in `targets`, in pre-order, by the
/// constants drawn from `values`.
pub fn replace_occurrences(f: &Formula, targets: &Names, values: &mut dyn Iterator<Item = bool>) -> Formula {
    let mut rec = |g: &Formula| Box::new(replace_occurrences(g, targets, values));
    match f {
        Formula::Atom(a) if targets.contains(a.name()) => {
            if values.next().expect("one value per occurrence") {
                Formula::Top
            } else {
                Formula::Bottom
            }
        }
        Formula::Top | Formula::Bottom | Formula::Atom(_) => f.clone(),
        Formula::Not(x) => Formula::Not(rec(x)),
        Formula::And(l, r) => {
            let l = rec(l);
            Formula::And(l, rec(r))
        }
        Formula::Or(l, r) => {
            let l = rec(l);
            Formula::Or(l, rec(r))
        }
        Formula::Implies(l, r) => {
            let l = rec(l);
            Formula::Implies(l, rec(r))
        }
    }
}

fn disjoin(fs: impl Iterator<Item = Formula>) -> Formula {
    fs.reduce(|x, y| Formula::Or(Box::new(x), Box::new(y))).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Ve,
    Na,
}

impl From<sigforget::ForgetOp> for Op {
    fn from(op: sigforget::ForgetOp) -> Op {
        match op {
            sigforget::ForgetOp::Ve => Op::Ve,
            sigforget::ForgetOp::Na => Op::Na,
        }
    }
}

/// `φ ⊟ a` for VE by definition: the two uniform instances.
pub fn forget_atom_ve(f: &Formula, atom: &str) -> Formula {
    let n = occurrences(f, atom);
    if n == 0 {
        return f.clone();
    }
    let target = names(&[atom]);
    disjoin(
        [true, false]
            .into_iter()
            .map(|b| replace_occurrences(f, &target, &mut std::iter::repeat(b))),
    )
}

/// `φ ⊟ S`. VE eliminates the atoms one after the other. NA takes one
/// disjunct per vector of constants over all occurrences of atoms in `S`;
/// eliminating atom by atom gives an equivalent but much larger formula.
pub fn forget_formula(f: &Formula, s: &Names, op: Op) -> Formula {
    match op {
        Op::Ve => s.iter().fold(f.clone(), |g, a| forget_atom_ve(&g, a)),
        Op::Na => {
            let n: usize = s.iter().map(|a| occurrences(f, a)).sum();
            if n == 0 {
                return f.clone();
            }
            disjoin((0..1u64 << n).map(|m| {
                replace_occurrences(f, s, &mut (0..n).map(move |i| m >> i & 1 == 1))
            }))
        }
    }
}

pub fn forget_kb(fs: &[Formula], s: &Names, op: Op) -> Vec<Formula> {
    fs.iter().map(|f| forget_formula(f, s, op)).collect()
}

pub fn projection_consistent(fs: &[Formula], keep: &Names, op: Op) -> bool {
    let forget: Names = atoms_all(fs).difference(keep).cloned().collect();
    tt_satisfiable(&forget_kb(fs, &forget, op))
}

pub fn subsets(sig: &Names) -> Vec<Names> {
    let list: Vec<&String> = sig.iter().collect();
    (0..1u64 << list.len())
        .map(|m| {
            list.iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, a)| (*a).clone())
                .collect()
        })
        .collect()
}

/// MISig and MCSig from a full scan and the literal definitions.
pub fn signature_families(fs: &[Formula], op: Op) -> (NameFamily, NameFamily) {
    let all = subsets(&atoms_all(fs));
    let table: Vec<(Names, bool)> = all
        .iter()
        .map(|s| (s.clone(), projection_consistent(fs, s, op)))
        .collect();
    let misig = table
        .iter()
        .filter(|(s, c)| !c && table.iter().all(|(t, d)| !(t.is_subset(s) && t != s) || *d))
        .map(|(s, _)| s.clone())
        .collect();
    let mcsig = table
        .iter()
        .filter(|(s, c)| *c && table.iter().all(|(t, d)| !(s.is_subset(t) && t != s) || !d))
        .map(|(s, _)| s.clone())
        .collect();
    (misig, mcsig)
}

/// Minimal hitting sets of `fam` inside `universe` by exhaustive search.
pub fn hitting_sets(fam: &NameFamily, universe: &Names) -> NameFamily {
    let hits: Vec<Names> = subsets(universe)
        .into_iter()
        .filter(|h| fam.iter().all(|m| !m.is_disjoint(h)))
        .collect();
    hits.iter()
        .filter(|h| !hits.iter().any(|g| g != *h && g.is_subset(h)))
        .cloned()
        .collect()
}

pub fn complements(fam: &NameFamily, universe: &Names) -> NameFamily {
    fam.iter().map(|s| universe.difference(s).cloned().collect()).collect()
}

// ---------------------------------------------------------------------------
// Three-valued semantics: 0 = F, 1 = B, 2 = T.

pub fn eval3(f: &Formula, v: &BTreeMap<String, u8>) -> u8 {
    match f {
        Formula::Top => 2,
        Formula::Bottom => 0,
        Formula::Atom(a) => v[a.name()],
        Formula::Not(x) => 2 - eval3(x, v),
        Formula::And(l, r) => eval3(l, v).min(eval3(r, v)),
        Formula::Or(l, r) => eval3(l, v).max(eval3(r, v)),
        Formula::Implies(l, r) => (2 - eval3(l, v)).max(eval3(r, v)),
    }
}

pub fn interpretations3(sig: &Names) -> Vec<BTreeMap<String, u8>> {
    let list: Vec<&String> = sig.iter().collect();
    (0..3u64.pow(list.len() as u32))
        .map(|mut m| {
            list.iter()
                .map(|a| {
                    let d = (m % 3) as u8;
                    m /= 3;
                    ((*a).clone(), d)
                })
                .collect()
        })
        .collect()
}

pub fn b_set(v: &BTreeMap<String, u8>) -> Names {
    v.iter().filter(|(_, x)| **x == 1).map(|(a, _)| a.clone()).collect()
}

pub fn lp_minimal_models(fs: &[Formula], sig: &Names) -> Vec<BTreeMap<String, u8>> {
    let models: Vec<_> = interpretations3(sig)
        .into_iter()
        .filter(|v| fs.iter().all(|f| eval3(f, v) > 0))
        .collect();
    models
        .iter()
        .filter(|v| {
            let b = b_set(v);
            !models.iter().any(|u| {
                let c = b_set(u);
                c != b && c.is_subset(&b)
            })
        })
        .cloned()
        .collect()
}

pub fn lp_entails(fs: &[Formula], goal: &Formula) -> bool {
    let mut sig = atoms_all(fs);
    atoms(goal, &mut sig);
    lp_minimal_models(fs, &sig).iter().all(|v| eval3(goal, v) > 0)
}

pub fn atom(name: &str) -> Atom {
    Atom::new(name).unwrap()
}
