//! Minimal inconsistent and maximal consistent subsignatures, free atoms,
//! minimal hitting sets, projected knowledge bases, and the subset-based
//! MIS/MCS families used for comparison.
//!
//! Consistency of subsignatures is monotone: every subset of a consistent
//! subsignature is consistent. Both enumeration strategies rely on it only
//! for speed; the brute-force strategy checks the literal definitions.

use crate::config::{Config, Strategy};
use crate::error::{Error, Result};
use crate::exec;
use crate::forget::{project, self_inconsistent_members, ConsistencyOracle, ForgetOp};
use crate::kb::{Family, KnowledgeBase, Signature};
use crate::sat::{is_satisfiable_with, lit, solve_clauses};

/// Everything the analysis knows about one knowledge base under one operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsigReport {
    pub operator: ForgetOp,
    pub strategy: Strategy,
    pub misig: Family,
    pub mcsig: Family,
    /// Singleton members of `misig`.
    pub scsig: Family,
    pub free_atoms: Signature,
    pub warnings: Vec<String>,
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_cap(n: usize, strategy: Strategy, cfg: &Config) -> Result<()> {
    let cap = match strategy {
        Strategy::BruteForce => cfg.limits.max_brute_atoms,
        Strategy::Duality => cfg.limits.max_enum_atoms,
    }
    .min(63);
    if n > cap {
        return Err(Error::EnumerationCap { atoms: n, cap });
    }
    Ok(())
}

/// Masks whose entry is set and no proper submask entry is.
fn minimal_masks(set: &[bool]) -> Vec<u64> {
    (0..set.len() as u64)
        .filter(|&m| set[m as usize])
        .filter(|&m| {
            // Scan proper submasks.
            let mut sub = m.wrapping_sub(1) & m;
            while sub != m {
                if set[sub as usize] {
                    return false;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
            true
        })
        .collect()
}

fn brute_force(oracle: &ConsistencyOracle<'_>, cfg: &Config) -> Result<(Family, Family)> {
    let n = oracle.atoms().len();
    let full = full_mask(n);
    let consistent = exec::try_map_range(cfg.parallelism, 1u64 << n, |m| oracle.consistent(m))?;
    let inconsistent: Vec<bool> = consistent.iter().map(|c| !c).collect();
    let misig = minimal_masks(&inconsistent)
        .into_iter()
        .map(|m| oracle.signature_of(m))
        .collect();
    // Maximal consistent sets are the complements of minimal sets in the
    // complemented table.
    let complemented: Vec<bool> = (0..=full).map(|m| consistent[(full & !m) as usize]).collect();
    let mcsig = minimal_masks(&complemented)
        .into_iter()
        .map(|m| oracle.signature_of(full & !m))
        .collect();
    Ok((misig, mcsig))
}

/// Grow/shrink loop over an exploration map: each unexplored seed is either
/// grown to a maximal consistent subsignature or shrunk to a minimal
/// inconsistent one, and the map blocks everything it subsumes.
fn grow_shrink(oracle: &ConsistencyOracle<'_>, cfg: &Config) -> Result<(Family, Family)> {
    let n = oracle.atoms().len();
    let mut blocking: Vec<Vec<u32>> = Vec::new();
    let mut misig = Family::new();
    let mut mcsig = Family::new();
    while let Some(model) = solve_clauses(n, blocking.clone(), &cfg.limits.sat)? {
        let mut seed = model
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .fold(0u64, |m, (i, _)| m | 1 << i);
        if oracle.consistent(seed)? {
            for i in 0..n {
                let bigger = seed | 1 << i;
                if bigger != seed && oracle.consistent(bigger)? {
                    seed = bigger;
                }
            }
            mcsig.insert(oracle.signature_of(seed));
            blocking.push((0..n).filter(|i| seed >> i & 1 == 0).map(|i| lit(i as u32, true)).collect());
        } else {
            for i in 0..n {
                let smaller = seed & !(1 << i);
                if smaller != seed && !oracle.consistent(smaller)? {
                    seed = smaller;
                }
            }
            misig.insert(oracle.signature_of(seed));
            blocking.push((0..n).filter(|i| seed >> i & 1 == 1).map(|i| lit(i as u32, false)).collect());
        }
    }
    Ok((misig, mcsig))
}

fn families(kb: &KnowledgeBase, op: ForgetOp, cfg: &Config) -> Result<(Family, Family)> {
    let oracle = ConsistencyOracle::new(kb, op, cfg);
    check_cap(oracle.atoms().len(), cfg.strategy, cfg)?;
    match cfg.strategy {
        Strategy::BruteForce => brute_force(&oracle, cfg),
        Strategy::Duality => grow_shrink(&oracle, cfg),
    }
}

pub fn enumerate_misig(kb: &KnowledgeBase, op: ForgetOp, cfg: &Config) -> Result<Family> {
    Ok(families(kb, op, cfg)?.0)
}

pub fn enumerate_mcsig(kb: &KnowledgeBase, op: ForgetOp, cfg: &Config) -> Result<Family> {
    Ok(families(kb, op, cfg)?.1)
}

fn union_of(family: &Family) -> Signature {
    family.iter().fold(Signature::empty(), |acc, s| acc.union(s))
}

/// Intersection of the family; the empty family intersects to `universe`.
fn intersection_of(family: &Family, universe: &Signature) -> Signature {
    family.iter().fold(universe.clone(), |acc, s| acc.intersection(s))
}

/// Full analysis. Free atoms are computed from both families and must agree.
pub fn analyze(kb: &KnowledgeBase, op: ForgetOp, cfg: &Config) -> Result<SubsigReport> {
    let (misig, mcsig) = families(kb, op, cfg)?;
    let atoms = kb.atoms();
    let free_atoms = atoms.difference(&union_of(&misig));
    let free_dual = intersection_of(&mcsig, &atoms);
    if free_atoms != free_dual {
        return Err(Error::Invariant(format!(
            "free atoms disagree: {free_atoms} outside every minimal inconsistent subsignature, \
             {free_dual} inside every maximal consistent one"
        )));
    }
    let scsig = misig.iter().filter(|s| s.len() == 1).cloned().collect();
    let mut warnings = Vec::new();
    for i in self_inconsistent_members(kb, cfg)? {
        warnings.push(format!("formula {} is unsatisfiable on its own", i + 1));
    }
    if mcsig.is_empty() {
        warnings.push("no consistent subsignature exists".to_string());
    }
    Ok(SubsigReport {
        operator: op,
        strategy: cfg.strategy,
        misig,
        mcsig,
        scsig,
        free_atoms,
        warnings,
    })
}

pub fn free_atoms(kb: &KnowledgeBase, op: ForgetOp, cfg: &Config) -> Result<Signature> {
    Ok(analyze(kb, op, cfg)?.free_atoms)
}

/// All inclusion-minimal hitting sets (Berge's algorithm). The empty family
/// has the single hitting set `∅`; a family containing `∅` has none.
pub fn minimal_hitting_sets(family: &Family) -> Family {
    let mut current: Vec<Signature> = vec![Signature::empty()];
    for set in family {
        let mut next: Vec<Signature> = Vec::new();
        for h in &current {
            if !h.intersection(set).is_empty() {
                next.push(h.clone());
            } else {
                for a in set {
                    let mut g = h.clone();
                    g.insert(a.clone());
                    next.push(g);
                }
            }
        }
        next.sort();
        next.dedup();
        current = next
            .iter()
            .filter(|h| !next.iter().any(|g| g != *h && g.is_subset(h)))
            .cloned()
            .collect();
    }
    current.into_iter().collect()
}

/// Both directions of the hitting-set duality for one operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityCheck {
    pub misig: Family,
    pub mcsig: Family,
    /// Complements of the minimal hitting sets of `misig`.
    pub mcsig_from_misig: Family,
    /// Minimal hitting sets of the complements of `mcsig`.
    pub misig_from_mcsig: Family,
}

impl DualityCheck {
    pub fn holds(&self) -> bool {
        self.mcsig == self.mcsig_from_misig && self.misig == self.misig_from_mcsig
    }
}

pub fn duality_check(kb: &KnowledgeBase, op: ForgetOp, cfg: &Config) -> Result<DualityCheck> {
    let (misig, mcsig) = families(kb, op, cfg)?;
    let atoms = kb.atoms();
    let mcsig_from_misig = minimal_hitting_sets(&misig)
        .iter()
        .map(|h| atoms.difference(h))
        .collect();
    let complements: Family = mcsig.iter().map(|s| atoms.difference(s)).collect();
    let misig_from_mcsig = minimal_hitting_sets(&complements);
    Ok(DualityCheck {
        misig,
        mcsig,
        mcsig_from_misig,
        misig_from_mcsig,
    })
}

/// One member of MCKB with the subsignature it was projected onto.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedKb {
    pub signature: Signature,
    pub kb: KnowledgeBase,
}

/// `{ K|_S : S ∈ MCSig }`, in canonical MCSig order.
pub fn mckb(kb: &KnowledgeBase, op: ForgetOp, cfg: &Config) -> Result<Vec<ProjectedKb>> {
    enumerate_mcsig(kb, op, cfg)?
        .into_iter()
        .map(|s| {
            Ok(ProjectedKb {
                kb: project(kb, &s, op, cfg)?,
                signature: s,
            })
        })
        .collect()
}

/// Consistency of every formula subset, indexed by bitmask.
fn subset_table(kb: &KnowledgeBase, cfg: &Config) -> Result<Vec<bool>> {
    let cap = cfg.limits.max_subset_formulas.min(24);
    if kb.len() > cap {
        return Err(Error::SubsetCap {
            formulas: kb.len(),
            cap,
        });
    }
    exec::try_map_range(cfg.parallelism, 1u64 << kb.len(), |m| {
        let sub = kb.subset_by_mask(m);
        Ok(is_satisfiable_with(sub.formulas(), &cfg.limits.sat)?.is_sat())
    })
}

/// Minimal inconsistent subsets, ordered by size and then by member positions.
pub fn enumerate_mis(kb: &KnowledgeBase, cfg: &Config) -> Result<Vec<KnowledgeBase>> {
    let table = subset_table(kb, cfg)?;
    let n = kb.len();
    let mut found: Vec<u64> = (0..table.len() as u64)
        .filter(|&m| !table[m as usize])
        .filter(|&m| (0..n).filter(|i| m >> i & 1 == 1).all(|i| table[(m & !(1 << i)) as usize]))
        .collect();
    found.sort_by_key(|&m| (m.count_ones(), std::cmp::Reverse(m.reverse_bits())));
    Ok(found.into_iter().map(|m| kb.subset_by_mask(m)).collect())
}

/// Maximal consistent subsets, ordered like [`enumerate_mis`].
pub fn enumerate_mcs(kb: &KnowledgeBase, cfg: &Config) -> Result<Vec<KnowledgeBase>> {
    let table = subset_table(kb, cfg)?;
    let n = kb.len();
    let mut found: Vec<u64> = (0..table.len() as u64)
        .filter(|&m| table[m as usize])
        .filter(|&m| (0..n).filter(|i| m >> i & 1 == 0).all(|i| !table[(m | 1 << i) as usize]))
        .collect();
    found.sort_by_key(|&m| (m.count_ones(), std::cmp::Reverse(m.reverse_bits())));
    Ok(found.into_iter().map(|m| kb.subset_by_mask(m)).collect())
}
