//! Priest's three-valued logic LP: evaluation, minimal models, the `⊢3`
//! consequence relation, and cross-checks against occurrence-wise forgetting.
//!
//! Values are ordered `F < B < T`; conjunction is the minimum, disjunction
//! the maximum, negation swaps `T` and `F` and fixes `B`, and `x -> y` is
//! read as `!x | y`. A formula is satisfied when its value is `T` or `B`.
//! Minimal models are the models whose set of `B` atoms is inclusion-minimal.

use std::collections::BTreeMap;
use std::fmt;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exec;
use crate::forget::{build_renamed_encoding, forget_formula, forgotten_entails, ConsistencyOracle, ForgetOp};
use crate::formula::{evaluate2, Atom, Compiled, Formula};
use crate::kb::{Family, KnowledgeBase, Signature};
use crate::sat::{is_satisfiable_with, Assignment};
use crate::subsig::{analyze, minimal_hitting_sets};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthValue3 {
    F,
    B,
    T,
}

impl TruthValue3 {
    pub const ALL: [TruthValue3; 3] = [TruthValue3::F, TruthValue3::B, TruthValue3::T];

    pub fn negate(self) -> TruthValue3 {
        match self {
            TruthValue3::F => TruthValue3::T,
            TruthValue3::B => TruthValue3::B,
            TruthValue3::T => TruthValue3::F,
        }
    }

    pub fn and(self, other: TruthValue3) -> TruthValue3 {
        self.min(other)
    }

    pub fn or(self, other: TruthValue3) -> TruthValue3 {
        self.max(other)
    }

    /// `T` or `B`.
    pub fn is_designated(self) -> bool {
        self != TruthValue3::F
    }

    fn code(self) -> u8 {
        self as u8
    }

    fn from_code(c: u8) -> TruthValue3 {
        TruthValue3::ALL[c as usize]
    }
}

impl fmt::Display for TruthValue3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue3::F => "F",
            TruthValue3::B => "B",
            TruthValue3::T => "T",
        })
    }
}

/// Total map from a stated signature to `{T, F, B}`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ThreeValuedInterpretation(BTreeMap<Atom, TruthValue3>);

impl ThreeValuedInterpretation {
    pub fn new() -> ThreeValuedInterpretation {
        ThreeValuedInterpretation::default()
    }

    /// Every atom of `sig` mapped to `value`.
    pub fn constant(sig: &Signature, value: TruthValue3) -> ThreeValuedInterpretation {
        sig.iter().map(|a| (a.clone(), value)).collect()
    }

    pub fn get(&self, atom: &Atom) -> Option<TruthValue3> {
        self.0.get(atom).copied()
    }

    pub fn insert(&mut self, atom: Atom, value: TruthValue3) {
        self.0.insert(atom, value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Atom, TruthValue3)> + '_ {
        self.0.iter().map(|(a, v)| (a, *v))
    }

    pub fn domain(&self) -> Signature {
        self.0.keys().cloned().collect()
    }

    /// Atoms mapped to `B`.
    pub fn b_set(&self) -> Signature {
        self.0
            .iter()
            .filter(|(_, v)| **v == TruthValue3::B)
            .map(|(a, _)| a.clone())
            .collect()
    }

    fn sort_key(&self) -> (Signature, Vec<TruthValue3>) {
        (self.b_set(), self.0.values().copied().collect())
    }
}

impl FromIterator<(Atom, TruthValue3)> for ThreeValuedInterpretation {
    fn from_iter<I: IntoIterator<Item = (Atom, TruthValue3)>>(iter: I) -> Self {
        ThreeValuedInterpretation(iter.into_iter().collect())
    }
}

impl fmt::Display for ThreeValuedInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}={v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ThreeValuedInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn evaluate3(v: &ThreeValuedInterpretation, f: &Formula) -> Result<TruthValue3> {
    Ok(match f {
        Formula::Top => TruthValue3::T,
        Formula::Bottom => TruthValue3::F,
        Formula::Atom(a) => v.get(a).ok_or_else(|| Error::UnassignedAtom(a.to_string()))?,
        Formula::Not(x) => evaluate3(v, x)?.negate(),
        Formula::And(l, r) => evaluate3(v, l)?.and(evaluate3(v, r)?),
        Formula::Or(l, r) => evaluate3(v, l)?.or(evaluate3(v, r)?),
        Formula::Implies(l, r) => evaluate3(v, l)?.negate().or(evaluate3(v, r)?),
    })
}

pub fn satisfies3(v: &ThreeValuedInterpretation, f: &Formula) -> Result<bool> {
    Ok(evaluate3(v, f)?.is_designated())
}

pub fn satisfies3_kb(v: &ThreeValuedInterpretation, kb: &KnowledgeBase) -> Result<bool> {
    for f in kb.iter() {
        if !satisfies3(v, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_domain(kb: &KnowledgeBase, sig: &Signature) -> Result<()> {
    match kb.atoms().difference(sig).iter().next() {
        Some(a) => Err(Error::UnassignedAtom(a.to_string())),
        None => Ok(()),
    }
}

fn sort_models(models: &mut [ThreeValuedInterpretation]) {
    models.sort_by_cached_key(|m| m.sort_key());
}

/// Minimal models by scanning all `3^n` interpretations.
pub fn minimal_models3_scan(kb: &KnowledgeBase, sig: &Signature, cfg: &Config) -> Result<Vec<ThreeValuedInterpretation>> {
    require_domain(kb, sig)?;
    let n = sig.len();
    let cap = cfg.limits.max_lp_scan_atoms.min(20);
    if n > cap {
        return Err(Error::EnumerationCap { atoms: n, cap });
    }
    let atoms: Vec<Atom> = sig.iter().cloned().collect();
    let index: BTreeMap<Atom, usize> = atoms.iter().cloned().zip(0..).collect();
    let compiled: Vec<Compiled> = kb.iter().map(|f| Compiled::new(f, &index)).collect();
    let decode = |mut i: u64| -> Vec<u8> {
        (0..n)
            .map(|_| {
                let d = (i % 3) as u8;
                i /= 3;
                d
            })
            .collect()
    };
    let total = 3u64.pow(n as u32);
    // Each model is reported as its B-mask and its index.
    let models: Vec<(u64, u64)> = exec::try_map_range(cfg.parallelism, total, |i| {
        let values = decode(i);
        let is_model = compiled.iter().all(|c| c.eval3(&values) != 0);
        let bmask = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == TruthValue3::B.code())
            .fold(0u64, |m, (j, _)| m | 1 << j);
        Ok(is_model.then_some((bmask, i)))
    })?
    .into_iter()
    .flatten()
    .collect();
    let mut bmasks: Vec<u64> = models.iter().map(|&(b, _)| b).collect();
    bmasks.sort_unstable();
    bmasks.dedup();
    let minimal: Vec<u64> = bmasks
        .iter()
        .copied()
        .filter(|&b| !bmasks.iter().any(|&c| c != b && c & b == c))
        .collect();
    let mut out: Vec<ThreeValuedInterpretation> = models
        .into_iter()
        .filter(|(b, _)| minimal.binary_search(b).is_ok())
        .map(|(_, i)| {
            atoms
                .iter()
                .cloned()
                .zip(decode(i).into_iter().map(TruthValue3::from_code))
                .collect()
        })
        .collect();
    sort_models(&mut out);
    Ok(out)
}

/// Inclusion-minimal sets `B ⊆ At(K)` such that `K ⊟na B` is satisfiable,
/// found layer by layer in increasing size.
fn minimal_b_sets_layered(kb: &KnowledgeBase, cfg: &Config) -> Result<Family> {
    let oracle = ConsistencyOracle::new(kb, ForgetOp::Na, cfg);
    let n = oracle.atoms().len();
    let cap = cfg.limits.max_lp_atoms.min(30);
    if n > cap {
        return Err(Error::EnumerationCap { atoms: n, cap });
    }
    let full = (1u64 << n) - 1;
    let mut layers: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for m in 0..=full {
        layers[m.count_ones() as usize].push(m);
    }
    let mut found: Vec<u64> = Vec::new();
    for layer in layers {
        let candidates: Vec<u64> = layer
            .into_iter()
            .filter(|&b| found.iter().all(|&f| f & !b != 0))
            .collect();
        let ok = exec::try_map(cfg.parallelism, &candidates, |&b| oracle.consistent(full & !b))?;
        found.extend(candidates.iter().zip(ok).filter(|(_, ok)| *ok).map(|(&b, _)| b));
    }
    Ok(found.into_iter().map(|b| oracle.signature_of(b)).collect())
}

/// Classical models of `K ⊟na B` over `sig \ B`, by repeated solving with
/// blocking clauses.
fn projected_models(kb: &KnowledgeBase, b: &Signature, sig: &Signature, cfg: &Config) -> Result<Vec<Assignment>> {
    let enc = build_renamed_encoding(kb, b, ForgetOp::Na)?;
    let kept = sig.difference(b);
    let mut formulas = enc.renamed_formulas;
    for a in kept.iter() {
        // Registers atoms that no formula constrains.
        formulas.push(Formula::or(Formula::atom(a), Formula::not(Formula::atom(a))));
    }
    let mut out = Vec::new();
    while let Some(w) = is_satisfiable_with(&formulas, &cfg.limits.sat)?.witness().cloned() {
        let model: Assignment = kept.iter().map(|a| (a.clone(), w.get(a).unwrap_or(false))).collect();
        formulas.push(Formula::disjunction(model.iter().map(|(a, v)| {
            if v {
                Formula::not(Formula::atom(a))
            } else {
                Formula::atom(a)
            }
        })));
        out.push(model);
    }
    Ok(out)
}

/// Minimal models over `sig ⊇ At(K)`: a `3^n` scan up to the scan cap, the
/// layered B-set search with classical model listing beyond it.
pub fn minimal_models3(kb: &KnowledgeBase, sig: &Signature, cfg: &Config) -> Result<Vec<ThreeValuedInterpretation>> {
    require_domain(kb, sig)?;
    if sig.len() <= cfg.limits.max_lp_scan_atoms {
        return minimal_models3_scan(kb, sig, cfg);
    }
    let mut out = Vec::new();
    for b in minimal_b_sets_layered(kb, cfg)? {
        for w in projected_models(kb, &b, sig, cfg)? {
            let mut v: ThreeValuedInterpretation = w
                .iter()
                .map(|(a, x)| (a.clone(), if x { TruthValue3::T } else { TruthValue3::F }))
                .collect();
            for a in b.iter() {
                v.insert(a.clone(), TruthValue3::B);
            }
            out.push(v);
        }
    }
    sort_models(&mut out);
    Ok(out)
}

/// `K ⊢3 goal`: every minimal model over `At(K) ∪ At(goal)` satisfies the
/// goal. Beyond the scan cap each minimal B-set is checked as the classical
/// entailment `K ⊟na B ⊨ goal ⊟na B`.
pub fn infer_lp(kb: &KnowledgeBase, goal: &Formula, cfg: &Config) -> Result<bool> {
    let sig = kb.atoms().union(&goal.atoms());
    if sig.len() <= cfg.limits.max_lp_scan_atoms {
        for v in minimal_models3_scan(kb, &sig, cfg)? {
            if !satisfies3(&v, goal)? {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    for b in minimal_b_sets_layered(kb, cfg)? {
        let projected_goal = forget_formula(goal, &b, ForgetOp::Na, cfg)?;
        if !forgotten_entails(kb, &b, ForgetOp::Na, &projected_goal, cfg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The classical part of `v`: its restriction to atoms valued `T` or `F`.
pub fn classical_projection(v: &ThreeValuedInterpretation) -> Assignment {
    v.iter()
        .filter(|(_, x)| *x != TruthValue3::B)
        .map(|(a, x)| (a.clone(), x == TruthValue3::T))
        .collect()
}

/// Whether `v ⊨3 f` agrees with `ω_v ⊨ f ⊟na B(v)`.
pub fn crosscheck_projection(v: &ThreeValuedInterpretation, f: &Formula, cfg: &Config) -> Result<bool> {
    let three = satisfies3(v, f)?;
    let forgotten = forget_formula(f, &v.b_set(), ForgetOp::Na, cfg)?;
    let two = evaluate2(&classical_projection(v), &forgotten)?;
    Ok(three == two)
}

/// `{ B(v) : v minimal model of K }`.
pub fn minimal_b_sets(kb: &KnowledgeBase, cfg: &Config) -> Result<Family> {
    let sig = kb.atoms();
    if sig.len() <= cfg.limits.max_lp_scan_atoms {
        Ok(minimal_models3_scan(kb, &sig, cfg)?.iter().map(|v| v.b_set()).collect())
    } else {
        minimal_b_sets_layered(kb, cfg)
    }
}

/// Explanation attached to a comparison whose B-sets are not all minimal
/// inconsistent subsignatures.
pub const B_SET_DISCREPANCY: &str = "minimal LP B-sets are not all minimal inconsistent subsignatures \
(the literal statement \"v^-1(B) in MISig\" fails); they coincide with the complements of the \
maximal consistent subsignatures under occurrence-wise forgetting";

/// Minimal B-sets against both candidate characterisations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BSetComparison {
    pub b_sets: Family,
    pub misig: Family,
    pub mcsig_complements: Family,
    pub misig_hitting_sets: Family,
}

impl BSetComparison {
    /// Every minimal B-set is a minimal inconsistent subsignature.
    pub fn literal_statement_holds(&self) -> bool {
        self.b_sets.is_subset(&self.misig)
    }

    pub fn matches_complements(&self) -> bool {
        self.b_sets == self.mcsig_complements
    }

    pub fn matches_hitting_sets(&self) -> bool {
        self.b_sets == self.misig_hitting_sets
    }

    pub fn discrepancy(&self) -> Option<&'static str> {
        (!self.literal_statement_holds()).then_some(B_SET_DISCREPANCY)
    }
}

pub fn compare_b_sets(kb: &KnowledgeBase, cfg: &Config) -> Result<BSetComparison> {
    let report = analyze(kb, ForgetOp::Na, cfg)?;
    let atoms = kb.atoms();
    Ok(BSetComparison {
        b_sets: minimal_b_sets(kb, cfg)?,
        mcsig_complements: report.mcsig.iter().map(|s| atoms.difference(s)).collect(),
        misig_hitting_sets: minimal_hitting_sets(&report.misig),
        misig: report.misig,
    })
}

/// `K ⊢3 goal` next to inevitable consequence under occurrence-wise
/// forgetting, and next to the variant that also forgets the discarded atoms
/// in the goal: `K|S ⊨ goal ⊟na (At(K) \ S)` for every maximal consistent `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InferenceComparison {
    pub lp: bool,
    pub na_inevitable: bool,
    pub goal_projected: bool,
}

impl InferenceComparison {
    pub fn agree(&self) -> bool {
        self.lp == self.na_inevitable
    }
}

pub fn compare_inference(kb: &KnowledgeBase, goal: &Formula, cfg: &Config) -> Result<InferenceComparison> {
    let atoms = kb.atoms();
    let mcsig = analyze(kb, ForgetOp::Na, cfg)?.mcsig;
    let mut na_inevitable = true;
    let mut goal_projected = true;
    for s in &mcsig {
        let forget = atoms.difference(s);
        na_inevitable &= forgotten_entails(kb, &forget, ForgetOp::Na, goal, cfg)?;
        let projected_goal = forget_formula(goal, &forget, ForgetOp::Na, cfg)?;
        goal_projected &= forgotten_entails(kb, &forget, ForgetOp::Na, &projected_goal, cfg)?;
    }
    Ok(InferenceComparison {
        lp: infer_lp(kb, goal, cfg)?,
        na_inevitable,
        goal_projected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::kb::display_family;
    use crate::sat::entails;

    use TruthValue3::{B, F, T};

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn kb(items: &[&str]) -> KnowledgeBase {
        KnowledgeBase::parse_all(items).unwrap()
    }

    fn interp(pairs: &[(&str, TruthValue3)]) -> ThreeValuedInterpretation {
        pairs.iter().map(|(a, v)| (Atom::new(a).unwrap(), *v)).collect()
    }

    #[test]
    fn truth_tables() {
        // (x, y, x & y, x | y)
        let rows = [
            (T, T, T, T),
            (T, B, B, T),
            (T, F, F, T),
            (B, T, B, T),
            (B, B, B, B),
            (B, F, F, B),
            (F, T, F, T),
            (F, B, F, B),
            (F, F, F, F),
        ];
        for (x, y, and, or) in rows {
            let v = interp(&[("x", x), ("y", y)]);
            assert_eq!(evaluate3(&v, &p("x & y")).unwrap(), and);
            assert_eq!(evaluate3(&v, &p("x | y")).unwrap(), or);
            assert_eq!(evaluate3(&v, &p("x -> y")).unwrap(), x.negate().or(y));
        }
        assert_eq!([T.negate(), B.negate(), F.negate()], [F, B, T]);
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(evaluate3(&interp(&[("a", B)]), &p("a & !a")).unwrap(), B);
        assert_eq!(evaluate3(&interp(&[("a", T), ("b", F)]), &p("a | b")).unwrap(), T);
        assert_eq!(evaluate3(&interp(&[("a", F)]), &p("a & !a")).unwrap(), F);
        assert!(matches!(evaluate3(&interp(&[]), &p("a")), Err(Error::UnassignedAtom(_))));
        assert_eq!(evaluate3(&interp(&[]), &p("true -> false")).unwrap(), F);
    }

    #[test]
    fn satisfaction() {
        let k3 = kb(&["a & b & d", "!a | !b", "b & !c", "(c | !b) & d"]);
        let all_b = ThreeValuedInterpretation::constant(&k3.atoms(), B);
        assert!(satisfies3_kb(&all_b, &k3).unwrap());
        assert!(!satisfies3(&interp(&[("a", F)]), &p("a")).unwrap());
        assert!(satisfies3_kb(&interp(&[("a", B), ("c", T)]), &kb(&["a", "!a & c"])).unwrap());
    }

    #[test]
    fn minimal_models_examples() {
        let cfg = Config::default();
        let k1 = kb(&["a", "!a & c"]);
        let models = minimal_models3(&k1, &k1.atoms(), &cfg).unwrap();
        assert_eq!(models, [interp(&[("a", B), ("c", T)])]);

        let consistent = kb(&["a | b"]);
        let models = minimal_models3(&consistent, &consistent.atoms(), &cfg).unwrap();
        assert_eq!(models.len(), 3);
        assert!(models.iter().all(|v| v.b_set().is_empty()));

        let k3 = kb(&["a & b & d", "!a | !b", "b & !c", "(c | !b) & d"]);
        assert_eq!(display_family(&minimal_b_sets(&k3, &cfg).unwrap()), "[{b}, {a,c}]");
    }

    #[test]
    fn layered_search_matches_scan() {
        let k3 = kb(&["a & b & d", "!a | !b", "b & !c", "(c | !b) & d", "e | f"]);
        let scan = Config::default();
        let mut layered = Config::default();
        layered.limits.max_lp_scan_atoms = 2;
        let sig = k3.atoms().union(&Signature::from_names(&["g"]).unwrap());
        assert_eq!(
            minimal_models3(&k3, &sig, &scan).unwrap(),
            minimal_models3(&k3, &sig, &layered).unwrap()
        );
        assert_eq!(minimal_b_sets(&k3, &scan).unwrap(), minimal_b_sets(&k3, &layered).unwrap());
        for goal in ["c", "d", "a & d", "a & b", "e | f", "g", "b | c"] {
            assert_eq!(
                infer_lp(&k3, &p(goal), &scan).unwrap(),
                infer_lp(&k3, &p(goal), &layered).unwrap(),
                "{goal}"
            );
        }
    }

    #[test]
    fn lp_inference_examples() {
        let cfg = Config::default();
        assert!(infer_lp(&kb(&["a", "!a & c"]), &p("c"), &cfg).unwrap());
        assert!(!infer_lp(&kb(&["a | b"]), &p("a & b"), &cfg).unwrap());
        let consistent = kb(&["a -> b", "a"]);
        for goal in ["b", "a & b", "!b", "c"] {
            assert_eq!(
                infer_lp(&consistent, &p(goal), &cfg).unwrap(),
                entails(consistent.formulas(), &p(goal)).unwrap()
            );
        }
    }

    #[test]
    fn existential_variant_is_unintuitive() {
        // Some minimal model of {a | b} satisfies a & b, although not all do.
        let k = kb(&["a | b"]);
        let models = minimal_models3(&k, &k.atoms(), &Config::default()).unwrap();
        assert!(models.iter().any(|v| satisfies3(v, &p("a & b")).unwrap()));
        assert!(!models.iter().all(|v| satisfies3(v, &p("a & b")).unwrap()));
    }

    #[test]
    fn projection_identity() {
        let cfg = Config::default();
        let v = interp(&[("a", B), ("c", T)]);
        let w = classical_projection(&v);
        assert_eq!(w.len(), 1);
        assert_eq!(w.get(&Atom::new("c").unwrap()), Some(true));
        assert!(classical_projection(&interp(&[("a", B)])).is_empty());
        assert!(crosscheck_projection(&v, &p("!a & c"), &cfg).unwrap());
        assert!(crosscheck_projection(&interp(&[("a", T), ("c", F)]), &p("!a & c"), &cfg).unwrap());
        let all_b = interp(&[("a", B), ("b", B)]);
        assert!(crosscheck_projection(&all_b, &p("a & !a & (b -> !b)"), &cfg).unwrap());
    }

    #[test]
    fn b_set_discrepancy_on_k3() {
        let cfg = Config::default();
        let k3 = kb(&["a & b & d", "!a | !b", "b & !c", "(c | !b) & d"]);
        let cmp = compare_b_sets(&k3, &cfg).unwrap();
        assert!(cmp.matches_complements());
        assert!(cmp.matches_hitting_sets());
        assert!(!cmp.literal_statement_holds());
        assert_eq!(cmp.discrepancy(), Some(B_SET_DISCREPANCY));

        let k1 = kb(&["a", "!a & c"]);
        let cmp = compare_b_sets(&k1, &cfg).unwrap();
        assert_eq!(cmp.discrepancy(), None);
        assert_eq!(display_family(&compare_b_sets(&kb(&["a"]), &cfg).unwrap().b_sets), "[{}]");
    }

    #[test]
    fn goal_mentioning_b_atoms() {
        let cfg = Config::default();
        let k3 = kb(&["a & b & d", "!a | !b", "b & !c", "(c | !b) & d"]);
        let cmp = compare_inference(&k3, &p("a & d"), &cfg).unwrap();
        assert!(cmp.lp);
        assert!(!cmp.na_inevitable);
        assert!(cmp.goal_projected);
        let cmp = compare_inference(&k3, &p("d"), &cfg).unwrap();
        assert!(cmp.agree() && cmp.lp);
    }
}
