//! Inevitable and weak consequence over projections onto maximal consistent
//! subsignatures, and over maximal consistent subsets.

use std::fmt;
use std::str::FromStr;

use crate::config::Config;
use crate::error::Result;
use crate::exec;
use crate::forget::{forgotten_entails, ForgetOp};
use crate::formula::Formula;
use crate::kb::KnowledgeBase;
use crate::sat::{entails_with, is_satisfiable_with};
use crate::subsig::{enumerate_mcs, enumerate_mcsig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Entailed by every member.
    Inevitable,
    /// Entailed by some member.
    Weak,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Inevitable => "inevitable",
            Mode::Weak => "weak",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "i" | "inevitable" => Ok(Mode::Inevitable),
            "w" | "weak" => Ok(Mode::Weak),
            other => Err(format!("unknown mode `{other}` (expected i or w)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Signature { mode: Mode, op: ForgetOp },
    Subset { mode: Mode },
}

impl Relation {
    pub fn mode(self) -> Mode {
        match self {
            Relation::Signature { mode, .. } | Relation::Subset { mode } => mode,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Signature { mode, op } => write!(f, "sig-{}/{}", mode.name(), op),
            Relation::Subset { mode } => write!(f, "subset-{}", mode.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InferenceQuery {
    pub kb: KnowledgeBase,
    pub goal: Formula,
    pub relation: Relation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InferenceAnswer {
    pub entailed: bool,
    /// The quantifier ranged over an empty family.
    pub vacuous: bool,
}

fn quantify(mode: Mode, results: &[bool]) -> InferenceAnswer {
    let entailed = match mode {
        Mode::Inevitable => results.iter().all(|&r| r),
        Mode::Weak => results.iter().any(|&r| r),
    };
    InferenceAnswer {
        entailed,
        vacuous: results.is_empty(),
    }
}

pub fn infer(q: &InferenceQuery, cfg: &Config) -> Result<InferenceAnswer> {
    let results = match q.relation {
        Relation::Signature { op, .. } => {
            let atoms = q.kb.atoms();
            let mcsig: Vec<_> = enumerate_mcsig(&q.kb, op, cfg)?.into_iter().collect();
            exec::try_map(cfg.parallelism, &mcsig, |s| {
                forgotten_entails(&q.kb, &atoms.difference(s), op, &q.goal, cfg)
            })?
        }
        Relation::Subset { .. } => {
            let mcs = enumerate_mcs(&q.kb, cfg)?;
            exec::try_map(cfg.parallelism, &mcs, |m| {
                entails_with(m.formulas(), &q.goal, &cfg.limits.sat)
            })?
        }
    };
    Ok(quantify(q.relation.mode(), &results))
}

/// Shorthand for [`infer`] returning only the verdict.
pub fn entails_under(kb: &KnowledgeBase, goal: &Formula, relation: Relation, cfg: &Config) -> Result<bool> {
    let q = InferenceQuery {
        kb: kb.clone(),
        goal: goal.clone(),
        relation,
    };
    Ok(infer(&q, cfg)?.entailed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Postulate {
    Reflexivity,
    LeftLogicalEquivalence,
    RightWeakening,
    Cut,
    CautiousMonotonicity,
}

impl Postulate {
    pub const ALL: [Postulate; 5] = [
        Postulate::Reflexivity,
        Postulate::LeftLogicalEquivalence,
        Postulate::RightWeakening,
        Postulate::Cut,
        Postulate::CautiousMonotonicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Postulate::Reflexivity => "reflexivity",
            Postulate::LeftLogicalEquivalence => "left-logical-equivalence",
            Postulate::RightWeakening => "right-weakening",
            Postulate::Cut => "cut",
            Postulate::CautiousMonotonicity => "cautious-monotonicity",
        }
    }
}

/// One sampled instance `(K, α, β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostulateInstance {
    pub kb: KnowledgeBase,
    pub alpha: Formula,
    pub beta: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub instance: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostulateOutcome {
    pub postulate: Postulate,
    /// Instances evaluated.
    pub checked: usize,
    /// Instances whose premises held, so the conclusion was actually tested.
    pub premise_held: usize,
    pub violations: Vec<Violation>,
}

impl PostulateOutcome {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Outcome of one postulate on one instance: `None` if the premise failed,
/// otherwise whether the conclusion held plus a description.
fn check_one(
    postulate: Postulate,
    inst: &PostulateInstance,
    relation: Relation,
    cfg: &Config,
) -> Result<Option<(bool, String)>> {
    let sat = &cfg.limits.sat;
    let rel = |kb: &KnowledgeBase, goal: &Formula| entails_under(kb, goal, relation, cfg);
    let PostulateInstance { kb, alpha, beta } = inst;
    Ok(match postulate {
        Postulate::Reflexivity => {
            if !is_satisfiable_with(std::slice::from_ref(alpha), sat)?.is_sat() {
                return Ok(None);
            }
            let single = KnowledgeBase::from_formulas([alpha.clone()]);
            Some((rel(&single, alpha)?, format!("{{{alpha}}} ~ {alpha}")))
        }
        Postulate::LeftLogicalEquivalence => {
            if !is_satisfiable_with(kb.formulas(), sat)?.is_sat() || !rel(kb, alpha)? {
                return Ok(None);
            }
            let conj = KnowledgeBase::from_formulas([Formula::conjunction(kb.iter().cloned())]);
            Some((rel(&conj, alpha)?, format!("{kb} ~ {alpha} but {conj} does not")))
        }
        Postulate::RightWeakening => {
            let weaker = if entails_with(std::slice::from_ref(alpha), beta, sat)? {
                beta.clone()
            } else {
                Formula::or(alpha.clone(), beta.clone())
            };
            if !rel(kb, alpha)? {
                return Ok(None);
            }
            Some((rel(kb, &weaker)?, format!("{kb} ~ {alpha} but not {weaker}")))
        }
        Postulate::Cut => {
            let extended = kb.with(alpha.clone());
            if !rel(kb, alpha)? || !rel(&extended, beta)? {
                return Ok(None);
            }
            Some((rel(kb, beta)?, format!("{kb} ~ {alpha}, {extended} ~ {beta}, but {kb} does not infer {beta}")))
        }
        Postulate::CautiousMonotonicity => {
            if !rel(kb, alpha)? || !rel(kb, beta)? {
                return Ok(None);
            }
            let extended = kb.with(alpha.clone());
            Some((rel(&extended, beta)?, format!("{kb} ~ {alpha}, {kb} ~ {beta}, but {extended} does not infer {beta}")))
        }
    })
}

/// Evaluates every postulate on every instance. Reflexivity and left
/// logical equivalence are only tested under their consistency conditions.
pub fn check_postulates(
    sample: &[PostulateInstance],
    relation: Relation,
    cfg: &Config,
) -> Result<Vec<PostulateOutcome>> {
    Postulate::ALL
        .iter()
        .map(|&postulate| {
            let results = exec::try_map(cfg.parallelism, sample, |inst| check_one(postulate, inst, relation, cfg))?;
            let mut outcome = PostulateOutcome {
                postulate,
                checked: sample.len(),
                premise_held: 0,
                violations: Vec::new(),
            };
            for (i, r) in results.into_iter().enumerate() {
                if let Some((held, detail)) = r {
                    outcome.premise_held += 1;
                    if !held {
                        outcome.violations.push(Violation { instance: i, detail });
                    }
                }
            }
            Ok(outcome)
        })
        .collect()
}
