//! Inconsistency-tolerant reasoning by forgetting parts of the signature.
//!
//! An inconsistent knowledge base is repaired by forgetting atoms instead of
//! discarding formulas. The crate provides
//!
//! * a propositional formula language with parser, normal forms and a DPLL
//!   solver ([`formula`], [`kb`], [`sat`]);
//! * variable elimination and occurrence-wise forgetting, projection, and
//!   renamed encodings that decide projected consistency with one solver call
//!   ([`forget`]);
//! * minimal inconsistent / maximal consistent subsignatures, free atoms and
//!   hitting-set duality ([`subsig`]);
//! * inevitable and weak inference over projected knowledge bases, and the
//!   subset-based relations for comparison ([`inference`]);
//! * signature-based inconsistency measures ([`measures`]);
//! * Priest's three-valued logic LP and its link to occurrence-wise
//!   forgetting ([`lp`]).
//!
//! ```
//! use sigforget::{analyze, parse_kb, Config, ForgetOp};
//!
//! let kb = parse_kb("a & b & d\n!a | !b\nb & !c\n(c | !b) & d\n").unwrap();
//! let report = analyze(&kb, ForgetOp::Na, &Config::default()).unwrap();
//! assert_eq!(sigforget::display_family(&report.misig), "[{a,b}, {b,c}]");
//! ```

pub mod config;
pub mod error;
pub mod exec;
pub mod forget;
pub mod formula;
pub mod inference;
pub mod kb;
pub mod lp;
pub mod measures;
pub mod random;
pub mod sat;
pub mod subsig;

pub use config::{Config, Limits, Parallelism, Strategy};
pub use error::{Error, Result};
pub use forget::{
    build_renamed_encoding, forget_formula, forget_kb, forget_na_cnf_fast, forgotten_entails,
    is_consistent_subsignature, project, ForgetOp, RenamedEncoding,
};
pub use formula::{parse_formula, Atom, Formula};
pub use inference::{check_postulates, infer, InferenceAnswer, InferenceQuery, Mode, Relation};
pub use kb::{display_family, parse_kb, Family, KnowledgeBase, Signature};
pub use lp::{infer_lp, minimal_models3, ThreeValuedInterpretation, TruthValue3};
pub use measures::{measure, measure_subset_baselines, MeasureResult, SigMeasure, SubsetMeasure};
pub use sat::{entails, equivalent, is_satisfiable, Assignment, SatResult};
pub use subsig::{analyze, duality_check, mckb, minimal_hitting_sets, SubsigReport};
