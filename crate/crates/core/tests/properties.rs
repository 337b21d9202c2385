mod common;

use proptest::prelude::*;

use common::*;
use sigforget::formula::{count_occurrences, simplify_constants, substitute_uniform, to_cnf};
use sigforget::forget::{forget_formula, forget_kb, forget_na_cnf_fast};
use sigforget::inference::{entails_under, Mode, Relation};
use sigforget::lp::{crosscheck_projection, infer_lp, minimal_b_sets, ThreeValuedInterpretation, TruthValue3};
use sigforget::measures::{measure_all, measure, SigMeasure};
use sigforget::sat::{enumerate_models, entails, equivalent, is_satisfiable};
use sigforget::subsig::{analyze, enumerate_misig, minimal_hitting_sets};
use sigforget::{
    parse_formula, Atom, Config, ForgetOp, Formula, KnowledgeBase, Parallelism, Signature, Strategy as Search,
};

const ATOMS: &[&str] = &["a", "b", "c", "d", "e", "f"];

fn leaf(constants: bool) -> BoxedStrategy<Formula> {
    let atom = prop::sample::select(ATOMS).prop_map(|n| Formula::Atom(Atom::new(n).unwrap()));
    if constants {
        prop_oneof![
            8 => atom,
            1 => Just(Formula::Top),
            1 => Just(Formula::Bottom),
        ]
        .boxed()
    } else {
        atom.boxed()
    }
}

fn formula_with(constants: bool, leaves: u32) -> BoxedStrategy<Formula> {
    leaf(constants)
        .prop_recursive(4, leaves, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
                (inner.clone(), inner).prop_map(|(l, r)| Formula::implies(l, r)),
            ]
        })
        .boxed()
}

fn formula() -> BoxedStrategy<Formula> {
    formula_with(true, 8)
}

fn satisfiable_formula() -> BoxedStrategy<Formula> {
    formula_with(true, 5)
        .prop_filter("satisfiable on its own", |f| tt_satisfiable(std::slice::from_ref(f)))
        .boxed()
}

/// Up to five individually satisfiable members over at most six atoms.
fn knowledge_base() -> BoxedStrategy<KnowledgeBase> {
    prop::collection::vec(satisfiable_formula(), 1..=5)
        .prop_map(KnowledgeBase::from_formulas)
        .boxed()
}

fn op() -> impl Strategy<Value = ForgetOp> {
    prop::sample::select(ForgetOp::ALL.to_vec())
}

fn signature() -> impl Strategy<Value = Signature> {
    prop::sample::subsequence(ATOMS, 0..=ATOMS.len()).prop_map(|s| Signature::from_names(&s).unwrap())
}

fn cfg() -> Config {
    Config::sequential()
}

fn value3() -> impl Strategy<Value = TruthValue3> {
    prop::sample::select(TruthValue3::ALL.to_vec())
}

fn interpretation3() -> impl Strategy<Value = ThreeValuedInterpretation> {
    prop::collection::vec(value3(), ATOMS.len())
        .prop_map(|vs| ATOMS.iter().zip(vs).map(|(n, v)| (atom(n), v)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    // formula core

    #[test]
    fn render_parse_round_trip(f in formula()) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn uniform_substitution_leaves_other_atoms(f in formula(), r in formula()) {
        let a = atom("a");
        let r = substitute_uniform(&r, &a, &Formula::Top);
        let g = substitute_uniform(&f, &a, &r);
        for b in ATOMS.iter().skip(1).map(|n| atom(n)) {
            prop_assert_eq!(
                count_occurrences(&g, &b),
                count_occurrences(&f, &b) + count_occurrences(&f, &a) * count_occurrences(&r, &b)
            );
        }
    }

    #[test]
    fn cnf_is_equivalent(f in formula()) {
        let cnf = to_cnf(&f).unwrap();
        prop_assert!(equivalent(&cnf, &f).unwrap());
        prop_assert!(tt_equivalent(&cnf, &f));
    }

    #[test]
    fn simplification_is_equivalent_and_shrinks(f in formula()) {
        let g = simplify_constants(&f);
        prop_assert!(tt_equivalent(&f, &g));
        prop_assert!(g.size() <= f.size());
    }

    // sat engine

    #[test]
    fn witnesses_satisfy_their_inputs(fs in prop::collection::vec(formula(), 1..4)) {
        let result = is_satisfiable(&fs).unwrap();
        prop_assert_eq!(result.is_sat(), tt_satisfiable(&fs));
        if let Some(w) = result.witness() {
            for f in &fs {
                prop_assert!(w.satisfies(f).unwrap());
            }
        }
    }

    #[test]
    fn satisfiability_agrees_with_model_enumeration(fs in prop::collection::vec(formula(), 1..4)) {
        let sig = fs.iter().fold(Signature::empty(), |s, f| s.union(&f.atoms()));
        let models = enumerate_models(&fs, &sig, 1 << 10).unwrap();
        prop_assert_eq!(is_satisfiable(&fs).unwrap().is_sat(), !models.is_empty());
    }

    #[test]
    fn equivalence_is_mutual_entailment(f in formula(), g in formula()) {
        let both = entails(std::slice::from_ref(&f), &g).unwrap() && entails(std::slice::from_ref(&g), &f).unwrap();
        prop_assert_eq!(equivalent(&f, &g).unwrap(), both);
    }

    // forgetting

    #[test]
    fn forgetting_operator_axioms(k in knowledge_base(), s in signature(), op in op()) {
        let c = cfg();
        let forgotten = forget_kb(&k, &s, op, &c).unwrap();
        prop_assert!(forgotten.atoms().is_subset(&k.atoms()));
        prop_assert!(forgotten.atoms().intersection(&s).is_empty());
        prop_assert_eq!(&forget_kb(&k, &Signature::empty(), op, &c).unwrap(), &k);
        if tt_satisfiable(k.formulas()) {
            prop_assert!(tt_satisfiable(forgotten.formulas()));
        }
    }

    #[test]
    fn forgetting_commutes(k in knowledge_base(), op in op(), x in prop::sample::select(ATOMS), y in prop::sample::select(ATOMS)) {
        let c = cfg();
        let one = |n: &str| Signature::from_names(&[n]).unwrap();
        let xy = forget_kb(&forget_kb(&k, &one(x), op, &c).unwrap(), &one(y), op, &c).unwrap();
        let yx = forget_kb(&forget_kb(&k, &one(y), op, &c).unwrap(), &one(x), op, &c).unwrap();
        prop_assert!(tt_elementwise(xy.formulas(), yx.formulas()));
    }

    #[test]
    fn unsatisfiable_stays_unsatisfiable_under_ve(f in formula_with(true, 4), h in formula_with(true, 4), s in signature()) {
        let f = Formula::and(Formula::and(f.clone(), h), Formula::not(f));
        let g = forget_formula(&f, &s, ForgetOp::Ve, &cfg()).unwrap();
        prop_assert!(!tt_satisfiable(&[g]));
    }

    #[test]
    fn forgetting_every_occurrence_is_trivial(f in formula_with(false, 8)) {
        let g = forget_formula(&f, &f.atoms(), ForgetOp::Na, &cfg()).unwrap();
        prop_assert!(tt_equivalent(&g, &Formula::Top));
    }

    #[test]
    fn fast_path_matches_definition(f in formula(), s in signature()) {
        let fast = forget_na_cnf_fast(&f, &s, &cfg()).unwrap();
        let names: Names = s.names().into_iter().collect();
        prop_assert!(tt_equivalent(&fast, &common::forget_formula(&f, &names, Op::Na)));
    }

    #[test]
    fn forgetting_matches_expansion(f in formula(), s in signature(), op in op()) {
        let ours = forget_formula(&f, &s, op, &cfg()).unwrap();
        let names: Names = s.names().into_iter().collect();
        prop_assert!(tt_equivalent(&ours, &common::forget_formula(&f, &names, op.into())));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // subsignatures

    #[test]
    fn families_meet_their_definitions(k in knowledge_base(), op in op()) {
        let r = analyze(&k, op, &cfg()).unwrap();
        let (misig, mcsig) = signature_families(k.formulas(), op.into());
        prop_assert_eq!(to_name_family(&r.misig), misig.clone());
        prop_assert_eq!(to_name_family(&r.mcsig), mcsig.clone());
        let singletons: NameFamily = misig.iter().filter(|m| m.len() == 1).cloned().collect();
        prop_assert_eq!(to_name_family(&r.scsig), singletons);
        let universe = atoms_all(k.formulas());
        let covered: Names = misig.iter().flatten().cloned().collect();
        let free: Names = universe.difference(&covered).cloned().collect();
        prop_assert_eq!(to_names(&r.free_atoms), free);
    }

    #[test]
    fn strategies_agree(k in knowledge_base(), op in op()) {
        let brute = analyze(&k, op, &cfg().with_strategy(Search::BruteForce)).unwrap();
        let duality = analyze(&k, op, &cfg().with_strategy(Search::Duality)).unwrap();
        prop_assert_eq!(brute.misig, duality.misig);
        prop_assert_eq!(brute.mcsig, duality.mcsig);
    }

    #[test]
    fn parallel_and_sequential_agree(k in knowledge_base(), op in op()) {
        let seq = analyze(&k, op, &cfg().with_strategy(Search::BruteForce)).unwrap();
        let par = analyze(&k, op, &Config::default().with_strategy(Search::BruteForce).with_parallelism(Parallelism::Parallel)).unwrap();
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn hitting_set_duality(k in knowledge_base(), op in op()) {
        let r = analyze(&k, op, &cfg()).unwrap();
        let universe = atoms_all(k.formulas());
        let from_misig = complements(&hitting_sets(&to_name_family(&r.misig), &universe), &universe);
        prop_assert_eq!(&from_misig, &to_name_family(&r.mcsig));
        let ours: NameFamily = complements(&to_name_family(&minimal_hitting_sets(&r.misig)), &universe);
        prop_assert_eq!(ours, from_misig);
        let back = hitting_sets(&complements(&to_name_family(&r.mcsig), &universe), &universe);
        prop_assert_eq!(back, to_name_family(&r.misig));
    }

    #[test]
    fn misig_members_are_minimal(k in knowledge_base(), op in op()) {
        for m in enumerate_misig(&k, op, &cfg()).unwrap() {
            let names = to_names(&m);
            prop_assert!(!projection_consistent(k.formulas(), &names, op.into()));
            for a in &names {
                let mut smaller = names.clone();
                smaller.remove(a);
                prop_assert!(projection_consistent(k.formulas(), &smaller, op.into()));
            }
        }
    }

    #[test]
    fn forgetting_never_adds_conflicts(k in knowledge_base(), s in signature(), op in op()) {
        let c = cfg();
        let before = enumerate_misig(&k, op, &c).unwrap();
        let after = enumerate_misig(&forget_kb(&k, &s, op, &c).unwrap(), op, &c).unwrap();
        prop_assert!(after.is_subset(&before));
    }

    // inference

    #[test]
    fn consistent_bases_reason_classically(k in knowledge_base(), goal in formula_with(true, 4), op in op()) {
        prop_assume!(tt_satisfiable(k.formulas()));
        let c = cfg();
        let classical = tt_entails(k.formulas(), &goal);
        for mode in [Mode::Inevitable, Mode::Weak] {
            prop_assert_eq!(entails_under(&k, &goal, Relation::Signature { mode, op }, &c).unwrap(), classical);
        }
    }

    #[test]
    fn inevitable_implies_weak(k in knowledge_base(), goal in formula_with(true, 4), op in op()) {
        let c = cfg();
        prop_assume!(!analyze(&k, op, &c).unwrap().mcsig.is_empty());
        let inevitable = entails_under(&k, &goal, Relation::Signature { mode: Mode::Inevitable, op }, &c).unwrap();
        let weak = entails_under(&k, &goal, Relation::Signature { mode: Mode::Weak, op }, &c).unwrap();
        prop_assert!(!inevitable || weak);
    }

    #[test]
    fn no_explosion(k in knowledge_base(), op in op()) {
        let c = cfg();
        prop_assume!(!analyze(&k, op, &c).unwrap().mcsig.is_empty());
        let relation = Relation::Signature { mode: Mode::Inevitable, op };
        prop_assert!(!entails_under(&k, &Formula::Bottom, relation, &c).unwrap());
    }

    // measures

    #[test]
    fn measures_vanish_exactly_on_consistent_bases(k in knowledge_base(), op in op()) {
        let consistent = tt_satisfiable(k.formulas());
        for m in measure_all(&k, op, &cfg()).unwrap() {
            let m = m.unwrap();
            prop_assert_eq!(m.value == 0.into(), consistent, "{}", m.name);
        }
    }

    #[test]
    fn measure_bounds(k in knowledge_base(), op in op()) {
        let c = cfg();
        let misig = measure(&k, SigMeasure::Misig, op, &c).unwrap().value;
        let weighted = measure(&k, SigMeasure::MisigC, op, &c).unwrap().value;
        let p = measure(&k, SigMeasure::P, op, &c).unwrap().value;
        prop_assert!(weighted <= misig);
        let r = analyze(&k, op, &c).unwrap();
        let bound = (k.atoms().len() - r.free_atoms.len()) as i64;
        prop_assert_eq!(p, bound.into());
    }

    // three-valued logic

    #[test]
    fn projection_identity(v in interpretation3(), f in formula()) {
        prop_assert!(crosscheck_projection(&v, &f, &cfg()).unwrap());
    }

    #[test]
    fn minimal_b_sets_are_mcsig_complements(k in knowledge_base()) {
        let c = cfg();
        let universe = atoms_all(k.formulas());
        let b_sets = to_name_family(&minimal_b_sets(&k, &c).unwrap());
        let reference: NameFamily = lp_minimal_models(k.formulas(), &universe).iter().map(b_set).collect();
        prop_assert_eq!(&b_sets, &reference);
        let r = analyze(&k, ForgetOp::Na, &c).unwrap();
        prop_assert_eq!(&b_sets, &complements(&to_name_family(&r.mcsig), &universe));
        prop_assert_eq!(&b_sets, &hitting_sets(&to_name_family(&r.misig), &universe));
    }

    #[test]
    fn three_valued_reasoning_is_classical_on_consistent_bases(k in knowledge_base(), goal in formula_with(true, 4)) {
        prop_assume!(tt_satisfiable(k.formulas()));
        prop_assert_eq!(infer_lp(&k, &goal, &cfg()).unwrap(), tt_entails(k.formulas(), &goal));
    }

    #[test]
    fn three_valued_reasoning_matches_reference(k in knowledge_base(), goal in formula_with(true, 4)) {
        prop_assert_eq!(infer_lp(&k, &goal, &cfg()).unwrap(), lp_entails(k.formulas(), &goal));
    }
}
