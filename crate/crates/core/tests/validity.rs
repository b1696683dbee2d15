//! Bounded-search reproductions of the characteristic validities and
//! countermodels of each logic.

use swapdeon::models::{check_valuation, holds, truth_at};
use swapdeon::search::{check_validity_bounded, find_countermodel, SearchBounds, Verdict};
use swapdeon::{get_logic, Formula, LogicDescriptor, RestrictionId};

fn bounds(max_worlds: usize) -> SearchBounds {
    SearchBounds { max_worlds, time_budget: None, ..Default::default() }
}

fn assert_valid(logic: &LogicDescriptor, text: &str, max_worlds: usize) {
    let f = logic.parse(text).unwrap();
    let verdict = check_validity_bounded(logic, &f, &bounds(max_worlds)).unwrap();
    assert!(
        !verdict.is_countermodel(),
        "{} unexpectedly has a countermodel for {}",
        logic.display_name(),
        text
    );
}

fn assert_countermodel(logic: &LogicDescriptor, premises: &[&str], conclusion: &str, max_worlds: usize) -> (swapdeon::SwapKripkeModel, String) {
    let premises: Vec<Formula> = premises.iter().map(|t| logic.parse(t).unwrap()).collect();
    let conclusion_f = logic.parse(conclusion).unwrap();
    match find_countermodel(logic, &premises, &conclusion_f, &bounds(max_worlds)).unwrap() {
        Verdict::Countermodel { model, world } => {
            assert!(check_valuation(&model).is_empty(), "countermodel fails checking");
            assert!(holds(&model, &world, &premises).unwrap());
            assert!(!truth_at(&model, &world, &conclusion_f).unwrap());
            (model, world)
        }
        v => panic!(
            "{}: expected countermodel for {:?} |- {}, got {:?}",
            logic.display_name(),
            premises,
            conclusion,
            v
        ),
    }
}

/// Conflicting obligations do not explode in any of the non-strict
/// systems, certified by one-world countermodels.
#[test]
fn deontic_paraconsistency_everywhere() {
    for logic in swapdeon::registered_logics(&[2, 3]) {
        if logic.strict() {
            // designated O p and O ~p force p = T and ~p = T at every
            // successor, which no snapshot satisfies: the premises are
            // unsatisfiable in strict models, so no countermodel exists
            let premises = [logic.parse("O p").unwrap(), logic.parse("O ~p").unwrap()];
            let conclusion = logic.parse("O q").unwrap();
            let verdict =
                find_countermodel(&logic, &premises, &conclusion, &bounds(1)).unwrap();
            assert!(!verdict.is_countermodel());
            continue;
        }
        assert_countermodel(&logic, &["O p", "O ~p"], "O q", 1);
    }
}

/// The obligation-consistency connective restores deontic explosion:
/// both partial premise sets stay non-explosive while the full triple
/// entails any obligation.
#[test]
fn ldi_triple() {
    for name in ["dmbc", "dmbcciw", "dmbcci", "dbc", "dci", "dmbccl", "dcila"] {
        let logic = get_logic(name, None).unwrap();
        assert_countermodel(&logic, &["O @p", "O p"], "O q", 2);
        assert_countermodel(&logic, &["O @p", "O ~p"], "O q", 2);
        let premises = [
            logic.parse("O @p").unwrap(),
            logic.parse("O p").unwrap(),
            logic.parse("O ~p").unwrap(),
        ];
        let conclusion = logic.parse("O q").unwrap();
        let verdict = find_countermodel(&logic, &premises, &conclusion, &bounds(2)).unwrap();
        assert!(!verdict.is_countermodel(), "{name}: deontic explosion failed");
    }
}

/// The classicality-propagation-to-obligations axiom needs its dedicated
/// restriction: without it the base-level system has the documented
/// counterexample shape, with it the axiom holds up to three worlds.
#[test]
fn obligation_classicality_reproduction() {
    let c1d = get_logic("c1d", None).unwrap();
    assert_valid(&c1d, "p^1 -> (O p)^1", 3);

    let weakened = c1d.without_restriction(RestrictionId::CaObl).unwrap();
    let (model, world) = assert_countermodel(&weakened, &[], "p^1 -> (O p)^1", 3);
    // the offending world designates the argument's consistency, the
    // obligation, and its negation all at once
    for text in ["p^1", "O p", "~O p"] {
        let f = weakened.parse(text).unwrap();
        assert!(truth_at(&model, &world, &f).unwrap(), "{text} not designated");
    }
}

/// Level 2 of the hierarchy: the deontic axiom in its level-correct
/// strong-negation form needs the forcing restrictions; the plain
/// paraconsistent-negation form needs strictness.
#[test]
fn hierarchy_deontic_axiom_reproductions() {
    let cnd2 = get_logic("cnd", Some(2)).unwrap();
    // (a) plain negation form
    assert_countermodel(&cnd2, &[], "O p -> ~O ~p", 3);
    let strict2 = get_logic("cnd-strict", Some(2)).unwrap();
    assert_valid(&strict2, "O p -> ~O ~p", 3);
    // (b) strong-negation form
    assert_valid(&cnd2, "O p -> snotn(O snotn(p))", 3);
    let unforced = cnd2.without_restriction(RestrictionId::CnRest).unwrap();
    assert_countermodel(&unforced, &[], "O p -> snotn(O snotn(p))", 3);
}

/// A sample of each logic's own axioms, searched at the default bound.
/// The full schema-by-schema sweep runs in the acceptance suite.
#[test]
fn axiom_validity_sample() {
    let cases: Vec<(&str, Option<u32>, &str)> = vec![
        ("dmbc", None, "@p -> (p -> (~p -> q))"),
        ("dmbc", None, "O(p -> q) -> (O p -> O q)"),
        ("dmbc", None, "O bot(p) -> bot(p)"),
        ("dmbcciw", None, "@p | (p & ~p)"),
        ("dmbcci", None, "~@p -> (p & ~p)"),
        ("dbc", None, "~~p -> p"),
        ("dci", None, "~@p -> (p & ~p)"),
        ("dmbccl", None, "~(p & ~p) -> @p"),
        ("dcila", None, "(@p & @q) -> @(p | q)"),
        ("c1d", None, "p^1 -> (p -> (~p -> q))"),
        ("c1d", None, "(p^1 & q^1) -> (p -> q)^1"),
        ("cnd", Some(2), "p^(2) -> (p -> (~p -> q))"),
        ("cnd", Some(2), "p^(2) -> (O p)^(2)"),
        ("cnd", Some(3), "(p^(3) & q^(3)) -> (((p -> q)^(3) & (p | q)^(3)) & (p & q)^(3))"),
        ("cnd-strict", Some(2), "O p -> ~O ~p"),
    ];
    for (name, n, text) in cases {
        let logic = get_logic(name, n).unwrap();
        assert_valid(&logic, text, 2);
    }
}

/// Consistency propagation over binaries separates DCila from DCi: the
/// former restricts valuations, the latter allows an inconsistent value
/// on a conjunction of classical inputs.
#[test]
fn consistency_propagation_separates_dci_from_dcila() {
    let text = "(@p & @q) -> @(p & q)";
    let dcila = get_logic("dcila", None).unwrap();
    assert_valid(&dcila, text, 2);
    let dci = get_logic("dci", None).unwrap();
    let (model, world) = assert_countermodel(&dci, &[], text, 2);
    // the witness gives both arguments classical values while the
    // conjunction lands on the inconsistent one
    let conj = dci.parse("p & q").unwrap();
    let v = model.value_of(&conj, &world).unwrap();
    assert!(dci.classify(v).inconsistent);
}

/// Non-theorems keep their countermodels even in the most restricted
/// systems.
#[test]
fn non_theorems_falsified() {
    for (name, n) in [("dmbc", None), ("dcila", None), ("c1d", None), ("cnd", Some(2))] {
        let logic = get_logic(name, n).unwrap();
        assert_countermodel(&logic, &[], "p -> q", 1);
        // explosion from a bare contradiction must fail in a
        // paraconsistent logic
        assert_countermodel(&logic, &["p", "~p"], "q", 1);
    }
}

/// Strict models still admit non-trivial deontic structure: an
/// obligation does not iterate for free, witnessed on a two-world cycle.
#[test]
fn strict_models_are_not_degenerate() {
    let strict2 = get_logic("cnd-strict", Some(2)).unwrap();
    let (model, world) = assert_countermodel(&strict2, &["O p"], "O O p", 2);
    // the witness has a successor whose own successors falsify p
    let op = strict2.parse("O p").unwrap();
    assert!(truth_at(&model, &world, &op).unwrap());
}

/// Verified premise-free derivations never admit bounded countermodels.
#[test]
fn checker_soundness_bridge() {
    use swapdeon::proofs::{identity_derivation, verify_derivation, Justification, Step};
    let logic = get_logic("dmbc", None).unwrap();
    let mut derivation = identity_derivation(logic.clone(), &Formula::atom("p"));
    let last = derivation.steps.last().unwrap().formula.clone();
    derivation.steps.push(Step {
        formula: Formula::obl(last),
        justification: Justification::Nec { from: 5 },
    });
    verify_derivation(&derivation).unwrap();
    for step in &derivation.steps {
        let verdict = check_validity_bounded(&logic, &step.formula, &bounds(2)).unwrap();
        assert!(!verdict.is_countermodel(), "step {} falsified", step.formula.render());
    }
}
