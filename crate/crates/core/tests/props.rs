//! Property tests: parser/printer round trips, closure invariants,
//! schema matching, and proof tamper detection.

use proptest::prelude::*;

use swapdeon::formula::{closure, parse, ClosureDeps, Formula, SugarContext};
use swapdeon::logics::{instantiate, match_axiom, MetaVar, Subst};
use swapdeon::proofs::{identity_derivation, verify_derivation, Justification, Step};

fn atom_name() -> impl Strategy<Value = String> {
    // a few fixed names plus arbitrary well-formed identifiers
    prop_oneof![
        Just("p".to_string()),
        Just("q".to_string()),
        Just("r".to_string()),
        "[a-z][a-zA-Z0-9_]{0,6}".prop_filter("reserved", |s| {
            !matches!(s.as_str(), "bot" | "snot" | "snotn")
        }),
    ]
}

fn formula_strategy(max_depth: u32, with_circ: bool) -> impl Strategy<Value = Formula> {
    let leaf = atom_name().prop_map(Formula::Atom);
    leaf.prop_recursive(max_depth, 64, 3, move |inner| {
        let unary = prop_oneof![
            inner.clone().prop_map(Formula::neg),
            inner.clone().prop_map(Formula::obl),
        ];
        let unary = if with_circ {
            prop_oneof![unary, inner.clone().prop_map(Formula::circ)].boxed()
        } else {
            unary.boxed()
        };
        prop_oneof![
            unary,
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::imp(l, r)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn parse_render_round_trip(f in formula_strategy(8, true)) {
        let text = f.render();
        let back = parse(&text, SugarContext::sigma()).unwrap();
        prop_assert_eq!(&back, &f, "through {}", text);
        let full = f.render_full();
        let back = parse(&full, SugarContext::sigma()).unwrap();
        prop_assert_eq!(&back, &f, "through {}", full);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_contains_targets_and_is_idempotent(
        targets in proptest::collection::vec(formula_strategy(5, true), 1..4),
        deps_pick in 0usize..3,
    ) {
        let deps = [
            ClosureDeps::None,
            ClosureDeps::ContradictionPair,
            ClosureDeps::SupChain { n: 2 },
        ][deps_pick];
        let cs = closure(&targets, deps, 100_000).unwrap();
        for t in &targets {
            prop_assert!(cs.contains(t));
        }
        // children precede parents
        for i in 0..cs.len() {
            for child in cs.get(i).children() {
                prop_assert!(cs.index_of(child).unwrap() < i);
            }
        }
        let again = closure(cs.formulas(), deps, 100_000).unwrap();
        prop_assert_eq!(again.len(), cs.len());
    }

    #[test]
    fn match_reinstantiates_schema_instances(
        a in formula_strategy(3, true),
        b in formula_strategy(3, true),
        g in formula_strategy(3, true),
        logic_pick in 0usize..4,
        schema_pick in 0usize..32,
    ) {
        let logic = match logic_pick {
            0 => swapdeon::get_logic("dmbc", None).unwrap(),
            1 => swapdeon::get_logic("dcila", None).unwrap(),
            2 => swapdeon::get_logic("c1d", None).unwrap(),
            _ => swapdeon::get_logic("cnd", Some(2)).unwrap(),
        };
        // circ only exists in the full signature
        let sigma_only = a.uses_circ() || b.uses_circ() || g.uses_circ();
        prop_assume!(!sigma_only || logic_pick < 2);
        let schemas = logic.axiom_schemas();
        let schema = &schemas[schema_pick % schemas.len()];
        let mut subst = Subst::new();
        subst.insert(MetaVar::Alpha, a);
        subst.insert(MetaVar::Beta, b);
        subst.insert(MetaVar::Gamma, g);
        let inst = instantiate(schema, &subst).unwrap();
        // the matched schema may differ when the instance belongs to two
        // schemas; re-instantiation equality is the assertable property
        let (matched, found) = match_axiom(schemas, &inst).expect("instance must match");
        let again = instantiate(logic.schema(matched.as_str()).unwrap(), &found).unwrap();
        prop_assert_eq!(again, inst);
    }
}

// --- proof tampering ------------------------------------------------------

fn node_count(f: &Formula) -> usize {
    1 + f.children().map(node_count).sum::<usize>()
}

/// Rewrites the `target`-th node (preorder) to a different connective,
/// keeping the subtrees.
fn flip_connective(f: &Formula, target: usize, counter: &mut usize) -> Formula {
    let here = *counter;
    *counter += 1;
    if here == target {
        return match f.clone() {
            Formula::Atom(name) => Formula::neg(Formula::Atom(name)),
            Formula::Neg(x) => Formula::Obl(x),
            Formula::Circ(x) => Formula::Neg(x),
            Formula::Obl(x) => Formula::Neg(x),
            Formula::And(l, r) => Formula::Or(l, r),
            Formula::Or(l, r) => Formula::Imp(l, r),
            Formula::Imp(l, r) => Formula::And(l, r),
        };
    }
    match f {
        Formula::Atom(_) => f.clone(),
        Formula::Neg(x) => Formula::neg(flip_connective(x, target, counter)),
        Formula::Circ(x) => Formula::circ(flip_connective(x, target, counter)),
        Formula::Obl(x) => Formula::obl(flip_connective(x, target, counter)),
        Formula::And(l, r) => {
            let l = flip_connective(l, target, counter);
            let r = flip_connective(r, target, counter);
            Formula::and(l, r)
        }
        Formula::Or(l, r) => {
            let l = flip_connective(l, target, counter);
            let r = flip_connective(r, target, counter);
            Formula::or(l, r)
        }
        Formula::Imp(l, r) => {
            let l = flip_connective(l, target, counter);
            let r = flip_connective(r, target, counter);
            Formula::imp(l, r)
        }
    }
}

fn fixture_derivation() -> swapdeon::proofs::Derivation {
    let logic = swapdeon::get_logic("dmbc", None).unwrap();
    let mut d = identity_derivation(logic, &Formula::atom("p"));
    let last = d.steps.last().unwrap().formula.clone();
    d.steps.push(Step {
        formula: Formula::obl(last),
        justification: Justification::Nec { from: 5 },
    });
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn single_connective_tampering_is_rejected(step_pick in 0usize..64, node_pick in 0usize..64) {
        let mut d = fixture_derivation();
        prop_assert_eq!(verify_derivation(&d), Ok(()));
        let step = step_pick % d.steps.len();
        let nodes = node_count(&d.steps[step].formula);
        let target = node_pick % nodes;
        let mut counter = 0;
        let mutated = flip_connective(&d.steps[step].formula, target, &mut counter);
        prop_assert_ne!(&mutated, &d.steps[step].formula);
        d.steps[step].formula = mutated;
        prop_assert!(verify_derivation(&d).is_err());
    }
}
