//! Cross-check of the propagation solver against a brute-force oracle:
//! enumerate *all* snapshot assignments over the closure slots, filter
//! them through the independent model checker, and demand that the
//! solver visits exactly that set, each table once, in lexicographic
//! slot order.

use swapdeon::models::{check_valuation, KripkeFrame, SwapKripkeModel};
use swapdeon::search::{enumerate_frames, valuation_search};
use swapdeon::{get_logic, LogicDescriptor};

fn chain_frame() -> KripkeFrame {
    // w0 -> w1 -> w1
    enumerate_frames(2)
        .find(|f| {
            f.world_count() == 2 && f.successors(0) == [1] && f.successors(1) == [1]
        })
        .unwrap()
}

fn brute_force(
    logic: &LogicDescriptor,
    frame: &KripkeFrame,
    closure: &swapdeon::ClosureSet,
) -> Vec<Vec<u8>> {
    let slots = closure.len() * frame.world_count();
    let size = logic.domain().len();
    let total = (size as u64).checked_pow(slots as u32).expect("oracle space too large");
    assert!(total <= 5_000_000, "oracle space too large: {total}");
    let mut out = Vec::new();
    let mut values = vec![0u8; slots];
    for mut code in 0..total {
        for v in values.iter_mut() {
            *v = (code % size as u64) as u8;
            code /= size as u64;
        }
        // the encoding above makes slot 0 the fastest digit; reverse for
        // lexicographic order on the slot vector
        let mut table = values.clone();
        table.reverse();
        let model = SwapKripkeModel::new(
            logic.clone(),
            frame.clone(),
            closure.clone(),
            table.clone(),
        );
        if check_valuation(&model).is_empty() {
            out.push(table);
        }
    }
    out.sort();
    out
}

fn solver_tables(
    logic: &LogicDescriptor,
    frame: &KripkeFrame,
    closure: &swapdeon::ClosureSet,
) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = Vec::new();
    let slots = closure.len() * frame.world_count();
    valuation_search(logic, frame, closure, None, |table| {
        let mut row = Vec::with_capacity(slots);
        for f in 0..closure.len() {
            for w in 0..frame.world_count() {
                row.push(table.value(f, w) as u8);
            }
        }
        out.push(row);
        true
    })
    .unwrap();
    out
}

fn cross_check(logic: &LogicDescriptor, frame: &KripkeFrame, targets: &[&str]) {
    let targets: Vec<swapdeon::Formula> =
        targets.iter().map(|t| logic.parse(t).unwrap()).collect();
    let closure = logic.closure(&targets, 64).unwrap();
    let got = solver_tables(logic, frame, &closure);
    // visited in lexicographic order, no duplicates
    let mut sorted = got.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), got.len(), "{}: duplicate visit", logic.display_name());
    assert_eq!(sorted, got, "{}: enumeration out of lexicographic order", logic.display_name());
    let want = brute_force(logic, frame, &closure);
    assert_eq!(
        got.len(),
        want.len(),
        "{}: solver found {} tables, oracle {}",
        logic.display_name(),
        got.len(),
        want.len()
    );
    assert_eq!(got, want, "{}: table sets differ", logic.display_name());
}

#[test]
fn dmbc_modal_two_worlds() {
    let logic = get_logic("dmbc", None).unwrap();
    cross_check(&logic, &chain_frame(), &["O(p -> q)"]);
}

#[test]
fn dmbc_obligation_of_negation() {
    let logic = get_logic("dmbc", None).unwrap();
    cross_check(&logic, &chain_frame(), &["O ~p", "@p"]);
}

#[test]
fn dbc_and_dci_negation_variants() {
    let frame = chain_frame();
    cross_check(&get_logic("dbc", None).unwrap(), &frame, &["~~p", "O p"]);
    cross_check(&get_logic("dci", None).unwrap(), &frame, &["~@p", "O p"]);
}

#[test]
fn dmbccl_restriction_single_world() {
    let logic = get_logic("dmbccl", None).unwrap();
    let frame = enumerate_frames(1).next().unwrap();
    cross_check(&logic, &frame, &["O @p"]);
}

#[test]
fn dcila_propagation_single_world() {
    let logic = get_logic("dcila", None).unwrap();
    let frame = enumerate_frames(1).next().unwrap();
    cross_check(&logic, &frame, &["@(p & q)"]);
}

#[test]
fn c1d_obligation_classicality_two_worlds() {
    let logic = get_logic("c1d", None).unwrap();
    cross_check(&logic, &chain_frame(), &["O p"]);
}

#[test]
fn cn2_forcing_chain_single_world() {
    let logic = get_logic("cnd", Some(2)).unwrap();
    let frame = enumerate_frames(1).next().unwrap();
    cross_check(&logic, &frame, &["p^2"]);
}
