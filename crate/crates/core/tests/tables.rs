//! Golden truth tables, transcribed cell for cell from the displayed
//! nondeterministic tables of the source systems.

use swapdeon::get_logic;

fn table(logic: &str, n: Option<u32>, op: &str) -> String {
    get_logic(logic, n).unwrap().truth_table(op).unwrap()
}

#[test]
fn dmbc_and() {
    assert_eq!(
        table("dmbc", None, "and"),
        "op: and\n\
         and | T | t | F\n\
         T | {T,t} | {T,t} | {F}\n\
         t | {T,t} | {T,t} | {F}\n\
         F | {F} | {F} | {F}\n"
    );
}

#[test]
fn dmbc_or() {
    assert_eq!(
        table("dmbc", None, "or"),
        "op: or\n\
         or | T | t | F\n\
         T | {T,t} | {T,t} | {T,t}\n\
         t | {T,t} | {T,t} | {T,t}\n\
         F | {T,t} | {T,t} | {F}\n"
    );
}

#[test]
fn dmbc_imp() {
    assert_eq!(
        table("dmbc", None, "imp"),
        "op: imp\n\
         imp | T | t | F\n\
         T | {T,t} | {T,t} | {F}\n\
         t | {T,t} | {T,t} | {F}\n\
         F | {T,t} | {T,t} | {T,t}\n"
    );
}

#[test]
fn dmbc_neg() {
    assert_eq!(
        table("dmbc", None, "neg"),
        "op: neg\n\
         T | {F}\n\
         t | {T,t}\n\
         F | {T,t}\n"
    );
}

#[test]
fn dmbc_circ() {
    assert_eq!(
        table("dmbc", None, "circ"),
        "op: circ\n\
         T | {T,t,F}\n\
         t | {F}\n\
         F | {T,t,F}\n"
    );
}

#[test]
fn dbc_strengthened_neg() {
    assert_eq!(
        table("dbc", None, "neg"),
        "op: neg\n\
         T | {F}\n\
         t | {T,t}\n\
         F | {T}\n"
    );
}

#[test]
fn dmbcciw_circ() {
    assert_eq!(
        table("dmbcciw", None, "circ"),
        "op: circ\n\
         T | {T,t}\n\
         t | {F}\n\
         F | {T,t}\n"
    );
}

#[test]
fn dmbcci_circ() {
    assert_eq!(
        table("dmbcci", None, "circ"),
        "op: circ\n\
         T | {T}\n\
         t | {F}\n\
         F | {T}\n"
    );
}

#[test]
fn c2_and() {
    assert_eq!(
        table("cnd", Some(2), "and"),
        "op: and\n\
         and | T | t0 | t1 | F\n\
         T | {T} | {T,t0,t1} | {T,t0,t1} | {F}\n\
         t0 | {T,t0,t1} | {T,t0,t1} | {T,t0,t1} | {F}\n\
         t1 | {T,t0,t1} | {T,t0,t1} | {T,t0,t1} | {F}\n\
         F | {F} | {F} | {F} | {F}\n"
    );
}

#[test]
fn c2_or() {
    assert_eq!(
        table("cnd", Some(2), "or"),
        "op: or\n\
         or | T | t0 | t1 | F\n\
         T | {T} | {T,t0,t1} | {T,t0,t1} | {T}\n\
         t0 | {T,t0,t1} | {T,t0,t1} | {T,t0,t1} | {T,t0,t1}\n\
         t1 | {T,t0,t1} | {T,t0,t1} | {T,t0,t1} | {T,t0,t1}\n\
         F | {T} | {T,t0,t1} | {T,t0,t1} | {F}\n"
    );
}

#[test]
fn c2_imp() {
    assert_eq!(
        table("cnd", Some(2), "imp"),
        "op: imp\n\
         imp | T | t0 | t1 | F\n\
         T | {T} | {T,t0,t1} | {T,t0,t1} | {F}\n\
         t0 | {T,t0,t1} | {T,t0,t1} | {T,t0,t1} | {F}\n\
         t1 | {T,t0,t1} | {T,t0,t1} | {T,t0,t1} | {F}\n\
         F | {T} | {T,t0,t1} | {T,t0,t1} | {T}\n"
    );
}

#[test]
fn c2_neg() {
    assert_eq!(
        table("cnd", Some(2), "neg"),
        "op: neg\n\
         T | {F}\n\
         t0 | {T,t0,t1}\n\
         t1 | {T,t0,t1}\n\
         F | {T}\n"
    );
}

#[test]
fn c1d_shares_the_three_valued_tables() {
    // the hierarchy's base level is the three-valued domain with the
    // strengthened negation and no primitive consistency operator
    assert_eq!(table("c1d", None, "neg"), table("dbc", None, "neg"));
    assert_eq!(table("c1d", None, "and"), table("dmbc", None, "and"));
    assert!(get_logic("c1d", None).unwrap().truth_table("circ").is_none());
}
