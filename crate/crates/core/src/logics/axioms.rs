//! Axiom schemas, instantiation and syntactic schema matching.
//!
//! The propositional base is the nine-schema positive fragment plus
//! excluded middle; each logic then binds its own consistency, da Costa
//! and deontic schemas. Templates are written over the metavariables
//! `alpha`, `beta`, `gamma` and use only primitive connectives, with the
//! defined notions (bottom particles, strong negations, `^k` chains)
//! already unfolded for the owning logic.

use std::collections::BTreeMap;
use std::fmt;

use super::LogicName;
use crate::algebra::BinOp;
use crate::formula::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MetaVar {
    Alpha,
    Beta,
    Gamma,
}

impl MetaVar {
    pub fn as_str(self) -> &'static str {
        match self {
            MetaVar::Alpha => "alpha",
            MetaVar::Beta => "beta",
            MetaVar::Gamma => "gamma",
        }
    }

    pub fn parse(s: &str) -> Option<MetaVar> {
        match s {
            "alpha" | "a" => Some(MetaVar::Alpha),
            "beta" | "b" => Some(MetaVar::Beta),
            "gamma" | "g" => Some(MetaVar::Gamma),
            _ => None,
        }
    }
}

impl fmt::Display for MetaVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub type Subst = BTreeMap<MetaVar, Formula>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Template {
    Var(MetaVar),
    Neg(Box<Template>),
    Circ(Box<Template>),
    Obl(Box<Template>),
    And(Box<Template>, Box<Template>),
    Or(Box<Template>, Box<Template>),
    Imp(Box<Template>, Box<Template>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemaId {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
    Em,
    Bc,
    Ciw,
    Ci,
    Cf,
    Cl,
    CaAnd,
    CaOr,
    CaImp,
    CaObl,
    BcN,
    Pn,
    OblK,
    OblE,
    Dn,
    POn,
    SDn,
}

impl SchemaId {
    pub fn as_str(self) -> &'static str {
        match self {
            SchemaId::A1 => "a1",
            SchemaId::A2 => "a2",
            SchemaId::A3 => "a3",
            SchemaId::A4 => "a4",
            SchemaId::A5 => "a5",
            SchemaId::A6 => "a6",
            SchemaId::A7 => "a7",
            SchemaId::A8 => "a8",
            SchemaId::A9 => "a9",
            SchemaId::Em => "em",
            SchemaId::Bc => "bc",
            SchemaId::Ciw => "ciw",
            SchemaId::Ci => "ci",
            SchemaId::Cf => "cf",
            SchemaId::Cl => "cl",
            SchemaId::CaAnd => "ca-and",
            SchemaId::CaOr => "ca-or",
            SchemaId::CaImp => "ca-imp",
            SchemaId::CaObl => "ca-o",
            SchemaId::BcN => "bc-n",
            SchemaId::Pn => "p-n",
            SchemaId::OblK => "o-k",
            SchemaId::OblE => "o-e",
            SchemaId::Dn => "d-n",
            SchemaId::POn => "po-n",
            SchemaId::SDn => "sd-n",
        }
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct AxiomSchema {
    pub id: SchemaId,
    pub template: Template,
}

impl AxiomSchema {
    pub fn metavars(&self) -> Vec<MetaVar> {
        let mut out = Vec::new();
        collect_vars(&self.template, &mut out);
        out
    }
}

fn collect_vars(t: &Template, out: &mut Vec<MetaVar>) {
    match t {
        Template::Var(v) => {
            if !out.contains(v) {
                out.push(*v);
            }
        }
        Template::Neg(x) | Template::Circ(x) | Template::Obl(x) => collect_vars(x, out),
        Template::And(l, r) | Template::Or(l, r) | Template::Imp(l, r) => {
            collect_vars(l, out);
            collect_vars(r, out);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AxiomError {
    #[error("no binding for metavariable `{0}`")]
    MissingBinding(&'static str),
}

/// Template substitution. Every metavariable of the schema must be bound.
pub fn instantiate(schema: &AxiomSchema, subst: &Subst) -> Result<Formula, AxiomError> {
    fn go(t: &Template, subst: &Subst) -> Result<Formula, AxiomError> {
        Ok(match t {
            Template::Var(v) => subst
                .get(v)
                .cloned()
                .ok_or(AxiomError::MissingBinding(v.as_str()))?,
            Template::Neg(x) => Formula::neg(go(x, subst)?),
            Template::Circ(x) => Formula::circ(go(x, subst)?),
            Template::Obl(x) => Formula::obl(go(x, subst)?),
            Template::And(l, r) => Formula::and(go(l, subst)?, go(r, subst)?),
            Template::Or(l, r) => Formula::or(go(l, subst)?, go(r, subst)?),
            Template::Imp(l, r) => Formula::imp(go(l, subst)?, go(r, subst)?),
        })
    }
    go(&schema.template, subst)
}

fn match_template(t: &Template, f: &Formula, subst: &mut Subst) -> bool {
    match (t, f) {
        (Template::Var(v), _) => match subst.get(v) {
            Some(bound) => bound == f,
            None => {
                subst.insert(*v, f.clone());
                true
            }
        },
        (Template::Neg(x), Formula::Neg(g)) => match_template(x, g, subst),
        (Template::Circ(x), Formula::Circ(g)) => match_template(x, g, subst),
        (Template::Obl(x), Formula::Obl(g)) => match_template(x, g, subst),
        (Template::And(l, r), Formula::And(a, b))
        | (Template::Or(l, r), Formula::Or(a, b))
        | (Template::Imp(l, r), Formula::Imp(a, b)) => {
            match_template(l, a, subst) && match_template(r, b, subst)
        }
        _ => false,
    }
}

/// Tries the schemas of `schemas` in registry order and returns the
/// first one whose instantiation reproduces `f` syntactically.
pub fn match_axiom(schemas: &[AxiomSchema], f: &Formula) -> Option<(SchemaId, Subst)> {
    for schema in schemas {
        let mut subst = Subst::new();
        if match_template(&schema.template, f, &mut subst) {
            return Some((schema.id, subst));
        }
    }
    None
}

// --- template construction -------------------------------------------

fn v(m: MetaVar) -> Template {
    Template::Var(m)
}

fn neg(t: Template) -> Template {
    Template::Neg(Box::new(t))
}

fn circ(t: Template) -> Template {
    Template::Circ(Box::new(t))
}

fn obl(t: Template) -> Template {
    Template::Obl(Box::new(t))
}

fn and(l: Template, r: Template) -> Template {
    Template::And(Box::new(l), Box::new(r))
}

fn or(l: Template, r: Template) -> Template {
    Template::Or(Box::new(l), Box::new(r))
}

fn imp(l: Template, r: Template) -> Template {
    Template::Imp(Box::new(l), Box::new(r))
}

fn bin(op: BinOp, l: Template, r: Template) -> Template {
    match op {
        BinOp::And => and(l, r),
        BinOp::Or => or(l, r),
        BinOp::Imp => imp(l, r),
    }
}

/// `t^k` on templates.
fn sup(t: &Template, k: u32) -> Template {
    let mut out = t.clone();
    for _ in 0..k {
        out = neg(and(out.clone(), neg(out)));
    }
    out
}

/// `t^(k)` on templates, left-associated.
fn sup_range(t: &Template, k: u32) -> Template {
    let mut out = sup(t, 1);
    for i in 2..=k {
        out = and(out, sup(t, i));
    }
    out
}

/// Level-`n` strong negation on templates.
fn snot_n(t: &Template, n: u32) -> Template {
    and(neg(t.clone()), sup_range(t, n))
}

/// The bottom particle over the primitive consistency operator.
fn bot_circ(t: &Template) -> Template {
    and(and(t.clone(), neg(t.clone())), circ(t.clone()))
}

/// The bottom particle of the hierarchy signature: consistency is the
/// defined non-contradiction formula.
fn bot_defined(t: &Template) -> Template {
    and(and(t.clone(), neg(t.clone())), sup(t, 1))
}

fn schema(id: SchemaId, template: Template) -> AxiomSchema {
    AxiomSchema { id, template }
}

fn positive_base() -> Vec<AxiomSchema> {
    use MetaVar::*;
    let (a, b, g) = (v(Alpha), v(Beta), v(Gamma));
    vec![
        schema(SchemaId::A1, imp(a.clone(), imp(b.clone(), a.clone()))),
        schema(
            SchemaId::A2,
            imp(
                imp(a.clone(), b.clone()),
                imp(imp(a.clone(), imp(b.clone(), g.clone())), imp(a.clone(), g.clone())),
            ),
        ),
        schema(SchemaId::A3, imp(a.clone(), imp(b.clone(), and(a.clone(), b.clone())))),
        schema(SchemaId::A4, imp(and(a.clone(), b.clone()), a.clone())),
        schema(SchemaId::A5, imp(and(a.clone(), b.clone()), b.clone())),
        schema(SchemaId::A6, imp(a.clone(), or(a.clone(), b.clone()))),
        schema(SchemaId::A7, imp(b.clone(), or(a.clone(), b.clone()))),
        schema(
            SchemaId::A8,
            imp(
                imp(a.clone(), g.clone()),
                imp(imp(b.clone(), g.clone()), imp(or(a.clone(), b.clone()), g.clone())),
            ),
        ),
        schema(SchemaId::A9, imp(imp(imp(a.clone(), b.clone()), a.clone()), a.clone())),
        schema(SchemaId::Em, or(a.clone(), neg(a))),
    ]
}

pub(super) fn schemas_for(name: LogicName, n: u32) -> Vec<AxiomSchema> {
    use LogicName::*;
    use MetaVar::*;
    let (a, b) = (v(Alpha), v(Beta));
    let mut out = positive_base();

    match name {
        DmbC | DmbCciw | DmbCci | DbC | DCi | DmbCcl | DCila => {
            out.push(schema(
                SchemaId::Bc,
                imp(circ(a.clone()), imp(a.clone(), imp(neg(a.clone()), b.clone()))),
            ));
            if matches!(name, DmbCciw) {
                out.push(schema(SchemaId::Ciw, or(circ(a.clone()), and(a.clone(), neg(a.clone())))));
            }
            if matches!(name, DmbCci | DCi | DCila) {
                out.push(schema(SchemaId::Ci, imp(neg(circ(a.clone())), and(a.clone(), neg(a.clone())))));
            }
            if matches!(name, DmbCcl | DCila) {
                out.push(schema(SchemaId::Cl, imp(neg(and(a.clone(), neg(a.clone()))), circ(a.clone()))));
            }
            if matches!(name, DbC | DCi | DCila) {
                out.push(schema(SchemaId::Cf, imp(neg(neg(a.clone())), a.clone())));
            }
            if matches!(name, DCila) {
                for (id, op) in [
                    (SchemaId::CaAnd, BinOp::And),
                    (SchemaId::CaOr, BinOp::Or),
                    (SchemaId::CaImp, BinOp::Imp),
                ] {
                    out.push(schema(
                        id,
                        imp(
                            and(circ(a.clone()), circ(b.clone())),
                            circ(bin(op, a.clone(), b.clone())),
                        ),
                    ));
                }
            }
            out.push(schema(
                SchemaId::OblK,
                imp(
                    obl(imp(a.clone(), b.clone())),
                    imp(obl(a.clone()), obl(b.clone())),
                ),
            ));
            out.push(schema(SchemaId::OblE, imp(obl(bot_circ(&a)), bot_circ(&a))));
        }
        C1D => {
            let cons = |t: &Template| sup(t, 1);
            out.push(schema(
                SchemaId::Bc,
                imp(cons(&a), imp(a.clone(), imp(neg(a.clone()), b.clone()))),
            ));
            out.push(schema(SchemaId::Cf, imp(neg(neg(a.clone())), a.clone())));
            for (id, op) in [
                (SchemaId::CaAnd, BinOp::And),
                (SchemaId::CaOr, BinOp::Or),
                (SchemaId::CaImp, BinOp::Imp),
            ] {
                out.push(schema(
                    id,
                    imp(and(cons(&a), cons(&b)), cons(&bin(op, a.clone(), b.clone()))),
                ));
            }
            out.push(schema(SchemaId::CaObl, imp(cons(&a), cons(&obl(a.clone())))));
            out.push(schema(
                SchemaId::OblK,
                imp(
                    obl(imp(a.clone(), b.clone())),
                    imp(obl(a.clone()), obl(b.clone())),
                ),
            ));
            out.push(schema(SchemaId::OblE, imp(obl(bot_defined(&a)), bot_defined(&a))));
        }
        CnD | CnDStrict => {
            out.push(schema(
                SchemaId::BcN,
                imp(sup_range(&a, n), imp(a.clone(), imp(neg(a.clone()), b.clone()))),
            ));
            out.push(schema(SchemaId::Cf, imp(neg(neg(a.clone())), a.clone())));
            out.push(schema(
                SchemaId::Pn,
                imp(
                    and(sup_range(&a, n), sup_range(&b, n)),
                    and(
                        and(
                            sup_range(&imp(a.clone(), b.clone()), n),
                            sup_range(&or(a.clone(), b.clone()), n),
                        ),
                        sup_range(&and(a.clone(), b.clone()), n),
                    ),
                ),
            ));
            out.push(schema(
                SchemaId::OblK,
                imp(
                    obl(imp(a.clone(), b.clone())),
                    imp(obl(a.clone()), obl(b.clone())),
                ),
            ));
            out.push(schema(
                SchemaId::Dn,
                imp(obl(a.clone()), snot_n(&obl(snot_n(&a, n)), n)),
            ));
            out.push(schema(SchemaId::POn, imp(sup_range(&a, n), sup_range(&obl(a.clone()), n))));
            if name == CnDStrict {
                out.push(schema(SchemaId::SDn, imp(obl(a.clone()), neg(obl(neg(a.clone()))))));
            }
        }
    }
    out
}
