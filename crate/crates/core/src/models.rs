//! Swap Kripke models: serial frames, valuation tables over a closure,
//! membership/restriction checking and truth evaluation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Mask;
use crate::formula::{ClosureSet, Formula, Node};
use crate::logics::{get_logic, LogicDescriptor, LogicError};

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("malformed model JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("model declares no worlds")]
    NoWorlds,
    #[error("duplicate world id `{0}`")]
    DuplicateWorld(String),
    #[error("relation references unknown world `{0}`")]
    UnknownWorldInRelation(String),
    #[error("valuation references unknown world `{0}`")]
    UnknownWorldInValuation(String),
    #[error("frame is not serial: world `{0}` has no successor")]
    NotSerial(String),
    #[error("formula `{text}` in world `{world}`: {err}")]
    Formula { world: String, text: String, err: crate::formula::ParseError },
    #[error("unknown value label `{label}` for formula `{text}` in world `{world}`")]
    UnknownLabel { world: String, text: String, label: String },
    #[error("conflicting labels for the same formula `{text}` in world `{world}`")]
    ConflictingLabels { world: String, text: String },
    #[error("no value for closure formula `{text}` in world `{world}`")]
    MissingValue { world: String, text: String },
    #[error(transparent)]
    Closure(#[from] crate::formula::ClosureError),
    #[error("world `{0}` is not part of the model")]
    NoSuchWorld(String),
    #[error("formula `{0}` is outside the model's closure")]
    OutsideClosure(String),
}

/// A serial frame over opaque world ids. The relation is a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeFrame {
    worlds: Vec<String>,
    successors: Vec<Vec<usize>>,
}

impl KripkeFrame {
    pub fn new(worlds: Vec<String>, relation: &[(String, String)]) -> Result<Self, ModelError> {
        if worlds.is_empty() {
            return Err(ModelError::NoWorlds);
        }
        let mut index = BTreeMap::new();
        for (i, w) in worlds.iter().enumerate() {
            if index.insert(w.clone(), i).is_some() {
                return Err(ModelError::DuplicateWorld(w.clone()));
            }
        }
        let mut successors = vec![Vec::new(); worlds.len()];
        for (from, to) in relation {
            let fi = *index
                .get(from)
                .ok_or_else(|| ModelError::UnknownWorldInRelation(from.clone()))?;
            let ti = *index
                .get(to)
                .ok_or_else(|| ModelError::UnknownWorldInRelation(to.clone()))?;
            if !successors[fi].contains(&ti) {
                successors[fi].push(ti);
            }
        }
        for s in &mut successors {
            s.sort_unstable();
        }
        for (i, s) in successors.iter().enumerate() {
            if s.is_empty() {
                return Err(ModelError::NotSerial(worlds[i].clone()));
            }
        }
        Ok(KripkeFrame { worlds, successors })
    }

    /// Builds a frame from successor index lists, used by the frame
    /// enumerator. Seriality must already hold.
    pub(crate) fn from_successors(worlds: Vec<String>, successors: Vec<Vec<usize>>) -> Self {
        debug_assert!(successors.iter().all(|s| !s.is_empty()));
        KripkeFrame { worlds, successors }
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_index(&self, w: &str) -> Option<usize> {
        self.worlds.iter().position(|x| x == w)
    }

    pub fn successors(&self, w: usize) -> &[usize] {
        &self.successors[w]
    }

    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (i, succ) in self.successors.iter().enumerate() {
            for &j in succ {
                out.push((self.worlds[i].clone(), self.worlds[j].clone()));
            }
        }
        out
    }
}

/// A swap Kripke model: a logic, a serial frame, a closure and one
/// snapshot per world and closure formula. Immutable after construction.
#[derive(Debug, Clone)]
pub struct SwapKripkeModel {
    logic: LogicDescriptor,
    frame: KripkeFrame,
    closure: ClosureSet,
    /// Snapshot index per slot, indexed `formula * world_count + world`.
    table: Vec<u8>,
}

impl SwapKripkeModel {
    pub fn new(
        logic: LogicDescriptor,
        frame: KripkeFrame,
        closure: ClosureSet,
        table: Vec<u8>,
    ) -> Self {
        assert_eq!(table.len(), closure.len() * frame.world_count());
        SwapKripkeModel { logic, frame, closure, table }
    }

    pub fn logic(&self) -> &LogicDescriptor {
        &self.logic
    }

    pub fn frame(&self) -> &KripkeFrame {
        &self.frame
    }

    pub fn closure(&self) -> &ClosureSet {
        &self.closure
    }

    pub fn value(&self, formula_idx: usize, world_idx: usize) -> usize {
        self.table[formula_idx * self.frame.world_count() + world_idx] as usize
    }

    pub fn value_of(&self, f: &Formula, world: &str) -> Result<usize, ModelError> {
        let fi = self
            .closure
            .index_of(f)
            .ok_or_else(|| ModelError::OutsideClosure(f.render()))?;
        let wi = self
            .frame
            .world_index(world)
            .ok_or_else(|| ModelError::NoSuchWorld(world.to_string()))?;
        Ok(self.value(fi, wi))
    }

    pub fn label_of(&self, f: &Formula, world: &str) -> Result<String, ModelError> {
        Ok(self.logic.algebra().label(self.value_of(f, world)?).to_string())
    }

    /// Serializes to the interchange JSON format.
    pub fn to_json(&self) -> serde_json::Value {
        let mut valuation = BTreeMap::new();
        for (wi, w) in self.frame.worlds().iter().enumerate() {
            let mut entry = BTreeMap::new();
            for fi in 0..self.closure.len() {
                entry.insert(
                    self.closure.get(fi).render(),
                    self.logic.algebra().label(self.value(fi, wi)).to_string(),
                );
            }
            valuation.insert(w.clone(), entry);
        }
        let file = ModelFile {
            logic: self.logic.name().as_str().to_string(),
            n: if self.logic.name().is_c_family() && self.logic.name() != crate::logics::LogicName::C1D {
                Some(self.logic.n())
            } else {
                None
            },
            worlds: self.frame.worlds().to_vec(),
            relation: self.frame.edges(),
            valuation,
        };
        serde_json::to_value(file).expect("model serialization cannot fail")
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ModelFile {
    logic: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    worlds: Vec<String>,
    relation: Vec<(String, String)>,
    valuation: BTreeMap<String, BTreeMap<String, String>>,
}

/// Parses a model from its JSON encoding. The closure is the
/// restriction closure of every declared formula; a missing entry for
/// any closure member at any world is an error, not a default.
pub fn load_model(bytes: &[u8]) -> Result<SwapKripkeModel, ModelError> {
    let file: ModelFile = serde_json::from_slice(bytes)?;
    let logic = get_logic(&file.logic, file.n)?;
    load_model_with_logic(logic, &file)
}

/// As [`load_model`] but forcing a specific (possibly non-standard)
/// descriptor; the file's own logic name is ignored.
pub fn load_model_as(logic: LogicDescriptor, bytes: &[u8]) -> Result<SwapKripkeModel, ModelError> {
    let file: ModelFile = serde_json::from_slice(bytes)?;
    load_model_with_logic(logic, &file)
}

fn load_model_with_logic(
    logic: LogicDescriptor,
    file: &ModelFile,
) -> Result<SwapKripkeModel, ModelError> {
    let frame = KripkeFrame::new(file.worlds.clone(), &file.relation)?;

    // parse every declared formula, per world
    let mut declared: Vec<Formula> = Vec::new();
    let mut by_world: Vec<BTreeMap<Formula, usize>> = vec![BTreeMap::new(); frame.world_count()];
    for (world, entries) in &file.valuation {
        let wi = frame
            .world_index(world)
            .ok_or_else(|| ModelError::UnknownWorldInValuation(world.clone()))?;
        for (text, label) in entries {
            let f = logic.parse(text).map_err(|err| ModelError::Formula {
                world: world.clone(),
                text: text.clone(),
                err,
            })?;
            let value = logic.algebra().index_of_label(label).ok_or_else(|| {
                ModelError::UnknownLabel {
                    world: world.clone(),
                    text: text.clone(),
                    label: label.clone(),
                }
            })?;
            if let Some(&prev) = by_world[wi].get(&f) {
                if prev != value {
                    return Err(ModelError::ConflictingLabels {
                        world: world.clone(),
                        text: text.clone(),
                    });
                }
            } else {
                by_world[wi].insert(f.clone(), value);
                if !declared.contains(&f) {
                    declared.push(f);
                }
            }
        }
    }

    let closure = logic.closure(&declared, crate::search::DEFAULT_CLOSURE_CAP)?;
    let mut table = vec![0u8; closure.len() * frame.world_count()];
    for fi in 0..closure.len() {
        let f = closure.get(fi);
        for wi in 0..frame.world_count() {
            match by_world[wi].get(f) {
                Some(&v) => table[fi * frame.world_count() + wi] = v as u8,
                None => {
                    return Err(ModelError::MissingValue {
                        world: frame.worlds()[wi].clone(),
                        text: f.render(),
                    })
                }
            }
        }
    }
    Ok(SwapKripkeModel::new(logic, frame, closure, table))
}

/// A failed membership or restriction condition at a world. Violations
/// are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub world: String,
    pub formula: Formula,
    pub rule: String,
    pub expected: Vec<String>,
    pub actual: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "world {}: {} = {} violates {} (expected one of {{{}}})",
            self.world,
            self.formula.render(),
            self.actual,
            self.rule,
            self.expected.join(",")
        )
    }
}

/// Restriction instances over a closure, compiled by shape so they can
/// be shared between the checker and the search engine.
#[derive(Debug, Clone, Default)]
pub(crate) struct RestrictionInstances {
    /// `(f, f & ~f)` pairs for the da Costa style restriction and the
    /// hierarchy forcing chain.
    pub contra: Vec<(usize, usize)>,
    /// `(f, f & ~f, f^1)` triples where the chain link is also present.
    pub chain: Vec<(usize, usize, usize)>,
    /// `(l, r, l # r)` for the classicality propagation over binaries.
    pub bin: Vec<(usize, usize, usize)>,
    /// `(f, O f)` pairs.
    pub obl: Vec<(usize, usize)>,
}

pub(crate) fn compile_restrictions(
    logic: &LogicDescriptor,
    closure: &ClosureSet,
) -> RestrictionInstances {
    let mut out = RestrictionInstances::default();
    let r = logic.restrictions();
    let needs_contra = r.cl || r.cn_rest;
    for i in 0..closure.len() {
        match closure.node(i) {
            Node::And(l, rr) => {
                if needs_contra {
                    // f & ~f with both conjuncts about the same f
                    if let Node::Neg(x) = closure.node(rr) {
                        if x == l {
                            if let Some(chain) =
                                closure.index_of(&Formula::neg(closure.get(i).clone()))
                            {
                                out.chain.push((l, i, chain));
                            } else {
                                out.contra.push((l, i));
                            }
                        }
                    }
                }
                if r.ca_bin {
                    out.bin.push((l, rr, i));
                }
            }
            Node::Or(l, rr) | Node::Imp(l, rr) => {
                if r.ca_bin {
                    out.bin.push((l, rr, i));
                }
            }
            Node::Obl(x) => {
                if r.ca_obl || r.cn_obl_boo {
                    out.obl.push((x, i));
                }
            }
            _ => {}
        }
    }
    out
}

/// Checks every membership condition and every applicable restriction.
/// Returns the empty list iff the model is a swap Kripke model of its
/// logic, relative to its closure.
pub fn check_valuation(model: &SwapKripkeModel) -> Vec<Violation> {
    let logic = model.logic();
    let alg = logic.algebra();
    let closure = model.closure();
    let frame = model.frame();
    let nw = frame.world_count();
    let mut out = Vec::new();

    let violation = |rule: &str, fi: usize, wi: usize, allowed: Mask, actual: usize| Violation {
        world: frame.worlds()[wi].clone(),
        formula: closure.get(fi).clone(),
        rule: rule.to_string(),
        expected: alg.mask_to_labels(allowed),
        actual: alg.label(actual).to_string(),
    };

    // membership in the multioperations
    for fi in 0..closure.len() {
        for wi in 0..nw {
            let actual = model.value(fi, wi);
            let allowed = match closure.node(fi) {
                Node::Atom => continue,
                Node::Neg(x) => alg.neg_mask(model.value(x, wi)),
                Node::Circ(x) => match alg.circ_mask(model.value(x, wi)) {
                    Some(m) => m,
                    None => continue,
                },
                Node::Obl(x) => {
                    let mut args: Mask = 0;
                    for &s in frame.successors(wi) {
                        args |= 1 << model.value(x, s);
                    }
                    alg.obl_mask(args)
                }
                Node::And(l, r) => alg.bin_mask(crate::algebra::BinOp::And, model.value(l, wi), model.value(r, wi)),
                Node::Or(l, r) => alg.bin_mask(crate::algebra::BinOp::Or, model.value(l, wi), model.value(r, wi)),
                Node::Imp(l, r) => alg.bin_mask(crate::algebra::BinOp::Imp, model.value(l, wi), model.value(r, wi)),
            };
            if allowed & (1 << actual) == 0 {
                out.push(violation("multioperation membership", fi, wi, allowed, actual));
            }
        }
    }

    // valuation restrictions
    let r = logic.restrictions();
    let inst = compile_restrictions(logic, closure);
    let top = alg.top();
    let bot = alg.bot();

    let contra_check = |out: &mut Vec<Violation>, f: usize, conj: usize, chain: Option<usize>| {
        for wi in 0..nw {
            let vf = model.value(f, wi);
            if vf == top || vf == bot {
                continue;
            }
            let level = vf - 1; // inconsistent values sit between top and bot
            if r.cl && !r.cn_rest {
                // three-valued: an inconsistent value forces the
                // contradiction to the classical true value
                let actual = model.value(conj, wi);
                if actual != top {
                    out.push(violation("restriction cl", conj, wi, 1 << top, actual));
                }
            }
            if r.cn_rest {
                let actual = model.value(conj, wi);
                if level == 0 {
                    if actual != top {
                        out.push(violation("restriction cn-rest", conj, wi, 1 << top, actual));
                    }
                } else {
                    let allowed = alg.inconsistent_mask();
                    if allowed & (1 << actual) == 0 {
                        out.push(violation("restriction cn-rest", conj, wi, allowed, actual));
                    }
                    if let Some(chain) = chain {
                        let want = level; // t_{k-1} sits at domain index k
                        let actual = model.value(chain, wi);
                        if actual != want {
                            out.push(violation("restriction cn-rest", chain, wi, 1 << want, actual));
                        }
                    }
                }
            }
        }
    };

    for &(f, conj) in &inst.contra {
        contra_check(&mut out, f, conj, None);
    }
    for &(f, conj, chain) in &inst.chain {
        contra_check(&mut out, f, conj, Some(chain));
    }

    if r.ca_bin {
        let boo = alg.boolean_mask();
        for &(l, rr, c) in &inst.bin {
            for wi in 0..nw {
                if boo & (1 << model.value(l, wi)) != 0
                    && boo & (1 << model.value(rr, wi)) != 0
                    && boo & (1 << model.value(c, wi)) == 0
                {
                    out.push(violation("restriction ca#", c, wi, boo, model.value(c, wi)));
                }
            }
        }
    }

    if r.ca_obl || r.cn_obl_boo {
        let rule = if r.ca_obl { "restriction cao" } else { "restriction cn-o-boo" };
        let boo = alg.boolean_mask();
        for &(f, o) in &inst.obl {
            for wi in 0..nw {
                if boo & (1 << model.value(f, wi)) != 0 && boo & (1 << model.value(o, wi)) == 0 {
                    out.push(violation(rule, o, wi, boo, model.value(o, wi)));
                }
            }
        }
    }

    if r.strict_obl {
        for fi in 0..closure.len() {
            if let Node::Obl(x) = closure.node(fi) {
                for wi in 0..nw {
                    if alg.is_designated(model.value(fi, wi)) {
                        for &s in frame.successors(wi) {
                            let actual = model.value(x, s);
                            if actual != top {
                                out.push(violation("restriction strict-o", x, s, 1 << top, actual));
                            }
                        }
                    }
                }
            }
        }
    }

    out
}

/// Truth at a world: the assigned snapshot is designated.
pub fn truth_at(model: &SwapKripkeModel, world: &str, f: &Formula) -> Result<bool, ModelError> {
    let v = model.value_of(f, world)?;
    Ok(model.logic().algebra().is_designated(v))
}

/// All of `gamma` true at the world; the empty set holds vacuously.
pub fn holds(model: &SwapKripkeModel, world: &str, gamma: &[Formula]) -> Result<bool, ModelError> {
    for f in gamma {
        if !truth_at(model, world, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}
