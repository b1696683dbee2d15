//! Hilbert-style derivation checking.
//!
//! A derivation is a sequence of formulas, each justified as an axiom
//! instance, by Modus Ponens from two earlier steps, or by
//! O-necessitation from an earlier step. Necessitation is a global rule,
//! which is exactly what a premise-free derivation encodes; derivation
//! from premises is the premise-folding wrapper around it.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::formula::Formula;
use crate::logics::{instantiate, match_axiom, LogicDescriptor, MetaVar, Subst};

/// Justification for one derivation step. Indices are 1-based and must
/// reference strictly earlier steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// Instance of the named schema. When the substitution is omitted
    /// the checker infers one; when the schema is omitted too, the whole
    /// registry is tried in order.
    Axiom { schema: Option<String>, subst: Option<Subst> },
    /// Modus Ponens: step `minor` is the antecedent, step `major` is the
    /// implication `minor -> current`.
    Mp { minor: usize, major: usize },
    /// O-necessitation: the current formula is `O` of step `from`.
    Nec { from: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub justification: Justification,
}

/// A premise-free derivation in a logic.
#[derive(Debug, Clone)]
pub struct Derivation {
    pub logic: LogicDescriptor,
    pub steps: Vec<Step>,
}

/// A derivation of `target` from premises: an inner premise-free
/// derivation of `(g1 & ... & gk) -> target`, conjunction
/// left-associated in the declared order.
#[derive(Debug, Clone)]
pub struct PremiseDerivation {
    pub premises: Vec<Formula>,
    pub target: Formula,
    pub inner: Derivation,
}

/// Why a derivation was rejected. Failures are results, not errors.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProofFailure {
    #[error("derivation has no steps")]
    Empty,
    #[error("step {step}: index {referenced} does not reference an earlier step")]
    BadIndex { step: usize, referenced: usize },
    #[error("step {step}: unknown axiom schema `{schema}`")]
    UnknownSchema { step: usize, schema: String },
    #[error("step {step}: substitution error: {reason}")]
    BadSubstitution { step: usize, reason: String },
    #[error("step {step}: formula is not the stated instance of `{schema}`")]
    NotAnInstance { step: usize, schema: String },
    #[error("step {step}: formula matches no axiom schema of the logic")]
    NoMatchingAxiom { step: usize },
    #[error("step {step}: not obtainable by Modus Ponens from steps {minor} and {major}")]
    BadModusPonens { step: usize, minor: usize, major: usize },
    #[error("step {step}: not the necessitation of step {from}")]
    BadNecessitation { step: usize, from: usize },
    #[error("last step `{found}` is not the declared conclusion `{wanted}`")]
    ConclusionMismatch { wanted: String, found: String },
    #[error("a premise derivation needs at least one premise")]
    NoPremises,
}

/// Checks every step of a premise-free derivation.
pub fn verify_derivation(d: &Derivation) -> Result<(), ProofFailure> {
    if d.steps.is_empty() {
        return Err(ProofFailure::Empty);
    }
    for (i, step) in d.steps.iter().enumerate() {
        let num = i + 1;
        match &step.justification {
            Justification::Axiom { schema, subst } => {
                verify_axiom_step(&d.logic, num, &step.formula, schema.as_deref(), subst.as_ref())?;
            }
            Justification::Mp { minor, major } => {
                for &r in [minor, major].iter() {
                    if *r == 0 || *r >= num {
                        return Err(ProofFailure::BadIndex { step: num, referenced: *r });
                    }
                }
                let minor_f = &d.steps[*minor - 1].formula;
                let major_f = &d.steps[*major - 1].formula;
                let expected = Formula::imp(minor_f.clone(), step.formula.clone());
                if *major_f != expected {
                    return Err(ProofFailure::BadModusPonens {
                        step: num,
                        minor: *minor,
                        major: *major,
                    });
                }
            }
            Justification::Nec { from } => {
                if *from == 0 || *from >= num {
                    return Err(ProofFailure::BadIndex { step: num, referenced: *from });
                }
                let premise = &d.steps[*from - 1].formula;
                if step.formula != Formula::obl(premise.clone()) {
                    return Err(ProofFailure::BadNecessitation { step: num, from: *from });
                }
            }
        }
    }
    Ok(())
}

fn verify_axiom_step(
    logic: &LogicDescriptor,
    num: usize,
    formula: &Formula,
    schema: Option<&str>,
    subst: Option<&Subst>,
) -> Result<(), ProofFailure> {
    match (schema, subst) {
        (Some(id), Some(subst)) => {
            let schema = logic
                .schema(id)
                .ok_or_else(|| ProofFailure::UnknownSchema { step: num, schema: id.to_string() })?;
            let inst = instantiate(schema, subst).map_err(|e| ProofFailure::BadSubstitution {
                step: num,
                reason: e.to_string(),
            })?;
            if inst != *formula {
                return Err(ProofFailure::NotAnInstance { step: num, schema: id.to_string() });
            }
            Ok(())
        }
        (Some(id), None) => {
            let schema = logic
                .schema(id)
                .ok_or_else(|| ProofFailure::UnknownSchema { step: num, schema: id.to_string() })?;
            match match_axiom(std::slice::from_ref(schema), formula) {
                Some(_) => Ok(()),
                None => Err(ProofFailure::NotAnInstance { step: num, schema: id.to_string() }),
            }
        }
        (None, _) => match match_axiom(logic.axiom_schemas(), formula) {
            Some(_) => Ok(()),
            None => Err(ProofFailure::NoMatchingAxiom { step: num }),
        },
    }
}

/// Folds the premises into a left-associated conjunction, in order.
pub fn fold_premises(premises: &[Formula]) -> Formula {
    assert!(!premises.is_empty());
    let mut out = premises[0].clone();
    for p in &premises[1..] {
        out = Formula::and(out, p.clone());
    }
    out
}

/// Checks a derivation-from-premises: the inner derivation must verify
/// and end in `(g1 & ... & gk) -> target`.
pub fn verify_from_premises(pd: &PremiseDerivation) -> Result<(), ProofFailure> {
    if pd.premises.is_empty() {
        return Err(ProofFailure::NoPremises);
    }
    verify_derivation(&pd.inner)?;
    let expected = Formula::imp(fold_premises(&pd.premises), pd.target.clone());
    let last = &pd.inner.steps.last().expect("nonempty checked").formula;
    if *last != expected {
        return Err(ProofFailure::ConclusionMismatch {
            wanted: expected.render(),
            found: last.render(),
        });
    }
    Ok(())
}

// --- JSON interchange ---------------------------------------------------

#[derive(Debug, Deserialize)]
struct ProofFile {
    logic: String,
    #[serde(default)]
    n: Option<u32>,
    #[serde(default)]
    premises: Vec<String>,
    target: String,
    steps: Vec<StepFile>,
}

#[derive(Debug, Deserialize)]
struct StepFile {
    formula: String,
    just: JustFile,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum JustFile {
    Axiom {
        #[serde(default)]
        schema: Option<String>,
        #[serde(default)]
        subst: Option<BTreeMap<String, String>>,
    },
    Mp {
        from: [usize; 2],
    },
    Nec {
        from: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum ProofLoadError {
    #[error("malformed proof JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Logic(#[from] crate::logics::LogicError),
    #[error("in `{text}`: {err}")]
    Formula { text: String, err: crate::formula::ParseError },
    #[error("unknown metavariable `{0}` (use alpha, beta, gamma)")]
    UnknownMetaVar(String),
}

/// The checkable content of a proof file: either a plain derivation with
/// a declared target, or a derivation from premises.
#[derive(Debug)]
pub enum LoadedProof {
    Plain { derivation: Derivation, target: Formula },
    FromPremises(PremiseDerivation),
}

impl LoadedProof {
    pub fn verify(&self) -> Result<(), ProofFailure> {
        match self {
            LoadedProof::Plain { derivation, target } => {
                verify_derivation(derivation)?;
                let last = &derivation.steps.last().ok_or(ProofFailure::Empty)?.formula;
                if last != target {
                    return Err(ProofFailure::ConclusionMismatch {
                        wanted: target.render(),
                        found: last.render(),
                    });
                }
                Ok(())
            }
            LoadedProof::FromPremises(pd) => verify_from_premises(pd),
        }
    }
}

/// Parses a proof from its JSON encoding.
pub fn load_proof(bytes: &[u8]) -> Result<LoadedProof, ProofLoadError> {
    let file: ProofFile = serde_json::from_slice(bytes)?;
    let logic = crate::logics::get_logic(&file.logic, file.n)?;
    let parse = |text: &str| {
        logic
            .parse(text)
            .map_err(|err| ProofLoadError::Formula { text: text.to_string(), err })
    };
    let mut steps = Vec::new();
    for s in &file.steps {
        let formula = parse(&s.formula)?;
        let justification = match &s.just {
            JustFile::Axiom { schema, subst } => {
                let subst = match subst {
                    None => None,
                    Some(map) => {
                        let mut out = Subst::new();
                        for (k, v) in map {
                            let var = MetaVar::parse(k)
                                .ok_or_else(|| ProofLoadError::UnknownMetaVar(k.clone()))?;
                            out.insert(var, parse(v)?);
                        }
                        Some(out)
                    }
                };
                Justification::Axiom { schema: schema.clone(), subst }
            }
            JustFile::Mp { from } => Justification::Mp { minor: from[0], major: from[1] },
            JustFile::Nec { from } => Justification::Nec { from: *from },
        };
        steps.push(Step { formula, justification });
    }
    let target = parse(&file.target)?;
    let premises = file
        .premises
        .iter()
        .map(|p| parse(p))
        .collect::<Result<Vec<_>, _>>()?;
    let derivation = Derivation { logic, steps };
    if premises.is_empty() {
        Ok(LoadedProof::Plain { derivation, target })
    } else {
        Ok(LoadedProof::FromPremises(PremiseDerivation { premises, target, inner: derivation }))
    }
}

/// The standard five-step derivation of `f -> f` from the positive base.
/// Used by tests and by the fixtures.
pub fn identity_derivation(logic: LogicDescriptor, f: &Formula) -> Derivation {
    let ff = Formula::imp(f.clone(), f.clone());
    let ffa = Formula::imp(ff.clone(), f.clone()); // (f -> f) -> f
    let bind = |pairs: &[(MetaVar, &Formula)]| {
        let mut s = Subst::new();
        for (v, g) in pairs {
            s.insert(*v, (*g).clone());
        }
        s
    };
    let steps = vec![
        // a2 with beta := (f -> f) -> f, gamma := f
        Step {
            formula: Formula::imp(
                Formula::imp(f.clone(), ffa.clone()),
                Formula::imp(
                    Formula::imp(f.clone(), Formula::imp(ffa.clone(), f.clone())),
                    ff.clone(),
                ),
            ),
            justification: Justification::Axiom {
                schema: Some("a2".into()),
                subst: Some(bind(&[
                    (MetaVar::Alpha, f),
                    (MetaVar::Beta, &ffa),
                    (MetaVar::Gamma, f),
                ])),
            },
        },
        // a1 with beta := f -> f
        Step {
            formula: Formula::imp(f.clone(), ffa.clone()),
            justification: Justification::Axiom {
                schema: Some("a1".into()),
                subst: Some(bind(&[(MetaVar::Alpha, f), (MetaVar::Beta, &ff)])),
            },
        },
        Step {
            formula: Formula::imp(
                Formula::imp(f.clone(), Formula::imp(ffa.clone(), f.clone())),
                ff.clone(),
            ),
            justification: Justification::Mp { minor: 2, major: 1 },
        },
        // a1 with beta := (f -> f) -> f
        Step {
            formula: Formula::imp(f.clone(), Formula::imp(ffa.clone(), f.clone())),
            justification: Justification::Axiom {
                schema: Some("a1".into()),
                subst: Some(bind(&[(MetaVar::Alpha, f), (MetaVar::Beta, &ffa)])),
            },
        },
        Step { formula: ff, justification: Justification::Mp { minor: 4, major: 3 } },
    ];
    Derivation { logic, steps }
}
