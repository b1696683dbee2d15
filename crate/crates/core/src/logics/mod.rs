//! The logic registry: signatures, multioperation bindings, valuation
//! restrictions and axiom schemas for each supported system.

mod axioms;

pub use axioms::{instantiate, match_axiom, AxiomError, AxiomSchema, MetaVar, SchemaId, Subst};

use crate::algebra::{Algebra, BinOp, CircVariant, Mask, NegVariant, Snapshot, ValueClass};
use crate::formula::{closure, ClosureDeps, ClosureError, ClosureSet, Formula, Signature, SugarContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LogicName {
    DmbC,
    DmbCciw,
    DmbCci,
    DbC,
    DCi,
    DmbCcl,
    DCila,
    C1D,
    CnD,
    CnDStrict,
}

impl LogicName {
    pub fn as_str(self) -> &'static str {
        match self {
            LogicName::DmbC => "dmbc",
            LogicName::DmbCciw => "dmbcciw",
            LogicName::DmbCci => "dmbcci",
            LogicName::DbC => "dbc",
            LogicName::DCi => "dci",
            LogicName::DmbCcl => "dmbccl",
            LogicName::DCila => "dcila",
            LogicName::C1D => "c1d",
            LogicName::CnD => "cnd",
            LogicName::CnDStrict => "cnd-strict",
        }
    }

    pub fn is_c_family(self) -> bool {
        matches!(self, LogicName::C1D | LogicName::CnD | LogicName::CnDStrict)
    }
}

/// Which valuation restrictions the logic imposes on swap Kripke models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Restrictions {
    /// An inconsistent value forces its contradiction to the classical
    /// true value.
    pub cl: bool,
    /// Classical inputs force classical values on binary compounds.
    pub ca_bin: bool,
    /// A classical argument forces a classical obligation value.
    pub ca_obl: bool,
    /// The hierarchy forcing chain on `f & ~f` and `f^1`.
    pub cn_rest: bool,
    /// A Boolean argument forces a Boolean obligation value.
    pub cn_obl_boo: bool,
    /// A designated obligation forces the classical true value at every
    /// successor.
    pub strict_obl: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RestrictionId {
    Cl,
    CaBin,
    CaObl,
    CnRest,
    CnOblBoo,
    StrictObl,
}

impl RestrictionId {
    pub const ALL: [RestrictionId; 6] = [
        RestrictionId::Cl,
        RestrictionId::CaBin,
        RestrictionId::CaObl,
        RestrictionId::CnRest,
        RestrictionId::CnOblBoo,
        RestrictionId::StrictObl,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RestrictionId::Cl => "cl",
            RestrictionId::CaBin => "ca#",
            RestrictionId::CaObl => "cao",
            RestrictionId::CnRest => "cn-rest",
            RestrictionId::CnOblBoo => "cn-o-boo",
            RestrictionId::StrictObl => "strict-o",
        }
    }

    pub fn parse(text: &str) -> Option<RestrictionId> {
        match text.to_ascii_lowercase().as_str() {
            "cl" => Some(RestrictionId::Cl),
            "ca#" | "ca-hash" | "ca-bin" => Some(RestrictionId::CaBin),
            "cao" | "ca-o" => Some(RestrictionId::CaObl),
            "cn-rest" => Some(RestrictionId::CnRest),
            "cn-o-boo" => Some(RestrictionId::CnOblBoo),
            "strict-o" => Some(RestrictionId::StrictObl),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LogicError {
    #[error("unknown logic `{0}`")]
    Unknown(String),
    #[error("logic `{0}` requires a hierarchy level n >= 2")]
    MissingN(String),
    #[error("logic `{0}` does not take a hierarchy level")]
    UnexpectedN(String),
    #[error("`cnd` at n = 1 is the separate system `c1d`; use --logic c1d")]
    UseC1d,
    #[error("invalid hierarchy level {0}; supported range is 2..={max}", max = MAX_N)]
    InvalidN(u32),
    #[error("restriction `{0}` does not apply to logic `{1}`")]
    InapplicableRestriction(&'static str, &'static str),
}

/// Largest supported hierarchy level. Snapshot bit tuples are packed in
/// a byte, which bounds the width to 8.
pub const MAX_N: u32 = 7;

/// A fully bound logic: signature, multioperations, restrictions and
/// axiom schemas. Construction precomputes the operation tables, so
/// values are cheap to share and safe to read concurrently.
#[derive(Debug, Clone)]
pub struct LogicDescriptor {
    name: LogicName,
    n: u32,
    algebra: Algebra,
    restrictions: Restrictions,
    schemas: Vec<AxiomSchema>,
    nonstandard: Vec<RestrictionId>,
}

impl LogicDescriptor {
    pub fn name(&self) -> LogicName {
        self.name
    }

    /// Hierarchy level; 1 for every three-valued logic.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn signature(&self) -> Signature {
        if self.name.is_c_family() {
            Signature::SigmaC1D
        } else {
            Signature::Sigma
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn restrictions(&self) -> &Restrictions {
        &self.restrictions
    }

    pub fn strict(&self) -> bool {
        self.name == LogicName::CnDStrict
    }

    /// Restrictions disabled relative to the standard system, if any.
    /// Such a descriptor implements a non-standard semantics, useful for
    /// exhibiting which restriction carries a given axiom.
    pub fn disabled_restrictions(&self) -> &[RestrictionId] {
        &self.nonstandard
    }

    pub fn display_name(&self) -> String {
        if self.name.is_c_family() && self.name != LogicName::C1D {
            format!("{}(n={})", self.name.as_str(), self.n)
        } else {
            self.name.as_str().to_string()
        }
    }

    pub fn sugar_context(&self) -> SugarContext {
        match self.signature() {
            Signature::Sigma => SugarContext::sigma(),
            Signature::SigmaC1D => SugarContext::c_family(self.n),
        }
    }

    pub fn closure_deps(&self) -> ClosureDeps {
        let r = &self.restrictions;
        if r.cn_rest {
            ClosureDeps::SupChain { n: self.n }
        } else if r.cl {
            ClosureDeps::ContradictionPair
        } else {
            ClosureDeps::None
        }
    }

    pub fn parse(&self, text: &str) -> Result<Formula, crate::formula::ParseError> {
        crate::formula::parse(text, self.sugar_context())
    }

    pub fn closure(&self, targets: &[Formula], cap: usize) -> Result<ClosureSet, ClosureError> {
        closure(targets, self.closure_deps(), cap)
    }

    /// Returns a copy with the given restriction turned off.
    pub fn without_restriction(&self, id: RestrictionId) -> Result<LogicDescriptor, LogicError> {
        let mut out = self.clone();
        let r = &mut out.restrictions;
        let flag = match id {
            RestrictionId::Cl => &mut r.cl,
            RestrictionId::CaBin => &mut r.ca_bin,
            RestrictionId::CaObl => &mut r.ca_obl,
            RestrictionId::CnRest => &mut r.cn_rest,
            RestrictionId::CnOblBoo => &mut r.cn_obl_boo,
            RestrictionId::StrictObl => &mut r.strict_obl,
        };
        if !*flag {
            return Err(LogicError::InapplicableRestriction(id.as_str(), self.name.as_str()));
        }
        *flag = false;
        out.nonstandard.push(id);
        Ok(out)
    }

    // --- algebra views ------------------------------------------------

    pub fn domain(&self) -> &[Snapshot] {
        self.algebra.domain()
    }

    pub fn apply_binary(&self, op: BinOp, a: usize, b: usize) -> Mask {
        self.algebra.bin_mask(op, a, b)
    }

    pub fn apply_neg(&self, a: usize) -> Mask {
        self.algebra.neg_mask(a)
    }

    pub fn apply_circ(&self, a: usize) -> Option<Mask> {
        self.algebra.circ_mask(a)
    }

    pub fn apply_obl(&self, args: Mask) -> Mask {
        self.algebra.obl_mask(args)
    }

    pub fn classify(&self, a: usize) -> ValueClass {
        self.algebra.classify(a)
    }

    pub fn truth_table(&self, op: &str) -> Option<String> {
        self.algebra.truth_table(op)
    }

    // --- axioms ---------------------------------------------------------

    pub fn axiom_schemas(&self) -> &[AxiomSchema] {
        &self.schemas
    }

    pub fn schema(&self, id: &str) -> Option<&AxiomSchema> {
        self.schemas.iter().find(|s| s.id.as_str() == id)
    }
}

/// Looks a logic up by name. `n` is required for `cnd`/`cnd-strict` and
/// rejected elsewhere.
pub fn get_logic(name: &str, n: Option<u32>) -> Result<LogicDescriptor, LogicError> {
    let lname = match name.to_ascii_lowercase().as_str() {
        "dmbc" => LogicName::DmbC,
        "dmbcciw" => LogicName::DmbCciw,
        "dmbcci" => LogicName::DmbCci,
        "dbc" => LogicName::DbC,
        "dci" => LogicName::DCi,
        "dmbccl" => LogicName::DmbCcl,
        "dcila" => LogicName::DCila,
        "c1d" => LogicName::C1D,
        "cnd" => LogicName::CnD,
        "cnd-strict" | "cndstrict" => LogicName::CnDStrict,
        other => return Err(LogicError::Unknown(other.to_string())),
    };
    match lname {
        LogicName::CnD | LogicName::CnDStrict => {
            let n = n.ok_or_else(|| LogicError::MissingN(name.to_string()))?;
            if n == 1 {
                return Err(LogicError::UseC1d);
            }
            if n < 2 || n > MAX_N {
                return Err(LogicError::InvalidN(n));
            }
            Ok(build(lname, n))
        }
        LogicName::C1D => match n {
            // the base level of the hierarchy; an explicit n = 1 is
            // accepted, anything else contradicts the name
            None | Some(1) => Ok(build(lname, 1)),
            Some(k) => Err(LogicError::InvalidN(k)),
        },
        _ => {
            if n.is_some() {
                return Err(LogicError::UnexpectedN(name.to_string()));
            }
            Ok(build(lname, 1))
        }
    }
}

/// Every logic name, with representative levels for the hierarchy.
/// Useful for sweeps in tests and tooling.
pub fn registered_logics(levels: &[u32]) -> Vec<LogicDescriptor> {
    let mut out: Vec<LogicDescriptor> = ["dmbc", "dmbcciw", "dmbcci", "dbc", "dci", "dmbccl", "dcila", "c1d"]
        .iter()
        .map(|name| get_logic(name, None).unwrap())
        .collect();
    for &n in levels {
        out.push(get_logic("cnd", Some(n)).unwrap());
    }
    for &n in levels {
        out.push(get_logic("cnd-strict", Some(n)).unwrap());
    }
    out
}

fn build(name: LogicName, n: u32) -> LogicDescriptor {
    use LogicName::*;
    let algebra = match name {
        DmbC => Algebra::three_valued(NegVariant::Plain, CircVariant::Weak),
        DmbCciw => Algebra::three_valued(NegVariant::Plain, CircVariant::Exact),
        DmbCci => Algebra::three_valued(NegVariant::Plain, CircVariant::Deterministic),
        DbC => Algebra::three_valued(NegVariant::Strengthened, CircVariant::Weak),
        DCi => Algebra::three_valued(NegVariant::Strengthened, CircVariant::Deterministic),
        DmbCcl => Algebra::three_valued(NegVariant::Plain, CircVariant::Exact),
        DCila => Algebra::three_valued(NegVariant::Strengthened, CircVariant::Deterministic),
        C1D => Algebra::three_valued_no_circ(NegVariant::Strengthened),
        CnD | CnDStrict => Algebra::cn(n),
    };
    let restrictions = match name {
        DmbC | DmbCciw | DmbCci | DbC | DCi => Restrictions::default(),
        DmbCcl => Restrictions { cl: true, ..Default::default() },
        DCila => Restrictions { cl: true, ca_bin: true, ..Default::default() },
        C1D => Restrictions { cl: true, ca_bin: true, ca_obl: true, ..Default::default() },
        CnD => Restrictions { cn_rest: true, cn_obl_boo: true, ..Default::default() },
        CnDStrict => Restrictions {
            cn_rest: true,
            cn_obl_boo: true,
            strict_obl: true,
            ..Default::default()
        },
    };
    let schemas = axioms::schemas_for(name, n);
    LogicDescriptor { name, n, algebra, restrictions, schemas, nonstandard: Vec::new() }
}
