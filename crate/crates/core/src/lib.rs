//! Swap Kripke semantics for a family of paraconsistent deontic logics.
//!
//! The crate provides formula parsing over the two deontic signatures,
//! the snapshot multialgebras and their nondeterministic truth tables, a
//! registry of logics with their valuation restrictions and axiom
//! schemas, swap Kripke model checking, bounded countermodel search, and
//! a Hilbert-style derivation checker.
//!
//! Truth values are *snapshots*: bit tuples recording a formula's state
//! together with its iterated negations. Connectives denote nonempty
//! sets of snapshots, a valuation picks one member per world and
//! formula, and the stronger logics additionally restrict which picks
//! are admissible. Model checking and search operate over a finite
//! restriction-closed formula set, so countermodel verdicts are
//! certified relative to that closure.

pub mod algebra;
pub mod formula;
pub mod logics;
pub mod models;
pub mod proofs;
pub mod search;

pub use algebra::{Algebra, BinOp, Mask, Snapshot, ValueClass};
pub use formula::{closure, ClosureSet, Formula, Signature, SugarContext};
pub use logics::{get_logic, registered_logics, LogicDescriptor, LogicError, LogicName, RestrictionId};
pub use models::{check_valuation, holds, truth_at, KripkeFrame, ModelError, SwapKripkeModel, Violation};
pub use proofs::{verify_derivation, verify_from_premises, Derivation, Justification, PremiseDerivation, ProofFailure};
pub use search::{check_validity_bounded, enumerate_frames, find_countermodel, valuation_search, SearchBounds, SearchError, Verdict};
