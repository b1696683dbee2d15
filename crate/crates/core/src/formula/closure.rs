//! Restriction-aware subformula closure.
//!
//! The valuation restrictions of the stronger logics quantify over all
//! formulas; model checking and search work over a finite closure
//! instead, and verdicts are certified relative to it. Besides immediate
//! subformulas, the closure carries the formulas the active logic's
//! restrictions need to see: `f & ~f` for the da Costa style logics, and
//! the whole `f^1 .. f^n` chain for the hierarchy logics. Dependency
//! spawning stops at negations and at conjunctions already of the shape
//! `g & ~g`, whose restriction chains are covered by the formulas their
//! origin contributes; this makes the construction a one-pass fixpoint.

use std::collections::HashMap;

use super::Formula;

/// Which restriction dependencies the closure must carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureDeps {
    /// Plain subformula closure.
    None,
    /// Each member `f` also contributes `f & ~f`.
    ContradictionPair,
    /// Each member `f` also contributes `f^1 .. f^n`.
    SupChain { n: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClosureError {
    #[error("closure exceeded the configured cap of {cap} formulas")]
    CapExceeded { cap: usize },
    #[error("closure needs at least one target formula")]
    EmptyTargets,
}

/// Compiled view of a closure member, children by closure index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Atom,
    Neg(usize),
    Circ(usize),
    Obl(usize),
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
}

/// An ordered, subformula- and dependency-closed set of formulas.
/// Children always precede parents.
#[derive(Debug, Clone)]
pub struct ClosureSet {
    formulas: Vec<Formula>,
    index: HashMap<Formula, usize>,
    nodes: Vec<Node>,
}

impl ClosureSet {
    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn get(&self, i: usize) -> &Formula {
        &self.formulas[i]
    }

    pub fn node(&self, i: usize) -> Node {
        self.nodes[i]
    }

    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.index.contains_key(f)
    }
}

fn is_contradiction_conj(f: &Formula) -> bool {
    match f {
        Formula::And(l, r) => matches!(&**r, Formula::Neg(x) if **x == **l),
        _ => false,
    }
}

/// Dependency spawning is skipped for members whose restriction checks
/// are either covered by their origin's chain or vacuous on the closure.
fn exempt(f: &Formula) -> bool {
    matches!(f, Formula::Neg(_)) || is_contradiction_conj(f)
}

struct Builder {
    formulas: Vec<Formula>,
    index: HashMap<Formula, usize>,
    cap: usize,
}

impl Builder {
    fn insert_rec(&mut self, f: &Formula) -> Result<usize, ClosureError> {
        if let Some(&i) = self.index.get(f) {
            return Ok(i);
        }
        for child in f.children() {
            self.insert_rec(child)?;
        }
        if self.formulas.len() >= self.cap {
            return Err(ClosureError::CapExceeded { cap: self.cap });
        }
        let i = self.formulas.len();
        self.formulas.push(f.clone());
        self.index.insert(f.clone(), i);
        Ok(i)
    }
}

/// Builds the closure of `targets` for a logic with the given dependency
/// discipline, erroring out if it would exceed `cap` formulas.
pub fn closure(
    targets: &[Formula],
    deps: ClosureDeps,
    cap: usize,
) -> Result<ClosureSet, ClosureError> {
    if targets.is_empty() {
        return Err(ClosureError::EmptyTargets);
    }
    let mut b = Builder { formulas: Vec::new(), index: HashMap::new(), cap };
    for t in targets {
        b.insert_rec(t)?;
    }
    if deps != ClosureDeps::None {
        // New members produced here are all exempt, so one pass reaches
        // the fixpoint.
        let members: Vec<Formula> = b.formulas.clone();
        for f in &members {
            if exempt(f) {
                continue;
            }
            match deps {
                ClosureDeps::ContradictionPair => {
                    b.insert_rec(&Formula::and(f.clone(), Formula::neg(f.clone())))?;
                }
                ClosureDeps::SupChain { n } => {
                    for k in 1..=n {
                        b.insert_rec(&f.sup(k))?;
                    }
                }
                ClosureDeps::None => unreachable!(),
            }
        }
    }
    let nodes = b
        .formulas
        .iter()
        .map(|f| match f {
            Formula::Atom(_) => Node::Atom,
            Formula::Neg(x) => Node::Neg(b.index[&**x]),
            Formula::Circ(x) => Node::Circ(b.index[&**x]),
            Formula::Obl(x) => Node::Obl(b.index[&**x]),
            Formula::And(l, r) => Node::And(b.index[&**l], b.index[&**r]),
            Formula::Or(l, r) => Node::Or(b.index[&**l], b.index[&**r]),
            Formula::Imp(l, r) => Node::Imp(b.index[&**l], b.index[&**r]),
        })
        .collect();
    Ok(ClosureSet { formulas: b.formulas, index: b.index, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn plain_subformula_closure() {
        let cs = closure(&[Formula::obl(atom("p"))], ClosureDeps::None, 64).unwrap();
        assert_eq!(cs.formulas(), &[atom("p"), Formula::obl(atom("p"))]);
    }

    #[test]
    fn contradiction_pair_deps() {
        let cs = closure(&[atom("p")], ClosureDeps::ContradictionPair, 64).unwrap();
        let conj = Formula::and(atom("p"), Formula::neg(atom("p")));
        assert!(cs.contains(&atom("p")));
        assert!(cs.contains(&Formula::neg(atom("p"))));
        assert!(cs.contains(&conj));
        // the dependency formulas themselves spawn nothing new
        assert_eq!(cs.len(), 3);
    }

    #[test]
    fn sup_chain_deps_reach_level_n() {
        let cs = closure(&[atom("p")], ClosureDeps::SupChain { n: 2 }, 64).unwrap();
        assert!(cs.contains(&atom("p").sup(1)));
        assert!(cs.contains(&atom("p").sup(2)));
        assert!(cs.contains(&Formula::and(atom("p").sup(1), Formula::neg(atom("p").sup(1)))));
    }

    #[test]
    fn children_precede_parents() {
        let target = crate::formula::parse("O(p -> q) -> (O p -> O q)", crate::formula::SugarContext::sigma()).unwrap();
        let cs = closure(&[target], ClosureDeps::SupChain { n: 3 }, 256).unwrap();
        for i in 0..cs.len() {
            for child in cs.get(i).children() {
                let j = cs.index_of(child).expect("child must be a member");
                assert!(j < i, "child {:?} after parent {:?}", child, cs.get(i));
            }
        }
    }

    #[test]
    fn idempotent() {
        for deps in [ClosureDeps::ContradictionPair, ClosureDeps::SupChain { n: 3 }] {
            let base = closure(&[crate::formula::parse("O p -> ~(q & r)", crate::formula::SugarContext::sigma()).unwrap()], deps, 512).unwrap();
            let again = closure(base.formulas(), deps, 512).unwrap();
            assert_eq!(again.len(), base.len());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = closure(&[atom("p")], ClosureDeps::SupChain { n: 6 }, 4).unwrap_err();
        assert!(matches!(err, ClosureError::CapExceeded { cap: 4 }));
    }
}
