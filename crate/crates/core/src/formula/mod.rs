//! Formula ASTs over the two deontic signatures, the text grammar, and
//! defined-connective expansion.

mod closure;
mod parse;

pub use closure::{closure, ClosureDeps, ClosureError, ClosureSet, Node};
pub use parse::{parse, ParseError, ParseErrorKind};

use std::fmt;

/// Connective signature a formula is read against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signature {
    /// `{->, ~, |, &, O, @}`, with a primitive consistency operator.
    Sigma,
    /// `{->, ~, |, &, O}`; consistency is a defined notion.
    SigmaC1D,
}

/// Propositional/deontic formula. Equality is syntactic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Neg(Box<Formula>),
    Circ(Box<Formula>),
    Obl(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn neg(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }

    pub fn circ(f: Formula) -> Self {
        Formula::Circ(Box::new(f))
    }

    pub fn obl(f: Formula) -> Self {
        Formula::Obl(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Self {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> impl Iterator<Item = &Formula> {
        let (a, b) = match self {
            Formula::Atom(_) => (None, None),
            Formula::Neg(f) | Formula::Circ(f) | Formula::Obl(f) => (Some(&**f), None),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                (Some(&**l), Some(&**r))
            }
        };
        a.into_iter().chain(b)
    }

    pub fn uses_circ(&self) -> bool {
        matches!(self, Formula::Circ(_)) || self.children().any(Formula::uses_circ)
    }

    pub fn depth(&self) -> usize {
        1 + self.children().map(Formula::depth).max().unwrap_or(0)
    }

    /// `self ^ k`: iterated non-contradiction, `f^0 = f`,
    /// `f^{k+1} = ~(f^k & ~f^k)`.
    pub fn sup(&self, k: u32) -> Formula {
        let mut out = self.clone();
        for _ in 0..k {
            out = Formula::neg(Formula::and(out.clone(), Formula::neg(out)));
        }
        out
    }

    /// `self ^ (k)`: the left-associated conjunction `f^1 & ... & f^k`.
    /// Requires `k >= 1`.
    pub fn sup_range(&self, k: u32) -> Formula {
        assert!(k >= 1, "sup_range needs k >= 1");
        let mut out = self.sup(1);
        for i in 2..=k {
            out = Formula::and(out, self.sup(i));
        }
        out
    }

    /// Rendered text; reparses to an identical AST.
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.write(&mut s, 0, false);
        s
    }

    /// Fully parenthesized rendering.
    pub fn render_full(&self) -> String {
        let mut s = String::new();
        self.write(&mut s, 0, true);
        s
    }

    fn prec(&self) -> u8 {
        match self {
            Formula::Imp(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            _ => 4,
        }
    }

    fn write(&self, out: &mut String, min_prec: u8, full: bool) {
        let parens = if full {
            !matches!(self, Formula::Atom(_))
        } else {
            self.prec() < min_prec
        };
        if parens {
            out.push('(');
        }
        match self {
            Formula::Atom(name) => out.push_str(name),
            Formula::Neg(f) => {
                out.push('~');
                f.write(out, 4, full);
            }
            Formula::Circ(f) => {
                out.push('@');
                f.write(out, 4, full);
            }
            Formula::Obl(f) => {
                out.push_str("O ");
                f.write(out, 4, full);
            }
            Formula::And(l, r) => {
                l.write(out, 3, full);
                out.push_str(" & ");
                r.write(out, 4, full);
            }
            Formula::Or(l, r) => {
                l.write(out, 2, full);
                out.push_str(" | ");
                r.write(out, 3, full);
            }
            Formula::Imp(l, r) => {
                l.write(out, 2, full);
                out.push_str(" -> ");
                r.write(out, 1, full);
            }
        }
        if parens {
            out.push(')');
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// What the defined connectives expand to. Derived from a logic
/// descriptor; `n` is `None` for the `Sigma` logics (no `^k` sugar) and
/// the hierarchy level for the others.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SugarContext {
    pub signature: Signature,
    pub n: Option<u32>,
}

impl SugarContext {
    pub fn sigma() -> Self {
        SugarContext { signature: Signature::Sigma, n: None }
    }

    pub fn c_family(n: u32) -> Self {
        SugarContext { signature: Signature::SigmaC1D, n: Some(n) }
    }
}

/// A defined-connective application before expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sugar {
    /// `bot(f)`: the bottom particle for `f`.
    Bot,
    /// `snot(f)`: strong negation.
    Snot,
    /// `snotn(f)`: the level-`n` strong negation.
    Snotn,
    /// `f^k`.
    Sup(u32),
    /// `f^(k)`.
    SupRange(u32),
    /// `P f`: permission.
    Perm,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SugarError {
    #[error("`{sugar}` is not available for this logic")]
    Unsupported { sugar: String },
    #[error("exponent {k} exceeds the logic's level {n}")]
    ExponentOutOfRange { k: u32, n: u32 },
    #[error("exponent in `^(k)` must be at least 1")]
    RangeExponentZero,
}

/// Expands a defined connective into primitive connectives.
pub fn expand_defined(sugar: &Sugar, arg: Formula, ctx: SugarContext) -> Result<Formula, SugarError> {
    let unsupported = |what: &str| SugarError::Unsupported { sugar: what.to_string() };
    let level = |what: &str| ctx.n.ok_or_else(|| unsupported(what));
    match sugar {
        Sugar::Bot => match ctx.signature {
            Signature::Sigma => Ok(bot_sigma(arg)),
            Signature::SigmaC1D => Err(unsupported("bot")),
        },
        Sugar::Sup(k) => {
            let n = level("^k")?;
            if *k > n {
                return Err(SugarError::ExponentOutOfRange { k: *k, n });
            }
            Ok(arg.sup(*k))
        }
        Sugar::SupRange(k) => {
            let n = level("^(k)")?;
            if *k == 0 {
                return Err(SugarError::RangeExponentZero);
            }
            if *k > n {
                return Err(SugarError::ExponentOutOfRange { k: *k, n });
            }
            Ok(arg.sup_range(*k))
        }
        Sugar::Snot => match ctx.signature {
            Signature::Sigma => Ok(snot_sigma(arg)),
            Signature::SigmaC1D => Ok(snot_c(arg, 1)),
        },
        Sugar::Snotn => {
            let n = level("snotn")?;
            Ok(snot_c(arg, n))
        }
        Sugar::Perm => match ctx.signature {
            Signature::Sigma => Ok(snot_sigma(Formula::obl(snot_sigma(arg)))),
            Signature::SigmaC1D => {
                let n = level("P")?;
                Ok(snot_c(Formula::obl(snot_c(arg, n)), n))
            }
        },
    }
}

/// `(f & ~f) & @f`, the bottom particle of the `Sigma` logics.
pub fn bot_sigma(f: Formula) -> Formula {
    Formula::and(Formula::and(f.clone(), Formula::neg(f.clone())), Formula::circ(f))
}

/// `f -> bot(f)`: strong negation in the `Sigma` logics.
pub fn snot_sigma(f: Formula) -> Formula {
    Formula::imp(f.clone(), bot_sigma(f))
}

/// `~f & f^(k)`: strong negation at level `k` of the hierarchy.
pub fn snot_c(f: Formula, k: u32) -> Formula {
    Formula::and(Formula::neg(f.clone()), f.sup_range(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }

    #[test]
    fn sup_base_and_step() {
        assert_eq!(p().sup(0), p());
        // p^1 = ~(p & ~p)
        let p1 = Formula::neg(Formula::and(p(), Formula::neg(p())));
        assert_eq!(p().sup(1), p1);
        // p^{k} nests exactly k layers of ~(. & ~.)
        fn layers(f: &Formula) -> usize {
            match f {
                Formula::Neg(inner) => match &**inner {
                    Formula::And(l, r) => match &**r {
                        Formula::Neg(rr) if **rr == **l => 1 + layers(l),
                        _ => 0,
                    },
                    _ => 0,
                },
                _ => 0,
            }
        }
        for k in 0..6 {
            assert_eq!(layers(&p().sup(k)), k as usize);
        }
    }

    #[test]
    fn sup_range_left_associated() {
        let f = p().sup_range(3);
        let expect = Formula::and(Formula::and(p().sup(1), p().sup(2)), p().sup(3));
        assert_eq!(f, expect);
    }

    #[test]
    fn bot_expansion() {
        let expect = Formula::and(
            Formula::and(p(), Formula::neg(p())),
            Formula::circ(p()),
        );
        assert_eq!(
            expand_defined(&Sugar::Bot, p(), SugarContext::sigma()).unwrap(),
            expect
        );
        assert!(expand_defined(&Sugar::Bot, p(), SugarContext::c_family(1)).is_err());
    }

    #[test]
    fn snot_is_logic_dependent() {
        let sigma = expand_defined(&Sugar::Snot, p(), SugarContext::sigma()).unwrap();
        assert_eq!(sigma, Formula::imp(p(), bot_sigma(p())));
        let c1 = expand_defined(&Sugar::Snot, p(), SugarContext::c_family(1)).unwrap();
        assert_eq!(c1, Formula::and(Formula::neg(p()), p().sup(1)));
    }

    #[test]
    fn exponent_bounds() {
        let err = expand_defined(&Sugar::Sup(3), p(), SugarContext::c_family(2)).unwrap_err();
        assert_eq!(err, SugarError::ExponentOutOfRange { k: 3, n: 2 });
        assert!(expand_defined(&Sugar::Sup(2), p(), SugarContext::c_family(2)).is_ok());
        assert!(expand_defined(&Sugar::Sup(1), p(), SugarContext::sigma()).is_err());
    }
}
