//! Snapshot domains and multioperations.
//!
//! A snapshot is a tuple over the two-element Boolean algebra recording
//! the simultaneous state of a formula and its iterated negations; the
//! multioperations return nonempty *sets* of snapshots, constraining only
//! some coordinates. Sets are represented as bitmasks over the domain,
//! which never has more than `n + 2` elements.

use std::fmt::Write as _;

/// Bitmask over domain indices. Domains are tiny (3 to 8 snapshots).
pub type Mask = u16;

/// A truth value: a bit tuple of width 2 (three-valued logics) or
/// `n + 1` (the `C_n` hierarchy). Coordinate 1 is the designation bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Snapshot {
    width: u8,
    bits: u8,
}

impl Snapshot {
    pub fn new(coords: &[u8]) -> Self {
        assert!(coords.len() >= 2 && coords.len() <= 8);
        let mut bits = 0u8;
        for (i, &c) in coords.iter().enumerate() {
            assert!(c <= 1);
            bits |= c << i;
        }
        Snapshot { width: coords.len() as u8, bits }
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    /// 1-based coordinate access, as written on paper.
    pub fn coord(&self, i: usize) -> u8 {
        assert!(i >= 1 && i <= self.width as usize);
        (self.bits >> (i - 1)) & 1
    }

    pub fn coords(&self) -> Vec<u8> {
        (1..=self.width as usize).map(|i| self.coord(i)).collect()
    }

    pub fn designated(&self) -> bool {
        self.coord(1) == 1
    }
}

impl std::fmt::Debug for Snapshot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for i in 1..=self.width as usize {
            if i > 1 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.coord(i))?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    And,
    Or,
    Imp,
}

impl BinOp {
    pub const ALL: [BinOp; 3] = [BinOp::And, BinOp::Or, BinOp::Imp];

    pub fn name(self) -> &'static str {
        match self {
            BinOp::And => "and",
            BinOp::Or => "or",
            BinOp::Imp => "imp",
        }
    }

    fn bool_op(self, a: u8, b: u8) -> u8 {
        match self {
            BinOp::And => a & b,
            BinOp::Or => a | b,
            BinOp::Imp => (1 - a) | b,
        }
    }
}

/// Which negation multioperation a logic binds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegVariant {
    /// Constrains the first output coordinate only.
    Plain,
    /// Additionally bounds the second output coordinate by the input's
    /// first.
    Strengthened,
}

/// Which consistency multioperation a logic binds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircVariant {
    /// First coordinate at most the complement of the contradiction bit.
    Weak,
    /// First coordinate equal to it.
    Exact,
    /// Deterministic: both coordinates fixed.
    Deterministic,
}

/// Membership classification of a snapshot within its domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValueClass {
    pub designated: bool,
    pub undesignated: bool,
    pub inconsistent: bool,
    pub boolean: bool,
}

/// A snapshot domain with its multioperation tables, precomputed.
#[derive(Debug, Clone)]
pub struct Algebra {
    n: u32,
    domain: Vec<Snapshot>,
    labels: Vec<String>,
    designated: Mask,
    boolean: Mask,
    inconsistent: Mask,
    neg: Vec<Mask>,
    circ: Option<Vec<Mask>>,
    bin: [Vec<Vec<Mask>>; 3],
}

/// The domain of the level-`n` swap structure, in display order: the
/// classical true value first, the inconsistent values by index, the
/// classical false value last. `n = 1` is the three-valued domain.
pub fn domain_values(n: u32) -> Vec<Snapshot> {
    assert!(n >= 1);
    let w = (n + 1) as usize;
    let mut out = Vec::with_capacity(w + 1);
    let mut t = vec![1u8; w];
    t[1] = 0;
    out.push(Snapshot::new(&t));
    for i in 0..n as usize {
        let mut v = vec![1u8; w];
        if i + 2 < w {
            v[i + 2] = 0;
        }
        out.push(Snapshot::new(&v));
    }
    let mut f = vec![1u8; w];
    f[0] = 0;
    out.push(Snapshot::new(&f));
    out
}

/// The defining constraint on level-`n` snapshots:
/// `(meet of the first k coordinates) join coordinate k+1 = 1` for every
/// `1 <= k <= n`.
pub fn snapshot_admissible(coords: &[u8], n: u32) -> bool {
    if coords.len() != (n + 1) as usize {
        return false;
    }
    for k in 1..=n as usize {
        let meet = coords[..k].iter().fold(1u8, |acc, &c| acc & c);
        if meet | coords[k] != 1 {
            return false;
        }
    }
    true
}

impl Algebra {
    /// Three-valued algebra for the `Sigma` logics.
    pub fn three_valued(neg: NegVariant, circ: CircVariant) -> Self {
        Self::build(1, false, neg, Some(circ))
    }

    /// Three-valued algebra over the circ-free signature.
    pub fn three_valued_no_circ(neg: NegVariant) -> Self {
        Self::build(1, false, neg, None)
    }

    /// Level-`n` algebra: strengthened negation, Boolean-preserving
    /// binary operations, no primitive consistency operator.
    pub fn cn(n: u32) -> Self {
        assert!(n >= 1);
        Self::build(n, true, NegVariant::Strengthened, None)
    }

    fn build(n: u32, boo_preserving: bool, neg: NegVariant, circ: Option<CircVariant>) -> Self {
        let domain = domain_values(n);
        let m = domain.len();
        let full: Mask = (1 << m) - 1;

        let labels: Vec<String> = if n == 1 {
            vec!["T".into(), "t".into(), "F".into()]
        } else {
            let mut v = vec!["T".to_string()];
            for i in 0..n {
                v.push(format!("t{i}"));
            }
            v.push("F".into());
            v
        };

        let mut designated: Mask = 0;
        let mut boolean: Mask = 0;
        for (i, s) in domain.iter().enumerate() {
            if s.designated() {
                designated |= 1 << i;
            }
        }
        boolean |= 1 << 0;
        boolean |= 1 << (m - 1);
        let inconsistent = full & !boolean;

        let filter = |pred: &dyn Fn(&Snapshot) -> bool| -> Mask {
            let mut mask = 0;
            for (i, s) in domain.iter().enumerate() {
                if pred(s) {
                    mask |= 1 << i;
                }
            }
            mask
        };

        let neg_table: Vec<Mask> = domain
            .iter()
            .map(|a| match neg {
                NegVariant::Plain => filter(&|c| c.coord(1) == a.coord(2)),
                NegVariant::Strengthened => {
                    filter(&|c| c.coord(1) == a.coord(2) && c.coord(2) <= a.coord(1))
                }
            })
            .collect();

        let circ_table = circ.map(|variant| {
            domain
                .iter()
                .map(|a| {
                    let contra = a.coord(1) & a.coord(2);
                    match variant {
                        CircVariant::Weak => filter(&|c| c.coord(1) <= 1 - contra),
                        CircVariant::Exact => filter(&|c| c.coord(1) == 1 - contra),
                        CircVariant::Deterministic => {
                            filter(&|c| c.coord(1) == 1 - contra && c.coord(2) == contra)
                        }
                    }
                })
                .collect::<Vec<_>>()
        });

        let bin = BinOp::ALL.map(|op| {
            domain
                .iter()
                .enumerate()
                .map(|(ai, a)| {
                    domain
                        .iter()
                        .enumerate()
                        .map(|(bi, b)| {
                            let target = op.bool_op(a.coord(1), b.coord(1));
                            let mut mask = filter(&|c| c.coord(1) == target);
                            let both_boo =
                                boolean & (1 << ai) != 0 && boolean & (1 << bi) != 0;
                            if boo_preserving && both_boo {
                                mask &= boolean;
                            }
                            mask
                        })
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        });

        Algebra {
            n,
            domain,
            labels,
            designated,
            boolean,
            inconsistent,
            neg: neg_table,
            circ: circ_table,
            bin,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn full_mask(&self) -> Mask {
        (1 << self.domain.len()) - 1
    }

    pub fn domain(&self) -> &[Snapshot] {
        &self.domain
    }

    pub fn snapshot(&self, i: usize) -> Snapshot {
        self.domain[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn index_of_snapshot(&self, s: &Snapshot) -> Option<usize> {
        self.domain.iter().position(|d| d == s)
    }

    /// Index of the classical true value.
    pub fn top(&self) -> usize {
        0
    }

    /// Index of the classical false value.
    pub fn bot(&self) -> usize {
        self.domain.len() - 1
    }

    pub fn designated_mask(&self) -> Mask {
        self.designated
    }

    pub fn undesignated_mask(&self) -> Mask {
        self.full_mask() & !self.designated
    }

    pub fn boolean_mask(&self) -> Mask {
        self.boolean
    }

    pub fn inconsistent_mask(&self) -> Mask {
        self.inconsistent
    }

    pub fn is_designated(&self, i: usize) -> bool {
        self.designated & (1 << i) != 0
    }

    pub fn classify(&self, i: usize) -> ValueClass {
        let bit = 1 << i;
        ValueClass {
            designated: self.designated & bit != 0,
            undesignated: self.designated & bit == 0,
            inconsistent: self.inconsistent & bit != 0,
            boolean: self.boolean & bit != 0,
        }
    }

    pub fn neg_mask(&self, a: usize) -> Mask {
        self.neg[a]
    }

    pub fn circ_mask(&self, a: usize) -> Option<Mask> {
        self.circ.as_ref().map(|t| t[a])
    }

    pub fn has_circ(&self) -> bool {
        self.circ.is_some()
    }

    pub fn bin_mask(&self, op: BinOp, a: usize, b: usize) -> Mask {
        self.bin[op as usize][a][b]
    }

    /// The obligation multioperator: output first coordinate is the meet
    /// of the arguments' first coordinates. `args` must be nonempty.
    pub fn obl_mask(&self, args: Mask) -> Mask {
        assert!(args != 0, "obligation needs a nonempty argument set");
        if args & !self.designated != 0 {
            // some argument is undesignated: meet is 0
            self.undesignated_mask()
        } else {
            self.designated
        }
    }

    pub fn mask_to_indices(&self, mask: Mask) -> Vec<usize> {
        (0..self.domain.len()).filter(|i| mask & (1 << i) != 0).collect()
    }

    pub fn mask_to_labels(&self, mask: Mask) -> Vec<String> {
        self.mask_to_indices(mask).into_iter().map(|i| self.labels[i].clone()).collect()
    }

    fn set_text(&self, mask: Mask) -> String {
        format!("{{{}}}", self.mask_to_labels(mask).join(","))
    }

    /// Stable plain-text rendering of an operator's table. Rows are the
    /// first argument, columns the second, both in domain order.
    pub fn truth_table(&self, op: &str) -> Option<String> {
        let mut out = String::new();
        let _ = writeln!(out, "op: {op}");
        match op {
            "neg" => {
                for a in 0..self.size() {
                    let _ = writeln!(out, "{} | {}", self.labels[a], self.set_text(self.neg[a]));
                }
            }
            "circ" => {
                let table = self.circ.as_ref()?;
                for a in 0..self.size() {
                    let _ = writeln!(out, "{} | {}", self.labels[a], self.set_text(table[a]));
                }
            }
            "and" | "or" | "imp" => {
                let binop = match op {
                    "and" => BinOp::And,
                    "or" => BinOp::Or,
                    _ => BinOp::Imp,
                };
                let _ = writeln!(out, "{} | {}", op, self.labels.join(" | "));
                for a in 0..self.size() {
                    let cells: Vec<String> = (0..self.size())
                        .map(|b| self.set_text(self.bin_mask(binop, a, b)))
                        .collect();
                    let _ = writeln!(out, "{} | {}", self.labels[a], cells.join(" | "));
                }
            }
            _ => return None,
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_matches_defining_constraint() {
        // oracle: filter all bit tuples by the admissibility constraint
        for n in 1..=6u32 {
            let w = (n + 1) as usize;
            let mut expected = Vec::new();
            for bits in 0..(1u32 << w) {
                let coords: Vec<u8> = (0..w).map(|i| ((bits >> i) & 1) as u8).collect();
                if snapshot_admissible(&coords, n) {
                    expected.push(Snapshot::new(&coords));
                }
            }
            let got = domain_values(n);
            assert_eq!(got.len(), (n + 2) as usize, "cardinality at n={n}");
            assert_eq!(expected.len(), got.len());
            for s in &got {
                assert!(expected.contains(s), "{s:?} not admissible at n={n}");
            }
        }
    }

    #[test]
    fn three_valued_domain_order() {
        let d = domain_values(1);
        assert_eq!(d[0].coords(), vec![1, 0]); // T
        assert_eq!(d[1].coords(), vec![1, 1]); // t
        assert_eq!(d[2].coords(), vec![0, 1]); // F
    }

    #[test]
    fn c2_domain_tuples() {
        let d = domain_values(2);
        let tuples: Vec<Vec<u8>> = d.iter().map(|s| s.coords()).collect();
        assert_eq!(
            tuples,
            vec![vec![1, 0, 1], vec![1, 1, 0], vec![1, 1, 1], vec![0, 1, 1]]
        );
    }

    #[test]
    fn designation_is_first_coordinate() {
        for n in 1..=4 {
            let alg = Algebra::cn(n);
            for i in 0..alg.size() {
                assert_eq!(alg.is_designated(i), alg.snapshot(i).coord(1) == 1);
            }
            assert_eq!(alg.mask_to_indices(alg.undesignated_mask()), vec![alg.bot()]);
        }
    }

    #[test]
    fn nonempty_outputs_everywhere() {
        let mut algebras = vec![
            Algebra::three_valued(NegVariant::Plain, CircVariant::Weak),
            Algebra::three_valued(NegVariant::Plain, CircVariant::Exact),
            Algebra::three_valued(NegVariant::Plain, CircVariant::Deterministic),
            Algebra::three_valued(NegVariant::Strengthened, CircVariant::Deterministic),
            Algebra::three_valued_no_circ(NegVariant::Strengthened),
        ];
        for n in 1..=6 {
            algebras.push(Algebra::cn(n));
        }
        for alg in &algebras {
            for a in 0..alg.size() {
                assert_ne!(alg.neg_mask(a), 0);
                if let Some(m) = alg.circ_mask(a) {
                    assert_ne!(m, 0);
                }
                for op in BinOp::ALL {
                    for b in 0..alg.size() {
                        assert_ne!(alg.bin_mask(op, a, b), 0);
                    }
                }
            }
            for args in 1..alg.full_mask() + 1 {
                assert_ne!(alg.obl_mask(args), 0);
            }
        }
    }

    #[test]
    fn projection_laws() {
        for alg in [
            Algebra::three_valued(NegVariant::Plain, CircVariant::Weak),
            Algebra::three_valued(NegVariant::Strengthened, CircVariant::Exact),
            Algebra::cn(3),
        ] {
            for a in 0..alg.size() {
                let sa = alg.snapshot(a);
                for c in alg.mask_to_indices(alg.neg_mask(a)) {
                    assert_eq!(alg.snapshot(c).coord(1), sa.coord(2));
                }
                if let Some(m) = alg.circ_mask(a) {
                    for c in alg.mask_to_indices(m) {
                        assert!(alg.snapshot(c).coord(1) <= 1 - (sa.coord(1) & sa.coord(2)));
                    }
                }
                for op in BinOp::ALL {
                    for b in 0..alg.size() {
                        let sb = alg.snapshot(b);
                        for c in alg.mask_to_indices(alg.bin_mask(op, a, b)) {
                            assert_eq!(
                                alg.snapshot(c).coord(1),
                                op.bool_op(sa.coord(1), sb.coord(1))
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn deterministic_circ_is_singleton() {
        let alg = Algebra::three_valued(NegVariant::Plain, CircVariant::Deterministic);
        for a in 0..alg.size() {
            assert_eq!(alg.circ_mask(a).unwrap().count_ones(), 1);
        }
    }

    #[test]
    fn cn_boolean_preservation() {
        for n in 2..=4 {
            let alg = Algebra::cn(n);
            for op in BinOp::ALL {
                for a in alg.mask_to_indices(alg.boolean_mask()) {
                    for b in alg.mask_to_indices(alg.boolean_mask()) {
                        let out = alg.bin_mask(op, a, b);
                        assert_eq!(out & !alg.boolean_mask(), 0);
                        assert_eq!(out.count_ones(), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn obl_meet_of_first_coordinates() {
        let alg = Algebra::cn(2);
        // all designated arguments: output is the designated set
        let all_d = alg.designated_mask();
        assert_eq!(alg.obl_mask(all_d), alg.designated_mask());
        // any undesignated argument: output is the singleton false
        let with_f = all_d | (1 << alg.bot());
        assert_eq!(alg.obl_mask(with_f), 1 << alg.bot());
    }

    #[test]
    fn value_classes_partition() {
        for n in 1..=4 {
            let alg = Algebra::cn(n);
            assert_eq!(alg.inconsistent_mask() & alg.boolean_mask(), 0);
            assert_eq!(alg.inconsistent_mask() | alg.boolean_mask(), alg.full_mask());
            assert_eq!(alg.undesignated_mask().count_ones(), 1);
        }
    }
}
