//! Backtracking valuation solver with constraint propagation.
//!
//! One variable per (closure formula, world) slot, with candidate sets
//! kept as bitmasks over the snapshot domain. Membership conditions,
//! valuation restrictions and the countermodel goal are propagators kept
//! arc-consistent through a worklist; branching follows the fixed slot
//! order (formulas in closure order, worlds ascending) with snapshots
//! tried in domain order, so solutions appear lexicographically and the
//! first solution of a goal run is the first countermodel in enumeration
//! order.

use std::collections::VecDeque;
use std::time::Instant;

use crate::algebra::{Algebra, BinOp, Mask};
use crate::formula::{ClosureSet, Node};
use crate::logics::LogicDescriptor;
use crate::models::{compile_restrictions, KripkeFrame, SwapKripkeModel};

/// A complete admissible assignment of snapshots to slots.
#[derive(Debug, Clone)]
pub struct ValuationTable {
    values: Vec<u8>,
    world_count: usize,
}

impl ValuationTable {
    pub fn world_count(&self) -> usize {
        self.world_count
    }

    pub fn value(&self, formula_idx: usize, world_idx: usize) -> usize {
        self.values[formula_idx * self.world_count + world_idx] as usize
    }

    pub fn into_model(
        self,
        logic: LogicDescriptor,
        frame: KripkeFrame,
        closure: ClosureSet,
    ) -> SwapKripkeModel {
        SwapKripkeModel::new(logic, frame, closure, self.values)
    }
}

/// Countermodel goal: at some world all premises designated and the
/// conclusion undesignated.
#[derive(Debug, Clone)]
pub(crate) struct Goal {
    pub premises: Vec<usize>,
    pub conclusion: usize,
}

enum Constraint {
    Neg { a: usize, c: usize },
    Circ { a: usize, c: usize },
    Bin { op: BinOp, a: usize, b: usize, c: usize },
    Obl { args: Vec<usize>, c: usize },
    /// Three-valued da Costa restriction: an inconsistent argument
    /// forces its contradiction to the classical true value.
    Contra3 { a: usize, conj: usize },
    /// Hierarchy forcing: `t_0` forces the contradiction to true,
    /// `t_k` forces it inconsistent and the chain link to `t_{k-1}`.
    CnContra { a: usize, conj: usize, chain: Option<usize> },
    /// Boolean arguments force a Boolean compound.
    BooBin { a: usize, b: usize, c: usize },
    /// A Boolean argument forces a Boolean obligation.
    BooObl { a: usize, o: usize },
    /// A designated obligation forces the classical true value at a
    /// successor.
    Strict { o: usize, a: usize },
}

pub(crate) struct Solver<'a> {
    alg: &'a Algebra,
    world_count: usize,
    slot_count: usize,
    masks: Vec<Mask>,
    constraints: Vec<Constraint>,
    watchers: Vec<Vec<u32>>,
    queue: VecDeque<u32>,
    queued: Vec<bool>,
    goal: Option<Goal>,
    nodes: u64,
}

const DEADLINE_CHECK_INTERVAL: u64 = 1024;

impl<'a> Solver<'a> {
    pub fn new(
        logic: &'a LogicDescriptor,
        frame: &KripkeFrame,
        closure: &ClosureSet,
        goal: Option<Goal>,
    ) -> Self {
        let alg = logic.algebra();
        let nw = frame.world_count();
        let nf = closure.len();
        let slot = |f: usize, w: usize| f * nw + w;

        let mut constraints = Vec::new();
        for fi in 0..nf {
            match closure.node(fi) {
                Node::Atom => {}
                Node::Neg(x) => {
                    for w in 0..nw {
                        constraints.push(Constraint::Neg { a: slot(x, w), c: slot(fi, w) });
                    }
                }
                Node::Circ(x) => {
                    for w in 0..nw {
                        constraints.push(Constraint::Circ { a: slot(x, w), c: slot(fi, w) });
                    }
                }
                Node::Obl(x) => {
                    for w in 0..nw {
                        let args = frame.successors(w).iter().map(|&s| slot(x, s)).collect();
                        constraints.push(Constraint::Obl { args, c: slot(fi, w) });
                    }
                    if logic.restrictions().strict_obl {
                        for w in 0..nw {
                            for &s in frame.successors(w) {
                                constraints
                                    .push(Constraint::Strict { o: slot(fi, w), a: slot(x, s) });
                            }
                        }
                    }
                }
                Node::And(l, r) => {
                    for w in 0..nw {
                        constraints.push(Constraint::Bin {
                            op: BinOp::And,
                            a: slot(l, w),
                            b: slot(r, w),
                            c: slot(fi, w),
                        });
                    }
                }
                Node::Or(l, r) => {
                    for w in 0..nw {
                        constraints.push(Constraint::Bin {
                            op: BinOp::Or,
                            a: slot(l, w),
                            b: slot(r, w),
                            c: slot(fi, w),
                        });
                    }
                }
                Node::Imp(l, r) => {
                    for w in 0..nw {
                        constraints.push(Constraint::Bin {
                            op: BinOp::Imp,
                            a: slot(l, w),
                            b: slot(r, w),
                            c: slot(fi, w),
                        });
                    }
                }
            }
        }

        let r = logic.restrictions();
        let inst = compile_restrictions(logic, closure);
        for &(f, conj) in &inst.contra {
            for w in 0..nw {
                if r.cn_rest {
                    constraints.push(Constraint::CnContra {
                        a: slot(f, w),
                        conj: slot(conj, w),
                        chain: None,
                    });
                } else {
                    constraints.push(Constraint::Contra3 { a: slot(f, w), conj: slot(conj, w) });
                }
            }
        }
        for &(f, conj, chain) in &inst.chain {
            for w in 0..nw {
                if r.cn_rest {
                    constraints.push(Constraint::CnContra {
                        a: slot(f, w),
                        conj: slot(conj, w),
                        chain: Some(slot(chain, w)),
                    });
                } else {
                    constraints.push(Constraint::Contra3 { a: slot(f, w), conj: slot(conj, w) });
                }
            }
        }
        if r.ca_bin {
            for &(l, rr, c) in &inst.bin {
                for w in 0..nw {
                    constraints.push(Constraint::BooBin {
                        a: slot(l, w),
                        b: slot(rr, w),
                        c: slot(c, w),
                    });
                }
            }
        }
        if r.ca_obl || r.cn_obl_boo {
            for &(f, o) in &inst.obl {
                for w in 0..nw {
                    constraints.push(Constraint::BooObl { a: slot(f, w), o: slot(o, w) });
                }
            }
        }

        let slot_count = nf * nw;
        let mut watchers = vec![Vec::new(); slot_count];
        for (ci, c) in constraints.iter().enumerate() {
            for s in constraint_slots(c) {
                watchers[s].push(ci as u32);
            }
        }

        let full = alg.full_mask();
        let queued = vec![true; constraints.len()];
        let queue: VecDeque<u32> = (0..constraints.len() as u32).collect();

        Solver {
            alg,
            world_count: nw,
            slot_count,
            masks: vec![full; slot_count],
            constraints,
            watchers,
            queue,
            queued,
            goal,
            nodes: 0,
        }
    }

    fn narrow(&mut self, slot: usize, allowed: Mask) -> Result<bool, ()> {
        let new = self.masks[slot] & allowed;
        if new == self.masks[slot] {
            return Ok(false);
        }
        if new == 0 {
            return Err(());
        }
        self.masks[slot] = new;
        for wi in 0..self.watchers[slot].len() {
            let ci = self.watchers[slot][wi];
            if !self.queued[ci as usize] {
                self.queued[ci as usize] = true;
                self.queue.push_back(ci);
            }
        }
        Ok(true)
    }

    fn revise(&mut self, ci: usize) -> Result<(), ()> {
        // take the constraint out to appease the borrow checker; the
        // vector itself is never resized during solving
        let c = std::mem::replace(&mut self.constraints[ci], Constraint::Contra3 { a: 0, conj: 0 });
        let result = self.revise_inner(&c);
        self.constraints[ci] = c;
        result
    }

    fn revise_inner(&mut self, c: &Constraint) -> Result<(), ()> {
        let size = self.alg.size();
        let desig = self.alg.designated_mask();
        let undes = self.alg.undesignated_mask();
        let boo = self.alg.boolean_mask();
        let top_bit: Mask = 1 << self.alg.top();
        match c {
            Constraint::Neg { a, c } => self.revise_unary(*a, *c, |alg, v| alg.neg_mask(v)),
            Constraint::Circ { a, c } => {
                self.revise_unary(*a, *c, |alg, v| alg.circ_mask(v).unwrap_or_else(|| alg.full_mask()))
            }
            Constraint::Bin { op, a, b, c } => {
                let (ma, mb, mc) = (self.masks[*a], self.masks[*b], self.masks[*c]);
                let mut sup_a: Mask = 0;
                let mut sup_b: Mask = 0;
                let mut sup_c: Mask = 0;
                for va in 0..size {
                    if ma & (1 << va) == 0 {
                        continue;
                    }
                    for vb in 0..size {
                        if mb & (1 << vb) == 0 {
                            continue;
                        }
                        let out = self.alg.bin_mask(*op, va, vb) & mc;
                        if out != 0 {
                            sup_a |= 1 << va;
                            sup_b |= 1 << vb;
                            sup_c |= out;
                        }
                    }
                }
                self.narrow(*a, sup_a)?;
                self.narrow(*b, sup_b)?;
                self.narrow(*c, sup_c)?;
                Ok(())
            }
            Constraint::Obl { args, c } => {
                let mc = self.masks[*c];
                let all_can_designate = args.iter().all(|&s| self.masks[s] & desig != 0);
                let some_can_fail = args.iter().any(|&s| self.masks[s] & undes != 0);
                let mut allowed_c: Mask = 0;
                if all_can_designate {
                    allowed_c |= desig;
                }
                if some_can_fail {
                    allowed_c |= undes;
                }
                self.narrow(*c, allowed_c)?;
                let mc = mc & allowed_c;
                if mc & undes == 0 {
                    // obligation designated: every successor designated
                    for i in 0..args.len() {
                        self.narrow(args[i], desig)?;
                    }
                } else if mc & desig == 0 {
                    // obligation undesignated: some successor fails; if
                    // all but one are pinned designated, pin the last
                    let open: Vec<usize> = args
                        .iter()
                        .copied()
                        .filter(|&s| self.masks[s] & undes != 0)
                        .collect();
                    if open.len() == 1 && args.iter().all(|&s| s == open[0] || self.masks[s] & undes == 0)
                    {
                        self.narrow(open[0], undes)?;
                    }
                    if open.is_empty() {
                        return Err(());
                    }
                }
                Ok(())
            }
            Constraint::Contra3 { a, conj } => {
                let t_bit: Mask = 1 << 1; // the sole inconsistent value
                if self.masks[*a] & !t_bit == 0 {
                    self.narrow(*conj, top_bit)?;
                }
                if self.masks[*conj] & top_bit == 0 {
                    self.narrow(*a, !t_bit)?;
                }
                Ok(())
            }
            Constraint::CnContra { a, conj, chain } => {
                let ma = self.masks[*a];
                let mconj = self.masks[*conj];
                let mchain = chain.map(|s| self.masks[s]);
                let full = self.alg.full_mask();
                let incons = self.alg.inconsistent_mask();
                let bot = self.alg.bot();
                let mut sup_a: Mask = 0;
                let mut sup_conj: Mask = 0;
                let mut sup_chain: Mask = 0;
                for va in 0..size {
                    if ma & (1 << va) == 0 {
                        continue;
                    }
                    let (conj_row, chain_row) = if va == 0 || va == bot {
                        (full, full)
                    } else {
                        let level = va - 1;
                        if level == 0 {
                            (top_bit, full)
                        } else {
                            (incons, 1 << level)
                        }
                    };
                    let ok_conj = conj_row & mconj;
                    let ok_chain = match mchain {
                        Some(mch) => chain_row & mch,
                        None => full,
                    };
                    if ok_conj != 0 && ok_chain != 0 {
                        sup_a |= 1 << va;
                        sup_conj |= ok_conj;
                        sup_chain |= ok_chain;
                    }
                }
                self.narrow(*a, sup_a)?;
                self.narrow(*conj, sup_conj)?;
                if let Some(s) = chain {
                    self.narrow(*s, sup_chain)?;
                }
                Ok(())
            }
            Constraint::BooBin { a, b, c } => {
                if self.masks[*a] & !boo == 0 && self.masks[*b] & !boo == 0 {
                    self.narrow(*c, boo)?;
                }
                if self.masks[*c] & boo == 0 {
                    // compound cannot be Boolean: arguments cannot both be
                    if self.masks[*a] & !boo == 0 {
                        self.narrow(*b, !boo)?;
                    }
                    if self.masks[*b] & !boo == 0 {
                        self.narrow(*a, !boo)?;
                    }
                }
                Ok(())
            }
            Constraint::BooObl { a, o } => {
                if self.masks[*a] & !boo == 0 {
                    self.narrow(*o, boo)?;
                }
                if self.masks[*o] & boo == 0 {
                    self.narrow(*a, !boo)?;
                }
                Ok(())
            }
            Constraint::Strict { o, a } => {
                if self.masks[*o] & undes == 0 {
                    self.narrow(*a, top_bit)?;
                }
                if self.masks[*a] & top_bit == 0 {
                    self.narrow(*o, undes)?;
                }
                Ok(())
            }
        }
    }

    fn revise_unary(
        &mut self,
        a: usize,
        c: usize,
        table: impl Fn(&Algebra, usize) -> Mask,
    ) -> Result<(), ()> {
        let (ma, mc) = (self.masks[a], self.masks[c]);
        let mut sup_a: Mask = 0;
        let mut sup_c: Mask = 0;
        for va in 0..self.alg.size() {
            if ma & (1 << va) == 0 {
                continue;
            }
            let out = table(self.alg, va) & mc;
            if out != 0 {
                sup_a |= 1 << va;
                sup_c |= out;
            }
        }
        self.narrow(a, sup_a)?;
        self.narrow(c, sup_c)?;
        Ok(())
    }

    /// Runs the constraint worklist to a fixpoint, then applies the goal
    /// reasoning, looping until nothing changes. Returns false when the
    /// branch is dead.
    fn propagate(&mut self) -> bool {
        loop {
            while let Some(ci) = self.queue.pop_front() {
                self.queued[ci as usize] = false;
                if self.revise(ci as usize).is_err() {
                    self.queue.clear();
                    self.queued.iter_mut().for_each(|q| *q = false);
                    return false;
                }
            }
            match self.apply_goal() {
                Err(()) => return false,
                Ok(true) => continue, // goal narrowing queued more work
                Ok(false) => return true,
            }
        }
    }

    /// Witness pruning: some world must still admit all premises
    /// designated and the conclusion undesignated; once only one world
    /// can, its slots are narrowed accordingly.
    fn apply_goal(&mut self) -> Result<bool, ()> {
        let goal = match &self.goal {
            Some(g) => g.clone(),
            None => return Ok(false),
        };
        let desig = self.alg.designated_mask();
        let undes = self.alg.undesignated_mask();
        let mut witness = None;
        let mut count = 0;
        for w in 0..self.world_count {
            let concl_ok = self.masks[goal.conclusion * self.world_count + w] & undes != 0;
            let prems_ok = goal
                .premises
                .iter()
                .all(|&p| self.masks[p * self.world_count + w] & desig != 0);
            if concl_ok && prems_ok {
                witness = Some(w);
                count += 1;
            }
        }
        match count {
            0 => Err(()),
            1 => {
                let w = witness.unwrap();
                let mut changed = self.narrow(goal.conclusion * self.world_count + w, undes)?;
                for &p in &goal.premises {
                    changed |= self.narrow(p * self.world_count + w, desig)?;
                }
                Ok(changed)
            }
            _ => Ok(false),
        }
    }

    fn first_open_slot(&self, from: usize) -> Option<usize> {
        (from..self.slot_count).find(|&s| self.masks[s].count_ones() > 1)
    }

    /// Depth-first enumeration of admissible assignments in lexicographic
    /// order. The visitor returns false to stop. `Err(())` reports an
    /// exhausted time budget.
    pub fn enumerate(
        &mut self,
        deadline: Option<Instant>,
        visit: &mut dyn FnMut(&ValuationTable) -> bool,
    ) -> Result<(), ()> {
        let _ = self.dfs(0, deadline, visit)?;
        Ok(())
    }

    fn dfs(
        &mut self,
        scan_from: usize,
        deadline: Option<Instant>,
        visit: &mut dyn FnMut(&ValuationTable) -> bool,
    ) -> Result<bool, ()> {
        self.nodes += 1;
        if self.nodes % DEADLINE_CHECK_INTERVAL == 0 {
            if let Some(d) = deadline {
                if Instant::now() > d {
                    return Err(());
                }
            }
        }
        if !self.propagate() {
            return Ok(true);
        }
        // masks only ever narrow, so slots decided before the parent's
        // branch point stay decided
        let slot = match self.first_open_slot(scan_from) {
            Some(s) => s,
            None => {
                let values: Vec<u8> = self
                    .masks
                    .iter()
                    .map(|m| m.trailing_zeros() as u8)
                    .collect();
                let table = ValuationTable { values, world_count: self.world_count };
                return Ok(visit(&table));
            }
        };
        let mask = self.masks[slot];
        for v in 0..self.alg.size() {
            if mask & (1 << v) == 0 {
                continue;
            }
            let saved = self.masks.clone();
            self.masks[slot] = 1 << v;
            for wi in 0..self.watchers[slot].len() {
                let ci = self.watchers[slot][wi];
                if !self.queued[ci as usize] {
                    self.queued[ci as usize] = true;
                    self.queue.push_back(ci);
                }
            }
            let keep_going = self.dfs(slot, deadline, visit)?;
            self.masks = saved;
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn constraint_slots(c: &Constraint) -> Vec<usize> {
    match c {
        Constraint::Neg { a, c } | Constraint::Circ { a, c } => vec![*a, *c],
        Constraint::Bin { a, b, c, .. } => vec![*a, *b, *c],
        Constraint::Obl { args, c } => {
            let mut v = args.clone();
            v.push(*c);
            v
        }
        Constraint::Contra3 { a, conj } => vec![*a, *conj],
        Constraint::CnContra { a, conj, chain } => {
            let mut v = vec![*a, *conj];
            if let Some(s) = chain {
                v.push(*s);
            }
            v
        }
        Constraint::BooBin { a, b, c } => vec![*a, *b, *c],
        Constraint::BooObl { a, o } => vec![*a, *o],
        Constraint::Strict { o, a } => vec![*o, *a],
    }
}
