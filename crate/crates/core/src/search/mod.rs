//! Bounded countermodel and validity search.
//!
//! Frames are enumerated serially (world count ascending, relation
//! bitmask ascending, non-serial relations skipped), and for each frame
//! the admissible valuations over the closure are explored by a
//! backtracking solver with constraint propagation. Verdicts are
//! relative to the explored bounds: `NoCounterexampleWithinBounds` is
//! not a validity proof, and countermodels are certified on the closure.

mod solver;

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::formula::{ClosureError, ClosureSet, Formula};
use crate::logics::LogicDescriptor;
use crate::models::{KripkeFrame, SwapKripkeModel};

pub(crate) use solver::Solver;
pub use solver::ValuationTable;

/// Default cap on closure sizes used by search and model loading.
pub const DEFAULT_CLOSURE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_worlds: usize,
    pub max_closure: usize,
    pub time_budget: Option<Duration>,
    /// When set, the reported countermodel is the first in enumeration
    /// order and runs are reproducible; otherwise the frame loop may be
    /// partitioned across threads and any countermodel may be returned.
    pub deterministic: bool,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_worlds: 2,
            max_closure: DEFAULT_CLOSURE_CAP,
            time_budget: Some(Duration::from_millis(10_000)),
            deterministic: true,
        }
    }
}

impl SearchBounds {
    pub fn with_max_worlds(max_worlds: usize) -> Self {
        SearchBounds { max_worlds, ..Default::default() }
    }
}

#[derive(Debug)]
pub enum Verdict {
    /// A model certified on its closure, with a world where every
    /// premise is designated and the conclusion is not.
    Countermodel { model: SwapKripkeModel, world: String },
    NoCounterexampleWithinBounds { frames_explored: usize },
}

impl Verdict {
    pub fn is_countermodel(&self) -> bool {
        matches!(self, Verdict::Countermodel { .. })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error("time budget exhausted after {frames_explored} frames (partial exploration)")]
    BudgetExhausted { frames_explored: usize },
}

/// All serial frames over `w0..w{k-1}` for `k = 1..=max_worlds`, in a
/// fixed order: `k` ascending, relation bitmask ascending (bit `i*k + j`
/// is the edge from world `i` to world `j`). No isomorphism reduction.
pub fn enumerate_frames(max_worlds: usize) -> impl Iterator<Item = KripkeFrame> {
    (1..=max_worlds).flat_map(|k| {
        let worlds: Vec<String> = (0..k).map(|i| format!("w{i}")).collect();
        (0u64..(1u64 << (k * k))).filter_map(move |mask| {
            let mut successors: Vec<Vec<usize>> = vec![Vec::new(); k];
            for i in 0..k {
                for j in 0..k {
                    if mask & (1 << (i * k + j)) != 0 {
                        successors[i].push(j);
                    }
                }
            }
            if successors.iter().any(|s| s.is_empty()) {
                return None; // not serial
            }
            Some(KripkeFrame::from_successors(worlds.clone(), successors))
        })
    })
}

/// Visits every admissible valuation table over the frame and closure,
/// exactly once, in the fixed order (formulas in closure order, worlds
/// ascending, snapshots in domain order). The visitor returns `false`
/// to stop early.
pub fn valuation_search<F>(
    logic: &LogicDescriptor,
    frame: &KripkeFrame,
    closure: &ClosureSet,
    time_budget: Option<Duration>,
    mut visitor: F,
) -> Result<(), SearchError>
where
    F: FnMut(&ValuationTable) -> bool,
{
    let deadline = time_budget.map(|d| Instant::now() + d);
    let mut solver = Solver::new(logic, frame, closure, None);
    solver.enumerate(deadline, &mut |table| visitor(table)).map_err(|_| {
        SearchError::BudgetExhausted { frames_explored: 0 }
    })?;
    Ok(())
}

struct Query<'a> {
    logic: &'a LogicDescriptor,
    closure: ClosureSet,
    premise_idxs: Vec<usize>,
    conclusion_idx: usize,
    deadline: Option<Instant>,
}

impl<'a> Query<'a> {
    fn run_frame(&self, frame: &KripkeFrame) -> Result<Option<(SwapKripkeModel, String)>, ()> {
        let goal = solver::Goal {
            premises: self.premise_idxs.clone(),
            conclusion: self.conclusion_idx,
        };
        let mut solver = Solver::new(self.logic, frame, &self.closure, Some(goal));
        let mut found: Option<ValuationTable> = None;
        solver.enumerate(self.deadline, &mut |table| {
            found = Some(table.clone());
            false // stop at the first hit
        })?;
        Ok(found.map(|table| {
            let model = table.into_model(self.logic.clone(), frame.clone(), self.closure.clone());
            debug_assert!(
                crate::models::check_valuation(&model).is_empty(),
                "solver emitted an inadmissible table"
            );
            let world = witness_world(&model, &self.premise_idxs, self.conclusion_idx)
                .expect("solver result must witness the query");
            (model, world)
        }))
    }
}

/// First world of the model where all premises are designated and the
/// conclusion is not.
fn witness_world(
    model: &SwapKripkeModel,
    premise_idxs: &[usize],
    conclusion_idx: usize,
) -> Option<String> {
    let alg = model.logic().algebra();
    for (wi, w) in model.frame().worlds().iter().enumerate() {
        let concl_false = !alg.is_designated(model.value(conclusion_idx, wi));
        let prems_true = premise_idxs.iter().all(|&p| alg.is_designated(model.value(p, wi)));
        if concl_false && prems_true {
            return Some(w.clone());
        }
    }
    None
}

/// Searches for a model and world making every premise true and the
/// conclusion false. In deterministic mode the first countermodel in
/// enumeration order is returned.
pub fn find_countermodel(
    logic: &LogicDescriptor,
    premises: &[Formula],
    conclusion: &Formula,
    bounds: &SearchBounds,
) -> Result<Verdict, SearchError> {
    let mut targets: Vec<Formula> = premises.to_vec();
    targets.push(conclusion.clone());
    let closure = logic.closure(&targets, bounds.max_closure)?;
    let premise_idxs: Vec<usize> = premises
        .iter()
        .map(|p| closure.index_of(p).expect("premise is a closure target"))
        .collect();
    let conclusion_idx = closure.index_of(conclusion).expect("conclusion is a closure target");
    let deadline = bounds.time_budget.map(|d| Instant::now() + d);
    let query = Query { logic, closure, premise_idxs, conclusion_idx, deadline };

    if bounds.deterministic {
        let mut frames_explored = 0;
        for frame in enumerate_frames(bounds.max_worlds) {
            match query.run_frame(&frame) {
                Ok(Some((model, world))) => return Ok(Verdict::Countermodel { model, world }),
                Ok(None) => frames_explored += 1,
                Err(()) => return Err(SearchError::BudgetExhausted { frames_explored }),
            }
        }
        Ok(Verdict::NoCounterexampleWithinBounds { frames_explored })
    } else {
        run_parallel(&query, bounds)
    }
}

/// Non-deterministic mode: workers pull frames from the shared
/// enumeration; the first countermodel found wins. Shared state is the
/// cancellation flag and the result slot.
fn run_parallel(query: &Query<'_>, bounds: &SearchBounds) -> Result<Verdict, SearchError> {
    let frames: Vec<KripkeFrame> = enumerate_frames(bounds.max_worlds).collect();
    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let explored = AtomicUsize::new(0);
    let result: Mutex<Option<Result<(SwapKripkeModel, String), ()>>> = Mutex::new(None);
    let workers = std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1).min(8);

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                if stop.load(Ordering::Relaxed) {
                    return;
                }
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= frames.len() {
                    return;
                }
                match query.run_frame(&frames[i]) {
                    Ok(Some(hit)) => {
                        let mut slot = result.lock().unwrap();
                        if slot.is_none() {
                            *slot = Some(Ok(hit));
                        }
                        stop.store(true, Ordering::Relaxed);
                        return;
                    }
                    Ok(None) => {
                        explored.fetch_add(1, Ordering::Relaxed);
                    }
                    Err(()) => {
                        let mut slot = result.lock().unwrap();
                        if slot.is_none() {
                            *slot = Some(Err(()));
                        }
                        stop.store(true, Ordering::Relaxed);
                        return;
                    }
                }
            });
        }
    });

    let frames_explored = explored.load(Ordering::Relaxed);
    match result.into_inner().unwrap() {
        Some(Ok((model, world))) => Ok(Verdict::Countermodel { model, world }),
        Some(Err(())) => Err(SearchError::BudgetExhausted { frames_explored }),
        None => Ok(Verdict::NoCounterexampleWithinBounds { frames_explored }),
    }
}

/// Validity check as countermodel search from no premises.
pub fn check_validity_bounded(
    logic: &LogicDescriptor,
    f: &Formula,
    bounds: &SearchBounds,
) -> Result<Verdict, SearchError> {
    find_countermodel(logic, &[], f, bounds)
}
