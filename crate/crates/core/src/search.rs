//! Exhaustive backtracking search for distance magic labelings.
//!
//! Labels from the centered set are assigned to vertices one at a time. After
//! each assignment every vertex constraint "neighbour labels sum to 0" is
//! checked against what is still possible:
//!
//! * closure: a vertex whose neighbourhood is fully labeled must have weight 0;
//! * interval: with `k >= 1` unlabeled neighbours, the partial sum plus the
//!   `k` smallest (largest) unused labels must be `<= 0` (`>= 0`), and a
//!   single missing neighbour must be able to take exactly the missing value;
//! * sign symmetry: the negation of a magic labeling is magic, so the first
//!   vertex only receives positive labels.
//!
//! Without a budget the search is complete, and `NotFound` is a proof that no
//! labeling exists.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::Graph;
use crate::labeling::{verify, CenteredLabeling};
use crate::qw::{build_qw, SegmentProfile};
use crate::spectral::{nullspace_filter, FilterVerdict, RuleOut};

/// Largest order the search accepts (available labels are tracked in a `u64`).
pub const MAX_SEARCH_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph has odd valency {0}; no distance magic labeling exists")]
    OddValency(usize),
    #[error("graph has odd order {0}; the centered label set needs an even order")]
    OddOrder(usize),
    #[error("order {0} exceeds the search limit of {MAX_SEARCH_ORDER}")]
    TooLarge(usize),
    #[error("search budget exhausted before a verdict was reached")]
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    #[default]
    FindOne,
    CountAll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VertexOrder {
    /// Next vertex belongs to the neighbourhood with the fewest unlabeled
    /// vertices; ties go to more labeled neighbours, then lower index.
    #[default]
    MostConstrained,
    /// Most labeled neighbours first, ties by index; recomputed at every depth.
    LabeledNeighbors,
    /// Fixed order: descending degree, then index.
    Static,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PruneRules {
    pub zero_sum_closure: bool,
    pub interval: bool,
    pub sign_symmetry: bool,
}

impl Default for PruneRules {
    fn default() -> Self {
        Self {
            zero_sum_closure: true,
            interval: true,
            sign_symmetry: true,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    pub mode: SearchMode,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Run the spectral filter first; a rule-out ends the search as `NotFound`.
    pub prefilter: bool,
    pub order: VertexOrder,
    pub rules: PruneRules,
    /// Split the tree over the first vertex's labels across the rayon pool.
    pub parallel: bool,
}

impl SearchOptions {
    pub fn find() -> Self {
        Self::default()
    }

    pub fn count() -> Self {
        Self {
            mode: SearchMode::CountAll,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Found(CenteredLabeling),
    NotFound,
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub closure_prunes: u64,
    pub interval_prunes: u64,
    pub leaf_rejects: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: &Self) {
        self.nodes += other.nodes;
        self.closure_prunes += other.closure_prunes;
        self.interval_prunes += other.interval_prunes;
        self.leaf_rejects += other.leaf_rejects;
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// In count mode: the first labeling found, if any.
    pub verdict: Verdict,
    /// Count mode only: labelings up to negation.
    pub folded_count: Option<u64>,
    /// Count mode only: all labelings (twice the folded count).
    pub raw_count: Option<u64>,
    pub stats: SearchStats,
    /// Set when the spectral prefilter decided the outcome.
    pub ruled_out: Option<RuleOut>,
}

impl SearchOutcome {
    pub fn labeling(&self) -> Option<&CenteredLabeling> {
        match &self.verdict {
            Verdict::Found(l) => Some(l),
            _ => None,
        }
    }
}

fn check_graph(g: &Graph) -> Result<(), SearchError> {
    let n = g.order();
    if n > MAX_SEARCH_ORDER {
        return Err(SearchError::TooLarge(n));
    }
    let r = g.valency().ok_or(SearchError::NotRegular)?;
    if r % 2 == 1 {
        return Err(SearchError::OddValency(r));
    }
    if !g.is_connected() {
        return Err(SearchError::Disconnected);
    }
    if n % 2 == 1 {
        return Err(SearchError::OddOrder(n));
    }
    Ok(())
}

pub fn find_labeling(g: &Graph, opts: &SearchOptions) -> Result<SearchOutcome, SearchError> {
    check_graph(g)?;
    if opts.prefilter {
        if let Ok(FilterVerdict::RuledOut(reason)) = nullspace_filter(g) {
            let counting = opts.mode == SearchMode::CountAll;
            return Ok(SearchOutcome {
                verdict: Verdict::NotFound,
                folded_count: counting.then_some(0),
                raw_count: counting.then_some(0),
                stats: SearchStats::default(),
                ruled_out: Some(reason),
            });
        }
    }

    let shared = Shared {
        stop: AtomicBool::new(false),
        nodes: AtomicU64::new(0),
        deadline: opts.time_budget.map(|d| Instant::now() + d),
        node_budget: opts.node_budget,
    };
    let root = State::new(g);
    let first = root.pick_vertex(g, opts.order, 0);
    let first_values: Vec<usize> = root
        .candidate_values(g, first, opts.rules)
        .into_iter()
        .filter(|&vi| !opts.rules.sign_symmetry || root.value(vi) > 0)
        .collect();

    let run_branch = |vi: usize| {
        let mut st = root.clone();
        let mut acc = Accum::default();
        if st.assign(g, first, vi, opts.rules, &mut acc.stats) {
            st.descend(g, opts, &shared, 1, &mut acc);
        }
        st.unassign(g, first, vi);
        acc
    };
    let results: Vec<Accum> = if opts.parallel {
        first_values.par_iter().map(|&vi| run_branch(vi)).collect()
    } else {
        let mut out = Vec::new();
        for &vi in &first_values {
            let acc = run_branch(vi);
            let done = opts.mode == SearchMode::FindOne && acc.found.is_some() || acc.exhausted;
            out.push(acc);
            if done {
                break;
            }
        }
        out
    };

    let mut stats = SearchStats {
        nodes: 1,
        ..SearchStats::default()
    };
    let mut found = None;
    let mut count = 0u64;
    let mut exhausted = false;
    for acc in results {
        stats.absorb(&acc.stats);
        count += acc.count;
        exhausted |= acc.exhausted;
        if found.is_none() {
            found = acc.found;
        }
    }

    let verdict = match (found, exhausted, opts.mode) {
        (Some(lab), _, SearchMode::FindOne) => Verdict::Found(lab),
        (_, true, _) => Verdict::BudgetExhausted,
        (Some(lab), false, SearchMode::CountAll) => Verdict::Found(lab),
        (None, false, _) => Verdict::NotFound,
    };
    let (folded, raw) = match opts.mode {
        SearchMode::FindOne => (None, None),
        SearchMode::CountAll if opts.rules.sign_symmetry => (Some(count), Some(2 * count)),
        SearchMode::CountAll => (Some(count / 2), Some(count)),
    };
    Ok(SearchOutcome {
        verdict,
        folded_count: folded,
        raw_count: raw,
        stats,
        ruled_out: None,
    })
}

/// Whether `QW(p)` admits a distance magic labeling, by complete search.
pub fn decide_profile(p: &SegmentProfile, opts: &SearchOptions) -> Result<bool, SearchError> {
    let g = build_qw(&p.to_sequence());
    let opts = SearchOptions {
        mode: SearchMode::FindOne,
        ..opts.clone()
    };
    match find_labeling(&g, &opts)?.verdict {
        Verdict::Found(_) => Ok(true),
        Verdict::NotFound => Ok(false),
        Verdict::BudgetExhausted => Err(SearchError::BudgetExhausted),
    }
}

struct Shared {
    stop: AtomicBool,
    nodes: AtomicU64,
    deadline: Option<Instant>,
    node_budget: Option<u64>,
}

#[derive(Default)]
struct Accum {
    found: Option<CenteredLabeling>,
    count: u64,
    exhausted: bool,
    stats: SearchStats,
    unflushed: u64,
}

#[derive(Clone)]
struct State {
    n: usize,
    /// Value index per vertex; label = 2 * index + 1 - n.
    assigned: Vec<Option<usize>>,
    partial: Vec<i64>,
    unlabeled: Vec<usize>,
    labeled_nbrs: Vec<usize>,
    /// Bit `i` set iff value index `i` is unused.
    free: u64,
    /// Value indices in try order: descending absolute value, positive first.
    try_order: Vec<usize>,
    static_order: Vec<usize>,
    valency: usize,
}

impl State {
    fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut try_order: Vec<usize> = (0..n).collect();
        let label = |i: usize| 2 * i as i64 + 1 - n as i64;
        try_order.sort_by_key(|&i| (std::cmp::Reverse(label(i).abs()), std::cmp::Reverse(label(i))));
        let mut static_order: Vec<usize> = (0..n).collect();
        static_order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        Self {
            n,
            assigned: vec![None; n],
            partial: vec![0; n],
            unlabeled: (0..n).map(|v| g.degree(v)).collect(),
            labeled_nbrs: vec![0; n],
            free: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            try_order,
            static_order,
            valency: g.degree(0),
        }
    }

    fn value(&self, vi: usize) -> i64 {
        2 * vi as i64 + 1 - self.n as i64
    }

    fn index_of(&self, value: i64) -> Option<usize> {
        let shifted = value + self.n as i64 - 1;
        (shifted >= 0 && shifted % 2 == 0 && shifted / 2 < self.n as i64).then_some((shifted / 2) as usize)
    }

    fn pick_vertex(&self, g: &Graph, order: VertexOrder, depth: usize) -> usize {
        let unlabeled = (0..self.n).filter(|&v| self.assigned[v].is_none());
        match order {
            VertexOrder::Static => self.static_order[depth],
            VertexOrder::LabeledNeighbors => unlabeled
                .min_by_key(|&v| (std::cmp::Reverse(self.labeled_nbrs[v]), v))
                .expect("an unlabeled vertex remains"),
            VertexOrder::MostConstrained => unlabeled
                .min_by_key(|&v| {
                    let tightest = g
                        .neighbors(v)
                        .iter()
                        .map(|&w| self.unlabeled[w])
                        .min()
                        .unwrap_or(usize::MAX);
                    (tightest, std::cmp::Reverse(self.labeled_nbrs[v]), v)
                })
                .expect("an unlabeled vertex remains"),
        }
    }

    /// Value indices to try for `u`. With the interval rule on, a neighbour
    /// missing only `u` pins the value.
    fn candidate_values(&self, g: &Graph, u: usize, rules: PruneRules) -> Vec<usize> {
        if rules.interval {
            if let Some(&w) = g.neighbors(u).iter().find(|&&w| self.unlabeled[w] == 1) {
                return match self.index_of(-self.partial[w]) {
                    Some(vi) if self.free >> vi & 1 == 1 => vec![vi],
                    _ => Vec::new(),
                };
            }
        }
        self.try_order
            .iter()
            .copied()
            .filter(|&vi| self.free >> vi & 1 == 1)
            .collect()
    }

    /// Assigns and checks constraints; returns false on a prune. The caller
    /// must call `unassign` either way.
    fn assign(&mut self, g: &Graph, u: usize, vi: usize, rules: PruneRules, stats: &mut SearchStats) -> bool {
        let val = self.value(vi);
        self.assigned[u] = Some(vi);
        self.free &= !(1u64 << vi);
        for &w in g.neighbors(u) {
            self.partial[w] += val;
            self.unlabeled[w] -= 1;
            self.labeled_nbrs[w] += 1;
        }
        if rules.zero_sum_closure
            && g.neighbors(u)
                .iter()
                .any(|&w| self.unlabeled[w] == 0 && self.partial[w] != 0)
        {
            stats.closure_prunes += 1;
            return false;
        }
        if rules.interval && !self.intervals_feasible() {
            stats.interval_prunes += 1;
            return false;
        }
        true
    }

    fn unassign(&mut self, g: &Graph, u: usize, vi: usize) {
        let val = self.value(vi);
        self.assigned[u] = None;
        self.free |= 1u64 << vi;
        for &w in g.neighbors(u) {
            self.partial[w] -= val;
            self.unlabeled[w] += 1;
            self.labeled_nbrs[w] -= 1;
        }
    }

    fn intervals_feasible(&self) -> bool {
        let k_max = self.valency;
        let mut low = vec![0i64; k_max + 1];
        let mut high = vec![0i64; k_max + 1];
        let mut bits = self.free;
        let mut k = 0;
        while bits != 0 && k < k_max {
            let i = bits.trailing_zeros() as usize;
            k += 1;
            low[k] = low[k - 1] + self.value(i);
            bits &= bits - 1;
        }
        let mut bits = self.free;
        let mut k = 0;
        while bits != 0 && k < k_max {
            let i = 63 - bits.leading_zeros() as usize;
            k += 1;
            high[k] = high[k - 1] + self.value(i);
            bits &= !(1u64 << i);
        }
        let available = self.free.count_ones() as usize;
        (0..self.n).all(|v| {
            let k = self.unlabeled[v];
            if k == 0 {
                return true;
            }
            if k > available {
                return false;
            }
            let p = self.partial[v];
            if k == 1 {
                return matches!(self.index_of(-p), Some(vi) if self.free >> vi & 1 == 1);
            }
            p + low[k] <= 0 && 0 <= p + high[k]
        })
    }

    fn descend(&mut self, g: &Graph, opts: &SearchOptions, shared: &Shared, depth: usize, acc: &mut Accum) {
        if acc.exhausted || shared.stop.load(Ordering::Relaxed) {
            return;
        }
        acc.stats.nodes += 1;
        if over_budget(shared, acc) {
            acc.exhausted = true;
            shared.stop.store(true, Ordering::Relaxed);
            return;
        }
        if depth == self.n {
            self.leaf(g, opts, shared, acc);
            return;
        }
        let u = self.pick_vertex(g, opts.order, depth);
        for vi in self.candidate_values(g, u, opts.rules) {
            if self.assign(g, u, vi, opts.rules, &mut acc.stats) {
                self.descend(g, opts, shared, depth + 1, acc);
            }
            self.unassign(g, u, vi);
            if acc.exhausted || shared.stop.load(Ordering::Relaxed) {
                return;
            }
        }
    }

    fn leaf(&self, g: &Graph, opts: &SearchOptions, shared: &Shared, acc: &mut Accum) {
        let labels: Vec<i64> = self
            .assigned
            .iter()
            .map(|a| self.value(a.expect("complete assignment")))
            .collect();
        let lab = CenteredLabeling::from_raw(labels).expect("search orders are small");
        let ok = verify(g, &lab).map(|r| r.passed()).unwrap_or(false);
        if !ok {
            acc.stats.leaf_rejects += 1;
            return;
        }
        acc.count += 1;
        if acc.found.is_none() {
            acc.found = Some(lab);
        }
        if opts.mode == SearchMode::FindOne {
            shared.stop.store(true, Ordering::Relaxed);
        }
    }
}

const FLUSH_EVERY: u64 = 1024;

/// Node counts are batched into the shared counter; the deadline is checked
/// at each flush.
fn over_budget(shared: &Shared, acc: &mut Accum) -> bool {
    acc.unflushed += 1;
    let mut total = shared.nodes.load(Ordering::Relaxed) + acc.unflushed;
    if acc.unflushed == FLUSH_EVERY {
        total = shared.nodes.fetch_add(FLUSH_EVERY, Ordering::Relaxed) + FLUSH_EVERY;
        acc.unflushed = 0;
        if shared.deadline.is_some_and(|d| Instant::now() >= d) {
            return true;
        }
    }
    shared.node_budget.is_some_and(|b| total > b)
}
