//! Isomorph-free enumeration of small regular graphs and the spectral census.
//!
//! Graphs are generated by completing the adjacency vertex by vertex (each
//! vertex picks its remaining neighbours among higher-indexed vertices with
//! spare degree), with two symmetry restrictions that keep at least one
//! labeled copy of every isomorphism class: `N(0) = {1, ..., r}`, and the
//! neighbours of vertex 1 inside `{2..=r}` and inside `{r+1..n}` are both
//! initial runs. Duplicates are then removed by canonical certificate.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_certificate, CanonicalCertificate};
use crate::graph::Graph;
use crate::search::{find_labeling, SearchError, SearchOptions, Verdict};
use crate::spectral::nullspace_filter;

/// Largest order with a guaranteed complete enumeration.
pub const MAX_ENUMERATION_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("order {order} and valency {valency} have an odd product")]
    Parity { order: usize, valency: usize },
    #[error("valency {valency} is not below order {order}")]
    DegreeTooLarge { order: usize, valency: usize },
    #[error("order {0} is outside the supported range 1..={MAX_ENUMERATION_ORDER}")]
    OrderOutOfRange(usize),
    #[error("search failed on a candidate of order {order}: {source}")]
    Search { order: usize, source: SearchError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationTask {
    pub order: usize,
    pub valency: usize,
    pub connected_only: bool,
    /// Emit in certificate order instead of generation order.
    pub sorted: bool,
}

impl EnumerationTask {
    pub fn tetravalent(order: usize) -> Self {
        Self {
            order,
            valency: 4,
            connected_only: true,
            sorted: false,
        }
    }

    fn validate(&self) -> Result<(), EnumerationError> {
        let (order, valency) = (self.order, self.valency);
        if order == 0 || order > MAX_ENUMERATION_ORDER {
            return Err(EnumerationError::OrderOutOfRange(order));
        }
        if valency >= order {
            return Err(EnumerationError::DegreeTooLarge { order, valency });
        }
        if order * valency % 2 == 1 {
            return Err(EnumerationError::Parity { order, valency });
        }
        Ok(())
    }
}

/// All `r`-regular graphs of order `n` up to isomorphism, optionally only the
/// connected ones.
pub fn enumerate_regular(task: &EnumerationTask) -> Result<Vec<Graph>, EnumerationError> {
    task.validate()?;
    let mut seen = HashSet::new();
    let mut out: Vec<(CanonicalCertificate, Graph)> = Vec::new();
    let mut gen = Generator::new(task.order, task.valency);
    gen.run(&mut |g: Graph| {
        if task.connected_only && !g.is_connected() {
            return;
        }
        let cert = canonical_certificate(&g).expect("enumeration orders are within the certificate bound");
        if seen.insert(cert.clone()) {
            out.push((cert, g));
        }
    });
    if task.sorted {
        out.sort_by(|a, b| a.0.cmp(&b.0));
    }
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

struct Generator {
    n: usize,
    r: usize,
    deficit: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl Generator {
    fn new(n: usize, r: usize) -> Self {
        Self {
            n,
            r,
            deficit: vec![r; n],
            edges: Vec::new(),
        }
    }

    fn run(&mut self, emit: &mut dyn FnMut(Graph)) {
        if self.r == 0 {
            emit(Graph::empty(self.n).expect("order is positive"));
            return;
        }
        for w in 1..=self.r {
            self.add(0, w);
        }
        // vertex 1 already has neighbour 0; choose p in {2..=r} and q outside
        let need = self.r - 1;
        for p in 0..=need.min(self.r - 1) {
            let q = need - p;
            if self.r + q > self.n - 1 {
                continue;
            }
            let chosen: Vec<usize> = (2..2 + p).chain(self.r + 1..self.r + 1 + q).collect();
            for &w in &chosen {
                self.add(1, w);
            }
            if self.feasible_after(1) {
                self.vertex(2, emit);
            }
            for &w in chosen.iter().rev() {
                self.remove(1, w);
            }
        }
    }

    fn add(&mut self, u: usize, v: usize) {
        self.deficit[u] -= 1;
        self.deficit[v] -= 1;
        self.edges.push((u, v));
    }

    fn remove(&mut self, u: usize, v: usize) {
        self.deficit[u] += 1;
        self.deficit[v] += 1;
        let last = self.edges.pop();
        debug_assert_eq!(last, Some((u, v)));
    }

    /// After vertex `v` is complete, every later vertex must still be able to
    /// reach full degree using only other later vertices.
    fn feasible_after(&self, v: usize) -> bool {
        let open: Vec<usize> = (v + 1..self.n).filter(|&w| self.deficit[w] > 0).collect();
        let total: usize = open.iter().map(|&w| self.deficit[w]).sum();
        total.is_multiple_of(2) && open.iter().all(|&w| self.deficit[w] < open.len())
    }

    fn vertex(&mut self, v: usize, emit: &mut dyn FnMut(Graph)) {
        if v == self.n {
            emit(Graph::from_edges(self.n, self.edges.iter().copied()).expect("generated edges are simple"));
            return;
        }
        let need = self.deficit[v];
        if need == 0 {
            if self.feasible_after(v) {
                self.vertex(v + 1, emit);
            }
            return;
        }
        let options: Vec<usize> = (v + 1..self.n).filter(|&w| self.deficit[w] > 0).collect();
        if options.len() < need {
            return;
        }
        let mut pick = Vec::with_capacity(need);
        self.choose(v, &options, 0, need, &mut pick, emit);
    }

    fn choose(
        &mut self,
        v: usize,
        options: &[usize],
        from: usize,
        need: usize,
        pick: &mut Vec<usize>,
        emit: &mut dyn FnMut(Graph),
    ) {
        if pick.len() == need {
            if self.feasible_after(v) {
                self.vertex(v + 1, emit);
            }
            return;
        }
        for i in from..options.len() {
            if options.len() - i < need - pick.len() {
                break;
            }
            let w = options[i];
            self.add(v, w);
            pick.push(w);
            self.choose(v, options, i + 1, need, pick, emit);
            pick.pop();
            self.remove(v, w);
        }
    }
}

#[derive(Debug, Clone)]
pub struct CensusRow {
    pub order: usize,
    /// Connected graphs enumerated.
    pub total: usize,
    /// Graphs not ruled out by the spectral filter.
    pub candidates: Vec<Graph>,
    /// Candidates with a labeling found by search; `None` when search was not
    /// requested or the order is odd.
    pub confirmed: Option<usize>,
}

impl CensusRow {
    pub fn tsv(&self) -> String {
        let confirmed = self.confirmed.map_or_else(|| "-".to_owned(), |c| c.to_string());
        format!(
            "{}\t{}\t{}\t{}",
            self.order,
            self.total,
            self.candidates.len(),
            confirmed
        )
    }
}

pub const CENSUS_HEADER: &str = "order\ttotal\tcandidates\tconfirmed";

/// Enumerates connected tetravalent graphs per order, filters them, and
/// optionally searches every candidate.
pub fn census_pipeline(orders: &[usize], search: bool) -> Result<Vec<CensusRow>, EnumerationError> {
    let mut rows = Vec::with_capacity(orders.len());
    for &order in orders {
        let graphs = enumerate_regular(&EnumerationTask::tetravalent(order))?;
        let verdicts: Vec<bool> = graphs
            .par_iter()
            .map(|g| nullspace_filter(g).map(|v| v.is_candidate()).unwrap_or(false))
            .collect();
        let candidates: Vec<Graph> = graphs
            .iter()
            .zip(&verdicts)
            .filter(|(_, &c)| c)
            .map(|(g, _)| g.clone())
            .collect();
        let confirmed = if search && order % 2 == 0 {
            let found = candidates
                .par_iter()
                .map(|g| {
                    find_labeling(g, &SearchOptions::find())
                        .map(|o| matches!(o.verdict, Verdict::Found(_)))
                        .map_err(|source| EnumerationError::Search { order, source })
                })
                .collect::<Result<Vec<bool>, _>>()?;
            Some(found.into_iter().filter(|&f| f).count())
        } else {
            None
        };
        rows.push(CensusRow {
            order,
            total: graphs.len(),
            candidates,
            confirmed,
        });
    }
    Ok(rows)
}

/// Certificate → graph map, for membership checks against an enumeration.
pub fn certificate_index(graphs: &[Graph]) -> BTreeMap<CanonicalCertificate, Graph> {
    graphs
        .iter()
        .map(|g| {
            (
                canonical_certificate(g).expect("enumeration orders are within the certificate bound"),
                g.clone(),
            )
        })
        .collect()
}
