//! Vertex labelings, weight verification and block-label bookkeeping.
//!
//! The centered scheme labels a graph of order `n` bijectively with
//! `{1-n, 3-n, ..., n-1}`; a distance magic labeling then has every vertex
//! weight (sum of neighbour labels) equal to 0. The standard scheme uses
//! `{1, ..., n}` with magic constant `r(n+1)/2` on `r`-regular graphs. The
//! centered scheme is used internally everywhere.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::qw::{QwError, QwSequence};

/// Largest supported order; keeps every weight comfortably inside `i64`.
pub const MAX_LABELED_ORDER: usize = 1 << 30;

pub const SCHEMA: &str = "dmlab/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("labeling has order {labeling} but the graph has order {graph}")]
    OrderMismatch { labeling: usize, graph: usize },
    #[error("labels are not a bijection onto the {0} label set")]
    NotBijective(Scheme),
    #[error("order {0} exceeds the supported maximum")]
    OrderTooLarge(usize),
    #[error("graph is not regular, so the standard magic constant is undefined")]
    NotRegular,
    #[error(transparent)]
    Wreath(#[from] QwError),
    #[error("invalid labeling JSON: {0}")]
    Json(String),
    #[error("labeling JSON declares order {declared} but lists {listed} labels")]
    JsonOrder { declared: usize, listed: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Centered,
    Standard,
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Centered => "centered",
            Self::Standard => "standard",
        })
    }
}

/// Labels in the centered scheme, indexed by vertex.
///
/// [`CenteredLabeling::new`] enforces bijectivity onto `{1-n, ..., n-1}`;
/// [`CenteredLabeling::from_raw`] does not, so that arbitrary candidate
/// vectors can be passed to [`verify`], which reports the failure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CenteredLabeling {
    labels: Vec<i64>,
}

impl CenteredLabeling {
    pub fn new(labels: Vec<i64>) -> Result<Self, LabelingError> {
        let lab = Self::from_raw(labels)?;
        if !lab.is_bijective() {
            return Err(LabelingError::NotBijective(Scheme::Centered));
        }
        Ok(lab)
    }

    pub fn from_raw(labels: Vec<i64>) -> Result<Self, LabelingError> {
        if labels.len() > MAX_LABELED_ORDER {
            return Err(LabelingError::OrderTooLarge(labels.len()));
        }
        Ok(Self { labels })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> i64 {
        self.labels[v]
    }

    pub fn into_labels(self) -> Vec<i64> {
        self.labels
    }

    /// Whether the labels are exactly `{1-n, 3-n, ..., n-1}`.
    pub fn is_bijective(&self) -> bool {
        let n = self.order() as i64;
        let mut seen = vec![false; self.order()];
        self.labels.iter().all(|&l| {
            let shifted = l + n - 1;
            if shifted < 0 || shifted % 2 != 0 || shifted / 2 >= n {
                return false;
            }
            !std::mem::replace(&mut seen[(shifted / 2) as usize], true)
        })
    }

    pub fn negated(&self) -> Self {
        Self {
            labels: self.labels.iter().map(|l| -l).collect(),
        }
    }
}

/// Labels in the standard `{1, ..., n}` scheme.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardLabeling {
    labels: Vec<i64>,
}

impl StandardLabeling {
    pub fn new(labels: Vec<i64>) -> Result<Self, LabelingError> {
        let lab = Self::from_raw(labels)?;
        if !lab.is_bijective() {
            return Err(LabelingError::NotBijective(Scheme::Standard));
        }
        Ok(lab)
    }

    /// Unchecked counterpart of [`StandardLabeling::new`].
    pub fn from_raw(labels: Vec<i64>) -> Result<Self, LabelingError> {
        if labels.len() > MAX_LABELED_ORDER {
            return Err(LabelingError::OrderTooLarge(labels.len()));
        }
        Ok(Self { labels })
    }

    /// Whether the labels are exactly `{1, ..., n}`.
    pub fn is_bijective(&self) -> bool {
        let n = self.order();
        let mut seen = vec![false; n];
        self.labels
            .iter()
            .all(|&l| (1..=n as i64).contains(&l) && !std::mem::replace(&mut seen[(l - 1) as usize], true))
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }
}

/// `l~(u) = (l(u) + n + 1) / 2`.
pub fn to_standard(lab: &CenteredLabeling) -> Result<StandardLabeling, LabelingError> {
    if !lab.is_bijective() {
        return Err(LabelingError::NotBijective(Scheme::Centered));
    }
    let n = lab.order() as i64;
    Ok(StandardLabeling {
        labels: lab.labels.iter().map(|l| (l + n + 1) / 2).collect(),
    })
}

/// `l(u) = 2 l~(u) - 1 - n`.
pub fn from_standard(lab: &StandardLabeling) -> CenteredLabeling {
    let n = lab.order() as i64;
    CenteredLabeling {
        labels: lab.labels.iter().map(|l| 2 * l - 1 - n).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scheme: Scheme,
    /// Weight every vertex must have.
    pub target: i64,
    pub weights: Vec<i64>,
    pub bijective: bool,
    /// Smallest vertex whose weight differs from the target.
    pub first_violation: Option<usize>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.first_violation.is_none()
    }
}

fn weights(g: &Graph, labels: &[i64]) -> Vec<i64> {
    (0..g.order())
        .map(|v| g.neighbors(v).iter().map(|&w| labels[w]).sum())
        .collect()
}

fn report(scheme: Scheme, target: i64, weights: Vec<i64>, bijective: bool) -> VerificationReport {
    let first_violation = weights.iter().position(|&w| w != target);
    VerificationReport {
        scheme,
        target,
        weights,
        bijective,
        first_violation,
    }
}

/// Checks a centered labeling: all weights are computed, the verdict is pass
/// iff the labels are a bijection onto the centered set and every weight is 0.
pub fn verify(g: &Graph, lab: &CenteredLabeling) -> Result<VerificationReport, LabelingError> {
    if lab.order() != g.order() {
        return Err(LabelingError::OrderMismatch {
            labeling: lab.order(),
            graph: g.order(),
        });
    }
    Ok(report(
        Scheme::Centered,
        0,
        weights(g, lab.labels()),
        lab.is_bijective(),
    ))
}

/// Checks a standard labeling of a regular graph against `r(n+1)/2`.
pub fn verify_standard(g: &Graph, lab: &StandardLabeling) -> Result<VerificationReport, LabelingError> {
    if lab.order() != g.order() {
        return Err(LabelingError::OrderMismatch {
            labeling: lab.order(),
            graph: g.order(),
        });
    }
    let r = g.valency().ok_or(LabelingError::NotRegular)? as i64;
    let n = g.order() as i64;
    let target = r * (n + 1) / 2;
    let mut rep = report(Scheme::Standard, target, weights(g, lab.labels()), lab.is_bijective());
    // non-integral magic constant: nothing can pass
    if r * (n + 1) % 2 != 0 && rep.first_violation.is_none() {
        rep.first_violation = Some(0);
    }
    Ok(rep)
}

/// The labeling of `W(k)` giving `u_i, v_i` the labels `±(2k - 2i - 1)`.
pub fn wreath_labeling(k: usize) -> Result<CenteredLabeling, LabelingError> {
    if k < 3 {
        return Err(QwError::WreathTooSmall(k).into());
    }
    let k64 = k as i64;
    let mut labels = vec![0; 2 * k];
    for i in 0..k {
        let l = 2 * k64 - 2 * i as i64 - 1;
        labels[i] = l;
        labels[k + i] = -l;
    }
    CenteredLabeling::new(labels)
}

/// Block sums `l_i = l(x_i) + l(y_i)` of a quasi wreath labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockLabels(Vec<i64>);

impl BlockLabels {
    pub fn values(&self) -> &[i64] {
        &self.0
    }

    /// `l_i` with the index reduced modulo `m`.
    pub fn get(&self, i: usize) -> i64 {
        self.0[i % self.0.len()]
    }
}

pub fn block_labels(s: &QwSequence, lab: &CenteredLabeling) -> Result<BlockLabels, LabelingError> {
    let m = s.len();
    if lab.order() != 2 * m {
        return Err(LabelingError::OrderMismatch {
            labeling: lab.order(),
            graph: 2 * m,
        });
    }
    Ok(BlockLabels((0..m).map(|i| lab.label(i) + lab.label(m + i)).collect()))
}

/// Checks the three-case block recurrence satisfied by every zero-weight
/// labeling of a quasi wreath graph, for all `i` in `Z_m`:
///
/// * `s_i = s_{i+1} = 1`: `l_{i+2} = -l_i`
/// * `s_i = 0, s_{i+1} = 1`: `2 l_{i+2} = -(l_i + l_{i+1})`
/// * `s_i = 1, s_{i+1} = 0`: `l_{i+2} = -2 l_i - l_{i+1}`
pub fn check_block_recurrence(s: &QwSequence, bl: &BlockLabels) -> bool {
    let m = s.len();
    if bl.values().len() != m {
        return false;
    }
    (0..m).all(|i| {
        let (a, b, c) = (bl.get(i), bl.get(i + 1), bl.get(i + 2));
        match (s.bit(i), s.bit(i + 1)) {
            (true, true) => c == -a,
            (false, true) => 2 * c == -(a + b),
            (true, false) => c == -2 * a - b,
            (false, false) => unreachable!("validated sequences have no adjacent zeros"),
        }
    })
}

/// Whether `l_{i+1} != -l_{i+2}` for every `i` with `s_i = 0`; holds for every
/// distance magic labeling.
pub fn check_rung_blocks(s: &QwSequence, bl: &BlockLabels) -> bool {
    s.zero_positions().into_iter().all(|i| bl.get(i + 1) != -bl.get(i + 2))
}

/// JSON form: `{"schema": "dmlab/1", "order": n, "scheme": ..., "labels": [...]}`.
/// `schema` is optional on input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelingDocument {
    #[serde(default = "default_schema")]
    pub schema: String,
    pub order: usize,
    pub scheme: Scheme,
    pub labels: Vec<i64>,
}

fn default_schema() -> String {
    SCHEMA.to_owned()
}

impl LabelingDocument {
    pub fn centered(lab: &CenteredLabeling) -> Self {
        Self {
            schema: default_schema(),
            order: lab.order(),
            scheme: Scheme::Centered,
            labels: lab.labels.clone(),
        }
    }

    pub fn standard(lab: &StandardLabeling) -> Self {
        Self {
            schema: default_schema(),
            order: lab.order(),
            scheme: Scheme::Standard,
            labels: lab.labels.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("labeling documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, LabelingError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| LabelingError::Json(e.to_string()))?;
        if doc.labels.len() != doc.order {
            return Err(LabelingError::JsonOrder {
                declared: doc.order,
                listed: doc.labels.len(),
            });
        }
        Ok(doc)
    }

    /// Converts to the centered scheme. Centered documents are taken as-is
    /// (bijectivity is left to [`verify`]); standard ones must be valid.
    pub fn into_centered(self) -> Result<CenteredLabeling, LabelingError> {
        match self.scheme {
            Scheme::Centered => CenteredLabeling::from_raw(self.labels),
            Scheme::Standard => Ok(from_standard(&StandardLabeling::new(self.labels)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;
    use crate::qw::{build_qw, build_wreath, SegmentProfile};

    #[test]
    fn bijectivity() {
        assert!(CenteredLabeling::new(vec![-3, -1, 1, 3]).is_ok());
        assert!(CenteredLabeling::new(vec![-3, -1, 1, 1]).is_err());
        assert!(CenteredLabeling::new(vec![-2, 0, 2]).is_ok());
        assert!(CenteredLabeling::new(vec![-3, 0, 3]).is_err());
        assert!(CenteredLabeling::new(vec![-5, -1, 1, 3]).is_err());
        assert!(StandardLabeling::new(vec![2, 1, 3]).is_ok());
        assert!(StandardLabeling::new(vec![0, 1, 2]).is_err());
    }

    #[test]
    fn conversion_endpoints() {
        let lab = CenteredLabeling::new(vec![-5, 5, -3, 3, -1, 1]).unwrap();
        let std = to_standard(&lab).unwrap();
        assert_eq!(std.labels(), &[1, 6, 2, 5, 3, 4]);
        assert_eq!(from_standard(&std), lab);
    }

    #[test]
    fn wreath_labeling_k3() {
        let lab = wreath_labeling(3).unwrap();
        assert_eq!(lab.labels(), &[5, 3, 1, -5, -3, -1]);
        let g = build_wreath(3).unwrap();
        let rep = verify(&g, &lab).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.weights, vec![0; 6]);
        assert!(wreath_labeling(2).is_err());
    }

    #[test]
    fn swap_across_non_twins_fails() {
        let g = build_wreath(3).unwrap();
        let mut labels = wreath_labeling(3).unwrap().into_labels();
        // u_0 and u_1 are adjacent, not twins
        labels.swap(0, 1);
        let rep = verify(&g, &CenteredLabeling::new(labels).unwrap()).unwrap();
        assert!(rep.bijective);
        assert!(!rep.passed());
        // N(u_2) = {u_0, u_1, v_0, v_1} still sums to zero; u_0's does not
        assert_eq!(rep.first_violation, Some(0));
    }

    #[test]
    fn non_bijective_fails_even_with_zero_weights() {
        let g = build_wreath(3).unwrap();
        let lab = CenteredLabeling::from_raw(vec![0; 6]).unwrap();
        let rep = verify(&g, &lab).unwrap();
        assert_eq!(rep.first_violation, None);
        assert!(!rep.bijective);
        assert!(!rep.passed());
    }

    #[test]
    fn order_mismatch() {
        let g = cycle(4);
        let lab = CenteredLabeling::new(vec![-1, 1]).unwrap();
        assert!(matches!(verify(&g, &lab), Err(LabelingError::OrderMismatch { .. })));
    }

    #[test]
    fn standard_scheme_agrees_on_w3() {
        let g = build_wreath(3).unwrap();
        let lab = wreath_labeling(3).unwrap();
        let rep = verify_standard(&g, &to_standard(&lab).unwrap()).unwrap();
        assert_eq!(rep.target, 14);
        assert!(rep.passed());
        let mut bad = lab.into_labels();
        bad.swap(0, 1);
        let bad = CenteredLabeling::new(bad).unwrap();
        assert!(!verify(&g, &bad).unwrap().passed());
        assert!(!verify_standard(&g, &to_standard(&bad).unwrap()).unwrap().passed());
    }

    #[test]
    fn c4_labeling() {
        let g = cycle(4);
        let lab = CenteredLabeling::new(vec![-3, -1, 3, 1]).unwrap();
        assert!(verify(&g, &lab).unwrap().passed());
    }

    #[test]
    fn block_labels_and_recurrence() {
        let s = SegmentProfile::new(vec![3]).unwrap().to_sequence();
        // x = (1, 3, 5), y = (-3, -1, -5)
        let lab = CenteredLabeling::new(vec![1, 3, 5, -3, -1, -5]).unwrap();
        assert!(verify(&build_qw(&s), &lab).unwrap().passed());
        let bl = block_labels(&s, &lab).unwrap();
        assert_eq!(bl.values(), &[-2, 2, 0]);
        assert!(check_block_recurrence(&s, &bl));
        assert!(check_rung_blocks(&s, &bl));
    }

    #[test]
    fn wreath_labeling_as_qw3() {
        // The non-adjacent pairs of QW([0,1,1]) are {x_0, y_1}, {x_1, y_0} and
        // {x_2, y_2}; they play the role of the twin pairs {u_i, v_i} of W(3).
        let s = SegmentProfile::new(vec![3]).unwrap().to_sequence();
        let w = wreath_labeling(3).unwrap();
        let (u, v) = (|i: usize| w.label(i), |i: usize| w.label(3 + i));
        let lab = CenteredLabeling::new(vec![u(0), u(1), u(2), v(1), v(0), v(2)]).unwrap();
        assert!(verify(&build_qw(&s), &lab).unwrap().passed());
        assert!(check_block_recurrence(&s, &block_labels(&s, &lab).unwrap()));
    }

    #[test]
    fn json_round_trip_and_errors() {
        let lab = wreath_labeling(3).unwrap();
        let text = LabelingDocument::centered(&lab).to_json();
        assert_eq!(
            text,
            r#"{"schema":"dmlab/1","order":6,"scheme":"centered","labels":[5,3,1,-5,-3,-1]}"#
        );
        let doc = LabelingDocument::from_json(&text).unwrap();
        assert_eq!(doc.to_json(), text);
        assert_eq!(doc.into_centered().unwrap(), lab);

        let bare = r#"{"order":2,"scheme":"standard","labels":[2,1]}"#;
        let c = LabelingDocument::from_json(bare).unwrap().into_centered().unwrap();
        assert_eq!(c.labels(), &[1, -1]);
        assert!(matches!(
            LabelingDocument::from_json(r#"{"order":3,"scheme":"centered","labels":[1]}"#),
            Err(LabelingError::JsonOrder { declared: 3, listed: 1 })
        ));
        assert!(LabelingDocument::from_json(r#"{"order":1,"scheme":"odd","labels":[0]}"#).is_err());
        assert!(LabelingDocument::from_json(r#"{"order":1,"scheme":"centered","labels":[0.5]}"#).is_err());
    }
}
