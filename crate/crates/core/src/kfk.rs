//! Two-vertex expansion of a distance magic tetravalent graph along a 4-cycle
//! whose antipodal labels cancel.
//!
//! The cycle edges are deleted and two fresh vertices, labeled `±(n+1)`, are
//! joined to all four cycle vertices. The result is checked with [`verify`]
//! before it is returned.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::labeling::{verify, CenteredLabeling, LabelingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("labeling is not distance magic for this graph")]
    InvalidLabeling,
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error("graph is not tetravalent")]
    NotTetravalent,
    #[error("{0} is not a 4-cycle of the graph")]
    NotACycle(ZeroAntipodal4Cycle),
    #[error("antipodal labels of {0} do not sum to zero")]
    NotZeroAntipodal(ZeroAntipodal4Cycle),
    #[error("graph has no zero-antipodal 4-cycle")]
    NoCycle,
    #[error("expanded labeling failed verification")]
    VerificationFailed,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A 4-cycle `a-b-c-d-a` with antipodal pairs `(a, c)` and `(b, d)`.
///
/// Values built by [`ZeroAntipodal4Cycle::canonical`] have `a` minimal and
/// `b < d`, so each cycle has exactly one representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZeroAntipodal4Cycle {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl ZeroAntipodal4Cycle {
    /// Rotates and reflects `(a, b, c, d)` into canonical form.
    pub fn canonical(a: usize, b: usize, c: usize, d: usize) -> Self {
        let v = [a, b, c, d];
        let start = (0..4).min_by_key(|&i| v[i]).unwrap();
        let (next, prev) = (v[(start + 1) % 4], v[(start + 3) % 4]);
        let (b, d) = if next < prev { (next, prev) } else { (prev, next) };
        Self {
            a: v[start],
            b,
            c: v[(start + 2) % 4],
            d,
        }
    }

    pub fn vertices(&self) -> [usize; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn edges(&self) -> [(usize, usize); 4] {
        let [a, b, c, d] = self.vertices();
        [(a, b), (b, c), (c, d), (d, a)]
    }

    fn is_cycle_of(&self, g: &Graph) -> bool {
        let v = self.vertices();
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| v[i] != v[j]));
        distinct && v.iter().all(|&x| x < g.order()) && self.edges().iter().all(|&(x, y)| g.has_edge(x, y))
    }

    fn is_zero_antipodal(&self, lab: &CenteredLabeling) -> bool {
        lab.label(self.a) + lab.label(self.c) == 0 && lab.label(self.b) + lab.label(self.d) == 0
    }
}

impl fmt::Display for ZeroAntipodal4Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

fn require_magic(g: &Graph, lab: &CenteredLabeling) -> Result<(), ExpandError> {
    if verify(g, lab)?.passed() {
        Ok(())
    } else {
        Err(ExpandError::InvalidLabeling)
    }
}

/// Every zero-antipodal 4-cycle, once each, in lexicographic order.
pub fn find_zero_antipodal_cycles(g: &Graph, lab: &CenteredLabeling) -> Result<Vec<ZeroAntipodal4Cycle>, ExpandError> {
    require_magic(g, lab)?;
    let mut out = Vec::new();
    for a in 0..g.order() {
        for &b in g.neighbors(a) {
            for &d in g.neighbors(a) {
                if b <= a || d <= b {
                    continue;
                }
                for &c in g.neighbors(b) {
                    if c <= a || c == d || !g.has_edge(c, d) {
                        continue;
                    }
                    let cyc = ZeroAntipodal4Cycle { a, b, c, d };
                    if cyc.is_zero_antipodal(lab) {
                        out.push(cyc);
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Expands along `c`. The new vertices are `n` (label `n+1`) and `n+1`
/// (label `-(n+1)`).
pub fn expand(
    g: &Graph,
    lab: &CenteredLabeling,
    c: &ZeroAntipodal4Cycle,
) -> Result<(Graph, CenteredLabeling), ExpandError> {
    if !g.is_regular(4) {
        return Err(ExpandError::NotTetravalent);
    }
    require_magic(g, lab)?;
    if !c.is_cycle_of(g) {
        return Err(ExpandError::NotACycle(*c));
    }
    if !c.is_zero_antipodal(lab) {
        return Err(ExpandError::NotZeroAntipodal(*c));
    }
    let n = g.order();
    let mut edges = g.edge_set().clone();
    for (x, y) in c.edges() {
        edges.remove(&(x.min(y), x.max(y)));
    }
    for v in c.vertices() {
        edges.insert((v, n));
        edges.insert((v, n + 1));
    }
    let expanded = Graph::from_edges(n + 2, edges)?;
    let mut labels = lab.labels().to_vec();
    labels.push(n as i64 + 1);
    labels.push(-(n as i64 + 1));
    let labeling = CenteredLabeling::new(labels)?;
    if !verify(&expanded, &labeling)?.passed() {
        return Err(ExpandError::VerificationFailed);
    }
    Ok((expanded, labeling))
}

/// [`expand`] along the lexicographically least zero-antipodal 4-cycle.
pub fn expand_default(g: &Graph, lab: &CenteredLabeling) -> Result<(Graph, CenteredLabeling), ExpandError> {
    if !g.is_regular(4) {
        return Err(ExpandError::NotTetravalent);
    }
    let cycles = find_zero_antipodal_cycles(g, lab)?;
    let first = cycles.first().ok_or(ExpandError::NoCycle)?;
    expand(g, lab, first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::construct::construct_labeling;
    use crate::graph::cycle;
    use crate::labeling::wreath_labeling;
    use crate::qw::{build_qw, build_wreath, SegmentProfile};

    #[test]
    fn canonical_rotation_and_reflection() {
        let want = ZeroAntipodal4Cycle { a: 1, b: 2, c: 7, d: 5 };
        for (a, b, c, d) in [
            (1, 2, 7, 5),
            (2, 7, 5, 1),
            (7, 5, 1, 2),
            (5, 1, 2, 7),
            (1, 5, 7, 2),
            (7, 2, 1, 5),
        ] {
            assert_eq!(ZeroAntipodal4Cycle::canonical(a, b, c, d), want);
        }
    }

    #[test]
    fn c4_qualifies() {
        let lab = CenteredLabeling::new(vec![-3, -1, 3, 1]).unwrap();
        let found = find_zero_antipodal_cycles(&cycle(4), &lab).unwrap();
        assert_eq!(found, vec![ZeroAntipodal4Cycle { a: 0, b: 1, c: 2, d: 3 }]);
        // C4 is not tetravalent
        assert_eq!(expand(&cycle(4), &lab, &found[0]), Err(ExpandError::NotTetravalent));
    }

    #[test]
    fn wreath_twin_cycles() {
        let k = 4;
        let g = build_wreath(k).unwrap();
        let lab = wreath_labeling(k).unwrap();
        let found = find_zero_antipodal_cycles(&g, &lab).unwrap();
        // u_0 - u_1 - v_0 - v_1: antipodes (u_0, v_0) and (u_1, v_1) are twins
        assert!(found.contains(&ZeroAntipodal4Cycle::canonical(0, 1, k, k + 1)));
        for c in &found {
            let (g2, l2) = expand(&g, &lab, c).unwrap();
            assert_eq!(g2.order(), 2 * k + 2);
            assert!(g2.is_regular(4) && g2.is_connected());
            assert!(verify(&g2, &l2).unwrap().passed());
        }
    }

    #[test]
    fn qw7_expansions() {
        let s = SegmentProfile::new(vec![7]).unwrap().to_sequence();
        let g = build_qw(&s);
        let lab = construct_labeling(&s).unwrap();
        let w8 = build_wreath(8).unwrap();
        // x_i = i and y_i = 7 + i
        let x3x4y5y4 = ZeroAntipodal4Cycle::canonical(3, 4, 12, 11);
        let x0x1y1y0 = ZeroAntipodal4Cycle::canonical(0, 1, 8, 7);
        let found = find_zero_antipodal_cycles(&g, &lab).unwrap();
        assert_eq!(
            found,
            vec![x0x1y1y0, x3x4y5y4, ZeroAntipodal4Cycle::canonical(4, 5, 11, 10)]
        );

        let (g16, l16) = expand(&g, &lab, &x3x4y5y4).unwrap();
        assert_eq!(g16.order(), 16);
        assert!(g16.is_regular(4) && g16.is_connected());
        assert!(verify(&g16, &l16).unwrap().passed());
        assert!(!is_isomorphic(&g16, &w8).unwrap());

        // the least cycle only rebuilds a wreath graph
        let (least, _) = expand_default(&g, &lab).unwrap();
        assert!(is_isomorphic(&least, &w8).unwrap());
    }

    #[test]
    fn rejects_bad_cycles() {
        let g = build_wreath(4).unwrap();
        let lab = wreath_labeling(4).unwrap();
        // u_0 - u_1 - u_2 - u_3 is a cycle, but labels 7, 5, 3, 1 do not cancel
        let c = ZeroAntipodal4Cycle::canonical(0, 1, 2, 3);
        assert_eq!(expand(&g, &lab, &c), Err(ExpandError::NotZeroAntipodal(c)));
        let not_cycle = ZeroAntipodal4Cycle { a: 0, b: 2, c: 4, d: 6 };
        assert_eq!(expand(&g, &lab, &not_cycle), Err(ExpandError::NotACycle(not_cycle)));
        let mut bad = lab.clone().into_labels();
        bad.swap(0, 1);
        let bad = CenteredLabeling::new(bad).unwrap();
        assert_eq!(find_zero_antipodal_cycles(&g, &bad), Err(ExpandError::InvalidLabeling));
    }
}
