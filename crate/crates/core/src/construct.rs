//! Explicit distance magic labelings of quasi wreath graphs whose segments all
//! have length 1 or 3 mod 4, with an even number of the former.
//!
//! Notation follows the block structure: segment `i` (1-based) has `s_{k_i} = 0`
//! and owns the blocks `k_i, ..., k_{i+1} - 1` (with `k_{t+1} = m`), which are
//! labeled as one unit. Each block receives a pair `<l(x), l(y)>`. Within a
//! segment the pairs are shifted by `<2k_i, -2k_i>` and, except for the
//! cross-segment rules, scaled by `(-1)^{b_i}`, where `b_i` counts the type-B
//! segments preceding segment `i`. Type-B segments are matched in consecutive
//! pairs `(i, i')`; the last two blocks of a pair exchange labels with each
//! other.

use thiserror::Error;

use crate::labeling::{block_labels, CenteredLabeling};
use crate::qw::{classify, segments, Classification, NotMagicReason, QwSequence, SegmentKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("sequence is not distance magic: {}", format_reasons(.0))]
    NotDistanceMagic(Vec<NotMagicReason>),
}

fn format_reasons(reasons: &[NotMagicReason]) -> String {
    reasons.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlannedSegment {
    /// 1-based segment number.
    pub index: usize,
    /// `k_i`: the block with `s = 0` that opens this segment's block range.
    pub start: usize,
    /// `k_{i+1}`, equal to `m` for the last segment.
    pub end: usize,
    pub kind: SegmentKind,
    /// Number of type-B segments before this one.
    pub b: usize,
    /// For a type-B segment with even `b`, the index of the next type-B segment.
    pub partner: Option<usize>,
}

impl PlannedSegment {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn sign(&self) -> i64 {
        if self.b.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentPlan {
    pub m: usize,
    pub segments: Vec<PlannedSegment>,
}

impl SegmentPlan {
    /// Matched type-B pairs `(i, i')` as 1-based indices.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.segments
            .iter()
            .filter_map(|s| s.partner.map(|p| (s.index, p)))
            .collect()
    }

    fn segment(&self, index: usize) -> &PlannedSegment {
        &self.segments[index - 1]
    }
}

pub fn plan(s: &QwSequence) -> Result<SegmentPlan, ConstructError> {
    if let Classification::NotDistanceMagic(reasons) = classify(s) {
        return Err(ConstructError::NotDistanceMagic(reasons));
    }
    let segs = segments(s);
    let m = s.len();
    let mut planned = Vec::with_capacity(segs.len());
    let mut b = 0;
    for (pos, seg) in segs.iter().enumerate() {
        let partner = (seg.kind == SegmentKind::B && b % 2 == 0).then(|| {
            segs[pos + 1..]
                .iter()
                .find(|later| later.kind == SegmentKind::B)
                .map(|later| later.index)
                .expect("an even number of type-B segments leaves every even one a partner")
        });
        planned.push(PlannedSegment {
            index: seg.index,
            start: seg.start,
            end: segs.get(pos + 1).map_or(m, |next| next.start),
            kind: seg.kind,
            b,
            partner,
        });
        if seg.kind == SegmentKind::B {
            b += 1;
        }
    }
    Ok(SegmentPlan { m, segments: planned })
}

/// Which formula produced a block's labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    Opening,
    Second,
    Interior,
    PartnerPenultimate,
    PairPenultimate,
    PairLast,
    TypeAPenultimate,
    Closing,
}

struct Blocks(Vec<Option<((i64, i64), Rule)>>);

impl Blocks {
    fn set(&mut self, block: usize, pair: (i64, i64), rule: Rule) {
        let slot = &mut self.0[block];
        if let Some((_, prev)) = slot {
            panic!("block {block} written by {prev:?} and again by {rule:?}");
        }
        *slot = Some((pair, rule));
    }
}

fn shifted(k: usize, sign: i64, (a, b): (i64, i64)) -> (i64, i64) {
    let k2 = 2 * k as i64;
    (sign * (k2 + a), sign * (-k2 + b))
}

/// The `<alpha, -beta>` offset for interior position `j` of a segment.
fn interior_offset(j: usize) -> (i64, i64) {
    let j = j as i64;
    let (alpha, beta) = match j % 4 {
        0 => (2 * j + 3, 2 * j + 3),
        1 => (2 * j - 1, 2 * j - 3),
        2 => (2 * j + 1, 2 * j + 1),
        _ => (2 * j + 1, 2 * j + 3),
    };
    (alpha, -beta)
}

fn build(s: &QwSequence, swapped: bool) -> Result<CenteredLabeling, ConstructError> {
    let plan = plan(s)?;
    let m = plan.m;
    let mut blocks = Blocks(vec![None; m]);

    for seg in &plan.segments {
        let (k, sg) = (seg.start, seg.sign());
        blocks.set(k, shifted(k, sg, (1, -3)), Rule::Opening);
        blocks.set(k + 1, shifted(k, sg, (3, -1)), Rule::Second);
        // empty for length 3
        for j in 2..=seg.len().saturating_sub(3) {
            blocks.set(k + j, shifted(k, sg, interior_offset(j)), Rule::Interior);
        }
    }

    for (i, i2) in plan.pairs() {
        let (first, second) = (plan.segment(i), plan.segment(i2));
        let (end, end2) = (first.end, second.end);
        let partner_pen = (end2 - 2, shifted(end, 1, (-1, 3)));
        let pair_last = (end - 1, shifted(end2, 1, (-3, 3)));
        let (partner_pen, pair_last) = if swapped {
            ((partner_pen.0, pair_last.1), (pair_last.0, partner_pen.1))
        } else {
            (partner_pen, pair_last)
        };
        blocks.set(partner_pen.0, partner_pen.1, Rule::PartnerPenultimate);
        blocks.set(end - 2, shifted(end, 1, (-3, 1)), Rule::PairPenultimate);
        blocks.set(pair_last.0, pair_last.1, Rule::PairLast);
    }

    for seg in &plan.segments {
        if seg.kind == SegmentKind::A && seg.len() > 3 {
            blocks.set(
                seg.end - 2,
                shifted(seg.end, seg.sign(), (-5, 7)),
                Rule::TypeAPenultimate,
            );
        }
    }

    for seg in &plan.segments {
        if seg.kind == SegmentKind::A || seg.b % 2 == 1 {
            blocks.set(seg.end - 1, shifted(seg.end, 1, (-1, 1)), Rule::Closing);
        }
    }

    let mut labels = vec![0; 2 * m];
    for (i, slot) in blocks.0.into_iter().enumerate() {
        let ((x, y), _) = slot.unwrap_or_else(|| panic!("block {i} was never labeled"));
        labels[i] = x;
        labels[m + i] = y;
    }
    Ok(CenteredLabeling::from_raw(labels).expect("order is far below the label bound"))
}

/// The distance magic labeling of `QW(s)` (vertex order `x_0..x_{m-1}, y_0..y_{m-1}`).
pub fn construct_labeling(s: &QwSequence) -> Result<CenteredLabeling, ConstructError> {
    build(s, false)
}

/// The same labeling with the labels of the last block of each paired type-B
/// segment exchanged with the penultimate block of its partner. The result
/// has the same label multiset and maps each segment's block range onto a
/// contiguous band of absolute values (see [`check_segment_ranges`]); it is
/// not in general distance magic.
pub fn construct_tilde_labeling(s: &QwSequence) -> Result<CenteredLabeling, ConstructError> {
    build(s, true)
}

/// Expected block labels of [`construct_labeling`], derived from the plan.
pub fn expected_block_pattern(plan: &SegmentPlan) -> Vec<i64> {
    let mut out = vec![0; plan.m];
    for seg in &plan.segments {
        let sg = seg.sign();
        let len = seg.len();
        for j in 0..len {
            let v = if j == 0 {
                -2 * sg
            } else if j == 1 {
                2 * sg
            } else if j + 1 == len {
                0
            } else if j + 2 == len {
                match seg.kind {
                    SegmentKind::A => 2 * sg,
                    _ => -2 * sg,
                }
            } else {
                match j % 4 {
                    1 => 2 * sg,
                    3 => -2 * sg,
                    _ => 0,
                }
            };
            out[seg.start + j] = v;
        }
    }
    out
}

/// Whether every block label lies in `{0, 2, -2}` and matches the pattern
/// the construction produces.
pub fn block_label_pattern(s: &QwSequence, lab: &CenteredLabeling) -> bool {
    let (Ok(plan), Ok(bl)) = (plan(s), block_labels(s, lab)) else {
        return false;
    };
    bl.values().iter().all(|v| [0, 2, -2].contains(v)) && bl.values() == expected_block_pattern(&plan).as_slice()
}

/// Checks that each segment's block range `k_i..k_{i+1}` is labeled by exactly
/// the odd values with absolute value in `[2k_i + 1, 2k_{i+1} - 1]`, and that
/// the smallest absolute value sits on `x_{k_i}` and `y_{k_i + 1}`.
pub fn check_segment_ranges(s: &QwSequence, lab: &CenteredLabeling) -> bool {
    let Ok(plan) = plan(s) else {
        return false;
    };
    let m = plan.m;
    if lab.order() != 2 * m {
        return false;
    }
    plan.segments.iter().all(|seg| {
        let mut got: Vec<i64> = (seg.start..seg.end)
            .flat_map(|b| [lab.label(b), lab.label(m + b)])
            .collect();
        got.sort_unstable();
        let lo = 2 * seg.start as i64 + 1;
        let hi = 2 * seg.end as i64 - 1;
        let mut want: Vec<i64> = (lo..=hi).step_by(2).flat_map(|v| [v, -v]).collect();
        want.sort_unstable();
        got == want && lab.label(seg.start).abs() == lo && lab.label(m + seg.start + 1).abs() == lo
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::{check_block_recurrence, verify};
    use crate::qw::{build_qw, SegmentProfile};

    fn seq(parts: &[usize]) -> QwSequence {
        SegmentProfile::new(parts.to_vec()).unwrap().to_sequence()
    }

    fn pairs_of(lab: &CenteredLabeling) -> Vec<(i64, i64)> {
        let m = lab.order() / 2;
        (0..m).map(|i| (lab.label(i), lab.label(m + i))).collect()
    }

    #[test]
    fn plan_bookkeeping() {
        let p = plan(&seq(&[3, 3])).unwrap();
        let starts: Vec<_> = p.segments.iter().map(|s| s.start).collect();
        assert_eq!(starts, vec![0, 3]);
        assert!(p.segments.iter().all(|s| s.kind == SegmentKind::A && s.b == 0));
        assert!(p.pairs().is_empty());

        let p = plan(&seq(&[5, 5])).unwrap();
        assert_eq!(p.pairs(), vec![(1, 2)]);
        assert_eq!(p.segments.iter().map(|s| s.b).collect::<Vec<_>>(), vec![0, 1]);

        let p = plan(&seq(&[11, 3, 5, 3, 7, 5, 3])).unwrap();
        use SegmentKind::{A, B};
        assert_eq!(
            p.segments.iter().map(|s| s.kind).collect::<Vec<_>>(),
            vec![A, A, B, A, A, B, A]
        );
        assert_eq!(
            p.segments.iter().map(|s| s.b).collect::<Vec<_>>(),
            vec![0, 0, 0, 1, 1, 1, 2]
        );
        assert_eq!(p.pairs(), vec![(3, 6)]);
        assert_eq!(p.segments.last().unwrap().end, 37);
    }

    #[test]
    fn plan_rejects_non_magic() {
        assert!(matches!(plan(&seq(&[5])), Err(ConstructError::NotDistanceMagic(_))));
        assert!(matches!(
            construct_labeling(&seq(&[4, 3])),
            Err(ConstructError::NotDistanceMagic(_))
        ));
        assert!(construct_tilde_labeling(&seq(&[2, 2])).is_err());
    }

    #[test]
    fn worked_qw3() {
        let s = seq(&[3]);
        let lab = construct_labeling(&s).unwrap();
        assert_eq!(pairs_of(&lab), vec![(1, -3), (3, -1), (5, -5)]);
        let rep = verify(&build_qw(&s), &lab).unwrap();
        assert_eq!(rep.weights, vec![0; 6]);
        assert!(rep.passed());
        assert_eq!(block_labels(&s, &lab).unwrap().values(), &[-2, 2, 0]);
        assert!(block_label_pattern(&s, &lab));
    }

    #[test]
    fn worked_qw33() {
        let s = seq(&[3, 3]);
        let lab = construct_labeling(&s).unwrap();
        assert_eq!(
            pairs_of(&lab),
            vec![(1, -3), (3, -1), (5, -5), (7, -9), (9, -7), (11, -11)]
        );
        assert!(verify(&build_qw(&s), &lab).unwrap().passed());
        assert_eq!(block_labels(&s, &lab).unwrap().values(), &[-2, 2, 0, -2, 2, 0]);
    }

    #[test]
    fn qw7_label_set() {
        let s = seq(&[7]);
        let lab = construct_labeling(&s).unwrap();
        let mut sorted = lab.labels().to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, (-13..=13).step_by(2).collect::<Vec<i64>>());
        assert!(verify(&build_qw(&s), &lab).unwrap().passed());
    }

    #[test]
    fn tilde_equals_plain_without_type_b() {
        for parts in [&[3][..], &[7, 3], &[11, 3, 7]] {
            let s = seq(parts);
            assert_eq!(construct_labeling(&s).unwrap(), construct_tilde_labeling(&s).unwrap());
        }
    }

    #[test]
    fn tilde_qw55_first_range() {
        let s = seq(&[5, 5]);
        let tilde = construct_tilde_labeling(&s).unwrap();
        for b in 0..5 {
            assert!(tilde.label(b).abs() <= 9 && tilde.label(10 + b).abs() <= 9);
        }
        assert!(check_segment_ranges(&s, &tilde));
        // the plain labeling crosses the segment boundary
        assert!(!check_segment_ranges(&s, &construct_labeling(&s).unwrap()));
    }

    #[test]
    fn length_five_type_b_blocks() {
        // Segment 1 of (5,5): interior j = 2 only; block 3 from the pair rule.
        let s = seq(&[5, 5]);
        let lab = construct_labeling(&s).unwrap();
        let g = build_qw(&s);
        assert!(verify(&g, &lab).unwrap().passed());
        assert!(check_block_recurrence(&s, &block_labels(&s, &lab).unwrap()));
        assert!(block_label_pattern(&s, &lab));
    }

    #[test]
    fn wrong_pattern_detected() {
        let s = seq(&[3, 3]);
        let mut labels = construct_labeling(&s).unwrap().into_labels();
        labels.swap(0, 1);
        assert!(!block_label_pattern(&s, &CenteredLabeling::new(labels).unwrap()));
    }
}
