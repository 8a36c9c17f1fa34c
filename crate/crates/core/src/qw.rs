//! Quasi wreath graphs: sequences, segment profiles, builders and the
//! distance-magic classifier.
//!
//! Vertex convention for a sequence of length `m`: `x_i` is vertex `i` and
//! `y_i` is vertex `m + i`. Wreath graphs `W(k)` use `u_i -> i`, `v_i -> k + i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QwError {
    #[error("sequence length {0} is below the minimum of 3")]
    TooShort(usize),
    #[error("sequence must start with 0")]
    FirstBitNotZero,
    #[error("sequence must end with 1")]
    LastBitNotOne,
    #[error("consecutive zeros at positions {0} and {next}", next = .0 + 1)]
    ConsecutiveZeros(usize),
    #[error("bit {value} at position {position} is not 0 or 1")]
    NotABit { position: usize, value: u64 },
    #[error("segment length {0} is below the minimum of 2")]
    PartTooSmall(usize),
    #[error("profile has no segments")]
    EmptyProfile,
    #[error("cannot parse {0:?} as a list of integers")]
    Parse(String),
    #[error("wreath graph parameter {0} is below the minimum of 3")]
    WreathTooSmall(usize),
}

/// A validated bit sequence `s_0, ..., s_{m-1}` defining a quasi wreath graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QwSequence(Vec<bool>);

impl QwSequence {
    pub fn new(bits: Vec<bool>) -> Result<Self, QwError> {
        let m = bits.len();
        if m < 3 {
            return Err(QwError::TooShort(m));
        }
        if bits[0] {
            return Err(QwError::FirstBitNotZero);
        }
        if !bits[m - 1] {
            return Err(QwError::LastBitNotOne);
        }
        if let Some(i) = (0..m - 1).find(|&i| !bits[i] && !bits[i + 1]) {
            return Err(QwError::ConsecutiveZeros(i));
        }
        Ok(Self(bits))
    }

    /// Validates a sequence given as integers, each of which must be 0 or 1.
    pub fn from_ints(values: &[u64]) -> Result<Self, QwError> {
        let bits = values
            .iter()
            .enumerate()
            .map(|(position, &value)| match value {
                0 => Ok(false),
                1 => Ok(true),
                _ => Err(QwError::NotABit { position, value }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `s_i` with the index reduced modulo `m`.
    pub fn bit(&self, i: usize) -> bool {
        self.0[i % self.0.len()]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Positions `i` with `s_i = 0`, ascending; the first is always 0.
    pub fn zero_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.0[i]).collect()
    }

    pub fn profile(&self) -> SegmentProfile {
        let zeros = self.zero_positions();
        let m = self.len();
        let parts = zeros
            .iter()
            .enumerate()
            .map(|(k, &z)| zeros.get(k + 1).copied().unwrap_or(m) - z)
            .collect();
        SegmentProfile(parts)
    }
}

impl fmt::Display for QwSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: Vec<&str> = self.0.iter().map(|&b| if b { "1" } else { "0" }).collect();
        write!(f, "[{}]", bits.join(","))
    }
}

pub fn validate_sequence(bits: &[bool]) -> Result<QwSequence, QwError> {
    QwSequence::new(bits.to_vec())
}

/// Run-length profile `(a_1, ..., a_r)` of a sequence; each part is at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct SegmentProfile(Vec<usize>);

impl SegmentProfile {
    pub fn new(parts: Vec<usize>) -> Result<Self, QwError> {
        if parts.is_empty() {
            return Err(QwError::EmptyProfile);
        }
        if let Some(&p) = parts.iter().find(|&&p| p < 2) {
            return Err(QwError::PartTooSmall(p));
        }
        let total: usize = parts.iter().sum();
        if total < 3 {
            return Err(QwError::TooShort(total));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Total length `m`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn to_sequence(&self) -> QwSequence {
        let bits = self
            .0
            .iter()
            .flat_map(|&a| std::iter::once(false).chain(std::iter::repeat_n(true, a - 1)))
            .collect();
        QwSequence::new(bits).expect("profiles with parts >= 2 give valid sequences")
    }

    /// All ordered profiles with the given total (compositions with parts >= 2).
    pub fn all_with_total(m: usize) -> Vec<SegmentProfile> {
        fn rec(rest: usize, acc: &mut Vec<usize>, out: &mut Vec<SegmentProfile>) {
            if rest == 0 {
                out.push(SegmentProfile(acc.clone()));
                return;
            }
            for a in 2..=rest {
                acc.push(a);
                rec(rest - a, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        if m >= 3 {
            rec(m, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for SegmentProfile {
    type Error = QwError;
    fn try_from(parts: Vec<usize>) -> Result<Self, QwError> {
        Self::new(parts)
    }
}

impl From<SegmentProfile> for Vec<usize> {
    fn from(p: SegmentProfile) -> Self {
        p.0
    }
}

impl FromStr for SegmentProfile {
    type Err = QwError;
    fn from_str(s: &str) -> Result<Self, QwError> {
        Self::new(parse_int_list(s)?)
    }
}

impl fmt::Display for SegmentProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses a comma-separated list of non-negative integers.
pub fn parse_int_list<T: FromStr>(s: &str) -> Result<Vec<T>, QwError> {
    let s = s.trim();
    let s = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(s);
    s.split(',')
        .map(|part| part.trim().parse().map_err(|_| QwError::Parse(s.to_owned())))
        .collect()
}

pub fn profile_to_sequence(p: &SegmentProfile) -> QwSequence {
    p.to_sequence()
}

pub fn sequence_to_profile(s: &QwSequence) -> SegmentProfile {
    s.profile()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SegmentKind {
    /// Length congruent to 3 modulo 4.
    A,
    /// Length congruent to 1 modulo 4.
    B,
    /// Even length.
    Other,
}

impl SegmentKind {
    pub fn of_length(len: usize) -> Self {
        match len % 4 {
            3 => Self::A,
            1 => Self::B,
            _ => Self::Other,
        }
    }
}

/// Segment `index` (1-based) covers blocks `start + 1 ..= start + len`
/// (modulo `m`), where `s_start = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub index: usize,
    pub start: usize,
    pub len: usize,
    pub kind: SegmentKind,
}

pub fn segments(s: &QwSequence) -> Vec<Segment> {
    let zeros = s.zero_positions();
    s.profile()
        .parts()
        .iter()
        .zip(zeros)
        .enumerate()
        .map(|(i, (&len, start))| Segment {
            index: i + 1,
            start,
            len,
            kind: SegmentKind::of_length(len),
        })
        .collect()
}

/// Builds `QW(s)` on `2m` vertices.
pub fn build_qw(s: &QwSequence) -> Graph {
    let m = s.len();
    let x = |i: usize| i % m;
    let y = |i: usize| m + i % m;
    let mut edges = Vec::with_capacity(4 * m);
    for i in 0..m {
        edges.push((x(i), x(i + 1)));
        edges.push((y(i), y(i + 1)));
        if s.bit(i) {
            edges.push((x(i), y(i + 1)));
            edges.push((x(i + 1), y(i)));
        }
    }
    // A rung {x_i, y_i} arises from both s_{i-1} = 0 and s_i = 0; these never
    // coincide because zeros are not adjacent, including across the wrap.
    for i in s.zero_positions() {
        edges.push((x(i), y(i)));
        edges.push((x(i + 1), y(i + 1)));
    }
    Graph::from_edges(2 * m, edges).expect("quasi wreath edges are simple")
}

/// Builds the wreath graph `W(k)` on `2k` vertices.
pub fn build_wreath(k: usize) -> Result<Graph, QwError> {
    if k < 3 {
        return Err(QwError::WreathTooSmall(k));
    }
    let mut edges = Vec::with_capacity(4 * k);
    for i in 0..k {
        let j = (i + 1) % k;
        for a in [i, k + i] {
            for b in [j, k + j] {
                edges.push((a, b));
            }
        }
    }
    Ok(Graph::from_edges(2 * k, edges).expect("wreath edges are simple"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NotMagicReason {
    /// A segment of even length.
    EvenSegment { index: usize, len: usize },
    /// The number of segments of length 1 mod 4 is odd.
    OddTypeBCount { count: usize },
}

impl fmt::Display for NotMagicReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EvenSegment { index, len } => write!(f, "segment {index} has even length {len}"),
            Self::OddTypeBCount { count } => {
                write!(f, "odd count of type-B segments ({count})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    DistanceMagic,
    NotDistanceMagic(Vec<NotMagicReason>),
}

impl Classification {
    pub fn is_distance_magic(&self) -> bool {
        matches!(self, Self::DistanceMagic)
    }
}

/// Decides whether `QW(s)` is distance magic: every segment must have odd
/// length and the number of segments of length 1 mod 4 must be even.
pub fn classify(s: &QwSequence) -> Classification {
    let segs = segments(s);
    let mut reasons: Vec<NotMagicReason> = segs
        .iter()
        .filter(|seg| seg.kind == SegmentKind::Other)
        .map(|seg| NotMagicReason::EvenSegment {
            index: seg.index,
            len: seg.len,
        })
        .collect();
    let type_b = segs.iter().filter(|seg| seg.kind == SegmentKind::B).count();
    if type_b % 2 == 1 {
        reasons.push(NotMagicReason::OddTypeBCount { count: type_b });
    }
    if reasons.is_empty() {
        Classification::DistanceMagic
    } else {
        Classification::NotDistanceMagic(reasons)
    }
}
