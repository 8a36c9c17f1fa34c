//! Zero-eigenspace filter for distance magic candidates.
//!
//! A centered distance magic labeling of a regular graph of even valency is a
//! kernel vector of the adjacency matrix with pairwise distinct entries. So if
//! the kernel is trivial, or two coordinates agree on every kernel vector, the
//! graph cannot be distance magic. Passing the filter proves nothing.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::graph::Graph;
use crate::graph6::write_graph6;
use crate::labeling::CenteredLabeling;
use crate::linalg::{ExactField, Matrix};
use crate::{NullspaceBasis, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph has odd valency {0}")]
    OddValency(usize),
    #[error("labeling has order {labeling} but the graph has order {graph}")]
    OrderMismatch { labeling: usize, graph: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleOut {
    TrivialNullspace,
    /// Coordinates `i < j` agree on every kernel vector.
    TiedCoordinates(usize, usize),
}

impl fmt::Display for RuleOut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TrivialNullspace => f.write_str("0 is not an eigenvalue"),
            Self::TiedCoordinates(i, j) => write!(f, "coordinates {i} and {j} agree on the whole nullspace"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterVerdict {
    /// Not excluded; carries the nullity.
    Candidate {
        nullity: usize,
    },
    RuledOut(RuleOut),
}

impl FilterVerdict {
    pub fn is_candidate(&self) -> bool {
        matches!(self, Self::Candidate { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Candidate { .. } => "Candidate",
            Self::RuledOut(_) => "RuledOut",
        }
    }

    pub fn reason(&self) -> String {
        match self {
            Self::Candidate { nullity } => format!("nullity {nullity}"),
            Self::RuledOut(r) => r.to_string(),
        }
    }
}

/// 0/1 adjacency matrix over the given exact field.
pub fn adjacency_matrix_over<T: ExactField>(g: &Graph) -> Matrix<T> {
    let n = g.order();
    Matrix::from_fn(n, n, |r, c| if g.has_edge(r, c) { T::one() } else { T::zero() })
}

pub fn adjacency_matrix(g: &Graph) -> RationalMatrix {
    adjacency_matrix_over(g)
}

pub fn nullspace_basis(m: &RationalMatrix) -> NullspaceBasis {
    assert_eq!(m.rows(), m.cols(), "adjacency matrices are square");
    m.nullspace()
}

fn check_even_regular(g: &Graph) -> Result<usize, SpectralError> {
    let r = g.valency().ok_or(SpectralError::NotRegular)?;
    if r % 2 == 1 {
        return Err(SpectralError::OddValency(r));
    }
    Ok(r)
}

/// Applies the tied-coordinate test to an arbitrary kernel basis. The verdict
/// depends only on the span.
pub fn nullspace_verdict<T: ExactField>(basis: &crate::linalg::Nullspace<T>) -> FilterVerdict {
    if basis.is_empty() {
        return FilterVerdict::RuledOut(RuleOut::TrivialNullspace);
    }
    match basis.first_tied_coordinates() {
        Some((i, j)) => FilterVerdict::RuledOut(RuleOut::TiedCoordinates(i, j)),
        None => FilterVerdict::Candidate { nullity: basis.len() },
    }
}

pub fn nullspace_filter(g: &Graph) -> Result<FilterVerdict, SpectralError> {
    check_even_regular(g)?;
    Ok(nullspace_verdict(&nullspace_basis(&adjacency_matrix(g))))
}

/// Whether the given labels form a kernel vector whose entries are exactly
/// `{1-n, 3-n, ..., n-1}`.
pub fn is_kernel_labeling(g: &Graph, lab: &CenteredLabeling) -> Result<bool, SpectralError> {
    check_even_regular(g)?;
    if lab.order() != g.order() {
        return Err(SpectralError::OrderMismatch {
            labeling: lab.order(),
            graph: g.order(),
        });
    }
    let v: Vec<BigRational> = lab
        .labels()
        .iter()
        .map(|&l| BigRational::from_integer(BigInt::from(l)))
        .collect();
    let in_kernel = adjacency_matrix(g).mul_vec(&v).iter().all(Zero::is_zero);
    Ok(in_kernel && lab.is_bijective())
}

/// One TSV record `<graph6>\t<Candidate|RuledOut>\t<reason>`.
pub fn filter_record(g: &Graph) -> Result<String, String> {
    let g6 = write_graph6(g).map_err(|e| e.to_string())?;
    let verdict = nullspace_filter(g).map_err(|e| e.to_string())?;
    Ok(format!("{g6}\t{}\t{}", verdict.label(), verdict.reason()))
}
