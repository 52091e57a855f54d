use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::intmat::{smith_normal_form, IntMatrix};

/// Symmetric Gram matrix of a curve configuration with its basis labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionForm {
    pub gram: IntMatrix,
    pub labels: Vec<String>,
}

impl IntersectionForm {
    pub fn new(gram: IntMatrix, labels: Vec<String>) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::Shape("Gram matrix must be symmetric".into()));
        }
        if labels.len() != gram.rows() {
            return Err(Error::Shape(format!(
                "{} labels for a {}x{} form",
                labels.len(),
                gram.rows(),
                gram.cols()
            )));
        }
        Ok(IntersectionForm { gram, labels })
    }

    /// Number of basis curves.
    pub fn dimension(&self) -> usize {
        self.gram.rows()
    }

    /// Self-intersections, sorted.
    pub fn weight_multiset(&self) -> Vec<BigInt> {
        let mut w: Vec<BigInt> = (0..self.dimension())
            .map(|i| self.gram[(i, i)].clone())
            .collect();
        w.sort();
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormInvariants {
    pub dimension: usize,
    /// Rank of the Gram matrix.
    pub rank: usize,
    pub determinant: BigInt,
    /// Nonzero invariant factors of the Gram matrix, 1s included.
    pub smith: Vec<BigInt>,
}

pub fn form_invariants(f: &IntersectionForm) -> FormInvariants {
    let d = smith_normal_form(&f.gram);
    FormInvariants {
        dimension: f.dimension(),
        rank: d.rank(),
        determinant: f.gram.determinant(),
        smith: d.invariant_factors(),
    }
}

/// The first invariant found to differ, in screening order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormObstruction {
    /// Number of boundary components.
    Dimension(usize, usize),
    GramRank(usize, usize),
    Determinant(BigInt, BigInt),
    Smith(Vec<BigInt>, Vec<BigInt>),
    Weights(Vec<BigInt>, Vec<BigInt>),
    /// Invariants agree but exhaustive search found no matching bijection.
    NoBijection,
}

fn list(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for FormObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormObstruction::Dimension(a, b) => write!(f, "rank {a} ≠ rank {b}"),
            FormObstruction::GramRank(a, b) => write!(f, "Gram rank {a} ≠ {b}"),
            FormObstruction::Determinant(a, b) => write!(f, "determinant {a} ≠ {b}"),
            FormObstruction::Smith(a, b) => {
                write!(f, "Smith invariants {} ≠ {}", list(a), list(b))
            }
            FormObstruction::Weights(a, b) => {
                write!(f, "self-intersections {} ≠ {}", list(a), list(b))
            }
            FormObstruction::NoBijection => write!(f, "no weight-preserving basis bijection"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormComparison {
    /// `bijection[i]` is the basis index in the second form matched to
    /// basis index `i` of the first.
    Isomorphic {
        bijection: Vec<usize>,
    },
    NotIsomorphic(FormObstruction),
}

impl FormComparison {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, FormComparison::Isomorphic { .. })
    }
}

/// Checks that `bijection` carries the Gram matrix of `f1` onto that of `f2`.
pub fn verify_bijection(f1: &IntersectionForm, f2: &IntersectionForm, bijection: &[usize]) -> bool {
    let n = f1.dimension();
    if f2.dimension() != n || bijection.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &j in bijection {
        if j >= n || std::mem::replace(&mut seen[j], true) {
            return false;
        }
    }
    (0..n).all(|i| (0..n).all(|j| f1.gram[(i, j)] == f2.gram[(bijection[i], bijection[j])]))
}

/// Screens by invariants, then searches exhaustively for a basis
/// permutation conjugating one Gram matrix into the other.
pub fn forms_isomorphic(f1: &IntersectionForm, f2: &IntersectionForm) -> FormComparison {
    use FormComparison::NotIsomorphic;
    let (i1, i2) = (form_invariants(f1), form_invariants(f2));
    if i1.dimension != i2.dimension {
        return NotIsomorphic(FormObstruction::Dimension(i1.dimension, i2.dimension));
    }
    if i1.rank != i2.rank {
        return NotIsomorphic(FormObstruction::GramRank(i1.rank, i2.rank));
    }
    if i1.determinant != i2.determinant {
        return NotIsomorphic(FormObstruction::Determinant(i1.determinant, i2.determinant));
    }
    if i1.smith != i2.smith {
        return NotIsomorphic(FormObstruction::Smith(i1.smith, i2.smith));
    }
    let (w1, w2) = (f1.weight_multiset(), f2.weight_multiset());
    if w1 != w2 {
        return NotIsomorphic(FormObstruction::Weights(w1, w2));
    }

    let n = f1.dimension();
    let mut assignment = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend(f1, f2, &mut assignment, &mut used) {
        debug_assert!(verify_bijection(f1, f2, &assignment));
        FormComparison::Isomorphic {
            bijection: assignment,
        }
    } else {
        NotIsomorphic(FormObstruction::NoBijection)
    }
}

fn extend(
    f1: &IntersectionForm,
    f2: &IntersectionForm,
    assignment: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let i = assignment.len();
    let n = used.len();
    if i == n {
        return true;
    }
    for j in 0..n {
        if used[j] || f1.gram[(i, i)] != f2.gram[(j, j)] {
            continue;
        }
        let consistent = assignment
            .iter()
            .enumerate()
            .all(|(p, &q)| f1.gram[(i, p)] == f2.gram[(j, q)]);
        if !consistent {
            continue;
        }
        used[j] = true;
        assignment.push(j);
        if extend(f1, f2, assignment, used) {
            return true;
        }
        assignment.pop();
        used[j] = false;
    }
    false
}
