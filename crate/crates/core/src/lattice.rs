//! Sections of lattice surjections `σ: ℤⁿ → ℤ^{n'}` and the complementary
//! quotient lattice.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intmat::{smith_normal_form, IntMatrix, UnimodularMatrix};

/// `σ` as an `n' × n` matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSurjection {
    matrix: IntMatrix,
}

impl LatticeSurjection {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() > matrix.cols() {
            return Err(Error::Shape(format!(
                "a map ℤ^{} → ℤ^{} cannot be surjective",
                matrix.cols(),
                matrix.rows()
            )));
        }
        Ok(LatticeSurjection { matrix })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Source rank `n`.
    pub fn source_rank(&self) -> usize {
        self.matrix.cols()
    }

    /// Target rank `n'`.
    pub fn target_rank(&self) -> usize {
        self.matrix.rows()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionData {
    /// `n × n'`, with `σ·τ = I`.
    pub tau: IntMatrix,
    /// `n × m`, `m = n − n'`; together with `τ` a basis of `ℤⁿ`.
    pub quotient_basis: IntMatrix,
}

impl SectionData {
    /// `[τ | quotient_basis]`
    pub fn assembled(&self) -> IntMatrix {
        self.tau
            .hstack(&self.quotient_basis)
            .expect("same row count")
    }

    pub fn quotient_rank(&self) -> usize {
        self.quotient_basis.cols()
    }

    pub fn verify(&self, s: &LatticeSurjection) -> bool {
        let n = s.source_rank();
        let np = s.target_rank();
        self.tau.rows() == n
            && self.tau.cols() == np
            && self.quotient_basis.rows() == n
            && self.quotient_basis.cols() == n - np
            && s.matrix
                .mul(&self.tau)
                .is_ok_and(|p| p == IntMatrix::identity(np))
            && self.assembled().determinant().abs().is_one()
    }
}

pub fn is_surjective(s: &LatticeSurjection) -> bool {
    let d = smith_normal_form(&s.matrix);
    d.rank() == s.target_rank() && d.invariant_factors().iter().all(One::is_one)
}

/// With `σ = U·[I | 0]·V`: `τ = V⁻¹·[I; 0]·U⁻¹` and the complement is
/// `V⁻¹·[0; I]`.
pub fn section_and_quotient(s: &LatticeSurjection) -> Result<SectionData> {
    let d = smith_normal_form(&s.matrix);
    let np = s.target_rank();
    let n = s.source_rank();
    if d.rank() != np || !d.invariant_factors().iter().all(One::is_one) {
        return Err(Error::NotSurjective(format!(
            "invariant factors {:?}",
            d.diagonal()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        )));
    }
    let v_inv = d.v.inverse().into_inner();
    let u_inv = d.u.inverse().into_inner();
    let tau = v_inv.submatrix(0, n, 0, np).mul(&u_inv)?;
    let quotient_basis = v_inv.submatrix(0, n, np, n);
    let data = SectionData {
        tau,
        quotient_basis,
    };
    if !data.verify(s) {
        return Err(Error::NotSurjective("section failed verification".into()));
    }
    Ok(data)
}

/// Invariant factors of `ℤⁿ / τ(ℤ^{n'})`: returns `(free rank, torsion)`.
pub fn quotient_lattice_structure(data: &SectionData) -> (usize, Vec<BigInt>) {
    let n = data.tau.rows();
    let d = smith_normal_form(&data.tau);
    let torsion: Vec<BigInt> = d
        .invariant_factors()
        .into_iter()
        .filter(|x| !x.is_one() && !x.is_zero())
        .collect();
    (n - d.rank(), torsion)
}

/// Builds `[I | 0]·W` for a unimodular `W`: the generic surjection.
pub fn split_surjection(target_rank: usize, w: &UnimodularMatrix) -> Result<LatticeSurjection> {
    let n = w.dim();
    if target_rank > n {
        return Err(Error::Shape(format!(
            "target rank {target_rank} exceeds {n}"
        )));
    }
    let mut proj = IntMatrix::zeros(target_rank, n);
    for i in 0..target_rank {
        proj[(i, i)] = BigInt::one();
    }
    LatticeSurjection::new(proj.mul(w.as_matrix())?)
}
