//! Smith normal form with both transforms.
//!
//! The decomposition is stored as `A = U·S·V`. Row operations applied to the
//! working copy of `A` are undone on the right of `U`, column operations on
//! the left of `V`, so no matrix inverse is ever formed.
//!
//! Pivoting always takes the nonzero entry of least magnitude in the trailing
//! block, scanning row-major, which keeps entry growth modest and makes the
//! transforms reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{IntMatrix, UnimodularMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: UnimodularMatrix,
    pub s: IntMatrix,
    pub v: UnimodularMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries of `S`, zeros included, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    /// Nonzero diagonal entries (the invariant factors, 1s included).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Recomputes `U·S·V`.
    pub fn product(&self) -> IntMatrix {
        self.u
            .as_matrix()
            .mul(&self.s)
            .and_then(|us| us.mul(self.v.as_matrix()))
            .expect("shapes agree by construction")
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Work {
    // a ← E·a with E: row[dst] += q·row[src]; u ← u·E⁻¹
    fn row_add(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row_multiple(dst, src, q);
        self.u.add_col_multiple(src, dst, &-q);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_cols(i, j);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_col(i);
    }

    // a ← a·F with F: col[dst] += q·col[src]; v ← F⁻¹·v
    fn col_add(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col_multiple(dst, src, q);
        self.v.add_row_multiple(src, dst, &-q);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_rows(i, j);
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let m = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| m < *b) {
                    best = Some((i, j, m));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
    };

    for t in 0..m.min(n) {
        while let Some((pi, pj)) = w.min_pivot(t) {
            w.row_swap(t, pi);
            w.col_swap(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = w.a[(i, t)].div_floor(&w.a[(t, t)]);
                w.row_add(i, t, &-q);
                if !w.a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = w.a[(t, j)].div_floor(&w.a[(t, t)]);
                w.col_add(j, t, &-q);
                if !w.a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block
            let pivot = w.a[(t, t)].clone();
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.row_add(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if t < m && t < n && w.a[(t, t)].is_negative() {
            w.row_negate(t);
        }
    }

    SmithDecomposition {
        u: UnimodularMatrix::new_unchecked(w.u),
        s: w.a,
        v: UnimodularMatrix::new_unchecked(w.v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int_matrix;
    use num_traits::One;
    use proptest::prelude::*;

    fn diag_i64(d: &SmithDecomposition) -> Vec<i64> {
        d.diagonal().iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn diag_2_5() {
        let a = int_matrix![[2, 0], [0, 5]];
        let d = smith_normal_form(&a);
        assert_eq!(diag_i64(&d), vec![1, 10]);
        assert_eq!(d.product(), a);
    }

    #[test]
    fn identity_is_fixed() {
        let d = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(d.s, IntMatrix::identity(3));
        assert_eq!(d.u, UnimodularMatrix::identity(3));
        assert_eq!(d.v, UnimodularMatrix::identity(3));
    }

    #[test]
    fn zero_matrix() {
        let d = smith_normal_form(&IntMatrix::zeros(2, 3));
        assert!(d.s.is_zero());
        assert_eq!(d.rank(), 0);
    }

    #[test]
    fn row_vector() {
        let a = int_matrix![[2, 3]];
        let d = smith_normal_form(&a);
        assert_eq!(d.s, int_matrix![[1, 0]]);
        assert_eq!(d.product(), a);
    }

    #[test]
    fn known_invariants() {
        // ℤ³ / rows: classic example with factors 2, 6
        let a = int_matrix![[2, 4, 4], [-6, 6, 12], [10, -4, -16]];
        let d = smith_normal_form(&a);
        assert_eq!(diag_i64(&d), vec![2, 6, 12]);
        assert_eq!(d.product(), a);
    }

    fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
                IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn decomposition_is_exact(a in matrix_strategy()) {
            let d = smith_normal_form(&a);
            prop_assert_eq!(d.product(), a.clone());
            prop_assert!(d.u.determinant().abs().is_one());
            prop_assert!(d.v.determinant().abs().is_one());
            let diag = d.diagonal();
            for w in diag.windows(2) {
                if !w[1].is_zero() {
                    prop_assert!(!w[0].is_zero());
                    prop_assert!(w[1].is_multiple_of(&w[0]));
                }
            }
            prop_assert!(diag.iter().all(|x| !x.is_negative()));
            prop_assert_eq!(d.rank(), a.rank());
            // off-diagonal entries vanish
            for i in 0..d.s.rows() {
                for j in 0..d.s.cols() {
                    if i != j {
                        prop_assert!(d.s[(i, j)].is_zero());
                    }
                }
            }
        }
    }
}
