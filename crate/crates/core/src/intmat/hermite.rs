use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{IntMatrix, UnimodularMatrix};

/// Row-style Hermite normal form: returns `(H, U)` with `H = U·A`.
///
/// `H` is in row echelon form, pivots are positive, entries above each pivot
/// lie in `[0, pivot)`, and zero rows come last.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, UnimodularMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut r = 0;

    for c in 0..n {
        if r == m {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at row r
        loop {
            let pivot = (r..m)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&i, &j| h[(i, c)].abs().cmp(&h[(j, c)].abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &-&q);
                u.add_row_multiple(i, r, &-q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let p = h[(r, c)].clone();
        for i in 0..r {
            let q: BigInt = h[(i, c)].div_floor(&p);
            if !q.is_zero() {
                h.add_row_multiple(i, r, &-&q);
                u.add_row_multiple(i, r, &-q);
            }
        }
        r += 1;
    }
    (h, UnimodularMatrix::new_unchecked(u))
}

/// The nonzero rows of the Hermite form: a canonical basis of the row lattice.
pub fn row_lattice_basis(a: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(a);
    let keep: Vec<Vec<BigInt>> = h
        .row_vecs()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    if keep.is_empty() {
        return IntMatrix::zeros(0, a.cols());
    }
    IntMatrix::from_rows(keep).expect("rows of equal length")
}
