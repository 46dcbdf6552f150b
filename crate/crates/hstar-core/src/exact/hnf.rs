//! Column-style Hermite normal form and integer kernels.

use super::{IntMatrix, IntVector};
use num_integer::Integer as _;
use num_traits::{Signed, Zero};

/// Column-style Hermite normal form.
///
/// Returns `(h, u)` with `h = a * u` and `u` unimodular. Pivots descend
/// left to right, each pivot is positive, entries left of a pivot in its row
/// are reduced into `[0, pivot)`, and all zero columns sit at the right.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut c = 0usize;
    for r in 0..m {
        if c == n {
            break;
        }
        let Some(j0) = (c..n).find(|&j| !h.at(r, j).is_zero()) else {
            continue;
        };
        h.swap_cols(c, j0);
        u.swap_cols(c, j0);
        for j in (c + 1)..n {
            if h.at(r, j).is_zero() {
                continue;
            }
            let p = h.at(r, c).clone();
            let q = h.at(r, j).clone();
            let e = p.extended_gcd(&q);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let pc = &p / &g;
            let qc = &q / &g;
            // The 2x2 column operation [[x, -qc], [y, pc]] has determinant
            // (x*p + y*q)/g = 1, keeping u unimodular.
            for i in 0..m {
                let hic = h.at(i, c).clone();
                let hij = h.at(i, j).clone();
                *h.at_mut(i, c) = &x * &hic + &y * &hij;
                *h.at_mut(i, j) = &pc * &hij - &qc * &hic;
            }
            for i in 0..n {
                let uic = u.at(i, c).clone();
                let uij = u.at(i, j).clone();
                *u.at_mut(i, c) = &x * &uic + &y * &uij;
                *u.at_mut(i, j) = &pc * &uij - &qc * &uic;
            }
        }
        if h.at(r, c).is_negative() {
            h.negate_col(c);
            u.negate_col(c);
        }
        let pivot = h.at(r, c).clone();
        for j in 0..c {
            let q = h.at(r, j).div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            for i in 0..m {
                let t = &q * h.at(i, c);
                *h.at_mut(i, j) -= t;
            }
            for i in 0..n {
                let t = &q * u.at(i, c);
                *u.at_mut(i, j) -= t;
            }
        }
        c += 1;
    }
    (h, u)
}

/// Basis of the saturated lattice `{ x in Z^n : a.x = 0 }`.
///
/// The returned vectors are the transform columns matching the zero columns
/// of the Hermite form, so they always generate the full integer kernel.
pub fn integer_kernel(a: &IntMatrix) -> Vec<IntVector> {
    let (h, u) = hermite_normal_form(a);
    let rank = (0..a.cols()).filter(|&c| !h.col_is_zero(c)).count();
    (rank..a.cols()).map(|c| u.col(c)).collect()
}
