//! Exact linear solving for small full-column-rank systems.

use super::{Rat, RatMatrix};
use num_traits::Zero;

/// Solves `a * x = b` where `a` has full column rank.
///
/// Returns `None` when the system is inconsistent. Panics if the columns are
/// linearly dependent: every call site hands in columns known independent
/// (simplex vertex lifts, lattice basis columns, Vandermonde systems).
pub fn solve_unique(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(b.len(), m, "rhs length mismatch");
    let mut aug = RatMatrix::zero(m, n + 1);
    for r in 0..m {
        for c in 0..n {
            *aug.at_mut(r, c) = a.at(r, c).clone();
        }
        *aug.at_mut(r, n) = b[r].clone();
    }
    let mut pivot_rows = Vec::with_capacity(n);
    let mut row = 0usize;
    for col in 0..n {
        let Some(p) = (row..m).find(|&r| !aug.at(r, col).is_zero()) else {
            panic!("solve_unique requires full column rank");
        };
        aug.swap_rows(row, p);
        let inv = {
            let piv = aug.at(row, col).clone();
            Rat::new(piv.denom().clone(), piv.numer().clone())
        };
        for c in col..=n {
            let v = aug.at(row, c) * &inv;
            *aug.at_mut(row, c) = v;
        }
        for r in 0..m {
            if r == row || aug.at(r, col).is_zero() {
                continue;
            }
            let factor = aug.at(r, col).clone();
            for c in col..=n {
                let v = aug.at(r, c) - &factor * aug.at(row, c);
                *aug.at_mut(r, c) = v;
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // rows below the pivots must have zero rhs or the system is inconsistent
    for r in row..m {
        if !aug.at(r, n).is_zero() {
            return None;
        }
    }
    Some((0..n).map(|c| aug.at(pivot_rows[c], n).clone()).collect())
}
