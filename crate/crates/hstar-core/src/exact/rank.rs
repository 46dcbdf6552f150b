//! Exact rank via fraction-free (Bareiss) elimination.

use super::{Int, IntMatrix, RatMatrix};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

/// Rank over the rationals, computed exactly.
///
/// Rows are scaled to integers first, then eliminated fraction-free with
/// full pivoting, so no rational intermediates appear.
pub fn rank_exact(m: &RatMatrix) -> usize {
    let mut rows: Vec<Vec<Int>> = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let mut lcm = Int::one();
        for c in 0..m.cols() {
            lcm = lcm.lcm(m.at(r, c).denom());
        }
        rows.push(
            (0..m.cols())
                .map(|c| {
                    let q = m.at(r, c);
                    q.numer() * (&lcm / q.denom())
                })
                .collect(),
        );
    }
    bareiss_rank(rows)
}

/// Rank of an integer matrix over the rationals.
pub fn rank_exact_int(m: &IntMatrix) -> usize {
    let rows: Vec<Vec<Int>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    bareiss_rank(rows)
}

fn bareiss_rank(mut a: Vec<Vec<Int>>) -> usize {
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut prev = Int::one();
    let mut rank = 0usize;
    let mut colp: Vec<usize> = (0..nc).collect();
    while rank < nr && rank < nc {
        // full pivot search in the trailing block
        let mut pivot = None;
        'search: for i in rank..nr {
            for j in rank..nc {
                if !a[i][colp[j]].is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(rank, pi);
        colp.swap(rank, pj);
        let pc = colp[rank];
        let piv = a[rank][pc].clone();
        for i in (rank + 1)..nr {
            let head = std::mem::replace(&mut a[i][pc], Int::zero());
            if head.is_zero() && piv.is_one() && prev.is_one() {
                continue;
            }
            for j in (rank + 1)..nc {
                let c = colp[j];
                let v = (&a[i][c] * &piv - &head * &a[rank][c]) / &prev;
                a[i][c] = v;
            }
        }
        prev = piv;
        rank += 1;
    }
    rank
}

/// Absolute determinant of a square integer matrix, fraction-free.
pub fn abs_det(m: &IntMatrix) -> Int {
    assert_eq!(m.rows(), m.cols(), "determinant needs a square matrix");
    let n = m.rows();
    if n == 0 {
        return Int::one();
    }
    let mut a: Vec<Vec<Int>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut prev = Int::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(i) = ((k + 1)..n).find(|&i| !a[i][k].is_zero()) else {
                return Int::zero();
            };
            a.swap(k, i);
        }
        let piv = a[k][k].clone();
        for i in (k + 1)..n {
            let head = std::mem::replace(&mut a[i][k], Int::zero());
            for j in (k + 1)..n {
                let v = (&a[i][j] * &piv - &head * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = piv;
    }
    a[n - 1][n - 1].abs()
}
