//! Ehrhart counts, the Ehrhart polynomial, and the δ-polynomial.
//!
//! δ is computed from exactly `d+1` counts via the binomial transform
//! `δ_i = Σ_{j=0..i} (-1)^j C(d+1, j) f(i-j)`, which stays integer all the
//! way. The interpolated Ehrhart polynomial is kept only as a cross-check.

use crate::error::{Error, Result};
use crate::exact::{solve_unique, Int, Rat, RatMatrix};
use crate::par;
use crate::poly::{binomial, IntPoly};
use crate::polytope::{lattice_points, LatticePolytope};
use num_traits::{One, Signed, Zero};

/// `f_P(0), ..., f_P(d)` for a full-dimensional polytope of dimension `d`.
pub fn ehrhart_counts(p: &LatticePolytope) -> Result<Vec<Int>> {
    let d = p.dim();
    if d != p.ambient_rank() {
        return Err(Error::NotFullDimensional {
            dim: d,
            ambient: p.ambient_rank(),
        });
    }
    ehrhart_counts_up_to(p, d)
}

/// `f_P(0), ..., f_P(upper)`, dilates counted in parallel.
pub fn ehrhart_counts_up_to(p: &LatticePolytope, upper: usize) -> Result<Vec<Int>> {
    let counts = par::map_indices(upper + 1, |m| lattice_points(p, m).map(|pts| pts.len()));
    counts
        .into_iter()
        .map(|c| c.map(|n| Int::from(n as i64)))
        .collect()
}

/// Rational polynomial in the dilation variable, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    coeffs: Vec<Rat>,
}

impl EhrhartPolynomial {
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn eval(&self, m: &Int) -> Rat {
        let x = Rat::from_integer(m.clone());
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }
}

/// Unique interpolant of degree at most `d` through `(m, counts[m])`,
/// `m = 0..=d`, with exact rational coefficients.
pub fn ehrhart_polynomial(counts: &[Int], d: usize) -> EhrhartPolynomial {
    assert_eq!(counts.len(), d + 1, "need exactly d+1 counts");
    // Vandermonde solve; d is tiny so exactness beats cleverness.
    let mut rows = Vec::with_capacity(d + 1);
    for m in 0..=d {
        let mut row = Vec::with_capacity(d + 1);
        let mut pow = Int::one();
        for _ in 0..=d {
            row.push(Rat::from_integer(pow.clone()));
            pow *= Int::from(m as i64);
        }
        rows.push(row);
    }
    let a = RatMatrix::from_rows(d + 1, &rows);
    let b: Vec<Rat> = counts.iter().cloned().map(Rat::from_integer).collect();
    let coeffs = solve_unique(&a, &b).expect("Vandermonde system is invertible");
    EhrhartPolynomial { coeffs }
}

/// δ-polynomial from `d+1` exact counts.
///
/// Errors when the transform produces a negative coefficient or a constant
/// term other than 1: both signal corrupted counts, not valid input.
pub fn delta_from_counts(counts: &[Int], d: usize) -> Result<IntPoly> {
    assert_eq!(counts.len(), d + 1, "need exactly d+1 counts");
    let mut coeffs = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut c = Int::zero();
        for j in 0..=i {
            let term = binomial(d + 1, j) * &counts[i - j];
            if j % 2 == 0 {
                c += term;
            } else {
                c -= term;
            }
        }
        if c.is_negative() {
            return Err(Error::inconsistency(
                "delta_from_counts",
                format!("negative coefficient delta_{i} = {c} from counts {counts:?}"),
            ));
        }
        coeffs.push(c);
    }
    if coeffs[0] != Int::one() {
        return Err(Error::inconsistency(
            "delta_from_counts",
            format!("constant term {} != 1", coeffs[0]),
        ));
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

/// δ-polynomial of a full-dimensional polytope by counting.
pub fn delta_by_counting(p: &LatticePolytope) -> Result<IntPoly> {
    let d = p.dim();
    let counts = ehrhart_counts(p)?;
    delta_from_counts(&counts, d)
}

/// Coefficientwise order on integer polynomials.
pub fn poly_leq(f: &IntPoly, g: &IntPoly) -> bool {
    f.leq(g)
}

/// Checks that the interpolated Ehrhart polynomial reproduces brute-force
/// counts at `m = d+1` and `d+2`; guards against interpolating from
/// insufficient data.
pub fn deep_count_check(p: &LatticePolytope) -> Result<()> {
    let d = p.dim();
    let counts = ehrhart_counts_up_to(p, d + 2)?;
    let interp = ehrhart_polynomial(&counts[..=d], d);
    for (m, count) in counts.iter().enumerate().skip(d + 1) {
        let predicted = interp.eval(&Int::from(m as i64));
        let actual = Rat::from_integer(count.clone());
        if predicted != actual {
            return Err(Error::inconsistency(
                "deep_count_check",
                format!(
                    "interpolant predicts f({m}) = {predicted} but the scan counts {actual}"
                ),
            ));
        }
    }
    Ok(())
}
