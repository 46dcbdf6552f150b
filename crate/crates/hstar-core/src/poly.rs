//! Integer polynomials in one variable, lowest degree first.

use crate::exact::Int;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense integer polynomial; trailing zeros are trimmed so the zero
/// polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![Int::one()],
        }
    }

    /// `t^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Int::zero(); k + 1];
        coeffs[k] = Int::one();
        IntPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().copied().map(Int::from).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Int> {
        self.coeffs
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn scale(&self, s: &Int) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Int::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn eval(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Coefficientwise comparison; missing coefficients count as zero.
    pub fn leq(&self, other: &IntPoly) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|i| self.coeff(i) <= other.coeff(i))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// `(1 - t)^n`
    pub fn one_minus_t_pow(n: usize) -> IntPoly {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut c = Int::one();
        for k in 0..=n {
            coeffs.push(c.clone());
            // next binomial with alternating sign: c *= -(n - k) / (k + 1)
            c = -c * Int::from((n - k) as i64) / Int::from((k + 1) as i64);
        }
        IntPoly::from_coeffs(coeffs)
    }

    /// Coefficients as i64, for reports; panics if one overflows.
    pub fn to_i64_vec(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .map(|c| i64::try_from(c).expect("coefficient exceeds i64"))
            .collect()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "t")?,
                1 => write!(f, "{c}t")?,
                _ if c.is_one() => write!(f, "t^{i}")?,
                _ => write!(f, "{c}t^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Binomial coefficient C(n, k) as an exact integer.
pub fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from((n - i) as i64) / Int::from((i + 1) as i64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trimming_and_degree() {
        let p = IntPoly::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(IntPoly::from_i64(&[0, 0]).degree(), None);
    }

    #[test]
    fn one_minus_t_squared() {
        assert_eq!(IntPoly::one_minus_t_pow(2), IntPoly::from_i64(&[1, -2, 1]));
        assert_eq!(IntPoly::one_minus_t_pow(0), IntPoly::one());
    }

    #[test]
    fn leq_examples() {
        let one = IntPoly::from_i64(&[1]);
        let one_t = IntPoly::from_i64(&[1, 1]);
        assert!(one.leq(&one_t));
        assert!(!IntPoly::from_i64(&[1, 2]).leq(&one_t));
        assert!(IntPoly::from_i64(&[1, 0, 1]).leq(&IntPoly::from_i64(&[1, 4, 1])));
    }

    #[test]
    fn eval_at_one_sums_coefficients() {
        let p = IntPoly::from_i64(&[1, 4, 1]);
        assert_eq!(p.eval(&Int::from(1)), Int::from(6));
        assert_eq!(p.eval(&Int::from(2)), Int::from(13));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), Int::from(6));
        assert_eq!(binomial(4, 0), Int::from(1));
        assert_eq!(binomial(3, 5), Int::from(0));
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(IntPoly::from_i64(&[1, 4, 1]).to_string(), "1 + 4t + t^2");
        assert_eq!(IntPoly::from_i64(&[1, 0, 2]).to_string(), "1 + 2t^2");
    }
}
