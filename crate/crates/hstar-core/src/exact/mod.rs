//! Exact integer and rational linear algebra.
//!
//! Everything downstream (facet enumeration, lower hulls, box points, graded
//! ranks) runs on the types in this module. There is no floating point
//! anywhere in the crate: integers are arbitrary precision and rationals are
//! kept in lowest terms with positive denominator by construction.

mod affine;
mod echelon;
mod hnf;
mod rank;
mod solve;

pub use affine::{hermite_affine_normalize, AffineEmbedding};
pub use echelon::IntEchelon;
pub use hnf::{hermite_normal_form, integer_kernel};
pub use rank::{abs_det, rank_exact, rank_exact_int};
pub use solve::solve_unique;

use num_traits::{Signed, Zero};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;
pub type IntVector = Vec<Int>;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn int_vec(v: &[i64]) -> IntVector {
    v.iter().copied().map(Int::from).collect()
}

pub fn rat_from_int(n: Int) -> Rat {
    Rat::from_integer(n)
}

/// Dual pairing of `u` and `v` as a dot product.
///
/// Panics on length mismatch; callers are responsible for handing in vectors
/// of the same rank.
pub fn pairing(u: &[Int], v: &[Int]) -> Int {
    assert_eq!(u.len(), v.len(), "pairing requires equal lengths");
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Dense integer matrix, row major. Zero rows or columns are legal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        IntMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![Int::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Int::from(1);
        }
        m
    }

    /// Builds from row slices; all rows must share a length. An empty row
    /// list yields the 0x`cols` matrix.
    pub fn from_rows(cols: usize, rows: &[IntVector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().cloned());
        }
        IntMatrix::new(rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Int {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Int {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> IntVector {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    pub fn col_is_zero(&self, c: usize) -> bool {
        (0..self.rows).all(|r| self.at(r, c).is_zero())
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().cloned().map(Rat::from_integer).collect(),
        )
    }
}

/// Dense rational matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        RatMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn from_rows(cols: usize, rows: &[Vec<Rat>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().cloned());
        }
        RatMatrix::new(rows.len(), cols, data)
    }

    /// Columns are the given integer vectors; used for barycentric systems.
    pub fn from_int_columns(cols: &[IntVector]) -> Self {
        let nrows = cols.first().map_or(0, |c| c.len());
        let mut m = RatMatrix::zero(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows, "ragged column");
            for (i, v) in col.iter().enumerate() {
                *m.at_mut(i, j) = Rat::from_integer(v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Elementwise vector sum.
pub fn vec_add(a: &[Int], b: &[Int]) -> IntVector {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Elementwise vector difference.
pub fn vec_sub(a: &[Int], b: &[Int]) -> IntVector {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Int], s: &Int) -> IntVector {
    a.iter().map(|x| x * s).collect()
}

pub fn vec_is_zero(a: &[Int]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Divides a vector by the gcd of its entries and flips signs so the first
/// nonzero entry is positive. The zero vector is returned unchanged.
pub fn primitive_vector(v: &[Int]) -> IntVector {
    use num_integer::Integer as _;
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let mut out: IntVector = v.iter().map(|x| x / &g).collect();
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut out {
                *x = -x.clone();
            }
        }
    }
    out
}
