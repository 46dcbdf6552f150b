//! Affine normalization onto the lattice of an affine span.

use super::{
    integer_kernel, solve_unique, vec_sub, Int, IntMatrix, IntVector, Rat, RatMatrix,
};
use num_traits::{One, Zero};

/// An affine-lattice chart: maps reduced coordinates in `Z^d'` to ambient
/// coordinates via `origin + B x`, where the columns of `B` form a basis of
/// the saturated lattice `span(points - origin) ∩ Z^ambient`.
#[derive(Clone, Debug)]
pub struct AffineEmbedding {
    origin: IntVector,
    basis: Vec<IntVector>,
}

impl AffineEmbedding {
    pub fn ambient_rank(&self) -> usize {
        self.origin.len()
    }

    pub fn reduced_rank(&self) -> usize {
        self.basis.len()
    }

    pub fn origin(&self) -> &[Int] {
        &self.origin
    }

    pub fn basis(&self) -> &[IntVector] {
        &self.basis
    }

    /// Reduced point at dilation level 1 back to ambient coordinates.
    pub fn to_ambient(&self, x: &[Int]) -> IntVector {
        self.to_ambient_at_level(x, &Int::one())
    }

    /// Reduced point at dilation level `m`: `m * origin + B x`.
    pub fn to_ambient_at_level(&self, x: &[Int], m: &Int) -> IntVector {
        assert_eq!(x.len(), self.basis.len(), "reduced rank mismatch");
        let mut out: IntVector = self.origin.iter().map(|o| o * m).collect();
        for (coeff, b) in x.iter().zip(&self.basis) {
            for (o, e) in out.iter_mut().zip(b) {
                *o += coeff * e;
            }
        }
        out
    }

    /// Inverse chart: `None` when `p` is not on the level-`m` affine lattice.
    ///
    /// Because the basis lattice is saturated, an integer point on the
    /// affine span is always expressible integrally, so `None` means the
    /// point genuinely lies off the span (or off the lattice translate).
    pub fn to_reduced_at_level(&self, p: &[Int], m: &Int) -> Option<IntVector> {
        assert_eq!(p.len(), self.origin.len(), "ambient rank mismatch");
        let rhs: Vec<Rat> = p
            .iter()
            .zip(&self.origin)
            .map(|(pi, oi)| Rat::from_integer(pi - oi * m))
            .collect();
        if self.basis.is_empty() {
            return rhs.iter().all(Zero::is_zero).then(Vec::new);
        }
        let mat = RatMatrix::from_int_columns(&self.basis);
        let sol = solve_unique(&mat, &rhs)?;
        let mut out = IntVector::with_capacity(sol.len());
        for q in sol {
            if !q.is_integer() {
                return None;
            }
            out.push(q.to_integer());
        }
        Some(out)
    }

    pub fn to_reduced(&self, p: &[Int]) -> Option<IntVector> {
        self.to_reduced_at_level(p, &Int::one())
    }
}

/// Re-coordinatizes a point set onto the lattice of its affine span.
///
/// The first point maps to the origin of `Z^d'` where `d'` is the affine
/// dimension. Lattice point counts of all dilates are preserved because the
/// chart is a bijection between the span's saturated lattice and `Z^d'`.
pub fn hermite_affine_normalize(points: &[IntVector]) -> (Vec<IntVector>, AffineEmbedding) {
    assert!(!points.is_empty(), "need at least one point");
    let ambient = points[0].len();
    let origin = points[0].clone();
    let diffs: Vec<IntVector> = points[1..]
        .iter()
        .map(|p| {
            assert_eq!(p.len(), ambient, "ragged point set");
            vec_sub(p, &origin)
        })
        .collect();
    // Double integer kernel: first the orthogonal complement of the span,
    // then the saturated span lattice itself.
    let diff_matrix = IntMatrix::from_rows(ambient, &diffs);
    let complement = integer_kernel(&diff_matrix);
    let complement_matrix = IntMatrix::from_rows(ambient, &complement);
    let basis = canonical_basis(integer_kernel(&complement_matrix), ambient);
    let embedding = AffineEmbedding { origin, basis };
    let reduced: Vec<IntVector> = points
        .iter()
        .map(|p| {
            embedding
                .to_reduced(p)
                .expect("input point must lie on its own affine span lattice")
        })
        .collect();
    (reduced, embedding)
}

/// Canonicalizes a lattice basis by row-style Hermite normal form, so the
/// chart depends only on the lattice, not on how the kernel was computed.
fn canonical_basis(basis: Vec<IntVector>, ambient: usize) -> Vec<IntVector> {
    if basis.is_empty() {
        return basis;
    }
    let b = IntMatrix::from_rows(ambient, &basis);
    let (h, _) = crate::exact::hermite_normal_form(&b.transpose());
    let ht = h.transpose();
    (0..basis.len()).map(|r| ht.row(r).to_vec()).collect()
}
