//! Box points of triangulation faces and the decomposition route to δ.
//!
//! For a nonempty face F with vertices v_1..v_s, BOX(F) collects the lattice
//! points `w = Σ q_i (v_i, 1)` with every `0 < q_i < 1`; the age of `w` is
//! its last coordinate. Summing `B_F(t) · h_link(F)(t)` over all faces,
//! including the empty one, reproduces the δ-polynomial — an identity this
//! module enforces rather than assumes.

use crate::ehrhart::delta_by_counting;
use crate::error::{Error, Result};
use crate::exact::{solve_unique, Int, IntVector, Rat, RatMatrix};
use crate::par;
use crate::poly::IntPoly;
use crate::triangulation::{h_polynomial, Face, LatticeTriangulation};
use num_traits::{One, Signed, Zero};

/// A lattice point of the open box of a face, with its exact barycentric
/// certificate and age.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxPoint {
    pub face: Face,
    /// Point of `N x Z`, length `dim + 1`.
    pub w: IntVector,
    /// Barycentric coordinates, one per face vertex, all strictly in (0,1).
    pub q: Vec<Rat>,
    /// Last coordinate of `w`; equals the coordinate sum.
    pub age: usize,
}

/// All box points of a nonempty face, ordered by age then lexicographically.
///
/// Enumeration scans, for each candidate age `a` in `1..=dim F`, the integer
/// points of the coordinate bounding box of the open parallelepiped, and
/// keeps those whose unique barycentric solution lies strictly inside.
pub fn box_points(t: &LatticeTriangulation, f: &Face) -> Vec<BoxPoint> {
    assert!(!f.is_empty(), "box_points needs a nonempty face");
    let verts: Vec<&[Int]> = f.indices().iter().map(|&i| t.point(i)).collect();
    let s = verts.len();
    let dim = t.dim();
    let cols: Vec<IntVector> = verts
        .iter()
        .map(|v| {
            let mut c = v.to_vec();
            c.push(Int::one());
            c
        })
        .collect();
    let mat = RatMatrix::from_int_columns(&cols);
    // per-coordinate bounds of { Σ q_i v_i : q ∈ [0,1]^s }
    let mut ranges = Vec::with_capacity(dim);
    for c in 0..dim {
        let lo: Int = verts
            .iter()
            .map(|v| &v[c])
            .filter(|x| x.is_negative())
            .sum();
        let hi: Int = verts
            .iter()
            .map(|v| &v[c])
            .filter(|x| x.is_positive())
            .sum();
        ranges.push((lo, hi));
    }
    let mut out = Vec::new();
    for age in 1..s {
        let mut x = Vec::new();
        scan_candidates(&mut x, &ranges, &mut |coords: &[Int]| {
            let mut rhs: Vec<Rat> = coords.iter().cloned().map(Rat::from_integer).collect();
            rhs.push(Rat::from_integer(Int::from(age as i64)));
            if let Some(q) = solve_unique(&mat, &rhs) {
                let strictly_inside = q
                    .iter()
                    .all(|qi| qi.is_positive() && qi < &Rat::one());
                if strictly_inside {
                    let mut w = coords.to_vec();
                    w.push(Int::from(age as i64));
                    out.push(BoxPoint {
                        face: f.clone(),
                        w,
                        q,
                        age,
                    });
                }
            }
        });
    }
    out
}

fn scan_candidates(prefix: &mut IntVector, ranges: &[(Int, Int)], visit: &mut impl FnMut(&[Int])) {
    match ranges.first() {
        None => visit(prefix),
        Some((lo, hi)) => {
            let mut x = lo.clone();
            while &x <= hi {
                prefix.push(x.clone());
                scan_candidates(prefix, &ranges[1..], visit);
                prefix.pop();
                x += 1;
            }
        }
    }
}

/// Age generating polynomial `B_F(t) = Σ_{w ∈ BOX(F)} t^{age(w)}`; the empty
/// face contributes the single zero box point of age 0, so `B_∅ = 1`.
pub fn box_poly(t: &LatticeTriangulation, f: &Face) -> IntPoly {
    if f.is_empty() {
        return IntPoly::one();
    }
    let mut coeffs = vec![Int::zero(); f.indices().len()];
    for bp in box_points(t, f) {
        coeffs[bp.age] += Int::one();
    }
    IntPoly::from_coeffs(coeffs)
}

/// δ via the box/link decomposition:
/// `δ_P(t) = Σ_F B_F(t) · h_{link(F)}(t)` at reference dimension
/// `d - dim F - 1`, summed over all faces including the empty one.
///
/// The result is cross-checked against the counting δ before being
/// returned; a mismatch is an internal-inconsistency error carrying both
/// polynomials.
pub fn delta_by_boxes(t: &LatticeTriangulation) -> Result<IntPoly> {
    let delta = delta_by_boxes_unchecked(t);
    let counted = delta_by_counting(t.polytope())?;
    if delta != counted {
        return Err(Error::inconsistency(
            "delta_by_boxes",
            format!(
                "decomposition gives [{delta}] but counting gives [{counted}] on {:?}",
                t.polytope().name()
            ),
        ));
    }
    Ok(delta)
}

/// The decomposition sum itself, without the counting cross-check. Test code
/// and the consistency check above are the only intended callers.
pub fn delta_by_boxes_unchecked(t: &LatticeTriangulation) -> IntPoly {
    let d = t.dim() as isize;
    let faces = t.all_faces();
    // faces of a unimodular simplex have empty boxes; skip them wholesale
    let unimodular_cells: Vec<Face> = t
        .maximal_simplices()
        .iter()
        .filter(|s| t.simplex_det(s).is_one())
        .cloned()
        .collect();
    let terms = par::map_slice(&faces, |f| {
        let b = if f.is_empty() {
            IntPoly::one()
        } else if unimodular_cells.iter().any(|c| c.contains(f)) {
            IntPoly::zero()
        } else {
            box_poly(t, f)
        };
        if b.is_zero() {
            return IntPoly::zero();
        }
        let link = t.link(f).expect("enumerated faces are faces");
        b.mul(&h_polynomial(&link, d - f.dim() - 1))
    });
    terms.iter().fold(IntPoly::zero(), |acc, p| acc.add(p))
}

/// Lattice points of the half-open parallelepiped of a maximal simplex,
/// classified by the support face of their coefficients. Independent
/// brute-force route used by the per-simplex partition identity
/// `Σ_{F ⊆ S} #BOX(F) = |det S|`.
pub fn half_open_box_census(t: &LatticeTriangulation, s: &Face) -> Vec<(Face, IntVector)> {
    let verts: Vec<&[Int]> = s.indices().iter().map(|&i| t.point(i)).collect();
    let n = verts.len();
    let dim = t.dim();
    let cols: Vec<IntVector> = verts
        .iter()
        .map(|v| {
            let mut c = v.to_vec();
            c.push(Int::one());
            c
        })
        .collect();
    let mat = RatMatrix::from_int_columns(&cols);
    let mut ranges = Vec::with_capacity(dim + 1);
    for c in 0..dim {
        let lo: Int = verts
            .iter()
            .map(|v| &v[c])
            .filter(|x| x.is_negative())
            .sum();
        let hi: Int = verts
            .iter()
            .map(|v| &v[c])
            .filter(|x| x.is_positive())
            .sum();
        ranges.push((lo, hi));
    }
    ranges.push((Int::zero(), Int::from(n as i64)));
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    scan_candidates(&mut prefix, &ranges, &mut |coords: &[Int]| {
        let rhs: Vec<Rat> = coords.iter().cloned().map(Rat::from_integer).collect();
        if let Some(q) = solve_unique(&mat, &rhs) {
            let half_open = q.iter().all(|qi| !qi.is_negative() && qi < &Rat::one());
            if half_open {
                let support: Vec<usize> = s
                    .indices()
                    .iter()
                    .zip(&q)
                    .filter(|(_, qi)| qi.is_positive())
                    .map(|(&i, _)| i)
                    .collect();
                out.push((Face::new(support), coords.to_vec()));
            }
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int_vec;
    use crate::testfix::{reeve_simplex, segment, unit_cube, unit_square};
    use crate::triangulation::{random_triangulation, regular_subdivision};

    fn trivial_segment2() -> LatticeTriangulation {
        regular_subdivision(&segment(2), int_vec(&[0, 0, 0])).unwrap()
    }

    #[test]
    fn box_point_of_long_edge() {
        let t = trivial_segment2();
        let edge = Face::new(vec![0, 2]);
        let pts = box_points(&t, &edge);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].w, int_vec(&[1, 1]));
        assert_eq!(pts[0].age, 1);
        let half = Rat::new(Int::one(), Int::from(2));
        assert_eq!(pts[0].q, vec![half.clone(), half]);
        assert_eq!(box_poly(&t, &edge), IntPoly::from_i64(&[0, 1]));
    }

    #[test]
    fn unimodular_faces_have_empty_boxes() {
        let t = regular_subdivision(&segment(2), int_vec(&[0, -1, 0])).unwrap();
        for f in t.all_faces() {
            if !f.is_empty() {
                assert!(box_points(&t, &f).is_empty(), "face {f:?}");
            }
        }
    }

    #[test]
    fn empty_face_polynomial_is_one() {
        let t = trivial_segment2();
        assert_eq!(box_poly(&t, &Face::empty()), IntPoly::one());
    }

    #[test]
    fn delta_by_boxes_trivial_segment() {
        // 1 (empty face) + t (long edge) with unimodular links elsewhere
        let t = trivial_segment2();
        assert_eq!(delta_by_boxes(&t).unwrap(), IntPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn unimodular_triangulation_reduces_to_h() {
        use crate::triangulation::h_of_triangulation;
        let t = regular_subdivision(&unit_square(), int_vec(&[0, 1, 1, 0])).unwrap();
        assert!(t.is_unimodular());
        assert_eq!(delta_by_boxes(&t).unwrap(), h_of_triangulation(&t));
    }

    #[test]
    fn reeve_delta_from_decomposition() {
        for h in 2..=3i64 {
            let t = random_triangulation(&reeve_simplex(h), 5).unwrap();
            assert_eq!(
                delta_by_boxes(&t).unwrap(),
                IntPoly::from_i64(&[1, 0, h - 1])
            );
        }
    }

    #[test]
    fn decomposition_independent_of_seed() {
        for p in [unit_cube(), reeve_simplex(2)] {
            let mut values = Vec::new();
            for seed in [1u64, 2, 3] {
                let t = random_triangulation(&p, seed).unwrap();
                // the raw sum, before the counting cross-check
                values.push(delta_by_boxes_unchecked(&t));
            }
            assert!(values.windows(2).all(|w| w[0] == w[1]));
            let t = random_triangulation(&p, 1).unwrap();
            assert_eq!(values[0], delta_by_boxes(&t).unwrap());
        }
    }

    #[test]
    fn half_open_partition_identity() {
        for (p, seed) in [(reeve_simplex(4), 2u64), (unit_cube(), 9)] {
            let t = random_triangulation(&p, seed).unwrap();
            for s in t.maximal_simplices() {
                let census = half_open_box_census(&t, s);
                assert_eq!(
                    Int::from(census.len() as i64),
                    t.simplex_det(s),
                    "census size vs det for {s:?}"
                );
                // census agrees with per-face box enumeration
                for f in t.all_faces() {
                    if !s.contains(&f) {
                        continue;
                    }
                    let from_census =
                        census.iter().filter(|(supp, _)| supp == &f).count();
                    let direct = if f.is_empty() {
                        1
                    } else {
                        box_points(&t, &f).len()
                    };
                    assert_eq!(from_census, direct, "face {f:?}");
                }
            }
        }
    }

    #[test]
    fn age_symmetry_within_faces() {
        let t = random_triangulation(&reeve_simplex(5), 3).unwrap();
        for f in t.all_faces() {
            if f.is_empty() {
                continue;
            }
            let pts = box_points(&t, &f);
            // w -> sigma(F) - w is an involution on BOX(F)
            let sigma: IntVector = {
                let mut acc = vec![Int::zero(); t.dim() + 1];
                for &i in f.indices() {
                    let mut v = t.point(i).to_vec();
                    v.push(Int::one());
                    for (a, b) in acc.iter_mut().zip(&v) {
                        *a += b;
                    }
                }
                acc
            };
            for bp in &pts {
                let mirrored: IntVector =
                    sigma.iter().zip(&bp.w).map(|(a, b)| a - b).collect();
                assert!(
                    pts.iter().any(|other| other.w == mirrored),
                    "mirror of {:?} missing in BOX({f:?})",
                    bp.w
                );
                let mirror_age = pts
                    .iter()
                    .find(|o| o.w == mirrored)
                    .map(|o| o.age)
                    .unwrap();
                assert_eq!(bp.age + mirror_age, f.indices().len());
            }
        }
    }

    #[test]
    fn cube_delta_by_decomposition() {
        let t = random_triangulation(&unit_cube(), 1).unwrap();
        assert_eq!(delta_by_boxes(&t).unwrap(), IntPoly::from_i64(&[1, 4, 1]));
    }
}
