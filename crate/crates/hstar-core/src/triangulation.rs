//! Regular lattice triangulations via lifting heights and lower hulls.
//!
//! The vertex candidate set is every lattice point of the polytope, so that
//! pair restrictions have all of Q's points available; candidates off the
//! lower hull simply go unused. Stored heights are a regularity certificate:
//! rebuilding the lower hull from them must reproduce the cells exactly.

use crate::error::{Error, Result};
use crate::exact::{
    abs_det, integer_kernel, pairing, solve_unique, vec_sub, Int, IntMatrix, IntVector, Rat,
    RatMatrix,
};
use crate::par;
use crate::poly::IntPoly;
use crate::polytope::{
    combinations, facet_inequalities, lattice_points, normalized_volume, LatticePolytope,
    Membership,
};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap};

/// A face as a sorted set of point indices; the empty face has dimension -1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(Vec<usize>);

impl Face {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Face(indices)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Face::new(v)
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        let mut i = 0;
        let mut j = 0;
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn contains(&self, other: &Face) -> bool {
        other.0.iter().all(|i| self.0.binary_search(i).is_ok())
    }
}

/// A regular lattice triangulation together with its certificate data.
#[derive(Clone, Debug)]
pub struct LatticeTriangulation {
    polytope: LatticePolytope,
    points: Vec<IntVector>,
    heights: Vec<Int>,
    maximal_simplices: Vec<Face>,
    faces: BTreeSet<Face>,
    dim: usize,
}

impl LatticeTriangulation {
    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    /// All lattice points of the polytope, lexicographically ordered. These
    /// are the vertex candidates; not all of them need be used.
    pub fn points(&self) -> &[IntVector] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[Int] {
        &self.points[i]
    }

    pub fn heights(&self) -> &[Int] {
        &self.heights
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn maximal_simplices(&self) -> &[Face] {
        &self.maximal_simplices
    }

    /// Deduplicated faces of all maximal simplices, including the empty
    /// face, in canonical order.
    pub fn all_faces(&self) -> Vec<Face> {
        self.faces.iter().cloned().collect()
    }

    pub fn is_face(&self, f: &Face) -> bool {
        self.faces.contains(f)
    }

    /// Indices of points actually used as simplex vertices.
    pub fn used_vertices(&self) -> Vec<usize> {
        let mut used = BTreeSet::new();
        for s in &self.maximal_simplices {
            used.extend(s.indices().iter().copied());
        }
        used.into_iter().collect()
    }

    /// Edge matrix determinant (absolute) of a maximal simplex.
    pub fn simplex_det(&self, s: &Face) -> Int {
        let idx = s.indices();
        assert_eq!(idx.len(), self.dim + 1, "not a maximal simplex");
        let base = &self.points[idx[0]];
        let rows: Vec<IntVector> = idx[1..]
            .iter()
            .map(|&i| vec_sub(&self.points[i], base))
            .collect();
        abs_det(&IntMatrix::from_rows(self.dim, &rows))
    }

    /// True iff every maximal simplex is unimodular.
    pub fn is_unimodular(&self) -> bool {
        self.maximal_simplices
            .iter()
            .all(|s| self.simplex_det(s).is_one())
    }

    /// Link of a face: all `G` disjoint from `F` with `G ∪ F` a face.
    pub fn link(&self, f: &Face) -> Result<Vec<Face>> {
        if !self.is_face(f) {
            return Err(Error::InvalidPolytope(format!(
                "link of a non-face {:?}",
                f.indices()
            )));
        }
        Ok(self
            .faces
            .iter()
            .filter(|g| g.is_disjoint(f) && self.faces.contains(&g.union(f)))
            .cloned()
            .collect())
    }

    /// Recomputes the lower hull from the stored heights and checks that it
    /// reproduces the stored cells: the regularity certificate.
    pub fn verify_regularity(&self) -> bool {
        match lower_hull_simplices(&self.points, &self.heights, self.dim) {
            Ok(cells) => cells == self.maximal_simplices,
            Err(_) => false,
        }
    }
}

/// Deterministic pseudo-random lifting heights in `[0, 2^16)`, plus an
/// optional per-point additive penalty.
pub fn generic_heights(n: usize, seed: u64, penalty: Option<&[Int]>) -> Vec<Int> {
    assert!(n >= 1, "need at least one point");
    if let Some(p) = penalty {
        assert_eq!(p.len(), n, "penalty length mismatch");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let h = Int::from(rng.gen_range(0..65536i64));
            match penalty {
                Some(p) => h + &p[i],
                None => h,
            }
        })
        .collect()
}

/// Regular subdivision of the polytope's lattice points under the given
/// heights. Fails with `DegenerateHeights` when some lower-hull cell is not
/// a simplex; points lifted onto a cell's hyperplane without being vertices
/// of it are accepted and left unused.
pub fn regular_subdivision(
    polytope: &LatticePolytope,
    heights: Vec<Int>,
) -> Result<LatticeTriangulation> {
    let dim = polytope.dim();
    if dim != polytope.ambient_rank() {
        return Err(Error::NotFullDimensional {
            dim,
            ambient: polytope.ambient_rank(),
        });
    }
    let points = lattice_points(polytope, 1)?;
    if heights.len() != points.len() {
        return Err(Error::InvalidPolytope(format!(
            "{} heights for {} lattice points",
            heights.len(),
            points.len()
        )));
    }
    let maximal_simplices = lower_hull_simplices(&points, &heights, dim)?;
    let mut faces = BTreeSet::new();
    faces.insert(Face::empty());
    for s in &maximal_simplices {
        let idx = s.indices();
        for k in 1..=idx.len() {
            for c in combinations(idx.len(), k) {
                faces.insert(Face::new(c.iter().map(|&i| idx[i]).collect()));
            }
        }
    }
    let t = LatticeTriangulation {
        polytope: polytope.clone(),
        points,
        heights,
        maximal_simplices,
        faces,
        dim,
    };
    check_covering(&t)?;
    Ok(t)
}

/// Builds a triangulation from seeded generic heights, redrawing on
/// degenerate lifts. The sub-seed for attempt `a` is derived from `seed`
/// deterministically.
pub fn random_triangulation(
    polytope: &LatticePolytope,
    seed: u64,
) -> Result<LatticeTriangulation> {
    let n = lattice_points(polytope, 1)?.len();
    let mut last = None;
    for attempt in 0..16u64 {
        let heights = generic_heights(n, mix_seed(seed, attempt), None);
        match regular_subdivision(polytope, heights) {
            Ok(t) => return Ok(t),
            Err(e @ Error::DegenerateHeights { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Derives a deterministic sub-seed; used for retry attempts and sub-cases.
pub fn mix_seed(seed: u64, attempt: u64) -> u64 {
    seed.wrapping_mul(0x9E3779B97F4A7C15)
        .wrapping_add(attempt.wrapping_mul(0xD1B54A32D192ED03))
}

/// Cells of the lower hull of the lifted point set, as sorted vertex-index
/// faces in lexicographic order.
fn lower_hull_simplices(
    points: &[IntVector],
    heights: &[Int],
    dim: usize,
) -> Result<Vec<Face>> {
    if dim == 0 {
        // a point has the trivial triangulation by its single lattice point
        return Ok(vec![Face::new(vec![0])]);
    }
    let lifted: Vec<IntVector> = points
        .iter()
        .zip(heights)
        .map(|(p, h)| {
            let mut v = p.clone();
            v.push(h.clone());
            v
        })
        .collect();
    let subsets = combinations(lifted.len(), dim + 1);
    let hits = par::map_slice(&subsets, |s| lower_facet_cell(&lifted, s, dim));
    let cells: BTreeSet<Vec<usize>> = hits.into_iter().flatten().collect();
    let mut out = Vec::with_capacity(cells.len());
    for cell in cells {
        out.push(cell_to_simplex(points, cell, dim)?);
    }
    // cells arrive sorted by their full point sets; re-sort by vertex sets
    out.sort();
    out.dedup();
    Ok(out)
}

/// If the subset spans a lower supporting hyperplane of the lifted hull,
/// returns the full set of tight point indices (the cell).
fn lower_facet_cell(lifted: &[IntVector], subset: &[usize], dim: usize) -> Option<Vec<usize>> {
    let base = &lifted[subset[0]];
    let diffs: Vec<IntVector> = subset[1..]
        .iter()
        .map(|&i| vec_sub(&lifted[i], base))
        .collect();
    let kernel = integer_kernel(&IntMatrix::from_rows(dim + 1, &diffs));
    if kernel.len() != 1 {
        return None;
    }
    let mut normal = kernel.into_iter().next().unwrap();
    // orient upwards in the lifting coordinate; vertical planes are walls
    match normal[dim].sign() {
        num_bigint::Sign::NoSign => return None,
        num_bigint::Sign::Minus => {
            for x in &mut normal {
                *x = -x.clone();
            }
        }
        num_bigint::Sign::Plus => {}
    }
    let offset = pairing(&normal, base);
    let mut cell = Vec::new();
    for (i, p) in lifted.iter().enumerate() {
        match pairing(&normal, p).cmp(&offset) {
            std::cmp::Ordering::Less => return None,
            std::cmp::Ordering::Equal => cell.push(i),
            std::cmp::Ordering::Greater => {}
        }
    }
    Some(cell)
}

/// Extracts the vertex set of a cell; errors unless the cell is a simplex.
/// Tight non-vertex points are legal and end up unused.
fn cell_to_simplex(points: &[IntVector], cell: Vec<usize>, dim: usize) -> Result<Face> {
    if cell.len() == dim + 1 {
        return Ok(Face::new(cell));
    }
    let cell_points: Vec<IntVector> = cell.iter().map(|&i| points[i].clone()).collect();
    let facets = facet_inequalities(&cell_points, dim);
    let vertices: Vec<usize> = cell
        .iter()
        .zip(&cell_points)
        .filter(|(_, p)| {
            let tight: Vec<IntVector> = facets
                .iter()
                .filter(|(n, c)| &pairing(n, p) == c)
                .map(|(n, _)| n.clone())
                .collect();
            crate::exact::rank_exact_int(&IntMatrix::from_rows(dim, &tight)) == dim
        })
        .map(|(&i, _)| i)
        .collect();
    if vertices.len() != dim + 1 {
        return Err(Error::DegenerateHeights {
            cell_points: cell.len(),
        });
    }
    Ok(Face::new(vertices))
}

/// Covering invariant: simplex determinants sum to the normalized volume,
/// and every point is classified correctly against each cell's lifted
/// hyperplane (on it only when inside the cell, above it otherwise).
fn check_covering(t: &LatticeTriangulation) -> Result<()> {
    let det_sum: Int = t
        .maximal_simplices
        .iter()
        .map(|s| t.simplex_det(s))
        .sum();
    let vol = normalized_volume(&t.polytope)?;
    if det_sum != vol {
        return Err(Error::inconsistency(
            "triangulation covering",
            format!("determinant sum {det_sum} != normalized volume {vol}"),
        ));
    }
    for s in &t.maximal_simplices {
        let idx = s.indices();
        // lifted hyperplane through the cell's vertices
        let base = lift(&t.points[idx[0]], &t.heights[idx[0]]);
        let diffs: Vec<IntVector> = idx[1..]
            .iter()
            .map(|&i| vec_sub(&lift(&t.points[i], &t.heights[i]), &base))
            .collect();
        let kernel = integer_kernel(&IntMatrix::from_rows(t.dim + 1, &diffs));
        if kernel.len() != 1 {
            return Err(Error::inconsistency(
                "triangulation cell",
                format!("cell {idx:?} is not affinely independent"),
            ));
        }
        let mut normal = kernel.into_iter().next().unwrap();
        if normal[t.dim].is_negative() {
            for x in &mut normal {
                *x = -x.clone();
            }
        }
        let offset = pairing(&normal, &base);
        for (i, p) in t.points.iter().enumerate() {
            let val = pairing(&normal, &lift(p, &t.heights[i]));
            match val.cmp(&offset) {
                std::cmp::Ordering::Less => {
                    return Err(Error::inconsistency(
                        "triangulation lift",
                        format!("point {i} lies below the lift of cell {idx:?}"),
                    ));
                }
                std::cmp::Ordering::Equal => {
                    // on the lift: must lie inside the cell geometrically
                    if !simplex_contains_point(t, s, p) {
                        return Err(Error::inconsistency(
                            "triangulation lift",
                            format!("point {i} on the lift of cell {idx:?} but outside it"),
                        ));
                    }
                }
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    Ok(())
}

fn lift(p: &[Int], h: &Int) -> IntVector {
    let mut v = p.to_vec();
    v.push(h.clone());
    v
}

/// Exact barycentric membership of a point in one maximal simplex.
fn simplex_contains_point(t: &LatticeTriangulation, s: &Face, x: &[Int]) -> bool {
    barycentric_in_simplex(t, s, x).is_some()
}

/// Barycentric coordinates of `x` in simplex `s`, if `x` lies inside.
pub(crate) fn barycentric_in_simplex(
    t: &LatticeTriangulation,
    s: &Face,
    x: &[Int],
) -> Option<Vec<Rat>> {
    let cols: Vec<IntVector> = s
        .indices()
        .iter()
        .map(|&i| lift(&t.points[i], &Int::one()))
        .collect();
    let mut rhs: Vec<Rat> = x.iter().cloned().map(Rat::from_integer).collect();
    rhs.push(Rat::one());
    let sol = solve_unique(&RatMatrix::from_int_columns(&cols), &rhs)?;
    sol.iter().all(|l| !l.is_negative()).then_some(sol)
}

/// h-polynomial of a face list: `Σ_F t^{dim F + 1} (1 - t)^{d_ref - dim F}`.
///
/// `d_ref` must be at least the maximal face dimension; for the link of a
/// face `F` inside a `d`-complex the right reference is `d - dim F - 1`,
/// which is `-1` for the link `{∅}` of a maximal face.
pub fn h_polynomial(faces: &[Face], d_ref: isize) -> IntPoly {
    let mut acc = IntPoly::zero();
    for f in faces {
        assert!(
            d_ref >= f.dim(),
            "reference dimension {d_ref} below face dimension {}",
            f.dim()
        );
        let shift = (f.dim() + 1) as usize;
        let pow = (d_ref - f.dim()) as usize;
        acc = acc.add(&IntPoly::one_minus_t_pow(pow).shift(shift));
    }
    acc
}

/// h-polynomial of a whole triangulation at its own dimension.
pub fn h_of_triangulation(t: &LatticeTriangulation) -> IntPoly {
    h_polynomial(&t.all_faces(), t.dim() as isize)
}

/// A compatible pair: T triangulates P and restricts on Q to TQ, with the
/// correspondence and provenance needed by downstream checks.
#[derive(Clone, Debug)]
pub struct TriangulatedPair {
    pub t: LatticeTriangulation,
    /// Triangulation of Q in Q's own reduced coordinates.
    pub tq: LatticeTriangulation,
    /// Chart from TQ's coordinates into T's coordinates.
    pub q_embedding: crate::exact::AffineEmbedding,
    /// TQ point index -> T point index.
    pub q_point_to_p: Vec<usize>,
    /// T point index -> lies in Q.
    pub p_point_in_q: Vec<bool>,
    pub seed: u64,
    pub attempts: usize,
}

impl TriangulatedPair {
    /// Maps a TQ face to the corresponding T face.
    pub fn face_to_p(&self, f: &Face) -> Face {
        Face::new(f.indices().iter().map(|&i| self.q_point_to_p[i]).collect())
    }

    /// True when every vertex of the T-face lies in Q.
    pub fn face_in_q(&self, f: &Face) -> bool {
        f.indices().iter().all(|&i| self.p_point_in_q[i])
    }
}

/// Constructs a regular triangulation of P restricting to one of Q.
///
/// Heights on Q's lattice points are drawn small and generic; points of
/// P outside Q get a large additive penalty. The result is only returned
/// after an explicit restriction check; on failure the penalty is multiplied
/// by 16 and the heights redrawn, up to 8 attempts.
pub fn triangulation_of_pair(
    p: &LatticePolytope,
    q: &LatticePolytope,
    seed: u64,
) -> Result<TriangulatedPair> {
    if !crate::polytope::contains(p, q) {
        return Err(Error::NotContained(format!(
            "{:?} does not contain {:?}",
            p.name(),
            q.name()
        )));
    }
    let points = lattice_points(p, 1)?;
    let q_membership = Membership::new(q);
    let p_point_in_q: Vec<bool> = points.iter().map(|x| q_membership.contains(x)).collect();
    if !p_point_in_q.iter().any(|&b| b) {
        return Err(Error::NotContained(
            "Q contains no lattice point of P".into(),
        ));
    }
    let (q_reduced, q_embedding) = q.normalize();
    let q_points = lattice_points(&q_reduced, 1)?;
    let point_index: HashMap<&IntVector, usize> =
        points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let q_point_to_p: Vec<usize> = q_points
        .iter()
        .map(|x| {
            let ambient = q_embedding.to_ambient(x);
            *point_index
                .get(&ambient)
                .expect("lattice point of Q must be a lattice point of P")
        })
        .collect();

    let mut penalty = Int::from(1u64 << 20);
    let mut failures: Vec<String> = Vec::new();
    for attempt in 0..8usize {
        let pen: Vec<Int> = p_point_in_q
            .iter()
            .map(|&in_q| if in_q { Int::zero() } else { penalty.clone() })
            .collect();
        let heights = generic_heights(
            points.len(),
            mix_seed(seed, attempt as u64),
            Some(&pen),
        );
        match try_pair_with_heights(p, &q_reduced, &q_point_to_p, &p_point_in_q, heights) {
            Ok((t, tq)) => {
                return Ok(TriangulatedPair {
                    t,
                    tq,
                    q_embedding,
                    q_point_to_p,
                    p_point_in_q,
                    seed,
                    attempts: attempt + 1,
                });
            }
            Err(e) => failures.push(format!("attempt {attempt}: {e}")),
        }
        penalty *= Int::from(16);
    }
    Err(Error::PairVerification {
        attempts: 8,
        seed,
        reason: failures.join("; "),
    })
}

fn try_pair_with_heights(
    p: &LatticePolytope,
    q_reduced: &LatticePolytope,
    q_point_to_p: &[usize],
    p_point_in_q: &[bool],
    heights: Vec<Int>,
) -> Result<(LatticeTriangulation, LatticeTriangulation)> {
    let t = regular_subdivision(p, heights)?;
    let dim_q = q_reduced.ambient_rank();

    // cells of T over Q: maximal faces whose vertices all lie in Q
    let in_q_faces: Vec<Face> = t
        .faces
        .iter()
        .filter(|f| !f.is_empty() && f.indices().iter().all(|&i| p_point_in_q[i]))
        .cloned()
        .collect();
    let mut restricted_cells: Vec<Face> = in_q_faces
        .iter()
        .filter(|f| !in_q_faces.iter().any(|g| g != *f && g.contains(f)))
        .cloned()
        .collect();
    restricted_cells.sort();
    for c in &restricted_cells {
        if c.indices().len() != dim_q + 1 {
            return Err(Error::inconsistency(
                "pair restriction",
                format!(
                    "restricted cell {:?} has {} vertices in a {}-dimensional Q",
                    c.indices(),
                    c.indices().len(),
                    dim_q
                ),
            ));
        }
    }

    // rebuild TQ from the restricted heights in Q's own coordinates
    let tq_heights: Vec<Int> = q_point_to_p.iter().map(|&i| t.heights[i].clone()).collect();
    let tq = regular_subdivision(q_reduced, tq_heights)?;

    // the two descriptions must agree cell by cell
    let mut mapped: Vec<Face> = tq
        .maximal_simplices
        .iter()
        .map(|f| Face::new(f.indices().iter().map(|&i| q_point_to_p[i]).collect()))
        .collect();
    mapped.sort();
    if mapped != restricted_cells {
        return Err(Error::inconsistency(
            "pair restriction",
            format!(
                "restriction of T to Q {restricted_cells:?} differs from TQ {mapped:?}"
            ),
        ));
    }
    Ok((t, tq))
}
