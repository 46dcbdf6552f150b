//! The deformed group ring of a triangulation's cone fan.
//!
//! Monomials `y^v` range over the lattice points of the cone over `P x {1}`,
//! graded by the last coordinate. Two monomials multiply to `y^{v+w}` when
//! some cone of the fan (equivalently, some face of the triangulation)
//! contains both carriers, and to zero otherwise. Modding out the degree-one
//! relations `θ_u = Σ_i ⟨(v_i,1), u⟩ y^{(v_i,1)}` for `u` in a dual basis
//! leaves a graded quotient whose Hilbert function recovers δ — and the
//! monomial restriction map `j` onto a nested polytope's subfan drops
//! degreewise to a surjection of quotients, which is what the pair checks
//! verify rank by rank.

use crate::error::{Error, Result};
use crate::exact::{
    pairing, solve_unique, vec_add, vec_is_zero, IntEchelon, Int, IntVector, Rat, RatMatrix,
};
use crate::par;
use crate::poly::IntPoly;
use crate::polytope::lattice_points;
use crate::triangulation::{Face, LatticeTriangulation, TriangulatedPair};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// A monomial of the deformed group ring: a lattice point of the cone,
/// its degree (last coordinate), and the minimal face whose cone holds it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConePoint {
    pub v: IntVector,
    pub degree: usize,
    pub carrier: Face,
}

/// Builds the cone point for `v`, locating its carrier in the fan.
///
/// Panics if `v` lies outside the cone over the polytope: monomials are only
/// ever constructed from dilate lattice points.
pub fn cone_point(t: &LatticeTriangulation, v: IntVector) -> ConePoint {
    assert_eq!(v.len(), t.dim() + 1, "cone point has lifted length");
    if vec_is_zero(&v) {
        return ConePoint {
            v,
            degree: 0,
            carrier: Face::empty(),
        };
    }
    let degree = usize::try_from(&v[t.dim()]).expect("cone points have nonnegative degree");
    assert!(degree > 0, "nonzero cone point needs positive height");
    let carrier = locate_carrier(t, &v).expect("cone point must lie over the polytope");
    ConePoint { v, degree, carrier }
}

/// Support of the coefficients of `v` in any maximal cone containing it.
fn locate_carrier(t: &LatticeTriangulation, v: &[Int]) -> Option<Face> {
    for s in t.maximal_simplices() {
        if let Some(lambda) = cone_coords(t, s, v) {
            let support: Vec<usize> = s
                .indices()
                .iter()
                .zip(&lambda)
                .filter(|(_, l)| l.is_positive())
                .map(|(&i, _)| i)
                .collect();
            return Some(Face::new(support));
        }
    }
    None
}

/// Nonnegative coordinates of `v` over the lifted vertices of `s`, if any.
fn cone_coords(t: &LatticeTriangulation, s: &Face, v: &[Int]) -> Option<Vec<Rat>> {
    let cols: Vec<IntVector> = s
        .indices()
        .iter()
        .map(|&i| {
            let mut c = t.point(i).to_vec();
            c.push(Int::one());
            c
        })
        .collect();
    let rhs: Vec<Rat> = v.iter().cloned().map(Rat::from_integer).collect();
    let sol = solve_unique(&RatMatrix::from_int_columns(&cols), &rhs)?;
    sol.iter().all(|l| !l.is_negative()).then_some(sol)
}

/// All degree-`k` monomials, in lexicographic order of their points.
pub fn monomials(t: &LatticeTriangulation, k: usize) -> Result<Vec<ConePoint>> {
    let pts = lattice_points(t.polytope(), k)?;
    Ok(par::map_slice(&pts, |x| {
        let mut v = x.clone();
        v.push(Int::from(k as i64));
        cone_point(t, v)
    }))
}

/// Deformed product: `y^{a+b}` when some face holds both carriers, else zero.
pub fn deformed_multiply(
    t: &LatticeTriangulation,
    a: &ConePoint,
    b: &ConePoint,
) -> Option<ConePoint> {
    if vec_is_zero(&a.v) {
        return Some(b.clone());
    }
    if vec_is_zero(&b.v) {
        return Some(a.clone());
    }
    let union = a.carrier.union(&b.carrier);
    if !t.is_face(&union) {
        return None;
    }
    Some(cone_point(t, vec_add(&a.v, &b.v)))
}

/// One degree-one relation `θ_u`, expanded over the used vertex indices.
#[derive(Clone, Debug)]
pub struct RelationGenerator {
    pub u: IntVector,
    /// `(vertex index, ⟨(v_i,1), u⟩)`, zero coefficients kept out.
    pub terms: Vec<(usize, Int)>,
}

/// The `d+1` relation generators for the standard dual basis of `Z^{d+1}`.
pub fn relation_generators(t: &LatticeTriangulation) -> Vec<RelationGenerator> {
    let d = t.dim();
    let dual: Vec<IntVector> = (0..=d)
        .map(|j| {
            let mut u = vec![Int::zero(); d + 1];
            u[j] = Int::one();
            u
        })
        .collect();
    relation_generators_for_basis(t, &dual)
}

/// Relation generators for an arbitrary dual basis of `Z^{d+1}`.
pub fn relation_generators_for_basis(
    t: &LatticeTriangulation,
    dual_basis: &[IntVector],
) -> Vec<RelationGenerator> {
    let used = t.used_vertices();
    dual_basis
        .iter()
        .map(|u| {
            let terms: Vec<(usize, Int)> = used
                .iter()
                .map(|&i| {
                    let mut lifted = t.point(i).to_vec();
                    lifted.push(Int::one());
                    (i, pairing(&lifted, u))
                })
                .filter(|(_, c)| !c.is_zero())
                .collect();
            RelationGenerator {
                u: u.clone(),
                terms,
            }
        })
        .collect()
}

/// One degree of the quotient presentation: the monomial basis and the
/// degree-`k` slice of the relation ideal, spanned by `y^w θ_u` over all
/// monomials `w` of degree `k-1`.
pub struct GradedSlice {
    pub degree: usize,
    pub basis: Vec<ConePoint>,
    pub rows: Vec<Vec<(usize, Int)>>,
    pub rank: usize,
}

impl GradedSlice {
    pub fn quotient_dim(&self) -> usize {
        self.basis.len() - self.rank
    }
}

pub fn graded_slice(t: &LatticeTriangulation, k: usize) -> Result<GradedSlice> {
    let d = t.dim();
    let dual: Vec<IntVector> = (0..=d)
        .map(|j| {
            let mut u = vec![Int::zero(); d + 1];
            u[j] = Int::one();
            u
        })
        .collect();
    graded_slice_for_basis(t, k, &dual)
}

pub fn graded_slice_for_basis(
    t: &LatticeTriangulation,
    k: usize,
    dual_basis: &[IntVector],
) -> Result<GradedSlice> {
    let basis = monomials(t, k)?;
    let index: HashMap<&IntVector, usize> =
        basis.iter().enumerate().map(|(i, m)| (&m.v, i)).collect();
    let generators = relation_generators_for_basis(t, dual_basis);
    let mut rows = Vec::new();
    if k > 0 {
        let lower = monomials(t, k - 1)?;
        let row_blocks = par::map_slice(&lower, |w| {
            let mut block = Vec::with_capacity(generators.len());
            for gen in &generators {
                let mut row: Vec<(usize, Int)> = Vec::new();
                for (i, coeff) in &gen.terms {
                    let vertex_face = Face::new(vec![*i]);
                    if !t.is_face(&w.carrier.union(&vertex_face)) {
                        continue; // the deformed product vanishes
                    }
                    let mut lifted = t.point(*i).to_vec();
                    lifted.push(Int::one());
                    let target = vec_add(&w.v, &lifted);
                    let col = *index
                        .get(&target)
                        .expect("product monomial stays inside the dilate");
                    row.push((col, coeff.clone()));
                }
                if !row.is_empty() {
                    row.sort_by_key(|(c, _)| *c);
                    block.push(row);
                }
            }
            block
        });
        rows = row_blocks.into_iter().flatten().collect();
    }
    let mut echelon = IntEchelon::new();
    for row in &rows {
        echelon.insert(row.clone());
    }
    let rank = echelon.rank();
    Ok(GradedSlice {
        degree: k,
        basis,
        rows,
        rank,
    })
}

/// Dimension of the degree-`k` piece of the graded quotient.
pub fn graded_dimension(t: &LatticeTriangulation, k: usize) -> Result<Int> {
    let slice = graded_slice(t, k)?;
    if slice.rank > slice.basis.len() {
        return Err(Error::inconsistency(
            "graded_dimension",
            format!(
                "rank {} exceeds basis size {} in degree {k}",
                slice.rank,
                slice.basis.len()
            ),
        ));
    }
    Ok(Int::from(slice.quotient_dim() as i64))
}

/// δ via the graded quotient: Hilbert values in degrees `0..=d`.
pub fn orbifold_delta(t: &LatticeTriangulation) -> Result<IntPoly> {
    let d = t.dim();
    let dims = par::map_indices(d + 1, |k| graded_dimension(t, k));
    let coeffs = dims.into_iter().collect::<Result<Vec<Int>>>()?;
    Ok(IntPoly::from_coeffs(coeffs))
}

/// The quotient must vanish in degrees `d+1` and `d+2`; anything else means
/// the presentation is wrong.
pub fn orbifold_vanishing_check(t: &LatticeTriangulation) -> Result<()> {
    let d = t.dim();
    for k in (d + 1)..=(d + 2) {
        let dim = graded_dimension(t, k)?;
        if !dim.is_zero() {
            return Err(Error::inconsistency(
                "orbifold_vanishing_check",
                format!("quotient has dimension {dim} in degree {k} > d = {d}"),
            ));
        }
    }
    Ok(())
}

/// Pair-aware wrapper caching the index translation between the two fans.
pub struct PairContext<'a> {
    pair: &'a TriangulatedPair,
    p_to_q: HashMap<usize, usize>,
}

impl<'a> PairContext<'a> {
    pub fn new(pair: &'a TriangulatedPair) -> Self {
        let p_to_q = pair
            .q_point_to_p
            .iter()
            .enumerate()
            .map(|(qi, &pi)| (pi, qi))
            .collect();
        PairContext { pair, p_to_q }
    }

    pub fn pair(&self) -> &TriangulatedPair {
        self.pair
    }

    /// The monomial restriction map `j`: identity on monomials carried by a
    /// face of the subfan over Q, zero on everything else. The image is
    /// expressed in Q's own coordinates.
    pub fn restrict(&self, a: &ConePoint) -> Option<ConePoint> {
        let dim_q = self.pair.tq.dim();
        if vec_is_zero(&a.v) {
            return Some(ConePoint {
                v: vec![Int::zero(); dim_q + 1],
                degree: 0,
                carrier: Face::empty(),
            });
        }
        if !self.pair.face_in_q(&a.carrier) {
            return None;
        }
        let d = self.pair.t.dim();
        let height = Int::from(a.degree as i64);
        let mut v_q = self
            .pair
            .q_embedding
            .to_reduced_at_level(&a.v[..d], &height)
            .expect("carrier in Q puts the point on Q's cone lattice");
        v_q.push(height);
        let carrier = Face::new(
            a.carrier
                .indices()
                .iter()
                .map(|i| *self.p_to_q.get(i).expect("carrier vertex lies in Q"))
                .collect(),
        );
        Some(ConePoint {
            v: v_q,
            degree: a.degree,
            carrier,
        })
    }
}

/// Outcome of the sampled multiplicativity check for `j`.
#[derive(Clone, Debug)]
pub struct HomCheck {
    pub samples: usize,
    pub violation: Option<HomViolation>,
}

#[derive(Clone, Debug)]
pub struct HomViolation {
    pub a: IntVector,
    pub b: IntVector,
    pub lhs: Option<IntVector>,
    pub rhs: Option<IntVector>,
}

impl HomCheck {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Samples monomial pairs of degree at most 3 on the P side and compares
/// `j(a·b)` against `j(a)·j(b)` multiplied in Q's ring. The first violation,
/// if any, is returned as a certificate.
pub fn check_ring_hom(pair: &TriangulatedPair, samples: usize, seed: u64) -> Result<HomCheck> {
    let ctx = PairContext::new(pair);
    let pools: Vec<Vec<ConePoint>> = (0..=3usize)
        .map(|k| monomials(&pair.t, k))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let da = rng.gen_range(0..=3usize);
        let db = rng.gen_range(0..=3usize);
        let a = &pools[da][rng.gen_range(0..pools[da].len())];
        let b = &pools[db][rng.gen_range(0..pools[db].len())];
        let lhs = deformed_multiply(&pair.t, a, b).and_then(|p| ctx.restrict(&p));
        let rhs = match (ctx.restrict(a), ctx.restrict(b)) {
            (Some(aq), Some(bq)) => deformed_multiply(&pair.tq, &aq, &bq),
            _ => None,
        };
        let agree = match (&lhs, &rhs) {
            (None, None) => true,
            (Some(x), Some(y)) => x.v == y.v,
            _ => false,
        };
        if !agree {
            return Ok(HomCheck {
                samples,
                violation: Some(HomViolation {
                    a: a.v.clone(),
                    b: b.v.clone(),
                    lhs: lhs.map(|p| p.v),
                    rhs: rhs.map(|p| p.v),
                }),
            });
        }
    }
    Ok(HomCheck {
        samples,
        violation: None,
    })
}

/// Degreewise surjectivity of the induced map on graded quotients.
///
/// Three rank conditions over the degree-`k` monomial bases:
/// the transported P-relations land inside the Q-relation span (the induced
/// map is well defined), the Q-relation generators lie in the transported
/// span (they are images of P-side combinations), and the transported
/// monomial images together with Q's relations fill the whole degree — rank
/// equal to the Q-side quotient dimension plus its relation rank.
pub fn induced_surjectivity(pair: &TriangulatedPair, k: usize) -> Result<bool> {
    let ctx = PairContext::new(pair);
    let slice_p = graded_slice(&pair.t, k)?;
    let slice_q = graded_slice(&pair.tq, k)?;
    let q_index: HashMap<&IntVector, usize> = slice_q
        .basis
        .iter()
        .enumerate()
        .map(|(i, m)| (&m.v, i))
        .collect();
    let jmap: Vec<Option<usize>> = slice_p
        .basis
        .iter()
        .map(|m| {
            ctx.restrict(m).map(|mq| {
                *q_index
                    .get(&mq.v)
                    .expect("restricted monomial is a Q-side monomial")
            })
        })
        .collect();
    // transport P relations through j
    let mut transported: Vec<Vec<(usize, Int)>> = Vec::new();
    for row in &slice_p.rows {
        let mut image: Vec<(usize, Int)> = row
            .iter()
            .filter_map(|(col, c)| jmap[*col].map(|qc| (qc, c.clone())))
            .collect();
        image.sort_by_key(|(c, _)| *c);
        if !image.is_empty() {
            transported.push(image);
        }
    }
    let mut q_ech = IntEchelon::new();
    for row in &slice_q.rows {
        q_ech.insert(row.clone());
    }
    let rank_q = q_ech.rank();
    let mut union_ech = q_ech.clone();
    for row in &transported {
        union_ech.insert(row.clone());
    }
    let mut jp_ech = IntEchelon::new();
    for row in &transported {
        jp_ech.insert(row.clone());
    }
    let rank_union = union_ech.rank();
    let well_defined = rank_union == rank_q;
    let generators_covered = rank_union == jp_ech.rank();
    // image monomials plus Q relations must span the whole degree
    let mut full_ech = q_ech;
    for qc in jmap.iter().flatten() {
        full_ech.insert(vec![(*qc, Int::one())]);
    }
    let surjective = full_ech.rank() == slice_q.basis.len();
    Ok(well_defined && generators_covered && surjective)
}
