//! Lattice polytopes in vertex representation.
//!
//! Facets are found by exhaustive candidate hyperplanes: for every affinely
//! independent `d`-subset of vertices we form the spanned hyperplane and keep
//! it when all vertices lie weakly on one side. Vertex counts are desk scale
//! throughout, which keeps this exact and simple.

use crate::error::{Error, Result};
use crate::exact::{
    hermite_affine_normalize, integer_kernel, pairing, rank_exact_int, vec_sub, AffineEmbedding,
    Int, IntMatrix, IntVector,
};
use crate::par;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// A lattice polytope given by its vertex list.
///
/// Construction validates that every listed vertex is extreme; violating
/// input is rejected, not repaired. Vertex order is preserved as given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    ambient_rank: usize,
    vertices: Vec<IntVector>,
    name: Option<String>,
}

impl LatticePolytope {
    pub fn new(
        ambient_rank: usize,
        vertices: Vec<IntVector>,
        name: Option<String>,
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidPolytope("no vertices".into()));
        }
        for v in &vertices {
            if v.len() != ambient_rank {
                return Err(Error::InvalidPolytope(format!(
                    "vertex {v:?} has length {} but ambient rank is {ambient_rank}",
                    v.len()
                )));
            }
        }
        for (i, v) in vertices.iter().enumerate() {
            for w in &vertices[i + 1..] {
                if v == w {
                    return Err(Error::InvalidPolytope(format!("duplicate vertex {v:?}")));
                }
            }
        }
        let p = LatticePolytope {
            ambient_rank,
            vertices,
            name,
        };
        let (reduced, _) = hermite_affine_normalize(&p.vertices);
        let dim = reduced[0].len();
        if dim > 0 {
            let facets = facet_inequalities(&reduced, dim);
            for (i, v) in reduced.iter().enumerate() {
                if !is_vertex_of_hull(v, &facets, dim) {
                    return Err(Error::InvalidPolytope(format!(
                        "vertex {:?} is not extreme",
                        p.vertices[i]
                    )));
                }
            }
        }
        Ok(p)
    }

    /// Convex hull of an arbitrary point set: deduplicates, drops non-extreme
    /// points, and returns the polytope on the remaining vertices in
    /// lexicographic order.
    pub fn from_hull_of(
        ambient_rank: usize,
        points: &[IntVector],
        name: Option<String>,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidPolytope("no points".into()));
        }
        let mut sorted: Vec<IntVector> = points.to_vec();
        sorted.sort();
        sorted.dedup();
        let (reduced, _) = hermite_affine_normalize(&sorted);
        let dim = reduced[0].len();
        let vertices: Vec<IntVector> = if dim == 0 {
            vec![sorted[0].clone()]
        } else {
            let facets = facet_inequalities(&reduced, dim);
            sorted
                .iter()
                .zip(&reduced)
                .filter(|(_, r)| is_vertex_of_hull(r, &facets, dim))
                .map(|(p, _)| p.clone())
                .collect()
        };
        LatticePolytope::new(ambient_rank, vertices, name)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Affine dimension of the vertex set.
    pub fn dim(&self) -> usize {
        let diffs: Vec<IntVector> = self.vertices[1..]
            .iter()
            .map(|v| vec_sub(v, &self.vertices[0]))
            .collect();
        rank_exact_int(&IntMatrix::from_rows(self.ambient_rank, &diffs))
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_rank
    }

    /// Re-coordinatizes onto the lattice of the affine span, so the result
    /// is full-dimensional. Lattice point counts of all dilates are
    /// preserved; the embedding maps reduced coordinates back to ambient.
    pub fn normalize(&self) -> (LatticePolytope, AffineEmbedding) {
        let (reduced, embedding) = hermite_affine_normalize(&self.vertices);
        let p = LatticePolytope {
            ambient_rank: embedding.reduced_rank(),
            vertices: reduced,
            name: self.name.clone(),
        };
        (p, embedding)
    }
}

/// Inner-normal inequality description `⟨normal, x⟩ >= offset`, valid for a
/// full-dimensional polytope. Normals are primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetSystem {
    dim: usize,
    inequalities: Vec<(IntVector, Int)>,
}

impl FacetSystem {
    pub fn inequalities(&self) -> &[(IntVector, Int)] {
        &self.inequalities
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.contains_dilated(x, &Int::one())
    }

    /// Membership in the `m`-th dilate without materializing it.
    pub fn contains_dilated(&self, x: &[Int], m: &Int) -> bool {
        self.inequalities
            .iter()
            .all(|(n, c)| pairing(n, x) >= c * m)
    }
}

/// Irredundant facet system of a full-dimensional polytope.
pub fn facet_system(p: &LatticePolytope) -> Result<FacetSystem> {
    let dim = p.dim();
    if dim != p.ambient_rank {
        return Err(Error::NotFullDimensional {
            dim,
            ambient: p.ambient_rank,
        });
    }
    Ok(FacetSystem {
        dim,
        inequalities: facet_inequalities(&p.vertices, dim),
    })
}

/// Supporting hyperplanes of `conv(points)` spanned by point subsets, as
/// inner-normal inequalities. `points` must affinely span `Z^dim`.
pub(crate) fn facet_inequalities(points: &[IntVector], dim: usize) -> Vec<(IntVector, Int)> {
    if dim == 0 {
        return Vec::new();
    }
    let subsets = combinations(points.len(), dim);
    let found = par::map_slice(&subsets, |subset| candidate_facet(points, subset));
    let set: BTreeSet<(IntVector, Int)> = found.into_iter().flatten().collect();
    set.into_iter().collect()
}

fn candidate_facet(points: &[IntVector], subset: &[usize]) -> Option<(IntVector, Int)> {
    let base = &points[subset[0]];
    let diffs: Vec<IntVector> = subset[1..]
        .iter()
        .map(|&i| vec_sub(&points[i], base))
        .collect();
    let kernel = integer_kernel(&IntMatrix::from_rows(base.len(), &diffs));
    if kernel.len() != 1 {
        return None; // affinely dependent subset
    }
    let normal = kernel.into_iter().next().unwrap();
    let offset = pairing(&normal, base);
    let mut above = false;
    let mut below = false;
    for p in points {
        match pairing(&normal, p).cmp(&offset) {
            std::cmp::Ordering::Greater => above = true,
            std::cmp::Ordering::Less => below = true,
            std::cmp::Ordering::Equal => {}
        }
        if above && below {
            return None;
        }
    }
    if below {
        Some((normal.iter().map(|x| -x).collect(), -offset))
    } else if above {
        Some((normal, offset))
    } else {
        None // all points on the hyperplane: set not full-dimensional
    }
}

fn is_vertex_of_hull(x: &[Int], facets: &[(IntVector, Int)], dim: usize) -> bool {
    let tight: Vec<IntVector> = facets
        .iter()
        .filter(|(n, c)| &pairing(n, x) == c)
        .map(|(n, _)| n.clone())
        .collect();
    if tight.len() < dim {
        return false;
    }
    rank_exact_int(&IntMatrix::from_rows(dim, &tight)) == dim
}

/// All `k`-element index subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// Exact lattice points of the `m`-th dilate, in lexicographic order.
///
/// Bounding-box scan filtered through the facet system of `mP`; the scan is
/// parallelized over first-coordinate slabs, which keeps the output order
/// canonical.
pub fn lattice_points(p: &LatticePolytope, m: usize) -> Result<Vec<IntVector>> {
    let facets = facet_system(p)?;
    let m_int = Int::from(m as i64);
    if m == 0 || p.ambient_rank == 0 {
        return Ok(vec![vec![Int::zero(); p.ambient_rank]]);
    }
    let ranges: Vec<(Int, Int)> = (0..p.ambient_rank)
        .map(|c| {
            let lo = p.vertices.iter().map(|v| &v[c]).min().unwrap() * &m_int;
            let hi = p.vertices.iter().map(|v| &v[c]).max().unwrap() * &m_int;
            (lo, hi)
        })
        .collect();
    let (first_lo, first_hi) = ranges[0].clone();
    let mut slabs = Vec::new();
    let mut x = first_lo;
    while x <= first_hi {
        slabs.push(x.clone());
        x += 1;
    }
    let per_slab = par::map_slice(&slabs, |x0| {
        let mut out = Vec::new();
        let mut prefix = vec![x0.clone()];
        scan_box(&mut prefix, &ranges[1..], &facets, &m_int, &mut out);
        out
    });
    Ok(per_slab.into_iter().flatten().collect())
}

fn scan_box(
    prefix: &mut IntVector,
    ranges: &[(Int, Int)],
    facets: &FacetSystem,
    m: &Int,
    out: &mut Vec<IntVector>,
) {
    match ranges.first() {
        None => {
            if facets.contains_dilated(prefix, m) {
                out.push(prefix.clone());
            }
        }
        Some((lo, hi)) => {
            let mut x = lo.clone();
            while &x <= hi {
                prefix.push(x.clone());
                scan_box(prefix, &ranges[1..], facets, m, out);
                prefix.pop();
                x += 1;
            }
        }
    }
}

/// Precomputed membership tester for one polytope, usable on points of the
/// same ambient space regardless of the polytope's dimension there.
pub struct Membership {
    embedding: AffineEmbedding,
    facets: Vec<(IntVector, Int)>,
}

impl Membership {
    pub fn new(p: &LatticePolytope) -> Self {
        let (reduced, embedding) = p.normalize();
        let facets = facet_inequalities(reduced.vertices(), reduced.ambient_rank());
        Membership { embedding, facets }
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        match self.embedding.to_reduced(x) {
            Some(r) => self.facets.iter().all(|(n, c)| &pairing(n, &r) >= c),
            None => false,
        }
    }
}

/// True iff every vertex of `q` lies in `p`. Vertices outside `p`'s affine
/// span report false rather than erroring.
pub fn contains(p: &LatticePolytope, q: &LatticePolytope) -> bool {
    assert_eq!(
        p.ambient_rank(),
        q.ambient_rank(),
        "containment needs a common ambient space"
    );
    let tester = Membership::new(p);
    q.vertices().iter().all(|v| tester.contains(v))
}

pub fn contains_point(p: &LatticePolytope, x: &[Int]) -> bool {
    Membership::new(p).contains(x)
}

/// `d!` times the Euclidean volume, via pyramid decomposition over facets.
pub fn normalized_volume(p: &LatticePolytope) -> Result<Int> {
    let dim = p.dim();
    if dim != p.ambient_rank {
        return Err(Error::NotFullDimensional {
            dim,
            ambient: p.ambient_rank,
        });
    }
    Ok(normalized_volume_points(&p.vertices, dim))
}

fn normalized_volume_points(verts: &[IntVector], dim: usize) -> Int {
    if dim == 0 {
        return Int::one();
    }
    if dim == 1 {
        let lo = verts.iter().map(|v| &v[0]).min().unwrap();
        let hi = verts.iter().map(|v| &v[0]).max().unwrap();
        return hi - lo;
    }
    let facets = facet_inequalities(verts, dim);
    let apex = &verts[0];
    let mut total = Int::zero();
    for (normal, offset) in &facets {
        let height = pairing(normal, apex) - offset;
        if height.is_positive() {
            let on_facet: Vec<IntVector> = verts
                .iter()
                .filter(|v| &pairing(normal, v) == offset)
                .cloned()
                .collect();
            let (reduced, _) = hermite_affine_normalize(&on_facet);
            total += height * normalized_volume_points(&reduced, dim - 1);
        }
    }
    total
}
