//! End-to-end monotonicity verification on nested polytope pairs.
//!
//! `verify_pair` runs the full pipeline: normalize both polytopes, build a
//! compatible triangulation pair, compute δ three ways on each side in its
//! own lattice, compare coefficientwise, and run the linkwise h-vector,
//! restriction homomorphism, and degreewise surjectivity checks. A report
//! carries every verdict plus the seed and heights needed to reproduce it.

use crate::boxdecomp::delta_by_boxes;
use crate::ehrhart::{deep_count_check, delta_by_counting, poly_leq};
use crate::error::{Error, Result};
use crate::exact::Int;
use crate::orbring::{
    check_ring_hom, induced_surjectivity, orbifold_delta, orbifold_vanishing_check,
};
use crate::polytope::{contains, lattice_points, LatticePolytope};
use crate::triangulation::{
    h_polynomial, mix_seed, triangulation_of_pair, TriangulatedPair,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

/// Knobs for `verify_pair`.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Monomial pairs sampled by the homomorphism check.
    pub hom_samples: usize,
    /// Adds the `m = d+1, d+2` count checks and the quotient vanishing
    /// checks in degrees `d+1, d+2`.
    pub deep: bool,
}

impl VerifyConfig {
    pub fn new(seed: u64) -> Self {
        VerifyConfig {
            seed,
            hom_samples: 256,
            deep: false,
        }
    }

    pub fn with_hom_samples(mut self, n: usize) -> Self {
        self.hom_samples = n;
        self
    }

    pub fn with_deep(mut self, deep: bool) -> Self {
        self.deep = deep;
        self
    }
}

/// Machine-readable verdicts for one nested pair.
#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub p_name: String,
    pub q_name: String,
    pub dim_p: usize,
    pub dim_q: usize,
    pub seed: u64,
    pub attempts: usize,
    pub delta_p: Vec<i64>,
    pub delta_q: Vec<i64>,
    pub monotone: bool,
    pub triple_agreement_p: bool,
    pub triple_agreement_q: bool,
    pub linkwise: bool,
    pub hom_check: bool,
    pub hom_samples: usize,
    /// One verdict per degree `k = 0..=dim_q`.
    pub surjectivity: Vec<bool>,
    /// Lifting heights of the P-side triangulation: reproduction data.
    pub heights: Vec<i64>,
    /// Wall time; excluded from serialization so reports stay byte-stable.
    #[serde(skip)]
    pub elapsed_ms: u128,
    /// Human-readable certificate for the first failing verdict, if any.
    pub failure: Option<String>,
}

impl PairReport {
    pub fn pass(&self) -> bool {
        self.monotone
            && self.triple_agreement_p
            && self.triple_agreement_q
            && self.linkwise
            && self.hom_check
            && self.surjectivity.iter().all(|&b| b)
    }
}

/// Outcome of the per-face link h-vector comparison.
#[derive(Clone, Debug)]
pub struct LinkwiseOutcome {
    pub passed: bool,
    pub counterexample: Option<String>,
}

/// For every nonempty face of TQ, the h-vector of its link inside TQ must
/// be coefficientwise at most the h-vector of its link inside T, each taken
/// at its own reference dimension and zero-padded for comparison.
pub fn linkwise_monotonicity(pair: &TriangulatedPair) -> LinkwiseOutcome {
    let dim_p = pair.t.dim() as isize;
    let dim_q = pair.tq.dim() as isize;
    for fq in pair.tq.all_faces() {
        if fq.is_empty() {
            continue;
        }
        let fp = pair.face_to_p(&fq);
        let link_q = pair
            .tq
            .link(&fq)
            .expect("enumerated faces are faces of TQ");
        let link_p = pair.t.link(&fp).expect("TQ faces map to faces of T");
        let h_q = h_polynomial(&link_q, dim_q - fq.dim() - 1);
        let h_p = h_polynomial(&link_p, dim_p - fq.dim() - 1);
        if !h_q.leq(&h_p) {
            return LinkwiseOutcome {
                passed: false,
                counterexample: Some(format!(
                    "face {:?}: link h in TQ [{h_q}] exceeds link h in T [{h_p}]",
                    fq.indices()
                )),
            };
        }
    }
    LinkwiseOutcome {
        passed: true,
        counterexample: None,
    }
}

/// Full verification pipeline for `Q ⊆ P`.
pub fn verify_pair(
    p: &LatticePolytope,
    q: &LatticePolytope,
    cfg: &VerifyConfig,
) -> Result<PairReport> {
    let start = Instant::now();
    if !contains(p, q) {
        return Err(Error::NotContained(format!(
            "{} is not contained in {}",
            q.name().unwrap_or("Q"),
            p.name().unwrap_or("P")
        )));
    }
    // work in P's reduced lattice; Q's vertices live on it
    let (p_red, p_embedding) = p.normalize();
    let q_in_p = LatticePolytope::new(
        p_red.ambient_rank(),
        q.vertices()
            .iter()
            .map(|v| {
                p_embedding
                    .to_reduced(v)
                    .expect("vertices of Q lie on P's affine lattice")
            })
            .collect(),
        q.name().map(str::to_owned),
    )?;
    let pair = triangulation_of_pair(&p_red, &q_in_p, cfg.seed)?;

    let delta_p_count = delta_by_counting(&p_red)?;
    let delta_p_boxes = delta_by_boxes(&pair.t)?;
    let delta_p_orb = orbifold_delta(&pair.t)?;
    let triple_agreement_p = delta_p_boxes == delta_p_count && delta_p_orb == delta_p_count;

    // Q in its own reduced lattice
    let q_red = pair.tq.polytope().clone();
    let delta_q_count = delta_by_counting(&q_red)?;
    let delta_q_boxes = delta_by_boxes(&pair.tq)?;
    let delta_q_orb = orbifold_delta(&pair.tq)?;
    let triple_agreement_q = delta_q_boxes == delta_q_count && delta_q_orb == delta_q_count;

    let monotone = poly_leq(&delta_q_count, &delta_p_count);
    let linkwise = linkwise_monotonicity(&pair);
    let hom = check_ring_hom(&pair, cfg.hom_samples, mix_seed(cfg.seed, 0x4A0B))?;
    let dim_q = pair.tq.dim();
    let surjectivity = (0..=dim_q)
        .map(|k| induced_surjectivity(&pair, k))
        .collect::<Result<Vec<bool>>>()?;

    if cfg.deep {
        deep_count_check(&p_red)?;
        deep_count_check(&q_red)?;
        orbifold_vanishing_check(&pair.t)?;
        orbifold_vanishing_check(&pair.tq)?;
    }

    let mut failure = None;
    if !monotone {
        failure = Some(format!(
            "monotonicity violated: delta_Q [{delta_q_count}] > delta_P [{delta_p_count}], \
             seed {}, heights {:?}",
            cfg.seed,
            pair.t.heights()
        ));
    } else if !triple_agreement_p {
        failure = Some(format!(
            "triple agreement failed on P: count [{delta_p_count}], boxes [{delta_p_boxes}], \
             graded [{delta_p_orb}]"
        ));
    } else if !triple_agreement_q {
        failure = Some(format!(
            "triple agreement failed on Q: count [{delta_q_count}], boxes [{delta_q_boxes}], \
             graded [{delta_q_orb}]"
        ));
    } else if !linkwise.passed {
        failure = linkwise.counterexample.clone();
    } else if !hom.passed() {
        failure = Some(format!("restriction map violation: {:?}", hom.violation));
    } else if let Some(k) = surjectivity.iter().position(|&b| !b) {
        failure = Some(format!("induced map not surjective in degree {k}"));
    }

    Ok(PairReport {
        p_name: p.name().unwrap_or("P").to_owned(),
        q_name: q.name().unwrap_or("Q").to_owned(),
        dim_p: pair.t.dim(),
        dim_q,
        seed: cfg.seed,
        attempts: pair.attempts,
        delta_p: delta_p_count.to_i64_vec(),
        delta_q: delta_q_count.to_i64_vec(),
        monotone,
        triple_agreement_p,
        triple_agreement_q,
        linkwise: linkwise.passed,
        hom_check: hom.passed(),
        hom_samples: hom.samples,
        surjectivity,
        heights: pair
            .t
            .heights()
            .iter()
            .map(|h| i64::try_from(h).expect("height fits i64"))
            .collect(),
        elapsed_ms: start.elapsed().as_millis(),
        failure,
    })
}

/// Seeded random nested pair: P is the hull of a lattice point sample in
/// `[0, max_coord]^dim` (redrawn until full-dimensional), Q the hull of a
/// random subset of P's lattice points, possibly lower-dimensional.
pub fn random_pair(
    dim: usize,
    max_coord: usize,
    seed: u64,
) -> Result<(LatticePolytope, LatticePolytope)> {
    assert!(dim >= 1, "dimension must be positive");
    assert!(max_coord >= 1, "coordinate bound must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const MAX_ATTEMPTS: usize = 64;
    for attempt in 0..MAX_ATTEMPTS {
        let n_points = dim + 2 + rng.gen_range(0..=dim + 2);
        let sample: Vec<Vec<Int>> = (0..n_points)
            .map(|_| {
                (0..dim)
                    .map(|_| Int::from(rng.gen_range(0..=max_coord as i64)))
                    .collect()
            })
            .collect();
        let p = match LatticePolytope::from_hull_of(dim, &sample, None) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if p.dim() != dim {
            continue;
        }
        let p = p.with_name(format!("P[dim{dim} seed{seed} try{attempt}]"));
        let points = lattice_points(&p, 1)?;
        let k = rng.gen_range(1..=points.len());
        let mut indices: Vec<usize> = (0..points.len()).collect();
        indices.shuffle(&mut rng);
        let subset: Vec<Vec<Int>> = indices[..k].iter().map(|&i| points[i].clone()).collect();
        let q = LatticePolytope::from_hull_of(dim, &subset, None)?
            .with_name(format!("Q[dim{dim} seed{seed} try{attempt}]"));
        debug_assert!(contains(&p, &q));
        return Ok((p, q));
    }
    Err(Error::DegenerateDraw {
        attempts: MAX_ATTEMPTS,
    })
}
