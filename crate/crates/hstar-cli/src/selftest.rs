//! Built-in golden and property suites behind `hstar selftest`.
//!
//! Default mode covers the golden table plus a small randomized corpus and
//! pair sweep; `--deep` scales the sweeps up to acceptance size and adds the
//! `m = d+1, d+2` count checks. Any failure prints a certificate to stderr
//! and flips the exit code to 1.

use anyhow::Result;
use hstar_core::boxdecomp::{box_points, half_open_box_census, delta_by_boxes};
use hstar_core::ehrhart::{deep_count_check, delta_by_counting, ehrhart_counts};
use hstar_core::monotone::{random_pair, verify_pair, VerifyConfig};
use hstar_core::orbring::{orbifold_delta, orbifold_vanishing_check};
use hstar_core::polytope::normalized_volume;
use hstar_core::triangulation::{h_of_triangulation, mix_seed, random_triangulation};
use hstar_core::{Int, IntPoly, LatticePolytope};
use serde::Serialize;
use std::process::ExitCode;

#[derive(Serialize)]
struct Summary {
    goldens: usize,
    corpus: usize,
    pairs: usize,
    failures: usize,
    deep: bool,
}

pub fn run(seed: u64, deep: bool, negative_control: bool) -> Result<ExitCode> {
    let mut failures: Vec<String> = Vec::new();

    let goldens = golden_table(negative_control);
    for (i, (p, expected)) in goldens.iter().enumerate() {
        check_polytope(p, Some(expected), mix_seed(seed, i as u64), deep, &mut failures);
    }

    // randomized corpus: hulls of seeded point samples
    let corpus_plan: &[(usize, usize, usize)] = if deep {
        &[(1, 4, 17), (2, 4, 18), (3, 2, 15)]
    } else {
        &[(1, 4, 5), (2, 4, 5), (3, 2, 3)]
    };
    let mut corpus = 0usize;
    for &(dim, max_coord, count) in corpus_plan {
        for i in 0..count {
            let case_seed = mix_seed(seed ^ (dim as u64) << 32, i as u64);
            match random_pair(dim, max_coord, case_seed) {
                Ok((p, _)) => {
                    check_polytope(&p, None, case_seed, deep, &mut failures);
                    corpus += 1;
                }
                Err(e) => failures.push(format!("corpus draw dim {dim} case {i}: {e}")),
            }
        }
    }

    // monotonicity sweep over nested pairs
    let pair_plan: &[(usize, usize, usize)] = if deep {
        &[(1, 4, 34), (2, 4, 33), (3, 2, 33)]
    } else {
        &[(1, 4, 4), (2, 3, 4), (3, 2, 4)]
    };
    let hom_samples = if deep { 1000 } else { 256 };
    let mut pairs = 0usize;
    for &(dim, max_coord, count) in pair_plan {
        for i in 0..count {
            let case_seed = mix_seed(seed ^ (dim as u64) << 48, i as u64);
            let outcome = random_pair(dim, max_coord, case_seed).and_then(|(p, q)| {
                let cfg = VerifyConfig::new(case_seed)
                    .with_hom_samples(hom_samples)
                    .with_deep(deep);
                verify_pair(&p, &q, &cfg)
            });
            match outcome {
                Ok(report) => {
                    if !report.pass() {
                        failures.push(format!(
                            "pair dim {dim} case {i} seed {case_seed}: {}",
                            report.failure.as_deref().unwrap_or("unknown verdict failure")
                        ));
                    }
                    pairs += 1;
                }
                Err(e) => failures.push(format!("pair dim {dim} case {i} seed {case_seed}: {e}")),
            }
        }
    }

    let summary = Summary {
        goldens: goldens.len(),
        corpus,
        pairs,
        failures: failures.len(),
        deep,
    };
    println!("{}", serde_json::to_string(&summary)?);
    if failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for f in &failures {
            eprintln!("FAIL: {f}");
        }
        Ok(ExitCode::from(1))
    }
}

/// Golden polytopes with their expected δ-polynomials. All values were
/// established against the counting oracle before being frozen here.
fn golden_table(corrupt: bool) -> Vec<(LatticePolytope, IntPoly)> {
    let mut table = Vec::new();
    for k in 1..=4i64 {
        table.push((
            poly(1, &[&[0], &[k]], &format!("segment[0,{k}]")),
            IntPoly::from_i64(&[1, k - 1]),
        ));
    }
    table.push((
        poly(
            2,
            &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]],
            "unit square",
        ),
        IntPoly::from_i64(&[1, 1]),
    ));
    table.push((
        poly(
            3,
            &[
                &[0, 0, 0],
                &[1, 0, 0],
                &[0, 1, 0],
                &[1, 1, 0],
                &[0, 0, 1],
                &[1, 0, 1],
                &[0, 1, 1],
                &[1, 1, 1],
            ],
            "unit cube",
        ),
        IntPoly::from_i64(&[1, 4, 1]),
    ));
    table.push((
        poly(2, &[&[0, 0], &[2, 0], &[0, 2]], "2*simplex2"),
        IntPoly::from_i64(&[1, 3]),
    ));
    for h in 2..=5i64 {
        table.push((
            poly(
                3,
                &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, h]],
                &format!("reeve h={h}"),
            ),
            IntPoly::from_i64(&[1, 0, h - 1]),
        ));
    }
    table.push((poly(1, &[&[0], &[1]], "simplex d=1"), IntPoly::one()));
    table.push((
        poly(2, &[&[0, 0], &[1, 0], &[0, 1]], "simplex d=2"),
        IntPoly::one(),
    ));
    table.push((
        poly(
            3,
            &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            "simplex d=3",
        ),
        IntPoly::one(),
    ));
    if corrupt {
        // negative control: break one expectation on purpose
        let (_, delta) = &mut table[0];
        let mut coeffs = delta.coeffs().to_vec();
        coeffs[0] += Int::from(1);
        *delta = IntPoly::from_coeffs(coeffs);
    }
    table
}

fn poly(rank: usize, verts: &[&[i64]], name: &str) -> LatticePolytope {
    let vertices = verts
        .iter()
        .map(|v| v.iter().copied().map(Int::from).collect())
        .collect();
    LatticePolytope::new(rank, vertices, Some(name.to_owned())).expect("golden polytope is valid")
}

/// Triple agreement under three triangulation seeds plus the structural
/// identities, pushing any failure into `failures` as a certificate.
fn check_polytope(
    p: &LatticePolytope,
    expected: Option<&IntPoly>,
    seed: u64,
    deep: bool,
    failures: &mut Vec<String>,
) {
    let name = p.name().unwrap_or("unnamed").to_owned();
    let mut record = |what: &str, detail: String| {
        failures.push(format!("{name}: {what}: {detail}"));
    };
    let (p, _) = p.normalize();
    let d = p.dim();
    let delta = match delta_by_counting(&p) {
        Ok(x) => x,
        Err(e) => return record("counting delta", e.to_string()),
    };
    if let Some(want) = expected {
        if &delta != want {
            return record("golden delta", format!("got [{delta}], expected [{want}]"));
        }
    }
    // structural identities on the counting route
    match normalized_volume(&p) {
        Ok(vol) => {
            if delta.eval(&Int::from(1)) != vol {
                record("delta(1) = volume", format!("[{delta}] vs volume {vol}"));
            }
        }
        Err(e) => record("normalized volume", e.to_string()),
    }
    match ehrhart_counts(&p) {
        Ok(counts) => {
            let expected_d1 = &counts[1.min(d)] - Int::from(d as i64 + 1);
            if d >= 1 && delta.coeff(1) != expected_d1 {
                record(
                    "delta_1 = f(1) - d - 1",
                    format!("delta_1 = {} vs {}", delta.coeff(1), expected_d1),
                );
            }
        }
        Err(e) => record("counts", e.to_string()),
    }
    if deep {
        if let Err(e) = deep_count_check(&p) {
            record("deep count check", e.to_string());
        }
    }
    for sub in 0..3u64 {
        let t = match random_triangulation(&p, mix_seed(seed, sub)) {
            Ok(t) => t,
            Err(e) => {
                record("triangulation", format!("seed {sub}: {e}"));
                continue;
            }
        };
        match delta_by_boxes(&t) {
            Ok(x) => {
                if x != delta {
                    record("box decomposition", format!("[{x}] vs [{delta}]"));
                }
            }
            Err(e) => record("box decomposition", e.to_string()),
        }
        match orbifold_delta(&t) {
            Ok(x) => {
                if x != delta {
                    record("graded quotient", format!("[{x}] vs [{delta}]"));
                }
            }
            Err(e) => record("graded quotient", e.to_string()),
        }
        // h-vector sandwich: 0 <= h <= delta, equality iff unimodular
        let h = h_of_triangulation(&t);
        if !h.is_nonnegative() {
            record("h >= 0", format!("[{h}]"));
        }
        if !h.leq(&delta) {
            record("h <= delta", format!("[{h}] vs [{delta}]"));
        }
        if (h == delta) != t.is_unimodular() {
            record(
                "h = delta iff unimodular",
                format!("h [{h}], delta [{delta}], unimodular {}", t.is_unimodular()),
            );
        }
        if !t.verify_regularity() {
            record("regularity certificate", format!("seed {sub}"));
        }
        if sub == 0 {
            run_box_identities(&t, &mut record);
            if let Err(e) = orbifold_vanishing_check(&t) {
                record("vanishing beyond degree d", e.to_string());
            }
        }
    }
}

/// Per-simplex half-open box partition and age pairing.
fn run_box_identities(
    t: &hstar_core::LatticeTriangulation,
    record: &mut impl FnMut(&str, String),
) {
    for s in t.maximal_simplices() {
        let census = half_open_box_census(t, s);
        let det = t.simplex_det(s);
        if Int::from(census.len() as i64) != det {
            record(
                "box partition",
                format!("census {} vs det {det} on {s:?}", census.len()),
            );
        }
    }
    for f in t.all_faces() {
        if f.is_empty() {
            continue;
        }
        let pts = box_points(t, &f);
        let s = f.indices().len();
        for bp in &pts {
            let mirror_age = s - bp.age;
            if !pts.iter().any(|o| o.age == mirror_age) {
                record(
                    "age symmetry",
                    format!("age {} unmatched in face {f:?}", bp.age),
                );
            }
        }
    }
}
