//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! The corpus is deterministic: a fixed golden table (segments, unit square
//! and cube, the doubled 2-simplex, the Reeve family, standard simplices)
//! plus 50 seeded random polytopes in dimensions 1-3, and 100 seeded nested
//! pairs for the monotonicity sweep. Expected golden values are re-derived
//! here from an independent counting oracle before being compared.

use hstar_core::boxdecomp::{box_points, half_open_box_census, delta_by_boxes};
use hstar_core::ehrhart::{delta_by_counting, delta_from_counts, ehrhart_counts, poly_leq};
use hstar_core::exact::{int_vec, solve_unique, RatMatrix};
use hstar_core::monotone::{random_pair, verify_pair, VerifyConfig};
use hstar_core::orbring::{graded_dimension, orbifold_delta};
use hstar_core::polytope::{combinations, normalized_volume, LatticePolytope};
use hstar_core::triangulation::{
    h_of_triangulation, mix_seed, random_triangulation, LatticeTriangulation,
};
use hstar_core::{Int, IntPoly, IntVector, Rat};
use num_traits::{One, Signed, Zero};
use std::time::Instant;

const CORPUS_SEED: u64 = 0xACCE97;

fn criterion(number: usize, label: &str, run: impl FnOnce() -> Result<(), String>) {
    match run() {
        Ok(()) => println!("acceptance {number} ({label}): PASS"),
        Err(msg) => {
            println!("acceptance {number} ({label}): FAIL - {msg}");
            panic!("criterion {number} failed: {msg}");
        }
    }
}

fn golden_table() -> Vec<(LatticePolytope, IntPoly)> {
    let mut t: Vec<(LatticePolytope, IntPoly)> = Vec::new();
    for k in 1..=4i64 {
        t.push((
            mk(1, &[&[0], &[k]], &format!("segment[0,{k}]")),
            IntPoly::from_i64(&[1, k - 1]),
        ));
    }
    t.push((
        mk(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], "unit square"),
        IntPoly::from_i64(&[1, 1]),
    ));
    t.push((
        mk(
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
    t.push((
        mk(2, &[&[0, 0], &[2, 0], &[0, 2]], "2*simplex2"),
        IntPoly::from_i64(&[1, 3]),
    ));
    for h in 2..=5i64 {
        t.push((
            mk(
                3,
                &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, h]],
                &format!("reeve h={h}"),
            ),
            IntPoly::from_i64(&[1, 0, h - 1]),
        ));
    }
    t.push((mk(1, &[&[0], &[1]], "simplex d=1"), IntPoly::one()));
    t.push((mk(2, &[&[0, 0], &[1, 0], &[0, 1]], "simplex d=2"), IntPoly::one()));
    t.push((
        mk(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], "simplex d=3"),
        IntPoly::one(),
    ));
    t
}

fn mk(rank: usize, verts: &[&[i64]], name: &str) -> LatticePolytope {
    let vs = verts.iter().map(|v| int_vec(v)).collect();
    LatticePolytope::new(rank, vs, Some(name.to_owned())).expect("golden polytope")
}

/// 50 random corpus polytopes: dims 1-3, coordinates at most 4.
fn random_corpus() -> Vec<LatticePolytope> {
    let plan: &[(usize, usize, usize)] = &[(1, 4, 17), (2, 4, 18), (3, 2, 15)];
    let mut out = Vec::new();
    for &(dim, max_coord, count) in plan {
        for i in 0..count {
            let seed = mix_seed(CORPUS_SEED ^ ((dim as u64) << 32), i as u64);
            let (p, _) = random_pair(dim, max_coord, seed).expect("corpus draw");
            out.push(p);
        }
    }
    out
}

/// Normalized corpus polytopes with one fixed triangulation each.
fn corpus_with_triangulations() -> Vec<(LatticePolytope, Vec<LatticeTriangulation>)> {
    let mut all: Vec<LatticePolytope> = golden_table().into_iter().map(|(p, _)| p).collect();
    all.extend(random_corpus());
    all.into_iter()
        .enumerate()
        .map(|(i, p)| {
            let (p, _) = p.normalize();
            let ts = (0..3u64)
                .map(|s| {
                    random_triangulation(&p, mix_seed(CORPUS_SEED ^ 0xBEEF, i as u64 * 8 + s))
                        .expect("triangulation")
                })
                .collect();
            (p, ts)
        })
        .collect()
}

/// Independent membership oracle: Caratheodory over barycentric solves.
struct ConvOracle {
    systems: Vec<RatMatrix>,
    dim: usize,
}

impl ConvOracle {
    fn new(points: &[IntVector]) -> Self {
        use hstar_core::exact::{rank_exact_int, IntMatrix};
        let d = points[0].len();
        let mut systems = Vec::new();
        for size in 1..=(d + 1).min(points.len()) {
            for subset in combinations(points.len(), size) {
                let cols: Vec<IntVector> = subset
                    .iter()
                    .map(|&i| {
                        let mut c = points[i].clone();
                        c.push(Int::one());
                        c
                    })
                    .collect();
                let lifted = IntMatrix::from_rows(d + 1, &cols).transpose();
                if rank_exact_int(&lifted) != size {
                    continue;
                }
                systems.push(RatMatrix::from_int_columns(&cols));
            }
        }
        ConvOracle { systems, dim: d }
    }

    fn contains(&self, x: &[Int]) -> bool {
        let mut rhs: Vec<Rat> = x.iter().cloned().map(Rat::from_integer).collect();
        rhs.push(Rat::one());
        debug_assert_eq!(rhs.len(), self.dim + 1);
        self.systems.iter().any(|mat| {
            solve_unique(mat, &rhs)
                .map(|l| l.iter().all(|q| !q.is_negative()))
                .unwrap_or(false)
        })
    }
}

/// Brute-force dilate count by bounding-box scan over the oracle.
fn oracle_count(vertices: &[IntVector], m: usize) -> Int {
    let d = vertices[0].len();
    if d == 0 || m == 0 {
        return Int::one();
    }
    let scaled: Vec<IntVector> = vertices
        .iter()
        .map(|v| v.iter().map(|x| x * Int::from(m as i64)).collect())
        .collect();
    let oracle = ConvOracle::new(&scaled);
    let lo: Vec<Int> = (0..d)
        .map(|c| scaled.iter().map(|p| p[c].clone()).min().unwrap())
        .collect();
    let hi: Vec<Int> = (0..d)
        .map(|c| scaled.iter().map(|p| p[c].clone()).max().unwrap())
        .collect();
    let mut count = Int::zero();
    let mut cursor = lo.clone();
    'outer: loop {
        if oracle.contains(&cursor) {
            count += 1;
        }
        for c in (0..d).rev() {
            if cursor[c] < hi[c] {
                cursor[c] += 1;
                for r in (c + 1)..d {
                    cursor[r] = lo[r].clone();
                }
                continue 'outer;
            }
        }
        break;
    }
    count
}

#[test]
fn criterion_1_triple_agreement() {
    criterion(1, "triple agreement on 50+ polytopes, 3 seeds each", || {
        let start = Instant::now();
        let corpus = corpus_with_triangulations();
        if corpus.len() < 50 + 14 {
            return Err(format!("corpus too small: {}", corpus.len()));
        }
        for (p, ts) in &corpus {
            let counted = delta_by_counting(p).map_err(|e| e.to_string())?;
            for t in ts {
                let boxes = delta_by_boxes(t).map_err(|e| e.to_string())?;
                let graded = orbifold_delta(t).map_err(|e| e.to_string())?;
                if boxes != counted || graded != counted {
                    return Err(format!(
                        "{:?}: count [{counted}], boxes [{boxes}], graded [{graded}]",
                        p.name()
                    ));
                }
            }
        }
        let elapsed = start.elapsed();
        if elapsed.as_secs() >= 120 {
            return Err(format!("budget exceeded: {elapsed:?} >= 120s"));
        }
        Ok(())
    });
}

#[test]
fn criterion_2_golden_deltas_via_oracle() {
    criterion(2, "golden deltas derived from the counting oracle", || {
        for (p, expected) in golden_table() {
            let (p, _) = p.normalize();
            let d = p.dim();
            // derive the expected value independently before trusting it
            let oracle_counts: Vec<Int> = (0..=d).map(|m| oracle_count(p.vertices(), m)).collect();
            let derived = delta_from_counts(&oracle_counts, d).map_err(|e| e.to_string())?;
            if derived != expected {
                return Err(format!(
                    "{:?}: oracle-derived [{derived}] but table says [{expected}]",
                    p.name()
                ));
            }
            let computed = delta_by_counting(&p).map_err(|e| e.to_string())?;
            if computed != expected {
                return Err(format!(
                    "{:?}: computed [{computed}] but expected [{expected}]",
                    p.name()
                ));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_3_stanley_monotonicity() {
    criterion(3, "monotonicity on 100 nested pairs", || {
        let start = Instant::now();
        let plan: &[(usize, usize, usize)] = &[(1, 4, 34), (2, 4, 33), (3, 2, 33)];
        let mut total = 0usize;
        for &(dim, max_coord, count) in plan {
            for i in 0..count {
                let seed = mix_seed(CORPUS_SEED ^ ((dim as u64) << 48), i as u64);
                let (p, q) = random_pair(dim, max_coord, seed).map_err(|e| e.to_string())?;
                let delta_p = delta_by_counting(&p.normalize().0).map_err(|e| e.to_string())?;
                let delta_q = delta_by_counting(&q.normalize().0).map_err(|e| e.to_string())?;
                if !poly_leq(&delta_q, &delta_p) {
                    return Err(format!(
                        "dim {dim} case {i} seed {seed}: delta_Q [{delta_q}] > delta_P [{delta_p}], \
                         P = {:?}, Q = {:?}",
                        p.vertices(),
                        q.vertices()
                    ));
                }
                total += 1;
            }
        }
        if total < 100 {
            return Err(format!("only {total} pairs checked"));
        }
        let elapsed = start.elapsed();
        if elapsed.as_secs() >= 180 {
            return Err(format!("budget exceeded: {elapsed:?} >= 180s"));
        }
        Ok(())
    });
}

#[test]
fn criterion_4_h_vector_sandwich() {
    criterion(4, "0 <= h_T <= delta with equality iff unimodular", || {
        let corpus = corpus_with_triangulations();
        for (p, ts) in &corpus {
            let delta = delta_by_counting(p).map_err(|e| e.to_string())?;
            for t in ts {
                let h = h_of_triangulation(t);
                if !h.is_nonnegative() {
                    return Err(format!("{:?}: negative h [{h}]", p.name()));
                }
                if !h.leq(&delta) {
                    return Err(format!("{:?}: h [{h}] exceeds delta [{delta}]", p.name()));
                }
                let unimodular = t.is_unimodular();
                if (h == delta) != unimodular {
                    return Err(format!(
                        "{:?}: h [{h}], delta [{delta}], unimodular = {unimodular}",
                        p.name()
                    ));
                }
            }
        }
        // both directions of the equivalence, exercised on pinned instances:
        // unimodular split segment and diagonal square, non-unimodular
        // trivial [0,2] and Reeve
        let split = regular_segment_split();
        if !(split.is_unimodular() && h_of_triangulation(&split) == IntPoly::from_i64(&[1, 1])) {
            return Err("split segment should be unimodular with h = 1 + t".into());
        }
        let diag = diagonal_square();
        if !(diag.is_unimodular() && h_of_triangulation(&diag) == IntPoly::from_i64(&[1, 1])) {
            return Err("diagonal square should be unimodular with h = 1 + t".into());
        }
        let trivial = trivial_segment();
        if trivial.is_unimodular() || h_of_triangulation(&trivial) != IntPoly::one() {
            return Err("trivial [0,2] should be non-unimodular with h = 1".into());
        }
        let reeve = mk(
            3,
            &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]],
            "reeve h=2",
        );
        let t = random_triangulation(&reeve, 1).map_err(|e| e.to_string())?;
        let h = h_of_triangulation(&t);
        let delta = delta_by_counting(&reeve).map_err(|e| e.to_string())?;
        if t.is_unimodular() || !(h.leq(&delta) && h != delta) {
            return Err("Reeve triangulation should be strictly below delta".into());
        }
        Ok(())
    });
}

fn trivial_segment() -> LatticeTriangulation {
    use hstar_core::triangulation::regular_subdivision;
    let seg = mk(1, &[&[0], &[2]], "segment[0,2]");
    regular_subdivision(&seg, int_vec(&[0, 0, 0])).unwrap()
}

fn regular_segment_split() -> LatticeTriangulation {
    use hstar_core::triangulation::regular_subdivision;
    let seg = mk(1, &[&[0], &[2]], "segment[0,2]");
    regular_subdivision(&seg, int_vec(&[0, -1, 0])).unwrap()
}

fn diagonal_square() -> LatticeTriangulation {
    use hstar_core::triangulation::regular_subdivision;
    let sq = mk(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], "unit square");
    regular_subdivision(&sq, int_vec(&[0, 1, 1, 0])).unwrap()
}

#[test]
fn criterion_5_restriction_shadow() {
    criterion(5, "surjectivity, ring hom, linkwise on every pair", || {
        let plan: &[(usize, usize, usize)] = &[(1, 4, 6), (2, 4, 6), (3, 2, 6)];
        for &(dim, max_coord, count) in plan {
            for i in 0..count {
                let seed = mix_seed(CORPUS_SEED ^ ((dim as u64) << 16), i as u64);
                let (p, q) = random_pair(dim, max_coord, seed).map_err(|e| e.to_string())?;
                let cfg = VerifyConfig::new(seed).with_hom_samples(1000);
                let report = verify_pair(&p, &q, &cfg).map_err(|e| e.to_string())?;
                if report.hom_samples < 1000 {
                    return Err("hom check ran fewer than 1000 samples".into());
                }
                if !report.pass() {
                    return Err(format!(
                        "dim {dim} case {i} seed {seed}: {}",
                        report.failure.unwrap_or_default()
                    ));
                }
                if report.surjectivity.len() != report.dim_q + 1 {
                    return Err("missing surjectivity degrees".into());
                }
            }
        }
        // the golden nested examples from the specification of the pipeline
        let p = mk(1, &[&[0], &[2]], "segment[0,2]");
        let q = mk(1, &[&[0], &[1]], "segment[0,1]");
        let report =
            verify_pair(&p, &q, &VerifyConfig::new(3).with_hom_samples(1000)).map_err(|e| e.to_string())?;
        if !report.pass() || report.delta_q != vec![1] || report.delta_p != vec![1, 1] {
            return Err("segment pair verdicts wrong".into());
        }
        Ok(())
    });
}

#[test]
fn criterion_6_structural_identities() {
    criterion(6, "volume, delta_1, box partition, ages, vanishing", || {
        let corpus = corpus_with_triangulations();
        for (p, ts) in &corpus {
            let d = p.dim();
            let delta = delta_by_counting(p).map_err(|e| e.to_string())?;
            let vol = normalized_volume(p).map_err(|e| e.to_string())?;
            if delta.eval(&Int::one()) != vol {
                return Err(format!("{:?}: delta(1) != volume {vol}", p.name()));
            }
            let counts = ehrhart_counts(p).map_err(|e| e.to_string())?;
            if d >= 1 {
                let expect = &counts[1] - Int::from(d as i64 + 1);
                if delta.coeff(1) != expect {
                    return Err(format!(
                        "{:?}: delta_1 = {} but f(1) - d - 1 = {expect}",
                        p.name(),
                        delta.coeff(1)
                    ));
                }
            }
            let t = &ts[0];
            for s in t.maximal_simplices() {
                let census = half_open_box_census(t, s);
                if Int::from(census.len() as i64) != t.simplex_det(s) {
                    return Err(format!(
                        "{:?}: box partition broken on simplex {s:?}",
                        p.name()
                    ));
                }
            }
            for f in t.all_faces() {
                if f.is_empty() {
                    continue;
                }
                let pts = box_points(t, &f);
                let s = f.indices().len();
                for bp in &pts {
                    if !pts.iter().any(|o| o.age == s - bp.age) {
                        return Err(format!(
                            "{:?}: age {} unpaired in face {f:?}",
                            p.name(),
                            bp.age
                        ));
                    }
                }
            }
            for k in (d + 1)..=(d + 2) {
                let dim_k = graded_dimension(t, k).map_err(|e| e.to_string())?;
                if !dim_k.is_zero() {
                    return Err(format!(
                        "{:?}: quotient dimension {dim_k} in degree {k}",
                        p.name()
                    ));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_7_determinism() {
    criterion(7, "byte-identical CLI output and regularity certificates", || {
        use std::process::Command;
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let cube = dir.path().join("cube.json");
        std::fs::write(
            &cube,
            r#"{"name":"cube","vertices":[[0,0,0],[1,0,0],[0,1,0],[1,1,0],[0,0,1],[1,0,1],[0,1,1],[1,1,1]]}"#,
        )
        .map_err(|e| e.to_string())?;
        let pair = dir.path().join("pair.json");
        std::fs::write(
            &pair,
            r#"{"P":{"name":"big","vertices":[[0,0],[2,0],[0,2],[2,2]]},"Q":{"name":"small","vertices":[[0,0],[1,0],[0,1],[1,1]]}}"#,
        )
        .map_err(|e| e.to_string())?;
        let bin = env!("CARGO_BIN_EXE_hstar");
        let invocations: Vec<Vec<String>> = vec![
            vec!["delta".into(), cube.display().to_string(), "--seed".into(), "5".into()],
            vec!["hvector".into(), cube.display().to_string(), "--seed".into(), "5".into()],
            vec!["decompose".into(), cube.display().to_string(), "--seed".into(), "5".into()],
            vec!["orbifold".into(), cube.display().to_string(), "--seed".into(), "5".into()],
            vec!["monotone".into(), pair.display().to_string(), "--seed".into(), "5".into()],
        ];
        for args in &invocations {
            let run = |n: usize| -> Result<Vec<u8>, String> {
                let out = Command::new(bin)
                    .args(args)
                    .output()
                    .map_err(|e| e.to_string())?;
                if !out.status.success() {
                    return Err(format!(
                        "run {n} of {args:?} failed: {}",
                        String::from_utf8_lossy(&out.stderr)
                    ));
                }
                Ok(out.stdout)
            };
            let a = run(1)?;
            let b = run(2)?;
            if a != b {
                return Err(format!("output of {args:?} differs between runs"));
            }
        }
        // gen must reproduce files byte for byte
        let out1 = dir.path().join("gen1");
        let out2 = dir.path().join("gen2");
        for out in [&out1, &out2] {
            let status = Command::new(bin)
                .args([
                    "gen",
                    "--dim",
                    "2",
                    "--max-coord",
                    "3",
                    "--count",
                    "5",
                    "--seed",
                    "42",
                    "--out",
                ])
                .arg(out)
                .status()
                .map_err(|e| e.to_string())?;
            if !status.success() {
                return Err("gen failed".into());
            }
        }
        for i in 0..5 {
            let f1 = std::fs::read(out1.join(format!("pair_42_{i}.json"))).map_err(|e| e.to_string())?;
            let f2 = std::fs::read(out2.join(format!("pair_42_{i}.json"))).map_err(|e| e.to_string())?;
            if f1 != f2 {
                return Err(format!("gen output file {i} differs"));
            }
        }
        // regularity certificate across the whole corpus
        for (p, ts) in &corpus_with_triangulations() {
            for t in ts {
                if !t.verify_regularity() {
                    return Err(format!("{:?}: regularity certificate failed", p.name()));
                }
            }
        }
        Ok(())
    });
}
