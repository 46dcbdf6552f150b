//! Criterion benchmarks for the data-parallel kernels.
//!
//! With the default `parallel` feature each workload runs twice: in the
//! global rayon pool (`par`) and pinned to a single-thread pool (`seq1`),
//! which measures the same code path without fan-out. Building with
//! `--no-default-features` benches the plain sequential fallback (`seq`)
//! under the same workload names, so the two modes can be compared across
//! runs as well as within one.

use criterion::{criterion_group, criterion_main, Criterion};
use hstar_core::boxdecomp::delta_by_boxes;
use hstar_core::ehrhart::ehrhart_counts;
use hstar_core::monotone::{verify_pair, VerifyConfig};
use hstar_core::orbring::orbifold_delta;
use hstar_core::polytope::{lattice_points, LatticePolytope};
use hstar_core::triangulation::random_triangulation;
use hstar_core::Int;

struct Exec {
    label: &'static str,
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
}

impl Exec {
    fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            return pool.install(f);
        }
        f()
    }
}

fn execs() -> Vec<Exec> {
    #[cfg(feature = "parallel")]
    {
        vec![
            Exec { label: "par", pool: None },
            Exec {
                label: "seq1",
                pool: Some(
                    rayon::ThreadPoolBuilder::new()
                        .num_threads(1)
                        .build()
                        .expect("pool"),
                ),
            },
        ]
    }
    #[cfg(not(feature = "parallel"))]
    {
        vec![Exec { label: "seq" }]
    }
}

fn cube2() -> LatticePolytope {
    let mut verts = Vec::new();
    for x in [0i64, 2] {
        for y in [0i64, 2] {
            for z in [0i64, 2] {
                verts.push(vec![Int::from(x), Int::from(y), Int::from(z)]);
            }
        }
    }
    LatticePolytope::new(3, verts, Some("[0,2]^3".into())).unwrap()
}

fn bench_kernels(c: &mut Criterion) {
    let cube = cube2();
    let triangulation = random_triangulation(&cube, 7).unwrap();
    let pair_p = LatticePolytope::new(
        2,
        vec![
            vec![Int::from(0), Int::from(0)],
            vec![Int::from(4), Int::from(0)],
            vec![Int::from(0), Int::from(4)],
            vec![Int::from(4), Int::from(4)],
        ],
        Some("[0,4]^2".into()),
    )
    .unwrap();
    let pair_q = LatticePolytope::new(
        2,
        vec![
            vec![Int::from(1), Int::from(1)],
            vec![Int::from(3), Int::from(1)],
            vec![Int::from(1), Int::from(3)],
        ],
        Some("triangle".into()),
    )
    .unwrap();

    for exec in execs() {
        let label = exec.label;
        let mut group = c.benchmark_group(format!("kernels_{label}"));
        group.sample_size(10);
        group.bench_function("lattice_points_cube2_m5", |b| {
            b.iter(|| exec.run(|| lattice_points(&cube, 5).unwrap().len()))
        });
        group.bench_function("ehrhart_counts_cube2", |b| {
            b.iter(|| exec.run(|| ehrhart_counts(&cube).unwrap()))
        });
        group.bench_function("lower_hull_cube2", |b| {
            b.iter(|| exec.run(|| random_triangulation(&cube, 7).unwrap().maximal_simplices().len()))
        });
        group.bench_function("box_delta_cube2", |b| {
            b.iter(|| exec.run(|| delta_by_boxes(&triangulation).unwrap()))
        });
        group.bench_function("graded_delta_cube2", |b| {
            b.iter(|| exec.run(|| orbifold_delta(&triangulation).unwrap()))
        });
        group.bench_function("verify_pair_dim2", |b| {
            b.iter(|| {
                exec.run(|| {
                    verify_pair(&pair_p, &pair_q, &VerifyConfig::new(5).with_hom_samples(64))
                        .unwrap()
                        .pass()
                })
            })
        });
        group.finish();
    }
}

criterion_group!(benches, bench_kernels);
criterion_main!(benches);
