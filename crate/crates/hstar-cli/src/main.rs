//! `hstar` — exact δ-polynomial computations and monotonicity verification
//! for lattice polytopes, with JSON in and JSON out.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 usage or parse
//! error. All results go to stdout as JSON; diagnostics go to stderr.

mod io;
mod selftest;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use hstar_core::boxdecomp::{box_poly, delta_by_boxes};
use hstar_core::ehrhart::delta_by_counting;
use hstar_core::monotone::{random_pair, verify_pair, VerifyConfig};
use hstar_core::orbring::{graded_slice, orbifold_delta};
use hstar_core::triangulation::{
    h_of_triangulation, h_polynomial, mix_seed, random_triangulation,
};
use hstar_core::{Error as CoreError, IntPoly};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hstar", version, about = "Exact δ-polynomial toolkit for lattice polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Count,
    Boxes,
    Orbifold,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the δ-polynomial of a polytope file.
    Delta {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
        /// Triangulation seed used by the boxes and orbifold methods.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the h-vector of a seeded regular triangulation and whether it
    /// is unimodular.
    Hvector {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the per-face box polynomials and link h-vectors.
    Decompose {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print per-degree basis size, relation rank, and quotient dimension
    /// of the graded ring presentation.
    Orbifold {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify Stanley monotonicity and its ring-level shadow on a pair file.
    Monotone {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Monomial pairs sampled by the homomorphism check.
        #[arg(long, default_value_t = 1000)]
        hom_samples: usize,
        /// Also run the m = d+1, d+2 count checks and quotient vanishing.
        #[arg(long)]
        deep: bool,
    },
    /// Generate a deterministic corpus of nested pair files.
    Gen {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        max_coord: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the built-in golden and property suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Larger sweeps plus the m = d+1, d+2 count checks.
        #[arg(long)]
        deep: bool,
        /// Corrupt one golden value to prove the harness reports failures.
        #[arg(long, hide = true)]
        negative_control: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            // mathematical failures exit 1, usage and parse problems exit 2
            let code = match err.downcast_ref::<CoreError>() {
                Some(CoreError::Inconsistency { .. })
                | Some(CoreError::PairVerification { .. })
                | Some(CoreError::DegenerateHeights { .. }) => 1u8,
                _ => 2u8,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Delta { file, method, seed } => cmd_delta(&file, method, seed),
        Command::Hvector { file, seed } => cmd_hvector(&file, seed),
        Command::Decompose { file, seed } => cmd_decompose(&file, seed),
        Command::Orbifold { file, seed } => cmd_orbifold(&file, seed),
        Command::Monotone {
            file,
            seed,
            hom_samples,
            deep,
        } => cmd_monotone(&file, seed, hom_samples, deep),
        Command::Gen {
            dim,
            max_coord,
            count,
            seed,
            out,
        } => cmd_gen(dim, max_coord, count, seed, &out),
        Command::Selftest {
            seed,
            deep,
            negative_control,
        } => selftest::run(seed, deep, negative_control),
    }
}

fn coeffs(p: &IntPoly) -> Vec<i64> {
    p.to_i64_vec()
}

#[derive(Serialize)]
struct DeltaAll {
    count: Vec<i64>,
    boxes: Vec<i64>,
    orbifold: Vec<i64>,
    agree: bool,
}

fn cmd_delta(file: &Path, method: Method, seed: u64) -> Result<ExitCode> {
    let p = io::load_polytope(file)?;
    let (p, _) = p.normalize();
    match method {
        Method::Count => {
            println!("{}", serde_json::to_string(&coeffs(&delta_by_counting(&p)?))?);
        }
        Method::Boxes => {
            let t = random_triangulation(&p, seed)?;
            println!("{}", serde_json::to_string(&coeffs(&delta_by_boxes(&t)?))?);
        }
        Method::Orbifold => {
            let t = random_triangulation(&p, seed)?;
            println!("{}", serde_json::to_string(&coeffs(&orbifold_delta(&t)?))?);
        }
        Method::All => {
            let count = delta_by_counting(&p)?;
            let t = random_triangulation(&p, seed)?;
            let boxes = delta_by_boxes(&t)?;
            let orbifold = orbifold_delta(&t)?;
            let agree = boxes == count && orbifold == count;
            let out = DeltaAll {
                count: coeffs(&count),
                boxes: coeffs(&boxes),
                orbifold: coeffs(&orbifold),
                agree,
            };
            println!("{}", serde_json::to_string(&out)?);
            if !agree {
                eprintln!("methods disagree on {}", file.display());
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct HvectorOut {
    h: Vec<i64>,
    unimodular: bool,
}

fn cmd_hvector(file: &Path, seed: u64) -> Result<ExitCode> {
    let p = io::load_polytope(file)?;
    let (p, _) = p.normalize();
    let t = random_triangulation(&p, seed)?;
    let h = h_of_triangulation(&t);
    if !h.is_nonnegative() {
        eprintln!("warning: h-vector has a negative coefficient: {h}");
    }
    let out = HvectorOut {
        h: coeffs(&h),
        unimodular: t.is_unimodular(),
    };
    println!("{}", serde_json::to_string(&out)?);
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct FaceRow {
    face: Vec<usize>,
    dim: isize,
    #[serde(rename = "box")]
    box_poly: Vec<i64>,
    link_h: Vec<i64>,
}

#[derive(Serialize)]
struct DecomposeOut {
    delta: Vec<i64>,
    faces: Vec<FaceRow>,
}

fn cmd_decompose(file: &Path, seed: u64) -> Result<ExitCode> {
    let p = io::load_polytope(file)?;
    let (p, _) = p.normalize();
    let t = random_triangulation(&p, seed)?;
    let d = t.dim() as isize;
    let faces = t
        .all_faces()
        .into_iter()
        .map(|f| {
            let link = t.link(&f).expect("enumerated face");
            FaceRow {
                face: f.indices().to_vec(),
                dim: f.dim(),
                box_poly: coeffs(&box_poly(&t, &f)),
                link_h: coeffs(&h_polynomial(&link, d - f.dim() - 1)),
            }
        })
        .collect();
    let out = DecomposeOut {
        delta: coeffs(&delta_by_boxes(&t)?),
        faces,
    };
    println!("{}", serde_json::to_string(&out)?);
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct DegreeRow {
    k: usize,
    basis: usize,
    rank: usize,
    dim: usize,
}

#[derive(Serialize)]
struct OrbifoldOut {
    degrees: Vec<DegreeRow>,
    delta: Vec<i64>,
}

fn cmd_orbifold(file: &Path, seed: u64) -> Result<ExitCode> {
    let p = io::load_polytope(file)?;
    let (p, _) = p.normalize();
    let t = random_triangulation(&p, seed)?;
    let d = t.dim();
    let mut degrees = Vec::new();
    for k in 0..=(d + 2) {
        let slice = graded_slice(&t, k)?;
        degrees.push(DegreeRow {
            k,
            basis: slice.basis.len(),
            rank: slice.rank,
            dim: slice.quotient_dim(),
        });
    }
    let out = OrbifoldOut {
        degrees,
        delta: coeffs(&orbifold_delta(&t)?),
    };
    println!("{}", serde_json::to_string(&out)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_monotone(file: &Path, seed: u64, hom_samples: usize, deep: bool) -> Result<ExitCode> {
    let (p, q) = io::load_pair(file)?;
    let cfg = VerifyConfig::new(seed)
        .with_hom_samples(hom_samples)
        .with_deep(deep);
    let report = verify_pair(&p, &q, &cfg)?;
    eprintln!("verified in {} ms", report.elapsed_ms);
    println!("{}", serde_json::to_string(&report)?);
    if report.pass() {
        Ok(ExitCode::SUCCESS)
    } else {
        if let Some(f) = &report.failure {
            eprintln!("FAIL: {f}");
        }
        Ok(ExitCode::from(1))
    }
}

fn cmd_gen(
    dim: usize,
    max_coord: usize,
    count: usize,
    seed: u64,
    out: &Path,
) -> Result<ExitCode> {
    if !(1..=3).contains(&dim) {
        anyhow::bail!("dim must be between 1 and 3, got {dim}");
    }
    if !(1..=6).contains(&max_coord) {
        anyhow::bail!("max-coord must be between 1 and 6, got {max_coord}");
    }
    if count == 0 {
        anyhow::bail!("count must be positive");
    }
    std::fs::create_dir_all(out)?;
    for i in 0..count {
        let (p, q) = random_pair(dim, max_coord, mix_seed(seed, i as u64))?;
        let file = io::PairFile {
            p: io::PolytopeFile::from_polytope(&p, &format!("pair_{seed}_{i}_P")),
            q: io::PolytopeFile::from_polytope(&q, &format!("pair_{seed}_{i}_Q")),
        };
        let path = out.join(format!("pair_{seed}_{i}.json"));
        std::fs::write(&path, format!("{}\n", serde_json::to_string(&file)?))?;
    }
    eprintln!("wrote {count} pair files to {}", out.display());
    Ok(ExitCode::SUCCESS)
}
