//! JSON file formats for polytopes and nested pairs.

use anyhow::{bail, Context, Result};
use hstar_core::polytope::contains;
use hstar_core::{Int, LatticePolytope};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub name: String,
    pub vertices: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairFile {
    #[serde(rename = "P")]
    pub p: PolytopeFile,
    #[serde(rename = "Q")]
    pub q: PolytopeFile,
}

impl PolytopeFile {
    pub fn from_polytope(p: &LatticePolytope, name: &str) -> Self {
        PolytopeFile {
            name: name.to_owned(),
            vertices: p
                .vertices()
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|x| i64::try_from(x).expect("vertex coordinate fits i64"))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn into_polytope(self) -> Result<LatticePolytope> {
        if self.vertices.is_empty() {
            bail!("polytope '{}' has no vertices", self.name);
        }
        let rank = self.vertices[0].len();
        for (i, v) in self.vertices.iter().enumerate() {
            if v.len() != rank {
                bail!(
                    "polytope '{}': vertex {i} has {} coordinates, expected {rank}",
                    self.name,
                    v.len()
                );
            }
        }
        let vertices: Vec<Vec<Int>> = self
            .vertices
            .iter()
            .map(|v| v.iter().copied().map(Int::from).collect())
            .collect();
        LatticePolytope::new(rank, vertices, Some(self.name.clone()))
            .with_context(|| format!("polytope '{}' is invalid", self.name))
    }
}

pub fn load_polytope(path: &Path) -> Result<LatticePolytope> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let file: PolytopeFile = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse {}", path.display()))?;
    file.into_polytope()
}

pub fn load_pair(path: &Path) -> Result<(LatticePolytope, LatticePolytope)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let file: PairFile = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse {}", path.display()))?;
    let p = file.p.into_polytope()?;
    let q = file.q.into_polytope()?;
    if p.ambient_rank() != q.ambient_rank() {
        bail!(
            "P has ambient rank {} but Q has {}",
            p.ambient_rank(),
            q.ambient_rank()
        );
    }
    if !contains(&p, &q) {
        bail!("containment violated: Q is not a subset of P");
    }
    Ok((p, q))
}
