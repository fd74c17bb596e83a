//! Lower-bound witnesses: Minkowski sums of lattice segments (zonotopes).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{hull3d, Point3, Polytope3};

/// Nonzero integer generators of a zonotope.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorSet {
    vectors: Vec<Point3>,
}

impl GeneratorSet {
    pub fn new(vectors: Vec<Point3>) -> Result<Self> {
        if vectors.contains(&[0, 0, 0]) {
            return Err(Error::ZeroGenerator);
        }
        Ok(GeneratorSet { vectors })
    }

    pub fn vectors(&self) -> &[Point3] {
        &self.vectors
    }

    /// Parses one comma-separated vector per line; blank lines and `#`
    /// comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vectors = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split(',').map(str::trim).collect();
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            if parts.len() != 3 {
                return Err(err(format!("expected 3 coordinates, got {}", parts.len())));
            }
            let mut v = [0; 3];
            for (slot, part) in v.iter_mut().zip(&parts) {
                *slot = part.parse().map_err(|e: std::num::ParseIntError| err(e.to_string()))?;
            }
            vectors.push(v);
        }
        Self::new(vectors)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Width of the sum along each axis.
    pub fn span(&self) -> [i64; 3] {
        let mut span = [0; 3];
        for v in &self.vectors {
            for i in 0..3 {
                span[i] += v[i].abs();
            }
        }
        span
    }

    /// All `2^n` subset sums, translated so each coordinate's minimum is zero.
    pub fn translated_subset_sums(&self) -> Vec<Point3> {
        let mut sums = vec![[0i64; 3]];
        for v in &self.vectors {
            let shifted: Vec<Point3> = sums.iter().map(|s| [s[0] + v[0], s[1] + v[1], s[2] + v[2]]).collect();
            sums.extend(shifted);
        }
        let low: Point3 = std::array::from_fn(|i| sums.iter().map(|s| s[i]).min().unwrap_or(0));
        let mut out: Vec<Point3> = sums.iter().map(|s| [s[0] - low[0], s[1] - low[1], s[2] - low[2]]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Named generator sets shipped with the tool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Preset {
    /// The three unit vectors: the unit cube.
    Cube,
    /// Diameter 4 in `[0,2]^3`.
    D3k2,
    /// Diameter 6 in `[0,3]^3`.
    D3k3,
    /// Diameter 7 in `[0,4]^3`.
    D3k4,
    /// Diameter 9 in `[0,5]^3` after translation.
    D3k5,
}

impl Preset {
    pub fn generators(self) -> GeneratorSet {
        let vectors = match self {
            Preset::Cube => vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            Preset::D3k2 => vec![[0, 1, 0], [0, 0, 1], [1, 0, -1], [1, -1, 0]],
            Preset::D3k3 => vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, -1], [1, -1, 0], [0, 1, -1]],
            Preset::D3k4 => vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, 1], [1, 0, 1], [1, 1, 0], [1, 1, 1]],
            Preset::D3k5 => vec![
                [1, 0, 0],
                [0, 1, 0],
                [0, 0, 1],
                [0, 1, 1],
                [1, 0, 1],
                [1, 1, 0],
                [0, 1, -1],
                [1, 0, -1],
                [1, -1, 0],
            ],
        };
        GeneratorSet { vectors }
    }

    pub fn k(self) -> i64 {
        match self {
            Preset::Cube => 1,
            Preset::D3k2 => 2,
            Preset::D3k3 => 3,
            Preset::D3k4 => 4,
            Preset::D3k5 => 5,
        }
    }

    /// Built-in witness for the grid size `k`, if any.
    pub fn for_k(k: i64) -> Option<Self> {
        [Preset::Cube, Preset::D3k2, Preset::D3k3, Preset::D3k4, Preset::D3k5]
            .into_iter()
            .find(|p| p.k() == k)
    }
}

/// Hull of the generators' translated subset sums, required to fit in `[0,k]^3`.
pub fn minkowski_polytope(g: &GeneratorSet, k: i64) -> Result<Polytope3> {
    let span = g.span();
    if span.iter().any(|&s| s > k) {
        return Err(Error::DoesNotFit { range: span, k });
    }
    hull3d(&g.translated_subset_sums())
}

/// Measured facts about a generator set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub k: i64,
    pub span: [i64; 3],
    pub vertices: usize,
    pub edges: usize,
    pub facets: usize,
    pub diameter: usize,
}

pub fn witness_report(g: &GeneratorSet, k: i64) -> Result<WitnessReport> {
    let p = minkowski_polytope(g, k)?;
    Ok(WitnessReport {
        k,
        span: g.span(),
        vertices: p.vertices().len(),
        edges: p.edges().len(),
        facets: p.facets().len(),
        diameter: p.edge_graph().diameter()?,
    })
}

/// The conjectured upper bound `floor((k+1) d / 2)`.
pub fn conjecture_bound(d: usize, k: usize) -> usize {
    (k + 1) * d / 2
}

/// Searches subsets of the primitive `{-1,0,1}^3` directions, smallest first
/// in a fixed order, for a zonotope that fits in `[0,k]^3` with the given
/// diameter.
pub fn find_generators(k: i64, diameter: usize) -> Option<GeneratorSet> {
    let mut directions: Vec<Point3> = Vec::new();
    for x in -1..=1i64 {
        for y in -1..=1i64 {
            for z in -1..=1i64 {
                let v = [x, y, z];
                // one representative per line through the origin
                if v.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0) {
                    directions.push(v);
                }
            }
        }
    }
    directions.sort_by_key(|v| (v.iter().map(|c| c.abs()).sum::<i64>(), std::cmp::Reverse(*v)));
    let n = directions.len();
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), m.reverse_bits()));
    for mask in masks {
        let set = GeneratorSet {
            vectors: (0..n).filter(|i| mask >> i & 1 == 1).map(|i| directions[i]).collect(),
        };
        if set.vectors.len() < 3 || set.span().iter().any(|&s| s > k) {
            continue;
        }
        let Ok(p) = minkowski_polytope(&set, k) else {
            continue;
        };
        if p.edge_graph().diameter().ok() == Some(diameter) {
            return Some(set);
        }
    }
    None
}
