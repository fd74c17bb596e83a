//! Symmetries of the cube `[0,k]^d` and antipodal vertex pairs up to symmetry.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point3;

/// Signed coordinate permutation: coordinate `i` of the image is coordinate
/// `axis_permutation[i]` of the input, reflected by `x -> k - x` when `flips[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeSymmetry {
    axis_permutation: Vec<usize>,
    flips: Vec<bool>,
}

impl CubeSymmetry {
    pub fn new(axis_permutation: Vec<usize>, flips: Vec<bool>) -> Result<Self> {
        let d = axis_permutation.len();
        let mut seen = vec![false; d];
        for &a in &axis_permutation {
            if a >= d || std::mem::replace(&mut seen[a], true) {
                return Err(Error::Unsupported(format!("{axis_permutation:?} is not a permutation")));
            }
        }
        if flips.len() != d {
            return Err(Error::Unsupported("flip count differs from dimension".into()));
        }
        Ok(CubeSymmetry { axis_permutation, flips })
    }

    pub fn identity(d: usize) -> Self {
        CubeSymmetry { axis_permutation: (0..d).collect(), flips: vec![false; d] }
    }

    pub fn dim(&self) -> usize {
        self.axis_permutation.len()
    }

    pub fn apply(&self, p: &[i64], k: i64) -> Vec<i64> {
        self.axis_permutation
            .iter()
            .zip(&self.flips)
            .map(|(&src, &flip)| if flip { k - p[src] } else { p[src] })
            .collect()
    }

    pub fn apply3(&self, p: Point3, k: i64) -> Point3 {
        let q = self.apply(&p, k);
        [q[0], q[1], q[2]]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &CubeSymmetry) -> CubeSymmetry {
        let axis_permutation = self.axis_permutation.iter().map(|&i| other.axis_permutation[i]).collect();
        let flips = self
            .axis_permutation
            .iter()
            .zip(&self.flips)
            .map(|(&i, &f)| f ^ other.flips[i])
            .collect();
        CubeSymmetry { axis_permutation, flips }
    }

    pub fn inverse(&self) -> CubeSymmetry {
        let d = self.dim();
        let mut axis_permutation = vec![0; d];
        let mut flips = vec![false; d];
        for (i, &src) in self.axis_permutation.iter().enumerate() {
            axis_permutation[src] = i;
            flips[src] = self.flips[i];
        }
        CubeSymmetry { axis_permutation, flips }
    }
}

/// The full hyperoctahedral group of order `2^d d!`.
pub fn enumerate_group(d: usize) -> Vec<CubeSymmetry> {
    let mut perms = Vec::new();
    permutations(&mut (0..d).collect::<Vec<_>>(), 0, &mut perms);
    perms.sort();
    let mut group = Vec::with_capacity(perms.len() << d);
    for perm in perms {
        for mask in 0..1u32 << d {
            let flips = (0..d).map(|i| mask >> i & 1 == 1).collect();
            group.push(CubeSymmetry { axis_permutation: perm.clone(), flips });
        }
    }
    group
}

fn permutations(items: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if start == items.len() {
        out.push(items.clone());
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, out);
        items.swap(start, i);
    }
}

/// Two cube vertices with `u + v = (k, ..., k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AntipodalPair {
    pub u: Point3,
    pub v: Point3,
}

impl AntipodalPair {
    pub fn from_u(u: Point3, k: i64) -> Self {
        AntipodalPair { u, v: [k - u[0], k - u[1], k - u[2]] }
    }
}

/// Which orbit representatives to return.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryMode {
    /// Only representatives with a zero coordinate, i.e. `u` on a cube facet.
    Paper,
    /// Every orbit.
    Full,
}

/// Canonical representative of the orbit of `{u, k-u}`: fold each coordinate
/// into `[0, k/2]`, then sort.
pub fn canonical_u(u: Point3, k: i64) -> Point3 {
    let mut c = u.map(|x| x.min(k - x));
    c.sort_unstable();
    c
}

/// One representative per orbit of antipodal pairs, ordered by `u`.
pub fn canonical_pairs(d: usize, k: i64, mode: SymmetryMode) -> Result<Vec<AntipodalPair>> {
    if d != 3 {
        return Err(Error::Unsupported(format!("antipodal pairs are only enumerated for d=3, got d={d}")));
    }
    let half = k / 2;
    let mut pairs = Vec::new();
    for a in 0..=half {
        for b in a..=half {
            for c in b..=half {
                if mode == SymmetryMode::Paper && a != 0 {
                    continue;
                }
                pairs.push(AntipodalPair::from_u([a, b, c], k));
            }
        }
    }
    Ok(pairs)
}
