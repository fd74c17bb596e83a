//! Completion of a boundary assignment by points strictly inside the cube.
//!
//! Candidates are the points of `{1,...,k-1}^3` outside the hull of the placed
//! boundary. A binary include/exclude tree over them is walked in lexicographic
//! order, excluding first; every node is scored by the `u`-`v` distance in the
//! hull of the boundary plus the included points.

use serde::{Deserialize, Serialize};

use crate::geometry::{hull3d, Point3, Polytope3};
use crate::shelling::ShellingAssignment;
use crate::symmetry::AntipodalPair;

/// How the include/exclude tree is cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PruningMode {
    /// Drop a node's whole subtree once its hull has a `u`-`v` path within the limit.
    Paper,
    /// Visit every node.
    Exhaustive,
}

/// Result of exploring one or more include/exclude trees.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    /// Largest `d(u, v)` over evaluated nodes where both are hull vertices.
    pub max_uv_distance: Option<usize>,
    /// Hull vertices of the first node attaining the maximum.
    pub witness: Option<Vec<Point3>>,
    pub nodes_visited: u64,
    pub hulls_computed: u64,
}

impl SearchOutcome {
    /// Order-independent merge: keeps the larger distance and, on ties, the
    /// lexicographically smaller witness.
    pub fn merge(&mut self, other: SearchOutcome) {
        self.nodes_visited += other.nodes_visited;
        self.hulls_computed += other.hulls_computed;
        let replace = match (self.max_uv_distance, other.max_uv_distance) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(a), Some(b)) => b > a || (b == a && other.witness < self.witness),
        };
        if replace {
            self.max_uv_distance = other.max_uv_distance;
            self.witness = other.witness;
        }
    }

    fn record(&mut self, hull: &Polytope3, distance: Option<usize>) {
        if let Some(d) = distance {
            if self.max_uv_distance.is_none_or(|best| d > best) {
                self.max_uv_distance = Some(d);
                self.witness = Some(hull.vertices().to_vec());
            }
        }
    }
}

/// `d(u, v)` in the hull's edge graph, if both are vertices.
pub fn uv_distance(hull: &Polytope3, pair: &AntipodalPair) -> Option<usize> {
    let s = hull.vertex_index(pair.u)?;
    let t = hull.vertex_index(pair.v)?;
    hull.edge_graph().distance(s, t)
}

/// Points of `{1,...,k-1}^3` outside the hull of the boundary, in lexicographic order.
pub fn candidate_points(shelling: &ShellingAssignment, k: i64) -> Vec<Point3> {
    let Ok(hull) = hull3d(&shelling.boundary_vertices) else {
        return inner_grid(k).collect();
    };
    inner_grid(k).filter(|&p| !hull.contains_point(p)).collect()
}

fn inner_grid(k: i64) -> impl Iterator<Item = Point3> {
    (1..k).flat_map(move |x| (1..k).flat_map(move |y| (1..k).map(move |z| [x, y, z])))
}

/// Walks the include/exclude tree of one boundary assignment.
pub fn explore(
    shelling: &ShellingAssignment,
    pair: &AntipodalPair,
    k: i64,
    limit: usize,
    pruning: PruningMode,
) -> SearchOutcome {
    let candidates = candidate_points(shelling, k);
    let mut walk = Walk {
        pair,
        limit,
        pruning,
        candidates: &candidates,
        points: shelling.boundary_vertices.clone(),
        outcome: SearchOutcome::default(),
    };
    let root = walk.evaluate();
    walk.descend(0, root);
    walk.outcome
}

struct Walk<'a> {
    pair: &'a AntipodalPair,
    limit: usize,
    pruning: PruningMode,
    candidates: &'a [Point3],
    /// Boundary vertices followed by the currently included candidates.
    points: Vec<Point3>,
    outcome: SearchOutcome,
}

impl Walk<'_> {
    fn evaluate(&mut self) -> Option<usize> {
        self.outcome.nodes_visited += 1;
        let hull = hull3d(&self.points).ok()?;
        self.outcome.hulls_computed += 1;
        let d = uv_distance(&hull, self.pair);
        self.outcome.record(&hull, d);
        d
    }

    /// `value` is the score of the current node, whose first `depth`
    /// candidates are decided.
    fn descend(&mut self, depth: usize, value: Option<usize>) {
        if self.pruning == PruningMode::Paper && value.is_some_and(|d| d <= self.limit) {
            return;
        }
        if depth == self.candidates.len() {
            return;
        }
        // the exclude child has the same point set as its parent
        self.outcome.nodes_visited += 1;
        self.descend(depth + 1, value);

        self.points.push(self.candidates[depth]);
        let included = self.evaluate();
        self.descend(depth + 1, included);
        self.points.pop();
    }
}
