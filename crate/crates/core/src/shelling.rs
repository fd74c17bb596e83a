//! Assignments of maximal-diameter polygons to the six facets of the cube.
//!
//! For an antipodal pair `(u, v)` the slice of a candidate polytope on each cube
//! facet must be a member of the polygon family. Placements are checked for
//! agreement on every cube ridge as they are made. The union of the placed
//! polygons' edges is a subgraph of the edge graph of any completion, so a
//! short `u`-`v` path in it rules out the whole branch.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::geometry::{hull3d, EdgeGraph, Point2, Point3, Polygon};
use crate::polygons::{corner_edge_filter, PolygonFamily};
use crate::symmetry::AntipodalPair;

/// The facet `x_axis = 0` (or `= k` when `upper`) of the cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FacetSlot {
    pub axis: usize,
    pub upper: bool,
}

impl FacetSlot {
    pub const ALL: [FacetSlot; 6] = [
        FacetSlot { axis: 0, upper: false },
        FacetSlot { axis: 0, upper: true },
        FacetSlot { axis: 1, upper: false },
        FacetSlot { axis: 1, upper: true },
        FacetSlot { axis: 2, upper: false },
        FacetSlot { axis: 2, upper: true },
    ];

    pub fn level(self, k: i64) -> i64 {
        if self.upper {
            k
        } else {
            0
        }
    }

    /// The two axes spanning the facet, in increasing order.
    pub fn free_axes(self) -> [usize; 2] {
        match self.axis {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        }
    }

    pub fn contains(self, p: Point3, k: i64) -> bool {
        p[self.axis] == self.level(k)
    }

    pub fn lift(self, q: Point2, k: i64) -> Point3 {
        let mut p = [0; 3];
        p[self.axis] = self.level(k);
        let [a, b] = self.free_axes();
        p[a] = q[0];
        p[b] = q[1];
        p
    }

    pub fn project(self, p: Point3) -> Point2 {
        let [a, b] = self.free_axes();
        [p[a], p[b]]
    }

    fn index(self) -> usize {
        2 * self.axis + self.upper as usize
    }
}

/// Places a polygon on a cube facet: the slot level goes in the slot axis and
/// the polygon's two coordinates fill the remaining axes in increasing order.
pub fn embed(p: &Polygon, slot: FacetSlot, k: i64) -> (Vec<Point3>, Vec<(Point3, Point3)>) {
    let vertices = p.vertices().iter().map(|&q| slot.lift(q, k)).collect();
    let edges = p.edges().map(|(a, b)| (slot.lift(a, k), slot.lift(b, k))).collect();
    (vertices, edges)
}

/// Graph on lattice points built from a set of segments.
#[derive(Debug, Clone)]
pub struct BoundaryGraph {
    points: Vec<Point3>,
    graph: EdgeGraph,
}

impl BoundaryGraph {
    pub fn from_edges(edges: &[(Point3, Point3)]) -> Self {
        let mut points: Vec<Point3> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        points.sort_unstable();
        points.dedup();
        let idx = |p: Point3| points.binary_search(&p).expect("endpoint present");
        let graph = EdgeGraph::from_edges(points.len(), edges.iter().map(|&(a, b)| (idx(a), idx(b))));
        BoundaryGraph { points, graph }
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn distance(&self, a: Point3, b: Point3) -> Option<usize> {
        let s = self.points.binary_search(&a).ok()?;
        let t = self.points.binary_search(&b).ok()?;
        self.graph.distance(s, t)
    }
}

/// Whether the graph already has a `u`-`v` path of length at most `limit`.
/// False when either endpoint is missing from the graph.
pub fn shortcut_exists(graph: &BoundaryGraph, pair: &AntipodalPair, limit: usize) -> bool {
    graph.distance(pair.u, pair.v).is_some_and(|d| d <= limit)
}

/// Six placed polygons, one per cube facet, with the induced boundary complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShellingAssignment {
    /// Family index of the polygon on each slot, in `FacetSlot::ALL` order.
    pub placements: [usize; 6],
    /// Sorted, deduplicated embedded vertices.
    pub boundary_vertices: Vec<Point3>,
    /// Sorted embedded edges `(a, b)` with `a < b`.
    pub boundary_edges: Vec<(Point3, Point3)>,
}

impl ShellingAssignment {
    pub fn from_placements(family: &PolygonFamily, placements: [usize; 6]) -> Self {
        let k = family.k();
        let mut boundary_vertices = Vec::new();
        let mut boundary_edges = Vec::new();
        for (slot, &idx) in FacetSlot::ALL.iter().zip(&placements) {
            let (vs, es) = embed(&family.members()[idx], *slot, k);
            boundary_vertices.extend(vs);
            boundary_edges.extend(es.into_iter().map(|(a, b)| (a.min(b), a.max(b))));
        }
        boundary_vertices.sort_unstable();
        boundary_vertices.dedup();
        boundary_edges.sort_unstable();
        boundary_edges.dedup();
        ShellingAssignment { placements, boundary_vertices, boundary_edges }
    }

    pub fn boundary_graph(&self) -> BoundaryGraph {
        BoundaryGraph::from_edges(&self.boundary_edges)
    }

    pub fn trace_line(&self, pair: &AntipodalPair) -> String {
        let idx: Vec<String> = self.placements.iter().map(|i| i.to_string()).collect();
        format!(
            "pair=({},{},{}) slot_polygons={}",
            pair.u[0],
            pair.u[1],
            pair.u[2],
            idx.join(",")
        )
    }
}

/// Counters of one shelling search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingStats {
    /// Placements that agreed with every ridge.
    pub placements: u64,
    /// Placements discarded because the partial boundary had a short `u`-`v` path.
    pub shortcut_prunes: u64,
    /// Placements discarded because an off-boundary `u` or `v` fell inside the
    /// hull of the placed vertices, so it cannot be a vertex of any completion.
    pub interior_prunes: u64,
    /// Hulls computed for the interior check.
    pub hulls: u64,
    pub surviving: u64,
}

impl ShellingStats {
    pub fn merge(&mut self, other: &ShellingStats) {
        self.placements += other.placements;
        self.shortcut_prunes += other.shortcut_prunes;
        self.interior_prunes += other.interior_prunes;
        self.hulls += other.hulls;
        self.surviving += other.surviving;
    }
}

/// Depth-first search over facet assignments for one antipodal pair.
pub struct ShellingSearch<'a> {
    family: &'a PolygonFamily,
    pair: AntipodalPair,
    k: i64,
    limit: usize,
    /// Slots in search order: those containing `u`, then `v`, then the rest.
    order: [FacetSlot; 6],
    /// Admissible family indices per slot, indexed by `FacetSlot::index`.
    admissible: [Vec<usize>; 6],
    /// `ridge_masks[poly][c][upper]`: bitmask of the other coordinate over the
    /// polygon's vertices whose coordinate `c` is at the given square side.
    ridge_masks: Vec<[[u32; 2]; 2]>,
    /// Set when `u` or `v` lies on no cube facet.
    off_boundary: bool,
}
impl<'a> ShellingSearch<'a> {
    /// `limit` is the longest path length that counts as a shortcut,
    /// `delta2(k) + k - 1`.
    pub fn new(family: &'a PolygonFamily, pair: AntipodalPair, limit: usize) -> Self {
        let k = family.k();
        let mut order: Vec<FacetSlot> = Vec::with_capacity(6);
        for point in [pair.u, pair.v] {
            for slot in FacetSlot::ALL {
                if slot.contains(point, k) && !order.contains(&slot) {
                    order.push(slot);
                }
            }
        }
        for slot in FacetSlot::ALL {
            if !order.contains(&slot) {
                order.push(slot);
            }
        }
        let order: [FacetSlot; 6] = order.try_into().expect("six slots");

        let admissible = FacetSlot::ALL.map(|slot| {
            family
                .members()
                .iter()
                .enumerate()
                .filter(|(_, poly)| {
                    [pair.u, pair.v].iter().all(|&corner| {
                        !slot.contains(corner, k)
                            || corner_edge_filter(poly, slot.project(corner)).unwrap_or(false)
                    })
                })
                .map(|(i, _)| i)
                .collect()
        });

        let ridge_masks = family
            .members()
            .iter()
            .map(|poly| {
                let mut m = [[0u32; 2]; 2];
                for q in poly.vertices() {
                    for c in 0..2 {
                        for (side, level) in [0, k].into_iter().enumerate() {
                            if q[c] == level {
                                m[c][side] |= 1 << q[1 - c];
                            }
                        }
                    }
                }
                m
            })
            .collect();

        let off_boundary = !on_boundary(pair.u, k) || !on_boundary(pair.v, k);

        ShellingSearch { family, pair, k, limit, order, admissible, ridge_masks, off_boundary }
    }

    pub fn slot_order(&self) -> [FacetSlot; 6] {
        self.order
    }

    /// Candidates for the first slot; each one roots an independent branch.
    pub fn first_choices(&self) -> &[usize] {
        &self.admissible[self.order[0].index()]
    }

    /// Runs the whole search, calling `visit` on every surviving assignment.
    pub fn run(&self, mut visit: impl FnMut(ShellingAssignment)) -> ShellingStats {
        let mut stats = ShellingStats::default();
        for &first in self.first_choices() {
            stats.merge(&self.run_branch(first, &mut visit));
        }
        stats
    }

    /// Searches the branch that places `first` on the first slot.
    pub fn run_branch(&self, first: usize, mut visit: impl FnMut(ShellingAssignment)) -> ShellingStats {
        let mut state = State {
            chosen: [usize::MAX; 6],
            adjacency: vec![Vec::new(); ((self.k + 1) as usize).pow(3)],
            stats: ShellingStats::default(),
        };
        if self.place(&mut state, 0, first) {
            self.descend(&mut state, 1, &mut visit);
        }
        self.unplace(&mut state, 0);
        state.stats
    }

    fn descend(&self, state: &mut State, depth: usize, visit: &mut dyn FnMut(ShellingAssignment)) {
        if depth == 6 {
            state.stats.surviving += 1;
            let mut placements = [0; 6];
            for slot in FacetSlot::ALL {
                placements[slot.index()] = state.chosen[slot.index()];
            }
            visit(ShellingAssignment::from_placements(self.family, placements));
            return;
        }
        let slot = self.order[depth];
        for &cand in &self.admissible[slot.index()] {
            if !self.ridges_agree(state, slot, cand) {
                continue;
            }
            if self.place(state, depth, cand) {
                self.descend(state, depth + 1, visit);
            }
            self.unplace(state, depth);
        }
    }

    fn ridges_agree(&self, state: &State, slot: FacetSlot, cand: usize) -> bool {
        let free = slot.free_axes();
        for other in FacetSlot::ALL {
            let placed = state.chosen[other.index()];
            if placed == usize::MAX || other.axis == slot.axis {
                continue;
            }
            let c = free.iter().position(|&a| a == other.axis).expect("distinct axes");
            let c_other = other.free_axes().iter().position(|&a| a == slot.axis).expect("distinct axes");
            let here = self.ridge_masks[cand][c][other.upper as usize];
            let there = self.ridge_masks[placed][c_other][slot.upper as usize];
            if here != there {
                return false;
            }
        }
        true
    }

    /// Adds the polygon's edges and reports whether the branch stays alive.
    fn place(&self, state: &mut State, depth: usize, cand: usize) -> bool {
        let slot = self.order[depth];
        state.chosen[slot.index()] = cand;
        state.stats.placements += 1;
        let poly = &self.family.members()[cand];
        for (a, b) in poly.edges() {
            let (ia, ib) = (self.grid_index(slot.lift(a, self.k)), self.grid_index(slot.lift(b, self.k)));
            state.adjacency[ia].push(ib as u32);
            state.adjacency[ib].push(ia as u32);
        }
        if self.has_shortcut(state) {
            state.stats.shortcut_prunes += 1;
            return false;
        }
        if self.off_boundary_endpoint_swallowed(state) {
            state.stats.interior_prunes += 1;
            return false;
        }
        true
    }

    /// An endpoint that lies on no cube facet is not among the placed points,
    /// so if the hull of the placed points contains it, it is not a vertex.
    fn off_boundary_endpoint_swallowed(&self, state: &mut State) -> bool {
        if !self.off_boundary {
            return false;
        }
        let mut points = Vec::new();
        for slot in FacetSlot::ALL {
            let placed = state.chosen[slot.index()];
            if placed != usize::MAX {
                points.extend(self.family.members()[placed].vertices().iter().map(|&q| slot.lift(q, self.k)));
            }
        }
        let Ok(hull) = hull3d(&points) else {
            return false;
        };
        state.stats.hulls += 1;
        [self.pair.u, self.pair.v]
            .iter()
            .any(|&p| !on_boundary(p, self.k) && hull.contains_point(p))
    }

    fn unplace(&self, state: &mut State, depth: usize) {
        let slot = self.order[depth];
        let cand = std::mem::replace(&mut state.chosen[slot.index()], usize::MAX);
        if cand == usize::MAX {
            return;
        }
        let poly = &self.family.members()[cand];
        let edges: Vec<(Point2, Point2)> = poly.edges().collect();
        for &(a, b) in edges.iter().rev() {
            let (ia, ib) = (self.grid_index(slot.lift(a, self.k)), self.grid_index(slot.lift(b, self.k)));
            state.adjacency[ib].pop();
            state.adjacency[ia].pop();
        }
    }

    fn grid_index(&self, p: Point3) -> usize {
        let n = self.k + 1;
        ((p[0] * n + p[1]) * n + p[2]) as usize
    }

    /// Depth-limited BFS from `u` looking for `v`.
    fn has_shortcut(&self, state: &State) -> bool {
        let (s, t) = (self.grid_index(self.pair.u), self.grid_index(self.pair.v));
        if s == t {
            return true;
        }
        if state.adjacency[s].is_empty() || state.adjacency[t].is_empty() {
            return false;
        }
        let mut dist = vec![u32::MAX; state.adjacency.len()];
        let mut queue = VecDeque::new();
        dist[s] = 0;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x];
            if dx as usize >= self.limit {
                break;
            }
            for &y in &state.adjacency[x] {
                let y = y as usize;
                if dist[y] == u32::MAX {
                    if y == t {
                        return true;
                    }
                    dist[y] = dx + 1;
                    queue.push_back(y);
                }
            }
        }
        false
    }
}

fn on_boundary(p: Point3, k: i64) -> bool {
    FacetSlot::ALL.iter().any(|s| s.contains(p, k))
}

struct State {
    chosen: [usize; 6],
    adjacency: Vec<Vec<u32>>,
    stats: ShellingStats,
}
