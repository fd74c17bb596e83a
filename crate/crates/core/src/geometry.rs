//! Exact integer geometry kernel.
//!
//! Every predicate is an integer determinant; coordinates are bounded by the
//! grid size (at most 10 here), so nothing comes close to overflowing `i64`.
//! The 3D hull merges coplanar triangles into maximal facets, so the edge set
//! never contains triangulation diagonals.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point2 = [i64; 2];
pub type Point3 = [i64; 3];

fn sub3(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross3(a: Point3, b: Point3) -> Point3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3(a: Point3, b: Point3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Twice the signed area of the triangle `abc`.
pub fn cross2(a: Point2, b: Point2, c: Point2) -> i64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Sign of the turn `a -> b -> c`: `+1` counterclockwise, `0` collinear, `-1` clockwise.
pub fn orient2d(a: Point2, b: Point2, c: Point2) -> i32 {
    cross2(a, b, c).signum() as i32
}

/// Six times the signed volume of the tetrahedron `abcd`; positive when `d`
/// lies on the side of plane `abc` that the normal `(b-a)x(c-a)` points to.
pub fn orient3d(a: Point3, b: Point3, c: Point3, d: Point3) -> i64 {
    dot3(cross3(sub3(b, a), sub3(c, a)), sub3(d, a))
}

/// A strictly convex lattice polygon, stored counterclockwise starting at its
/// lexicographically least vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl Polygon {
    /// Builds a polygon from a counterclockwise cycle, rotating it into
    /// canonical position. Rejects cycles with a non-left turn.
    pub fn from_ccw(mut vertices: Vec<Point2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::NotConvex);
        }
        for i in 0..n {
            if cross2(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]) <= 0 {
                return Err(Error::NotConvex);
            }
        }
        let start = (0..n).min_by_key(|&i| vertices[i]).unwrap_or(0);
        vertices.rotate_left(start);
        // all-left turns still admit cycles that wind more than once
        if monotone_chain(&{
            let mut s = vertices.clone();
            s.sort_unstable();
            s
        }) != vertices
        {
            return Err(Error::NotConvex);
        }
        Ok(Polygon { vertices })
    }

    pub(crate) fn from_canonical_unchecked(vertices: Vec<Point2>) -> Self {
        Polygon { vertices }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn position(&self, p: Point2) -> Option<usize> {
        self.vertices.iter().position(|&q| q == p)
    }

    /// Edges as consecutive vertex pairs, closing the cycle.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

/// Convex hull of a planar point set. Collinear boundary points are dropped.
pub fn hull2d(points: &[Point2]) -> Result<Polygon> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    let cycle = monotone_chain(&pts);
    if cycle.len() < 3 {
        let rank = if pts.len() <= 1 { 0 } else { 1 };
        return Err(Error::DimensionDeficient { rank, needed: 2 });
    }
    Ok(Polygon::from_canonical_unchecked(cycle))
}

/// Andrew's monotone chain on sorted, deduplicated points. The result starts
/// at the least point and runs counterclockwise.
fn monotone_chain(pts: &[Point2]) -> Vec<Point2> {
    if pts.len() < 3 {
        return pts.to_vec();
    }
    let mut hull: Vec<Point2> = Vec::with_capacity(pts.len() + 1);
    for &p in pts {
        while hull.len() >= 2 && cross2(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && cross2(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// A maximal planar face of a 3D polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    /// Primitive outward normal.
    pub normal: Point3,
    /// The facet lies on `normal . x = offset`; the polytope on `<=`.
    pub offset: i64,
    /// Vertex indices, counterclockwise seen from outside, least index first.
    pub cycle: Vec<usize>,
}

/// A full-dimensional 3D lattice polytope with its merged facets and true edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope3 {
    vertices: Vec<Point3>,
    facets: Vec<Facet>,
    edges: Vec<(usize, usize)>,
}

impl Polytope3 {
    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Sorted list of `(i, j)` with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_index(&self, p: Point3) -> Option<usize> {
        self.vertices.binary_search(&p).ok()
    }

    /// Whether `q` satisfies every facet inequality; the boundary counts as inside.
    pub fn contains_point(&self, q: Point3) -> bool {
        self.facets.iter().all(|f| dot3(f.normal, q) <= f.offset)
    }

    pub fn edge_graph(&self) -> EdgeGraph {
        EdgeGraph::from_edges(self.vertices.len(), self.edges.iter().copied())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.facets.len() as i64
    }
}

/// Convex hull of a 3D point set with coplanar facets merged.
pub fn hull3d(points: &[Point3]) -> Result<Polytope3> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    let triangles = triangulated_hull(&pts)?;

    let mut planes: BTreeMap<(Point3, i64), Vec<usize>> = BTreeMap::new();
    for t in &triangles {
        let (normal, offset) = primitive_plane(pts[t.corners[0]], t.normal);
        planes.entry((normal, offset)).or_default().extend_from_slice(&t.corners);
    }

    let mut raw_facets: Vec<(Point3, i64, Vec<Point3>)> = Vec::with_capacity(planes.len());
    for ((normal, offset), mut idx) in planes {
        idx.sort_unstable();
        idx.dedup();
        let cycle = planar_cycle(normal, idx.iter().map(|&i| pts[i]).collect());
        raw_facets.push((normal, offset, cycle));
    }

    let mut vertices: Vec<Point3> = raw_facets.iter().flat_map(|f| f.2.iter().copied()).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let index = |p: Point3| vertices.binary_search(&p).expect("facet vertex is a vertex");

    let mut edges = Vec::new();
    let mut facets = Vec::with_capacity(raw_facets.len());
    for (normal, offset, cycle) in raw_facets {
        let mut ids: Vec<usize> = cycle.iter().map(|&p| index(p)).collect();
        let start = (0..ids.len()).min_by_key(|&i| ids[i]).unwrap_or(0);
        ids.rotate_left(start);
        for i in 0..ids.len() {
            let (a, b) = (ids[i], ids[(i + 1) % ids.len()]);
            edges.push((a.min(b), a.max(b)));
        }
        facets.push(Facet { normal, offset, cycle: ids });
    }
    edges.sort_unstable();
    edges.dedup();
    facets.sort_by(|a, b| a.cycle.cmp(&b.cycle));

    Ok(Polytope3 { vertices, facets, edges })
}

struct Triangle {
    corners: [usize; 3],
    normal: Point3,
    offset: i64,
}

impl Triangle {
    fn new(pts: &[Point3], a: usize, b: usize, c: usize) -> Self {
        let normal = cross3(sub3(pts[b], pts[a]), sub3(pts[c], pts[a]));
        Triangle { corners: [a, b, c], normal, offset: dot3(normal, pts[a]) }
    }

    fn sees(&self, p: Point3) -> bool {
        dot3(self.normal, p) > self.offset
    }
}

/// Incremental hull over sorted unique points. Points coplanar with a face are
/// treated as not seeing it, so flat regions come out as several coplanar
/// triangles that the caller merges.
fn triangulated_hull(pts: &[Point3]) -> Result<Vec<Triangle>> {
    let (a, b, c, d) = initial_simplex(pts)?;
    let mut faces: Vec<Triangle> = Vec::new();
    let push_oriented = |faces: &mut Vec<Triangle>, x: usize, y: usize, z: usize, inside: usize| {
        let t = Triangle::new(pts, x, y, z);
        if t.sees(pts[inside]) {
            faces.push(Triangle::new(pts, x, z, y));
        } else {
            faces.push(t);
        }
    };
    push_oriented(&mut faces, a, b, c, d);
    push_oriented(&mut faces, a, b, d, c);
    push_oriented(&mut faces, a, c, d, b);
    push_oriented(&mut faces, b, c, d, a);

    let mut visible_edges: HashSet<(usize, usize)> = HashSet::new();
    for (i, &p) in pts.iter().enumerate() {
        if i == a || i == b || i == c || i == d {
            continue;
        }
        if !faces.iter().any(|f| f.sees(p)) {
            continue;
        }
        visible_edges.clear();
        let mut kept = Vec::with_capacity(faces.len() + 4);
        let mut visible = Vec::new();
        for f in faces.drain(..) {
            if f.sees(p) {
                let [x, y, z] = f.corners;
                visible_edges.insert((x, y));
                visible_edges.insert((y, z));
                visible_edges.insert((z, x));
                visible.push(f);
            } else {
                kept.push(f);
            }
        }
        for f in &visible {
            let [x, y, z] = f.corners;
            for (s, t) in [(x, y), (y, z), (z, x)] {
                if !visible_edges.contains(&(t, s)) {
                    kept.push(Triangle::new(pts, s, t, i));
                }
            }
        }
        faces = kept;
    }

    Ok(faces)
}

fn initial_simplex(pts: &[Point3]) -> Result<(usize, usize, usize, usize)> {
    let deficient = |rank| Err(Error::DimensionDeficient { rank, needed: 3 });
    if pts.is_empty() {
        return deficient(0);
    }
    let a = 0;
    let Some(b) = (1..pts.len()).next() else {
        return deficient(0);
    };
    let ab = sub3(pts[b], pts[a]);
    let Some(c) = (2..pts.len()).find(|&i| cross3(ab, sub3(pts[i], pts[a])) != [0, 0, 0]) else {
        return deficient(1);
    };
    let Some(d) = (2..pts.len()).find(|&i| orient3d(pts[a], pts[b], pts[c], pts[i]) != 0) else {
        return deficient(2);
    };
    Ok((a, b, c, d))
}

fn primitive_plane(on_plane: Point3, normal: Point3) -> (Point3, i64) {
    let g = gcd(gcd(normal[0], normal[1]), normal[2]);
    let n = [normal[0] / g, normal[1] / g, normal[2] / g];
    (n, dot3(n, on_plane))
}

/// Orders coplanar points into the strictly convex boundary cycle of their
/// hull, counterclockwise when viewed from the side `normal` points to.
fn planar_cycle(normal: Point3, points: Vec<Point3>) -> Vec<Point3> {
    let axis = (0..3).max_by_key(|&i| normal[i].abs()).unwrap_or(2);
    let (c1, c2) = ((axis + 1) % 3, (axis + 2) % 3);
    let mut proj: Vec<(Point2, Point3)> = points.into_iter().map(|p| ([p[c1], p[c2]], p)).collect();
    proj.sort_unstable();
    let flat: Vec<Point2> = proj.iter().map(|x| x.0).collect();
    let mut cycle: Vec<Point3> = monotone_chain(&flat)
        .into_iter()
        .map(|q| proj[flat.binary_search(&q).expect("hull point")].1)
        .collect();
    if normal[axis] < 0 {
        cycle.reverse();
    }
    cycle
}

/// Undirected simple graph given by sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeGraph {
    adjacency: Vec<Vec<usize>>,
}

impl EdgeGraph {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for (a, b) in edges {
            if a == b {
                continue;
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        EdgeGraph { adjacency }
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// BFS distances from `s`; `None` marks unreachable vertices.
    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adjacency.len()];
        let mut queue = VecDeque::new();
        dist[s] = Some(0);
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap_or(0);
            for &y in &self.adjacency[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Shortest path length, or `None` if `t` is unreachable from `s`.
    pub fn distance(&self, s: usize, t: usize) -> Option<usize> {
        if s == t {
            return Some(0);
        }
        self.distances_from(s)[t]
    }

    pub fn diameter(&self) -> Result<usize> {
        let mut best = 0;
        for s in 0..self.adjacency.len() {
            for d in self.distances_from(s) {
                best = best.max(d.ok_or(Error::Disconnected)?);
            }
        }
        Ok(best)
    }
}
