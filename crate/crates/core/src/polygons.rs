//! Convex lattice polygons in the square `[0,k]^2` with the largest possible
//! edge-graph diameter.
//!
//! A polygon's graph is a cycle, so its diameter is `floor(n/2)` for `n`
//! vertices. Enumeration grows convex chains counterclockwise from the least
//! vertex; a table of longest possible completions prunes every chain that
//! cannot reach the target size.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{cross2, Point2, Polygon};

/// Every lattice polygon in `[0,k]^2` attaining the largest diameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonFamily {
    k: i64,
    target_diameter: usize,
    members: Vec<Polygon>,
}

impl PolygonFamily {
    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn target_diameter(&self) -> usize {
        self.target_diameter
    }

    /// Members sorted by their canonical vertex lists.
    pub fn members(&self) -> &[Polygon] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Number of orbits under the eight symmetries of the square.
    pub fn orbit_count(&self) -> usize {
        let mut reps: Vec<Polygon> = self
            .members
            .iter()
            .map(|p| {
                SQUARE_SYMMETRIES
                    .iter()
                    .map(|&s| transform_polygon(p, s, self.k))
                    .min()
                    .expect("eight symmetries")
            })
            .collect();
        reps.sort();
        reps.dedup();
        reps.len()
    }

    /// Serializes in the cache format: a header line followed by one polygon
    /// per line as `x,y;x,y;...`.
    pub fn to_cache_string(&self) -> String {
        let mut out = format!(
            "k={} diameter={} count={}\n",
            self.k,
            self.target_diameter,
            self.members.len()
        );
        for p in &self.members {
            let line: Vec<String> = p.vertices().iter().map(|v| format!("{},{}", v[0], v[1])).collect();
            let _ = writeln!(out, "{}", line.join(";"));
        }
        out
    }

    pub fn from_cache_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty cache".into() })?;
        let mut fields = [None; 3];
        for token in header.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::Parse { line: 1, msg: format!("bad header token {token}") })?;
            let slot = match key {
                "k" => 0,
                "diameter" => 1,
                "count" => 2,
                _ => return Err(Error::Parse { line: 1, msg: format!("unknown header key {key}") }),
            };
            fields[slot] = Some(value.parse::<usize>().map_err(|e| Error::Parse {
                line: 1,
                msg: e.to_string(),
            })?);
        }
        let [Some(k), Some(target_diameter), Some(count)] = fields else {
            return Err(Error::Parse { line: 1, msg: "incomplete header".into() });
        };
        let mut members = Vec::with_capacity(count);
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let parse_err = |msg: String| Error::Parse { line: i + 1, msg };
            let mut verts = Vec::new();
            for pair in line.split(';') {
                let (x, y) = pair.split_once(',').ok_or_else(|| parse_err(format!("bad vertex {pair}")))?;
                let x = x.trim().parse::<i64>().map_err(|e| parse_err(e.to_string()))?;
                let y = y.trim().parse::<i64>().map_err(|e| parse_err(e.to_string()))?;
                verts.push([x, y]);
            }
            let poly = Polygon::from_ccw(verts).map_err(|e| parse_err(e.to_string()))?;
            members.push(poly);
        }
        if members.len() != count {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header says {count} polygons, found {}", members.len()),
            });
        }
        Ok(PolygonFamily { k: k as i64, target_diameter, members })
    }

    pub fn write_cache(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_cache_string())?;
        Ok(())
    }

    /// Loads a cache file, checking that it was written for `k`.
    pub fn read_cache(path: &Path, k: i64) -> Result<Self> {
        let family = Self::from_cache_str(&std::fs::read_to_string(path)?)?;
        if family.k != k {
            return Err(Error::Parse {
                line: 1,
                msg: format!("cache is for k={}, wanted k={k}", family.k),
            });
        }
        Ok(family)
    }
}

/// Diameter of a polygon's edge graph, the cycle on its vertices.
pub fn polygon_diameter(p: &Polygon) -> usize {
    p.len() / 2
}

/// Largest vertex count of a convex lattice polygon in `[0,k]^2`.
pub fn max_vertex_count(k: i64) -> usize {
    let mut best = 0;
    for anchor in grid(k) {
        let table = ChainTable::new(anchor, k);
        for j in 0..table.others.len() {
            let tail = table.tail(None, j);
            if tail >= 1 {
                best = best.max(2 + tail as usize);
            }
        }
    }
    best
}

/// Largest edge-graph diameter of a lattice polygon in `[0,k]^2`.
pub fn delta2(k: i64) -> usize {
    max_vertex_count(k) / 2
}

/// All strictly convex lattice polygons in `[0,k]^2` whose diameter is `delta2(k)`.
pub fn enumerate_family(k: i64) -> PolygonFamily {
    let target_diameter = delta2(k);
    let min_len = (2 * target_diameter).max(3);
    let mut members = Vec::new();
    for anchor in grid(k) {
        let table = ChainTable::new(anchor, k);
        let mut chain = vec![anchor];
        for j in 0..table.others.len() {
            if 2 + table.tail(None, j).max(-1) < min_len as i32 {
                continue;
            }
            chain.push(table.others[j]);
            extend(&table, None, j, &mut chain, min_len, &mut members);
            chain.pop();
        }
    }
    members.sort();
    PolygonFamily { k, target_diameter, members }
}

fn extend(
    table: &ChainTable,
    prev: Option<usize>,
    cur: usize,
    chain: &mut Vec<Point2>,
    min_len: usize,
    out: &mut Vec<Polygon>,
) {
    let here = chain.len();
    if here >= min_len && table.closes(prev, cur) {
        out.push(Polygon::from_canonical_unchecked(chain.clone()));
    }
    for next in cur + 1..table.others.len() {
        if !table.turns_left(prev, cur, next) {
            continue;
        }
        let reach = here as i32 + 1 + table.tail(Some(cur), next);
        if reach < min_len as i32 {
            continue;
        }
        chain.push(table.others[next]);
        extend(table, Some(cur), next, chain, min_len, out);
        chain.pop();
    }
}

const NEG: i32 = i32::MIN / 4;

/// Convex chains anchored at `anchor`, which is the lexicographically least
/// vertex. The remaining candidates are sorted by angle around the anchor;
/// chains visit them in strictly increasing angle.
struct ChainTable {
    anchor: Point2,
    others: Vec<Point2>,
    /// `tails[(i+1) * n + j]`: most vertices that can follow `j` after the edge
    /// `i -> j` before closing at the anchor (`i = -1` is the anchor itself),
    /// or `NEG` when no closing is possible.
    tails: Vec<i32>,
}

impl ChainTable {
    fn new(anchor: Point2, k: i64) -> Self {
        let mut others: Vec<Point2> = grid(k).filter(|&q| q > anchor).collect();
        // all points lie in the half-plane right of (or straight above) the anchor
        others.sort_by(|&a, &b| {
            0.cmp(&cross2(anchor, a, b)).then_with(|| {
                let da = (a[0] - anchor[0]).abs() + (a[1] - anchor[1]).abs();
                let db = (b[0] - anchor[0]).abs() + (b[1] - anchor[1]).abs();
                da.cmp(&db)
            })
        });
        let n = others.len();
        let mut table = ChainTable { anchor, others, tails: vec![NEG; (n + 1) * n] };
        for j in (0..n).rev() {
            for i in std::iter::once(None).chain((0..j).map(Some)) {
                let mut best = if table.closes(i, j) { 0 } else { NEG };
                for l in j + 1..n {
                    if table.turns_left(i, j, l) {
                        let t = table.tail(Some(j), l);
                        if t > NEG {
                            best = best.max(1 + t);
                        }
                    }
                }
                let slot = table.slot(i, j);
                table.tails[slot] = best;
            }
        }
        table
    }

    fn slot(&self, prev: Option<usize>, cur: usize) -> usize {
        prev.map_or(0, |i| i + 1) * self.others.len() + cur
    }

    fn tail(&self, prev: Option<usize>, cur: usize) -> i32 {
        self.tails[self.slot(prev, cur)]
    }

    fn point(&self, idx: Option<usize>) -> Point2 {
        idx.map_or(self.anchor, |i| self.others[i])
    }

    /// Strict left turn at `cur` towards `next`, with `next` strictly further
    /// around the anchor.
    fn turns_left(&self, prev: Option<usize>, cur: usize, next: usize) -> bool {
        let (a, b, c) = (self.point(prev), self.others[cur], self.others[next]);
        cross2(self.anchor, b, c) > 0 && cross2(a, b, c) > 0
    }

    /// Whether the chain can return to the anchor from `cur` with a strict
    /// left turn. A chain that is a single edge cannot close.
    fn closes(&self, prev: Option<usize>, cur: usize) -> bool {
        prev.is_some() && cross2(self.point(prev), self.others[cur], self.anchor) > 0
    }
}

fn grid(k: i64) -> impl Iterator<Item = Point2> {
    (0..=k).flat_map(move |x| (0..=k).map(move |y| [x, y]))
}

/// Whether both polygon edges at `corner` have coordinate differences in `{-1,0,1}`.
pub fn corner_edge_filter(p: &Polygon, corner: Point2) -> Result<bool> {
    let i = p.position(corner).ok_or(Error::NotAVertex(corner))?;
    let n = p.len();
    let v = p.vertices();
    let unit = |a: Point2, b: Point2| (a[0] - b[0]).abs() <= 1 && (a[1] - b[1]).abs() <= 1;
    Ok(unit(v[(i + n - 1) % n], corner) && unit(v[(i + 1) % n], corner))
}

/// A symmetry of the square `[0,k]^2`: optional axis swap, then per-axis flips.
pub type SquareSymmetry = (bool, bool, bool);

pub const SQUARE_SYMMETRIES: [SquareSymmetry; 8] = [
    (false, false, false),
    (false, false, true),
    (false, true, false),
    (false, true, true),
    (true, false, false),
    (true, false, true),
    (true, true, false),
    (true, true, true),
];

pub fn transform_point(p: Point2, (swap, fx, fy): SquareSymmetry, k: i64) -> Point2 {
    let [mut x, mut y] = if swap { [p[1], p[0]] } else { p };
    if fx {
        x = k - x;
    }
    if fy {
        y = k - y;
    }
    [x, y]
}

/// Image of a polygon under a square symmetry, re-canonicalized.
pub fn transform_polygon(p: &Polygon, s: SquareSymmetry, k: i64) -> Polygon {
    let mut verts: Vec<Point2> = p.vertices().iter().map(|&v| transform_point(v, s, k)).collect();
    // reflections reverse orientation
    if s.0 ^ s.1 ^ s.2 {
        verts.reverse();
    }
    Polygon::from_ccw(verts).expect("symmetry preserves convexity")
}
