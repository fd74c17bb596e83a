//! Brute-force oracles shared by the property and acceptance suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use lattice_diameter::geometry::{hull2d, hull3d, Point2, Point3, Polygon};
use lattice_diameter::polygons::polygon_diameter;
use lattice_diameter::symmetry::{enumerate_group, CubeSymmetry};

fn sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: Point3, b: Point3) -> Point3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: Point3, b: Point3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn primitive(n: Point3) -> Point3 {
    let g = gcd(gcd(n[0], n[1]), n[2]);
    n.map(|c| c / g)
}

fn rank(vectors: &[Point3]) -> usize {
    let nonzero: Vec<Point3> = vectors.iter().copied().filter(|v| *v != [0, 0, 0]).collect();
    let Some(&a) = nonzero.first() else { return 0 };
    let Some(&b) = nonzero.iter().find(|&&b| cross(a, b) != [0, 0, 0]) else { return 1 };
    let n = cross(a, b);
    if nonzero.iter().any(|&c| dot(n, c) != 0) { 3 } else { 2 }
}

/// Affine rank of a point set.
pub fn affine_rank(points: &[Point3]) -> usize {
    match points.first() {
        Some(&p0) => rank(&points.iter().map(|&p| sub(p, p0)).collect::<Vec<_>>()),
        None => 0,
    }
}

pub struct OracleHull {
    pub vertices: Vec<Point3>,
    pub edges: BTreeSet<(Point3, Point3)>,
    pub facets: BTreeSet<(Point3, i64)>,
}

/// Facets are supporting planes through three affinely independent points;
/// vertices lie on facets whose normals have rank 3; edges join vertices
/// whose common facets have rank 2.
pub fn oracle_hull(points: &[Point3]) -> Option<OracleHull> {
    let pts: Vec<Point3> = points.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if affine_rank(&pts) < 3 {
        return None;
    }
    let mut facets = BTreeSet::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for l in j + 1..pts.len() {
                let n = cross(sub(pts[j], pts[i]), sub(pts[l], pts[i]));
                if n == [0, 0, 0] {
                    continue;
                }
                let n = primitive(n);
                let off = dot(n, pts[i]);
                if pts.iter().all(|&p| dot(n, p) <= off) {
                    facets.insert((n, off));
                } else if pts.iter().all(|&p| dot(n, p) >= off) {
                    facets.insert((n.map(|c| -c), -off));
                }
            }
        }
    }
    let on = |p: Point3| -> Vec<Point3> { facets.iter().filter(|(n, o)| dot(*n, p) == *o).map(|f| f.0).collect() };
    let vertices: Vec<Point3> = pts.iter().copied().filter(|&p| rank(&on(p)) == 3).collect();
    let mut edges = BTreeSet::new();
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            let common: Vec<Point3> =
                facets.iter().filter(|(n, o)| dot(*n, a) == *o && dot(*n, b) == *o).map(|f| f.0).collect();
            if rank(&common) == 2 {
                edges.insert((a, b));
            }
        }
    }
    Some(OracleHull { vertices, edges, facets })
}

/// Compares `hull3d` with the oracle; returns a description of the first difference.
pub fn check_hull(points: &[Point3]) -> Result<(), String> {
    let oracle = oracle_hull(points);
    let hull = hull3d(points);
    let (oracle, hull) = match (oracle, hull) {
        (None, Err(_)) => return Ok(()),
        (None, Ok(_)) => return Err(format!("{points:?}: flat set accepted")),
        (Some(_), Err(e)) => return Err(format!("{points:?}: {e}")),
        (Some(o), Ok(h)) => (o, h),
    };
    if hull.vertices() != oracle.vertices.as_slice() {
        return Err(format!("{points:?}: vertices {:?} vs oracle {:?}", hull.vertices(), oracle.vertices));
    }
    let v = hull.vertices();
    let edges: BTreeSet<(Point3, Point3)> = hull.edges().iter().map(|&(i, j)| (v[i], v[j])).collect();
    if edges != oracle.edges {
        return Err(format!("{points:?}: edges differ from oracle"));
    }
    let facets: BTreeSet<(Point3, i64)> = hull.facets().iter().map(|f| (f.normal, f.offset)).collect();
    if facets != oracle.facets || facets.len() != hull.facets().len() {
        return Err(format!("{points:?}: facets differ from oracle"));
    }
    for f in hull.facets() {
        let on: BTreeSet<usize> = (0..v.len()).filter(|&i| dot(f.normal, v[i]) == f.offset).collect();
        let cycle: BTreeSet<usize> = f.cycle.iter().copied().collect();
        if on != cycle || cycle.len() != f.cycle.len() {
            return Err(format!("{points:?}: facet cycle {:?} misses plane vertices", f.cycle));
        }
    }
    if hull.euler_characteristic() != 2 {
        return Err(format!("{points:?}: V - E + F = {}", hull.euler_characteristic()));
    }
    Ok(())
}

fn grid2(k: i64) -> Vec<Point2> {
    (0..=k).flat_map(|x| (0..=k).map(move |y| [x, y])).collect()
}

/// Lattice polygons of largest diameter in `[0,k]^2`, by hulling every subset of the grid.
pub fn oracle_family(k: i64) -> (usize, Vec<Polygon>) {
    let grid = grid2(k);
    let mut polys = BTreeSet::new();
    for mask in 1u64..1 << grid.len() {
        let pts: Vec<Point2> = (0..grid.len()).filter(|i| mask >> i & 1 == 1).map(|i| grid[i]).collect();
        if let Ok(p) = hull2d(&pts) {
            polys.insert(p);
        }
    }
    let best = polys.iter().map(polygon_diameter).max().unwrap_or(0);
    (best, polys.into_iter().filter(|p| polygon_diameter(p) == best).collect())
}

/// Closure, identity, inverses, associativity, order and faithfulness on the cube's vertices.
pub fn check_group_axioms(d: usize) -> Result<(), String> {
    let group = enumerate_group(d);
    let order = (1..=d).product::<usize>() << d;
    if group.len() != order {
        return Err(format!("d={d}: order {} != {order}", group.len()));
    }
    let set: BTreeSet<&CubeSymmetry> = group.iter().collect();
    if set.len() != order {
        return Err(format!("d={d}: duplicate elements"));
    }
    let id = CubeSymmetry::identity(d);
    if !set.contains(&id) {
        return Err(format!("d={d}: identity missing"));
    }
    for a in &group {
        if a.compose(&id) != *a || id.compose(a) != *a {
            return Err(format!("d={d}: identity law fails for {a:?}"));
        }
        let inv = a.inverse();
        if !set.contains(&inv) || a.compose(&inv) != id || inv.compose(a) != id {
            return Err(format!("d={d}: inverse law fails for {a:?}"));
        }
        for b in &group {
            let ab = a.compose(b);
            if !set.contains(&ab) {
                return Err(format!("d={d}: not closed"));
            }
            for c in group.iter().step_by(3) {
                if ab.compose(c) != a.compose(&b.compose(c)) {
                    return Err(format!("d={d}: not associative"));
                }
            }
        }
    }
    // distinct elements move the cube's vertices differently
    let k = 1;
    let corners: Vec<Vec<i64>> = (0..1u32 << d).map(|m| (0..d).map(|i| (m >> i & 1) as i64).collect()).collect();
    let actions: BTreeSet<Vec<Vec<i64>>> =
        group.iter().map(|g| corners.iter().map(|c| g.apply(c, k)).collect()).collect();
    if d > 1 && actions.len() != order {
        return Err(format!("d={d}: action on vertices is not faithful"));
    }
    Ok(())
}

/// Least element of each orbit of `{u, k-u}` under the cube group, by brute force.
pub fn oracle_orbit_reps(k: i64) -> BTreeSet<Point3> {
    let group = enumerate_group(3);
    let mut reps = BTreeSet::new();
    for x in 0..=k {
        for y in 0..=k {
            for z in 0..=k {
                let u = [x, y, z];
                let v = u.map(|c| k - c);
                let least = group.iter().flat_map(|g| [g.apply3(u, k), g.apply3(v, k)]).min().unwrap();
                reps.insert(least);
            }
        }
    }
    reps
}
