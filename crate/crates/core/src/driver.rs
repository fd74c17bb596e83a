//! End-to-end decision for `δ(3,k)`, certificates and their replay.
//!
//! The upper side asks whether some lattice `(3,k)`-polytope has an antipodal
//! pair at distance `δ(2,k) + k`. The lower side is a zonotope witness. When the
//! two meet, the value is pinned.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{hull3d, Point3};
use crate::innerpoints::{explore, uv_distance, PruningMode, SearchOutcome};
use crate::minkowski::{conjecture_bound, find_generators, witness_report, GeneratorSet, Preset};
use crate::polygons::{delta2, enumerate_family, PolygonFamily};
use crate::shelling::{ShellingAssignment, ShellingSearch, ShellingStats};
use crate::symmetry::{canonical_pairs, AntipodalPair, SymmetryMode};

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// Search settings. The defaults are the certified ones.
#[derive(Debug, Clone)]
pub struct Config {
    pub symmetry: SymmetryMode,
    pub pruning: PruningMode,
    /// Worker threads; `None` uses one per core.
    pub jobs: Option<usize>,
    /// Polygon family cache to read before enumerating.
    pub family_cache: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config { symmetry: SymmetryMode::Full, pruning: PruningMode::Exhaustive, jobs: None, family_cache: None }
    }
}

impl Config {
    /// Settings that reproduce the published search trace.
    pub fn paper_preset() -> Self {
        Config { symmetry: SymmetryMode::Paper, pruning: PruningMode::Paper, ..Config::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecisionKind {
    EqualsUpper,
    StrictlyLess,
}

/// A polytope given by its vertices, with the pair it separates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub u: Point3,
    pub v: Point3,
    pub distance: usize,
    pub vertices: Vec<Point3>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub kind: DecisionKind,
    /// `δ(2,k) + k`.
    pub upper: usize,
    /// Present iff `kind` is `EqualsUpper`.
    pub witness: Option<PairWitness>,
}

/// Search summary of one antipodal pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub u: Point3,
    pub v: Point3,
    pub shellings_surviving: u64,
    pub step4_nodes: u64,
    /// Largest `d(u, v)` reached in Step 4 and a polytope reaching it.
    pub best: Option<PairWitness>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub shellings_surviving: u64,
    pub step4_nodes: u64,
    /// Hulls computed in Step 4.
    pub hulls: u64,
    pub step3_placements: u64,
    pub step3_shortcut_prunes: u64,
    pub step3_interior_prunes: u64,
    /// Hulls computed by the Step 3 interior-endpoint filter.
    pub step3_hulls: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Modes {
    pub symmetry: SymmetryMode,
    pub pruning: PruningMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerWitness {
    pub vectors: GeneratorSet,
    pub diameter: usize,
}

/// Everything needed to check a computed value without rerunning the search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub d: usize,
    pub k: i64,
    pub delta: Option<usize>,
    pub decision: Decision,
    /// Proven upper bound on `δ(3,k)`.
    pub upper: usize,
    pub lower_witness: LowerWitness,
    pub family_size: usize,
    pub pairs: Vec<PairReport>,
    pub counters: Counters,
    pub modes: Modes,
    pub tool_version: String,
    /// Family size up to the symmetries of the square.
    pub family_orbits: usize,
    /// `[lower, upper]` when the two bounds do not meet.
    pub undetermined_interval: Option<[usize; 2]>,
    /// One line per surviving shelling.
    pub trace: Vec<String>,
}

impl Certificate {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Published values of `δ(d,k)`, used only as a cross-check.
pub struct KnownValuesTable;

impl KnownValuesTable {
    const D2: [usize; 10] = [2, 3, 4, 4, 5, 6, 6, 7, 8, 8];
    const D3: [usize; 5] = [3, 4, 6, 7, 9];
    const D4: [usize; 3] = [4, 6, 8];

    pub fn get(d: usize, k: i64) -> Option<usize> {
        if k < 1 {
            return None;
        }
        let row: &[usize] = match d {
            1 => return (k <= 10).then_some(1),
            2 => &Self::D2,
            3 => &Self::D3,
            4 => &Self::D4,
            _ => return None,
        };
        row.get(k as usize - 1).copied()
    }

    pub fn entries() -> Vec<((usize, i64), usize)> {
        let mut out = Vec::new();
        for d in 1..=4 {
            for k in 1..=10 {
                if let Some(v) = Self::get(d, k) {
                    out.push(((d, k), v));
                }
            }
        }
        out
    }
}

fn load_family(k: i64, config: &Config) -> PolygonFamily {
    if let Some(path) = &config.family_cache {
        if let Ok(family) = PolygonFamily::read_cache(path, k) {
            return family;
        }
    }
    enumerate_family(k)
}

fn check_k(d: usize, k: i64) -> Result<()> {
    if d != 3 || !(1..=5).contains(&k) {
        return Err(Error::Unsupported(format!("decisions are implemented for d=3, 1<=k<=5, got d={d}, k={k}")));
    }
    Ok(())
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build().map_err(|e| Error::Unsupported(e.to_string()))?;
    Ok(pool.install(f))
}

struct BranchResult {
    stats: ShellingStats,
    outcome: SearchOutcome,
    trace: Vec<String>,
}

struct UpperSearch {
    decision: Decision,
    pairs: Vec<PairReport>,
    counters: Counters,
    trace: Vec<String>,
}

fn search_upper(family: &PolygonFamily, k: i64, config: &Config) -> Result<UpperSearch> {
    let upper = family.target_diameter() + k as usize;
    let limit = upper - 1;
    let pairs = canonical_pairs(3, k, config.symmetry)?;
    let searches: Vec<ShellingSearch> = pairs.iter().map(|&p| ShellingSearch::new(family, p, limit)).collect();
    let tasks: Vec<(usize, usize)> = searches
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.first_choices().iter().map(move |&f| (i, f)))
        .collect();

    let run = |&(i, first): &(usize, usize)| {
        let pair = &pairs[i];
        let mut outcome = SearchOutcome::default();
        let mut trace = Vec::new();
        let stats = searches[i].run_branch(first, |s: ShellingAssignment| {
            trace.push(s.trace_line(pair));
            outcome.merge(explore(&s, pair, k, limit, config.pruning));
        });
        BranchResult { stats, outcome, trace }
    };
    // results come back in task order, so merging below is deterministic
    let results: Vec<BranchResult> = with_pool(config.jobs, || tasks.par_iter().map(run).collect())?;

    let mut reports: Vec<(ShellingStats, SearchOutcome)> = vec![Default::default(); pairs.len()];
    let mut trace = Vec::new();
    for (&(i, _), r) in tasks.iter().zip(results) {
        reports[i].0.merge(&r.stats);
        reports[i].1.merge(r.outcome);
        trace.extend(r.trace);
    }

    let mut counters = Counters::default();
    let mut pair_reports = Vec::with_capacity(pairs.len());
    for (pair, (stats, outcome)) in pairs.iter().zip(reports) {
        counters.shellings_surviving += stats.surviving;
        counters.step3_placements += stats.placements;
        counters.step3_shortcut_prunes += stats.shortcut_prunes;
        counters.step3_interior_prunes += stats.interior_prunes;
        counters.step3_hulls += stats.hulls;
        counters.step4_nodes += outcome.nodes_visited;
        counters.hulls += outcome.hulls_computed;
        let best = outcome.max_uv_distance.zip(outcome.witness).map(|(distance, vertices)| PairWitness {
            u: pair.u,
            v: pair.v,
            distance,
            vertices,
        });
        pair_reports.push(PairReport {
            u: pair.u,
            v: pair.v,
            shellings_surviving: stats.surviving,
            step4_nodes: outcome.nodes_visited,
            best,
        });
    }

    let witness = pair_reports
        .iter()
        .filter_map(|r| r.best.as_ref())
        .find(|w| w.distance >= upper)
        .cloned();
    let kind = if witness.is_some() { DecisionKind::EqualsUpper } else { DecisionKind::StrictlyLess };
    Ok(UpperSearch { decision: Decision { kind, upper, witness }, pairs: pair_reports, counters, trace })
}

/// Decides whether `δ(d,k) = δ(d-1,k) + k`.
pub fn decide_upper(d: usize, k: i64, config: &Config) -> Result<Decision> {
    check_k(d, k)?;
    let family = load_family(k, config);
    Ok(search_upper(&family, k, config)?.decision)
}

/// The shipped zonotope witness for `k`, or one found by search.
pub fn lower_witness(k: i64) -> Result<LowerWitness> {
    let target = delta2(k) + k as usize - 1;
    let vectors = match Preset::for_k(k) {
        Some(p) => p.generators(),
        None => find_generators(k, target)
            .ok_or_else(|| Error::Unsupported(format!("no zonotope witness of diameter {target} for k={k}")))?,
    };
    let diameter = witness_report(&vectors, k)?.diameter;
    Ok(LowerWitness { vectors, diameter })
}

/// Runs the upper-bound search, builds the lower witness and pins `δ(d,k)` if they meet.
pub fn compute_delta(d: usize, k: i64, config: &Config) -> Result<Certificate> {
    check_k(d, k)?;
    let family = load_family(k, config);
    if let Some(known) = KnownValuesTable::get(2, k) {
        if known != family.target_diameter() {
            return Err(Error::Verification(format!(
                "δ(2,{k}) computed as {} but the table has {known}",
                family.target_diameter()
            )));
        }
    }
    let search = search_upper(&family, k, config)?;
    let lower = lower_witness(k)?;

    let upper = match search.decision.kind {
        DecisionKind::EqualsUpper => search.decision.upper,
        DecisionKind::StrictlyLess => search.decision.upper - 1,
    };
    let pinned = search.decision.kind == DecisionKind::EqualsUpper || lower.diameter >= upper;
    let (delta, undetermined_interval) =
        if pinned { (Some(upper), None) } else { (None, Some([lower.diameter, upper])) };
    if let Some(delta) = delta {
        check_against_table(d, k, delta)?;
    }

    Ok(Certificate {
        d,
        k,
        delta,
        decision: search.decision,
        upper,
        lower_witness: lower,
        family_size: family.len(),
        pairs: search.pairs,
        counters: search.counters,
        modes: Modes { symmetry: config.symmetry, pruning: config.pruning },
        tool_version: TOOL_VERSION.to_string(),
        family_orbits: family.orbit_count(),
        undetermined_interval,
        trace: search.trace,
    })
}

fn check_against_table(d: usize, k: i64, delta: usize) -> Result<()> {
    if let Some(known) = KnownValuesTable::get(d, k) {
        if known != delta {
            return Err(Error::Verification(format!("δ({d},{k}) computed as {delta} but the table has {known}")));
        }
    }
    let bound = conjecture_bound(d, k as usize);
    if delta > bound {
        return Err(Error::Verification(format!("δ({d},{k}) = {delta} exceeds the conjectured bound {bound}")));
    }
    Ok(())
}

/// What a successful replay checked.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReplaySummary {
    pub polytopes_rebuilt: usize,
    pub shellings_rebuilt: usize,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Verification(msg()))
    }
}

/// Rebuilds a witness polytope and checks every claimed number exactly.
fn replay_pair_witness(w: &PairWitness, k: i64) -> Result<()> {
    ensure(w.u.iter().zip(&w.v).all(|(a, b)| a + b == k), || format!("{:?} and {:?} are not antipodal", w.u, w.v))?;
    ensure(w.vertices.iter().flatten().all(|c| (0..=k).contains(c)), || "witness leaves the grid".into())?;
    let hull = hull3d(&w.vertices)?;
    ensure(hull.vertices() == w.vertices.as_slice(), || "witness vertices are not in convex position".into())?;
    let pair = AntipodalPair { u: w.u, v: w.v };
    let got = uv_distance(&hull, &pair);
    ensure(got == Some(w.distance), || format!("claimed d(u,v)={} but replay gives {got:?}", w.distance))
}

fn parse_trace_line(line: &str) -> Result<(Point3, [usize; 6])> {
    let bad = || Error::Verification(format!("malformed trace line {line:?}"));
    let rest = line.strip_prefix("pair=(").ok_or_else(bad)?;
    let (u, rest) = rest.split_once(") slot_polygons=").ok_or_else(bad)?;
    let u: Vec<i64> = u.split(',').map(|s| s.parse().map_err(|_| bad())).collect::<Result<_>>()?;
    let idx: Vec<usize> = rest.split(',').map(|s| s.parse().map_err(|_| bad())).collect::<Result<_>>()?;
    let u: Point3 = u.try_into().map_err(|_| bad())?;
    let idx: [usize; 6] = idx.try_into().map_err(|_| bad())?;
    Ok((u, idx))
}

/// Replays a certificate: rebuilds every witness and every traced shelling
/// and checks the claimed numbers and the logic that ties them together.
pub fn verify(cert: &Certificate) -> Result<ReplaySummary> {
    check_k(cert.d, cert.k)?;
    let k = cert.k;
    let mut summary = ReplaySummary::default();

    let family = enumerate_family(k);
    ensure(family.len() == cert.family_size, || {
        format!("family size {} but enumeration gives {}", cert.family_size, family.len())
    })?;
    let upper = family.target_diameter() + k as usize;
    ensure(cert.decision.upper == upper, || format!("decision upper {} but δ(2,k)+k = {upper}", cert.decision.upper))?;

    let report = witness_report(&cert.lower_witness.vectors, k)?;
    ensure(report.diameter == cert.lower_witness.diameter, || {
        format!("lower witness diameter {} but replay gives {}", cert.lower_witness.diameter, report.diameter)
    })?;
    summary.polytopes_rebuilt += 1;

    for r in &cert.pairs {
        if let Some(w) = &r.best {
            ensure(w.u == r.u && w.v == r.v, || "pair witness belongs to another pair".into())?;
            replay_pair_witness(w, k)?;
            summary.polytopes_rebuilt += 1;
        }
    }
    let best = cert.pairs.iter().filter_map(|r| r.best.as_ref()).map(|w| w.distance).max();
    match cert.decision.kind {
        DecisionKind::EqualsUpper => {
            let w = cert.decision.witness.as_ref().ok_or_else(|| Error::Verification("EqualsUpper without witness".into()))?;
            replay_pair_witness(w, k)?;
            summary.polytopes_rebuilt += 1;
            ensure(w.distance == upper, || format!("witness distance {} is not {upper}", w.distance))?;
            ensure(cert.upper == upper, || "proven upper bound inconsistent with decision".into())?;
        }
        DecisionKind::StrictlyLess => {
            ensure(cert.decision.witness.is_none(), || "StrictlyLess carries a witness".into())?;
            ensure(best.is_none_or(|b| b < upper), || format!("a Step 4 node reached {best:?} >= {upper}"))?;
            ensure(cert.upper == upper - 1, || "proven upper bound inconsistent with decision".into())?;
        }
    }

    let pairs = canonical_pairs(3, k, cert.modes.symmetry)?;
    let listed: Vec<(Point3, Point3)> = cert.pairs.iter().map(|r| (r.u, r.v)).collect();
    let expected: Vec<(Point3, Point3)> = pairs.iter().map(|p| (p.u, p.v)).collect();
    ensure(listed == expected, || "tested pairs differ from the canonical list".into())?;

    let surviving: u64 = cert.pairs.iter().map(|r| r.shellings_surviving).sum();
    let nodes: u64 = cert.pairs.iter().map(|r| r.step4_nodes).sum();
    ensure(surviving == cert.counters.shellings_surviving, || "surviving shellings do not add up".into())?;
    ensure(nodes == cert.counters.step4_nodes, || "Step 4 node counts do not add up".into())?;
    ensure(cert.trace.len() as u64 == surviving, || "trace length differs from surviving count".into())?;

    let limit = upper - 1;
    for line in &cert.trace {
        let (u, placements) = parse_trace_line(line)?;
        ensure(placements.iter().all(|&i| i < family.len()), || format!("{line}: index out of range"))?;
        let pair = AntipodalPair::from_u(u, k);
        let s = ShellingAssignment::from_placements(&family, placements);
        let d = s.boundary_graph().distance(pair.u, pair.v);
        ensure(d.is_none_or(|d| d > limit), || format!("{line}: boundary has a u-v path of length {d:?}"))?;
        summary.shellings_rebuilt += 1;
    }

    match (cert.delta, cert.undetermined_interval) {
        (Some(delta), None) => {
            let pinned = cert.decision.kind == DecisionKind::EqualsUpper || cert.lower_witness.diameter >= delta;
            ensure(delta == cert.upper && pinned, || {
                format!("delta {delta} is not pinned by lower {} and upper {}", cert.lower_witness.diameter, cert.upper)
            })?;
            check_against_table(cert.d, k, delta)?;
        }
        (None, Some([lo, hi])) => {
            ensure(lo == cert.lower_witness.diameter && hi == cert.upper && lo < hi, || "bad undetermined interval".into())?;
        }
        _ => return Err(Error::Verification("exactly one of delta and undetermined_interval must be set".into())),
    }
    Ok(summary)
}
