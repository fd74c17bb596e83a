//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the test harness so the report is always printed.

mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use lattice_diameter::driver::{decide_upper, verify, Certificate, Config, DecisionKind};
use lattice_diameter::geometry::Point3;
use lattice_diameter::innerpoints::PruningMode;
use lattice_diameter::polygons::{delta2, enumerate_family};
use lattice_diameter::symmetry::{canonical_pairs, SymmetryMode};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lattice-diameter"))
}

fn scratch(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn run(cmd: &mut Command) -> Result<String, String> {
    let out = cmd.output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit {}: {}", out.status, String::from_utf8_lossy(&out.stderr).trim()));
    }
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn compute(k: i64) -> Result<Certificate, String> {
    let path = scratch(&format!("cert-k{k}.json"));
    run(bin().args(["compute", "--d", "3", "--k", &k.to_string(), "--out"]).arg(&path))?;
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    Certificate::from_json(&text).map_err(|e| e.to_string())
}

fn check_certificate(k: i64, upper: usize, lower: usize, delta: usize) -> Result<Certificate, String> {
    let cert = compute(k)?;
    expect("decision", cert.decision.kind, DecisionKind::StrictlyLess)?;
    expect("decision upper", cert.decision.upper, upper)?;
    expect("lower witness diameter", cert.lower_witness.diameter, lower)?;
    expect("delta", cert.delta, Some(delta))?;
    Ok(cert)
}

fn criterion_1() -> Outcome {
    let path = scratch("polygons-k4.txt");
    let stdout = run(bin().args(["polygons", "--k", "4", "--out"]).arg(&path))?;
    expect("reported count", stdout.trim(), "335")?;
    let cache = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    expect("header", cache.lines().next(), Some("k=4 diameter=4 count=335"))?;
    expect("cache lines", cache.lines().count(), 336)?;
    Ok("335 polygons".into())
}

fn criterion_2() -> Outcome {
    let cert = check_certificate(4, 8, 7, 7)?;
    Ok(format!("StrictlyLess(8), lower 7, delta 7, {} surviving shellings", cert.counters.shellings_surviving))
}

fn criterion_3() -> Outcome {
    let cert = check_certificate(5, 10, 9, 9)?;
    expect("step4_nodes", cert.counters.step4_nodes, 0)?;
    expect("hulls (step 4)", cert.counters.hulls, 0)?;
    Ok("StrictlyLess(10), search stops at Step 3, delta 9".into())
}

fn criterion_4() -> Outcome {
    check_certificate(3, 7, 6, 6)?;
    Ok("StrictlyLess(7), delta 6".into())
}

fn criterion_5() -> Outcome {
    let d4 = run(bin().args(["minkowski", "--preset", "d3k4"]))?;
    let d5 = run(bin().args(["minkowski", "--preset", "d3k5"]))?;
    for (out, k, diameter) in [(&d4, 4, 7), (&d5, 5, 9)] {
        if !out.contains(&format!("fits=true k={k} span={k},{k},{k}")) {
            return Err(format!("k={k}: no fit reported in {out:?}"));
        }
        if !out.contains(&format!("diameter={diameter}\n")) {
            return Err(format!("k={k}: expected diameter {diameter} in {out:?}"));
        }
    }
    Ok("d3k4 fits [0,4]^3 with diameter 7, d3k5 fits [0,5]^3 with diameter 9".into())
}

fn criterion_6() -> Outcome {
    let got: Vec<usize> = (1..=6).map(delta2).collect();
    expect("delta2(1..=6)", got.clone(), vec![2, 3, 4, 4, 5, 6])?;
    let enumerated: Vec<usize> = (1..=6).map(|k| enumerate_family(k).target_diameter()).collect();
    expect("family diameters", enumerated, got)?;
    Ok("2,3,4,4,5,6".into())
}

fn criterion_7() -> Outcome {
    let us: Vec<Point3> = canonical_pairs(3, 4, SymmetryMode::Paper)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|p| p.u)
        .collect();
    expect("paper-mode u", us, vec![[0, 0, 0], [0, 0, 1], [0, 0, 2], [0, 1, 1], [0, 1, 2], [0, 2, 2]])?;
    Ok("six representatives".into())
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=15);
        let points: Vec<Point3> = (0..n).map(|_| [0; 3].map(|_: i64| rng.gen_range(0..=5))).collect();
        common::check_hull(&points)?;
    }

    for k in 1..=3 {
        let (_, oracle) = common::oracle_family(k);
        expect(&format!("family k={k}"), enumerate_family(k).members(), oracle.as_slice())?;
    }

    for d in 1..=3 {
        common::check_group_axioms(d)?;
    }

    for k in [3, 4, 5] {
        let path = scratch(&format!("cert-k{k}.json"));
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let cert = Certificate::from_json(&text).map_err(|e| e.to_string())?;
        expect("re-serialized certificate", cert.to_json().map_err(|e| e.to_string())?, text)?;
        verify(&cert).map_err(|e| format!("k={k}: {e}"))?;
        run(bin().arg("verify").arg("--certificate").arg(&path))?;

        let mut forged = cert.clone();
        forged.lower_witness.diameter += 1;
        if verify(&forged).is_ok() {
            return Err(format!("k={k}: forged lower witness accepted"));
        }
    }

    let mut kinds = Vec::new();
    for symmetry in [SymmetryMode::Full, SymmetryMode::Paper] {
        for pruning in [PruningMode::Exhaustive, PruningMode::Paper] {
            let config = Config { symmetry, pruning, ..Config::default() };
            kinds.push(decide_upper(3, 4, &config).map_err(|e| e.to_string())?.kind);
        }
    }
    expect("decision kinds across modes", kinds, vec![DecisionKind::StrictlyLess; 4])?;

    Ok("hull oracle x1000, polygon oracle k<=3, group axioms d<=3, replay, mode invariance".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("polygons --k 4 reports 335", criterion_1),
        ("compute (3,4)", criterion_2),
        ("compute (3,5)", criterion_3),
        ("compute (3,3)", criterion_4),
        ("minkowski presets", criterion_5),
        ("delta2 row", criterion_6),
        ("paper-mode representatives for (3,4)", criterion_7),
        ("property suites", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
