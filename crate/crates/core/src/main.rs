use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use lattice_diameter::driver::{compute_delta, verify, Certificate, Config};
use lattice_diameter::innerpoints::PruningMode;
use lattice_diameter::minkowski::{witness_report, GeneratorSet, Preset};
use lattice_diameter::polygons::enumerate_family;
use lattice_diameter::symmetry::SymmetryMode;
use lattice_diameter::Result;

#[derive(Parser)]
#[command(version, about = "Exact search for the largest diameter of lattice polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide δ(d,k) and write a certificate.
    Compute {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: i64,
        #[arg(long, value_enum, default_value = "full")]
        symmetry: SymmetryMode,
        #[arg(long, value_enum, default_value = "exhaustive")]
        pruning: PruningMode,
        /// Worker threads (default: one per core).
        #[arg(long)]
        jobs: Option<usize>,
        /// Polygon family cache to use instead of enumerating.
        #[arg(long)]
        family_cache: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the lattice polygons of maximal diameter in [0,k]^2.
    Polygons {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report on a Minkowski sum of lattice vectors.
    #[command(group(ArgGroup::new("source").required(true).args(["preset", "vectors"])))]
    Minkowski {
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        /// One comma-separated vector per line.
        #[arg(long, requires = "k")]
        vectors: Option<PathBuf>,
        /// Grid size (defaults to the preset's).
        #[arg(long)]
        k: Option<i64>,
    },
    /// Replay a certificate.
    Verify {
        #[arg(long)]
        certificate: PathBuf,
    },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Compute { d, k, symmetry, pruning, jobs, family_cache, out } => {
            let config = Config { symmetry, pruning, jobs, family_cache };
            let json = compute_delta(d, k, &config)?.to_json()?;
            match out {
                Some(path) => std::fs::write(path, json)?,
                None => print!("{json}"),
            }
        }
        Command::Polygons { k, out } => {
            let family = enumerate_family(k);
            if let Some(path) = out {
                family.write_cache(&path)?;
            }
            println!("{}", family.len());
        }
        Command::Minkowski { preset, vectors, k } => {
            let (generators, k) = match (preset, vectors) {
                (Some(p), _) => (p.generators(), k.unwrap_or(p.k())),
                (None, Some(path)) => (GeneratorSet::from_file(&path)?, k.expect("clap requires --k")),
                (None, None) => unreachable!("clap requires a source"),
            };
            let r = witness_report(&generators, k)?;
            println!("fits=true k={} span={},{},{}", r.k, r.span[0], r.span[1], r.span[2]);
            println!("vertices={} edges={} facets={}", r.vertices, r.edges, r.facets);
            println!("diameter={}", r.diameter);
        }
        Command::Verify { certificate } => {
            let cert = Certificate::from_json(&std::fs::read_to_string(certificate)?)?;
            let s = verify(&cert)?;
            println!(
                "ok d={} k={} delta={} polytopes={} shellings={}",
                cert.d,
                cert.k,
                cert.delta.map_or("null".to_string(), |v| v.to_string()),
                s.polytopes_rebuilt,
                s.shellings_rebuilt
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
