//! Command-line interface for the polycube rep-tile toolkit.
//!
//! Exit codes: 0 success/verified, 1 verification or validation failure,
//! 2 usage or input error, 3 search budget exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use reptiles::certify::{CertifyOutcome, LimitKind, SearchLimits, TilingOutcome};
use reptiles::construct::{construct_reptile, construction_certificate, validate_arc_diagram};
use reptiles::io;
use reptiles::lattice::{Polycube, SymmetryMode};
use reptiles::topology;
use reptiles::{betti_numbers, fixtures};

const EXIT_OK: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

#[derive(Parser)]
#[command(name = "reptiles", version, about = "Polycube rep-tile toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Proper,
    Full,
}

impl From<ModeArg> for SymmetryMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Proper => SymmetryMode::Proper,
            ModeArg::Full => SymmetryMode::Full,
        }
    }
}

#[derive(Args, Clone, Copy)]
struct LimitArgs {
    /// Maximum number of search-tree nodes.
    #[arg(long)]
    node_budget: Option<u64>,
    /// Maximum wall-clock time in seconds.
    #[arg(long)]
    time_budget: Option<f64>,
}

impl From<LimitArgs> for SearchLimits {
    fn from(l: LimitArgs) -> Self {
        SearchLimits {
            max_nodes: l.node_budget,
            max_time: l.time_budget.map(Duration::from_secs_f64),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a rep-tile from an arc diagram.
    Construct {
        /// Arc-diagram file (`arcs v1`).
        #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
        arcs: Option<PathBuf>,
        /// Built-in diagram: empty-m1, column-m3, figure-4.
        #[arg(long)]
        builtin: Option<String>,
        /// Output polycube file.
        #[arg(short, long)]
        output: PathBuf,
        /// Also write the construction's tiling certificate (JSON).
        #[arg(long)]
        emit_cert: Option<PathBuf>,
    },
    /// Report cell count, connectivity, manifoldness, Betti numbers and
    /// boundary components of a polycube.
    Invariants { poly: PathBuf },
    /// Search for a decomposition of the s-scaled polycube into s^3
    /// congruent copies of itself.
    Certify {
        poly: PathBuf,
        #[arg(long)]
        scale: i32,
        #[arg(long, value_enum, default_value = "proper")]
        mode: ModeArg,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long)]
        emit_cert: Option<PathBuf>,
    },
    /// Check a tiling certificate file.
    VerifyCert { cert: PathBuf },
    /// Search for a tiling of a target polycube by copies of a piece.
    Tile {
        target: PathBuf,
        piece: PathBuf,
        #[arg(long, value_enum, default_value = "proper")]
        mode: ModeArg,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// List congruence classes of face-connected polycubes with n cells.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "proper")]
        mode: ModeArg,
        #[arg(long)]
        count_only: bool,
    },
    /// Try to certify every polycube up to a size as an s^3-index rep-tile.
    Search {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        scale: i32,
        #[arg(long, value_enum, default_value = "proper")]
        mode: ModeArg,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Write the boundary surface as a Wavefront OBJ mesh.
    ExportObj {
        poly: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write a shipped fixture file: fig1, empty-m1, column-m3, figure-4.
    Fixture {
        name: String,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("{}: {}", path.display(), e))
}

fn load_polycube(path: &Path) -> Result<Polycube, String> {
    let text = read_file(path)?;
    let (poly, warnings) = io::parse_polycube(&text).map_err(|e| e.to_string())?;
    for w in warnings {
        eprintln!(
            "warning: {}: line {}: {}",
            path.display(),
            w.line,
            w.message
        );
    }
    Ok(poly)
}

fn mode_name(mode: SymmetryMode) -> &'static str {
    match mode {
        SymmetryMode::Proper => "proper",
        SymmetryMode::Full => "full",
    }
}

fn limit_name(kind: LimitKind) -> &'static str {
    match kind {
        LimitKind::Nodes => "node budget",
        LimitKind::WallClock => "time budget",
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Construct {
            arcs,
            builtin,
            output,
            emit_cert,
        } => {
            let diagram = match (arcs, builtin) {
                (Some(path), None) => {
                    io::parse_arc_diagram(&read_file(&path)?).map_err(|e| e.to_string())?
                }
                (None, Some(name)) => fixtures::builtin_diagram(&name)
                    .ok_or_else(|| format!("unknown builtin diagram {name:?}"))?,
                _ => return Err("give exactly one of --arcs or --builtin".into()),
            };
            if let Err(violations) = validate_arc_diagram(&diagram) {
                println!("invalid arc diagram:");
                for v in violations {
                    println!("  {v}");
                }
                return Ok(EXIT_FAILED);
            }
            let result = construct_reptile(&diagram).map_err(|e| e.to_string())?;
            write_file(&output, &io::emit_polycube(&result.x))?;
            println!(
                "constructed m={} arcs={} cells={}",
                result.m,
                result.arc_count,
                result.x.len()
            );
            if let Some(cert_path) = emit_cert {
                let cert = construction_certificate(&result);
                write_file(&cert_path, &io::emit_certificate(&cert))?;
                println!(
                    "certificate k={} scale={}",
                    cert.placements.len(),
                    2 * result.m
                );
            }
            Ok(EXIT_OK)
        }

        Command::Invariants { poly } => {
            let p = load_polycube(&poly)?;
            println!("cells: {}", p.len());
            println!("face-connected: {}", p.is_face_connected());
            let manifold = p.is_manifold();
            println!("manifold: {manifold}");
            println!("betti: {}", betti_numbers(&p));
            if manifold {
                let surface = topology::boundary_surface(&p).expect("checked manifold");
                let comps = topology::surface_components(&surface);
                println!("boundary-components: {}", comps.len());
                for (i, c) in comps.iter().enumerate() {
                    println!(
                        "  component {}: quads={} euler={} genus={}",
                        i, c.quad_count, c.euler_characteristic, c.genus
                    );
                }
                println!("boundary-connected: {}", comps.len() == 1);
            } else {
                println!("boundary-components: n/a (not a manifold)");
            }
            Ok(EXIT_OK)
        }

        Command::Certify {
            poly,
            scale,
            mode,
            limits,
            emit_cert,
        } => {
            if scale < 2 {
                return Err("--scale must be at least 2".into());
            }
            let p = load_polycube(&poly)?;
            let result = reptiles::certify_reptile(&p, scale, mode.into(), limits.into());
            println!(
                "nodes: {} elapsed: {:.3}s",
                result.stats.nodes,
                result.stats.elapsed.as_secs_f64()
            );
            match result.outcome {
                CertifyOutcome::Certified(cert) => {
                    println!("certified: k={} scale={}", cert.placements.len(), scale);
                    if let Some(path) = emit_cert {
                        write_file(&path, &io::emit_certificate(&cert))?;
                    }
                    Ok(EXIT_OK)
                }
                CertifyOutcome::Exhausted => {
                    println!("exhausted: no lattice-aligned tiling at scale {scale}");
                    Ok(EXIT_FAILED)
                }
                CertifyOutcome::Timeout(kind) => {
                    println!("timeout: {} exceeded", limit_name(kind));
                    Ok(EXIT_TIMEOUT)
                }
            }
        }

        Command::VerifyCert { cert } => {
            let cert = io::parse_certificate(&read_file(&cert)?).map_err(|e| e.to_string())?;
            match reptiles::verify_certificate(&cert) {
                Ok(()) => {
                    println!(
                        "ok: k={} piece={} target={} mode={}",
                        cert.placements.len(),
                        cert.piece.len(),
                        cert.target.len(),
                        mode_name(cert.mode)
                    );
                    Ok(EXIT_OK)
                }
                Err(violation) => {
                    println!("violation: {violation}");
                    Ok(EXIT_FAILED)
                }
            }
        }

        Command::Tile {
            target,
            piece,
            mode,
            limits,
        } => {
            let target = load_polycube(&target)?;
            let piece = load_polycube(&piece)?;
            let result = reptiles::find_tiling(&target, &piece, mode.into(), limits.into());
            println!(
                "nodes: {} elapsed: {:.3}s",
                result.stats.nodes,
                result.stats.elapsed.as_secs_f64()
            );
            match result.outcome {
                TilingOutcome::Found(placements) => {
                    println!("found: {} placements", placements.len());
                    for g in &placements {
                        println!("  {g}");
                    }
                    Ok(EXIT_OK)
                }
                TilingOutcome::Exhausted => {
                    println!("exhausted: no tiling");
                    Ok(EXIT_FAILED)
                }
                TilingOutcome::Timeout(kind) => {
                    println!("timeout: {} exceeded", limit_name(kind));
                    Ok(EXIT_TIMEOUT)
                }
            }
        }

        Command::Enumerate {
            n,
            mode,
            count_only,
        } => {
            if n < 1 {
                return Err("--n must be at least 1".into());
            }
            let classes: Vec<Polycube> = reptiles::enumerate_polycubes(n, mode.into()).collect();
            if count_only {
                println!("count: {}", classes.len());
            } else {
                for (i, p) in classes.iter().enumerate() {
                    let cells: Vec<String> = p.cells().iter().map(|c| c.to_string()).collect();
                    println!("{}: {}", i, cells.join(" "));
                }
                println!("count: {}", classes.len());
            }
            Ok(EXIT_OK)
        }

        Command::Search {
            n_max,
            scale,
            mode,
            limits,
        } => {
            if n_max < 1 {
                return Err("--n-max must be at least 1".into());
            }
            if scale < 2 {
                return Err("--scale must be at least 2".into());
            }
            let report = reptiles::search_reptiles(n_max, scale, mode.into(), limits.into());
            for hit in &report.hits {
                let cells: Vec<String> = hit.piece.cells().iter().map(|c| c.to_string()).collect();
                let genera: Vec<String> = hit.genera.iter().map(|g| g.to_string()).collect();
                println!(
                    "certified: n={} k={} betti={} genus=[{}] cells: {}",
                    hit.piece.len(),
                    hit.certificate.placements.len(),
                    hit.betti,
                    genera.join(","),
                    cells.join(" ")
                );
            }
            for (piece, kind) in &report.timeouts {
                println!("timeout: n={} ({})", piece.len(), limit_name(*kind));
            }
            println!(
                "examined: {} skipped: {} certified: {} timeouts: {}",
                report.pieces_examined,
                report.pieces_skipped,
                report.hits.len(),
                report.timeouts.len()
            );
            if report.timeouts.is_empty() {
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_TIMEOUT)
            }
        }

        Command::ExportObj { poly, output } => {
            let p = load_polycube(&poly)?;
            let obj = io::export_obj(&p).map_err(|e| e.to_string())?;
            let vertices = obj.lines().filter(|l| l.starts_with("v ")).count();
            let faces = obj.lines().filter(|l| l.starts_with("f ")).count();
            write_file(&output, &obj)?;
            println!(
                "wrote {}: {} vertices, {} faces",
                output.display(),
                vertices,
                faces
            );
            Ok(EXIT_OK)
        }

        Command::Fixture { name, output } => {
            let contents = fixtures::fixture_file(&name).ok_or_else(|| {
                format!(
                    "unknown fixture {name:?}; available: {}",
                    fixtures::FIXTURE_NAMES.join(", ")
                )
            })?;
            write_file(&output, contents)?;
            println!("wrote {}", output.display());
            Ok(EXIT_OK)
        }
    }
}
