//! `repclus` - inspect, classify, enumerate and draw diagonal configurations
//! of the repetitive polygon.
//!
//! Output is JSON-lines on stdout; progress and summary lines go to stderr.
//! Exit codes: 0 success, 1 domain error (with a diagnostics payload on
//! stderr), 2 usage error, 3 oracle mismatch.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use repclus_core::draw::{self, DrawFormat};
use repclus_core::enumerate::{self, EnumError, Enumeration, EnumerationRequest};
use repclus_core::oracle;
use repclus_core::quiver::QuiverFormat;
use repclus_core::{
    build_ar_quiver, classify, export_quiver, torsion_pair_of, DiagonalSet, Generator, Mode,
    PairTable, PolygonParams, Target,
};

#[derive(Parser)]
#[command(name = "repclus", version, about = "Diagonal combinatorics of repetitive polygons")]
struct Cli {
    /// Rank parameter (vertices per region = n + 3)
    #[arg(long, global = true, default_value_t = 1)]
    n: u32,
    /// Number of regions
    #[arg(long, global = true, default_value_t = 1)]
    p: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every diagonal in canonical order, one JSON triple per line
    ListDiagonals,
    /// Classify a set and report Ptolemy violations
    Check(SetArg),
    /// Smallest Ptolemy superset of a set
    Closure(SetArg),
    /// A perp set of the given set
    Perp {
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        set: SetArg,
    },
    /// The torsion pair generated by a Ptolemy set
    TorsionPair(SetArg),
    /// Enumerate a family of sets
    Enumerate {
        #[arg(value_enum)]
        target: TargetArg,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        count_only: bool,
        /// Reduce the output to orbit representatives under this generator
        #[arg(long, value_enum)]
        orbits: Option<GeneratorArg>,
    },
    /// Build and export the translation quiver of diagonals
    Quiver {
        #[arg(long, value_enum)]
        format: QuiverFormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run differential oracles at the given parameters
    Verify {
        #[arg(value_enum)]
        oracle: OracleArg,
    },
    /// Render the polygon with a set of diagonals
    Draw {
        #[command(flatten)]
        set: SetArg,
        #[arg(long, value_enum)]
        format: DrawFormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SetArg {
    /// Semicolon-separated triples, e.g. "2,5,1;4,6,3"
    #[arg(long, default_value = "")]
    set: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Ptolemy,
    TorsionPairs,
    ClusterTilting,
    MaximalRigid,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Powerset,
    ClosureSystem,
    Structural,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeneratorArg {
    Rho,
    Shift,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Ext,
    Hom,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuiverFormatArg {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DrawFormatArg {
    Svg,
    Tikz,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Crossing,
    Perp,
    Theorem,
    All,
}

enum Failure {
    Usage(String),
    Domain(String),
    OracleMismatch(u64),
}

impl Failure {
    fn report(&self) -> ExitCode {
        match self {
            Failure::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            Failure::Domain(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
            Failure::OracleMismatch(count) => {
                eprintln!("error: {count} oracle mismatch(es)");
                ExitCode::from(3)
            }
        }
    }
}

fn enum_error(err: EnumError) -> Failure {
    match err {
        EnumError::InvalidMode { .. } | EnumError::BadThreadCount(_) => {
            Failure::Usage(err.to_string())
        }
        _ => Failure::Domain(err.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => failure.report(),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let params =
        PolygonParams::new(cli.n, cli.p).map_err(|e| Failure::Usage(e.to_string()))?;

    match cli.command {
        Command::ListDiagonals => {
            for d in params.diagonals() {
                println!("{}", serde_json::to_string(&d).unwrap());
            }
            Ok(())
        }
        Command::Check(set_arg) => {
            let table = PairTable::new(params);
            let s = parse_set(params, &set_arg.set)?;
            let report = classify(&table, &s);
            println!("{}", serde_json::to_string(&report).unwrap());
            for violation in table.violations(&s) {
                println!("{}", serde_json::to_string(&violation).unwrap());
            }
            Ok(())
        }
        Command::Closure(set_arg) => {
            let table = PairTable::new(params);
            let s = parse_set(params, &set_arg.set)?;
            println!("{}", serde_json::to_string(&table.ptolemy_closure(&s)).unwrap());
            Ok(())
        }
        Command::Perp { side, kind, set } => {
            let table = PairTable::new(params);
            let s = parse_set(params, &set.set)?;
            let result = match (kind, side) {
                (KindArg::Ext, SideArg::Right) => table.ext_right_perp(&s),
                (KindArg::Ext, SideArg::Left) => table.ext_left_perp(&s),
                (KindArg::Hom, SideArg::Right) => table.hom_right_perp(&s),
                (KindArg::Hom, SideArg::Left) => table.hom_left_perp(&s),
            };
            println!("{}", serde_json::to_string(&result).unwrap());
            Ok(())
        }
        Command::TorsionPair(set_arg) => {
            let table = PairTable::new(params);
            let s = parse_set(params, &set_arg.set)?;
            match torsion_pair_of(&table, &s) {
                Ok(pair) => {
                    println!("{}", serde_json::to_string(&pair).unwrap());
                    Ok(())
                }
                Err(err) => {
                    for violation in &err.violations {
                        eprintln!("{}", serde_json::to_string(violation).unwrap());
                    }
                    Err(Failure::Domain(err.to_string()))
                }
            }
        }
        Command::Enumerate { target, mode, count_only, orbits } => {
            let table = PairTable::new(params);
            let target = match target {
                TargetArg::Ptolemy => Target::Ptolemy,
                TargetArg::TorsionPairs => Target::TorsionPairs,
                TargetArg::ClusterTilting => Target::ClusterTilting,
                TargetArg::MaximalRigid => Target::MaximalRigid,
            };
            let mut req = EnumerationRequest::new(params, target);
            if let Some(mode) = mode {
                req.mode = match mode {
                    ModeArg::Powerset => Mode::Powerset,
                    ModeArg::ClosureSystem => Mode::ClosureSystem,
                    ModeArg::Structural => Mode::Structural,
                };
            }
            req.count_only = count_only;
            req.orbit_reduction = orbits.map(|g| match g {
                GeneratorArg::Rho => Generator::Rho,
                GeneratorArg::Shift => Generator::Shift,
            });
            let started = Instant::now();
            let outcome = enumerate::run_request(&table, &req).map_err(enum_error)?;
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            let count = match &outcome {
                Enumeration::Count(c) => {
                    writeln!(lock, "{c}").unwrap();
                    *c
                }
                Enumeration::Sets(sets) => {
                    for s in sets {
                        writeln!(lock, "{}", serde_json::to_string(s).unwrap()).unwrap();
                    }
                    sets.len() as u64
                }
                Enumeration::Pairs(pairs) => {
                    for pair in pairs {
                        writeln!(lock, "{}", serde_json::to_string(pair).unwrap()).unwrap();
                    }
                    pairs.len() as u64
                }
                Enumeration::Orbits(orbits) => {
                    for orbit in orbits {
                        writeln!(lock, "{}", serde_json::to_string(orbit).unwrap()).unwrap();
                    }
                    orbits.len() as u64
                }
            };
            eprintln!(
                "# n={} p={} count={count} elapsed_ms={}",
                params.n(),
                params.p(),
                started.elapsed().as_millis()
            );
            Ok(())
        }
        Command::Quiver { format, out } => {
            let q = build_ar_quiver(params);
            let text = match format {
                QuiverFormatArg::Dot => export_quiver(&q, QuiverFormat::Dot),
                QuiverFormatArg::Json => export_quiver(&q, QuiverFormat::Json),
            };
            emit(text, out)
        }
        Command::Verify { oracle } => {
            let table = PairTable::new(params);
            let reports = match oracle {
                OracleArg::Crossing => vec![oracle::crossing_oracle(params)],
                OracleArg::Perp => vec![oracle::perp_oracle(&table)],
                OracleArg::Theorem => {
                    vec![oracle::theorem_oracle(&table, enumerate::DEFAULT_BIT_CAP)
                        .map_err(enum_error)?]
                }
                OracleArg::All => {
                    vec![
                        oracle::crossing_oracle(params),
                        oracle::perp_oracle(&table),
                        oracle::theorem_oracle(&table, enumerate::DEFAULT_BIT_CAP)
                            .map_err(enum_error)?,
                    ]
                }
            };
            let mut mismatches = 0u64;
            for report in &reports {
                println!("{}", serde_json::to_string(report).unwrap());
                mismatches += report.mismatches.len() as u64;
            }
            if mismatches > 0 {
                return Err(Failure::OracleMismatch(mismatches));
            }
            Ok(())
        }
        Command::Draw { set, format, out } => {
            let s = parse_set(params, &set.set)?;
            let text = match format {
                DrawFormatArg::Svg => draw::render(&s, DrawFormat::Svg),
                DrawFormatArg::Tikz => draw::render(&s, DrawFormat::Tikz),
            };
            emit(text, out)
        }
    }
}

fn parse_set(params: PolygonParams, text: &str) -> Result<DiagonalSet, Failure> {
    DiagonalSet::parse(params, text)
        .map_err(|e| Failure::Usage(format!("invalid --set value: {e}")))
}

fn emit(text: String, out: Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
