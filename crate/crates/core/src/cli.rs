//! Command-line front end. Every subcommand prints exactly the JSON the
//! corresponding library call serializes to, followed by a newline.
//!
//! Exit codes: 0 success, 1 failed check or computation, 2 usage error or
//! violated precondition.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use crate::farey::farey_ball_with;
use crate::graph::{automorphism_group_with, nerve, Complex2};
use crate::level::{farey_level_with, gstar_level_with};
use crate::product::{level_factors, product_pants_with, product_star_with};
use crate::reconstruct::{fibers_through, reconstruct_report, Options};
use crate::suite::{render_table, run_suite};
use crate::surface::SurfaceSpec;
use crate::tower::tower_report;
use crate::{Error, Limits};

#[derive(Parser, Debug)]
#[command(name = "curvex", version, about = "Finite-level curve complexes and Farey quotients")]
pub struct CommandConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; dot is lossy and only available for complexes.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the payload here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Give up on reconstruction after this many seconds.
    #[arg(long, global = true)]
    pub deadline: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Farey tessellation ball around the base edge.
    Farey {
        #[arg(long)]
        depth: u32,
    },
    /// Level-m quotient (or its complete graph with --star).
    Quotient {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        star: bool,
    },
    /// Product complex of a disconnected surface at level m.
    Product {
        #[arg(long)]
        surface: SurfaceSpec,
        #[arg(long)]
        level: u32,
        #[arg(long)]
        star: bool,
    },
    /// Detect the sub-product family and rebuild the curve complex.
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Automorphism group of a complex.
    Aut {
        #[arg(long = "in")]
        input: PathBuf,
        /// Respect triangles (and report the orientation split).
        #[arg(long)]
        triangles: bool,
    },
    /// Tower of level quotients with projections.
    Tower {
        #[arg(long)]
        surface: SurfaceSpec,
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<u32>,
    },
    /// Nerve of the recorded fibers, or of the triangle-closure fibers.
    Nerve {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run an invariant suite and print a pass/fail table.
    Verify {
        #[arg(long, default_value = "default")]
        suite: String,
    },
}

enum Payload {
    Complex(Complex2),
    Json(String),
    Table(String),
}

struct Outcome {
    payload: Payload,
    ok: bool,
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

fn read_complex(path: &PathBuf) -> Result<Complex2, Error> {
    let raw = std::fs::read_to_string(path)?;
    Ok(Complex2::from_json(&raw)?)
}

/// Fibers through every vertex, deduplicated.
fn global_fibers(c: &Complex2) -> Result<Vec<Vec<usize>>, Error> {
    let mut all = BTreeSet::new();
    for v in 0..c.vertex_count() {
        all.extend(fibers_through(c, v)?);
    }
    Ok(all.into_iter().collect())
}

fn execute(cfg: &CommandConfig, limits: &Limits) -> Result<Outcome, Error> {
    let done = |payload| Ok(Outcome { payload, ok: true });
    match &cfg.command {
        Command::Farey { depth } => done(Payload::Complex(farey_ball_with(*depth, limits)?)),
        Command::Quotient { level, star } => {
            let c = if *star {
                gstar_level_with(*level, limits)?
            } else {
                farey_level_with(*level, limits)?
            };
            done(Payload::Complex(c))
        }
        Command::Product { surface, level, star } => {
            let factors = level_factors(surface, *level, *star, limits)?;
            let p = if *star {
                product_star_with(&factors, limits)?
            } else {
                product_pants_with(&factors, limits)?
            };
            done(Payload::Complex(p.flattened))
        }
        Command::Reconstruct { input } => {
            let c = read_complex(input)?;
            let opts = Options {
                limits: *limits,
                deadline: cfg.deadline.map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0))),
                ..Options::default()
            };
            let report = reconstruct_report(&c, &opts)?;
            Ok(Outcome {
                ok: report.roundtrip_iso,
                payload: Payload::Json(json(&report)),
            })
        }
        Command::Aut { input, triangles } => {
            let c = read_complex(input)?;
            done(Payload::Json(json(&automorphism_group_with(&c, *triangles, limits)?)))
        }
        Command::Tower { surface, levels } => {
            let report = tower_report(surface, levels, limits)?;
            Ok(Outcome {
                ok: report.verified && report.composition_law,
                payload: Payload::Json(json(&report)),
            })
        }
        Command::Nerve { input } => {
            let c = read_complex(input)?;
            let cover = match c.fibers() {
                Some(f) => f,
                None => global_fibers(&c)?,
            };
            done(Payload::Complex(nerve(&c, &cover)?))
        }
        Command::Verify { suite } => {
            let rows = run_suite(suite).ok_or_else(|| {
                Error::Io(std::io::Error::new(
                    std::io::ErrorKind::InvalidInput,
                    format!("unknown suite {suite:?}"),
                ))
            })?;
            Ok(Outcome {
                ok: rows.iter().all(|r| r.passed),
                payload: Payload::Table(render_table(&rows)),
            })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CommandConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let limits = Limits::from_env();
    let outcome = match execute(&cfg, &limits) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return if e.is_precondition() { 2 } else { 1 };
        }
    };
    let text = match (&outcome.payload, cfg.format) {
        (Payload::Complex(c), Format::Json) => c.to_json() + "\n",
        (Payload::Complex(c), Format::Dot) => c.to_dot(),
        (Payload::Json(s), Format::Json) => format!("{s}\n"),
        (Payload::Table(s), _) => s.clone(),
        (Payload::Json(_), Format::Dot) => {
            let _ = writeln!(stderr, "error: dot output is only available for complexes");
            return 2;
        }
    };
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &text),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: io: {e}");
        return 1;
    }
    if outcome.ok {
        0
    } else {
        1
    }
}
