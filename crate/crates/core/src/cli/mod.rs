//! Command-line front end. [`run`] returns the process exit code so tests
//! can drive it without spawning a process.
//!
//! Exit codes: 0 success (or a P-position for `classify`), 10 for an
//! N-position, 1 for usage and input errors, 2 when verification fails.

pub mod bench;
pub mod export;
pub mod play;
pub mod verify;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::q_sequences;
use crate::error::Error;
use crate::model::{GameParams, Position};
use crate::numeration::NumerationSystem;
use crate::oracle::ab_by_mex;
use crate::strategy::{Engine, Outcome};
use export::Format;
use verify::{Suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_N_POSITION: i32 = 10;

#[derive(Parser, Debug)]
#[command(
    name = "heapgame",
    version,
    about = "Two-heap take-away games where a joint move takes k and l with l < s*k + t"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
pub struct GameArgs {
    #[arg(long = "s", default_value_t = 2)]
    pub s: u64,
    #[arg(long = "t", default_value_t = 2)]
    pub t: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    /// rows n, A_n, B_n of the P-positions
    Ab,
    /// each integer written in the game's numeration system
    Representations,
    /// the Q sequence with first and last occurrences
    Q,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print one of the sequence tables
    Tables {
        kind: TableKind,
        #[command(flatten)]
        game: GameArgs,
        /// last row index (ab, q)
        #[arg(long, default_value_t = 20)]
        n: u64,
        /// largest integer (representations)
        #[arg(long, default_value_t = 60)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a position; exit code 0 for P, 10 for N
    Classify {
        x: String,
        y: String,
        #[command(flatten)]
        game: GameArgs,
    },
    /// Play against the engine on stdin/stdout
    Play {
        #[command(flatten)]
        game: GameArgs,
        /// starting heaps; random if omitted
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        start: Option<Vec<u64>>,
        /// largest heap for a random start
        #[arg(long, default_value_t = 30)]
        max: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run cross-checks over a grid of games
    Verify {
        /// restrict to one game; both --s and --t are needed
        #[arg(long = "s")]
        s: Option<u64>,
        #[arg(long = "t")]
        t: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        n: u64,
        /// heap bound for exhaustive suites; 0 skips them
        #[arg(long, default_value_t = 150)]
        bound: u64,
        /// largest integer for the numeration suites
        #[arg(long, default_value_t = 100_000)]
        max: u64,
        #[arg(long, value_enum)]
        only: Vec<Suite>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the numeration strategy against the table strategy
    Bench {
        #[command(flatten)]
        game: GameArgs,
        /// random positions for the numeration strategy
        #[arg(long, default_value_t = 10_000)]
        n: u64,
        /// largest heap for the table strategy
        #[arg(long, default_value_t = 1_000_000)]
        max: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

fn params(game: GameArgs) -> Result<GameParams, String> {
    GameParams::new(game.s, game.t).map_err(|e| e.to_string())
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn parse_heap(s: &str) -> Result<u64, String> {
    s.parse::<u64>().map_err(|e| match e.kind() {
        std::num::IntErrorKind::PosOverflow => format!("heap {s} overflows 64 bits"),
        _ => format!("not a heap size: {s}"),
    })
}

fn run_command(cmd: Command, stdout: &mut dyn Write) -> Result<i32, String> {
    match cmd {
        Command::Tables {
            kind,
            game,
            n,
            max,
            format,
            out,
        } => {
            let p = params(game)?;
            let text = match kind {
                TableKind::Ab => {
                    export::render_ab(&ab_by_mex(p, n).map_err(|e| e.to_string())?, format)
                }
                TableKind::Representations => {
                    let sys = NumerationSystem::new(p).map_err(|e| e.to_string())?;
                    export::render_representations(&sys, max, format)
                }
                TableKind::Q => export::render_q(&q_sequences(p, n), format),
            };
            emit(&text, out.as_ref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Classify { x, y, game } => {
            let p = params(game)?;
            let pos = Position::new(parse_heap(&x)?, parse_heap(&y)?);
            let engine = Engine::new(p).map_err(|e| e.to_string())?;
            let verdict = engine.verdict(pos).map_err(|e| e.to_string())?;
            let line = match verdict.witness {
                Some(mv) if verdict.kind == Outcome::N => {
                    let (a, b) = mv.amounts();
                    format!("N: {mv} -> ({},{})\n", pos.x - a, pos.y - b)
                }
                _ => "P\n".to_string(),
            };
            emit(&line, None, stdout)?;
            Ok(if verdict.kind == Outcome::P {
                EXIT_OK
            } else {
                EXIT_N_POSITION
            })
        }
        Command::Play {
            game,
            start,
            max,
            seed,
        } => {
            let p = params(game)?;
            let engine = Engine::new(p).map_err(|e| e.to_string())?;
            let start = match start.as_deref() {
                Some([x, y]) => Position::new(*x, *y),
                _ => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    Position::new(rng.gen_range(1..=max.max(1)), rng.gen_range(1..=max.max(1)))
                }
            };
            let stdin = io::stdin();
            let mut session = play::PlaySession::new(&engine, start, stdin.lock(), &mut *stdout);
            session.run().map_err(|e| e.to_string())?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            s,
            t,
            n,
            bound,
            max,
            only,
            format,
            out,
        } => {
            let cells = match (s, t) {
                (None, None) => VerifyConfig::default_grid(),
                (Some(s), Some(t)) => vec![GameParams::new(s, t).map_err(|e| e.to_string())?],
                _ => return Err("give both --s and --t, or neither for the default grid".into()),
            };
            if bound > crate::oracle::RETROGRADE_CAP {
                return Err(Error::ResourceLimit {
                    what: "bound",
                    requested: bound,
                    cap: crate::oracle::RETROGRADE_CAP,
                }
                .to_string());
            }
            let suites = if only.is_empty() {
                Suite::ALL.to_vec()
            } else {
                only
            };
            let report = verify::run_suites(
                &suites,
                &VerifyConfig {
                    cells,
                    n,
                    bound,
                    max,
                },
            );
            let text = match format {
                Format::Json => {
                    serde_json::to_string_pretty(&report).expect("plain data serializes") + "\n"
                }
                _ => report.render_plain(),
            };
            emit(&text, out.as_ref(), stdout)?;
            Ok(if report.passed {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
        Command::Bench {
            game,
            n,
            max,
            seed,
            format,
        } => {
            let p = params(game)?;
            let report = bench::run_bench(p, seed, n, max).map_err(|e| e.to_string())?;
            let text = match format {
                Format::Json => {
                    serde_json::to_string_pretty(&report).expect("plain data serializes") + "\n"
                }
                _ => report.render_plain(),
            };
            emit(&text, None, stdout)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match run_command(cli.command, stdout) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}
