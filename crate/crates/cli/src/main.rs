//! Command-line front end for the exact equilibrium toolkit.
//!
//! Exit codes: `0` success (and any checked claim holds), `1` a checked
//! claim is false, `2` bad input (unparsable files, wrong dimensions, games
//! outside a command's scope), `3` an internal invariant failed.

mod parse;

use clap::{Parser, Subcommand};
use parse::{parse_game, parse_profile, parse_rational_token, parse_vector, GameFile, ParseError};
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use symgame::enumerate::{enumerate_equilibria, enumerate_symmetric_equilibria};
use symgame::game::{default_cap, BimatrixGame, SymmetricGame};
use symgame::imitation::{lift_to_symmetric, rescale_for_diagonal, witness_for_diagonal};
use symgame::rank1::solve_rank1;
use symgame::rational::{fmt_rational, int, Rational};
use symgame::reduction::{backward_map, build_composite, check_counting_correspondence, forward_map};
use symgame::strategy::{MixedStrategy, Profile};
use symgame::verify::{is_nash, is_symmetric_ne, NeCertificate};
use symgame::Error;

#[derive(Parser)]
#[command(
    name = "symgame",
    version,
    about = "Exact Nash equilibrium computations for small games",
    long_about = "Exact Nash equilibrium computations for small games: a fixed-point solver \
for symmetric games whose symmetrized payoff matrix has rank at most one, full support \
enumeration, an embedding of bimatrix games into symmetric ones that turns pairs of \
equilibria into non-symmetric equilibria, and imitation-game conversions. All arithmetic \
is in exact rationals."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a symmetric equilibrium when A + Aᵀ has rank at most one
    #[command(name = "solve-rank1")]
    SolveRank1 {
        /// Symmetric game file
        game: PathBuf,
    },
    /// List all equilibria by support enumeration
    #[command(name = "enumerate")]
    Enumerate {
        /// Game file (bimatrix or symmetric)
        game: PathBuf,
        /// Only symmetric equilibria of a symmetric game
        #[arg(long)]
        symmetric_only: bool,
    },
    /// Check whether the given strategies form an equilibrium
    #[command(name = "verify")]
    Verify {
        /// Game file (bimatrix or symmetric)
        game: PathBuf,
        /// Row strategy, e.g. "1/2 1/2"
        #[arg(long)]
        x: String,
        /// Column strategy; omit to check a symmetric equilibrium of a symmetric game
        #[arg(long)]
        y: Option<String>,
    },
    /// Embed a game into a symmetric one and write the composite game file
    #[command(name = "reduce-build")]
    ReduceBuild {
        /// Source game file
        game: PathBuf,
        /// Size cap for the embedded payoffs, in (0, 1/10]
        #[arg(long)]
        cap: Option<String>,
        /// Where to write the composite symmetric game
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Decode a composite equilibrium into the ordered pair of source equilibria
    #[command(name = "reduce-forward")]
    ReduceForward {
        /// Source game file
        game: PathBuf,
        #[arg(long)]
        cap: Option<String>,
        /// Composite row strategy
        #[arg(long)]
        x: String,
        /// Composite column strategy
        #[arg(long)]
        y: String,
    },
    /// Encode an ordered pair of source equilibria as a composite equilibrium
    #[command(name = "reduce-backward")]
    ReduceBackward {
        /// Source game file
        game: PathBuf,
        #[arg(long)]
        cap: Option<String>,
        /// First source equilibrium as "x ; y"
        #[arg(long)]
        ne1: String,
        /// Second source equilibrium as "x ; y"
        #[arg(long)]
        ne2: String,
    },
    /// Count non-symmetric composite equilibria and check they encode all ordered pairs
    #[command(name = "count-nonsymmetric")]
    CountNonsymmetric {
        /// Source game file
        game: PathBuf,
        #[arg(long)]
        cap: Option<String>,
    },
    /// Project an imitation-game equilibrium to a symmetric equilibrium
    #[command(name = "imitation-lift")]
    ImitationLift {
        /// Symmetric game file holding the positive matrix A
        game: PathBuf,
        /// Row strategy of the imitation game (A, I)
        #[arg(long)]
        x: String,
        /// Column strategy of the imitation game (A, I)
        #[arg(long)]
        y: String,
    },
    /// Reweight an imitation row strategy for a positive diagonal
    #[command(name = "imitation-rescale")]
    ImitationRescale {
        /// Row strategy for the identity imitation game
        #[arg(long)]
        x: String,
        /// Positive diagonal entries
        #[arg(long)]
        diag: String,
    },
    /// Complete a symmetric equilibrium to an imitation-game equilibrium
    #[command(name = "imitation-witness")]
    ImitationWitness {
        /// Symmetric game file holding the positive matrix A
        game: PathBuf,
        /// Symmetric equilibrium of (A, Aᵀ)
        #[arg(long)]
        y: String,
        /// Positive diagonal entries; defaults to all ones
        #[arg(long)]
        diag: Option<String>,
    },
}

enum CliError {
    Parse(PathBuf, ParseError),
    Io(PathBuf, std::io::Error),
    Usage(String),
    Core(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(path, e) => write!(f, "{}: {}", path.display(), e),
            CliError::Io(path, e) => write!(f, "{}: {}", path.display(), e),
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(..) | CliError::Io(..) | CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                Error::NotAnEquilibrium => 1,
                Error::InternalInvariantViolation(_)
                | Error::FixedPointNotFound(_)
                | Error::MalformedProgram(_)
                | Error::PrimaryNotOptimal => 3,
                _ => 2,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn load_game(path: &Path) -> Result<GameFile, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    parse_game(&text).map_err(|e| CliError::Parse(path.to_path_buf(), e))
}

fn load_bimatrix(path: &Path) -> Result<BimatrixGame, CliError> {
    Ok(match load_game(path)? {
        GameFile::Bimatrix(g) => g,
        GameFile::Symmetric(g) => g.to_bimatrix(),
    })
}

fn load_symmetric(path: &Path, context: &str) -> Result<SymmetricGame, CliError> {
    match load_game(path)? {
        GameFile::Symmetric(g) => Ok(g),
        GameFile::Bimatrix(_) => Err(CliError::Usage(format!(
            "{context} needs a `symmetric` game file, but {} is `bimatrix`",
            path.display()
        ))),
    }
}

fn strategy_arg(name: &str, text: &str) -> Result<MixedStrategy, CliError> {
    let weights =
        parse_vector(text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))?;
    MixedStrategy::new(weights)
        .map_err(|e| CliError::Usage(format!("--{name} is not a mixed strategy: {e}")))
}

fn profile_arg(name: &str, text: &str) -> Result<Profile, CliError> {
    let (x, y) =
        parse_profile(text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))?;
    let bad = |e: Error| CliError::Usage(format!("--{name} is not a strategy profile: {e}"));
    Ok(Profile::new(
        MixedStrategy::new(x).map_err(bad)?,
        MixedStrategy::new(y).map_err(bad)?,
    ))
}

fn cap_arg(cap: Option<String>) -> Result<Rational, CliError> {
    match cap {
        None => Ok(default_cap()),
        Some(text) => {
            parse_rational_token(&text).map_err(|e| CliError::Usage(format!("--cap: {e}")))
        }
    }
}

fn diag_arg(diag: Option<String>, n: usize) -> Result<Vec<Rational>, CliError> {
    match diag {
        None => Ok(vec![int(1); n]),
        Some(text) => {
            parse_vector(&text).map_err(|e| CliError::Usage(format!("--diag: {e}")))
        }
    }
}

fn fmt_weights(weights: &[Rational]) -> String {
    weights
        .iter()
        .map(fmt_rational)
        .collect::<Vec<_>>()
        .join(" ")
}

fn print_certificate(cert: &NeCertificate) -> u8 {
    println!("holds: {}", cert.holds);
    if let Some((player, strategy)) = &cert.violating_index {
        println!("improving deviation: player {} strategy {}", player.index(), strategy);
    }
    println!("row payoff: {}", fmt_rational(&cert.payoffs.0));
    println!("column payoff: {}", fmt_rational(&cert.payoffs.1));
    u8::from(!cert.holds)
}

fn write_symmetric_game_file(path: &Path, game: &SymmetricGame) -> Result<(), CliError> {
    let mut text = String::from("symmetric\n");
    text.push_str(&format!("{}\n", game.n()));
    for i in 0..game.n() {
        text.push_str(&fmt_weights(game.matrix().row(i)));
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::SolveRank1 { game } => {
            let game = load_symmetric(&game, "solve-rank1")?;
            let solution = solve_rank1(&game)?;
            println!("strategy: {}", fmt_weights(solution.strategy.weights()));
            println!("lambda: {}", fmt_rational(&solution.lambda));
            println!("payoff: {}", fmt_rational(&solution.payoff));
            println!("iterations: {}", solution.iterations);
            Ok(0)
        }
        Command::Enumerate {
            game,
            symmetric_only,
        } => {
            if symmetric_only {
                let game = load_symmetric(&game, "enumerate --symmetric-only")?;
                let result = enumerate_symmetric_equilibria(&game)?;
                println!("symmetric equilibria: {}", result.equilibria.len());
                println!("degenerate: {}", result.degenerate);
                for strategy in &result.equilibria {
                    println!("x: {}", fmt_weights(strategy.weights()));
                }
            } else {
                let game = load_bimatrix(&game)?;
                let result = enumerate_equilibria(&game)?;
                println!("equilibria: {}", result.equilibria.len());
                println!("degenerate: {}", result.degenerate);
                for profile in &result.equilibria {
                    println!(
                        "x: {} ; y: {}",
                        fmt_weights(profile.x.weights()),
                        fmt_weights(profile.y.weights())
                    );
                }
            }
            Ok(0)
        }
        Command::Verify { game, x, y } => {
            let x = strategy_arg("x", &x)?;
            let cert = match (load_game(&game)?, y) {
                (GameFile::Symmetric(g), None) => is_symmetric_ne(&g, &x)?,
                (GameFile::Symmetric(g), Some(y)) => {
                    is_nash(&g.to_bimatrix(), &x, &strategy_arg("y", &y)?)?
                }
                (GameFile::Bimatrix(g), Some(y)) => is_nash(&g, &x, &strategy_arg("y", &y)?)?,
                (GameFile::Bimatrix(_), None) => {
                    return Err(CliError::Usage(
                        "--y is required when verifying a bimatrix game".into(),
                    ))
                }
            };
            Ok(print_certificate(&cert))
        }
        Command::ReduceBuild { game, cap, output } => {
            let source = load_bimatrix(&game)?;
            let cap = cap_arg(cap)?;
            let comp = build_composite(&source, &cap)?;
            write_symmetric_game_file(&output, &comp.game)?;
            println!("source: {}x{}", comp.m, comp.n);
            println!("composite size: {}", comp.game.n());
            println!("cap: {}", fmt_rational(&comp.cap));
            println!(
                "row payoff transform: scale {} shift {}",
                fmt_rational(&comp.transform_a.scale),
                fmt_rational(&comp.transform_a.shift)
            );
            println!(
                "column payoff transform: scale {} shift {}",
                fmt_rational(&comp.transform_b.scale),
                fmt_rational(&comp.transform_b.shift)
            );
            Ok(0)
        }
        Command::ReduceForward { game, cap, x, y } => {
            let source = load_bimatrix(&game)?;
            let comp = build_composite(&source, &cap_arg(cap)?)?;
            let x = strategy_arg("x", &x)?;
            let y = strategy_arg("y", &y)?;
            let (first, second) = forward_map(&comp, &x, &y)?;
            println!("first x: {}", fmt_weights(first.x.weights()));
            println!("first y: {}", fmt_weights(first.y.weights()));
            println!("second x: {}", fmt_weights(second.x.weights()));
            println!("second y: {}", fmt_weights(second.y.weights()));
            Ok(0)
        }
        Command::ReduceBackward {
            game,
            cap,
            ne1,
            ne2,
        } => {
            let source = load_bimatrix(&game)?;
            let comp = build_composite(&source, &cap_arg(cap)?)?;
            let ne1 = profile_arg("ne1", &ne1)?;
            let ne2 = profile_arg("ne2", &ne2)?;
            let profile = backward_map(&comp, &ne1, &ne2)?;
            println!("x: {}", fmt_weights(profile.x.weights()));
            println!("y: {}", fmt_weights(profile.y.weights()));
            Ok(0)
        }
        Command::CountNonsymmetric { game, cap } => {
            let source = load_bimatrix(&game)?;
            let report = check_counting_correspondence(&source, &cap_arg(cap)?)?;
            println!("source equilibria: {}", report.source_equilibria);
            println!("nonsymmetric equilibria: {}", report.nonsymmetric);
            println!("correspondence holds: {}", report.holds);
            Ok(u8::from(!report.holds))
        }
        Command::ImitationLift { game, x, y } => {
            let game = load_symmetric(&game, "imitation-lift")?;
            let x = strategy_arg("x", &x)?;
            let y = strategy_arg("y", &y)?;
            let strategy = lift_to_symmetric(game.matrix(), &x, &y)?;
            println!("strategy: {}", fmt_weights(strategy.weights()));
            Ok(0)
        }
        Command::ImitationRescale { x, diag } => {
            let x = strategy_arg("x", &x)?;
            let diag = diag_arg(Some(diag), 0)?;
            let strategy = rescale_for_diagonal(&x, &diag)?;
            println!("strategy: {}", fmt_weights(strategy.weights()));
            Ok(0)
        }
        Command::ImitationWitness { game, y, diag } => {
            let game = load_symmetric(&game, "imitation-witness")?;
            let y = strategy_arg("y", &y)?;
            let diag = diag_arg(diag, game.n())?;
            let strategy = witness_for_diagonal(game.matrix(), &y, &diag)?;
            println!("strategy: {}", fmt_weights(strategy.weights()));
            Ok(0)
        }
    }
}
