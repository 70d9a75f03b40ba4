//! Command-line front end.
//!
//! Every subcommand reads one game file, works on it, and writes plain
//! lines to stdout. Exit codes: 0 on success, 1 when the input cannot be
//! read or parsed, 2 for usage errors and method/input mismatches (such
//! as asking for backward induction on a matrix).

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::gdt::{self, GameFile};
use crate::model::{validate_tree, PlayerId, Rational, Severity};
use crate::normal::to_normal_form;
use crate::render::{render_matrix, render_tree, RenderFormat, RenderOptions};
use crate::solver::{
    backward_induction, dominance, mixed_nash_2p, pure_nash, DominanceKind, MixedOutcome,
};
use crate::strategy::enumerate_pure;

#[derive(Parser)]
#[command(
    name = "gamekit",
    version,
    about = "Parse, convert, solve, and draw finite two-player games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a game file and summarize its contents
    Parse { file: PathBuf },
    /// List one player's pure strategies
    Strategies {
        file: PathBuf,
        /// Whose strategies to list: 1 or 2
        #[arg(long)]
        player: u32,
    },
    /// Print the normal form of a game as a matrix file
    Normalize { file: PathBuf },
    /// Compute equilibria
    Solve {
        file: PathBuf,
        /// Which solver to run
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
    },
    /// List dominance relations between pure strategies
    Dominance {
        file: PathBuf,
        /// Which dominance relation to report
        #[arg(long, value_enum, default_value = "weak")]
        kind: KindArg,
    },
    /// Draw a game
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "ascii")]
        format: FormatArg,
        /// Mark information sets
        #[arg(long)]
        infosets: bool,
        /// Append a unit to every payoff number
        #[arg(long, default_value = "")]
        payoff_suffix: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Backward induction on a perfect-information tree
    Backward,
    /// Pure Nash equilibria of the matrix
    Pure,
    /// Mixed Nash equilibria by support enumeration
    Mixed,
    /// Every solver that applies to the input
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Ascii,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Weak,
    Strict,
}

/// Runs the CLI against explicit argument and output streams, returning
/// the process exit code. `args` must include the program name.
pub fn run<O: Write, E: Write>(
    args: impl IntoIterator<Item = String>,
    out: &mut O,
    err: &mut E,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests land on stdout and succeed;
            // genuine usage errors land on stderr with code 2.
            return if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
        }
    };
    // An Err means an output stream failed; there is nowhere left to report.
    dispatch(cli.command, out, err).unwrap_or(1)
}

fn dispatch(command: Command, out: &mut impl Write, err: &mut impl Write) -> io::Result<i32> {
    match command {
        Command::Parse { file } => cmd_parse(&file, out, err),
        Command::Strategies { file, player } => cmd_strategies(&file, player, out, err),
        Command::Normalize { file } => cmd_normalize(&file, out, err),
        Command::Solve { file, method } => cmd_solve(&file, method, out, err),
        Command::Dominance { file, kind } => cmd_dominance(&file, kind, out, err),
        Command::Render {
            file,
            format,
            infosets,
            payoff_suffix,
        } => cmd_render(&file, format, infosets, &payoff_suffix, out, err),
    }
}

/// Reads and parses one game file, reporting failures on stderr.
/// `Err(())` in the inner result means "already reported, exit 1".
fn read_game(path: &Path, err: &mut impl Write) -> io::Result<Result<GameFile, ()>> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => {
            writeln!(err, "{}: {e}", path.display())?;
            return Ok(Err(()));
        }
    };
    match gdt::parse(&text) {
        Ok(game) => Ok(Ok(game)),
        Err(e) => {
            writeln!(err, "{}:{e}", path.display())?;
            Ok(Err(()))
        }
    }
}

macro_rules! try_game {
    ($path:expr, $err:expr) => {
        match read_game($path, $err)? {
            Ok(game) => game,
            Err(()) => return Ok(1),
        }
    };
}

fn plural(n: usize, word: &str) -> String {
    let s = if n == 1 { "" } else { "s" };
    format!("{n} {word}{s}")
}

fn pair(p: (Rational, Rational)) -> String {
    format!("({}, {})", p.0, p.1)
}

fn cmd_parse(path: &Path, out: &mut impl Write, err: &mut impl Write) -> io::Result<i32> {
    match try_game!(path, err) {
        GameFile::Extensive(tree) => {
            for diagnostic in validate_tree(&tree)
                .diagnostics
                .iter()
                .filter(|d| d.severity == Severity::Warning)
            {
                writeln!(err, "{diagnostic}")?;
            }
            writeln!(
                out,
                "ok: \"{}\": extensive form, players {} and {}, {}, {}, {}",
                tree.name,
                tree.players[0],
                tree.players[1],
                plural(tree.decision_count(), "decision node"),
                plural(tree.terminal_count(), "terminal"),
                plural(tree.infosets.len(), "information set"),
            )?;
        }
        GameFile::Normal(game) => {
            writeln!(
                out,
                "ok: \"{}\": normal form, players {} and {}, {}x{}",
                game.name,
                game.players[0],
                game.players[1],
                game.num_rows(),
                game.num_cols(),
            )?;
        }
    }
    Ok(0)
}

fn cmd_strategies(
    path: &Path,
    player: u32,
    out: &mut impl Write,
    err: &mut impl Write,
) -> io::Result<i32> {
    if !(1..=2).contains(&player) {
        writeln!(err, "{}: --player must be 1 or 2, got {player}", path.display())?;
        return Ok(2);
    }
    let player = PlayerId::new(player);
    match try_game!(path, err) {
        GameFile::Extensive(tree) => {
            for strategy in enumerate_pure(&tree, player) {
                if strategy.choices().is_empty() {
                    writeln!(out, "{}", strategy.label())?;
                } else {
                    let picks = strategy
                        .choices()
                        .iter()
                        .map(|(infoset, action)| format!("{infoset}={action}"))
                        .collect::<Vec<_>>()
                        .join(", ");
                    writeln!(out, "{}: {picks}", strategy.label())?;
                }
            }
        }
        GameFile::Normal(game) => {
            let labels = match player {
                PlayerId::P1 => game.rows(),
                _ => game.cols(),
            };
            for label in labels {
                writeln!(out, "{label}")?;
            }
        }
    }
    Ok(0)
}

fn cmd_normalize(path: &Path, out: &mut impl Write, err: &mut impl Write) -> io::Result<i32> {
    let game = match try_game!(path, err) {
        GameFile::Extensive(tree) => to_normal_form(&tree),
        // Matrix input just canonicalizes: same game, standard layout.
        GameFile::Normal(game) => game,
    };
    write!(out, "{}", gdt::serialize_normal(&game))?;
    Ok(0)
}

fn cmd_solve(
    path: &Path,
    method: Method,
    out: &mut impl Write,
    err: &mut impl Write,
) -> io::Result<i32> {
    let game = try_game!(path, err);

    if method == Method::Backward || method == Method::All {
        match &game {
            GameFile::Extensive(tree) => match backward_induction(tree) {
                Ok(results) => {
                    for result in results {
                        writeln!(
                            out,
                            "spe {} payoffs={}",
                            result.profile,
                            pair(result.payoffs)
                        )?;
                    }
                }
                Err(e) if method == Method::Backward => {
                    let culprit = tree
                        .infosets
                        .iter()
                        .find(|s| s.members.len() > 1)
                        .expect("imperfect information implies a shared infoset");
                    writeln!(
                        err,
                        "{}: {e}; infoset `{}` has {}",
                        path.display(),
                        culprit.id,
                        plural(culprit.members.len(), "member"),
                    )?;
                    return Ok(2);
                }
                Err(_) => {} // `all` skips solvers that do not apply
            },
            GameFile::Normal(_) if method == Method::Backward => {
                writeln!(
                    err,
                    "{}: backward induction requires an extensive-form game",
                    path.display()
                )?;
                return Ok(2);
            }
            GameFile::Normal(_) => {}
        }
    }

    let matrix = match &game {
        GameFile::Extensive(tree) => to_normal_form(tree),
        GameFile::Normal(game) => game.clone(),
    };

    if method == Method::Pure || method == Method::All {
        let equilibria = pure_nash(&matrix);
        if equilibria.is_empty() {
            writeln!(out, "pure: none")?;
        }
        for eq in equilibria {
            writeln!(
                out,
                "pure ({}, {}) payoffs={}",
                matrix.rows()[eq.row],
                matrix.cols()[eq.col],
                pair(eq.payoffs)
            )?;
        }
    }

    if method == Method::Mixed || method == Method::All {
        let outcomes = mixed_nash_2p(&matrix);
        if outcomes.is_empty() {
            writeln!(out, "mixed: none")?;
        }
        for outcome in outcomes {
            match outcome {
                MixedOutcome::Equilibrium(eq) => {
                    writeln!(
                        out,
                        "mixed p1={} p2={} payoffs={}",
                        eq.profile.strategy(PlayerId::P1),
                        eq.profile.strategy(PlayerId::P2),
                        pair(eq.payoffs)
                    )?;
                }
                MixedOutcome::Degenerate { support } => {
                    writeln!(
                        out,
                        "degenerate p1-support={} p2-support={}",
                        brace_labels(matrix.rows(), &support.0),
                        brace_labels(matrix.cols(), &support.1)
                    )?;
                }
            }
        }
    }

    Ok(0)
}

fn brace_labels(labels: &[String], indices: &[usize]) -> String {
    let inner = indices
        .iter()
        .map(|&i| labels[i].as_str())
        .collect::<Vec<_>>()
        .join(", ");
    format!("{{{inner}}}")
}

fn cmd_dominance(
    path: &Path,
    kind: KindArg,
    out: &mut impl Write,
    err: &mut impl Write,
) -> io::Result<i32> {
    let matrix = match try_game!(path, err) {
        GameFile::Extensive(tree) => to_normal_form(&tree),
        GameFile::Normal(game) => game,
    };
    let (kind, adverb) = match kind {
        KindArg::Weak => (DominanceKind::Weak, "weakly"),
        KindArg::Strict => (DominanceKind::Strict, "strictly"),
    };
    let records = dominance(&matrix, kind);
    if records.is_empty() {
        writeln!(out, "dominance: none")?;
    }
    for record in records {
        let labels = match record.player {
            PlayerId::P1 => matrix.rows(),
            _ => matrix.cols(),
        };
        writeln!(
            out,
            "{}: {} {adverb} dominated by {}",
            record.player, labels[record.dominated], labels[record.dominator]
        )?;
    }
    Ok(0)
}

fn cmd_render(
    path: &Path,
    format: FormatArg,
    infosets: bool,
    payoff_suffix: &str,
    out: &mut impl Write,
    err: &mut impl Write,
) -> io::Result<i32> {
    match try_game!(path, err) {
        GameFile::Extensive(tree) => {
            let options = RenderOptions {
                format: match format {
                    FormatArg::Ascii => RenderFormat::Ascii,
                    FormatArg::Dot => RenderFormat::Dot,
                },
                show_infosets: infosets,
                payoff_unit_suffix: payoff_suffix.to_string(),
            };
            write!(out, "{}", render_tree(&tree, &options))?;
        }
        GameFile::Normal(game) => {
            if format == FormatArg::Dot {
                writeln!(
                    err,
                    "{}: dot output requires an extensive-form game",
                    path.display()
                )?;
                return Ok(2);
            }
            write!(out, "{}", render_matrix(&game))?;
        }
    }
    Ok(0)
}
