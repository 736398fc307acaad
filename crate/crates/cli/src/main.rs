mod common;
mod data;
mod evaluate;
mod failure;
mod score;
mod sweep;
mod trace;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use failure::{CliResult, CONFIG};

/// Score words in a Malayalam or Telugu word list by nativeness, and
/// evaluate scores against labels.
#[derive(Debug, Parser)]
#[command(name = "nativeness", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score every word and write a TSV sorted by descending score.
    Score(score::ScoreArgs),
    /// Compare a scores TSV with labels.
    Evaluate(evaluate::EvaluateArgs),
    /// Weighted clustering quality over a hyperparameter grid, as CSV.
    Sweep(sweep::SweepArgs),
    /// Objective values per iteration from a run report, as CSV.
    Trace(trace::TraceArgs),
    /// Write a labeled synthetic word list.
    Synth(data::SynthArgs),
    /// Write each word's syllables and stem diversity.
    Lexicon(data::LexiconArgs),
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Score(a) => score::run(a),
        Command::Evaluate(a) => evaluate::run(a),
        Command::Sweep(a) => sweep::run(a),
        Command::Trace(a) => trace::run(a),
        Command::Synth(a) => data::synth(a),
        Command::Lexicon(a) => data::lexicon(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(CONFIG)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            log::error!("{:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
