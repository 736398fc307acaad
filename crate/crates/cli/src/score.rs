use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use nativeness::baselines::{score_gen, score_init};
use nativeness::optimizer::{run_uns_with, ReportFile, RunOptions, TraceEntry};
use nativeness::{Hyperparams, Lexicon, ScoreTable};
use serde::{Deserialize, Serialize};

use crate::common::{output, write_json, HyperArgs, InputArgs};
use crate::failure::{CliResult, Context};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Uns,
    Init,
    Gen,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    #[arg(long, value_enum, default_value = "uns")]
    pub method: Method,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub hyper: HyperArgs,
    /// Scores TSV; standard output if omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Run report JSON.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Directory for native.json and loanword.json (UNS only).
    #[arg(long)]
    pub dump_models: Option<PathBuf>,
    /// Run all max-iters iterations instead of stopping at convergence.
    #[arg(long)]
    pub full_trace: bool,
}

/// What `score --report` writes. Baselines have no trace.
#[derive(Debug, Serialize, Deserialize)]
pub struct ScoreReport {
    pub method: Method,
    pub words: usize,
    pub hyperparams: Hyperparams,
    pub stop_reason: Option<nativeness::StopReason>,
    pub iterations: usize,
    pub trace: Vec<TraceEntry>,
}

pub fn run(args: &ScoreArgs) -> CliResult<()> {
    let hp = args.hyper.resolve()?;
    let lexicon = args.input.load()?;
    let (scores, run) = compute(args, &lexicon, &hp)?;

    let table = ScoreTable::from_lexicon(&lexicon, &scores);
    let mut out = output(args.output.as_deref())?;
    table.write_tsv(&mut out)?;
    out.flush().or_input("writing scores")?;

    if let Some(path) = &args.report {
        let report = match run {
            Some(r) => ScoreReport {
                method: args.method,
                words: lexicon.len(),
                hyperparams: r.hyperparams,
                stop_reason: Some(r.stop_reason),
                iterations: r.iterations,
                trace: r.trace,
            },
            None => ScoreReport {
                method: args.method,
                words: lexicon.len(),
                hyperparams: hp,
                stop_reason: None,
                iterations: 0,
                trace: Vec::new(),
            },
        };
        write_json(path, &report)?;
    }
    Ok(())
}

fn compute(
    args: &ScoreArgs,
    lexicon: &Lexicon,
    hp: &Hyperparams,
) -> CliResult<(Vec<f64>, Option<ReportFile>)> {
    if args.method != Method::Uns && args.dump_models.is_some() {
        log::warn!("--dump-models only applies to --method uns; ignored");
    }
    Ok(match args.method {
        Method::Init => (
            score_init(&lexicon.stem_index(hp.stem_length), hp.tau),
            None,
        ),
        Method::Gen => (score_gen(lexicon, hp.lambda_gen)?.scores, None),
        Method::Uns => {
            let opts = RunOptions {
                stop_on_convergence: !args.full_trace,
            };
            let report = run_uns_with(lexicon, hp, opts)?;
            if let Some(dir) = &args.dump_models {
                fs::create_dir_all(dir).or_input(dir.display())?;
                let index = nativeness::NgramIndex::build(lexicon, hp.ngram_n)?;
                write_json(
                    &dir.join("native.json"),
                    &report.native.to_dump(&index, lexicon),
                )?;
                write_json(
                    &dir.join("loanword.json"),
                    &report.loanword.to_dump(&index, lexicon),
                )?;
            }
            let file = report.to_file();
            (report.state.scores, Some(file))
        }
    })
}
