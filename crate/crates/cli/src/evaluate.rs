use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;

use clap::Args;
use nativeness::eval::{evaluate, DEFAULT_KS};
use nativeness::{LabeledSet, ScoreTable};

use crate::common::{output, write_json};
use crate::failure::{CliResult, Context};

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Scores TSV from `score`.
    #[arg(long)]
    pub scores: PathBuf,
    /// Labels TSV: word, then native / loanword / unknown.
    #[arg(long)]
    pub labels: PathBuf,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_KS)]
    pub k: Vec<usize>,
    /// Name shown in the report.
    #[arg(long, default_value = "uns")]
    pub method: String,
    /// Also write the report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

pub fn run(args: &EvaluateArgs) -> CliResult<()> {
    let scores = File::open(&args.scores).or_input(args.scores.display())?;
    let scores = ScoreTable::read_tsv(BufReader::new(scores)).or_input(args.scores.display())?;
    let labeled = load_labels(&args.labels)?;
    let report = evaluate(&args.method, &scores, &labeled, &args.k)?;
    let mut out = output(None)?;
    out.write_all(report.to_table().as_bytes())
        .or_input("writing report")?;
    out.flush().or_input("writing report")?;
    if let Some(path) = &args.json {
        write_json(path, &report)?;
    }
    Ok(())
}

pub fn load_labels(path: &PathBuf) -> CliResult<LabeledSet> {
    let file = File::open(path).or_input(path.display())?;
    LabeledSet::read_tsv(BufReader::new(file)).or_input(path.display())
}
