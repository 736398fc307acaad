use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use nativeness::synthetic::{generate, SyntheticConfig};

use crate::common::{output, InputArgs};
use crate::failure::{CliResult, Context};

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 2000)]
    pub words: usize,
    /// Word list path.
    #[arg(long)]
    pub output_words: PathBuf,
    /// Labels TSV path.
    #[arg(long)]
    pub output_labels: PathBuf,
}

pub fn synth(args: &SynthArgs) -> CliResult<()> {
    let cfg = SyntheticConfig {
        seed: args.seed,
        total_words: args.words,
        ..Default::default()
    };
    let corpus = generate(&cfg);
    let mut words = output(Some(&args.output_words))?;
    for w in &corpus.words {
        writeln!(words, "{w}").or_input(args.output_words.display())?;
    }
    words.flush().or_input(args.output_words.display())?;
    let mut labels = output(Some(&args.output_labels))?;
    for (w, l) in &corpus.labels {
        writeln!(labels, "{w}\t{}", l.as_str()).or_input(args.output_labels.display())?;
    }
    labels.flush().or_input(args.output_labels.display())
}

#[derive(Debug, Args)]
pub struct LexiconArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 2)]
    pub stem_length: usize,
    /// Dump path; standard output if omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn lexicon(args: &LexiconArgs) -> CliResult<()> {
    if args.stem_length == 0 {
        return Err(crate::failure::Failure::config(
            "--stem-length must be positive",
        ));
    }
    let lexicon = args.input.load()?;
    let index = lexicon.stem_index(args.stem_length);
    let mut out = output(args.output.as_deref())?;
    lexicon.write_dump(&index, &mut out)?;
    out.flush().or_input("writing dump")
}
