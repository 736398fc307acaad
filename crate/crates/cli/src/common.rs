use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use log::info;
use nativeness::{Hyperparams, Lexicon, Script};

use crate::failure::{CliResult, Context, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// One word per line.
    Wordlist,
    /// Running text; unique words are extracted.
    Corpus,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Word list or corpus, UTF-8.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "wordlist")]
    pub format: InputFormat,
    /// malayalam (ml) or telugu (te).
    #[arg(long)]
    pub script: String,
}

impl InputArgs {
    pub fn script(&self) -> CliResult<Script> {
        Ok(self.script.parse::<Script>()?)
    }

    pub fn load(&self) -> CliResult<Lexicon> {
        let script = self.script()?;
        let file = File::open(&self.input).or_input(self.input.display())?;
        let reader = BufReader::new(file);
        let lexicon = match self.format {
            InputFormat::Wordlist => Lexicon::ingest_wordlist(reader, script),
            InputFormat::Corpus => Lexicon::ingest_corpus(reader, script),
        }
        .map_err(|e| Failure::input(format!("{}: {e}", self.input.display())))?;
        let stats = lexicon.stats();
        info!(
            "{}: {} words kept of {} candidates ({} dropped, {} duplicates)",
            self.input.display(),
            lexicon.len(),
            stats.candidates,
            stats.dropped,
            stats.duplicates
        );
        Ok(lexicon)
    }
}

/// Hyperparameter flags. Unset flags fall back to the config file, then to
/// the defaults.
#[derive(Debug, Args, Default)]
pub struct HyperArgs {
    /// TOML file with hyperparameter overrides.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// n-gram order (1 or 2).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub rho: Option<usize>,
    #[arg(long)]
    pub tau: Option<usize>,
    #[arg(long)]
    pub stem_length: Option<usize>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    #[arg(long)]
    pub conv_frac: Option<f64>,
    /// Bigram weight of the GEN baseline.
    #[arg(long)]
    pub lambda: Option<f64>,
}

impl HyperArgs {
    pub fn resolve(&self) -> CliResult<Hyperparams> {
        let mut hp = match &self.config {
            Some(path) => read_toml::<Hyperparams>(path)?,
            None => Hyperparams::default(),
        };
        macro_rules! apply {
            ($flag:ident => $field:ident) => {
                if let Some(v) = self.$flag {
                    hp.$field = v;
                }
            };
        }
        apply!(n => ngram_n);
        apply!(alpha => alpha);
        apply!(rho => rho);
        apply!(tau => tau);
        apply!(stem_length => stem_length);
        apply!(max_iters => max_iters);
        apply!(conv_frac => conv_frac);
        apply!(lambda => lambda_gen);
        hp.validate()?;
        Ok(hp)
    }
}

pub fn read_toml<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).or_config(path.display())?;
    toml::from_str(&text).or_config(path.display())
}

/// A file, or standard output when no path is given.
pub fn output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).or_input(p.display())?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut out = output(Some(path))?;
    serde_json::to_writer_pretty(&mut out, value).or_input(path.display())?;
    writeln!(out).or_input(path.display())?;
    out.flush().or_input(path.display())
}
