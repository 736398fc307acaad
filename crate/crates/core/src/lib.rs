//! Unsupervised nativeness scoring for Malayalam and Telugu word lists.
//!
//! Every word gets a score in `[0, 1]`: high for words native to the
//! language, low for loanwords. Scores start from how many different
//! syllables follow a word's stem across the dictionary and are then
//! refined by alternating between two syllable n-gram distributions (native
//! and loanword) and the per-word scores.
//!
//! ```no_run
//! use nativeness::{run_uns, Hyperparams, Lexicon, Script, ScoreTable};
//!
//! let words = std::fs::read_to_string("words.txt").unwrap();
//! let lexicon = Lexicon::ingest_wordlist(words.as_bytes(), Script::Malayalam).unwrap();
//! let report = run_uns(&lexicon, &Hyperparams::default()).unwrap();
//! let table = ScoreTable::from_lexicon(&lexicon, &report.state.scores);
//! table.write_tsv(std::io::stdout()).unwrap();
//! ```

pub mod baselines;
pub mod error;
pub mod eval;
pub mod lexicon;
pub mod model;
pub mod optimizer;
pub mod scores;
pub mod syllable;
pub mod synthetic;

pub use error::{Error, Result};
pub use eval::{EvaluationReport, Label, LabeledSet};
pub use lexicon::{Hyperparams, Lexicon, StemIndex, Word};
pub use model::{NgramDistribution, NgramIndex, Role};
pub use optimizer::{run_uns, run_uns_with, Problem, RunOptions, RunReport, StopReason};
pub use scores::ScoreTable;
pub use syllable::{PseudoSyllable, Script};
