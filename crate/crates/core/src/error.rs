use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty word")]
    EmptyWord,
    #[error("word {word:?} contains {ch:?}, which is outside the Malayalam and Telugu blocks")]
    NonTargetScript { word: String, ch: char },
    #[error("word {0:?} mixes Malayalam and Telugu characters")]
    MixedScript(String),
    #[error("word {word:?} starts with the combining mark {ch:?}")]
    OrphanModifier { word: String, ch: char },
    #[error("unknown script {0:?} (expected malayalam or telugu)")]
    UnknownScript(String),
    #[error("no words survived filtering")]
    EmptyLexicon,
    #[error("the lexicon has no n-grams")]
    EmptyVocabulary,
    #[error("n-gram {0:?} is not in the model vocabulary")]
    UnknownNgram(String),
    #[error("no score for labeled word {0:?}")]
    MissingScore(String),
    #[error("k = {k} exceeds the labeled set size {size}")]
    KTooLarge { k: usize, size: usize },
    #[error("k must be positive")]
    ZeroK,
    #[error("invalid hyperparameter: {0}")]
    InvalidHyperparams(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("model dump mismatch: {0}")]
    ModelMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
