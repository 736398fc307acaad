//! The word set: ingestion, stems, stem diversity and initial scores.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{BufRead, Write};

use log::{debug, warn};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::syllable::{self, CharClass, PseudoSyllable, Script};

/// Upper cap of the diversity initialization.
pub const INIT_CAP: f64 = 0.99;

/// Tunable parameters of the scorer, with the defaults that worked best on
/// both languages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Hyperparams {
    /// Number of leading pseudo-syllables that form a word's stem.
    pub stem_length: usize,
    /// Diversity at which the initial score saturates.
    pub tau: usize,
    /// Words whose stem diversity is strictly above this join the diverse set.
    pub rho: usize,
    /// Weight of the diverse-word inertia term.
    pub alpha: f64,
    /// n-gram order of the native/loanword distributions (1 or 2).
    pub ngram_n: usize,
    pub max_iters: usize,
    /// Stop once fewer than this fraction of binarized labels flip.
    pub conv_frac: f64,
    /// Bigram weight of the GEN baseline.
    pub lambda_gen: f64,
    /// Scores are kept in `[score_clamp, 1 - score_clamp]`.
    pub score_clamp: f64,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Hyperparams {
            stem_length: 2,
            tau: 10,
            rho: 3,
            alpha: 1.0,
            ngram_n: 1,
            max_iters: 100,
            conv_frac: 0.01,
            lambda_gen: 0.8,
            score_clamp: 0.01,
        }
    }
}

impl Hyperparams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidHyperparams(msg));
        if self.stem_length == 0 {
            return bad("stem_length must be positive".into());
        }
        if self.tau == 0 {
            return bad("tau must be positive".into());
        }
        if self.rho == 0 {
            return bad("rho must be positive".into());
        }
        if !(self.alpha.is_finite() && self.alpha >= 0.0) {
            return bad(format!(
                "alpha must be a non-negative number, got {}",
                self.alpha
            ));
        }
        if !(1..=2).contains(&self.ngram_n) {
            return bad(format!("ngram_n must be 1 or 2, got {}", self.ngram_n));
        }
        if !(self.conv_frac > 0.0 && self.conv_frac < 1.0) {
            return bad(format!(
                "conv_frac must lie in (0, 1), got {}",
                self.conv_frac
            ));
        }
        if !(0.0..=1.0).contains(&self.lambda_gen) {
            return bad(format!(
                "lambda_gen must lie in [0, 1], got {}",
                self.lambda_gen
            ));
        }
        if !(self.score_clamp > 0.0 && self.score_clamp < 0.5) {
            return bad(format!(
                "score_clamp must lie in (0, 0.5), got {}",
                self.score_clamp
            ));
        }
        Ok(())
    }

    pub fn lower_clamp(&self) -> f64 {
        self.score_clamp
    }

    pub fn upper_clamp(&self) -> f64 {
        1.0 - self.score_clamp
    }
}

/// A dictionary entry.
#[derive(Debug, Clone)]
pub struct Word {
    raw: String,
    syllables: Vec<PseudoSyllable>,
    units: Vec<u32>,
}

impl Word {
    pub fn as_str(&self) -> &str {
        &self.raw
    }

    pub fn syllables(&self) -> &[PseudoSyllable] {
        &self.syllables
    }

    /// Interned syllable ids (see [`Lexicon::unit`]).
    pub fn units(&self) -> &[u32] {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }
}

/// The first `stem_length` syllables, or the whole word if it is not longer.
pub fn stem_of(word: &Word, stem_length: usize) -> &[PseudoSyllable] {
    &word.syllables[..word.len().min(stem_length)]
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct IngestStats {
    /// Candidate tokens or lines looked at.
    pub candidates: usize,
    /// Candidates rejected (wrong script, stray marks, symbols).
    pub dropped: usize,
    /// Candidates that repeated an earlier word.
    pub duplicates: usize,
}

/// Deduplicated, segmented word set in a single script. Words are kept in
/// lexicographic order of their NFC text; every per-word vector in the crate
/// is indexed the same way.
#[derive(Debug, Clone)]
pub struct Lexicon {
    script: Script,
    words: Vec<Word>,
    unit_keys: Vec<String>,
    unit_ids: HashMap<String, u32>,
    positions: HashMap<String, usize>,
    stats: IngestStats,
}

impl Lexicon {
    /// Build from already tokenized candidates. Candidates that are not
    /// well-formed words of `script` are dropped and counted.
    pub fn from_words<I, S>(candidates: I, script: Script) -> Result<Lexicon>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut stats = IngestStats::default();
        let mut segmented: BTreeMap<String, Vec<PseudoSyllable>> = BTreeMap::new();
        for cand in candidates {
            stats.candidates += 1;
            let word = syllable::nfc(cand.as_ref().trim());
            if segmented.contains_key(&word) {
                stats.duplicates += 1;
                continue;
            }
            match accept(&word, script) {
                Ok(syls) => {
                    segmented.insert(word, syls);
                }
                Err(e) => {
                    debug!("dropping {word:?}: {e}");
                    stats.dropped += 1;
                }
            }
        }
        if segmented.is_empty() {
            return Err(Error::EmptyLexicon);
        }
        if stats.dropped > 0 {
            warn!(
                "dropped {} of {} candidate words",
                stats.dropped, stats.candidates
            );
        }

        let mut unit_keys = Vec::new();
        let mut unit_ids: HashMap<String, u32> = HashMap::new();
        let mut words = Vec::with_capacity(segmented.len());
        for (raw, syllables) in segmented {
            let units = syllables
                .iter()
                .map(|s| {
                    let key = s.key();
                    if let Some(&id) = unit_ids.get(key.as_ref()) {
                        return id;
                    }
                    let id = unit_keys.len() as u32;
                    unit_keys.push(key.to_string());
                    unit_ids.insert(key.into_owned(), id);
                    id
                })
                .collect();
            words.push(Word {
                raw,
                syllables,
                units,
            });
        }
        let positions = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.raw.clone(), i))
            .collect();
        Ok(Lexicon {
            script,
            words,
            unit_keys,
            unit_ids,
            positions,
            stats,
        })
    }

    /// One word per line. Lines that are not a single well-formed word of
    /// the script are dropped.
    pub fn ingest_wordlist<R: BufRead>(reader: R, script: Script) -> Result<Lexicon> {
        let mut lines = Vec::new();
        for line in reader.lines() {
            let line = line?;
            if !line.trim().is_empty() {
                lines.push(line);
            }
        }
        Lexicon::from_words(lines, script)
    }

    /// Running text. Tokens are split on whitespace and on every code point
    /// that cannot occur inside a word of the script.
    pub fn ingest_corpus<R: BufRead>(reader: R, script: Script) -> Result<Lexicon> {
        let mut tokens = Vec::new();
        for line in reader.lines() {
            tokens.extend(tokenize(&line?, script));
        }
        Lexicon::from_words(tokens, script)
    }

    pub fn script(&self) -> Script {
        self.script
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn stats(&self) -> IngestStats {
        self.stats
    }

    /// Position of a word (NFC text) in [`Lexicon::words`].
    pub fn position(&self, word: &str) -> Option<usize> {
        self.positions
            .get(word)
            .or_else(|| self.positions.get(&syllable::nfc(word)))
            .copied()
    }

    /// Key of an interned syllable.
    pub fn unit(&self, id: u32) -> &str {
        &self.unit_keys[id as usize]
    }

    pub fn unit_id(&self, key: &str) -> Option<u32> {
        self.unit_ids.get(key).copied()
    }

    pub fn unit_count(&self) -> usize {
        self.unit_keys.len()
    }

    pub fn stem_index(&self, stem_length: usize) -> StemIndex {
        StemIndex::build(self, stem_length)
    }

    /// Debug dump: `word<TAB>syl|syl|...<TAB>stem_diversity`.
    pub fn write_dump<W: Write>(&self, index: &StemIndex, mut out: W) -> Result<()> {
        for (i, w) in self.words.iter().enumerate() {
            let syls: Vec<&str> = w.syllables.iter().map(PseudoSyllable::as_str).collect();
            writeln!(out, "{}\t{}\t{}", w.raw, syls.join("|"), index.diversity(i))?;
        }
        Ok(())
    }
}

fn accept(word: &str, script: Script) -> Result<Vec<PseudoSyllable>> {
    let detected = syllable::detect_script(word)?;
    if detected != script {
        return Err(Error::MixedScript(word.to_string()));
    }
    if let Some(c) = word.chars().find(|&c| !script.classify(c).is_word_char()) {
        return Err(Error::NonTargetScript {
            word: word.to_string(),
            ch: c,
        });
    }
    syllable::segment_normalized(word, script)
}

/// Split running text into candidate words of `script`.
pub fn tokenize(text: &str, script: Script) -> Vec<String> {
    let text = syllable::nfc(text);
    let mut out = Vec::new();
    let mut current = String::new();
    let mut flush = |current: &mut String| {
        let token = trim_token(current, script);
        if !token.is_empty() {
            out.push(token.to_string());
        }
        current.clear();
    };
    for c in text.chars() {
        if script.classify(c).is_word_char() {
            current.push(c);
        } else {
            flush(&mut current);
        }
    }
    flush(&mut current);
    out
}

// Leading marks have no base to attach to; trailing joiners are rendering
// hints with nothing to join.
fn trim_token(token: &str, script: Script) -> &str {
    let start = token
        .char_indices()
        .find(|&(_, c)| {
            !matches!(
                script.classify(c),
                CharClass::Modifier | CharClass::Virama | CharClass::Joiner
            )
        })
        .map_or(token.len(), |(i, _)| i);
    token[start..].trim_end_matches(['\u{200C}', '\u{200D}'])
}

/// Stem diversity for one stem length: for every stem, the set of distinct
/// syllables observed right after it.
#[derive(Debug, Clone)]
pub struct StemIndex {
    stem_length: usize,
    following: HashMap<Vec<u32>, BTreeSet<u32>>,
    word_stems: Vec<Vec<u32>>,
    diversity: Vec<usize>,
}

impl StemIndex {
    pub fn build(lexicon: &Lexicon, stem_length: usize) -> StemIndex {
        let mut following: HashMap<Vec<u32>, BTreeSet<u32>> = HashMap::new();
        let mut word_stems = Vec::with_capacity(lexicon.len());
        for w in lexicon.words() {
            let units = w.units();
            let stem = units[..units.len().min(stem_length)].to_vec();
            if let Some(&next) = units.get(stem_length) {
                following.entry(stem.clone()).or_default().insert(next);
            }
            word_stems.push(stem);
        }
        let diversity = word_stems
            .iter()
            .map(|s| following.get(s).map_or(0, BTreeSet::len))
            .collect();
        StemIndex {
            stem_length,
            following,
            word_stems,
            diversity,
        }
    }

    pub fn stem_length(&self) -> usize {
        self.stem_length
    }

    /// Distinct syllables seen after `stem` (interned ids).
    pub fn following(&self, stem: &[u32]) -> Option<&BTreeSet<u32>> {
        self.following.get(stem)
    }

    /// Diversity of a stem given as syllable keys; 0 for unseen stems.
    pub fn stem_diversity(&self, lexicon: &Lexicon, stem: &[&str]) -> usize {
        let ids: Option<Vec<u32>> = stem.iter().map(|k| lexicon.unit_id(k)).collect();
        ids.and_then(|ids| self.following.get(&ids))
            .map_or(0, BTreeSet::len)
    }

    /// Stem diversity of the word at `position`.
    pub fn diversity(&self, position: usize) -> usize {
        self.diversity[position]
    }

    pub fn diversities(&self) -> &[usize] {
        &self.diversity
    }

    pub fn word_stem(&self, position: usize) -> &[u32] {
        &self.word_stems[position]
    }

    /// Number of words per distinct stem.
    pub fn stem_groups(&self) -> BTreeMap<Vec<u32>, usize> {
        let mut groups = BTreeMap::new();
        for s in &self.word_stems {
            *groups.entry(s.clone()).or_insert(0) += 1;
        }
        groups
    }

    /// Membership flags of the diverse set: diversity strictly above `rho`.
    pub fn diverse_mask(&self, rho: usize) -> Vec<bool> {
        self.diversity.iter().map(|&d| d > rho).collect()
    }

    /// Positions of the words in the diverse set.
    pub fn diverse_set(&self, rho: usize) -> Vec<usize> {
        (0..self.diversity.len())
            .filter(|&i| self.diversity[i] > rho)
            .collect()
    }
}

/// Diversity initialization, capped at 0.99 and floored at the score clamp.
pub fn init_score(diversity: usize, hp: &Hyperparams) -> f64 {
    let raw = INIT_CAP.min(diversity as f64 / hp.tau as f64);
    raw.clamp(hp.lower_clamp(), INIT_CAP.min(hp.upper_clamp()))
}

pub fn init_scores(index: &StemIndex, hp: &Hyperparams) -> Vec<f64> {
    index
        .diversities()
        .iter()
        .map(|&d| init_score(d, hp))
        .collect()
}
