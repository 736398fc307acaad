//! Native and loanword n-gram distributions over pseudo-syllables.
//!
//! Both distributions share one vocabulary: every n-gram observed in the
//! lexicon. An update re-weights each n-gram by how strongly the words that
//! contain it lean towards the distribution's side, using the previous pair
//! of distributions on the right-hand side, and then renormalizes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexicon::Lexicon;
use crate::syllable::{self, Script};

/// Smallest probability any n-gram may hold after normalization.
pub const PROB_FLOOR: f64 = 1e-8;

/// Version tag written into model dumps.
pub const DUMP_VERSION: u32 = 1;

const BOS: &str = "<s>";
const EOS: &str = "</s>";

/// Element of a bigram: a syllable or a word boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    Bos,
    Syl(u32),
    Eos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ngram {
    Uni(u32),
    Bi(Unit, Unit),
}

/// Emit the n-grams of a syllable-id sequence, in order.
pub fn ngrams(units: &[u32], n: usize) -> Vec<Ngram> {
    match n {
        1 => units.iter().map(|&u| Ngram::Uni(u)).collect(),
        _ => {
            let mut seq = Vec::with_capacity(units.len() + 2);
            seq.push(Unit::Bos);
            seq.extend(units.iter().map(|&u| Unit::Syl(u)));
            seq.push(Unit::Eos);
            seq.windows(2).map(|p| Ngram::Bi(p[0], p[1])).collect()
        }
    }
}

/// N-gram vocabulary of a lexicon and the per-word n-gram counts.
#[derive(Debug, Clone)]
pub struct NgramIndex {
    n: usize,
    vocab: Vec<Ngram>,
    lookup: HashMap<Ngram, usize>,
    // per word: (ngram id, frequency within the word), sorted by id
    counts: Vec<Vec<(usize, u32)>>,
    // per word: ngram id at each position
    positions: Vec<Vec<usize>>,
}

impl NgramIndex {
    pub fn build(lexicon: &Lexicon, n: usize) -> Result<NgramIndex> {
        if !(1..=2).contains(&n) {
            return Err(Error::InvalidHyperparams(format!(
                "ngram_n must be 1 or 2, got {n}"
            )));
        }
        let mut vocab = Vec::new();
        let mut lookup: HashMap<Ngram, usize> = HashMap::new();
        let mut counts = Vec::with_capacity(lexicon.len());
        let mut positions = Vec::with_capacity(lexicon.len());
        for w in lexicon.words() {
            let ids: Vec<usize> = ngrams(w.units(), n)
                .into_iter()
                .map(|g| {
                    *lookup.entry(g).or_insert_with(|| {
                        vocab.push(g);
                        vocab.len() - 1
                    })
                })
                .collect();
            let mut freq: BTreeMap<usize, u32> = BTreeMap::new();
            for &id in &ids {
                *freq.entry(id).or_insert(0) += 1;
            }
            counts.push(freq.into_iter().collect());
            positions.push(ids);
        }
        if vocab.is_empty() {
            return Err(Error::EmptyVocabulary);
        }
        Ok(NgramIndex {
            n,
            vocab,
            lookup,
            counts,
            positions,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vocab_len(&self) -> usize {
        self.vocab.len()
    }

    pub fn ngram(&self, id: usize) -> Ngram {
        self.vocab[id]
    }

    pub fn id(&self, g: &Ngram) -> Option<usize> {
        self.lookup.get(g).copied()
    }

    pub fn word_count(&self) -> usize {
        self.counts.len()
    }

    /// `(ngram id, freq)` pairs of the word at `position`.
    pub fn counts(&self, position: usize) -> &[(usize, u32)] {
        &self.counts[position]
    }

    /// N-gram ids of the word at `position`, one per n-gram slot.
    pub fn positions(&self, position: usize) -> &[usize] {
        &self.positions[position]
    }

    /// Display form: syllable keys joined by `|`, boundaries as `<s>`/`</s>`.
    pub fn ngram_string(&self, lexicon: &Lexicon, id: usize) -> String {
        let unit = |u: Unit| match u {
            Unit::Bos => BOS.to_string(),
            Unit::Eos => EOS.to_string(),
            Unit::Syl(s) => lexicon.unit(s).to_string(),
        };
        match self.vocab[id] {
            Ngram::Uni(s) => lexicon.unit(s).to_string(),
            Ngram::Bi(a, b) => format!("{}|{}", unit(a), unit(b)),
        }
    }

    /// N-gram ids of an arbitrary word, which need not be in the lexicon.
    pub fn ids_of_word(&self, lexicon: &Lexicon, word: &str) -> Result<Vec<usize>> {
        let syls = syllable::segment(word, lexicon.script())?;
        let mut units = Vec::with_capacity(syls.len());
        for s in &syls {
            let key = s.key();
            match lexicon.unit_id(&key) {
                Some(id) => units.push(id),
                None => return Err(Error::UnknownNgram(key.into_owned())),
            }
        }
        ngrams(&units, self.n)
            .into_iter()
            .map(|g| {
                self.id(&g)
                    .ok_or_else(|| Error::UnknownNgram(self.display_unlisted(lexicon, g)))
            })
            .collect()
    }

    fn display_unlisted(&self, lexicon: &Lexicon, g: Ngram) -> String {
        let unit = |u: Unit| match u {
            Unit::Bos => BOS,
            Unit::Eos => EOS,
            Unit::Syl(s) => lexicon.unit(s),
        };
        match g {
            Ngram::Uni(s) => lexicon.unit(s).to_string(),
            Ngram::Bi(a, b) => format!("{}|{}", unit(a), unit(b)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Native,
    Loanword,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Native => "native",
            Role::Loanword => "loanword",
        })
    }
}

/// Probability table over the shared n-gram vocabulary, indexed by n-gram id.
#[derive(Debug, Clone, PartialEq)]
pub struct NgramDistribution {
    n: usize,
    role: Role,
    probs: Vec<f64>,
}

impl NgramDistribution {
    pub fn uniform(index: &NgramIndex, role: Role) -> NgramDistribution {
        let v = index.vocab_len();
        NgramDistribution {
            n: index.n(),
            role,
            probs: vec![1.0 / v as f64; v],
        }
    }

    /// Wrap raw weights, normalizing them with the probability floor.
    pub fn from_weights(
        index: &NgramIndex,
        role: Role,
        mut weights: Vec<f64>,
    ) -> NgramDistribution {
        assert_eq!(
            weights.len(),
            index.vocab_len(),
            "weight vector does not match vocabulary"
        );
        normalize_with_floor(&mut weights, PROB_FLOOR);
        NgramDistribution {
            n: index.n(),
            role,
            probs: weights,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn prob(&self, id: usize) -> f64 {
        self.probs[id]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probabilities of the given n-gram ids, in order.
    pub fn support(&self, ids: &[usize]) -> Vec<f64> {
        ids.iter().map(|&id| self.probs[id]).collect()
    }

    pub fn to_dump(&self, index: &NgramIndex, lexicon: &Lexicon) -> DistributionDump {
        let table = (0..index.vocab_len())
            .map(|id| (index.ngram_string(lexicon, id), self.probs[id]))
            .collect();
        DistributionDump {
            version: DUMP_VERSION,
            script: lexicon.script(),
            n: self.n,
            role: self.role,
            table,
        }
    }

    /// Rebuild a distribution from a dump made over the same lexicon.
    pub fn from_dump(
        dump: &DistributionDump,
        index: &NgramIndex,
        lexicon: &Lexicon,
    ) -> Result<NgramDistribution> {
        if dump.version != DUMP_VERSION {
            return Err(Error::ModelMismatch(format!(
                "unsupported version {}",
                dump.version
            )));
        }
        if dump.script != lexicon.script() || dump.n != index.n() {
            return Err(Error::ModelMismatch(format!(
                "dump is {} n={}, lexicon is {} n={}",
                dump.script,
                dump.n,
                lexicon.script(),
                index.n()
            )));
        }
        if dump.table.len() != index.vocab_len() {
            return Err(Error::ModelMismatch(format!(
                "dump has {} n-grams, vocabulary has {}",
                dump.table.len(),
                index.vocab_len()
            )));
        }
        let mut probs = vec![0.0; index.vocab_len()];
        for (id, p) in probs.iter_mut().enumerate() {
            let key = index.ngram_string(lexicon, id);
            *p = *dump
                .table
                .get(&key)
                .ok_or_else(|| Error::ModelMismatch(format!("n-gram {key:?} missing from dump")))?;
        }
        Ok(NgramDistribution {
            n: dump.n,
            role: dump.role,
            probs,
        })
    }
}

/// JSON form of a distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionDump {
    pub version: u32,
    pub script: Script,
    pub n: usize,
    pub role: Role,
    pub table: BTreeMap<String, f64>,
}

/// Initial pair: both uniform over the vocabulary.
pub fn init_distributions(index: &NgramIndex) -> (NgramDistribution, NgramDistribution) {
    (
        NgramDistribution::uniform(index, Role::Native),
        NgramDistribution::uniform(index, Role::Loanword),
    )
}

/// Scale `weights` to sum to one while keeping every entry at or above
/// `floor`. Entries that would fall below it are pinned to `floor` and the
/// remaining mass is rescaled over the others.
pub fn normalize_with_floor(weights: &mut [f64], floor: f64) {
    let v = weights.len();
    if v == 0 {
        return;
    }
    assert!(floor * (v as f64) < 1.0, "floor too large for vocabulary");
    let total: f64 = weights.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        weights.fill(1.0 / v as f64);
        return;
    }
    for w in weights.iter_mut() {
        *w /= total;
    }
    let mut pinned = vec![false; v];
    loop {
        let k = pinned.iter().filter(|&&p| p).count();
        let free: f64 = weights
            .iter()
            .zip(&pinned)
            .filter(|(_, &p)| !p)
            .map(|(w, _)| *w)
            .sum();
        let scale = (1.0 - k as f64 * floor) / free;
        let mut changed = false;
        for (w, p) in weights.iter().zip(pinned.iter_mut()) {
            if !*p && *w * scale < floor {
                *p = true;
                changed = true;
            }
        }
        if !changed {
            for (w, &p) in weights.iter_mut().zip(&pinned) {
                *w = if p { floor } else { *w * scale };
            }
            return;
        }
    }
}

// Shared body of both updates. `own` is the distribution being re-estimated,
// `side` maps a nativeness score to that distribution's mixing weight and
// `other_side` to the opposite one.
fn reestimate(
    index: &NgramIndex,
    scores: &[f64],
    own: &NgramDistribution,
    other: &NgramDistribution,
    side: impl Fn(f64) -> f64,
    other_side: impl Fn(f64) -> f64,
) -> Vec<f64> {
    assert_eq!(
        scores.len(),
        index.word_count(),
        "one score per word required"
    );
    let ratio: Vec<f64> = other
        .probs
        .iter()
        .zip(&own.probs)
        .map(|(o, s)| o / s)
        .collect();
    let mut raw = vec![0.0; index.vocab_len()];
    for (pos, &w) in scores.iter().enumerate() {
        let a = side(w);
        let b = other_side(w);
        for &(id, freq) in index.counts(pos) {
            raw[id] += freq as f64 * a / (a + b * ratio[id]);
        }
    }
    raw
}

/// Re-estimate the native distribution from the current scores and the
/// previous native/loanword pair.
pub fn update_native(
    index: &NgramIndex,
    scores: &[f64],
    native_prev: &NgramDistribution,
    loan_prev: &NgramDistribution,
) -> NgramDistribution {
    let raw = reestimate(
        index,
        scores,
        native_prev,
        loan_prev,
        |w| w * w,
        |w| (1.0 - w) * (1.0 - w),
    );
    NgramDistribution::from_weights(index, Role::Native, raw)
}

/// Mirror image of [`update_native`] for the loanword distribution.
pub fn update_loanword(
    index: &NgramIndex,
    scores: &[f64],
    native_prev: &NgramDistribution,
    loan_prev: &NgramDistribution,
) -> NgramDistribution {
    let raw = reestimate(
        index,
        scores,
        loan_prev,
        native_prev,
        |w| (1.0 - w) * (1.0 - w),
        |w| w * w,
    );
    NgramDistribution::from_weights(index, Role::Loanword, raw)
}

/// Probability of each n-gram slot of `word` under `dist`.
pub fn word_support(
    index: &NgramIndex,
    lexicon: &Lexicon,
    word: &str,
    dist: &NgramDistribution,
) -> Result<Vec<f64>> {
    let ids = match lexicon.position(word) {
        Some(pos) => index.positions(pos).to_vec(),
        None => index.ids_of_word(lexicon, word)?,
    };
    Ok(dist.support(&ids))
}

/// Maximum-likelihood n-gram frequencies of the lexicon (word types).
pub fn corpus_frequencies(index: &NgramIndex) -> Vec<f64> {
    let mut raw = vec![0.0; index.vocab_len()];
    for pos in 0..index.word_count() {
        for &(id, freq) in index.counts(pos) {
            raw[id] += freq as f64;
        }
    }
    let total: f64 = raw.iter().sum();
    raw.iter_mut().for_each(|r| *r /= total);
    raw
}
