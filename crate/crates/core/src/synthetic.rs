//! Seeded synthetic Malayalam-script vocabularies with known labels.
//!
//! Words are built from consonant + vowel-sign syllables. Native words are
//! drawn from syllable distribution A and loanwords from distribution B, a
//! differently ranked Zipf distribution over the same inventory. Most
//! native words hang off a few highly versatile stems; the rest hang off
//! rare stems with one or two continuations, which is what loanword stems
//! look like too.

use std::collections::{BTreeSet, HashSet};

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::eval::{Label, LabeledSet};

const CONSONANTS: &[char] = &[
    'ക', 'ഗ', 'ച', 'ജ', 'ട', 'ഡ', 'ത', 'ദ', 'ന', 'പ', 'ബ', 'മ', 'യ', 'ര', 'ല', 'വ', 'ശ', 'സ', 'ഹ',
    'ള', 'റ',
];
const VOWEL_SIGNS: &[&str] = &["", "ാ", "ി", "ു", "െ", "ോ"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SyntheticConfig {
    pub seed: u64,
    pub total_words: usize,
    pub loanword_fraction: f64,
    /// Share of native words that come from rare (non-versatile) stems.
    pub rare_native_fraction: f64,
    pub versatile_stems: usize,
    /// Continuations per versatile stem, inclusive range.
    pub versatile_continuations: (usize, usize),
    pub loanword_stems: usize,
    pub max_rare_continuations: usize,
    /// Syllables after the continuation, inclusive range.
    pub tail_len: (usize, usize),
    /// Zipf exponent of both syllable distributions.
    pub zipf_exponent: f64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            seed: 7,
            total_words: 2000,
            loanword_fraction: 0.25,
            rare_native_fraction: 0.3,
            versatile_stems: 40,
            versatile_continuations: (8, 16),
            loanword_stems: 60,
            max_rare_continuations: 2,
            tail_len: (0, 3),
            zipf_exponent: 1.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticCorpus {
    pub words: Vec<String>,
    pub labels: Vec<(String, Label)>,
}

impl SyntheticCorpus {
    pub fn labeled_set(&self) -> LabeledSet {
        LabeledSet::from_pairs(self.labels.iter().map(|(w, l)| (w.as_str(), *l)))
    }
}

struct SyllableDist {
    inventory: Vec<String>,
    weights: WeightedIndex<f64>,
}

impl SyllableDist {
    fn zipf(inventory: &[String], exponent: f64, rng: &mut ChaCha8Rng) -> Self {
        let mut order: Vec<usize> = (0..inventory.len()).collect();
        order.shuffle(rng);
        let mut w = vec![0.0; inventory.len()];
        for (rank, &i) in order.iter().enumerate() {
            w[i] = 1.0 / ((rank + 1) as f64).powf(exponent);
        }
        SyllableDist {
            inventory: inventory.to_vec(),
            weights: WeightedIndex::new(w).unwrap(),
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        self.weights.sample(rng)
    }

    fn distinct(&self, k: usize, exclude: &HashSet<usize>, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let mut out = BTreeSet::new();
        while out.len() < k {
            let s = self.sample(rng);
            if !exclude.contains(&s) {
                out.insert(s);
            }
        }
        let mut v: Vec<usize> = out.into_iter().collect();
        v.shuffle(rng);
        v
    }
}

struct StemFamily {
    stem: [usize; 2],
    continuations: Vec<usize>,
}

struct Builder<'a> {
    cfg: &'a SyntheticConfig,
    rng: ChaCha8Rng,
    used_stems: HashSet<[usize; 2]>,
    seen: HashSet<String>,
}

impl Builder<'_> {
    fn new_stem(&mut self, dist: &SyllableDist) -> [usize; 2] {
        loop {
            let stem = [dist.sample(&mut self.rng), dist.sample(&mut self.rng)];
            if self.used_stems.insert(stem) {
                return stem;
            }
        }
    }

    fn family(&mut self, dist: &SyllableDist, continuations: usize) -> StemFamily {
        let stem = self.new_stem(dist);
        let continuations = dist.distinct(continuations, &HashSet::new(), &mut self.rng);
        StemFamily {
            stem,
            continuations,
        }
    }

    fn word(&mut self, fam: &StemFamily, cont: usize, dist: &SyllableDist) -> String {
        let (lo, hi) = self.cfg.tail_len;
        let tail_len = self.rng.gen_range(lo..=hi);
        let mut ids = vec![fam.stem[0], fam.stem[1], cont];
        for _ in 0..tail_len {
            ids.push(dist.sample(&mut self.rng));
        }
        ids.iter().map(|&i| dist.inventory[i].as_str()).collect()
    }

    // Emit `count` unique words from the family, covering every continuation
    // first so that the realized stem diversity equals the planned one.
    fn fill(&mut self, fam: &StemFamily, count: usize, dist: &SyllableDist, out: &mut Vec<String>) {
        let mut made = 0;
        let mut attempts = 0;
        while made < count && attempts < count * 200 {
            attempts += 1;
            let cont = if made < fam.continuations.len() {
                fam.continuations[made]
            } else {
                *fam.continuations.choose(&mut self.rng).unwrap()
            };
            let w = self.word(fam, cont, dist);
            if self.seen.insert(w.clone()) {
                out.push(w);
                made += 1;
            }
        }
    }
}

fn inventory() -> Vec<String> {
    CONSONANTS
        .iter()
        .flat_map(|&c| VOWEL_SIGNS.iter().map(move |v| format!("{c}{v}")))
        .collect()
}

/// Distribute `total` items over `groups` as evenly as possible.
fn split_even(total: usize, groups: usize) -> Vec<usize> {
    (0..groups)
        .map(|g| total / groups + usize::from(g < total % groups))
        .collect()
}

pub fn generate(cfg: &SyntheticConfig) -> SyntheticCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let inv = inventory();
    let native_dist = SyllableDist::zipf(&inv, cfg.zipf_exponent, &mut rng);
    let loan_dist = SyllableDist::zipf(&inv, cfg.zipf_exponent, &mut rng);
    let mut b = Builder {
        cfg,
        rng,
        used_stems: HashSet::new(),
        seen: HashSet::new(),
    };

    let n_loan = (cfg.total_words as f64 * cfg.loanword_fraction).round() as usize;
    let n_native = cfg.total_words - n_loan;
    let n_rare = (n_native as f64 * cfg.rare_native_fraction).round() as usize;
    let n_versatile = n_native - n_rare;

    let mut natives = Vec::with_capacity(n_native);
    let (lo, hi) = cfg.versatile_continuations;
    for count in split_even(n_versatile, cfg.versatile_stems) {
        let k = b.rng.gen_range(lo..=hi);
        let fam = b.family(&native_dist, k);
        b.fill(&fam, count.max(k), &native_dist, &mut natives);
    }
    natives.truncate(n_versatile);
    while natives.len() < n_native {
        let k = b.rng.gen_range(1..=cfg.max_rare_continuations);
        let fam = b.family(&native_dist, k);
        let count = b.rng.gen_range(1..=3).min(n_native - natives.len());
        b.fill(&fam, count, &native_dist, &mut natives);
    }

    let mut loans = Vec::with_capacity(n_loan);
    for count in split_even(n_loan, cfg.loanword_stems) {
        let k = b.rng.gen_range(1..=cfg.max_rare_continuations);
        let fam = b.family(&loan_dist, k);
        b.fill(&fam, count, &loan_dist, &mut loans);
    }

    let mut labels: Vec<(String, Label)> = natives
        .iter()
        .map(|w| (w.clone(), Label::Native))
        .chain(loans.iter().map(|w| (w.clone(), Label::Loanword)))
        .collect();
    labels.sort_by(|a, b| a.0.cmp(&b.0));
    let words = labels.iter().map(|(w, _)| w.clone()).collect();
    SyntheticCorpus { words, labels }
}
