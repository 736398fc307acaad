//! Comparison scorers: the diversity initialization on its own (INIT) and
//! an interpolated unigram/bigram syllable model fitted to the whole word
//! set (GEN).

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::lexicon::{Lexicon, StemIndex, INIT_CAP};
use crate::model::Unit;

/// `min(0.99, diversity / tau)` with no lower clamp.
pub fn score_init(stems: &StemIndex, tau: usize) -> Vec<f64> {
    stems
        .diversities()
        .iter()
        .map(|&d| INIT_CAP.min(d as f64 / tau as f64))
        .collect()
}

/// Maximum-likelihood syllable unigram and bigram models over word types.
/// A begin marker gives the first syllable of every word a context.
#[derive(Debug, Clone)]
pub struct GenModel {
    lambda: f64,
    unigram: Vec<u64>,
    unigram_total: u64,
    bigram: HashMap<(Unit, u32), u64>,
    context_total: HashMap<Unit, u64>,
}

impl GenModel {
    pub fn train(lexicon: &Lexicon, lambda: f64) -> Result<GenModel> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidHyperparams(format!(
                "lambda must lie in [0, 1], got {lambda}"
            )));
        }
        let mut unigram = vec![0u64; lexicon.unit_count()];
        let mut bigram: HashMap<(Unit, u32), u64> = HashMap::new();
        let mut context_total: HashMap<Unit, u64> = HashMap::new();
        for w in lexicon.words() {
            let mut prev = Unit::Bos;
            for &u in w.units() {
                unigram[u as usize] += 1;
                *bigram.entry((prev, u)).or_insert(0) += 1;
                *context_total.entry(prev).or_insert(0) += 1;
                prev = Unit::Syl(u);
            }
        }
        let unigram_total = unigram.iter().sum();
        Ok(GenModel {
            lambda,
            unigram,
            unigram_total,
            bigram,
            context_total,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn unigram(&self, unit: u32) -> f64 {
        self.unigram[unit as usize] as f64 / self.unigram_total as f64
    }

    /// `P(next | context)`; zero for pairs never seen.
    pub fn conditional(&self, context: Unit, next: u32) -> f64 {
        match (
            self.bigram.get(&(context, next)),
            self.context_total.get(&context),
        ) {
            (Some(&c), Some(&t)) => c as f64 / t as f64,
            _ => 0.0,
        }
    }

    /// Sum of every conditional row, keyed by context.
    pub fn row_sums(&self) -> BTreeMap<Unit, f64> {
        let mut sums = BTreeMap::new();
        for &(ctx, next) in self.bigram.keys() {
            *sums.entry(ctx).or_insert(0.0) += self.conditional(ctx, next);
        }
        sums
    }

    pub fn unigram_sum(&self) -> f64 {
        (0..self.unigram.len() as u32)
            .map(|u| self.unigram(u))
            .sum()
    }

    /// Log of the interpolated product over the word's syllables.
    pub fn log_score(&self, units: &[u32]) -> f64 {
        let mut prev = Unit::Bos;
        let mut total = 0.0;
        for &u in units {
            let p = self.lambda * self.conditional(prev, u) + (1.0 - self.lambda) * self.unigram(u);
            total += p.ln();
            prev = Unit::Syl(u);
        }
        total
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenScores {
    /// Log of each word's product, by lexicon position.
    pub log_product: Vec<f64>,
    /// `log_product` min-max rescaled to [0, 1]; same ordering.
    pub scores: Vec<f64>,
}

pub fn score_gen(lexicon: &Lexicon, lambda: f64) -> Result<GenScores> {
    let model = GenModel::train(lexicon, lambda)?;
    let log_product: Vec<f64> = lexicon
        .words()
        .iter()
        .map(|w| model.log_score(w.units()))
        .collect();
    let scores = min_max(&log_product);
    Ok(GenScores {
        log_product,
        scores,
    })
}

fn min_max(values: &[f64]) -> Vec<f64> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi > lo {
        values.iter().map(|v| (v - lo) / (hi - lo)).collect()
    } else {
        vec![0.5; values.len()]
    }
}
