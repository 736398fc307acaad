//! Word → score tables and their TSV form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::lexicon::Lexicon;
use crate::syllable;

/// Descending by score, ties broken by ascending word.
pub fn rank_order(a: (&str, f64), b: (&str, f64)) -> Ordering {
    b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0))
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScoreTable {
    scores: BTreeMap<String, f64>,
}

impl ScoreTable {
    /// Pair per-position scores with the lexicon's words.
    pub fn from_lexicon(lexicon: &Lexicon, scores: &[f64]) -> ScoreTable {
        assert_eq!(lexicon.len(), scores.len(), "one score per word required");
        let scores = lexicon
            .words()
            .iter()
            .zip(scores)
            .map(|(w, &s)| (w.as_str().to_string(), s))
            .collect();
        ScoreTable { scores }
    }

    pub fn from_pairs<I, S>(pairs: I) -> ScoreTable
    where
        I: IntoIterator<Item = (S, f64)>,
        S: AsRef<str>,
    {
        let scores = pairs
            .into_iter()
            .map(|(w, s)| (syllable::nfc(w.as_ref()), s))
            .collect();
        ScoreTable { scores }
    }

    pub fn get(&self, word: &str) -> Option<f64> {
        self.scores.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// All entries in rank order.
    pub fn ranked(&self) -> Vec<(&str, f64)> {
        let mut v: Vec<(&str, f64)> = self.scores.iter().map(|(w, &s)| (w.as_str(), s)).collect();
        v.sort_by(|&a, &b| rank_order(a, b));
        v
    }

    /// `word<TAB>score` lines in rank order, six decimals.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> Result<()> {
        for (w, s) in self.ranked() {
            writeln!(out, "{w}\t{s:.6}")?;
        }
        Ok(())
    }

    pub fn read_tsv<R: BufRead>(reader: R) -> Result<ScoreTable> {
        let mut scores = BTreeMap::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            let parse_err = |msg: String| Error::Parse { line: i + 1, msg };
            let (word, score) = line
                .split_once('\t')
                .ok_or_else(|| parse_err("expected word<TAB>score".into()))?;
            let score: f64 = score
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("bad score {score:?}: {e}")))?;
            scores.insert(syllable::nfc(word.trim()), score);
        }
        Ok(ScoreTable { scores })
    }
}
