//! Evaluation of a scoring against native/loanword labels: precision at
//! both ends of the ranking and cardinality-matched clustering quality.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::BufRead;

use log::info;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scores::{rank_order, ScoreTable};
use crate::syllable;

/// k values reported by default.
pub const DEFAULT_KS: [usize; 3] = [50, 100, 200];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Native,
    Loanword,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Native => "native",
            Label::Loanword => "loanword",
        }
    }
}

/// Gold labels. Words marked `unknown` in the input count as loanwords.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LabeledSet {
    labels: BTreeMap<String, Label>,
    unknown_merged: usize,
}

impl LabeledSet {
    pub fn from_pairs<I, S>(pairs: I) -> LabeledSet
    where
        I: IntoIterator<Item = (S, Label)>,
        S: AsRef<str>,
    {
        let labels = pairs
            .into_iter()
            .map(|(w, l)| (syllable::nfc(w.as_ref()), l))
            .collect();
        LabeledSet {
            labels,
            unknown_merged: 0,
        }
    }

    /// `word<TAB>label` with label in {native, loanword, unknown}.
    pub fn read_tsv<R: BufRead>(reader: R) -> Result<LabeledSet> {
        let mut labels = BTreeMap::new();
        let mut unknown_merged = 0;
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            let parse_err = |msg: String| Error::Parse { line: i + 1, msg };
            let (word, label) = line
                .split_once('\t')
                .ok_or_else(|| parse_err("expected word<TAB>label".into()))?;
            let label = match label.trim().to_ascii_lowercase().as_str() {
                "native" => Label::Native,
                "loanword" => Label::Loanword,
                "unknown" => {
                    unknown_merged += 1;
                    Label::Loanword
                }
                other => return Err(parse_err(format!("unknown label {other:?}"))),
            };
            let word = syllable::nfc(word.trim());
            if let Some(prev) = labels.insert(word.clone(), label) {
                if prev != label {
                    return Err(parse_err(format!("conflicting labels for {word:?}")));
                }
            }
        }
        if unknown_merged > 0 {
            info!("merged {unknown_merged} unknown-labelled words into loanwords");
        }
        Ok(LabeledSet {
            labels,
            unknown_merged,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn native_count(&self) -> usize {
        self.labels
            .values()
            .filter(|&&l| l == Label::Native)
            .count()
    }

    pub fn loanword_count(&self) -> usize {
        self.len() - self.native_count()
    }

    /// How many `unknown` input labels were folded into loanwords.
    pub fn unknown_merged(&self) -> usize {
        self.unknown_merged
    }

    pub fn get(&self, word: &str) -> Option<Label> {
        self.labels.get(word).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Label)> {
        self.labels.iter().map(|(w, &l)| (w.as_str(), l))
    }
}

/// A labeled word at its rank.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranked {
    pub word: String,
    pub score: f64,
    pub label: Label,
}

/// Labeled words sorted by descending score, ties by ascending word.
pub fn ordering(scores: &ScoreTable, labeled: &LabeledSet) -> Result<Vec<Ranked>> {
    let mut out = Vec::with_capacity(labeled.len());
    for (word, label) in labeled.iter() {
        let score = scores
            .get(word)
            .ok_or_else(|| Error::MissingScore(word.to_string()))?;
        out.push(Ranked {
            word: word.to_string(),
            score,
            label,
        });
    }
    out.sort_by(|a, b| rank_order((&a.word, a.score), (&b.word, b.score)));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndPrecision {
    pub k: usize,
    pub top: f64,
    pub bottom: f64,
    pub avg: f64,
}

pub fn end_precisions(ordering: &[Ranked], k: usize) -> Result<EndPrecision> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if k > ordering.len() {
        return Err(Error::KTooLarge {
            k,
            size: ordering.len(),
        });
    }
    let natives = ordering[..k]
        .iter()
        .filter(|r| r.label == Label::Native)
        .count();
    let loans = ordering[ordering.len() - k..]
        .iter()
        .filter(|r| r.label == Label::Loanword)
        .count();
    let top = natives as f64 / k as f64;
    let bottom = loans as f64 / k as f64;
    Ok(EndPrecision {
        k,
        top,
        bottom,
        avg: (top + bottom) / 2.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusteringQuality {
    pub native: f64,
    pub loanword: f64,
    pub weighted: f64,
}

/// The top `#natives` words form the predicted native cluster and the
/// bottom `#loanwords` the loanword cluster. Since each cluster has the size
/// of its gold class, precision, recall and F-measure coincide. An empty
/// class counts as perfectly recovered.
pub fn clustering_quality(ordering: &[Ranked]) -> ClusteringQuality {
    let n_native = ordering.iter().filter(|r| r.label == Label::Native).count();
    let n_loan = ordering.len() - n_native;
    let hits_native = ordering[..n_native]
        .iter()
        .filter(|r| r.label == Label::Native)
        .count();
    let hits_loan = ordering[n_native..]
        .iter()
        .filter(|r| r.label == Label::Loanword)
        .count();
    let ratio = |hits: usize, size: usize| {
        if size == 0 {
            1.0
        } else {
            hits as f64 / size as f64
        }
    };
    let native = ratio(hits_native, n_native);
    let loanword = ratio(hits_loan, n_loan);
    let total = n_native + n_loan;
    let weighted = if total == 0 {
        1.0
    } else {
        (n_native as f64 * native + n_loan as f64 * loanword) / total as f64
    };
    ClusteringQuality {
        native,
        loanword,
        weighted,
    }
}

/// Precision, recall and F-measure of one predicted cluster against its
/// gold class. Used to check that the three coincide.
pub fn cluster_prf(ordering: &[Ranked], label: Label) -> (f64, f64, f64) {
    let gold = ordering.iter().filter(|r| r.label == label).count();
    let n_native = ordering.iter().filter(|r| r.label == Label::Native).count();
    let predicted = match label {
        Label::Native => &ordering[..n_native],
        Label::Loanword => &ordering[n_native..],
    };
    let hits = predicted.iter().filter(|r| r.label == label).count() as f64;
    let p = hits / predicted.len() as f64;
    let r = hits / gold as f64;
    (p, r, 2.0 * p * r / (p + r))
}

/// Words with their scores, in listing order.
pub type Listing = Vec<(String, f64)>;

/// The `m` highest- and `m` lowest-scoring words. The bottom list starts
/// from the lowest score.
pub fn top_bottom_listing(scores: &ScoreTable, m: usize) -> (Listing, Listing) {
    let ranked = scores.ranked();
    let m = m.min(ranked.len());
    let top = ranked[..m]
        .iter()
        .map(|&(w, s)| (w.to_string(), s))
        .collect();
    let bottom = ranked[ranked.len() - m..]
        .iter()
        .rev()
        .map(|&(w, s)| (w.to_string(), s))
        .collect();
    (top, bottom)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub method: String,
    pub labeled: usize,
    pub native_count: usize,
    pub loanword_count: usize,
    pub unknown_merged: usize,
    pub end_precisions: Vec<EndPrecision>,
    pub clustering: ClusteringQuality,
}

pub fn evaluate(
    method: &str,
    scores: &ScoreTable,
    labeled: &LabeledSet,
    ks: &[usize],
) -> Result<EvaluationReport> {
    let ranked = ordering(scores, labeled)?;
    let end_precisions = ks
        .iter()
        .map(|&k| end_precisions(&ranked, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(EvaluationReport {
        method: method.to_string(),
        labeled: labeled.len(),
        native_count: labeled.native_count(),
        loanword_count: labeled.loanword_count(),
        unknown_merged: labeled.unknown_merged(),
        end_precisions,
        clustering: clustering_quality(&ranked),
    })
}

impl EvaluationReport {
    /// Plain-text rendering: one end-precision row per k, then clustering.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "method: {}  labeled: {} (native {}, loanword {}, unknown merged {})",
            self.method, self.labeled, self.native_count, self.loanword_count, self.unknown_merged
        );
        let _ = writeln!(
            s,
            "{:>6}  {:>6}  {:>6}  {:>6}",
            "k", "top-k", "bot-k", "avg-k"
        );
        for e in &self.end_precisions {
            let _ = writeln!(
                s,
                "{:>6}  {:>6.3}  {:>6.3}  {:>6.3}",
                e.k, e.top, e.bottom, e.avg
            );
        }
        let _ = writeln!(
            s,
            "{:>8}  {:>8}  {:>11}",
            "native", "loanword", "wt.average"
        );
        let c = &self.clustering;
        let _ = writeln!(
            s,
            "{:>8.3}  {:>8.3}  {:>11.3}",
            c.native, c.loanword, c.weighted
        );
        s
    }
}
