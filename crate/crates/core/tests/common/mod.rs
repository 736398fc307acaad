#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use nativeness::eval::Label;
use nativeness::model::{NgramDistribution, NgramIndex, Role};
use nativeness::optimizer::Problem;
use nativeness::syllable::{self, Script};
use nativeness::Lexicon;
use rand::Rng;

/// Syllables used to spell toy words. Each is a single pseudo-syllable.
pub const TOY_SYLLABLES: &[&str] = &["ക", "ഖ", "ഗ", "ച", "പ്പ", "മാ", "ലി", "റു"];

pub fn spell(shape: &[usize]) -> String {
    shape.iter()
        .map(|&i| TOY_SYLLABLES[i % TOY_SYLLABLES.len()])
        .collect()
}

pub fn toy_lexicon(shapes: &[Vec<usize>]) -> Lexicon {
    Lexicon::from_words(shapes.iter().map(|s| spell(s)), Script::Malayalam).unwrap()
}

pub fn random_shapes<R: Rng>(
    rng: &mut R,
    max_words: usize,
    max_syllables: usize,
) -> Vec<Vec<usize>> {
    let n = rng.gen_range(1..=max_words);
    (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=max_syllables);
            (0..len)
                .map(|_| rng.gen_range(0..TOY_SYLLABLES.len()))
                .collect()
        })
        .collect()
}

pub fn random_distribution<R: Rng>(
    rng: &mut R,
    index: &NgramIndex,
    role: Role,
) -> NgramDistribution {
    let w = (0..index.vocab_len())
        .map(|_| rng.gen_range(0.05..1.0))
        .collect();
    NgramDistribution::from_weights(index, role, w)
}

/// Slope of the score objective for one word, with N and L held fixed.
pub fn score_slope(
    problem: &Problem<'_>,
    pos: usize,
    native: &NgramDistribution,
    loan: &NgramDistribution,
    w: f64,
) -> f64 {
    let mut g = 0.0;
    for &id in problem.ngrams().positions(pos) {
        let (n, l) = (native.prob(id), loan.prob(id));
        let d = (1.0 - w) * (1.0 - w) * n + w * w * l;
        g += 2.0 * (w * l - (1.0 - w) * n) / d;
    }
    if problem.diverse()[pos] {
        g -= 2.0 * problem.hyperparams().alpha / (1.0 - w);
    }
    g
}

/// Every root of `f` on `[lo, hi]` found by a grid scan followed by
/// bisection on each sign change.
pub fn bisection_roots(f: impl Fn(f64) -> f64, lo: f64, hi: f64, grid: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    let xs: Vec<f64> = (0..=grid)
        .map(|i| lo + (hi - lo) * i as f64 / grid as f64)
        .collect();
    for pair in xs.windows(2) {
        let (mut a, mut b) = (pair[0], pair[1]);
        let (fa, fb) = (f(a), f(b));
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if fa.signum() == fb.signum() {
            continue;
        }
        let neg_at_a = fa < 0.0;
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if (f(m) < 0.0) == neg_at_a {
                a = m;
            } else {
                b = m;
            }
        }
        roots.push(0.5 * (a + b));
    }
    roots
}

/// Objectives summed one n-gram occurrence at a time.
pub fn naive_objectives(
    problem: &Problem<'_>,
    scores: &[f64],
    native: &NgramDistribution,
    loan: &NgramDistribution,
) -> (f64, f64) {
    let alpha = problem.hyperparams().alpha;
    let (mut o_min, mut o_max) = (0.0, 0.0);
    for (pos, &w) in scores.iter().enumerate() {
        for &id in problem.ngrams().positions(pos) {
            let (n, l) = (native.prob(id), loan.prob(id));
            o_min += ((1.0 - w).powi(2) * n + w.powi(2) * l).ln();
            o_max += (w.powi(2) * n + (1.0 - w).powi(2) * l).ln();
        }
        if problem.diverse()[pos] {
            o_min += 2.0 * alpha * (1.0 - w).ln();
            o_max += 2.0 * alpha * w.ln();
        }
    }
    (o_min, o_max)
}

/// Diversity of each word's stem recomputed from strings alone.
pub fn naive_diversity(words: &[String], script: Script, stem_length: usize) -> Vec<usize> {
    let segs: Vec<Vec<String>> = words
        .iter()
        .map(|w| {
            syllable::segment(w, script)
                .unwrap()
                .iter()
                .map(|s| s.key().into_owned())
                .collect()
        })
        .collect();
    let mut follow: BTreeMap<Vec<String>, BTreeSet<String>> = BTreeMap::new();
    for s in &segs {
        if s.len() > stem_length {
            follow
                .entry(s[..stem_length].to_vec())
                .or_default()
                .insert(s[stem_length].clone());
        }
    }
    segs.iter()
        .map(|s| {
            let stem = &s[..stem_length.min(s.len())];
            follow.get(stem).map_or(0, |f| f.len())
        })
        .collect()
}

/// Metrics computed from pairwise ranks and explicit sets.
#[derive(Debug, Clone, PartialEq)]
pub struct BruteMetrics {
    pub top: f64,
    pub bottom: f64,
    pub native_q: f64,
    pub loan_q: f64,
    pub weighted: f64,
}

pub fn brute_metrics(items: &[(String, f64, Label)], k: usize) -> BruteMetrics {
    let n = items.len();
    let rank = |i: usize| {
        let (wi, si, _) = &items[i];
        items
            .iter()
            .filter(|(wj, sj, _)| sj > si || (sj == si && wj < wi))
            .count()
    };
    let ranks: Vec<usize> = (0..n).map(rank).collect();
    let is = |i: usize, l: Label| items[i].2 == l;
    let top = (0..n)
        .filter(|&i| ranks[i] < k && is(i, Label::Native))
        .count() as f64
        / k as f64;
    let bottom = (0..n)
        .filter(|&i| ranks[i] >= n - k && is(i, Label::Loanword))
        .count() as f64
        / k as f64;

    let n_native = (0..n).filter(|&i| is(i, Label::Native)).count();
    let f_measure = |label: Label, cluster: BTreeSet<usize>| {
        let gold: BTreeSet<usize> = (0..n).filter(|&i| is(i, label)).collect();
        if gold.is_empty() {
            return 1.0;
        }
        let hits = cluster.intersection(&gold).count() as f64;
        let p = hits / cluster.len() as f64;
        let r = hits / gold.len() as f64;
        if p + r == 0.0 {
            0.0
        } else {
            2.0 * p * r / (p + r)
        }
    };
    let native_q = f_measure(
        Label::Native,
        (0..n).filter(|&i| ranks[i] < n_native).collect(),
    );
    let loan_q = f_measure(
        Label::Loanword,
        (0..n).filter(|&i| ranks[i] >= n_native).collect(),
    );
    let weighted = (n_native as f64 * native_q + (n - n_native) as f64 * loan_q) / n as f64;
    BruteMetrics {
        top,
        bottom,
        native_q,
        loan_q,
        weighted,
    }
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

/// `(word, syllables)` pairs from a golden segmentation file.
pub fn golden_entries(name: &str) -> Vec<(String, Vec<String>)> {
    std::fs::read_to_string(golden_path(name))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let segs = l.split('\t').next().unwrap();
            let parts: Vec<String> = segs.split('|').map(str::to_string).collect();
            (parts.concat(), parts)
        })
        .collect()
}
