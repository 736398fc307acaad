//! Alternating refinement of nativeness scores and n-gram distributions.
//!
//! Each iteration re-estimates the native and loanword distributions from
//! the current scores, then moves every score one fixed-point step towards
//! the stationary point of the minimizing objective. Words in the diverse
//! set get an extra upward pull weighted by `alpha`.

use std::time::{Duration, Instant};

use log::info;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lexicon::{init_scores, Hyperparams, Lexicon, StemIndex};
use crate::model::{self, NgramDistribution, NgramIndex};

/// Everything derived from a lexicon that stays fixed during a run.
#[derive(Debug, Clone)]
pub struct Problem<'a> {
    lexicon: &'a Lexicon,
    hp: Hyperparams,
    stems: StemIndex,
    ngrams: NgramIndex,
    diverse: Vec<bool>,
}

impl<'a> Problem<'a> {
    pub fn new(lexicon: &'a Lexicon, hp: &Hyperparams) -> Result<Problem<'a>> {
        hp.validate()?;
        let stems = lexicon.stem_index(hp.stem_length);
        let ngrams = NgramIndex::build(lexicon, hp.ngram_n)?;
        let diverse = stems.diverse_mask(hp.rho);
        Ok(Problem {
            lexicon,
            hp: hp.clone(),
            stems,
            ngrams,
            diverse,
        })
    }

    pub fn lexicon(&self) -> &'a Lexicon {
        self.lexicon
    }

    pub fn hyperparams(&self) -> &Hyperparams {
        &self.hp
    }

    pub fn stems(&self) -> &StemIndex {
        &self.stems
    }

    pub fn ngrams(&self) -> &NgramIndex {
        &self.ngrams
    }

    /// Diverse-set membership per word position.
    pub fn diverse(&self) -> &[bool] {
        &self.diverse
    }

    /// Override diverse-set membership (used by tests and ablations).
    pub fn with_diverse(mut self, diverse: Vec<bool>) -> Self {
        assert_eq!(diverse.len(), self.lexicon.len());
        self.diverse = diverse;
        self
    }

    pub fn initial_scores(&self) -> Vec<f64> {
        init_scores(&self.stems, &self.hp)
    }

    fn clamp(&self, w: f64) -> f64 {
        w.clamp(self.hp.lower_clamp(), self.hp.upper_clamp())
    }
}

/// Right-hand side of the score fixed point for one word, unclamped.
pub fn score_step(
    counts: &[(usize, u32)],
    in_diverse: bool,
    prev: f64,
    alpha: f64,
    native: &NgramDistribution,
    loan: &NgramDistribution,
) -> f64 {
    let a = (1.0 - prev) * (1.0 - prev);
    let b = prev * prev;
    let mut num = 0.0;
    let mut den = 0.0;
    for &(id, freq) in counts {
        let n = native.prob(id);
        let l = loan.prob(id);
        let d = a * n + b * l;
        num += freq as f64 * n / d;
        den += freq as f64 * (n + l) / d;
    }
    if in_diverse {
        num += alpha / (1.0 - prev);
    }
    num / den
}

/// One fixed-point step for every word, clamped to the score range.
pub fn update_scores(
    problem: &Problem<'_>,
    scores: &[f64],
    native: &NgramDistribution,
    loan: &NgramDistribution,
) -> Vec<f64> {
    scores
        .iter()
        .enumerate()
        .map(|(pos, &w)| {
            let raw = score_step(
                problem.ngrams.counts(pos),
                problem.diverse[pos],
                w,
                problem.hp.alpha,
                native,
                loan,
            );
            problem.clamp(raw)
        })
        .collect()
}

/// Repeat the fixed-point step for a single word with the distributions
/// held fixed, until successive values differ by less than `tol`.
/// Returns the settled score and the number of steps taken.
pub fn settle_word_score(
    problem: &Problem<'_>,
    position: usize,
    start: f64,
    native: &NgramDistribution,
    loan: &NgramDistribution,
    tol: f64,
    max_steps: usize,
) -> (f64, usize) {
    let counts = problem.ngrams.counts(position);
    let in_diverse = problem.diverse[position];
    let mut w = problem.clamp(start);
    for step in 1..=max_steps {
        let next = problem.clamp(score_step(
            counts,
            in_diverse,
            w,
            problem.hp.alpha,
            native,
            loan,
        ));
        if (next - w).abs() < tol {
            return (next, step);
        }
        w = next;
    }
    (w, max_steps)
}

/// Log of the minimizing objective (used for the score step).
pub fn objective_min(
    problem: &Problem<'_>,
    scores: &[f64],
    native: &NgramDistribution,
    loan: &NgramDistribution,
) -> f64 {
    let mut conformance = 0.0;
    let mut inertia = 0.0;
    for (pos, &w) in scores.iter().enumerate() {
        let a = (1.0 - w) * (1.0 - w);
        let b = w * w;
        for &(id, freq) in problem.ngrams.counts(pos) {
            conformance += freq as f64 * (a * native.prob(id) + b * loan.prob(id)).ln();
        }
        if problem.diverse[pos] {
            inertia += (1.0 - w).ln();
        }
    }
    conformance + 2.0 * problem.hp.alpha * inertia
}

/// Log of the maximizing objective (used for the distribution step),
/// without the constraint terms.
pub fn objective_max(
    problem: &Problem<'_>,
    scores: &[f64],
    native: &NgramDistribution,
    loan: &NgramDistribution,
) -> f64 {
    let mut conformance = 0.0;
    let mut inertia = 0.0;
    for (pos, &w) in scores.iter().enumerate() {
        let a = w * w;
        let b = (1.0 - w) * (1.0 - w);
        for &(id, freq) in problem.ngrams.counts(pos) {
            conformance += freq as f64 * (a * native.prob(id) + b * loan.prob(id)).ln();
        }
        if problem.diverse[pos] {
            inertia += w.ln();
        }
    }
    conformance + 2.0 * problem.hp.alpha * inertia
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub iter: usize,
    pub o_max: f64,
    pub o_min: f64,
    pub flip_frac: f64,
}

/// Scores of every lexicon word (by position) plus the iteration trace.
#[derive(Debug, Clone, PartialEq)]
pub struct NativenessState {
    pub scores: Vec<f64>,
    pub iteration: usize,
    pub trace: Vec<TraceEntry>,
}

impl NativenessState {
    pub fn initial(scores: Vec<f64>) -> Self {
        NativenessState {
            scores,
            iteration: 0,
            trace: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Converged,
    MaxIters,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Stop early when the label-flip fraction drops below `conv_frac`.
    /// When false the loop always runs `max_iters` iterations.
    pub stop_on_convergence: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            stop_on_convergence: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub state: NativenessState,
    pub hyperparams: Hyperparams,
    pub stop_reason: StopReason,
    pub native: NgramDistribution,
    pub loanword: NgramDistribution,
    pub wall_time: Duration,
}

/// Serialized run report. Wall time is left out so that identical runs
/// produce identical files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub hyperparams: Hyperparams,
    pub stop_reason: StopReason,
    pub iterations: usize,
    pub trace: Vec<TraceEntry>,
}

impl RunReport {
    pub fn to_file(&self) -> ReportFile {
        ReportFile {
            hyperparams: self.hyperparams.clone(),
            stop_reason: self.stop_reason,
            iterations: self.state.iteration,
            trace: self.state.trace.clone(),
        }
    }
}

fn labels(scores: &[f64]) -> Vec<bool> {
    scores.iter().map(|&w| w >= 0.5).collect()
}

pub fn run_uns(lexicon: &Lexicon, hp: &Hyperparams) -> Result<RunReport> {
    run_uns_with(lexicon, hp, RunOptions::default())
}

pub fn run_uns_with(lexicon: &Lexicon, hp: &Hyperparams, opts: RunOptions) -> Result<RunReport> {
    let started = Instant::now();
    let problem = Problem::new(lexicon, hp)?;
    let (mut native, mut loan) = model::init_distributions(&problem.ngrams);
    let mut state = NativenessState::initial(problem.initial_scores());
    let mut prev_labels = labels(&state.scores);
    let mut stop_reason = StopReason::MaxIters;

    for iter in 1..=hp.max_iters {
        let next_native = model::update_native(&problem.ngrams, &state.scores, &native, &loan);
        let next_loan = model::update_loanword(&problem.ngrams, &state.scores, &native, &loan);
        native = next_native;
        loan = next_loan;

        let scores = update_scores(&problem, &state.scores, &native, &loan);
        let new_labels = labels(&scores);
        let flips = new_labels
            .iter()
            .zip(&prev_labels)
            .filter(|(a, b)| a != b)
            .count();
        let flip_frac = flips as f64 / scores.len() as f64;

        state.trace.push(TraceEntry {
            iter,
            o_max: objective_max(&problem, &scores, &native, &loan),
            o_min: objective_min(&problem, &scores, &native, &loan),
            flip_frac,
        });
        state.scores = scores;
        state.iteration = iter;
        prev_labels = new_labels;

        if opts.stop_on_convergence && flip_frac < hp.conv_frac {
            stop_reason = StopReason::Converged;
            break;
        }
    }

    let wall_time = started.elapsed();
    info!(
        "finished after {} iterations ({:?}) in {:.3}s",
        state.iteration,
        stop_reason,
        wall_time.as_secs_f64()
    );
    Ok(RunReport {
        state,
        hyperparams: hp.clone(),
        stop_reason,
        native,
        loanword: loan,
        wall_time,
    })
}
