use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use log::info;
use nativeness::baselines::{score_gen, score_init};
use nativeness::eval::{clustering_quality, ordering, ClusteringQuality};
use nativeness::{run_uns, Hyperparams, LabeledSet, Lexicon, ScoreTable};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::common::{output, read_toml, InputArgs};
use crate::evaluate::load_labels;
use crate::failure::{CliResult, Failure};

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub labels: PathBuf,
    /// TOML grid file; its lists are replaced by any list given as a flag.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    pub alpha: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub rho: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    pub tau: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    pub stem_length: Option<Vec<usize>>,
    /// Add INIT and GEN rows.
    #[arg(long)]
    pub baselines: bool,
    /// CSV path; standard output if omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Grid file layout. Missing lists use the single default value.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    #[serde(default)]
    pub base: Hyperparams,
    pub n: Option<Vec<usize>>,
    pub alpha: Option<Vec<f64>>,
    pub rho: Option<Vec<usize>>,
    pub tau: Option<Vec<usize>>,
    pub stem_length: Option<Vec<usize>>,
}

#[derive(Debug, Serialize)]
struct Row {
    method: &'static str,
    n: String,
    alpha: String,
    rho: String,
    tau: usize,
    stem_length: usize,
    native: String,
    loanword: String,
    weighted: String,
}

fn blank() -> String {
    String::new()
}

fn fmt(v: f64) -> String {
    format!("{v:.6}")
}

impl Row {
    fn new(method: &'static str, hp: &Hyperparams, q: ClusteringQuality) -> Row {
        Row {
            method,
            n: blank(),
            alpha: blank(),
            rho: blank(),
            tau: hp.tau,
            stem_length: hp.stem_length,
            native: fmt(q.native),
            loanword: fmt(q.loanword),
            weighted: fmt(q.weighted),
        }
    }
}

/// Expand the grid. With alpha = 0 the diverse set has no effect, so rho
/// collapses to a single entry.
pub fn expand(grid: &Grid) -> Vec<Hyperparams> {
    let base = &grid.base;
    let or = |v: &Option<Vec<usize>>, d: usize| v.clone().unwrap_or_else(|| vec![d]);
    let ns = or(&grid.n, base.ngram_n);
    let rhos = or(&grid.rho, base.rho);
    let taus = or(&grid.tau, base.tau);
    let stems = or(&grid.stem_length, base.stem_length);
    let alphas = grid.alpha.clone().unwrap_or_else(|| vec![base.alpha]);
    let mut out = Vec::new();
    for &n in &ns {
        for &alpha in &alphas {
            let rho_list: &[usize] = if alpha == 0.0 {
                &rhos[..rhos.len().min(1)]
            } else {
                &rhos
            };
            for &rho in rho_list {
                for &tau in &taus {
                    for &stem_length in &stems {
                        out.push(Hyperparams {
                            ngram_n: n,
                            alpha,
                            rho,
                            tau,
                            stem_length,
                            ..base.clone()
                        });
                    }
                }
            }
        }
    }
    out
}

fn quality(
    lexicon: &Lexicon,
    scores: &[f64],
    labeled: &LabeledSet,
) -> CliResult<ClusteringQuality> {
    let table = ScoreTable::from_lexicon(lexicon, scores);
    Ok(clustering_quality(&ordering(&table, labeled)?))
}

pub fn run(args: &SweepArgs) -> CliResult<()> {
    let mut grid = match &args.config {
        Some(path) => read_toml::<Grid>(path)?,
        None => Grid {
            base: Hyperparams::default(),
            n: None,
            alpha: None,
            rho: None,
            tau: None,
            stem_length: None,
        },
    };
    macro_rules! apply {
        ($f:ident) => {
            if args.$f.is_some() {
                grid.$f = args.$f.clone();
            }
        };
    }
    apply!(n);
    apply!(alpha);
    apply!(rho);
    apply!(tau);
    apply!(stem_length);

    let configs = expand(&grid);
    if configs.is_empty() {
        return Err(Failure::config("the sweep grid is empty"));
    }
    for hp in &configs {
        hp.validate()?;
    }
    let lexicon = args.input.load()?;
    let labeled = load_labels(&args.labels)?;
    info!("sweeping {} configurations", configs.len());

    let uns_rows: Vec<CliResult<Row>> = configs
        .par_iter()
        .map(|hp| {
            let report = run_uns(&lexicon, hp)?;
            let q = quality(&lexicon, &report.state.scores, &labeled)?;
            let mut row = Row::new("uns", hp, q);
            row.n = hp.ngram_n.to_string();
            row.alpha = hp.alpha.to_string();
            row.rho = if hp.alpha == 0.0 {
                "N/A".into()
            } else {
                hp.rho.to_string()
            };
            Ok(row)
        })
        .collect();

    let mut rows = Vec::with_capacity(uns_rows.len());
    if args.baselines {
        let mut seen = Vec::new();
        for hp in &configs {
            if seen.contains(&(hp.tau, hp.stem_length)) {
                continue;
            }
            seen.push((hp.tau, hp.stem_length));
            let scores = score_init(&lexicon.stem_index(hp.stem_length), hp.tau);
            rows.push(Row::new("init", hp, quality(&lexicon, &scores, &labeled)?));
        }
        let base = &grid.base;
        let gen = score_gen(&lexicon, base.lambda_gen)?;
        rows.push(Row::new(
            "gen",
            base,
            quality(&lexicon, &gen.scores, &labeled)?,
        ));
    }
    for r in uns_rows {
        rows.push(r?);
    }

    let mut w = csv::Writer::from_writer(output(args.output.as_deref())?);
    for row in &rows {
        w.serialize(row)
            .map_err(|e| Failure::input(format!("writing sweep: {e}")))?;
    }
    let mut inner = w
        .into_inner()
        .map_err(|e| Failure::input(format!("writing sweep: {}", e.error())))?;
    inner
        .flush()
        .map_err(|e| Failure::input(format!("writing sweep: {e}")))
}
