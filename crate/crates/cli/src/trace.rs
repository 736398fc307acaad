use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use nativeness::optimizer::TraceEntry;
use serde::Deserialize;

use crate::common::output;
use crate::failure::{CliResult, Context};

#[derive(Debug, Args)]
pub struct TraceArgs {
    /// Run report JSON written by `score --report`.
    #[arg(long)]
    pub report: PathBuf,
    /// CSV path; standard output if omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Deserialize)]
struct TraceOnly {
    trace: Vec<TraceEntry>,
}

pub fn run(args: &TraceArgs) -> CliResult<()> {
    let text = fs::read_to_string(&args.report).or_input(args.report.display())?;
    let report: TraceOnly = serde_json::from_str(&text).or_input(args.report.display())?;
    let out = output(args.output.as_deref())?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["iteration", "o_max", "o_min"])
        .or_input("writing trace")?;
    for e in &report.trace {
        w.write_record([e.iter.to_string(), e.o_max.to_string(), e.o_min.to_string()])
            .or_input("writing trace")?;
    }
    w.flush().or_input("writing trace")?;
    let mut inner = w
        .into_inner()
        .map_err(|e| e.into_error())
        .or_input("writing trace")?;
    inner.flush().or_input("writing trace")
}
