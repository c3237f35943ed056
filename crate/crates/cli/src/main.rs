// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! `hyperchrom`: generate, order, colour, classify and verify hypergraphs.
//!
//! Exit codes: 0 success, 1 analysed failure, 2 usage or input error,
//! 3 internal error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperchrom::{rational, Rational};

use crate::commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "hyperchrom", version, about = "Edge colouring of hypergraphs with bounded codegree")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input hypergraph in `.hg` format.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Write the report (or, for `gen`, the hypergraph) here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Codegree bound; for `gen` of planes and near-pencils, the fold count.
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print the full JSON report on stdout.
    #[arg(long)]
    pub json: bool,
}

fn parse_rat(s: &str) -> Result<Rational, String> {
    rational::parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational such as 1/10 or 0.1"))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a named or random instance.
    Gen(GenArgs),
    /// Reorder edges and print forward degrees and partition certificates.
    Order(OrderArgs),
    /// Colour from lists with the pipeline, stability script or extremal ladder.
    Color(ColorArgs),
    /// Exact chromatic index, or list colourability with `--lists`.
    Exact(ExactArgs),
    /// Evaluate the intersecting bound and classify equality cases.
    Classify(ClassifyArgs),
    /// Run the invariant suite on one instance.
    Verify(VerifyArgs),
    /// Run the invariant suite and the pipeline over a seeded random corpus.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    Plane,
    NearPencil,
    Random,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub kind: GenKind,
    /// Plane order.
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long, default_value_t = 7)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub size_min: usize,
    #[arg(long, default_value_t = 4)]
    pub size_max: usize,
    /// Target edge count for random instances.
    #[arg(long, default_value_t = 10)]
    pub density: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderMode {
    Reorder,
    Stability,
    Extremal,
}

#[derive(Args, Debug)]
pub struct OrderArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "stability")]
    pub mode: OrderMode,
    #[arg(long, value_parser = parse_rat, default_value = "1/2")]
    pub tau: Rational,
    #[arg(long, value_parser = parse_rat, default_value = "1")]
    pub k: Rational,
    #[arg(long, value_parser = parse_rat, default_value = "1/50")]
    pub sigma: Rational,
    #[arg(long, value_parser = parse_rat, default_value = "1/10")]
    pub delta: Rational,
    #[arg(long, value_parser = parse_rat, default_value = "1/4")]
    pub gamma: Rational,
    #[arg(long, default_value_t = 2)]
    pub r0: usize,
    /// Inner σ of the extremal partition; defaults to δ/4.
    #[arg(long, value_parser = parse_rat)]
    pub sigma_inner: Option<Rational>,
    /// Report whether greedy succeeds with lists of this size.
    #[arg(long)]
    pub probe: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColorMode {
    Pipeline,
    Stability,
    Extremal,
}

#[derive(Args, Debug)]
pub struct ColorArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "pipeline")]
    pub mode: ColorMode,
    /// `uniform:K` or a sidecar file with one list per edge; defaults to `uniform:tn`.
    #[arg(long)]
    pub lists: Option<String>,
    #[arg(long, value_parser = parse_rat, default_value = "1/4")]
    pub eps: Rational,
    #[arg(long, value_parser = parse_rat, default_value = "1/10")]
    pub delta: Rational,
    #[arg(long, value_parser = parse_rat, default_value = "1/8")]
    pub gamma: Rational,
    #[arg(long, value_parser = parse_rat, default_value = "1/50")]
    pub sigma: Rational,
    #[arg(long, value_parser = parse_rat, default_value = "1/4")]
    pub alpha: Rational,
    /// Defaults to `⌈√n⌉ + 2`.
    #[arg(long)]
    pub r0: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub r1: usize,
    #[arg(long, default_value_t = 12)]
    pub exact_budget: usize,
    /// Aim for `tn − 1` colours on a non-intersecting hypergraph.
    #[arg(long)]
    pub moreover: bool,
}

#[derive(Args, Debug)]
pub struct ExactArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub lists: Option<String>,
    #[arg(long, default_value_t = 64)]
    pub budget_edges: usize,
    #[arg(long, default_value_t = 64)]
    pub budget_colours: usize,
    /// Overrides HYPERCHROM_TIME_CAP_MS.
    #[arg(long)]
    pub time_cap_ms: Option<u64>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_parser = parse_rat, default_value = "1/50")]
    pub sigma: Rational,
    #[arg(long, value_parser = parse_rat, default_value = "1/10")]
    pub delta: Rational,
    #[arg(long, value_parser = parse_rat, default_value = "1/4")]
    pub gamma: Rational,
    #[arg(long, default_value_t = 2)]
    pub r0: usize,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 12)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub size_min: usize,
    #[arg(long, default_value_t = 5)]
    pub size_max: usize,
    #[arg(long, default_value_t = 10)]
    pub density: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Gen(a) => commands::gen(&a),
        Command::Order(a) => commands::order(&a),
        Command::Color(a) => commands::color(&a),
        Command::Exact(a) => commands::exact(&a),
        Command::Classify(a) => commands::classify(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Sweep(a) => commands::sweep(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                CliError::Internal(_) => 3,
                _ => 2,
            })
        }
    }
}
