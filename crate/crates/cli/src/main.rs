// Copyright 2026 The qtri Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qtri::edgelist::{parse_gc_instance, parse_graph, parse_pattern, write_gc_instance, write_graph};
use qtri::exact::{exact_sweep, unique_pair_values};
use qtri::fit::fit_rows;
use qtri::report::to_json;
use qtri::runner::{run_algorithm, Algorithm, Instance, InstanceSpec, RunParams};
use qtri::sweep::{read_csv, sweep, write_csv, SweepSpec};
use qtri::validate::{cover_trials, degree_test_rates, useful_grid};
use qtri_core::combinatorial::ComboParams;

#[derive(Parser)]
#[command(name = "qtri", version, about = "Query-cost laboratory for quantum triangle finding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance as an edge list.
    Gen {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one algorithm and print its JSON report.
    Run {
        #[arg(long)]
        alg: Algorithm,
        /// Edge-list input (a graph, or a graph-collision instance for `gc`).
        #[arg(long)]
        graph: Option<PathBuf>,
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Pattern file for `hcopy`; repeat for `monotone` certificates.
        #[arg(long)]
        pattern: Vec<PathBuf>,
        #[command(flatten)]
        combo: ComboArgs,
        /// Exit with status 1 when the run rejects.
        #[arg(long)]
        require_witness: bool,
        /// Record wall-clock time (makes the report time dependent).
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an `(n, seed)` grid and write CSV rows.
    Sweep {
        #[arg(long)]
        alg: Algorithm,
        #[command(flatten)]
        instance: InstanceArgs,
        /// Comma-separated sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        /// Number of seeds, run as 1..=seeds.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long)]
        pattern: Vec<PathBuf>,
        #[command(flatten)]
        combo: ComboArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit a log-log slope to the charged totals of a sweep CSV.
    Fit {
        #[arg(long)]
        csv: PathBuf,
        /// Only use rows of this algorithm.
        #[arg(long)]
        algorithm: Option<String>,
    },
    /// Monte Carlo and numeric checks of the sampling facts.
    Validate {
        #[arg(long)]
        lemma: Lemma,
        /// Only `default` is defined.
        #[arg(long, default_value = "default")]
        grid: String,
        #[arg(long, default_value_t = 50)]
        seeds: u64,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Exact generic-algorithm sweep for element distinctness with one colliding pair.
    Exact {
        #[arg(long, default_value_t = 9)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        r: u32,
        #[arg(long, default_value_t = 12)]
        t1_max: u32,
        #[arg(long, default_value_t = 8)]
        t2_max: u32,
        /// Comma-separated oracle values instead of the single-pair instance.
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<u64>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    /// Disjointness of a fixed and a random subset.
    Useful,
    /// Sampled neighbourhoods cover all pairs with many common neighbours.
    Almosttrivi,
    /// Error rates of the degree test.
    Firstfact,
}

#[derive(Args)]
struct InstanceArgs {
    /// er, planted, bipartite, c5, complete, gc, gc-none.
    #[arg(long, default_value = "er")]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    /// Edge density (for gc: fraction of vertices with f = 1).
    #[arg(long, default_value_t = 0.5)]
    p: f64,
}

#[derive(Args)]
struct ComboArgs {
    #[arg(long, default_value_t = 3.0 / 7.0)]
    epsilon: f64,
    #[arg(long, default_value_t = 1.0 / 7.0)]
    delta: f64,
    #[arg(long, default_value_t = 1.0 / 7.0)]
    epsilon_prime: f64,
    #[arg(long, default_value_t = 4.0)]
    c0: f64,
    #[arg(long)]
    threshold_cap: Option<u64>,
}

impl ComboArgs {
    fn params(&self) -> ComboParams {
        ComboParams {
            epsilon: self.epsilon,
            delta: self.delta,
            epsilon_prime: self.epsilon_prime,
            c0: self.c0,
            threshold_cap: self.threshold_cap,
            ..ComboParams::default()
        }
    }
}

fn run_params(combo: &ComboArgs, patterns: &[PathBuf]) -> Result<RunParams> {
    let patterns = patterns
        .iter()
        .map(|p| parse_pattern(&read(p)?).with_context(|| format!("{}", p.display())))
        .collect::<Result<_>>()?;
    Ok(RunParams { combo: combo.params(), patterns })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen { instance, seed, out } => {
            let n = instance.n.context("--n is required")?;
            let text = match InstanceSpec::parse(&instance.family, instance.p)?.generate(n, seed)? {
                Instance::Graph { graph, .. } => write_graph(&graph),
                Instance::Collision { inst, .. } => write_gc_instance(&inst),
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Run { alg, graph, instance, seed, pattern, combo, require_witness, timing, out } => {
            let inst = match &graph {
                Some(path) => {
                    let text = read(path)?;
                    let label = path.file_name().map_or("file".into(), |f| f.to_string_lossy().into_owned());
                    let inst = if alg == Algorithm::Gc {
                        Instance::collision(parse_gc_instance(&text).with_context(|| label.clone())?, &label)
                    } else {
                        Instance::graph(parse_graph(&text).with_context(|| label.clone())?, &label)
                    };
                    if let Some(n) = instance.n.filter(|&n| n != inst.n()) {
                        bail!("--n {n} does not match the {} vertices of {label}", inst.n());
                    }
                    inst
                }
                None => {
                    let n = instance.n.context("--n is required without --graph")?;
                    InstanceSpec::parse(&instance.family, instance.p)?.generate(n, seed)?
                }
            };
            let params = run_params(&combo, &pattern)?;
            let start = Instant::now();
            let mut report = run_algorithm(alg, &inst, seed, &params)?;
            if timing {
                report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
            }
            emit(out.as_deref(), &to_json(&report))?;
            if require_witness && !report.outcome.is_witness() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Sweep { alg, instance, ns, seeds, pattern, combo, out } => {
            let spec = SweepSpec {
                algorithm: alg,
                instances: InstanceSpec::parse(&instance.family, instance.p)?,
                ns,
                seeds: (1..=seeds).collect(),
                params: run_params(&combo, &pattern)?,
            };
            let rows = sweep(&spec)?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            emit(out.as_deref(), std::str::from_utf8(&buf)?)?;
        }
        Command::Fit { csv, algorithm } => {
            let rows = read_csv(fs::File::open(&csv).with_context(|| format!("opening {}", csv.display()))?)?;
            let fit = fit_rows(&rows, algorithm.as_deref())?;
            println!("{}", serde_json::to_string_pretty(&fit)?);
        }
        Command::Validate { lemma, grid, seeds, n } => {
            if grid != "default" {
                bail!("unknown grid `{grid}`");
            }
            let seeds: Vec<u64> = (1..=seeds).collect();
            let mut w = csv::Writer::from_writer(io::stdout());
            match lemma {
                Lemma::Useful => useful_grid()?.iter().try_for_each(|r| w.serialize(r))?,
                Lemma::Almosttrivi => {
                    cover_trials(n.unwrap_or(729), 3.0 / 7.0, &seeds)?.iter().try_for_each(|r| w.serialize(r))?
                }
                Lemma::Firstfact => {
                    degree_test_rates(n.unwrap_or(1024), 1.0 / 7.0, 4.0, &seeds)?.iter().try_for_each(|r| w.serialize(r))?
                }
            }
            w.flush()?;
        }
        Command::Exact { n, r, t1_max, t2_max, values } => {
            let values = values.unwrap_or_else(|| unique_pair_values(n));
            let s = exact_sweep(&values, r, t1_max, t2_max)?;
            let mut w = csv::Writer::from_writer(io::stdout());
            for row in &s.rows {
                w.serialize(row)?;
            }
            w.flush()?;
            eprintln!(
                "baseline {:.6}; best {:.6} at t1={} t2={}",
                s.baseline, s.best.success_probability, s.best.t1, s.best.t2
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}
