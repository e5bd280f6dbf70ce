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

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use hypersample::bounds::{
    mixing_budget_irregular, mixing_budget_regular, steps_from_budget, BoundsReport,
};
use hypersample::config_model::default_max_trials;
use hypersample::io::{bipartite_list_line, hypergraph_json, read_instance};
use hypersample::oracle::{enumerate_bipartite, exact_uniform_handle, DEFAULT_LIMIT};
use hypersample::rejection::{
    fpaus_cap, inner_eps, sample_batch, BipartiteSampler, ConfigurationSampler, SwitchSampler,
};
use hypersample::verify::{run_suite, Status, Suite, VerifyOptions};
use hypersample::{Error, HypergraphInstance};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hypersample",
    version,
    about = "Sample simple k-uniform hypergraphs with a given degree sequence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SamplerKind {
    Config,
    Switch,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edges,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Draw hypergraphs by rejection sampling.
    Sample {
        /// Degree file: JSON {"d": [...], "k": K} or two lines (k, then degrees).
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "config")]
        sampler: SamplerKind,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Switch-chain steps per bipartite draw.
        #[arg(long, conflicts_with = "eps_budget")]
        steps: Option<u64>,
        /// Derive the switch-chain steps from the mixing bound at this accuracy.
        #[arg(long)]
        eps_budget: Option<f64>,
        /// Target for the capped sampler; with --eps-budget it rescales the
        /// chain accuracy and sets the default cap.
        #[arg(long)]
        c0: Option<f64>,
        /// Give up after this many bipartite draws per hypergraph.
        #[arg(long)]
        cap: Option<u64>,
        /// Upper limit on steps derived from --eps-budget.
        #[arg(long, default_value_t = 1_000_000)]
        step_cap: u64,
        /// Enumeration limit for the oracle sampler.
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: u64,
        #[arg(long, value_enum, default_value = "edges")]
        format: Format,
        /// Output file, or - for stdout.
        #[arg(long, default_value = "-")]
        out: String,
        /// Worker threads; output does not depend on this.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print every closed-form bound for an instance as JSON.
    Bounds {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        c0: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Run property suites against the enumeration oracle.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        /// Largest number of hyperedges in generated instances.
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Draws per instance in the sampling suites.
        #[arg(long, default_value_t = 100_000)]
        draws: usize,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: u64,
    },
    /// Count bipartite graphs and hypergraphs exactly.
    Enumerate {
        #[arg(long)]
        input: PathBuf,
        /// Also print every bipartite graph, one per line.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: u64,
    },
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Fail { .. } => "fail",
        Error::Exhausted { .. } => "exhausted",
        Error::NonGraphical => "non_graphical",
        Error::EmptySpace => "empty_space",
        Error::TooLarge { .. } => "too_large",
        Error::InvalidRegion(_) => "invalid_region",
        Error::PreconditionViolated(_) => "precondition",
        Error::Parse(_) => "parse",
        Error::Io(_) => "io",
        _ => "invalid_input",
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Fail { .. } | Error::Exhausted { .. } | Error::NonGraphical | Error::EmptySpace => {
            EXIT_FAILURE
        }
        Error::TooLarge { .. } => EXIT_LIMIT,
        _ => EXIT_USAGE,
    }
}

/// One JSON object on stderr, then the matching exit code.
fn emit(kind: &str, message: &str, code: u8) -> ExitCode {
    let line = serde_json::json!({
        "error": kind,
        "message": message,
        "exit": code,
    });
    eprintln!("{line}");
    ExitCode::from(code)
}

fn report(e: &Error, code: u8) -> ExitCode {
    emit(error_kind(e), &e.to_string(), code)
}

fn fail(e: Error) -> ExitCode {
    let code = exit_code(&e);
    report(&e, code)
}

fn usage(message: &str) -> ExitCode {
    emit("usage", message, EXIT_USAGE)
}

fn open_out(out: &str) -> io::Result<Box<dyn Write>> {
    if out == "-" {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        Ok(Box::new(BufWriter::new(File::create(out)?)))
    }
}

fn switch_steps(
    inst: &HypergraphInstance,
    steps: Option<u64>,
    eps_budget: Option<f64>,
    c0: Option<f64>,
    step_cap: u64,
) -> Result<Option<(u64, Option<f64>)>, Error> {
    if let Some(t) = steps {
        return Ok(Some((t, None)));
    }
    let Some(eps) = eps_budget else {
        return Ok(None);
    };
    let chain_eps = match c0 {
        Some(c) => inner_eps(eps, c),
        None => eps,
    };
    let ln_budget = match inst.regular_degree() {
        Some(d) if d == inst.k() => mixing_budget_regular(inst.n(), d, chain_eps)?,
        _ => mixing_budget_irregular(inst, chain_eps)?.value,
    };
    let t = steps_from_budget(ln_budget, step_cap);
    if t == step_cap && ln_budget > (step_cap as f64).ln() {
        eprintln!(
            "warning: mixing budget exp({ln_budget:.2}) steps exceeds --step-cap; running {t} steps"
        );
    }
    Ok(Some((t, Some(chain_eps))))
}

#[allow(clippy::too_many_arguments)]
fn cmd_sample(
    input: PathBuf,
    sampler: SamplerKind,
    count: usize,
    seed: u64,
    steps: Option<u64>,
    eps_budget: Option<f64>,
    c0: Option<f64>,
    cap: Option<u64>,
    step_cap: u64,
    limit: u64,
    format: Format,
    out: String,
    jobs: Option<usize>,
) -> ExitCode {
    if !matches!(sampler, SamplerKind::Switch) && (steps.is_some() || eps_budget.is_some()) {
        return usage("--steps and --eps-budget apply to the switch sampler only");
    }
    let inst = match read_instance(&input) {
        Ok(i) => i,
        Err(e) => return fail(e),
    };
    let mut cap = cap;
    let handle: Box<dyn BipartiteSampler> = match sampler {
        SamplerKind::Config => {
            Box::new(ConfigurationSampler::new(&inst).with_max_trials(default_max_trials(&inst)))
        }
        SamplerKind::Oracle => match exact_uniform_handle(&inst, limit) {
            Ok(h) => Box::new(h),
            Err(e) => return fail(e),
        },
        SamplerKind::Switch => {
            let (t, tv) = match switch_steps(&inst, steps, eps_budget, c0, step_cap) {
                Ok(Some(x)) => x,
                Ok(None) => return usage("--sampler switch needs --steps or --eps-budget"),
                Err(e) => return fail(e),
            };
            if cap.is_none() {
                if let (Some(c), Some(e)) = (c0, eps_budget) {
                    match fpaus_cap(c, e) {
                        Ok(x) => cap = Some(x),
                        Err(e) => return fail(e),
                    }
                }
            }
            let s = match SwitchSampler::new(&inst, t) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            Box::new(match tv {
                Some(eps) => s.with_tv_bound(eps),
                None => s,
            })
        }
    };

    let run = || sample_batch(&inst, handle.as_ref(), seed, count, cap);
    let results = match jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(run),
            Err(e) => return usage(&format!("cannot start {j} workers: {e}")),
        },
        None => run(),
    };

    let mut w = match open_out(&out) {
        Ok(w) => w,
        Err(e) => return fail(e.into()),
    };
    for (i, r) in results.into_iter().enumerate() {
        let (h, stats) = match r {
            Ok(x) => x,
            Err(e) => {
                let _ = w.flush();
                eprintln!("draw {} of {count} failed", i + 1);
                return fail(e);
            }
        };
        let written = match format {
            Format::Edges => {
                let sep = if i > 0 { "\n" } else { "" };
                write!(w, "{sep}{h}")
            }
            Format::Json => writeln!(w, "{}", hypergraph_json(&h, Some(&stats.iterations))),
        };
        if let Err(e) = written {
            return fail(e.into());
        }
    }
    match w.flush() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e.into()),
    }
}

fn cmd_bounds(input: PathBuf, c0: Option<f64>, eps: Option<f64>) -> ExitCode {
    let inst = match read_instance(&input) {
        Ok(i) => i,
        Err(e) => return fail(e),
    };
    match BoundsReport::compute(&inst, c0, eps) {
        Ok(r) => {
            println!("{}", r.to_json());
            ExitCode::SUCCESS
        }
        Err(e) => report(&e, EXIT_USAGE),
    }
}

fn cmd_verify(
    suite: String,
    max_n: Option<usize>,
    max_m: Option<usize>,
    seed: u64,
    draws: usize,
    limit: u64,
) -> ExitCode {
    let suite: Suite = match suite.parse() {
        Ok(s) => s,
        Err(e) => return report(&e, EXIT_USAGE),
    };
    let opts = VerifyOptions {
        max_n,
        max_m,
        seed,
        limit,
        draws,
    };
    let mut out = io::stdout().lock();
    let result = run_suite(suite, &opts, &mut |v| {
        let _ = writeln!(out, "{v}");
    });
    println!(
        "summary: {} pass, {} fail, {} skip",
        result.count(Status::Pass),
        result.count(Status::Fail),
        result.count(Status::Skip)
    );
    if result.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}

fn cmd_enumerate(input: PathBuf, list: bool, limit: u64) -> ExitCode {
    let inst = match read_instance(&input) {
        Ok(i) => i,
        Err(e) => return fail(e),
    };
    let r = match enumerate_bipartite(&inst.bipartite(), limit, list) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let mut out = BufWriter::new(io::stdout().lock());
    let _ = writeln!(
        out,
        "B={} B*={} H={} p={}",
        r.count_b, r.count_b_star, r.count_h, r.p_simple
    );
    let _ = writeln!(
        out,
        "p_decimal={:.12}",
        r.p_simple.to_f64().unwrap_or(f64::NAN)
    );
    for g in r.states.iter().flatten() {
        let _ = writeln!(out, "{}", bipartite_list_line(g));
    }
    match out.flush() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e.into()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match cli.command {
        Command::Sample {
            input,
            sampler,
            count,
            seed,
            steps,
            eps_budget,
            c0,
            cap,
            step_cap,
            limit,
            format,
            out,
            jobs,
        } => cmd_sample(
            input, sampler, count, seed, steps, eps_budget, c0, cap, step_cap, limit, format, out,
            jobs,
        ),
        Command::Bounds { input, c0, eps } => cmd_bounds(input, c0, eps),
        Command::Verify {
            suite,
            max_n,
            max_m,
            seed,
            draws,
            limit,
        } => cmd_verify(suite, max_n, max_m, seed, draws, limit),
        Command::Enumerate { input, list, limit } => cmd_enumerate(input, list, limit),
    }
}
