//! Command-line front end: single solves, replication studies, constraint
//! counts, the alpha-unimodality demonstration and the extreme-event pipeline.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use iwsaa::calibrate::{read_observations, write_observations};
use iwsaa::complexity::{empirical_counts, COUNT_CSV_HEADER};
use iwsaa::counterexample::run_counterexample;
use iwsaa::experiments::{
    emit_report, generate_extreme_event_data, problems, run_convergence, run_extreme_event, run_high_dim,
    run_sampler_influence, stream_id, write_report, ExperimentReport, ExtremeEventConfig, ReportFormat, RunOptions,
    DEFAULT_N_LIST, DEFAULT_REPLICATIONS,
};
use iwsaa::lp::{assemble, solve, write_lp};
use iwsaa::par;
use iwsaa::problem::ProblemFile;
use iwsaa::sampling::{Sampler, SamplerSpec};
use iwsaa::shape::{discretize_with, DiscretizeOptions};

/// Names accepted by `--problem` in place of a file path.
const BUILTINS: [&str; 4] = ["unimodal-1d", "orthounimodal-4d", "sampler-influence", "high-dim-10d"];

#[derive(Parser)]
#[command(name = "iwsaa", version, about = "Importance-weighted SAA for shape-constrained distributional optimization")]
struct Cli {
    /// Worker threads for replications (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Output directory; without it results go to stdout.
    #[arg(long, global = true, env = "IWSAA_OUT_DIR")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => ReportFormat::Csv,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Args, Clone)]
struct ProblemArgs {
    /// Problem JSON file or a built-in name (unimodal-1d, orthounimodal-4d,
    /// sampler-influence, high-dim-10d).
    #[arg(long)]
    problem: String,
    /// Sampler JSON (inline or file) overriding the problem's sampler.
    #[arg(long)]
    sampler: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Use every comparable pair instead of the transitive reduction.
    #[arg(long)]
    no_reduce: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one sampled LP and print its certificate.
    Solve {
        #[command(flatten)]
        p: ProblemArgs,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Replication index selecting the RNG stream.
        #[arg(long, default_value_t = 0)]
        rep: usize,
        /// Also write the assembled LP in text form.
        #[arg(long)]
        write_lp: Option<PathBuf>,
    },
    /// Replications over a list of sample sizes.
    Converge {
        #[command(flatten)]
        p: ProblemArgs,
        /// Comma-separated sample sizes.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_N_LIST)]
        n: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_REPLICATIONS)]
        reps: usize,
    },
    /// Same seeds under several samplers.
    Influence {
        #[arg(long, default_value = "sampler-influence")]
        problem: String,
        /// Sampler JSON (inline or file); repeat for several. Defaults to the
        /// uniform and three truncated normals.
        #[arg(long)]
        sampler: Vec<String>,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        no_reduce: bool,
    },
    /// Envelope-bounded high-dimensional orthounimodal run.
    Highdim {
        #[arg(long, default_value = "high-dim-10d")]
        problem: String,
        #[arg(long, default_value_t = 5000)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        no_reduce: bool,
    },
    /// Empirical and exact orthounimodality constraint counts.
    Complexity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Inconsistent feasible solution under alpha-unimodality.
    Counterexample {
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Data-calibrated upper bound on a rare-event probability.
    ExtremeEvent {
        #[arg(long, value_enum, default_value = "scaled-3d")]
        config: Preset,
        /// Observation CSV files (no header, one row per record). Without
        /// them `--datasets` sets are generated.
        #[arg(long)]
        data: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        datasets: usize,
        /// Records per generated data set (default: the preset's).
        #[arg(long)]
        records: Option<usize>,
        /// Family-wise miscoverage level.
        #[arg(long)]
        alpha: Option<f64>,
        /// IW-SAA samples per solve.
        #[arg(long)]
        n: Option<usize>,
        /// Solver runs per data set.
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        no_reduce: bool,
        /// Write generated data sets to this directory.
        #[arg(long)]
        save_data: Option<PathBuf>,
    },
    /// Write the built-in problem files as JSON.
    WriteProblems {
        /// Target directory.
        dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    #[value(name = "scaled-3d")]
    Scaled3d,
    #[value(name = "full-10d")]
    Full10d,
}

fn builtin(name: &str) -> Option<ProblemFile> {
    Some(match name {
        "unimodal-1d" => problems::unimodal_1d(),
        "orthounimodal-4d" => problems::orthounimodal_4d(),
        "sampler-influence" => problems::sampler_influence(),
        "high-dim-10d" => problems::high_dim(10),
        _ => return None,
    })
}

fn load_problem(spec: &str) -> Result<ProblemFile> {
    let path = Path::new(spec);
    if path.exists() {
        return ProblemFile::load(path).with_context(|| format!("reading problem {spec}"));
    }
    builtin(spec).with_context(|| format!("no problem file {spec} and no built-in of that name ({})", BUILTINS.join(", ")))
}

fn load_sampler(spec: &str) -> Result<SamplerSpec> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        std::fs::read_to_string(spec).with_context(|| format!("reading sampler {spec}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing sampler {spec}"))
}

struct Output {
    dir: Option<PathBuf>,
    format: Format,
}

impl Output {
    fn ext(&self) -> &'static str {
        match self.format {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }

    fn report(&self, report: &ExperimentReport, stem: &str) -> Result<()> {
        match &self.dir {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                let path = dir.join(format!("{stem}.{}", self.ext()));
                emit_report(report, &path, self.format.into())?;
                eprintln!("wrote {}", path.display());
            }
            None => write_report(report, std::io::stdout().lock(), self.format.into())?,
        }
        print_summary(report);
        Ok(())
    }

    fn text(&self, text: &str, stem: &str) -> Result<()> {
        match &self.dir {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                let path = dir.join(format!("{stem}.{}", self.ext()));
                std::fs::write(&path, text)?;
                eprintln!("wrote {}", path.display());
            }
            None => {
                std::io::stdout().write_all(text.as_bytes())?;
            }
        }
        Ok(())
    }
}

fn print_summary(report: &ExperimentReport) {
    eprintln!("{} / {} / {}", report.id, report.problem, report.sampler);
    eprintln!("{:>7} {:>5} {:>4} {:>12} {:>12} {:>12}", "n", "count", "fail", "mean", "se", "mean|err|");
    for s in &report.summary {
        eprintln!(
            "{:>7} {:>5} {:>4} {:>12.6} {:>12.6} {:>12}",
            s.n,
            s.count,
            s.failures,
            s.mean,
            s.se,
            s.mean_abs_error.map_or("-".into(), |e| format!("{e:.6}"))
        );
    }
    for note in &report.notes {
        eprintln!("note: {note}");
    }
}

fn run(cli: Cli) -> Result<()> {
    let out = Output { dir: cli.out, format: cli.format };
    match cli.command {
        Command::Solve { p, n, rep, write_lp: lp_path } => {
            let file = load_problem(&p.problem)?;
            let spec = match &p.sampler {
                Some(s) => load_sampler(s)?,
                None => file.sampler.clone(),
            };
            let sampler = Sampler::new(spec)?;
            let batch = sampler.draw(n, p.seed, stream_id(n, rep))?;
            let set = discretize_with(&file.problem.shape, &batch, DiscretizeOptions { reduce: !p.no_reduce })?;
            let model = assemble(&file.problem, &batch, &set)?;
            if let Some(path) = lp_path {
                let file = std::fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                write_lp(&model, std::io::BufWriter::new(file))?;
            }
            let sol = solve(&model)?;
            let summary = json!({
                "problem": file.name,
                "sampler": sampler.spec().name(),
                "n": n,
                "seed": p.seed,
                "replication": rep,
                "stream": stream_id(n, rep),
                "status": sol.status,
                "value": sol.objective,
                "reference_optimum": file.reference_optimum,
                "variables": model.n_vars,
                "moment_rows": model.moment_rows,
                "shape_rows": set.row_count(),
                "naive_pairs": set.naive_pair_count,
                "certificate": sol.certificate,
                "farkas": sol.farkas,
                "stats": sol.stats,
            });
            out.text(&(serde_json::to_string_pretty(&summary)? + "\n"), "solve")
        }
        Command::Converge { p, n, reps } => {
            let file = load_problem(&p.problem)?;
            let sampler = p.sampler.as_deref().map(load_sampler).transpose()?;
            let opts = RunOptions { reduce: !p.no_reduce };
            let report = par::with_workers(cli.workers, || {
                run_convergence(&file, sampler.as_ref(), &n, reps, p.seed, opts)
            })?;
            out.report(&report, "convergence")
        }
        Command::Influence { problem, sampler, n, reps, seed, no_reduce } => {
            let file = load_problem(&problem)?;
            let samplers = if sampler.is_empty() {
                problems::influence_samplers()
            } else {
                sampler.iter().map(|s| load_sampler(s)).collect::<Result<Vec<_>>>()?
            };
            let opts = RunOptions { reduce: !no_reduce };
            let reports = par::with_workers(cli.workers, || {
                run_sampler_influence(&file, &samplers, n, reps, seed, opts)
            })?;
            for (k, r) in reports.iter().enumerate() {
                out.report(r, &format!("influence-{k}"))?;
            }
            Ok(())
        }
        Command::Highdim { problem, n, reps, seed, no_reduce } => {
            let file = load_problem(&problem)?;
            let opts = RunOptions { reduce: !no_reduce };
            let report = par::with_workers(cli.workers, || run_high_dim(&file, n, reps, seed, opts))?;
            out.report(&report, "high-dim")
        }
        Command::Complexity { n, d, reps, seed } => {
            let r = par::with_workers(cli.workers, || empirical_counts(n, d, reps, seed))?;
            let text = match out.format {
                Format::Csv => format!("{COUNT_CSV_HEADER}\n{}\n", r.csv_row()),
                Format::Json => serde_json::to_string_pretty(&r)? + "\n",
            };
            out.text(&text, "complexity")
        }
        Command::Counterexample { alpha, n, seed } => {
            let r = run_counterexample(alpha, n, seed)?;
            out.text(&(serde_json::to_string_pretty(&r)? + "\n"), "counterexample")
        }
        Command::ExtremeEvent { config, data, datasets, records, alpha, n, reps, seed, no_reduce, save_data } => {
            let mut cfg = match config {
                Preset::Scaled3d => ExtremeEventConfig::scaled_3d(),
                Preset::Full10d => ExtremeEventConfig::full_10d(),
            };
            if let Some(v) = records {
                cfg.records = v;
            }
            if let Some(v) = alpha {
                cfg.alpha = v;
            }
            if let Some(v) = n {
                cfg.n_solver = v;
            }
            if let Some(v) = reps {
                cfg.runs_per_dataset = v;
            }
            let sets: Vec<Vec<Vec<f64>>> = if data.is_empty() {
                if datasets == 0 {
                    bail!("need at least one data set");
                }
                let sets: Vec<_> = par::with_workers(cli.workers, || {
                    par::map_indexed(datasets, |k| generate_extreme_event_data(&cfg, seed, k as u64))
                });
                if let Some(dir) = save_data {
                    std::fs::create_dir_all(&dir)?;
                    for (k, s) in sets.iter().enumerate() {
                        write_observations(&dir.join(format!("data-{k}.csv")), s)?;
                    }
                }
                sets
            } else {
                data.iter().map(|p| read_observations(p)).collect::<iwsaa::Result<_>>()?
            };
            let opts = RunOptions { reduce: !no_reduce };
            let report = par::with_workers(cli.workers, || run_extreme_event(&sets, &cfg, seed, opts))?;
            out.report(&report, "extreme-event")
        }
        Command::WriteProblems { dir } => {
            std::fs::create_dir_all(&dir)?;
            for name in BUILTINS {
                let path = dir.join(format!("{name}.json"));
                builtin(name).expect("listed built-in").save(&path)?;
                eprintln!("wrote {}", path.display());
            }
            Ok(())
        }
    }
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
