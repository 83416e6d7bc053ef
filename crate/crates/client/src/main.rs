use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use bench::{write_metrics_csv, Problem, Report, RunConfig, Verdict};
use clap::Parser;
use client::Client;
use graph_core::StreamMode;

/// Streams batches over a graph, maintains the chosen problem and writes per-batch metrics as CSV.
#[derive(Debug, Parser)]
#[command(name = "plds-bench", version)]
struct Args {
    /// Edge list: one `u v` pair per line, `#` comments allowed.
    #[arg(long)]
    input: PathBuf,
    /// Stream shape: ins, del or mix.
    #[arg(long, default_value = "ins")]
    mode: StreamMode,
    #[arg(long, default_value_t = 1000)]
    batch_size: usize,
    #[arg(long, default_value_t = 0.4)]
    delta: f64,
    #[arg(long, default_value_t = 3.0)]
    lambda: f64,
    /// 1 keeps the exact layout; larger values shrink the groups.
    #[arg(long, default_value_t = 1)]
    divisor: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// kcore, orient, matching, clique(k), color-explicit, color-implicit, static-exact or static-approx(eps).
    #[arg(long, default_value = "kcore")]
    problem: Problem,
    /// Metrics CSV path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the final per-vertex values as CSV.
    #[arg(long)]
    values: Option<PathBuf>,
    /// Service URL; an in-process service is started when omitted.
    #[arg(long)]
    server: Option<String>,
    /// Skip the oracle and invariant checks after each batch.
    #[arg(long)]
    skip_checks: bool,
}

impl Args {
    fn config(&self) -> RunConfig {
        RunConfig {
            input: self.input.clone(),
            mode: self.mode,
            batch_size: self.batch_size,
            delta: self.delta,
            lambda: self.lambda,
            divisor: self.divisor,
            threads: self.threads,
            seed: self.seed,
            problem: self.problem,
            out: self.out.clone(),
            checks: !self.skip_checks,
        }
    }
}

fn writer(path: Option<&PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

async fn run(args: &Args) -> anyhow::Result<Report> {
    let cfg = args.config();
    cfg.validate()?;
    let graph = std::fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let base = match &args.server {
        Some(url) => url.clone(),
        None => {
            let (addr, _) = service::spawn(SocketAddr::from(([127, 0, 0, 1], 0))).await?;
            format!("http://{addr}")
        }
    };
    Client::new(base).run_experiment(&cfg, graph).await
}

fn main() -> ExitCode {
    let args = Args::parse();
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(e) => {
            eprintln!("plds-bench: {e}");
            return ExitCode::FAILURE;
        }
    };
    let result = runtime.block_on(run(&args)).and_then(|report| {
        write_metrics_csv(&report.rows, writer(args.out.as_ref())?)?;
        if let Some(p) = &args.values {
            report.values.write_csv(writer(Some(p))?)?;
        }
        Ok(report)
    });
    match result {
        Ok(report) => {
            let failed = report.rows.iter().filter(|r| r.invariants == Verdict::Fail).count();
            let seconds: f64 = report.rows.iter().map(|r| r.seconds).sum();
            eprintln!("{} batches, {seconds:.3}s of updates, {failed} failing checks", report.rows.len());
            if failed > 0 {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("plds-bench: {e:#}");
            ExitCode::FAILURE
        }
    }
}
