use std::io::Write;
use std::time::Instant;

use clique::{brute_force_count, CliqueCounter};
use coloring::{ExplicitColoring, ForestColoring};
use framework::{DynamicGraph, UpdateSummary};
use graph_core::{generate_batches, load_edge_list, Graph, UpdateBatch};
use matching::MatchState;
use orientation::OrientationMap;
use plds::PldsParams;
use serde::{Deserialize, Serialize};
use static_kcore::{exact_kcore, ApproxKcore};

use crate::{error_ratio, BenchError, MetricsRow, Problem, RunConfig, Verdict};

/// Final per-vertex (or per-edge) output of a run, CSV-shaped.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValueTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ValueTable {
    fn new(header: &[&str]) -> Self {
        ValueTable { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<MetricsRow>,
    pub values: ValueTable,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.invariants != Verdict::Fail)
    }
}

enum Engine {
    Kcore,
    Orient,
    Matching(MatchState),
    Clique(CliqueCounter),
    Explicit(Box<ExplicitColoring>),
    Implicit(ForestColoring),
}

impl Engine {
    fn update(&mut self, g: &mut DynamicGraph, b: &UpdateBatch) -> Result<UpdateSummary, BenchError> {
        Ok(match self {
            Engine::Kcore | Engine::Orient => g.graph_problem_update(b, &mut ())?,
            Engine::Matching(m) => g.graph_problem_update(b, m)?,
            Engine::Clique(c) => g.graph_problem_update(b, c)?,
            Engine::Explicit(c) => g.graph_problem_update(b, c.as_mut())?,
            Engine::Implicit(f) => g.graph_problem_update(b, f)?,
        })
    }
}

/// Loads `cfg.input` and runs the experiment.
pub fn run_experiment(cfg: &RunConfig) -> Result<Report, BenchError> {
    cfg.validate()?;
    let graph = load_edge_list(&cfg.input)?;
    run_on_graph(cfg, &graph)
}

/// Runs the experiment on an already loaded graph; `cfg.input` is ignored.
pub fn run_on_graph(cfg: &RunConfig, graph: &Graph) -> Result<Report, BenchError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build()?;
    pool.install(|| match cfg.problem {
        Problem::StaticExact | Problem::StaticApprox(_) => run_static(cfg, graph),
        _ => run_dynamic(cfg, graph),
    })
}

fn run_dynamic(cfg: &RunConfig, graph: &Graph) -> Result<Report, BenchError> {
    let parallel = cfg.threads > 1;
    let w = generate_batches(graph, cfg.mode, cfg.batch_size, cfg.seed)?;
    let n = graph.num_vertices();
    let mut g = DynamicGraph::new(PldsParams::new(cfg.delta, cfg.lambda, cfg.divisor, n), n)?;
    g.set_parallel(parallel);
    let mut engine = match cfg.problem {
        Problem::Kcore => Engine::Kcore,
        Problem::Orient => Engine::Orient,
        Problem::Matching => {
            let mut m = MatchState::new(n);
            m.set_parallel(parallel);
            Engine::Matching(m)
        }
        Problem::Clique(k) => {
            let mut c = CliqueCounter::new(k, n);
            c.set_parallel(parallel);
            Engine::Clique(c)
        }
        Problem::ColorExplicit => Engine::Explicit(Box::new(
            ExplicitColoring::new(&g, cfg.seed).map_err(|e| BenchError::Coloring(format!("{e:#}")))?,
        )),
        Problem::ColorImplicit => Engine::Implicit(ForestColoring::new(n, 0)),
        Problem::StaticExact | Problem::StaticApprox(_) => {
            unreachable!("static problems run separately")
        }
    };

    engine.update(&mut g, &UpdateBatch::from_edges(&w.initial.edges(), &[]))?;
    let mut cur = w.initial.clone();
    let mut rows = Vec::with_capacity(w.batches.len());
    for (i, b) in w.batches.iter().enumerate() {
        let start = Instant::now();
        let summary = engine.update(&mut g, b)?;
        let seconds = start.elapsed().as_secs_f64();
        cur.apply_batch(b);

        let mut row = MetricsRow::new(i + 1);
        row.insertions = b.insertions.len();
        row.deletions = b.deletions.len();
        row.edges = cur.num_edges();
        row.seconds = seconds;
        row.moves = Some(summary.moves);
        row.flips = Some(summary.flips);
        match &engine {
            Engine::Kcore => {
                let r = error_ratio(&g.plds().coreness_estimates(), &exact_kcore(&cur));
                row.avg_error = Some(r.avg);
                row.max_error = Some(r.max);
            }
            Engine::Orient => row.max_out_degree = g.orientation().out_degrees(n).into_iter().max(),
            Engine::Matching(m) => row.matching_size = Some(m.size()),
            Engine::Clique(c) => row.clique_total = Some(c.total()),
            Engine::Explicit(c) => row.colors = Some(c.distinct_colors()),
            Engine::Implicit(f) => {
                let all: Vec<usize> = (0..n).collect();
                let distinct: std::collections::HashSet<_> = f.query_all(&all).into_iter().collect();
                row.colors = Some(distinct.len());
                row.max_out_degree = (0..n).map(|v| f.out_degree(v)).max();
            }
        }
        if cfg.checks {
            let problems = check(&engine, &g, &cur);
            row.violations = problems.len();
            row.invariants = if problems.is_empty() { Verdict::Pass } else { Verdict::Fail };
        }
        rows.push(row);
    }
    Ok(Report { rows, values: values(&engine, &g) })
}

/// Every invariant and oracle discrepancy after a batch.
fn check(engine: &Engine, g: &DynamicGraph, cur: &Graph) -> Vec<String> {
    let mut bad: Vec<String> = g.plds().check_invariants().violations.iter().map(|v| v.to_string()).collect();
    if g.to_graph().edges() != cur.edges() {
        bad.push("level structure edge set differs from the stream".into());
    }
    let n = g.num_vertices();
    match engine {
        Engine::Kcore => {}
        Engine::Orient => {
            let o = g.orientation();
            if !o.is_acyclic(n) {
                bad.push("orientation has a cycle".into());
            }
            if *o != OrientationMap::from_levels(cur, g.levels()) {
                bad.push("orientation differs from recomputation".into());
            }
            let p = g.plds();
            for (v, d) in o.out_degrees(n).into_iter().enumerate() {
                let bound = p.threshold_upper(p.group_of_level(p.level(v)));
                if d as f64 > bound {
                    bad.push(format!("out-degree {d} of {v} exceeds {bound}"));
                }
            }
        }
        Engine::Matching(m) => bad.extend(m.check(g)),
        Engine::Clique(c) => {
            let want = brute_force_count(cur, c.k());
            if c.total() != want {
                bad.push(format!("clique total {} but enumeration finds {want}", c.total()));
            }
        }
        Engine::Explicit(c) => bad.extend(c.check(g)),
        Engine::Implicit(f) => {
            bad.extend(f.check(g));
            for (u, v) in cur.edges() {
                if f.query(u) == f.query(v) {
                    bad.push(format!("implicit colors of {u} and {v} coincide"));
                }
            }
        }
    }
    bad
}

fn values(engine: &Engine, g: &DynamicGraph) -> ValueTable {
    let n = g.num_vertices();
    match engine {
        Engine::Kcore => {
            let mut t = ValueTable::new(&["id", "level", "estimate"]);
            for v in 0..n {
                t.push(vec![v.to_string(), g.plds().level(v).to_string(), g.plds().coreness_estimate(v).to_string()]);
            }
            t
        }
        Engine::Orient => {
            let mut t = ValueTable::new(&["tail", "head"]);
            for (a, b) in g.orientation().directed_edges() {
                t.push(vec![a.to_string(), b.to_string()]);
            }
            t
        }
        Engine::Matching(m) => {
            let mut t = ValueTable::new(&["u", "v"]);
            for (a, b) in m.matching() {
                t.push(vec![a.to_string(), b.to_string()]);
            }
            t
        }
        Engine::Clique(c) => {
            let mut t = ValueTable::new(&["k", "total"]);
            t.push(vec![c.k().to_string(), c.total().to_string()]);
            t
        }
        Engine::Explicit(c) => {
            let mut t = ValueTable::new(&["id", "color"]);
            for v in 0..n {
                t.push(vec![v.to_string(), c.color(v).map_or(String::new(), |x| x.to_string())]);
            }
            t
        }
        Engine::Implicit(f) => {
            let mut t = ValueTable::new(&["id", "color"]);
            for v in 0..n {
                let bits: String = f.query(v).iter().map(|&b| if b { '1' } else { '0' }).collect();
                t.push(vec![v.to_string(), bits]);
            }
            t
        }
    }
}

fn run_static(cfg: &RunConfig, graph: &Graph) -> Result<Report, BenchError> {
    let w = generate_batches(graph, cfg.mode, cfg.batch_size, cfg.seed)?;
    let approx = match cfg.problem {
        Problem::StaticApprox(e) => Some((e, ApproxKcore::new(e).parallel(cfg.threads > 1))),
        _ => None,
    };
    let mut cur = w.initial.clone();
    let mut rows = Vec::new();
    let mut last: Vec<f64> = Vec::new();
    for (i, b) in w.batches.iter().enumerate() {
        cur.apply_batch(b);
        let mut row = MetricsRow::new(i + 1);
        row.insertions = b.insertions.len();
        row.deletions = b.deletions.len();
        row.edges = cur.num_edges();
        let start = Instant::now();
        last = match &approx {
            Some((_, a)) => a.run(&cur),
            None => exact_kcore(&cur).into_iter().map(|k| k as f64).collect(),
        };
        row.seconds = start.elapsed().as_secs_f64();
        if let Some((eps, _)) = approx {
            let r = error_ratio(&last, &exact_kcore(&cur));
            row.avg_error = Some(r.avg);
            row.max_error = Some(r.max);
            if cfg.checks {
                let ok = r.max <= 2.0 + eps;
                row.violations = usize::from(!ok);
                row.invariants = if ok { Verdict::Pass } else { Verdict::Fail };
            }
        }
        rows.push(row);
    }
    let mut values = ValueTable::new(&["id", if approx.is_some() { "estimate" } else { "coreness" }]);
    for (v, x) in last.iter().enumerate() {
        values.push(vec![v.to_string(), x.to_string()]);
    }
    Ok(Report { rows, values })
}
