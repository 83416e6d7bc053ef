use std::io::Write;

use bench::{
    read_metrics_csv, run_experiment, run_on_graph, write_metrics_csv, MetricsRow, Problem, RunConfig, Verdict,
};
use graph_core::{Graph, StreamMode};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.insert_edge(u, v);
            }
        }
    }
    g
}

fn config(problem: Problem, mode: StreamMode, batch_size: usize) -> RunConfig {
    RunConfig { problem, mode, batch_size, seed: 3, ..RunConfig::default() }
}

const ALL: [Problem; 8] = [
    Problem::Kcore,
    Problem::Orient,
    Problem::Matching,
    Problem::Clique(4),
    Problem::ColorExplicit,
    Problem::ColorImplicit,
    Problem::StaticExact,
    Problem::StaticApprox(1.0),
];

#[test]
fn triangle_in_one_batch() {
    let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
    let r = run_on_graph(&config(Problem::Kcore, StreamMode::Ins, 10), &g).unwrap();
    assert_eq!(r.rows.len(), 1);
    let row = &r.rows[0];
    assert_eq!((row.insertions, row.deletions, row.edges), (3, 0, 3));
    assert_eq!(row.invariants, Verdict::Pass);
    assert!(row.max_error.unwrap() <= 4.2);
    assert_eq!(r.values.header, ["id", "level", "estimate"]);
    assert_eq!(r.values.rows.len(), 3);
}

#[test]
fn every_problem_passes_its_checks() {
    let g = random_graph(60, 0.1, 1);
    for problem in ALL {
        for mode in [StreamMode::Ins, StreamMode::Del, StreamMode::Mix] {
            let r = run_on_graph(&config(problem, mode, 17), &g).unwrap();
            assert!(!r.rows.is_empty());
            assert!(r.all_passed(), "{problem} {mode}: {:?}", r.rows);
        }
    }
}

#[test]
fn deleting_everything_leaves_zero_estimates() {
    let g = random_graph(40, 0.2, 5);
    let r = run_on_graph(&config(Problem::Kcore, StreamMode::Del, 25), &g).unwrap();
    assert_eq!(r.rows.last().unwrap().edges, 0);
    assert!(r.values.rows.iter().all(|row| row[2] == "0"));
}

#[test]
fn clique_totals_reported_per_batch() {
    let g = random_graph(30, 0.3, 2);
    let r = run_on_graph(&config(Problem::Clique(3), StreamMode::Ins, 30), &g).unwrap();
    assert!(r.rows.iter().all(|row| row.clique_total.is_some()));
    let last = r.values.rows[0][1].parse::<u64>().unwrap();
    assert_eq!(Some(last), r.rows.last().unwrap().clique_total);
}

#[test]
fn thread_count_does_not_change_results() {
    let g = random_graph(200, 0.05, 8);
    for problem in [Problem::Kcore, Problem::Matching, Problem::Clique(3), Problem::ColorImplicit] {
        let serial = run_on_graph(&config(problem, StreamMode::Mix, 50), &g).unwrap();
        let parallel = run_on_graph(&RunConfig { threads: 8, ..config(problem, StreamMode::Mix, 50) }, &g).unwrap();
        assert!(parallel.all_passed());
        let key = |rows: &[MetricsRow]| {
            rows.iter()
                .map(|r| (r.edges, r.moves, r.max_error, r.matching_size, r.clique_total, r.colors))
                .collect::<Vec<_>>()
        };
        assert_eq!(key(&serial.rows), key(&parallel.rows), "{problem}");
        assert_eq!(serial.values, parallel.values, "{problem}");
    }
}

#[test]
fn serial_runs_repeat_exactly() {
    let g = random_graph(120, 0.06, 4);
    for problem in ALL {
        let a = run_on_graph(&config(problem, StreamMode::Mix, 33), &g).unwrap();
        let b = run_on_graph(&config(problem, StreamMode::Mix, 33), &g).unwrap();
        assert_eq!(a.values, b.values, "{problem}");
    }
}

#[test]
fn reads_edge_list_from_disk() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# square with a diagonal").unwrap();
    for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)] {
        writeln!(f, "{u} {v}").unwrap();
    }
    let cfg = RunConfig { input: f.path().to_path_buf(), ..config(Problem::StaticExact, StreamMode::Ins, 5) };
    let r = run_experiment(&cfg).unwrap();
    let core: Vec<&str> = r.values.rows.iter().map(|row| row[1].as_str()).collect();
    assert_eq!(core, ["2", "2", "2", "2"]);
}

#[test]
fn bad_configs_are_rejected() {
    let g = Graph::new(3);
    for cfg in [
        RunConfig { batch_size: 0, ..RunConfig::default() },
        RunConfig { threads: 0, ..RunConfig::default() },
        RunConfig { delta: 0.0, ..RunConfig::default() },
        RunConfig { divisor: 0, ..RunConfig::default() },
    ] {
        assert!(run_on_graph(&cfg, &g).is_err(), "{cfg:?}");
    }
    let missing = RunConfig { input: "/nonexistent/graph.txt".into(), ..RunConfig::default() };
    assert!(run_experiment(&missing).is_err());
}

#[test]
fn value_table_csv() {
    let g = Graph::from_edges(3, [(0, 1)]);
    let r = run_on_graph(&config(Problem::Matching, StreamMode::Ins, 1), &g).unwrap();
    let mut buf = Vec::new();
    r.values.write_csv(&mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap(), "u,v\n0,1\n");
}

fn arb_row() -> impl Strategy<Value = MetricsRow> {
    (
        0usize..1000,
        0usize..1000,
        0.0f64..10.0,
        prop::option::of(0usize..100),
        prop::option::of(1.0f64..5.0),
        prop::sample::select(vec![Verdict::Pass, Verdict::Fail, Verdict::Skipped]),
        prop::option::of(0u64..1 << 40),
    )
        .prop_map(|(batch, edges, seconds, moves, err, invariants, total)| {
            let mut r = MetricsRow::new(batch);
            r.edges = edges;
            r.seconds = seconds;
            r.moves = moves;
            r.max_error = err;
            r.avg_error = err;
            r.invariants = invariants;
            r.clique_total = total;
            r
        })
}

proptest! {
    #[test]
    fn metrics_csv_round_trip(rows in prop::collection::vec(arb_row(), 0..20)) {
        let mut buf = Vec::new();
        write_metrics_csv(&rows, &mut buf).unwrap();
        let back = read_metrics_csv(buf.as_slice()).unwrap();
        prop_assert_eq!(back, rows);
    }
}
