use framework::{Arc, DynamicGraph, FrameworkError, ProblemHooks, Stage};
use graph_core::{generate_batches, Graph, StreamMode, UpdateBatch};
use orientation::OrientationMap;
use plds::PldsParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Default)]
struct Recorder {
    calls: Vec<&'static str>,
    seen_flips: Vec<Arc>,
    seen_del: Vec<Arc>,
    seen_ins: Vec<Arc>,
    fail_at: Option<&'static str>,
    echo_flips: bool,
}

impl Recorder {
    fn step(&mut self, name: &'static str) -> anyhow::Result<()> {
        self.calls.push(name);
        if self.fail_at == Some(name) {
            anyhow::bail!("injected failure");
        }
        Ok(())
    }
}

impl ProblemHooks for Recorder {
    fn batch_flips(
        &mut self,
        g: &DynamicGraph,
        flips: &[Arc],
        ins: &mut Vec<Arc>,
        del: &mut Vec<Arc>,
    ) -> anyhow::Result<()> {
        for &(u, v) in flips {
            // Pre-flip orientation: the stored direction is now the reverse.
            assert_eq!(g.direction(u, v), Some((v, u)));
            if self.echo_flips {
                del.push((u, v));
                ins.push((v, u));
            }
        }
        self.seen_flips.extend_from_slice(flips);
        self.step("flips")
    }

    fn batch_delete(&mut self, g: &DynamicGraph, del: &[Arc]) -> anyhow::Result<()> {
        for &(u, v) in del {
            assert!(self.echo_flips || !g.has_edge(u, v));
        }
        self.seen_del.extend_from_slice(del);
        self.step("delete")
    }

    fn batch_insert(&mut self, g: &DynamicGraph, ins: &[Arc]) -> anyhow::Result<()> {
        for &(u, v) in ins {
            assert!(g.has_edge(u, v));
            assert_eq!(g.direction(u, v), Some((u, v)));
        }
        self.seen_ins.extend_from_slice(ins);
        self.step("insert")
    }
}

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

fn graph(n: usize) -> DynamicGraph {
    DynamicGraph::new(PldsParams::new(0.4, 3.0, 1, n), n).unwrap()
}

#[test]
fn empty_batch_with_noop_hooks_changes_nothing() {
    let mut g = graph(5);
    g.graph_problem_update(&UpdateBatch::from_edges(&[(0, 1), (1, 2)], &[]), &mut ()).unwrap();
    let (levels, orient) = (g.levels().to_vec(), g.orientation().clone());
    let s = g.graph_problem_update(&UpdateBatch::default(), &mut ()).unwrap();
    assert_eq!(s.moves + s.flips + s.insertions + s.deletions, 0);
    assert_eq!(g.levels(), &levels[..]);
    assert_eq!(g.orientation(), &orient);
}

#[test]
fn hooks_run_once_each_in_order() {
    let mut g = graph(6);
    let mut r = Recorder::default();
    g.graph_problem_update(&UpdateBatch::from_edges(&[(0, 1), (2, 3)], &[]), &mut r).unwrap();
    assert_eq!(r.calls, ["flips", "delete", "insert"]);
    g.graph_problem_update(&UpdateBatch::from_edges(&[(4, 5)], &[(0, 1)]), &mut r).unwrap();
    assert_eq!(r.calls, ["flips", "delete", "insert", "flips", "delete", "insert"]);
    assert_eq!(r.seen_del.len(), 1);
    assert_eq!(r.seen_ins.len(), 3);
}

#[test]
fn hook_errors_propagate_and_stop_later_hooks() {
    let mut g = graph(4);
    let mut r = Recorder { fail_at: Some("delete"), ..Default::default() };
    let err = g.graph_problem_update(&UpdateBatch::from_edges(&[(0, 1)], &[]), &mut r).unwrap_err();
    assert!(matches!(err, FrameworkError::Hook { stage: Stage::Delete, .. }));
    assert_eq!(r.calls, ["flips", "delete"]);
}

#[test]
fn invalid_batch_is_rejected_before_hooks() {
    let mut g = graph(4);
    let mut r = Recorder::default();
    let err = g.graph_problem_update(&UpdateBatch::from_edges(&[], &[(0, 1)]), &mut r).unwrap_err();
    assert!(matches!(err, FrameworkError::Plds(_)));
    assert!(r.calls.is_empty());
}

#[test]
fn flip_hook_can_extend_batches() {
    let base = random_graph(120, 0.08, 4);
    let w = generate_batches(&base, StreamMode::Ins, 30, 4).unwrap();
    let mut g = graph(120);
    let mut r = Recorder { echo_flips: true, ..Default::default() };
    for b in &w.batches {
        let before = (r.seen_ins.len(), r.seen_flips.len());
        g.graph_problem_update(b, &mut r).unwrap();
        let flips = r.seen_flips.len() - before.1;
        assert_eq!(r.seen_ins.len() - before.0, b.insertions.len() + flips);
    }
    assert!(!r.seen_flips.is_empty(), "expected some flips on this stream");
}

#[test]
fn state_tracks_stream_and_orientation_is_fresh() {
    let base = random_graph(150, 0.05, 5);
    for mode in [StreamMode::Ins, StreamMode::Del, StreamMode::Mix] {
        let w = generate_batches(&base, mode, 20, 5).unwrap();
        let mut g = graph(150);
        g.graph_problem_update(&UpdateBatch::from_edges(&w.initial.edges(), &[]), &mut ()).unwrap();
        let mut cur = w.initial.clone();
        for b in &w.batches {
            g.graph_problem_update(b, &mut ()).unwrap();
            cur.apply_batch(b);
            assert_eq!(g.to_graph().edges(), cur.edges());
            assert_eq!(g.orientation(), &OrientationMap::from_levels(&cur, g.levels()));
            for v in 0..150 {
                let mut both = g.out_neighbors(v);
                both.extend(g.in_neighbors(v));
                both.sort_unstable();
                assert_eq!(both, cur.sorted_neighbors(v));
            }
        }
    }
}

#[test]
fn vertex_updates_flow_through_hooks() {
    let base = random_graph(30, 0.3, 6);
    let mut g = graph(30);
    g.graph_problem_update(&UpdateBatch::from_edges(&base.edges(), &[]), &mut ()).unwrap();
    let mut r = Recorder::default();
    let victim = (0..30).max_by_key(|&v| base.degree(v)).unwrap();
    let s = g.vertex_update(&[30], &[victim], &mut r).unwrap();
    assert_eq!(s.deletions, base.degree(victim));
    assert_eq!(r.seen_del.len(), base.degree(victim));
    assert_eq!(g.num_vertices(), 31);
    assert!(g.out_neighbors(victim).is_empty());
    let mut cur = base.clone();
    cur.ensure_vertices(31);
    for w in base.sorted_neighbors(victim) {
        cur.remove_edge(victim, w);
    }
    assert_eq!(g.orientation(), &OrientationMap::from_levels(&cur, g.levels()));
}
