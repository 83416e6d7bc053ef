//! Small hand-built instances with groups of three levels.

use graph_core::UpdateBatch;

use crate::{Geometry, Plds};

/// A named-vertex instance together with the batch to apply to it.
pub struct Fixture {
    pub plds: Plds,
    pub names: &'static [&'static str],
    pub batch: UpdateBatch,
}

impl Fixture {
    pub fn id(&self, name: &str) -> usize {
        self.names.iter().position(|&n| n == name).unwrap_or_else(|| panic!("no vertex named {name}"))
    }

    pub fn name(&self, v: usize) -> &'static str {
        self.names[v]
    }
}

fn build(
    delta: f64,
    names: &'static [&'static str],
    levels: &[usize],
    edges: &[(&str, &str)],
    inserts: &[(&str, &str)],
    deletes: &[(&str, &str)],
) -> Fixture {
    let id = |s: &str| names.iter().position(|&n| n == s).expect("fixture vertex");
    let pairs = |list: &[(&str, &str)]| list.iter().map(|&(a, b)| (id(a), id(b))).collect::<Vec<_>>();
    let plds = Plds::from_levels(delta, 3.0, Geometry::new(3, 2), levels, &pairs(edges))
        .expect("fixture satisfies both invariants");
    Fixture { plds, names, batch: UpdateBatch::from_edges(&pairs(inserts), &pairs(deletes)) }
}

/// `δ = 0.4, λ = 3`. Inserting `(u,v), (u,x), (x,w)` pushes `w` from 2 to 3
/// and then `x` from 3 to 4.
pub fn insertion_example() -> Fixture {
    const NAMES: &[&str] = &["a", "b", "c", "u", "v", "w", "x", "y", "z"];
    build(
        0.4,
        NAMES,
        &[3, 3, 1, 2, 3, 2, 3, 4, 4],
        &[("w", "y"), ("w", "z"), ("w", "a"), ("x", "v"), ("x", "y"), ("x", "z"), ("x", "b"), ("y", "z"), ("u", "c")],
        &[("u", "v"), ("u", "x"), ("x", "w")],
        &[],
    )
}

/// `δ = 1, λ = 3`. Deleting `(x,z), (y,w)` drops `x` and `z` to level 3,
/// after which `y` drops from 5 to 4.
pub fn deletion_example() -> Fixture {
    const NAMES: &[&str] = &["c", "d", "w", "x", "y", "z"];
    build(
        1.0,
        NAMES,
        &[2, 0, 0, 4, 5, 5],
        &[("x", "z"), ("x", "y"), ("x", "c"), ("z", "y"), ("z", "c"), ("y", "w"), ("w", "d")],
        &[],
        &[("x", "z"), ("y", "w")],
    )
}
