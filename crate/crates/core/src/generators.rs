//! Built-in graphs: the finite test corpus and the standard periodic lattices.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::periodic::VoltageGraph;

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let edges: Vec<_> = (0..n).map(|k| (k, (k + 1) % n)).collect();
    Graph::new(n, &edges).expect("cycle is simple and connected")
}

pub fn path(n: usize) -> Graph {
    assert!(n >= 1);
    let edges: Vec<_> = (1..n).map(|k| (k - 1, k)).collect();
    Graph::new(n, &edges).expect("path is simple and connected")
}

pub fn complete(n: usize) -> Graph {
    assert!(n >= 2);
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::new(n, &edges).expect("complete graph is simple and connected")
}

pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for k in 0..5 {
        edges.push((k, (k + 1) % 5));
        edges.push((k, k + 5));
        edges.push((k + 5, (k + 2) % 5 + 5));
    }
    Graph::new(10, &edges).expect("petersen graph is simple and connected")
}

/// A random spanning tree on `n` vertices plus up to `extra` further edges,
/// reproducible from `seed`.
pub fn random_connected(n: usize, extra: usize, seed: u64) -> Graph {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges = Vec::new();
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        edges.push((parent, order[k]));
    }
    let mut missing: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == (u, v)))
        .collect();
    missing.shuffle(&mut rng);
    edges.extend(missing.into_iter().take(extra));
    Graph::new(n, &edges).expect("spanning tree plus edges is simple and connected")
}

/// The finite corpus shared by the identity checks: C3..C8, K4, K5, Petersen
/// and ten random connected graphs with at most ten vertices.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = (3..=8).map(|n| (format!("C{n}"), cycle(n))).collect();
    out.push(("K4".into(), complete(4)));
    out.push(("K5".into(), complete(5)));
    out.push(("Petersen".into(), petersen()));
    out.extend(random_corpus(10, 0x5eed));
    out
}

pub fn random_corpus(count: usize, seed: u64) -> Vec<(String, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let n = rng.gen_range(4..=10);
            let extra = rng.gen_range(1..=n);
            let s = rng.gen();
            (format!("random{k}(n={n})"), random_connected(n, extra, s))
        })
        .collect()
}

/// The integer line: one vertex, one loop with voltage 1.
pub fn line() -> VoltageGraph {
    VoltageGraph::new(1, 1, &[(0, 0, vec![1])]).expect("line voltage graph is valid")
}

/// The square lattice Z^2.
pub fn grid2d() -> VoltageGraph {
    VoltageGraph::new(2, 1, &[(0, 0, vec![1, 0]), (0, 0, vec![0, 1])]).expect("grid voltage graph is valid")
}

/// The hexagonal (honeycomb) lattice: two sublattices joined by three edges.
pub fn honeycomb() -> VoltageGraph {
    VoltageGraph::new(2, 2, &[(0, 1, vec![0, 0]), (0, 1, vec![1, 0]), (0, 1, vec![0, 1])])
        .expect("honeycomb voltage graph is valid")
}
