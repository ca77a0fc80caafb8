//! Finite simple graphs with paired arcs.
//!
//! Every undirected edge `k` of the input list yields two arcs: `2k` running
//! `u -> v` and `2k + 1` running `v -> u`. The inverse of arc `e` is therefore
//! `e ^ 1`, and all matrices indexed by arcs use this order.

use std::collections::{HashSet, VecDeque};

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub origin: usize,
    pub terminal: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    arcs: Vec<Arc>,
    degrees: Vec<usize>,
}

/// On-disk form: `{"n": int, "edges": [[u, v], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphSpec {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Builds a simple connected graph on vertices `0..n`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut arcs = Vec::with_capacity(2 * edges.len());
        let mut degrees = vec![0; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u, v));
            }
            arcs.push(Arc { origin: u, terminal: v });
            arcs.push(Arc { origin: v, terminal: u });
            degrees[u] += 1;
            degrees[v] += 1;
        }
        let g = Graph { n, arcs, degrees };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Graph> {
        let edges: Vec<_> = spec.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::new(spec.n, &edges)
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        Graph::from_spec(&serde_json::from_str(s)?)
    }

    pub fn spec(&self) -> GraphSpec {
        GraphSpec { n: self.n, edges: self.edges().map(|(u, v)| [u, v]).collect() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.spec()).expect("graph spec serializes")
    }

    fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.n];
        for a in &self.arcs {
            adj[a.origin].push(a.terminal);
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.arcs.len() / 2
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, e: usize) -> Arc {
        self.arcs[e]
    }

    pub fn inverse(&self, e: usize) -> usize {
        e ^ 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Minimum degree at least two.
    pub fn is_md2(&self) -> bool {
        self.degrees.iter().all(|&d| d >= 2)
    }

    /// Undirected edges in input order, as `(origin, terminal)` of the even arc.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().step_by(2).map(|a| (a.origin, a.terminal))
    }

    /// `m - n + 1`.
    pub fn betti_number(&self) -> usize {
        self.edge_count() + 1 - self.n
    }

    pub fn adjacency_matrix(&self) -> Mat<f64> {
        let mut a = Mat::zeros(self.n, self.n);
        for arc in &self.arcs {
            a[(arc.origin, arc.terminal)] += 1.0;
        }
        a
    }

    pub fn degree_matrix(&self) -> Mat<f64> {
        Mat::from_fn(self.n, self.n, |i, j| if i == j { self.degrees[i] as f64 } else { 0.0 })
    }

    /// Simple random walk: `T[u][v] = 1 / deg u` when `(u, v)` is an arc.
    pub fn transition_matrix(&self) -> Mat<f64> {
        let mut t = Mat::zeros(self.n, self.n);
        for arc in &self.arcs {
            t[(arc.origin, arc.terminal)] = 1.0 / self.degrees[arc.origin] as f64;
        }
        t
    }

    /// Successor lists of the non-backtracking arc matrix: `f` follows `e`
    /// when `t(e) = o(f)` and `f != e^{-1}`.
    pub fn non_backtracking_successors(&self) -> Vec<Vec<usize>> {
        let mut out_arcs = vec![Vec::new(); self.n];
        for (e, a) in self.arcs.iter().enumerate() {
            out_arcs[a.origin].push(e);
        }
        (0..self.arcs.len())
            .map(|e| {
                out_arcs[self.arcs[e].terminal]
                    .iter()
                    .copied()
                    .filter(|&f| f != self.inverse(e))
                    .collect()
            })
            .collect()
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidArgument("permutation length differs from vertex count".into()));
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::new(self.n, &edges)
    }
}

/// `N_m` for `m = 1..=L`: closed non-backtracking tail-free paths of length
/// `m`, counted with their starting arc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCountSeries {
    counts: Vec<u64>,
}

impl CycleCountSeries {
    /// `N_m`, for `1 <= m <= L`.
    pub fn get(&self, m: usize) -> u64 {
        self.counts[m - 1]
    }

    pub fn max_length(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

/// `N_m = tr(W^m)` for the non-backtracking arc matrix `W`, in exact integer
/// arithmetic.
pub fn reduced_cycle_counts(g: &Graph, max_length: usize) -> Result<CycleCountSeries> {
    if max_length == 0 {
        return Err(Error::InvalidArgument("cycle length bound must be at least 1".into()));
    }
    let succ = g.non_backtracking_successors();
    let arcs = g.arc_count();
    // power[e][f] = number of non-backtracking walks of the current length from e to f.
    let mut power: Vec<Vec<u64>> = (0..arcs)
        .map(|e| {
            let mut row = vec![0u64; arcs];
            for &f in &succ[e] {
                row[f] = 1;
            }
            row
        })
        .collect();
    let mut counts = Vec::with_capacity(max_length);
    for m in 1..=max_length {
        if m > 1 {
            let mut next = vec![vec![0u64; arcs]; arcs];
            for (e, row) in power.iter().enumerate() {
                for (f, &w) in row.iter().enumerate() {
                    if w == 0 {
                        continue;
                    }
                    for &h in &succ[f] {
                        next[e][h] = next[e][h].checked_add(w).ok_or(Error::CountOverflow(m))?;
                    }
                }
            }
            power = next;
        }
        let mut tr = 0u64;
        for (e, row) in power.iter().enumerate() {
            tr = tr.checked_add(row[e]).ok_or(Error::CountOverflow(m))?;
        }
        counts.push(tr);
    }
    Ok(CycleCountSeries { counts })
}
