use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A quotient arc with its voltage in `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VoltageArc {
    pub origin: usize,
    pub terminal: usize,
    pub voltage: Vec<i64>,
}

/// A `Z^d`-periodic graph given by its finite quotient. The cover has vertex
/// set `V0 x Z^d`, and the arc `e` lifts to `(o(e), k) -> (t(e), k + z(e))`.
///
/// Arcs are paired like [`Graph`]: edge `j` gives arcs `2j` and `2j + 1`, and
/// `z(2j + 1) = -z(2j)`. Loops and parallel arcs are allowed in the quotient
/// as long as the cover stays simple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltageGraph {
    dim: usize,
    n: usize,
    arcs: Vec<VoltageArc>,
    degrees: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VoltageEdgeSpec {
    pub u: usize,
    pub v: usize,
    pub z: Vec<i64>,
}

/// On-disk form: `{"dim": d, "n": n0, "edges": [{"u": .., "v": .., "z": [..]}, ..]}`,
/// one entry per undirected edge with the voltage read from `u` to `v`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VoltageGraphSpec {
    pub dim: usize,
    pub n: usize,
    pub edges: Vec<VoltageEdgeSpec>,
}

/// `Tr_Gamma(I_V)` and `Tr_Gamma(I_R)`. With a free action every stabilizer is
/// trivial and both are plain counts over a fundamental domain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GammaTraces {
    pub vertices: f64,
    pub arcs: f64,
}

impl VoltageGraph {
    pub fn new(dim: usize, n: usize, edges: &[(usize, usize, Vec<i64>)]) -> Result<VoltageGraph> {
        let invalid = |msg: String| Err(Error::InvalidVoltageGraph(msg));
        if dim == 0 {
            return invalid("lattice dimension must be at least 1".into());
        }
        if n == 0 {
            return invalid("quotient has no vertices".into());
        }
        let mut arcs = Vec::with_capacity(2 * edges.len());
        let mut degrees = vec![0; n];
        for (j, (u, v, z)) in edges.iter().enumerate() {
            if *u >= n || *v >= n {
                return invalid(format!("edge {j} references a vertex outside 0..{n}"));
            }
            if z.len() != dim {
                return invalid(format!("edge {j} has a voltage of length {} in dimension {dim}", z.len()));
            }
            arcs.push(VoltageArc { origin: *u, terminal: *v, voltage: z.clone() });
            arcs.push(VoltageArc { origin: *v, terminal: *u, voltage: z.iter().map(|x| -x).collect() });
            degrees[*u] += 1;
            degrees[*v] += 1;
        }
        let vg = VoltageGraph { dim, n, arcs, degrees };
        vg.check_simple_cover(None).map_err(|e| match e {
            Error::NonSimpleCover(msg) => Error::InvalidVoltageGraph(msg),
            other => other,
        })?;
        vg.check_connected_cover()?;
        Ok(vg)
    }

    pub fn from_spec(spec: &VoltageGraphSpec) -> Result<VoltageGraph> {
        let edges: Vec<_> = spec.edges.iter().map(|e| (e.u, e.v, e.z.clone())).collect();
        VoltageGraph::new(spec.dim, spec.n, &edges)
    }

    pub fn from_json(s: &str) -> Result<VoltageGraph> {
        VoltageGraph::from_spec(&serde_json::from_str(s)?)
    }

    pub fn spec(&self) -> VoltageGraphSpec {
        let edges = self
            .arcs
            .iter()
            .step_by(2)
            .map(|a| VoltageEdgeSpec { u: a.origin, v: a.terminal, z: a.voltage.clone() })
            .collect();
        VoltageGraphSpec { dim: self.dim, n: self.n, edges }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.spec()).expect("voltage graph spec serializes")
    }

    pub fn dim(&self) -> usize {
        self.dim
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

    pub fn arcs(&self) -> &[VoltageArc] {
        &self.arcs
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

    pub fn gamma_traces(&self) -> GammaTraces {
        GammaTraces { vertices: self.n as f64, arcs: self.arcs.len() as f64 }
    }

    /// `n0 - m0`: vertex orbits minus edge orbits.
    pub fn l2_euler_characteristic(&self) -> f64 {
        self.n as f64 - self.edge_count() as f64
    }

    /// Loops or parallel edges in the cover show up as a quotient loop with
    /// zero voltage, or two quotient arcs with equal endpoints and voltage.
    /// With `modulus = Some(L)` voltages are compared in `(Z/L)^d`.
    fn check_simple_cover(&self, modulus: Option<i64>) -> Result<()> {
        let reduce = |z: &[i64]| -> Vec<i64> {
            match modulus {
                Some(l) => z.iter().map(|x| x.rem_euclid(l)).collect(),
                None => z.to_vec(),
            }
        };
        let mut seen: HashMap<(usize, usize, Vec<i64>), usize> = HashMap::new();
        for (e, arc) in self.arcs.iter().enumerate() {
            let z = reduce(&arc.voltage);
            if arc.origin == arc.terminal && z.iter().all(|&x| x == 0) {
                return Err(Error::NonSimpleCover(format!(
                    "edge {} ({}, {}, {:?}) lifts to loops",
                    e / 2,
                    arc.origin,
                    arc.terminal,
                    arc.voltage
                )));
            }
            if let Some(&other) = seen.get(&(arc.origin, arc.terminal, z.clone())) {
                return Err(Error::NonSimpleCover(format!(
                    "edges {} and {} ({} -> {}, voltage {:?}) lift to parallel edges",
                    other / 2,
                    e / 2,
                    arc.origin,
                    arc.terminal,
                    arc.voltage
                )));
            }
            seen.insert((arc.origin, arc.terminal, z), e);
        }
        Ok(())
    }

    /// The quotient must be connected and the voltages of its cycles must
    /// generate `Z^d`; otherwise the cover falls apart into copies.
    fn check_connected_cover(&self) -> Result<()> {
        let mut potential: Vec<Option<Vec<i64>>> = vec![None; self.n];
        potential[0] = Some(vec![0; self.dim]);
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            let pv = potential[v].clone().expect("visited");
            for arc in self.arcs.iter().filter(|a| a.origin == v) {
                if potential[arc.terminal].is_none() {
                    potential[arc.terminal] = Some(pv.iter().zip(&arc.voltage).map(|(p, z)| p + z).collect());
                    queue.push_back(arc.terminal);
                }
            }
        }
        if potential.iter().any(Option::is_none) {
            return Err(Error::InvalidVoltageGraph("quotient graph is disconnected".into()));
        }
        let generators: Vec<Vec<i64>> = self
            .arcs
            .iter()
            .map(|a| {
                let po = potential[a.origin].as_ref().expect("connected");
                let pt = potential[a.terminal].as_ref().expect("connected");
                (0..self.dim).map(|i| po[i] + a.voltage[i] - pt[i]).collect()
            })
            .collect();
        if !generates_lattice(&generators, self.dim) {
            return Err(Error::InvalidVoltageGraph(format!(
                "cycle voltages do not generate Z^{}; the cover is disconnected",
                self.dim
            )));
        }
        Ok(())
    }

    /// The finite cover by `(Z/L)^d`: vertex `(v, k)` has index
    /// `v + n0 * (k_0 + L k_1 + L^2 k_2 + ...)`.
    pub fn finite_quotient(&self, l: usize) -> Result<Graph> {
        if l == 0 {
            return Err(Error::InvalidArgument("quotient size must be positive".into()));
        }
        self.check_simple_cover(Some(l as i64))?;
        let cells = l.pow(self.dim as u32);
        let li = l as i64;
        let index = |v: usize, k: &[i64]| -> usize {
            let cell = k.iter().rev().fold(0usize, |acc, &x| acc * l + x.rem_euclid(li) as usize);
            v + self.n * cell
        };
        let mut edges = Vec::with_capacity(self.edge_count() * cells);
        for arc in self.arcs.iter().step_by(2) {
            for cell in 0..cells {
                let k: Vec<i64> = (0..self.dim).map(|i| ((cell / l.pow(i as u32)) % l) as i64).collect();
                let shifted: Vec<i64> = k.iter().zip(&arc.voltage).map(|(a, b)| a + b).collect();
                edges.push((index(arc.origin, &k), index(arc.terminal, &shifted)));
            }
        }
        Graph::new(self.n * cells, &edges)
    }
}

/// Whether integer vectors generate all of `Z^d`: reduce to echelon form with
/// Euclid steps and check that every pivot is a unit.
fn generates_lattice(generators: &[Vec<i64>], dim: usize) -> bool {
    let mut rows: Vec<Vec<i128>> = generators.iter().map(|g| g.iter().map(|&x| x as i128).collect()).collect();
    let mut pivot_row = 0;
    for col in 0..dim {
        loop {
            let nonzero: Vec<usize> = (pivot_row..rows.len()).filter(|&r| rows[r][col] != 0).collect();
            if nonzero.is_empty() {
                return false;
            }
            let best = *nonzero.iter().min_by_key(|&&r| rows[r][col].abs()).expect("nonempty");
            rows.swap(pivot_row, best);
            let p = rows[pivot_row][col];
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                let q = rows[r][col] / p;
                if q != 0 {
                    for c in col..dim {
                        rows[r][c] -= q * rows[pivot_row][c];
                    }
                }
                if rows[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][col].abs() != 1 {
            return false;
        }
        pivot_row += 1;
    }
    true
}
