//! Walk operators on the arc space of a finite graph.
//!
//! The boundary map sends vertex `v` to the normalized indicator of the arcs
//! terminating at `v`: `d(v, e) = 1/sqrt(deg t(e))` when `v = t(e)`. With this
//! choice `S (2 d* d - I)` is exactly the Grover matrix and
//! `d S d* = D^{-1/2} A D^{-1/2}`.

use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{self, CMat, ONE, ZERO};

/// Tolerance on `|a|` and `|b|` for a coin to count as unitary.
pub const UNITARY_TOLERANCE: f64 = 1e-12;

/// The two eigenvalues `a` (on the range of `d* d`) and `b` (on its
/// complement) of the coin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoinParams {
    #[serde(with = "crate::json::complex")]
    pub a: Complex64,
    #[serde(with = "crate::json::complex")]
    pub b: Complex64,
}

impl CoinParams {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        CoinParams { a, b }
    }

    /// `a = 1, b = -1`, the Grover coin.
    pub fn grover() -> Self {
        CoinParams::new(ONE, -ONE)
    }

    /// Both eigenvalues on the unit circle, `a = e^{i alpha}`, `b = e^{i beta}`.
    pub fn unimodular(alpha: f64, beta: f64) -> Self {
        CoinParams::new(Complex64::from_polar(1.0, alpha), Complex64::from_polar(1.0, beta))
    }

    /// `c = a - b`.
    pub fn c(&self) -> Complex64 {
        self.a - self.b
    }

    pub fn is_unitary(&self) -> bool {
        (self.a.norm() - 1.0).abs() <= UNITARY_TOLERANCE && (self.b.norm() - 1.0).abs() <= UNITARY_TOLERANCE
    }
}

/// `S[e][f] = 1` iff `f = e^{-1}`.
pub fn shift_matrix(g: &Graph) -> CMat {
    Mat::from_fn(g.arc_count(), g.arc_count(), |e, f| if f == g.inverse(e) { ONE } else { ZERO })
}

/// The `n x 2m` isometry `d` with `d d* = I_n`.
pub fn boundary_map(g: &Graph) -> CMat {
    let mut d = Mat::zeros(g.vertex_count(), g.arc_count());
    for (e, arc) in g.arcs().iter().enumerate() {
        d[(arc.terminal, e)] = linalg::real(1.0 / (g.degree(arc.terminal) as f64).sqrt());
    }
    d
}

/// `d* d`, the orthogonal projection onto the range of `d*`.
pub fn boundary_projection(g: &Graph) -> CMat {
    Mat::from_fn(g.arc_count(), g.arc_count(), |e, f| {
        let v = g.arc(e).terminal;
        if v == g.arc(f).terminal {
            linalg::real(1.0 / g.degree(v) as f64)
        } else {
            ZERO
        }
    })
}

/// `C = a d* d + b (I - d* d)`.
pub fn coin_matrix(g: &Graph, p: &CoinParams) -> CMat {
    let proj = boundary_projection(g);
    linalg::shifted(&proj, p.b, p.c())
}

/// `U = S C`. Row `e` of `U` is row `e^{-1}` of `C`.
pub fn evolution_matrix(g: &Graph, p: &CoinParams) -> CMat {
    let coin = coin_matrix(g, p);
    Mat::from_fn(g.arc_count(), g.arc_count(), |e, f| coin[(g.inverse(e), f)])
}

/// The Grover matrix from its entry table:
/// `2/deg t(f)` when `t(f) = o(e)` and `f != e^{-1}`, `2/deg t(f) - 1` when
/// `f = e^{-1}`, zero otherwise.
pub fn grover_matrix(g: &Graph) -> CMat {
    Mat::from_fn(g.arc_count(), g.arc_count(), |e, f| {
        let weight = 2.0 / g.degree(g.arc(f).terminal) as f64;
        if f == g.inverse(e) {
            linalg::real(weight - 1.0)
        } else if g.arc(f).terminal == g.arc(e).origin {
            linalg::real(weight)
        } else {
            ZERO
        }
    })
}

/// 0/1 matrix marking the strictly positive entries of a real matrix.
pub fn positive_support(m: &CMat) -> Result<Mat<f64>> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            if m[(i, j)].im != 0.0 {
                return Err(Error::NonRealMatrix(i, j));
            }
        }
    }
    Ok(Mat::from_fn(m.nrows(), m.ncols(), |i, j| if m[(i, j)].re > 0.0 { 1.0 } else { 0.0 }))
}

/// Everything needed to evaluate the finite-graph zeta functions for one coin.
#[derive(Clone, Debug)]
pub struct OperatorBundle {
    pub coin_params: CoinParams,
    pub shift: CMat,
    pub boundary: CMat,
    pub coin: CMat,
    pub evolution: CMat,
    /// `d S d*`, an `n x n` Hermitian matrix.
    pub dsd: CMat,
}

impl OperatorBundle {
    pub fn new(g: &Graph, p: &CoinParams) -> Self {
        let shift = shift_matrix(g);
        let boundary = boundary_map(g);
        let coin = coin_matrix(g, p);
        let evolution = evolution_matrix(g, p);
        let dsd = &boundary * &shift * linalg::adjoint(&boundary);
        OperatorBundle { coin_params: *p, shift, boundary, coin, evolution, dsd }
    }

    /// `q = dim ker(a - C)`, which is `n` for this boundary map.
    pub fn q(&self) -> usize {
        self.boundary.nrows()
    }
}

/// `D^{-1/2} A D^{-1/2}` computed from the adjacency matrix directly.
pub fn normalized_adjacency(g: &Graph) -> CMat {
    let a = g.adjacency_matrix();
    Mat::from_fn(g.vertex_count(), g.vertex_count(), |u, v| {
        linalg::real(a[(u, v)] / ((g.degree(u) * g.degree(v)) as f64).sqrt())
    })
}
