//! Bloch fibers of the periodic operators.
//!
//! For the character `k -> e^{-i theta . k}` of `Z^d` the cover operators
//! reduce to finite matrices on the quotient:
//!
//! * `A(theta)[u][v] = sum_{e: v -> u} e^{i theta . z(e)}`
//! * `S(theta)[e][e^{-1}] = e^{-i theta . z(e)}`
//! * `d(theta)[t(e)][e] = e^{i theta . z(e)} / sqrt(deg t(e))`
//!
//! so that `d(theta) S(theta) d(theta)* = D^{-1/2} A(theta) D^{-1/2}`. Sampling
//! `theta` on the grid `2 pi k / L` block-diagonalizes the operators of the
//! finite cover by `(Z/L)^d`.

use faer::Mat;
use num_complex::Complex64;
use serde::Serialize;

use crate::graph::Graph;
use crate::linalg::{self, CMat, ONE, ZERO};
use crate::operators::{CoinParams, OperatorBundle};
use crate::periodic::VoltageGraph;

fn phase(theta: &[f64], z: &[i64]) -> Complex64 {
    let angle: f64 = theta.iter().zip(z).map(|(t, &k)| t * k as f64).sum();
    Complex64::from_polar(1.0, angle)
}

/// Vertex-space fiber matrices at one torus point.
#[derive(Clone, Debug)]
pub struct BlochFiber {
    pub adjacency: CMat,
    pub degree: CMat,
    /// `D^{-1/2} A(theta) D^{-1/2}`.
    pub dsd: CMat,
}

pub fn bloch_fiber(vg: &VoltageGraph, theta: &[f64]) -> BlochFiber {
    assert_eq!(theta.len(), vg.dim(), "theta must have one angle per lattice direction");
    let n = vg.vertex_count();
    let mut adjacency = Mat::zeros(n, n);
    for arc in vg.arcs() {
        adjacency[(arc.terminal, arc.origin)] += phase(theta, &arc.voltage);
    }
    let degree = Mat::from_fn(n, n, |i, j| if i == j { linalg::real(vg.degree(i) as f64) } else { ZERO });
    let dsd = Mat::from_fn(n, n, |u, v| adjacency[(u, v)] / ((vg.degree(u) * vg.degree(v)) as f64).sqrt());
    BlochFiber { adjacency, degree, dsd }
}

/// Arc-space fiber matrices at one torus point.
#[derive(Clone, Debug)]
pub struct ArcFiber {
    pub shift: CMat,
    /// `n0 x 2m0`, with orthonormal rows.
    pub boundary: CMat,
    pub coin: CMat,
    pub evolution: CMat,
}

pub fn arc_fiber(vg: &VoltageGraph, theta: &[f64], p: &CoinParams) -> ArcFiber {
    assert_eq!(theta.len(), vg.dim(), "theta must have one angle per lattice direction");
    let (n, r) = (vg.vertex_count(), vg.arc_count());
    let mut shift = Mat::zeros(r, r);
    let mut boundary = Mat::zeros(n, r);
    for (e, arc) in vg.arcs().iter().enumerate() {
        let ph = phase(theta, &arc.voltage);
        shift[(e, vg.inverse(e))] = ph.conj();
        boundary[(arc.terminal, e)] = ph / (vg.degree(arc.terminal) as f64).sqrt();
    }
    let projection = linalg::adjoint(&boundary) * &boundary;
    let coin = linalg::shifted(&projection, p.b, p.c());
    let evolution = &shift * &coin;
    ArcFiber { shift, boundary, coin, evolution }
}

/// The operator whose `Gamma`-determinant is taken.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FiberKernel {
    /// `I - tA + t^2 (D - I)`.
    Ihara {
        #[serde(with = "crate::json::complex")]
        t: Complex64,
    },
    /// `(1 - ab u^2) I_V - cu d S d*` on the vertex space.
    QwInterior {
        #[serde(with = "crate::json::complex")]
        u: Complex64,
        coin: CoinParams,
    },
    /// `I_R - uU` on the arc space.
    QwArc {
        #[serde(with = "crate::json::complex")]
        u: Complex64,
        coin: CoinParams,
    },
}

impl FiberKernel {
    pub fn fiber_matrix(&self, vg: &VoltageGraph, theta: &[f64]) -> CMat {
        match *self {
            FiberKernel::Ihara { t } => {
                let f = bloch_fiber(vg, theta);
                ihara_kernel(&f.adjacency, |v| vg.degree(v), t)
            }
            FiberKernel::QwInterior { u, coin } => {
                let f = bloch_fiber(vg, theta);
                interior_kernel(&f.dsd, &coin, u)
            }
            FiberKernel::QwArc { u, coin } => linalg::shifted(&arc_fiber(vg, theta, &coin).evolution, ONE, -u),
        }
    }

    /// The same operator on a finite graph.
    pub fn graph_matrix(&self, g: &Graph) -> CMat {
        match *self {
            FiberKernel::Ihara { t } => ihara_kernel(&linalg::to_complex(&g.adjacency_matrix()), |v| g.degree(v), t),
            FiberKernel::QwInterior { u, coin } => interior_kernel(&OperatorBundle::new(g, &coin).dsd, &coin, u),
            FiberKernel::QwArc { u, coin } => linalg::shifted(&OperatorBundle::new(g, &coin).evolution, ONE, -u),
        }
    }

    /// Size of the fiber matrix.
    pub fn fiber_size(&self, vg: &VoltageGraph) -> usize {
        match self {
            FiberKernel::QwArc { .. } => vg.arc_count(),
            _ => vg.vertex_count(),
        }
    }
}

fn ihara_kernel(adjacency: &CMat, degree: impl Fn(usize) -> usize, t: Complex64) -> CMat {
    let n = adjacency.nrows();
    Mat::from_fn(n, n, |u, v| {
        let diag = if u == v { ONE + t * t * (degree(u) as f64 - 1.0) } else { ZERO };
        diag - t * adjacency[(u, v)]
    })
}

fn interior_kernel(dsd: &CMat, p: &CoinParams, u: Complex64) -> CMat {
    linalg::shifted(dsd, ONE - p.a * p.b * u * u, -p.c() * u)
}

/// The block operators `L` and `M` on `l2(V) + l2(R)` at one fiber:
///
/// ```text
/// L = [ (1 - b^2 u^2) I_V   -c d - bcu d S ]    M = [ I_V       c d + bcu d S   ]
///     [ 0                    I_R           ]        [ u S d*    (1 - b^2 u^2) I_R ]
/// ```
#[derive(Clone, Debug)]
pub struct LmFactors {
    pub l: CMat,
    pub m: CMat,
    pub fiber: ArcFiber,
    pub n: usize,
    pub r: usize,
}

pub fn lm_factors(vg: &VoltageGraph, p: &CoinParams, u: Complex64, theta: &[f64]) -> LmFactors {
    let fiber = arc_fiber(vg, theta, p);
    let (n, r) = (vg.vertex_count(), vg.arc_count());
    let (b, c) = (p.b, p.c());
    let w = ONE - b * b * u * u;
    let ds = &fiber.boundary * &fiber.shift;
    let upper = CMat::from_fn(n, r, |i, j| c * fiber.boundary[(i, j)] + b * c * u * ds[(i, j)]);
    let sdstar = &fiber.shift * linalg::adjoint(&fiber.boundary);
    let size = n + r;
    let l = CMat::from_fn(size, size, |i, j| match (i < n, j < n) {
        (true, true) => if i == j { w } else { ZERO },
        (true, false) => -upper[(i, j - n)],
        (false, true) => ZERO,
        (false, false) => if i == j { ONE } else { ZERO },
    });
    let m = CMat::from_fn(size, size, |i, j| match (i < n, j < n) {
        (true, true) => if i == j { ONE } else { ZERO },
        (true, false) => upper[(i, j - n)],
        (false, true) => u * sdstar[(i - n, j)],
        (false, false) => if i == j { w } else { ZERO },
    });
    LmFactors { l, m, fiber, n, r }
}

/// Residuals of the block factorization at one fiber, each relative to the
/// size of the quantity compared.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct LmResiduals {
    /// `LM` against its displayed block form.
    pub lm_blocks: f64,
    /// `ML` against its displayed block form.
    pub ml_blocks: f64,
    /// `det(LM)` against `det(ML)`.
    pub det_swap: f64,
    /// `det(LM)` against `(1 - b^2 u^2)^{2 m0} det((1 - ab u^2) I - cu dSd*)`.
    pub det_lm: f64,
    /// `det(ML)` against `(1 - b^2 u^2)^{n0} det(I - uU) det(I + ubS)`.
    pub det_ml: f64,
    /// `det(I + ubS)` against `(1 - b^2 u^2)^{m0}`.
    pub shift_det: f64,
}

impl LmResiduals {
    pub fn max(&self) -> f64 {
        [self.lm_blocks, self.ml_blocks, self.det_swap, self.det_lm, self.det_ml, self.shift_det]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

fn rel(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / (1.0 + y.norm())
}

pub fn lm_residuals(vg: &VoltageGraph, p: &CoinParams, u: Complex64, theta: &[f64]) -> LmResiduals {
    let f = lm_factors(vg, p, u, theta);
    let (n, r) = (f.n, f.r);
    let (a, b, c) = (p.a, p.b, p.c());
    let w = ONE - b * b * u * u;
    let fiber = &f.fiber;
    let dsd = &fiber.boundary * &fiber.shift * linalg::adjoint(&fiber.boundary);
    let sdstar = &fiber.shift * linalg::adjoint(&fiber.boundary);
    let interior = linalg::shifted(&dsd, ONE - a * b * u * u, -c * u);
    let arc_kernel = linalg::shifted(&fiber.evolution, ONE, -u);
    let shift_kernel = linalg::shifted(&fiber.shift, ONE, b * u);
    // I_R - u(c S d* d + b S) is I_R - uU written out
    let projection = linalg::adjoint(&fiber.boundary) * &fiber.boundary;
    let walk = &fiber.shift * linalg::shifted(&projection, b, c);
    let lower_right = linalg::shifted(&walk, ONE, -u) * &shift_kernel;

    let size = n + r;
    let lm_expected = CMat::from_fn(size, size, |i, j| match (i < n, j < n) {
        (true, true) => interior[(i, j)],
        (true, false) => ZERO,
        (false, true) => u * sdstar[(i - n, j)],
        (false, false) => if i == j { w } else { ZERO },
    });
    let ml_expected = CMat::from_fn(size, size, |i, j| match (i < n, j < n) {
        (true, true) => if i == j { w } else { ZERO },
        (true, false) => ZERO,
        (false, true) => u * w * sdstar[(i - n, j)],
        (false, false) => lower_right[(i - n, j - n)],
    });
    let lm = &f.l * &f.m;
    let ml = &f.m * &f.l;
    let det_lm = linalg::determinant(&lm);
    let det_ml = linalg::determinant(&ml);
    let det_shift = linalg::determinant(&shift_kernel);
    LmResiduals {
        lm_blocks: linalg::max_abs_diff(&lm, &lm_expected),
        ml_blocks: linalg::max_abs_diff(&ml, &ml_expected),
        det_swap: rel(det_lm, det_ml),
        det_lm: rel(det_lm, w.powi(r as i32) * linalg::determinant(&interior)),
        det_ml: rel(det_ml, w.powi(n as i32) * linalg::determinant(&arc_kernel) * det_shift),
        shift_det: rel(det_shift, w.powi((r / 2) as i32)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{grid2d, honeycomb, line};
    use crate::linalg::{adjoint, c, identity, max_abs_diff, real};
    use std::f64::consts::PI;

    #[test]
    fn line_fiber_is_cosine() {
        for theta in [0.0, 0.4, 1.0, 2.5, 5.9] {
            let f = bloch_fiber(&line(), &[theta]);
            assert!((f.adjacency[(0, 0)] - real(2.0 * theta.cos())).norm() < 1e-15);
            assert!((f.dsd[(0, 0)] - real(theta.cos())).norm() < 1e-15);
        }
    }

    #[test]
    fn grid_fiber_at_origin() {
        let f = bloch_fiber(&grid2d(), &[0.0, 0.0]);
        assert_eq!(f.adjacency[(0, 0)], real(4.0));
        assert_eq!(f.dsd[(0, 0)], ONE);
    }

    #[test]
    fn fibers_are_hermitian_and_bounded() {
        for vg in [line(), grid2d(), honeycomb()] {
            for k in 0..7 {
                let theta: Vec<f64> = (0..vg.dim()).map(|i| 0.37 * (k + 2 * i) as f64 % (2.0 * PI)).collect();
                let f = bloch_fiber(&vg, &theta);
                assert!(max_abs_diff(&f.adjacency, &adjoint(&f.adjacency)) < 1e-15);
                assert!(max_abs_diff(&f.dsd, &adjoint(&f.dsd)) < 1e-15);
                let spec = linalg::hermitian_eigenvalues(&f.dsd).unwrap();
                assert!(spec.iter().all(|x| x.abs() <= 1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn arc_fiber_is_consistent() {
        let p = CoinParams::unimodular(0.7, -1.9);
        for vg in [line(), grid2d(), honeycomb()] {
            let theta: Vec<f64> = (0..vg.dim()).map(|i| 0.9 + 1.3 * i as f64).collect();
            let f = arc_fiber(&vg, &theta, &p);
            let r = vg.arc_count();
            assert!(max_abs_diff(&(&f.shift * &f.shift), &identity(r)) < 1e-15);
            let ddstar = &f.boundary * adjoint(&f.boundary);
            assert!(max_abs_diff(&ddstar, &identity(vg.vertex_count())) < 1e-15);
            let dsd = &f.boundary * &f.shift * adjoint(&f.boundary);
            assert!(max_abs_diff(&dsd, &bloch_fiber(&vg, &theta).dsd) < 1e-15);
            let uu = &f.evolution * adjoint(&f.evolution);
            assert!(max_abs_diff(&uu, &identity(r)) < 1e-14);
        }
    }

    #[test]
    fn equal_coin_arc_fiber_determinant() {
        let a = c(0.8, 0.6);
        let u = real(0.2);
        for theta in [0.0, 1.1, 3.0] {
            let k = FiberKernel::QwArc { u, coin: CoinParams::new(a, a) }.fiber_matrix(&line(), &[theta]);
            assert!((linalg::determinant(&k) - (ONE - a * a * u * u)).norm() < 1e-15);
        }
    }

    #[test]
    fn lm_factorization_holds() {
        let coins = [CoinParams::grover(), CoinParams::unimodular(0.4, 2.2), CoinParams::new(c(1.2, 0.3), c(-0.5, 0.4))];
        for vg in [line(), grid2d(), honeycomb()] {
            for p in &coins {
                let theta: Vec<f64> = (0..vg.dim()).map(|i| 0.3 + 2.0 * i as f64).collect();
                let res = lm_residuals(&vg, p, c(0.15, -0.05), &theta);
                assert!(res.max() < 1e-12, "{res:?}");
            }
        }
    }
}
