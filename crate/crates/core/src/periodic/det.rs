//! `Gamma`-determinants by torus quadrature.
//!
//! For a free `Z^d` action, `log det_Gamma(F) = Tr_Gamma(log F)` is the
//! average over the torus of `log det F(theta)`. The average is taken with
//! the trapezoidal rule on a uniform `N^d` grid, and each fiber log-determinant
//! is the sum of principal logarithms of its eigenvalues. That is only
//! meaningful while every eigenvalue stays in the disk `|z - 1| < 1`, so the
//! check is enforced.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, ONE};
use crate::operators::CoinParams;
use crate::periodic::{FiberKernel, VoltageGraph};

pub const DEFAULT_GRID: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DetGammaResult {
    #[serde(with = "crate::json::complex")]
    pub value: Complex64,
    /// `Tr_Gamma(log F)`, the torus average of the fiber log-determinants.
    #[serde(with = "crate::json::complex")]
    pub log_value: Complex64,
    pub grid_size: usize,
    pub fiber_branch_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_complex_vec")]
    pub per_fiber_logdet: Option<Vec<Complex64>>,
}

mod opt_complex_vec {
    use num_complex::Complex64;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Complex64>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(zs) => crate::json::complex_vec::serialize(zs, s),
            None => s.serialize_none(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureOptions {
    pub grid: usize,
    pub keep_per_fiber: bool,
    /// Fail on the first fiber eigenvalue outside `|z - 1| < 1`. When off,
    /// the value is still computed and `fiber_branch_ok` records the failure.
    pub strict: bool,
}

impl QuadratureOptions {
    pub fn new(grid: usize) -> Self {
        QuadratureOptions { grid, keep_per_fiber: false, strict: true }
    }
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions::new(DEFAULT_GRID)
    }
}

/// Grid point `index` of the `grid^dim` tensor grid, first direction fastest.
pub fn grid_point(index: usize, grid: usize, dim: usize) -> Vec<f64> {
    let mut rest = index;
    (0..dim)
        .map(|_| {
            let k = rest % grid;
            rest /= grid;
            2.0 * PI * k as f64 / grid as f64
        })
        .collect()
}

struct FiberLog {
    logdet: Complex64,
    violation: Option<Complex64>,
}

/// Sum of principal logs of the eigenvalues of `m`, and the first eigenvalue
/// outside `|z - 1| < 1` if there is one.
fn branch_logdet(m: &linalg::CMat) -> Result<FiberLog> {
    let eigenvalues = linalg::eigenvalues(m)?;
    let violation = eigenvalues.iter().copied().find(|z| (z - ONE).norm() >= 1.0);
    let logs: Vec<Complex64> = eigenvalues.iter().map(|z| z.ln()).collect();
    Ok(FiberLog { logdet: linalg::pairwise_sum(&logs), violation })
}

pub fn det_gamma(vg: &VoltageGraph, kernel: &FiberKernel, grid: usize) -> Result<DetGammaResult> {
    det_gamma_with(vg, kernel, &QuadratureOptions::new(grid))
}

pub fn det_gamma_with(vg: &VoltageGraph, kernel: &FiberKernel, opts: &QuadratureOptions) -> Result<DetGammaResult> {
    det_gamma_of(vg.dim(), opts, |theta| kernel.fiber_matrix(vg, theta))
}

/// `Gamma`-determinant of an arbitrary periodic operator given by its
/// fibers `theta -> F(theta)` over a `dim`-torus.
pub fn det_gamma_of<F>(dim: usize, opts: &QuadratureOptions, fiber: F) -> Result<DetGammaResult>
where
    F: Fn(&[f64]) -> linalg::CMat + Sync,
{
    if opts.grid == 0 {
        return Err(Error::InvalidArgument("grid size must be positive".into()));
    }
    let points = opts
        .grid
        .checked_pow(dim as u32)
        .ok_or_else(|| Error::InvalidArgument("grid too large".into()))?;
    let fibers: Vec<Result<FiberLog>> = (0..points)
        .into_par_iter()
        .map(|k| branch_logdet(&fiber(&grid_point(k, opts.grid, dim))))
        .collect();
    let mut logs = Vec::with_capacity(points);
    let mut branch_ok = true;
    for (k, fiber) in fibers.into_iter().enumerate() {
        let fiber = fiber?;
        if let Some(eigenvalue) = fiber.violation {
            if opts.strict {
                return Err(Error::BranchViolation { theta: grid_point(k, opts.grid, dim), eigenvalue });
            }
            branch_ok = false;
        }
        logs.push(fiber.logdet);
    }
    let log_value = linalg::pairwise_sum(&logs) / points as f64;
    Ok(DetGammaResult {
        value: log_value.exp(),
        log_value,
        grid_size: opts.grid,
        fiber_branch_ok: branch_ok,
        per_fiber_logdet: opts.keep_per_fiber.then_some(logs),
    })
}

/// `Z_{G,Gamma}(t) = (1 - t^2)^{-(m0 - n0)} det_Gamma(I - tA + t^2 (D - I))^{-1}`.
pub fn periodic_ihara_zeta(vg: &VoltageGraph, t: Complex64, grid: usize) -> Result<Complex64> {
    let det = det_gamma(vg, &FiberKernel::Ihara { t }, grid)?;
    let exponent = vg.l2_euler_characteristic();
    check_finite("(1 - t^2)^(n0 - m0)", (ONE - t * t).powf(exponent) / det.value)
}

/// `zeta(G, Gamma, u) = (1 - b^2 u^2)^{Tr(I_V) - Tr(I_R)/2}
/// det_Gamma((1 - ab u^2) I_V - cu d S d*)^{-1}`.
pub fn periodic_qw_zeta(vg: &VoltageGraph, p: &CoinParams, u: Complex64, grid: usize) -> Result<Complex64> {
    let det = det_gamma(vg, &FiberKernel::QwInterior { u, coin: *p }, grid)?;
    let traces = vg.gamma_traces();
    let exponent = traces.vertices - 0.5 * traces.arcs;
    check_finite("(1 - b^2 u^2)^(Tr I_V - Tr I_R / 2)", (ONE - p.b * p.b * u * u).powf(exponent) / det.value)
}

/// `zeta(G, Gamma, u) = det_Gamma(I_R - uU)^{-1}` straight from the arc space.
pub fn periodic_qw_zeta_arc(vg: &VoltageGraph, p: &CoinParams, u: Complex64, grid: usize) -> Result<Complex64> {
    let det = det_gamma(vg, &FiberKernel::QwArc { u, coin: *p }, grid)?;
    Ok(ONE / det.value)
}

fn check_finite(factor: &str, z: Complex64) -> Result<Complex64> {
    if z.is_finite() {
        Ok(z)
    } else {
        Err(Error::Pole { factor: factor.into(), value: z })
    }
}

/// `(1/L^d) sum log lambda` over the eigenvalues of the kernel on the finite
/// cover by `(Z/L)^d`. Equal to the `N = L` torus average when both are taken
/// on the principal branch.
pub fn quotient_log_det(vg: &VoltageGraph, kernel: &FiberKernel, l: usize) -> Result<Complex64> {
    let g = vg.finite_quotient(l)?;
    let eigenvalues = linalg::eigenvalues(&kernel.graph_matrix(&g))?;
    let logs: Vec<Complex64> = eigenvalues.iter().map(|z| z.ln()).collect();
    Ok(linalg::pairwise_sum(&logs) / l.pow(vg.dim() as u32) as f64)
}
