//! `Z^d`-periodic graphs: voltage-graph model, Bloch fibers, and
//! `Gamma`-determinant zeta functions.

mod det;
mod fiber;
mod voltage;

pub use det::{
    det_gamma, det_gamma_of, det_gamma_with, grid_point, periodic_ihara_zeta, periodic_qw_zeta, periodic_qw_zeta_arc,
    quotient_log_det, DetGammaResult, QuadratureOptions, DEFAULT_GRID,
};
pub use fiber::{arc_fiber, bloch_fiber, lm_factors, lm_residuals, ArcFiber, BlochFiber, FiberKernel, LmFactors, LmResiduals};
pub use voltage::{GammaTraces, VoltageArc, VoltageEdgeSpec, VoltageGraph, VoltageGraphSpec};

/// `(Tr_Gamma(I_V), Tr_Gamma(I_R))`.
pub fn tr_gamma_constants(vg: &VoltageGraph) -> GammaTraces {
    vg.gamma_traces()
}

pub fn l2_euler_characteristic(vg: &VoltageGraph) -> f64 {
    vg.l2_euler_characteristic()
}

pub fn finite_quotient(vg: &VoltageGraph, l: usize) -> crate::Result<crate::Graph> {
    vg.finite_quotient(l)
}
