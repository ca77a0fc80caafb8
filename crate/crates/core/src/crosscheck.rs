//! The identity suite: every quantity that can be computed two independent
//! ways is computed both ways and the residual is compared to a tolerance.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::graph::{reduced_cycle_counts, Graph};
use crate::linalg::{self, c, real, CMat, ONE};
use crate::operators::{self, CoinParams, OperatorBundle};
use crate::periodic::{self, bloch_fiber, FiberKernel, QuadratureOptions, VoltageGraph};
use crate::series::bass_log_series;
use crate::zeta::{self, CharpolyMethod, SpectrumMethod, ZetaMethod};

/// Deliberate corruptions used to check that the suite can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Raises the `(1 - b^2 u^2)` prefactor exponent by one.
    CorruptPrefactor,
}

#[derive(Clone, Debug)]
pub struct CrossCheckOptions {
    pub seed: u64,
    /// Random `u` with `|u| < u_radius` per coin.
    pub u_samples: usize,
    pub u_radius: f64,
    pub unimodular_coins: usize,
    pub series_degree: usize,
    /// Quotient sizes `L` for the sampling identity.
    pub sampling_sizes: Vec<usize>,
    pub grid: usize,
    /// Random `(theta, u)` points for the fiber-level checks.
    pub fiber_samples: usize,
    pub fault: Option<Fault>,
}

impl Default for CrossCheckOptions {
    fn default() -> Self {
        CrossCheckOptions {
            seed: 0x5eed,
            u_samples: 20,
            u_radius: 0.3,
            unimodular_coins: 5,
            series_degree: 12,
            sampling_sizes: vec![3, 4, 5],
            grid: periodic::DEFAULT_GRID,
            fiber_samples: 10,
            fault: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Parameters at which the largest residual occurred.
    pub worst_case: String,
}

impl IdentityCheck {
    fn new(name: &str, tolerance: f64) -> Self {
        IdentityCheck { name: name.into(), max_residual: 0.0, tolerance, passed: true, worst_case: String::new() }
    }

    fn record(&mut self, residual: f64, case: impl FnOnce() -> String) {
        let residual = if residual.is_nan() { f64::INFINITY } else { residual };
        if residual > self.max_residual || self.worst_case.is_empty() {
            self.max_residual = residual;
            self.worst_case = case();
        }
        self.passed = self.max_residual <= self.tolerance;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheckReport {
    pub entries: Vec<IdentityCheck>,
    pub all_passed: bool,
}

impl CrossCheckReport {
    fn new(entries: Vec<IdentityCheck>) -> Self {
        let all_passed = entries.iter().all(|e| e.passed);
        CrossCheckReport { entries, all_passed }
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.entries.iter().find(|e| e.name == name)
    }
}

fn fmt_c(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

fn fmt_coin(p: &CoinParams) -> String {
    format!("a={} b={}", fmt_c(p.a), fmt_c(p.b))
}

fn random_u(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(0.0..2.0 * PI))
}

/// Two fixed coins whose eigenvalues are off the unit circle.
pub fn non_unitary_coins() -> [CoinParams; 2] {
    [CoinParams::new(c(1.3, 0.2), c(-0.4, 0.7)), CoinParams::new(c(0.5, -0.1), c(2.0, 0.3))]
}

/// Grover, `unimodular_coins` random unit-circle coins, then the two fixed
/// non-unitary coins.
pub fn coin_family(rng: &mut ChaCha8Rng, unimodular_coins: usize) -> Vec<CoinParams> {
    let mut coins = vec![CoinParams::grover()];
    for _ in 0..unimodular_coins {
        coins.push(CoinParams::unimodular(rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI)));
    }
    coins.extend(non_unitary_coins());
    coins
}

fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::INFINITY)
}

/// Exact comparison of the Bass log series with `N_m / m`; the residual is
/// the largest coefficient difference, which is zero unless something is
/// wrong.
pub fn check_euler_series(g: &Graph, degree: usize) -> Result<IdentityCheck> {
    let mut check = IdentityCheck::new("ihara-euler-series", 1e-9);
    let counts = reduced_cycle_counts(g, degree)?;
    let bass = bass_log_series(g, degree);
    for (k, q) in bass.iter().enumerate() {
        let m = k + 1;
        let expected = BigRational::new(counts.get(m).into(), m.into());
        let diff = (q - expected).abs();
        check.record(rational_to_f64(&diff), || format!("degree {m}"));
    }
    // The floating Bass value against the truncated series. With
    // (d_max - 1) t <= 1/20 the neglected tail is below 1e-16.
    let d_max = g.degrees().iter().copied().max().unwrap_or(1) as f64;
    let t = real(0.05 / d_max);
    let log_z = zeta::ihara_zeta_bass(g, t)?.ln();
    let series: Complex64 = (1..=degree).map(|m| real(counts.get(m) as f64 / m as f64) * t.powu(m as u32)).sum();
    check.record((log_z - series).norm(), || format!("log Z({}) against the truncated series", t.re));
    Ok(check)
}

/// Runs every finite-graph identity.
pub fn check_graph(g: &Graph, opts: &CrossCheckOptions) -> Result<CrossCheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let coins = coin_family(&mut rng, opts.unimodular_coins);
    let us: Vec<Complex64> = (0..opts.u_samples).map(|_| random_u(&mut rng, opts.u_radius)).collect();
    let excess = g.edge_count() as i64 - g.vertex_count() as i64;
    let mut entries = vec![check_euler_series(g, opts.series_degree)?];

    let grover_direct = zeta::qw_charpoly(g, &CoinParams::grover(), CharpolyMethod::Direct)?;
    let ks = zeta::konno_sato_charpoly(g);
    let mut check = IdentityCheck::new("konno-sato", 1e-10);
    check.record(ks.max_coeff_diff(&grover_direct), || "Grover characteristic polynomial".into());
    entries.push(check);
    let mut check = IdentityCheck::new("konno-sato-degree-form", 1e-10);
    check.record(zeta::konno_sato_charpoly_degree_form(g).max_coeff_diff(&ks), || "degree-product form".into());
    entries.push(check);

    // det(I - uU) against the vertex-space reduction
    let bundles: Vec<OperatorBundle> = coins.iter().map(|p| OperatorBundle::new(g, p)).collect();
    let cases: Vec<(usize, Complex64)> = (0..coins.len()).flat_map(|i| us.iter().map(move |&u| (i, u))).collect();
    let residuals: Vec<f64> = cases
        .par_iter()
        .map(|&(i, u)| {
            let ops = &bundles[i];
            let direct = linalg::determinant(&linalg::shifted(&ops.evolution, ONE, -u));
            let mut reduced = zeta::reduced_determinant(ops, g, u);
            if opts.fault == Some(Fault::CorruptPrefactor) {
                reduced *= ONE - ops.coin_params.b * ops.coin_params.b * u * u;
            }
            (direct - reduced).norm() / (1.0 + direct.norm())
        })
        .collect();
    let mut check = IdentityCheck::new("reduced-determinant", 1e-10);
    for (&(i, u), &r) in cases.iter().zip(&residuals) {
        check.record(r, || format!("{} u={}", fmt_coin(&coins[i]), fmt_c(u)));
    }
    entries.push(check);

    let mut check = IdentityCheck::new("charpoly-methods", 1e-8);
    for p in &coins {
        let direct = zeta::qw_charpoly(g, p, CharpolyMethod::Direct)?;
        let reduced = zeta::qw_charpoly(g, p, CharpolyMethod::Reduced)?;
        let scale = 1.0 + direct.coefficients().iter().map(|z| z.norm()).fold(0.0, f64::max);
        check.record(direct.max_coeff_diff(&reduced) / scale, || fmt_coin(p));
    }
    entries.push(check);

    let mut spectra = IdentityCheck::new("spectral-mapping", 1e-8);
    let mut multiplicity = IdentityCheck::new("pm-b-multiplicity", 0.0);
    for p in coins.iter().filter(|p| p.is_unitary()) {
        let direct = zeta::qw_spectrum(g, p, SpectrumMethod::Direct)?;
        let mapped = zeta::qw_spectrum(g, p, SpectrumMethod::Mapped)?;
        spectra.record(
            linalg::multiset_distance(&direct.eigenvalues, &mapped.eigenvalues, zeta::CLUSTER_TOLERANCE),
            || fmt_coin(p),
        );
        let off = (direct.multiplicity_of_plus_b - excess)
            .abs()
            .max((direct.multiplicity_of_minus_b - excess).abs());
        multiplicity.record(off as f64, || format!("{} (+b: {}, -b: {}, m-n: {excess})", fmt_coin(p), direct.multiplicity_of_plus_b, direct.multiplicity_of_minus_b));
    }
    entries.push(spectra);
    entries.push(multiplicity);

    let grover = zeta::qw_spectrum(g, &CoinParams::grover(), SpectrumMethod::Direct)?;
    let mut check = IdentityCheck::new("grover-transition-spectrum", 1e-8);
    check.record(
        linalg::multiset_distance(&zeta::grover_spectrum_from_transition(g)?, &grover.eigenvalues, zeta::CLUSTER_TOLERANCE),
        || "lambda_T +- i sqrt(1 - lambda_T^2) with +-1 blocks".into(),
    );
    entries.push(check);

    let mut check = IdentityCheck::new("grover-evolution", 1e-15);
    check.record(
        linalg::max_abs_diff(&operators::evolution_matrix(g, &CoinParams::grover()), &operators::grover_matrix(g)),
        || "a=1 b=-1".into(),
    );
    entries.push(check);

    let mut check = IdentityCheck::new("unitarity", 1e-12);
    for (p, ops) in coins.iter().zip(&bundles).filter(|(p, _)| p.is_unitary()) {
        let product = linalg::adjoint(&ops.evolution) * &ops.evolution;
        check.record(linalg::max_abs_diff(&product, &linalg::identity(g.arc_count())), || fmt_coin(p));
    }
    entries.push(check);

    let mut check = IdentityCheck::new("log-series-traces", 1e-9);
    for p in coins.iter().filter(|p| p.is_unitary()) {
        let traces = zeta::trace_log_series(g, p, opts.series_degree);
        let series = zeta::qw_log_series(g, p, opts.series_degree)?;
        for (k, (x, y)) in traces.iter().zip(&series).enumerate() {
            check.record((x - y).norm(), || format!("{} degree {}", fmt_coin(p), k + 1));
        }
    }
    entries.push(check);

    let mut check = IdentityCheck::new("zeta-methods", 1e-10);
    for &(i, u) in &cases {
        let p = &coins[i];
        let direct = zeta::qw_zeta_reciprocal(g, p, u, ZetaMethod::Direct);
        let reduced = zeta::qw_zeta_reciprocal(g, p, u, ZetaMethod::Reduced);
        check.record((direct - reduced).norm() / (1.0 + direct.norm()), || format!("{} u={}", fmt_coin(p), fmt_c(u)));
    }
    entries.push(check);

    Ok(CrossCheckReport::new(entries))
}

/// Fiber-level parameters for the periodic checks: `t` and `u` small enough
/// that every fiber eigenvalue stays in `|z - 1| < 1` on the shipped lattices.
fn periodic_parameters(vg: &VoltageGraph) -> (Complex64, Complex64) {
    let max_degree = vg.degrees().iter().copied().max().unwrap_or(1) as f64;
    let t = real(0.4 / (max_degree + 1.0));
    let u = c(0.2, 0.05);
    (t, u)
}

/// Runs every periodic identity.
pub fn check_voltage(vg: &VoltageGraph, opts: &CrossCheckOptions) -> Result<CrossCheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (t, u) = periodic_parameters(vg);
    let coins = [CoinParams::grover(), CoinParams::unimodular(0.7, 1.9)];
    let dim = vg.dim();
    let mut entries = Vec::new();

    let kernels: Vec<(&str, FiberKernel)> = vec![
        ("ihara", FiberKernel::Ihara { t }),
        ("qw-interior", FiberKernel::QwInterior { u, coin: coins[1] }),
        ("qw-arc", FiberKernel::QwArc { u, coin: coins[1] }),
    ];
    for (name, kernel) in &kernels {
        let mut check = IdentityCheck::new(&format!("sampling-identity-{name}"), 1e-10);
        for &l in &opts.sampling_sizes {
            let cover = match periodic::quotient_log_det(vg, kernel, l) {
                Ok(v) => v,
                // covers that are not simple at this L have no graph to compare with
                Err(crate::Error::NonSimpleCover(_)) => continue,
                Err(e) => return Err(e),
            };
            let torus = periodic::det_gamma(vg, kernel, l)?.log_value;
            check.record((torus - cover).norm(), || format!("L={l}"));
        }
        entries.push(check);
    }

    let mut check = IdentityCheck::new("quadrature-self-convergence", 1e-10);
    for (name, kernel) in &kernels[..2] {
        let coarse = periodic::det_gamma(vg, kernel, opts.grid)?.value;
        let fine = periodic::det_gamma(vg, kernel, 2 * opts.grid)?.value;
        check.record((coarse - fine).norm(), || format!("{name}, N={} vs {}", opts.grid, 2 * opts.grid));
    }
    entries.push(check);

    let traces = vg.gamma_traces();
    let mut check = IdentityCheck::new("periodic-interior-vs-arc", 1e-10);
    for p in &coins {
        let mut interior = periodic::periodic_qw_zeta(vg, p, u, opts.grid)?;
        if opts.fault == Some(Fault::CorruptPrefactor) {
            interior /= ONE - p.b * p.b * u * u;
        }
        let arc = periodic::periodic_qw_zeta_arc(vg, p, u, opts.grid)?;
        check.record((interior - arc).norm() / (1.0 + arc.norm()), || {
            format!("{} u={} (Tr I_V={}, Tr I_R={})", fmt_coin(p), fmt_c(u), traces.vertices, traces.arcs)
        });
    }
    entries.push(check);

    let thetas: Vec<Vec<f64>> = (0..opts.fiber_samples)
        .map(|_| (0..dim).map(|_| rng.gen_range(0.0..2.0 * PI)).collect())
        .collect();
    let fiber_us: Vec<Complex64> = (0..opts.fiber_samples).map(|_| random_u(&mut rng, opts.u_radius)).collect();

    let mut check = IdentityCheck::new("lm-factorization", 1e-10);
    for (theta, &u) in thetas.iter().zip(&fiber_us) {
        for p in coins.iter().chain(&non_unitary_coins()) {
            let r = periodic::lm_residuals(vg, p, u, theta).max();
            check.record(r, || format!("{} u={} theta={theta:?}", fmt_coin(p), fmt_c(u)));
        }
    }
    entries.push(check);

    let degree_product: f64 = vg.degrees().iter().map(|&d| d as f64).product();
    let mut check = IdentityCheck::new("fiber-konno-sato", 1e-10);
    for (theta, &u) in thetas.iter().zip(&fiber_us) {
        let f = bloch_fiber(vg, theta);
        let left = linalg::determinant(&linalg::shifted(&f.dsd, ONE + u * u, -2.0 * u));
        let right_matrix = CMat::from_fn(f.adjacency.nrows(), f.adjacency.ncols(), |i, j| {
            (ONE + u * u) * f.degree[(i, j)] - 2.0 * u * f.adjacency[(i, j)]
        });
        let right = linalg::determinant(&right_matrix) / degree_product;
        check.record((left - right).norm() / (1.0 + left.norm()), || format!("u={} theta={theta:?}", fmt_c(u)));
    }
    entries.push(check);

    let n0 = vg.vertex_count() as i32;
    let quad = QuadratureOptions::new(opts.grid.min(32));
    let base = FiberKernel::QwInterior { u: u * 0.5, coin: coins[0] };
    let mut check = IdentityCheck::new("gamma-homogeneity", 1e-10);
    let det_f = periodic::det_gamma_with(vg, &base, &quad)?.value;
    for z in [c(1.05, 0.02), c(0.97, -0.03)] {
        let det_zf = periodic::det_gamma_of(dim, &quad, |theta| linalg::scale(&base.fiber_matrix(vg, theta), z))?.value;
        let expected = z.powi(n0) * det_f;
        check.record((det_zf - expected).norm() / (1.0 + expected.norm()), || format!("z={}", fmt_c(z)));
    }
    entries.push(check);

    let mut check = IdentityCheck::new("gamma-multiplicativity", 1e-10);
    let s = 0.3 / (vg.degrees().iter().copied().max().unwrap_or(1) as f64 + 1.0);
    for v in [c(s, 0.0), c(0.5 * s, 0.5 * s)] {
        let first = move |theta: &[f64]| linalg::shifted(&bloch_fiber(vg, theta).adjacency, ONE, v);
        let second = move |theta: &[f64]| linalg::shifted(&bloch_fiber(vg, theta).dsd, ONE, -v);
        let product = periodic::det_gamma_of(dim, &quad, |theta| &first(theta) * &second(theta))?.value;
        let separate = periodic::det_gamma_of(dim, &quad, first)?.value * periodic::det_gamma_of(dim, &quad, second)?.value;
        check.record((product - separate).norm() / (1.0 + separate.norm()), || format!("u={}", fmt_c(v)));
    }
    entries.push(check);

    Ok(CrossCheckReport::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, grid2d, honeycomb, line, path, petersen};

    fn small() -> CrossCheckOptions {
        CrossCheckOptions { u_samples: 4, unimodular_coins: 2, fiber_samples: 3, grid: 32, ..Default::default() }
    }

    #[test]
    fn finite_identities_pass() {
        for g in [cycle(3), complete(4), petersen(), path(3)] {
            let report = check_graph(&g, &small()).unwrap();
            let failures: Vec<_> = report.failures().collect();
            assert!(report.all_passed, "{failures:?}");
            assert!(report.entries.len() >= 10);
        }
    }

    #[test]
    fn periodic_identities_pass() {
        for vg in [line(), grid2d(), honeycomb()] {
            let report = check_voltage(&vg, &small()).unwrap();
            let failures: Vec<_> = report.failures().collect();
            assert!(report.all_passed, "{failures:?}");
        }
    }

    #[test]
    fn corrupted_prefactor_is_caught() {
        let opts = CrossCheckOptions { fault: Some(Fault::CorruptPrefactor), ..small() };
        let report = check_graph(&cycle(4), &opts).unwrap();
        assert!(!report.all_passed);
        let names: Vec<_> = report.failures().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["reduced-determinant"]);
        let report = check_voltage(&line(), &opts).unwrap();
        let names: Vec<_> = report.failures().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["periodic-interior-vs-arc"]);
    }

    #[test]
    fn nan_residuals_fail() {
        let mut check = IdentityCheck::new("x", 1.0);
        check.record(f64::NAN, || "nan".into());
        assert!(!check.passed);
        assert_eq!(check.max_residual, f64::INFINITY);
    }
}
