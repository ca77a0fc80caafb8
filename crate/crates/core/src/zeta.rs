//! Zeta functions, characteristic polynomials and spectra of finite graphs.
//!
//! The quantum-walk zeta is `zeta(G, u) = det(I_{2m} - uU)^{-1}` with
//! `U = S C`. Its reduced form is
//! `det(I - uU) = (1 - b^2 u^2)^{m-n} det((1 - ab u^2) I_n - cu d S d*)`,
//! which brings a `2m x 2m` determinant down to `n x n`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{reduced_cycle_counts, Graph};
use crate::linalg::{self, CMat, ONE, ZERO};
use crate::operators::{self, CoinParams, OperatorBundle};
use crate::poly::{self, ComplexPolynomial};

/// A reciprocal zeta value at or below this magnitude is reported as a pole.
pub const POLE_TOLERANCE: f64 = 1e-13;

/// Distance within which an eigenvalue counts as sitting at `+b` or `-b`.
pub const CLUSTER_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZetaMethod {
    /// `det(I - uU)` on the arc space.
    Direct,
    /// The `n x n` vertex-space form.
    Reduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharpolyMethod {
    /// Expand `prod (x - lambda)` over the eigenvalues of `U`.
    Direct,
    /// Interpolate the vertex-space determinant and multiply by `(x^2 - b^2)^{m-n}`.
    Reduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumMethod {
    /// Eigensolve `U`.
    Direct,
    /// Map the spectrum of `d S d*` through `x^2 - c mu x - ab = 0`.
    Mapped,
}

fn check_pole(factor: &str, value: Complex64) -> Result<()> {
    if value.norm() <= POLE_TOLERANCE || !value.is_finite() {
        return Err(Error::Pole { factor: factor.to_string(), value });
    }
    Ok(())
}

fn powi(z: Complex64, k: i64) -> Complex64 {
    z.powi(k as i32)
}

/// `det(I - tA + t^2 (D - I))`.
pub fn bass_determinant(g: &Graph, t: Complex64) -> Complex64 {
    let a = g.adjacency_matrix();
    let m = CMat::from_fn(g.vertex_count(), g.vertex_count(), |u, v| {
        let diag = if u == v { ONE + t * t * (g.degree(u) as f64 - 1.0) } else { ZERO };
        diag - t * a[(u, v)]
    });
    linalg::determinant(&m)
}

/// `Z(G, t)^{-1} = (1 - t^2)^{r-1} det(I - tA + t^2 (D - I))`.
pub fn ihara_reciprocal(g: &Graph, t: Complex64) -> Complex64 {
    let r = g.betti_number() as i64;
    powi(ONE - t * t, r - 1) * bass_determinant(g, t)
}

/// The Ihara zeta function through the Bass determinant formula.
pub fn ihara_zeta_bass(g: &Graph, t: Complex64) -> Result<Complex64> {
    let r = g.betti_number() as i64;
    let det = bass_determinant(g, t);
    check_pole("det(I - tA + t^2(D - I))", det)?;
    if r > 1 {
        check_pole("(1 - t^2)^(r-1)", ONE - t * t)?;
    }
    Ok(powi(ONE - t * t, 1 - r) / det)
}

/// Coefficients of `t^1 .. t^L` in `log Z(G, t) = sum N_m t^m / m`, from the
/// reduced cycle counts.
pub fn ihara_log_series(g: &Graph, max_degree: usize) -> Result<Vec<Complex64>> {
    let counts = reduced_cycle_counts(g, max_degree)?;
    Ok((1..=max_degree).map(|m| linalg::real(counts.get(m) as f64 / m as f64)).collect())
}

/// `(1 - b^2 u^2)^{m-n} det((1 - ab u^2) I - cu d S d*)`.
pub fn reduced_determinant(ops: &OperatorBundle, g: &Graph, u: Complex64) -> Complex64 {
    let p = ops.coin_params;
    let excess = g.edge_count() as i64 - g.vertex_count() as i64;
    let prefactor = powi(ONE - p.b * p.b * u * u, excess);
    let interior = linalg::shifted(&ops.dsd, ONE - p.a * p.b * u * u, -p.c() * u);
    prefactor * linalg::determinant(&interior)
}

/// `det(I_{2m} - uU)`.
pub fn qw_zeta_reciprocal(g: &Graph, p: &CoinParams, u: Complex64, method: ZetaMethod) -> Complex64 {
    let ops = OperatorBundle::new(g, p);
    match method {
        ZetaMethod::Direct => linalg::determinant(&linalg::shifted(&ops.evolution, ONE, -u)),
        ZetaMethod::Reduced => reduced_determinant(&ops, g, u),
    }
}

/// `zeta(G, u) = det(I - uU)^{-1}`.
pub fn qw_zeta(g: &Graph, p: &CoinParams, u: Complex64, method: ZetaMethod) -> Result<Complex64> {
    let det = qw_zeta_reciprocal(g, p, u, method);
    check_pole("det(I - uU)", det)?;
    Ok(ONE / det)
}

/// `(x^2 - s)^k` for `k >= 0`.
fn even_power(s: Complex64, k: usize) -> ComplexPolynomial {
    ComplexPolynomial::new(vec![-s, ZERO, ONE]).pow(k)
}

/// Multiplies by `(x^2 - s)^{excess}`, dividing when the exponent is negative
/// (trees, where `m - n = -1`).
fn with_even_prefactor(p: ComplexPolynomial, s: Complex64, excess: i64) -> ComplexPolynomial {
    if excess >= 0 {
        &p * &even_power(s, excess as usize)
    } else {
        p.div_monic(&even_power(s, excess.unsigned_abs() as usize))
    }
}

/// `det(x I - U)`.
pub fn qw_charpoly(g: &Graph, p: &CoinParams, method: CharpolyMethod) -> Result<ComplexPolynomial> {
    let ops = OperatorBundle::new(g, p);
    match method {
        CharpolyMethod::Direct => Ok(ComplexPolynomial::from_roots(&linalg::eigenvalues(&ops.evolution)?)),
        CharpolyMethod::Reduced => {
            let (a, b, c) = (p.a, p.b, p.c());
            let n = g.vertex_count();
            let interior = ComplexPolynomial::interpolate_on_unit_circle(2 * n, |x| {
                linalg::determinant(&linalg::shifted(&ops.dsd, x * x - a * b, -c * x))
            });
            let excess = g.edge_count() as i64 - n as i64;
            Ok(with_even_prefactor(interior, b * b, excess))
        }
    }
}

/// Right-hand side of the Grover characteristic polynomial in terms of the
/// random-walk transition matrix: `(x^2 - 1)^{m-n} det((x^2 + 1) I - 2x T)`.
pub fn konno_sato_charpoly(g: &Graph) -> ComplexPolynomial {
    let n = g.vertex_count();
    let t = linalg::to_complex(&g.transition_matrix());
    let interior = ComplexPolynomial::interpolate_on_unit_circle(2 * n, |x| {
        linalg::determinant(&linalg::shifted(&t, x * x + ONE, -2.0 * x))
    });
    with_even_prefactor(interior, ONE, g.edge_count() as i64 - n as i64)
}

/// The same polynomial through `det((x^2 + 1) D - 2x A) / (d_1 ... d_n)`.
pub fn konno_sato_charpoly_degree_form(g: &Graph) -> ComplexPolynomial {
    let n = g.vertex_count();
    let a = g.adjacency_matrix();
    let interior = ComplexPolynomial::interpolate_on_unit_circle(2 * n, |x| {
        let m = CMat::from_fn(n, n, |u, v| {
            let diag = if u == v { (x * x + ONE) * g.degree(u) as f64 } else { ZERO };
            diag - 2.0 * x * a[(u, v)]
        });
        linalg::determinant(&m)
    });
    let degree_product: f64 = g.degrees().iter().map(|&d| d as f64).product();
    let interior = interior.scale(linalg::real(1.0 / degree_product));
    with_even_prefactor(interior, ONE, g.edge_count() as i64 - n as i64)
}

/// The two roots of `x^2 - c mu x - ab = 0`.
pub fn quadratic_roots(mu: f64, p: &CoinParams) -> [Complex64; 2] {
    let cm = p.c() * mu;
    let mut disc2 = cm * cm + 4.0 * p.a * p.b;
    // mu = ±1 gives a double root whenever a b = -|c|^2/4 (the Grover case);
    // rounding in mu would otherwise split it by about sqrt(eps).
    if disc2.norm() <= 1e-13 * (cm.norm_sqr() + 4.0 * (p.a * p.b).norm()) {
        disc2 = ZERO;
    }
    let disc = disc2.sqrt();
    [(cm + disc) / 2.0, (cm - disc) / 2.0]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumResult {
    #[serde(with = "crate::json::complex_vec")]
    pub eigenvalues: Vec<Complex64>,
    /// Eigenvalues at `+b` beyond those produced by the quadratic factor.
    pub multiplicity_of_plus_b: i64,
    /// Eigenvalues at `-b` beyond those produced by the quadratic factor.
    pub multiplicity_of_minus_b: i64,
}

fn count_near(xs: &[Complex64], z: Complex64) -> i64 {
    xs.iter().filter(|x| (*x - z).norm() <= CLUSTER_TOLERANCE).count() as i64
}

/// Eigenvalues of `d S d*`, which is Hermitian.
pub fn vertex_spectrum(ops: &OperatorBundle) -> Result<Vec<f64>> {
    linalg::hermitian_eigenvalues(&ops.dsd)
}

/// Spectrum of `U`, either by eigensolving it or by mapping the spectrum of
/// `d S d*`. The `±b` multiplicities are counted the same way for both
/// methods: eigenvalues at `±b` minus the quadratic roots that land there.
pub fn qw_spectrum(g: &Graph, p: &CoinParams, method: SpectrumMethod) -> Result<SpectrumResult> {
    let ops = OperatorBundle::new(g, p);
    let mus = vertex_spectrum(&ops)?;
    let quadratic: Vec<Complex64> = mus.iter().flat_map(|&mu| quadratic_roots(mu, p)).collect();
    let mut eigenvalues = match method {
        SpectrumMethod::Direct => linalg::eigenvalues(&ops.evolution)?,
        SpectrumMethod::Mapped => {
            let excess = g.edge_count() as i64 - g.vertex_count() as i64;
            append_pm(&quadratic, p.b, excess)
        }
    };
    linalg::sort_multiset(&mut eigenvalues, CLUSTER_TOLERANCE);
    Ok(SpectrumResult {
        multiplicity_of_plus_b: count_near(&eigenvalues, p.b) - count_near(&quadratic, p.b),
        multiplicity_of_minus_b: count_near(&eigenvalues, -p.b) - count_near(&quadratic, -p.b),
        eigenvalues,
    })
}

/// Appends `+b` and `-b` each `excess` times, or removes them when `excess`
/// is negative.
fn append_pm(xs: &[Complex64], b: Complex64, excess: i64) -> Vec<Complex64> {
    let k = excess.unsigned_abs() as usize;
    let block: Vec<Complex64> = std::iter::repeat_n(b, k).chain(std::iter::repeat_n(-b, k)).collect();
    if excess >= 0 {
        xs.iter().copied().chain(block).collect()
    } else {
        linalg::multiset_remove(xs, &block, CLUSTER_TOLERANCE).0
    }
}

/// Grover spectrum from the random-walk transition matrix alone:
/// `lambda_T ± i sqrt(1 - lambda_T^2)` for each eigenvalue of `T`, plus `±1`
/// each `m - n` times.
pub fn grover_spectrum_from_transition(g: &Graph) -> Result<Vec<Complex64>> {
    let t_spec = linalg::eigenvalues(&linalg::to_complex(&g.transition_matrix()))?;
    let mapped: Vec<Complex64> = t_spec
        .iter()
        .flat_map(|lt| {
            let x = lt.re;
            // lambda_T = ±1 is a double root; do not let rounding split it
            let s = 1.0 - x * x;
            let y = if s <= 1e-13 { 0.0 } else { s.sqrt() };
            [linalg::c(x, y), linalg::c(x, -y)]
        })
        .collect();
    let excess = g.edge_count() as i64 - g.vertex_count() as i64;
    Ok(append_pm(&mapped, -ONE, excess))
}

/// `tr(U^m) / m` for `m = 1..=L`: the coefficients of `log zeta(G, u)`.
pub fn trace_log_series(g: &Graph, p: &CoinParams, max_degree: usize) -> Vec<Complex64> {
    let u = operators::evolution_matrix(g, p);
    let mut power = u.clone();
    let mut out = Vec::with_capacity(max_degree);
    for m in 1..=max_degree {
        if m > 1 {
            power = &power * &u;
        }
        out.push(linalg::trace(&power) / m as f64);
    }
    out
}

/// Coefficients of `log zeta(G, u)` for `u^1 .. u^L`, expanded from the
/// reduced characteristic polynomial.
pub fn qw_log_series(g: &Graph, p: &CoinParams, max_degree: usize) -> Result<Vec<Complex64>> {
    let charpoly = qw_charpoly(g, p, CharpolyMethod::Reduced)?;
    let reciprocal = charpoly.reversed(g.arc_count());
    Ok(poly::log_series(&reciprocal, max_degree).into_iter().skip(1).map(|q| -q).collect())
}
