//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use qwzeta::crosscheck::{coin_family, non_unitary_coins};
use qwzeta::generators::{corpus, grid2d, honeycomb, line};
use qwzeta::linalg::{self, adjoint, c, identity, max_abs_diff, multiset_distance, real, ONE};
use qwzeta::operators::{evolution_matrix, grover_matrix, OperatorBundle};
use qwzeta::periodic::{
    bloch_fiber, det_gamma, det_gamma_of, lm_residuals, periodic_ihara_zeta, periodic_qw_zeta, quotient_log_det,
    QuadratureOptions, VoltageGraph,
};
use qwzeta::series::bass_log_series;
use qwzeta::zeta::{self, CLUSTER_TOLERANCE};
use qwzeta::{reduced_cycle_counts, CharpolyMethod, CoinParams, FiberKernel, Graph, SpectrumMethod};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Outcome;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn worst(a: (f64, String), residual: f64, case: impl FnOnce() -> String) -> (f64, String) {
    let residual = if residual.is_nan() { f64::INFINITY } else { residual };
    if residual > a.0 {
        (residual, case())
    } else {
        a
    }
}

fn start() -> (f64, String) {
    (0.0, String::new())
}

fn random_u(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI))
}

fn excess(g: &Graph) -> i64 {
    g.edge_count() as i64 - g.vertex_count() as i64
}

/// Bass log series against reduced cycle counts on the corpus.
fn euler_series() -> Outcome {
    let clock = Instant::now();
    let mut w = start();
    for (name, g) in corpus() {
        let counts = reduced_cycle_counts(&g, 12).expect("counts fit in u64");
        for (k, q) in bass_log_series(&g, 12).iter().enumerate() {
            let m = k + 1;
            let diff = (q - BigRational::new(counts.get(m).into(), m.into())).abs();
            w = worst(w, diff.to_f64().unwrap_or(f64::INFINITY), || format!("{name} degree {m}"));
        }
        // the floating determinant against the truncated series
        let d_max = *g.degrees().iter().max().unwrap() as f64;
        let t = real(0.05 / d_max);
        let log_z = zeta::ihara_zeta_bass(&g, t).unwrap().ln();
        let series: Complex64 = (1..=12).map(|m| real(counts.get(m) as f64 / m as f64) * t.powu(m as u32)).sum();
        w = worst(w, (log_z - series).norm(), || format!("{name} log Z({})", t.re));
    }
    let secs = clock.elapsed().as_secs_f64();
    outcome(w.0 <= 1e-9 && secs <= 10.0, format!("max error {:.2e} ({}), {secs:.2} s", w.0, w.1))
}

fn konno_sato() -> Outcome {
    let mut w = start();
    for (name, g) in corpus() {
        let direct = zeta::qw_charpoly(&g, &CoinParams::grover(), CharpolyMethod::Direct).unwrap();
        let ks = zeta::konno_sato_charpoly(&g);
        let degree_form = zeta::konno_sato_charpoly_degree_form(&g);
        w = worst(w, ks.max_coeff_diff(&direct), || format!("{name} transition form"));
        w = worst(w, degree_form.max_coeff_diff(&direct), || format!("{name} degree-product form"));
    }
    outcome(w.0 <= 1e-10, format!("max coefficient error {:.2e} ({})", w.0, w.1))
}

fn reduced_determinant() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut w = start();
    let mut cases = 0;
    for (name, g) in corpus() {
        let mut coins: Vec<CoinParams> = (0..5)
            .map(|_| CoinParams::unimodular(rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI)))
            .collect();
        coins.extend(non_unitary_coins());
        let us: Vec<Complex64> = (0..20).map(|_| random_u(&mut rng, 0.3)).collect();
        for p in &coins {
            let ops = OperatorBundle::new(&g, p);
            for &u in &us {
                let direct = linalg::determinant(&linalg::shifted(&ops.evolution, ONE, -u));
                let reduced = zeta::reduced_determinant(&ops, &g, u);
                w = worst(w, (direct - reduced).norm() / (1.0 + direct.norm()), || format!("{name} a={} b={} u={u}", p.a, p.b));
                cases += 1;
            }
        }
    }
    outcome(w.0 <= 1e-10, format!("{cases} cases, max scaled residual {:.2e} ({})", w.0, w.1))
}

fn spectra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut w = start();
    let mut multiplicity_errors = Vec::new();
    for (name, g) in corpus() {
        let coins: Vec<CoinParams> = coin_family(&mut rng, 5).into_iter().filter(CoinParams::is_unitary).collect();
        for p in &coins {
            let d = zeta::qw_spectrum(&g, p, SpectrumMethod::Direct).unwrap();
            let m = zeta::qw_spectrum(&g, p, SpectrumMethod::Mapped).unwrap();
            w = worst(w, multiset_distance(&d.eigenvalues, &m.eigenvalues, CLUSTER_TOLERANCE), || format!("{name} a={} b={}", p.a, p.b));
            for s in [&d, &m] {
                if s.multiplicity_of_plus_b != excess(&g) || s.multiplicity_of_minus_b != excess(&g) {
                    multiplicity_errors.push(format!("{name} a={} b={}", p.a, p.b));
                }
            }
        }
        let grover = zeta::qw_spectrum(&g, &CoinParams::grover(), SpectrumMethod::Direct).unwrap();
        let from_t = zeta::grover_spectrum_from_transition(&g).unwrap();
        w = worst(w, multiset_distance(&from_t, &grover.eigenvalues, CLUSTER_TOLERANCE), || format!("{name} transition map"));
        // the T-map contributes exactly one root at 1 per eigenvalue 1 of T; the rest of +-1 is the 2(m-n) block
        let near = |xs: &[Complex64], z: Complex64| xs.iter().filter(|x| (*x - z).norm() <= CLUSTER_TOLERANCE).count() as i64;
        let t_part: Vec<Complex64> = {
            let t = linalg::eigenvalues(&linalg::to_complex(&g.transition_matrix())).unwrap();
            t.iter()
                .flat_map(|l| {
                    let s = 1.0 - l.re * l.re;
                    let y = if s <= 1e-13 { 0.0 } else { s.sqrt() };
                    [c(l.re, y), c(l.re, -y)]
                })
                .collect()
        };
        let block = (near(&grover.eigenvalues, ONE) - near(&t_part, ONE)) + (near(&grover.eigenvalues, -ONE) - near(&t_part, -ONE));
        if block != 2 * excess(&g) {
            multiplicity_errors.push(format!("{name} Grover +-1 block {block} != 2(m-n)"));
        }
    }
    outcome(
        w.0 <= 1e-8 && multiplicity_errors.is_empty(),
        format!("max multiset distance {:.2e} ({}), multiplicity mismatches {:?}", w.0, w.1, multiplicity_errors),
    )
}

fn grover_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut entry = start();
    let mut unitary = start();
    for (name, g) in corpus() {
        entry = worst(entry, max_abs_diff(&evolution_matrix(&g, &CoinParams::grover()), &grover_matrix(&g)), || name.clone());
        for p in coin_family(&mut rng, 5).iter().filter(|p| p.is_unitary()) {
            let u = evolution_matrix(&g, p);
            let r = max_abs_diff(&(adjoint(&u) * &u), &identity(g.arc_count()));
            unitary = worst(unitary, r, || format!("{name} a={} b={}", p.a, p.b));
        }
    }
    outcome(
        entry.0 <= 1e-15 && unitary.0 <= 1e-12,
        format!("|U - Grover| {:.2e}, |U*U - I| {:.2e} ({})", entry.0, unitary.0, unitary.1),
    )
}

fn periodic_line() -> Outcome {
    let mut w = start();
    for t in [0.1, 0.2, 0.3] {
        let z = periodic_ihara_zeta(&line(), real(t), 256).unwrap();
        w = worst(w, (z - ONE).norm(), || format!("Ihara t={t}"));
    }
    let z = periodic_qw_zeta(&line(), &CoinParams::grover(), real(0.2), 256).unwrap();
    w = worst(w, (z - ONE).norm(), || "Grover u=0.2".into());
    outcome(w.0 <= 1e-12, format!("max |zeta - 1| {:.2e} ({})", w.0, w.1))
}

fn sampling_identity() -> Outcome {
    let clock = Instant::now();
    let coin = CoinParams::unimodular(0.5, 2.0);
    let u = c(0.2, 0.1);
    let kernels = [
        ("ihara", FiberKernel::Ihara { t: real(0.1) }),
        ("qw-interior", FiberKernel::QwInterior { u, coin }),
        ("qw-arc", FiberKernel::QwArc { u, coin }),
    ];
    let lattices: [(&str, VoltageGraph); 2] = [("line", line()), ("Z2", grid2d())];
    let mut sampling = start();
    for (vname, vg) in &lattices {
        for l in [3, 4, 5, 8] {
            for (kname, k) in &kernels {
                let torus = det_gamma(vg, k, l).unwrap().log_value;
                let cover = quotient_log_det(vg, k, l).unwrap();
                sampling = worst(sampling, (torus - cover).norm(), || format!("{vname} L={l} {kname}"));
            }
        }
    }
    let mut convergence = start();
    for (vname, vg) in &lattices {
        let mut ks = vec![("ihara t=0.1".to_string(), FiberKernel::Ihara { t: real(0.1) })];
        for uu in [real(0.3), c(0.0, 0.3), c(0.2, -0.2)] {
            for p in [CoinParams::grover(), coin] {
                ks.push((format!("qw u={uu} a={} b={}", p.a, p.b), FiberKernel::QwInterior { u: uu, coin: p }));
            }
        }
        for (kname, k) in &ks {
            let coarse = det_gamma(vg, k, 64).unwrap().value;
            let fine = det_gamma(vg, k, 128).unwrap().value;
            convergence = worst(convergence, (coarse - fine).norm(), || format!("{vname} {kname}"));
        }
    }
    let secs = clock.elapsed().as_secs_f64();
    outcome(
        sampling.0 <= 1e-10 && convergence.0 <= 1e-10 && secs <= 30.0,
        format!(
            "sampling {:.2e} ({}), |val(64) - val(128)| {:.2e} ({}), {secs:.2} s",
            sampling.0, sampling.1, convergence.0, convergence.1
        ),
    )
}

fn fiber_propositions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let opts = QuadratureOptions::new(32);
    let mut homogeneity = start();
    let mut multiplicativity = start();
    let mut lm = start();
    for (vname, vg) in [("line", line()), ("Z2", grid2d()), ("honeycomb", honeycomb())] {
        let n0 = vg.vertex_count() as i32;
        let dim = vg.dim();
        let base = FiberKernel::QwInterior { u: c(0.1, 0.05), coin: CoinParams::unimodular(0.3, 1.1) };
        let det_f = det_gamma_of(dim, &opts, |theta| base.fiber_matrix(&vg, theta)).unwrap().value;
        for z in [c(1.05, 0.02), c(0.97, -0.03), c(1.0, 0.1)] {
            let det_zf = det_gamma_of(dim, &opts, |theta| linalg::scale(&base.fiber_matrix(&vg, theta), z)).unwrap().value;
            let expected = z.powi(n0) * det_f;
            homogeneity = worst(homogeneity, (det_zf - expected).norm() / expected.norm(), || format!("{vname} z={z}"));
        }
        let s = 0.3 / (*vg.degrees().iter().max().unwrap() as f64 + 1.0);
        for v in [c(s, 0.0), c(0.5 * s, 0.5 * s), c(-0.3 * s, 0.6 * s)] {
            let first = |theta: &[f64]| linalg::shifted(&bloch_fiber(&vg, theta).adjacency, ONE, v);
            let second = |theta: &[f64]| linalg::shifted(&bloch_fiber(&vg, theta).dsd, ONE, -v);
            let product = det_gamma_of(dim, &opts, |theta| &first(theta) * &second(theta)).unwrap().value;
            let separate = det_gamma_of(dim, &opts, first).unwrap().value * det_gamma_of(dim, &opts, second).unwrap().value;
            multiplicativity = worst(multiplicativity, (product - separate).norm() / separate.norm(), || format!("{vname} u={v}"));
        }
        for _ in 0..10 {
            let theta: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
            let u = random_u(&mut rng, 0.3);
            for p in [CoinParams::grover(), CoinParams::unimodular(2.0, -0.4)].iter().chain(&non_unitary_coins()) {
                let r = lm_residuals(&vg, p, u, &theta).max();
                lm = worst(lm, r, || format!("{vname} theta={theta:?} u={u} a={} b={}", p.a, p.b));
            }
        }
    }
    outcome(
        homogeneity.0 <= 1e-10 && multiplicativity.0 <= 1e-10 && lm.0 <= 1e-10,
        format!(
            "homogeneity {:.2e}, multiplicativity {:.2e}, L/M residual {:.2e} ({})",
            homogeneity.0, multiplicativity.0, lm.0, lm.1
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 8] = [
        ("1 Bass log series equals counted reduced cycles", euler_series),
        ("2 Grover characteristic polynomial from the transition matrix", konno_sato),
        ("3 arc-space determinant equals the vertex-space reduction", reduced_determinant),
        ("4 direct and mapped spectra, +-b multiplicities", spectra),
        ("5 Grover evolution and unitarity", grover_consistency),
        ("6 periodic line zetas equal 1", periodic_line),
        ("7 torus sampling reproduces finite covers", sampling_identity),
        ("8 fiber-level determinant properties and L/M factorization", fiber_propositions),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let result = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let status = if result.passed { "PASS" } else { "FAIL" };
        if !result.passed {
            failed += 1;
        }
        println!("{status} criterion {name}: {}", result.detail);
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
