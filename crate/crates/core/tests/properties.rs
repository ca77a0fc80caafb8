//! Property tests over random graphs and coins.

use num_complex::Complex64;
use proptest::prelude::*;
use qwzeta::generators::random_connected;
use qwzeta::linalg::{adjoint, identity, max_abs_diff, ONE};
use qwzeta::operators::{boundary_map, coin_matrix, shift_matrix};
use qwzeta::periodic::{det_gamma, quotient_log_det, VoltageGraph};
use qwzeta::zeta::{self, reduced_determinant};
use qwzeta::{linalg, reduced_cycle_counts, CoinParams, FiberKernel, Graph, OperatorBundle};

fn graph() -> impl Strategy<Value = Graph> {
    (3usize..9, 0usize..8, any::<u64>()).prop_map(|(n, extra, seed)| {
        let extra = extra.min(n * (n - 1) / 2 - (n - 1));
        random_connected(n, extra, seed)
    })
}

fn complex(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..radius, 0.0..std::f64::consts::TAU).prop_map(|(r, a)| Complex64::from_polar(r, a))
}

fn coin() -> impl Strategy<Value = CoinParams> {
    (complex(2.0), complex(2.0)).prop_map(|(a, b)| CoinParams::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduced_determinant_matches_direct(g in graph(), p in coin(), u in complex(0.3)) {
        let ops = OperatorBundle::new(&g, &p);
        let direct = linalg::determinant(&linalg::shifted(&ops.evolution, ONE, -u));
        let reduced = reduced_determinant(&ops, &g, u);
        prop_assert!((direct - reduced).norm() <= 1e-10 * (1.0 + direct.norm()));
    }

    #[test]
    fn boundary_is_an_isometry_and_shift_an_involution(g in graph()) {
        let d = boundary_map(&g);
        let s = shift_matrix(&g);
        prop_assert!(max_abs_diff(&(&d * adjoint(&d)), &identity(g.vertex_count())) <= 1e-14);
        prop_assert!(max_abs_diff(&(&s * &s), &identity(g.arc_count())) == 0.0);
    }

    #[test]
    fn coin_is_a_plus_b_decomposition(g in graph(), p in coin()) {
        // (C - a)(C - b) = 0
        let c = coin_matrix(&g, &p);
        let r = g.arc_count();
        let product = linalg::shifted(&c, -p.a, ONE) * linalg::shifted(&c, -p.b, ONE);
        prop_assert!(max_abs_diff(&product, &faer::Mat::zeros(r, r)) <= 1e-12);
    }

    #[test]
    fn cycle_counts_ignore_vertex_labels(g in graph(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = g.relabeled(&perm).unwrap();
        prop_assert_eq!(reduced_cycle_counts(&g, 10).unwrap(), reduced_cycle_counts(&h, 10).unwrap());
    }

    #[test]
    fn reduced_cycle_counts_are_even_multiples(g in graph()) {
        // each reduced cycle is counted with both orientations
        let counts = reduced_cycle_counts(&g, 9).unwrap();
        for m in 1..=9 {
            prop_assert_eq!(counts.get(m) % 2, 0);
        }
        prop_assert_eq!(counts.get(1), 0);
        prop_assert_eq!(counts.get(2), 0);
    }

    #[test]
    fn unitary_coins_give_unit_spectra(g in graph(), alpha in 0.0..6.3f64, beta in 0.0..6.3f64) {
        let p = CoinParams::unimodular(alpha, beta);
        let s = zeta::qw_spectrum(&g, &p, qwzeta::SpectrumMethod::Direct).unwrap();
        prop_assert!(s.eigenvalues.iter().all(|z| (z.norm() - 1.0).abs() <= 1e-10));
    }

    #[test]
    fn graph_json_round_trips(g in graph()) {
        prop_assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sampling_identity_on_random_lattices(
        z1 in -2i64..=2, z2 in -2i64..=2, l in 3usize..6, u in complex(0.15), t in 0.0..0.1f64,
    ) {
        // a two-vertex Z^1 lattice: a fixed edge, a loop of voltage 1, a second edge with voltage z1
        // and a loop of voltage z2 (skipped when zero)
        let mut edges = vec![(0, 1, vec![0]), (0, 0, vec![1]), (0, 1, vec![z1])];
        if z2 != 0 {
            edges.push((1, 1, vec![z2]));
        }
        let vg = match VoltageGraph::new(1, 2, &edges) {
            Ok(vg) => vg,
            Err(_) => return Ok(()),
        };
        for k in [FiberKernel::Ihara { t: Complex64::new(t, 0.0) }, FiberKernel::QwArc { u, coin: CoinParams::grover() }] {
            let cover = match quotient_log_det(&vg, &k, l) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let torus = det_gamma(&vg, &k, l).unwrap().log_value;
            prop_assert!((torus - cover).norm() <= 1e-10);
        }
    }
}
