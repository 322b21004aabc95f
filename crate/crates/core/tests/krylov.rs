mod oracle;

use ndarray::Array2;
use num_complex::Complex64;
use oracle::*;
use proptest::prelude::*;
use qkud_core::krylov::Termination;
use qkud_core::{
    assemble_matrices, build_hubbard_chain, build_tfim, general_unitary_decomposition_apply, hermitian_eigendecompose,
    parse_pauli_file, qkud_step, qrte_step, run, run_with_cache, solve_gevp, KrylovConfig, KrylovConfig64, PauliSum64,
    SpectralCache64, Statevector, Statevector64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cache_of(h: &PauliSum64) -> SpectralCache64 {
    hermitian_eigendecompose(&h.to_dense().unwrap()).unwrap()
}

fn unit_state(seed: u64, dim: usize) -> Statevector64 {
    Statevector64::new(random_vector(&mut ChaCha8Rng::seed_from_u64(seed), dim))
        .unwrap()
        .normalized()
        .unwrap()
}

fn random_model(seed: u64, n: usize, terms: usize) -> (String, PauliSum64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let text = random_pauli_text(&mut rng, n, terms.min(4usize.pow(n as u32)));
    let h = parse_pauli_file(&text).unwrap();
    (text, h)
}

fn dense_vec(v: &Statevector64) -> Vec<Complex64> {
    v.as_slice().to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // absolute 1e-10 for outputs of unit size, relative beyond that
    #[test]
    fn qkud_steps_equal_sine_power(seed in any::<u64>(), n in 1usize..=8, terms in 1usize..=6) {
        let (_, h) = random_model(seed, n, terms);
        let cache = cache_of(&h);
        let psi0 = unit_state(seed ^ 1, h.dim());
        for eps in [1e-6, 1e-2, 0.1, 0.5] {
            let mut v = psi0.clone();
            for k in 1..=8 {
                v = qkud_step(&v, eps, &cache).unwrap();
                let want = cache.apply_func(|x| ((eps * x).sin() / eps).powi(k), &psi0).unwrap();
                let err = v.distance(&want).unwrap();
                prop_assert!(err <= 1e-10 * want.norm().max(1.0), "eps={} k={} err={:e}", eps, k, err);
            }
        }
    }

    #[test]
    fn qkud_step_matches_taylor_oracle(seed in any::<u64>(), eps in prop::sample::select(vec![1e-6, 0.1, 0.5])) {
        let (text, h) = random_model(seed, 3, 6);
        let cache = cache_of(&h);
        let psi0 = unit_state(seed ^ 2, h.dim());
        let want = matvec(&sin_over_eps(&pauli_text_dense(&text), eps), psi0.as_slice());
        let got = qkud_step(&psi0, eps, &cache).unwrap();
        prop_assert!(diff_norm(got.as_slice(), &want) <= 1e-12 * norm(&want).max(1.0));
    }

    #[test]
    fn general_decomposition_is_second_order(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&mut rng, 8);
        let arr = Array2::from_shape_fn((8, 8), |(i, j)| a[i][j]);
        let v = random_vector(&mut rng, 8);
        let want = matvec(&a, &v);
        let sv = Statevector64::new(v).unwrap();
        let xs = logspace(1e-3, 1e-1, 8);
        let errs: Vec<f64> = xs
            .iter()
            .map(|&e| diff_norm(general_unitary_decomposition_apply(&arr, e, &sv).unwrap().as_slice(), &want))
            .collect();
        let slope = loglog_slope(&xs, &errs);
        prop_assert!((slope - 2.0).abs() <= 0.1, "slope {}", slope);
    }

    #[test]
    fn ritz_values_are_scale_invariant(seed in any::<u64>()) {
        let h = build_tfim::<f64>(4, 1.0, 1.0).unwrap();
        let cache = cache_of(&h);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut vs = vec![unit_state(seed, 16)];
        for _ in 0..3 {
            let next = qkud_step(vs.last().unwrap(), 0.5, &cache).unwrap();
            vs.push(next.normalized().unwrap());
        }
        let (m, s) = assemble_matrices(&vs, &h).unwrap();
        let base = solve_gevp(&m, &s, 1e-12).unwrap();
        let scaled: Vec<Statevector64> = vs.iter().map(|v| v.scaled_real(rng.random_range(0.1..10.0))).collect();
        let (m2, s2) = assemble_matrices(&scaled, &h).unwrap();
        let other = solve_gevp(&m2, &s2, 1e-12).unwrap();
        prop_assert_eq!(base.kept_dim, other.kept_dim);
        for (a, b) in base.eigvals.iter().zip(&other.eigvals) {
            prop_assert!((a - b).abs() <= 1e-10, "{} vs {}", a, b);
        }
    }

    #[test]
    fn ritz_bound_holds_every_iteration(seed in any::<u64>(), qrte in any::<bool>(), param in 0.05f64..1.0) {
        let (_, h) = random_model(seed, 4, 8);
        let cache = cache_of(&h);
        let cfg = if qrte { KrylovConfig64::qrte(param) } else { KrylovConfig64::qkud(param) }.with_max_iter(20);
        let (rec, _) = run_with_cache(&cfg, &h, &cache, &unit_state(seed ^ 3, 16)).unwrap();
        // M and S are rounded elementwise; the retained block amplifies that
        // by its condition number
        let h_norm = cache.eigvals().iter().fold(0.0f64, |a, l| a.max(l.abs()));
        for (k, row) in rec.rows.iter().enumerate() {
            prop_assert_eq!(row.iter, k);
            prop_assert!(row.kept_dim <= row.iter + 1);
            let slack = 1e-9f64.max(8.0 * f64::EPSILON * h_norm * row.cond_s);
            prop_assert!(row.e_min >= cache.ground_energy() - slack, "iter {} gap {:e} cond {:e}", k, row.e_min - cache.ground_energy(), row.cond_s);
        }
    }
}

fn slope_pair(h: &PauliSum64, psi0: &Statevector64) -> (f64, f64) {
    let cache = cache_of(h);
    let hpsi = h.apply(psi0).unwrap();
    let xs = logspace(1e-3, 1e-1, 8);
    let q: Vec<f64> = xs
        .iter()
        .map(|&e| qkud_step(psi0, e, &cache).unwrap().distance(&hpsi).unwrap())
        .collect();
    let r: Vec<f64> = xs
        .iter()
        .map(|&dt| {
            let diff = qrte_step(psi0, dt, &cache).unwrap().sub(psi0).unwrap();
            diff.scaled(Complex64::new(0.0, 1.0 / dt)).distance(&hpsi).unwrap()
        })
        .collect();
    (loglog_slope(&xs, &q), loglog_slope(&xs, &r))
}

#[test]
fn first_vector_error_slopes() {
    let cases = [
        (build_tfim::<f64>(4, 1.0, 1.0).unwrap(), Statevector64::basis(16, 0).unwrap()),
        (build_tfim::<f64>(5, 0.7, 1.3).unwrap(), unit_state(5, 32)),
        (build_hubbard_chain::<f64>(2, 1.0, 4.0).unwrap(), Statevector64::basis(16, 9).unwrap()),
    ];
    for (h, psi0) in &cases {
        let (q, r) = slope_pair(h, psi0);
        assert!((q - 2.0).abs() <= 0.1, "qkud slope {q}");
        assert!((r - 1.0).abs() <= 0.1, "qrte slope {r}");
    }
}

#[test]
fn qrte_overlap_is_toeplitz() {
    let h = build_tfim::<f64>(4, 1.0, 1.0).unwrap();
    for dt in [0.1, 0.5, 1.0] {
        let cfg = KrylovConfig64::qrte(dt).with_max_iter(10).with_stop_delta(0.0);
        let (_, sub) = run(&cfg, &h, &Statevector64::basis(16, 0).unwrap()).unwrap();
        let s = sub.s();
        let n = s.nrows();
        for j in 0..n - 1 {
            for k in 0..n - 1 {
                assert!((s[[j + 1, k + 1]] - s[[j, k]]).norm() <= 1e-12, "dt={dt} ({j},{k})");
            }
        }
    }
}

#[test]
fn zero_matrix_decomposes_to_zero() {
    let a = Array2::<Complex64>::zeros((4, 4));
    let v = unit_state(1, 4);
    let out = general_unitary_decomposition_apply(&a, 0.1, &v).unwrap();
    assert!(out.norm() < 1e-15);
}

#[test]
fn exactness_at_small_epsilon_on_small_chains() {
    for (h, psi0) in [
        (build_tfim::<f64>(4, 1.0, 1.0).unwrap(), 0usize),
        // one electron: the Fock-space ground state of the two-site chain
        (build_hubbard_chain::<f64>(2, 1.0, 4.0).unwrap(), 8),
    ] {
        let cache = cache_of(&h);
        let cfg = KrylovConfig64::qkud(1e-6);
        let (rec, _) = run_with_cache(&cfg, &h, &cache, &Statevector64::basis(h.dim(), psi0).unwrap()).unwrap();
        assert!(rec.final_row().unwrap().e_exact_gap.unwrap().abs() < 1e-7, "{rec:?}");
        assert_ne!(rec.status, Some(Termination::MaxIterReached));
    }
}

#[test]
fn raw_vectors_follow_the_sine_power() {
    let h = build_tfim::<f64>(3, 1.0, 0.7).unwrap();
    let cache = cache_of(&h);
    let psi0 = Statevector64::basis(8, 0).unwrap();
    let cfg = KrylovConfig64::qkud(0.3).with_max_iter(4).with_stop_delta(0.0).with_normalization(false);
    let (_, sub) = run_with_cache(&cfg, &h, &cache, &psi0).unwrap();
    let op = sin_over_eps(&tfim_dense(3, 1.0, 0.7), 0.3);
    let mut want = dense_vec(&psi0);
    for v in sub.vectors() {
        assert!(diff_norm(v.as_slice(), &want) < 1e-12 * norm(&want).max(1.0));
        want = matvec(&op, &want);
    }
}

#[test]
fn single_precision_smoke() {
    let h = build_tfim::<f32>(3, 1.0, 1.0).unwrap();
    let psi0 = Statevector::<f32>::basis(8, 0).unwrap();
    let cfg = KrylovConfig::<f32>::qkud(0.3).with_stop_delta(1e-5).with_gevp_threshold(1e-5);
    let (rec, _) = run(&cfg, &h, &psi0).unwrap();
    let exact = hermitian_eigenvalues(&tfim_dense(3, 1.0, 1.0))[0];
    assert!((rec.final_energy().unwrap() as f64 - exact).abs() < 1e-3);
}
