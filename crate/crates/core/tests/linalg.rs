mod oracle;

use ndarray::Array2;
use num_complex::Complex64;
use oracle::*;
use proptest::prelude::*;
use qkud_core::{
    build_hubbard_chain, build_tfim, hermitian_eigendecompose, parse_pauli_file, HermitianMatrix64, PauliSum64,
    SpectralCache64, Statevector64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_model(seed: u64, n: usize) -> PauliSum64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    parse_pauli_file(&random_pauli_text(&mut rng, n, 10.min(4usize.pow(n as u32)))).unwrap()
}

fn cache_of(h: &PauliSum64) -> SpectralCache64 {
    hermitian_eigendecompose(&h.to_dense().unwrap()).unwrap()
}

fn state(seed: u64, dim: usize) -> Statevector64 {
    Statevector64::new(random_vector(&mut ChaCha8Rng::seed_from_u64(seed), dim)).unwrap()
}

fn to_dense(a: &Array2<Complex64>) -> Dense {
    a.rows().into_iter().map(|r| r.to_vec()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn evolve_group_and_unitarity(seed in any::<u64>(), n in 1usize..=6, t1 in -3.0f64..3.0, t2 in -3.0f64..3.0) {
        let h = random_model(seed, n);
        let cache = cache_of(&h);
        let v = state(seed ^ 9, h.dim());
        let two = cache.evolve(t1, &cache.evolve(t2, &v).unwrap()).unwrap();
        let one = cache.evolve(t1 + t2, &v).unwrap();
        prop_assert!(two.distance(&one).unwrap() <= 1e-12 * v.norm());
        prop_assert!((cache.evolve(t1, &v).unwrap().norm() - v.norm()).abs() <= 1e-12 * v.norm());
    }

    #[test]
    fn evolve_matches_series_oracle(seed in any::<u64>(), n in 1usize..=4, theta in -2.0f64..2.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let text = random_pauli_text(&mut rng, n, 6.min(4usize.pow(n as u32)));
        let h: PauliSum64 = parse_pauli_file(&text).unwrap();
        let u = expm(&pauli_text_dense(&text), Complex64::new(0.0, -theta));
        let v = state(seed ^ 5, h.dim());
        let want = matvec(&u, v.as_slice());
        let got = cache_of(&h).evolve(theta, &v).unwrap();
        prop_assert!(diff_norm(got.as_slice(), &want) <= 1e-11 * norm(&want));
    }

    #[test]
    fn perturbed_eigenvalues_obey_weyl(seed in any::<u64>(), n in 1usize..=5) {
        let h = random_model(seed, n);
        let a = h.to_dense().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 11);
        let dim = h.dim();
        let mut e = a.entries().clone();
        let mut bump = Array2::<Complex64>::zeros((dim, dim));
        for i in 0..dim {
            for j in i..dim {
                let z = if i == j {
                    Complex64::new(rng.random_range(-1.0..1.0), 0.0)
                } else {
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                };
                bump[[i, j]] = z;
                bump[[j, i]] = z.conj();
            }
        }
        // scale the perturbation to spectral norm <= 1e-13 via its Frobenius norm
        let fro = bump.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        e.zip_mut_with(&bump, |x, y| *x += y * (1e-13 / fro));
        let before = hermitian_eigendecompose(&a).unwrap();
        let after = hermitian_eigendecompose(&HermitianMatrix64::new(e).unwrap()).unwrap();
        for (x, y) in before.eigvals().iter().zip(after.eigvals()) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn eigenvalues_match_jacobi(seed in any::<u64>(), n in 1usize..=4) {
        let h = random_model(seed, n);
        let want = hermitian_eigenvalues(&to_dense(h.to_dense().unwrap().entries()));
        for (a, b) in cache_of(&h).eigvals().iter().zip(&want) {
            prop_assert!((a - b).abs() <= 1e-11 * h.one_norm().max(1.0));
        }
    }
}

#[test]
fn apply_func_identity_matches_apply() {
    let models = [
        build_tfim::<f64>(4, 1.0, 1.0).unwrap(),
        build_tfim::<f64>(8, 1.0, 0.5).unwrap(),
        build_tfim::<f64>(10, 1.0, 1.0).unwrap(),
        build_hubbard_chain::<f64>(3, 1.0, 4.0).unwrap(),
        build_hubbard_chain::<f64>(4, 1.0, 8.0).unwrap(),
        random_model(1, 6),
    ];
    for (k, h) in models.iter().enumerate() {
        let cache = cache_of(h);
        let v = state(k as u64, h.dim());
        let a = cache.apply_func(|x| x, &v).unwrap();
        let b = h.apply(&v).unwrap();
        assert!(a.distance(&b).unwrap() < 1e-11 * v.norm().max(1.0) * h.one_norm().max(1.0), "model {k}");
    }
}

#[test]
fn eigenpairs_have_small_residuals() {
    let h = build_hubbard_chain::<f64>(3, 1.0, 4.0).unwrap();
    let cache = cache_of(&h);
    let vecs = cache.eigvecs();
    for (k, &lam) in cache.eigvals().iter().enumerate() {
        let v = Statevector64::new(vecs.column(k).to_vec()).unwrap();
        let r = h.apply(&v).unwrap().add_scaled(Complex64::new(-lam, 0.0), &v).unwrap();
        assert!(r.norm() < 1e-12 * h.one_norm());
    }
}

#[test]
fn phase_evolution_example() {
    let z: PauliSum64 = parse_pauli_file("1 0 Z").unwrap();
    let cache = cache_of(&z);
    let ket0 = Statevector64::basis(2, 0).unwrap();
    let theta = 0.7;
    let out = cache.evolve(theta, &ket0).unwrap();
    let want = Complex64::new(0.0, -theta).exp();
    assert!((qkud_core::inner(&ket0, &out).unwrap() - want).norm() < 1e-15);
}
