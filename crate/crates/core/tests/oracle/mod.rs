//! Reference implementations used only by tests. Nothing here goes through
//! the crate's Pauli algebra or eigensolver.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;

pub type Dense = Vec<Vec<Complex64>>;

pub fn zeros(n: usize) -> Dense {
    vec![vec![Complex64::new(0.0, 0.0); n]; n]
}

pub fn matvec(a: &Dense, v: &[Complex64]) -> Vec<Complex64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut c = zeros(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn diff_norm(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

pub fn frobenius(a: &Dense) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Cyclic Jacobi eigenvalues of a real symmetric matrix, ascending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let scale: f64 = a.iter().flatten().map(|x| x * x).sum();
        if off <= 1e-30 * scale.max(1e-300) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

/// Eigenvalues of a complex Hermitian matrix through its real 2n x 2n
/// embedding `[[Re, -Im], [Im, Re]]`, whose spectrum is doubled.
pub fn hermitian_eigenvalues(a: &Dense) -> Vec<f64> {
    let n = a.len();
    let mut r = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            r[i][j] = a[i][j].re;
            r[i + n][j + n] = a[i][j].re;
            r[i][j + n] = -a[i][j].im;
            r[i + n][j] = a[i][j].im;
        }
    }
    jacobi_eigenvalues(r).into_iter().step_by(2).collect()
}

fn bit(index: usize, q: usize, n: usize) -> usize {
    (index >> (n - 1 - q)) & 1
}

/// Open-chain `-J sum Z_i Z_{i+1} - h sum X_i`; qubit 0 is the most
/// significant bit of the basis index.
pub fn tfim_dense(n: usize, coupling: f64, field: f64) -> Dense {
    let dim = 1 << n;
    let mut a = zeros(dim);
    for b in 0..dim {
        let z = |q: usize| 1.0 - 2.0 * bit(b, q, n) as f64;
        let diag: f64 = (0..n - 1).map(|i| -coupling * z(i) * z(i + 1)).sum();
        a[b][b] += diag;
        for q in 0..n {
            a[b ^ (1 << (n - 1 - q))][b] += -field;
        }
    }
    a
}

/// `c^dag_p c_q` on occupation-number basis state `b` (mode p occupies bit
/// `n-1-p`), with the sign from anticommuting past lower-indexed modes.
fn hop(b: usize, p: usize, q: usize, n: usize) -> Option<(usize, f64)> {
    if bit(b, q, n) == 0 {
        return None;
    }
    let below = |state: usize, mode: usize| (0..mode).filter(|&k| bit(state, k, n) == 1).count();
    let mut sign = if below(b, q) % 2 == 0 { 1.0 } else { -1.0 };
    let after = b ^ (1 << (n - 1 - q));
    if bit(after, p, n) == 1 {
        return None;
    }
    if below(after, p) % 2 == 1 {
        sign = -sign;
    }
    Some((after ^ (1 << (n - 1 - p)), sign))
}

/// Fock-space Hubbard chain `-t sum (c^dag_i c_j + h.c.) + U sum n_up n_dn`,
/// modes ordered `(site, spin)` with spin up first.
pub fn hubbard_fock(n_sites: usize, hopping: f64, onsite: f64) -> Dense {
    let n = 2 * n_sites;
    let dim = 1 << n;
    let mode = |site: usize, spin: usize| 2 * site + spin;
    let mut a = zeros(dim);
    for b in 0..dim {
        for site in 0..n_sites {
            if bit(b, mode(site, 0), n) == 1 && bit(b, mode(site, 1), n) == 1 {
                a[b][b] += onsite;
            }
        }
        for site in 0..n_sites - 1 {
            for spin in 0..2 {
                let (i, j) = (mode(site, spin), mode(site + 1, spin));
                for (p, q) in [(i, j), (j, i)] {
                    if let Some((to, sign)) = hop(b, p, q, n) {
                        a[to][b] += -hopping * sign;
                    }
                }
            }
        }
    }
    a
}

/// `(n_up, n_down)` of a basis index for a chain with site-major modes.
pub fn particle_sector(b: usize, n_sites: usize) -> (usize, usize) {
    let n = 2 * n_sites;
    let up = (0..n_sites).filter(|&s| bit(b, 2 * s, n) == 1).count();
    let dn = (0..n_sites).filter(|&s| bit(b, 2 * s + 1, n) == 1).count();
    (up, dn)
}

pub fn restrict(a: &Dense, basis: &[usize]) -> Dense {
    basis
        .iter()
        .map(|&i| basis.iter().map(|&j| a[i][j]).collect())
        .collect()
}

/// `sin(eps A)/eps` for Hermitian `A` by its Taylor series
/// `sum_k (-1)^k eps^{2k} A^{2k+1} / (2k+1)!`.
pub fn sin_over_eps(a: &Dense, eps: f64) -> Dense {
    let n = a.len();
    let a2 = matmul(a, a);
    let mut term = a.clone();
    let mut sum = a.clone();
    for k in 1..200 {
        let f = -eps * eps / ((2 * k) as f64 * (2 * k + 1) as f64);
        term = matmul(&term, &a2);
        for row in term.iter_mut() {
            for z in row.iter_mut() {
                *z *= f;
            }
        }
        let mut biggest: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                sum[i][j] += term[i][j];
                biggest = biggest.max(term[i][j].norm());
            }
        }
        if biggest < 1e-18 * frobenius(&sum).max(1.0) && k > 3 {
            break;
        }
    }
    sum
}

/// `exp(theta B)` for any square `B` by scaling and squaring of the Taylor
/// series.
pub fn expm(b: &Dense, theta: Complex64) -> Dense {
    let n = b.len();
    let nrm = frobenius(b) * theta.norm();
    let squarings = if nrm > 0.5 { (nrm / 0.5).log2().ceil() as u32 } else { 0 };
    let scale = theta / 2f64.powi(squarings as i32);
    let x: Dense = b.iter().map(|r| r.iter().map(|z| z * scale).collect()).collect();
    let mut result = zeros(n);
    for (i, row) in result.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    let mut term = result.clone();
    for k in 1..40 {
        term = matmul(&term, &x);
        for row in term.iter_mut() {
            for z in row.iter_mut() {
                *z /= k as f64;
            }
        }
        for i in 0..n {
            for j in 0..n {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

pub fn random_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    (0..dim)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, dim: usize) -> Dense {
    (0..dim).map(|_| random_vector(rng, dim)).collect()
}

/// Random Hermitian Pauli-sum text: `n_terms` distinct words on `n_qubits`
/// with real coefficients in [-1, 1].
pub fn random_pauli_text<R: Rng>(rng: &mut R, n_qubits: usize, n_terms: usize) -> String {
    let mut words = std::collections::BTreeSet::new();
    while words.len() < n_terms {
        let w: String = (0..n_qubits)
            .map(|_| ['I', 'X', 'Y', 'Z'][rng.random_range(0..4)])
            .collect();
        words.insert(w);
    }
    words
        .into_iter()
        .map(|w| format!("{} 0 {w}\n", rng.random_range(-1.0..1.0)))
        .collect()
}

/// Dense matrix of a Pauli-sum text, built from single-qubit matrices and
/// Kronecker products.
pub fn pauli_text_dense(text: &str) -> Dense {
    let mut total: Option<Dense> = None;
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let coeff = Complex64::new(parts[0].parse().unwrap(), parts[1].parse().unwrap());
        let mut m: Dense = vec![vec![coeff]];
        for ch in parts[2].chars() {
            m = kron(&m, &single_pauli(ch));
        }
        total = Some(match total {
            None => m,
            Some(t) => t
                .iter()
                .zip(&m)
                .map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x + y).collect())
                .collect(),
        });
    }
    total.expect("non-empty Pauli text")
}

fn single_pauli(ch: char) -> Dense {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match ch {
        'I' => vec![vec![l, o], vec![o, l]],
        'X' => vec![vec![o, l], vec![l, o]],
        'Y' => vec![vec![o, -i], vec![i, o]],
        'Z' => vec![vec![l, o], vec![o, -l]],
        _ => panic!("bad Pauli {ch}"),
    }
}

fn kron(a: &Dense, b: &Dense) -> Dense {
    let (na, nb) = (a.len(), b.len());
    let mut out = vec![vec![Complex64::new(0.0, 0.0); na * nb]; na * nb];
    for i in 0..na {
        for j in 0..na {
            for k in 0..nb {
                for l in 0..nb {
                    out[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}
