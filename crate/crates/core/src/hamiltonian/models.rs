//! Built-in model Hamiltonians.

use super::{HamiltonianError, PauliSum, PauliTerm};
use crate::scalar::{lit, Real};

/// Word of length `n` with the given single-qubit factors, identity elsewhere.
pub fn word(n: usize, factors: &[(usize, char)]) -> String {
    let mut w = vec!['I'; n];
    for &(q, p) in factors {
        w[q] = p;
    }
    w.into_iter().collect()
}

/// Open-chain transverse-field Ising model
/// `H = -J sum_i Z_i Z_{i+1} - h sum_i X_i`.
pub fn build_tfim<T: Real>(n: usize, coupling: T, field: T) -> Result<PauliSum<T>, HamiltonianError> {
    if n < 2 {
        return Err(HamiltonianError::TooFewSites { n, min: 2 });
    }
    let mut terms = Vec::with_capacity(2 * n - 1);
    for i in 0..n - 1 {
        terms.push(PauliTerm::real(-coupling, word(n, &[(i, 'Z'), (i + 1, 'Z')])));
    }
    for i in 0..n {
        terms.push(PauliTerm::real(-field, word(n, &[(i, 'X')])));
    }
    PauliSum::new(n, terms)
}

/// Spin-orbital index under the site-major ordering `up0, dn0, up1, dn1, ...`.
pub fn spin_orbital(site: usize, spin_down: bool) -> usize {
    2 * site + usize::from(spin_down)
}

/// Jordan-Wigner image of the open-chain Fermi-Hubbard model
/// `H = -t sum_{<ij>,s} (c+_{is} c_{js} + h.c.) + U sum_i n_{i,up} n_{i,dn}`
/// on `2 n_sites` qubits. A set qubit (`|1>`) is an occupied spin-orbital.
pub fn build_hubbard_chain<T: Real>(
    n_sites: usize,
    hopping: T,
    onsite: T,
) -> Result<PauliSum<T>, HamiltonianError> {
    if n_sites < 2 {
        return Err(HamiltonianError::TooFewSites { n: n_sites, min: 2 });
    }
    let n = 2 * n_sites;
    let half = lit::<T>(0.5);
    let quarter = lit::<T>(0.25);
    let mut terms = Vec::new();
    for site in 0..n_sites - 1 {
        for down in [false, true] {
            let p = spin_orbital(site, down);
            let r = spin_orbital(site + 1, down);
            for pauli in ['X', 'Y'] {
                let mut f: Vec<(usize, char)> = vec![(p, pauli), (r, pauli)];
                f.extend((p + 1..r).map(|q| (q, 'Z')));
                terms.push(PauliTerm::real(-hopping * half, word(n, &f)));
            }
        }
    }
    for site in 0..n_sites {
        let up = spin_orbital(site, false);
        let dn = spin_orbital(site, true);
        terms.push(PauliTerm::real(onsite * quarter, word(n, &[])));
        terms.push(PauliTerm::real(-onsite * quarter, word(n, &[(up, 'Z')])));
        terms.push(PauliTerm::real(-onsite * quarter, word(n, &[(dn, 'Z')])));
        terms.push(PauliTerm::real(onsite * quarter, word(n, &[(up, 'Z'), (dn, 'Z')])));
    }
    PauliSum::new(n, terms)
}
