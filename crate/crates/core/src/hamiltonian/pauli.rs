use std::collections::BTreeMap;
use std::fmt;

use ndarray::Array2;
use num_complex::Complex;

use super::HamiltonianError;
use crate::linalg::{HermitianMatrix, Statevector};
use crate::scalar::{czero, tol, Real, C};

/// Terms with a coefficient magnitude below this are dropped on canonicalization.
pub const DROP_TOL: f64 = 1e-15;

/// Absolute tolerance on imaginary coefficient parts for [`PauliSum::is_hermitian`].
pub const HERMITIAN_COEFF_TOL: f64 = 1e-14;

/// Default qubit limit for dense materialization.
pub const DEFAULT_DENSE_QUBITS: usize = 12;

/// Largest supported register: words are packed into 64-bit masks.
pub const MAX_QUBITS: usize = 63;

/// One weighted Pauli word. The leftmost character of `word` acts on qubit 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm<T: Real> {
    pub coeff: C<T>,
    pub word: String,
}

impl<T: Real> PauliTerm<T> {
    pub fn new(coeff: C<T>, word: impl Into<String>) -> Self {
        Self {
            coeff,
            word: word.into(),
        }
    }

    pub fn real(coeff: T, word: impl Into<String>) -> Self {
        Self::new(Complex::new(coeff, T::zero()), word)
    }
}

/// Bit masks of a Pauli word for an `n`-qubit register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct PauliMasks {
    /// Bits flipped (X or Y).
    pub x: u64,
    /// Bits contributing a sign (Z or Y).
    pub z: u64,
    /// Number of Y factors.
    pub n_y: u32,
}

impl PauliMasks {
    pub fn parse(word: &str) -> Result<Self, HamiltonianError> {
        let n = word.chars().count();
        if n > MAX_QUBITS {
            return Err(HamiltonianError::TooManyQubits { n_qubits: n });
        }
        let mut m = PauliMasks { x: 0, z: 0, n_y: 0 };
        for (q, ch) in word.chars().enumerate() {
            let bit = 1u64 << (n - 1 - q);
            match ch {
                'I' => {}
                'X' => m.x |= bit,
                'Z' => m.z |= bit,
                'Y' => {
                    m.x |= bit;
                    m.z |= bit;
                    m.n_y += 1;
                }
                other => return Err(HamiltonianError::InvalidPauliChar(other)),
            }
        }
        Ok(m)
    }

    /// `i^{n_y}`.
    pub fn y_phase<T: Real>(&self) -> C<T> {
        match self.n_y % 4 {
            0 => Complex::new(T::one(), T::zero()),
            1 => Complex::new(T::zero(), T::one()),
            2 => Complex::new(-T::one(), T::zero()),
            _ => Complex::new(T::zero(), -T::one()),
        }
    }
}

/// Sparse Hamiltonian `sum_k c_k P_k` over Pauli words, kept in canonical form:
/// words unique and sorted, near-zero coefficients dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum<T: Real> {
    n_qubits: usize,
    terms: Vec<PauliTerm<T>>,
}

impl<T: Real> PauliSum<T> {
    /// Validates and canonicalizes: duplicate words are merged by adding
    /// coefficients and terms with `|c| < 1e-15` are removed.
    pub fn new(n_qubits: usize, terms: Vec<PauliTerm<T>>) -> Result<Self, HamiltonianError> {
        if n_qubits == 0 {
            return Err(HamiltonianError::NoQubits);
        }
        if n_qubits > MAX_QUBITS {
            return Err(HamiltonianError::TooManyQubits { n_qubits });
        }
        let mut merged: BTreeMap<String, C<T>> = BTreeMap::new();
        for (i, t) in terms.into_iter().enumerate() {
            let len = t.word.chars().count();
            if len != n_qubits {
                return Err(HamiltonianError::InconsistentWordLength {
                    line: i + 1,
                    expected: n_qubits,
                    found: len,
                });
            }
            PauliMasks::parse(&t.word)?;
            if !t.coeff.re.is_finite() || !t.coeff.im.is_finite() {
                return Err(HamiltonianError::NonFiniteCoefficient);
            }
            *merged.entry(t.word).or_insert_with(czero) += t.coeff;
        }
        let drop = tol::<T>(DROP_TOL);
        let terms = merged
            .into_iter()
            .filter(|(_, c)| c.norm() >= drop)
            .map(|(word, coeff)| PauliTerm { coeff, word })
            .collect();
        Ok(Self { n_qubits, terms })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm<T>] {
        &self.terms
    }

    pub fn is_hermitian(&self) -> bool {
        let t = tol::<T>(HERMITIAN_COEFF_TOL);
        self.terms.iter().all(|term| term.coeff.im.abs() <= t)
    }

    pub(crate) fn require_hermitian(&self) -> Result<(), HamiltonianError> {
        if self.is_hermitian() {
            Ok(())
        } else {
            Err(HamiltonianError::NotHermitian)
        }
    }

    /// `H v`, term by term, without forming a dense matrix.
    pub fn apply(&self, v: &Statevector<T>) -> Result<Statevector<T>, HamiltonianError> {
        let dim = self.dim();
        if v.dim() != dim {
            return Err(HamiltonianError::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
        let x = v.as_slice();
        let mut out = vec![czero::<T>(); dim];
        for term in &self.terms {
            let m = PauliMasks::parse(&term.word).expect("validated on construction");
            let factor = term.coeff * m.y_phase::<T>();
            let neg = -factor;
            for (b, xb) in x.iter().enumerate() {
                let sign_odd = ((b as u64) & m.z).count_ones() & 1 == 1;
                let f = if sign_odd { neg } else { factor };
                out[b ^ m.x as usize] += f * xb;
            }
        }
        Ok(Statevector::new(out)?)
    }

    /// `<v|H|v>`.
    pub fn expectation(&self, v: &Statevector<T>) -> Result<C<T>, HamiltonianError> {
        let hv = self.apply(v)?;
        Ok(crate::linalg::inner(v, &hv)?)
    }

    /// Dense `2^n x 2^n` matrix using the default 12-qubit limit.
    pub fn to_dense(&self) -> Result<HermitianMatrix<T>, HamiltonianError> {
        self.to_dense_with_limit(DEFAULT_DENSE_QUBITS)
    }

    pub fn to_dense_with_limit(&self, max_qubits: usize) -> Result<HermitianMatrix<T>, HamiltonianError> {
        if self.n_qubits > max_qubits {
            return Err(HamiltonianError::DimensionTooLarge {
                n_qubits: self.n_qubits,
                limit: max_qubits,
            });
        }
        let dim = self.dim();
        let mut a = Array2::from_elem((dim, dim), czero::<T>());
        for term in &self.terms {
            let m = PauliMasks::parse(&term.word).expect("validated on construction");
            let factor = term.coeff * m.y_phase::<T>();
            for b in 0..dim {
                let sign_odd = ((b as u64) & m.z).count_ones() & 1 == 1;
                let f = if sign_odd { -factor } else { factor };
                a[[b ^ m.x as usize, b]] += f;
            }
        }
        HermitianMatrix::new(a).map_err(|e| match e {
            crate::linalg::LinalgError::NotHermitian { .. } => HamiltonianError::NotHermitian,
            other => HamiltonianError::Linalg(other),
        })
    }

    /// Sum of absolute coefficients, an upper bound on the spectral radius.
    pub fn one_norm(&self) -> T {
        self.terms.iter().map(|t| t.coeff.norm()).sum()
    }
}

impl<T: Real> fmt::Display for PauliSum<T> {
    /// Writes the text format: `<real> <imag> <word>` per line, sorted by word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            writeln!(f, "{} {} {}", t.coeff.re, t.coeff.im, t.word)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn single(word: &str, coeff: f64) -> PauliSum<f64> {
        PauliSum::new(word.len(), vec![PauliTerm::real(coeff, word)]).unwrap()
    }

    #[test]
    fn z_keeps_ket0_and_x_flips_it() {
        let k0 = Statevector::basis(2, 0).unwrap();
        assert_eq!(single("Z", 1.0).apply(&k0).unwrap(), k0);
        assert_eq!(
            single("X", 1.0).apply(&k0).unwrap(),
            Statevector::basis(2, 1).unwrap()
        );
    }

    #[test]
    fn y_action_and_qubit_order() {
        let k0 = Statevector::<f64>::basis(2, 0).unwrap();
        let out = single("Y", 1.0).apply(&k0).unwrap();
        assert_eq!(out[1], c(0.0, 1.0));
        // qubit 0 is the most significant bit: XI|00> = |10> = index 2
        let out = single("XI", 1.0).apply(&Statevector::basis(4, 0).unwrap()).unwrap();
        assert_eq!(out[2], c(1.0, 0.0));
    }

    #[test]
    fn dense_images() {
        let z = single("Z", 1.0).to_dense().unwrap();
        assert_eq!(z.entries()[[0, 0]], c(1.0, 0.0));
        assert_eq!(z.entries()[[1, 1]], c(-1.0, 0.0));
        let xx = single("XX", 0.5).to_dense().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i + j == 3 { 0.5 } else { 0.0 };
                assert_eq!(xx.entries()[[i, j]], c(want, 0.0));
            }
        }
    }

    #[test]
    fn canonicalization_merges_and_drops() {
        let h = PauliSum::new(
            2,
            vec![
                PauliTerm::real(0.5, "ZZ"),
                PauliTerm::real(0.25, "XI"),
                PauliTerm::real(0.5, "ZZ"),
                PauliTerm::real(1e-17, "YY"),
            ],
        )
        .unwrap();
        assert_eq!(h.terms().len(), 2);
        assert_eq!(h.terms()[0].word, "XI");
        assert_eq!(h.terms()[1].coeff, c(1.0, 0.0));
    }

    #[test]
    fn hermiticity_and_limits() {
        let h = PauliSum::new(1, vec![PauliTerm::new(c(1.0, 1e-3), "X")]).unwrap();
        assert!(!h.is_hermitian());
        assert!(matches!(h.to_dense(), Err(HamiltonianError::NotHermitian)));
        let big = single(&"Z".repeat(13), 1.0);
        assert!(matches!(
            big.to_dense(),
            Err(HamiltonianError::DimensionTooLarge { n_qubits: 13, limit: 12 })
        ));
        assert!(matches!(
            PauliSum::new(1, vec![PauliTerm::real(1.0, "Q")]),
            Err(HamiltonianError::InvalidPauliChar('Q'))
        ));
    }

    #[test]
    fn apply_rejects_wrong_dimension() {
        let v = Statevector::<f64>::basis(4, 0).unwrap();
        assert!(matches!(
            single("Z", 1.0).apply(&v),
            Err(HamiltonianError::DimensionMismatch { expected: 2, found: 4 })
        ));
    }
}
