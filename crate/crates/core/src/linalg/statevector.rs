use std::ops::{Index, IndexMut};

use num_complex::Complex;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::LinalgError;
use crate::scalar::{czero, lit, Real, C};

/// Dense complex amplitude vector of dimension `2^n_qubits` (or any positive
/// dimension when used as a generic vector).
///
/// Index convention: qubit 0 is the most significant bit of the index, so the
/// basis state `|q0 q1 ... q_{n-1}>` sits at index `sum_q b_q 2^{n-1-q}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector<T: Real> {
    amps: Vec<C<T>>,
}

impl<T: Real> Statevector<T> {
    pub fn new(amps: Vec<C<T>>) -> Result<Self, LinalgError> {
        if amps.is_empty() {
            return Err(LinalgError::EmptyDimension);
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        Ok(Self { amps })
    }

    /// Builds from a buffer already known to be finite and non-empty.
    pub(crate) fn from_vec_unchecked(amps: Vec<C<T>>) -> Self {
        debug_assert!(!amps.is_empty());
        Self { amps }
    }

    pub fn from_real(values: &[T]) -> Result<Self, LinalgError> {
        Self::new(values.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "statevector dimension must be positive");
        Self {
            amps: vec![czero(); dim],
        }
    }

    /// Computational basis state `|index>`.
    pub fn basis(dim: usize, index: usize) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::EmptyDimension);
        }
        if index >= dim {
            return Err(LinalgError::IndexOutOfRange { index, dim });
        }
        let mut v = Self::zeros(dim);
        v.amps[index] = Complex::new(T::one(), T::zero());
        Ok(v)
    }

    /// Uniform superposition `|+...+>` over `dim` basis states.
    pub fn uniform(dim: usize) -> Self {
        let a = T::one() / lit::<T>(dim as f64).sqrt();
        Self {
            amps: vec![Complex::new(a, T::zero()); dim],
        }
    }

    /// Normalized vector with i.i.d. Gaussian real and imaginary parts.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let amps = (0..dim)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                Complex::new(lit(re), lit(im))
            })
            .collect();
        Self { amps }.normalized().expect("gaussian vector is nonzero")
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn as_slice(&self) -> &[C<T>] {
        &self.amps
    }

    pub fn as_mut_slice(&mut self) -> &mut [C<T>] {
        &mut self.amps
    }

    pub fn into_vec(self) -> Vec<C<T>> {
        self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Unit-norm copy; fails on the zero vector.
    pub fn normalized(&self) -> Result<Self, LinalgError> {
        let n = self.norm();
        if n == T::zero() || !n.is_finite() {
            return Err(LinalgError::ZeroVector);
        }
        Ok(self.scaled_real(T::one() / n))
    }

    pub fn scaled_real(&self, s: T) -> Self {
        Self {
            amps: self.amps.iter().map(|a| a * s).collect(),
        }
    }

    pub fn scaled(&self, s: C<T>) -> Self {
        Self {
            amps: self.amps.iter().map(|a| a * s).collect(),
        }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: C<T>, other: &Self) -> Result<Self, LinalgError> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self {
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| a + s * b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.add_scaled(Complex::new(-T::one(), T::zero()), other)
    }

    /// Euclidean distance `||self - other||`.
    pub fn distance(&self, other: &Self) -> Result<T, LinalgError> {
        Ok(self.sub(other)?.norm())
    }
}

impl<T: Real> Index<usize> for Statevector<T> {
    type Output = C<T>;
    fn index(&self, i: usize) -> &C<T> {
        &self.amps[i]
    }
}

impl<T: Real> IndexMut<usize> for Statevector<T> {
    fn index_mut(&mut self, i: usize) -> &mut C<T> {
        &mut self.amps[i]
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<(), LinalgError> {
    if expected != found {
        Err(LinalgError::DimensionMismatch { expected, found })
    } else {
        Ok(())
    }
}

/// `<u|v>`, conjugate-linear in `u`.
pub fn inner<T: Real>(u: &Statevector<T>, v: &Statevector<T>) -> Result<C<T>, LinalgError> {
    check_dims(u.dim(), v.dim())?;
    Ok(dot_conj(u.as_slice(), v.as_slice()))
}

#[inline]
pub(crate) fn dot_conj<T: Real>(u: &[C<T>], v: &[C<T>]) -> C<T> {
    let mut acc = czero();
    for (a, b) in u.iter().zip(v) {
        acc = acc + a.conj() * b;
    }
    acc
}
