//! Linear-combination-of-unitaries approximation of an arbitrary (possibly
//! non-Hermitian) operator `A`.
//!
//! With `S = (A + A^H)/2` and `P = (A - A^H)/2`,
//! `A ~ (X + X^H + Y1 - Y2) / (2 eps)` where `X = i e^{-i eps S}`,
//! `Y1 = e^{eps P}` and `Y2 = e^{-eps P}`; the error is `O(eps^2)`.
//! `P` is anti-Hermitian, so `K = iP` is Hermitian and `e^{eps P} = e^{-i eps K}`.

use ndarray::Array2;
use num_complex::Complex;

use super::KrylovError;
use crate::linalg::{hermitian_eigendecompose, HermitianMatrix, SpectralCache, Statevector};
use crate::scalar::{lit, Real, C};

#[derive(Debug, Clone)]
pub struct UnitaryDecomposition<T: Real> {
    hermitian_part: SpectralCache<T>,
    /// Spectral cache of `K = i P`.
    generator: SpectralCache<T>,
}

impl<T: Real> UnitaryDecomposition<T> {
    pub fn new(a: &Array2<C<T>>) -> Result<Self, KrylovError> {
        let (r, c) = a.dim();
        if r != c {
            return Err(KrylovError::NotSquare { rows: r, cols: c });
        }
        let half = lit::<T>(0.5);
        let adj = a.t().mapv(|z| z.conj());
        let s = (a + &adj).mapv(|z| z * half);
        let i = Complex::new(T::zero(), T::one());
        let k = (a - &adj).mapv(|z| z * half * i);
        Ok(Self {
            hermitian_part: hermitian_eigendecompose(&HermitianMatrix::new(s)?)?,
            generator: hermitian_eigendecompose(&HermitianMatrix::new(k)?)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.hermitian_part.dim()
    }

    /// `(X + X^H + Y1 - Y2) v / (2 eps)`.
    pub fn apply(&self, epsilon: T, v: &Statevector<T>) -> Result<Statevector<T>, KrylovError> {
        if !(epsilon > T::zero()) || !epsilon.is_finite() {
            return Err(KrylovError::InvalidEpsilon);
        }
        let one = Complex::new(T::one(), T::zero());
        let i = Complex::new(T::zero(), T::one());
        // X + X^H = i e^{-i eps S} - i e^{i eps S}
        let x_part = self
            .hermitian_part
            .apply_lcu(&[(i, epsilon), (-i, -epsilon)], v)?;
        // Y1 - Y2 = e^{-i eps K} - e^{i eps K}
        let y_part = self.generator.apply_lcu(&[(one, epsilon), (-one, -epsilon)], v)?;
        let sum = x_part.add_scaled(one, &y_part)?;
        Ok(sum.scaled_real(T::one() / (lit::<T>(2.0) * epsilon)))
    }
}

pub fn general_unitary_decomposition_apply<T: Real>(
    a: &Array2<C<T>>,
    epsilon: T,
    v: &Statevector<T>,
) -> Result<Statevector<T>, KrylovError> {
    if !(epsilon > T::zero()) || !epsilon.is_finite() {
        return Err(KrylovError::InvalidEpsilon);
    }
    let dec = UnitaryDecomposition::new(a)?;
    if dec.dim() != v.dim() {
        return Err(KrylovError::DimensionMismatch {
            expected: dec.dim(),
            found: v.dim(),
        });
    }
    dec.apply(epsilon, v)
}
