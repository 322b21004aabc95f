use ndarray::Array2;
use num_complex::Complex;

use super::hermitian::{eigh, HermitianMatrix};
use super::statevector::{check_dims, Statevector};
use super::LinalgError;
use crate::scalar::{czero, phase_neg, Real, C};

/// Eigendecomposition `H = U diag(lambda) U^H` of a Hermitian matrix, used to
/// apply `e^{-i theta H}` and other spectral functions of `H` exactly.
#[derive(Debug, Clone)]
pub struct SpectralCache<T: Real> {
    eigvals: Vec<T>,
    eigvecs: Array2<C<T>>,
}

/// Full eigendecomposition, eigenvalues ascending.
pub fn hermitian_eigendecompose<T: Real>(
    h: &HermitianMatrix<T>,
) -> Result<SpectralCache<T>, LinalgError> {
    let (eigvals, eigvecs) = eigh(h)?;
    Ok(SpectralCache { eigvals, eigvecs })
}

impl<T: Real> SpectralCache<T> {
    pub fn eigvals(&self) -> &[T] {
        &self.eigvals
    }

    pub fn eigvecs(&self) -> &Array2<C<T>> {
        &self.eigvecs
    }

    pub fn dim(&self) -> usize {
        self.eigvals.len()
    }

    pub fn ground_energy(&self) -> T {
        self.eigvals[0]
    }

    pub fn ground_state(&self) -> Statevector<T> {
        Statevector::from_vec_unchecked(self.eigvecs.column(0).to_vec())
    }

    /// Coordinates of `v` in the eigenbasis, `U^H v`.
    pub fn to_eigenbasis(&self, v: &Statevector<T>) -> Result<Vec<C<T>>, LinalgError> {
        check_dims(self.dim(), v.dim())?;
        let n = self.dim();
        let x = v.as_slice();
        let mut out = vec![czero(); n];
        for (r, xr) in x.iter().enumerate() {
            let row = self.eigvecs.row(r);
            for (o, u) in out.iter_mut().zip(row.iter()) {
                *o = *o + u.conj() * xr;
            }
        }
        Ok(out)
    }

    /// `U c` for eigenbasis coordinates `c`.
    pub fn from_eigenbasis(&self, coords: &[C<T>]) -> Result<Statevector<T>, LinalgError> {
        check_dims(self.dim(), coords.len())?;
        let out = self
            .eigvecs
            .rows()
            .into_iter()
            .map(|row| {
                row.iter()
                    .zip(coords)
                    .fold(czero(), |acc: C<T>, (u, ck)| acc + u * ck)
            })
            .collect();
        Ok(Statevector::from_vec_unchecked(out))
    }

    /// `U diag(g(lambda)) U^H v` for a complex-valued spectral multiplier.
    pub fn apply_multiplier<F>(&self, v: &Statevector<T>, g: F) -> Result<Statevector<T>, LinalgError>
    where
        F: Fn(T) -> C<T>,
    {
        let mut coords = self.to_eigenbasis(v)?;
        for (ck, &lam) in coords.iter_mut().zip(&self.eigvals) {
            let w = g(lam);
            if !w.re.is_finite() || !w.im.is_finite() {
                return Err(LinalgError::NonFiniteFunction {
                    eigenvalue: lam.to_f64().unwrap_or(f64::NAN),
                });
            }
            *ck = *ck * w;
        }
        self.from_eigenbasis(&coords)
    }

    /// `e^{-i theta H} v`.
    pub fn evolve(&self, theta: T, v: &Statevector<T>) -> Result<Statevector<T>, LinalgError> {
        if theta == T::zero() {
            check_dims(self.dim(), v.dim())?;
            return Ok(v.clone());
        }
        self.apply_multiplier(v, |lam| phase_neg(theta * lam))
    }

    /// `f(H) v` for a real function `f`.
    pub fn apply_func<F>(&self, f: F, v: &Statevector<T>) -> Result<Statevector<T>, LinalgError>
    where
        F: Fn(T) -> T,
    {
        self.apply_multiplier(v, |lam| Complex::new(f(lam), T::zero()))
    }

    /// Applies the linear combination of unitaries `sum_k c_k e^{-i theta_k H}`
    /// to `v`. The unitaries share one change of basis, so their phases are
    /// combined per eigenvalue before transforming back; this keeps the
    /// cancellation between nearly equal unitaries exact at small angles.
    pub fn apply_lcu(
        &self,
        terms: &[(C<T>, T)],
        v: &Statevector<T>,
    ) -> Result<Statevector<T>, LinalgError> {
        self.apply_multiplier(v, |lam| {
            terms
                .iter()
                .fold(czero(), |acc: C<T>, &(ck, th)| acc + ck * phase_neg(th * lam))
        })
    }
}
