//! Regularized generalized eigenproblem `M C = S C E` by canonical
//! orthogonalization: whiten with the retained eigenvectors of `S`, then solve
//! the standard Hermitian problem in the whitened basis.

use ndarray::Array2;
use thiserror::Error;

use crate::linalg::{hermitian_eigendecompose, hermitize, HermitianMatrix, LinalgError};
use crate::scalar::{czero, lit, tol, Real, C};

/// Default relative threshold on overlap eigenvalues.
pub const DEFAULT_GEVP_THRESHOLD: f64 = 1e-12;

/// Overlap eigenvalues below `-PSD_TOL * sigma_max` mean `S` is not PSD.
pub const PSD_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GevpError {
    #[error("M is {m}x{m} but S is {s}x{s}")]
    DimensionMismatch { m: usize, s: usize },
    #[error("threshold must be positive")]
    InvalidThreshold,
    #[error("overlap matrix is not positive semidefinite (eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("every overlap eigenvalue falls below the threshold")]
    EmptyRetainedSubspace,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone)]
pub struct RegularizedSolution<T: Real> {
    /// Ritz values, ascending.
    pub eigvals: Vec<T>,
    /// Columns are coefficient vectors in the original (non-orthogonal) basis.
    pub eigvecs: Array2<C<T>>,
    pub kept_dim: usize,
    pub discarded: usize,
    /// Largest over smallest retained overlap eigenvalue.
    pub cond_s: T,
}

impl<T: Real> RegularizedSolution<T> {
    pub fn lowest(&self) -> T {
        self.eigvals[0]
    }
}

pub fn solve_gevp<T: Real>(
    m: &Array2<C<T>>,
    s: &Array2<C<T>>,
    threshold: T,
) -> Result<RegularizedSolution<T>, GevpError> {
    if !(threshold > T::zero()) {
        return Err(GevpError::InvalidThreshold);
    }
    let n = m.nrows();
    if m.ncols() != n || s.nrows() != s.ncols() || s.nrows() != n {
        return Err(GevpError::DimensionMismatch { m: n, s: s.nrows() });
    }
    let m_h = HermitianMatrix::new(m.clone())?;
    let s_h = HermitianMatrix::new(s.clone())?;

    let s_cache = hermitian_eigendecompose(&s_h)?;
    let sigma = s_cache.eigvals();
    let sigma_max = sigma[n - 1];
    if !(sigma_max > T::zero()) {
        return Err(GevpError::EmptyRetainedSubspace);
    }
    if sigma[0] < -tol::<T>(PSD_TOL) * sigma_max {
        return Err(GevpError::NotPsd {
            min_eigenvalue: sigma[0].to_f64().unwrap_or(f64::NAN),
        });
    }
    let cutoff = threshold * sigma_max;
    let kept: Vec<usize> = (0..n).filter(|&i| sigma[i] >= cutoff && sigma[i] > T::zero()).collect();
    if kept.is_empty() {
        return Err(GevpError::EmptyRetainedSubspace);
    }
    let k = kept.len();
    let v = s_cache.eigvecs();
    let mut w = Array2::from_elem((n, k), czero::<T>());
    for (col, &i) in kept.iter().enumerate() {
        let scale = T::one() / sigma[i].sqrt();
        for r in 0..n {
            w[[r, col]] = v[[r, i]] * scale;
        }
    }
    let w_adj = w.t().mapv(|z| z.conj());
    let reduced = w_adj.dot(&m_h.entries().dot(&w));
    let (reduced, _) = hermitize(&reduced);
    let red_cache = hermitian_eigendecompose(&HermitianMatrix::new(reduced)?)?;
    let eigvecs = w.dot(red_cache.eigvecs());

    let sigma_min_kept = sigma[kept[0]];
    Ok(RegularizedSolution {
        eigvals: red_cache.eigvals().to_vec(),
        eigvecs,
        kept_dim: k,
        discarded: n - k,
        cond_s: sigma_max / sigma_min_kept,
    })
}

/// Rescales `M` and `S` by `D^H (.) D` with `D = diag(1/sqrt(S_jj))`, the
/// matrix image of normalizing every basis vector. Zero diagonals are left
/// unscaled.
pub fn unit_diagonal_scaling<T: Real>(m: &mut Array2<C<T>>, s: &mut Array2<C<T>>) -> Vec<T> {
    let n = s.nrows();
    let d: Vec<T> = (0..n)
        .map(|j| {
            let sjj = s[[j, j]].re;
            if sjj > T::zero() {
                T::one() / sjj.sqrt()
            } else {
                T::one()
            }
        })
        .collect();
    for a in [m, s] {
        for i in 0..n {
            for j in 0..n {
                a[[i, j]] = a[[i, j]] * (d[i] * d[j]);
            }
        }
    }
    d
}

/// `||M c - E S c|| / ||M||_F` for one eigenpair.
pub fn residual<T: Real>(m: &Array2<C<T>>, s: &Array2<C<T>>, energy: T, coeffs: &[C<T>]) -> T {
    let n = m.nrows();
    let mut r2 = T::zero();
    for i in 0..n {
        let mut acc = czero::<T>();
        for j in 0..n {
            acc = acc + (m[[i, j]] - s[[i, j]] * energy) * coeffs[j];
        }
        r2 = r2 + acc.norm_sqr();
    }
    let mnorm = m.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    r2.sqrt() / mnorm.max(lit(f64::MIN_POSITIVE))
}
