//! Dense Hermitian matrices and their full eigendecomposition.
//!
//! The eigensolver reduces the matrix to real symmetric tridiagonal form with
//! complex Householder reflections, then runs implicit-shift QL iterations on
//! the tridiagonal, accumulating the transformations into the eigenvectors.

use ndarray::Array2;
use num_complex::Complex;

use super::statevector::{check_dims, Statevector};
use super::LinalgError;
use crate::scalar::{czero, lit, tol, Real, C};

/// Relative tolerance for the Hermiticity check on construction.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Largest dimension the dense eigensolver accepts (12 qubits).
pub const DENSE_DIM_LIMIT: usize = 1 << 12;

/// QL sweeps allowed per eigenvalue before giving up.
const MAX_QL_ITER: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix<T: Real> {
    entries: Array2<C<T>>,
}

impl<T: Real> HermitianMatrix<T> {
    /// Validates Hermiticity within [`HERMITIAN_TOL`] (relative to the largest
    /// entry, floored at 1) and symmetrizes by averaging with the adjoint.
    pub fn new(entries: Array2<C<T>>) -> Result<Self, LinalgError> {
        let (r, cdim) = entries.dim();
        if r != cdim {
            return Err(LinalgError::NotSquare { rows: r, cols: cdim });
        }
        if r == 0 {
            return Err(LinalgError::EmptyDimension);
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        let (sym, deviation) = hermitize(&entries);
        let scale = entries
            .iter()
            .map(|z| z.norm())
            .fold(T::one(), |a, b| a.max(b));
        if deviation > tol::<T>(HERMITIAN_TOL) * scale {
            return Err(LinalgError::NotHermitian {
                deviation: deviation.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { entries: sym })
    }

    /// Real diagonal matrix.
    pub fn diagonal(values: &[T]) -> Self {
        let n = values.len();
        let mut a = Array2::from_elem((n, n), czero());
        for (i, &v) in values.iter().enumerate() {
            a[[i, i]] = Complex::new(v, T::zero());
        }
        Self { entries: a }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<C<T>> {
        &self.entries
    }

    pub fn into_entries(self) -> Array2<C<T>> {
        self.entries
    }

    pub fn matvec(&self, v: &Statevector<T>) -> Result<Statevector<T>, LinalgError> {
        check_dims(self.dim(), v.dim())?;
        let x = v.as_slice();
        let out = self
            .entries
            .rows()
            .into_iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(czero(), |acc: C<T>, (a, b)| acc + a * b)
            })
            .collect();
        Ok(Statevector::from_vec_unchecked(out))
    }

    pub fn frobenius_norm(&self) -> T {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }
}

/// Returns `(A + A^H)/2` and the largest entrywise deviation `|A - A^H|/2`.
pub fn hermitize<T: Real>(a: &Array2<C<T>>) -> (Array2<C<T>>, T) {
    let n = a.nrows();
    let half = lit::<T>(0.5);
    let mut out = a.clone();
    let mut dev = T::zero();
    for i in 0..n {
        for j in i..n {
            let x = a[[i, j]];
            let y = a[[j, i]].conj();
            dev = dev.max(((x - y) * half).norm());
            let avg = (x + y) * half;
            out[[i, j]] = avg;
            out[[j, i]] = avg.conj();
        }
    }
    (out, dev)
}

/// Full spectrum of a Hermitian matrix: eigenvalues ascending and the unitary
/// whose columns are the matching eigenvectors.
pub(crate) fn eigh<T: Real>(h: &HermitianMatrix<T>) -> Result<(Vec<T>, Array2<C<T>>), LinalgError> {
    let n = h.dim();
    if n > DENSE_DIM_LIMIT {
        return Err(LinalgError::DimensionTooLarge {
            dim: n,
            limit: DENSE_DIM_LIMIT,
        });
    }
    let mut a: Vec<C<T>> = h.entries.iter().copied().collect();
    let mut q: Vec<C<T>> = identity(n);
    let mut off: Vec<C<T>> = vec![czero(); n];

    householder_tridiagonalize(n, &mut a, &mut q, &mut off);

    let mut d: Vec<T> = (0..n).map(|i| a[i * n + i].re).collect();
    // Diagonal unitary making the subdiagonal real and non-negative.
    let mut phase = vec![Complex::new(T::one(), T::zero()); n];
    let mut e = vec![T::zero(); n];
    for k in 0..n.saturating_sub(1) {
        let mag = off[k].norm();
        e[k] = mag;
        phase[k + 1] = if mag > T::zero() {
            phase[k] * (off[k] / mag)
        } else {
            phase[k]
        };
    }

    // Rows of `zt` are eigenvectors of the real tridiagonal.
    let mut zt = vec![T::zero(); n * n];
    for i in 0..n {
        zt[i * n + i] = T::one();
    }
    tql2(n, &mut d, &mut e, &mut zt)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| d[x].partial_cmp(&d[y]).unwrap_or(std::cmp::Ordering::Equal));

    for r in 0..n {
        for k in 0..n {
            q[r * n + k] = q[r * n + k] * phase[k];
        }
    }
    let mut u = Array2::from_elem((n, n), czero());
    for (col, &src) in order.iter().enumerate() {
        let z = &zt[src * n..(src + 1) * n];
        for r in 0..n {
            let qrow = &q[r * n..(r + 1) * n];
            let mut acc = czero();
            for (qa, &zb) in qrow.iter().zip(z) {
                acc = acc + qa * zb;
            }
            u[[r, col]] = acc;
        }
    }
    let vals = order.iter().map(|&i| d[i]).collect();
    Ok((vals, u))
}

fn identity<T: Real>(n: usize) -> Vec<C<T>> {
    let mut q = vec![czero(); n * n];
    for i in 0..n {
        q[i * n + i] = Complex::new(T::one(), T::zero());
    }
    q
}

/// In-place reduction `A = Q T Q^H`. On exit the diagonal of `a` holds the
/// (real) diagonal of `T` and `off[k] = T[k+1][k]`.
fn householder_tridiagonalize<T: Real>(n: usize, a: &mut [C<T>], q: &mut [C<T>], off: &mut [C<T>]) {
    if n < 2 {
        return;
    }
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);
    for k in 0..n - 2 {
        let m = n - k - 1;
        let mut v: Vec<C<T>> = (0..m).map(|j| a[(k + 1 + j) * n + k]).collect();
        let xnorm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if xnorm == T::zero() {
            off[k] = czero();
            continue;
        }
        let x0 = v[0];
        let x0abs = x0.norm();
        let ph = if x0abs > T::zero() {
            x0 / x0abs
        } else {
            Complex::new(T::one(), T::zero())
        };
        let alpha = -ph * xnorm;
        v[0] = ph * (x0abs + xnorm);
        let tau = two / (two * xnorm * xnorm + two * x0abs * xnorm);

        // p = tau * B v over the trailing block B = a[k+1.., k+1..]
        let mut p = vec![czero(); m];
        for (i, pi) in p.iter_mut().enumerate() {
            let row = &a[(k + 1 + i) * n + k + 1..(k + 1 + i) * n + n];
            let mut acc = czero();
            for (b, vj) in row.iter().zip(&v) {
                acc = acc + b * vj;
            }
            *pi = acc * tau;
        }
        let vp: C<T> = v
            .iter()
            .zip(&p)
            .fold(czero(), |acc: C<T>, (vi, pi)| acc + vi.conj() * pi);
        let kk = tau * half * vp.re;
        let qv: Vec<C<T>> = p.iter().zip(&v).map(|(pi, vi)| pi - vi * kk).collect();
        for i in 0..m {
            let row = (k + 1 + i) * n + k + 1;
            for j in 0..m {
                a[row + j] = a[row + j] - v[i] * qv[j].conj() - qv[i] * v[j].conj();
            }
            let d = a[row + i];
            a[row + i] = Complex::new(d.re, T::zero());
        }
        for j in 0..m {
            a[(k + 1 + j) * n + k] = czero();
            a[k * n + k + 1 + j] = czero();
        }
        a[(k + 1) * n + k] = alpha;
        a[k * n + k + 1] = alpha.conj();
        off[k] = alpha;

        // Q <- Q H_k
        for r in 0..n {
            let row = &mut q[r * n + k + 1..r * n + n];
            let mut w = czero();
            for (qa, vj) in row.iter().zip(&v) {
                w = w + qa * vj;
            }
            let w = w * tau;
            for (qa, vj) in row.iter_mut().zip(&v) {
                *qa = *qa - w * vj.conj();
            }
        }
    }
    off[n - 2] = a[(n - 1) * n + n - 2];
}

/// Implicit QL on a real symmetric tridiagonal with diagonal `d` and
/// subdiagonal `e` (`e[k]` couples `k` and `k+1`, `e[n-1]` unused). Rotations
/// are applied to the rows of `zt`. Eigenvalues are left unsorted in `d`.
fn tql2<T: Real>(n: usize, d: &mut [T], e: &mut [T], zt: &mut [T]) -> Result<(), LinalgError> {
    if n < 2 {
        return Ok(());
    }
    e[n - 1] = T::zero();
    let eps = T::epsilon();
    let two = lit::<T>(2.0);
    let mut f = T::zero();
    let mut tst1 = T::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_ITER {
                    return Err(LinalgError::ConvergenceFailure { index: l });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di = *di - h;
                }
                f = f + h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (lo, hi) = zt.split_at_mut((i + 1) * n);
                    let zi = &mut lo[i * n..];
                    let zi1 = &mut hi[..n];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let hb = *b;
                        *b = s * *a + c * hb;
                        *a = c * *a - s * hb;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = T::zero();
    }
    Ok(())
}
