use ndarray::Array2;

use super::KrylovError;
use crate::hamiltonian::PauliSum;
use crate::linalg::{dot_conj, Statevector};
use crate::scalar::{czero, lit, Real, C};

/// Ordered Krylov vectors with their Hamiltonian matrix `M_ij = <i|H|j>` and
/// overlap matrix `S_ij = <i|j>`.
#[derive(Debug, Clone)]
pub struct KrylovSubspace<T: Real> {
    vectors: Vec<Statevector<T>>,
    h_vectors: Vec<Statevector<T>>,
    scales: Vec<T>,
    m: Array2<C<T>>,
    s: Array2<C<T>>,
    hermiticity_deviation: T,
}

impl<T: Real> Default for KrylovSubspace<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> KrylovSubspace<T> {
    pub fn new() -> Self {
        Self {
            vectors: Vec::new(),
            h_vectors: Vec::new(),
            scales: Vec::new(),
            m: Array2::from_elem((0, 0), czero()),
            s: Array2::from_elem((0, 0), czero()),
            hermiticity_deviation: T::zero(),
        }
    }

    /// Appends a vector, extending `M` and `S` by one row and column. Both
    /// `<i|O|n>` and `<n|O|i>` are evaluated and averaged; their disagreement
    /// is tracked in [`Self::hermiticity_deviation`].
    pub fn push(&mut self, v: Statevector<T>, scale: T, h: &PauliSum<T>) -> Result<(), KrylovError> {
        if let Some(first) = self.vectors.first() {
            if first.dim() != v.dim() {
                return Err(KrylovError::DimensionMismatch {
                    expected: first.dim(),
                    found: v.dim(),
                });
            }
        }
        let hv = h.apply(&v)?;
        let n = self.vectors.len();
        let mut m = Array2::from_elem((n + 1, n + 1), czero());
        let mut s = Array2::from_elem((n + 1, n + 1), czero());
        m.slice_mut(ndarray::s![..n, ..n]).assign(&self.m);
        s.slice_mut(ndarray::s![..n, ..n]).assign(&self.s);

        let half = lit::<T>(0.5);
        let mut dev = self.hermiticity_deviation;
        for i in 0..n {
            let (mi_n, mn_i) = (
                dot_conj(self.vectors[i].as_slice(), hv.as_slice()),
                dot_conj(v.as_slice(), self.h_vectors[i].as_slice()),
            );
            let (si_n, sn_i) = (
                dot_conj(self.vectors[i].as_slice(), v.as_slice()),
                dot_conj(v.as_slice(), self.vectors[i].as_slice()),
            );
            dev = dev
                .max(((mi_n - mn_i.conj()) * half).norm())
                .max(((si_n - sn_i.conj()) * half).norm());
            let mv = (mi_n + mn_i.conj()) * half;
            let sv = (si_n + sn_i.conj()) * half;
            m[[i, n]] = mv;
            m[[n, i]] = mv.conj();
            s[[i, n]] = sv;
            s[[n, i]] = sv.conj();
        }
        let mnn = dot_conj(v.as_slice(), hv.as_slice());
        dev = dev.max(mnn.im.abs());
        m[[n, n]] = C::new(mnn.re, T::zero());
        s[[n, n]] = C::new(v.norm_sqr(), T::zero());

        self.m = m;
        self.s = s;
        self.hermiticity_deviation = dev;
        self.vectors.push(v);
        self.h_vectors.push(hv);
        self.scales.push(scale);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Statevector<T>] {
        &self.vectors
    }

    /// Norm factors removed from each vector when normalization is enabled
    /// (1 otherwise).
    pub fn scales(&self) -> &[T] {
        &self.scales
    }

    pub fn m(&self) -> &Array2<C<T>> {
        &self.m
    }

    pub fn s(&self) -> &Array2<C<T>> {
        &self.s
    }

    /// Largest anti-Hermitian part seen while assembling `M` and `S`.
    pub fn hermiticity_deviation(&self) -> T {
        self.hermiticity_deviation
    }

    /// Leading `k x k` blocks of `M` and `S`.
    pub fn leading_block(&self, k: usize) -> (Array2<C<T>>, Array2<C<T>>) {
        (
            self.m.slice(ndarray::s![..k, ..k]).to_owned(),
            self.s.slice(ndarray::s![..k, ..k]).to_owned(),
        )
    }
}

/// `M_ij = <v_i|H|v_j>` and `S_ij = <v_i|v_j>` for a list of vectors.
pub fn assemble_matrices<T: Real>(
    vectors: &[Statevector<T>],
    h: &PauliSum<T>,
) -> Result<(Array2<C<T>>, Array2<C<T>>), KrylovError> {
    if vectors.is_empty() {
        return Err(KrylovError::EmptyVectorList);
    }
    let mut sub = KrylovSubspace::new();
    for v in vectors {
        sub.push(v.clone(), T::one(), h)?;
    }
    Ok((sub.m, sub.s))
}
