use num_complex::Complex;

use super::KrylovError;
use crate::linalg::{SpectralCache, Statevector};
use crate::scalar::{lit, Real};

/// One unitary-decomposition Krylov step, `(X + X^H)/(2 eps) |prev>` with
/// `X = i e^{-i eps H}`.
///
/// The two unitaries are applied through one shared eigenbasis transform so
/// their phases are summed per eigenvalue; the result equals
/// `sin(eps H)/eps |prev>` to rounding even at `eps ~ 1e-6`.
pub fn qkud_step<T: Real>(
    prev: &Statevector<T>,
    epsilon: T,
    cache: &SpectralCache<T>,
) -> Result<Statevector<T>, KrylovError> {
    if !(epsilon > T::zero()) || !epsilon.is_finite() {
        return Err(KrylovError::InvalidEpsilon);
    }
    let i = Complex::new(T::zero(), T::one());
    let lcu = [(i, epsilon), (-i, -epsilon)];
    let out = cache.apply_lcu(&lcu, prev)?;
    Ok(out.scaled_real(T::one() / (lit::<T>(2.0) * epsilon)))
}

/// One real-time-evolution step, `e^{-i dt H} |prev>`.
pub fn qrte_step<T: Real>(
    prev: &Statevector<T>,
    delta_t: T,
    cache: &SpectralCache<T>,
) -> Result<Statevector<T>, KrylovError> {
    if !(delta_t > T::zero()) || !delta_t.is_finite() {
        return Err(KrylovError::InvalidTimeStep);
    }
    Ok(cache.evolve(delta_t, prev)?)
}
