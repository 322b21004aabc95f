//! Scalar abstraction shared by every numerical module.
//!
//! All math in this crate is generic over a real floating-point type `T`
//! (`f32` or `f64`); complex amplitudes are `Complex<T>`. Tolerances are
//! written as `f64` literals tuned for double precision and rescaled to the
//! machine epsilon of `T` through [`tol`].

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real scalar usable by the solvers: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + FromStr
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex amplitude over `T`.
pub type C<T> = Complex<T>;

/// Converts an `f64` constant into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in T")
}

/// Rescales a double-precision tolerance to the precision of `T`.
///
/// For `f64` this is the identity; for `f32` the tolerance grows by the ratio
/// of machine epsilons.
#[inline]
pub fn tol<T: Real>(x: f64) -> T {
    let ratio = T::epsilon().to_f64().unwrap_or(f64::EPSILON) / f64::EPSILON;
    lit(x * ratio.max(1.0))
}

#[inline]
pub fn c<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub fn czero<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub fn cone<T: Real>() -> C<T> {
    Complex::new(T::one(), T::zero())
}

/// The imaginary unit.
#[inline]
pub fn ci<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::one())
}

/// `e^{-i phi}` computed from one `sin_cos` call.
#[inline]
pub fn phase_neg<T: Real>(phi: T) -> C<T> {
    let (s, co) = phi.sin_cos();
    Complex::new(co, -s)
}

/// Neumaier-compensated accumulator for complex sums.
#[derive(Debug, Clone, Copy)]
pub struct CompensatedSum<T: Real> {
    re: T,
    re_comp: T,
    im: T,
    im_comp: T,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self {
            re: T::zero(),
            re_comp: T::zero(),
            im: T::zero(),
            im_comp: T::zero(),
        }
    }
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    fn add_real(sum: &mut T, comp: &mut T, x: T) {
        let t = *sum + x;
        if sum.abs() >= x.abs() {
            *comp = *comp + ((*sum - t) + x);
        } else {
            *comp = *comp + ((x - t) + *sum);
        }
        *sum = t;
    }

    #[inline]
    pub fn add(&mut self, z: C<T>) {
        Self::add_real(&mut self.re, &mut self.re_comp, z.re);
        Self::add_real(&mut self.im, &mut self.im_comp, z.im);
    }

    pub fn value(&self) -> C<T> {
        Complex::new(self.re + self.re_comp, self.im + self.im_comp)
    }
}
