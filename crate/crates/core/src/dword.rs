//! Double-word arithmetic: a value is the unevaluated sum `hi + lo` with
//! `|lo| <= ulp(hi) / 2`, which carries about twice the precision of `T`.

use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dw<T> {
    pub hi: T,
    pub lo: T,
}

#[inline]
fn two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod<T: Real>(a: T, b: T) -> (T, T) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl<T: Real> Dw<T> {
    pub fn zero() -> Self {
        Self::from(T::zero())
    }

    pub fn from(x: T) -> Self {
        Self { hi: x, lo: T::zero() }
    }

    /// Renormalizes an arbitrary pair.
    pub fn new(hi: T, lo: T) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    /// Exact product of two `T` values.
    pub fn prod(a: T, b: T) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self { hi, lo }
    }

    /// An integer, split over both words when it exceeds the mantissa.
    pub fn from_i64(n: i64) -> Self {
        let hi = lit::<T>(n as f64);
        let rest = n - hi.to_i64().unwrap_or(n);
        Self::new(hi, lit(rest as f64))
    }

    pub fn value(self) -> T {
        self.hi + self.lo
    }

    pub fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }

    pub fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }

    pub fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }

    pub fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    pub fn scale(self, x: T) -> Self {
        let (p, e) = two_prod(self.hi, x);
        let (hi, lo) = quick_two_sum(p, e + self.lo * x);
        Self { hi, lo }
    }

    pub fn div_scalar(self, x: T) -> Self {
        let q = self.hi / x;
        let (p, e) = two_prod(q, x);
        let r = ((self.hi - p) - e + self.lo) / x;
        let (hi, lo) = quick_two_sum(q, r);
        Self { hi, lo }
    }

    /// `pi / 2` to double-word precision.
    fn half_pi() -> Self {
        let hi = T::FRAC_PI_2();
        let lo = (std::f64::consts::FRAC_PI_2 - hi.to_f64().unwrap_or(0.0)) + 6.123233995736766e-17;
        Self::new(hi, lit(lo))
    }

    /// `(sin x, cos x)`: reduction by `pi / 2`, then Taylor series on
    /// `|r| <= pi / 4`.
    pub fn sin_cos(self) -> (Self, Self) {
        let half_pi = Self::half_pi();
        let q = (self.hi / half_pi.hi).round();
        let r = self.sub(half_pi.scale(q));
        let r2 = r.mul(r);
        let stop = T::epsilon() * T::epsilon() * lit(1e-3);

        let mut sin = r;
        let mut term = r;
        let mut k = 1.0;
        loop {
            term = term.mul(r2).div_scalar(lit(-(k + 1.0) * (k + 2.0)));
            sin = sin.add(term);
            k += 2.0;
            if term.hi.abs() <= stop {
                break;
            }
        }
        let mut cos = Self::from(T::one());
        let mut term = cos;
        let mut k = 0.0;
        loop {
            term = term.mul(r2).div_scalar(lit(-(k + 1.0) * (k + 2.0)));
            cos = cos.add(term);
            k += 2.0;
            if term.hi.abs() <= stop {
                break;
            }
        }
        match q.to_i64().unwrap_or(0).rem_euclid(4) {
            0 => (sin, cos),
            1 => (cos, sin.neg()),
            2 => (sin.neg(), cos.neg()),
            _ => (cos.neg(), sin),
        }
    }
}

/// Complex double-word value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct CDw<T> {
    pub re: Dw<T>,
    pub im: Dw<T>,
}

impl<T: Real> CDw<T> {
    pub fn zero() -> Self {
        Self { re: Dw::zero(), im: Dw::zero() }
    }

    pub fn add(self, o: Self) -> Self {
        Self { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    pub fn mul(self, o: Self) -> Self {
        Self {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub fn conj(self) -> Self {
        Self { re: self.re, im: self.im.neg() }
    }
}
