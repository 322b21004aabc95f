//! Measurement-level route to the unitary-decomposition Krylov matrices.
//!
//! `(X + X^H)^n` with `X = i e^{-i eps H}` expands into binomially weighted
//! unitaries `e^{-i m eps H}`. Every element of `M` and `S` is then a fixed
//! linear combination of primitive expectation values
//! `G(m, n; O) = <psi0| e^{i m eps H} O e^{i n eps H} |psi0>` with `O` either
//! `H` or the identity. Primitives are evaluated (or noised) once, stored in a
//! [`PrimitiveTable`], and recombined classically.
//!
//! The `1/(2 eps)^{j+k}` prefactors are kept apart from the integer-weighted
//! sums and applied in one multiplication per matrix element; when the
//! matrices are diagonally normalized they cancel exactly and are never formed.

use std::collections::BTreeMap;
use std::fmt;

use ndarray::Array2;
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geneig::{solve_gevp, unit_diagonal_scaling, GevpError};
use crate::hamiltonian::{HamiltonianError, PauliSum};
use crate::krylov::{ConvergenceMonitor, ConvergenceRecord, KrylovConfig, Method};
use crate::dword::{CDw, Dw};
use crate::linalg::{LinalgError, SpectralCache, Statevector};
use crate::scalar::{czero, lit, Real, C};

/// Largest expansion order accepted; `C(30, 15)` still fits comfortably in `i64`.
pub const MAX_ORDER: i32 = 30;

/// Default bound on the relative rounding error that recombination may leave
/// in the normalized matrices.
pub const DEFAULT_PRECISION_BOUND: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LcuError {
    #[error("expansion order {0} outside 0..={MAX_ORDER}")]
    InvalidOrder(i64),
    #[error("epsilon must be positive and finite")]
    InvalidEpsilon,
    #[error("noise sigma must be non-negative")]
    NegativeSigma,
    #[error("primitive {0} missing from table")]
    MissingPrimitive(PrimitiveKey),
    #[error("estimated rounding error {estimate:e} after recombination exceeds bound {bound:e}")]
    PrecisionLoss { estimate: f64, bound: f64 },
    #[error("prefactor overflow at order {order}")]
    PrefactorOverflow { order: usize },
    #[error("the primitive route only supports the unitary-decomposition method")]
    UnsupportedMethod,
    #[error("malformed primitive table: {0}")]
    Serialization(String),
    #[error(transparent)]
    Gevp(#[from] GevpError),
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// One term `coeff * e^{-i freq eps H}` of `(X + X^H)^n`; `coeff` is an exact
/// Gaussian integer `C(n,k) i^{n-2k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrequencyCoefficient {
    pub freq: i32,
    pub coeff: Complex<i64>,
}

impl FrequencyCoefficient {
    pub fn coeff_as<T: Real>(&self) -> C<T> {
        Complex::new(lit(self.coeff.re as f64), lit(self.coeff.im as f64))
    }
}

/// Terms of `(X + X^H)^order` plus the exponent of the separate
/// `1/(2 eps)^order` prefactor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialExpansion {
    pub order: u32,
    pub terms: Vec<FrequencyCoefficient>,
}

impl BinomialExpansion {
    pub fn prefactor_exponent(&self) -> u32 {
        self.order
    }

    /// `1/(2 eps)`, the base raised to [`Self::prefactor_exponent`].
    pub fn prefactor_base<T: Real>(epsilon: T) -> T {
        T::one() / (lit::<T>(2.0) * epsilon)
    }
}

/// `i^p` for any integer `p`.
fn i_pow(p: i64) -> Complex<i64> {
    match p.rem_euclid(4) {
        0 => Complex::new(1, 0),
        1 => Complex::new(0, 1),
        2 => Complex::new(-1, 0),
        _ => Complex::new(0, -1),
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Expansion `(X + X^H)^n = sum_k C(n,k) i^{n-2k} e^{-i (n-2k) eps H}`, with
/// frequencies descending from `n` to `-n`.
pub fn binomial_phase_coeffs(order: i64) -> Result<BinomialExpansion, LcuError> {
    if !(0..=MAX_ORDER as i64).contains(&order) {
        return Err(LcuError::InvalidOrder(order));
    }
    let terms = (0..=order)
        .map(|k| {
            let b = binomial(order, k);
            let ph = i_pow(order - 2 * k);
            FrequencyCoefficient {
                freq: (order - 2 * k) as i32,
                coeff: Complex::new(b * ph.re, b * ph.im),
            }
        })
        .collect();
    Ok(BinomialExpansion {
        order: order as u32,
        terms,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Observable {
    Hamiltonian,
    Identity,
}

/// Primitive `<psi0| e^{i m eps H} O e^{i n eps H} |psi0>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimitiveKey {
    pub m: i32,
    pub n: i32,
    pub obs: Observable,
}

impl fmt::Display for PrimitiveKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({}, {}; {:?})", self.m, self.n, self.obs)
    }
}

impl PrimitiveKey {
    pub fn new(m: i32, n: i32, obs: Observable) -> Self {
        Self { m, n, obs }
    }

    /// Both supported observables commute with `H`, so
    /// `G(m, n) = conj(G(-m, -n))`. A key is canonical when `m > 0`, or
    /// `m == 0` and `n >= 0`.
    pub fn is_canonical(&self) -> bool {
        self.m > 0 || (self.m == 0 && self.n >= 0)
    }

    /// Canonical representative and whether the value must be conjugated.
    pub fn canonical(&self) -> (Self, bool) {
        if self.is_canonical() {
            (*self, false)
        } else {
            (Self::new(-self.m, -self.n, self.obs), true)
        }
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.m == 0 && self.n == 0
    }
}

/// `sum_k w_k o_k e^{i s eps lambda_k}` in double-word arithmetic, for every
/// `s` in `shifts`; `w_k = |<k|psi0>|^2` and `o_k` is `lambda_k` or 1.
fn spectral_primitives<T: Real>(
    shifts: &[i32],
    epsilon: T,
    cache: &SpectralCache<T>,
    psi0: &Statevector<T>,
) -> Result<Vec<[CDw<T>; 2]>, LcuError> {
    let coords = cache.to_eigenbasis(psi0)?;
    let weights: Vec<Dw<T>> = coords
        .iter()
        .map(|z| Dw::prod(z.re, z.re).add(Dw::prod(z.im, z.im)))
        .collect();
    let mut out = Vec::with_capacity(shifts.len());
    for &s in shifts {
        let step = Dw::prod(lit(s as f64), epsilon);
        let mut g_h = CDw::zero();
        let mut g_i = CDw::zero();
        for (&lambda, &w) in cache.eigvals().iter().zip(&weights) {
            let (sin, cos) = step.scale(lambda).sin_cos();
            let wi = CDw { re: w.mul(cos), im: w.mul(sin) };
            g_i = g_i.add(wi);
            g_h = g_h.add(CDw { re: wi.re.scale(lambda), im: wi.im.scale(lambda) });
        }
        out.push([g_h, g_i]);
    }
    Ok(out)
}

fn slot(obs: Observable) -> usize {
    match obs {
        Observable::Hamiltonian => 0,
        Observable::Identity => 1,
    }
}

/// Evaluates one primitive exactly through the spectral decomposition;
/// `cache` must be the eigendecomposition of `h`.
pub fn measure_primitive<T: Real>(
    key: PrimitiveKey,
    epsilon: T,
    cache: &SpectralCache<T>,
    psi0: &Statevector<T>,
    h: &PauliSum<T>,
) -> Result<C<T>, LcuError> {
    if !(epsilon > T::zero()) || !epsilon.is_finite() {
        return Err(LcuError::InvalidEpsilon);
    }
    if cache.dim() != h.dim() {
        return Err(LinalgError::DimensionMismatch {
            expected: h.dim(),
            found: cache.dim(),
        }
        .into());
    }
    let g = spectral_primitives(&[key.m + key.n], epsilon, cache, psi0)?[0][slot(key.obs)];
    let mut v = Complex::new(g.re.value(), g.im.value());
    if key.is_self_conjugate() {
        v.im = T::zero();
    }
    Ok(v)
}

/// Canonical primitives for all `|m|, |n| <= max_order` and both observables.
///
/// Values are held as double words. Populated tables carry the full second
/// word; values entered through [`Self::insert`] or JSON without the
/// low words have single-word resolution, which [`expand_lcu`] accounts for.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveTable<T: Real> {
    pub epsilon: T,
    pub noise_sigma: T,
    entries: BTreeMap<PrimitiveKey, CDw<T>>,
    double_word: bool,
}

impl<T: Real> PrimitiveTable<T> {
    pub fn new(epsilon: T) -> Self {
        Self {
            epsilon,
            noise_sigma: T::zero(),
            entries: BTreeMap::new(),
            double_word: false,
        }
    }

    /// Number of `(m, n, obs)` combinations before conjugation dedup.
    pub fn raw_key_count(max_order: usize) -> usize {
        2 * (2 * max_order + 1).pow(2)
    }

    /// Measures every canonical primitive up to `max_order`. Both observables
    /// commute with `H`, so `G(m, n; O)` only depends on `m + n`.
    pub fn populate(
        max_order: usize,
        epsilon: T,
        cache: &SpectralCache<T>,
        psi0: &Statevector<T>,
        h: &PauliSum<T>,
    ) -> Result<Self, LcuError> {
        if !(epsilon > T::zero()) || !epsilon.is_finite() {
            return Err(LcuError::InvalidEpsilon);
        }
        if max_order > MAX_ORDER as usize {
            return Err(LcuError::InvalidOrder(max_order as i64));
        }
        if cache.dim() != h.dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: h.dim(),
                found: cache.dim(),
            }
            .into());
        }
        let r = max_order as i32;
        let shifts: Vec<i32> = (-2 * r..=2 * r).collect();
        let values = spectral_primitives(&shifts, epsilon, cache, psi0)?;
        let mut table = Self::new(epsilon);
        table.double_word = true;
        for obs in [Observable::Hamiltonian, Observable::Identity] {
            for m in -r..=r {
                for n in -r..=r {
                    let key = PrimitiveKey::new(m, n, obs);
                    if !key.is_canonical() {
                        continue;
                    }
                    let mut g = values[(m + n + 2 * r) as usize][slot(obs)];
                    if key.is_self_conjugate() {
                        g.im = Dw::zero();
                    }
                    table.entries.insert(key, g);
                }
            }
        }
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Relative rounding of the stored values: `eps^2` for double words,
    /// `eps` otherwise (`eps` the machine epsilon of `T`).
    pub fn resolution(&self) -> T {
        if self.double_word {
            T::epsilon() * T::epsilon()
        } else {
            T::epsilon()
        }
    }

    fn insert_words(&mut self, key: PrimitiveKey, value: CDw<T>) {
        let (canon, conj) = key.canonical();
        let mut v = if conj { value.conj() } else { value };
        if canon.is_self_conjugate() {
            v.im = Dw::zero();
        }
        self.entries.insert(canon, v);
    }

    /// Stores a value under the canonical form of `key`.
    pub fn insert(&mut self, key: PrimitiveKey, value: C<T>) {
        self.double_word = false;
        self.insert_words(
            key,
            CDw {
                re: Dw::from(value.re),
                im: Dw::from(value.im),
            },
        );
    }

    fn get_words(&self, key: PrimitiveKey) -> Option<CDw<T>> {
        let (canon, conj) = key.canonical();
        self.entries
            .get(&canon)
            .map(|&v| if conj { v.conj() } else { v })
    }

    /// Value for any key, conjugating from the stored canonical partner.
    pub fn get(&self, key: PrimitiveKey) -> Option<C<T>> {
        self.get_words(key).map(|v| Complex::new(v.re.value(), v.im.value()))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&PrimitiveKey, C<T>)> + '_ {
        self.entries
            .iter()
            .map(|(k, v)| (k, Complex::new(v.re.value(), v.im.value())))
    }

    pub fn to_json(&self) -> String {
        let low = |x: Dw<T>| self.double_word.then_some(x.lo);
        let doc = TableDoc {
            epsilon: self.epsilon,
            noise_sigma: self.noise_sigma,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| EntryDoc {
                    m: k.m,
                    n: k.n,
                    obs: k.obs,
                    re: v.re.hi,
                    im: v.im.hi,
                    re_lo: low(v.re),
                    im_lo: low(v.im),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("table serializes")
    }

    /// Parses [`Self::to_json`] output. The low words are optional; a table
    /// keeps double-word resolution only if every entry has them.
    pub fn from_json(text: &str) -> Result<Self, LcuError> {
        let doc: TableDoc<T> =
            serde_json::from_str(text).map_err(|e| LcuError::Serialization(e.to_string()))?;
        let mut table = Self::new(doc.epsilon);
        table.noise_sigma = doc.noise_sigma;
        table.double_word = !doc.entries.is_empty();
        for e in doc.entries {
            let parts = [Some(e.re), Some(e.im), e.re_lo, e.im_lo];
            if parts.iter().flatten().any(|x| !x.is_finite()) {
                return Err(LcuError::Serialization(format!(
                    "non-finite value for G({}, {})",
                    e.m, e.n
                )));
            }
            table.double_word &= e.re_lo.is_some() && e.im_lo.is_some();
            let value = CDw {
                re: Dw::new(e.re, e.re_lo.unwrap_or_else(T::zero)),
                im: Dw::new(e.im, e.im_lo.unwrap_or_else(T::zero)),
            };
            table.insert_words(PrimitiveKey::new(e.m, e.n, e.obs), value);
        }
        Ok(table)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct EntryDoc<T: Real> {
    m: i32,
    n: i32,
    obs: Observable,
    re: T,
    im: T,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    re_lo: Option<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im_lo: Option<T>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct TableDoc<T: Real> {
    epsilon: T,
    #[serde(default)]
    noise_sigma: T,
    entries: Vec<EntryDoc<T>>,
}

/// Adds i.i.d. Gaussian noise of standard deviation `sigma` to the real and
/// imaginary part of every stored primitive, in key order, then restores the
/// conjugation identity (self-conjugate primitives are made real).
pub fn inject_shot_noise<T: Real>(
    table: &PrimitiveTable<T>,
    sigma: T,
    seed: u64,
) -> Result<PrimitiveTable<T>, LcuError> {
    if !(sigma >= T::zero()) {
        return Err(LcuError::NegativeSigma);
    }
    if sigma == T::zero() {
        return Ok(table.clone());
    }
    let sd = sigma.to_f64().unwrap_or(0.0);
    let normal = Normal::new(0.0, sd).map_err(|_| LcuError::NegativeSigma)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = table.clone();
    out.noise_sigma = sigma;
    for (key, v) in out.entries.iter_mut() {
        let dr: f64 = normal.sample(&mut rng);
        let di: f64 = normal.sample(&mut rng);
        v.re = v.re.add(Dw::from(lit(dr)));
        v.im = v.im.add(Dw::from(lit(di)));
        if key.is_self_conjugate() {
            v.im = Dw::zero();
        }
    }
    Ok(out)
}

/// Integer-weighted recombination of primitives for orders `0..=max_order`,
/// before the `1/(2 eps)^{j+k}` prefactors.
#[derive(Debug, Clone)]
pub struct LcuMatrices<T: Real> {
    pub max_order: usize,
    pub epsilon: T,
    /// `M_jk (2 eps)^{j+k}`.
    pub m_unscaled: Array2<C<T>>,
    /// `S_jk (2 eps)^{j+k}`.
    pub s_unscaled: Array2<C<T>>,
    /// Amplification of primitive errors into the normalized matrices.
    pub condition: T,
    /// `condition` times the table resolution: the expected relative error
    /// of the normalized matrices from rounding alone.
    pub rounding_estimate: T,
}

impl<T: Real> LcuMatrices<T> {
    /// Applies the prefactors, one multiplication per element.
    pub fn scaled(&self) -> Result<(Array2<C<T>>, Array2<C<T>>), LcuError> {
        let base = BinomialExpansion::prefactor_base(self.epsilon);
        let n = self.max_order + 1;
        let mut m = self.m_unscaled.clone();
        let mut s = self.s_unscaled.clone();
        for j in 0..n {
            for k in 0..n {
                let p = base.powi((j + k) as i32);
                if !p.is_finite() {
                    return Err(LcuError::PrefactorOverflow { order: j.max(k) });
                }
                m[[j, k]] = m[[j, k]] * p;
                s[[j, k]] = s[[j, k]] * p;
            }
        }
        Ok((m, s))
    }

    /// Matrices of the normalized Krylov vectors; the prefactors cancel.
    pub fn normalized(&self) -> (Array2<C<T>>, Array2<C<T>>) {
        let mut m = self.m_unscaled.clone();
        let mut s = self.s_unscaled.clone();
        unit_diagonal_scaling(&mut m, &mut s);
        (m, s)
    }
}

/// Recombines primitives into `(2 eps)^{j+k} M_jk` and `(2 eps)^{j+k} S_jk`.
///
/// Weighted terms are accumulated in double words, so the cancellation
/// between them costs nothing beyond the rounding already in the table.
/// Fails with [`LcuError::PrecisionLoss`] when the condition of the sums
/// times the table resolution exceeds `precision_bound`.
pub fn expand_lcu<T: Real>(
    max_order: usize,
    table: &PrimitiveTable<T>,
    precision_bound: T,
) -> Result<LcuMatrices<T>, LcuError> {
    if max_order > MAX_ORDER as usize {
        return Err(LcuError::InvalidOrder(max_order as i64));
    }
    let n = max_order + 1;
    let expansions: Vec<BinomialExpansion> = (0..n)
        .map(|j| binomial_phase_coeffs(j as i64))
        .collect::<Result<_, _>>()?;

    let mut mats = [
        Array2::from_elem((n, n), czero::<T>()),
        Array2::from_elem((n, n), czero::<T>()),
    ];
    let mut magnitudes = [Array2::from_elem((n, n), T::zero()), Array2::from_elem((n, n), T::zero())];
    for (slot, obs) in [Observable::Hamiltonian, Observable::Identity].into_iter().enumerate() {
        for j in 0..n {
            for k in j..n {
                let mut acc = CDw::zero();
                let mut mag = T::zero();
                for left in &expansions[j].terms {
                    let wl = left.coeff.conj();
                    for right in &expansions[k].terms {
                        let w = wl * right.coeff;
                        let key = PrimitiveKey::new(left.freq, -right.freq, obs);
                        let g = table.get_words(key).ok_or(LcuError::MissingPrimitive(key))?;
                        let wt = CDw {
                            re: Dw::from_i64(w.re),
                            im: Dw::from_i64(w.im),
                        };
                        let term = wt.mul(g);
                        mag = mag + Complex::new(term.re.hi, term.im.hi).norm();
                        acc = acc.add(term);
                    }
                }
                let v = Complex::new(acc.re.value(), acc.im.value());
                mats[slot][[j, k]] = v;
                mats[slot][[k, j]] = v.conj();
                magnitudes[slot][[j, k]] = mag;
                magnitudes[slot][[k, j]] = mag;
            }
            let d = mats[slot][[j, j]];
            mats[slot][[j, j]] = Complex::new(d.re, T::zero());
        }
    }
    let [m_unscaled, s_unscaled] = mats;
    let condition = condition_estimate(&m_unscaled, &s_unscaled, &magnitudes[0], &magnitudes[1]);
    let rounding_estimate = condition * table.resolution();
    if !(rounding_estimate <= precision_bound) {
        return Err(LcuError::PrecisionLoss {
            estimate: rounding_estimate.to_f64().unwrap_or(f64::INFINITY),
            bound: precision_bound.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(LcuMatrices {
        max_order,
        epsilon: table.epsilon,
        m_unscaled,
        s_unscaled,
        condition,
        rounding_estimate,
    })
}

/// Largest ratio of summed term magnitudes to the natural scale of the
/// corresponding normalized element: `sqrt(S_jj S_kk)` for `S`, times the
/// largest normalized entry of `M` for `M`.
fn condition_estimate<T: Real>(
    m: &Array2<C<T>>,
    s: &Array2<C<T>>,
    mag_m: &Array2<T>,
    mag_s: &Array2<T>,
) -> T {
    let n = s.nrows();
    let diag: Vec<T> = (0..n).map(|j| s[[j, j]].re).collect();
    if diag.iter().any(|&d| !(d > T::zero())) {
        return T::infinity();
    }
    let mut h_scale = T::min_positive_value();
    for j in 0..n {
        for k in 0..n {
            h_scale = h_scale.max(m[[j, k]].norm() / (diag[j] * diag[k]).sqrt());
        }
    }
    let mut worst = T::zero();
    for j in 0..n {
        for k in 0..n {
            let norm = (diag[j] * diag[k]).sqrt();
            worst = worst
                .max(mag_s[[j, k]] / norm)
                .max(mag_m[[j, k]] / (norm * h_scale));
        }
    }
    worst
}

/// `M` and `S` with prefactors applied, matching the statevector route.
pub fn assemble_matrices_lcu<T: Real>(
    max_order: usize,
    table: &PrimitiveTable<T>,
    precision_bound: T,
) -> Result<(Array2<C<T>>, Array2<C<T>>), LcuError> {
    expand_lcu(max_order, table, precision_bound)?.scaled()
}

/// Options for the primitive-based Krylov loop.
#[derive(Debug, Clone, Copy)]
pub struct LcuRunOptions<T: Real> {
    pub noise_sigma: T,
    pub seed: u64,
    pub precision_bound: T,
}

impl<T: Real> Default for LcuRunOptions<T> {
    fn default() -> Self {
        Self {
            noise_sigma: T::zero(),
            seed: 0,
            precision_bound: lit(DEFAULT_PRECISION_BOUND),
        }
    }
}

/// Krylov loop driven entirely by a (possibly noisy) primitive table.
///
/// Applies the same stopping rules as [`crate::krylov::run_with_cache`]. With
/// `normalize_vectors` the recombined matrices are diagonally rescaled,
/// which is the matrix image of normalizing each Krylov vector.
pub fn run_lcu<T: Real>(
    config: &KrylovConfig<T>,
    h: &PauliSum<T>,
    cache: &SpectralCache<T>,
    psi0: &Statevector<T>,
    options: &LcuRunOptions<T>,
) -> Result<(ConvergenceRecord<T>, PrimitiveTable<T>), LcuError> {
    if config.method != Method::Qkud {
        return Err(LcuError::UnsupportedMethod);
    }
    config.validate().map_err(|e| match e {
        crate::krylov::KrylovError::InvalidEpsilon => LcuError::InvalidEpsilon,
        crate::krylov::KrylovError::InvalidMaxIter => LcuError::InvalidOrder(0),
        crate::krylov::KrylovError::Gevp(g) => LcuError::Gevp(g),
        _ => LcuError::InvalidEpsilon,
    })?;
    if config.max_iter > MAX_ORDER as usize {
        return Err(LcuError::InvalidOrder(config.max_iter as i64));
    }
    h.require_hermitian()?;
    let psi0 = psi0.normalized()?;
    let exact = PrimitiveTable::populate(config.max_iter, config.epsilon, cache, &psi0, h)?;
    let table = inject_shot_noise(&exact, options.noise_sigma, options.seed)?;

    let mut monitor = ConvergenceMonitor::new(
        config.stop_delta,
        config.max_iter,
        Some(cache.ground_energy()),
    );
    for iter in 0..=config.max_iter {
        let mats = expand_lcu(iter, &table, options.precision_bound)?;
        let (m, s) = if config.normalize_vectors {
            mats.normalized()
        } else {
            mats.scaled()?
        };
        let sol = solve_gevp(&m, &s, config.gevp_threshold)?;
        if monitor.observe(iter, &sol).is_some() {
            break;
        }
    }
    Ok((monitor.into_record(), table))
}
