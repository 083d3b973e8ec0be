//! Trigonometric moments of spectra with constant modulus.
//!
//! Normalized moments `d_k = s_k / c^k` of a measure on the unit circle
//! form a positive semidefinite Toeplitz matrix (Carathéodory–Toeplitz);
//! the Laurent functional `L(q) = Σ a_i d_i` turns `L(q* q) >= 0` into the
//! same statement. When the moments are summable, the Fejér means
//! `M_K(x) = Σ_{|k|<=K} (1 - |k|/(K+1)) d_k e^{-ikx}` approximate the
//! angular density.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::Mul;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{Float, Zero};

use crate::numeric::{Compensated, ComplexCompensated};
use crate::{Error, Result};

/// Tolerance for flagging supplied negative-index moments that disagree
/// with the conjugate extension.
pub const CONJUGATE_MISMATCH_TOL: f64 = 1e-8;

/// Normalized moments `d_0..d_K` with `d_{-k} = conj(d_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleMoments {
    radius: f64,
    d: Vec<Complex64>,
}

impl CircleMoments {
    /// `d` are already normalized; `d_0` must be real (to 1e-12) and positive.
    pub fn new(radius: f64, mut d: Vec<Complex64>) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::NonPositiveRadius(radius));
        }
        let d0 = *d.first().ok_or(Error::InvalidMoments("at least one moment is required"))?;
        if d0.im.abs() > 1e-12 * d0.re.abs() || !(d0.re > 0.0) {
            return Err(Error::InvalidMoments("d_0 must be real and positive"));
        }
        if d.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMoments("moments must be finite"));
        }
        d[0].im = 0.0;
        Ok(Self { radius, d })
    }

    /// Raw moments `s_k`, normalized by `c^k`.
    pub fn from_raw(radius: f64, s: &[Complex64]) -> Result<Self> {
        let mut scale = 1.0;
        let d = s
            .iter()
            .enumerate()
            .map(|(k, &z)| {
                if k > 0 {
                    scale *= radius;
                }
                z / scale
            })
            .collect();
        Self::new(radius, d)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn values(&self) -> &[Complex64] {
        &self.d
    }

    pub fn order(&self) -> usize {
        self.d.len() - 1
    }

    pub fn d0(&self) -> f64 {
        self.d[0].re
    }

    /// `d_k` for any `|k| <= K`, using the conjugate extension.
    pub fn get(&self, k: i64) -> Complex64 {
        let idx = k.unsigned_abs() as usize;
        if k >= 0 {
            self.d[idx]
        } else {
            self.d[idx].conj()
        }
    }

    /// First index with `|d_k| > d_0 + tol`.
    pub fn bound_violation(&self, tol: f64) -> Option<usize> {
        let d0 = self.d0();
        self.d.iter().position(|z| z.norm() > d0 + tol)
    }

    /// `max_k |supplied_k - conj(d_k)|` for independently supplied `d_{-1}, d_{-2}, ...`.
    pub fn negative_index_mismatch(&self, supplied: &[Complex64]) -> f64 {
        supplied
            .iter()
            .zip(self.d.iter().skip(1))
            .map(|(neg, pos)| (neg - pos.conj()).norm())
            .fold(0.0, f64::max)
    }
}

/// `q(z) = Σ_{i=lo}^{hi} a_i z^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly {
    lowest: i64,
    coeffs: Vec<Complex64>,
}

impl LaurentPoly {
    /// Coefficients of `z^lowest, z^{lowest+1}, ...`.
    pub fn new(lowest: i64, coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            return Self::zero();
        }
        Self { lowest, coeffs }
    }

    /// Coefficients `a_{-M}..a_M` (length `2M + 1`).
    pub fn symmetric(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::InvalidArgument("symmetric Laurent coefficients need odd length"));
        }
        let bound = (coeffs.len() / 2) as i64;
        Ok(Self::new(-bound, coeffs))
    }

    pub fn zero() -> Self {
        Self { lowest: 0, coeffs: alloc::vec![Complex64::zero()] }
    }

    pub fn monomial(power: i64, coeff: Complex64) -> Self {
        Self { lowest: power, coeffs: alloc::vec![coeff] }
    }

    pub fn coefficient(&self, i: i64) -> Complex64 {
        let off = i - self.lowest;
        if off < 0 || off as usize >= self.coeffs.len() {
            Complex64::zero()
        } else {
            self.coeffs[off as usize]
        }
    }

    /// Nonzero terms as `(power, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(move |(off, &a)| (self.lowest + off as i64, a))
    }

    /// Largest `|i|` with `a_i != 0`.
    pub fn degree(&self) -> usize {
        self.terms().map(|(i, _)| i.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Evaluates at a nonzero point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms().fold(Complex64::zero(), |acc, (i, a)| acc + a * z.powi(i as i32))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = alloc::vec![Complex64::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.lowest + rhs.lowest, coeffs)
    }
}

/// `q*(z) = Σ conj(a_i) z^{-i}`.
pub fn laurent_adjoint(q: &LaurentPoly) -> LaurentPoly {
    let highest = q.lowest + q.coeffs.len() as i64 - 1;
    LaurentPoly::new(-highest, q.coeffs.iter().rev().map(|a| a.conj()).collect())
}

/// `L(q) = Σ a_i d_i` with the conjugate extension for negative indices.
pub fn laurent_functional(s: &CircleMoments, q: &LaurentPoly) -> Result<Complex64> {
    let degree = q.degree();
    if degree > s.order() {
        return Err(Error::DegreeOverflow { degree, available: s.order() });
    }
    let mut acc = ComplexCompensated::default();
    for (i, a) in q.terms() {
        acc.add(a * s.get(i));
    }
    Ok(acc.value())
}

/// Hermitian Toeplitz matrix with entry `(i, j) = d_{j-i}`.
pub fn toeplitz_moment_matrix(s: &CircleMoments, size: usize) -> Result<DMatrix<Complex64>> {
    if size == 0 {
        return Err(Error::InvalidArgument("matrix size must be positive"));
    }
    if size > s.order() + 1 {
        return Err(Error::OrderTooLarge { requested: size - 1, available: s.order() });
    }
    Ok(DMatrix::from_fn(size, size, |i, j| s.get(j as i64 - i as i64)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsdVerdict {
    pub passed: bool,
    pub min_eigenvalue: f64,
    /// Matrix dimension the verdict qualifies.
    pub size: usize,
    pub tol: f64,
}

/// Passes iff the smallest eigenvalue of the Toeplitz matrix is `>= -tol`.
pub fn toeplitz_psd_test(s: &CircleMoments, size: usize, tol: f64) -> Result<PsdVerdict> {
    let h = toeplitz_moment_matrix(s, size)?;
    let min_eigenvalue = h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
    Ok(PsdVerdict { passed: min_eigenvalue >= -tol, min_eigenvalue, size, tol })
}

/// How the truncated Fourier series is summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summation {
    Fejer,
    /// Plain partial sum; can go negative and ring.
    Raw,
}

/// Density samples on `x_j = -π + 2πj/N`, `j = 0..N-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    angles: Vec<f64>,
    values: Vec<f64>,
    order: usize,
    summation: Summation,
}

impl DensityGrid {
    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn summation(&self) -> Summation {
        self.summation
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `(1/2π) ∫ F(x) M(x) dx` by the periodic trapezoidal rule.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let mut acc = Compensated::default();
        for (&x, &v) in self.angles.iter().zip(&self.values) {
            acc.add(f(x) * v);
        }
        acc.value() / self.values.len() as f64
    }

    /// `(1/2π) ∫ M`; equals `d_0` up to rounding once `N > K`.
    pub fn normalization(&self) -> f64 {
        self.integrate(|_| 1.0)
    }
}

/// Cesàro-summed (or raw) Fourier series of the angular density.
pub fn fejer_density(
    s: &CircleMoments,
    order: usize,
    grid: usize,
    summation: Summation,
) -> Result<DensityGrid> {
    if order > s.order() {
        return Err(Error::OrderTooLarge { requested: order, available: s.order() });
    }
    if grid == 0 {
        return Err(Error::InvalidArgument("grid size must be positive"));
    }
    let weights: Vec<f64> = (0..=order)
        .map(|k| match summation {
            Summation::Fejer => 1.0 - k as f64 / (order + 1) as f64,
            Summation::Raw => 1.0,
        })
        .collect();
    let angles: Vec<f64> = (0..grid).map(|j| -PI + 2.0 * PI * j as f64 / grid as f64).collect();
    let values = angles
        .iter()
        .map(|&x| {
            let mut acc = Compensated::default();
            acc.add(s.d0());
            for k in 1..=order {
                let (sin, cos) = Float::sin_cos(k as f64 * x);
                let d = s.d[k];
                // d_k e^{-ikx} + conj(...) = 2 Re(d_k e^{-ikx})
                acc.add(2.0 * weights[k] * (d.re * cos + d.im * sin));
            }
            acc.value()
        })
        .collect();
    Ok(DensityGrid { angles, values, order, summation })
}

/// Advisory three-way reading of the partial sums `Σ_{|k|<=K'} |d_k|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summability {
    Converging,
    Inconclusive,
    Diverging,
}

impl Summability {
    pub fn name(&self) -> &'static str {
        match self {
            Summability::Converging => "converging",
            Summability::Inconclusive => "inconclusive",
            Summability::Diverging => "diverging",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummabilityReport {
    /// `S_{K'}` for `K' = 1..=K`.
    pub partial_sums: Vec<f64>,
    pub classification: Summability,
}

pub const MIN_SUMMABILITY_MOMENTS: usize = 8;

/// Looks at the increments `S_{K'} - S_{K'-1} = 2|d_{K'}|` over the last
/// quarter of the available orders: all below `1e-3 d_0` reads as
/// converging, all above `0.5 d_0 / K` as diverging.
pub fn summability_diagnostic(s: &CircleMoments) -> Result<SummabilityReport> {
    if s.d.len() < MIN_SUMMABILITY_MOMENTS {
        return Err(Error::TooFewMembers { have: s.d.len(), need: MIN_SUMMABILITY_MOMENTS });
    }
    let order = s.order();
    let d0 = s.d0();
    let mut acc = Compensated::default();
    acc.add(d0);
    let partial_sums: Vec<f64> = s.d[1..]
        .iter()
        .map(|z| {
            acc.add(2.0 * z.norm());
            acc.value()
        })
        .collect();
    let quarter = (order + 3) / 4;
    let tail: Vec<f64> = s.d[order + 1 - quarter..].iter().map(|z| 2.0 * z.norm()).collect();
    let max_inc = tail.iter().copied().fold(0.0, f64::max);
    let min_inc = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let classification = if max_inc < 1e-3 * d0 {
        Summability::Converging
    } else if min_inc > 0.5 * d0 / order as f64 {
        Summability::Diverging
    } else {
        Summability::Inconclusive
    };
    Ok(SummabilityReport { partial_sums, classification })
}

/// Angles `x_{i,n} ∈ [-π, π]` of one family member.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSample {
    pub n: usize,
    pub angles: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErgodicMomentRow {
    pub k: usize,
    pub empirical: Complex64,
    pub discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErgodicFunctionRow {
    pub name: &'static str,
    pub empirical: f64,
    pub predicted: f64,
    pub discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErgodicReport {
    /// Size of the member the table was computed on (the largest).
    pub n: usize,
    pub moments: Vec<ErgodicMomentRow>,
    pub functions: Vec<ErgodicFunctionRow>,
}

/// Periodic test functions for the ergodic relation; `x ↦ x` is excluded.
const TEST_FUNCTIONS: [(&str, fn(f64) -> f64); 4] = [
    ("1", |_| 1.0),
    ("cos", |x| Float::cos(x)),
    ("sin", |x| Float::sin(x)),
    ("cos^2", |x| Float::powi(Float::cos(x), 2)),
];

/// Compares empirical angular averages at the largest member against the
/// moments and against `(1/2π) ∫ F M_K` for a few periodic `F`.
pub fn ergodic_check(samples: &[AngleSample], s: &CircleMoments, test_order: usize) -> Result<ErgodicReport> {
    for (member, sample) in samples.iter().enumerate() {
        if let Some((index, &angle)) = sample
            .angles
            .iter()
            .enumerate()
            .find(|(_, x)| !(x.abs() <= PI))
        {
            return Err(Error::AngleOutOfRange { member, index, angle });
        }
    }
    let last = samples
        .iter()
        .max_by_key(|s| s.n)
        .ok_or(Error::TooFewMembers { have: 0, need: 1 })?;
    if test_order > s.order() {
        return Err(Error::OrderTooLarge { requested: test_order, available: s.order() });
    }
    if last.angles.is_empty() {
        return Err(Error::InvalidArgument("member has no angles"));
    }
    let mut angles = last.angles.clone();
    angles.sort_by(f64::total_cmp);
    let count = angles.len() as f64;

    let moments = (0..=test_order)
        .map(|k| {
            let mut acc = ComplexCompensated::default();
            for &x in &angles {
                let (sin, cos) = Float::sin_cos(k as f64 * x);
                acc.add(Complex64::new(cos, sin));
            }
            let empirical = acc.value() / count;
            ErgodicMomentRow { k, empirical, discrepancy: (empirical - s.get(k as i64)).norm() }
        })
        .collect();

    let grid = (4 * (s.order() + 1)).max(64);
    let density = fejer_density(s, s.order(), grid, Summation::Fejer)?;
    let functions = TEST_FUNCTIONS
        .iter()
        .map(|&(name, f)| {
            let empirical = crate::numeric::compensated_sum(angles.iter().map(|&x| f(x))) / count;
            let predicted = density.integrate(f);
            ErgodicFunctionRow { name, empirical, predicted, discrepancy: (empirical - predicted).abs() }
        })
        .collect();
    Ok(ErgodicReport { n: last.n, moments, functions })
}
