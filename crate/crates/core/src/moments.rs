//! Forward-difference calculus on truncated moment sequences.
//!
//! A real sequence `m_0, m_1, ...` is the moment sequence of a positive
//! measure on `[0, 1]` exactly when every iterated forward difference
//! satisfies `(-1)^k (Δ^k m)_n >= 0`. Only finitely many moments are ever
//! available, so every verdict produced here is qualified by the truncation
//! order it was checked to.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, Zero};

use crate::numeric::{binomial, two_sum, Compensated};
use crate::{Error, Result};

/// Orders above this lose most significant digits to cancellation in `f64`.
pub const ILL_CONDITIONED_ORDER: usize = 25;

/// Support of the measure a moment sequence belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    UnitInterval,
    SymmetricInterval { half_width: f64 },
    Circle { radius: f64 },
}

impl Domain {
    fn is_interval(&self) -> bool {
        !matches!(self, Domain::Circle { .. })
    }
}

/// Truncated moments `m_0..m_K` tagged with the support they live on.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    values: Vec<Complex64>,
    domain: Domain,
}

impl MomentSequence {
    pub fn new(values: Vec<Complex64>, domain: Domain) -> Result<Self> {
        match domain {
            Domain::SymmetricInterval { half_width } if !(half_width > 0.0) => {
                return Err(Error::NonPositiveHalfWidth(half_width))
            }
            Domain::Circle { radius } if !(radius > 0.0) => {
                return Err(Error::NonPositiveRadius(radius))
            }
            _ => {}
        }
        let first = values
            .first()
            .ok_or(Error::InvalidMoments("at least one moment is required"))?;
        if first.im != 0.0 || !(first.re > 0.0) {
            return Err(Error::InvalidMoments("m_0 must be real and positive"));
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMoments("moments must be finite"));
        }
        if domain.is_interval() && values.iter().any(|z| z.im != 0.0) {
            return Err(Error::InvalidMoments(
                "interval moments must have zero imaginary part",
            ));
        }
        Ok(Self { values, domain })
    }

    pub fn from_real(values: &[f64], domain: Domain) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect(), domain)
    }

    /// Moments on `[0, 1]`.
    pub fn unit(values: &[f64]) -> Result<Self> {
        Self::from_real(values, Domain::UnitInterval)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Truncation order `K` (index of the last moment).
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn mass(&self) -> f64 {
        self.values[0].re
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|z| z.im == 0.0)
    }

    pub fn real_values(&self) -> Option<Vec<f64>> {
        self.is_real().then(|| self.values.iter().map(|z| z.re).collect())
    }

    /// Probability normalization is validated here rather than assumed on construction.
    pub fn is_probability(&self, tol: f64) -> bool {
        (self.mass() - 1.0).abs() <= tol
    }

    /// Keeps `m_0..m_order`.
    pub fn truncated(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderTooLarge { requested: order, available: self.order() });
        }
        Ok(Self { values: self.values[..=order].to_vec(), domain: self.domain })
    }
}

/// Triangular table `D[k][n] = (Δ^k m)_n` for `k + n <= K`.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceTable {
    rows: Vec<Vec<f64>>,
}

impl DifferenceTable {
    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    /// `(Δ^k m)_n`; panics when `k + n > K`.
    pub fn get(&self, k: usize, n: usize) -> f64 {
        self.rows[k][n]
    }

    pub fn row(&self, k: usize) -> &[f64] {
        &self.rows[k]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }
}

/// Iterated forward differences, carried in double-word precision.
pub fn difference_table(m: &MomentSequence) -> Result<DifferenceTable> {
    let values = m.real_values().ok_or(Error::ComplexMoments)?;
    if !m.domain().is_interval() {
        return Err(Error::ComplexMoments);
    }
    let order = values.len() - 1;
    let mut hi = values;
    let mut lo = alloc::vec![0.0; hi.len()];
    let mut rows = Vec::with_capacity(order + 1);
    rows.push(hi.clone());
    for _ in 1..=order {
        let len = hi.len() - 1;
        let mut next_hi = Vec::with_capacity(len);
        let mut next_lo = Vec::with_capacity(len);
        for n in 0..len {
            let (s, e) = two_sum(hi[n + 1], -hi[n]);
            let tail = e + (lo[n + 1] - lo[n]);
            let (h, l) = two_sum(s, tail);
            next_hi.push(h);
            next_lo.push(l);
        }
        rows.push(next_hi.iter().zip(&next_lo).map(|(h, l)| h + l).collect());
        hi = next_hi;
        lo = next_lo;
    }
    Ok(DifferenceTable { rows })
}

/// `1e-10 * max |m_n|`.
pub fn default_tolerance(m: &MomentSequence) -> f64 {
    1e-10 * m.values().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Outcome of the finite complete-monotonicity test.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityVerdict {
    pub passed: bool,
    /// Truncation order the test covered.
    pub order: usize,
    pub tol: f64,
    /// Minimum of `(-1)^k (Δ^k m)_n` over the whole table.
    pub worst_violation: f64,
    /// Location of that minimum.
    pub worst_at: (usize, usize),
    /// First violating entry in `(k, n)` order, when the test fails.
    pub witness: Option<(usize, usize)>,
    /// Set when the order is high enough that rounding dominates the table.
    pub ill_conditioned: bool,
}

impl fmt::Display for MonotonicityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "pass up to order {}", self.order)?;
        } else {
            write!(f, "fail at order {}", self.order)?;
            if let Some((k, n)) = self.witness {
                write!(f, ", witness (k, n) = ({k}, {n})")?;
            }
        }
        if self.ill_conditioned {
            write!(f, " [order > {ILL_CONDITIONED_ORDER}: rounding-dominated]")?;
        }
        Ok(())
    }
}

/// Checks `(-1)^k (Δ^k m)_n >= -tol` for every entry of the table.
pub fn is_completely_monotonic(m: &MomentSequence, tol: f64) -> Result<MonotonicityVerdict> {
    let table = difference_table(m)?;
    let tol = tol.max(0.0);
    let mut worst = f64::INFINITY;
    let mut worst_at = (0, 0);
    let mut witness = None;
    for (k, row) in table.rows().iter().enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        for (n, &d) in row.iter().enumerate() {
            let v = sign * d;
            if v < worst {
                worst = v;
                worst_at = (k, n);
            }
            if witness.is_none() && v < -tol {
                witness = Some((k, n));
            }
        }
    }
    Ok(MonotonicityVerdict {
        passed: witness.is_none(),
        order: table.order(),
        tol,
        worst_violation: worst,
        worst_at,
        witness,
        ill_conditioned: table.order() > ILL_CONDITIONED_ORDER,
    })
}

/// Moments of the pushforward under `y = (x + M) / (2M)`:
/// `l_k = (2M)^{-k} Σ_j C(k, j) M^{k-j} h_j`.
pub fn rescale_to_unit_interval(h: &MomentSequence) -> Result<MomentSequence> {
    let half_width = match h.domain() {
        Domain::SymmetricInterval { half_width } => half_width,
        _ => return Err(Error::WrongDomain { expected: "symmetric interval" }),
    };
    let h = h.real_values().ok_or(Error::ComplexMoments)?;
    // (2M)^{-k} M^{k-j} = 2^{-k} M^{-j}; keeps every term bounded by |h_j / M^j|
    let scaled: Vec<f64> = h
        .iter()
        .enumerate()
        .map(|(j, &v)| v / half_width.powi(j as i32))
        .collect();
    let l = (0..scaled.len())
        .map(|k| {
            let mut acc = Compensated::default();
            for (j, &s) in scaled.iter().enumerate().take(k + 1) {
                acc.add(binomial(k, j) * s);
            }
            acc.value() * 0.5.powi(k as i32)
        })
        .collect::<Vec<_>>();
    MomentSequence::from_real(&l, Domain::UnitInterval)
}

/// Inverse of [`rescale_to_unit_interval`]: moments under `x = M (2y - 1)`.
pub fn rescale_from_unit_interval(l: &MomentSequence, half_width: f64) -> Result<MomentSequence> {
    if !(half_width > 0.0) {
        return Err(Error::NonPositiveHalfWidth(half_width));
    }
    let l = l.real_values().ok_or(Error::ComplexMoments)?;
    let h = (0..l.len())
        .map(|j| {
            let mut acc = Compensated::default();
            for (i, &v) in l.iter().enumerate().take(j + 1) {
                let sign = if (j - i) % 2 == 0 { 1.0 } else { -1.0 };
                acc.add(sign * binomial(j, i) * 2.0.powi(i as i32) * v);
            }
            acc.value() * half_width.powi(j as i32)
        })
        .collect::<Vec<_>>();
    MomentSequence::from_real(&h, Domain::SymmetricInterval { half_width })
}

/// Difference table over exact rationals.
///
/// High orders are hopeless in `f64` (`Δ^k` amplifies rounding by `2^k`),
/// so moments known exactly are differenced over a common denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactDifferenceTable {
    denominator: BigInt,
    rows: Vec<Vec<BigInt>>,
}

impl ExactDifferenceTable {
    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, k: usize, n: usize) -> BigRational {
        BigRational::new(self.rows[k][n].clone(), self.denominator.clone())
    }

    /// Exact complete-monotonicity: first `(k, n)` with `(-1)^k (Δ^k m)_n < 0`.
    pub fn first_violation(&self) -> Option<(usize, usize)> {
        self.rows.iter().enumerate().find_map(|(k, row)| {
            row.iter().position(|d| {
                if k % 2 == 0 {
                    d.is_negative()
                } else {
                    d.is_positive()
                }
            })
            .map(|n| (k, n))
        })
    }
}

pub fn exact_difference_table(m: &[BigRational]) -> Result<ExactDifferenceTable> {
    if m.is_empty() {
        return Err(Error::InvalidMoments("at least one moment is required"));
    }
    if !m[0].is_positive() {
        return Err(Error::InvalidMoments("m_0 must be real and positive"));
    }
    let denominator = m.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let mut row: Vec<BigInt> = m
        .iter()
        .map(|r| r.numer() * (&denominator / r.denom()))
        .collect();
    let mut rows = Vec::with_capacity(m.len());
    while !row.is_empty() {
        let next: Vec<BigInt> = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        rows.push(core::mem::replace(&mut row, next));
    }
    debug_assert!(rows.last().map_or(false, |r| r.len() == 1));
    if denominator.is_zero() {
        return Err(Error::InvalidMoments("zero denominator"));
    }
    Ok(ExactDifferenceTable { denominator, rows })
}
