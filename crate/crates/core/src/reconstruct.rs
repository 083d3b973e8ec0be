//! Approximating measures from truncated moments, and the monotone
//! quantile symbol of a real-supported measure.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::moments::{difference_table, exact_difference_table, Domain, MomentSequence};
use crate::numeric::{binomial, cmp_complex, Compensated, ComplexCompensated};
use crate::{Error, Result};

/// Legendre expansions beyond this degree are dominated by cancellation.
pub const LEGENDRE_MAX_DEGREE: usize = 32;

/// Cell count used by [`Reconstruction::Auto`] for the Legendre candidate.
pub const DEFAULT_LEGENDRE_CELLS: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub location: Complex64,
    pub weight: f64,
}

impl Atom {
    pub fn real(location: f64, weight: f64) -> Self {
        Self { location: Complex64::new(location, 0.0), weight }
    }
}

/// Finitely many weighted atoms, sorted by location (real part first).
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
    clipped: f64,
}

impl DiscreteMeasure {
    /// Weights in `[-tol, tol]` are set to zero and the remaining weights
    /// rescaled to the unclipped total; coincident atoms are merged.
    pub fn new(atoms: Vec<Atom>, tol: f64) -> Result<Self> {
        let tol = tol.max(0.0);
        let mut total = Compensated::default();
        let mut kept = Compensated::default();
        let mut clipped = 0.0;
        for (index, a) in atoms.iter().enumerate() {
            if !a.weight.is_finite() || !a.location.re.is_finite() || !a.location.im.is_finite() {
                return Err(Error::InvalidArgument("atoms must be finite"));
            }
            if a.weight < -tol {
                return Err(Error::NegativeWeight { index, weight: a.weight });
            }
            if a.weight > tol {
                kept.add(a.weight);
            } else {
                clipped += a.weight.abs();
            }
            total.add(a.weight);
        }
        let (total, kept) = (total.value(), kept.value());
        if !(total > 0.0) || !(kept > 0.0) {
            return Err(Error::EmptyMeasure);
        }
        let scale = if clipped > 0.0 { total / kept } else { 1.0 };
        let mut atoms: Vec<Atom> = atoms
            .into_iter()
            .map(|a| Atom { weight: if a.weight > tol { a.weight * scale } else { 0.0 }, ..a })
            .collect();
        atoms.sort_by(|a, b| cmp_complex(&a.location, &b.location));
        atoms.dedup_by(|next, kept| {
            if next.location == kept.location {
                kept.weight += next.weight;
                true
            } else {
                false
            }
        });
        Ok(Self { atoms, clipped })
    }

    /// Real atoms from `(location, weight)` pairs; negative weights are rejected.
    pub fn from_real(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(x, w)| Atom::real(x, w)).collect(), 0.0)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn mass(&self) -> f64 {
        crate::numeric::compensated_sum(self.atoms.iter().map(|a| a.weight))
    }

    /// Total negative weight removed on construction.
    pub fn clipped(&self) -> f64 {
        self.clipped
    }

    pub fn is_real(&self) -> bool {
        self.atoms.iter().all(|a| a.location.im == 0.0)
    }

    /// Same atoms, weights divided by the total mass.
    pub fn normalized(&self) -> Self {
        let mass = self.mass();
        Self {
            atoms: self.atoms.iter().map(|a| Atom { weight: a.weight / mass, ..*a }).collect(),
            clipped: self.clipped / mass,
        }
    }

    /// Pushes every atom through `f` (weights unchanged).
    pub fn map_locations<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Result<Self> {
        let atoms = self.atoms.iter().map(|a| Atom { location: f(a.location), ..*a }).collect();
        let mut out = Self::new(atoms, 0.0)?;
        out.clipped = self.clipped;
        Ok(out)
    }

    /// `max_k |Σ w_i x_i^k - m_k|` over the moments of `m`.
    pub fn moment_mismatch(&self, m: &MomentSequence) -> f64 {
        let own = raw_moments(self, m.order());
        own.iter()
            .zip(m.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn raw_moments(measure: &DiscreteMeasure, order: usize) -> Vec<Complex64> {
    let mut sums = alloc::vec![ComplexCompensated::default(); order + 1];
    for atom in measure.atoms() {
        let mut power = Complex64::new(1.0, 0.0);
        for (k, acc) in sums.iter_mut().enumerate() {
            if k > 0 {
                power *= atom.location;
            }
            acc.add(power * atom.weight);
        }
    }
    sums.iter().map(|s| s.value()).collect()
}

/// Exact discrete-sum moments `m_k = Σ w_i loc_i^k`, `k = 0..=order`.
pub fn moments_of(measure: &DiscreteMeasure, order: usize) -> Result<MomentSequence> {
    let mut values = raw_moments(measure, order);
    values[0].im = 0.0;
    let domain = if measure.is_real() {
        let lo = measure.atoms().first().map_or(0.0, |a| a.location.re);
        let hi = measure.atoms().last().map_or(0.0, |a| a.location.re);
        if lo >= 0.0 && hi <= 1.0 {
            Domain::UnitInterval
        } else {
            Domain::SymmetricInterval { half_width: lo.abs().max(hi.abs()) }
        }
    } else {
        let radius = measure.atoms().iter().map(|a| a.location.norm()).fold(0.0, f64::max);
        Domain::Circle { radius: if radius > 0.0 { radius } else { 1.0 } }
    };
    MomentSequence::new(values, domain)
}

fn unit_values(m: &MomentSequence) -> Result<Vec<f64>> {
    if m.domain() != Domain::UnitInterval {
        return Err(Error::WrongDomain { expected: "unit interval" });
    }
    m.real_values().ok_or(Error::ComplexMoments)
}

/// Atoms at `j/N` with weights `w_j = C(N, j) (-1)^{N-j} (Δ^{N-j} m)_j`.
///
/// The weights telescope to `m_0` and are nonnegative exactly when the
/// sequence is completely monotonic up to order `N`.
pub fn bernstein_reconstruct(m: &MomentSequence, order: usize, tol: f64) -> Result<DiscreteMeasure> {
    unit_values(m)?;
    if order == 0 {
        return Err(Error::InvalidArgument("reconstruction order must be positive"));
    }
    let table = difference_table(&m.truncated(order)?)?;
    let mut atoms = Vec::with_capacity(order + 1);
    for j in 0..=order {
        let k = order - j;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let weight = binomial(order, j) * sign * table.get(k, j);
        if weight < -tol {
            return Err(Error::NegativeWeight { index: j, weight });
        }
        atoms.push(Atom::real(j as f64 / order as f64, weight));
    }
    DiscreteMeasure::new(atoms, tol)
}

fn big_binomial(n: usize, k: usize) -> BigInt {
    let mut c = BigInt::from(1u8);
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// Bernstein weights over exact rationals; usable at orders where the
/// floating-point table has lost every digit.
pub fn bernstein_weights_exact(m: &[BigRational], order: usize) -> Result<Vec<BigRational>> {
    if order == 0 {
        return Err(Error::InvalidArgument("reconstruction order must be positive"));
    }
    if order >= m.len() {
        return Err(Error::OrderTooLarge { requested: order, available: m.len().saturating_sub(1) });
    }
    let table = exact_difference_table(&m[..=order])?;
    Ok((0..=order)
        .map(|j| {
            let k = order - j;
            let d = table.get(k, j) * BigRational::from_integer(big_binomial(order, j));
            if k % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect())
}

pub fn bernstein_reconstruct_exact(m: &[BigRational], order: usize) -> Result<DiscreteMeasure> {
    let weights = bernstein_weights_exact(m, order)?;
    let mut atoms = Vec::with_capacity(weights.len());
    for (j, w) in weights.iter().enumerate() {
        let weight = w.to_f64().unwrap_or(f64::NAN);
        if w.is_negative() {
            return Err(Error::NegativeWeight { index: j, weight });
        }
        atoms.push(Atom::real(j as f64 / order as f64, weight));
    }
    DiscreteMeasure::new(atoms, 0.0)
}

/// Polynomial density on `[0, 1]` from its shifted-Legendre expansion of the
/// given degree, clipped at zero and discretized to `cells` midpoint atoms.
///
/// The unclipped density reproduces `m_0..m_degree` exactly; clipping the
/// negative lobes is what makes it a measure.
pub fn legendre_reconstruct(m: &MomentSequence, degree: usize, cells: usize) -> Result<DiscreteMeasure> {
    let values = unit_values(m)?;
    if cells == 0 {
        return Err(Error::InvalidArgument("cell count must be positive"));
    }
    if degree > m.order() {
        return Err(Error::OrderTooLarge { requested: degree, available: m.order() });
    }
    let degree = degree.min(LEGENDRE_MAX_DEGREE);
    // P~_j(y) = Σ_r (-1)^{j+r} C(j, r) C(j+r, r) y^r
    let coefficients: Vec<f64> = (0..=degree)
        .map(|j| {
            let mut acc = Compensated::default();
            for (r, &v) in values.iter().enumerate().take(j + 1) {
                let sign = if (j + r) % 2 == 0 { 1.0 } else { -1.0 };
                acc.add(sign * binomial(j, r) * binomial(j + r, r) * v);
            }
            (2 * j + 1) as f64 * acc.value()
        })
        .collect();

    let width = 1.0 / cells as f64;
    let mut clipped = 0.0;
    let mut atoms = Vec::with_capacity(cells);
    for c in 0..cells {
        let y = (c as f64 + 0.5) * width;
        let t = 2.0 * y - 1.0;
        let (mut prev, mut cur) = (1.0, t);
        let mut density = coefficients[0];
        if degree >= 1 {
            density += coefficients[1] * t;
        }
        for (j, &c_next) in coefficients.iter().enumerate().skip(2) {
            let k = (j - 1) as f64;
            let next = ((2.0 * k + 1.0) * t * cur - k * prev) / (k + 1.0);
            prev = cur;
            cur = next;
            density += c_next * next;
        }
        if density < 0.0 {
            clipped -= density * width;
        }
        atoms.push(Atom::real(y, density.max(0.0) * width));
    }
    let total: f64 = crate::numeric::compensated_sum(atoms.iter().map(|a| a.weight));
    if !(total > 0.0) {
        return Err(Error::EmptyMeasure);
    }
    let scale = m.mass() / total;
    atoms.iter_mut().for_each(|a| a.weight *= scale);
    let mut measure = DiscreteMeasure::new(atoms, 0.0)?;
    measure.clipped = clipped;
    Ok(measure)
}

/// Reconstruction method for moments on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reconstruction {
    Bernstein,
    Legendre,
    /// Both candidates; keeps the one whose moments fit the input best
    /// (Bernstein on ties).
    Auto,
}

impl Reconstruction {
    pub fn name(&self) -> &'static str {
        match self {
            Reconstruction::Bernstein => "bernstein",
            Reconstruction::Legendre => "legendre",
            Reconstruction::Auto => "auto",
        }
    }
}

/// Reconstructs at the given order and reports the method actually used.
pub fn reconstruct(
    m: &MomentSequence,
    order: usize,
    method: Reconstruction,
    tol: f64,
) -> Result<(DiscreteMeasure, Reconstruction)> {
    match method {
        Reconstruction::Bernstein => Ok((bernstein_reconstruct(m, order, tol)?, method)),
        Reconstruction::Legendre => {
            Ok((legendre_reconstruct(m, order, DEFAULT_LEGENDRE_CELLS)?, method))
        }
        Reconstruction::Auto => {
            let target = m.truncated(order)?;
            let legendre = legendre_reconstruct(m, order, DEFAULT_LEGENDRE_CELLS)?;
            match bernstein_reconstruct(m, order, tol) {
                Ok(bernstein)
                    if bernstein.moment_mismatch(&target) <= legendre.moment_mismatch(&target) =>
                {
                    Ok((bernstein, Reconstruction::Bernstein))
                }
                _ => Ok((legendre, Reconstruction::Legendre)),
            }
        }
    }
}

/// Monotone symbol `k` sampled on the grid `x_j = j / N`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantileSymbol {
    grid: Vec<f64>,
    values: Vec<f64>,
}

impl QuantileSymbol {
    /// Values on the equispaced grid `j / (len - 1)`; must be non-decreasing.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidArgument("a symbol needs at least two grid points"));
        }
        if values.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(Error::InvalidArgument("symbol values must be non-decreasing"));
        }
        let n = values.len() - 1;
        let grid = (0..=n).map(|j| j as f64 / n as f64).collect();
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `max |k(x_j) - f(x_j)|` over grid points inside `[lo, hi]`.
    pub fn sup_distance<F: Fn(f64) -> f64>(&self, f: F, lo: f64, hi: f64) -> f64 {
        self.grid
            .iter()
            .zip(&self.values)
            .filter(|(x, _)| **x >= lo && **x <= hi)
            .map(|(&x, &v)| (v - f(x)).abs())
            .fold(0.0, f64::max)
    }
}

/// Generalized inverse of the cumulative weight function on `x_j = j/N`.
///
/// `k(x) = inf { t : CDF(t) > x }` with the right-continuous CDF, and
/// `k(1)` is the largest support point. The result is non-decreasing.
pub fn quantile_symbol(measure: &DiscreteMeasure, grid: usize) -> Result<QuantileSymbol> {
    if grid == 0 {
        return Err(Error::InvalidArgument("grid size must be positive"));
    }
    if !measure.is_real() {
        return Err(Error::ComplexSupport);
    }
    let mass = measure.mass();
    if (mass - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized(mass));
    }
    let support: Vec<&Atom> = measure.atoms().iter().filter(|a| a.weight > 0.0).collect();
    let mut acc = Compensated::default();
    let cumulative: Vec<f64> = support
        .iter()
        .map(|a| {
            acc.add(a.weight);
            acc.value()
        })
        .collect();
    let last = support.len() - 1;
    let values = (0..=grid)
        .map(|j| {
            let x = j as f64 / grid as f64;
            let idx = cumulative.partition_point(|&c| c <= x).min(last);
            support[idx].location.re
        })
        .collect();
    QuantileSymbol::from_values(values)
}

/// Trapezoidal quadrature of `F ∘ k` over `[0, 1]`.
pub fn symbol_ergodic_average<F: Fn(f64) -> f64>(sym: &QuantileSymbol, f: F) -> f64 {
    let mut acc = Compensated::default();
    for (x, v) in sym.grid.windows(2).zip(sym.values.windows(2)) {
        acc.add(0.5 * (x[1] - x[0]) * (f(v[0]) + f(v[1])));
    }
    acc.value()
}
