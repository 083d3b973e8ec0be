//! Eigenvalue families `{λ_{i,n}}`, their normalized power traces, and the
//! end-to-end symbol pipelines.
//!
//! A Hermitian family with uniformly bounded spectra admits a spectral
//! symbol exactly when every average `(1/n) Tr(A_n^k)` converges. The
//! limits are moments on `[-M, M]`; rescaled to `[0, 1]` they must be
//! completely monotonic, and the reconstructed measure yields a monotone
//! symbol through its quantile function. Families of constant modulus go
//! through the Toeplitz route instead.
//!
//! Limits are never observed directly: convergence is judged by a windowed
//! Cauchy criterion over the largest members, and every verdict says which
//! orders it covers.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::circle::{
    ergodic_check, fejer_density, summability_diagnostic, toeplitz_psd_test, AngleSample,
    CircleMoments, DensityGrid, ErgodicReport, PsdVerdict, Summation, SummabilityReport,
    CONJUGATE_MISMATCH_TOL, MIN_SUMMABILITY_MOMENTS,
};
use crate::moments::{
    default_tolerance, is_completely_monotonic, rescale_to_unit_interval, Domain, MomentSequence,
    MonotonicityVerdict,
};
use crate::numeric::{cmp_complex, ComplexCompensated};
use crate::reconstruct::{quantile_symbol, reconstruct, DiscreteMeasure, QuantileSymbol, Reconstruction};
use crate::{Error, Result};

/// Relative tolerance on `|λ|` for constant-modulus families.
pub const MODULUS_SPREAD_TOL: f64 = 1e-6;

/// Relative margin added to `max |λ|` when it is used as the bound `M`.
pub const HALF_WIDTH_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    HermitianReal,
    ConstantModulus,
    General,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::HermitianReal => "hermitian-real",
            FamilyKind::ConstantModulus => "constant-modulus",
            FamilyKind::General => "general",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyMember {
    pub n: usize,
    pub eigenvalues: Vec<Complex64>,
}

/// Members ordered by strictly increasing size `n`, each with `n` eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueFamily {
    kind: FamilyKind,
    members: Vec<FamilyMember>,
}

impl EigenvalueFamily {
    pub fn new(kind: FamilyKind, members: Vec<FamilyMember>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::TooFewMembers { have: 0, need: 1 });
        }
        for (index, m) in members.iter().enumerate() {
            if m.n == 0 || (index > 0 && m.n <= members[index - 1].n) {
                return Err(Error::SizesNotIncreasing { index });
            }
            if m.eigenvalues.len() != m.n {
                return Err(Error::WrongEigenvalueCount { index, found: m.eigenvalues.len(), expected: m.n });
            }
            if m.eigenvalues.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::InvalidArgument("eigenvalues must be finite"));
            }
            if kind == FamilyKind::HermitianReal && m.eigenvalues.iter().any(|z| z.im != 0.0) {
                return Err(Error::NonRealEigenvalue { index });
            }
        }
        Ok(Self { kind, members })
    }

    /// Hermitian family from real spectra; `n` is taken from each list's length.
    pub fn from_real(spectra: Vec<Vec<f64>>) -> Result<Self> {
        let members = spectra
            .into_iter()
            .map(|v| FamilyMember {
                n: v.len(),
                eigenvalues: v.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
            })
            .collect();
        Self::new(FamilyKind::HermitianReal, members)
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn members(&self) -> &[FamilyMember] {
        &self.members
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(|m| m.n).collect()
    }

    /// `max_i |λ_{i,n}|` for each member.
    pub fn member_max_modulus(&self) -> Vec<f64> {
        self.members
            .iter()
            .map(|m| m.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max))
            .collect()
    }

    pub fn max_modulus(&self) -> f64 {
        self.member_max_modulus().into_iter().fold(0.0, f64::max)
    }

    /// Median of `|λ|` over the largest member.
    pub fn median_modulus(&self) -> f64 {
        let last = self.members.last().expect("families are nonempty");
        let mut moduli: Vec<f64> = last.eigenvalues.iter().map(|z| z.norm()).collect();
        moduli.sort_by(f64::total_cmp);
        let mid = moduli.len() / 2;
        if moduli.len() % 2 == 1 {
            moduli[mid]
        } else {
            0.5 * (moduli[mid - 1] + moduli[mid])
        }
    }

    /// `max | |λ| / c - 1 |` over every eigenvalue of every member.
    pub fn modulus_spread(&self, c: f64) -> f64 {
        self.members
            .iter()
            .flat_map(|m| m.eigenvalues.iter())
            .map(|z| (z.norm() / c - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Arguments `x_{i,n} = arg λ_{i,n} ∈ (-π, π]`.
    pub fn angles(&self) -> Vec<AngleSample> {
        self.members
            .iter()
            .map(|m| AngleSample { n: m.n, angles: m.eigenvalues.iter().map(|z| z.arg()).collect() })
            .collect()
    }
}

/// Averages `a_{k,n} = (1/n) Σ_i λ_{i,n}^k` for `k = lowest..=highest`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceTable {
    sizes: Vec<usize>,
    lowest: i64,
    rows: Vec<Vec<Complex64>>,
    member_max: Vec<f64>,
}

impl TraceTable {
    /// Table from precomputed averages; `rows[member][k - lowest]`.
    pub fn from_rows(sizes: Vec<usize>, lowest: i64, rows: Vec<Vec<Complex64>>) -> Result<Self> {
        if sizes.len() != rows.len() || rows.is_empty() {
            return Err(Error::InvalidArgument("one row of averages per member is required"));
        }
        let width = rows[0].len();
        if width == 0 || rows.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidArgument("rows must share a nonzero width"));
        }
        let member_max = alloc::vec![f64::NAN; sizes.len()];
        Ok(Self { sizes, lowest, rows, member_max })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    pub fn highest(&self) -> i64 {
        self.lowest + self.rows[0].len() as i64 - 1
    }

    /// `a_{k,n}` for member index `member`.
    pub fn average(&self, member: usize, k: i64) -> Complex64 {
        self.rows[member][(k - self.lowest) as usize]
    }

    /// Sequence `a_{k,n}` across members.
    pub fn column(&self, k: i64) -> Vec<Complex64> {
        (0..self.rows.len()).map(|m| self.average(m, k)).collect()
    }

    /// Per-member `max |λ|` (NaN for tables built from raw averages).
    pub fn member_max_modulus(&self) -> &[f64] {
        &self.member_max
    }

    /// True when `max |λ|` grows strictly across at least three members,
    /// the signature of a family whose spectra may not be uniformly bounded.
    pub fn norm_growth(&self) -> bool {
        self.member_max.len() >= 3 && self.member_max.windows(2).all(|w| w[1] > w[0])
    }
}

fn sorted_eigenvalues(m: &FamilyMember) -> Vec<Complex64> {
    let mut v = m.eigenvalues.clone();
    v.sort_by(cmp_complex);
    v
}

fn traces_between(family: &EigenvalueFamily, lowest: i64, highest: i64, radius: f64) -> Result<TraceTable> {
    let mut rows = Vec::with_capacity(family.members.len());
    for (index, member) in family.members.iter().enumerate() {
        let eigs = sorted_eigenvalues(member);
        if lowest < 0 && eigs.iter().any(|z| z.norm() == 0.0) {
            return Err(Error::ZeroEigenvalue { member: index });
        }
        let width = (highest - lowest + 1) as usize;
        let mut sums = alloc::vec![ComplexCompensated::default(); width];
        let r2 = radius * radius;
        for &z in &eigs {
            let mut up = Complex64::new(1.0, 0.0);
            for k in 0..=highest.max(0) {
                if k > 0 {
                    up *= z;
                }
                if k >= lowest {
                    sums[(k - lowest) as usize].add(up);
                }
            }
            // λ^{-1} = conj(λ) / c^2 on the circle of radius c
            let inv = z.conj() / r2;
            let mut down = Complex64::new(1.0, 0.0);
            for k in 1..=(-lowest).max(0) {
                down *= inv;
                sums[(-k - lowest) as usize].add(down);
            }
        }
        let n = member.n as f64;
        rows.push(sums.iter().map(|s| s.value() / n).collect());
    }
    Ok(TraceTable {
        sizes: family.sizes(),
        lowest,
        rows,
        member_max: family.member_max_modulus(),
    })
}

/// `(1/n) Σ_i λ_{i,n}^k` for `k = 0..=order`; two-sided (`-order..=order`)
/// for constant-modulus families, with the median modulus as `c`.
pub fn normalized_power_traces(family: &EigenvalueFamily, order: usize) -> Result<TraceTable> {
    match family.kind {
        FamilyKind::ConstantModulus => two_sided_power_traces(family, order, family.median_modulus()),
        _ => traces_between(family, 0, order as i64, 1.0),
    }
}

/// Two-sided traces with negative powers taken as `conj(λ)^k / c^{2k}`.
pub fn two_sided_power_traces(family: &EigenvalueFamily, order: usize, radius: f64) -> Result<TraceTable> {
    if !(radius > 0.0) {
        return Err(Error::NonPositiveRadius(radius));
    }
    traces_between(family, -(order as i64), order as i64, radius)
}

/// Traces of Hermitian matrices via their eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianTraces {
    pub traces: TraceTable,
    pub family: EigenvalueFamily,
    /// `max |λ|` across the whole family.
    pub max_modulus: f64,
    /// `max ||A v - λ v|| / ||A||` over eigenpairs of the largest member.
    pub residual: f64,
}

pub fn hermitian_traces_from_matrices(matrices: &[DMatrix<Complex64>], order: usize) -> Result<HermitianTraces> {
    let mut members = Vec::with_capacity(matrices.len());
    let mut residual = 0.0;
    for (index, a) in matrices.iter().enumerate() {
        if !a.is_square() {
            return Err(Error::NotSquare { matrix: index });
        }
        let n = a.nrows();
        let mut worst = (0.0, 0, 0);
        for i in 0..n {
            for j in i..n {
                let dev = (a[(i, j)] - a[(j, i)].conj()).norm();
                if dev > worst.0 {
                    worst = (dev, i, j);
                }
            }
        }
        if worst.0 > 1e-10 {
            return Err(Error::NotHermitian { matrix: index, row: worst.1, col: worst.2, deviation: worst.0 });
        }
        let eig = a.clone().symmetric_eigen();
        if index + 1 == matrices.len() {
            let norm = a.norm();
            for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
                let v = eig.eigenvectors.column(k);
                let r = (a * v - v * Complex64::new(lambda, 0.0)).norm();
                if norm > 0.0 {
                    residual = f64::max(residual, r / norm);
                }
            }
            if residual > 1e-8 {
                return Err(Error::EigenResidual { residual });
            }
        }
        members.push(FamilyMember {
            n,
            eigenvalues: eig.eigenvalues.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        });
    }
    let family = EigenvalueFamily::new(FamilyKind::HermitianReal, members)?;
    let traces = normalized_power_traces(&family, order)?;
    let max_modulus = family.max_modulus();
    Ok(HermitianTraces { traces, family, max_modulus, residual })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderConvergence {
    pub k: i64,
    pub averages: Vec<Complex64>,
    /// Final average, taken as the estimate of the limit.
    pub limit: Complex64,
    /// `max |a_{k,n} - limit|` over the `window` members preceding the last.
    pub residual: f64,
    pub tolerance: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub window: usize,
    pub rows: Vec<OrderConvergence>,
    pub converged: bool,
}

impl ConvergenceReport {
    /// Lowest `|k|` (non-negative first) whose averages did not settle.
    pub fn first_unconverged(&self) -> Option<i64> {
        self.rows
            .iter()
            .filter(|r| !r.converged)
            .map(|r| r.k)
            .min_by_key(|&k| (k.unsigned_abs(), k < 0))
    }

    pub fn limit(&self, k: i64) -> Option<Complex64> {
        self.rows.iter().find(|r| r.k == k).map(|r| r.limit)
    }

    /// Highest order `K` such that every `|k| <= K` row is present.
    pub fn order(&self) -> usize {
        self.rows.iter().map(|r| r.k.unsigned_abs() as usize).max().unwrap_or(0)
    }
}

/// Default Cauchy tolerance `1e-3 (1 + |h_k|)`.
pub fn default_ctol(limit: Complex64) -> f64 {
    1e-3 * (1.0 + limit.norm())
}

/// Windowed Cauchy test on every order of the table.
pub fn convergence_report(traces: &TraceTable, window: usize, ctol: Option<f64>) -> Result<ConvergenceReport> {
    let members = traces.sizes.len();
    if window == 0 {
        return Err(Error::InvalidArgument("window must be positive"));
    }
    if members < window + 1 {
        return Err(Error::TooFewMembers { have: members, need: window + 1 });
    }
    let rows: Vec<OrderConvergence> = (traces.lowest()..=traces.highest())
        .map(|k| {
            let averages = traces.column(k);
            let limit = averages[members - 1];
            let residual = averages[members - 1 - window..members - 1]
                .iter()
                .map(|a| (a - limit).norm())
                .fold(0.0, f64::max);
            let tolerance = ctol.unwrap_or_else(|| default_ctol(limit));
            OrderConvergence { k, averages, limit, residual, tolerance, converged: residual <= tolerance }
        })
        .collect();
    let converged = rows.iter().all(|r| r.converged);
    Ok(ConvergenceReport { window, rows, converged })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymbolOptions {
    pub window: usize,
    /// `None` selects `1e-3 (1 + |h_k|)` per order.
    pub ctol: Option<f64>,
    pub method: Reconstruction,
    /// Complete-monotonicity tolerance; `None` selects `1e-10 max |l_k|`.
    pub cm_tol: Option<f64>,
    /// Known bound `M`; must dominate every `|λ|`.
    pub half_width: Option<f64>,
}

impl Default for SymbolOptions {
    fn default() -> Self {
        Self { window: 3, ctol: None, method: Reconstruction::Auto, cm_tol: None, half_width: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymbolEstimate {
    pub symbol: QuantileSymbol,
    pub report: ConvergenceReport,
    /// Bound `M` with every `|λ| <= M`.
    pub half_width: f64,
    /// Limits `h_k` rescaled to `[0, 1]`.
    pub unit_moments: MomentSequence,
    pub monotonicity: MonotonicityVerdict,
    /// Reconstructed measure on `[-M, M]`, unit mass.
    pub measure: DiscreteMeasure,
    pub method: Reconstruction,
    pub norm_growth: bool,
}

/// Traces → limits `h_k` → rescale to `[0, 1]` → complete-monotonicity gate
/// → reconstruction → pull back by `x = 2My - M` → quantile symbol.
pub fn estimate_symbol(
    family: &EigenvalueFamily,
    order: usize,
    grid: usize,
    options: &SymbolOptions,
) -> Result<SymbolEstimate> {
    if family.kind() != FamilyKind::HermitianReal {
        return Err(Error::KindMismatch { expected: "hermitian-real" });
    }
    if order == 0 {
        return Err(Error::InvalidArgument("order must be positive"));
    }
    let traces = normalized_power_traces(family, order)?;
    let report = convergence_report(&traces, options.window, options.ctol)?;
    if let Some(k) = report.first_unconverged() {
        return Err(Error::NotConverged { order: k });
    }

    let max = family.max_modulus();
    let half_width = match options.half_width {
        Some(m) if !(m > 0.0) => return Err(Error::NonPositiveHalfWidth(m)),
        Some(m) if m < max => return Err(Error::InvalidArgument("supplied bound M is below max |λ|")),
        Some(m) => m,
        None if max > 0.0 => max * (1.0 + HALF_WIDTH_MARGIN),
        None => 1.0,
    };
    let h: Vec<f64> = report.rows.iter().map(|r| r.limit.re).collect();
    let h = MomentSequence::from_real(&h, Domain::SymmetricInterval { half_width })?;
    let unit_moments = rescale_to_unit_interval(&h)?;

    let tol = options.cm_tol.unwrap_or_else(|| default_tolerance(&unit_moments));
    let monotonicity = is_completely_monotonic(&unit_moments, tol)?;
    if let Some((k, n)) = monotonicity.witness {
        return Err(Error::NotCompletelyMonotonic { k, n, value: monotonicity.worst_violation });
    }

    let (unit_measure, method) = reconstruct(&unit_moments, order, options.method, tol)?;
    let measure = unit_measure
        .map_locations(|y| Complex64::new(half_width * (2.0 * y.re - 1.0), 0.0))?
        .normalized();
    let symbol = quantile_symbol(&measure, grid)?;
    Ok(SymbolEstimate {
        symbol,
        norm_growth: traces.norm_growth(),
        report,
        half_width,
        unit_moments,
        monotonicity,
        measure,
        method,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircleOptions {
    pub window: usize,
    pub ctol: Option<f64>,
    /// Known modulus `c`; estimated from the data when absent.
    pub radius: Option<f64>,
    pub grid: usize,
    pub psd_tol: f64,
    pub summation: Summation,
}

impl Default for CircleOptions {
    fn default() -> Self {
        Self {
            window: 3,
            ctol: None,
            radius: None,
            grid: 256,
            psd_tol: 1e-10,
            summation: Summation::Fejer,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircleEstimate {
    pub radius: f64,
    pub modulus_spread: f64,
    pub moments: CircleMoments,
    pub report: ConvergenceReport,
    pub psd: PsdVerdict,
    /// Present only when the Toeplitz test passes.
    pub density: Option<DensityGrid>,
    pub summability: Option<SummabilityReport>,
    pub ergodic: Option<ErgodicReport>,
    /// `max_k |d_{-k} - conj(d_k)|` with `d_{-k}` computed from the data.
    pub conjugate_mismatch: f64,
    pub conjugate_flagged: bool,
}

/// Two-sided traces → `d_k = h_k / c^k` → Toeplitz PSD gate → Fejér density.
pub fn estimate_circle_symbol(
    family: &EigenvalueFamily,
    order: usize,
    options: &CircleOptions,
) -> Result<CircleEstimate> {
    if family.kind() != FamilyKind::ConstantModulus {
        return Err(Error::KindMismatch { expected: "constant-modulus" });
    }
    let radius = options.radius.unwrap_or_else(|| family.median_modulus());
    if !(radius > 0.0) {
        return Err(Error::NonPositiveRadius(radius));
    }
    let modulus_spread = family.modulus_spread(radius);
    if modulus_spread > MODULUS_SPREAD_TOL {
        return Err(Error::ModulusSpread { spread: modulus_spread });
    }
    let traces = two_sided_power_traces(family, order, radius)?;
    let report = convergence_report(&traces, options.window, options.ctol)?;
    if let Some(k) = report.first_unconverged() {
        return Err(Error::NotConverged { order: k });
    }
    let positive: Vec<Complex64> = (0..=order as i64).map(|k| report.limit(k).expect("row")).collect();
    let moments = CircleMoments::from_raw(radius, &positive)?;
    let mut scale = 1.0;
    let negative: Vec<Complex64> = (1..=order as i64)
        .map(|k| {
            scale *= radius;
            // c^{-k} normalization of s_{-k} is multiplication by c^k
            report.limit(-k).expect("row") * scale
        })
        .collect();
    let conjugate_mismatch = moments.negative_index_mismatch(&negative);

    let psd = toeplitz_psd_test(&moments, order + 1, options.psd_tol)?;
    let density = if psd.passed {
        Some(fejer_density(&moments, order, options.grid, options.summation)?)
    } else {
        None
    };
    let summability = if moments.values().len() >= MIN_SUMMABILITY_MOMENTS {
        Some(summability_diagnostic(&moments)?)
    } else {
        None
    };
    let ergodic = if psd.passed {
        let samples: Vec<AngleSample> = family
            .members()
            .iter()
            .map(|m| AngleSample {
                n: m.n,
                angles: m.eigenvalues.iter().map(|z| (z / radius).arg()).collect(),
            })
            .collect();
        Some(ergodic_check(&samples, &moments, order.min(8))?)
    } else {
        None
    };
    Ok(CircleEstimate {
        radius,
        modulus_spread,
        moments,
        report,
        psd,
        density,
        summability,
        ergodic,
        conjugate_mismatch,
        conjugate_flagged: conjugate_mismatch > CONJUGATE_MISMATCH_TOL,
    })
}
