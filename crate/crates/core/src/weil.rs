//! Zeta-function arithmetic for Weil-like systems.
//!
//! A member is a base `q` and `2g` numbers `λ_i`. From them come the
//! point-count-like numbers `N_m = q^m + 1 - Σ λ_i^m`, their Möbius inverses
//! `m B_m = Σ_{d|m} μ(m/d) N_d`, and the polynomial `P(t) = Π (1 - λ_i t)`.
//! All identities between these objects are exact, so exact-form members
//! are handled in `Q(√k)` with arbitrary-precision rationals and compared
//! with zero tolerance. Floating point appears only in limits over a family
//! and in the bound sums.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::numeric::compensated_sum;
use crate::{Error, Result};

/// Largest truncation order accepted by the exact routines.
pub const MAX_ORDER: usize = 50;

/// Largest series order for the three-way expansion of `P(t)`.
pub const MAX_SERIES_ORDER: usize = 30;

/// Modulus tolerance for floating members in [`validate_weil`].
pub const MODULUS_TOL: f64 = 1e-8;

/// `μ(m)` by trial division.
pub fn mobius(m: u64) -> i8 {
    assert!(m >= 1, "the Möbius function is defined for m >= 1");
    let mut m = m;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

fn divisors(m: usize) -> impl Iterator<Item = usize> {
    (1..=m).filter(move |d| m % d == 0)
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Element `r + s√k` of `Q(√k)`; the radicand lives with the member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    pub r: BigRational,
    pub s: BigRational,
}

impl QuadElem {
    pub fn new(r: BigRational, s: BigRational) -> Self {
        Self { r, s }
    }

    pub fn rational(r: BigRational) -> Self {
        Self { r, s: BigRational::zero() }
    }

    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn is_rational(&self) -> bool {
        self.s.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.s.is_zero() && self.r.is_integer()
    }

    /// Image under `√k -> -√k`.
    pub fn conj(&self) -> Self {
        Self { r: self.r.clone(), s: -self.s.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { r: &self.r + &other.r, s: &self.s + &other.s }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { r: &self.r - &other.r, s: &self.s - &other.s }
    }

    pub fn mul(&self, other: &Self, k: i64) -> Self {
        let k = rational(k);
        Self {
            r: &self.r * &other.r + k * &self.s * &other.s,
            s: &self.r * &other.s + &self.s * &other.r,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { r: &self.r * c, s: &self.s * c }
    }

    pub fn to_complex(&self, k: i64) -> Complex64 {
        let (r, s) = (to_f64(&self.r), to_f64(&self.s));
        let root = Float::sqrt(k.unsigned_abs() as f64);
        if k >= 0 {
            Complex64::new(r + s * root, 0.0)
        } else {
            Complex64::new(r, s * root)
        }
    }
}

/// Square-free part `k0` and cofactor `f` with `k = f^2 k0`.
fn square_free(k: i64) -> (i64, i64) {
    if k == 0 {
        return (0, 0);
    }
    let mut rest = k.unsigned_abs();
    let mut f = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            f *= p;
        }
        p += 1;
    }
    (k.signum() * rest as i64, f as i64)
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeilRoots {
    /// Roots in `Q(√k)` sharing one square-free radicand.
    Exact { radicand: i64, roots: Vec<QuadElem> },
    Float(Vec<Complex64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeilMember {
    q: i64,
    roots: WeilRoots,
}

impl WeilMember {
    /// Exact member from triples `(r, s, k)` meaning `r + s√k`.
    ///
    /// Radicands are reduced to their square-free part; perfect squares fold
    /// into `r`. All irrational roots must end up on the same radicand.
    pub fn exact(q: i64, triples: Vec<(BigRational, BigRational, i64)>) -> Result<Self> {
        check_base(q)?;
        check_even(triples.len())?;
        let mut radicand: Option<i64> = None;
        let mut roots = Vec::with_capacity(triples.len());
        for (r, s, k) in triples {
            let (k0, f) = square_free(k);
            let s = s * rational(f);
            if k0 == 1 || k0 == 0 || s.is_zero() {
                let r = if k0 == 1 { r + s } else { r };
                roots.push(QuadElem::rational(r));
                continue;
            }
            match radicand {
                Some(existing) if existing != k0 => return Err(Error::MixedRadicand(existing, k0)),
                _ => radicand = Some(k0),
            }
            roots.push(QuadElem::new(r, s));
        }
        Ok(Self { q, roots: WeilRoots::Exact { radicand: radicand.unwrap_or(1), roots } })
    }

    /// Exact member with integer parts `(r, s, k)`.
    pub fn exact_integers(q: i64, triples: &[(i64, i64, i64)]) -> Result<Self> {
        Self::exact(q, triples.iter().map(|&(r, s, k)| (rational(r), rational(s), k)).collect())
    }

    pub fn float(q: i64, roots: Vec<Complex64>) -> Result<Self> {
        check_base(q)?;
        check_even(roots.len())?;
        if roots.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("roots must be finite"));
        }
        Ok(Self { q, roots: WeilRoots::Float(roots) })
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn genus(&self) -> usize {
        self.len() / 2
    }

    pub fn len(&self) -> usize {
        match &self.roots {
            WeilRoots::Exact { roots, .. } => roots.len(),
            WeilRoots::Float(roots) => roots.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn roots(&self) -> &WeilRoots {
        &self.roots
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.roots, WeilRoots::Exact { .. })
    }

    pub fn complex_roots(&self) -> Vec<Complex64> {
        match &self.roots {
            WeilRoots::Exact { radicand, roots } => roots.iter().map(|z| z.to_complex(*radicand)).collect(),
            WeilRoots::Float(roots) => roots.clone(),
        }
    }

    /// True when the multiset of exact roots is fixed by `√k -> -√k`.
    pub fn conjugate_closed(&self) -> bool {
        match &self.roots {
            WeilRoots::Exact { roots, .. } => {
                let mut a = roots.clone();
                let mut b: Vec<QuadElem> = roots.iter().map(QuadElem::conj).collect();
                let key = |z: &QuadElem| (z.r.clone(), z.s.clone());
                a.sort_by_key(key);
                b.sort_by_key(key);
                a == b
            }
            WeilRoots::Float(_) => false,
        }
    }
}

fn check_base(q: i64) -> Result<()> {
    if q < 1 {
        return Err(Error::InvalidBase(format!("{q}: the base must be a positive integer")));
    }
    Ok(())
}

fn check_even(len: usize) -> Result<()> {
    if len % 2 == 1 {
        return Err(Error::InvalidArgument("a genus-g member has exactly 2g roots"));
    }
    Ok(())
}

fn check_order(t: usize, available: usize) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidArgument("truncation order must be positive"));
    }
    if t > available {
        return Err(Error::OrderTooLarge { requested: t, available });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeilValidation {
    /// Every `|λ_i| = √q`, exactly for exact members, within [`MODULUS_TOL`] otherwise.
    pub modulus_ok: bool,
    pub max_modulus_deviation: f64,
    /// Real roots appearing with odd multiplicity (a warning only).
    pub odd_real_roots: Vec<Complex64>,
}

impl WeilValidation {
    pub fn is_genuine(&self) -> bool {
        self.modulus_ok && self.odd_real_roots.is_empty()
    }
}

pub fn validate_weil(member: &WeilMember) -> WeilValidation {
    let root_q = Float::sqrt(member.q as f64);
    let complex = member.complex_roots();
    let max_modulus_deviation = complex.iter().map(|z| (z.norm() - root_q).abs()).fold(0.0, f64::max);
    match &member.roots {
        WeilRoots::Exact { radicand, roots } => {
            let q = rational(member.q);
            let k = rational(*radicand);
            let modulus_ok = roots.iter().all(|z| {
                if *radicand < 0 {
                    &z.r * &z.r - &k * &z.s * &z.s == q
                } else {
                    let sq = z.mul(z, *radicand);
                    sq.s.is_zero() && sq.r == q
                }
            });
            let mut odd = Vec::new();
            let real: Vec<&QuadElem> = roots.iter().filter(|z| *radicand > 0 || z.s.is_zero()).collect();
            for (i, z) in real.iter().enumerate() {
                if real[..i].contains(z) {
                    continue;
                }
                if real.iter().filter(|w| *w == z).count() % 2 == 1 {
                    odd.push(z.to_complex(*radicand));
                }
            }
            WeilValidation { modulus_ok, max_modulus_deviation, odd_real_roots: odd }
        }
        WeilRoots::Float(roots) => {
            let mut real: Vec<f64> = roots.iter().filter(|z| z.im.abs() <= MODULUS_TOL).map(|z| z.re).collect();
            real.sort_by(f64::total_cmp);
            let mut odd = Vec::new();
            let mut i = 0;
            while i < real.len() {
                let mut j = i + 1;
                while j < real.len() && real[j] - real[i] <= MODULUS_TOL {
                    j += 1;
                }
                if (j - i) % 2 == 1 {
                    odd.push(Complex64::new(real[i], 0.0));
                }
                i = j;
            }
            WeilValidation {
                modulus_ok: max_modulus_deviation <= MODULUS_TOL,
                max_modulus_deviation,
                odd_real_roots: odd,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PowerSums {
    /// `p_1..p_T` in `Q(√k)`; rational whenever the roots are conjugate closed.
    Exact { radicand: i64, values: Vec<QuadElem>, conjugate_closed: bool },
    Float(Vec<Complex64>),
}

impl PowerSums {
    pub fn to_complex(&self) -> Vec<Complex64> {
        match self {
            PowerSums::Exact { radicand, values, .. } => values.iter().map(|z| z.to_complex(*radicand)).collect(),
            PowerSums::Float(values) => values.clone(),
        }
    }

    /// True when every value is an exact integer.
    pub fn integral(&self) -> bool {
        match self {
            PowerSums::Exact { values, .. } => values.iter().all(QuadElem::is_integer),
            PowerSums::Float(_) => false,
        }
    }
}

/// `p_m = Σ_i λ_i^m` for `m = 1..=t`.
pub fn power_sums(member: &WeilMember, t: usize) -> Result<PowerSums> {
    check_order(t, MAX_ORDER)?;
    match &member.roots {
        WeilRoots::Exact { radicand, roots } => {
            let mut values = vec![QuadElem::zero(); t];
            for z in roots {
                let mut power = QuadElem::one();
                for v in values.iter_mut() {
                    power = power.mul(z, *radicand);
                    *v = v.add(&power);
                }
            }
            Ok(PowerSums::Exact { radicand: *radicand, values, conjugate_closed: member.conjugate_closed() })
        }
        WeilRoots::Float(roots) => {
            let mut sorted = roots.clone();
            sorted.sort_by(crate::numeric::cmp_complex);
            let values = (1..=t as i32)
                .map(|m| {
                    let re = compensated_sum(sorted.iter().map(|z| z.powi(m).re));
                    let im = compensated_sum(sorted.iter().map(|z| z.powi(m).im));
                    Complex64::new(re, im)
                })
                .collect();
            Ok(PowerSums::Float(values))
        }
    }
}

fn pow_big(q: i64, m: usize) -> BigInt {
    num_traits::pow(BigInt::from(q), m)
}

/// `N_m = q^m + 1 - p_m` for `m = 1..=t`, exactly.
///
/// Requires an exact member whose roots are closed under conjugation, so
/// that every `p_m` is rational.
pub fn compute_n(member: &WeilMember, t: usize) -> Result<Vec<BigRational>> {
    let sums = power_sums(member, t)?;
    let PowerSums::Exact { values, conjugate_closed, .. } = sums else {
        return Err(Error::InexactMember);
    };
    if !conjugate_closed || values.iter().any(|p| !p.is_rational()) {
        return Err(Error::NotConjugateClosed);
    }
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(i, p)| BigRational::from_integer(pow_big(member.q, i + 1) + 1) - p.r)
        .collect())
}

/// `N_m` and their Möbius inverses `B_m`, indexed from `m = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaNumbers {
    pub n: Vec<BigRational>,
    pub b: Vec<BigRational>,
}

impl ZetaNumbers {
    pub fn order(&self) -> usize {
        self.n.len()
    }

    pub fn n_integral(&self) -> bool {
        self.n.iter().all(|x| x.is_integer())
    }

    /// Orders `m` whose `B_m` is not an integer.
    pub fn non_integral_b(&self) -> Vec<usize> {
        self.b.iter().enumerate().filter(|(_, b)| !b.is_integer()).map(|(i, _)| i + 1).collect()
    }
}

/// `Σ_{d|m} d B_d` for `m = 1..=len`.
pub fn divisor_sums(b: &[BigRational]) -> Vec<BigRational> {
    (1..=b.len())
        .map(|m| divisors(m).fold(BigRational::zero(), |acc, d| acc + rational(d as i64) * &b[d - 1]))
        .collect()
}

/// `B_m = (1/m) Σ_{d|m} μ(m/d) N_d`, with the roundtrip back to `N` checked.
pub fn compute_b(n: &[BigRational]) -> Result<ZetaNumbers> {
    check_order(n.len(), usize::MAX)?;
    let b: Vec<BigRational> = (1..=n.len())
        .map(|m| {
            let sum = divisors(m).fold(BigRational::zero(), |acc, d| {
                acc + rational(mobius((m / d) as u64) as i64) * &n[d - 1]
            });
            sum / rational(m as i64)
        })
        .collect();
    if let Some(index) = divisor_sums(&b).iter().zip(n).position(|(a, b)| a != b) {
        return Err(Error::IdentityMismatch { what: "Möbius roundtrip", index: index + 1 });
    }
    Ok(ZetaNumbers { n: n.to_vec(), b })
}

pub fn zeta_numbers(member: &WeilMember, t: usize) -> Result<ZetaNumbers> {
    compute_b(&compute_n(member, t)?)
}

fn series_mul(a: &[BigRational], b: &[BigRational], t: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); t + 1];
    for (i, x) in a.iter().enumerate().take(t + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(t + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn trivial_factor(q: i64) -> Vec<BigRational> {
    // (1 - t)(1 - q t)
    vec![rational(1), rational(-(q + 1)), rational(q)]
}

/// Coefficients of `P(t)` up to `t^T` computed three ways.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaConsistency {
    pub from_roots: Vec<BigRational>,
    pub from_exp: Vec<BigRational>,
    pub from_product: Vec<BigRational>,
    /// First coefficient index where the expansions disagree.
    pub mismatch: Option<usize>,
}

impl ZetaConsistency {
    pub fn consistent(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Expands `P(t)` as `Π (1 - λ_i t)`, as `(1-t)(1-qt) exp(Σ N_n t^n / n)`,
/// and as `(1-t)(1-qt) Π_{m<=T} (1 - t^m)^{-B_m}`, all exactly.
pub fn zeta_consistency(member: &WeilMember, t: usize) -> Result<ZetaConsistency> {
    check_order(t, MAX_SERIES_ORDER)?;
    let WeilRoots::Exact { radicand, roots } = &member.roots else {
        return Err(Error::InexactMember);
    };
    let numbers = zeta_numbers(member, t)?;

    let mut poly = vec![QuadElem::one()];
    for z in roots {
        let mut next = vec![QuadElem::zero(); (poly.len() + 1).min(t + 1)];
        for (i, c) in poly.iter().enumerate() {
            next[i] = next[i].add(c);
            if i + 1 <= t {
                next[i + 1] = next[i + 1].sub(&c.mul(z, *radicand));
            }
        }
        poly = next;
    }
    if poly.iter().any(|c| !c.is_rational()) {
        return Err(Error::NotConjugateClosed);
    }
    let mut from_roots: Vec<BigRational> = poly.into_iter().map(|c| c.r).collect();
    from_roots.resize(t + 1, BigRational::zero());

    // n E_n = Σ_{j=1}^{n} N_j E_{n-j}
    let mut e = vec![BigRational::one()];
    for n in 1..=t {
        let sum = (1..=n).fold(BigRational::zero(), |acc, j| acc + &numbers.n[j - 1] * &e[n - j]);
        e.push(sum / rational(n as i64));
    }
    let from_exp = series_mul(&trivial_factor(member.q), &e, t);

    let mut product = vec![BigRational::zero(); t + 1];
    product[0] = BigRational::one();
    for m in 1..=t {
        let b = &numbers.b[m - 1];
        if b.is_zero() {
            continue;
        }
        // (1 - x)^{-b} = Σ_j C(b + j - 1, j) x^j with x = t^m
        let mut factor = vec![BigRational::zero(); t + 1];
        let mut c = BigRational::one();
        factor[0] = c.clone();
        for j in 1..=t / m {
            c = c * (b + rational(j as i64 - 1)) / rational(j as i64);
            factor[j * m] = c.clone();
        }
        product = series_mul(&product, &factor, t);
    }
    let from_product = series_mul(&trivial_factor(member.q), &product, t);

    let mismatch = (0..=t).find(|&i| from_roots[i] != from_exp[i] || from_roots[i] != from_product[i]);
    Ok(ZetaConsistency { from_roots, from_exp, from_product, mismatch })
}

/// Limits over a family of growing genus.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyLimits {
    pub genera: Vec<usize>,
    /// `β_m`, the final value of `B_m(X_n) / n`.
    pub beta: Vec<f64>,
    /// `ν_m`, the final value of `(Σ λ_i^m) / n` (signed as computed).
    pub nu: Vec<f64>,
    pub beta_residual: Vec<f64>,
    pub nu_residual: Vec<f64>,
    /// `B_m(X_n) / n` per member.
    pub beta_table: Vec<Vec<f64>>,
    /// `(Σ λ_i^m) / n` per member.
    pub nu_table: Vec<Vec<f64>>,
    /// `|-ν_m - Σ_{d|m} d β_d|`.
    pub identity_gap: Vec<f64>,
    /// Residual budget plus the finite-size term `(q^m + 1) / n`.
    pub identity_tol: Vec<f64>,
    pub converged: bool,
    pub first_unconverged: Option<usize>,
}

impl FamilyLimits {
    pub fn identity_holds(&self) -> bool {
        self.identity_gap.iter().zip(&self.identity_tol).all(|(g, t)| g <= t)
    }
}

fn windowed(column: &[f64], window: usize) -> (f64, f64) {
    let last = column[column.len() - 1];
    let residual = column[column.len() - 1 - window..column.len() - 1]
        .iter()
        .map(|a| (a - last).abs())
        .fold(0.0, f64::max);
    (last, residual)
}

fn limits_from_tables(
    q: i64,
    genera: Vec<usize>,
    n_tables: Vec<Vec<f64>>,
    b_tables: Vec<Vec<f64>>,
    t: usize,
    window: usize,
    ctol: Option<f64>,
) -> Result<FamilyLimits> {
    if window == 0 {
        return Err(Error::InvalidArgument("window must be positive"));
    }
    if genera.len() < window + 1 {
        return Err(Error::TooFewMembers { have: genera.len(), need: window + 1 });
    }
    if let Some(index) = (0..genera.len()).find(|&i| genera[i] == 0 || (i > 0 && genera[i] <= genera[i - 1])) {
        return Err(Error::SizesNotIncreasing { index });
    }
    let qm: Vec<f64> = (1..=t as i32).map(|m| Float::powi(q as f64, m) + 1.0).collect();
    let beta_table: Vec<Vec<f64>> = b_tables
        .iter()
        .zip(&genera)
        .map(|(b, &g)| b.iter().map(|x| x / g as f64).collect())
        .collect();
    let nu_table: Vec<Vec<f64>> = n_tables
        .iter()
        .zip(&genera)
        .map(|(n, &g)| n.iter().zip(&qm).map(|(n, qm)| (qm - n) / g as f64).collect())
        .collect();

    let (mut beta, mut beta_residual, mut nu, mut nu_residual) = (vec![], vec![], vec![], vec![]);
    let mut first_unconverged = None;
    for m in 0..t {
        let (b, rb) = windowed(&beta_table.iter().map(|row| row[m]).collect::<Vec<_>>(), window);
        let (v, rv) = windowed(&nu_table.iter().map(|row| row[m]).collect::<Vec<_>>(), window);
        let ok = rb <= ctol.unwrap_or(1e-3 * (1.0 + b.abs())) && rv <= ctol.unwrap_or(1e-3 * (1.0 + v.abs()));
        if !ok && first_unconverged.is_none() {
            first_unconverged = Some(m + 1);
        }
        beta.push(b);
        beta_residual.push(rb);
        nu.push(v);
        nu_residual.push(rv);
    }

    let g_last = *genera.last().expect("nonempty") as f64;
    let mut identity_gap = Vec::with_capacity(t);
    let mut identity_tol = Vec::with_capacity(t);
    for m in 1..=t {
        let sum = compensated_sum(divisors(m).map(|d| d as f64 * beta[d - 1]));
        let budget = compensated_sum(divisors(m).map(|d| d as f64 * beta_residual[d - 1]));
        identity_gap.push((-nu[m - 1] - sum).abs());
        let scale = nu[m - 1].abs() + sum.abs() + 1.0;
        identity_tol.push(nu_residual[m - 1] + budget + qm[m - 1] / g_last + 1e-12 * scale);
    }
    Ok(FamilyLimits {
        genera,
        beta,
        nu,
        beta_residual,
        nu_residual,
        beta_table,
        nu_table,
        identity_gap,
        identity_tol,
        converged: first_unconverged.is_none(),
        first_unconverged,
    })
}

fn float_numbers(member: &WeilMember, t: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let sums = power_sums(member, t)?.to_complex();
    let n: Vec<f64> = sums.iter().enumerate().map(|(i, p)| Float::powi(member.q as f64, i as i32 + 1) + 1.0 - p.re).collect();
    let b = (1..=t)
        .map(|m| compensated_sum(divisors(m).map(|d| mobius((m / d) as u64) as f64 * n[d - 1])) / m as f64)
        .collect();
    Ok((n, b))
}

/// `β_m` and `ν_m` over members of strictly increasing genus with a shared base.
pub fn family_limits(members: &[WeilMember], t: usize, window: usize, ctol: Option<f64>) -> Result<FamilyLimits> {
    check_order(t, MAX_ORDER)?;
    let q = members.first().map(|m| m.q).ok_or(Error::TooFewMembers { have: 0, need: window + 1 })?;
    if members.iter().any(|m| m.q != q) {
        return Err(Error::InvalidBase(format!("{q}: members must share one base")));
    }
    let mut n_tables = Vec::with_capacity(members.len());
    let mut b_tables = Vec::with_capacity(members.len());
    for member in members {
        let exact = if member.is_exact() && member.conjugate_closed() { zeta_numbers(member, t).ok() } else { None };
        match exact {
            Some(z) => {
                n_tables.push(z.n.iter().map(to_f64).collect());
                b_tables.push(z.b.iter().map(to_f64).collect());
            }
            None => {
                let (n, b) = float_numbers(member, t)?;
                n_tables.push(n);
                b_tables.push(b);
            }
        }
    }
    let genera = members.iter().map(WeilMember::genus).collect();
    limits_from_tables(q, genera, n_tables, b_tables, t, window, ctol)
}

/// Limits from prescribed `B_m(X_n)` tables; `N_m = Σ_{d|m} d B_d` exactly.
pub fn family_limits_from_counts(
    q: i64,
    genera: &[usize],
    b_tables: &[Vec<BigRational>],
    window: usize,
    ctol: Option<f64>,
) -> Result<FamilyLimits> {
    check_base(q)?;
    let t = b_tables.first().map(Vec::len).unwrap_or(0);
    check_order(t, MAX_ORDER)?;
    if b_tables.len() != genera.len() || b_tables.iter().any(|b| b.len() != t) {
        return Err(Error::InvalidArgument("one B table of common length per genus is required"));
    }
    let n_tables = b_tables.iter().map(|b| divisor_sums(b).iter().map(to_f64).collect()).collect();
    let b_f64 = b_tables.iter().map(|b| b.iter().map(to_f64).collect()).collect();
    limits_from_tables(q, genera.to_vec(), n_tables, b_f64, t, window, ctol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundVerdict {
    Within,
    Violated,
}

impl BoundVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            BoundVerdict::Within => "within",
            BoundVerdict::Violated => "violated",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundTerm {
    pub m: usize,
    pub beta: f64,
    /// `m β_m / (q^{m/2} + 1)`.
    pub plus: f64,
    /// `m β_m / (q^{m/2} - 1)`.
    pub minus: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub q: i64,
    pub terms: Vec<BoundTerm>,
    pub plus_sum: f64,
    pub minus_sum: f64,
    /// Driven by the `q^{m/2} - 1` sum; absent when some `β_m < 0`.
    pub verdict: Option<BoundVerdict>,
}

impl BoundCheck {
    pub fn plus_within(&self) -> bool {
        self.plus_sum <= 1.0
    }

    pub fn minus_within(&self) -> bool {
        self.minus_sum <= 1.0
    }
}

/// `q^{m/2}`, exact whenever it is an integer.
fn half_power(q: i64, m: usize) -> f64 {
    let whole = Float::powi(q as f64, (m / 2) as i32);
    if m % 2 == 0 {
        whole
    } else {
        whole * Float::sqrt(q as f64)
    }
}

/// Partial sums of `m β_m / (q^{m/2} ± 1)` over `m <= min(T, len β)`.
pub fn bound_check(beta: &[f64], q: i64, t: usize) -> Result<BoundCheck> {
    if q < 2 {
        return Err(Error::InvalidBase(format!("{q}: the bound needs q >= 2")));
    }
    if beta.iter().any(|b| !b.is_finite()) {
        return Err(Error::InvalidArgument("beta values must be finite"));
    }
    let terms: Vec<BoundTerm> = beta
        .iter()
        .take(t)
        .enumerate()
        .map(|(i, &b)| {
            let m = i + 1;
            let h = half_power(q, m);
            BoundTerm { m, beta: b, plus: m as f64 * b / (h + 1.0), minus: m as f64 * b / (h - 1.0) }
        })
        .collect();
    let plus_sum = compensated_sum(terms.iter().map(|t| t.plus));
    let minus_sum = compensated_sum(terms.iter().map(|t| t.minus));
    let verdict = if terms.iter().any(|t| t.beta < 0.0) {
        None
    } else if minus_sum <= 1.0 {
        Some(BoundVerdict::Within)
    } else {
        Some(BoundVerdict::Violated)
    };
    Ok(BoundCheck { q, terms, plus_sum, minus_sum, verdict })
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeilExample {
    pub k: i64,
    pub a: i64,
    pub member: WeilMember,
    pub numbers: ZetaNumbers,
}

/// `N_m` of the example family in closed form: `a^m + 1` for odd `m`,
/// `a^m + 1 - 2 n k^{m/2}` for even `m`.
pub fn example_closed_form(k: i64, a: i64, n: usize, m: usize) -> BigInt {
    let base = pow_big(a, m) + 1;
    if m % 2 == 1 {
        base
    } else {
        base - BigInt::from(2 * n as i64) * pow_big(k, m / 2)
    }
}

/// Member with roots `λ_i = √k (-1)^i`, `i = 1..=2n`, over base `a`, with
/// its closed forms and the integrality of every `B_m` checked exactly.
pub fn synthesize_example(k: i64, a: i64, n: usize, t: usize) -> Result<WeilExample> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be a positive integer"));
    }
    let triples: Vec<(i64, i64, i64)> = (1..=2 * n).map(|i| (0, if i % 2 == 0 { 1 } else { -1 }, k)).collect();
    let member = WeilMember::exact_integers(a, &triples)?;
    let numbers = zeta_numbers(&member, t)?;
    for (i, value) in numbers.n.iter().enumerate() {
        if *value != BigRational::from_integer(example_closed_form(k, a, n, i + 1)) {
            return Err(Error::IdentityMismatch { what: "closed form of N_m", index: i + 1 });
        }
    }
    if let Some(&m) = numbers.non_integral_b().first() {
        return Err(Error::IdentityMismatch { what: "integrality of B_m", index: m });
    }
    Ok(WeilExample { k, a, member, numbers })
}

/// Exact value as `"p"` or `"p/q"`.
pub fn rational_string(x: &BigRational) -> alloc::string::String {
    if x.is_integer() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `true` when `x` is a nonnegative integer.
pub fn is_natural(x: &BigRational) -> bool {
    x.is_integer() && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(values: &[i64]) -> Vec<BigRational> {
        values.iter().map(|&v| rational(v)).collect()
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(2), -1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(2_147_483_647), -1);
    }

    #[test]
    fn mobius_divisor_sum_vanishes() {
        assert_eq!(divisors(1).map(|d| mobius(d as u64) as i64).sum::<i64>(), 1);
        for m in 2..=10_000usize {
            assert_eq!(divisors(m).map(|d| mobius(d as u64) as i64).sum::<i64>(), 0, "m = {m}");
        }
    }

    #[test]
    fn radicands_reduce() {
        assert_eq!(square_free(8), (2, 2));
        assert_eq!(square_free(-12), (-3, 2));
        assert_eq!(square_free(7), (7, 1));
        let m = WeilMember::exact_integers(2, &[(0, 1, 8), (0, -2, 2)]).unwrap();
        assert!(m.conjugate_closed());
        assert!(matches!(
            WeilMember::exact_integers(2, &[(0, 1, 2), (0, 1, 3)]),
            Err(Error::MixedRadicand(2, 3))
        ));
        let folded = WeilMember::exact_integers(2, &[(1, 1, 4), (0, 0, 5)]).unwrap();
        assert_eq!(compute_n(&folded, 1).unwrap(), ints(&[0]));
    }

    #[test]
    fn power_sum_examples() {
        let m = WeilMember::exact_integers(2, &[(0, 1, 2), (0, -1, 2)]).unwrap();
        let PowerSums::Exact { values, conjugate_closed, .. } = power_sums(&m, 4).unwrap() else { panic!() };
        assert!(conjugate_closed);
        let r: Vec<BigRational> = values.into_iter().map(|v| v.r).collect();
        assert_eq!(r, ints(&[0, 4, 0, 8]));

        let gaussian = WeilMember::exact_integers(2, &[(1, 1, -1), (1, -1, -1)]).unwrap();
        let sums = power_sums(&gaussian, 4).unwrap();
        assert!(sums.integral());
        let PowerSums::Exact { values, .. } = sums else { panic!() };
        // Newton: p1 = e1, p2 = e1 p1 - 2 e2, p_m = e1 p_{m-1} - e2 p_{m-2}
        let (e1, e2) = (2i64, 2i64);
        let mut newton = vec![e1, e1 * e1 - 2 * e2];
        for i in 2..4 {
            newton.push(e1 * newton[i - 1] - e2 * newton[i - 2]);
        }
        assert_eq!(values.into_iter().map(|v| v.r).collect::<Vec<_>>(), ints(&newton));
        assert_eq!(compute_n(&gaussian, 2).unwrap(), ints(&[1, 5]));

        let open = WeilMember::exact_integers(2, &[(0, 1, 2), (0, 1, 2)]).unwrap();
        assert!(!open.conjugate_closed());
        assert_eq!(compute_n(&open, 2), Err(Error::NotConjugateClosed));
    }

    #[test]
    fn genus_zero_and_inverse_examples() {
        let empty = WeilMember::exact_integers(3, &[]).unwrap();
        assert_eq!(compute_n(&empty, 3).unwrap(), ints(&[4, 10, 28]));
        let z = zeta_consistency(&empty, 10).unwrap();
        assert!(z.consistent());
        assert_eq!(z.from_exp[0], rational(1));
        assert!(z.from_exp[1..].iter().all(Zero::is_zero));

        assert_eq!(compute_b(&ints(&[5])).unwrap().b, ints(&[5]));
        assert_eq!(compute_b(&ints(&[1, 5])).unwrap().b, ints(&[1, 2]));
    }

    #[test]
    fn quadratic_with_non_integral_parts() {
        // P(t) = 1 - t + 2t^2 has roots (1 ± √-7) / 2
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let m = WeilMember::exact(
            2,
            vec![(half.clone(), half.clone(), -7), (half.clone(), -half.clone(), -7)],
        )
        .unwrap();
        assert!(validate_weil(&m).is_genuine());
        assert_eq!(compute_n(&m, 2).unwrap(), ints(&[2, 8]));
        let z = zeta_consistency(&m, 10).unwrap();
        assert!(z.consistent());
        assert_eq!(&z.from_roots[..3], &ints(&[1, -1, 2])[..]);
        assert!(z.from_roots[3..].iter().all(Zero::is_zero));
    }

    #[test]
    fn example_member() {
        let ex = synthesize_example(2, 3, 5, 20).unwrap();
        assert_eq!(ex.numbers.n[1], rational(-10));
        let ex = synthesize_example(1, 2, 1, 4).unwrap();
        assert_eq!(&ex.numbers.n[..2], &ints(&[3, 3])[..]);
        let z = zeta_consistency(&synthesize_example(3, 2, 2, 10).unwrap().member, 12).unwrap();
        assert!(z.consistent());
        // (1 - 3t^2)^2
        assert_eq!(&z.from_roots[..5], &ints(&[1, 0, -6, 0, 9])[..]);
        let v = validate_weil(&synthesize_example(4, 4, 1, 2).unwrap().member);
        assert!(v.modulus_ok);
        assert_eq!(v.odd_real_roots.len(), 2);
    }

    #[test]
    fn bound_examples() {
        let zero = bound_check(&[0.0; 5], 4, 5).unwrap();
        assert_eq!((zero.plus_sum, zero.minus_sum), (0.0, 0.0));
        assert_eq!(zero.verdict, Some(BoundVerdict::Within));
        let one = bound_check(&[1.0], 4, 10).unwrap();
        assert_eq!(one.minus_sum, 1.0);
        assert_eq!(one.plus_sum, 1.0 / 3.0);
        assert_eq!(one.verdict, Some(BoundVerdict::Within));
        assert_eq!(bound_check(&[1.5], 4, 10).unwrap().verdict, Some(BoundVerdict::Violated));
        assert_eq!(bound_check(&[1.0, -0.5], 4, 10).unwrap().verdict, None);
        assert!(bound_check(&[1.0], 1, 10).is_err());
    }

    #[test]
    fn example_family_limits() {
        let (k, a) = (2i64, 3i64);
        let members: Vec<WeilMember> = (1..=5).map(|n| synthesize_example(k, a, n, 8).unwrap().member).collect();
        let lim = family_limits(&members, 8, 3, None).unwrap();
        for m in 1..=8 {
            let expected = if m % 2 == 1 { 0.0 } else { 2.0 * (k as f64).powi(m as i32 / 2) };
            for row in &lim.nu_table {
                assert_eq!(row[m - 1], expected);
            }
        }
        assert!(lim.identity_holds());
    }

    #[test]
    fn synthetic_count_families() {
        let genera = [10usize, 20, 40, 80];
        let trivial: Vec<Vec<BigRational>> = genera.iter().map(|_| ints(&[0, 0, 0, 0])).collect();
        let lim = family_limits_from_counts(4, &genera, &trivial, 3, None).unwrap();
        assert!(lim.beta.iter().all(|&b| b == 0.0));
        assert!(lim.nu.iter().zip(1..).all(|(&v, m)| (v - (4f64.powi(m) + 1.0) / 80.0).abs() < 1e-12));

        let linear: Vec<Vec<BigRational>> = genera.iter().map(|&g| ints(&[g as i64, 0, 0, 0])).collect();
        let lim = family_limits_from_counts(4, &genera, &linear, 3, None).unwrap();
        assert_eq!(lim.beta, vec![1.0, 0.0, 0.0, 0.0]);
        assert!(lim.identity_holds());
        for (m, gap) in lim.identity_gap.iter().enumerate() {
            assert!(*gap <= (4f64.powi(m as i32 + 1) + 1.0) / 80.0 + 1e-12);
        }
        assert!(matches!(
            family_limits_from_counts(4, &genera[..3], &linear[..3], 3, None),
            Err(Error::TooFewMembers { have: 3, need: 4 })
        ));
    }

    #[test]
    fn float_members_agree_with_exact_ones() {
        let exact = synthesize_example(2, 2, 2, 6).unwrap().member;
        let float = WeilMember::float(2, exact.complex_roots()).unwrap();
        let a = family_limits(&[exact.clone(), synthesize_example(2, 2, 3, 6).unwrap().member], 6, 1, None).unwrap();
        let b = family_limits(
            &[float, WeilMember::float(2, synthesize_example(2, 2, 3, 6).unwrap().member.complex_roots()).unwrap()],
            6,
            1,
            None,
        )
        .unwrap();
        for (x, y) in a.beta.iter().zip(&b.beta) {
            assert!((x - y).abs() < 1e-9);
        }
        assert_eq!(zeta_consistency(&WeilMember::float(2, vec![]).unwrap(), 4), Err(Error::InexactMember));
    }

    fn closed_member() -> impl Strategy<Value = WeilMember> {
        (1i64..6, -7i64..8, proptest::collection::vec((-5i64..=5, -5i64..=5), 0..=4)).prop_map(|(q, k, pairs)| {
            let k = if k == 0 { 2 } else { k };
            let triples: Vec<(i64, i64, i64)> =
                pairs.iter().flat_map(|&(r, s)| [(r, s, k), (r, -s, k)]).collect();
            WeilMember::exact_integers(q, &triples).unwrap()
        })
    }

    proptest! {
        #[test]
        fn mobius_roundtrip(n in proptest::collection::vec(-1_000_000i64..=1_000_000, 40)) {
            let z = compute_b(&ints(&n)).unwrap();
            prop_assert_eq!(divisor_sums(&z.b), ints(&n));
        }

        #[test]
        fn expansions_agree(member in closed_member()) {
            let z = zeta_consistency(&member, 12).unwrap();
            prop_assert_eq!(z.mismatch, None);
            prop_assert!(z.from_roots[2 * member.genus() + 1..].iter().all(Zero::is_zero));
        }

        #[test]
        fn example_closed_forms(k in 1i64..=5, a in 2i64..=5, n in 1usize..=10) {
            let ex = synthesize_example(k, a, n, 30).unwrap();
            prop_assert!(ex.numbers.non_integral_b().is_empty());
        }
    }
}
