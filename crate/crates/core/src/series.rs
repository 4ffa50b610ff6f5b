//! Exact algebra on complex harmonic polynomials and time polynomials.
//!
//! A [`HarmonicPoly`] is a finite sum `Σ c_k e^{ikx}` with integer
//! wavenumbers. A [`TimeSeries`] is `Σ_m a_m(x) t^m` with every `a_m` a
//! harmonic polynomial. Coefficients are stored for plain monomials `t^m`
//! (no factorial scaling), so time integration is a single division.
//!
//! After each arithmetic operation coefficients whose magnitude falls below
//! `1e-14` times the operands' coefficient scale are dropped.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LadmError, Result};

/// Relative magnitude below which coefficients are pruned.
pub const PRUNE_RELATIVE: f64 = 1e-14;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Finite complex trigonometric polynomial `Σ c_k e^{ikx}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct HarmonicPoly {
    terms: BTreeMap<i64, Complex64>,
}

static ZERO_HARMONIC: HarmonicPoly = HarmonicPoly { terms: BTreeMap::new() };

fn prune_map(terms: &mut BTreeMap<i64, Complex64>, scale: f64) {
    let cutoff = PRUNE_RELATIVE * scale;
    terms.retain(|_, c| *c != Complex64::new(0.0, 0.0) && c.norm() >= cutoff);
}

fn max_norm<'a>(coeffs: impl Iterator<Item = &'a Complex64>) -> f64 {
    coeffs.map(|c| c.norm()).fold(0.0, f64::max)
}

impl HarmonicPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(0, c)
    }

    /// `c e^{ikx}`.
    pub fn monomial(k: i64, c: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        if c != Complex64::new(0.0, 0.0) {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(k, c_k)` pairs; repeated indices are summed.
    pub fn from_terms<It: IntoIterator<Item = (i64, Complex64)>>(terms: It) -> Self {
        let mut map = BTreeMap::new();
        let mut scale: f64 = 0.0;
        for (k, c) in terms {
            scale = scale.max(c.norm());
            *map.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        prune_map(&mut map, scale);
        Self { terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `e^{ikx}` (zero when absent).
    pub fn coeff(&self, k: i64) -> Complex64 {
        self.terms.get(&k).copied().unwrap_or_default()
    }

    /// Terms in ascending wavenumber order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    /// Wavenumbers with a stored coefficient, ascending.
    pub fn support(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    pub fn max_abs(&self) -> f64 {
        max_norm(self.terms.values())
    }

    pub fn is_finite(&self) -> bool {
        self.terms.values().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        if s == Complex64::new(0.0, 0.0) {
            return Self::zero();
        }
        let mut terms: BTreeMap<_, _> = self.terms.iter().map(|(&k, &c)| (k, c * s)).collect();
        prune_map(&mut terms, self.max_abs() * s.norm());
        Self { terms }
    }

    /// Complex conjugate as a function of real `x`: `k ↦ -k`, `c ↦ c̄`.
    pub fn conj(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, c)| (-k, c.conj())).collect(),
        }
    }

    /// `∂/∂x`: multiplies the coefficient of harmonic `k` by `ik`.
    pub fn dx(&self) -> Self {
        self.dx_n(1)
    }

    /// `∂ⁿ/∂xⁿ`.
    pub fn dx_n(&self, order: u32) -> Self {
        if order == 0 {
            return self.clone();
        }
        let mut terms: BTreeMap<_, _> = self
            .terms
            .iter()
            .filter(|(&k, _)| k != 0)
            .map(|(&k, &c)| (k, c * (I * k as f64).powu(order)))
            .collect();
        let scale = max_norm(terms.values());
        prune_map(&mut terms, scale);
        Self { terms }
    }

    /// Evaluates `Σ c_k e^{ikx}` at real `x`.
    pub fn eval(&self, x: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&k, &c)| c * Complex64::from_polar(1.0, k as f64 * x))
            .sum()
    }

    /// Largest coefficient-wise difference magnitude.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for k in self.terms.keys().chain(other.terms.keys()) {
            worst = worst.max((self.coeff(*k) - other.coeff(*k)).norm());
        }
        worst
    }

    fn accumulate_product(acc: &mut BTreeMap<i64, Complex64>, a: &Self, b: &Self) {
        for (&j, &cj) in &a.terms {
            for (&k, &dk) in &b.terms {
                *acc.entry(j + k).or_insert(Complex64::new(0.0, 0.0)) += cj * dk;
            }
        }
    }
}

impl Add for &HarmonicPoly {
    type Output = HarmonicPoly;

    fn add(self, rhs: &HarmonicPoly) -> HarmonicPoly {
        let mut terms = self.terms.clone();
        for (&k, &c) in &rhs.terms {
            *terms.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        prune_map(&mut terms, self.max_abs().max(rhs.max_abs()));
        HarmonicPoly { terms }
    }
}

impl Sub for &HarmonicPoly {
    type Output = HarmonicPoly;

    fn sub(self, rhs: &HarmonicPoly) -> HarmonicPoly {
        self + &(-rhs)
    }
}

impl Neg for &HarmonicPoly {
    type Output = HarmonicPoly;

    fn neg(self) -> HarmonicPoly {
        HarmonicPoly {
            terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }
}

impl Mul for &HarmonicPoly {
    type Output = HarmonicPoly;

    /// Convolution over wavenumbers.
    fn mul(self, rhs: &HarmonicPoly) -> HarmonicPoly {
        let mut terms = BTreeMap::new();
        HarmonicPoly::accumulate_product(&mut terms, self, rhs);
        prune_map(&mut terms, self.max_abs() * rhs.max_abs());
        HarmonicPoly { terms }
    }
}

/// Polynomial in `t` with [`HarmonicPoly`] coefficients; `coeffs[m]` multiplies `t^m`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TimeSeries {
    coeffs: Vec<HarmonicPoly>,
}

impl TimeSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant-in-time series `h · t⁰`.
    pub fn constant(h: HarmonicPoly) -> Self {
        Self::monomial(0, h)
    }

    /// `h · t^power`.
    pub fn monomial(power: usize, h: HarmonicPoly) -> Self {
        let mut coeffs = vec![HarmonicPoly::zero(); power + 1];
        coeffs[power] = h;
        Self::from_coeffs(coeffs)
    }

    pub fn one() -> Self {
        Self::constant(HarmonicPoly::constant(Complex64::new(1.0, 0.0)))
    }

    pub fn from_coeffs(mut coeffs: Vec<HarmonicPoly>) -> Self {
        while coeffs.last().is_some_and(HarmonicPoly::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest power of `t` with a nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^m` (zero beyond the degree).
    pub fn coeff(&self, m: usize) -> &HarmonicPoly {
        self.coeffs.get(m).unwrap_or(&ZERO_HARMONIC)
    }

    pub fn coeffs(&self) -> &[HarmonicPoly] {
        &self.coeffs
    }

    /// Powers of `t` with a nonzero coefficient, ascending.
    pub fn powers(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&m| !self.coeffs[m].is_zero()).collect()
    }

    /// True when exactly one power of `t` carries a nonzero coefficient.
    pub fn is_time_monomial(&self) -> bool {
        self.powers().len() == 1
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(HarmonicPoly::max_abs).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(HarmonicPoly::is_finite)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|m| self.coeff(m).max_abs_diff(other.coeff(m)))
            .fold(0.0, f64::max)
    }

    /// Applies a spatial operator to every time coefficient.
    pub fn map_harmonic(&self, f: impl Fn(&HarmonicPoly) -> HarmonicPoly) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map_harmonic(|h| h.scale(s))
    }

    pub fn conj(&self) -> Self {
        self.map_harmonic(HarmonicPoly::conj)
    }

    pub fn dx(&self) -> Self {
        self.map_harmonic(HarmonicPoly::dx)
    }

    pub fn dx_n(&self, order: u32) -> Self {
        self.map_harmonic(|h| h.dx_n(order))
    }

    /// `∫₀ᵗ a(x, s) ds`: the coefficient of `t^m` moves to `t^{m+1}` divided by `m+1`.
    ///
    /// This is `L⁻¹[(1/s) L{a}]` for polynomial-in-time `a`, since
    /// `(1/s)·m!/s^{m+1} = (m+1)!/s^{m+2} / (m+1)`.
    pub fn integrate_time(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(HarmonicPoly::zero());
        for (m, h) in self.coeffs.iter().enumerate() {
            coeffs.push(h.scale(Complex64::new(1.0 / (m as f64 + 1.0), 0.0)));
        }
        Self::from_coeffs(coeffs)
    }

    /// `∂/∂t`: `t^m ↦ m t^{m-1}`.
    pub fn derivative_time(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(m, h)| h.scale(Complex64::new(m as f64, 0.0)))
                .collect(),
        )
    }

    /// Horner in `t`, direct complex exponentials in `x`.
    pub fn eval(&self, x: f64, t: f64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, h| acc * t + h.eval(x))
    }

    /// Sum of a slice of series.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a TimeSeries>) -> Self {
        items.into_iter().fold(Self::zero(), |acc, s| &acc + s)
    }
}

impl Add for &TimeSeries {
    type Output = TimeSeries;

    fn add(self, rhs: &TimeSeries) -> TimeSeries {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TimeSeries::from_coeffs((0..n).map(|m| self.coeff(m) + rhs.coeff(m)).collect())
    }
}

impl Sub for &TimeSeries {
    type Output = TimeSeries;

    fn sub(self, rhs: &TimeSeries) -> TimeSeries {
        self + &(-rhs)
    }
}

impl Neg for &TimeSeries {
    type Output = TimeSeries;

    fn neg(self) -> TimeSeries {
        TimeSeries {
            coeffs: self.coeffs.iter().map(|h| -h).collect(),
        }
    }
}

impl Mul for &TimeSeries {
    type Output = TimeSeries;

    /// Cauchy product in `t`.
    fn mul(self, rhs: &TimeSeries) -> TimeSeries {
        if self.is_zero() || rhs.is_zero() {
            return TimeSeries::zero();
        }
        let scale = self.max_abs() * rhs.max_abs();
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out = Vec::with_capacity(n);
        for m in 0..n {
            let mut acc = BTreeMap::new();
            let lo = m.saturating_sub(rhs.coeffs.len() - 1);
            let hi = m.min(self.coeffs.len() - 1);
            for i in lo..=hi {
                HarmonicPoly::accumulate_product(&mut acc, &self.coeffs[i], &rhs.coeffs[m - i]);
            }
            prune_map(&mut acc, scale);
            out.push(HarmonicPoly { terms: acc });
        }
        TimeSeries::from_coeffs(out)
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $method:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(HarmonicPoly, Add, add);
forward_owned_binop!(HarmonicPoly, Sub, sub);
forward_owned_binop!(HarmonicPoly, Mul, mul);
forward_owned_binop!(TimeSeries, Add, add);
forward_owned_binop!(TimeSeries, Sub, sub);
forward_owned_binop!(TimeSeries, Mul, mul);

// JSON tree: [{power_t, terms: [{k, re, im}]}], powers and k ascending,
// zero time coefficients omitted.

#[derive(Serialize, Deserialize)]
struct HarmonicTerm {
    k: i64,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct TimeEntry {
    power_t: usize,
    terms: Vec<HarmonicTerm>,
}

impl Serialize for HarmonicPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<HarmonicTerm> = self
            .iter()
            .map(|(k, c)| HarmonicTerm { k, re: c.re, im: c.im })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HarmonicPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<HarmonicTerm>::deserialize(deserializer)?;
        let poly = HarmonicPoly::from_terms(terms.into_iter().map(|t| (t.k, Complex64::new(t.re, t.im))));
        if !poly.is_finite() {
            return Err(serde::de::Error::custom(LadmError::NonFinite(
                "harmonic coefficient".into(),
            )));
        }
        Ok(poly)
    }
}

impl Serialize for TimeSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<TimeEntry> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, h)| !h.is_zero())
            .map(|(m, h)| TimeEntry {
                power_t: m,
                terms: h.iter().map(|(k, c)| HarmonicTerm { k, re: c.re, im: c.im }).collect(),
            })
            .collect();
        entries.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TimeSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<TimeEntry>::deserialize(deserializer)?;
        let mut acc = TimeSeries::zero();
        for e in entries {
            let h = HarmonicPoly::from_terms(e.terms.into_iter().map(|t| (t.k, Complex64::new(t.re, t.im))));
            if !h.is_finite() {
                return Err(serde::de::Error::custom(LadmError::NonFinite(format!(
                    "coefficient of t^{}",
                    e.power_t
                ))));
            }
            acc = &acc + &TimeSeries::monomial(e.power_t, h);
        }
        Ok(acc)
    }
}

impl TimeSeries {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("time series serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(value.clone()).map_err(|e| LadmError::NonFinite(e.to_string()))
    }
}
