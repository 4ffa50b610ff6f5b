//! Equation model, LADM recursion and PDE residual.
//!
//! The evolution is written as `u_t = R u + N u` with `R` linear in
//! x-derivatives. Starting from `u₀ = f(x)`, the recursion is
//!
//! ```text
//! u_{n+1} = ∫₀ᵗ (R uₙ + Aₙ(u₀, …, uₙ)) ds
//! ```
//!
//! and the approximation after `k` corrections is `u₀ + ⋯ + u_k`.

use num_complex::Complex64;
use serde::Serialize;

use crate::adomian::NonlinearOperator;
use crate::error::{LadmError, Result};
use crate::series::{HarmonicPoly, TimeSeries};

/// `Σ coefficient · ∂ˣ^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearOperator {
    terms: Vec<(u32, Complex64)>,
}

impl LinearOperator {
    pub fn new(terms: Vec<(u32, Complex64)>) -> Result<Self> {
        if terms.iter().any(|(_, c)| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(LadmError::NonFinite("linear operator coefficient".into()));
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[(u32, Complex64)] {
        &self.terms
    }

    pub fn apply(&self, u: &TimeSeries) -> TimeSeries {
        self.terms
            .iter()
            .fold(TimeSeries::zero(), |acc, &(order, c)| &acc + &u.dx_n(order).scale(c))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquationModel {
    pub linear: LinearOperator,
    pub nonlinear: NonlinearOperator,
}

impl EquationModel {
    /// `u_t = i u_xx + 2i(|u|²)_x u + i|u|⁴ u`.
    pub fn kundu_eckhaus() -> Self {
        Self {
            linear: LinearOperator {
                terms: vec![(2, Complex64::new(0.0, 1.0))],
            },
            nonlinear: NonlinearOperator::kundu_eckhaus(),
        }
    }
}

/// `u(x, 0) = beta · e^{i·harmonic·x}` as a `t⁰` series.
pub fn initial_condition(beta: f64, harmonic: i64) -> Result<TimeSeries> {
    if beta == 0.0 {
        return Err(LadmError::ZeroAmplitude);
    }
    if !beta.is_finite() {
        return Err(LadmError::NonFinite(format!("beta = {beta}")));
    }
    Ok(TimeSeries::constant(HarmonicPoly::monomial(
        harmonic,
        Complex64::new(beta, 0.0),
    )))
}

pub fn apply_linear(model: &EquationModel, u: &TimeSeries) -> TimeSeries {
    model.linear.apply(u)
}

/// `u_{n+1}` from `u₀ … uₙ`.
pub fn ladm_step(model: &EquationModel, iterates: &[TimeSeries], n: usize) -> Result<TimeSeries> {
    let a_n = model.nonlinear.adomian(iterates, n)?;
    let rhs = &apply_linear(model, &iterates[n]) + &a_n;
    Ok(rhs.integrate_time())
}

/// A completed LADM run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LadmRun {
    pub beta: f64,
    pub harmonic: i64,
    /// Number of correction terms; `iterates.len() == k + 1`.
    pub k: usize,
    pub iterates: Vec<TimeSeries>,
    pub truncated: TimeSeries,
}

impl LadmRun {
    pub fn eval(&self, x: f64, t: f64) -> Complex64 {
        self.truncated.eval(x, t)
    }
}

/// Runs `k` LADM steps from the plane wave `beta · e^{i·harmonic·x}`.
pub fn run(model: &EquationModel, beta: f64, harmonic: i64, k: usize) -> Result<LadmRun> {
    let u0 = initial_condition(beta, harmonic)?;
    let iterates = iterate_from(model, u0, k)?;
    let truncated = TimeSeries::sum(&iterates);
    Ok(LadmRun {
        beta,
        harmonic,
        k,
        iterates,
        truncated,
    })
}

/// Iterates `u₀ … u_k` for an arbitrary harmonic initial condition.
pub fn iterate_from(model: &EquationModel, u0: TimeSeries, k: usize) -> Result<Vec<TimeSeries>> {
    let mut iterates = Vec::with_capacity(k + 1);
    iterates.push(u0);
    for n in 0..k {
        let next = ladm_step(model, &iterates, n)?;
        iterates.push(next);
    }
    Ok(iterates)
}

/// PDE defect `∂t u − R u − N u`, with `N u` expanded directly on `u`.
pub fn residual(model: &EquationModel, u: &TimeSeries) -> TimeSeries {
    let lhs = u.derivative_time();
    let rhs = &model.linear.apply(u) + &model.nonlinear.apply(u);
    &lhs - &rhs
}

/// Largest coefficient magnitude of each power of `t` in `series`.
pub fn order_magnitudes(series: &TimeSeries) -> Vec<f64> {
    series.coeffs().iter().map(HarmonicPoly::max_abs).collect()
}
