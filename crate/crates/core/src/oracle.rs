//! Closed-form reference for plane-wave data and comparison against LADM.
//!
//! ```text
//! u(x, t) = ± e^{ix} · w(t)^{-1/4},   w(t) = 1 + (u0⁻⁴ − 1) e^{4it}
//! ```
//!
//! The fourth root is principal: `w^{-1/4} = exp(−¼ Log w)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{LadmError, Result};
use crate::format::{fmt_sig, SIG_DIGITS};
use crate::solver::LadmRun;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExactSolution {
    amplitude: f64,
    sign: f64,
}

impl ExactSolution {
    /// `sign` is +1 or −1; anything non-negative is taken as +1.
    pub fn new(amplitude: f64, sign: i8) -> Result<Self> {
        if amplitude == 0.0 {
            return Err(LadmError::ZeroAmplitude);
        }
        if !amplitude.is_finite() {
            return Err(LadmError::NonFinite(format!("amplitude = {amplitude}")));
        }
        Ok(Self {
            amplitude,
            sign: if sign < 0 { -1.0 } else { 1.0 },
        })
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// `u0⁻⁴ − 1`.
    pub fn modulation(&self) -> f64 {
        self.amplitude.powi(-4) - 1.0
    }

    /// `w(t) = 1 + (u0⁻⁴ − 1) e^{4it}`.
    pub fn w(&self, t: f64) -> Complex64 {
        Complex64::new(1.0, 0.0) + Complex64::from_polar(self.modulation(), 4.0 * t)
    }

    /// Errors when `w(s)` for `s` between 0 and `t` meets the non-positive real axis.
    fn check_branch(&self, t: f64) -> Result<()> {
        let c = self.modulation();
        let radius = c.abs();
        if radius < 1.0 {
            return Ok(());
        }
        // w lies on the cut when 4s + arg(c) ≡ π (mod 2π)
        let phase0 = if c < 0.0 { PI } else { 0.0 };
        let first_hit = if t >= 0.0 {
            (PI - phase0).rem_euclid(2.0 * PI) / 4.0
        } else {
            (phase0 - PI).rem_euclid(2.0 * PI) / 4.0
        };
        if first_hit <= t.abs() {
            return Err(LadmError::BranchCut { t, radius });
        }
        Ok(())
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<Complex64> {
        self.check_branch(t)?;
        let root = (-0.25 * self.w(t).ln()).exp();
        Ok(Complex64::from_polar(self.sign, x) * root)
    }
}

pub fn exact_eval(sol: &ExactSolution, x: f64, t: f64) -> Result<Complex64> {
    sol.eval(x, t)
}

/// Centered-difference estimate of `|i u_t + u_xx + 2(|u|²)_x u + |u|⁴ u|`.
///
/// Second-order accurate in `h`.
pub fn pde_residual_fd(u: impl Fn(f64, f64) -> Complex64, x: f64, t: f64, h: f64) -> f64 {
    let center = u(x, t);
    let ut = (u(x, t + h) - u(x, t - h)) / (2.0 * h);
    let right = u(x + h, t);
    let left = u(x - h, t);
    let uxx = (right - 2.0 * center + left) / (h * h);
    let mod2_x = (right.norm_sqr() - left.norm_sqr()) / (2.0 * h);
    let m2 = center.norm_sqr();
    let defect = Complex64::new(0.0, 1.0) * ut + uxx + center * (2.0 * mod2_x) + center * (m2 * m2);
    defect.norm()
}

/// Substitutes the closed form into the PDE with step `h`.
pub fn exact_residual_check(sol: &ExactSolution, x: f64, t: f64, h: f64) -> Result<f64> {
    if h.is_nan() || h <= 0.0 {
        return Err(LadmError::InvalidGrid(format!("finite-difference step h = {h}")));
    }
    for (dx, dt) in [(0.0, h), (0.0, -h), (h, 0.0), (-h, 0.0)] {
        sol.eval(x + dx, t + dt)?;
    }
    let f = |x: f64, t: f64| sol.eval(x, t).expect("branch checked above");
    Ok(pde_residual_fd(f, x, t, h))
}

/// Which component a table reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Real,
    Imag,
}

/// One comparison between the LADM truncation and the closed form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub x: f64,
    pub t: f64,
    pub re_ladm: f64,
    pub im_ladm: f64,
    pub re_exact: f64,
    pub im_exact: f64,
    pub err_re: f64,
    pub err_im: f64,
    pub err_abs: f64,
}

pub const CSV_HEADER: &str = "x,t,re_ladm,im_ladm,re_exact,im_exact,err_re,err_im,err_abs";

impl ComparisonRow {
    pub fn new(x: f64, t: f64, ladm: Complex64, exact: Complex64) -> Self {
        Self {
            x,
            t,
            re_ladm: ladm.re,
            im_ladm: ladm.im,
            re_exact: exact.re,
            im_exact: exact.im,
            err_re: (exact.re - ladm.re).abs(),
            err_im: (exact.im - ladm.im).abs(),
            err_abs: (exact - ladm).norm(),
        }
    }

    pub fn ladm(&self) -> Complex64 {
        Complex64::new(self.re_ladm, self.im_ladm)
    }

    pub fn exact(&self) -> Complex64 {
        Complex64::new(self.re_exact, self.im_exact)
    }

    pub fn csv_line(&self) -> String {
        [
            self.x,
            self.t,
            self.re_ladm,
            self.im_ladm,
            self.re_exact,
            self.im_exact,
            self.err_re,
            self.err_im,
            self.err_abs,
        ]
        .iter()
        .map(|&v| fmt_sig(v, SIG_DIGITS))
        .collect::<Vec<_>>()
        .join(",")
    }

    pub fn part_header(part: Part) -> &'static str {
        match part {
            Part::Real => "x,t,re_ladm,re_exact,err_re",
            Part::Imag => "x,t,im_ladm,im_exact,err_im",
        }
    }

    pub fn part_csv_line(&self, part: Part) -> String {
        let (l, e, err) = match part {
            Part::Real => (self.re_ladm, self.re_exact, self.err_re),
            Part::Imag => (self.im_ladm, self.im_exact, self.err_im),
        };
        [self.x, self.t, l, e, err]
            .iter()
            .map(|&v| fmt_sig(v, SIG_DIGITS))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// One row per `x` at fixed `t`, in input order.
pub fn compare_grid(run: &LadmRun, sol: &ExactSolution, xs: &[f64], t: f64) -> Result<Vec<ComparisonRow>> {
    if xs.is_empty() {
        return Err(LadmError::InvalidGrid("no x values".into()));
    }
    xs.iter()
        .map(|&x| Ok(ComparisonRow::new(x, t, run.eval(x, t), sol.eval(x, t)?)))
        .collect()
}

/// Full CSV (header plus one line per row).
pub fn rows_to_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

/// CSV restricted to one component.
pub fn rows_to_part_csv(rows: &[ComparisonRow], part: Part) -> String {
    let mut out = String::from(ComparisonRow::part_header(part));
    out.push('\n');
    for r in rows {
        out.push_str(&r.part_csv_line(part));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{run, EquationModel};

    fn beta() -> f64 {
        2f64.powf(1.0 / 16.0)
    }

    #[test]
    fn initial_condition_recovered() {
        let sol = ExactSolution::new(beta(), 1).unwrap();
        for x in [0.0, 0.5, 2.0, -3.1] {
            let v = sol.eval(x, 0.0).unwrap();
            assert!((v - Complex64::from_polar(beta(), x)).norm() < 1e-14);
        }
        let neg = ExactSolution::new(beta(), -1).unwrap();
        assert!((neg.eval(0.3, 0.0).unwrap() + Complex64::from_polar(beta(), 0.3)).norm() < 1e-14);
    }

    #[test]
    fn unit_amplitude_is_the_plane_wave() {
        let sol = ExactSolution::new(1.0, 1).unwrap();
        for (x, t) in [(0.1, 0.0), (1.0, 2.5), (4.0, -1.0)] {
            assert!((sol.eval(x, t).unwrap() - Complex64::from_polar(1.0, x)).norm() < 1e-15);
        }
    }

    #[test]
    fn table_reference_value() {
        let sol = ExactSolution::new(beta(), 1).unwrap();
        assert!((sol.eval(0.5, 1.0).unwrap().re - 0.867245034766).abs() < 1e-9);
    }

    #[test]
    fn branch_guard() {
        // u0⁻⁴ − 1 = 1 at u0 = 2^(-1/4): w hits 0 at t = π/4
        let sol = ExactSolution::new(2f64.powf(-0.25), 1).unwrap();
        assert!(sol.eval(0.0, 0.5).is_ok());
        assert!(matches!(sol.eval(0.0, 1.0), Err(LadmError::BranchCut { .. })));
        assert!(matches!(sol.eval(0.0, -1.0), Err(LadmError::BranchCut { .. })));
        // small modulation never reaches the cut
        let ok = ExactSolution::new(beta(), 1).unwrap();
        assert!(ok.eval(0.0, 1e4).is_ok());
        assert_eq!(ExactSolution::new(0.0, 1).unwrap_err(), LadmError::ZeroAmplitude);
    }

    #[test]
    fn fd_residual_matches_analytic_defect_of_closed_form() {
        // for u = a(t) e^{ix}, the defect is w^{-1/4}(1/|w| − 1/w) e^{ix}
        let sol = ExactSolution::new(beta(), 1).unwrap();
        for &(x, t) in &[(1.0, 0.7), (0.2, 1.9), (3.0, 0.1)] {
            let w = sol.w(t);
            let analytic = ((-0.25 * w.ln()).exp() * (1.0 / w.norm() - 1.0 / w)).norm();
            let fd = exact_residual_check(&sol, x, t, 1e-4).unwrap();
            assert!((fd - analytic).abs() < 1e-6, "fd {fd} analytic {analytic}");
        }
    }

    #[test]
    fn fd_residual_of_true_plane_wave_solution() {
        // β e^{i(β⁴−1)t} e^{ix} solves the equation exactly
        let b = beta();
        let u = |x: f64, t: f64| Complex64::from_polar(b, x + (b.powi(4) - 1.0) * t);
        for &(x, t) in &[(1.0, 0.7), (2.5, 1.5)] {
            assert!(pde_residual_fd(u, x, t, 1e-4) < 1e-6);
        }
        let sol = ExactSolution::new(1.0, 1).unwrap();
        assert!(exact_residual_check(&sol, 0.4, 0.9, 1e-4).unwrap() < 1e-7);
    }

    #[test]
    fn fd_residual_is_second_order() {
        // perturbed wave: defect is nonzero and smooth, FD error shrinks ~4x per halving
        let u = |x: f64, t: f64| Complex64::from_polar(1.0 + 0.1 * (x + t).sin(), x - 0.3 * t);
        let fd = |h: f64| pde_residual_fd(u, 0.8, 0.4, h);
        let exact = (4.0 * fd(2.5e-3) - fd(5e-3)) / 3.0;
        let e1 = (fd(1e-3) - exact).abs();
        let e2 = (fd(5e-4) - exact).abs();
        let ratio = e1 / e2;
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn comparison_row_errors() {
        let row = ComparisonRow::new(0.5, 1.0, Complex64::new(0.2, -0.1), Complex64::new(0.5, 0.3));
        assert!((row.err_re - 0.3).abs() < 1e-15);
        assert!((row.err_im - 0.4).abs() < 1e-15);
        assert!((row.err_abs - 0.5).abs() < 1e-15);
    }

    #[test]
    fn grid_with_unit_amplitude_has_no_error() {
        let run = run(&EquationModel::kundu_eckhaus(), 1.0, 1, 4).unwrap();
        let sol = ExactSolution::new(1.0, 1).unwrap();
        let xs: Vec<f64> = (1..=10).map(|i| 0.5 * i as f64).collect();
        let rows = compare_grid(&run, &sol, &xs, 1.0).unwrap();
        assert_eq!(rows.len(), 10);
        assert!(rows.iter().all(|r| r.err_abs < 1e-12));
        assert!(compare_grid(&run, &sol, &[], 1.0).is_err());
    }

    #[test]
    fn csv_layout() {
        let row = ComparisonRow::new(0.5, 1.0, Complex64::new(0.25, -1.0), Complex64::new(0.5, -1.0));
        let csv = rows_to_csv(&[row]);
        assert_eq!(csv, format!("{CSV_HEADER}\n0.5,1,0.25,-1,0.5,-1,0.25,0,0.25\n"));
        assert_eq!(
            rows_to_part_csv(&[row], Part::Imag),
            "x,t,im_ladm,im_exact,err_im\n0.5,1,-1,-1,0\n"
        );
    }
}
