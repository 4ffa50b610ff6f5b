//! Monomial nonlinearities and their Adomian polynomials.
//!
//! A nonlinearity is a sum of monomials `c · f₁(u) f₂(u) ⋯ f_d(u)`, each
//! factor drawn from `{u, ū, u_x, ū_x}`. The Adomian polynomial of order `n`
//! is the coefficient of `λⁿ` in `N(Σ λⁱ uᵢ)`; for a monomial that is the sum,
//! over index tuples `(i₁,…,i_d)` with `Σ i_j = n`, of `∏ f_j(u_{i_j})`.

mod symbolic;

pub use symbolic::{ParseSymbolicError, SymbolicPoly, SymbolicTerm};

use num_complex::Complex64;

use crate::error::{LadmError, Result};
use crate::series::TimeSeries;

/// One factor of a monomial nonlinearity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    /// `u`
    U,
    /// `ū`
    ConjU,
    /// `u_x`
    DxU,
    /// `ū_x`, taken as `∂x(ū)`.
    DxConjU,
}

impl FactorKind {
    pub const ALL: [FactorKind; 4] = [Self::U, Self::ConjU, Self::DxU, Self::DxConjU];

    pub fn apply(self, u: &TimeSeries) -> TimeSeries {
        match self {
            Self::U => u.clone(),
            Self::ConjU => u.conj(),
            Self::DxU => u.dx(),
            Self::DxConjU => u.conj().dx(),
        }
    }

    /// Short ASCII symbol used by [`SymbolicPoly`]: `u`, `ub`, `ux`, `ubx`.
    pub fn symbol(self) -> &'static str {
        match self {
            Self::U => "u",
            Self::ConjU => "ub",
            Self::DxU => "ux",
            Self::DxConjU => "ubx",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// `coefficient · ∏ factors(u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialNonlinearity {
    coefficient: Complex64,
    factors: Vec<FactorKind>,
}

impl MonomialNonlinearity {
    pub fn new(coefficient: Complex64, factors: Vec<FactorKind>) -> Result<Self> {
        if factors.is_empty() {
            return Err(LadmError::EmptyMonomial);
        }
        if coefficient == Complex64::new(0.0, 0.0) {
            return Err(LadmError::ZeroCoefficient);
        }
        if !(coefficient.re.is_finite() && coefficient.im.is_finite()) {
            return Err(LadmError::NonFinite("monomial coefficient".into()));
        }
        Ok(Self { coefficient, factors })
    }

    pub fn coefficient(&self) -> Complex64 {
        self.coefficient
    }

    pub fn factors(&self) -> &[FactorKind] {
        &self.factors
    }

    /// Number of factors `d`.
    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    /// `N(u)` evaluated directly on a single series.
    pub fn apply(&self, u: &TimeSeries) -> TimeSeries {
        let mut cache: [Option<TimeSeries>; 4] = Default::default();
        let mut acc = TimeSeries::constant(crate::series::HarmonicPoly::constant(self.coefficient));
        for &f in &self.factors {
            let applied = cache[f.index()].get_or_insert_with(|| f.apply(u));
            acc = &acc * applied;
        }
        acc
    }

    /// Adomian polynomial `A_n` of this monomial for iterates `u₀, u₁, …`.
    pub fn adomian(&self, iterates: &[TimeSeries], n: usize) -> Result<TimeSeries> {
        check_iterates(iterates, n)?;
        let applied = AppliedFactors::new(&self.factors, &iterates[..=n]);
        let mut acc = TimeSeries::zero();
        for tuple in index_tuples(self.degree(), n) {
            let mut term = TimeSeries::constant(crate::series::HarmonicPoly::constant(self.coefficient));
            for (&f, &i) in self.factors.iter().zip(&tuple) {
                term = &term * applied.get(f, i);
                if term.is_zero() {
                    break;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Symbolic form of `A_n` over placeholder iterates.
    pub fn symbolic(&self, n: usize) -> SymbolicPoly {
        let mut out = SymbolicPoly::zero();
        for tuple in index_tuples(self.degree(), n) {
            let factors = self.factors.iter().copied().zip(tuple).collect();
            out.add_term(SymbolicTerm::new(self.coefficient, factors));
        }
        out
    }
}

/// Sum of monomial nonlinearities.
#[derive(Clone, Debug, PartialEq)]
pub struct NonlinearOperator {
    monomials: Vec<MonomialNonlinearity>,
}

impl NonlinearOperator {
    pub fn new(monomials: Vec<MonomialNonlinearity>) -> Result<Self> {
        if monomials.is_empty() {
            return Err(LadmError::EmptyOperator);
        }
        Ok(Self { monomials })
    }

    /// `i u³ū²`, the quintic part.
    pub fn quintic_part() -> MonomialNonlinearity {
        use FactorKind::*;
        MonomialNonlinearity::new(Complex64::new(0.0, 1.0), vec![U, U, U, ConjU, ConjU]).expect("valid monomial")
    }

    /// `2i u² ū_x`.
    pub fn conj_derivative_part() -> MonomialNonlinearity {
        use FactorKind::*;
        MonomialNonlinearity::new(Complex64::new(0.0, 2.0), vec![U, U, DxConjU]).expect("valid monomial")
    }

    /// `2i u_x u ū`.
    pub fn derivative_part() -> MonomialNonlinearity {
        use FactorKind::*;
        MonomialNonlinearity::new(Complex64::new(0.0, 2.0), vec![DxU, U, ConjU]).expect("valid monomial")
    }

    /// `N u = i[2(|u|²)_x + |u|⁴] u` split as the three monomials above.
    pub fn kundu_eckhaus() -> Self {
        Self {
            monomials: vec![
                Self::quintic_part(),
                Self::conj_derivative_part(),
                Self::derivative_part(),
            ],
        }
    }

    pub fn monomials(&self) -> &[MonomialNonlinearity] {
        &self.monomials
    }

    pub fn apply(&self, u: &TimeSeries) -> TimeSeries {
        self.monomials
            .iter()
            .fold(TimeSeries::zero(), |acc, m| &acc + &m.apply(u))
    }

    pub fn adomian(&self, iterates: &[TimeSeries], n: usize) -> Result<TimeSeries> {
        let mut acc = TimeSeries::zero();
        for m in &self.monomials {
            acc = &acc + &m.adomian(iterates, n)?;
        }
        Ok(acc)
    }

    pub fn symbolic(&self, n: usize) -> SymbolicPoly {
        let mut out = SymbolicPoly::zero();
        for m in &self.monomials {
            out = &out + &m.symbolic(n);
        }
        out
    }
}

/// `A_n` for a single monomial.
pub fn adomian_poly(nl: &MonomialNonlinearity, iterates: &[TimeSeries], n: usize) -> Result<TimeSeries> {
    nl.adomian(iterates, n)
}

/// `A_n` for a full operator (sum over its monomials).
pub fn adomian_poly_sum(op: &NonlinearOperator, iterates: &[TimeSeries], n: usize) -> Result<TimeSeries> {
    op.adomian(iterates, n)
}

fn check_iterates(iterates: &[TimeSeries], n: usize) -> Result<()> {
    if iterates.len() < n + 1 {
        return Err(LadmError::MissingIterates {
            order: n,
            needed: n + 1,
            available: iterates.len(),
        });
    }
    Ok(())
}

/// Factor kinds applied to each iterate, computed once per kind in use.
struct AppliedFactors {
    table: [Vec<TimeSeries>; 4],
}

impl AppliedFactors {
    fn new(kinds: &[FactorKind], iterates: &[TimeSeries]) -> Self {
        let mut table: [Vec<TimeSeries>; 4] = Default::default();
        for &k in kinds {
            if table[k.index()].is_empty() {
                table[k.index()] = iterates.iter().map(|u| k.apply(u)).collect();
            }
        }
        Self { table }
    }

    fn get(&self, kind: FactorKind, i: usize) -> &TimeSeries {
        &self.table[kind.index()][i]
    }
}

/// All `d`-tuples of non-negative integers summing to `n`, in lexicographic order.
///
/// There are `C(n+d-1, d-1)` of them.
pub fn index_tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if d == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=n {
            prefix.push(first);
            rec(d - 1, n - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(d, n, &mut Vec::with_capacity(d), &mut out);
    out
}

/// Outcome of [`lambda_consistency_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaReport {
    /// Max coefficient magnitude of `[λⁿ] N(Σλⁱuᵢ) − A_n` for each `n ≤ N`.
    pub per_order: Vec<f64>,
    pub max_discrepancy: f64,
    /// Orders whose Adomian polynomial could not be formed.
    pub failures: Vec<String>,
}

impl LambdaReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.failures.is_empty() && self.max_discrepancy < tol
    }
}

/// Cross-checks the tuple enumeration against a formal power series in `λ`.
///
/// `N(Σ_{i≤N} λⁱ uᵢ)` is expanded by iterated Cauchy products in `λ`
/// (truncated at degree `N`), independent of [`index_tuples`].
pub fn lambda_consistency_check(op: &NonlinearOperator, iterates: &[TimeSeries], order: usize) -> LambdaReport {
    let avail = iterates.len().min(order + 1);
    let mut expansion = vec![TimeSeries::zero(); order + 1];
    for m in op.monomials() {
        // λ-polynomial of a running product, coefficient list indexed by λ power
        let mut prod: Vec<TimeSeries> = vec![TimeSeries::zero(); order + 1];
        prod[0] = TimeSeries::constant(crate::series::HarmonicPoly::constant(m.coefficient()));
        for &f in m.factors() {
            let factor: Vec<TimeSeries> = iterates[..avail].iter().map(|u| f.apply(u)).collect();
            let mut next = vec![TimeSeries::zero(); order + 1];
            for (p, a) in prod.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (q, b) in factor.iter().enumerate() {
                    if p + q > order {
                        break;
                    }
                    next[p + q] = &next[p + q] + &(a * b);
                }
            }
            prod = next;
        }
        for (slot, term) in expansion.iter_mut().zip(prod) {
            *slot = &*slot + &term;
        }
    }

    let mut per_order = Vec::with_capacity(order + 1);
    let mut failures = Vec::new();
    for (n, lam) in expansion.iter().enumerate() {
        match op.adomian(iterates, n) {
            Ok(a) => per_order.push(lam.max_abs_diff(&a)),
            Err(e) => {
                failures.push(format!("order {n}: {e}"));
                per_order.push(f64::INFINITY);
            }
        }
    }
    let max_discrepancy = per_order.iter().copied().fold(0.0, f64::max);
    LambdaReport {
        per_order,
        max_discrepancy,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::HarmonicPoly;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn plane_wave(beta: f64) -> TimeSeries {
        TimeSeries::constant(HarmonicPoly::monomial(1, c(beta, 0.0)))
    }

    #[test]
    fn tuple_enumeration_order_and_count() {
        assert_eq!(
            index_tuples(3, 2),
            vec![
                vec![0, 0, 2],
                vec![0, 1, 1],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![1, 1, 0],
                vec![2, 0, 0]
            ]
        );
        for d in 1..=5 {
            for n in 0..=8 {
                assert_eq!(index_tuples(d, n).len(), binom(n + d - 1, d - 1));
            }
        }
        assert_eq!(index_tuples(0, 0), vec![Vec::<usize>::new()]);
        assert!(index_tuples(0, 3).is_empty());
    }

    #[test]
    fn quintic_a0_on_plane_wave() {
        let beta = 2f64.powf(1.0 / 16.0);
        let p0 = NonlinearOperator::quintic_part()
            .adomian(&[plane_wave(beta)], 0)
            .unwrap();
        assert_eq!(p0.powers(), vec![0]);
        assert_eq!(p0.coeff(0).support(), vec![1]);
        assert!((p0.coeff(0).coeff(1) - c(0.0, beta.powi(5))).norm() < 1e-14);
    }

    #[test]
    fn q1_matches_two_term_form() {
        // 2i u0² ū1ₓ + 4i u0 u1 ū0ₓ with arbitrary iterates
        let u0 = TimeSeries::constant(HarmonicPoly::from_terms([(1, c(0.7, 0.2)), (-2, c(0.1, -0.3))]));
        let u1 = TimeSeries::monomial(1, HarmonicPoly::from_terms([(0, c(0.4, 0.0)), (3, c(0.0, 0.5))]));
        let q1 = NonlinearOperator::conj_derivative_part()
            .adomian(&[u0.clone(), u1.clone()], 1)
            .unwrap();
        let ub0x = u0.conj().dx();
        let ub1x = u1.conj().dx();
        let expected = &(&(&u0 * &u0) * &ub1x).scale(c(0.0, 2.0)) + &(&(&u0 * &u1) * &ub0x).scale(c(0.0, 4.0));
        assert!(q1.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn zero_initial_iterate_gives_zero() {
        for m in NonlinearOperator::kundu_eckhaus().monomials() {
            assert!(m.adomian(&[TimeSeries::zero()], 0).unwrap().is_zero());
        }
    }

    #[test]
    fn missing_iterates_is_an_error() {
        let err = NonlinearOperator::kundu_eckhaus()
            .adomian(&[plane_wave(1.0)], 2)
            .unwrap_err();
        assert_eq!(
            err,
            LadmError::MissingIterates {
                order: 2,
                needed: 3,
                available: 1
            }
        );
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(
            MonomialNonlinearity::new(c(1.0, 0.0), vec![]).unwrap_err(),
            LadmError::EmptyMonomial
        );
        assert_eq!(
            MonomialNonlinearity::new(c(0.0, 0.0), vec![FactorKind::U]).unwrap_err(),
            LadmError::ZeroCoefficient
        );
        assert_eq!(NonlinearOperator::new(vec![]).unwrap_err(), LadmError::EmptyOperator);
    }

    #[test]
    fn ke_a0_is_quintic_only() {
        // derivative parts cancel on a plane wave
        let beta = 2f64.powf(1.0 / 16.0);
        let a0 = NonlinearOperator::kundu_eckhaus()
            .adomian(&[plane_wave(beta)], 0)
            .unwrap();
        assert_eq!(a0.coeff(0).support(), vec![1]);
        assert!((a0.coeff(0).coeff(1) - c(0.0, beta.powi(5))).norm() < 1e-14);
    }

    #[test]
    fn apply_equals_order_zero_polynomial() {
        let u = TimeSeries::from_coeffs(vec![
            HarmonicPoly::from_terms([(1, c(1.0, 0.1)), (0, c(0.2, 0.0))]),
            HarmonicPoly::monomial(-1, c(0.0, 0.3)),
        ]);
        let op = NonlinearOperator::kundu_eckhaus();
        let direct = op.apply(&u);
        let a0 = op.adomian(std::slice::from_ref(&u), 0).unwrap();
        assert!(direct.max_abs_diff(&a0) < 1e-13);
    }

    #[test]
    fn lambda_check_reports_missing_iterates() {
        let op = NonlinearOperator::kundu_eckhaus();
        let r = lambda_consistency_check(&op, &[plane_wave(1.1)], 2);
        assert!(!r.passes(1e-10));
        assert_eq!(r.failures.len(), 2);
        assert!(r.per_order[0] < 1e-12);
    }

    #[test]
    fn symbolic_counts_collapse_permutations() {
        // 2i u² ū_x at order 1: 2i u0² ū1ₓ + 4i u0 u1 ū0ₓ
        let q1 = NonlinearOperator::conj_derivative_part().symbolic(1);
        assert_eq!(q1.len(), 2);
        assert_eq!(q1.to_string(), "2i u0^2 ubx1 + 4i u0 u1 ubx0");
    }
}
