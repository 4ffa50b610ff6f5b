//! Symbolic Adomian polynomials over placeholder iterates `u0, u1, …`.
//!
//! Text form, one term per `+`/`-`:
//!
//! ```text
//! 3i ub0^2 u0^2 u1 + 2i ub0 ub1 u0^3
//! ```
//!
//! Factor tokens are `u{n}`, `ub{n}` (conjugate), `ux{n}` and `ubx{n}`
//! (x-derivative of `u_n` and of its conjugate), each with an optional
//! `^power`. Factor order inside a term is irrelevant.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use super::FactorKind;

/// `coefficient · ∏ kind(u_index)` with factors kept sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicTerm {
    pub coefficient: Complex64,
    factors: Vec<(FactorKind, usize)>,
}

impl SymbolicTerm {
    pub fn new(coefficient: Complex64, mut factors: Vec<(FactorKind, usize)>) -> Self {
        factors.sort_unstable();
        Self { coefficient, factors }
    }

    pub fn factors(&self) -> &[(FactorKind, usize)] {
        &self.factors
    }

    /// Sum of iterate indices; equals the Adomian order the term belongs to.
    pub fn order(&self) -> usize {
        self.factors.iter().map(|&(_, i)| i).sum()
    }
}

/// Sum of symbolic terms keyed by their factor multiset.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SymbolicPoly {
    terms: BTreeMap<Vec<(FactorKind, usize)>, Complex64>,
}

impl SymbolicPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, term: SymbolicTerm) {
        let slot = self.terms.entry(term.factors).or_insert(Complex64::new(0.0, 0.0));
        *slot += term.coefficient;
        self.terms.retain(|_, c| *c != Complex64::new(0.0, 0.0));
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = SymbolicTerm> + '_ {
        self.terms.iter().map(|(f, &c)| SymbolicTerm {
            coefficient: c,
            factors: f.clone(),
        })
    }

    pub fn coefficient_of(&self, factors: &[(FactorKind, usize)]) -> Complex64 {
        let mut key = factors.to_vec();
        key.sort_unstable();
        self.terms.get(&key).copied().unwrap_or_default()
    }

    /// Terms of `self - other` whose coefficient magnitude is at least `tol`.
    pub fn difference(&self, other: &Self, tol: f64) -> SymbolicPoly {
        let mut terms = BTreeMap::new();
        for key in self.terms.keys().chain(other.terms.keys()) {
            let d =
                self.terms.get(key).copied().unwrap_or_default() - other.terms.get(key).copied().unwrap_or_default();
            if d.norm() >= tol {
                terms.insert(key.clone(), d);
            }
        }
        SymbolicPoly { terms }
    }

    /// Same factor multisets with coefficients within `tol`.
    pub fn matches(&self, other: &Self, tol: f64) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.keys().all(|k| other.terms.contains_key(k))
            && self.difference(other, tol).is_empty()
    }
}

impl Add for &SymbolicPoly {
    type Output = SymbolicPoly;

    fn add(self, rhs: &SymbolicPoly) -> SymbolicPoly {
        let mut out = self.clone();
        for t in rhs.terms() {
            out.add_term(t);
        }
        out
    }
}

fn fmt_real(v: f64) -> String {
    format!("{v}")
}

/// Coefficient text; the sign is returned separately when the value is
/// purely real or purely imaginary.
fn fmt_coefficient(c: Complex64) -> (bool, String) {
    if c.im == 0.0 {
        (c.re < 0.0, fmt_real(c.re.abs()))
    } else if c.re == 0.0 {
        let mag = c.im.abs();
        let body = if mag == 1.0 {
            "i".to_string()
        } else {
            format!("{}i", fmt_real(mag))
        };
        (c.im < 0.0, body)
    } else {
        let sign = if c.im < 0.0 { "-" } else { "+" };
        (false, format!("({}{}{}i)", fmt_real(c.re), sign, fmt_real(c.im.abs())))
    }
}

impl fmt::Display for SymbolicTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, body) = fmt_coefficient(self.coefficient);
        if neg {
            write!(f, "-")?;
        }
        write!(f, "{body}")?;
        write_factors(f, &self.factors)
    }
}

fn write_factors(f: &mut fmt::Formatter<'_>, factors: &[(FactorKind, usize)]) -> fmt::Result {
    let mut i = 0;
    while i < factors.len() {
        let mut j = i;
        while j < factors.len() && factors[j] == factors[i] {
            j += 1;
        }
        let (kind, idx) = factors[i];
        write!(f, " {}{}", kind.symbol(), idx)?;
        if j - i > 1 {
            write!(f, "^{}", j - i)?;
        }
        i = j;
    }
    Ok(())
}

impl fmt::Display for SymbolicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (factors, &c)) in self.terms.iter().enumerate() {
            let (neg, body) = fmt_coefficient(c);
            match (n, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
            write_factors(f, factors)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseSymbolicError {
    #[error("empty term")]
    EmptyTerm,
    #[error("bad coefficient `{0}`")]
    Coefficient(String),
    #[error("bad factor `{0}`")]
    Factor(String),
    #[error("term `{0}` has no factors")]
    NoFactors(String),
}

fn parse_real(s: &str) -> Result<f64, ParseSymbolicError> {
    if s.is_empty() {
        return Ok(1.0);
    }
    s.parse::<f64>()
        .map_err(|_| ParseSymbolicError::Coefficient(s.to_string()))
}

fn parse_coefficient(tok: &str) -> Result<Complex64, ParseSymbolicError> {
    if let Some(inner) = tok.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let body = inner
            .strip_suffix('i')
            .ok_or_else(|| ParseSymbolicError::Coefficient(tok.to_string()))?;
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, ch)| ch == '+' || ch == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(|| ParseSymbolicError::Coefficient(tok.to_string()))?;
        let re = parse_real(&body[..split])?;
        let im_text = &body[split..];
        let im = match im_text {
            "+" => 1.0,
            "-" => -1.0,
            _ => parse_real(im_text)?,
        };
        return Ok(Complex64::new(re, im));
    }
    match tok.strip_suffix('i') {
        Some(mag) => Ok(Complex64::new(0.0, parse_real(mag)?)),
        None => Ok(Complex64::new(parse_real(tok)?, 0.0)),
    }
}

fn parse_factor(tok: &str) -> Result<(FactorKind, usize, usize), ParseSymbolicError> {
    let bad = || ParseSymbolicError::Factor(tok.to_string());
    let (kind, rest) = [
        ("ubx", FactorKind::DxConjU),
        ("ub", FactorKind::ConjU),
        ("ux", FactorKind::DxU),
        ("u", FactorKind::U),
    ]
    .iter()
    .find_map(|(p, k)| tok.strip_prefix(p).map(|r| (*k, r)))
    .ok_or_else(bad)?;
    let (idx, pow) = match rest.split_once('^') {
        Some((i, p)) => (i, p.parse::<usize>().map_err(|_| bad())?),
        None => (rest, 1),
    };
    let idx = idx.parse::<usize>().map_err(|_| bad())?;
    if pow == 0 {
        return Err(bad());
    }
    Ok((kind, idx, pow))
}

fn parse_term(text: &str, negate: bool) -> Result<SymbolicTerm, ParseSymbolicError> {
    let mut tokens = text
        .split(|ch: char| ch.is_whitespace() || ch == '*')
        .filter(|t| !t.is_empty())
        .peekable();
    let first = *tokens.peek().ok_or(ParseSymbolicError::EmptyTerm)?;
    let starts_factor = first.starts_with('u');
    let mut coefficient = if starts_factor {
        Complex64::new(1.0, 0.0)
    } else {
        tokens.next();
        parse_coefficient(first)?
    };
    if negate {
        coefficient = -coefficient;
    }
    let mut factors = Vec::new();
    for tok in tokens {
        let (kind, idx, pow) = parse_factor(tok)?;
        factors.extend(std::iter::repeat_n((kind, idx), pow));
    }
    if factors.is_empty() {
        return Err(ParseSymbolicError::NoFactors(text.to_string()));
    }
    Ok(SymbolicTerm::new(coefficient, factors))
}

impl FromStr for SymbolicPoly {
    type Err = ParseSymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut out = SymbolicPoly::zero();
        if s == "0" {
            return Ok(out);
        }
        // split on top-level + / - (parenthesized coefficients may contain signs)
        let mut depth = 0usize;
        let mut start = 0usize;
        let mut negate = false;
        let bytes = s.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth = depth.saturating_sub(1),
                b'+' | b'-' if depth == 0 => {
                    let chunk = s[start..i].trim();
                    if !chunk.is_empty() {
                        out.add_term(parse_term(chunk, negate)?);
                    } else if i != 0 && !s[..i].trim().is_empty() {
                        return Err(ParseSymbolicError::EmptyTerm);
                    }
                    negate = b == b'-';
                    start = i + 1;
                }
                _ => {}
            }
        }
        out.add_term(parse_term(s[start..].trim(), negate)?);
        Ok(out)
    }
}
