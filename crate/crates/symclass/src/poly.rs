//! Sparse multivariate polynomials over Gaussian rationals.
//!
//! A `SymbolPolynomial` is a polynomial in a fixed number of variables. For
//! space-time symbols the variable at index 0 is the time covariable tau and
//! indices `1..=n` are the spatial covariables xi_1..xi_n; for spatial symbols
//! all variables are spatial. Terms live in a `BTreeMap` keyed by monomials in
//! graded lexicographic order, so iteration, printing, and JSON output are
//! deterministic. Zero coefficients are never stored: two polynomials are
//! equal iff their term maps are equal.

use std::collections::BTreeMap;
use std::collections::btree_map::Entry;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;
use serde_json::{json, Value};

use crate::jsonio::{self, JsonError};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("variable count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix of size {matrix} does not match polynomial in {vars} variables")]
    MatrixSizeMismatch { matrix: usize, vars: usize },
    #[error("point of length {point} does not match polynomial in {vars} variables")]
    PointLengthMismatch { point: usize, vars: usize },
    #[error("variable index {var} out of range for {vars} variables")]
    VariableOutOfRange { var: usize, vars: usize },
    #[error("polynomial depends on variable {var}, expected none")]
    UnexpectedVariable { var: usize },
}

/// Exponent vector; index 0 is the tau exponent for space-time symbols.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    pub fn variable(vars: usize, idx: usize) -> Self {
        assert!(idx < vars, "variable index out of range");
        let mut exps = vec![0; vars];
        exps[idx] = 1;
        Monomial(exps)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

// Graded lexicographic order: compare total degree first, then exponents.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct SymbolPolynomial {
    vars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl SymbolPolynomial {
    pub fn zero(vars: usize) -> Self {
        assert!(vars > 0, "polynomial needs at least one variable");
        SymbolPolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, value: Scalar) -> Self {
        let mut p = SymbolPolynomial::zero(vars);
        p.add_term(Monomial::constant(vars), value);
        p
    }

    pub fn one(vars: usize) -> Self {
        SymbolPolynomial::constant(vars, Scalar::one())
    }

    pub fn variable(vars: usize, idx: usize) -> Self {
        let mut p = SymbolPolynomial::zero(vars);
        p.add_term(Monomial::variable(vars, idx), Scalar::one());
        p
    }

    pub fn from_terms<I>(vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = SymbolPolynomial::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars, "monomial length mismatch");
            p.add_term(m, c);
        }
        p
    }

    /// Accumulate a term, keeping the sparse form canonical.
    pub fn add_term(&mut self, mono: Monomial, coeff: Scalar) {
        debug_assert_eq!(mono.0.len(), self.vars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// `Some(d)` when every term has total degree `d`; `None` for zero or mixed.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.degree());
        let first = degs.next()?;
        if degs.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn coefficient(&self, mono: &Monomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn max_exponent(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    fn check_same_vars(&self, rhs: &Self) -> Result<(), AlgebraError> {
        if self.vars != rhs.vars {
            Err(AlgebraError::DimensionMismatch {
                left: self.vars,
                right: rhs.vars,
            })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_same_vars(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_same_vars(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_same_vars(rhs)?;
        let mut out = SymbolPolynomial::zero(self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        let mut out = SymbolPolynomial::zero(self.vars);
        if factor.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * factor);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = SymbolPolynomial::one(self.vars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Linear variable change: returns `p ∘ M`, i.e. variable `k` replaced by
    /// the k-th row combination `sum_j M[k][j] * x_j`, fully expanded.
    pub fn substitute_linear(&self, m: &Matrix) -> Result<Self, AlgebraError> {
        if m.size() != self.vars {
            return Err(AlgebraError::MatrixSizeMismatch {
                matrix: m.size(),
                vars: self.vars,
            });
        }
        let forms: Vec<SymbolPolynomial> = (0..self.vars)
            .map(|k| {
                let mut form = SymbolPolynomial::zero(self.vars);
                for j in 0..self.vars {
                    form.add_term(
                        Monomial::variable(self.vars, j),
                        Scalar::from_rational(m.get(k, j).clone()),
                    );
                }
                form
            })
            .collect();
        // Powers of each linear form are cached up to the largest exponent used.
        let mut powers: Vec<Vec<SymbolPolynomial>> = (0..self.vars)
            .map(|k| vec![SymbolPolynomial::one(self.vars), forms[k].clone()])
            .collect();
        for k in 0..self.vars {
            let need = self.max_exponent(k) as usize;
            while powers[k].len() <= need {
                let next = powers[k].last().unwrap() * &forms[k];
                powers[k].push(next);
            }
        }
        let mut out = SymbolPolynomial::zero(self.vars);
        for (mono, coeff) in &self.terms {
            let mut term = SymbolPolynomial::constant(self.vars, coeff.clone());
            for (k, &e) in mono.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[k][e as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Homogeneous parts keyed by total degree, ascending; zero parts omitted.
    /// Their sum reconstructs the polynomial exactly.
    pub fn homogeneous_parts(&self) -> Vec<(usize, SymbolPolynomial)> {
        let mut by_degree: BTreeMap<usize, SymbolPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_degree
                .entry(m.degree())
                .or_insert_with(|| SymbolPolynomial::zero(self.vars))
                .add_term(m.clone(), c.clone());
        }
        by_degree.into_iter().collect()
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Self, AlgebraError> {
        if var >= self.vars {
            return Err(AlgebraError::VariableOutOfRange {
                var,
                vars: self.vars,
            });
        }
        let mut out = SymbolPolynomial::zero(self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] = e - 1;
            out.add_term(Monomial(exps), c * &Scalar::from_int(e as i64));
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, AlgebraError> {
        if point.len() != self.vars {
            return Err(AlgebraError::PointLengthMismatch {
                point: point.len(),
                vars: self.vars,
            });
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (k, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &point[k].pow(e);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Substitute a constant for one variable; the result still has the same
    /// variable count, with exponent 0 in that slot.
    pub fn substitute_constant(&self, var: usize, value: &Scalar) -> Result<Self, AlgebraError> {
        if var >= self.vars {
            return Err(AlgebraError::VariableOutOfRange {
                var,
                vars: self.vars,
            });
        }
        let mut out = SymbolPolynomial::zero(self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut exps = m.0.clone();
            exps[var] = 0;
            out.add_term(Monomial(exps), c * &value.pow(e));
        }
        Ok(out)
    }

    /// Deterministic integer point where the polynomial does not vanish, or
    /// `None` for the zero polynomial. Variable `k` gets the first value from
    /// `0, 1, -1, 2, -2, ...` that leaves a nonzero residual polynomial.
    pub fn nonvanishing_point(&self) -> Option<Vec<Scalar>> {
        if self.is_zero() {
            return None;
        }
        let mut residual = self.clone();
        let mut point = vec![Scalar::zero(); self.vars];
        for var in 0..self.vars {
            let mut found = false;
            for v in candidate_values() {
                let value = Scalar::from_int(v);
                let next = residual
                    .substitute_constant(var, &value)
                    .expect("var in range");
                if !next.is_zero() {
                    residual = next;
                    point[var] = value;
                    found = true;
                    break;
                }
            }
            debug_assert!(found, "nonzero polynomial vanished on every candidate");
            if !found {
                return None;
            }
        }
        Some(point)
    }

    /// Drop the leading variable; fails if the polynomial depends on it.
    pub fn drop_leading_var(&self) -> Result<Self, AlgebraError> {
        if self.depends_on(0) {
            return Err(AlgebraError::UnexpectedVariable { var: 0 });
        }
        assert!(self.vars >= 2, "cannot drop the only variable");
        let mut out = SymbolPolynomial::zero(self.vars - 1);
        for (m, c) in &self.terms {
            out.add_term(Monomial(m.0[1..].to_vec()), c.clone());
        }
        Ok(out)
    }

    /// Prepend a fresh leading variable with exponent zero everywhere.
    pub fn lift_with_leading_var(&self) -> Self {
        let mut out = SymbolPolynomial::zero(self.vars + 1);
        for (m, c) in &self.terms {
            let mut exps = Vec::with_capacity(self.vars + 1);
            exps.push(0);
            exps.extend_from_slice(&m.0);
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Split along powers of the leading variable: returns `(j, p_j)` with
    /// `p = sum_j p_j * v0^j` and each `p_j` free of the leading variable
    /// (still in the full variable count).
    pub fn split_by_leading_var(&self) -> Vec<(u32, SymbolPolynomial)> {
        let mut by_power: BTreeMap<u32, SymbolPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let j = m.0[0];
            let mut exps = m.0.clone();
            exps[0] = 0;
            by_power
                .entry(j)
                .or_insert_with(|| SymbolPolynomial::zero(self.vars))
                .add_term(Monomial(exps), c.clone());
        }
        by_power.into_iter().collect()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                json!({
                    "coeff": jsonio::scalar_to_value(c),
                    "exps": m.0,
                })
            })
            .collect();
        json!({
            "n": self.vars - 1,
            "terms": terms,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, JsonError> {
        let obj = v.as_object().ok_or(JsonError::Shape {
            expected: "polynomial object",
            context: "polynomial".into(),
        })?;
        let n = obj
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or(JsonError::Shape {
                expected: "non-negative integer n",
                context: "polynomial.n".into(),
            })? as usize;
        let vars = n + 1;
        let terms = obj
            .get("terms")
            .and_then(|x| x.as_array())
            .ok_or(JsonError::Shape {
                expected: "terms array",
                context: "polynomial.terms".into(),
            })?;
        let mut p = SymbolPolynomial::zero(vars);
        for (idx, t) in terms.iter().enumerate() {
            let ctx = format!("polynomial.terms[{idx}]");
            let obj = t.as_object().ok_or(JsonError::Shape {
                expected: "term object",
                context: ctx.clone(),
            })?;
            let coeff = jsonio::scalar_from_value(
                obj.get("coeff").ok_or(JsonError::Shape {
                    expected: "coeff field",
                    context: ctx.clone(),
                })?,
                &ctx,
            )?;
            if coeff.is_zero() {
                return Err(JsonError::ZeroCoefficient(idx));
            }
            let exps_v = obj
                .get("exps")
                .and_then(|x| x.as_array())
                .ok_or(JsonError::Shape {
                    expected: "exps array",
                    context: ctx.clone(),
                })?;
            if exps_v.len() != vars {
                return Err(JsonError::Other(format!(
                    "{ctx}: expected {vars} exponents, got {}",
                    exps_v.len()
                )));
            }
            let mut exps = Vec::with_capacity(vars);
            for e in exps_v {
                let e = e.as_u64().ok_or(JsonError::Shape {
                    expected: "non-negative integer exponent",
                    context: ctx.clone(),
                })? as u32;
                exps.push(e);
            }
            let mono = Monomial(exps);
            if !p.coefficient(&mono).is_zero() {
                return Err(JsonError::Other(format!("{ctx}: duplicate monomial")));
            }
            p.add_term(mono, coeff);
        }
        Ok(p)
    }

    /// Render with a caller-supplied variable namer, leading term first.
    pub fn format_with<F>(&self, namer: F) -> String
    where
        F: Fn(usize) -> String,
    {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let (negative, magnitude) = if coeff.is_real() && coeff.re.is_negative() {
                (true, -coeff)
            } else {
                (false, coeff.clone())
            };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let vars_part: Vec<String> = mono
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| {
                    if e == 1 {
                        namer(k)
                    } else {
                        format!("{}^{}", namer(k), e)
                    }
                })
                .collect();
            let coeff_str = if vars_part.is_empty() {
                Some(wrap_scalar(&magnitude))
            } else if magnitude == Scalar::one() {
                None
            } else {
                Some(wrap_scalar(&magnitude))
            };
            match (coeff_str, vars_part.is_empty()) {
                (Some(c), true) => out.push_str(&c),
                (Some(c), false) => {
                    out.push_str(&c);
                    out.push('*');
                    out.push_str(&vars_part.join("*"));
                }
                (None, _) => out.push_str(&vars_part.join("*")),
            }
        }
        out
    }

    /// Space-time rendering: variable 0 is `tau`, the rest are `xi1..xin`.
    pub fn display_spacetime(&self) -> String {
        self.format_with(|k| {
            if k == 0 {
                "tau".to_string()
            } else {
                format!("xi{k}")
            }
        })
    }

    /// Spatial rendering: all variables are `xi1..xin`.
    pub fn display_spatial(&self) -> String {
        self.format_with(|k| format!("xi{}", k + 1))
    }

    /// Base-variable rendering: variable 0 is `t`, the rest are `x1..xn`.
    pub fn display_base(&self) -> String {
        self.format_with(|k| {
            if k == 0 {
                "t".to_string()
            } else {
                format!("x{k}")
            }
        })
    }
}

fn wrap_scalar(s: &Scalar) -> String {
    let text = s.to_string();
    if s.is_real() && !s.re.is_negative() {
        text
    } else {
        format!("({text})")
    }
}

/// 0, 1, -1, 2, -2, ...
fn candidate_values() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..).flat_map(|k| [k, -k]))
}

impl Add for &SymbolPolynomial {
    type Output = SymbolPolynomial;
    fn add(self, rhs: &SymbolPolynomial) -> SymbolPolynomial {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &SymbolPolynomial {
    type Output = SymbolPolynomial;
    fn sub(self, rhs: &SymbolPolynomial) -> SymbolPolynomial {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl Mul for &SymbolPolynomial {
    type Output = SymbolPolynomial;
    fn mul(self, rhs: &SymbolPolynomial) -> SymbolPolynomial {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &SymbolPolynomial {
    type Output = SymbolPolynomial;
    fn neg(self) -> SymbolPolynomial {
        self.scale(&(-&Scalar::one()))
    }
}

impl fmt::Debug for SymbolPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_spacetime())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn rat(n: i64, d: i64) -> crate::scalar::Rational {
        crate::scalar::Rational::new(n.into(), d.into())
    }

    fn tau(vars: usize) -> SymbolPolynomial {
        SymbolPolynomial::variable(vars, 0)
    }

    fn xi(vars: usize, k: usize) -> SymbolPolynomial {
        SymbolPolynomial::variable(vars, k)
    }

    /// tau^2 - xi1^2 - ... - xin^2 in 1+n variables.
    fn q(n: usize) -> SymbolPolynomial {
        let vars = n + 1;
        let mut p = &tau(vars) * &tau(vars);
        for k in 1..=n {
            p = &p - &(&xi(vars, k) * &xi(vars, k));
        }
        p
    }

    #[test]
    fn cancellation_to_canonical_form() {
        // (tau^2 - xi1^2) + xi1^2 = tau^2
        let vars = 2;
        let a = &(&tau(vars) * &tau(vars)) - &(&xi(vars, 1) * &xi(vars, 1));
        let b = &xi(vars, 1) * &xi(vars, 1);
        let sum = &a + &b;
        assert_eq!(sum, &tau(vars) * &tau(vars));
        assert_eq!(sum.num_terms(), 1);
    }

    #[test]
    fn difference_of_squares() {
        let vars = 2;
        let prod = &(&tau(vars) - &xi(vars, 1)) * &(&tau(vars) + &xi(vars, 1));
        let expected = &(&tau(vars) * &tau(vars)) - &(&xi(vars, 1) * &xi(vars, 1));
        assert_eq!(prod, expected);
    }

    #[test]
    fn square_of_minkowski_form() {
        // Hand-expanded (tau^2 - xi1^2 - xi2^2)^2:
        // tau^4 - 2 tau^2 xi1^2 - 2 tau^2 xi2^2 + xi1^4 + 2 xi1^2 xi2^2 + xi2^4
        let p = q(2);
        let sq = &p * &p;
        let mut expected = SymbolPolynomial::zero(3);
        expected.add_term(Monomial(vec![4, 0, 0]), Scalar::from_int(1));
        expected.add_term(Monomial(vec![2, 2, 0]), Scalar::from_int(-2));
        expected.add_term(Monomial(vec![2, 0, 2]), Scalar::from_int(-2));
        expected.add_term(Monomial(vec![0, 4, 0]), Scalar::from_int(1));
        expected.add_term(Monomial(vec![0, 2, 2]), Scalar::from_int(2));
        expected.add_term(Monomial(vec![0, 0, 4]), Scalar::from_int(1));
        assert_eq!(sq, expected);
    }

    #[test]
    fn dimension_mismatch_reports_both() {
        let a = SymbolPolynomial::one(2);
        let b = SymbolPolynomial::one(3);
        match a.checked_add(&b) {
            Err(AlgebraError::DimensionMismatch { left: 2, right: 3 }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn identity_substitution() {
        let p = q(1);
        let m = Matrix::identity(2);
        assert_eq!(p.substitute_linear(&m).unwrap(), p);
    }

    #[test]
    fn permutation_substitution() {
        // spatial n=2: swap xi1, xi2 maps xi1 to xi2
        let p = SymbolPolynomial::variable(2, 0);
        let m = Matrix::from_rows(vec![
            vec![rat(0, 1), rat(1, 1)],
            vec![rat(1, 1), rat(0, 1)],
        ])
        .unwrap();
        assert_eq!(p.substitute_linear(&m).unwrap(), SymbolPolynomial::variable(2, 1));
    }

    #[test]
    fn boost_substitution_oracle() {
        // p = tau^2 + xi1^2, M = [[5/3,4/3],[4/3,5/3]]:
        // tau -> (5 tau + 4 xi1)/3, xi1 -> (4 tau + 5 xi1)/3.
        // Hand expansion: ((5t+4x)^2 + (4t+5x)^2)/9 = (41 t^2 + 80 t x + 41 x^2)/9.
        let p = &(&tau(2) * &tau(2)) + &(&xi(2, 1) * &xi(2, 1));
        let m = Matrix::from_rows(vec![
            vec![rat(5, 3), rat(4, 3)],
            vec![rat(4, 3), rat(5, 3)],
        ])
        .unwrap();
        let got = p.substitute_linear(&m).unwrap();
        let mut expected = SymbolPolynomial::zero(2);
        expected.add_term(Monomial(vec![2, 0]), Scalar::from_ratio(41, 9));
        expected.add_term(Monomial(vec![1, 1]), Scalar::from_ratio(80, 9));
        expected.add_term(Monomial(vec![0, 2]), Scalar::from_ratio(41, 9));
        assert_eq!(got, expected);
    }

    #[test]
    fn substitution_size_mismatch() {
        let p = q(2);
        let m = Matrix::identity(2);
        assert!(matches!(
            p.substitute_linear(&m),
            Err(AlgebraError::MatrixSizeMismatch { matrix: 2, vars: 3 })
        ));
    }

    #[test]
    fn homogeneous_decomposition() {
        let p = &q(2) + &SymbolPolynomial::one(3);
        let parts = p.homogeneous_parts();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, 0);
        assert_eq!(parts[0].1, SymbolPolynomial::one(3));
        assert_eq!(parts[1].0, 2);
        assert_eq!(parts[1].1, q(2));

        assert!(SymbolPolynomial::zero(3).homogeneous_parts().is_empty());

        // tau^3 + tau*xi1^2 + tau
        let vars = 2;
        let t = tau(vars);
        let p = &(&(&t * &t) * &t) + &(&(&t * &xi(vars, 1)) * &xi(vars, 1));
        let p = &p + &t;
        let parts = p.homogeneous_parts();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (1, t.clone()));
        assert_eq!(parts[1].0, 3);
    }

    #[test]
    fn partial_derivatives() {
        let p = q(1);
        let two_tau = tau(2).scale(&Scalar::from_int(2));
        assert_eq!(p.partial_derivative(0).unwrap(), two_tau);
        let minus_two_xi = xi(2, 1).scale(&Scalar::from_int(-2));
        assert_eq!(p.partial_derivative(1).unwrap(), minus_two_xi);
        // d/dxi2 (xi1^3) = 0 in 3 variables
        let cube = xi(3, 1).pow(3);
        assert!(cube.partial_derivative(2).unwrap().is_zero());
        assert!(matches!(
            p.partial_derivative(5),
            Err(AlgebraError::VariableOutOfRange { var: 5, vars: 2 })
        ));
    }

    #[test]
    fn evaluation() {
        let p = q(2);
        let e0 = vec![Scalar::from_int(1), Scalar::zero(), Scalar::zero()];
        let e1 = vec![Scalar::zero(), Scalar::from_int(1), Scalar::zero()];
        assert_eq!(p.eval(&e0).unwrap(), Scalar::from_int(1));
        assert_eq!(p.eval(&e1).unwrap(), Scalar::from_int(-1));

        // tau^2 + 3 at tau = 2
        let p = &(&tau(2) * &tau(2)) + &SymbolPolynomial::constant(2, Scalar::from_int(3));
        let at = vec![Scalar::from_int(2), Scalar::from_int(99)];
        assert_eq!(p.eval(&at).unwrap(), Scalar::from_int(7));

        assert!(p.eval(&[Scalar::zero()]).is_err());
    }

    #[test]
    fn nonvanishing_point_is_exact() {
        // t (vanishes at origin, scan must move past it)
        let p = tau(2);
        let pt = p.nonvanishing_point().unwrap();
        assert!(!p.eval(&pt).unwrap().is_zero());
        assert_eq!(pt[0], Scalar::from_int(1));

        assert!(SymbolPolynomial::zero(2).nonvanishing_point().is_none());
    }

    #[test]
    fn json_round_trip() {
        let p = &q(2).scale(&Scalar::from_ratio(3, 2)) + &SymbolPolynomial::constant(3, Scalar::i());
        let v = p.to_json();
        let back = SymbolPolynomial::from_json(&v).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn json_rejects_zero_coefficient() {
        let v = serde_json::json!({
            "n": 1,
            "terms": [{"coeff": {"re": [0,1], "im": [0,1]}, "exps": [1, 0]}],
        });
        assert!(SymbolPolynomial::from_json(&v).is_err());
    }

    #[test]
    fn display_ordering() {
        let p = &q(1) + &SymbolPolynomial::constant(2, Scalar::from_int(5));
        assert_eq!(p.display_spacetime(), "tau^2 - xi1^2 + 5");
    }
}
