//! Linear partial differential operators with polynomial coefficients and
//! the operator <-> symbol correspondence.
//!
//! An operator is a finite sum `sum a_{j,alpha}(t,x) dt^j dx^alpha`. The
//! coefficient polynomials live in the base variables (t, x1..xn); applying
//! the operator to an exponential probe multiplies it by the full symbol
//! `p(x, xi)`, which is how every invariance question is reduced to polynomial
//! algebra. Translation invariance is decidable here because the coefficient
//! class is polynomial: it holds exactly when every coefficient has base
//! degree zero.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::jsonio::JsonError;
use crate::poly::{Monomial, SymbolPolynomial};
use crate::scalar::Scalar;

/// Key of one coefficient: time-derivative order `j` and the spatial
/// multi-index `alpha` (length n).
pub type CoeffKey = (usize, Vec<u32>);

#[derive(Clone, PartialEq, Eq)]
pub struct OperatorSpec {
    n: usize,
    m: usize,
    coeffs: BTreeMap<CoeffKey, SymbolPolynomial>,
}

#[derive(Debug, thiserror::Error)]
pub enum OperatorError {
    #[error("alpha multi-index has length {got}, expected {expected}")]
    BadAlphaLength { got: usize, expected: usize },
    #[error("coefficient key j={j}, alpha={alpha:?} has order {order}, above declared order {m}")]
    OrderExceeded {
        j: usize,
        alpha: Vec<u32>,
        order: usize,
        m: usize,
    },
    #[error("no nonzero coefficient at the declared order {m}")]
    MissingTopOrder { m: usize },
    #[error("coefficient polynomial has {got} variables, expected {expected}")]
    CoeffVariableCount { got: usize, expected: usize },
    #[error("operator has a variable coefficient at j={j}, alpha={alpha:?}")]
    VariableCoefficients { j: usize, alpha: Vec<u32> },
    #[error("spatial dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("{0}")]
    Json(#[from] JsonError),
}

/// Outcome of the translation-invariance test. The witness point `y`
/// satisfies `a(y) != a(0)` by exact evaluation.
#[derive(Clone, Debug)]
pub enum TranslationCheck {
    Invariant,
    NotInvariant {
        j: usize,
        alpha: Vec<u32>,
        point: Vec<Scalar>,
        at_point: Scalar,
        at_origin: Scalar,
    },
}

impl TranslationCheck {
    pub fn is_invariant(&self) -> bool {
        matches!(self, TranslationCheck::Invariant)
    }
}

impl OperatorSpec {
    /// Build a validated operator. Zero coefficient polynomials are pruned
    /// before any degree test; afterwards some coefficient of exact order `m`
    /// must survive (the zero operator, with no coefficients and m = 0, is
    /// admitted so downstream classifiers can flag it instead of crashing).
    pub fn new<I>(n: usize, m: usize, coeffs: I) -> Result<Self, OperatorError>
    where
        I: IntoIterator<Item = (CoeffKey, SymbolPolynomial)>,
    {
        assert!(n >= 1, "spatial dimension must be at least 1");
        let mut map = BTreeMap::new();
        for ((j, alpha), poly) in coeffs {
            if alpha.len() != n {
                return Err(OperatorError::BadAlphaLength {
                    got: alpha.len(),
                    expected: n,
                });
            }
            if poly.vars() != n + 1 {
                return Err(OperatorError::CoeffVariableCount {
                    got: poly.vars(),
                    expected: n + 1,
                });
            }
            if poly.is_zero() {
                continue;
            }
            let order = j + alpha.iter().map(|&a| a as usize).sum::<usize>();
            if order > m {
                return Err(OperatorError::OrderExceeded {
                    j,
                    alpha,
                    order,
                    m,
                });
            }
            let entry = map
                .entry((j, alpha))
                .or_insert_with(|| SymbolPolynomial::zero(n + 1));
            *entry = &*entry + &poly;
        }
        map.retain(|_, p: &mut SymbolPolynomial| !p.is_zero());
        if map.is_empty() {
            if m != 0 {
                return Err(OperatorError::MissingTopOrder { m });
            }
        } else {
            let has_top = map
                .keys()
                .any(|(j, alpha)| j + alpha.iter().map(|&a| a as usize).sum::<usize>() == m);
            if !has_top {
                return Err(OperatorError::MissingTopOrder { m });
            }
        }
        Ok(OperatorSpec { n, m, coeffs: map })
    }

    pub fn zero(n: usize) -> Self {
        OperatorSpec {
            n,
            m: 0,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&CoeffKey, &SymbolPolynomial)> {
        self.coeffs.iter()
    }

    /// The full symbol p(x, xi) of the operator.
    pub fn full_symbol(&self) -> FullSymbol {
        let n = self.n;
        let mut terms = BTreeMap::new();
        for ((j, alpha), poly) in &self.coeffs {
            let mut cov = Vec::with_capacity(n + 1);
            cov.push(*j as u32);
            cov.extend_from_slice(alpha);
            let cov = Monomial(cov);
            for (base, coeff) in poly.terms() {
                terms.insert((base.clone(), cov.clone()), coeff.clone());
            }
        }
        FullSymbol { n, terms }
    }

    /// Translation invariance holds iff every coefficient polynomial is
    /// constant in (t, x). On failure, returns the first offending key in
    /// graded key order together with an exact evaluating witness.
    pub fn is_translation_invariant(&self) -> TranslationCheck {
        for ((j, alpha), poly) in &self.coeffs {
            let origin_value = poly.coefficient(&Monomial::constant(self.n + 1));
            let deviation = poly.checked_sub(&SymbolPolynomial::constant(
                self.n + 1,
                origin_value.clone(),
            ))
            .expect("same variable count");
            if deviation.is_zero() {
                continue;
            }
            let point = deviation
                .nonvanishing_point()
                .expect("nonzero polynomial has a nonvanishing point");
            let at_point = poly.eval(&point).expect("point length matches");
            return TranslationCheck::NotInvariant {
                j: *j,
                alpha: alpha.clone(),
                point,
                at_point,
                at_origin: origin_value,
            };
        }
        TranslationCheck::Invariant
    }

    /// The constant symbol p(xi) with coefficients a_{j,alpha}(0). Rejects
    /// variable-coefficient operators; callers must run the translation test
    /// first.
    pub fn constant_symbol(&self) -> Result<SymbolPolynomial, OperatorError> {
        let mut p = SymbolPolynomial::zero(self.n + 1);
        for ((j, alpha), poly) in &self.coeffs {
            if poly.degree().unwrap_or(0) > 0 {
                return Err(OperatorError::VariableCoefficients {
                    j: *j,
                    alpha: alpha.clone(),
                });
            }
            let mut exps = Vec::with_capacity(self.n + 1);
            exps.push(*j as u32);
            exps.extend_from_slice(alpha);
            p.add_term(
                Monomial(exps),
                poly.coefficient(&Monomial::constant(self.n + 1)),
            );
        }
        Ok(p)
    }

    /// Inverse of `constant_symbol`: the constant-coefficient operator whose
    /// symbol is `p`.
    pub fn from_symbol(p: &SymbolPolynomial) -> Self {
        let n = p.vars() - 1;
        let m = p.degree().unwrap_or(0);
        let coeffs = p.terms().map(|(mono, coeff)| {
            let j = mono.exps()[0] as usize;
            let alpha = mono.exps()[1..].to_vec();
            (
                (j, alpha),
                SymbolPolynomial::constant(n + 1, coeff.clone()),
            )
        });
        OperatorSpec::new(n, m, coeffs).expect("symbol terms respect their own degree")
    }

    /// Composition of constant-coefficient operators; the symbol of the
    /// result is the product of the symbols.
    pub fn compose(&self, rhs: &OperatorSpec) -> Result<OperatorSpec, OperatorError> {
        if self.n != rhs.n {
            return Err(OperatorError::DimensionMismatch {
                left: self.n,
                right: rhs.n,
            });
        }
        let a = self.constant_symbol()?;
        let b = rhs.constant_symbol()?;
        Ok(OperatorSpec::from_symbol(&(&a * &b)))
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|((j, alpha), poly)| {
                json!({
                    "j": j,
                    "alpha": alpha,
                    "coeff_poly": poly.to_json(),
                })
            })
            .collect();
        json!({
            "n": self.n,
            "m": self.m,
            "coeffs": coeffs,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, OperatorError> {
        let obj = v.as_object().ok_or(JsonError::Shape {
            expected: "operator object",
            context: "operator".into(),
        })?;
        let n = obj
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or(JsonError::Shape {
                expected: "positive integer n",
                context: "operator.n".into(),
            })? as usize;
        let m = obj
            .get("m")
            .and_then(|x| x.as_u64())
            .ok_or(JsonError::Shape {
                expected: "non-negative integer m",
                context: "operator.m".into(),
            })? as usize;
        let coeffs_v = obj
            .get("coeffs")
            .and_then(|x| x.as_array())
            .ok_or(JsonError::Shape {
                expected: "coeffs array",
                context: "operator.coeffs".into(),
            })?;
        let mut coeffs = Vec::with_capacity(coeffs_v.len());
        for (idx, c) in coeffs_v.iter().enumerate() {
            let ctx = format!("operator.coeffs[{idx}]");
            let obj = c.as_object().ok_or(JsonError::Shape {
                expected: "coefficient object",
                context: ctx.clone(),
            })?;
            let j = obj
                .get("j")
                .and_then(|x| x.as_u64())
                .ok_or(JsonError::Shape {
                    expected: "integer j",
                    context: ctx.clone(),
                })? as usize;
            let alpha_v = obj
                .get("alpha")
                .and_then(|x| x.as_array())
                .ok_or(JsonError::Shape {
                    expected: "alpha array",
                    context: ctx.clone(),
                })?;
            let mut alpha = Vec::with_capacity(alpha_v.len());
            for a in alpha_v {
                alpha.push(a.as_u64().ok_or(JsonError::Shape {
                    expected: "non-negative integer alpha entry",
                    context: ctx.clone(),
                })? as u32);
            }
            let poly_v = obj.get("coeff_poly").ok_or(JsonError::Shape {
                expected: "coeff_poly field",
                context: ctx.clone(),
            })?;
            let poly = SymbolPolynomial::from_json(poly_v)?;
            coeffs.push(((j, alpha), poly));
        }
        OperatorSpec::new(n, m, coeffs)
    }
}

impl fmt::Debug for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperatorSpec(n={}, m={}, {} coeffs)", self.n, self.m, self.coeffs.len())
    }
}

/// The two-variable polynomial p(x, xi): base monomial in (t, x), covariable
/// monomial in (tau, xi), exact scalar coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FullSymbol {
    n: usize,
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl FullSymbol {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Scalar)> {
        self.terms.iter()
    }

    /// Specialize the base variables at a point, leaving a covariable symbol.
    pub fn at_base_point(&self, point: &[Scalar]) -> SymbolPolynomial {
        assert_eq!(point.len(), self.n + 1, "base point length mismatch");
        let mut p = SymbolPolynomial::zero(self.n + 1);
        for ((base, cov), coeff) in &self.terms {
            let mut value = coeff.clone();
            for (k, &e) in base.exps().iter().enumerate() {
                if e > 0 {
                    value = &value * &point[k].pow(e);
                }
            }
            p.add_term(cov.clone(), value);
        }
        p
    }

    pub fn at_origin(&self) -> SymbolPolynomial {
        self.at_base_point(&vec![Scalar::zero(); self.n + 1])
    }
}
