//! Exact representations of O(n) and O(1,n) elements, their pull-back action
//! on symbols, and the associated Lie-algebra derivations.
//!
//! Group elements are rational matrices verified exactly against the defining
//! relation of their metric. Rotations and boosts come from the rational
//! parametrization of the unit circle / hyperbola, so every generated element
//! lies in the group with no rounding: `c = (1-t^2)/(1+t^2), s = 2t/(1+t^2)`
//! gives `c^2 + s^2 = 1`, and `c = (1+t^2)/(1-t^2), s = 2t/(1-t^2)` gives
//! `c^2 - s^2 = 1`.
//!
//! The pull-back convention is fixed throughout: acting by a group element
//! substitutes the transposed matrix into the symbol, matching the identity
//! `Lambda^* e_xi = e_{t(Lambda) xi}` for exponential probes.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::jsonio::{self, JsonError};
use crate::matrix::Matrix;
use crate::poly::{AlgebraError, SymbolPolynomial};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MetricTag {
    Euclidean,
    Minkowski,
}

impl MetricTag {
    fn metric(&self, size: usize) -> Matrix {
        match self {
            MetricTag::Euclidean => Matrix::identity(size),
            MetricTag::Minkowski => Matrix::minkowski_metric(size),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            MetricTag::Euclidean => "euclidean",
            MetricTag::Minkowski => "minkowski",
        }
    }
}

/// An exact matrix known to preserve its tagged metric.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupElement {
    tag: MetricTag,
    mat: Matrix,
}

#[derive(Debug, thiserror::Error)]
pub enum GroupError {
    #[error(
        "matrix does not preserve the {tag} metric: residual {residual} at entry ({row}, {col})"
    )]
    NotInGroup {
        tag: &'static str,
        row: usize,
        col: usize,
        residual: Rational,
    },
    #[error("light-like parameter |t| = 1 does not give a boost")]
    LightLikeBoost,
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("rotation plane needs two distinct indices, got {0} twice")]
    DegeneratePlane(usize),
    #[error("{0}")]
    Matrix(#[from] crate::matrix::MatrixError),
    #[error("{0}")]
    Json(#[from] JsonError),
}

/// Check the defining relation of the tagged group exactly. On failure,
/// reports the first nonzero entry of the residual `t(M) g M - g`.
pub fn verify_membership(mat: Matrix, tag: MetricTag) -> Result<GroupElement, GroupError> {
    let g = tag.metric(mat.size());
    for residual in [
        mat.transpose().mul(&g).mul(&mat).sub(&g),
        mat.mul(&g).mul(&mat.transpose()).sub(&g),
    ] {
        if let Some((row, col, value)) = residual.first_nonzero() {
            return Err(GroupError::NotInGroup {
                tag: tag.as_str(),
                row,
                col,
                residual: value.clone(),
            });
        }
    }
    Ok(GroupElement { tag, mat })
}

impl GroupElement {
    pub fn identity(size: usize, tag: MetricTag) -> Self {
        GroupElement {
            tag,
            mat: Matrix::identity(size),
        }
    }

    pub fn tag(&self) -> MetricTag {
        self.tag
    }

    pub fn size(&self) -> usize {
        self.mat.size()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    /// Group product (same tag and size).
    pub fn compose(&self, rhs: &GroupElement) -> GroupElement {
        assert_eq!(self.tag, rhs.tag, "metric tag mismatch in product");
        assert_eq!(self.size(), rhs.size(), "size mismatch in product");
        GroupElement {
            tag: self.tag,
            mat: self.mat.mul(&rhs.mat),
        }
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .mat
            .rows()
            .iter()
            .map(|row| {
                Value::Array(row.iter().map(jsonio::rational_to_value).collect())
            })
            .collect();
        json!({
            "tag": self.tag.as_str(),
            "entries": entries,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, GroupError> {
        let obj = v.as_object().ok_or(JsonError::Shape {
            expected: "group element object",
            context: "group element".into(),
        })?;
        let tag = match obj.get("tag").and_then(|t| t.as_str()) {
            Some("euclidean") => MetricTag::Euclidean,
            Some("minkowski") => MetricTag::Minkowski,
            _ => {
                return Err(JsonError::Shape {
                    expected: "tag \"euclidean\" or \"minkowski\"",
                    context: "group element".into(),
                }
                .into())
            }
        };
        let entries = obj
            .get("entries")
            .and_then(|e| e.as_array())
            .ok_or(JsonError::Shape {
                expected: "entries array",
                context: "group element".into(),
            })?;
        let mut rows = Vec::with_capacity(entries.len());
        for (r, row) in entries.iter().enumerate() {
            let row = row.as_array().ok_or(JsonError::Shape {
                expected: "matrix row",
                context: format!("entries[{r}]"),
            })?;
            let mut out = Vec::with_capacity(row.len());
            for (c, cell) in row.iter().enumerate() {
                out.push(jsonio::rational_from_value(
                    cell,
                    &format!("entries[{r}][{c}]"),
                )?);
            }
            rows.push(out);
        }
        verify_membership(Matrix::from_rows(rows)?, tag)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.tag.as_str(), self.mat)
    }
}

fn check_spatial_index(index: usize, n: usize) -> Result<(), GroupError> {
    if index == 0 || index > n {
        Err(GroupError::IndexOutOfRange { index, size: n })
    } else {
        Ok(())
    }
}

/// Plane rotation in O(n) through the rational circle point
/// `(c, s) = ((1-t^2)/(1+t^2), 2t/(1+t^2))`, acting in the (i, j) plane
/// (1-based spatial indices).
pub fn rational_rotation(n: usize, i: usize, j: usize, t: &Rational) -> Result<GroupElement, GroupError> {
    check_spatial_index(i, n)?;
    check_spatial_index(j, n)?;
    if i == j {
        return Err(GroupError::DegeneratePlane(i));
    }
    let one = Rational::one();
    let t2 = t * t;
    let denom = &one + &t2;
    let c = (&one - &t2) / &denom;
    let s = (t + t) / &denom;
    let (a, b) = (i - 1, j - 1);
    let mut m = Matrix::identity(n);
    m.set(a, a, c.clone());
    m.set(a, b, -&s);
    m.set(b, a, s);
    m.set(b, b, c);
    verify_membership(m, MetricTag::Euclidean)
}

/// Boost in O(1,n) through the rational hyperbola point
/// `(c, s) = ((1+t^2)/(1-t^2), 2t/(1-t^2))`, acting in the (tau, xi_i) plane.
pub fn rational_boost(n: usize, i: usize, t: &Rational) -> Result<GroupElement, GroupError> {
    check_spatial_index(i, n)?;
    if t.abs() == Rational::one() {
        return Err(GroupError::LightLikeBoost);
    }
    let one = Rational::one();
    let t2 = t * t;
    let denom = &one - &t2;
    let c = (&one + &t2) / &denom;
    let s = (t + t) / &denom;
    let mut m = Matrix::identity(n + 1);
    m.set(0, 0, c.clone());
    m.set(0, i, s.clone());
    m.set(i, 0, s);
    m.set(i, i, c);
    verify_membership(m, MetricTag::Minkowski)
}

/// Sign flip of a single variable (index 0 is tau for the Minkowski tag).
pub fn negate_var(size: usize, k: usize, tag: MetricTag) -> Result<GroupElement, GroupError> {
    if k >= size {
        return Err(GroupError::IndexOutOfRange { index: k, size });
    }
    let mut m = Matrix::identity(size);
    m.set(k, k, -Rational::one());
    verify_membership(m, tag)
}

/// The central element -I.
pub fn negate_all(size: usize, tag: MetricTag) -> GroupElement {
    let mut m = Matrix::zero(size);
    for k in 0..size {
        m.set(k, k, -Rational::one());
    }
    verify_membership(m, tag).expect("-I preserves any diagonal metric")
}

/// Transposition of two variables. For the Minkowski tag both must be
/// spatial; swapping tau with a spatial variable does not preserve the metric
/// and is reported as a membership violation.
pub fn swap_vars(size: usize, k: usize, l: usize, tag: MetricTag) -> Result<GroupElement, GroupError> {
    if k >= size {
        return Err(GroupError::IndexOutOfRange { index: k, size });
    }
    if l >= size {
        return Err(GroupError::IndexOutOfRange { index: l, size });
    }
    let mut m = Matrix::identity(size);
    m.set(k, k, Rational::zero());
    m.set(l, l, Rational::zero());
    m.set(k, l, Rational::one());
    m.set(l, k, Rational::one());
    verify_membership(m, tag)
}

/// Embed a spatial element R in O(n) into O(1,n) as the block matrix 1 (+) R.
pub fn embed_spatial(r: &GroupElement) -> GroupElement {
    assert_eq!(r.tag(), MetricTag::Euclidean, "can only embed O(n) elements");
    let n = r.size();
    let mut m = Matrix::identity(n + 1);
    for row in 0..n {
        for col in 0..n {
            m.set(row + 1, col + 1, r.matrix().get(row, col).clone());
        }
    }
    verify_membership(m, MetricTag::Minkowski).expect("block embedding preserves the metric")
}

/// Pull-back of a symbol under a group element: `xi -> p(t(Lambda) xi)`.
pub fn pullback_symbol(
    p: &SymbolPolynomial,
    elem: &GroupElement,
) -> Result<SymbolPolynomial, AlgebraError> {
    p.substitute_linear(&elem.matrix().transpose())
}

/// Infinitesimal generators of the identity component, named by 1-based
/// spatial indices.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Generator {
    Rotation { i: usize, j: usize },
    Boost { i: usize },
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Rotation { i, j } => write!(f, "rotation({i},{j})"),
            Generator::Boost { i } => write!(f, "boost({i})"),
        }
    }
}

/// All generators of the identity component of O(1,n).
pub fn spacetime_generators(n: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            out.push(Generator::Rotation { i, j });
        }
    }
    for i in 1..=n {
        out.push(Generator::Boost { i });
    }
    out
}

/// Rotation generator applied to a polynomial on raw variable indices:
/// `x_a d/dx_b - x_b d/dx_a`.
fn rotation_derivation(
    p: &SymbolPolynomial,
    a: usize,
    b: usize,
) -> Result<SymbolPolynomial, AlgebraError> {
    let vars = p.vars();
    let xa = SymbolPolynomial::variable(vars, a);
    let xb = SymbolPolynomial::variable(vars, b);
    Ok(&(&xa * &p.partial_derivative(b)?) - &(&xb * &p.partial_derivative(a)?))
}

/// Lie derivative of a space-time symbol (variable 0 = tau). The boost
/// generator is `K_i = tau d/dxi_i + xi_i d/dtau`; the relative plus sign is
/// forced by `t(Lambda) g Lambda = g` and annihilates `tau^2 - |xi|^2`.
pub fn lie_derivative_spacetime(
    p: &SymbolPolynomial,
    gen: &Generator,
) -> Result<SymbolPolynomial, AlgebraError> {
    let n = p.vars() - 1;
    match gen {
        Generator::Rotation { i, j } => {
            if *i == 0 || *i > n || *j == 0 || *j > n {
                return Err(AlgebraError::VariableOutOfRange {
                    var: (*i).max(*j),
                    vars: p.vars(),
                });
            }
            rotation_derivation(p, *i, *j)
        }
        Generator::Boost { i } => {
            if *i == 0 || *i > n {
                return Err(AlgebraError::VariableOutOfRange {
                    var: *i,
                    vars: p.vars(),
                });
            }
            let vars = p.vars();
            let tau = SymbolPolynomial::variable(vars, 0);
            let xi = SymbolPolynomial::variable(vars, *i);
            Ok(&(&tau * &p.partial_derivative(*i)?) + &(&xi * &p.partial_derivative(0)?))
        }
    }
}

/// Lie derivative of a spatial symbol under the (i, j) rotation generator
/// (1-based indices).
pub fn lie_derivative_spatial(
    p: &SymbolPolynomial,
    i: usize,
    j: usize,
) -> Result<SymbolPolynomial, AlgebraError> {
    let n = p.vars();
    if i == 0 || i > n || j == 0 || j > n {
        return Err(AlgebraError::VariableOutOfRange {
            var: i.max(j),
            vars: n,
        });
    }
    rotation_derivation(p, i - 1, j - 1)
}

/// Evaluate the pull-back at an exact point without materializing the
/// transformed polynomial: `p(t(Lambda) point)`.
pub fn pullback_eval(
    p: &SymbolPolynomial,
    elem: &GroupElement,
    point: &[Scalar],
) -> Result<Scalar, AlgebraError> {
    let size = elem.size();
    if point.len() != size {
        return Err(AlgebraError::PointLengthMismatch {
            point: point.len(),
            vars: size,
        });
    }
    let mt = elem.matrix().transpose();
    let mapped: Vec<Scalar> = (0..size)
        .map(|r| {
            let mut acc = Scalar::zero();
            for c in 0..size {
                acc = &acc + &(&Scalar::from_rational(mt.get(r, c).clone()) * &point[c]);
            }
            acc
        })
        .collect();
    p.eval(&mapped)
}
