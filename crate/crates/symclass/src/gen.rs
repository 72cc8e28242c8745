//! Reproducible random instances for the decider-agreement corpus.
//!
//! Invariant instances are built by expanding a random coefficient vector
//! through powers of the generator symbol, so the expected canonical form is
//! known by construction. Perturbed instances add one random monomial of
//! positive degree outside the invariant subspace; since every invariant
//! symbol has multi-term homogeneous components (except for even powers of a
//! single spatial variable when n = 1), a single monomial always breaks
//! invariance once its degree is constrained appropriately.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{CanonicalForm, Space};
use crate::operator::OperatorSpec;
use crate::poly::{Monomial, SymbolPolynomial};
use crate::scalar::{Rational, Scalar};

pub const MAX_DIM: usize = 6;
pub const MAX_ORDER: usize = 10;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InstanceKind {
    Invariant,
    Perturbed,
}

impl InstanceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            InstanceKind::Invariant => "invariant",
            InstanceKind::Perturbed => "perturbed",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GenError {
    #[error("dimension {n} exceeds the supported maximum {MAX_DIM}")]
    DimensionTooLarge { n: usize },
    #[error("order {m} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge { m: usize },
    #[error("impossible kind: {reason}")]
    ImpossibleKind { reason: String },
}

/// One generated instance together with what it was built from, so tests
/// can compare classifier output against the construction.
#[derive(Clone, Debug)]
pub struct Instance {
    pub operator: OperatorSpec,
    pub kind: InstanceKind,
    /// Coefficient vector the invariant part was expanded from.
    pub b: Vec<Scalar>,
    /// The perturbing monomial, when `kind` is `Perturbed`.
    pub perturbation: Option<SymbolPolynomial>,
}

fn random_scalar<R: Rng>(rng: &mut R) -> Scalar {
    let part = |rng: &mut R| {
        let num = rng.gen_range(-5i64..=5);
        let den = rng.gen_range(1i64..=3);
        Rational::new(num.into(), den.into())
    };
    let re = part(rng);
    let im = if rng.gen_bool(0.3) {
        part(rng)
    } else {
        Rational::from_integer(0.into())
    };
    Scalar { re, im }
}

fn random_nonzero_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let s = random_scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Random coefficient vector of length `m/2 + 1` with nonzero top entry.
fn random_b<R: Rng>(rng: &mut R, m: usize) -> Vec<Scalar> {
    let len = m / 2 + 1;
    let mut b: Vec<Scalar> = (0..len).map(|_| random_scalar(rng)).collect();
    let top = b.last_mut().expect("len >= 1");
    if top.is_zero() {
        *top = random_nonzero_scalar(rng);
    }
    b
}

/// A random monomial of total degree in `1..=max_degree` in `vars`
/// variables, with the degree forced odd when `odd_only` is set.
fn random_monomial<R: Rng>(
    rng: &mut R,
    vars: usize,
    max_degree: usize,
    odd_only: bool,
) -> SymbolPolynomial {
    loop {
        let degree = rng.gen_range(1..=max_degree.max(1));
        if odd_only && degree % 2 == 0 {
            continue;
        }
        let mut exps = vec![0u32; vars];
        for _ in 0..degree {
            exps[rng.gen_range(0..vars)] += 1;
        }
        let mut p = SymbolPolynomial::zero(vars);
        p.add_term(Monomial(exps), random_nonzero_scalar(rng));
        return p;
    }
}

/// Deterministic instance corpus. The invariant kind expands a random
/// coefficient vector through generator powers; the perturbed kind adds one
/// positive-degree monomial, which never lies in the invariant subspace
/// (for Euclidean n = 1 the monomial degree is forced odd, since even
/// powers of the single variable are O(1)-invariant).
pub fn gen_instances(
    seed: u64,
    space: Space,
    n: usize,
    m: usize,
    count: usize,
    kind: InstanceKind,
) -> Result<Vec<Instance>, GenError> {
    if n > MAX_DIM {
        return Err(GenError::DimensionTooLarge { n });
    }
    if m > MAX_ORDER {
        return Err(GenError::OrderTooLarge { m });
    }
    if kind == InstanceKind::Perturbed && m == 0 {
        return Err(GenError::ImpossibleKind {
            reason: "a perturbed instance needs order at least 1; every degree-0 symbol is \
                     invariant"
                .to_string(),
        });
    }
    let symbol_vars = match space {
        Space::Euclidean => n,
        Space::Minkowski => n + 1,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let b = random_b(&mut rng, m);
        let cf = CanonicalForm {
            space,
            coeffs: b.clone(),
        };
        let invariant = cf.expand(n);
        let (symbol, perturbation) = match kind {
            InstanceKind::Invariant => (invariant, None),
            InstanceKind::Perturbed => {
                let odd_only = space == Space::Euclidean && n == 1;
                let mono = random_monomial(&mut rng, symbol_vars, m.max(1), odd_only);
                ((&invariant + &mono), Some(mono))
            }
        };
        // The symbol lowers to a constant-coefficient operator; for the
        // Euclidean case lift to include the (unused) time variable first.
        let spacetime_symbol = match space {
            Space::Euclidean => symbol.lift_with_leading_var(),
            Space::Minkowski => symbol,
        };
        let operator = OperatorSpec::from_symbol(&spacetime_symbol);
        out.push(Instance {
            operator,
            kind,
            b,
            perturbation,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_lorentz, classify_rotation};

    #[test]
    fn invariant_instances_round_trip_their_b_vector() {
        let instances =
            gen_instances(1, Space::Minkowski, 2, 4, 5, InstanceKind::Invariant).unwrap();
        assert_eq!(instances.len(), 5);
        for inst in &instances {
            let symbol = inst.operator.constant_symbol().unwrap();
            let verdict = classify_lorentz(&symbol).unwrap();
            let cf = verdict.canonical_form().expect("invariant by construction");
            assert_eq!(cf.coeffs, inst.b);
            assert_eq!(inst.b.len(), 3);
            assert!(!inst.b.last().unwrap().is_zero());
        }
    }

    #[test]
    fn perturbed_instances_are_never_invariant() {
        let instances =
            gen_instances(1, Space::Minkowski, 2, 4, 5, InstanceKind::Perturbed).unwrap();
        for inst in &instances {
            let symbol = inst.operator.constant_symbol().unwrap();
            assert!(!classify_lorentz(&symbol).unwrap().is_invariant());
        }
        let euclidean =
            gen_instances(3, Space::Euclidean, 1, 4, 10, InstanceKind::Perturbed).unwrap();
        for inst in &euclidean {
            let symbol = inst.operator.constant_symbol().unwrap();
            let spatial = symbol.drop_leading_var().unwrap();
            assert!(!classify_rotation(&spatial).unwrap().is_invariant());
        }
    }

    #[test]
    fn generation_is_reproducible_and_count_zero_is_empty() {
        let a = gen_instances(9, Space::Minkowski, 3, 6, 4, InstanceKind::Invariant).unwrap();
        let b = gen_instances(9, Space::Minkowski, 3, 6, 4, InstanceKind::Invariant).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.operator, y.operator);
            assert_eq!(x.b, y.b);
        }
        let empty = gen_instances(9, Space::Minkowski, 3, 6, 0, InstanceKind::Invariant).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn impossible_and_out_of_range_parameters_are_rejected() {
        assert!(matches!(
            gen_instances(1, Space::Minkowski, 2, 0, 1, InstanceKind::Perturbed),
            Err(GenError::ImpossibleKind { .. })
        ));
        assert!(matches!(
            gen_instances(1, Space::Minkowski, 7, 2, 1, InstanceKind::Invariant),
            Err(GenError::DimensionTooLarge { n: 7 })
        ));
        assert!(matches!(
            gen_instances(1, Space::Minkowski, 2, 11, 1, InstanceKind::Invariant),
            Err(GenError::OrderTooLarge { m: 11 })
        ));
    }
}
