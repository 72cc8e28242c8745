//! Exact complex rational scalars, the coefficient field for all symbol algebra.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Gaussian rational: `re + im*i` with both parts exact arbitrary-precision
/// fractions. `BigRational` keeps every value reduced with a positive
/// denominator, so structural equality is exact equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            re: Rational::one(),
            im: Rational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Scalar {
            re: Rational::from_integer(BigInt::from(v)),
            im: Rational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            re: Rational::new(BigInt::from(num), BigInt::from(den)),
            im: Rational::zero(),
        }
    }

    pub fn from_rational(re: Rational) -> Self {
        Scalar {
            re,
            im: Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im_part = if self.im.is_one() {
            "i".to_string()
        } else if (-&self.im).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", fmt_rational(&self.im))
        };
        if self.re.is_zero() {
            write!(f, "{}", im_part)
        } else if self.im.is_negative() {
            write!(f, "{}{}", fmt_rational(&self.re), im_part)
        } else {
            write!(f, "{}+{}", fmt_rational(&self.re), im_part)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
