//! Surface syntax for operators and symbols.
//!
//! Operators are written in a small expression language over the atoms
//! `dt`, `dxK`, `t`, `xK`, `i`, rational literals, parentheses, and the
//! operations `+ - * ^`. The language has no Leibniz rule: coefficients
//! multiply derivatives from the left only, and a base variable appearing to
//! the right of a derivative atom is rejected as a placement error rather
//! than silently reassociated. Symbols use the covariable atoms `tau` and
//! `xiK` instead.
//!
//! Literals are exact rationals; a decimal point is a parse error with a
//! hint, never a rounded value. All errors carry the byte offset of the
//! offending token.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::classify::Space;
use crate::operator::{OperatorError, OperatorSpec};
use crate::poly::SymbolPolynomial;
use crate::scalar::{Rational, Scalar};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("index {index} out of range at byte {offset}: dimension is {n}")]
    IndexOutOfRange {
        offset: usize,
        index: usize,
        n: usize,
    },
    #[error(
        "non-commutative placement at byte {offset}: coefficients must stand left of derivatives"
    )]
    NonCommutativePlacement { offset: usize },
    #[error("decimal literal at byte {offset}: decimals are inexact, write a fraction like 1/2")]
    DecimalLiteral { offset: usize },
    #[error("{0}")]
    Operator(#[from] OperatorError),
}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        offset,
        message: message.into(),
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum TokenKind {
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Dt,
    Dx(usize),
    BaseT,
    BaseX(usize),
    Tau,
    Xi(usize),
    ImaginaryUnit,
}

#[derive(Clone, Debug)]
struct Token {
    kind: TokenKind,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0usize;
    while pos < bytes.len() {
        let c = bytes[pos] as char;
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let offset = pos;
        let kind = match c {
            '+' => {
                pos += 1;
                TokenKind::Plus
            }
            '-' => {
                pos += 1;
                TokenKind::Minus
            }
            '*' => {
                pos += 1;
                TokenKind::Star
            }
            '/' => {
                pos += 1;
                TokenKind::Slash
            }
            '^' => {
                pos += 1;
                TokenKind::Caret
            }
            '(' => {
                pos += 1;
                TokenKind::LParen
            }
            ')' => {
                pos += 1;
                TokenKind::RParen
            }
            '0'..='9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos < bytes.len() && bytes[pos] == b'.' {
                    return Err(ParseError::DecimalLiteral { offset: start });
                }
                let digits = &text[start..pos];
                TokenKind::Int(digits.parse().expect("digit run"))
            }
            'a'..='z' | 'A'..='Z' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_alphabetic() {
                    pos += 1;
                }
                let name = &text[start..pos];
                let digit_start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let index: Option<usize> = if pos > digit_start {
                    Some(text[digit_start..pos].parse().map_err(|_| {
                        syntax(digit_start, "index literal too large")
                    })?)
                } else {
                    None
                };
                match (name, index) {
                    ("dt", None) => TokenKind::Dt,
                    ("dx", Some(k)) => TokenKind::Dx(k),
                    ("t", None) => TokenKind::BaseT,
                    ("x", Some(k)) => TokenKind::BaseX(k),
                    ("tau", None) => TokenKind::Tau,
                    ("xi", Some(k)) => TokenKind::Xi(k),
                    ("i", None) => TokenKind::ImaginaryUnit,
                    ("dx", None) => return Err(syntax(start, "dx needs an index, e.g. dx1")),
                    ("x", None) => return Err(syntax(start, "x needs an index, e.g. x1")),
                    ("xi", None) => return Err(syntax(start, "xi needs an index, e.g. xi1")),
                    _ => {
                        return Err(syntax(
                            start,
                            format!("unknown name `{}`", &text[start..pos]),
                        ))
                    }
                }
            }
            '.' => return Err(ParseError::DecimalLiteral { offset }),
            other => return Err(syntax(offset, format!("unexpected character `{other}`"))),
        };
        out.push(Token { kind, offset });
    }
    Ok(out)
}

/// Partially lowered operator value: derivative keys `(j, alpha)` mapped to
/// coefficient polynomials in the 1+n base variables (var 0 = t).
#[derive(Clone, Debug)]
struct Lowered {
    n: usize,
    terms: BTreeMap<(usize, Vec<u32>), SymbolPolynomial>,
}

impl Lowered {
    fn zero(n: usize) -> Self {
        Lowered {
            n,
            terms: BTreeMap::new(),
        }
    }

    fn coefficient(n: usize, poly: SymbolPolynomial) -> Self {
        let mut l = Lowered::zero(n);
        l.insert((0, vec![0; n]), poly);
        l
    }

    fn derivative(n: usize, j: usize, alpha: Vec<u32>) -> Self {
        let mut l = Lowered::zero(n);
        l.insert((j, alpha), SymbolPolynomial::constant(n + 1, Scalar::one()));
        l
    }

    fn insert(&mut self, key: (usize, Vec<u32>), poly: SymbolPolynomial) {
        if poly.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(poly);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &poly;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn has_derivative(&self) -> bool {
        self.terms
            .keys()
            .any(|(j, alpha)| *j > 0 || alpha.iter().any(|&a| a > 0))
    }

    fn has_variable_coefficient(&self) -> bool {
        self.terms.values().any(|p| p.degree().unwrap_or(0) > 0)
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (key, poly) in &rhs.terms {
            out.insert(key.clone(), poly.clone());
        }
        out
    }

    fn neg(&self) -> Self {
        let mut out = Lowered::zero(self.n);
        for (key, poly) in &self.terms {
            out.insert(key.clone(), -poly);
        }
        out
    }

    fn mul(&self, rhs: &Self, offset: usize) -> Result<Self, ParseError> {
        if self.has_derivative() && rhs.has_variable_coefficient() {
            return Err(ParseError::NonCommutativePlacement { offset });
        }
        let mut out = Lowered::zero(self.n);
        for ((j1, a1), p1) in &self.terms {
            for ((j2, a2), p2) in &rhs.terms {
                let alpha: Vec<u32> = a1.iter().zip(a2).map(|(x, y)| x + y).collect();
                out.insert((j1 + j2, alpha), p1 * p2);
            }
        }
        Ok(out)
    }

    fn pow(&self, exp: u32, offset: usize) -> Result<Self, ParseError> {
        let mut out = Lowered::coefficient(
            self.n,
            SymbolPolynomial::constant(self.n + 1, Scalar::one()),
        );
        for _ in 0..exp {
            out = out.mul(self, offset)?;
        }
        Ok(out)
    }

    fn finish(self) -> Result<OperatorSpec, ParseError> {
        if self.terms.is_empty() {
            return Ok(OperatorSpec::zero(self.n));
        }
        let m = self
            .terms
            .keys()
            .map(|(j, alpha)| j + alpha.iter().map(|&a| a as usize).sum::<usize>())
            .max()
            .unwrap_or(0);
        Ok(OperatorSpec::new(self.n, m, self.terms)?)
    }
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    n: usize,
    end: usize,
    mode: Mode,
    _text: &'a str,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Operator,
    SpacetimeSymbol,
    SpatialSymbol,
}

/// Either an operator value or a plain polynomial, depending on the mode.
enum ParsedValue {
    Op(Lowered),
    Poly(SymbolPolynomial),
}

impl ParsedValue {
    fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (ParsedValue::Op(a), ParsedValue::Op(b)) => ParsedValue::Op(a.add(b)),
            (ParsedValue::Poly(a), ParsedValue::Poly(b)) => ParsedValue::Poly(a + b),
            _ => unreachable!("modes never mix"),
        }
    }

    fn neg(&self) -> Self {
        match self {
            ParsedValue::Op(a) => ParsedValue::Op(a.neg()),
            ParsedValue::Poly(a) => ParsedValue::Poly(-a),
        }
    }

    fn mul(&self, rhs: &Self, offset: usize) -> Result<Self, ParseError> {
        match (self, rhs) {
            (ParsedValue::Op(a), ParsedValue::Op(b)) => Ok(ParsedValue::Op(a.mul(b, offset)?)),
            (ParsedValue::Poly(a), ParsedValue::Poly(b)) => Ok(ParsedValue::Poly(a * b)),
            _ => unreachable!("modes never mix"),
        }
    }

    fn pow(&self, exp: u32, offset: usize) -> Result<Self, ParseError> {
        match self {
            ParsedValue::Op(a) => Ok(ParsedValue::Op(a.pow(exp, offset)?)),
            ParsedValue::Poly(a) => Ok(ParsedValue::Poly(a.pow(exp))),
        }
    }
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, n: usize, mode: Mode) -> Result<Self, ParseError> {
        let tokens = lex(text)?;
        Ok(Parser {
            tokens,
            pos: 0,
            n,
            end: text.len(),
            mode,
            _text: text,
        })
    }

    fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|t| t.offset).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(k) if *k == kind => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(syntax(self.offset(), format!("expected {what}"))),
        }
    }

    fn poly_vars(&self) -> usize {
        match self.mode {
            Mode::Operator => self.n + 1,
            Mode::SpacetimeSymbol => self.n + 1,
            Mode::SpatialSymbol => self.n,
        }
    }

    fn scalar_value(&self, s: Scalar) -> ParsedValue {
        let poly = SymbolPolynomial::constant(self.poly_vars(), s);
        match self.mode {
            Mode::Operator => ParsedValue::Op(Lowered::coefficient(self.n, poly)),
            _ => ParsedValue::Poly(poly),
        }
    }

    fn check_index(&self, offset: usize, k: usize) -> Result<(), ParseError> {
        if k == 0 || k > self.n {
            return Err(ParseError::IndexOutOfRange {
                offset,
                index: k,
                n: self.n,
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<ParsedValue, ParseError> {
        let mut acc = if matches!(self.peek(), Some(TokenKind::Minus)) {
            self.pos += 1;
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(TokenKind::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(TokenKind::Minus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ParsedValue, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(TokenKind::Star)) {
            let offset = self.offset();
            self.pos += 1;
            acc = acc.mul(&self.factor()?, offset)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ParsedValue, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(TokenKind::Caret)) {
            let offset = self.offset();
            self.pos += 1;
            let exp = match self.bump() {
                Some(Token {
                    kind: TokenKind::Int(v),
                    offset,
                }) => u32::try_from(&v)
                    .map_err(|_| syntax(offset, "exponent too large"))?,
                t => {
                    return Err(syntax(
                        t.map(|t| t.offset).unwrap_or(self.end),
                        "expected a non-negative integer exponent",
                    ))
                }
            };
            return base.pow(exp, offset);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ParsedValue, ParseError> {
        let tok = self
            .bump()
            .ok_or_else(|| syntax(self.end, "unexpected end of input"))?;
        match tok.kind {
            TokenKind::Int(num) => {
                let value = if matches!(self.peek(), Some(TokenKind::Slash)) {
                    self.pos += 1;
                    match self.bump() {
                        Some(Token {
                            kind: TokenKind::Int(den),
                            offset,
                        }) => {
                            if den == BigInt::from(0) {
                                return Err(syntax(offset, "zero denominator"));
                            }
                            Rational::new(num, den)
                        }
                        t => {
                            return Err(syntax(
                                t.map(|t| t.offset).unwrap_or(self.end),
                                "expected a denominator",
                            ))
                        }
                    }
                } else {
                    Rational::from_integer(num)
                };
                Ok(self.scalar_value(Scalar::from_rational(value)))
            }
            TokenKind::ImaginaryUnit => Ok(self.scalar_value(Scalar::i())),
            TokenKind::LParen => {
                let inner = self.expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            TokenKind::Dt => match self.mode {
                Mode::Operator => Ok(ParsedValue::Op(Lowered::derivative(
                    self.n,
                    1,
                    vec![0; self.n],
                ))),
                _ => Err(syntax(tok.offset, "`dt` is not a symbol atom; use `tau`")),
            },
            TokenKind::Dx(k) => match self.mode {
                Mode::Operator => {
                    self.check_index(tok.offset, k)?;
                    let mut alpha = vec![0; self.n];
                    alpha[k - 1] = 1;
                    Ok(ParsedValue::Op(Lowered::derivative(self.n, 0, alpha)))
                }
                _ => Err(syntax(tok.offset, "`dx` is not a symbol atom; use `xi`")),
            },
            TokenKind::BaseT => match self.mode {
                Mode::Operator => Ok(ParsedValue::Op(Lowered::coefficient(
                    self.n,
                    SymbolPolynomial::variable(self.n + 1, 0),
                ))),
                _ => Err(syntax(tok.offset, "`t` is not a symbol atom")),
            },
            TokenKind::BaseX(k) => match self.mode {
                Mode::Operator => {
                    self.check_index(tok.offset, k)?;
                    Ok(ParsedValue::Op(Lowered::coefficient(
                        self.n,
                        SymbolPolynomial::variable(self.n + 1, k),
                    )))
                }
                _ => Err(syntax(tok.offset, "`x` is not a symbol atom")),
            },
            TokenKind::Tau => match self.mode {
                Mode::SpacetimeSymbol => {
                    Ok(ParsedValue::Poly(SymbolPolynomial::variable(self.n + 1, 0)))
                }
                Mode::SpatialSymbol => Err(syntax(
                    tok.offset,
                    "`tau` is not available for a euclidean symbol",
                )),
                Mode::Operator => Err(syntax(tok.offset, "`tau` is not an operator atom")),
            },
            TokenKind::Xi(k) => {
                self.check_index(tok.offset, k)?;
                match self.mode {
                    Mode::SpacetimeSymbol => {
                        Ok(ParsedValue::Poly(SymbolPolynomial::variable(self.n + 1, k)))
                    }
                    Mode::SpatialSymbol => {
                        Ok(ParsedValue::Poly(SymbolPolynomial::variable(self.n, k - 1)))
                    }
                    Mode::Operator => Err(syntax(tok.offset, "`xi` is not an operator atom")),
                }
            }
            TokenKind::Plus | TokenKind::Minus | TokenKind::Star | TokenKind::Slash
            | TokenKind::Caret | TokenKind::RParen => {
                Err(syntax(tok.offset, "expected an atom"))
            }
        }
    }

    fn finish_tokens(&self) -> Result<(), ParseError> {
        if self.pos < self.tokens.len() {
            return Err(syntax(self.offset(), "unexpected trailing input"));
        }
        Ok(())
    }
}

/// Parse an operator expression over dimension `n`.
pub fn parse_operator(text: &str, n: usize) -> Result<OperatorSpec, ParseError> {
    let mut parser = Parser::new(text, n, Mode::Operator)?;
    let value = parser.expr()?;
    parser.finish_tokens()?;
    match value {
        ParsedValue::Op(lowered) => lowered.finish(),
        ParsedValue::Poly(_) => unreachable!("operator mode"),
    }
}

/// Parse a covariable symbol: `tau`/`xiK` atoms for Minkowski (1+n
/// variables), `xiK` only for Euclidean (n variables).
pub fn parse_symbol(text: &str, n: usize, space: Space) -> Result<SymbolPolynomial, ParseError> {
    let mode = match space {
        Space::Minkowski => Mode::SpacetimeSymbol,
        Space::Euclidean => Mode::SpatialSymbol,
    };
    let mut parser = Parser::new(text, n, mode)?;
    let value = parser.expr()?;
    parser.finish_tokens()?;
    match value {
        ParsedValue::Poly(p) => Ok(p),
        ParsedValue::Op(_) => unreachable!("symbol mode"),
    }
}

fn scalar_expr(s: &Scalar) -> String {
    format!("({s})")
}

fn coeff_expr(poly: &SymbolPolynomial) -> String {
    let mut parts = Vec::new();
    for (mono, coeff) in poly.terms() {
        let mut factors = vec![scalar_expr(coeff)];
        for (var, &e) in mono.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = if var == 0 {
                "t".to_string()
            } else {
                format!("x{var}")
            };
            factors.push(if e == 1 { name } else { format!("{name}^{e}") });
        }
        parts.push(factors.join("*"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        format!("({})", parts.join(" + "))
    }
}

/// Print an operator back into the expression language. The output is
/// normalized, not pretty: `parse(print(parse(s))) = parse(s)` holds for all
/// valid `s`.
pub fn operator_to_expr(op: &OperatorSpec) -> String {
    let mut terms = Vec::new();
    for ((j, alpha), poly) in op.coeffs() {
        let mut factors = vec![coeff_expr(poly)];
        if *j > 0 {
            factors.push(if *j == 1 {
                "dt".to_string()
            } else {
                format!("dt^{j}")
            });
        }
        for (k, &a) in alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let name = format!("dx{}", k + 1);
            factors.push(if a == 1 { name } else { format!("{name}^{a}") });
        }
        terms.push(factors.join("*"));
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::minkowski_form;

    #[test]
    fn wave_operator_parses_to_its_symbol() {
        let op = parse_operator("dt^2 - dx1^2 - dx2^2", 2).unwrap();
        assert_eq!(op.order(), 2);
        assert_eq!(op.constant_symbol().unwrap(), minkowski_form(2));
    }

    #[test]
    fn complex_coefficient_and_constant_term() {
        let op = parse_operator("(3/2)*i*dx1 + 7", 1).unwrap();
        let symbol = op.constant_symbol().unwrap();
        let expected = &SymbolPolynomial::variable(2, 1)
            .scale(&(&Scalar::from_ratio(3, 2) * &Scalar::i()))
            + &SymbolPolynomial::constant(2, Scalar::from_int(7));
        assert_eq!(symbol, expected);
    }

    #[test]
    fn variable_coefficient_operator() {
        let op = parse_operator("t*dx1", 1).unwrap();
        assert_eq!(op.order(), 1);
        let ((j, alpha), poly) = op.coeffs().next().unwrap();
        assert_eq!((*j, alpha.as_slice()), (0, &[1u32][..]));
        assert_eq!(*poly, SymbolPolynomial::variable(2, 0));
        assert!(!op.is_translation_invariant().is_invariant());
    }

    #[test]
    fn placement_of_base_variable_after_derivative_is_rejected() {
        match parse_operator("dx1*t", 1) {
            Err(ParseError::NonCommutativePlacement { offset: 3 }) => {}
            other => panic!("expected placement error, got {other:?}"),
        }
    }

    #[test]
    fn derivative_index_beyond_dimension_is_rejected() {
        match parse_operator("dx5", 3) {
            Err(ParseError::IndexOutOfRange {
                offset: 0,
                index: 5,
                n: 3,
            }) => {}
            other => panic!("expected index error, got {other:?}"),
        }
    }

    #[test]
    fn decimal_literal_is_rejected_with_hint() {
        match parse_operator("0.5*dx1", 1) {
            Err(ParseError::DecimalLiteral { offset: 0 }) => {}
            other => panic!("expected decimal rejection, got {other:?}"),
        }
    }

    #[test]
    fn syntax_error_carries_byte_offset() {
        match parse_operator("dt^2 + + dx1", 1) {
            Err(ParseError::Syntax { offset: 7, .. }) => {}
            other => panic!("expected syntax error at byte 7, got {other:?}"),
        }
    }

    #[test]
    fn unary_minus_and_cancellation() {
        let op = parse_operator("-dt^2 + dt^2", 1).unwrap();
        assert!(op.is_zero());
    }

    #[test]
    fn symbol_parsing_both_spaces() {
        let q = parse_symbol("tau^2 - xi1^2 - xi2^2", 2, Space::Minkowski).unwrap();
        assert_eq!(q, minkowski_form(2));
        let lap = parse_symbol("xi1^2 + xi2^2", 2, Space::Euclidean).unwrap();
        assert_eq!(lap, crate::classify::euclidean_form(2));
        assert!(parse_symbol("tau", 2, Space::Euclidean).is_err());
    }

    #[test]
    fn print_parse_round_trip_on_samples() {
        for (text, n) in [
            ("dt^2 - dx1^2 - dx2^2", 2),
            ("(3/2)*i*dx1 + 7", 1),
            ("t*dx1 + x1^2*dt", 1),
            ("(1 - i)*dt*dx1^3 + 2/3", 2),
            ("0", 3),
        ] {
            let op = parse_operator(text, n).unwrap();
            let printed = operator_to_expr(&op);
            let reparsed = parse_operator(&printed, n).unwrap();
            assert_eq!(reparsed, op, "round trip failed for `{text}` -> `{printed}`");
        }
    }
}
