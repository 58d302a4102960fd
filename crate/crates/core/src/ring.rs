//! Exact arithmetic in the Laurent polynomial ring `Z[x1^±1, y1^±1, ..., xg^±1, yg^±1]`.
//!
//! Coefficients are arbitrary-precision integers. Exponents are `i32` and every
//! exponent computation is overflow-checked; an overflow surfaces as
//! [`RingError::ExponentOverflow`] from the fallible entry points and as a panic
//! from the operator impls.
//!
//! Terms are kept in the canonical term order (see [`Monomial::canonical_cmp`]),
//! which is also the order used by [`LaurentPoly::canonical_string`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("variable sets differ: genus {left} vs genus {right}")]
    VariableMismatch { left: usize, right: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("substitution must give one image per variable: expected {expected}, got {got}")]
    SubstitutionArity { expected: usize, got: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// The ordered generators `x1, y1, ..., xg, yg` of a genus-`g` surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariableSet {
    genus: usize,
}

impl VariableSet {
    pub fn new(genus: usize) -> Self {
        VariableSet { genus }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn len(&self) -> usize {
        2 * self.genus
    }

    pub fn is_empty(&self) -> bool {
        self.genus == 0
    }

    /// Name of variable `i`. Genus one and two use the short names
    /// `x, y` and `x, y, u, v`; larger genera use `x1, y1, x2, ...`.
    pub fn name(&self, i: usize) -> String {
        assert!(i < self.len(), "variable index {i} out of range");
        if self.genus <= 2 {
            ["x", "y", "u", "v"][i].to_string()
        } else {
            let letter = if i.is_multiple_of(2) { 'x' } else { 'y' };
            format!("{letter}{}", i / 2 + 1)
        }
    }

    pub fn names(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.name(i)).collect()
    }

    /// Resolves a variable name. `x1, y1, ...` always work; the aliases
    /// `x, y, u, v` are accepted when `g <= 2`.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        if self.genus <= 2 {
            let alias = match name {
                "x" => Some(0),
                "y" => Some(1),
                "u" => Some(2),
                "v" => Some(3),
                _ => None,
            };
            if let Some(i) = alias {
                return (i < self.len()).then_some(i);
            }
        }
        let (letter, digits) = name.split_at(1.min(name.len()));
        let offset = match letter {
            "x" => 0,
            "y" => 1,
            _ => return None,
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let k: usize = digits.parse().ok()?;
        if k == 0 || k > self.genus {
            return None;
        }
        Some(2 * (k - 1) + offset)
    }

    fn ensure_same(&self, other: &VariableSet) -> Result<(), RingError> {
        if self == other {
            Ok(())
        } else {
            Err(RingError::VariableMismatch {
                left: self.genus,
                right: other.genus,
            })
        }
    }
}

/// An element of the deck group, stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[i32]>,
}

impl Monomial {
    pub fn one(vars: VariableSet) -> Self {
        Monomial {
            exps: vec![0; vars.len()].into_boxed_slice(),
        }
    }

    pub fn from_exponents(exps: impl Into<Vec<i32>>) -> Self {
        Monomial {
            exps: exps.into().into_boxed_slice(),
        }
    }

    /// The monomial of a single variable raised to `power`.
    pub fn var(vars: VariableSet, index: usize, power: i32) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[index] = power;
        Monomial::from_exponents(exps)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.exps
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, RingError> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b).ok_or(RingError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Monomial::from_exponents(exps))
    }

    pub fn checked_inv(&self) -> Result<Monomial, RingError> {
        let exps = self
            .exps
            .iter()
            .map(|a| a.checked_neg().ok_or(RingError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Monomial::from_exponents(exps))
    }

    pub fn checked_pow(&self, k: i32) -> Result<Monomial, RingError> {
        let exps = self
            .exps
            .iter()
            .map(|a| a.checked_mul(k).ok_or(RingError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Monomial::from_exponents(exps))
    }

    /// Panicking group law; see [`Monomial::checked_mul`].
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn inv(&self) -> Monomial {
        self.checked_inv().expect("monomial exponent overflow")
    }

    /// The representative of `{m, m^-1}` whose first nonzero exponent is positive.
    pub fn orient_positive(&self) -> Monomial {
        match self.exps.iter().find(|&&e| e != 0) {
            Some(&e) if e < 0 => self.inv(),
            _ => self.clone(),
        }
    }

    /// Canonical term order: total absolute degree first, then variable by
    /// variable in `VariableSet` order, where a nonzero exponent sorts before
    /// zero and nonzero exponents sort by `(|e|, e < 0)`. The constant term
    /// comes first and `x` precedes `x^-1`.
    pub fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        fn degree(m: &Monomial) -> i64 {
            m.exps.iter().map(|&e| (e as i64).abs()).sum()
        }
        fn key(e: i32) -> (u8, u32, bool) {
            if e == 0 {
                (1, 0, false)
            } else {
                (0, e.unsigned_abs(), e < 0)
            }
        }
        degree(self).cmp(&degree(other)).then_with(|| {
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| key(a).cmp(&key(b)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }

    /// Renders the monomial as `x^1 y^-1`; the identity renders as the empty string.
    pub fn render(&self, vars: VariableSet) -> String {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, e)| format!("{}^{}", vars.name(i), e))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite integer combination of monomials. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: VariableSet,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(vars: VariableSet) -> Self {
        LaurentPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: VariableSet) -> Self {
        Self::constant(vars, 1)
    }

    pub fn constant(vars: VariableSet, c: impl Into<BigInt>) -> Self {
        Self::term(vars, c, Monomial::one(vars))
    }

    pub fn monomial(vars: VariableSet, m: Monomial) -> Self {
        Self::term(vars, 1, m)
    }

    pub fn term(vars: VariableSet, c: impl Into<BigInt>, m: Monomial) -> Self {
        assert_eq!(
            m.num_vars(),
            vars.len(),
            "monomial does not match variable set"
        );
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { vars, terms }
    }

    /// Builds a polynomial from `(coefficient, monomial)` pairs, collecting
    /// repeated monomials.
    pub fn from_terms<I, C>(vars: VariableSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (C, Monomial)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero(vars);
        for (c, m) in terms {
            assert_eq!(
                m.num_vars(),
                vars.len(),
                "monomial does not match variable set"
            );
            p.add_term(m, c.into());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> VariableSet {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next()
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        self.vars.ensure_same(&other.vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        self.vars.ensure_same(&other.vars)?;
        let mut out = LaurentPoly::zero(self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.checked_mul(m2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> LaurentPoly {
        if k.is_zero() {
            return LaurentPoly::zero(self.vars);
        }
        LaurentPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Multiplies by a single monomial.
    pub fn shift(&self, m: &Monomial) -> Result<LaurentPoly, RingError> {
        let mut out = LaurentPoly::zero(self.vars);
        for (t, c) in &self.terms {
            out.add_term(t.checked_mul(m)?, c.clone());
        }
        Ok(out)
    }

    /// Replaces every monomial by its inverse.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.inv(), c.clone()))
                .collect(),
        }
    }

    /// Sum of all coefficients: the evaluation at `x_i = y_i = 1`.
    pub fn augment(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Ring homomorphism sending variable `i` to `images[i]`. All images must
    /// share one variable set, which becomes the variable set of the result.
    pub fn substitute(
        &self,
        images: &[Monomial],
        target: VariableSet,
    ) -> Result<LaurentPoly, RingError> {
        if images.len() != self.vars.len() {
            return Err(RingError::SubstitutionArity {
                expected: self.vars.len(),
                got: images.len(),
            });
        }
        for img in images {
            if img.num_vars() != target.len() {
                return Err(RingError::VariableMismatch {
                    left: target.genus(),
                    right: img.num_vars() / 2,
                });
            }
        }
        let mut out = LaurentPoly::zero(target);
        for (m, c) in &self.terms {
            let mut image = Monomial::one(target);
            for (img, &e) in images.iter().zip(m.exponents()) {
                if e != 0 {
                    image = image.checked_mul(&img.checked_pow(e)?)?;
                }
            }
            out.add_term(image, c.clone());
        }
        Ok(out)
    }

    /// Multiplies by -1 if needed so that the leading canonical term is positive.
    pub fn sign_normalized(&self) -> LaurentPoly {
        match self.leading() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Deterministic rendering, e.g. `6 - x^1 - x^-1 - y^1`. Coefficients of
    /// absolute value one are omitted in front of non-constant monomials.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, false) => {}
                (0, true) => out.push_str("- "),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            let abs = c.abs();
            let body = m.render(self.vars);
            if body.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&format!("{abs} {body}"));
            }
        }
        out
    }

    /// Parses `term ((+|-) term)*` where `term = [int] (var^int)*`.
    /// Juxtaposition and `*` both denote multiplication; a bare variable has
    /// exponent one and `^{-1}` is accepted alongside `^-1`.
    pub fn parse(vars: VariableSet, text: &str) -> Result<LaurentPoly, RingError> {
        Parser::new(vars, text).parse_poly()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

// Operator impls panic on mismatched variable sets or exponent overflow;
// the `try_*` methods are the fallible counterparts.
macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

struct Parser<'a> {
    vars: VariableSet,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(vars: VariableSet, text: &'a str) -> Self {
        Parser {
            vars,
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, RingError> {
        Err(RingError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_poly(&mut self) -> Result<LaurentPoly, RingError> {
        let mut out = LaurentPoly::zero(self.vars);
        let mut first = true;
        loop {
            let negative = match self.peek() {
                None if first => return self.err("empty polynomial"),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(c) => return self.err(format!("expected '+' or '-', found '{}'", c as char)),
            };
            first = false;
            let (c, m) = self.parse_term()?;
            out.add_term(m, if negative { -c } else { c });
        }
        Ok(out)
    }

    fn parse_term(&mut self) -> Result<(BigInt, Monomial), RingError> {
        let mut coeff = BigInt::one();
        let mut saw_anything = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.parse_unsigned()?;
            saw_anything = true;
        }
        let mut mono = Monomial::one(self.vars);
        loop {
            match self.peek() {
                Some(b'*') if saw_anything => {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
                        return self.err("expected a variable after '*'");
                    }
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                    let Some(index) = self.vars.index_of(name) else {
                        self.pos = start;
                        return self.err(format!(
                            "unknown variable '{name}' for genus {}",
                            self.vars.genus()
                        ));
                    };
                    let power = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.parse_exponent()?
                    } else {
                        1
                    };
                    mono = mono.checked_mul(&Monomial::var(self.vars, index, power))?;
                    saw_anything = true;
                }
                _ => break,
            }
        }
        if !saw_anything {
            return self.err("expected a coefficient or variable");
        }
        Ok((coeff, mono))
    }

    fn parse_unsigned(&mut self) -> Result<BigInt, RingError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits parse as integer"))
    }

    fn parse_exponent(&mut self) -> Result<i32, RingError> {
        let braced = self.peek() == Some(b'{');
        if braced {
            self.pos += 1;
        }
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let value = self.parse_unsigned()?;
        let value = if negative { -value } else { value };
        let value: i32 = match i32::try_from(&value) {
            Ok(v) => v,
            Err(_) => return Err(RingError::ExponentOverflow),
        };
        if braced {
            if self.peek() != Some(b'}') {
                return self.err("expected '}'");
            }
            self.pos += 1;
        }
        Ok(value)
    }
}

/// Parses a single monomial such as `x^1 y^-1`; `1` and the empty string are the identity.
pub fn parse_monomial(vars: VariableSet, text: &str) -> Result<Monomial, RingError> {
    if text.trim().is_empty() {
        return Ok(Monomial::one(vars));
    }
    let p = LaurentPoly::parse(vars, text)?;
    match p.terms.iter().next() {
        Some((m, c)) if p.num_terms() == 1 && c.is_one() => Ok(m.clone()),
        _ => Err(RingError::Parse {
            pos: 0,
            msg: format!("'{text}' is not a monic monomial"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> VariableSet {
        VariableSet::new(1)
    }

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(g1(), s).unwrap()
    }

    #[test]
    fn additive_inverse_cancels() {
        assert!((p("2 - x") + p("x - 2")).is_zero());
    }

    #[test]
    fn theta_skein_sum() {
        let sum = p("2 - x y^-1 - x^-1 y") + p("4 - x - x^-1 - y - y^-1");
        assert_eq!(sum, p("6 - x - x^-1 - y - y^-1 - x y^-1 - x^-1 y"));
        assert_eq!(sum.num_terms(), 7);
    }

    #[test]
    fn zero_is_additive_identity() {
        let q = p("3 x^2 - y^-1 + 7");
        assert_eq!(LaurentPoly::zero(g1()) + &q, q);
    }

    #[test]
    fn products() {
        assert_eq!(p("2 - x") * p("2 - x^-1"), p("5 - 2x - 2x^-1"));
        let q = p("x^3 y - 4");
        assert_eq!(&q * &LaurentPoly::one(g1()), q);
        let expanded = p("2 - x - x^-1") * p("2 - y - y^-1");
        let expected = p("4 - 2y - 2y^-1 - 2x + x y + x y^-1 - 2x^-1 + x^-1 y + x^-1 y^-1");
        assert_eq!(expanded, expected);
        assert_eq!(expanded.num_terms(), 9);
    }

    #[test]
    fn mismatched_variable_sets_are_rejected() {
        let a = LaurentPoly::one(VariableSet::new(1));
        let b = LaurentPoly::one(VariableSet::new(2));
        assert_eq!(
            a.try_add(&b),
            Err(RingError::VariableMismatch { left: 1, right: 2 })
        );
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn bar_examples() {
        assert_eq!(p("x + 2y^-1").bar(), p("x^-1 + 2y"));
        let theta = p("6 - x - x^-1 - y - y^-1 - x y^-1 - x^-1 y");
        assert_eq!(theta.bar(), theta);
        assert!(LaurentPoly::zero(g1()).bar().is_zero());
    }

    #[test]
    fn augmentation() {
        assert_eq!(
            p("6 - x - x^-1 - y - y^-1 - x y^-1 - x^-1 y").augment(),
            BigInt::zero()
        );
        assert_eq!(p("5").augment(), BigInt::from(5));
        assert_eq!(LaurentPoly::zero(g1()).augment(), BigInt::zero());
    }

    #[test]
    fn basis_change_substitution() {
        let vars = g1();
        let x = Monomial::var(vars, 0, 1);
        let y = Monomial::var(vars, 1, 1);
        let images = [y.inv(), x.mul(&y.inv())];
        let d1 = p("-2 + x + x^-1 + y + y^-1 - x^-1 y - x y^-1");
        let d3 = p("-2 - x - x^-1 + y + y^-1 + x^-1 y + x y^-1");
        assert_eq!(d1.substitute(&images, vars).unwrap(), d3);

        let identity = [x.clone(), y.clone()];
        assert_eq!(d1.substitute(&identity, vars).unwrap(), d1);
        let q = p("3x^2 y - y^-1 + 1");
        assert_eq!(q.substitute(&[x.inv(), y.inv()], vars).unwrap(), q.bar());
    }

    #[test]
    fn substitution_arity_checked() {
        let err = p("x").substitute(&[Monomial::one(g1())], g1()).unwrap_err();
        assert_eq!(
            err,
            RingError::SubstitutionArity {
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(LaurentPoly::zero(g1()).canonical_string(), "0");
        let m = LaurentPoly::term(g1(), -1, Monomial::from_exponents(vec![1, -1]));
        assert_eq!(m.canonical_string(), "- x^1 y^-1");
        let theta = p("- x^-1 y + 6 - y - x y^-1 - x - x^-1 - y^-1");
        assert_eq!(
            theta.canonical_string(),
            "6 - x^1 - x^-1 - y^1 - y^-1 - x^1 y^-1 - x^-1 y^1"
        );
        assert_eq!(p("2 x^2 - 3").canonical_string(), "- 3 + 2 x^2");
    }

    #[test]
    fn genus_three_names() {
        let vars = VariableSet::new(3);
        assert_eq!(vars.names(), ["x1", "y1", "x2", "y2", "x3", "y3"]);
        let q = LaurentPoly::parse(vars, "x3^2 - y1").unwrap();
        assert_eq!(q.canonical_string(), "- y1^1 + x3^2");
        assert!(LaurentPoly::parse(vars, "u").is_err());
        assert!(LaurentPoly::parse(vars, "x4").is_err());
    }

    #[test]
    fn parse_errors_carry_position() {
        match LaurentPoly::parse(g1(), "1 + z") {
            Err(RingError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(LaurentPoly::parse(g1(), "").is_err());
        assert!(LaurentPoly::parse(g1(), "x x ^").is_err());
        assert!(LaurentPoly::parse(g1(), "2 3").is_err());
    }

    #[test]
    fn parse_accepts_variants() {
        assert_eq!(p("x^{-1}*y"), p("x^-1 y"));
        assert_eq!(p("2*x"), p("2x^1"));
        assert_eq!(p("x1 y1^-1"), p("x y^-1"));
    }

    #[test]
    fn exponent_overflow_detected() {
        let big = LaurentPoly::monomial(g1(), Monomial::from_exponents(vec![i32::MAX, 0]));
        assert_eq!(big.try_mul(&p("x")), Err(RingError::ExponentOverflow));
        assert!(LaurentPoly::parse(g1(), "x^99999999999").is_err());
    }

    #[test]
    fn monomial_parsing() {
        let vars = g1();
        assert!(parse_monomial(vars, "1").unwrap().is_one());
        assert!(parse_monomial(vars, "").unwrap().is_one());
        assert_eq!(
            parse_monomial(vars, "x^1 y^-1").unwrap().exponents(),
            &[1, -1]
        );
        assert!(parse_monomial(vars, "2x").is_err());
        assert!(parse_monomial(vars, "x + y").is_err());
    }

    #[test]
    fn sign_normalization() {
        assert_eq!(p("-6 + x + x^-1").sign_normalized(), p("6 - x - x^-1"));
        assert_eq!(p("6 - x").sign_normalized(), p("6 - x"));
        assert!(LaurentPoly::zero(g1()).sign_normalized().is_zero());
    }

    #[test]
    fn orientation() {
        assert_eq!(
            Monomial::from_exponents(vec![-1, 1])
                .orient_positive()
                .exponents(),
            &[1, -1]
        );
        assert_eq!(
            Monomial::from_exponents(vec![0, 2])
                .orient_positive()
                .exponents(),
            &[0, 2]
        );
        assert!(Monomial::from_exponents(vec![0, 0])
            .orient_positive()
            .is_one());
    }
}
