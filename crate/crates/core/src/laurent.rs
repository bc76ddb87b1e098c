//! Exact Laurent polynomials over the integers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::LaurentError;

pub type Exponent = Vec<i64>;

/// Sparse map from exponent vectors to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Exponent,
    pub coef: String,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exp: Exponent, c: impl Into<BigInt>) -> Self {
        let nvars = exp.len();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPolynomial { nvars, terms }
    }

    /// The variable `x_i`, 0-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, 1)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
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

    fn check(&self, other: &Self) -> Result<(), LaurentError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(LaurentError::LengthMismatch(self.nvars, other.nvars))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if other.terms.len() == 1 {
            let (e, c) = other.terms.iter().next().unwrap();
            return Ok(self.mul_term(e, c));
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            return Ok(other.mul_term(e, c));
        }
        let mut acc: HashMap<Exponent, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        let mut buf = vec![0i64; self.nvars];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                for ((b, x), y) in buf.iter_mut().zip(ea).zip(eb) {
                    *b = x + y;
                }
                let prod = ca * cb;
                match acc.get_mut(buf.as_slice()) {
                    Some(v) => *v += prod,
                    None => {
                        acc.insert(buf.clone(), prod);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentPolynomial { nvars: self.nvars, terms })
    }

    /// Multiplies by `c * x^e`.
    pub fn mul_term(&self, e: &[i64], c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), v * c))
            .collect();
        LaurentPolynomial { nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_term(&vec![0; self.nvars], c)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// The quotient `f / g` when it is a Laurent polynomial.
    pub fn exact_div(&self, g: &Self) -> Result<Self, LaurentError> {
        self.check(g)?;
        if g.is_zero() {
            return Err(LaurentError::DivByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let mf = self.denominator_vector()?;
        let mg = g.denominator_vector()?;
        let f_poly = self.mul_term(&mf, &BigInt::one());
        let g_poly = g.mul_term(&mg, &BigInt::one());
        let (lt_g, lc_g) = g_poly.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut rem = f_poly.terms;
        let mut quot: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        while let Some((lt, lc)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if lt.iter().zip(&lt_g).any(|(a, b)| a < b) {
                return Err(LaurentError::NotDivisible);
            }
            let (qc, r) = lc.div_rem(&lc_g);
            if !r.is_zero() {
                return Err(LaurentError::NotDivisible);
            }
            let qe: Exponent = lt.iter().zip(&lt_g).map(|(a, b)| a - b).collect();
            for (e, c) in &g_poly.terms {
                let key: Exponent = e.iter().zip(&qe).map(|(a, b)| a + b).collect();
                let delta = c * &qc;
                use std::collections::btree_map::Entry;
                match rem.entry(key) {
                    Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                    Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quot.insert(qe, qc);
        }
        let shift: Exponent = mg.iter().zip(&mf).map(|(a, b)| a - b).collect();
        Ok(LaurentPolynomial { nvars: self.nvars, terms: quot }.mul_term(&shift, &BigInt::one()))
    }

    /// `m_i = -min exponent of x_i`.
    pub fn denominator_vector(&self) -> Result<Exponent, LaurentError> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(LaurentError::ZeroPolynomial)?;
        let mut m: Exponent = first.iter().map(|x| -x).collect();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).max(-b);
            }
        }
        Ok(m)
    }

    /// Coefficient at `x^{-m}` with `m` the denominator vector.
    pub fn numerator_constant_term(&self) -> Result<BigInt, LaurentError> {
        let m = self.denominator_vector()?;
        let e: Exponent = m.iter().map(|x| -x).collect();
        Ok(self.coefficient(&e))
    }

    /// Smallest exponent in lexicographic order, with its coefficient.
    pub fn lex_first(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().next()
    }

    /// Evaluates at integer values of the variables; all must be nonzero where exponents are negative.
    pub fn evaluate_rational(&self, x: &[i64]) -> num_rational::BigRational {
        use num_rational::BigRational;
        let mut s = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (xi, ei) in x.iter().zip(e) {
                let b = BigRational::from_integer(BigInt::from(*xi));
                let p = num_traits::pow(b.clone(), ei.unsigned_abs() as usize);
                t = if *ei >= 0 { t * p } else { t / p };
            }
            s += t;
        }
        s
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(e, c)| TermJson { exp: e.clone(), coef: c.to_string() })
            .collect()
    }

    pub fn from_json_terms(nvars: usize, terms: &[TermJson]) -> Option<Self> {
        let mut p = Self::zero(nvars);
        for t in terms {
            if t.exp.len() != nvars {
                return None;
            }
            p.add_term(t.exp.clone(), t.coef.parse().ok()?);
        }
        Some(p)
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $tm:ident) => {
        impl $tr<&LaurentPolynomial> for &LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                self.$tm(rhs).expect("Laurent polynomials in different variable counts")
            }
        }
        impl $tr<LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &[i64]) -> fmt::Result {
    let mut first = true;
    for (i, &p) in e.iter().enumerate() {
        if p == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if p == 1 {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "x{}^{}", i + 1, p)?;
        }
    }
    Ok(())
}

/// Renders `P(x)/x^m` with `m` the positive part of the denominator vector.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let m: Exponent = self.denominator_vector().unwrap().into_iter().map(|x| x.max(0)).collect();
        let num = self.mul_term(&m, &BigInt::one());
        let has_den = m.iter().any(|&x| x > 0);
        let multi = num.len() > 1;
        if has_den && multi {
            write!(f, "(")?;
        }
        for (k, (e, c)) in num.terms.iter().rev().enumerate() {
            let constant = e.iter().all(|&x| x == 0);
            if k > 0 {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if constant {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, e)?;
            }
        }
        if has_den && multi {
            write!(f, ")")?;
        }
        if has_den {
            write!(f, "/")?;
            let count = m.iter().filter(|&&x| x > 0).count();
            if count > 1 {
                write!(f, "(")?;
            }
            write_monomial(f, &m)?;
            if count > 1 {
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}

/// Parses expressions such as `(x1^2 + 1)/x2` or `4/(x1*x2) + x3`; used for frozen test values.
pub fn parse(nvars: usize, text: &str) -> Option<LaurentPolynomial> {
    let tokens = tokenize(text)?;
    let mut pos = 0;
    let p = parse_sum(nvars, &tokens, &mut pos)?;
    (pos == tokens.len()).then_some(p)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Op(char),
}

fn tokenize(text: &str) -> Option<Vec<Tok>> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(chars[start..i].iter().collect::<String>().parse().ok()?));
        } else if c == 'x' {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let k: usize = chars[start..i].iter().collect::<String>().parse().ok()?;
            out.push(Tok::Var(k.checked_sub(1)?));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return None;
        }
    }
    Some(out)
}

fn parse_sum(n: usize, t: &[Tok], pos: &mut usize) -> Option<LaurentPolynomial> {
    let mut neg = false;
    if t.get(*pos) == Some(&Tok::Op('-')) {
        neg = true;
        *pos += 1;
    }
    let mut acc = parse_product(n, t, pos)?;
    if neg {
        acc = -&acc;
    }
    while let Some(Tok::Op(op @ ('+' | '-'))) = t.get(*pos) {
        let op = *op;
        *pos += 1;
        let rhs = parse_product(n, t, pos)?;
        acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
    }
    Some(acc)
}

fn parse_product(n: usize, t: &[Tok], pos: &mut usize) -> Option<LaurentPolynomial> {
    let mut acc = parse_power(n, t, pos)?;
    while let Some(Tok::Op(op @ ('*' | '/'))) = t.get(*pos) {
        let op = *op;
        *pos += 1;
        let rhs = parse_power(n, t, pos)?;
        acc = if op == '*' { &acc * &rhs } else { acc.exact_div(&rhs).ok()? };
    }
    Some(acc)
}

fn parse_power(n: usize, t: &[Tok], pos: &mut usize) -> Option<LaurentPolynomial> {
    let base = match t.get(*pos)? {
        Tok::Num(c) => {
            *pos += 1;
            LaurentPolynomial::constant(n, c.clone())
        }
        Tok::Var(i) => {
            *pos += 1;
            if *i >= n {
                return None;
            }
            LaurentPolynomial::var(n, *i)
        }
        Tok::Op('(') => {
            *pos += 1;
            let inner = parse_sum(n, t, pos)?;
            if t.get(*pos) != Some(&Tok::Op(')')) {
                return None;
            }
            *pos += 1;
            inner
        }
        _ => return None,
    };
    if t.get(*pos) == Some(&Tok::Op('^')) {
        *pos += 1;
        let Tok::Num(k) = t.get(*pos)? else { return None };
        *pos += 1;
        return Some(base.pow(u32::try_from(k).ok()?));
    }
    Some(base)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPolynomial {
        parse(3, s).unwrap()
    }

    #[test]
    fn monomial_distribution() {
        let f = &LaurentPolynomial::var(3, 0) + &LaurentPolynomial::monomial(vec![0, -1, 0], 1);
        assert_eq!(&f * &LaurentPolynomial::var(3, 1), p("x1*x2 + 1"));
    }

    #[test]
    fn identities_and_zero() {
        let f = p("x1^2 + 3*x2/x3");
        assert_eq!(&f * &LaurentPolynomial::one(3), f);
        assert!((&f * &LaurentPolynomial::zero(3)).is_zero());
    }

    #[test]
    fn division_examples() {
        assert_eq!(p("x1^2+1").exact_div(&LaurentPolynomial::one(3)).unwrap(), p("x1^2+1"));
        assert_eq!(p("x1*x2 + x2").exact_div(&p("x2")).unwrap(), p("x1 + 1"));
        assert_eq!(p("x1^2 + 2*x1 + 1").exact_div(&p("x1 + 1")).unwrap(), p("x1+1"));
        assert_eq!(p("x1^2 + 1").exact_div(&p("x1 + 1")), Err(LaurentError::NotDivisible));
        assert_eq!(p("x1").exact_div(&LaurentPolynomial::zero(3)), Err(LaurentError::DivByZero));
    }

    #[test]
    fn denominators_and_constant_terms() {
        let s2 = parse(2, "(x1^2+1)/x2").unwrap();
        assert_eq!(s2.denominator_vector().unwrap(), vec![0, 1]);
        assert_eq!(s2.numerator_constant_term().unwrap(), BigInt::from(1));
        let x1 = LaurentPolynomial::var(3, 0);
        assert_eq!(x1.denominator_vector().unwrap(), vec![-1, 0, 0]);
        assert_eq!(x1.numerator_constant_term().unwrap(), BigInt::from(1));
        let c = LaurentPolynomial::constant(3, 5);
        assert_eq!(c.denominator_vector().unwrap(), vec![0, 0, 0]);
        assert_eq!(p("3*x1/x2 + 1/x2").numerator_constant_term().unwrap(), BigInt::from(1));
        assert_eq!(LaurentPolynomial::zero(3).denominator_vector(), Err(LaurentError::ZeroPolynomial));
    }

    #[test]
    fn display_round_trips() {
        for s in ["(x1^2 + 1)/x2", "x1", "4/(x1*x2) + x3 - 7", "-x1^3*x2 + 2"] {
            let f = p(s);
            assert_eq!(p(&f.to_string()), f, "{s} -> {f}");
        }
        assert_eq!(parse(2, "(x1^2+1)/x2").unwrap().to_string(), "(x1^2 + 1)/x2");
    }

    #[test]
    fn json_round_trip() {
        let f = p("x1^2/x3 - 12345678901234567890123");
        let back = LaurentPolynomial::from_json_terms(3, &f.to_json_terms()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn mismatched_variable_counts() {
        let a = LaurentPolynomial::one(2);
        let b = LaurentPolynomial::one(3);
        assert_eq!(a.try_mul(&b), Err(LaurentError::LengthMismatch(2, 3)));
    }
}
