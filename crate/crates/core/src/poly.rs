//! Standard graded polynomial rings, monomial orders and sparse polynomials.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::GroebnerBasis;

/// Exponent vector of a monomial. Exponents are bytes; products that would
/// overflow are rejected.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: SmallVec<[u8; 24]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        let exps = exps
            .iter()
            .map(|&e| u8::try_from(e).map_err(|_| Error::ExponentOverflow))
            .collect::<Result<_>>()?;
        Ok(Monomial { exps })
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<_>>()?;
        Ok(Monomial { exps })
    }

    /// Product; panics on exponent overflow, which cannot happen for the
    /// degrees reached by Artinian computations.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("exponent overflow")
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] = m.exps[i].checked_add(1).expect("exponent overflow");
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial { exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect() })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect() }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the first variable with positive exponent.
    pub fn first_var(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e > 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// All monomials of the given degree in `nvars` variables, in lex-descending
/// order of exponent vectors.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur).expect("degree fits"));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, degree, &mut vec![0; nvars], &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// Block order: grevlex on the first `n` variables, ties broken by
    /// grevlex on the rest. Eliminates the first block.
    Elimination(usize),
}

fn grevlex(a: &[u8], b: &[u8]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(&a.exps, &b.exps),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination(k) => {
                grevlex(&a.exps[..k], &b.exps[..k]).then_with(|| grevlex(&a.exps[k..], &b.exps[k..]))
            }
        }
    }
}

/// A polynomial as a list of terms sorted descending in the ring's order,
/// with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<F: Field> {
    nvars: usize,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    /// Total degree of the leading monomial (the degree, for homogeneous input).
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|t| t.0.degree() == d)
            }
        }
    }
}

/// `S = k[x_1, ..., x_n]` with named variables and a monomial order.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, vars: Vec<String>) -> Result<Self> {
        Self::with_order(field, vars, MonomialOrder::Grevlex)
    }

    pub fn with_order(field: F, vars: Vec<String>, order: MonomialOrder) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::BadParameter("a polynomial ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::BadParameter(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::BadParameter(format!("variable `{v}` declared twice")));
            }
        }
        if let MonomialOrder::Elimination(k) = order {
            if k > vars.len() {
                return Err(Error::BadParameter("elimination block larger than the ring".into()));
            }
        }
        Ok(PolyRing { field, vars, order })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    fn check(&self, f: &Polynomial<F>) -> Result<()> {
        if f.nvars != self.nvars() {
            return Err(Error::RingMismatch { left: f.nvars, right: self.nvars() });
        }
        Ok(())
    }

    pub fn zero(&self) -> Polynomial<F> {
        Polynomial::zero(self.nvars())
    }

    pub fn constant(&self, c: F::Elem) -> Polynomial<F> {
        self.from_terms(vec![(Monomial::one(self.nvars()), c)])
    }

    pub fn var(&self, i: usize) -> Polynomial<F> {
        self.from_terms(vec![(Monomial::var(self.nvars(), i), self.field.one())])
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial<F> {
        self.from_terms(vec![(m, self.field.one())])
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges equal
    /// monomials and drops zeros.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, F::Elem)>) -> Polynomial<F> {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = self.field.add(&last.1, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !self.field.is_zero(&t.1));
        Polynomial { nvars: self.nvars(), terms: out }
    }

    /// Wraps terms already sorted descending with nonzero coefficients.
    #[allow(clippy::wrong_self_convention)]
    pub(crate) fn from_sorted(&self, terms: Vec<(Monomial, F::Elem)>) -> Polynomial<F> {
        Polynomial { nvars: self.nvars(), terms }
    }

    /// `f` without its leading term.
    #[allow(clippy::wrong_self_convention)]
    pub(crate) fn from_sorted_tail(&self, f: &Polynomial<F>) -> Polynomial<F> {
        Polynomial { nvars: f.nvars, terms: f.terms.get(1..).unwrap_or(&[]).to_vec() }
    }

    fn merge(&self, f: &Polynomial<F>, g: &Polynomial<F>, negate: bool) -> Polynomial<F> {
        let k = &self.field;
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < f.terms.len() && j < g.terms.len() {
            match self.cmp(&f.terms[i].0, &g.terms[j].0) {
                Ordering::Greater => {
                    out.push(f.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { k.neg(&g.terms[j].1) } else { g.terms[j].1.clone() };
                    out.push((g.terms[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        k.sub(&f.terms[i].1, &g.terms[j].1)
                    } else {
                        k.add(&f.terms[i].1, &g.terms[j].1)
                    };
                    if !k.is_zero(&c) {
                        out.push((f.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(f.terms[i..].iter().cloned());
        for t in &g.terms[j..] {
            let c = if negate { k.neg(&t.1) } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial { nvars: f.nvars, terms: out }
    }

    pub fn add(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.merge(f, g, false))
    }

    pub fn sub(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.merge(f, g, true))
    }

    pub fn neg(&self, f: &Polynomial<F>) -> Polynomial<F> {
        Polynomial { nvars: f.nvars, terms: f.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect() }
    }

    pub fn scale(&self, f: &Polynomial<F>, c: &F::Elem) -> Polynomial<F> {
        if self.field.is_zero(c) {
            return Polynomial::zero(f.nvars);
        }
        Polynomial { nvars: f.nvars, terms: f.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(a, c))).collect() }
    }

    /// `c * m * f`. Multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, f: &Polynomial<F>, m: &Monomial, c: &F::Elem) -> Polynomial<F> {
        if self.field.is_zero(c) {
            return Polynomial::zero(f.nvars);
        }
        Polynomial {
            nvars: f.nvars,
            terms: f.terms.iter().map(|(n, a)| (n.mul(m), self.field.mul(a, c))).collect(),
        }
    }

    /// `f - c * m * g`, merged in one pass.
    pub fn sub_mul_term(&self, f: &Polynomial<F>, g: &Polynomial<F>, m: &Monomial, c: &F::Elem) -> Polynomial<F> {
        let scaled = self.mul_term(g, m, c);
        self.merge(f, &scaled, true)
    }

    pub fn mul(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.check(f)?;
        self.check(g)?;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (mf, cf) in &f.terms {
            for (mg, cg) in &g.terms {
                let m = mf.checked_mul(mg)?;
                let c = self.field.mul(cf, cg);
                acc.entry(m)
                    .and_modify(|e| *e = self.field.add(e, &c))
                    .or_insert(c);
            }
        }
        Ok(self.from_terms(acc.into_iter().collect()))
    }

    pub fn pow(&self, f: &Polynomial<F>, e: u32) -> Result<Polynomial<F>> {
        let mut acc = self.constant(self.field.one());
        for _ in 0..e {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, f: &Polynomial<F>) -> Polynomial<F> {
        match f.leading_term() {
            None => f.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("leading coefficient is nonzero");
                self.scale(f, &inv)
            }
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Canonical text form, re-readable by [`PolyRing::parse`] whenever all
    /// coefficients are integers.
    pub fn format(&self, f: &Polynomial<F>) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (m, c)) in f.terms.iter().enumerate() {
            let (negative, abs) = match self.field.to_integer(c) {
                Some(n) => (n.is_negative(), n.abs().to_string()),
                None => {
                    let text = self.field.format(c);
                    match text.strip_prefix('-') {
                        Some(rest) => (true, rest.to_string()),
                        None => (false, text),
                    }
                }
            };
            if negative {
                s.push('-');
            } else if idx > 0 {
                s.push('+');
            }
            if m.is_one() {
                s.push_str(&abs);
            } else {
                if abs != "1" {
                    s.push_str(&abs);
                    s.push('*');
                }
                s.push_str(&self.format_monomial(m));
            }
        }
        s
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial<F>> {
        Parser::new(self, text)?.parse_all()
    }

    /// Clears denominators and content so that a rational polynomial prints
    /// with integer coefficients. Prime-field polynomials are returned as is.
    pub fn primitive_integer_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        if self.field.characteristic() != 0 || f.is_zero() {
            return f.clone();
        }
        // Reinterpret coefficients through their textual rational form.
        let parsed: Vec<(BigInt, BigInt)> = f
            .terms
            .iter()
            .map(|(_, c)| {
                let t = self.field.format(c);
                match t.split_once('/') {
                    Some((n, d)) => (n.parse().unwrap(), d.parse().unwrap()),
                    None => (t.parse().unwrap(), BigInt::one()),
                }
            })
            .collect();
        let lcm = parsed.iter().fold(BigInt::one(), |acc, (_, d)| num_integer::lcm(acc, d.clone()));
        let nums: Vec<BigInt> = parsed.iter().map(|(n, d)| n * (&lcm / d)).collect();
        let g = nums.iter().fold(BigInt::from(0), |acc, n| num_integer::gcd(acc, n.clone()));
        let sign = if nums[0].is_negative() { -BigInt::one() } else { BigInt::one() };
        Polynomial {
            nvars: f.nvars,
            terms: f
                .terms
                .iter()
                .zip(nums)
                .map(|((m, _), n)| (m.clone(), self.field.from_bigint(&(n / &g * &sign))))
                .collect(),
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Parser<'a, F: Field> {
    ring: &'a PolyRing<F>,
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl<'a, F: Field> Parser<'a, F> {
    fn new(ring: &'a PolyRing<F>, text: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            let start = i;
            if c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let tok = match c {
                '+' => Token::Plus,
                '-' => Token::Minus,
                '*' => Token::Star,
                '^' => Token::Caret,
                '(' => Token::LParen,
                ')' => Token::RParen,
                '0'..='9' => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    tokens.push((start, Token::Int(text[start..i].parse().unwrap())));
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                        i += 1;
                    }
                    tokens.push((start, Token::Ident(text[start..i].to_string())));
                    continue;
                }
                other => {
                    return Err(Error::Syntax { pos: start, message: format!("unexpected character {other:?}") })
                }
            };
            tokens.push((start, tok));
            i += 1;
        }
        Ok(Parser { ring, tokens, pos: 0, end: text.len() })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.here(), message: message.into() })
    }

    fn parse_all(mut self) -> Result<Polynomial<F>> {
        if self.tokens.is_empty() {
            return self.err("empty expression");
        }
        let p = self.expr()?;
        if self.pos != self.tokens.len() {
            return self.err("unexpected token (products need an explicit `*`)");
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.add(&acc, &t)?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.sub(&acc, &t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.unary()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            let f = self.unary()?;
            acc = self.ring.mul(&acc, &f)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial<F>> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                let f = self.unary()?;
                Ok(self.ring.neg(&f))
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Int(e)) => {
                    let e: u32 = e.try_into().map_err(|_| Error::ExponentOverflow)?;
                    self.pos += 1;
                    return self.ring.pow(&base, e);
                }
                _ => return self.err("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        let here = self.here();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(self.ring.constant(self.ring.field.from_bigint(&n)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                match self.ring.var_index(&name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(Error::UnknownVariable { name, pos: here }),
                }
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => self.err("expected a number, variable or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// A homogeneous ideal given by generators, with a lazily computed reduced
/// Groebner basis.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    ring: PolyRing<F>,
    gens: Vec<Polynomial<F>>,
    gb: OnceLock<GroebnerBasis<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: PolyRing<F>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &gens {
            ring.check(g)?;
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(ring.format(g)));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring, gens, gb: OnceLock::new() })
    }

    pub fn parse(ring: PolyRing<F>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    /// The reduced Groebner basis, computed on first use.
    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        self.gb.get_or_init(|| crate::groebner::buchberger(&self.ring, &self.gens))
    }

    pub fn has_cached_basis(&self) -> bool {
        self.gb.get().is_some()
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn ring4() -> PolyRing<PrimeField> {
        PolyRing::new(PrimeField::new(32003).unwrap(), ["u", "x", "y", "z"].map(String::from).to_vec()).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let r = PolyRing::new(Rationals, ["x", "y"].map(String::from).to_vec()).unwrap();
        let f = r.parse("x+y").unwrap();
        let g = r.parse("x-y").unwrap();
        assert_eq!(r.mul(&f, &g).unwrap(), r.parse("x^2-y^2").unwrap());
        assert!(r.mul(&f, &r.zero()).unwrap().is_zero());

        let r4 = PolyRing::new(Rationals, ["x1", "x2", "x3", "x4"].map(String::from).to_vec()).unwrap();
        let l = r4.parse("x1+x2+x3+x4").unwrap();
        let sq = r4.mul(&l, &l).unwrap();
        let expected = r4
            .parse("x1^2+x2^2+x3^2+x4^2+2*(x1*x2+x1*x3+x1*x4+x2*x3+x2*x4+x3*x4)")
            .unwrap();
        assert_eq!(sq, expected);
        assert_eq!(sq.len(), 10);
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let r = ring4();
        let other = PolyRing::new(*r.field(), vec!["a".into()]).unwrap();
        let f = other.parse("a").unwrap();
        assert!(matches!(r.mul(&r.var(0), &f), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn parse_examples() {
        let r = ring4();
        let f = r.parse("x^2+y*z+u^2").unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.is_homogeneous());
        assert_eq!(r.format(&f), "u^2+x^2+y*z");
        assert!(r.parse("0").unwrap().is_zero());

        let s = PolyRing::new(
            PrimeField::new(32003).unwrap(),
            ["u", "v", "w", "x", "y", "z"].map(String::from).to_vec(),
        )
        .unwrap();
        let g = s.parse("x*z+3*z*w-u*w").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(s.format(&g), "-u*w+3*w*z+x*z");
        assert_eq!(s.parse(&s.format(&g)).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        let r = ring4();
        assert!(matches!(r.parse("2x"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(r.parse("x*q"), Err(Error::UnknownVariable { pos: 2, .. })));
        assert!(matches!(r.parse("x+"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(r.parse("(x+y"), Err(Error::Syntax { .. })));
        assert!(matches!(r.parse("x^y"), Err(Error::Syntax { .. })));
        assert!(matches!(r.parse("x $ y"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(r.parse(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn nonhomogeneous_generators_rejected() {
        let r = ring4();
        assert!(matches!(Ideal::parse(r, &["x^2+y"]), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn bad_variable_lists() {
        let f = PrimeField::new(7).unwrap();
        assert!(PolyRing::new(f, vec![]).is_err());
        assert!(PolyRing::new(f, vec!["x".into(), "x".into()]).is_err());
        assert!(PolyRing::new(f, vec!["1x".into()]).is_err());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
        assert_eq!(monomials_of_degree(6, 3).len(), 56);
        assert_eq!(monomials_of_degree(3, 0).len(), 1);
    }

    fn arb_monomial(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, n).prop_map(|e| Monomial::from_exponents(&e).unwrap())
    }

    proptest! {
        #[test]
        fn order_axioms(a in arb_monomial(4), b in arb_monomial(4), c in arb_monomial(4)) {
            for order in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Elimination(2)] {
                let one = Monomial::one(4);
                prop_assert_ne!(order.compare(&one, &a), Ordering::Greater);
                let ab = order.compare(&a, &b);
                prop_assert_eq!(order.compare(&a.mul(&c), &b.mul(&c)), ab);
                prop_assert_eq!(order.compare(&b, &a), ab.reverse());
            }
        }

        #[test]
        fn print_parse_roundtrip(terms in proptest::collection::vec((arb_monomial(4), -20i64..20), 0..8)) {
            let r = ring4();
            let f = r.from_terms(terms.iter().map(|(m, c)| (m.clone(), r.field().from_i64(*c))).collect());
            prop_assert_eq!(r.parse(&r.format(&f)).unwrap(), f.clone());

            let q = PolyRing::new(Rationals, r.var_names().to_vec()).unwrap();
            let g = q.from_terms(terms.iter().map(|(m, c)| (m.clone(), Rationals.from_i64(*c))).collect());
            prop_assert_eq!(q.parse(&q.format(&g)).unwrap(), g);
        }

        #[test]
        fn graded_multiplication(a in proptest::collection::vec((arb_monomial(3), 1i64..9), 1..5),
                                 b in proptest::collection::vec((arb_monomial(3), 1i64..9), 1..5)) {
            let r = PolyRing::new(Rationals, ["x", "y", "z"].map(String::from).to_vec()).unwrap();
            // Homogenize each factor by keeping only its top-degree part.
            let top = |ts: &Vec<(Monomial, i64)>| {
                let d = ts.iter().map(|t| t.0.degree()).max().unwrap();
                r.from_terms(ts.iter().filter(|t| t.0.degree() == d).map(|(m, c)| (m.clone(), Rationals.from_i64(*c))).collect())
            };
            let (f, g) = (top(&a), top(&b));
            let h = r.mul(&f, &g).unwrap();
            let d = f.degree().unwrap() + g.degree().unwrap();
            prop_assert!(h.terms().iter().all(|t| t.0.degree() == d));
        }
    }
}
