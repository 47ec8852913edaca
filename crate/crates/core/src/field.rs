//! Exact coefficient fields and integer combinatorics.
//!
//! Two fields are provided: the rationals (arbitrary precision, via
//! [`num_rational::BigRational`]) and prime fields `F_p` with a word-sized
//! odd prime. Everything downstream is generic over the [`Field`] trait, so
//! each computation is monomorphized for the field it runs over.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arithmetic in an exact field.
///
/// Elements are plain values; the field object carries any runtime context
/// (the modulus, for prime fields).
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a - b * c`, the inner step of every elimination.
    fn mul_sub(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(b, c))
    }
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// Characteristic of the field (0 for the rationals).
    fn characteristic(&self) -> u64;

    /// Integer representative used when printing polynomials, if the element
    /// has one. Prime-field elements print in the symmetric range.
    fn to_integer(&self, a: &Self::Elem) -> Option<BigInt>;
    fn format(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// Which field a computation runs over. Parsed from `q` or `fp:<p>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    pub const DEFAULT_PRIME: u32 = 32003;

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p as u64,
        }
    }

    /// Checks that the field is usable: `p` prime and odd.
    pub fn validate(&self) -> Result<()> {
        if let FieldSpec::Prime(p) = *self {
            if p <= 2 {
                return Err(Error::InvalidField(format!("characteristic {p} is not supported, need p > 2")));
            }
            if !is_prime(p as u64) {
                return Err(Error::InvalidField(format!("{p} is not prime")));
            }
        }
        Ok(())
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(Self::DEFAULT_PRIME)
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let spec = if s == "q" || s == "Q" {
            FieldSpec::Rationals
        } else if let Some(p) = s.strip_prefix("fp:") {
            let p: u32 = p
                .trim()
                .parse()
                .map_err(|_| Error::InvalidField(format!("cannot read prime in {s:?}")))?;
            FieldSpec::Prime(p)
        } else {
            return Err(Error::InvalidField(format!("expected `q` or `fp:<p>`, found {s:?}")));
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Deterministic primality test, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    // These witnesses are sufficient below 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The prime field `F_p`, elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        FieldSpec::Prime(p).validate()?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn mul_sub(&self, a: &u32, b: &u32, c: &u32) -> u32 {
        let p = self.p as u64;
        let prod = (*b as u64 * *c as u64) % p;
        ((*a as u64 + p - prod) % p) as u32
    }
    fn inv(&self, a: &u32) -> Result<u32> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Ok(self.reduce_i64(s0))
    }
    fn from_i64(&self, n: i64) -> u32 {
        self.reduce_i64(n)
    }
    fn from_bigint(&self, n: &BigInt) -> u32 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u32().expect("residue fits in u32")
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn to_integer(&self, a: &u32) -> Option<BigInt> {
        let half = self.p / 2;
        Some(if *a > half {
            BigInt::from(*a as i64 - self.p as i64)
        } else {
            BigInt::from(*a)
        })
    }
    fn format(&self, a: &u32) -> String {
        self.to_integer(a).unwrap().to_string()
    }
}

/// The rational numbers with arbitrary-precision numerator and denominator.
///
/// `BigRational` keeps every value reduced with a positive denominator, so
/// equality is structural.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn to_integer(&self, a: &BigRational) -> Option<BigInt> {
        a.is_integer().then(|| a.to_integer())
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

/// Binomial coefficient `C(n, k)`; zero when `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: &BigInt, k: i64) -> BigInt {
    if k < 0 || n.is_negative() || BigInt::from(k) > *n {
        return BigInt::zero();
    }
    // Use the smaller of k and n - k.
    let k = {
        let nk = n - BigInt::from(k);
        match nk.to_i64() {
            Some(nk) if nk < k => nk,
            _ => k,
        }
    };
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// `C(n, k)` for machine-sized `n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    binomial(&BigInt::from(n), k)
}

/// `[x] = max(x, 0)`.
pub fn truncate_nonneg(x: BigInt) -> BigInt {
    if x.is_negative() {
        BigInt::zero()
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn invert_examples() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.inv(&3).unwrap(), 5);
        assert_eq!(Rationals.inv(&q(2, 3)).unwrap(), q(3, 2));
        let fp = PrimeField::new(32003).unwrap();
        assert_eq!(fp.inv(&1).unwrap(), 1);
        assert!(matches!(fp.inv(&0), Err(Error::DivisionByZero)));
        assert!(matches!(Rationals.inv(&q(0, 1)), Err(Error::DivisionByZero)));
    }

    /// Pascal's triangle built by addition only.
    fn pascal(rows: usize) -> Vec<Vec<BigInt>> {
        let mut t = vec![vec![BigInt::one()]];
        for n in 1..=rows {
            let prev = &t[n - 1];
            let mut row = vec![BigInt::one(); n + 1];
            for k in 1..n {
                row[k] = &prev[k - 1] + &prev[k];
            }
            t.push(row);
        }
        t
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binom(4, 2), BigInt::from(6));
        assert_eq!(binom(14, 7), BigInt::from(3432));
        let t = pascal(14);
        assert_eq!(t[14][5], BigInt::from(2002));
        assert_eq!(binom(14, 5), t[14][5]);
        assert_eq!(binom(5, -1), BigInt::zero());
        assert_eq!(binom(5, 6), BigInt::zero());
        assert_eq!(binom(-3, 1), BigInt::zero());
    }

    #[test]
    fn binomial_matches_pascal_up_to_64() {
        let t = pascal(64);
        for n in 0..=64i64 {
            for k in 0..=n {
                assert_eq!(binom(n, k), t[n as usize][k as usize], "C({n},{k})");
                if n > 0 {
                    assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
                }
            }
        }
    }

    #[test]
    fn truncation() {
        assert_eq!(truncate_nonneg(BigInt::from(-3)), BigInt::zero());
        assert_eq!(truncate_nonneg(BigInt::zero()), BigInt::zero());
        assert_eq!(truncate_nonneg(BigInt::from(5)), BigInt::from(5));
    }

    #[test]
    fn primality() {
        assert!(is_prime(32003));
        assert!(is_prime(2147483647));
        assert!(!is_prime(32001));
        assert!(!is_prime(1));
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2, 3, 5, 7
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("fp:32003".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(32003));
        assert!("fp:32001".parse::<FieldSpec>().is_err());
        assert!("fp:2".parse::<FieldSpec>().is_err());
        assert!("gf(9)".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(7).to_string(), "fp:7");
    }

    #[test]
    fn symmetric_representatives() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.format(&6), "-1");
        assert_eq!(f.format(&3), "3");
        assert_eq!(f.format(&4), "-3");
        assert_eq!(f.from_bigint(&BigInt::from(-1)), 6);
    }

    fn check_axioms<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) {
        assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
        assert_eq!(f.add(a, b), f.add(b, a));
        assert_eq!(f.mul(a, b), f.mul(b, a));
        assert!(f.is_zero(&f.add(a, &f.neg(a))));
        assert_eq!(f.mul_sub(a, b, c), f.sub(a, &f.mul(b, c)));
        if !f.is_zero(a) {
            assert!(f.is_one(&f.mul(a, &f.inv(a).unwrap())));
        }
    }

    proptest! {
        #[test]
        fn prime_field_axioms(a in 0u32..32003, b in 0u32..32003, c in 0u32..32003) {
            let f = PrimeField::new(32003).unwrap();
            check_axioms(&f, &a, &b, &c);
        }

        #[test]
        fn rational_axioms(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20, cn in -50i64..50, cd in 1i64..20) {
            check_axioms(&Rationals, &q(an, ad), &q(bn, bd), &q(cn, cd));
        }

        #[test]
        fn rationals_stay_canonical(an in -500i64..500, ad in 1i64..60, bn in -500i64..500, bd in 1i64..60) {
            let r = Rationals.add(&q(an, ad), &Rationals.mul(&q(bn, bd), &q(ad, 7)));
            prop_assert!(r.denom().is_positive());
            prop_assert!(r.numer().gcd(r.denom()).is_one());
        }
    }
}
