//! Coefficient domains: rationals, integers and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ArithError;

/// Which coefficient ring a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Rational,
    Integer,
    PrimeField(u64),
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rational => write!(f, "Q"),
            Domain::Integer => write!(f, "Z"),
            Domain::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact coefficient ring.
///
/// Values carry a context (`Ctx`) so that zero and one can be produced for
/// runtime-parameterised rings such as `F_p`. Operations between values with
/// different contexts are programming errors and panic.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn ctx(&self) -> Self::Ctx;
    fn domain(ctx: &Self::Ctx) -> Domain;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn from_bigint(n: &BigInt, ctx: &Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `Some(q)` with `q * rhs == self`, or `None` if no such `q` exists.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;

    fn one_in(ctx: &Self::Ctx) -> Self {
        Self::from_bigint(&BigInt::one(), ctx)
    }

    fn from_i64(n: i64, ctx: &Self::Ctx) -> Self {
        Self::from_bigint(&BigInt::from(n), ctx)
    }

    fn is_one(&self) -> bool {
        *self == Self::one_in(&self.ctx())
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.plus(&a.times(b));
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.plus(rhs);
    }
}

/// Exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ArithError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn to_integer(&self) -> Option<Integer> {
        self.is_integer().then(|| Integer(self.0.to_integer()))
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ArithError::Parse(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => Ok(Rational::from_int(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl Coeff for Rational {
    type Ctx = ();

    fn ctx(&self) {}

    fn domain(_: &()) -> Domain {
        Domain::Rational
    }

    fn zero_in(_: &()) -> Self {
        Rational::zero()
    }

    fn from_bigint(n: &BigInt, _: &()) -> Self {
        Rational::from_int(n.clone())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn plus(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn minus(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }

    fn times(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn negated(&self) -> Self {
        Rational(-&self.0)
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.0.is_zero()).then(|| Rational(&self.0 / &rhs.0))
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        self.0 += &rhs.0;
    }
}

/// Arbitrary-precision integer. Division is exact or fails.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Integer(pub BigInt);

impl Integer {
    pub fn new(n: impl Into<BigInt>) -> Self {
        Integer(n.into())
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from_int(self.0.clone())
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Coeff for Integer {
    type Ctx = ();

    fn ctx(&self) {}

    fn domain(_: &()) -> Domain {
        Domain::Integer
    }

    fn zero_in(_: &()) -> Self {
        Integer(BigInt::zero())
    }

    fn from_bigint(n: &BigInt, _: &()) -> Self {
        Integer(n.clone())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn plus(&self, rhs: &Self) -> Self {
        Integer(&self.0 + &rhs.0)
    }

    fn minus(&self, rhs: &Self) -> Self {
        Integer(&self.0 - &rhs.0)
    }

    fn times(&self, rhs: &Self) -> Self {
        Integer(&self.0 * &rhs.0)
    }

    fn negated(&self) -> Self {
        Integer(-&self.0)
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.0.is_zero() {
            return None;
        }
        let (q, r) = self.0.div_rem(&rhs.0);
        r.is_zero().then_some(Integer(q))
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        self.0 += &a.0 * &b.0;
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        self.0 += &rhs.0;
    }
}

/// The prime field `F_p` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField(u64);

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(PrimeField(p))
    }

    pub fn modulus(&self) -> u64 {
        self.0
    }

    pub fn elem(&self, n: i64) -> Fp {
        Fp { value: n.rem_euclid(self.0 as i64) as u64, p: self.0 }
    }

    pub fn reduce(&self, r: &Rational) -> Result<Fp, ArithError> {
        let p = BigInt::from(self.0);
        let d = r.denom().mod_floor(&p);
        if d.is_zero() {
            return Err(ArithError::DenominatorDivisibleByP(r.to_string(), self.0));
        }
        let n = Fp::from_bigint(r.numer(), self);
        let d = Fp::from_bigint(&d, self);
        Ok(n.times(&d.inverse().expect("nonzero")))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of a prime field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        PrimeField(self.p)
    }

    pub fn pow(&self, mut e: u64) -> Fp {
        let mut base = *self;
        let mut acc = PrimeField(self.p).elem(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Option<Fp> {
        (self.value != 0).then(|| self.pow(self.p - 2))
    }

    fn check(&self, rhs: &Fp) {
        assert_eq!(self.p, rhs.p, "coefficient domain mismatch: F{} vs F{}", self.p, rhs.p);
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Coeff for Fp {
    type Ctx = PrimeField;

    fn ctx(&self) -> PrimeField {
        PrimeField(self.p)
    }

    fn domain(ctx: &PrimeField) -> Domain {
        Domain::PrimeField(ctx.0)
    }

    fn zero_in(ctx: &PrimeField) -> Self {
        Fp { value: 0, p: ctx.0 }
    }

    fn from_bigint(n: &BigInt, ctx: &PrimeField) -> Self {
        let v = n.mod_floor(&BigInt::from(ctx.0)).to_u64().expect("reduced value fits");
        Fp { value: v, p: ctx.0 }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn plus(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Fp { value: (self.value + rhs.value) % self.p, p: self.p }
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Fp { value: (self.value + self.p - rhs.value) % self.p, p: self.p }
    }

    fn times(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Fp { value: self.value * rhs.value % self.p, p: self.p }
    }

    fn negated(&self) -> Self {
        Fp { value: (self.p - self.value) % self.p, p: self.p }
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.check(rhs);
        rhs.inverse().map(|inv| self.times(&inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_reduced() {
        let r = Rational::new(6, -4).unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rational::from_int(7).to_string(), "7");
    }

    #[test]
    fn rational_round_trips_through_strings() {
        for s in ["0", "-5", "22/7", "-1/3"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn integer_division_is_exact_or_none() {
        let a = Integer::new(12);
        assert_eq!(a.exact_div(&Integer::new(4)), Some(Integer::new(3)));
        assert_eq!(a.exact_div(&Integer::new(5)), None);
        assert_eq!(a.exact_div(&Integer::new(0)), None);
    }

    #[test]
    fn prime_field_arithmetic() {
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        let f = PrimeField::new(7).unwrap();
        let a = f.elem(3);
        assert_eq!(a.inverse().unwrap(), f.elem(5));
        assert_eq!(f.elem(-1), f.elem(6));
        assert_eq!(f.reduce(&Rational::new(1, 2).unwrap()).unwrap(), f.elem(4));
        assert!(f.reduce(&Rational::new(1, 14).unwrap()).is_err());
    }

    #[test]
    #[should_panic(expected = "domain mismatch")]
    fn mixing_prime_fields_panics() {
        let a = PrimeField::new(5).unwrap().elem(1);
        let b = PrimeField::new(7).unwrap().elem(1);
        let _ = a.plus(&b);
    }
}
