//! Sparse Laurent polynomials in one variable `r`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::coeff::{Coeff, Rational};
use super::ArithError;

/// Vanishing order of a Laurent polynomial at a point; the zero polynomial
/// vanishes to infinite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl std::ops::Add for Order {
    type Output = Order;

    fn add(self, rhs: Order) -> Order {
        match (self, rhs) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a + b),
            _ => Order::Infinite,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// Laurent polynomial `sum c_e r^e`, stored as exponent-sorted nonzero terms.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly<C: Coeff> {
    terms: Vec<(i64, C)>,
    ctx: C::Ctx,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero(ctx: &C::Ctx) -> Self {
        LaurentPoly { terms: Vec::new(), ctx: ctx.clone() }
    }

    pub fn constant(c: C) -> Self {
        let ctx = c.ctx();
        Self::monomial(0, c, &ctx)
    }

    pub fn monomial(e: i64, c: C, ctx: &C::Ctx) -> Self {
        let terms = if c.is_zero() { vec![] } else { vec![(e, c)] };
        LaurentPoly { terms, ctx: ctx.clone() }
    }

    /// Build from `(exponent, coefficient)` pairs in any order; repeated
    /// exponents are summed and zeros dropped.
    pub fn from_terms(ctx: &C::Ctx, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut map: BTreeMap<i64, C> = BTreeMap::new();
        for (e, c) in terms {
            match map.get_mut(&e) {
                Some(acc) => acc.add_assign_ref(&c),
                None => {
                    map.insert(e, c);
                }
            }
        }
        LaurentPoly { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(), ctx: ctx.clone() }
    }

    /// Dense coefficients starting at exponent `min_exp`.
    pub fn from_dense(ctx: &C::Ctx, min_exp: i64, coeffs: Vec<C>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (min_exp + i as i64, c))
            .collect();
        LaurentPoly { terms, ctx: ctx.clone() }
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(i64, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn coeff(&self, e: i64) -> C {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero_in(&self.ctx),
        }
    }

    fn check(&self, rhs: &Self) {
        assert!(self.ctx == rhs.ctx, "coefficient domain mismatch in Laurent arithmetic");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            let take_left = j >= rhs.terms.len() || (i < self.terms.len() && self.terms[i].0 < rhs.terms[j].0);
            let take_right = i >= self.terms.len() || (j < rhs.terms.len() && rhs.terms[j].0 < self.terms[i].0);
            if take_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else if take_right {
                out.push(rhs.terms[j].clone());
                j += 1;
            } else {
                let c = self.terms[i].1.plus(&rhs.terms[j].1);
                if !c.is_zero() {
                    out.push((self.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        LaurentPoly { terms: out, ctx: self.ctx.clone() }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.negated())).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (*e, a.times(c)))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
            ctx: self.ctx.clone(),
        }
    }

    /// Multiply by `r^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let (Some(lo_a), Some(lo_b)) = (self.min_exp(), rhs.min_exp()) else {
            return Self::zero(&self.ctx);
        };
        let width = (self.max_exp().unwrap() - lo_a + rhs.max_exp().unwrap() - lo_b + 1) as usize;
        let mut acc = vec![C::zero_in(&self.ctx); width];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                acc[(ea - lo_a + eb - lo_b) as usize].add_mul_assign(ca, cb);
            }
        }
        Self::from_dense(&self.ctx, lo_a + lo_b, acc)
    }

    /// `self += a * b`, reusing the allocation of `self` where possible.
    pub fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let prod = a.mul(b);
        *self = self.add(&prod);
    }

    /// Exact quotient `q` with `self == q * rhs`.
    pub fn exact_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.check(rhs);
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let (a_lo, a_hi) = (self.min_exp().unwrap(), self.max_exp().unwrap());
        let (b_lo, b_hi) = (rhs.min_exp().unwrap(), rhs.max_exp().unwrap());
        let q_lo = a_lo - b_lo;
        let q_hi = a_hi - b_hi;
        if q_hi < q_lo {
            return Err(ArithError::NotDivisible);
        }
        // dense long division from the top degree
        let mut rem = vec![C::zero_in(&self.ctx); (a_hi - a_lo + 1) as usize];
        for (e, c) in &self.terms {
            rem[(e - a_lo) as usize] = c.clone();
        }
        let lead = rhs.terms.last().unwrap().1.clone();
        let qlen = (q_hi - q_lo + 1) as usize;
        let mut quot = vec![C::zero_in(&self.ctx); qlen];
        for k in (0..qlen).rev() {
            // position of the current top term in `rem`
            let top = k + (b_hi - b_lo) as usize;
            if rem[top].is_zero() {
                continue;
            }
            let qk = rem[top].exact_div(&lead).ok_or(ArithError::NotDivisible)?;
            for (eb, cb) in &rhs.terms {
                let pos = k + (eb - b_lo) as usize;
                rem[pos] = rem[pos].minus(&qk.times(cb));
            }
            quot[k] = qk;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(ArithError::NotDivisible);
        }
        Ok(Self::from_dense(&self.ctx, q_lo, quot))
    }

    /// Largest `m` with `(r - 1)^m` dividing the polynomial.
    pub fn vanishing_order_at_one(&self) -> Order {
        let Some(lo) = self.min_exp() else {
            return Order::Infinite;
        };
        let hi = self.max_exp().unwrap();
        // coefficients of r^(-lo) * self, highest degree first
        let mut dense = vec![C::zero_in(&self.ctx); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            dense[(hi - e) as usize] = c.clone();
        }
        let mut order = 0;
        loop {
            // synthetic division by (r - 1)
            let mut quotient = Vec::with_capacity(dense.len());
            let mut carry = C::zero_in(&self.ctx);
            for c in &dense {
                carry = carry.plus(c);
                quotient.push(carry.clone());
            }
            let remainder = quotient.pop().unwrap();
            if !remainder.is_zero() || quotient.is_empty() {
                return Order::Finite(order);
            }
            order += 1;
            dense = quotient;
        }
    }

    /// Substitution `r -> r^{-1}`.
    pub fn invert_exponent(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
            ctx: self.ctx.clone(),
        }
    }

    /// Value at `r = 1`.
    pub fn eval_at_one(&self) -> C {
        self.terms.iter().fold(C::zero_in(&self.ctx), |acc, (_, c)| acc.plus(c))
    }

    pub fn map_coeffs<D: Coeff>(&self, ctx: &D::Ctx, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_terms(ctx, self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Keep only the terms whose exponent satisfies `keep`.
    pub fn filter_exponents(&self, keep: impl Fn(i64) -> bool) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|(e, _)| keep(*e)).cloned().collect(),
            ctx: self.ctx.clone(),
        }
    }

    /// Human-readable form in ascending powers, e.g. `r^-1 - 2 + r`.
    pub fn render(&self) -> String {
        render_terms(self.terms.iter().map(|(e, c)| (*e, c.to_string())))
    }
}

fn render_terms(terms: impl Iterator<Item = (i64, String)>) -> String {
    let mut out = String::new();
    for (i, (e, c)) in terms.enumerate() {
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let var = match e {
            0 => String::new(),
            1 => "r".to_string(),
            _ => format!("r^{e}"),
        };
        if var.is_empty() {
            out.push_str(&mag);
        } else if mag == "1" {
            out.push_str(&var);
        } else {
            out.push_str(&format!("{mag}*{var}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl LaurentPoly<Rational> {
    /// Split off a rational content so that the remaining polynomial has
    /// coprime integer coefficients and a positive lowest-exponent coefficient.
    pub fn content_split(&self) -> (Rational, LaurentPoly<Rational>) {
        use num_bigint::BigInt;
        use num_integer::Integer as _;
        use num_traits::{One, Zero};
        if self.is_zero() {
            return (Rational::zero(), self.clone());
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let mut content = Rational::new(num, den).expect("nonzero denominator");
        if self.terms[0].1.is_negative() {
            content = content.negated();
        }
        let prim = self.scale(&content.recip().unwrap());
        (content, prim)
    }

    /// Render as `content(primitive)` in the style of printed expansions,
    /// e.g. `-2(r^-2 + 8*r^-1 - 18 + 8*r + r^2)`.
    pub fn render_factored(&self) -> String {
        if self.terms.len() <= 1 {
            return self.render();
        }
        let (content, prim) = self.content_split();
        if content.is_one() {
            format!("({})", prim.render())
        } else {
            format!("{content}({})", prim.render())
        }
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Serialize for LaurentPoly<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: BTreeMap<String, String> = BTreeMap::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            let e: i64 = e.parse().map_err(serde::de::Error::custom)?;
            let c: Rational = c.parse().map_err(serde::de::Error::custom)?;
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(&(), terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::coeff::{Integer, PrimeField};

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly<Rational> {
        LaurentPoly::from_terms(&(), terms.iter().map(|&(e, c)| (e, Rational::from(c))))
    }

    #[test]
    fn difference_of_squares() {
        let a = lp(&[(1, 1), (-1, -1)]);
        let b = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(a.mul(&b), lp(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn square_of_r_minus_2_plus_inverse() {
        let a = lp(&[(-1, 1), (0, -2), (1, 1)]);
        assert_eq!(a.mul(&LaurentPoly::constant(Rational::one())), a);
        assert_eq!(a.mul(&a), lp(&[(-2, 1), (-1, -4), (0, 6), (1, -4), (2, 1)]));
    }

    #[test]
    fn exact_division() {
        let a = lp(&[(-1, 1), (0, -2), (1, 1)]);
        let sq = lp(&[(-2, 1), (-1, -4), (0, 6), (1, -4), (2, 1)]);
        assert_eq!(sq.exact_div(&a).unwrap(), a);
        assert_eq!(a.exact_div(&a).unwrap(), lp(&[(0, 1)]));
        let odd = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(odd.exact_div(&a), Err(ArithError::NotDivisible));
        assert_eq!(a.exact_div(&LaurentPoly::zero(&())), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn integer_division_requires_integral_quotient() {
        let two_r = LaurentPoly::<Integer>::monomial(1, Integer::new(2), &());
        let three = LaurentPoly::constant(Integer::new(3));
        assert_eq!(three.exact_div(&two_r), Err(ArithError::NotDivisible));
        let six_r = LaurentPoly::monomial(1, Integer::new(6), &());
        assert_eq!(six_r.exact_div(&two_r).unwrap(), three);
    }

    #[test]
    fn vanishing_orders() {
        assert_eq!(lp(&[(-1, 1), (0, -2), (1, 1)]).vanishing_order_at_one(), Order::Finite(2));
        assert_eq!(lp(&[(1, 2), (-1, -2)]).vanishing_order_at_one(), Order::Finite(1));
        assert_eq!(lp(&[(0, 5)]).vanishing_order_at_one(), Order::Finite(0));
        assert_eq!(LaurentPoly::<Rational>::zero(&()).vanishing_order_at_one(), Order::Infinite);
        // (r-1)^4 r^-2
        assert_eq!(lp(&[(-2, 1), (-1, -4), (0, 6), (1, -4), (2, 1)]).vanishing_order_at_one(), Order::Finite(4));
    }

    #[test]
    fn vanishing_order_in_characteristic_p() {
        // r^3 - 1 = (r - 1)^3 over F_3
        let f3 = PrimeField::new(3).unwrap();
        let p = LaurentPoly::from_terms(&f3, [(3, f3.elem(1)), (0, f3.elem(-1))]);
        assert_eq!(p.vanishing_order_at_one(), Order::Finite(3));
    }

    #[test]
    fn inversion() {
        let odd = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(odd.invert_exponent(), odd.neg());
        let sym = lp(&[(-1, 1), (0, -2), (1, 1)]);
        assert_eq!(sym.invert_exponent(), sym);
        let p = lp(&[(2, 1), (0, 3)]);
        assert_eq!(p.invert_exponent().invert_exponent(), p);
    }

    #[test]
    fn rendering() {
        let p = lp(&[(-2, -2), (-1, -16), (0, 36), (1, -16), (2, -2)]);
        assert_eq!(p.render(), "-2*r^-2 - 16*r^-1 + 36 - 16*r - 2*r^2");
        assert_eq!(p.render_factored(), "-2(r^-2 + 8*r^-1 - 18 + 8*r + r^2)");
        assert_eq!(lp(&[]).render(), "0");
    }

    #[test]
    fn json_round_trip() {
        let p = lp(&[(-1, 1), (0, -2), (1, 1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"-1":"1","0":"-2","1":"1"}"#);
        let back: LaurentPoly<Rational> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
