//! Sparse multivariate polynomials over an exact coefficient domain.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::arith::{Coeff, Domain, Rational};

use super::CovariantError;

pub const MAX_VARS: usize = 16;

/// A named, ordered list of indeterminates. The order of `vars` is the
/// variable order of the monomial ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    pub name: &'static str,
    pub vars: &'static [&'static str],
}

impl VarSet {
    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| *v == name)
    }
}

/// `a0..a6` are the coefficients of the sextic, `x1, x2` its variables.
pub const SEXTIC: VarSet = VarSet { name: "sextic", vars: &["a0", "a1", "a2", "a3", "a4", "a5", "a6", "x1", "x2"] };

/// Sextic variables plus an auxiliary group parameter `t`.
pub const SEXTIC_T: VarSet =
    VarSet { name: "sextic+t", vars: &["a0", "a1", "a2", "a3", "a4", "a5", "a6", "x1", "x2", "t"] };

/// Coefficients of the pair `(a, b)` in `y^2 + a y + b = 0`.
pub const CHAR2: VarSet =
    VarSet { name: "char2", vars: &["a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3", "b4", "b5", "b6"] };

/// `CHAR2` plus the coefficients of a generic cubic `v`.
pub const CHAR2_V: VarSet = VarSet {
    name: "char2+v",
    vars: &["a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3", "b4", "b5", "b6", "v0", "v1", "v2", "v3"],
};

pub const X1: usize = 7;
pub const X2: usize = 8;

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically with earlier variables larger.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u8; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::one();
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            m.0[i] = u8::try_from(e).expect("exponent fits in u8");
        }
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_in(&self, range: std::ops::Range<usize>) -> u32 {
        self.0[range].iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut out = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = self.0[i].checked_add(rhs.0[i]).expect("exponent overflow");
        }
        Monomial(out)
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(rhs.0.iter()).all(|(a, b)| a <= b)
    }

    /// `rhs / self`, assuming `self` divides `rhs`.
    pub fn quotient_of(&self, rhs: &Monomial) -> Monomial {
        let mut out = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = rhs.0[i] - self.0[i];
        }
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Something a polynomial can be evaluated in: another polynomial ring,
/// a coefficient ring, or a ring of power series.
pub trait EvalTarget<C: Coeff>: Clone {
    /// The constant `c`, in the same ring as `self`.
    fn constant_like(&self, c: &C) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<C: Coeff = Rational> {
    vars: VarSet,
    ctx: C::Ctx,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(vars: VarSet, ctx: &C::Ctx) -> Self {
        assert!(vars.len() <= MAX_VARS);
        MultiPoly { vars, ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: VarSet, c: C) -> Self {
        let mut p = Self::zero(vars, &c.ctx());
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one(vars: VarSet, ctx: &C::Ctx) -> Self {
        Self::constant(vars, C::one_in(ctx))
    }

    pub fn var(vars: VarSet, i: usize, ctx: &C::Ctx) -> Self {
        assert!(i < vars.len(), "variable index {i} out of range for {}", vars.name);
        Self::term(vars, Monomial::var(i), C::one_in(ctx))
    }

    pub fn term(vars: VarSet, m: Monomial, c: C) -> Self {
        let mut p = Self::zero(vars, &c.ctx());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(vars: VarSet, ctx: &C::Ctx, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(vars, ctx);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn domain(&self) -> Domain {
        C::domain(&self.ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(|| C::zero_in(&self.ctx))
    }

    /// Coefficient of the monomial given by `(variable name, exponent)` pairs.
    pub fn coeff_of(&self, spec: &[(&str, u32)]) -> C {
        let mut m = Monomial::one();
        for (name, e) in spec {
            let i = self.vars.index_of(name).unwrap_or_else(|| panic!("unknown variable {name}"));
            m.0[i] += *e as u8;
        }
        self.coeff(&m)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.vars, rhs.vars, "polynomials over different variable sets");
        assert!(self.ctx == rhs.ctx, "coefficient domain mismatch in polynomial arithmetic");
    }

    fn add_term(&mut self, m: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(acc) => {
                acc.add_assign_ref(c);
                if acc.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let (mut big, small) = if self.len() >= rhs.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(*m, c);
        }
        big
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars,
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, c.negated())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars, &self.ctx);
        }
        MultiPoly {
            vars: self.vars,
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a.times(c)))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.len() * rhs.len().min(64));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(v) => v.add_mul_assign(ca, cb),
                    None => {
                        acc.insert(m, ca.times(cb));
                    }
                }
            }
        }
        MultiPoly {
            vars: self.vars,
            ctx: self.ctx.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.vars, &self.ctx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.vars, &self.ctx);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2.0[i] -= 1;
            out.add_term(m2, &c.times(&C::from_i64(e as i64, &self.ctx)));
        }
        out
    }

    /// Exact quotient by `d`; fails if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Self, CovariantError> {
        self.check(d);
        let (lm, lc) = d.leading_term().ok_or(CovariantError::DivisionByZero)?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.vars, &self.ctx);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(CovariantError::NotDivisible);
            }
            let qm = lm.quotient_of(m);
            let qc = c.exact_div(&lc).ok_or(CovariantError::NotDivisible)?;
            for (dm, dc) in &d.terms {
                rem.add_term(qm.mul(dm), &qc.times(dc).negated());
            }
            quot.add_term(qm, &qc);
        }
        Ok(quot)
    }

    /// Evaluate by recursive Horner schemes, one variable at a time.
    /// `values[i]` is substituted for variable `i`.
    pub fn evaluate<T: EvalTarget<C>>(&self, values: &[T]) -> T {
        assert_eq!(values.len(), self.vars.len(), "wrong number of values");
        let template = &values[0];
        let terms: Vec<(Monomial, C)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        if terms.is_empty() {
            return template.constant_like(&C::zero_in(&self.ctx));
        }
        horner(&terms, 0, values, &self.ctx)
    }

    /// Substitute polynomials (over a possibly different variable set) for the variables.
    pub fn substitute(&self, images: &[MultiPoly<C>]) -> MultiPoly<C> {
        self.evaluate(images)
    }

    pub fn eval_point(&self, point: &[C]) -> C {
        let wrapped: Vec<Scalar<C>> = point.iter().cloned().map(Scalar).collect();
        self.evaluate(&wrapped).0
    }

    pub fn map_coeffs<D: Coeff>(&self, ctx: &D::Ctx, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        MultiPoly::from_terms(self.vars, ctx, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn map_monomials(&self, vars: VarSet, f: impl Fn(&Monomial) -> Monomial) -> MultiPoly<C> {
        MultiPoly::from_terms(vars, &self.ctx, self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Every monomial has degree `d` in the variables `range`.
    pub fn is_homogeneous_in(&self, range: std::ops::Range<usize>, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree_in(range.clone()) == d)
    }

    /// Canonical text form: monomials in decreasing graded-lex order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, name) in self.vars.vars.iter().enumerate() {
                match m.0[v] {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// JSON export mirroring the canonical text form.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            exp: Vec<u32>,
            coeff: String,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| Term { exp: (0..self.vars.len()).map(|i| m.exp(i)).collect(), coeff: c.to_string() })
            .collect();
        serde_json::json!({
            "vars": self.vars.vars,
            "domain": self.domain().to_string(),
            "terms": terms,
        })
    }
}

fn horner<C: Coeff, T: EvalTarget<C>>(terms: &[(Monomial, C)], var: usize, values: &[T], ctx: &C::Ctx) -> T {
    if var == values.len() {
        debug_assert_eq!(terms.len(), 1);
        return values[0].constant_like(&terms[0].1);
    }
    let mut groups: BTreeMap<u8, Vec<(Monomial, C)>> = BTreeMap::new();
    for (m, c) in terms {
        groups.entry(m.0[var]).or_default().push((*m, c.clone()));
    }
    if groups.len() == 1 && groups.contains_key(&0) {
        return horner(terms, var + 1, values, ctx);
    }
    let top = *groups.keys().next_back().unwrap();
    let mut acc: Option<T> = None;
    for e in (0..=top).rev() {
        if let Some(a) = acc.take() {
            acc = Some(a.mul(&values[var]));
        }
        if let Some(group) = groups.get_mut(&e) {
            for (m, _) in group.iter_mut() {
                m.0[var] = 0;
            }
            let val = horner(group, var + 1, values, ctx);
            acc = Some(match acc {
                Some(a) => a.add(&val),
                None => val,
            });
        }
    }
    acc.unwrap()
}

impl<C: Coeff> EvalTarget<C> for MultiPoly<C> {
    fn constant_like(&self, c: &C) -> Self {
        MultiPoly::constant(self.vars, c.clone())
    }

    fn add(&self, rhs: &Self) -> Self {
        MultiPoly::add(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        MultiPoly::mul(self, rhs)
    }
}

#[derive(Clone)]
struct Scalar<C>(C);

impl<C: Coeff> EvalTarget<C> for Scalar<C> {
    fn constant_like(&self, c: &C) -> Self {
        Scalar(c.clone())
    }

    fn add(&self, rhs: &Self) -> Self {
        Scalar(self.0.plus(&rhs.0))
    }

    fn mul(&self, rhs: &Self) -> Self {
        Scalar(self.0.times(&rhs.0))
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl MultiPoly<Rational> {
    /// Scale to coprime integer coefficients with positive leading coefficient.
    /// Returns the primitive polynomial and the factor that was divided out.
    pub fn primitive_part(&self) -> (MultiPoly<Rational>, Rational) {
        use num_bigint::BigInt;
        use num_integer::Integer as _;
        use num_traits::{One, Zero};
        let Some((_, lc)) = self.leading_term() else {
            return (self.clone(), Rational::one());
        };
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let mut content = Rational::new(num, den).expect("nonzero");
        if lc.is_negative() {
            content = content.negated();
        }
        (self.scale(&content.recip().unwrap()), content)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer as _;
        self.terms.values().fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Integer, PrimeField};

    fn a(i: usize) -> MultiPoly {
        MultiPoly::var(SEXTIC, i, &())
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let a0a6 = Monomial::var(0).mul(&Monomial::var(6));
        let a1a5 = Monomial::var(1).mul(&Monomial::var(5));
        let a3sq = Monomial::var(3).mul(&Monomial::var(3));
        let a0 = Monomial::var(0);
        assert!(a0a6 > a1a5);
        assert!(a1a5 > a3sq);
        assert!(a3sq > a0);
    }

    #[test]
    fn render_matches_canonical_form() {
        let p = a(0).mul(&a(6)).scale(&Rational::from(120))
            .sub(&a(1).mul(&a(5)).scale(&Rational::from(20)))
            .add(&a(2).mul(&a(4)).scale(&Rational::from(8)))
            .sub(&a(3).pow(2).scale(&Rational::from(3)));
        assert_eq!(p.render(), "120*a0*a6 - 20*a1*a5 + 8*a2*a4 - 3*a3^2");
    }

    #[test]
    fn exact_division_round_trip() {
        let p = a(0).add(&a(1)).mul(&a(2).sub(&a(3)));
        let q = a(2).sub(&a(3));
        assert_eq!(p.exact_div(&q).unwrap(), a(0).add(&a(1)));
        assert!(p.exact_div(&a(4)).is_err());
    }

    #[test]
    fn horner_evaluation_matches_direct() {
        let p = a(0).pow(3).add(&a(1).mul(&a(0))).add(&a(6).scale(&Rational::from(-2)));
        let pt: Vec<Rational> = (0..9).map(|i| Rational::from(i as i64 + 2)).collect();
        // 8 + 3*2 - 2*8
        assert_eq!(p.eval_point(&pt), Rational::from(-2));
    }

    #[test]
    fn substitution_into_polynomials() {
        // a0 -> a1 + a2
        let p = a(0).pow(2);
        let mut images: Vec<MultiPoly> = (0..9).map(a).collect();
        images[0] = a(1).add(&a(2));
        let expected = a(1).pow(2).add(&a(1).mul(&a(2)).scale(&Rational::from(2))).add(&a(2).pow(2));
        assert_eq!(p.substitute(&images), expected);
    }

    #[test]
    fn derivative_and_domain_maps() {
        let p = a(7).pow(3).scale(&Rational::from(5));
        assert_eq!(p.derivative(7), a(7).pow(2).scale(&Rational::from(15)));
        let f3 = PrimeField::new(3).unwrap();
        let q = p.derivative(7).map_coeffs(&f3, |c| f3.reduce(c).unwrap());
        assert!(q.is_zero());
        let z = p.map_coeffs::<Integer>(&(), |c| Integer(c.numer().clone()));
        assert_eq!(z.len(), 1);
    }

    #[test]
    fn primitive_part_normalizes() {
        let p = a(0).scale(&Rational::new(-3, 2).unwrap()).add(&a(1).scale(&Rational::from(6)));
        let (prim, content) = p.primitive_part();
        assert_eq!(prim.render(), "a0 - 4*a1");
        assert_eq!(content, Rational::new(-3, 2).unwrap());
    }
}
