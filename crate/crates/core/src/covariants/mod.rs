//! Covariants and invariants of the binary sextic
//! `f = a0*x1^6 + a1*x1^5*x2 + ... + a6*x2^6`.

mod catalog;
mod invariants;
mod parse;
pub mod poly;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{Coeff, Rational};

pub use catalog::{catalog_names, grace_young, hessian, resolve};
pub use invariants::{combination_ab_minus_3c, invariant, resultant_discriminant, InvariantName};
pub use parse::parse_poly;
pub use poly::{EvalTarget, Monomial, MultiPoly, VarSet, CHAR2, CHAR2_V, SEXTIC, SEXTIC_T, X1, X2};

/// Lower bounds for the order along the product locus of the seven
/// coordinates substituted for `a0..a6`.
pub const A11_WEIGHTS: [i64; 7] = [2, 1, 0, -1, 0, 1, 2];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CovariantError {
    #[error("transvectant index {k} exceeds order {order}")]
    OrderTooSmall { k: u32, order: u32 },
    #[error("unknown covariant {0:?}")]
    UnknownName(String),
    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(i64),
    #[error("polynomial is not bihomogeneous of bidegree ({degree}, {order})")]
    NotBihomogeneous { degree: u32, order: u32 },
    #[error("order {0} is odd")]
    OddOrder(u32),
    #[error("polynomial fails the SL2 covariance check")]
    NotCovariant,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("normalization failed: {0}")]
    Normalization(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A bihomogeneous polynomial in `a0..a6` (degree) and `x1, x2` (order).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Covariant<C: Coeff = Rational> {
    poly: MultiPoly<C>,
    degree: u32,
    order: u32,
}

impl<C: Coeff> Covariant<C> {
    pub fn new(poly: MultiPoly<C>, degree: u32, order: u32) -> Result<Self, CovariantError> {
        if order % 2 == 1 {
            return Err(CovariantError::OddOrder(order));
        }
        if poly.vars() != SEXTIC || !poly.is_homogeneous_in(0..7, degree) || !poly.is_homogeneous_in(7..9, order) {
            return Err(CovariantError::NotBihomogeneous { degree, order });
        }
        Ok(Covariant { poly, degree, order })
    }

    /// Reads the bidegree off the leading monomial.
    pub fn from_poly(poly: MultiPoly<C>) -> Result<Self, CovariantError> {
        let (degree, order) = match poly.leading_term() {
            Some((m, _)) => (m.degree_in(0..7), m.degree_in(7..9)),
            None => (0, 0),
        };
        Self::new(poly, degree, order)
    }

    /// Like [`Covariant::new`], additionally running [`Covariant::certificate`].
    pub fn new_certified(poly: MultiPoly<C>, degree: u32, order: u32) -> Result<Self, CovariantError> {
        let c = Self::new(poly, degree, order)?;
        if !c.certificate() {
            return Err(CovariantError::NotCovariant);
        }
        Ok(c)
    }

    pub fn poly(&self) -> &MultiPoly<C> {
        &self.poly
    }

    pub fn into_poly(self) -> MultiPoly<C> {
        self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn coeff_of(&self, spec: &[(&str, u32)]) -> C {
        self.poly.coeff_of(spec)
    }

    pub fn scale(&self, c: &C) -> Self {
        Covariant { poly: self.poly.scale(c), degree: self.degree, order: self.order }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Covariant { poly: self.poly.mul(&rhs.poly), degree: self.degree + rhs.degree, order: self.order + rhs.order }
    }

    pub fn pow(&self, e: u32) -> Self {
        Covariant { poly: self.poly.pow(e), degree: self.degree * e, order: self.order * e }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, CovariantError> {
        if (self.degree, self.order) != (rhs.degree, rhs.order) {
            return Err(CovariantError::NotBihomogeneous { degree: self.degree, order: self.order });
        }
        Ok(Covariant { poly: self.poly.add(&rhs.poly), degree: self.degree, order: self.order })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, CovariantError> {
        self.add(&rhs.scale(&C::from_i64(-1, self.poly.ctx())))
    }

    /// Coefficient of `x1^(j-i) x2^i` as a polynomial in `a0..a6`.
    pub fn coordinate(&self, i: u32) -> MultiPoly<C> {
        let terms = self
            .poly
            .terms()
            .filter(|(m, _)| m.exp(X2) == i)
            .map(|(m, c)| {
                let mut m = *m;
                m.0[X1] = 0;
                m.0[X2] = 0;
                (m, c.clone())
            });
        MultiPoly::from_terms(SEXTIC, self.poly.ctx(), terms.collect::<Vec<_>>())
    }

    /// Evaluate at sextic coefficients `a` and a point `(x1, x2)`.
    pub fn eval(&self, a: &[C], x: (&C, &C)) -> C {
        assert_eq!(a.len(), 7);
        let mut point: Vec<C> = a.to_vec();
        point.push(x.0.clone());
        point.push(x.1.clone());
        self.poly.eval_point(&point)
    }

    /// Value of an invariant at the sextic with coefficients `a`.
    pub fn eval_invariant(&self, a: &[C]) -> C {
        let ctx = self.poly.ctx();
        self.eval(a, (&C::zero_in(ctx), &C::one_in(ctx)))
    }

    /// Infinitesimal SL2 covariance: the raising and lowering operators on the
    /// coefficients agree with `x2 d/dx1` and `x1 d/dx2` on the variables.
    pub fn certificate(&self) -> bool {
        let ctx = self.poly.ctx();
        let var = |i: usize| MultiPoly::<C>::var(SEXTIC, i, ctx);
        let num = |n: i64| C::from_i64(n, ctx);
        let mut lower = self.poly.derivative(X1).mul(&var(X2)).scale(&num(-1));
        let mut raise = self.poly.derivative(X2).mul(&var(X1)).scale(&num(-1));
        for k in 1..7 {
            let d = self.poly.derivative(k);
            lower = lower.add(&d.mul(&var(k - 1)).scale(&num(7 - k as i64)));
        }
        for k in 0..6 {
            let d = self.poly.derivative(k);
            raise = raise.add(&d.mul(&var(k + 1)).scale(&num(k as i64 + 1)));
        }
        lower.is_zero() && raise.is_zero()
    }

    pub fn map_coeffs<D: Coeff>(&self, ctx: &D::Ctx, f: impl Fn(&C) -> D) -> Covariant<D> {
        let poly = self.poly.map_coeffs(ctx, f);
        Covariant { poly, degree: self.degree, order: self.order }
    }

    pub fn render(&self) -> String {
        self.poly.render()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree,
            "order": self.order,
            "poly": self.poly.to_json(),
            "text": self.poly.render(),
        })
    }
}

impl Covariant<Rational> {
    /// Content 1 and positive leading coefficient.
    pub fn primitive(&self) -> Self {
        Covariant { poly: self.poly.primitive_part().0, degree: self.degree, order: self.order }
    }
}

pub fn universal_sextic() -> Covariant {
    let terms = (0..7).map(|i| {
        let mut m = Monomial::var(i);
        m.0[X1] = 6 - i as u8;
        m.0[X2] = i as u8;
        (m, Rational::one())
    });
    Covariant::new(MultiPoly::from_terms(SEXTIC, &(), terms.collect::<Vec<_>>()), 1, 6).expect("sextic is bihomogeneous")
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * i)
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn partial<C: Coeff>(p: &MultiPoly<C>, d1: u32, d2: u32) -> MultiPoly<C> {
    let mut out = p.clone();
    for _ in 0..d1 {
        out = out.derivative(X1);
    }
    for _ in 0..d2 {
        out = out.derivative(X2);
    }
    out
}

/// The `k`-th transvectant
/// `(m-k)!(n-k)!/(m!n!) * sum_j (-1)^j C(k,j) d^k g/dx1^(k-j)dx2^j * d^k h/dx1^j dx2^(k-j)`.
pub fn transvectant(g: &Covariant, h: &Covariant, k: u32) -> Result<Covariant, CovariantError> {
    let (m, n) = (g.order, h.order);
    if k > m || k > n {
        return Err(CovariantError::OrderTooSmall { k, order: m.min(n) });
    }
    let mut total = MultiPoly::zero(SEXTIC, &());
    for j in 0..=k {
        let dg = partial(&g.poly, k - j, j);
        let dh = partial(&h.poly, j, k - j);
        let mut c = binomial(k, j);
        if j % 2 == 1 {
            c = -c;
        }
        total = total.add(&dg.mul(&dh).scale(&Rational::from_int(c)));
    }
    let norm = Rational::new(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n)).expect("nonzero");
    Covariant::new(total.scale(&norm), g.degree + h.degree, m + n - 2 * k)
}

fn check_unimodular(m: [[i64; 2]; 2]) -> Result<(), CovariantError> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det != 1 {
        return Err(CovariantError::NotUnimodular(det));
    }
    Ok(())
}

/// Images of `a0..a6` under `f -> f(m x)`: the coefficients of
/// `sum a_i (m00 x1 + m01 x2)^(6-i) (m10 x1 + m11 x2)^i`.
fn coefficient_images<C: Coeff>(m: [[i64; 2]; 2], ctx: &C::Ctx) -> Vec<MultiPoly<C>> {
    let var = |i: usize| MultiPoly::<C>::var(SEXTIC, i, ctx);
    let num = |n: i64| C::from_i64(n, ctx);
    let l1 = var(X1).scale(&num(m[0][0])).add(&var(X2).scale(&num(m[0][1])));
    let l2 = var(X1).scale(&num(m[1][0])).add(&var(X2).scale(&num(m[1][1])));
    let mut f = MultiPoly::zero(SEXTIC, ctx);
    for i in 0..7u32 {
        f = f.add(&var(i as usize).mul(&l1.pow(6 - i)).mul(&l2.pow(i)));
    }
    let as_cov = Covariant { poly: f, degree: 1, order: 6 };
    (0..7).map(|i| as_cov.coordinate(i)).collect()
}

/// `c(f o m, x)`: the action of `m` on the coefficients only.
pub fn act_sl2<C: Coeff>(m: [[i64; 2]; 2], c: &Covariant<C>) -> Result<Covariant<C>, CovariantError> {
    check_unimodular(m)?;
    let ctx = c.poly.ctx();
    let mut images = coefficient_images::<C>(m, ctx);
    images.push(MultiPoly::var(SEXTIC, X1, ctx));
    images.push(MultiPoly::var(SEXTIC, X2, ctx));
    Ok(Covariant { poly: c.poly.substitute(&images), degree: c.degree, order: c.order })
}

/// `c(f, m x)`: the action of `m` on the variables only. For a covariant
/// and `det m = 1` this agrees with [`act_sl2`].
pub fn act_on_variables<C: Coeff>(m: [[i64; 2]; 2], c: &Covariant<C>) -> Covariant<C> {
    let ctx = c.poly.ctx();
    let var = |i: usize| MultiPoly::<C>::var(SEXTIC, i, ctx);
    let num = |n: i64| C::from_i64(n, ctx);
    let mut images: Vec<MultiPoly<C>> = (0..7).map(var).collect();
    images.push(var(X1).scale(&num(m[0][0])).add(&var(X2).scale(&num(m[0][1]))));
    images.push(var(X1).scale(&num(m[1][0])).add(&var(X2).scale(&num(m[1][1]))));
    Covariant { poly: c.poly.substitute(&images), degree: c.degree, order: c.order }
}

/// `min` over the monomials of `c` of `sum e_i w_i` with `w = A11_WEIGHTS`.
pub fn a11_order_bound<C: Coeff>(c: &Covariant<C>) -> i64 {
    c.poly
        .terms()
        .map(|(m, _)| (0..7).map(|i| m.exp(i) as i64 * A11_WEIGHTS[i]).sum::<i64>())
        .min()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(SEXTIC, i, &())
    }

    #[test]
    fn sextic_shape() {
        let f = universal_sextic();
        assert_eq!((f.degree(), f.order()), (1, 6));
        assert_eq!(f.poly().len(), 7);
        assert_eq!(f.coeff_of(&[("a0", 1), ("x1", 6)]), Rational::one());
        assert!(f.certificate());
    }

    #[test]
    fn transvectant_small_cases() {
        let g = Covariant::new(x(X1).pow(2), 0, 2).unwrap();
        let h = Covariant::new(x(X2).pow(2), 0, 2).unwrap();
        let t = transvectant(&g, &h, 2).unwrap();
        assert_eq!(t.poly(), &MultiPoly::one(SEXTIC, &()));
        let f = universal_sextic();
        assert!(transvectant(&f, &f, 1).unwrap().is_zero());
        assert_eq!(transvectant(&f, &f, 0).unwrap(), f.mul(&f));
        assert!(matches!(transvectant(&g, &f, 3), Err(CovariantError::OrderTooSmall { .. })));
    }

    #[test]
    fn ff6_is_a_sixtieth_of_a() {
        let f = universal_sextic();
        let t = transvectant(&f, &f, 6).unwrap();
        let a = invariant(InvariantName::A);
        assert_eq!(t, a.scale(&Rational::new(1, 60).unwrap()));
    }

    #[test]
    fn unimodularity_is_checked() {
        let f = universal_sextic();
        assert_eq!(act_sl2([[2, 0], [0, 1]], &f), Err(CovariantError::NotUnimodular(2)));
        assert_eq!(act_sl2([[1, 0], [0, 1]], &f).unwrap(), f);
    }

    #[test]
    fn swap_moves_a0_to_last_slot() {
        let f = universal_sextic();
        let g = act_sl2([[0, 1], [-1, 0]], &f).unwrap();
        assert_eq!(g.coeff_of(&[("a0", 1), ("x2", 6)]), Rational::one());
        assert_eq!(g.coeff_of(&[("a0", 1), ("x1", 6)]), Rational::zero());
    }

    #[test]
    fn order_bounds() {
        assert_eq!(a11_order_bound(&universal_sextic()), -1);
        assert_eq!(a11_order_bound(&invariant(InvariantName::A)), -2);
    }

    #[test]
    fn non_covariant_is_rejected() {
        let p = x(0).mul(&x(X1));
        assert!(Covariant::new(p.clone(), 1, 1).is_err());
        let p = x(0).mul(&x(X1).pow(2));
        assert_eq!(Covariant::new_certified(p, 1, 2), Err(CovariantError::NotCovariant));
    }
}
