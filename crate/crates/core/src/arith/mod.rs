//! Exact arithmetic: rationals, integers, prime fields and Laurent
//! polynomials in the single variable `r`.

pub mod coeff;
pub mod laurent;
pub mod linalg;

pub use coeff::{is_prime, Coeff, Domain, Fp, Integer, PrimeField, Rational};
pub use laurent::{LaurentPoly, Order};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("denominator of {0} is divisible by {1}")]
    DenominatorDivisibleByP(String, u64),
    #[error("cannot parse number {0:?}")]
    Parse(String),
}

pub fn laurent_mul<C: Coeff>(a: &LaurentPoly<C>, b: &LaurentPoly<C>) -> LaurentPoly<C> {
    a.mul(b)
}

pub fn laurent_exact_div<C: Coeff>(a: &LaurentPoly<C>, b: &LaurentPoly<C>) -> Result<LaurentPoly<C>, ArithError> {
    a.exact_div(b)
}

pub fn vanishing_order_at_one<C: Coeff>(a: &LaurentPoly<C>) -> Order {
    a.vanishing_order_at_one()
}

pub fn invert_exponent<C: Coeff>(a: &LaurentPoly<C>) -> LaurentPoly<C> {
    a.invert_exponent()
}
