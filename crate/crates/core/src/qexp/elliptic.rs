//! Elliptic modular forms as truncated `q`-expansions.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::arith::{Coeff, Rational};

use super::series::Cell;
use super::QexpError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EllipticExpansion<C: Coeff = Rational> {
    weight: i64,
    coeffs: Vec<C>,
}

impl<C: Coeff> EllipticExpansion<C> {
    pub fn new(weight: i64, coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "expansion needs at least the constant term");
        EllipticExpansion { weight, coeffs }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn ctx(&self) -> C::Ctx {
        self.coeffs[0].ctx()
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        EllipticExpansion { weight: self.weight, coeffs: (0..n).map(|i| f(&self.coeffs[i], &rhs.coeffs[i])).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, QexpError> {
        if self.weight != rhs.weight {
            return Err(QexpError::EllipticWeightMismatch(self.weight, rhs.weight));
        }
        Ok(self.zip(rhs, |a, b| a.plus(b)))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, QexpError> {
        if self.weight != rhs.weight {
            return Err(QexpError::EllipticWeightMismatch(self.weight, rhs.weight));
        }
        Ok(self.zip(rhs, |a, b| a.minus(b)))
    }

    pub fn scale(&self, c: &C) -> Self {
        EllipticExpansion { weight: self.weight, coeffs: self.coeffs.iter().map(|a| a.times(c)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut out = vec![C::zero_in(&self.ctx()); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                out[i + j].add_mul_assign(a, b);
            }
        }
        EllipticExpansion { weight: self.weight + rhs.weight, coeffs: out }
    }

    /// `Some(c)` with `self = c * other` on the common range, if such `c` exists.
    pub fn proportionality(&self, other: &Self) -> Option<C> {
        let n = self.coeffs.len().min(other.coeffs.len());
        let pivot = (0..n).find(|&i| !other.coeffs[i].is_zero());
        let Some(p) = pivot else {
            return self.coeffs[..n].iter().all(|c| c.is_zero()).then(|| C::zero_in(&self.ctx()));
        };
        let c = self.coeffs[p].exact_div(&other.coeffs[p])?;
        (0..n).all(|i| self.coeffs[i] == other.coeffs[i].times(&c)).then_some(c)
    }
}

/// `Some(c)` with `values(n1, n2) = c * e(n1) e(n2)` for all `n1, n2 <= n_max`.
pub fn tensor_proportionality<C: Coeff>(values: &BTreeMap<Cell, C>, e: &EllipticExpansion<C>, n_max: u32) -> Option<C> {
    let ctx = e.coeffs[0].ctx();
    let n_max = n_max.min(e.truncation() as u32);
    let cells: Vec<Cell> = (0..=n_max).flat_map(|a| (0..=n_max).map(move |b| (a, b))).collect();
    let target = |n: Cell| e.coeff(n.0 as usize).times(e.coeff(n.1 as usize));
    let value = |n: Cell| values.get(&n).cloned().unwrap_or_else(|| C::zero_in(&ctx));
    let pivot = cells.iter().copied().find(|n| !target(*n).is_zero())?;
    let c = value(pivot).exact_div(&target(pivot))?;
    cells.iter().all(|n| value(*n) == target(*n).times(&c)).then_some(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipticName {
    E4,
    E6,
    Delta,
}

impl FromStr for EllipticName {
    type Err = QexpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "E4" => Ok(Self::E4),
            "E6" => Ok(Self::E6),
            "Delta" | "delta" => Ok(Self::Delta),
            _ => Err(QexpError::UnknownName(s.to_string())),
        }
    }
}

fn sigma(n: u64, power: u32) -> BigInt {
    (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(d).pow(power)).sum()
}

/// `E4 = 1 + 240 sum sigma_3(n) q^n`, `E6 = 1 - 504 sum sigma_5(n) q^n`,
/// `Delta = q prod (1 - q^n)^24`, all through `q^n_max`.
pub fn elliptic_form(name: EllipticName, n_max: usize) -> EllipticExpansion<Rational> {
    let q = |n: BigInt| Rational::from_int(n);
    match name {
        EllipticName::E4 | EllipticName::E6 => {
            let (w, c, p) = if name == EllipticName::E4 { (4, 240, 3) } else { (6, -504, 5) };
            let coeffs = (0..=n_max)
                .map(|n| if n == 0 { Rational::one() } else { q(sigma(n as u64, p) * c) })
                .collect();
            EllipticExpansion::new(w, coeffs)
        }
        EllipticName::Delta => {
            let mut poly: Vec<BigInt> = vec![BigInt::from(0); n_max + 1];
            if n_max >= 1 {
                poly[1] = BigInt::from(1);
            }
            for n in 1..=n_max {
                for _ in 0..24 {
                    for i in (n..=n_max).rev() {
                        let sub = poly[i - n].clone();
                        poly[i] -= sub;
                    }
                }
            }
            EllipticExpansion::new(12, poly.into_iter().map(q).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_coefficients() {
        let e4 = elliptic_form(EllipticName::E4, 3);
        assert_eq!(e4.coeffs(), &[1, 240, 2160, 6720].map(Rational::from));
        let e6 = elliptic_form(EllipticName::E6, 2);
        assert_eq!(e6.coeffs(), &[1, -504, -16632].map(Rational::from));
        let d = elliptic_form(EllipticName::Delta, 4);
        assert_eq!(d.coeffs(), &[0, 1, -24, 252, -1472].map(Rational::from));
    }

    #[test]
    fn proportionality_detects_scalars() {
        let e4 = elliptic_form(EllipticName::E4, 5);
        assert_eq!(e4.scale(&Rational::from(-3)).proportionality(&e4), Some(Rational::from(-3)));
        let e6 = elliptic_form(EllipticName::E6, 5);
        assert_eq!(e6.proportionality(&e4), None);
    }
}
