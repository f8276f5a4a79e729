//! Small binary fields `GF(2^k)`, `k <= 6`, and a smoothness test for
//! `y^2 + a y + b = 0` over `F_2`.

use crate::arith::{Coeff, Fp};
use crate::covariants::MultiPoly;

/// `GF(2^k)` as `F_2[t] / (m(t))`; elements are bit vectors in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf2k {
    k: u32,
    modulus: u64,
}

impl Gf2k {
    /// Supported degrees: 1, 2, 3 and 6.
    pub fn new(k: u32) -> Option<Self> {
        let modulus = match k {
            1 => 0b11,
            2 => 0b111,
            3 => 0b1011,
            6 => 0b100_0011,
            _ => return None,
        };
        Some(Gf2k { k, modulus })
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        1 << self.k
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.order()
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    pub fn mul(&self, mut a: u64, mut b: u64) -> u64 {
        let mut acc = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.k & 1 == 1 {
                a ^= self.modulus;
            }
        }
        acc
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, self.order() - 2))
    }

    /// The unique square root (Frobenius is bijective).
    pub fn sqrt(&self, a: u64) -> u64 {
        self.pow(a, self.order() / 2)
    }

    /// Value of a polynomial over `F_2` at a point of `GF(2^k)^n`.
    pub fn eval(&self, p: &MultiPoly<Fp>, point: &[u64]) -> u64 {
        let mut total = 0;
        for (m, c) in p.terms() {
            if c.is_zero() {
                continue;
            }
            let mut t = 1;
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = self.mul(t, self.pow(*x, e as u64));
                }
            }
            total ^= t;
        }
        total
    }

    /// Evaluate a univariate polynomial given by coefficients of increasing degree.
    fn horner(&self, coeffs: &[u64], x: u64) -> u64 {
        coeffs.iter().rev().fold(0, |acc, c| self.mul(acc, x) ^ c)
    }
}

/// Whether `y^2 + a(x) y + b(x) = 0` is smooth, with `a = sum a_i x1^(3-i) x2^i`
/// and `b = sum b_i x1^(6-i) x2^i` over `F_2` (entries 0 or 1). Singular
/// points lie over roots of `a`, all of which are found in `GF(64)`.
pub fn is_smooth(a: &[u8; 4], b: &[u8; 7]) -> bool {
    if a.iter().all(|x| *x == 0) {
        return false;
    }
    let f = Gf2k::new(6).expect("supported degree");
    // x2 = 1: A1(x) = sum a_i x^(3-i), coefficients listed by increasing degree.
    let a1: Vec<u64> = a.iter().rev().map(|x| u64::from(*x)).collect();
    let b1: Vec<u64> = b.iter().rev().map(|x| u64::from(*x)).collect();
    let deriv = |c: &[u64]| -> Vec<u64> { c.iter().enumerate().skip(1).map(|(i, v)| if i % 2 == 1 { *v } else { 0 }).collect() };
    let (da, db) = (deriv(&a1), deriv(&b1));
    for x in f.elements() {
        if f.horner(&a1, x) != 0 {
            continue;
        }
        let y = f.sqrt(f.horner(&b1, x));
        if f.mul(f.horner(&da, x), y) ^ f.horner(&db, x) == 0 {
            return false;
        }
    }
    // x1 = 1, x2 = 0: the point at infinity lies over a root of `a` iff a0 = 0.
    if a[0] == 0 {
        let y = f.sqrt(u64::from(b[0]));
        if f.mul(u64::from(a[1]), y) ^ u64::from(b[1]) == 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for k in [1, 2, 3, 6] {
            let f = Gf2k::new(k).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(a, f.inverse(a).unwrap()), 1);
                let s = f.sqrt(a);
                assert_eq!(f.mul(s, s), a);
            }
        }
        assert!(Gf2k::new(4).is_none());
    }

    #[test]
    fn gf4_has_a_cube_root_of_unity() {
        let f = Gf2k::new(2).unwrap();
        assert_eq!(f.pow(2, 3), 1);
        assert_eq!(f.mul(2, 2) ^ 2 ^ 1, 0);
    }

    #[test]
    fn smoothness_examples() {
        // y^2 + y = x^5: smooth of genus 2 (a = x2^3, b = x1^5 x2).
        assert!(is_smooth(&[0, 0, 0, 1], &[0, 1, 0, 0, 0, 0, 0]));
        // a = 0: purely inseparable.
        assert!(!is_smooth(&[0; 4], &[1, 0, 0, 0, 0, 0, 1]));
        // y^2 + x y = 0 over x = 0: node at the origin.
        assert!(!is_smooth(&[0, 0, 1, 0], &[0; 7]));
    }
}
