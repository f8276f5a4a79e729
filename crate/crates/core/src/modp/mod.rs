//! Invariants in positive characteristic: reduction mod `p`, the degree-2
//! invariant in characteristic 3, and the characteristic-2 invariants of
//! `y^2 + a y + b`.

mod char2;
mod gf2k;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::arith::linalg::left_kernel;
use crate::arith::{ArithError, Coeff, Fp, PrimeField, Rational};
use crate::covariants::{invariant, Covariant, CovariantError, InvariantName, Monomial, MultiPoly, SEXTIC, SEXTIC_T};

pub use char2::{
    char2_action_check, char2_lift_invariant, char2_lift_space, char2_variable, eval_f2, k1, k3, k4, sextic_from_pair, unipotent_invariance,
    Char2Invariant, Char2Pair,
};
pub use gf2k::{is_smooth, Gf2k};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModpError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Covariant(#[from] CovariantError),
    #[error("{0} vanishes identically after reduction")]
    ZeroAfterReduction(String),
    #[error("{0} is not divisible by {1}")]
    NotDivisible(String, String),
}

/// Coefficient-wise reduction modulo `p`.
pub fn reduce_mod_p(c: &Covariant<Rational>, p: u64) -> Result<Covariant<Fp>, ModpError> {
    let field = PrimeField::new(p)?;
    for (_, q) in c.poly().terms() {
        field.reduce(q)?;
    }
    Ok(c.map_coeffs(&field, |q| field.reduce(q).expect("denominators checked")))
}

/// Image of `a_i` under `x1 -> x1 + t x2` (over `SEXTIC_T`).
fn unipotent_images<C: Coeff>(ctx: &C::Ctx) -> Vec<MultiPoly<C>> {
    let var = |i| MultiPoly::<C>::var(SEXTIC_T, i, ctx);
    let t = var(9);
    let mut images: Vec<MultiPoly<C>> = (0..7)
        .map(|k| {
            let mut acc = MultiPoly::zero(SEXTIC_T, ctx);
            for i in 0..=k {
                let binom = binomial(6 - i as u64, (k - i) as u64);
                let term = var(i).mul(&t.pow((k - i) as u32)).scale(&C::from_i64(binom as i64, ctx));
                acc = acc.add(&term);
            }
            acc
        })
        .collect();
    images.push(var(7));
    images.push(var(8));
    images
}

/// Image of `a_k` under `(x1, x2) -> (-x2, x1)`: `(-1)^k a_(6-k)`.
fn rotation_images<C: Coeff>(ctx: &C::Ctx) -> Vec<MultiPoly<C>> {
    let mut images: Vec<MultiPoly<C>> = (0..7)
        .map(|k| MultiPoly::var(SEXTIC, 6 - k, ctx).scale(&C::from_i64(if k % 2 == 0 { 1 } else { -1 }, ctx)))
        .collect();
    images.push(MultiPoly::var(SEXTIC, 7, ctx));
    images.push(MultiPoly::var(SEXTIC, 8, ctx));
    images
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn monomials_of_degree(d: u32, nvars: usize) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for e in (0..=d).rev() {
        for mut rest in monomials_of_degree(d - e, nvars - 1) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// A basis of the invariants of degree `d` of the binary sextic over `F_p`:
/// polynomials fixed by `x1 -> x1 + t x2` identically in `t` and by the
/// rotation `(x1, x2) -> (-x2, x1)`, which together generate `SL_2`.
pub fn invariant_space(d: u32, p: u64) -> Result<Vec<MultiPoly<Fp>>, ModpError> {
    let field = PrimeField::new(p)?;
    let mut basis: Vec<MultiPoly<Fp>> = Vec::new();
    for exps in monomials_of_degree(d, 7) {
        let m = Monomial::from_exponents(&exps);
        basis.push(MultiPoly::term(SEXTIC, m, field.elem(1)));
    }
    let u = unipotent_images::<Fp>(&field);
    let s = rotation_images::<Fp>(&field);
    let embed: Vec<MultiPoly<Fp>> = (0..9).map(|i| MultiPoly::var(SEXTIC_T, i, &field)).collect();
    let defects: Vec<(MultiPoly<Fp>, MultiPoly<Fp>)> = basis
        .iter()
        .map(|b| (b.evaluate(&u).sub(&b.evaluate(&embed)), b.evaluate(&s).sub(b)))
        .collect();
    let keys_u: BTreeSet<Monomial> = defects.iter().flat_map(|(du, _)| du.terms().map(|(m, _)| *m).collect::<Vec<_>>()).collect();
    let keys_s: BTreeSet<Monomial> = defects.iter().flat_map(|(_, ds)| ds.terms().map(|(m, _)| *m).collect::<Vec<_>>()).collect();
    let rows: Vec<Vec<Fp>> = defects
        .iter()
        .map(|(du, ds)| keys_u.iter().map(|m| du.coeff(m)).chain(keys_s.iter().map(|m| ds.coeff(m))).collect())
        .collect();
    let kernel = if keys_u.is_empty() && keys_s.is_empty() {
        return Ok(basis);
    } else {
        left_kernel(&rows)
    };
    Ok(kernel
        .into_iter()
        .map(|l| {
            l.iter()
                .zip(&basis)
                .fold(MultiPoly::zero(SEXTIC, &field), |acc, (c, b)| acc.add(&b.scale(c)))
        })
        .collect())
}

/// Outcome of the characteristic-3 comparison.
#[derive(Clone, Debug)]
pub struct Char3Report {
    /// `A mod 3` as printed polynomial.
    pub reduced: String,
    /// `+1` or `-1` with `A mod 3 = sign (a1 a5 - a2 a4)`, if either holds.
    pub sign: Option<i64>,
    /// Dimension of the degree-2 invariants over `F_3`.
    pub degree_two_dimension: usize,
}

/// `A mod 3` against `a1 a5 - a2 a4`, and the dimension of the degree-2 invariants mod 3.
pub fn char3_hasse_check() -> Result<Char3Report, ModpError> {
    let reduced = reduce_mod_p(&invariant(InvariantName::A), 3)?;
    let field = PrimeField::new(3)?;
    let target = crate::covariants::parse_poly("a1*a5 - a2*a4", SEXTIC)?.map_coeffs(&field, |q| field.reduce(q).expect("integral"));
    let sign = [1i64, -1].into_iter().find(|s| reduced.poly() == &target.scale(&field.elem(*s)));
    Ok(Char3Report {
        reduced: reduced.render(),
        sign,
        degree_two_dimension: invariant_space(2, 3)?.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reductions_of_a() {
        let a = invariant(InvariantName::A);
        assert_eq!(reduce_mod_p(&a, 2).unwrap().render(), "a3^2");
        assert_eq!(reduce_mod_p(&a, 3).unwrap().render(), "a1*a5 + 2*a2*a4");
        assert!(reduce_mod_p(&a, 4).is_err());
    }

    #[test]
    fn discriminant_survives_mod_5() {
        let d = reduce_mod_p(&invariant(InvariantName::D), 5).unwrap();
        assert!(!d.is_zero());
    }

    #[test]
    fn char3_identity() {
        let r = char3_hasse_check().unwrap();
        assert_eq!(r.sign, Some(1));
        assert_eq!(r.degree_two_dimension, 1);
    }

    #[test]
    fn degree_two_invariants_in_characteristic_zero_like_primes() {
        assert_eq!(invariant_space(2, 7).unwrap().len(), 1);
        assert_eq!(invariant_space(3, 7).unwrap().len(), 0);
    }

    #[test]
    fn discriminant_lift_detects_singular_curves() {
        let (_, samples) = discriminant_smoothness_check(5, 7).unwrap();
        for s in &samples {
            assert_eq!(s.smooth, s.invariant_nonzero, "{s:?}");
        }
    }

    #[test]
    fn reductions_stay_invariant() {
        assert!(reductions_invariant(5, 3, 11).unwrap());
        assert!(reductions_invariant(7, 3, 12).unwrap());
    }
}

/// One sampled curve in the discriminant comparison.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SmoothnessSample {
    pub a: [u8; 4],
    pub b: [u8; 7],
    pub smooth: bool,
    pub invariant_nonzero: bool,
}

/// Lift of the discriminant `D`, evaluated on `per_class` smooth and
/// `per_class` singular curves over `F_2` drawn with a seeded generator.
pub fn discriminant_smoothness_check(per_class: usize, seed: u64) -> Result<(Char2Invariant, Vec<SmoothnessSample>), ModpError> {
    use rand::{Rng, SeedableRng};
    let kd = char2_lift_invariant("KD", &invariant(InvariantName::D))?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (mut smooth, mut singular) = (Vec::new(), Vec::new());
    while smooth.len() < per_class || singular.len() < per_class {
        let a: [u8; 4] = std::array::from_fn(|_| rng.gen_range(0..2));
        let b: [u8; 7] = std::array::from_fn(|_| rng.gen_range(0..2));
        let s = is_smooth(&a, &b);
        let bucket = if s { &mut smooth } else { &mut singular };
        if bucket.len() < per_class {
            bucket.push(SmoothnessSample { a, b, smooth: s, invariant_nonzero: eval_f2(&kd, &a, &b) });
        }
    }
    smooth.extend(singular);
    Ok((kd, smooth))
}

/// Reductions mod `p` of `A, B, C, D`: nonzero, and unchanged under
/// `samples` pseudo-random elements of `SL_2(Z)` acting through `F_p`.
pub fn reductions_invariant(p: u64, samples: usize, seed: u64) -> Result<bool, ModpError> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    for name in [InvariantName::A, InvariantName::B, InvariantName::C, InvariantName::D] {
        let r = reduce_mod_p(&invariant(name), p)?;
        ok &= !r.is_zero();
        for _ in 0..samples {
            // Products of elementary matrices are unimodular.
            let (s, t) = (rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3));
            let m = [[1 + s * t, s], [t, 1]];
            ok &= crate::covariants::act_sl2(m, &r)? == r;
        }
    }
    Ok(ok)
}
