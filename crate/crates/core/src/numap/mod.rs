//! The substitution map from covariants of the sextic to Siegel modular forms.
//!
//! The coefficients `a_i` are replaced by the holomorphic coordinates
//! `beta_i` of `chi_{6,8}`; a covariant of degree `d` and order `j` then gives
//! `chi_10^d nu(c)` of weight `(j, 11d - j/2)`. Poles are cleared by dividing
//! out `chi_10` as often as the result stays holomorphic.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{Integer, Rational};
use crate::covariants::{a11_order_bound, Covariant, CovariantError, MultiPoly, SEXTIC};
use crate::qexp::{exact_div_chi10, FourierExpansion, QexpError, Series2, Weight};
use crate::theta::{chi_6_8, ThetaError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NuError {
    #[error("order {0} is odd")]
    OddOrder(u32),
    #[error("chi_10 power {m} exceeds the degree {d}")]
    PowerTooLarge { m: u32, d: u32 },
    #[error("seed form has non-integral coefficients")]
    NonIntegralSeed,
    #[error(transparent)]
    Qexp(#[from] QexpError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Covariant(#[from] CovariantError),
}

/// Weight `(j, d - j/2)` of the meromorphic form attached to a covariant.
pub fn weight_of_covariant(d: u32, j: u32) -> Result<Weight, NuError> {
    if j % 2 == 1 {
        return Err(NuError::OddOrder(j));
    }
    Ok(Weight::new(j, d as i64 - (j / 2) as i64))
}

#[derive(Clone, Debug)]
pub struct NuResult {
    pub expansion: FourierExpansion<Rational>,
    pub degree: u32,
    pub order: u32,
    pub chi10_power: u32,
    pub holomorphic: bool,
}

fn integral_seeds(seed_truncation: u32) -> Result<Vec<Series2<Integer>>, NuError> {
    let chi68 = chi_6_8(seed_truncation)?;
    let integral = chi68.coords().iter().all(|s| s.cells().all(|(_, c)| c.terms().iter().all(|(_, v)| v.is_integer())));
    if !integral {
        return Err(NuError::NonIntegralSeed);
    }
    Ok(chi68.coords().iter().map(|s| s.map_coeffs(&(), |c| c.to_integer().expect("checked"))).collect())
}

/// `c(beta)`: coordinate `i` of the result is the coefficient of
/// `x1^(j-i) x2^i` evaluated at the coordinates of `chi_{6,8}` computed to
/// `seed_truncation`. Precision is relative: the output is known through
/// `seed_truncation + d - 1` in each direction.
pub fn nu_raw(c: &Covariant<Rational>, seed_truncation: u32) -> Result<FourierExpansion<Rational>, NuError> {
    let seeds = integral_seeds(seed_truncation)?;
    let (d, j) = (c.degree(), c.order());
    let lcm = c.poly().denominator_lcm();
    let scale = Rational::from_int(lcm.clone());
    let inv = Rational::new(BigInt::from(1), lcm).expect("nonzero lcm");
    let mut values = seeds;
    values.push(Series2::constant(Integer::new(1)));
    values.push(Series2::constant(Integer::new(1)));
    let coords = (0..=j)
        .map(|i| {
            let coord: MultiPoly<Rational> = c.coordinate(i).scale(&scale);
            let coord: MultiPoly<Integer> =
                coord.map_coeffs(&(), |q| q.to_integer().expect("denominators cleared"));
            debug_assert_eq!(coord.vars(), SEXTIC);
            coord.evaluate(&values).map_coeffs(&(), |z| z.to_rational()).scale(&inv)
        })
        .collect();
    let weight = Weight::new(j, 11 * d as i64 - (j / 2) as i64);
    Ok(FourierExpansion::new(weight, false, coords)?)
}

/// `chi_10^m nu(c)`: the raw substitution divided `d - m` times by `chi_10`.
pub fn nu_normalized(c: &Covariant<Rational>, m: u32, seed_truncation: u32) -> Result<NuResult, NuError> {
    let d = c.degree();
    if m > d {
        return Err(NuError::PowerTooLarge { m, d });
    }
    let mut f = nu_raw(c, seed_truncation)?;
    for _ in m..d {
        f = exact_div_chi10(&f)?;
    }
    let holomorphic = f.support_violation().is_none();
    Ok(NuResult { expansion: f, degree: d, order: c.order(), chi10_power: m, holomorphic })
}

/// Least `m` with `a11_order_bound(c) + 2m >= 0`: a power of `chi_10` that
/// certainly makes `chi_10^m nu(c)` holomorphic along the product locus.
pub fn minimal_chi10_power(c: &Covariant<Rational>) -> u32 {
    let b = a11_order_bound(c);
    if b >= 0 {
        0
    } else {
        (-b as u32).div_ceil(2)
    }
}

/// Starting from the certified power, keeps dividing by `chi_10` until the
/// division fails. Returns the smallest power reached and its expansion.
/// A success at finite truncation is evidence, not proof, of holomorphy.
pub fn actual_minimal_chi10_power(c: &Covariant<Rational>, seed_truncation: u32) -> Result<NuResult, NuError> {
    let start = minimal_chi10_power(c).min(c.degree());
    let mut best = nu_normalized(c, start, seed_truncation)?;
    while best.chi10_power > 0 {
        match exact_div_chi10(&best.expansion) {
            Ok(next) if next.support_violation().is_none() => {
                best = NuResult { expansion: next, chi10_power: best.chi10_power - 1, ..best };
            }
            Ok(_) | Err(QexpError::NotDivisible { .. }) | Err(QexpError::SupportViolation { .. }) => break,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariants::{invariant, resolve, universal_sextic, InvariantName};
    use crate::arith::Coeff;
    use crate::theta::chi_10;

    #[test]
    fn weights() {
        assert_eq!(weight_of_covariant(1, 6).unwrap(), Weight::new(6, -2));
        assert_eq!(weight_of_covariant(2, 8).unwrap(), Weight::new(8, -2));
        assert_eq!(weight_of_covariant(15, 0).unwrap(), Weight::new(0, 15));
        assert_eq!(weight_of_covariant(3, 3), Err(NuError::OddOrder(3)));
    }

    #[test]
    fn raw_sextic_is_the_seed() {
        let f = nu_raw(&universal_sextic(), 2).unwrap();
        assert_eq!(f.weight(), Weight::new(6, 8));
        assert_eq!(f, chi_6_8(2).unwrap());
    }

    #[test]
    fn a_needs_one_power() {
        let a = invariant(InvariantName::A);
        assert!(matches!(nu_normalized(&a, 0, 2), Err(NuError::Qexp(QexpError::NotDivisible { .. }))));
        let chi12 = nu_normalized(&a, 1, 2).unwrap();
        assert_eq!(chi12.expansion.weight(), Weight::scalar(12));
        assert!(chi12.holomorphic);
        assert!(chi12.expansion.siegel_phi().unwrap().is_zero());
        assert!(!chi12.expansion.is_zero());
    }

    #[test]
    fn raw_a_is_chi10_times_chi12() {
        let a = invariant(InvariantName::A);
        let raw = nu_raw(&a, 2).unwrap();
        let chi12 = nu_normalized(&a, 1, 2).unwrap().expansion;
        let chi10 = chi_10(3).unwrap();
        let prod = chi12.mul(&chi10);
        let p = prod.truncation().min(raw.truncation());
        assert_eq!(raw.truncate([p, p]), prod.truncate([p, p]));
    }

    #[test]
    fn certified_powers() {
        assert_eq!(minimal_chi10_power(&universal_sextic()), 1);
        assert_eq!(minimal_chi10_power(&invariant(InvariantName::E)), 2);
        assert_eq!(minimal_chi10_power(&invariant(InvariantName::D)), 0);
        assert_eq!(minimal_chi10_power(&resolve("A").unwrap()), 1);
    }

    #[test]
    fn raw_d_is_a_power_of_chi10() {
        let d = invariant(InvariantName::D);
        let raw = nu_raw(&d, 2).unwrap();
        let chi10 = chi_10(2).unwrap().pow(11);
        let p = raw.truncation().min(chi10.truncation());
        let lead = raw.coefficient((11, 11))[0].coeff(0).exact_div(&chi10.coefficient((11, 11))[0].coeff(0)).unwrap();
        assert_eq!(lead, Rational::from(4096));
        assert_eq!(raw.truncate([p, p]), chi10.scale(&lead).truncate([p, p]));
    }

    #[test]
    fn e_needs_exactly_two_powers() {
        let r = actual_minimal_chi10_power(&invariant(InvariantName::E), 2).unwrap();
        assert_eq!(r.chi10_power, 2);
        assert_eq!(r.expansion.weight(), Weight::scalar(35));
        assert_eq!(r.expansion.a11_order().1, crate::arith::Order::Finite(1));
    }

    #[test]
    fn psi4_boundary_is_e4() {
        let b = nu_normalized(&invariant(InvariantName::B), 0, 3).unwrap();
        let phi = b.expansion.siegel_phi().unwrap();
        assert_eq!(phi.coeffs(), &[1, 240, 2160].map(Rational::from));
    }
}
