//! Genus-two theta constants with characteristics, odd theta gradients, and
//! the seed forms built from them.
//!
//! `theta[m1, m2](tau, z) = sum_n exp(pi i (n+m1)^t tau (n+m1) + 2 pi i (n+m1)^t (z+m2))`
//! with `q1 = e(tau11)`, `q2 = e(tau22)`, `r = e(tau12)`. A lattice point
//! `m = n + m1` contributes `q1^(m1^2/2) q2^(m2^2/2) r^(m1 m2)`. Exponents are kept in
//! units of 1/8 for `q1, q2` and 1/4 for `r` until products become integral.
//! Constant phases (`e(m1.m2)` and the `2 pi i` of a derivative) are dropped;
//! the seed forms are normalized afterwards.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::arith::{Coeff, Integer, LaurentPoly, Rational};
use crate::qexp::{FourierExpansion, QexpError, Series2, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error("characteristic {0} is odd")]
    OddCharacteristic(ThetaCharacteristic),
    #[error("characteristic {0} is even")]
    EvenCharacteristic(ThetaCharacteristic),
    #[error("exponent of {0} is not integral")]
    NonIntegralExponent(String),
    #[error("normalization failed: {0}")]
    NormalizationFailure(String),
    #[error(transparent)]
    Qexp(#[from] QexpError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A characteristic `[mu1; mu2]` with entries in `{0, 1/2}`, stored as bits
/// (`1` meaning `1/2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaCharacteristic {
    pub mu1: [u8; 2],
    pub mu2: [u8; 2],
}

impl ThetaCharacteristic {
    pub fn new(mu1: [u8; 2], mu2: [u8; 2]) -> Self {
        assert!(mu1.iter().chain(&mu2).all(|&b| b <= 1), "characteristic entries are 0 or 1/2");
        ThetaCharacteristic { mu1, mu2 }
    }

    /// `4 mu1 . mu2 mod 2`.
    pub fn parity(&self) -> Parity {
        if (self.mu1[0] * self.mu2[0] + self.mu1[1] * self.mu2[1]) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// All sixteen characteristics, lexicographic in `(mu1, mu2)`.
    pub fn all() -> Vec<ThetaCharacteristic> {
        let mut out = Vec::with_capacity(16);
        for bits in 0..16u8 {
            let b = |i: u8| (bits >> (3 - i)) & 1;
            out.push(ThetaCharacteristic::new([b(0), b(1)], [b(2), b(3)]));
        }
        out
    }

    pub fn even() -> Vec<ThetaCharacteristic> {
        Self::all().into_iter().filter(|c| c.parity() == Parity::Even).collect()
    }

    pub fn odd() -> Vec<ThetaCharacteristic> {
        Self::all().into_iter().filter(|c| c.parity() == Parity::Odd).collect()
    }
}

impl fmt::Display for ThetaCharacteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = |b: u8| if b == 1 { "1/2" } else { "0" };
        write!(f, "[{} {}; {} {}]", h(self.mu1[0]), h(self.mu1[1]), h(self.mu2[0]), h(self.mu2[1]))
    }
}

/// Series in `q1^(1/8), q2^(1/8)` with coefficients Laurent in `r^(1/4)`,
/// truncated at `q`-exponent `bound` (in whole units) in each direction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EighthExpansion {
    bound: u32,
    val: [u32; 2],
    cells: BTreeMap<(u32, u32), LaurentPoly<Integer>>,
}

impl EighthExpansion {
    fn from_terms(bound: u32, terms: impl IntoIterator<Item = ((u32, u32), i64, i64)>) -> Self {
        let mut cells: BTreeMap<(u32, u32), LaurentPoly<Integer>> = BTreeMap::new();
        for (n, e, c) in terms {
            if n.0 > 8 * bound || n.1 > 8 * bound || c == 0 {
                continue;
            }
            let t = LaurentPoly::monomial(e, Integer::from_i64(c, &()), &());
            let slot = cells.entry(n).or_insert_with(|| LaurentPoly::zero(&()));
            *slot = slot.add(&t);
        }
        cells.retain(|_, c| !c.is_zero());
        let val = [
            cells.keys().map(|n| n.0).min().unwrap_or(8 * bound + 1),
            cells.keys().map(|n| n.1).min().unwrap_or(8 * bound + 1),
        ];
        EighthExpansion { bound, val, cells }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Certified valuation in units of 1/8.
    pub fn valuation_eighths(&self) -> [u32; 2] {
        self.val
    }

    /// Coefficient of `q1^(e1/8) q2^(e2/8) r^(er/4)`.
    pub fn coeff(&self, e1: u32, e2: u32, er: i64) -> Integer {
        self.cells.get(&(e1, e2)).map_or_else(|| Integer::from_i64(0, &()), |c| c.coeff(er))
    }

    pub fn cells(&self) -> impl Iterator<Item = (&(u32, u32), &LaurentPoly<Integer>)> {
        self.cells.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    /// `q1 <-> q2`.
    pub fn swap(&self) -> Self {
        EighthExpansion {
            bound: self.bound,
            val: [self.val[1], self.val[0]],
            cells: self.cells.iter().map(|(n, c)| ((n.1, n.0), c.clone())).collect(),
        }
    }

    fn truncated_mul(&self, rhs: &Self, limit: [u32; 2]) -> Self {
        let bound = self.bound.min(rhs.bound);
        let mut cells: BTreeMap<(u32, u32), LaurentPoly<Integer>> = BTreeMap::new();
        for (na, ca) in &self.cells {
            for (nb, cb) in &rhs.cells {
                let n = (na.0 + nb.0, na.1 + nb.1);
                if n.0 > limit[0] || n.1 > limit[1] {
                    continue;
                }
                cells.entry(n).or_insert_with(|| LaurentPoly::zero(&())).add_mul_assign(ca, cb);
            }
        }
        cells.retain(|_, c| !c.is_zero());
        EighthExpansion { bound, val: [self.val[0] + rhs.val[0], self.val[1] + rhs.val[1]], cells }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let b = 8 * self.bound.min(rhs.bound);
        self.truncated_mul(rhs, [b, b])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let bound = self.bound.min(rhs.bound);
        let mut cells = self.cells.clone();
        for (n, c) in &rhs.cells {
            let slot = cells.entry(*n).or_insert_with(|| LaurentPoly::zero(&()));
            *slot = slot.add(c);
        }
        cells.retain(|n, c| !c.is_zero() && n.0 <= 8 * bound && n.1 <= 8 * bound);
        EighthExpansion { bound, val: [self.val[0].min(rhs.val[0]), self.val[1].min(rhs.val[1])], cells }
    }

    /// Integral-exponent series; fails unless every exponent is integral.
    pub fn to_series(&self) -> Result<Series2<Integer>, ThetaError> {
        let mut cells = Vec::with_capacity(self.cells.len());
        for (n, c) in &self.cells {
            if n.0 % 8 != 0 || n.1 % 8 != 0 || c.terms().iter().any(|(e, _)| e % 4 != 0) {
                return Err(ThetaError::NonIntegralExponent(format!("q1^({}/8) q2^({}/8)", n.0, n.1)));
            }
            let lp = LaurentPoly::from_terms(&(), c.terms().iter().map(|(e, v)| (e / 4, v.clone())));
            cells.push(((n.0 / 8, n.1 / 8), lp));
        }
        let val = [self.val[0].div_ceil(8), self.val[1].div_ceil(8)];
        Ok(Series2::from_cells(&(), [self.bound, self.bound], val, cells)?)
    }
}

/// Product of `factors`, truncating each partial product at the bound minus
/// the valuation still to come.
pub fn truncated_product(factors: &[EighthExpansion]) -> EighthExpansion {
    let b = 8 * factors.iter().map(|f| f.bound).min().expect("at least one factor");
    let mut remaining = [0u32; 2];
    for f in factors {
        remaining[0] += f.val[0];
        remaining[1] += f.val[1];
    }
    let mut acc: Option<EighthExpansion> = None;
    for f in factors {
        remaining[0] -= f.val[0];
        remaining[1] -= f.val[1];
        let limit = [b.saturating_sub(remaining[0]), b.saturating_sub(remaining[1])];
        acc = Some(match acc {
            None => f.truncated_mul(&unit(f.bound), limit),
            Some(a) => a.truncated_mul(f, limit),
        });
    }
    acc.expect("at least one factor")
}

fn unit(bound: u32) -> EighthExpansion {
    EighthExpansion::from_terms(bound, [((0, 0), 0, 1)])
}

/// Lattice points `m = n + mu1` (in halves: `2m`) whose `q`-exponents stay within `bound`.
fn lattice(ch: ThetaCharacteristic, bound: u32) -> Vec<[i64; 2]> {
    let m = ((2.0 * bound as f64).sqrt().ceil() as i64) + 2;
    let mut out = Vec::new();
    for n1 in -m..=m {
        for n2 in -m..=m {
            let t = [2 * n1 + ch.mu1[0] as i64, 2 * n2 + ch.mu1[1] as i64];
            if (t[0] * t[0]) as u64 <= 8 * bound as u64 && (t[1] * t[1]) as u64 <= 8 * bound as u64 {
                out.push(t);
            }
        }
    }
    out
}

/// Sign `(-1)^(2 n . mu2)` for the lattice point with doubled coordinates `t`.
fn phase(ch: ThetaCharacteristic, t: [i64; 2]) -> i64 {
    let n = [(t[0] - ch.mu1[0] as i64) / 2, (t[1] - ch.mu1[1] as i64) / 2];
    let s = n[0] * ch.mu2[0] as i64 + n[1] * ch.mu2[1] as i64;
    if s.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `theta[ch](tau, 0)` through `q`-exponent `bound`.
pub fn even_theta_constant(ch: ThetaCharacteristic, bound: u32) -> Result<EighthExpansion, ThetaError> {
    if ch.parity() == Parity::Odd {
        return Err(ThetaError::OddCharacteristic(ch));
    }
    let terms = lattice(ch, bound).into_iter().map(|t| ((sq(t[0]), sq(t[1])), t[0] * t[1], phase(ch, t)));
    Ok(EighthExpansion::from_terms(bound, terms.collect::<Vec<_>>()))
}

/// The gradient `(d theta/dz1, d theta/dz2)` at `z = 0`, up to the constant `pi i`
/// (each lattice term is weighted by `2 m_j`).
pub fn odd_theta_gradient(ch: ThetaCharacteristic, bound: u32) -> Result<[EighthExpansion; 2], ThetaError> {
    if ch.parity() == Parity::Even {
        return Err(ThetaError::EvenCharacteristic(ch));
    }
    let pts = lattice(ch, bound);
    let component = |j: usize| {
        let terms = pts.iter().map(|t| ((sq(t[0]), sq(t[1])), t[0] * t[1], t[j] * phase(ch, *t)));
        EighthExpansion::from_terms(bound, terms.collect::<Vec<_>>())
    };
    Ok([component(0), component(1)])
}

/// `theta[ch](tau, 0)` for odd `ch`; identically zero.
pub fn odd_theta_value(ch: ThetaCharacteristic, bound: u32) -> EighthExpansion {
    let terms = lattice(ch, bound).into_iter().map(|t| ((sq(t[0]), sq(t[1])), t[0] * t[1], phase(ch, t)));
    EighthExpansion::from_terms(bound, terms.collect::<Vec<_>>())
}

fn sq(t: i64) -> u32 {
    (t * t) as u32
}

/// A form whose coordinates still carry fractional exponents.
#[derive(Clone, Debug)]
pub struct EighthForm {
    pub weight: Weight,
    pub character: bool,
    pub coords: Vec<EighthExpansion>,
}

impl EighthForm {
    pub fn mul(&self, rhs: &EighthForm) -> EighthForm {
        let j = self.weight.j + rhs.weight.j;
        let mut coords: Vec<Option<EighthExpansion>> = vec![None; j as usize + 1];
        for (i, a) in self.coords.iter().enumerate() {
            for (l, b) in rhs.coords.iter().enumerate() {
                let p = a.mul(b);
                let slot = &mut coords[i + l];
                *slot = Some(match slot.take() {
                    Some(acc) => acc.add(&p),
                    None => p,
                });
            }
        }
        EighthForm {
            weight: Weight::new(j, self.weight.k + rhs.weight.k),
            character: self.character ^ rhs.character,
            coords: coords.into_iter().map(|c| c.expect("filled")).collect(),
        }
    }

    /// Converts to an integral-exponent expansion, validating integrality.
    pub fn to_fourier(&self) -> Result<FourierExpansion<Integer>, ThetaError> {
        let coords = self.coords.iter().map(|c| c.to_series()).collect::<Result<Vec<_>, _>>()?;
        Ok(FourierExpansion::new(self.weight, self.character, coords)?)
    }
}

/// `chi_5`: product of the ten even theta constants (lexicographic order), weight 5 with character.
pub fn chi_5(bound: u32) -> EighthForm {
    let factors: Vec<EighthExpansion> =
        ThetaCharacteristic::even().into_iter().map(|c| even_theta_constant(c, bound).expect("even")).collect();
    EighthForm { weight: Weight::scalar(5), character: true, coords: vec![truncated_product(&factors)] }
}

/// `chi_{6,3}`: the product of the six linear forms `G_i1 X1 + G_i2 X2` built from the odd gradients.
pub fn chi_6_3(bound: u32) -> EighthForm {
    let mut acc = EighthForm { weight: Weight::scalar(0), character: false, coords: vec![unit(bound)] };
    for ch in ThetaCharacteristic::odd() {
        let [g1, g2] = odd_theta_gradient(ch, bound).expect("odd");
        let lin = EighthForm { weight: Weight::new(1, 0), character: false, coords: vec![g1, g2] };
        acc = acc.mul(&lin);
    }
    acc.weight = Weight::new(6, 3);
    acc.character = true;
    acc
}

fn lp(terms: &[(i64, i64)]) -> LaurentPoly<Rational> {
    LaurentPoly::from_terms(&(), terms.iter().map(|(e, c)| (*e, Rational::from(*c))))
}

/// `r^-1 - 2 + r`.
pub fn r_minus_two() -> LaurentPoly<Rational> {
    lp(&[(-1, 1), (0, -2), (1, 1)])
}

/// The `(1, 1)` coefficient pinned for `chi_{6,8}`.
pub fn chi68_leading_vector() -> Vec<LaurentPoly<Rational>> {
    let z = LaurentPoly::zero(&());
    vec![z.clone(), z.clone(), r_minus_two(), lp(&[(-1, -2), (1, 2)]), r_minus_two(), z.clone(), z]
}

fn to_rational(f: &FourierExpansion<Integer>) -> FourierExpansion<Rational> {
    f.map_coeffs(&(), |c| c.to_rational())
}

/// The scalar `lambda` with `found = lambda * target` coordinate-wise, if any.
fn normalizer(found: &[LaurentPoly<Rational>], target: &[LaurentPoly<Rational>]) -> Option<Rational> {
    let (i, t) = target.iter().enumerate().find(|(_, t)| !t.is_zero())?;
    let (e, tc) = t.terms()[0].clone();
    let lambda = found[i].coeff(e).exact_div(&tc)?;
    if lambda.is_zero() {
        return None;
    }
    found.iter().zip(target).all(|(f, t)| *f == t.scale(&lambda)).then_some(lambda)
}

fn cached(
    store: &'static OnceLock<Mutex<HashMap<&'static str, FourierExpansion<Rational>>>>,
    key: &'static str,
    bound: u32,
    build: impl FnOnce(u32) -> Result<FourierExpansion<Rational>, ThetaError>,
) -> Result<FourierExpansion<Rational>, ThetaError> {
    let map = store.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = map.lock().expect("theta cache").get(key) {
        if f.truncation() >= bound {
            return Ok(f.truncate([bound, bound]));
        }
    }
    let f = build(bound)?;
    map.lock().expect("theta cache").insert(key, f.clone());
    Ok(f)
}

static CACHE: OnceLock<Mutex<HashMap<&'static str, FourierExpansion<Rational>>>> = OnceLock::new();

/// `chi_10 = chi_5^2`, scaled so that its `(1, 1)` coefficient is `r^-1 - 2 + r`.
pub fn chi_10(bound: u32) -> Result<FourierExpansion<Rational>, ThetaError> {
    cached(&CACHE, "chi10", bound, |bound| {
        let c5 = chi_5(bound);
        let sq = c5.mul(&c5).to_fourier()?;
        let sq = to_rational(&sq);
        let lambda = normalizer(&sq.coefficient((1, 1)), &[r_minus_two()]).ok_or_else(|| {
            ThetaError::NormalizationFailure(format!(
                "(1,1) coefficient {} is not a multiple of r^-1 - 2 + r",
                sq.coefficient((1, 1))[0]
            ))
        })?;
        Ok(sq.scale(&lambda.recip().expect("nonzero")).with_weight(Weight::scalar(10), false))
    })
}

/// `chi_{6,8} = chi_5 chi_{6,3}`, scaled so that its `(1, 1)` coefficient is
/// `(0, 0, r^-1 - 2 + r, 2(r - r^-1), r^-1 - 2 + r, 0, 0)`.
pub fn chi_6_8(bound: u32) -> Result<FourierExpansion<Rational>, ThetaError> {
    cached(&CACHE, "chi6_8", bound, |bound| {
        let prod = chi_5(bound).mul(&chi_6_3(bound)).to_fourier()?;
        let prod = to_rational(&prod);
        let found = prod.coefficient((1, 1));
        let lambda = normalizer(&found, &chi68_leading_vector()).ok_or_else(|| {
            let shown: Vec<String> = found.iter().map(|p| p.render()).collect();
            ThetaError::NormalizationFailure(format!("(1,1) coefficient ({}) does not match", shown.join(", ")))
        })?;
        Ok(prod.scale(&lambda.recip().expect("nonzero")).with_weight(Weight::new(6, 8), false))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census() {
        assert_eq!(ThetaCharacteristic::all().len(), 16);
        assert_eq!(ThetaCharacteristic::even().len(), 10);
        assert_eq!(ThetaCharacteristic::odd().len(), 6);
    }

    #[test]
    fn parity_errors() {
        let odd = ThetaCharacteristic::odd()[0];
        let even = ThetaCharacteristic::even()[0];
        assert!(matches!(even_theta_constant(odd, 1), Err(ThetaError::OddCharacteristic(_))));
        assert!(matches!(odd_theta_gradient(even, 1), Err(ThetaError::EvenCharacteristic(_))));
    }

    #[test]
    fn null_theta_constant_term() {
        let t = even_theta_constant(ThetaCharacteristic::new([0, 0], [0, 0]), 2).unwrap();
        assert_eq!(t.coeff(0, 0, 0), Integer::from_i64(1, &()));
        // m = (1, 0) and (-1, 0)
        assert_eq!(t.coeff(4, 0, 0), Integer::from_i64(2, &()));
    }

    #[test]
    fn odd_values_vanish_and_gradients_do_not() {
        for ch in ThetaCharacteristic::odd() {
            assert!(odd_theta_value(ch, 2).is_zero(), "{ch}");
            let [g1, g2] = odd_theta_gradient(ch, 2).unwrap();
            assert!(!g1.is_zero() || !g2.is_zero(), "{ch}");
        }
    }

    #[test]
    fn even_constants_are_swap_symmetric() {
        for ch in ThetaCharacteristic::even() {
            let swapped = ThetaCharacteristic::new([ch.mu1[1], ch.mu1[0]], [ch.mu2[1], ch.mu2[0]]);
            let a = even_theta_constant(ch, 3).unwrap();
            let b = even_theta_constant(swapped, 3).unwrap();
            assert_eq!(a.swap(), b, "{ch}");
        }
    }

    #[test]
    fn chi10_is_pinned() {
        let c = chi_10(2).unwrap();
        assert_eq!(c.coefficient((1, 1)), vec![r_minus_two()]);
        assert_eq!(c.valuation(), [1, 1]);
    }

    fn scaled(c: i64, terms: &[(i64, i64)]) -> LaurentPoly<Rational> {
        lp(terms).scale(&Rational::from(c))
    }

    #[test]
    fn chi68_low_coefficients() {
        let c = chi_6_8(2).unwrap();
        let z = LaurentPoly::zero(&());
        let c12 = vec![
            z.clone(),
            z.clone(),
            scaled(-2, &[(-2, 1), (-1, 8), (0, -18), (1, 8), (2, 1)]),
            scaled(8, &[(-2, 1), (-1, 4), (1, -4), (2, -1)]),
            scaled(-2, &[(-2, 7), (-1, -4), (0, -6), (1, -4), (2, 7)]),
            scaled(12, &[(-2, 1), (-1, -2), (1, 2), (2, -1)]),
            scaled(-4, &[(-2, 1), (-1, -4), (0, 6), (1, -4), (2, 1)]),
        ];
        assert_eq!(c.coefficient((1, 2)), c12);
        let mut c21 = c12;
        c21.reverse();
        assert_eq!(c.coefficient((2, 1)), c21);
        let even_a = scaled(16, &[(-3, 1), (-1, -9), (0, 16), (1, -9), (3, 1)]);
        let odd_a = scaled(-72, &[(-3, 1), (-1, -3), (1, 3), (3, -1)]);
        let even_b = scaled(128, &[(-3, 1), (0, -2), (3, 1)]);
        let odd_b = scaled(-144, &[(-3, 1), (-1, 5), (1, -5), (3, -1)]);
        let c22 = vec![even_a.clone(), odd_a.clone(), even_b.clone(), odd_b, even_b, odd_a, even_a];
        assert_eq!(c.coefficient((2, 2)), c22);
    }

    #[test]
    fn chi68_leading_coefficient() {
        let c = chi_6_8(2).unwrap();
        assert_eq!(c.coefficient((1, 1)), chi68_leading_vector());
        assert_eq!(c.weight(), Weight::new(6, 8));
    }
}
