//! Named Siegel modular forms and checks on the ring they generate.

mod cache;
mod probe;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::arith::{Order, Rational};
use crate::covariants::{resolve, CovariantError};
use crate::numap::{nu_normalized, NuError};
use crate::qexp::{FourierExpansion, QexpError};
use crate::theta::{chi_10, chi_6_8, ThetaError};

pub use cache::{recipe_hash, FormCache};
pub use probe::{proportionality, weight_6_8_probe, ProbeFamily, ProbeReport};

/// Bumped whenever a pinned normalization changes.
pub const NORMALIZATION_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("unknown form {0:?}")]
    UnknownName(String),
    #[error("weight {0} is odd")]
    OddWeight(u32),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Nu(#[from] NuError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Qexp(#[from] QexpError),
    #[error(transparent)]
    Covariant(#[from] CovariantError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    /// Built from theta constants.
    Theta(&'static str),
    /// `chi_10^power nu(covariant)`.
    Nu { covariant: &'static str, power: u32 },
}

const REGISTRY: &[(&str, Recipe, &str)] = &[
    ("chi10", Recipe::Theta("chi5^2"), "(1,1) coefficient r^-1 - 2 + r"),
    ("chi6_8", Recipe::Theta("chi5*chi6_3"), "(1,1) coefficient (0, 0, r^-1 - 2 + r, 2(r - r^-1), r^-1 - 2 + r, 0, 0)"),
    ("psi4", Recipe::Nu { covariant: "B", power: 0 }, "image of B"),
    ("psi6", Recipe::Nu { covariant: "AB-3C", power: 0 }, "image of the degree-6 combination AB-3C"),
    ("chi12", Recipe::Nu { covariant: "A", power: 1 }, "chi10 times the image of A"),
    ("chi35", Recipe::Nu { covariant: "E", power: 2 }, "chi10^2 times the image of E"),
    ("chi8_8", Recipe::Nu { covariant: "C2,8", power: 1 }, "chi10 times the image of the Hessian"),
    ("chi4_10", Recipe::Nu { covariant: "C2,4", power: 1 }, "chi10 times the image of (f,f)_4, content 1"),
];

pub fn registry_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|(n, _, _)| *n).collect()
}

#[derive(Clone, Debug)]
pub struct NamedForm {
    pub name: &'static str,
    pub expansion: FourierExpansion<Rational>,
    pub recipe: Recipe,
    pub normalization: &'static str,
}

fn lookup(name: &str) -> Result<&'static (&'static str, Recipe, &'static str), RingError> {
    REGISTRY.iter().find(|(n, _, _)| *n == name).ok_or_else(|| RingError::UnknownName(name.to_string()))
}

/// Runs a recipe; the result is known exactly through `q1^n q2^n`.
pub fn build(recipe: &Recipe, n: u32) -> Result<FourierExpansion<Rational>, RingError> {
    let f = match recipe {
        Recipe::Theta("chi5^2") => chi_10(n)?,
        Recipe::Theta(_) => chi_6_8(n)?,
        Recipe::Nu { covariant, power } => {
            let c = resolve(covariant)?;
            let seeds = (n + 1).saturating_sub(*power).max(1);
            nu_normalized(&c, *power, seeds)?.expansion
        }
    };
    if f.truncation() < n {
        return Err(QexpError::InsufficientPrecision.into());
    }
    Ok(f.truncate([n, n]))
}

type Memo = Mutex<HashMap<(&'static str, u32), FourierExpansion<Rational>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The registered form `name` through `q1^n q2^n`, memoized in process.
pub fn named_form(name: &str, n: u32) -> Result<NamedForm, RingError> {
    named_form_cached(name, n, None)
}

/// As [`named_form`], reading and filling the disk cache when one is given.
pub fn named_form_cached(name: &str, n: u32, cache: Option<&FormCache>) -> Result<NamedForm, RingError> {
    let (key, recipe, note) = lookup(name)?;
    let wrap = |expansion| NamedForm { name: key, expansion, recipe: recipe.clone(), normalization: note };
    if let Some(f) = memo().lock().expect("memo").get(&(*key, n)) {
        return Ok(wrap(f.clone()));
    }
    if let Some(f) = cache.and_then(|c| c.load(key, n, recipe)) {
        memo().lock().expect("memo").insert((*key, n), f.clone());
        return Ok(wrap(f));
    }
    let f = build(recipe, n)?;
    if let Some(c) = cache {
        c.store(key, n, recipe, &f)?;
    }
    memo().lock().expect("memo").insert((*key, n), f.clone());
    Ok(wrap(f))
}

/// Coefficient of `t^k` in `1/((1-t^4)(1-t^6)(1-t^10)(1-t^12))`.
pub fn even_dimension(k: u32) -> Result<u64, RingError> {
    if k % 2 == 1 {
        return Err(RingError::OddWeight(k));
    }
    let k = k as usize;
    let mut c = vec![0u64; k + 1];
    c[0] = 1;
    for w in [4usize, 6, 10, 12] {
        for i in w..=k {
            c[i] += c[i - w];
        }
    }
    Ok(c[k])
}

/// Exponents `(a, b, c, d)` with `4a + 6b + 10c + 12d = k`.
pub fn even_monomials(k: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 0..=k / 4 {
        for b in 0..=(k - 4 * a) / 6 {
            for c in 0..=(k - 4 * a - 6 * b) / 10 {
                let rest = k - 4 * a - 6 * b - 10 * c;
                if rest % 12 == 0 {
                    out.push([a, b, c, rest / 12]);
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankRow {
    pub weight: u32,
    pub expected_dim: u64,
    pub rank: usize,
    pub truncation: u32,
    pub status: Status,
}

struct Generators {
    powers: [Vec<FourierExpansion<Rational>>; 4],
}

impl Generators {
    fn new(n: u32) -> Result<Self, RingError> {
        let base = ["psi4", "psi6", "chi10", "chi12"].map(|g| named_form(g, n).map(|f| vec![FourierExpansion::one(&()), f.expansion]));
        let [a, b, c, d] = base;
        Ok(Generators { powers: [a?, b?, c?, d?] })
    }

    fn power(&mut self, g: usize, e: u32) -> FourierExpansion<Rational> {
        while self.powers[g].len() <= e as usize {
            let next = self.powers[g].last().expect("nonempty").mul(&self.powers[g][1]);
            self.powers[g].push(next);
        }
        self.powers[g][e as usize].clone()
    }

    fn monomial(&mut self, exps: [u32; 4], n: u32) -> FourierExpansion<Rational> {
        let mut acc = FourierExpansion::one(&());
        for (g, e) in exps.into_iter().enumerate() {
            if e > 0 {
                acc = acc.mul(&self.power(g, e));
            }
        }
        acc.truncate([n, n])
    }
}

/// Rank of the weight-`k` monomials in the four even generators at truncation `n`.
pub fn monomial_rank(k: u32, n: u32) -> Result<usize, RingError> {
    let mut gens = Generators::new(n)?;
    let forms: Vec<_> = even_monomials(k).into_iter().map(|e| gens.monomial(e, n)).collect();
    Ok(FourierExpansion::rank_of_span(&forms)?)
}

/// For each even `k <= k_max`, compares the monomial rank with the expected
/// dimension; a deficit is retried once at `n + 1`.
pub fn verify_even_generation(k_max: u32, n: u32) -> Result<Vec<RankRow>, RingError> {
    let mut rows = Vec::new();
    for k in (0..=k_max).step_by(2) {
        let expected = even_dimension(k)?;
        let mut truncation = n;
        let mut rank = monomial_rank(k, n)?;
        if (rank as u64) < expected {
            truncation = n + 1;
            rank = monomial_rank(k, n + 1)?;
        }
        rows.push(RankRow { weight: k, expected_dim: expected, rank, truncation, status: Status::of(rank as u64 == expected) });
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct OddWeightReport {
    pub truncation: u32,
    pub a11_order: Option<u32>,
    pub phi_vanishes: bool,
    pub monomial_rank: usize,
    pub rank_with_square: usize,
    pub expected_dim: u64,
    pub status: Status,
}

/// `chi_35` vanishes to order exactly one along the product locus, is a cusp
/// form, and its square lies in the span of the weight-70 even monomials.
pub fn odd_weight_divisibility_check(n: u32) -> Result<OddWeightReport, RingError> {
    let chi35 = named_form("chi35", n)?.expansion;
    let a11 = match chi35.a11_order().1 {
        Order::Finite(v) => Some(v),
        Order::Infinite => None,
    };
    let phi_vanishes = chi35.siegel_phi()?.is_zero();
    let mut gens = Generators::new(n)?;
    let mut forms: Vec<_> = even_monomials(70).into_iter().map(|e| gens.monomial(e, n)).collect();
    let monomial_rank = FourierExpansion::rank_of_span(&forms)?;
    let square = chi35.mul(&chi35).truncate([n, n]);
    let square_nonzero = !square.is_zero();
    forms.push(square);
    let rank_with_square = FourierExpansion::rank_of_span(&forms)?;
    let ok = a11 == Some(1) && phi_vanishes && square_nonzero && rank_with_square == monomial_rank;
    Ok(OddWeightReport {
        truncation: n,
        a11_order: a11,
        phi_vanishes,
        monomial_rank,
        rank_with_square,
        expected_dim: even_dimension(70)?,
        status: Status::of(ok),
    })
}
