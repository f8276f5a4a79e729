#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use siegel_core::arith::{Coeff, Fp, LaurentPoly, PrimeField, Rational};
use siegel_core::covariants::{
    act_on_variables, combination_ab_minus_3c, invariant, resolve, transvectant, universal_sextic, Covariant, InvariantName,
};
use siegel_core::qexp::{Cell, Series2};

pub const CASES: u32 = 256;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |q| !q.is_zero())
}

pub fn fp(p: u64) -> impl Strategy<Value = Fp> {
    let f = PrimeField::new(p).unwrap();
    (0..p).prop_map(move |v| f.elem(v as i64))
}

pub fn laurent() -> impl Strategy<Value = LaurentPoly<Rational>> {
    proptest::collection::vec((-3i64..=3, rational()), 0..5).prop_map(|t| LaurentPoly::from_terms(&(), t))
}

pub fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly<Rational>> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

fn cells(lo: u32, hi: u32) -> impl Strategy<Value = Vec<(Cell, LaurentPoly<Rational>)>> {
    proptest::collection::vec(((lo..=hi, lo..=hi), laurent()), 0..6)
}

/// A series known through `q1^3 q2^3`.
pub fn series() -> impl Strategy<Value = Series2<Rational>> {
    cells(0, 3).prop_map(|c| Series2::from_cells(&(), [3, 3], [0, 0], c).unwrap())
}

/// A series whose leading cell sits at its valuation, so it can divide.
pub fn divisor() -> impl Strategy<Value = Series2<Rational>> {
    (0u32..=1, 0u32..=1, nonzero_laurent(), cells(0, 3)).prop_map(|(v0, v1, lead, rest)| {
        let rest = rest.into_iter().map(|((a, b), c)| ((a.max(v0), b.max(v1)), c)).filter(|(n, _)| *n != (v0, v1));
        let all = std::iter::once(((v0, v1), lead)).chain(rest);
        Series2::from_cells(&(), [3 + v0, 3 + v1], [v0, v1], all).unwrap()
    })
}

/// Cells agree on the box where both are known.
pub fn same(a: &Series2<Rational>, b: &Series2<Rational>) -> bool {
    let p = [a.prec()[0].min(b.prec()[0]), a.prec()[1].min(b.prec()[1])];
    a.truncate(p).cells().eq(b.truncate(p).cells())
}

pub fn check(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

pub fn ring_laws<C: Coeff>(a: &C, b: &C, c: &C) -> Result<(), TestCaseError> {
    check(a.plus(b) == b.plus(a), "addition commutes")?;
    check(a.times(b) == b.times(a), "multiplication commutes")?;
    check(a.plus(b).plus(c) == a.plus(&b.plus(c)), "addition associates")?;
    check(a.times(b).times(c) == a.times(&b.times(c)), "multiplication associates")?;
    check(a.times(&b.plus(c)) == a.times(b).plus(&a.times(c)), "distributivity")?;
    check(a.minus(a).is_zero(), "a - a = 0")?;
    check(a.plus(&a.negated()).is_zero(), "a + (-a) = 0")?;
    check(a.times(&C::one_in(&a.ctx())) == *a, "unit")?;
    if !b.is_zero() {
        check(a.times(b).exact_div(b).as_ref() == Some(a), "(a b) / b = a")?;
    }
    Ok(())
}

pub fn laurent_laws(a: &LaurentPoly<Rational>, b: &LaurentPoly<Rational>, c: &LaurentPoly<Rational>) -> Result<(), TestCaseError> {
    check(a.add(b) == b.add(a), "laurent addition commutes")?;
    check(a.mul(b) == b.mul(a), "laurent multiplication commutes")?;
    check(a.mul(b).mul(c) == a.mul(&b.mul(c)), "laurent multiplication associates")?;
    check(a.mul(&b.add(c)) == a.mul(b).add(&a.mul(c)), "laurent distributivity")?;
    check(a.sub(a).is_zero(), "laurent a - a = 0")?;
    if !b.is_zero() {
        check(a.mul(b).exact_div(b).ok().as_ref() == Some(a), "laurent (a b) / b = a")?;
    }
    Ok(())
}

pub fn series_laws(a: &Series2<Rational>, b: &Series2<Rational>, c: &Series2<Rational>) -> Result<(), TestCaseError> {
    check(same(&a.add(b), &b.add(a)), "series addition commutes")?;
    check(same(&a.mul(b), &b.mul(a)), "series multiplication commutes")?;
    check(same(&a.add(b).add(c), &a.add(&b.add(c))), "series addition associates")?;
    check(same(&a.mul(b).mul(c), &a.mul(&b.mul(c))), "series multiplication associates")?;
    check(same(&a.mul(&b.add(c)), &a.mul(b).add(&a.mul(c))), "series distributivity")?;
    check(a.sub(a).is_zero(), "series a - a = 0")?;
    let one = Series2::constant(Rational::one());
    check(same(&a.mul(&one), a), "series unit")?;
    Ok(())
}

pub fn division_inverts_multiplication(f: &Series2<Rational>, d: &Series2<Rational>) -> Result<(), TestCaseError> {
    let q = f.mul(d).exact_div(d).map_err(|e| TestCaseError::fail(e.to_string()))?;
    check(same(&q, f), "(f d) / d = f")?;
    check(q.prec()[0] >= 3 && q.prec()[1] >= 3, "quotient keeps the precision of f")
}

/// Small catalog covariants; transvectants among them stay cheap.
pub const SMALL: [&str; 8] = ["f", "C2,0", "C2,4", "C2,8", "C3,2", "C3,6", "C3,8", "C3,12"];

pub fn transvectant_case() -> impl Strategy<Value = (usize, usize, u32, Rational)> {
    (0..SMALL.len(), 0..SMALL.len(), 0u32..=8, nonzero_rational())
}

pub fn transvectant_grading(i: usize, j: usize, k: u32, lambda: &Rational) -> Result<(), TestCaseError> {
    let (g, h) = (resolve(SMALL[i]).unwrap(), resolve(SMALL[j]).unwrap());
    let k = k.min(g.order()).min(h.order());
    let t = transvectant(&g, &h, k).map_err(|e| TestCaseError::fail(e.to_string()))?;
    check(t.degree() == g.degree() + h.degree(), "degree adds")?;
    check(t.order() == g.order() + h.order() - 2 * k, "order drops by 2k")?;
    check(t.poly().is_homogeneous_in(0..7, t.degree()), "homogeneous in the coefficients")?;
    check(t.poly().is_homogeneous_in(7..9, t.order()), "homogeneous in the variables")?;
    let scaled = transvectant(&g, &h.scale(lambda), k).map_err(|e| TestCaseError::fail(e.to_string()))?;
    check(scaled == t.scale(lambda), "linear in the second argument")?;
    if k % 2 == 0 {
        let swapped = transvectant(&h, &g, k).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(swapped == t, "even transvectants are symmetric")?;
    }
    Ok(())
}

pub fn sextic_point() -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-6i64..=6, 1i64..=3).prop_map(|(n, d)| Rational::new(n, d).unwrap()), 7)
}

/// Unimodular matrices: products of elementary ones and a rotation.
pub fn unimodular() -> impl Strategy<Value = [[i64; 2]; 2]> {
    (-3i64..=3, -3i64..=3, any::<bool>()).prop_map(|(s, t, rot)| {
        let m = [[1 + s * t, s], [t, 1]];
        if rot {
            [[-m[1][0], -m[1][1]], [m[0][0], m[0][1]]]
        } else {
            m
        }
    })
}

/// Coefficients of `f(m x)` for the sextic with coefficients `a`.
pub fn transform_point(m: [[i64; 2]; 2], a: &[Rational]) -> Vec<Rational> {
    let moved = act_on_variables(m, &universal_sextic());
    let mut point = a.to_vec();
    point.extend([Rational::zero(), Rational::zero()]);
    (0..7).map(|i| moved.coordinate(i).eval_point(&point)).collect()
}

pub fn named_invariants() -> Vec<(&'static str, Covariant)> {
    let mut v: Vec<(&'static str, Covariant)> = InvariantName::ALL
        .into_iter()
        .map(|n| (["A", "B", "C", "D", "E"][InvariantName::ALL.iter().position(|x| *x == n).unwrap()], invariant(n)))
        .collect();
    v.push(("AB-3C", combination_ab_minus_3c()));
    v
}

pub fn sl2_invariance(invs: &[(&str, Covariant)], m: [[i64; 2]; 2], a: &[Rational]) -> Result<(), TestCaseError> {
    let b = transform_point(m, a);
    for (name, c) in invs {
        check(c.eval_invariant(a) == c.eval_invariant(&b), name)?;
    }
    Ok(())
}
