//! Invariants of `y^2 + a y + b = 0` in characteristic 2, from invariants of
//! the binary sextic by lifting to `Z`, dividing by a power of 2 and reducing.

use num_bigint::BigInt;
use num_integer::Integer as _;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::linalg::left_kernel;
use crate::arith::{Coeff, Fp, Integer, PrimeField, Rational};
use crate::covariants::{invariant, Covariant, InvariantName, Monomial, MultiPoly, CHAR2, CHAR2_V};

use super::gf2k::Gf2k;
use super::ModpError;

/// An element of `F_2[a0..a3, b0..b6]`. `degree` is the degree of the
/// sextic invariant it corresponds to; the polynomial has degree `2 degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Char2Invariant {
    pub name: String,
    pub degree: u32,
    pub poly: MultiPoly<Fp>,
}

/// A pair `(a, b)` of a binary cubic and a binary sextic over `GF(2^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Char2Pair {
    pub a: [u64; 4],
    pub b: [u64; 7],
}

impl Char2Pair {
    pub fn point(&self) -> [u64; 11] {
        let mut p = [0; 11];
        p[..4].copy_from_slice(&self.a);
        p[4..].copy_from_slice(&self.b);
        p
    }
}

fn f2() -> PrimeField {
    PrimeField::new(2).expect("2 is prime")
}

/// `a0 a3 + a1 a2`.
pub fn k1() -> Char2Invariant {
    let f = f2();
    let var = |i| MultiPoly::var(CHAR2, i, &f);
    Char2Invariant { name: "K1".into(), degree: 1, poly: var(0).mul(&var(3)).add(&var(1).mul(&var(2))) }
}

/// Coefficients of the sextic `a^2 + 4 b` in terms of `a0..a3, b0..b6`.
pub fn sextic_from_pair() -> Vec<MultiPoly<Integer>> {
    let var = |i| MultiPoly::<Integer>::var(CHAR2, i, &());
    let four = Integer::new(4);
    (0..7)
        .map(|k| {
            let mut s = var(4 + k).scale(&four);
            for i in 0..4 {
                if k >= i && k - i < 4 {
                    s = s.add(&var(i).mul(&var(k - i)));
                }
            }
            s
        })
        .collect()
}

fn two_adic_valuation(n: &BigInt) -> u32 {
    n.trailing_zeros().map_or(u32::MAX, |z| z as u32)
}

/// `inv` at the coefficients of `a^2 + 4 b`, with denominators cleared.
fn lift_integral(inv: &Covariant<Rational>) -> MultiPoly<Integer> {
    let lcm = inv.poly().denominator_lcm();
    let scaled = inv.poly().scale(&Rational::from_int(lcm));
    let integral: MultiPoly<Integer> = scaled.map_coeffs(&(), |q| q.to_integer().expect("denominators cleared"));
    let mut values = sextic_from_pair();
    values.push(MultiPoly::one(CHAR2, &()));
    values.push(MultiPoly::one(CHAR2, &()));
    integral.evaluate(&values)
}

/// Divide by the largest power of 2 dividing every coefficient.
fn strip_twos(p: &MultiPoly<Integer>) -> MultiPoly<Integer> {
    let v = p.terms().map(|(_, c)| two_adic_valuation(&c.0)).min().unwrap_or(0);
    p.map_coeffs(&(), |c| Integer(&c.0 >> v))
}

fn mod_two(p: &MultiPoly<Integer>) -> MultiPoly<Fp> {
    let f = f2();
    p.map_coeffs(&f, |c| f.elem(i64::from(c.0.is_odd())))
}

/// Evaluate `inv` at the coefficients of `a^2 + 4 b`, divide by the largest
/// power of 2 dividing every coefficient, and reduce mod 2. Overall scalars
/// do not matter: odd factors are units and powers of 2 are divided out.
pub fn char2_lift_invariant(name: &str, inv: &Covariant<Rational>) -> Result<Char2Invariant, ModpError> {
    let lifted = lift_integral(inv);
    if lifted.is_zero() {
        return Err(ModpError::ZeroAfterReduction(name.into()));
    }
    let poly = mod_two(&strip_twos(&lifted));
    Ok(Char2Invariant { name: name.into(), degree: inv.degree(), poly })
}

/// Lifts of all `Z_(2)`-combinations of `invs`, as a basis over `F_2`.
///
/// Whenever the reductions of the current lifts are dependent mod 2, the
/// corresponding sum is divisible by 2 and replaces one of its summands.
/// Each step lowers the index of the lattice in its saturation, so the
/// loop ends with reductions independent over `F_2`.
pub fn char2_lift_space(invs: &[Covariant<Rational>]) -> Result<Vec<MultiPoly<Fp>>, ModpError> {
    let mut lifts: Vec<MultiPoly<Integer>> = Vec::new();
    for inv in invs {
        let l = lift_integral(inv);
        if l.is_zero() {
            return Err(ModpError::ZeroAfterReduction(inv.render()));
        }
        lifts.push(strip_twos(&l));
    }
    loop {
        let reduced: Vec<MultiPoly<Fp>> = lifts.iter().map(mod_two).collect();
        let keys: std::collections::BTreeSet<Monomial> = reduced.iter().flat_map(|p| p.terms().map(|(m, _)| *m).collect::<Vec<_>>()).collect();
        let rows: Vec<Vec<Fp>> = reduced.iter().map(|p| keys.iter().map(|m| p.coeff(m)).collect()).collect();
        let Some(dep) = left_kernel(&rows).into_iter().next() else {
            return Ok(reduced);
        };
        let members: Vec<usize> = (0..lifts.len()).filter(|i| !dep[*i].is_zero()).collect();
        let sum = members.iter().fold(MultiPoly::zero(CHAR2, &()), |acc, i| acc.add(&lifts[*i]));
        if sum.is_zero() {
            return Err(ModpError::ZeroAfterReduction("dependent invariants".into()));
        }
        lifts[members[0]] = strip_twos(&sum);
    }
}

/// `K4`: the lifts of the degree-4 invariants `A^2, B` span `K1^4` and one
/// further class; its representative without the monomial `a0^4 a3^4`.
pub fn k4() -> Result<Char2Invariant, ModpError> {
    let a = invariant(InvariantName::A);
    let b = invariant(InvariantName::B);
    let space = char2_lift_space(&[a.pow(2), b])?;
    let k1_4 = k1().poly.pow(4);
    let lead = Monomial::from_exponents(&[4, 0, 0, 4]);
    let other = space
        .into_iter()
        .find(|p| *p != k1_4)
        .ok_or_else(|| ModpError::ZeroAfterReduction("K4".into()))?;
    let poly = if other.coeff(&lead).is_zero() { other } else { other.add(&k1_4) };
    Ok(Char2Invariant { name: "K4".into(), degree: 4, poly })
}

/// `K3 = K4 / K1`, where `K4` is the lift of a degree-4 invariant.
pub fn k3(k4: &Char2Invariant) -> Result<Char2Invariant, ModpError> {
    let k1 = k1();
    let q = k4.poly.exact_div(&k1.poly).map_err(|_| ModpError::NotDivisible(k4.name.clone(), "K1".into()))?;
    Ok(Char2Invariant { name: "K3".into(), degree: k4.degree - 1, poly: q })
}

/// Symbolic check of invariance under `(a, b) -> (a, b + v^2 + v a)` with a
/// generic cubic `v = sum v_i x1^(3-i) x2^i`.
pub fn unipotent_invariance(inv: &Char2Invariant) -> bool {
    let f = f2();
    let var = |i| MultiPoly::<Fp>::var(CHAR2_V, i, &f);
    let mut images: Vec<MultiPoly<Fp>> = (0..4).map(var).collect();
    for k in 0..7 {
        let mut bk = var(4 + k);
        for i in 0..4 {
            if k >= i && k - i < 4 {
                bk = bk.add(&var(11 + i).mul(&var(11 + k - i)));
                bk = bk.add(&var(11 + i).mul(&var(k - i)));
            }
        }
        images.push(bk);
    }
    let moved = inv.poly.substitute(&images);
    let embedded = inv.poly.map_monomials(CHAR2_V, |m| *m);
    moved == embedded
}

/// Coefficients of `g(alpha x1 + beta x2, gamma x1 + delta x2)` for a binary
/// form `g` of degree `coeffs.len() - 1`.
fn transform_form(field: &Gf2k, coeffs: &[u64], m: [[u64; 2]; 2]) -> Vec<u64> {
    let n = coeffs.len() - 1;
    let lin = |row: [u64; 2]| vec![row[0], row[1]];
    let poly_mul = |p: &[u64], q: &[u64]| {
        let mut out = vec![0; p.len() + q.len() - 1];
        for (i, x) in p.iter().enumerate() {
            for (j, y) in q.iter().enumerate() {
                out[i + j] ^= field.mul(*x, *y);
            }
        }
        out
    };
    let (l1, l2) = (lin(m[0]), lin(m[1]));
    let mut out = vec![0; n + 1];
    for (i, c) in coeffs.iter().enumerate() {
        let mut term = vec![*c];
        for _ in 0..n - i {
            term = poly_mul(&term, &l1);
        }
        for _ in 0..i {
            term = poly_mul(&term, &l2);
        }
        for (o, t) in out.iter_mut().zip(term) {
            *o ^= t;
        }
    }
    out
}

fn random_element(field: &Gf2k, rng: &mut ChaCha8Rng) -> u64 {
    rng.gen_range(0..field.order())
}

fn random_sl2(field: &Gf2k, rng: &mut ChaCha8Rng) -> [[u64; 2]; 2] {
    let a = loop {
        let a = random_element(field, rng);
        if a != 0 {
            break a;
        }
    };
    let (b, c) = (random_element(field, rng), random_element(field, rng));
    let d = field.mul(1 ^ field.mul(b, c), field.inverse(a).expect("nonzero"));
    [[a, b], [c, d]]
}

/// Sampled invariance: `samples` random pairs and `SL_2` elements over each of
/// `GF(2)`, `GF(4)` and `GF(8)`, then 20 random cubics `v` over `GF(8)`.
pub fn char2_action_check(inv: &Char2Invariant, samples: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in [1, 2, 3] {
        let field = Gf2k::new(k).expect("supported degree");
        for _ in 0..samples {
            let mut pair = Char2Pair { a: [0; 4], b: [0; 7] };
            pair.a.iter_mut().chain(pair.b.iter_mut()).for_each(|x| *x = random_element(&field, &mut rng));
            let m = random_sl2(&field, &mut rng);
            let a = transform_form(&field, &pair.a, m);
            let b = transform_form(&field, &pair.b, m);
            let moved = Char2Pair { a: a.try_into().expect("cubic"), b: b.try_into().expect("sextic") };
            if field.eval(&inv.poly, &pair.point()) != field.eval(&inv.poly, &moved.point()) {
                return false;
            }
        }
    }
    let field = Gf2k::new(3).expect("supported degree");
    for _ in 0..20 {
        let mut pair = Char2Pair { a: [0; 4], b: [0; 7] };
        pair.a.iter_mut().chain(pair.b.iter_mut()).for_each(|x| *x = random_element(&field, &mut rng));
        let v: [u64; 4] = std::array::from_fn(|_| random_element(&field, &mut rng));
        let mut moved = pair;
        for k in 0..7 {
            for i in 0..4 {
                if k >= i && k - i < 4 {
                    moved.b[k] ^= field.mul(v[i], v[k - i]) ^ field.mul(v[i], pair.a[k - i]);
                }
            }
        }
        if field.eval(&inv.poly, &pair.point()) != field.eval(&inv.poly, &moved.point()) {
            return false;
        }
    }
    true
}

/// Value at a pair over `F_2` (entries 0 or 1).
pub fn eval_f2(inv: &Char2Invariant, a: &[u8; 4], b: &[u8; 7]) -> bool {
    let point: Vec<Fp> = a.iter().chain(b).map(|x| f2().elem(i64::from(*x))).collect();
    !inv.poly.eval_point(&point).is_zero()
}

/// The monomial `a_i` as a `Char2Invariant`-compatible polynomial, for controls.
pub fn char2_variable(i: usize) -> MultiPoly<Fp> {
    MultiPoly::term(CHAR2, Monomial::var(i), f2().elem(1))
}
