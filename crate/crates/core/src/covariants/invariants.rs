//! The invariants A, B, C, D, E, normalized by their leading terms in `a3`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::arith::linalg::solve_unique;
use crate::arith::{Coeff, Integer, Rational};

use super::catalog::grace_young;
use super::{Covariant, CovariantError, Monomial, MultiPoly, SEXTIC};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvariantName {
    A,
    B,
    C,
    D,
    E,
}

impl InvariantName {
    pub const ALL: [InvariantName; 5] = [Self::A, Self::B, Self::C, Self::D, Self::E];

    pub fn degree(self) -> u32 {
        match self {
            Self::A => 2,
            Self::B => 4,
            Self::C => 6,
            Self::D => 10,
            Self::E => 15,
        }
    }
}

impl fmt::Display for InvariantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for InvariantName {
    type Err = CovariantError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(Self::A),
            "B" => Ok(Self::B),
            "C" => Ok(Self::C),
            "D" => Ok(Self::D),
            "E" => Ok(Self::E),
            _ => Err(CovariantError::UnknownName(s.to_string())),
        }
    }
}

type Anchor = (&'static [(&'static str, u32)], i64);

/// The unique combination of `candidates` taking the prescribed values on
/// the anchor monomials.
fn fit(candidates: &[MultiPoly], anchors: &[Anchor]) -> Result<MultiPoly, CovariantError> {
    let rows: Vec<Vec<Rational>> =
        anchors.iter().map(|(spec, _)| candidates.iter().map(|c| c.coeff_of(spec)).collect()).collect();
    let rhs: Vec<Rational> = anchors.iter().map(|(_, v)| Rational::from(*v)).collect();
    let x = solve_unique(&rows, &rhs)
        .ok_or_else(|| CovariantError::Normalization("anchor monomials do not determine a unique combination".into()))?;
    let mut out = MultiPoly::zero(SEXTIC, &());
    for (c, w) in candidates.iter().zip(&x) {
        out = out.add(&c.scale(w));
    }
    Ok(out)
}

fn build(name: InvariantName) -> Result<Covariant, CovariantError> {
    let a = || grace_young("C2,0").expect("catalog").into_poly();
    let poly = match name {
        InvariantName::A => a(),
        InvariantName::B => {
            let i4 = grace_young("C4,0")?.into_poly();
            fit(&[i4, a().pow(2)], &[(&[("a3", 4)], 0), (&[("a0", 1), ("a6", 1), ("a3", 2)], 81)])?
        }
        InvariantName::C => {
            let i4 = grace_young("C4,0")?.into_poly();
            let i6 = grace_young("C6,0")?.into_poly();
            fit(
                &[i6, a().mul(&i4), a().pow(3)],
                &[
                    (&[("a3", 6)], 0),
                    (&[("a0", 1), ("a6", 1), ("a3", 4)], 162),
                    (&[("a1", 1), ("a5", 1), ("a3", 4)], 72),
                    (&[("a2", 1), ("a4", 1), ("a3", 4)], 0),
                ],
            )?
        }
        InvariantName::D => {
            let res = resultant_discriminant().map_coeffs(&(), |c: &Integer| c.to_rational());
            fit(&[res], &[(&[("a0", 2), ("a6", 2), ("a3", 6)], 729)])?
        }
        InvariantName::E => {
            let i15 = grace_young("C15,0")?.into_poly();
            fit(&[i15], &[(&[("a0", 2), ("a5", 3), ("a3", 10)], -729)])?
        }
    };
    Covariant::new_certified(poly, name.degree(), 0)
}

fn cells() -> &'static HashMap<InvariantName, OnceLock<Covariant>> {
    static CELLS: OnceLock<HashMap<InvariantName, OnceLock<Covariant>>> = OnceLock::new();
    CELLS.get_or_init(|| InvariantName::ALL.iter().map(|n| (*n, OnceLock::new())).collect())
}

/// One of the invariants `A, B, C, D, E` of degrees 2, 4, 6, 10, 15.
pub fn invariant(name: InvariantName) -> Covariant {
    cells()[&name].get_or_init(|| build(name).unwrap_or_else(|e| panic!("invariant {name}: {e}"))).clone()
}

/// The degree-6 invariant with leading terms
/// `1458*a0*a6*a3^4 - 486*(a0*a4*a5 + a1*a2*a6)*a3^3`, fitted in the span of
/// `A*B` and `C`. With the normalizations used here it equals `-8*A*B - 3*C`.
pub fn combination_ab_minus_3c() -> Covariant {
    static CELL: OnceLock<Covariant> = OnceLock::new();
    CELL.get_or_init(|| {
        let ab = invariant(InvariantName::A).mul(&invariant(InvariantName::B)).into_poly();
        let c = invariant(InvariantName::C).into_poly();
        let poly = fit(
            &[ab, c],
            &[(&[("a0", 1), ("a6", 1), ("a3", 4)], 1458), (&[("a0", 1), ("a4", 1), ("a5", 1), ("a3", 3)], -486)],
        )
        .expect("anchors are independent");
        Covariant::new_certified(poly, 6, 0).expect("invariant")
    })
    .clone()
}

/// `Res(df/dx1, df/dx2)` as a polynomial in `a0..a6`, computed as the
/// determinant of the 10x10 Sylvester matrix by expansion over column subsets.
pub fn resultant_discriminant() -> MultiPoly<Integer> {
    // Row entries are single terms `coefficient * a_index`.
    let mut rows: Vec<Vec<Option<(i64, usize)>>> = vec![vec![None; 10]; 10];
    for r in 0..5 {
        for i in 0..6 {
            // df/dx1 = sum (6-i) a_i x1^(5-i) x2^i
            if i < 6 {
                rows[r][r + i] = Some((6 - i as i64, i));
            }
            // df/dx2 = sum (i+1) a_(i+1) x1^(5-i) x2^i
            rows[5 + r][r + i] = Some((i as i64 + 1, i + 1));
        }
    }
    let mut layer: HashMap<u16, MultiPoly<Integer>> = HashMap::new();
    layer.insert(0, MultiPoly::one(SEXTIC, &()));
    for row in &rows {
        let mut next: HashMap<u16, MultiPoly<Integer>> = HashMap::new();
        for (mask, poly) in &layer {
            for (col, entry) in row.iter().enumerate() {
                let Some((c, var)) = entry else { continue };
                if mask & (1 << col) != 0 {
                    continue;
                }
                let above = (mask >> (col + 1)).count_ones();
                let sign = if above % 2 == 1 { -c } else { *c };
                let term = MultiPoly::term(SEXTIC, Monomial::var(*var), Integer::from_i64(sign, &()));
                let contrib = poly.mul(&term);
                let slot = next.entry(mask | (1 << col)).or_insert_with(|| MultiPoly::zero(SEXTIC, &()));
                *slot = slot.add(&contrib);
            }
        }
        layer = next;
    }
    layer.remove(&0x3ff).unwrap_or_else(|| MultiPoly::zero(SEXTIC, &()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeff(name: InvariantName, spec: &[(&str, u32)]) -> i64 {
        let c = invariant(name).coeff_of(spec);
        assert!(c.is_integer(), "{c}");
        i64::try_from(c.numer()).unwrap()
    }

    #[test]
    fn a_has_the_classical_form() {
        assert_eq!(invariant(InvariantName::A).render(), "120*a0*a6 - 20*a1*a5 + 8*a2*a4 - 3*a3^2");
    }

    #[test]
    fn b_leading_terms() {
        use InvariantName::B;
        assert_eq!(coeff(B, &[("a0", 1), ("a6", 1), ("a3", 2)]), 81);
        assert_eq!(coeff(B, &[("a1", 1), ("a5", 1), ("a3", 2)]), 9);
        assert_eq!(coeff(B, &[("a2", 1), ("a4", 1), ("a3", 2)]), 0);
        assert_eq!(coeff(B, &[("a0", 1), ("a4", 1), ("a5", 1), ("a3", 1)]), -45);
        assert_eq!(coeff(B, &[("a1", 1), ("a2", 1), ("a6", 1), ("a3", 1)]), -45);
        assert_eq!(coeff(B, &[("a1", 1), ("a4", 2), ("a3", 1)]), -3);
        assert_eq!(coeff(B, &[("a2", 2), ("a5", 1), ("a3", 1)]), -3);
        assert_eq!(coeff(B, &[("a2", 2), ("a4", 2)]), 1);
    }

    #[test]
    fn c_leading_terms() {
        use InvariantName::C;
        assert_eq!(coeff(C, &[("a0", 1), ("a6", 1), ("a3", 4)]), 162);
        assert_eq!(coeff(C, &[("a1", 1), ("a5", 1), ("a3", 4)]), 72);
        assert_eq!(coeff(C, &[("a0", 1), ("a4", 1), ("a5", 1), ("a3", 3)]), -198);
        assert_eq!(coeff(C, &[("a1", 1), ("a2", 1), ("a6", 1), ("a3", 3)]), -198);
        assert_eq!(coeff(C, &[("a1", 1), ("a4", 2), ("a3", 3)]), -24);
        assert_eq!(coeff(C, &[("a2", 2), ("a5", 1), ("a3", 3)]), -24);
    }

    #[test]
    fn ab_minus_3c_leading_terms() {
        let c = combination_ab_minus_3c();
        assert_eq!((c.degree(), c.order()), (6, 0));
        assert_eq!(c.coeff_of(&[("a0", 1), ("a6", 1), ("a3", 4)]), Rational::from(1458));
        assert_eq!(c.coeff_of(&[("a0", 1), ("a4", 1), ("a5", 1), ("a3", 3)]), Rational::from(-486));
        assert_eq!(c.coeff_of(&[("a1", 1), ("a2", 1), ("a6", 1), ("a3", 3)]), Rational::from(-486));
        let ab = invariant(InvariantName::A).mul(&invariant(InvariantName::B));
        let expected = ab.scale(&Rational::from(-8)).sub(&invariant(InvariantName::C).scale(&Rational::from(3))).unwrap();
        assert_eq!(c, expected);
        assert!(crate::covariants::a11_order_bound(&c) >= 0);
        let plain = ab.sub(&invariant(InvariantName::C).scale(&Rational::from(3))).unwrap();
        assert!(crate::covariants::a11_order_bound(&plain) < 0);
    }

    #[test]
    fn d_leading_terms() {
        use InvariantName::D;
        assert_eq!(coeff(D, &[("a0", 2), ("a6", 2), ("a3", 6)]), 729);
        assert_eq!(coeff(D, &[("a0", 2), ("a4", 1), ("a5", 1), ("a6", 1), ("a3", 5)]), -486);
        assert_eq!(coeff(D, &[("a0", 2), ("a5", 3), ("a3", 5)]), 108);
        assert_eq!(coeff(D, &[("a0", 1), ("a1", 1), ("a2", 1), ("a6", 2), ("a3", 5)]), -486);
        assert_eq!(coeff(D, &[("a1", 3), ("a6", 2), ("a3", 5)]), 108);
    }

    #[test]
    fn e_leading_terms() {
        use InvariantName::E;
        assert_eq!(coeff(E, &[("a0", 2), ("a5", 3), ("a3", 10)]), -729);
        assert_eq!(coeff(E, &[("a1", 3), ("a6", 2), ("a3", 10)]), 729);
    }

    #[test]
    fn evaluations() {
        let a = invariant(InvariantName::A);
        let pt = |v: [i64; 7]| v.map(Rational::from);
        assert_eq!(a.eval_invariant(&pt([1, 0, 0, 0, 0, 0, 1])), Rational::from(120));
        assert_eq!(a.eval_invariant(&pt([0, 0, 0, 1, 0, 0, 0])), Rational::from(-3));
        // x1^2 (x1^4 + x2^4)
        let d = invariant(InvariantName::D);
        assert_eq!(d.eval_invariant(&pt([1, 0, 0, 0, 1, 0, 0])), Rational::zero());
    }
}
