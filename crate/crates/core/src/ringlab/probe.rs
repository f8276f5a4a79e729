//! Holomorphic weight-(6, 8) forms from families of degree-11, order-6 covariants.
//!
//! For a family `c_1..c_k`, `F_i = nu_raw(c_i) = chi_10^11 nu(c_i)`. Division
//! by `chi_10` is made linear by splitting off, at each cell, the part of the
//! numerator not divisible by the leading cell `r^-1 (r - 1)^2`: its value
//! and derivative at `r = 1`. A combination `sum l_i F_i` is divisible eleven
//! times exactly when all these defects cancel, so the holomorphic images
//! form the left kernel of the defect matrix.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::arith::linalg::left_kernel;
use crate::arith::{Coeff, LaurentPoly, Rational};
use crate::covariants::{resolve, transvectant, Covariant};
use crate::numap::nu_raw;
use crate::qexp::{graded_cells, Cell, FourierExpansion, Series2, Weight};
use crate::theta::{chi_10, r_minus_two};

use super::{named_form, RingError, Status};

/// `Some(c)` with `a = c b` on the common box (and `b` nonzero there).
pub fn proportionality(a: &FourierExpansion<Rational>, b: &FourierExpansion<Rational>) -> Option<Rational> {
    let p = a.truncation().min(b.truncation());
    let (a, b) = (a.truncate([p, p]), b.truncate([p, p]));
    let (i, s) = b.coords().iter().enumerate().find(|(_, s)| !s.is_zero())?;
    let (n, cell) = s.cells().next()?;
    let (e, v) = cell.terms()[0].clone();
    let c = a.coords()[i].cell(*n).coeff(e).exact_div(&v)?;
    let b = b.scale(&c);
    let same = a.coords().iter().zip(b.coords()).all(|(x, y)| x.cells().eq(y.cells()));
    (a.weight() == b.weight() && same).then_some(c)
}

type DefectKey = (usize, usize, Cell, u8);

/// Quotient by `d` (leading cell `r^-1 - 2 + r`) after removing, cell by
/// cell, the jet `v0 + v1 (r - 1)` that obstructs exact division.
fn divide_with_defects(f: &Series2<Rational>, d: &Series2<Rational>) -> (Series2<Rational>, Vec<(Cell, u8, Rational)>) {
    let s = d.valuation();
    let lead = d.cell((s[0], s[1]));
    assert_eq!(lead, r_minus_two(), "divisor must be chi_10");
    let v = f.valuation();
    assert!(v[0] >= s[0] && v[1] >= s[1], "dividend below the divisor's valuation");
    let valq = [v[0] - s[0], v[1] - s[1]];
    let mut prec = [0; 2];
    for i in 0..2 {
        prec[i] = (f.prec()[i] - s[i]).min(d.prec()[i] - s[i] + valq[i]);
    }
    let mut q: BTreeMap<Cell, LaurentPoly<Rational>> = BTreeMap::new();
    let mut defects = Vec::new();
    for n in graded_cells(valq, prec) {
        let mut num = f.cell((n.0 + s[0], n.1 + s[1]));
        for (t, dt) in d.cells() {
            if *t == (s[0], s[1]) || t.0 > n.0 + s[0] || t.1 > n.1 + s[1] {
                continue;
            }
            if let Some(qk) = q.get(&(n.0 + s[0] - t.0, n.1 + s[1] - t.1)) {
                num = num.sub(&qk.mul(dt));
            }
        }
        if num.is_zero() {
            continue;
        }
        let v0 = num.eval_at_one();
        let v1 = num.terms().iter().fold(Rational::zero(), |acc, (e, c)| acc.plus(&c.times(&Rational::from(*e))));
        let jet = LaurentPoly::from_terms(&(), [(0, v0.minus(&v1)), (1, v1.clone())]);
        for (tag, value) in [(0u8, v0), (1, v1)] {
            if !value.is_zero() {
                defects.push((n, tag, value));
            }
        }
        let qn = num.sub(&jet).exact_div(&lead).expect("jet removed");
        if !qn.is_zero() {
            q.insert(n, qn);
        }
    }
    let quotient = Series2::from_cells(&(), prec, valq, q).expect("cells inside the quotient box");
    (quotient, defects)
}

struct Reduced {
    quotient: FourierExpansion<Rational>,
    defects: BTreeMap<DefectKey, Rational>,
}

fn reduce(f: &FourierExpansion<Rational>, times: usize, chi10: &Series2<Rational>) -> Reduced {
    let mut coords: Vec<Series2<Rational>> = f.coords().to_vec();
    let mut defects = BTreeMap::new();
    for step in 0..times {
        for (i, c) in coords.iter_mut().enumerate() {
            let (q, d) = divide_with_defects(c, chi10);
            *c = q;
            defects.extend(d.into_iter().map(|(n, tag, v)| ((step, i, n, tag), v)));
        }
    }
    let w = f.weight();
    let weight = Weight::new(w.j, w.k - 10 * times as i64);
    let quotient = FourierExpansion::new(weight, f.character(), coords).expect("same coordinate count");
    Reduced { quotient, defects }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeFamily {
    pub label: String,
    pub members: Vec<String>,
    /// Dimension of the holomorphic part of the family's span.
    pub holomorphic_dim: usize,
    /// Ratio to `chi_{6,8}` of each holomorphic basis vector, if proportional.
    pub ratios: Vec<Option<String>>,
}

impl ProbeFamily {
    fn all_proportional(&self) -> bool {
        self.ratios.iter().all(|r| r.as_deref().is_some_and(|r| r != "0"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub truncation: u32,
    pub families: Vec<ProbeFamily>,
    /// Families contributing exactly one holomorphic form, proportional to `chi_{6,8}`.
    pub independent_constructions: usize,
    pub status: Status,
}

fn family(
    label: &str,
    members: Vec<(String, FourierExpansion<Rational>)>,
    chi10: &Series2<Rational>,
    chi68: &FourierExpansion<Rational>,
    n: u32,
) -> ProbeFamily {
    let reduced: Vec<Reduced> = members.iter().map(|(_, f)| reduce(f, 11, chi10)).collect();
    let keys: BTreeSet<DefectKey> = reduced.iter().flat_map(|r| r.defects.keys().copied()).collect();
    let rows: Vec<Vec<Rational>> =
        reduced.iter().map(|r| keys.iter().map(|k| r.defects.get(k).cloned().unwrap_or_else(Rational::zero)).collect()).collect();
    let kernel = if keys.is_empty() {
        (0..rows.len())
            .map(|i| (0..rows.len()).map(|j| Rational::from(i64::from(i == j))).collect())
            .collect()
    } else {
        left_kernel(&rows)
    };
    let ratios = kernel
        .iter()
        .map(|l| {
            let mut g = reduced[0].quotient.scale(&l[0]);
            for (li, r) in l.iter().zip(&reduced).skip(1) {
                g = g.add(&r.quotient.scale(li)).expect("common weight");
            }
            proportionality(&g.truncate([n, n]), chi68).map(|c| c.to_string())
        })
        .collect();
    ProbeFamily {
        label: label.to_string(),
        members: members.into_iter().map(|(m, _)| m).collect(),
        holomorphic_dim: kernel.len(),
        ratios,
    }
}

/// Three families of degree-11, order-6 covariants: `D f`; the products of
/// `f` with the degree-10 invariants other than `D` (`A^5, A^3 B, A B^2,
/// A^2 C, B C, C10,0`); and five transvectants of catalog covariants. Each
/// family contributing exactly a one-dimensional holomorphic image
/// proportional to `chi_{6,8}` counts as an independent construction.
/// Evidence at truncation `n`, consistent with a one-dimensional cusp space.
pub fn weight_6_8_probe(n: u32) -> Result<ProbeReport, RingError> {
    let seeds = n + 1;
    let chi68 = named_form("chi6_8", n)?.expansion;
    let chi10 = chi_10(seeds)?;
    let chi10 = chi10.coord(0);
    let raw = |c: &Covariant| nu_raw(c, seeds);
    let f = raw(&resolve("f")?)?;
    let inv = |name: &str| -> Result<FourierExpansion<Rational>, RingError> { Ok(raw(&resolve(name)?)?) };
    let (a, b, c) = (inv("A")?, inv("B")?, inv("C")?);
    let c10 = inv("C10,0")?;
    let d = inv("D")?;

    let discriminant = vec![("D*f".to_string(), d.mul(&f))];
    let products = vec![
        ("A^5*f".to_string(), a.pow(5).mul(&f)),
        ("A^3*B*f".to_string(), a.pow(3).mul(&b).mul(&f)),
        ("A*B^2*f".to_string(), a.mul(&b.pow(2)).mul(&f)),
        ("A^2*C*f".to_string(), a.pow(2).mul(&c).mul(&f)),
        ("B*C*f".to_string(), b.mul(&c).mul(&f)),
        ("C10,0*f".to_string(), c10.mul(&f)),
    ];
    let g = |name: &str| resolve(name);
    let pairs = [("C9,4", "C2,4", 1), ("C9,4", "C2,8", 3), ("C8,2", "C3,6", 1), ("C7,4", "C4,4", 1), ("C5,4", "C6,6a", 2)];
    let mut transvectants = Vec::new();
    for (x, y, k) in pairs {
        let t = transvectant(&g(x)?, &g(y)?, k)?;
        transvectants.push((format!("({x}, {y})_{k}"), raw(&t)?));
    }

    let families = vec![
        family("discriminant", discriminant, chi10, &chi68, n),
        family("degree-10 invariants other than D", products, chi10, &chi68, n),
        family("transvectants", transvectants, chi10, &chi68, n),
    ];
    let independent_constructions =
        families.iter().filter(|f| f.holomorphic_dim == 1 && f.all_proportional()).count();
    let consistent = families.iter().all(|f| f.all_proportional());
    Ok(ProbeReport {
        truncation: n,
        families,
        independent_constructions,
        status: Status::of(consistent && independent_constructions >= 2),
    })
}
