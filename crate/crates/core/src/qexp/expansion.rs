//! Vector-valued Fourier expansions of weight `Sym^j x det^k`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::linalg::rank;
use crate::arith::{Coeff, LaurentPoly, Order, Rational};

use super::elliptic::EllipticExpansion;
use super::series::{Cell, Series2, EXACT};
use super::QexpError;

/// Weight `(j, k)`: the representation `Sym^j x det^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub j: u32,
    pub k: i64,
}

impl Weight {
    pub fn new(j: u32, k: i64) -> Self {
        Weight { j, k }
    }

    pub fn scalar(k: i64) -> Self {
        Weight { j: 0, k }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.j, self.k)
    }
}

/// A truncated expansion `sum_n a(n) q^n` with `a(n)` in `Sym^j`; coordinate `i`
/// is the coefficient of `X1^(j-i) X2^i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FourierExpansion<C: Coeff = Rational> {
    weight: Weight,
    character: bool,
    coords: Vec<Series2<C>>,
}

impl<C: Coeff> FourierExpansion<C> {
    pub fn new(weight: Weight, character: bool, coords: Vec<Series2<C>>) -> Result<Self, QexpError> {
        if coords.len() != weight.j as usize + 1 {
            return Err(QexpError::CoordinateCount { expected: weight.j as usize + 1, found: coords.len() });
        }
        Ok(FourierExpansion { weight, character, coords })
    }

    pub fn scalar(k: i64, character: bool, series: Series2<C>) -> Self {
        FourierExpansion { weight: Weight::scalar(k), character, coords: vec![series] }
    }

    /// The constant 1 of weight `(0, 0)`.
    pub fn one(ctx: &C::Ctx) -> Self {
        Self::scalar(0, false, Series2::constant(C::one_in(ctx)))
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn character(&self) -> bool {
        self.character
    }

    pub fn coords(&self) -> &[Series2<C>] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Series2<C> {
        &self.coords[i]
    }

    pub fn ctx(&self) -> &C::Ctx {
        self.coords[0].ctx()
    }

    /// Box precision: every coordinate is known for `n1 <= prec[0]`, `n2 <= prec[1]`.
    pub fn prec(&self) -> [u32; 2] {
        self.coords.iter().fold([EXACT, EXACT], |acc, s| [acc[0].min(s.prec()[0]), acc[1].min(s.prec()[1])])
    }

    /// The truncation order `N`: all `(n1, n2)` with `n1, n2 <= N` are known.
    pub fn truncation(&self) -> u32 {
        let p = self.prec();
        p[0].min(p[1])
    }

    /// Certified valuation common to all coordinates.
    pub fn valuation(&self) -> [u32; 2] {
        self.coords.iter().fold([EXACT, EXACT], |acc, s| [acc[0].min(s.valuation()[0]), acc[1].min(s.valuation()[1])])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|s| s.is_zero())
    }

    /// Coefficient vector at `(n1, n2)`.
    pub fn coefficient(&self, n: Cell) -> Vec<LaurentPoly<C>> {
        self.coords.iter().map(|s| s.cell(n)).collect()
    }

    pub fn truncate(&self, prec: [u32; 2]) -> Self {
        self.map_coords(|s| s.truncate(prec))
    }

    fn map_coords(&self, f: impl Fn(&Series2<C>) -> Series2<C>) -> Self {
        FourierExpansion { weight: self.weight, character: self.character, coords: self.coords.iter().map(f).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, QexpError> {
        if self.weight != rhs.weight || self.character != rhs.character {
            return Err(QexpError::WeightMismatch { left: self.weight, right: rhs.weight });
        }
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.add(b)).collect();
        Ok(FourierExpansion { weight: self.weight, character: self.character, coords })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, QexpError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coords(|s| s.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_coords(|s| s.scale(c))
    }

    /// Product through `Sym^a x Sym^b -> Sym^(a+b)`: convolution of coordinates.
    pub fn mul(&self, rhs: &Self) -> Self {
        let j = self.weight.j + rhs.weight.j;
        let mut coords: Vec<Option<Series2<C>>> = vec![None; j as usize + 1];
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
        FourierExpansion {
            weight: Weight::new(j, self.weight.k + rhs.weight.k),
            character: self.character ^ rhs.character,
            coords: coords.into_iter().map(|c| c.expect("every coordinate receives a product")).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FourierExpansion::one(self.ctx());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division of every coordinate by the scalar form `d` of weight `k_d`.
    pub fn exact_div_scalar(&self, d: &Series2<C>, k_d: i64, d_character: bool) -> Result<Self, QexpError> {
        let coords = self.coords.iter().map(|s| s.exact_div(d)).collect::<Result<Vec<_>, _>>()?;
        let out = FourierExpansion {
            weight: Weight::new(self.weight.j, self.weight.k - k_d),
            character: self.character ^ d_character,
            coords,
        };
        if !out.character {
            if let Some((cell, e)) = out.support_violation() {
                return Err(QexpError::SupportViolation { cell, exponent: e });
            }
        }
        Ok(out)
    }

    /// First cell (over all coordinates) whose `r`-exponents violate `e^2 <= 4 n1 n2`.
    pub fn support_violation(&self) -> Option<(Cell, i64)> {
        self.coords.iter().find_map(|s| s.support_violation())
    }

    /// Classical Siegel operator on coordinate 0: `n -> a(n, 0)` at `r^0`.
    /// The remaining coordinates of the `n2 = 0` slice must vanish.
    pub fn siegel_phi(&self) -> Result<EllipticExpansion<C>, QexpError> {
        if self.character {
            return Err(QexpError::CharacterForm);
        }
        let n_max = self.prec()[0];
        if n_max == EXACT {
            return Err(QexpError::InsufficientPrecision);
        }
        for (i, s) in self.coords.iter().enumerate().skip(1) {
            if let Some((n, _)) = s.cells().find(|(n, _)| n.1 == 0) {
                return Err(QexpError::BoundaryNonzero { coordinate: i, cell: *n });
            }
        }
        let s0 = &self.coords[0];
        let coeffs = (0..=n_max).map(|n| s0.cell((n, 0)).coeff(0)).collect();
        Ok(EllipticExpansion::new(self.weight.k + self.weight.j as i64, coeffs))
    }

    /// `r = 1` in every cell: per coordinate, a map `(n1, n2) -> value`.
    pub fn restrict_to_a11(&self) -> Vec<BTreeMap<Cell, C>> {
        self.coords
            .iter()
            .map(|s| {
                s.cells()
                    .map(|(n, c)| (*n, c.eval_at_one()))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect()
    }

    /// Vanishing order at `r = 1`, per coordinate and overall, over the stored cells.
    /// A finite value is certified only as an upper bound on the true order.
    pub fn a11_order(&self) -> (Vec<Order>, Order) {
        let per: Vec<Order> = self.coords.iter().map(|s| s.order_at_one()).collect();
        let overall = per.iter().copied().min().unwrap_or(Order::Infinite);
        (per, overall)
    }

    /// Coefficient `(n1, n2)` with coordinates reversed equals `(-1)^k`
    /// times coefficient `(n2, n1)`.
    pub fn swap_symmetry_check(&self) -> bool {
        let sign = C::from_i64(if self.weight.k % 2 == 0 { 1 } else { -1 }, self.ctx());
        let j = self.weight.j as usize;
        (0..=j).all(|i| {
            let lhs = self.coords[j - i].swap();
            let rhs = self.coords[i].scale(&sign);
            same_on_common_box(&lhs, &rhs)
        })
    }

    /// Coordinate `i` with `r -> 1/r` equals `(-1)^(i + k)` times coordinate `i`.
    pub fn r_inversion_check(&self) -> bool {
        self.coords.iter().enumerate().all(|(i, s)| {
            let sign = C::from_i64(if (i as i64 + self.weight.k) % 2 == 0 { 1 } else { -1 }, self.ctx());
            s.invert_r() == s.scale(&sign)
        })
    }

    pub fn map_coeffs<D: Coeff>(&self, ctx: &D::Ctx, f: impl Fn(&C) -> D) -> FourierExpansion<D> {
        FourierExpansion {
            weight: self.weight,
            character: self.character,
            coords: self.coords.iter().map(|s| s.map_coeffs(ctx, &f)).collect(),
        }
    }

    pub(crate) fn with_weight(mut self, weight: Weight, character: bool) -> Self {
        assert_eq!(weight.j, self.weight.j);
        self.weight = weight;
        self.character = character;
        self
    }
}

fn same_on_common_box<C: Coeff>(a: &Series2<C>, b: &Series2<C>) -> bool {
    let p = [a.prec()[0].min(b.prec()[0]), a.prec()[1].min(b.prec()[1])];
    a.truncate(p).cells().eq(b.truncate(p).cells())
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    n: [u32; 2],
    vec: Vec<LaurentPoly<Rational>>,
}

#[derive(Serialize, Deserialize)]
struct ExpansionJson {
    weight: [i64; 2],
    character: bool,
    truncation: u32,
    valuation: [u32; 2],
    coeffs: Vec<CoeffJson>,
}

impl FourierExpansion<Rational> {
    /// Cells up to the truncation order, in graded order.
    fn displayed_cells(&self, upto: u32) -> Vec<Cell> {
        let n = upto.min(self.truncation());
        let mut cells: BTreeSet<Cell> = BTreeSet::new();
        for s in &self.coords {
            cells.extend(s.cells().map(|(c, _)| *c).filter(|c| c.0 <= n && c.1 <= n));
        }
        let mut out: Vec<Cell> = cells.into_iter().collect();
        out.sort_by_key(|&(a, b)| (a + b, a));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs = self
            .displayed_cells(EXACT)
            .into_iter()
            .map(|n| CoeffJson { n: [n.0, n.1], vec: self.coefficient(n) })
            .collect();
        let doc = ExpansionJson {
            weight: [self.weight.j as i64, self.weight.k],
            character: self.character,
            truncation: self.truncation(),
            valuation: self.valuation(),
            coeffs,
        };
        serde_json::to_value(doc).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, QexpError> {
        let doc: ExpansionJson =
            serde_json::from_value(value.clone()).map_err(|e| QexpError::Format(e.to_string()))?;
        let j = u32::try_from(doc.weight[0]).map_err(|_| QexpError::Format("negative j".into()))?;
        let n = doc.truncation;
        let mut per: Vec<Vec<(Cell, LaurentPoly<Rational>)>> = vec![Vec::new(); j as usize + 1];
        for c in doc.coeffs {
            if c.vec.len() != j as usize + 1 {
                return Err(QexpError::Format("coefficient vector length".into()));
            }
            for (i, p) in c.vec.into_iter().enumerate() {
                per[i].push(((c.n[0], c.n[1]), p));
            }
        }
        let coords = per
            .into_iter()
            .map(|cells| Series2::from_cells(&(), [n, n], doc.valuation, cells))
            .collect::<Result<Vec<_>, _>>()?;
        FourierExpansion::new(Weight::new(j, doc.weight[1]), doc.character, coords)
    }

    /// Text in the style of printed expansions: one block per `q1^n1 q2^n2`.
    pub fn render_text(&self, upto: u32) -> String {
        let mut out = format!(
            "weight ({}, {}){}, truncation {}\n",
            self.weight.j,
            self.weight.k,
            if self.character { " with character" } else { "" },
            self.truncation().min(upto)
        );
        for n in self.displayed_cells(upto) {
            out.push_str(&monomial_label(n));
            out.push_str(":\n");
            for p in self.coefficient(n) {
                out.push_str("  ");
                out.push_str(&render_laurent(&p));
                out.push('\n');
            }
        }
        out
    }

    /// Rank of the span of `forms`, over all coefficients in their common box.
    pub fn rank_of_span(forms: &[FourierExpansion<Rational>]) -> Result<usize, QexpError> {
        let Some(first) = forms.first() else {
            return Ok(0);
        };
        for f in forms {
            if f.weight != first.weight || f.character != first.character {
                return Err(QexpError::WeightMismatch { left: first.weight, right: f.weight });
            }
        }
        Ok(rank(&coefficient_rows(forms)))
    }
}

/// One row per form: all coefficients `(coordinate, n1, n2, e)` in the common box.
pub fn coefficient_rows(forms: &[FourierExpansion<Rational>]) -> Vec<Vec<Rational>> {
    let p = forms.iter().fold([EXACT, EXACT], |acc, f| [acc[0].min(f.prec()[0]), acc[1].min(f.prec()[1])]);
    let mut keys: BTreeSet<(usize, Cell, i64)> = BTreeSet::new();
    for f in forms {
        for (i, s) in f.coords.iter().enumerate() {
            for (n, c) in s.cells() {
                if n.0 <= p[0] && n.1 <= p[1] {
                    keys.extend(c.terms().iter().map(|(e, _)| (i, *n, *e)));
                }
            }
        }
    }
    forms
        .iter()
        .map(|f| keys.iter().map(|(i, n, e)| f.coords[*i].cell_ref(*n).map_or_else(Rational::zero, |c| c.coeff(*e))).collect())
        .collect()
}

fn monomial_label(n: Cell) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let parts: Vec<String> = [part("q1", n.0), part("q2", n.1)].into_iter().filter(|s| !s.is_empty()).collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// `c(p)` with a primitive `p`, omitting a unit content.
pub fn render_laurent(p: &LaurentPoly<Rational>) -> String {
    if p.len() <= 1 {
        return p.render();
    }
    let (content, prim) = p.content_split();
    if content.is_one() {
        prim.render()
    } else if content == Rational::from(-1) {
        format!("-({})", prim.render())
    } else {
        format!("{content}({})", prim.render())
    }
}
