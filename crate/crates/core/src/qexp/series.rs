//! Truncated power series in `q1, q2` with Laurent polynomial coefficients in `r`.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{Coeff, LaurentPoly, Order};
use crate::covariants::EvalTarget;

use super::QexpError;

/// Precision value standing for "known exactly in this direction".
pub const EXACT: u32 = u32::MAX;

pub type Cell = (u32, u32);

/// A series `sum_{n1, n2} c(n1, n2; r) q1^n1 q2^n2`.
///
/// Cells are known for `n1 <= prec[0]` and `n2 <= prec[1]`. The valuation
/// is a certified lower bound: every cell with `n1 < val[0]` or
/// `n2 < val[1]` vanishes in the untruncated series.
#[derive(Clone, PartialEq, Eq)]
pub struct Series2<C: Coeff> {
    ctx: C::Ctx,
    prec: [u32; 2],
    val: [u32; 2],
    cells: BTreeMap<Cell, LaurentPoly<C>>,
}

fn in_box(n: Cell, prec: [u32; 2]) -> bool {
    n.0 <= prec[0] && n.1 <= prec[1]
}

/// Cells of the box `lo..=hi` in graded order (`n1 + n2`, then `n1`).
pub fn graded_cells(lo: [u32; 2], hi: [u32; 2]) -> Vec<Cell> {
    let mut out = Vec::new();
    if lo[0] > hi[0] || lo[1] > hi[1] {
        return out;
    }
    for n1 in lo[0]..=hi[0] {
        for n2 in lo[1]..=hi[1] {
            out.push((n1, n2));
        }
    }
    out.sort_by_key(|&(a, b)| (a + b, a));
    out
}

impl<C: Coeff> Series2<C> {
    pub fn zero(ctx: &C::Ctx, prec: [u32; 2]) -> Self {
        Series2 { ctx: ctx.clone(), prec, val: [0, 0], cells: BTreeMap::new() }
    }

    /// The constant `c`, known exactly.
    pub fn constant(c: C) -> Self {
        let mut s = Self::zero(&c.ctx(), [EXACT, EXACT]);
        if c.is_zero() {
            s.val = [EXACT, EXACT];
        } else {
            s.cells.insert((0, 0), LaurentPoly::constant(c));
        }
        s
    }

    /// Builds a series from cells; cells beyond `prec` are dropped and
    /// cells violating the declared valuation are an error.
    pub fn from_cells(
        ctx: &C::Ctx,
        prec: [u32; 2],
        val: [u32; 2],
        cells: impl IntoIterator<Item = (Cell, LaurentPoly<C>)>,
    ) -> Result<Self, QexpError> {
        let mut s = Series2 { ctx: ctx.clone(), prec, val, cells: BTreeMap::new() };
        for (n, c) in cells {
            if c.is_zero() || !in_box(n, prec) {
                continue;
            }
            if n.0 < val[0] || n.1 < val[1] {
                return Err(QexpError::ValuationViolation { cell: n });
            }
            match s.cells.get_mut(&n) {
                Some(acc) => {
                    *acc = acc.add(&c);
                    if acc.is_zero() {
                        s.cells.remove(&n);
                    }
                }
                None => {
                    s.cells.insert(n, c);
                }
            }
        }
        Ok(s)
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn prec(&self) -> [u32; 2] {
        self.prec
    }

    pub fn valuation(&self) -> [u32; 2] {
        self.val
    }

    pub fn cell(&self, n: Cell) -> LaurentPoly<C> {
        self.cells.get(&n).cloned().unwrap_or_else(|| LaurentPoly::zero(&self.ctx))
    }

    pub fn cell_ref(&self, n: Cell) -> Option<&LaurentPoly<C>> {
        self.cells.get(&n)
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Cell, &LaurentPoly<C>)> {
        self.cells.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    /// Drop everything beyond `prec`.
    pub fn truncate(&self, prec: [u32; 2]) -> Self {
        let prec = [prec[0].min(self.prec[0]), prec[1].min(self.prec[1])];
        Series2 {
            ctx: self.ctx.clone(),
            prec,
            val: self.val,
            cells: self.cells.iter().filter(|(n, _)| in_box(**n, prec)).map(|(n, c)| (*n, c.clone())).collect(),
        }
    }

    /// Replace the certified valuation by a larger one, checking the stored cells.
    pub fn with_valuation(mut self, val: [u32; 2]) -> Result<Self, QexpError> {
        if let Some(n) = self.cells.keys().find(|n| n.0 < val[0] || n.1 < val[1]) {
            return Err(QexpError::ValuationViolation { cell: *n });
        }
        self.val = [val[0].max(self.val[0]), val[1].max(self.val[1])];
        Ok(self)
    }

    fn check(&self, rhs: &Self) {
        assert!(self.ctx == rhs.ctx, "coefficient domain mismatch in series arithmetic");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let prec = [self.prec[0].min(rhs.prec[0]), self.prec[1].min(rhs.prec[1])];
        let val = [self.val[0].min(rhs.val[0]), self.val[1].min(rhs.val[1])];
        let mut cells: BTreeMap<Cell, LaurentPoly<C>> =
            self.cells.iter().filter(|(n, _)| in_box(**n, prec)).map(|(n, c)| (*n, c.clone())).collect();
        for (n, c) in rhs.cells.iter().filter(|(n, _)| in_box(**n, prec)) {
            match cells.get_mut(n) {
                Some(acc) => {
                    *acc = acc.add(c);
                    if acc.is_zero() {
                        cells.remove(n);
                    }
                }
                None => {
                    cells.insert(*n, c.clone());
                }
            }
        }
        Series2 { ctx: self.ctx.clone(), prec, val, cells }
    }

    pub fn neg(&self) -> Self {
        self.map_cells(|c| c.neg())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Series2 { ctx: self.ctx.clone(), prec: self.prec, val: self.val, cells: BTreeMap::new() };
        }
        self.map_cells(|p| p.scale(c))
    }

    fn map_cells(&self, f: impl Fn(&LaurentPoly<C>) -> LaurentPoly<C>) -> Self {
        Series2 {
            ctx: self.ctx.clone(),
            prec: self.prec,
            val: self.val,
            cells: self.cells.iter().map(|(n, c)| (*n, f(c))).filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Product; precision `min(Pa + vb, Pb + va)` in each direction.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let mut prec = [0; 2];
        for i in 0..2 {
            prec[i] = self.prec[i].saturating_add(rhs.val[i]).min(rhs.prec[i].saturating_add(self.val[i]));
        }
        let val = [self.val[0].saturating_add(rhs.val[0]), self.val[1].saturating_add(rhs.val[1])];
        let mut cells: BTreeMap<Cell, LaurentPoly<C>> = BTreeMap::new();
        for (na, ca) in &self.cells {
            for (nb, cb) in &rhs.cells {
                let n = (na.0 + nb.0, na.1 + nb.1);
                if !in_box(n, prec) {
                    continue;
                }
                cells.entry(n).or_insert_with(|| LaurentPoly::zero(&self.ctx)).add_mul_assign(ca, cb);
            }
        }
        cells.retain(|_, c| !c.is_zero());
        Series2 { ctx: self.ctx.clone(), prec, val, cells }
    }

    /// Exact quotient `self / d`, computed cell by cell in graded order with an
    /// exact Laurent division by the leading cell of `d` at each step.
    pub fn exact_div(&self, d: &Self) -> Result<Self, QexpError> {
        self.check(d);
        let s = d.val;
        let lead = d.cells.get(&(s[0], s[1])).cloned().ok_or(QexpError::DivisorLeadingCell)?;
        if let Some(n) = self.cells.keys().find(|n| n.0 < s[0] || n.1 < s[1]) {
            return Err(QexpError::NotDivisible { cell: *n });
        }
        let valq = [self.val[0].saturating_sub(s[0]), self.val[1].saturating_sub(s[1])];
        let mut prec = [0; 2];
        for i in 0..2 {
            if self.prec[i] < s[i] {
                return Err(QexpError::InsufficientPrecision);
            }
            prec[i] = (self.prec[i] - s[i]).min(d.prec[i].saturating_sub(s[i]).saturating_add(valq[i]));
        }
        if prec.contains(&EXACT) {
            return Err(QexpError::InsufficientPrecision);
        }
        let mut q: BTreeMap<Cell, LaurentPoly<C>> = BTreeMap::new();
        for n in graded_cells(valq, prec) {
            let mut num = self.cell((n.0 + s[0], n.1 + s[1]));
            for (t, dt) in &d.cells {
                if *t == (s[0], s[1]) || t.0 > n.0 + s[0] || t.1 > n.1 + s[1] {
                    continue;
                }
                let k = (n.0 + s[0] - t.0, n.1 + s[1] - t.1);
                if let Some(qk) = q.get(&k) {
                    num = num.sub(&qk.mul(dt));
                }
            }
            if num.is_zero() {
                continue;
            }
            let qn = num.exact_div(&lead).map_err(|_| QexpError::NotDivisible { cell: n })?;
            q.insert(n, qn);
        }
        Ok(Series2 { ctx: self.ctx.clone(), prec, val: valq, cells: q })
    }

    /// `(n1, n2) -> (n2, n1)`.
    pub fn swap(&self) -> Self {
        Series2 {
            ctx: self.ctx.clone(),
            prec: [self.prec[1], self.prec[0]],
            val: [self.val[1], self.val[0]],
            cells: self.cells.iter().map(|(n, c)| ((n.1, n.0), c.clone())).collect(),
        }
    }

    /// `r -> 1/r` in every cell.
    pub fn invert_r(&self) -> Self {
        self.map_cells(|c| c.invert_exponent())
    }

    /// Minimum over the stored cells of the vanishing order at `r = 1`.
    pub fn order_at_one(&self) -> Order {
        self.cells.values().map(|c| c.vanishing_order_at_one()).min().unwrap_or(Order::Infinite)
    }

    /// First cell (graded order) whose `r`-support violates `e^2 <= 4 n1 n2`.
    pub fn support_violation(&self) -> Option<(Cell, i64)> {
        let mut keys: Vec<&Cell> = self.cells.keys().collect();
        keys.sort_by_key(|&&(a, b)| (a + b, a));
        for n in keys {
            let bound = 4 * n.0 as i64 * n.1 as i64;
            if let Some((e, _)) = self.cells[n].terms().iter().find(|(e, _)| e * e > bound) {
                return Some((*n, *e));
            }
        }
        None
    }

    pub fn map_coeffs<D: Coeff>(&self, ctx: &D::Ctx, f: impl Fn(&C) -> D) -> Series2<D> {
        Series2 {
            ctx: ctx.clone(),
            prec: self.prec,
            val: self.val,
            cells: self
                .cells
                .iter()
                .map(|(n, c)| (*n, c.map_coeffs(ctx, &f)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

impl<C: Coeff> EvalTarget<C> for Series2<C> {
    fn constant_like(&self, c: &C) -> Self {
        Series2::constant(c.clone())
    }

    fn add(&self, rhs: &Self) -> Self {
        Series2::add(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Series2::mul(self, rhs)
    }
}

impl<C: Coeff> fmt::Debug for Series2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series2(prec {:?}, val {:?}) {{", self.prec, self.val)?;
        for (n, c) in &self.cells {
            write!(f, " {:?}: {};", n, c.render())?;
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly<Rational> {
        LaurentPoly::from_terms(&(), terms.iter().map(|(e, c)| (*e, Rational::from(*c))))
    }

    fn chi10_like() -> Series2<Rational> {
        // (r^-1 - 2 + r) q1 q2 + (r^-2 - 1 ...) stand-in with a unit-free leading cell
        Series2::from_cells(
            &(),
            [3, 3],
            [1, 1],
            vec![
                ((1, 1), lp(&[(-1, 1), (0, -2), (1, 1)])),
                ((1, 2), lp(&[(-2, -2), (-1, 16), (0, -28), (1, 16), (2, -2)])),
                ((2, 1), lp(&[(-2, -2), (-1, 16), (0, -28), (1, 16), (2, -2)])),
                ((2, 2), lp(&[(-3, 1), (-1, 3), (0, 7), (1, 3), (3, 1)])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn product_precision_follows_valuations() {
        let a = chi10_like();
        let p = a.mul(&a);
        assert_eq!(p.prec(), [4, 4]);
        assert_eq!(p.valuation(), [2, 2]);
        assert_eq!(p.cell((2, 2)), lp(&[(-1, 1), (0, -2), (1, 1)]).mul(&lp(&[(-1, 1), (0, -2), (1, 1)])));
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = chi10_like();
        let b = Series2::from_cells(&(), [2, 2], [0, 0], vec![((0, 0), lp(&[(0, 1)])), ((1, 2), lp(&[(-1, 3), (1, 1)]))])
            .unwrap();
        let prod = b.mul(&a);
        let q = prod.exact_div(&a).unwrap();
        assert_eq!(q, b.truncate(q.prec()));
        assert_eq!(q.prec(), [2, 2]);
    }

    #[test]
    fn non_divisible_is_detected() {
        let a = chi10_like();
        let b = Series2::from_cells(&(), [3, 3], [1, 1], vec![((1, 1), lp(&[(-1, -2), (1, 2)]))]).unwrap();
        assert!(matches!(b.exact_div(&a), Err(QexpError::NotDivisible { cell: (0, 0) })));
    }

    #[test]
    fn graded_order() {
        assert_eq!(graded_cells([0, 0], [1, 1]), vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    }
}
