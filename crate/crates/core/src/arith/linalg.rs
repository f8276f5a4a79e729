//! Exact Gaussian elimination over a field.

use super::Coeff;

/// Reduce `rows` to row echelon form in place and return the rank.
/// `C` must be a field: every nonzero element divides every other.
pub fn row_echelon<C: Coeff>(rows: &mut Vec<Vec<C>>) -> usize {
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for i in 0..rows.len() {
            if i == rank || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].exact_div(&pivot).expect("coefficient ring is a field");
            let (pivot_row, row) = if i < rank {
                let (lo, hi) = rows.split_at_mut(rank);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = rows.split_at_mut(i);
                (&lo[rank], &mut hi[0])
            };
            for c in col..ncols {
                if !pivot_row[c].is_zero() {
                    row[c] = row[c].minus(&factor.times(&pivot_row[c]));
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn rank<C: Coeff>(rows: &[Vec<C>]) -> usize {
    let mut rows = rows.to_vec();
    row_echelon(&mut rows)
}

/// Solve `a x = b`. Returns `None` if the system is inconsistent or
/// the solution is not unique.
pub fn solve_unique<C: Coeff>(a: &[Vec<C>], b: &[C]) -> Option<Vec<C>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<C>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let r = row_echelon(&mut aug);
    if r != n {
        return None;
    }
    let mut x = Vec::with_capacity(n);
    for (i, row) in aug.iter().enumerate() {
        if i < n {
            if row[i].is_zero() {
                return None;
            }
            x.push(row[n].exact_div(&row[i])?);
        } else if !row[n].is_zero() {
            return None;
        }
    }
    Some(x)
}

/// A basis of `{ l : sum_i l_i rows[i] = 0 }`.
pub fn left_kernel<C: Coeff>(rows: &[Vec<C>]) -> Vec<Vec<C>> {
    let k = rows.len();
    let Some(ctx) = rows.iter().flatten().next().map(|c| c.ctx()) else {
        return Vec::new();
    };
    let m = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    if m == 0 {
        return (0..k).map(|i| (0..k).map(|j| if i == j { C::one_in(&ctx) } else { C::zero_in(&ctx) }).collect()).collect();
    }
    let mut t: Vec<Vec<C>> =
        (0..m).map(|c| rows.iter().map(|r| r.get(c).cloned().unwrap_or_else(|| C::zero_in(&ctx))).collect()).collect();
    let rank = row_echelon(&mut t);
    let pivots: Vec<usize> = t[..rank].iter().map(|r| r.iter().position(|c| !c.is_zero()).expect("pivot row")).collect();
    (0..k)
        .filter(|f| !pivots.contains(f))
        .map(|f| {
            let mut v = vec![C::zero_in(&ctx); k];
            v[f] = C::one_in(&ctx);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = t[r][f].exact_div(&t[r][pc]).expect("field").negated();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rational};

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn rank_over_rationals() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank::<Rational>(&[]), 0);
    }

    #[test]
    fn rank_over_prime_field() {
        let f = PrimeField::new(3).unwrap();
        let rows = vec![vec![f.elem(1), f.elem(1)], vec![f.elem(2), f.elem(5)]];
        assert_eq!(rank(&rows), 1);
    }

    #[test]
    fn unique_solutions() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)], vec![q(2), q(0)]];
        assert_eq!(solve_unique(&a, &[q(3), q(1), q(4)]), Some(vec![q(2), q(1)]));
        assert_eq!(solve_unique(&a, &[q(3), q(1), q(5)]), None);
        assert_eq!(solve_unique(&[vec![q(1), q(1)]], &[q(1)]), None);
    }

    #[test]
    fn kernel_of_dependent_rows() {
        let qs = |v: &[i64]| v.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>();
        let rows = vec![qs(&[1, 2, 3]), qs(&[2, 4, 6]), qs(&[0, 1, 1])];
        let ker = left_kernel(&rows);
        assert_eq!(ker, vec![qs(&[-2, 1, 0])]);
        assert!(left_kernel(&[qs(&[1, 0]), qs(&[0, 1])]).is_empty());
    }
}
