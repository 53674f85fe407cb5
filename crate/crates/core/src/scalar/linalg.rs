//! Exact linear algebra over Q(q).
//!
//! Rank is computed by fraction-free (Bareiss) elimination on a cleared
//! Laurent-polynomial matrix, so intermediate entries stay polynomial.
//! `solve_linear` handles the small square-ish systems of the antipode
//! derivation with plain Gauss-Jordan over the field.

use super::{LaurentPoly, RatFunc, Rational};
use crate::{Error, Result};

/// Clear denominators row by row and strip rational content; row scaling by
/// nonzero field elements does not change the rank.
fn cleared_rows(m: &[Vec<RatFunc>]) -> Vec<Vec<LaurentPoly>> {
    m.iter()
        .map(|row| {
            let mut lcm = LaurentPoly::one();
            for e in row {
                if !e.is_laurent() {
                    let g = lcm.gcd(e.denominator());
                    lcm = lcm.div_exact(&g);
                    lcm = &lcm * e.denominator();
                }
            }
            row.iter()
                .map(|e| {
                    let f = lcm.div_exact(e.denominator());
                    e.numerator() * &f
                })
                .collect()
        })
        .collect()
}

/// Rank of a rectangular matrix over the field Q(q).
pub fn rank_over_field(m: &[Vec<RatFunc>]) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    assert!(
        m.iter().all(|r| r.len() == ncols),
        "ragged matrix passed to rank_over_field"
    );
    let mut rows = cleared_rows(m);
    let mut prev = LaurentPoly::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        // Pick the sparsest available pivot to slow coefficient growth.
        let pivot = (rank..nrows)
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r][col].num_terms());
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let piv = rows[rank][col].clone();
        for r in rank + 1..nrows {
            let factor = rows[r][col].clone();
            for c in col..ncols {
                let t = &(&piv * &rows[r][c]) - &(&factor * &rows[rank][c]);
                rows[r][c] = t.div_exact(&prev);
            }
        }
        prev = piv;
        rank += 1;
    }
    rank
}

/// Solve M x = b over Q(q). Returns `None` when the system is inconsistent;
/// for underdetermined systems the free variables are set to zero.
pub fn solve_linear(m: &[Vec<RatFunc>], b: &[RatFunc]) -> Result<Option<Vec<RatFunc>>> {
    let nrows = m.len();
    if nrows != b.len() {
        return Err(Error::Usage(format!(
            "solve_linear: {} rows but {} right-hand sides",
            nrows,
            b.len()
        )));
    }
    let ncols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != ncols) {
        return Err(Error::Usage("solve_linear: ragged matrix".into()));
    }
    let mut a: Vec<Vec<RatFunc>> = m.to_vec();
    let mut rhs: Vec<RatFunc> = b.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        rhs.swap(row, p);
        let inv = a[row][col].recip();
        for c in col..ncols {
            a[row][c] = &a[row][c] * &inv;
        }
        rhs[row] = &rhs[row] * &inv;
        for r in 0..nrows {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..ncols {
                let t = &a[r][c] - &(&f * &a[row][c]);
                a[r][c] = t;
            }
            rhs[r] = &rhs[r] - &(&f * &rhs[row]);
        }
        pivots.push((row, col));
        row += 1;
        if row == nrows {
            break;
        }
    }
    for r in row..nrows {
        if !rhs[r].is_zero() {
            return Ok(None);
        }
    }
    let mut x = vec![RatFunc::zero(); ncols];
    for (r, c) in pivots {
        x[c] = rhs[r].clone();
    }
    Ok(Some(x))
}

/// Rank of an integer matrix over Q, used to compare q = 1 specializations.
pub fn rank_rational(m: &[Vec<Rational>]) -> usize {
    let rf: Vec<Vec<RatFunc>> = m
        .iter()
        .map(|r| r.iter().map(|c| RatFunc::from_rational(c.clone())).collect())
        .collect();
    rank_over_field(&rf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RatFunc {
        RatFunc::q_pow(1)
    }

    #[test]
    fn rank_examples() {
        // Second row is q times the first.
        let m = vec![
            vec![q(), RatFunc::one()],
            vec![RatFunc::q_pow(2), q()],
        ];
        assert_eq!(rank_over_field(&m), 1);
        // det = 1 - q^2, nonzero in Q(q) even though it vanishes at q = 1.
        let m = vec![vec![RatFunc::one(), q()], vec![q(), RatFunc::one()]];
        assert_eq!(rank_over_field(&m), 2);
        assert_eq!(rank_over_field(&[vec![RatFunc::zero()]]), 0);
    }

    #[test]
    fn rank_can_exceed_its_value_at_one() {
        let m = vec![vec![RatFunc::one(), q()], vec![q(), RatFunc::one()]];
        let spec: Vec<Vec<Rational>> = m
            .iter()
            .map(|r| r.iter().map(RatFunc::eval_at_one).collect())
            .collect();
        assert_eq!(rank_rational(&spec), 1);
        assert!(rank_over_field(&m) >= rank_rational(&spec));
    }

    #[test]
    fn solve_examples() {
        let x = solve_linear(&[vec![q()]], &[RatFunc::one()]).unwrap().unwrap();
        assert_eq!(x, vec![RatFunc::q_pow(-1)]);

        let none = solve_linear(
            &[
                vec![RatFunc::one(), RatFunc::one()],
                vec![RatFunc::one(), RatFunc::one()],
            ],
            &[RatFunc::one(), RatFunc::from_int(2)],
        )
        .unwrap();
        assert!(none.is_none());

        let id3: Vec<Vec<RatFunc>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() })
                    .collect()
            })
            .collect();
        let b = vec![q(), RatFunc::from_int(5), RatFunc::q_pow(-2)];
        assert_eq!(solve_linear(&id3, &b).unwrap().unwrap(), b);
    }

    #[test]
    fn solve_underdetermined_zeroes_free_variables() {
        // x + y = q has the solution (q, 0) with the free variable zeroed.
        let sol = solve_linear(&[vec![RatFunc::one(), RatFunc::one()]], &[q()])
            .unwrap()
            .unwrap();
        assert_eq!(sol, vec![q(), RatFunc::zero()]);
    }

    #[test]
    fn solve_dimension_mismatch_is_usage_error() {
        let err = solve_linear(&[vec![q()]], &[]).unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }
}
