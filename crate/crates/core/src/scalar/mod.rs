//! Exact scalar arithmetic: Q, Q[q, q^-1], and the field Q(q), plus exact
//! linear algebra over Q(q).
//!
//! Everything here is immutable after construction and pure; no floating
//! point appears anywhere in the crate.

mod laurent;
mod linalg;
mod ratfunc;

pub use laurent::LaurentPoly;
pub use linalg::{rank_over_field, rank_rational, solve_linear};
pub use ratfunc::RatFunc;

use num::BigInt;

use crate::{Error, Result};

/// Arbitrary-precision rational numbers; always stored reduced with a
/// positive denominator.
pub type Rational = num::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The balanced q-integer [n]_q = q^{n-1} + q^{n-3} + ... + q^{-n+1}.
pub fn q_integer(n: i64) -> Result<LaurentPoly> {
    if n <= 0 {
        return Err(Error::Domain(format!("q_integer: n must be positive, got {n}")));
    }
    let mut p = LaurentPoly::zero();
    let mut e = (n - 1) as i32;
    for _ in 0..n {
        p += &LaurentPoly::q_pow(e);
        e -= 2;
    }
    Ok(p)
}

/// Substitution q := 1 on a Laurent polynomial.
pub fn eval_at_one(p: &LaurentPoly) -> Rational {
    p.eval_at_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_integer_values() {
        assert_eq!(q_integer(1).unwrap(), LaurentPoly::one());
        assert_eq!(
            q_integer(2).unwrap(),
            &LaurentPoly::q() + &LaurentPoly::q_pow(-1)
        );
        let three = &(&LaurentPoly::q_pow(2) + &LaurentPoly::one()) + &LaurentPoly::q_pow(-2);
        assert_eq!(q_integer(3).unwrap(), three);
        assert!(q_integer(0).is_err());
        assert!(q_integer(-4).is_err());
    }

    #[test]
    fn eval_at_one_examples() {
        assert_eq!(eval_at_one(&q_integer(2).unwrap()), rat(2));
        let m = &LaurentPoly::q() - &LaurentPoly::q_pow(-1);
        assert_eq!(eval_at_one(&m), rat(0));
        let p = &LaurentPoly::one() - &LaurentPoly::q_pow(2);
        assert_eq!(eval_at_one(&p), rat(0));
    }

    #[test]
    fn q_integer_counts_at_one() {
        for n in 1..=40 {
            assert_eq!(eval_at_one(&q_integer(n).unwrap()), rat(n));
        }
    }
}
