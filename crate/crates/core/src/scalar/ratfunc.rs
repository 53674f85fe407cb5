//! The field Q(q) of rational functions in q, as reduced fractions of
//! Laurent polynomials.
//!
//! The representative is canonical: the denominator is an honest polynomial
//! with nonzero constant term and leading coefficient 1, and shares no
//! non-unit factor with the numerator. Equality is therefore structural,
//! which keeps coefficient comparisons in the rewriting kernel cheap.

use num::{One, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use super::{LaurentPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in Q(q)");
        let mut r = RatFunc { num, den };
        r.reduce();
        r
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        RatFunc {
            num,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_laurent(LaurentPoly::from_rational(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_int(n))
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn q_pow(exp: i32) -> Self {
        Self::from_laurent(LaurentPoly::q_pow(exp))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    /// True iff the denominator is 1, i.e. the value lies in Q[q, q^-1].
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        // Pull the q-power unit of the denominator into the numerator.
        let dlo = self.den.min_exp().unwrap();
        if dlo != 0 {
            self.den = self.den.shift(-dlo);
            self.num = self.num.shift(-dlo);
        }
        if !self.den.is_monomial() {
            let g = self.num.gcd(&self.den);
            if g.max_exp() != Some(0) {
                self.num = self.num.div_exact(&g);
                self.den = self.den.div_exact(&g);
            }
        }
        // Make the denominator monic (and absorb a bare q^0 scalar entirely).
        let lead = self.den.coeff(self.den.max_exp().unwrap());
        if !lead.is_one() {
            let inv = lead.recip();
            self.den = self.den.scale(&inv);
            self.num = self.num.scale(&inv);
        }
        if self.den.is_monomial() && self.den.min_exp() != Some(0) {
            let k = self.den.min_exp().unwrap();
            self.den = LaurentPoly::one();
            self.num = self.num.shift(-k);
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in Q(q)");
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Substitute q := 1. Panics if the denominator vanishes there.
    pub fn eval_at_one(&self) -> Rational {
        let d = self.den.eval_at_one();
        assert!(!d.is_zero(), "denominator vanishes at q = 1");
        self.num.eval_at_one() / d
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: &self.num + &rhs.num,
                den: LaurentPoly::one(),
            };
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: &self.num - &rhs.num,
                den: LaurentPoly::one(),
            };
        }
        RatFunc::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num += &rhs.num;
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        *self = &*self - rhs;
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: &self.num * &rhs.num,
                den: LaurentPoly::one(),
            };
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero in Q(q)");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q_integer, rat};

    fn q() -> RatFunc {
        RatFunc::q_pow(1)
    }

    #[test]
    fn canonical_reduction() {
        // (q^2 + 1)/q normalizes to the Laurent polynomial q + q^-1.
        let r = RatFunc::new(
            &LaurentPoly::q_pow(2) + &LaurentPoly::one(),
            LaurentPoly::q(),
        );
        assert!(r.is_laurent());
        assert_eq!(r.numerator(), &q_integer(2).unwrap());

        // 1/[2]_q keeps a genuine denominator with constant term and monic lead.
        let r = RatFunc::one().div(&RatFunc::from_laurent(q_integer(2).unwrap()));
        assert_eq!(r.denominator(), &(&LaurentPoly::q_pow(2) + &LaurentPoly::one()));
        assert_eq!(r.numerator(), &LaurentPoly::q());
    }

    #[test]
    fn field_identities() {
        let a = RatFunc::new(
            &LaurentPoly::q_pow(3) - &LaurentPoly::from_int(2),
            &LaurentPoly::q_pow(2) + &LaurentPoly::one(),
        );
        let b = &q() - &RatFunc::q_pow(-1);
        assert!((&a - &a).is_zero());
        assert!((&a * &a.recip()).is_one());
        let s = &(&a + &b) * &(&a - &b);
        let d = &(&a * &a) - &(&b * &b);
        assert_eq!(s, d);
    }

    #[test]
    fn eval_at_one() {
        let r = RatFunc::new(
            &LaurentPoly::q_pow(2) - &LaurentPoly::one(),
            &LaurentPoly::q() + &LaurentPoly::one(),
        );
        assert_eq!(r.eval_at_one(), rat(0));
    }

    #[test]
    fn display_fraction() {
        let r = RatFunc::one().div(&RatFunc::from_laurent(q_integer(2).unwrap()));
        assert_eq!(r.to_string(), "(q)/(q^2 + 1)");
    }
}
