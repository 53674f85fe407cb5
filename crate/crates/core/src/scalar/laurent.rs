//! Laurent polynomials in the formal parameter q over the rationals.
//!
//! `LaurentPoly` is a finitely supported map from integer exponents of q to
//! `Rational` coefficients. The representation is canonical: no stored
//! coefficient is zero, so equality is structural equality.

use num::{BigInt, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use super::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::term(0, Rational::one())
    }

    /// The monomial c * q^exp. Zero coefficients collapse to the zero polynomial.
    pub fn term(exp: i32, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn q() -> Self {
        Self::term(1, Rational::one())
    }

    pub fn q_pow(exp: i32) -> Self {
        Self::term(exp, Rational::one())
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::term(0, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).map_or(false, |c| c.is_one())
    }

    /// True iff the polynomial is a single term c * q^k.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, exp: i32) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i32, &Rational)> {
        self.coeffs.iter()
    }

    fn insert_add(&mut self, exp: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&exp) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.coeffs.remove(&exp);
                }
            }
            None => {
                self.coeffs.insert(exp, c);
            }
        }
    }

    /// Multiply by the monomial q^k.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute q := 1, i.e. the sum of all coefficients.
    pub fn eval_at_one(&self) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.values() {
            acc += c;
        }
        acc
    }

    /// Substitute q := r for a nonzero rational r.
    pub fn eval_at(&self, r: &Rational) -> Rational {
        assert!(!r.is_zero(), "cannot evaluate a Laurent polynomial at q = 0");
        let mut acc = Rational::zero();
        let inv = r.recip();
        for (e, c) in &self.coeffs {
            let base = if *e >= 0 { r.clone() } else { inv.clone() };
            let mut p = Rational::one();
            for _ in 0..e.unsigned_abs() {
                p *= &base;
            }
            acc += c * p;
        }
        acc
    }

    /// Coefficient vector in ascending exponent order together with the lowest
    /// exponent; empty vector for zero.
    fn dense(&self) -> (i32, Vec<Rational>) {
        if self.is_zero() {
            return (0, Vec::new());
        }
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        let mut v = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.coeffs {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(lo: i32, v: Vec<Rational>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (i, c) in v.into_iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(lo + i as i32, c);
            }
        }
        LaurentPoly { coeffs }
    }

    /// Exact division; panics if `self` is not a multiple of `d`.
    /// Division by units (monomials) and by minors in fraction-free
    /// elimination always succeeds.
    pub fn div_exact(&self, d: &LaurentPoly) -> LaurentPoly {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        if d.is_monomial() {
            let (de, dc) = d.coeffs.iter().next().map(|(e, c)| (*e, c.clone())).unwrap();
            let inv = dc.recip();
            return LaurentPoly {
                coeffs: self
                    .coeffs
                    .iter()
                    .map(|(e, c)| (e - de, c * &inv))
                    .collect(),
            };
        }
        let (nlo, mut num) = self.dense();
        let (dlo, den) = d.dense();
        let dd = den.len() - 1;
        assert!(num.len() >= den.len(), "inexact polynomial division");
        let lead_inv = den[dd].recip();
        let mut quot = vec![Rational::zero(); num.len() - den.len() + 1];
        for k in (0..quot.len()).rev() {
            let c = &num[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in den.iter().enumerate() {
                let t = dc * &c;
                num[k + j] -= t;
            }
            quot[k] = c;
        }
        assert!(num.iter().all(Rational::is_zero), "inexact polynomial division");
        Self::from_dense(nlo - dlo, quot)
    }

    /// Primitive integer coefficient vector (ascending), ignoring the q-power
    /// unit: the lowest exponent is dropped and coefficients are scaled to
    /// coprime integers with positive leading coefficient.
    fn primitive_ints(&self) -> Vec<BigInt> {
        let (_, v) = self.dense();
        if v.is_empty() {
            return Vec::new();
        }
        let mut den_lcm = BigInt::one();
        for c in &v {
            let d = c.denom();
            let g = num::Integer::gcd(&den_lcm, d);
            den_lcm = &den_lcm / g * d;
        }
        let mut ints: Vec<BigInt> = v.iter().map(|c| c.numer() * &den_lcm / c.denom()).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = num::Integer::gcd(&g, c);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        for c in &mut ints {
            *c = &*c / &g;
        }
        ints
    }

    /// Polynomial gcd up to units, via a primitive pseudo-remainder sequence.
    /// The result is anchored at exponent 0, has coprime integer coefficients
    /// and positive leading coefficient; gcd(0, b) = primitive part of b.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        fn prim(mut v: Vec<BigInt>) -> Vec<BigInt> {
            while v.last().map_or(false, Zero::is_zero) {
                v.pop();
            }
            if v.is_empty() {
                return v;
            }
            let mut g = BigInt::zero();
            for c in &v {
                g = num::Integer::gcd(&g, c);
            }
            if v.last().unwrap().is_negative() {
                g = -g;
            }
            for c in &mut v {
                *c = &*c / &g;
            }
            v
        }
        // Pseudo-remainder of a by b (deg a >= deg b assumed by caller loop).
        fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
            let mut r: Vec<BigInt> = a.to_vec();
            let db = b.len() - 1;
            let lead = b[db].clone();
            while r.len() > db {
                let k = r.len() - 1 - db;
                let c = r.last().unwrap().clone();
                for x in r.iter_mut() {
                    *x = &*x * &lead;
                }
                for (j, bc) in b.iter().enumerate() {
                    r[k + j] -= bc * &c;
                }
                while r.last().map_or(false, Zero::is_zero) {
                    r.pop();
                }
                if r.is_empty() {
                    break;
                }
            }
            r
        }
        let mut a = prim(self.primitive_ints());
        let mut b = prim(other.primitive_ints());
        if a.is_empty() {
            return ints_to_poly(&b);
        }
        while !b.is_empty() {
            if a.len() < b.len() {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = prim(prem(&a, &b));
            a = b;
            b = r;
        }
        ints_to_poly(&a)
    }
}

fn ints_to_poly(v: &[BigInt]) -> LaurentPoly {
    let mut coeffs = BTreeMap::new();
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            coeffs.insert(i as i32, Rational::from_integer(c.clone()));
        }
    }
    LaurentPoly { coeffs }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.insert_add(*e, c.clone());
        }
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.insert_add(*e, c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.insert_add(*e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.insert_add(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// One monomial without sign: "1", "q", "q^-2", "3/2 q^2".
fn fmt_term(exp: i32, c: &Rational) -> String {
    let mono = match exp {
        0 => String::new(),
        1 => "q".to_string(),
        e => format!("q^{e}"),
    };
    let abs = c.abs();
    if mono.is_empty() {
        fmt_rational(&abs)
    } else if abs.is_one() {
        mono
    } else {
        format!("{} {}", fmt_rational(&abs), mono)
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in descending exponent order, e.g. `q^2 + 1 + q^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                write!(f, "{}", fmt_term(*e, c))?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}", fmt_term(*e, c))?;
            } else {
                write!(f, " + {}", fmt_term(*e, c))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn arithmetic_basics() {
        let p = &LaurentPoly::q() + &LaurentPoly::q_pow(-1);
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.eval_at_one(), rat(2));
        let sq = &p * &p;
        assert_eq!(sq.coeff(0), rat(2));
        assert_eq!(sq.coeff(2), rat(1));
        assert_eq!(sq.coeff(-2), rat(1));
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn division_is_exact() {
        let p = &(&LaurentPoly::q_pow(2) - &LaurentPoly::one())
            * &(&LaurentPoly::q_pow(3) + &LaurentPoly::from_int(7));
        let q = p.div_exact(&(&LaurentPoly::q_pow(2) - &LaurentPoly::one()));
        assert_eq!(q, &LaurentPoly::q_pow(3) + &LaurentPoly::from_int(7));
        let unit = LaurentPoly::term(-3, rat(2));
        let r = p.div_exact(&unit);
        assert_eq!(&r * &unit, p);
    }

    #[test]
    fn gcd_of_common_factor() {
        let f = &LaurentPoly::q_pow(2) - &LaurentPoly::one();
        let g = &LaurentPoly::q() - &LaurentPoly::one();
        let h = &f * &g;
        let d = h.gcd(&f);
        // gcd is only defined up to units; both candidates are primitive and
        // anchored at exponent 0, so check divisibility both ways.
        assert!(!d.is_zero());
        assert_eq!(d.max_exp().unwrap() - d.min_exp().unwrap(), 2);
        h.div_exact(&d);
        f.div_exact(&d);
    }

    #[test]
    fn gcd_of_coprime_is_unit() {
        let f = &LaurentPoly::q() - &LaurentPoly::one();
        let g = &LaurentPoly::q() + &LaurentPoly::one();
        let d = f.gcd(&g);
        assert_eq!(d.max_exp(), Some(0));
    }

    #[test]
    fn display_descending() {
        let p = &(&LaurentPoly::q_pow(2) + &LaurentPoly::one()) + &LaurentPoly::q_pow(-2);
        assert_eq!(p.to_string(), "q^2 + 1 + q^-2");
        let m = &LaurentPoly::q() - &LaurentPoly::q_pow(-1);
        assert_eq!(m.to_string(), "q - q^-1");
    }
}
