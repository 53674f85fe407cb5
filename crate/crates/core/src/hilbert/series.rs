//! Exact multigraded power-series tables, closed-form descriptors, and the
//! coefficient comparison between them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::{Error, Result};

/// Map multidegree -> dimension, exact, up to some cap chosen by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesTable {
    pub entries: BTreeMap<Vec<u32>, i64>,
}

impl SeriesTable {
    pub fn at(&self, d: &[u32]) -> i64 {
        self.entries.get(d).copied().unwrap_or(0)
    }

    pub fn to_csv(&self) -> String {
        let m = self.entries.keys().next().map_or(0, Vec::len);
        let mut s = String::new();
        let header: Vec<String> = (1..=m).map(|i| format!("d{i}")).collect();
        let _ = writeln!(s, "{},dim", header.join(","));
        for (d, v) in &self.entries {
            let ds: Vec<String> = d.iter().map(u32::to_string).collect();
            let _ = writeln!(s, "{},{v}", ds.join(","));
        }
        s
    }
}

/// A polynomial with integer coefficients in the grading variables.
pub type GradedPoly = BTreeMap<Vec<u32>, i64>;

/// A ratio of integer polynomials in the grading variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub num: GradedPoly,
    pub den: GradedPoly,
    pub vars: usize,
}

pub fn poly_const(vars: usize, c: i64) -> GradedPoly {
    let mut p = GradedPoly::new();
    if c != 0 {
        p.insert(vec![0; vars], c);
    }
    p
}

pub fn poly_var(vars: usize, idx: usize) -> GradedPoly {
    let mut e = vec![0; vars];
    e[idx] = 1;
    let mut p = GradedPoly::new();
    p.insert(e, 1);
    p
}

pub fn poly_add(a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
    let mut out = a.clone();
    for (e, c) in b {
        let v = out.entry(e.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            out.remove(e);
        }
    }
    out
}

pub fn poly_neg(a: &GradedPoly) -> GradedPoly {
    a.iter().map(|(e, c)| (e.clone(), -c)).collect()
}

pub fn poly_mul(a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
    let mut out = GradedPoly::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
            let v = out.entry(e.clone()).or_insert(0);
            *v += c1 * c2;
            if *v == 0 {
                out.remove(&e);
            }
        }
    }
    out
}

fn degrees_up_to(vars: usize, cap: u32) -> Vec<Vec<u32>> {
    fn rec(vars: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == vars {
            out.push(cur.clone());
            return;
        }
        let used: u32 = cur.iter().sum();
        for d in 0..=cap - used {
            cur.push(d);
            rec(vars, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, cap, &mut Vec::new(), &mut out);
    out
}

/// Power-series expansion of num/den up to total degree `cap`. The
/// denominator must have a nonzero constant term that divides every
/// intermediate coefficient exactly (true for the unit constant terms used
/// here).
pub fn series_divide(num: &GradedPoly, den: &GradedPoly, vars: usize, cap: u32) -> Result<GradedPoly> {
    let c0 = den.get(&vec![0; vars]).copied().unwrap_or(0);
    if c0 == 0 {
        return Err(Error::Usage(
            "series denominator has zero constant term".into(),
        ));
    }
    let mut coeffs = GradedPoly::new();
    for d in degrees_up_to(vars, cap) {
        let mut acc = num.get(&d).copied().unwrap_or(0);
        for (e, c) in den {
            if e.iter().all(|&x| x == 0) {
                continue;
            }
            if e.iter().zip(&d).any(|(a, b)| a > b) {
                continue;
            }
            let rest: Vec<u32> = d.iter().zip(e).map(|(a, b)| a - b).collect();
            acc -= c * coeffs.get(&rest).copied().unwrap_or(0);
        }
        if acc % c0 != 0 {
            return Err(Error::Usage(
                "series division is not integral; constant term must be a unit".into(),
            ));
        }
        coeffs.insert(d, acc / c0);
    }
    Ok(coeffs)
}

/// True iff the table agrees with the closed form at every multidegree of
/// total degree <= cap.
pub fn series_compare(table: &SeriesTable, closed: &ClosedForm, cap: u32) -> Result<bool> {
    let expansion = series_divide(&closed.num, &closed.den, closed.vars, cap)?;
    for d in degrees_up_to(closed.vars, cap) {
        if table.at(&d) != expansion.get(&d).copied().unwrap_or(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parse an integer-coefficient rational expression in the grading
/// variables s, t, u, v (however many the context uses): integers,
/// variables, + - * / ^ and parentheses, with juxtaposition not allowed
/// (use explicit *).
pub fn parse_closed_form(input: &str, vars: usize) -> Result<ClosedForm> {
    let mut p = ClosedParser {
        s: input.as_bytes(),
        pos: 0,
        vars,
    };
    let (num, den) = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(Error::Syntax {
            pos: p.pos,
            msg: "trailing input in closed form".into(),
        });
    }
    Ok(ClosedForm { num, den, vars })
}

struct ClosedParser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: usize,
}

type Rat = (GradedPoly, GradedPoly);

impl<'a> ClosedParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Rat> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = rat_add(&acc, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = rat_add(&acc, &(poly_neg(&t.0), t.1));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Rat> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = rat_mul(&acc, &f);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    if f.0.is_empty() {
                        return Err(Error::Syntax {
                            pos: self.pos,
                            msg: "division by zero polynomial".into(),
                        });
                    }
                    acc = rat_mul(&acc, &(f.1, f.0));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Rat> {
        let mut base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == start {
                return Err(Error::Syntax {
                    pos: self.pos,
                    msg: "expected a nonnegative integer exponent".into(),
                });
            }
            let e: u32 = std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| Error::Syntax {
                    pos: start,
                    msg: "exponent too large".into(),
                })?;
            let mut acc = (poly_const(self.vars, 1), poly_const(self.vars, 1));
            for _ in 0..e {
                acc = rat_mul(&acc, &base);
            }
            base = acc;
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Rat> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Syntax {
                        pos: self.pos,
                        msg: "expected )".into(),
                    });
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                let a = self.atom()?;
                Ok((poly_neg(&a.0), a.1))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let v: i64 = std::str::from_utf8(&self.s[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| Error::Syntax {
                        pos: start,
                        msg: "integer too large".into(),
                    })?;
                Ok((poly_const(self.vars, v), poly_const(self.vars, 1)))
            }
            Some(c) if c.is_ascii_lowercase() => {
                let idx = match c {
                    b's' => 0,
                    b't' => 1,
                    b'u' => 2,
                    b'v' => 3,
                    _ => {
                        return Err(Error::Syntax {
                            pos: self.pos,
                            msg: format!("unknown variable '{}'", c as char),
                        })
                    }
                };
                if idx >= self.vars {
                    return Err(Error::Syntax {
                        pos: self.pos,
                        msg: format!(
                            "variable '{}' out of range for {} grading variables",
                            c as char, self.vars
                        ),
                    });
                }
                self.pos += 1;
                Ok((poly_var(self.vars, idx), poly_const(self.vars, 1)))
            }
            _ => Err(Error::Syntax {
                pos: self.pos,
                msg: "expected a factor".into(),
            }),
        }
    }
}

fn rat_add(a: &Rat, b: &Rat) -> Rat {
    (
        poly_add(&poly_mul(&a.0, &b.1), &poly_mul(&b.0, &a.1)),
        poly_mul(&a.1, &b.1),
    )
}

fn rat_mul(a: &Rat, b: &Rat) -> Rat {
    (poly_mul(&a.0, &b.0), poly_mul(&a.1, &b.1))
}

/// 1/((1-s)(1-t)(1-s^2)(1-t^2)(1-st)): the two-copy coinvariant series.
pub fn r22_closed_form() -> ClosedForm {
    parse_closed_form("1/((1-s)*(1-t)*(1-s^2)*(1-t^2)*(1-s*t))", 2).unwrap()
}

/// 1/((1-s)^2 (1-t)^2 (1-st)): the two-copy trace ring series.
pub fn t22_closed_form() -> ClosedForm {
    parse_closed_form("1/((1-s)^2*(1-t)^2*(1-s*t))", 2).unwrap()
}

/// ((1-s)(1-t)(1-st)+st)/((1-s)^2(1-t)^2(1-st)): the generic-matrix series.
pub fn g22_closed_form() -> ClosedForm {
    parse_closed_form(
        "((1-s)*(1-t)*(1-s*t)+s*t)/((1-s)^2*(1-t)^2*(1-s*t))",
        2,
    )
    .unwrap()
}

/// 1/((1-s)(1-s^2)): one copy, classically C[Tr x, det x].
pub fn r21_closed_form() -> ClosedForm {
    parse_closed_form("1/((1-s)*(1-s^2))", 1).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divide_geometric() {
        let one = poly_const(1, 1);
        let den = poly_add(&one, &poly_neg(&poly_var(1, 0))); // 1 - s
        let exp = series_divide(&one, &den, 1, 5).unwrap();
        for d in 0..=5u32 {
            assert_eq!(exp.get(&vec![d]).copied().unwrap(), 1);
        }
    }

    #[test]
    fn parse_and_expand_g22() {
        let cf = g22_closed_form();
        let exp = series_divide(&cf.num, &cf.den, 2, 3).unwrap();
        assert_eq!(exp.get(&vec![0, 0]).copied().unwrap(), 1);
        assert_eq!(exp.get(&vec![1, 0]).copied().unwrap(), 1);
        assert_eq!(exp.get(&vec![1, 1]).copied().unwrap(), 2);
    }

    #[test]
    fn r22_coefficients() {
        let cf = r22_closed_form();
        let exp = series_divide(&cf.num, &cf.den, 2, 4).unwrap();
        assert_eq!(exp.get(&vec![1, 1]).copied().unwrap(), 2);
        assert_eq!(exp.get(&vec![2, 2]).copied().unwrap(), 6);
        assert_eq!(exp.get(&vec![0, 0]).copied().unwrap(), 1);
    }

    #[test]
    fn t22_coefficients() {
        let cf = t22_closed_form();
        let exp = series_divide(&cf.num, &cf.den, 2, 2).unwrap();
        assert_eq!(exp.get(&vec![1, 1]).copied().unwrap(), 5);
        assert_eq!(exp.get(&vec![1, 0]).copied().unwrap(), 2);
    }

    #[test]
    fn zero_constant_term_rejected() {
        let num = poly_const(1, 1);
        let den = poly_var(1, 0);
        assert!(series_divide(&num, &den, 1, 3).is_err());
    }

    #[test]
    fn parser_rejects_garbage() {
        assert!(parse_closed_form("1/", 2).is_err());
        assert!(parse_closed_form("w+1", 2).is_err());
        assert!(parse_closed_form("u", 2).is_err());
        assert!(parse_closed_form("(1-s", 2).is_err());
    }
}
