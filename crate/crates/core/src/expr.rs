//! Expression parser and evaluator for the command-line surface syntax.
//!
//! Grammar (whitespace-insensitive), with precedence
//! power > product (juxtaposition or `*`, and scalar `/`) > unary minus >
//! sum/difference:
//!
//!   expr   := unary (('+' | '-') unary)*
//!   unary  := '-' unary | prod
//!   prod   := pow (pow | '*' pow | '/' pow)*
//!   pow    := atom ('^' '-'? INT)?            (generator indices bind first)
//!   atom   := INT | 'q' | 'D' | generator | matrix | 'Tr_q' '(' expr ')'
//!           | '(' expr ')' | '[' expr ',' expr ']'
//!
//! Generators: x^i_j or x(k)^i_j, with y and z as aliases for copies 2 and
//! 3, and t^i_j for the quantum-matrix letters. Matrices: X, Y, Z, X(k), I.

use crate::algebras::AlgebraSpec;
use crate::matrixops::AlgMatrix;
use crate::rewrite::{Element, LetterKind};
use crate::scalar::RatFunc;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(i64),
    Q,
    DInv,
    Gen { copy: usize, row: usize, col: usize },
    TGen { row: usize, col: usize },
    Matrix { copy: usize },
    IdentityMat,
    TrQ(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Commutator(Box<Expr>, Box<Expr>),
}

pub fn parse(input: &str, n: usize, m: usize) -> Result<Expr> {
    let mut p = Parser {
        s: input.as_bytes(),
        pos: 0,
        n,
        m,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    n: usize,
    m: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.unary()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.unary()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.prod()
    }

    fn starts_atom(&mut self) -> bool {
        matches!(
            self.peek(),
            Some(b'(' | b'[' | b'q' | b'D' | b'x' | b'y' | b'z' | b't' | b'X' | b'Y' | b'Z' | b'I' | b'T')
                | Some(b'0'..=b'9')
        )
    }

    fn prod(&mut self) -> Result<Expr> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = Expr::Mul(Box::new(acc), Box::new(self.power()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = Expr::Div(Box::new(acc), Box::new(self.power()?));
                }
                _ if self.starts_atom() => {
                    acc = Expr::Mul(Box::new(acc), Box::new(self.power()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e = i32::try_from(e).map_err(|_| self.err("exponent out of range"))?;
            return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    /// ('(' k ')')? '^' i '_' j after a generator letter.
    fn gen_indices(&mut self, default_copy: usize) -> Result<(usize, usize, usize)> {
        let copy = if self.peek() == Some(b'(') {
            self.pos += 1;
            let k = self.integer()? as usize;
            self.eat(b')')?;
            k
        } else {
            default_copy
        };
        self.eat(b'^')?;
        let row = self.integer()? as usize;
        self.eat(b'_')?;
        let col = self.integer()? as usize;
        if copy == 0 || copy > self.m {
            return Err(self.err(&format!("copy index {copy} out of range 1..={}", self.m)));
        }
        if !(1..=self.n).contains(&row) || !(1..=self.n).contains(&col) {
            return Err(self.err(&format!("matrix index out of range 1..={}", self.n)));
        }
        Ok((copy, row, col))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.eat(b')')?;
                Ok(e)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.eat(b',')?;
                let b = self.expr()?;
                self.eat(b']')?;
                Ok(Expr::Commutator(Box::new(a), Box::new(b)))
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.integer()?)),
            Some(b'q') => {
                self.pos += 1;
                Ok(Expr::Q)
            }
            Some(b'D') => {
                self.pos += 1;
                Ok(Expr::DInv)
            }
            Some(b't') => {
                self.pos += 1;
                self.eat(b'^')?;
                let row = self.integer()? as usize;
                self.eat(b'_')?;
                let col = self.integer()? as usize;
                if !(1..=self.n).contains(&row) || !(1..=self.n).contains(&col) {
                    return Err(self.err(&format!("matrix index out of range 1..={}", self.n)));
                }
                Ok(Expr::TGen { row, col })
            }
            Some(c @ (b'x' | b'y' | b'z')) => {
                self.pos += 1;
                let default_copy = match c {
                    b'x' => 1,
                    b'y' => 2,
                    _ => 3,
                };
                let (copy, row, col) = self.gen_indices(default_copy)?;
                Ok(Expr::Gen { copy, row, col })
            }
            Some(b'T') => {
                // Tr_q( ... )
                let rest = &self.s[self.pos..];
                if rest.starts_with(b"Tr_q") {
                    self.pos += 4;
                    self.eat(b'(')?;
                    let e = self.expr()?;
                    self.eat(b')')?;
                    Ok(Expr::TrQ(Box::new(e)))
                } else {
                    Err(self.err("expected Tr_q"))
                }
            }
            Some(c @ (b'X' | b'Y' | b'Z')) => {
                self.pos += 1;
                let copy = if c == b'X' && self.peek() == Some(b'(') {
                    self.pos += 1;
                    let k = self.integer()? as usize;
                    self.eat(b')')?;
                    k
                } else {
                    match c {
                        b'X' => 1,
                        b'Y' => 2,
                        _ => 3,
                    }
                };
                if copy == 0 || copy > self.m {
                    return Err(self.err(&format!("copy index {copy} out of range 1..={}", self.m)));
                }
                Ok(Expr::Matrix { copy })
            }
            Some(b'I') => {
                self.pos += 1;
                Ok(Expr::IdentityMat)
            }
            _ => Err(self.err("expected a value")),
        }
    }
}

/// A typed evaluation result: a scalar element of the algebra or a matrix
/// over it.
#[derive(Clone, Debug)]
pub enum Value {
    Scalar(Element),
    Matrix(AlgMatrix),
}

fn as_matrix(v: Value, spec: &AlgebraSpec) -> AlgMatrix {
    match v {
        Value::Matrix(m) => m,
        Value::Scalar(e) => AlgMatrix::scalar_matrix(spec.n, spec.rules.clone(), &e),
    }
}

pub fn eval(expr: &Expr, spec: &AlgebraSpec) -> Result<Value> {
    let rs = &spec.rules;
    Ok(match expr {
        Expr::Int(v) => Value::Scalar(Element::scalar(RatFunc::from_int(*v))),
        Expr::Q => Value::Scalar(Element::scalar(RatFunc::q_pow(1))),
        Expr::DInv => {
            if !spec.alphabet().has_d {
                return Err(Error::Usage(
                    "the determinant inverse D is not part of this context".into(),
                ));
            }
            Value::Scalar(spec.d_inv())
        }
        Expr::Gen { copy, row, col } => {
            if *copy > spec.alphabet().copies {
                return Err(Error::Usage(format!(
                    "copy {copy} out of range for m = {}",
                    spec.alphabet().copies
                )));
            }
            Value::Scalar(spec.x(*copy, *row, *col))
        }
        Expr::TGen { row, col } => {
            if !spec.alphabet().has_t {
                return Err(Error::Usage(
                    "t-generators are not part of this context".into(),
                ));
            }
            Value::Scalar(spec.t(*row, *col))
        }
        Expr::Matrix { copy } => Value::Matrix(AlgMatrix::generator(spec, *copy)),
        Expr::IdentityMat => Value::Matrix(AlgMatrix::identity(spec.n, rs.clone())),
        Expr::TrQ(inner) => match eval(inner, spec)? {
            Value::Matrix(m) => Value::Scalar(m.qtrace()),
            Value::Scalar(_) => {
                return Err(Error::Usage("Tr_q expects a matrix argument".into()))
            }
        },
        Expr::Neg(inner) => match eval(inner, spec)? {
            Value::Scalar(e) => Value::Scalar(e.neg()),
            Value::Matrix(m) => Value::Matrix(m.neg()),
        },
        Expr::Add(a, b) => binop(eval(a, spec)?, eval(b, spec)?, spec, BinOp::Add)?,
        Expr::Sub(a, b) => binop(eval(a, spec)?, eval(b, spec)?, spec, BinOp::Sub)?,
        Expr::Mul(a, b) => binop(eval(a, spec)?, eval(b, spec)?, spec, BinOp::Mul)?,
        Expr::Div(a, b) => {
            let num = eval(a, spec)?;
            let den = eval(b, spec)?;
            let Value::Scalar(d) = den else {
                return Err(Error::Usage("cannot divide by a matrix".into()));
            };
            let Some(c) = rs.normal_form(&d).as_scalar() else {
                return Err(Error::Usage(
                    "can only divide by coefficient-valued scalars".into(),
                ));
            };
            if c.is_zero() {
                return Err(Error::Usage("division by zero".into()));
            }
            let inv = c.recip();
            match num {
                Value::Scalar(e) => Value::Scalar(e.scale(&inv)),
                Value::Matrix(m) => Value::Matrix(m.scale(&inv)),
            }
        }
        Expr::Pow(base, e) => {
            let b = eval(base, spec)?;
            match b {
                Value::Scalar(el) => {
                    if *e >= 0 {
                        let mut acc = Element::one();
                        for _ in 0..*e {
                            acc = rs.multiply(&acc, &el);
                        }
                        Value::Scalar(acc)
                    } else {
                        let Some(c) = rs.normal_form(&el).as_scalar() else {
                            return Err(Error::Usage(
                                "negative powers need a coefficient-valued base".into(),
                            ));
                        };
                        if c.is_zero() {
                            return Err(Error::Usage("division by zero".into()));
                        }
                        let mut acc = RatFunc::one();
                        let inv = c.recip();
                        for _ in 0..e.unsigned_abs() {
                            acc = &acc * &inv;
                        }
                        Value::Scalar(Element::scalar(acc))
                    }
                }
                Value::Matrix(m) => {
                    if *e < 0 {
                        return Err(Error::Usage("negative matrix powers are not defined".into()));
                    }
                    Value::Matrix(m.pow(*e as u32))
                }
            }
        }
        Expr::Commutator(a, b) => {
            let va = eval(a, spec)?;
            let vb = eval(b, spec)?;
            match (va, vb) {
                (Value::Scalar(f), Value::Scalar(g)) => Value::Scalar(rs.commutator(&f, &g)),
                (va, vb) => {
                    let ma = as_matrix(va, spec);
                    let mb = as_matrix(vb, spec);
                    Value::Matrix(ma.mul(&mb).sub(&mb.mul(&ma)))
                }
            }
        }
    })
}

enum BinOp {
    Add,
    Sub,
    Mul,
}

fn binop(a: Value, b: Value, spec: &AlgebraSpec, op: BinOp) -> Result<Value> {
    let rs = &spec.rules;
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(match op {
            BinOp::Add => x.add(&y),
            BinOp::Sub => x.sub(&y),
            BinOp::Mul => rs.multiply(&x, &y),
        }),
        (va, vb) => {
            let x = as_matrix(va, spec);
            let y = as_matrix(vb, spec);
            Value::Matrix(match op {
                BinOp::Add => x.add(&y),
                BinOp::Sub => x.sub(&y),
                BinOp::Mul => x.mul(&y),
            })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::build_aq;
    use crate::rewrite::Config;

    fn spec(n: usize, m: usize) -> AlgebraSpec {
        build_aq(n, m, Config::default()).unwrap()
    }

    fn eval_scalar(input: &str, s: &AlgebraSpec) -> Element {
        match eval(&parse(input, s.n, s.m).unwrap(), s).unwrap() {
            Value::Scalar(e) => s.rules.normal_form(&e),
            Value::Matrix(_) => panic!("expected a scalar"),
        }
    }

    #[test]
    fn parses_the_displayed_quadratic() {
        let s = spec(2, 1);
        let e = eval_scalar("q^-2 * x^2_2 x^1_1 - x^1_2 x^2_1", &s);
        assert_eq!(e.num_terms(), 2);
        let al = s.alphabet();
        assert_eq!(
            e.coeff(&vec![al.x_id(1, 2, 2), al.x_id(1, 1, 1)]),
            RatFunc::q_pow(-2)
        );
    }

    #[test]
    fn trace_syntax_and_types() {
        let s = spec(2, 2);
        let e = eval_scalar("Tr_q(X Y) - q^-1 * Tr_q(X) * Tr_q(Y)", &s);
        assert!(!e.is_zero());
        // Matrix expression: the quantum Cayley-Hamilton prefix.
        let v = eval(&parse("X^2 - q^-1 Tr_q(X) X", 2, 2).unwrap(), &s).unwrap();
        assert!(matches!(v, Value::Matrix(_)));
        // Scalar embeds into matrices.
        let v = eval(&parse("X + 1", 2, 2).unwrap(), &s).unwrap();
        let Value::Matrix(m) = v else { panic!() };
        assert!(!m.at(1, 1).is_zero());
    }

    #[test]
    fn commutator_and_aliases() {
        let s = spec(2, 3);
        let e = eval_scalar("[x^1_2, y^1_2]", &s);
        assert!(!e.is_zero());
        let e2 = eval_scalar("[x(1)^1_2, x(2)^1_2]", &s);
        assert_eq!(e, e2);
        let zed = eval_scalar("z^2_1 - x(3)^2_1", &s);
        assert!(zed.is_zero());
    }

    #[test]
    fn errors_are_reported() {
        assert!(matches!(parse("x^3_1", 2, 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x^1_1 +", 2, 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse("w", 2, 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse("y^1_1", 2, 1), Err(Error::Syntax { .. })));
        let s = spec(2, 1);
        // Tr_q of a scalar and division by a matrix are type errors.
        let e = parse("Tr_q(q)", 2, 1).unwrap();
        assert!(eval(&e, &s).is_err());
        let e = parse("1/X", 2, 1).unwrap();
        assert!(eval(&e, &s).is_err());
    }

    #[test]
    fn precedence_matches_the_contract() {
        let s = spec(2, 1);
        // Unary minus binds below product: -x^1_1 x^1_2 = -(x^1_1 x^1_2).
        let a = eval_scalar("-x^1_1 x^1_2", &s);
        let b = eval_scalar("-(x^1_1 x^1_2)", &s);
        assert_eq!(a, b);
        // Power binds above product: q^2 x^1_1 is (q^2) x^1_1.
        let c = eval_scalar("q^2 x^1_1", &s);
        assert_eq!(
            c.coeff(&vec![s.alphabet().x_id(1, 1, 1)]),
            RatFunc::q_pow(2)
        );
    }

    #[test]
    fn render_parse_round_trip() {
        use crate::rewrite::random_element;
        use rand::SeedableRng;
        let s = spec(2, 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            let e = s.rules.normal_form(&random_element(&s.rules, &[2, 1], 3, &mut rng));
            let text = s.alphabet().render_element(&e);
            let back = eval_scalar(&text, &s);
            assert_eq!(back, e, "round trip failed on {text}");
        }
    }
}
