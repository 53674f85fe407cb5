//! Matrices over the noncommutative algebras, the quantum trace, and
//! coefficient extraction in the normal-word basis.

pub mod catalog;

pub use catalog::{qtrace_span_rank, verify, verify_all, IdentityKey, IdentityReport, SpanRank};

use std::sync::Arc;

use crate::algebras::AlgebraSpec;
use crate::rewrite::{Element, RuleSet, Word};
use crate::scalar::RatFunc;
use crate::{Error, Result};

/// An N x N matrix with entries in one algebra instance. Entries are kept in
/// normal form by every operation.
#[derive(Clone, Debug)]
pub struct AlgMatrix {
    n: usize,
    entries: Vec<Element>,
    ctx: Arc<RuleSet>,
}

impl PartialEq for AlgMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl AlgMatrix {
    pub fn zero(n: usize, ctx: Arc<RuleSet>) -> Self {
        AlgMatrix {
            n,
            entries: vec![Element::zero(); n * n],
            ctx,
        }
    }

    pub fn identity(n: usize, ctx: Arc<RuleSet>) -> Self {
        let mut m = Self::zero(n, ctx);
        for i in 1..=n {
            *m.at_mut(i, i) = Element::one();
        }
        m
    }

    /// The generic matrix X(copy) of one copy's generators.
    pub fn generator(spec: &AlgebraSpec, copy: usize) -> Self {
        let n = spec.n;
        let mut m = Self::zero(n, spec.rules.clone());
        for i in 1..=n {
            for j in 1..=n {
                *m.at_mut(i, j) = spec.x(copy, i, j);
            }
        }
        m
    }

    /// A scalar matrix f I.
    pub fn scalar_matrix(n: usize, ctx: Arc<RuleSet>, f: &Element) -> Self {
        let mut m = Self::zero(n, ctx.clone());
        let nf = ctx.normal_form(f);
        for i in 1..=n {
            *m.at_mut(i, i) = nf.clone();
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn context(&self) -> &Arc<RuleSet> {
        &self.ctx
    }

    pub fn at(&self, i: usize, j: usize) -> &Element {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Element {
        &mut self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Element::is_zero)
    }

    pub fn add(&self, rhs: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.n, rhs.n);
        AlgMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn sub(&self, rhs: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.n, rhs.n);
        AlgMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn neg(&self) -> AlgMatrix {
        self.map(Element::neg)
    }

    pub fn map(&self, f: impl Fn(&Element) -> Element) -> AlgMatrix {
        AlgMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> AlgMatrix {
        self.map(|e| e.scale(c))
    }

    /// Left multiplication by a scalar element: entries f * m_ij.
    pub fn left_mul_elem(&self, f: &Element) -> AlgMatrix {
        self.map(|e| self.ctx.multiply(f, e))
    }

    /// Right multiplication by a scalar element: entries m_ij * f.
    pub fn right_mul_elem(&self, f: &Element) -> AlgMatrix {
        self.map(|e| self.ctx.multiply(e, f))
    }

    pub fn mul(&self, rhs: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.n, rhs.n);
        let mut out = Self::zero(self.n, self.ctx.clone());
        for i in 1..=self.n {
            for k in 1..=self.n {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 1..=self.n {
                    if rhs.at(k, j).is_zero() {
                        continue;
                    }
                    let t = self.at(i, k).free_mul(rhs.at(k, j));
                    *out.at_mut(i, j) = out.at(i, j).add(&t);
                }
            }
        }
        out.map(|e| out.ctx.normal_form(e))
    }

    pub fn pow(&self, k: u32) -> AlgMatrix {
        let mut acc = Self::identity(self.n, self.ctx.clone());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quantum trace with the charge matrix Q = diag(q^{N-1}, ..., q^{-N+1}),
    /// generalized over the q-power map so the classical engine can reuse it
    /// with q = 1 (ordinary trace).
    pub fn qtrace_with(&self, qp: &dyn Fn(i32) -> RatFunc) -> Element {
        let mut acc = Element::zero();
        for i in 1..=self.n {
            let weight = qp(self.n as i32 + 1 - 2 * i as i32);
            acc = acc.add(&self.at(i, i).scale(&weight));
        }
        self.ctx.normal_form(&acc)
    }

    pub fn qtrace(&self) -> Element {
        self.qtrace_with(&RatFunc::q_pow)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Element> {
        self.entries.iter()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                s.push_str(&format!(
                    "[{i},{j}] {}\n",
                    self.ctx.alphabet.render_element(self.at(i, j))
                ));
            }
        }
        s
    }
}

/// The quantum trace of a square matrix over its algebra.
pub fn qtrace(f: &AlgMatrix) -> Element {
    f.qtrace()
}

/// The coefficient of `pattern` in the normal-basis expansion of `e`, where
/// the pattern uses only letters of a designated copy subset: each normal
/// word splits as (remaining letters) x (pattern letters), and terms whose
/// pattern part matches contribute their remaining part.
pub fn coefficient_of(rs: &RuleSet, e: &Element, pattern: &Word) -> Result<Element> {
    if !rs.alphabet.is_normal(pattern) {
        return Err(Error::Usage(
            "coefficient_of: pattern must be a normal word".into(),
        ));
    }
    let pattern_groups: std::collections::BTreeSet<u32> =
        pattern.iter().map(|&l| rs.alphabet.group(l)).collect();
    let nf = rs.normal_form(e);
    let mut out = Element::zero();
    for (w, c) in nf.iter() {
        let mut rest = Vec::new();
        let mut pat = Vec::new();
        for &l in w {
            if pattern_groups.contains(&rs.alphabet.group(l)) {
                pat.push(l);
            } else {
                rest.push(l);
            }
        }
        if &pat == pattern {
            out.add_term(rest, c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::build_aq;
    use crate::rewrite::{random_element, Config};
    use crate::scalar::q_integer;
    use rand::SeedableRng;

    fn aq(n: usize, m: usize) -> AlgebraSpec {
        build_aq(n, m, Config::default()).unwrap()
    }

    #[test]
    fn qtrace_examples() {
        let a = aq(2, 1);
        let id = AlgMatrix::identity(2, a.rules.clone());
        let tr = qtrace(&id);
        assert_eq!(
            tr.as_scalar().unwrap(),
            RatFunc::from_laurent(q_integer(2).unwrap())
        );

        let x = AlgMatrix::generator(&a, 1);
        let tr = qtrace(&x);
        assert_eq!(tr.coeff(&vec![a.alphabet().x_id(1, 1, 1)]), RatFunc::q_pow(1));
        assert_eq!(tr.coeff(&vec![a.alphabet().x_id(1, 2, 2)]), RatFunc::q_pow(-1));
        assert_eq!(tr.num_terms(), 2);
    }

    #[test]
    fn qtrace_combination_is_the_displayed_quadratic() {
        // 1/[2]_q (q^-1 Tr_q(X)^2 - Tr_q(X^2)) = q^-2 x^2_2 x^1_1 - x^1_2 x^2_1.
        let a = aq(2, 1);
        let al = a.alphabet();
        let x = AlgMatrix::generator(&a, 1);
        let trx = qtrace(&x);
        let trx2 = qtrace(&x.mul(&x));
        let combo = a
            .rules
            .multiply(&trx, &trx)
            .scale(&RatFunc::q_pow(-1))
            .sub(&trx2)
            .scale(&(&RatFunc::one() / &RatFunc::from_laurent(q_integer(2).unwrap())));
        let combo = a.rules.normal_form(&combo);
        let mut expect = Element::from_term(
            vec![al.x_id(1, 2, 2), al.x_id(1, 1, 1)],
            RatFunc::q_pow(-2),
        );
        expect.add_term(
            vec![al.x_id(1, 1, 2), al.x_id(1, 2, 1)],
            &RatFunc::zero() - &RatFunc::one(),
        );
        assert_eq!(combo, a.rules.normal_form(&expect));
    }

    #[test]
    fn matrix_multiplication_is_associative() {
        let a = aq(2, 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..3 {
            let rand_mat = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut m = AlgMatrix::zero(2, a.rules.clone());
                for i in 1..=2 {
                    for j in 1..=2 {
                        *m.at_mut(i, j) = random_element(&a.rules, &[1, 0], 2, rng);
                    }
                }
                m
            };
            let (f, g, h) = (rand_mat(&mut rng), rand_mat(&mut rng), rand_mat(&mut rng));
            assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        }
    }

    #[test]
    fn qtrace_is_linear_and_respects_scalar_matrices() {
        let a = aq(2, 2);
        let x = AlgMatrix::generator(&a, 1);
        let y = AlgMatrix::generator(&a, 2);
        let lhs = qtrace(&x.add(&y));
        assert_eq!(lhs, qtrace(&x).add(&qtrace(&y)));
        // qtrace(f I . F) = f qtrace(F) for a coinvariant scalar f = Tr_q(X).
        let f = qtrace(&x);
        let fi = AlgMatrix::scalar_matrix(2, a.rules.clone(), &f);
        let lhs = qtrace(&fi.mul(&y));
        let rhs = a.rules.multiply(&f, &qtrace(&y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn coefficient_extraction() {
        let a = aq(2, 2);
        let al = a.alphabet();
        let x12 = al.x_id(1, 1, 2);
        let y12 = al.x_id(2, 1, 2);
        let y22 = al.x_id(2, 2, 2);
        let e = Element::from_word(vec![x12, y12]);
        let c = coefficient_of(&a.rules, &e, &vec![y12]).unwrap();
        assert_eq!(c, Element::from_word(vec![x12]));
        let c = coefficient_of(&a.rules, &e, &vec![y22]).unwrap();
        assert!(c.is_zero());
        // Non-normal pattern is a usage error.
        let bad = vec![al.x_id(2, 2, 2), al.x_id(2, 1, 2)];
        assert!(coefficient_of(&a.rules, &e, &bad).is_err());
    }
}
