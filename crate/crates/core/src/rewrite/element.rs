//! Noncommutative polynomials: finitely supported maps from words of
//! generator letters to Q(q) coefficients.

use std::collections::BTreeMap;

use crate::scalar::RatFunc;

use super::{LetterId, Word};

/// A finite Q(q)-linear combination of words. No zero coefficients are
/// stored, so structural equality of normal forms is element equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Word, RatFunc>,
}

impl Element {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_term(Vec::new(), RatFunc::one())
    }

    pub fn scalar(c: RatFunc) -> Self {
        Self::from_term(Vec::new(), c)
    }

    pub fn from_word(w: Word) -> Self {
        Self::from_term(w, RatFunc::one())
    }

    pub fn from_letter(l: LetterId) -> Self {
        Self::from_word(vec![l])
    }

    pub fn from_term(w: Word, c: RatFunc) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add_term(&mut self, w: Word, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    /// Product in the free algebra: concatenation of words, no rewriting.
    pub fn free_mul(&self, rhs: &Element) -> Element {
        let mut out = Element::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let mut w = Vec::with_capacity(w1.len() + w2.len());
                w.extend_from_slice(w1);
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    /// Apply a map to every coefficient, dropping zeros (e.g. q := 1).
    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Element {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Specialize every coefficient at q = 1 (result still an Element, with
    /// constant coefficients).
    pub fn eval_at_one(&self) -> Element {
        self.map_coeffs(|c| RatFunc::from_rational(c.eval_at_one()))
    }

    /// The coefficient of the empty word, if the element is a pure scalar.
    pub fn as_scalar(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return Some(RatFunc::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Vec::new()) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Total rational content scale, used by tests that compare elements up
    /// to nonzero scalars.
    pub fn first_coeff(&self) -> Option<(&Word, &RatFunc)> {
        self.terms.iter().next()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_merging_drops_zeros() {
        let mut e = Element::from_term(vec![0, 1], RatFunc::q_pow(2));
        e.add_term(vec![0, 1], &RatFunc::zero() - &RatFunc::q_pow(2));
        assert!(e.is_zero());
    }

    #[test]
    fn free_mul_concatenates() {
        let a = Element::from_term(vec![0], RatFunc::q_pow(1));
        let b = Element::from_term(vec![1], RatFunc::from_int(3));
        let ab = a.free_mul(&b);
        assert_eq!(ab.coeff(&vec![0, 1]), &RatFunc::q_pow(1) * &RatFunc::from_int(3));
        assert_eq!(Element::one().free_mul(&ab), ab);
    }
}
