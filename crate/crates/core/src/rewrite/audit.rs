//! Dimension audits and leading terms.
//!
//! The audit is the operational form of the basis theorem for these
//! algebras: the normal words of one multidegree must count like commutative
//! monomials, a closure sweep re-reduces generator-times-basis products, and
//! two rewriting strategies are compared on pseudorandom products.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{rat, RatFunc, Rational};
use crate::{Error, Result};

use super::{Element, LetterId, RuleSet, Strategy, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub normal_count: u64,
    pub expected_count: u64,
    pub closure_ok: bool,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

fn group_letters(rs: &RuleSet, g: usize) -> Vec<LetterId> {
    rs.alphabet
        .ids()
        .filter(|&l| rs.alphabet.group(l) as usize == g + 1)
        .collect()
}

fn multicombinations(letters: &[LetterId], size: u32) -> Vec<Word> {
    fn rec(letters: &[LetterId], size: u32, from: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if size == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..letters.len() {
            cur.push(letters[i]);
            rec(letters, size - 1, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(letters, size, 0, &mut Vec::new(), &mut out);
    out
}

/// All normal words of a given multidegree, in ascending word order.
pub fn enumerate_normal_words(rs: &RuleSet, d: &[u32]) -> Result<Vec<Word>> {
    let groups = rs.alphabet.num_groups();
    if d.len() != groups {
        return Err(Error::Usage(format!(
            "multidegree has {} components but the algebra has {} groups",
            d.len(),
            groups
        )));
    }
    let total: u32 = d.iter().sum();
    if total > rs.config.degree_cap {
        return Err(Error::Usage(format!(
            "total degree {} exceeds the configured cap {}",
            total, rs.config.degree_cap
        )));
    }
    let mut words: Vec<Word> = vec![Vec::new()];
    for (g, &dg) in d.iter().enumerate() {
        let letters = group_letters(rs, g);
        if dg > 0 && letters.is_empty() {
            return Ok(Vec::new());
        }
        let segs = multicombinations(&letters, dg);
        let mut next = Vec::with_capacity(words.len() * segs.len());
        for w in &words {
            for s in &segs {
                let mut nw = w.clone();
                nw.extend_from_slice(s);
                next.push(nw);
            }
        }
        words = next;
    }
    Ok(words)
}

pub fn random_normal_word(rs: &RuleSet, d: &[u32], rng: &mut impl Rng) -> Word {
    let mut w = Vec::new();
    for (g, &dg) in d.iter().enumerate() {
        let letters = group_letters(rs, g);
        let mut seg: Vec<LetterId> = (0..dg)
            .map(|_| letters[rng.gen_range(0..letters.len())])
            .collect();
        seg.sort_unstable();
        w.extend_from_slice(&seg);
    }
    w
}

/// A pseudorandom homogeneous element: shuffled words of multidegree `d`
/// with monomial Laurent coefficients.
pub fn random_element(rs: &RuleSet, d: &[u32], terms: usize, rng: &mut impl Rng) -> Element {
    let mut e = Element::zero();
    for _ in 0..terms {
        let mut w = random_normal_word(rs, d, rng);
        w.shuffle(rng);
        let c = crate::scalar::LaurentPoly::term(
            rng.gen_range(-3..=3),
            rat(rng.gen_range(1..=4)) * Rational::from_integer((2 * rng.gen_range(0..2i64) - 1).into()),
        );
        e.add_term(w, RatFunc::from_laurent(c));
    }
    e
}

/// Count normal words of one multidegree, compare with the commutative
/// monomial count, and probe closure and confluence.
pub fn dimension_audit(rs: &RuleSet, d: &[u32], samples: usize, seed: u64) -> Result<AuditReport> {
    let words = enumerate_normal_words(rs, d)?;
    for w in &words {
        debug_assert!(rs.alphabet.is_normal(w));
        assert!(
            rs.find_redex(w, Strategy::LeftmostInnermost).is_none(),
            "{}: enumerated normal word {} still matches a rule",
            rs.name,
            rs.alphabet.render_word(w)
        );
    }
    let normal_count = words.len() as u64;
    let expected_count: u64 = d
        .iter()
        .enumerate()
        .map(|(g, &dg)| binomial(group_letters(rs, g).len() as u64 + dg as u64 - 1, dg as u64))
        .product();

    let mut closure_ok = normal_count == expected_count;

    // Closure sweep: every generator times every normal word of the
    // complementary degree must re-expand in normal words of degree d.
    'letters: for l in rs.alphabet.ids() {
        let g = rs.alphabet.group(l) as usize - 1;
        if d[g] == 0 {
            continue;
        }
        let mut prev = d.to_vec();
        prev[g] -= 1;
        for w in enumerate_normal_words(rs, &prev)? {
            let mut lw = vec![l];
            lw.extend_from_slice(&w);
            let nf = rs.normal_form(&Element::from_word(lw));
            for (out_w, _) in nf.iter() {
                if !rs.alphabet.is_normal(out_w) || rs.alphabet.multidegree(out_w) != d {
                    closure_ok = false;
                    break 'letters;
                }
            }
        }
    }

    // Strategy agreement on pseudorandom products and scrambles.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let word = if i % 2 == 0 {
            // Product of two normal words with a random degree split.
            let mut d1 = vec![0u32; d.len()];
            for (g, &dg) in d.iter().enumerate() {
                d1[g] = rng.gen_range(0..=dg);
            }
            let d2: Vec<u32> = d.iter().zip(&d1).map(|(a, b)| a - b).collect();
            let mut w = random_normal_word(rs, &d1, &mut rng);
            w.extend(random_normal_word(rs, &d2, &mut rng));
            w
        } else {
            let mut w = random_normal_word(rs, d, &mut rng);
            w.shuffle(&mut rng);
            w
        };
        let e = Element::from_word(word);
        let left = rs.normal_form_with(&e, Strategy::LeftmostInnermost);
        let right = rs.normal_form_with(&e, Strategy::RightmostInnermost);
        if left != right {
            closure_ok = false;
            break;
        }
    }

    Ok(AuditReport {
        normal_count,
        expected_count,
        closure_ok,
    })
}

/// The leading term of a nonzero homogeneous element: among the normal-form
/// words with minimal h (the maximal ones in the order where v < w means
/// h(v) > h(w)), the one with the lexicographically largest exponent vector.
pub fn leading_term(rs: &RuleSet, e: &Element) -> Result<Word> {
    let mut degree: Option<Vec<u32>> = None;
    for (w, _) in e.iter() {
        let d = rs.alphabet.multidegree(w);
        match &degree {
            None => degree = Some(d),
            Some(existing) if *existing != d => {
                return Err(Error::Usage(
                    "leading_term requires a homogeneous element".into(),
                ))
            }
            _ => {}
        }
    }
    if degree.is_none() {
        return Err(Error::Usage("leading_term of the zero element".into()));
    }
    let nf = rs.normal_form(e);
    if nf.is_zero() {
        return Err(Error::Usage(
            "leading_term of an element that reduces to zero".into(),
        ));
    }
    let h = |w: &Word| -> i64 { -rs.alphabet.measure(w).1 };
    let min_h = nf.iter().map(|(w, _)| h(w)).min().unwrap();
    let exp_vec = |w: &Word| -> Vec<u32> {
        let mut v = vec![0u32; rs.alphabet.len()];
        for &l in w {
            v[l as usize] += 1;
        }
        v
    };
    Ok(nf
        .iter()
        .filter(|(w, _)| h(w) == min_h)
        .map(|(w, _)| (exp_vec(w), w.clone()))
        .max()
        .map(|(_, w)| w)
        .unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{Alphabet, Config};

    fn q_plane() -> RuleSet {
        let alphabet = Alphabet::new(1, 2, false, false);
        let x = alphabet.x_id(1, 1, 1);
        let y = alphabet.x_id(2, 1, 1);
        let rhs = Element::from_term(vec![x, y], RatFunc::q_pow(2));
        RuleSet::build(alphabet, vec![((y, x), rhs)], Config::default(), "q-plane").unwrap()
    }

    #[test]
    fn audit_counts_and_closure() {
        let rs = q_plane();
        let rep = dimension_audit(&rs, &[2, 3], 50, 1).unwrap();
        assert_eq!(rep.normal_count, 1);
        assert_eq!(rep.expected_count, 1);
        assert!(rep.closure_ok);
    }

    #[test]
    fn audit_rejects_over_cap() {
        let rs = q_plane();
        let err = dimension_audit(&rs, &[9, 0], 10, 1).unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }

    #[test]
    fn leading_term_of_monomial_is_itself() {
        let rs = q_plane();
        let x = rs.alphabet.x_id(1, 1, 1);
        let y = rs.alphabet.x_id(2, 1, 1);
        let w = vec![x, x, y];
        assert_eq!(leading_term(&rs, &Element::from_word(w.clone())).unwrap(), w);
        assert!(leading_term(&rs, &Element::zero()).is_err());
    }
}
