//! The quantum determinant, the antipode of F_q(SL_2) (via a central formal
//! inverse D of det_q), the adjoint coaction X -> S(T) X T, and the
//! coinvariance test.
//!
//! Elements of F_q(GL_2) are words that may carry D-letters; an element is
//! zero there iff clearing D against det_q (multiplying each D-homogeneous
//! part by the complementary power of det_q) gives zero in the D-free
//! algebra. det_q is central and the algebra is a domain, so clearing is
//! faithful and no division is ever needed.

use std::collections::BTreeMap;

use crate::rewrite::{Element, LetterId, LetterKind, RuleSet};
use crate::scalar::{solve_linear, RatFunc};
use crate::{Error, Result};

use super::AlgebraSpec;

/// det_q = sum over permutations of (-q)^length(pi) t^1_{pi(1)} ... t^N_{pi(N)}.
pub fn quantum_det(spec: &AlgebraSpec) -> Element {
    let al = spec.alphabet();
    assert!(al.has_t, "quantum_det needs t-generators");
    let n = al.n;
    let mut out = Element::zero();
    let mut perm: Vec<usize> = (1..=n).collect();
    loop {
        let inversions = {
            let mut c = 0u32;
            for a in 0..n {
                for b in a + 1..n {
                    if perm[a] > perm[b] {
                        c += 1;
                    }
                }
            }
            c
        };
        let word: Vec<LetterId> = (1..=n).map(|row| al.t_id(row, perm[row - 1])).collect();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        let coeff = crate::scalar::LaurentPoly::term(inversions as i32, crate::scalar::rat(sign));
        out.add_term(word, RatFunc::from_laurent(coeff));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    spec.rules.normal_form(&out)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn d_count(w: &[LetterId], d: LetterId) -> u32 {
    w.iter().filter(|&&l| l == d).count() as u32
}

fn strip_d(w: &[LetterId], d: LetterId) -> Vec<LetterId> {
    w.iter().copied().filter(|&l| l != d).collect()
}

/// True iff `e` is zero in the localization at det_q: group terms by their
/// D-power, top up each with det_q to a common power, and reduce.
pub fn is_zero_gl(rs: &RuleSet, detq: &Element, e: &Element) -> bool {
    let nf = rs.normal_form(e);
    if nf.is_zero() {
        return true;
    }
    let d = rs.alphabet.d_id();
    let max_e = nf.iter().map(|(w, _)| d_count(w, d)).max().unwrap();
    let mut powers: Vec<Element> = vec![Element::one()];
    for k in 1..=max_e {
        let prev = powers[k as usize - 1].clone();
        powers.push(rs.multiply(&prev, detq));
    }
    let mut cleared = Element::zero();
    for (w, c) in nf.iter() {
        let k = max_e - d_count(w, d);
        let base = Element::from_term(strip_d(w, d), c.clone());
        cleared = cleared.add(&base.free_mul(&powers[k as usize]));
    }
    rs.normal_form(&cleared).is_zero()
}

/// The antipode of F_q(SL_2), represented inside the mixed algebra: each
/// S(t^i_j) is D times a linear combination of t-letters.
#[derive(Clone, Debug)]
pub struct Antipode {
    /// entries[i-1][j-1] = S(t^i_j).
    pub entries: Vec<Vec<Element>>,
}

/// Derive the antipode from S(T) T = I by exact linear algebra, then verify
/// T S(T) = I as well. Only N = 2 is needed or supported.
pub fn antipode2(spec: &AlgebraSpec) -> Result<Antipode> {
    let al = spec.alphabet();
    if al.n != 2 || !al.has_t || !al.has_d {
        return Err(Error::Usage(
            "antipode2 expects a mixed/GL_2 algebra with N = 2".into(),
        ));
    }
    let rs = &spec.rules;
    let detq = quantum_det(spec);
    let n = 2usize;

    // Normal-form products t^k_l t^a_j, reused across the two systems.
    let mut products: BTreeMap<(usize, usize, usize, usize), Element> = BTreeMap::new();
    for k in 1..=n {
        for l in 1..=n {
            for a in 1..=n {
                for j in 1..=n {
                    let w = vec![al.t_id(k, l), al.t_id(a, j)];
                    products.insert((k, l, a, j), rs.normal_form(&Element::from_word(w)));
                }
            }
        }
    }

    // Degree-2 normal words in the t-letters, the equation index set.
    let words: Vec<Vec<LetterId>> = {
        let mut ws = Vec::new();
        let ts: Vec<LetterId> = (1..=n)
            .flat_map(|r| (1..=n).map(move |c| (r, c)))
            .map(|(r, c)| al.t_id(r, c))
            .collect();
        for (i1, &a) in ts.iter().enumerate() {
            for &b in &ts[i1..] {
                ws.push(vec![a, b]);
            }
        }
        ws
    };

    // Unknowns for row i: coefficients c[(a, k, l)] in
    // S(t^i_a) = D * sum_{k,l} c t^k_l; equations from
    // sum_a S(t^i_a) t^a_j = delta^i_j, cleared to
    // sum_{a,k,l} c * nf(t^k_l t^a_j) = delta^i_j * det_q.
    let unknowns: Vec<(usize, usize, usize)> = (1..=n)
        .flat_map(|a| (1..=n).flat_map(move |k| (1..=n).map(move |l| (a, k, l))))
        .collect();
    let mut entries = vec![vec![Element::zero(); n]; n];
    for i in 1..=n {
        let mut rows: Vec<Vec<RatFunc>> = Vec::new();
        let mut rhs: Vec<RatFunc> = Vec::new();
        for j in 1..=n {
            let target = if i == j { detq.clone() } else { Element::zero() };
            for w in &words {
                let row: Vec<RatFunc> = unknowns
                    .iter()
                    .map(|&(a, k, l)| products[&(k, l, a, j)].coeff(w))
                    .collect();
                rows.push(row);
                rhs.push(target.coeff(w));
            }
        }
        let sol = solve_linear(&rows, &rhs)?.ok_or_else(|| {
            Error::Build("antipode system is inconsistent; conventions are broken".into())
        })?;
        for (col, &(a, k, l)) in unknowns.iter().enumerate() {
            if sol[col].is_zero() {
                continue;
            }
            entries[i - 1][a - 1].add_term(vec![al.t_id(k, l), al.d_id()], sol[col].clone());
        }
    }
    let s = Antipode { entries };

    // Verify S(T) T = I = T S(T) in the localization.
    for i in 1..=n {
        for j in 1..=n {
            let mut st = Element::zero();
            let mut ts = Element::zero();
            for a in 1..=n {
                st = st.add(&s.entries[i - 1][a - 1].free_mul(&Element::from_letter(al.t_id(a, j))));
                ts = ts.add(&Element::from_letter(al.t_id(i, a)).free_mul(&s.entries[a - 1][j - 1]));
            }
            let delta = if i == j { Element::one() } else { Element::zero() };
            if !is_zero_gl(rs, &detq, &st.sub(&delta)) || !is_zero_gl(rs, &detq, &ts.sub(&delta)) {
                return Err(Error::Build(format!(
                    "antipode verification failed at entry ({i},{j})"
                )));
            }
        }
    }
    Ok(s)
}

/// Per-generator images of the coaction X(r) -> S(T) X(r) T.
#[derive(Clone, Debug)]
pub struct CoactionTable {
    images: BTreeMap<LetterId, Element>,
}

impl CoactionTable {
    pub fn image(&self, l: LetterId) -> &Element {
        &self.images[&l]
    }
}

/// beta(x(r)^i_j) = sum_{a,b} S(t^i_a) x(r)^a_b t^b_j, normal formed in the
/// mixed algebra.
pub fn build_beta(spec: &AlgebraSpec, antipode: &Antipode) -> CoactionTable {
    let al = spec.alphabet();
    let rs = &spec.rules;
    let n = al.n;
    let mut images = BTreeMap::new();
    for copy in 1..=al.copies {
        for i in 1..=n {
            for j in 1..=n {
                let mut img = Element::zero();
                for a in 1..=n {
                    for b in 1..=n {
                        let term = antipode.entries[i - 1][a - 1]
                            .free_mul(&Element::from_letter(al.x_id(copy, a, b)))
                            .free_mul(&Element::from_letter(al.t_id(b, j)));
                        img = img.add(&term);
                    }
                }
                images.insert(al.x_id(copy, i, j), rs.normal_form(&img));
            }
        }
    }
    CoactionTable { images }
}

/// Extend the coaction multiplicatively and linearly to an arbitrary element
/// of the x-subalgebra.
pub fn beta_apply(rs: &RuleSet, table: &CoactionTable, e: &Element) -> Element {
    let mut out = Element::zero();
    for (w, c) in e.iter() {
        let mut prod = Element::scalar(c.clone());
        for &l in w {
            debug_assert!(matches!(
                rs.alphabet.letter(l).kind,
                LetterKind::X { .. }
            ));
            prod = rs.multiply(&prod, table.image(l));
        }
        out = out.add(&prod);
    }
    rs.normal_form(&out)
}

/// Counit evaluation t^i_j -> delta^i_j, D -> 1; the result lives in the
/// x-subalgebra.
pub fn counit_eval(rs: &RuleSet, e: &Element) -> Element {
    let al = &rs.alphabet;
    let mut out = Element::zero();
    'terms: for (w, c) in e.iter() {
        let mut kept = Vec::new();
        for &l in w {
            match al.letter(l).kind {
                LetterKind::X { .. } => kept.push(l),
                LetterKind::T => {
                    let lt = al.letter(l);
                    if lt.row != lt.col {
                        continue 'terms;
                    }
                }
                LetterKind::DInv => {}
            }
        }
        out.add_term(kept, c.clone());
    }
    out
}

/// beta(e) = e (x) 1, tested exactly in the localization at det_q.
pub fn is_coinvariant(
    rs: &RuleSet,
    table: &CoactionTable,
    detq: &Element,
    e: &Element,
) -> bool {
    let img = beta_apply(rs, table, e);
    is_zero_gl(rs, detq, &img.sub(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{build_fqm, build_mixed};
    use crate::rewrite::Config;

    #[test]
    fn quantum_det_small() {
        let f1 = build_fqm(1, Config::default()).unwrap();
        let d = quantum_det(&f1);
        assert_eq!(d, Element::from_letter(f1.alphabet().t_id(1, 1)));

        let f2 = build_fqm(2, Config::default()).unwrap();
        let al = f2.alphabet();
        let d = quantum_det(&f2);
        assert_eq!(d.num_terms(), 2);
        assert_eq!(d.coeff(&vec![al.t_id(1, 1), al.t_id(2, 2)]), RatFunc::one());
        assert_eq!(
            d.coeff(&vec![al.t_id(1, 2), al.t_id(2, 1)]),
            &RatFunc::zero() - &RatFunc::q_pow(1)
        );
    }

    #[test]
    fn quantum_det_is_central() {
        let f2 = build_fqm(2, Config::default()).unwrap();
        let al = f2.alphabet();
        let d = quantum_det(&f2);
        for r in 1..=2 {
            for c in 1..=2 {
                let t = Element::from_letter(al.t_id(r, c));
                assert!(f2.rules.commutator(&d, &t).is_zero(), "t^{r}_{c}");
            }
        }
    }

    #[test]
    fn antipode_satisfies_both_inverse_laws() {
        // antipode2 itself verifies S(T)T = I = TS(T); also check the counit
        // consistency: evaluating t -> delta, D -> 1 in S(t^i_j) gives
        // delta^i_j.
        let mx = build_mixed(2, 0, Config::default()).unwrap();
        let s = antipode2(&mx).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let ev = counit_eval(&mx.rules, &s.entries[i][j]);
                let expect = if i == j { Element::one() } else { Element::zero() };
                assert_eq!(ev, expect, "counit of S(t^{}_{})", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn beta_is_an_algebra_map_and_counital() {
        let mx = build_mixed(2, 1, Config::default()).unwrap();
        let s = antipode2(&mx).unwrap();
        let table = build_beta(&mx, &s);
        let al = mx.alphabet();
        let rs = &mx.rules;

        // Counit law: collapsing the t-part of beta(f) returns f.
        let f = Element::from_word(vec![al.x_id(1, 2, 1), al.x_id(1, 1, 2)]);
        let bf = beta_apply(rs, &table, &f);
        assert_eq!(counit_eval(rs, &bf), rs.normal_form(&f));

        // Algebra map on a pseudorandom pair.
        let g = Element::from_term(vec![al.x_id(1, 2, 2)], RatFunc::q_pow(-1));
        let lhs = beta_apply(rs, &table, &rs.multiply(&f, &g));
        let rhs = rs.multiply(
            &beta_apply(rs, &table, &f),
            &beta_apply(rs, &table, &g),
        );
        assert!(rs.normal_form(&lhs.sub(&rhs)).is_zero());
    }

    #[test]
    fn coinvariance_examples() {
        let mx = build_mixed(2, 1, Config::default()).unwrap();
        let s = antipode2(&mx).unwrap();
        let table = build_beta(&mx, &s);
        let al = mx.alphabet();
        let rs = &mx.rules;
        let detq = quantum_det(&mx);

        // Tr_q(X) = q x^1_1 + q^-1 x^2_2 is a coinvariant.
        let mut trq = Element::from_term(vec![al.x_id(1, 1, 1)], RatFunc::q_pow(1));
        trq.add_term(vec![al.x_id(1, 2, 2)], RatFunc::q_pow(-1));
        assert!(is_coinvariant(rs, &table, &detq, &trq));

        // q^-2 x^2_2 x^1_1 - x^1_2 x^2_1 is a coinvariant.
        let mut c = Element::from_term(
            vec![al.x_id(1, 2, 2), al.x_id(1, 1, 1)],
            RatFunc::q_pow(-2),
        );
        c.add_term(
            vec![al.x_id(1, 1, 2), al.x_id(1, 2, 1)],
            &RatFunc::zero() - &RatFunc::one(),
        );
        let c = rs.normal_form(&c);
        assert!(is_coinvariant(rs, &table, &detq, &c));

        // x^1_1 is not.
        let x11 = Element::from_letter(al.x_id(1, 1, 1));
        assert!(!is_coinvariant(rs, &table, &detq, &x11));
        let b = beta_apply(rs, &table, &x11);
        assert_ne!(b, x11);
    }
}
